//! One report per subcommand. Each renders as text and as JSON, and knows
//! whether the checks it ran passed.

use std::fmt;

use parcross::coaction::{cor_decomposition, duality_verdict, CorDecomposition, DualityVerdict};
use parcross::corpus::{
    density_ladder, enumerate_systems_capped, labeled_systems, sieben_disjointness, DensityLadder,
    DisjointnessReport,
};
use parcross::crossed_product::{
    orbit_oracle, spectral_dims, structure, OracleCheck, SpectralDims, StructureDescriptor,
    Summand, SummandKind,
};
use parcross::partial_system::{
    Classification, EventualConstancyReport, MapIdealsReport, OrbitDecomposition, OrbitKind,
    WoldDecomposition,
};
use parcross::suite::{run_suite, Violation};
use parcross::{Direction, IdealSet, PartialSystem};
use serde::Serialize;

use crate::error::CliError;

pub trait Report: Serialize + fmt::Display {
    /// False when an internal assertion failed; the binary then exits with 2.
    fn passed(&self) -> bool;
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn kind_name(kind: OrbitKind) -> &'static str {
    match kind {
        OrbitKind::Chain => "chain",
        OrbitKind::Cycle => "cycle",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerRow {
    pub n: i64,
    pub ideal: IdealSet,
    pub dim: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub blocks: usize,
    pub table: Vec<PowerRow>,
    pub d_infinity: IdealSet,
    pub d_minus_infinity: IdealSet,
    pub wold: WoldDecomposition,
    pub classification: Classification,
    pub orbits: OrbitDecomposition,
    pub eventual_constancy: EventualConstancyReport,
    pub map_ideals: MapIdealsReport,
    pub notes: Vec<String>,
}

/// Powers `D_n` for `|n| ≤` block count `+ 1`, where the sequence has settled.
pub fn analyze(sys: &PartialSystem) -> AnalyzeReport {
    let range = sys.block_count() as i64 + 1;
    let table = (-range..=range)
        .map(|n| {
            let ideal = sys.ideal_d(n);
            PowerRow {
                n,
                dim: ideal.dim(),
                ideal,
            }
        })
        .collect();
    let mut notes = Vec::new();
    if sys.ideal_d(1).is_empty() {
        notes.push("trivial: crossed product = A".to_string());
    }
    AnalyzeReport {
        blocks: sys.block_count(),
        table,
        d_infinity: sys.d_infinity(Direction::Forward),
        d_minus_infinity: sys.d_infinity(Direction::Backward),
        wold: sys.wold(),
        classification: sys.classify(),
        orbits: sys.orbits(),
        eventual_constancy: sys.eventually_constant_checks(),
        map_ideals: sys.verify_map_ideals(range),
        notes,
    }
}

fn flags(c: &Classification) -> Vec<String> {
    let mut out = Vec::new();
    if let (true, Some(k)) = (c.nilpotent, c.nilpotency_index) {
        out.push(format!("nilpotent({k})"));
    }
    for (on, name) in [
        (c.forward_shift, "forward_shift"),
        (c.backward_shift, "backward_shift"),
        (c.completely_nonautomorphic, "completely_nonautomorphic"),
        (c.automorphism, "automorphism"),
    ] {
        if on {
            out.push(name.to_string());
        }
    }
    out
}

fn write_orbits(f: &mut fmt::Formatter<'_>, orbits: &OrbitDecomposition) -> fmt::Result {
    for o in &orbits.orbits {
        let ids = orbits.ids(o);
        let mut path = ids.join(" -> ");
        if o.kind == OrbitKind::Cycle {
            path.push_str(&format!(" -> {}", ids[0]));
        }
        writeln!(f, "  {} {path} (dim {})", kind_name(o.kind), o.block_dim)?;
    }
    Ok(())
}

fn write_wold(f: &mut fmt::Formatter<'_>, w: &WoldDecomposition) -> fmt::Result {
    writeln!(
        f,
        "wold: core {}, forward {}, backward {}, finite {}",
        w.core, w.forward_part, w.backward_part, w.finite_part
    )
}

impl fmt::Display for AnalyzeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "blocks: {}", self.blocks)?;
        writeln!(f, "{:>5}  {:<24} dim", "n", "D_n")?;
        for row in &self.table {
            writeln!(f, "{:>5}  {:<24} {}", row.n, row.ideal.to_string(), row.dim)?;
        }
        writeln!(
            f,
            "D_∞ = {}, D_-∞ = {}",
            self.d_infinity, self.d_minus_infinity
        )?;
        write_wold(f, &self.wold)?;
        let fl = flags(&self.classification);
        writeln!(
            f,
            "flags: {}",
            if fl.is_empty() {
                "none".into()
            } else {
                fl.join(", ")
            }
        )?;
        writeln!(f, "orbits:")?;
        write_orbits(f, &self.orbits)?;
        let ec = &self.eventual_constancy;
        writeln!(
            f,
            "eventually constant: D_n fixed for n ≤ {} and n ≥ {}, symmetric {}, checks {}",
            ec.negative_index,
            ec.positive_index,
            yes_no(ec.symmetric),
            if ec.all_hold() { "pass" } else { "FAIL" }
        )?;
        writeln!(
            f,
            "map ideals: {} identities checked up to |n| = {}, {}",
            self.map_ideals.checked,
            self.map_ideals.bound,
            if self.map_ideals.passed() {
                "pass"
            } else {
                "FAIL"
            }
        )?;
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

impl Report for AnalyzeReport {
    fn passed(&self) -> bool {
        self.map_ideals.passed()
            && self.eventual_constancy.all_hold()
            && self.classification.nilpotent_equivalence_holds
            && self.wold.is_partition()
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Match,
    Mismatch,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub orbit: Vec<String>,
    pub kind: OrbitKind,
    pub status: OracleStatus,
    pub check: Option<OracleCheck>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossedProductReport {
    pub tensor: u32,
    pub descriptor: StructureDescriptor,
    pub spectral_dims: SpectralDims,
    pub total_dim: Option<u64>,
    pub verification: Option<Vec<OracleRow>>,
}

/// Structure of `A ×_α ℤ`, optionally after tensoring every block with
/// `M_tensor`, and with `verify` the saturation oracle per chain orbit.
pub fn crossed_product(
    sys: &PartialSystem,
    tensor: u32,
    verify: bool,
) -> Result<CrossedProductReport, CliError> {
    let sys = if tensor == 1 {
        sys.clone()
    } else {
        sys.tensor_with_block(tensor)?
    };
    let dims = spectral_dims(&sys);
    let verification = verify.then(|| {
        let orbits = sys.orbits();
        orbits
            .orbits
            .iter()
            .map(|o| {
                let orbit = orbits.ids(o);
                match orbit_oracle(&sys, o) {
                    Ok(Some(check)) => OracleRow {
                        orbit,
                        kind: o.kind,
                        status: if check.matches {
                            OracleStatus::Match
                        } else {
                            OracleStatus::Mismatch
                        },
                        check: Some(check),
                        note: None,
                    },
                    Ok(None) => OracleRow {
                        orbit,
                        kind: o.kind,
                        status: OracleStatus::Skipped,
                        check: None,
                        note: Some(
                            "oracle skipped: cycle coefficients are Laurent polynomials".into(),
                        ),
                    },
                    Err(e) => OracleRow {
                        orbit,
                        kind: o.kind,
                        status: OracleStatus::Mismatch,
                        check: None,
                        note: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    Ok(CrossedProductReport {
        tensor,
        descriptor: structure(&sys),
        total_dim: dims.total(),
        spectral_dims: dims,
        verification,
    })
}

impl fmt::Display for CrossedProductReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tensor != 1 {
            writeln!(f, "tensored with M_{}", self.tensor)?;
        }
        writeln!(f, "descriptor: {}", self.descriptor)?;
        let d = &self.spectral_dims;
        let entries: Vec<String> = d.dims.iter().map(|(n, v)| format!("{n}:{v}")).collect();
        writeln!(f, "spectral dims: {}", entries.join(" "))?;
        writeln!(
            f,
            "tails: {} for n ≥ {}, {} for n ≤ -{}",
            d.tail_positive, d.window, d.tail_negative, d.window
        )?;
        match self.total_dim {
            Some(t) => writeln!(f, "total dim: {t}")?,
            None => writeln!(f, "total dim: infinite")?,
        }
        for row in self.verification.iter().flatten() {
            let orbit = row.orbit.join(",");
            match (&row.status, &row.check) {
                (OracleStatus::Skipped, _) => writeln!(
                    f,
                    "{} [{orbit}]: {}",
                    kind_name(row.kind),
                    row.note.as_deref().unwrap_or("")
                )?,
                (status, Some(c)) => writeln!(
                    f,
                    "{} [{orbit}]: oracle {:?}, dim {}, predicted {} {}",
                    kind_name(row.kind),
                    c.blocks,
                    c.algebra_dim,
                    c.predicted,
                    if matches!(status, OracleStatus::Match) {
                        "✓"
                    } else {
                        "MISMATCH"
                    }
                )?,
                (_, None) => writeln!(
                    f,
                    "{} [{orbit}]: oracle failed: {}",
                    kind_name(row.kind),
                    row.note.as_deref().unwrap_or("")
                )?,
            }
        }
        Ok(())
    }
}

impl Report for CrossedProductReport {
    fn passed(&self) -> bool {
        self.verification
            .iter()
            .flatten()
            .all(|r| !matches!(r.status, OracleStatus::Mismatch))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    pub headline: String,
    pub verdict: DualityVerdict,
    /// The verdict holds exactly when the map is a total bijection.
    pub consistent: bool,
}

pub fn duality(sys: &PartialSystem) -> DualityReport {
    let verdict = duality_verdict(sys);
    let headline = if verdict.global_holds {
        "HOLDS (automorphism)".to_string()
    } else {
        let rhs = verdict
            .per_orbit
            .iter()
            .fold(StructureDescriptor::empty().stabilized(), |acc, v| {
                acc.merge(&v.rhs)
            });
        let points = rhs
            .spectrum_size()
            .map_or("infinitely many".to_string(), |p| p.to_string());
        format!("FAILS: spectrum {points} points vs countably infinite")
    };
    DualityReport {
        headline,
        consistent: verdict.global_holds == sys.map().is_total_bijection(),
        verdict,
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headline)?;
        for v in &self.verdict.per_orbit {
            writeln!(
                f,
                "  {} [{}]: {} lhs {} vs rhs {} ({})",
                kind_name(v.kind),
                v.orbit.join(","),
                if v.holds { "holds" } else { "fails" },
                v.lhs,
                v.rhs,
                v.witness
            )?;
        }
        Ok(())
    }
}

impl Report for DualityReport {
    fn passed(&self) -> bool {
        self.consistent
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubquotientRow {
    pub n: i64,
    /// `I_n`.
    pub ideal: IdealSet,
    pub layer: IdealSet,
    pub base: IdealSet,
    pub layer_descriptor: StructureDescriptor,
    pub expected: StructureDescriptor,
    pub witness_valid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubquotientsReport {
    pub rows: Vec<SubquotientRow>,
}

/// Ladder ideals `I_n` and their layers `I_n / I_{n+1}` for `2 ≤ n ≤ max_n`.
pub fn subquotients(sys: &PartialSystem, max_n: i64) -> Result<SubquotientsReport, CliError> {
    if max_n < 2 {
        return Err(parcross::Error::InvalidArgument(format!(
            "--max-n must be at least 2, got {max_n}"
        ))
        .into());
    }
    let rows = (2..=max_n)
        .map(|n| {
            let sq = sys.subquotient_structure(n)?;
            let expected = StructureDescriptor::new(
                sq.base.members().iter().map(|&b| Summand {
                    kind: SummandKind::FiniteMatrix,
                    size: n as u64 * u64::from(sys.algebra().dim_of(b)),
                }),
                false,
            );
            Ok(SubquotientRow {
                n,
                witness_valid: sq.witness_is_valid(sys),
                layer_descriptor: structure(&sq.layer_system),
                expected,
                ideal: sq.upper,
                layer: sq.layer,
                base: sq.base,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(SubquotientsReport { rows })
}

impl fmt::Display for SubquotientsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "n = {}: I_n = {}, layer {} ≅ base {} ⊗ ℂ^{}, descriptor {}, witness {}",
                r.n,
                r.ideal,
                r.layer,
                r.base,
                r.n,
                r.layer_descriptor,
                if r.witness_valid { "ok" } else { "INVALID" }
            )?;
        }
        Ok(())
    }
}

impl Report for SubquotientsReport {
    fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.witness_valid && r.layer_descriptor == r.expected)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WoldReport {
    pub wold: WoldDecomposition,
    pub partition: bool,
    pub core_is_automorphism: bool,
    pub quotient_has_empty_core: bool,
    /// Present when the core is empty.
    pub decomposition: Option<CorDecomposition>,
}

pub fn wold(sys: &PartialSystem) -> WoldReport {
    let wold = sys.wold();
    WoldReport {
        partition: wold.is_partition(),
        core_is_automorphism: sys
            .restrict(&wold.core)
            .is_ok_and(|r| r.map().is_total_bijection()),
        quotient_has_empty_core: sys
            .quotient(&wold.core)
            .is_ok_and(|q| q.wold().core.is_empty()),
        decomposition: cor_decomposition(sys).ok(),
        wold,
    }
}

impl fmt::Display for WoldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_wold(f, &self.wold)?;
        writeln!(f, "partition: {}", yes_no(self.partition))?;
        writeln!(
            f,
            "core restriction is an automorphism: {}",
            yes_no(self.core_is_automorphism)
        )?;
        writeln!(
            f,
            "quotient by core has empty core: {}",
            yes_no(self.quotient_has_empty_core)
        )?;
        if let Some(d) = &self.decomposition {
            writeln!(
                f,
                "invariant decomposition: I1 {}, I2 {}, I3 {}, {}",
                d.i1,
                d.i2,
                d.i3,
                if d.holds() { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

impl Report for WoldReport {
    fn passed(&self) -> bool {
        self.partition
            && self.core_is_automorphism
            && self.quotient_has_empty_core
            && self
                .decomposition
                .as_ref()
                .is_none_or(CorDecomposition::holds)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateReport {
    pub size: usize,
    pub labeled: bool,
    pub systems: usize,
    pub violations: Vec<(String, Violation)>,
}

/// Run every property check over all systems with at most `size` blocks,
/// either one per relabeling class or every labeled system.
pub fn enumerate(size: usize, cap: usize, labeled: bool) -> Result<EnumerateReport, CliError> {
    let systems = if labeled {
        if size > cap {
            return Err(parcross::Error::CapExceeded {
                requested: size,
                cap,
            }
            .into());
        }
        (0..=size).flat_map(labeled_systems).collect()
    } else {
        enumerate_systems_capped(size, cap)?
    };
    let suite = run_suite(&systems);
    Ok(EnumerateReport {
        size,
        labeled,
        systems: suite.systems,
        violations: suite.violations,
    })
}

impl fmt::Display for EnumerateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "all properties passed over {} systems", self.systems);
        }
        writeln!(
            f,
            "{} violations over {} systems",
            self.violations.len(),
            self.systems
        )?;
        for (sys, v) in &self.violations {
            writeln!(f, "  {v}  in {sys}")?;
        }
        Ok(())
    }
}

impl Report for EnumerateReport {
    fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SiebenReport {
    pub disjointness: DisjointnessReport,
    pub density: Option<DensityLadder>,
}

pub fn sieben(n: i64, density: Option<(u64, i64)>) -> Result<SiebenReport, CliError> {
    let disjointness = sieben_disjointness(n)?;
    let density = density
        .map(|(window, translates)| density_ladder(n as u64, window, translates))
        .transpose()?;
    Ok(SiebenReport {
        disjointness,
        density,
    })
}

impl fmt::Display for SiebenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.disjointness;
        writeln!(
            f,
            "n = {}: π-components {}..={} on the left, {}..=0 on the right",
            d.n,
            d.left_components.first().copied().unwrap_or(0),
            d.left_components.last().copied().unwrap_or(0),
            d.right_components.last().copied().unwrap_or(0),
        )?;
        writeln!(
            f,
            "disjoint: {}{}",
            yes_no(d.disjoint),
            if d.proof_for_all_depths {
                " (exact, every truncation depth at once)"
            } else {
                ""
            }
        )?;
        writeln!(
            f,
            "element check at depth {}: {}",
            d.spot_check_depth,
            if d.spot_check_disjoint {
                "disjoint"
            } else {
                "OVERLAP"
            }
        )?;
        if let Some(ladder) = &self.density {
            writeln!(f, "density evidence (not a proof):")?;
            for g in &ladder.settings {
                let (lo, hi) = g.approx();
                writeln!(
                    f,
                    "  N = {}, M = {}, window [-{}, {}]: {} points, max gap in [{lo:.12}, {hi:.12}]",
                    g.n_terms, g.translates, g.window, g.window, g.points_in_window
                )?;
            }
            writeln!(
                f,
                "  upper bounds non-increasing: {}",
                yes_no(ladder.non_increasing)
            )?;
        }
        Ok(())
    }
}

impl Report for SiebenReport {
    fn passed(&self) -> bool {
        let d = &self.disjointness;
        d.disjoint
            && d.proof_for_all_depths
            && d.spot_check_disjoint
            && self.density.as_ref().is_none_or(|l| l.non_increasing)
    }
}
