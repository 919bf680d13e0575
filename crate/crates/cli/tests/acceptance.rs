//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use parcross::coaction::duality_verdict;
use parcross::corpus::{enumerate_systems, named_system};
use parcross::crossed_product::{spectral_dims, StructureDescriptor, SummandKind};
use parcross::matrix::Matrix;
use parcross::partial_system::OrbitKind;
use parcross::scalar::GaussQ;
use parcross::star_engine::MatrixStarAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn cli_json(args: &[&str]) -> Result<(Value, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_parcross"))
        .arg("--json")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: exit {code}, unparsable output: {e}"))?;
    Ok((v, code))
}

fn summands(v: &Value) -> Vec<(String, u64)> {
    v["summands"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|s| {
            (
                s["kind"].as_str().unwrap_or("").to_string(),
                s["size"].as_u64().unwrap_or(0),
            )
        })
        .collect()
}

/// Single-block oracle confirmation from a `crossed-product --verify` report.
fn single_block(v: &Value, size: u64) -> Result<(), String> {
    let descriptor = summands(&v["descriptor"]);
    if descriptor != [("finite_matrix".to_string(), size)] {
        return Err(format!("descriptor {descriptor:?}"));
    }
    let check = &v["verification"][0]["check"];
    let blocks: Vec<u64> = check["blocks"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(Value::as_u64)
        .collect();
    let dim = check["algebra_dim"].as_u64();
    if blocks != [size] || dim != Some(size * size) {
        return Err(format!("oracle blocks {blocks:?}, dim {dim:?}"));
    }
    Ok(())
}

fn shift_theorem() -> Result<String, String> {
    let start = Instant::now();
    for n in 2..=6u64 {
        let (v, code) = cli_json(&["crossed-product", &format!("shift_n({n})"), "--verify"])?;
        if code != 0 {
            return Err(format!("σ_{n}: exit code {code}"));
        }
        single_block(&v, n).map_err(|e| format!("σ_{n}: {e}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 5.0 {
        return Err(format!("took {secs:.2} s"));
    }
    Ok(format!(
        "σ_2..σ_6 give M_n with one oracle block of size n, {secs:.2} s"
    ))
}

fn graded_dimensions() -> Result<String, String> {
    for n in 2..=8i64 {
        let sys = named_system(&format!("shift_n({n})")).map_err(|e| e.to_string())?;
        let dims = spectral_dims(&sys);
        for k in -(n + 3)..=(n + 3) {
            let expected = (n - k.abs()).max(0) as u64;
            if dims.at(k) != expected {
                return Err(format!("σ_{n}, k = {k}: {} != {expected}", dims.at(k)));
            }
        }
        if dims.total() != Some((n * n) as u64) {
            return Err(format!("σ_{n}: total {:?}", dims.total()));
        }
    }
    Ok("dim of degree k is n − |k|, summing to n², for n = 2..8".into())
}

fn exhaustive_suite() -> Result<String, String> {
    let start = Instant::now();
    let (v, code) = cli_json(&["enumerate", "--size", "4", "--labeled"])?;
    let secs = start.elapsed().as_secs_f64();
    let systems = v["systems"].as_u64().unwrap_or(0);
    let violations = v["violations"].as_array().map_or(usize::MAX, Vec::len);
    if code != 0 || violations != 0 {
        return Err(format!("{violations} violations, exit {code}"));
    }
    if systems != 253 {
        return Err(format!("expected 253 labeled systems, got {systems}"));
    }
    if secs >= 60.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!(
        "{systems} systems, zero counterexamples, {secs:.2} s"
    ))
}

fn duality_witness() -> Result<String, String> {
    let mut systems = Vec::new();
    for n in 1..=6 {
        let base = named_system(&format!("shift_n({n})")).map_err(|e| e.to_string())?;
        for d in 1..=3 {
            systems.push(base.tensor_with_block(d).map_err(|e| e.to_string())?);
        }
    }
    systems.extend(enumerate_systems(4).map_err(|e| e.to_string())?);
    let mut chains = 0;
    for sys in &systems {
        let orbits = sys.orbits();
        let verdict = duality_verdict(sys);
        for (orbit, v) in orbits.orbits.iter().zip(&verdict.per_orbit) {
            if orbit.kind != OrbitKind::Chain {
                continue;
            }
            chains += 1;
            let (n, d) = (orbit.len() as u64, u64::from(orbit.block_dim));
            let lhs = StructureDescriptor::of(SummandKind::RepeatedCountably, &[n * d]);
            let rhs = StructureDescriptor::of(SummandKind::FiniteMatrix, &vec![d; n as usize])
                .stabilized();
            if v.lhs != lhs || v.rhs != rhs || v.holds || v.lhs == v.rhs {
                return Err(format!("{sys:?}: {} vs {}", v.lhs, v.rhs));
            }
            if rhs.spectrum_size() != Some(n) || v.lhs.spectrum_size().is_some() {
                return Err(format!("{sys:?}: spectrum sizes"));
            }
        }
    }
    Ok(format!(
        "{chains} chain orbits: repeated_countably(nd) vs n stable points"
    ))
}

fn tensor_proposition() -> Result<String, String> {
    for d in [2u64, 3] {
        let (v, code) = cli_json(&[
            "crossed-product",
            "shift_n(3)",
            "--tensor",
            &d.to_string(),
            "--verify",
        ])?;
        if code != 0 {
            return Err(format!("d = {d}: exit code {code}"));
        }
        single_block(&v, 3 * d).map_err(|e| format!("d = {d}: {e}"))?;
    }
    Ok("σ_3 ⊗ M_2 and σ_3 ⊗ M_3 give M_6 and M_9, confirmed by the oracle".into())
}

fn sieben() -> Result<String, String> {
    let (v, code) = cli_json(&["sieben", "--n", "50", "--density", "4", "8"])?;
    if code != 0 {
        return Err(format!("exit code {code}"));
    }
    let d = &v["disjointness"];
    if d["disjoint"] != true
        || d["proof_for_all_depths"] != true
        || d["spot_check_disjoint"] != true
    {
        return Err(format!("disjointness report {d}"));
    }
    let settings = v["density"]["settings"]
        .as_array()
        .cloned()
        .unwrap_or_default();
    if settings.len() < 3 || v["density"]["non_increasing"] != true {
        return Err("gap ladder missing or increasing".into());
    }
    let params: Vec<(u64, u64)> = settings
        .iter()
        .map(|s| {
            (
                s["n_terms"].as_u64().unwrap_or(0),
                s["translates"].as_u64().unwrap_or(0),
            )
        })
        .collect();
    if params
        .windows(2)
        .any(|w| w[1].0 <= w[0].0 || w[1].1 <= w[0].1)
    {
        return Err(format!("parameters not increasing: {params:?}"));
    }
    let uppers: Vec<&str> = settings
        .iter()
        .filter_map(|s| s["upper"].as_str())
        .collect();
    Ok(format!(
        "n = 50 disjoint for every depth; gap upper bounds {} over {params:?}",
        uppers.join(" ≥ ")
    ))
}

/// Block-diagonal generators with Gaussian-integer entries. Some diagonal
/// blocks repeat an earlier one, which gives multiplicity.
fn random_generators(rng: &mut ChaCha8Rng) -> Vec<Matrix<GaussQ>> {
    let ambient = rng.gen_range(1..=6);
    let mut slots: Vec<(usize, usize)> = Vec::new();
    let mut used = 0;
    while used < ambient {
        let size = rng.gen_range(1..=(ambient - used).min(3));
        let source = slots
            .iter()
            .position(|&(s, _)| s == size)
            .filter(|_| rng.gen_bool(0.3))
            .unwrap_or(slots.len());
        slots.push((size, source));
        used += size;
    }
    let count = rng.gen_range(2..=3);
    (0..count)
        .map(|_| {
            let fresh: Vec<Matrix<GaussQ>> = slots
                .iter()
                .map(|&(s, _)| {
                    Matrix::from_fn(s, s, |_, _| {
                        GaussQ::from_ints(rng.gen_range(-2..=2), rng.gen_range(-1..=1))
                    })
                })
                .collect();
            let mut m = Matrix::zeros(ambient, ambient);
            let mut offset = 0;
            for (i, &(s, source)) in slots.iter().enumerate() {
                m.place_diagonal(offset, &fresh[if source < i { source } else { i }]);
                offset += s;
            }
            m
        })
        .collect()
}

fn star_engine() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut largest = 0;
    let mut split = 0;
    for trial in 0..100 {
        let gens = random_generators(&mut rng);
        largest = largest.max(gens[0].rows());
        let alg = match MatrixStarAlgebra::saturate(&gens) {
            Ok(a) => a,
            Err(e) => {
                failures.push(format!("#{trial}: {e}"));
                continue;
            }
        };
        let idempotent = MatrixStarAlgebra::saturate(&alg.basis()).is_ok_and(|a| a == alg);
        let residual = alg.closure_residual();
        let blocks = alg.wedderburn();
        let squares = blocks
            .as_ref()
            .map(|b| b.iter().map(|n| n * n).sum::<usize>());
        if blocks.as_ref().is_ok_and(|b| b.len() > 1) {
            split += 1;
        }
        if !idempotent || residual != 0 || squares != Ok(alg.dim()) {
            failures.push(format!(
                "#{trial}: idempotent {idempotent}, residual {residual}, blocks {blocks:?}, dim {}",
                alg.dim()
            ));
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "100 generator sets up to ambient dimension {largest} ({split} with several blocks): idempotent, residual 0, Σn² = dim"
        ))
    } else {
        Err(format!(
            "{} failures: {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

type Criterion = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("shift theorem", shift_theorem),
        ("graded dimension identity", graded_dimensions),
        ("exhaustive property suite", exhaustive_suite),
        ("duality failure witness", duality_witness),
        ("tensor proposition", tensor_proposition),
        ("harmonic translates", sieben),
        ("star engine self-tests", star_engine),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
