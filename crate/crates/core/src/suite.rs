//! Every structural identity the library claims, checked on one system.
//!
//! [`check_system`] returns the list of failed properties; an empty list means
//! the system is a witness for all of them.

use std::fmt;

use serde::Serialize;

use crate::algebra_core::IdealSet;
use crate::coaction::{
    check_inner_partition, cor_decomposition, dual_coaction_check, duality_verdict,
    inner_partition, special_subquotient_check,
};
use crate::crossed_product::{
    quotient_crossed_product, restrict_crossed_product, spectral_dims, structure,
    StructureDescriptor, Summand, SummandKind,
};
use crate::partial_system::{intersect, Direction, PartialSystem};

/// Names of the checked properties, in evaluation order.
pub const PROPERTIES: &[&str] = &[
    "map_ideals",
    "monotone_power_ideals",
    "inversion_symmetry",
    "nilpotent_equivalences",
    "invariant_powers",
    "ideal_quotient_additivity",
    "subquotient_witness",
    "special_subquotient",
    "inner_partition",
    "three_way_decomposition",
    "eventual_constancy",
    "duality_iff_bijection",
    "wold_decomposition",
    "classification_matches_orbits",
    "ladder_ideals",
    "dual_coaction_grading",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, self.detail)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn check(&mut self, property: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Violation {
                property,
                detail: detail(),
            });
        }
    }
}

fn subsets(sys: &PartialSystem) -> impl Iterator<Item = IdealSet> + '_ {
    let n = sys.block_count();
    (0u64..1 << n).map(move |mask| sys.ideal_of_indices((0..n).filter(move |i| mask >> i & 1 == 1)))
}

pub fn check_system(sys: &PartialSystem) -> Vec<Violation> {
    let mut c = Collector(Vec::new());
    let bound = sys.stabilization_bound() + 2;

    let report = sys.verify_map_ideals(bound);
    c.check("map_ideals", report.passed(), || {
        format!("{:?}", report.counterexample)
    });

    let monotone = (0..bound).all(|n| {
        sys.ideal_d(n + 1).is_subset(&sys.ideal_d(n))
            && sys.ideal_d(-n - 1).is_subset(&sys.ideal_d(-n))
    });
    c.check("monotone_power_ideals", monotone, || {
        "D_n not nested".into()
    });

    let inverse = sys.inverse();
    let symmetric = (-bound..=bound).all(|n| inverse.ideal_d(n) == sys.ideal_d(-n));
    c.check("inversion_symmetry", symmetric, || {
        "D_n(f^-1) != D_-n(f)".into()
    });

    let class = sys.classify();
    c.check(
        "nilpotent_equivalences",
        class.nilpotent_equivalence_holds,
        || "four conditions disagree".into(),
    );

    let full = structure(sys);
    for ideal in subsets(sys) {
        if !sys.is_invariant(&ideal) {
            continue;
        }
        c.check(
            "invariant_powers",
            sys.invariant_powers_hold(&ideal),
            || format!("f^n(B ∩ D_-n) != B ∩ D_n for B = {ideal}"),
        );
        let restricted = restrict_crossed_product(sys, &ideal).expect("invariant");
        let quotient = quotient_crossed_product(sys, &ideal).expect("invariant");
        let ok = restricted.dims_match_ambient
            && quotient.additivity_holds
            && quotient.descriptors_add_up
            && restricted.descriptor.merge(&quotient.descriptor) == full;
        c.check("ideal_quotient_additivity", ok, || format!("I = {ideal}"));
    }

    for n in 2..=bound {
        let sq = sys.subquotient_structure(n).expect("n ≥ 2");
        let expected = StructureDescriptor::new(
            sq.base.members().iter().map(|&b| Summand {
                kind: SummandKind::FiniteMatrix,
                size: n as u64 * u64::from(sys.algebra().dim_of(b)),
            }),
            false,
        );
        let ok = sq.witness_is_valid(sys) && structure(&sq.layer_system) == expected;
        c.check("subquotient_witness", ok, || {
            format!("n = {n}, base = {}, layer = {}", sq.base, sq.layer)
        });
    }

    let special = special_subquotient_check(sys).expect("D_-1 + D_1 is invariant");
    c.check("special_subquotient", special.holds, || {
        format!("{} vs {}", special.descriptor, special.expected)
    });

    if class.completely_nonautomorphic {
        match inner_partition(sys) {
            Ok(q) => {
                let check = check_inner_partition(sys, &q);
                c.check("inner_partition", check.holds(), || format!("{check:?}"));
            }
            Err(e) => c.check("inner_partition", false, || e.to_string()),
        }
        match cor_decomposition(sys) {
            Ok(d) => c.check("three_way_decomposition", d.holds(), || format!("{d:?}")),
            Err(e) => c.check("three_way_decomposition", false, || e.to_string()),
        }
    } else {
        c.check("inner_partition", inner_partition(sys).is_err(), || {
            "accepted a system with automorphic core".into()
        });
    }

    let ec = sys.eventually_constant_checks();
    c.check("eventual_constancy", ec.all_hold(), || format!("{ec:?}"));

    let verdict = duality_verdict(sys);
    c.check(
        "duality_iff_bijection",
        verdict.global_holds == sys.map().is_total_bijection(),
        || format!("global_holds = {}", verdict.global_holds),
    );

    let wold = sys.wold();
    let core_ok = wold.core
        == intersect(
            &sys.d_infinity(Direction::Forward),
            &sys.d_infinity(Direction::Backward),
        )
        && sys
            .restrict(&wold.core)
            .is_ok_and(|r| r.map().is_total_bijection())
        && sys
            .quotient(&wold.core)
            .is_ok_and(|q| q.wold().core.is_empty());
    c.check("wold_decomposition", wold.is_partition() && core_ok, || {
        format!("{wold:?}")
    });

    let orbits = sys.orbits();
    let cycles = orbits.cycles().count();
    let chains = orbits.chains().count();
    let expected_index = (cycles == 0).then(|| orbits.max_chain_len().max(1) as u32);
    let classification_ok = class.nilpotent == (cycles == 0)
        && class.nilpotency_index == expected_index
        && class.automorphism == (chains == 0)
        && class.completely_nonautomorphic == (cycles == 0);
    c.check("classification_matches_orbits", classification_ok, || {
        format!("{class:?}")
    });

    let max_chain = orbits.max_chain_len() as i64;
    let ladder: Vec<IdealSet> = (2..=bound + 1)
        .map(|n| sys.ladder_ideal(n).expect("n ≥ 2"))
        .collect();
    let ladder_ok = ladder.iter().all(|i| sys.is_invariant(i))
        && ladder.windows(2).all(|w| w[1].is_subset(&w[0]))
        && intersect(
            &sys.ladder_ideal((max_chain + 1).max(2)).expect("n ≥ 2"),
            &wold.finite_part,
        )
        .is_empty();
    c.check("ladder_ideals", ladder_ok, || {
        "ladder not invariant or not antitone".into()
    });

    let dual = dual_coaction_check(sys);
    let totals_ok = match spectral_dims(sys).total() {
        Some(total) => {
            total
                == orbits
                    .chains()
                    .map(|o| (o.len() as u64 * u64::from(o.block_dim)).pow(2))
                    .sum::<u64>()
        }
        None => cycles > 0,
    };
    c.check("dual_coaction_grading", dual.holds() && totals_ok, || {
        format!("{dual:?}")
    });

    c.0
}

/// Aggregate result of [`check_system`] over many systems.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub systems: usize,
    pub violations: Vec<(String, Violation)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn run_suite<'a>(systems: impl IntoIterator<Item = &'a PartialSystem>) -> SuiteReport {
    let mut count = 0;
    let mut violations = Vec::new();
    for sys in systems {
        count += 1;
        for v in check_system(sys) {
            violations.push((format!("{sys:?}"), v));
        }
    }
    SuiteReport {
        systems: count,
        violations,
    }
}
