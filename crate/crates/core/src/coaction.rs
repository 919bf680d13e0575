//! The dual coaction as the ℤ-grading of the crossed product, inner coactions
//! given by partitions of unity, and the verdict on crossed product duality.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra_core::IdealSet;
use crate::crossed_product::{
    graded_adjoint, graded_multiply, spectral_dims, standard_rep, structure, GradedElement,
    SpectralDims, StructureDescriptor, SummandKind,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::partial_system::{intersect, union, Direction, OrbitKind, PartialSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualCoactionReport {
    pub dims: SpectralDims,
    /// Each spectral subspace is spanned by the monomials `a m^n`, `a ∈ D_n`.
    pub grading_matches: bool,
    pub multiplication_additive: bool,
    pub adjoint_negates: bool,
}

impl DualCoactionReport {
    pub fn holds(&self) -> bool {
        self.grading_matches && self.multiplication_additive && self.adjoint_negates
    }
}

/// Checks that the grading of the crossed product is the dual coaction:
/// degree `n` has dimension `dim D_n`, products add degrees, adjoints negate them.
pub fn dual_coaction_check(sys: &PartialSystem) -> DualCoactionReport {
    let dims = spectral_dims(sys);
    let window = dims.window;
    let alg = sys.algebra();
    let mut monomials = Vec::new();
    let mut grading_matches = true;
    for n in -window..=window {
        let mut count = 0u64;
        for b in 0..alg.len() {
            let d = alg.dim_of(b) as usize;
            for i in 0..d {
                for j in 0..d {
                    if let Ok(x) = GradedElement::monomial(sys, n, b, Matrix::unit(d, i, j)) {
                        count += 1;
                        if i == 0 && j == 0 {
                            monomials.push((n, x));
                        }
                    }
                }
            }
        }
        grading_matches &= count == dims.at(n);
    }
    let mut multiplication_additive = true;
    let mut adjoint_negates = true;
    for (n, x) in &monomials {
        adjoint_negates &= graded_adjoint(sys, x).degrees().all(|d| d == -n);
        for (k, y) in &monomials {
            multiplication_additive &= graded_multiply(sys, x, y).degrees().all(|d| d == n + k);
        }
    }
    DualCoactionReport {
        dims,
        grading_matches,
        multiplication_additive,
        adjoint_negates,
    }
}

/// `q_k` for the inner coaction; absent keys are the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionOfUnity {
    pub q: BTreeMap<i64, IdealSet>,
}

impl PartitionOfUnity {
    pub fn get(&self, k: i64) -> Option<&IdealSet> {
        self.q.get(&k)
    }
}

fn require_no_core(sys: &PartialSystem) -> Result<()> {
    let core = sys.wold().core;
    if core.is_empty() {
        Ok(())
    } else {
        Err(Error::CoreNonEmpty(core.ids()))
    }
}

/// `q_n = p_∞(p_{n+1} − p_n)` for `n < 0` and `q_n = p_n − p_{n+1}` for `n ≥ 0`.
pub fn inner_partition(sys: &PartialSystem) -> Result<PartitionOfUnity> {
    require_no_core(sys)?;
    let d_inf = sys.d_infinity(Direction::Forward);
    let w = sys.stabilization_bound() + 1;
    let mut q = BTreeMap::new();
    for n in -w..=w {
        let set = if n < 0 {
            intersect(&d_inf, &sys.ideal_d(n + 1).minus(&sys.ideal_d(n)))
        } else {
            sys.ideal_d(n).minus(&sys.ideal_d(n + 1))
        };
        if !set.is_empty() {
            q.insert(n, set);
        }
    }
    Ok(PartitionOfUnity { q })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerPartitionCheck {
    pub disjoint: bool,
    pub covers: bool,
    /// `f(q_k ∩ D_{−1}) = q_{k+1} ∩ D_1` for every `k`.
    pub shift_relation: bool,
    /// `π(a)u^n Q_k = Q_{n+k} π(a)u^n` in the standard representation of each orbit.
    pub rep_covariance: bool,
}

impl InnerPartitionCheck {
    pub fn holds(&self) -> bool {
        self.disjoint && self.covers && self.shift_relation && self.rep_covariance
    }
}

pub fn check_inner_partition(sys: &PartialSystem, part: &PartitionOfUnity) -> InnerPartitionCheck {
    let sets: Vec<&IdealSet> = part.q.values().collect();
    let total: usize = sets.iter().map(|s| s.len()).sum();
    let cover = sets.iter().fold(sys.empty_ideal(), |acc, s| union(&acc, s));
    let disjoint = total == cover.len();
    let covers = cover.is_full();

    let empty = sys.empty_ideal();
    let q = |k: i64| part.q.get(&k).unwrap_or(&empty);
    let w = sys.stabilization_bound() + 2;
    let shift_relation = (-w..=w).all(|k| {
        sys.apply_power(1, &intersect(q(k), &sys.ideal_d(-1)))
            == intersect(q(k + 1), &sys.ideal_d(1))
    });

    let mut rep_covariance = true;
    for orbit in &sys.orbits().orbits {
        let rep = standard_rep(sys, orbit);
        let projections: BTreeMap<i64, _> = (-2 * w..=2 * w)
            .map(|k| (k, rep.pi_projection(q(k))))
            .collect();
        for &b in &orbit.blocks {
            let d = orbit.block_dim as usize;
            for n in -w..=w {
                let Ok(x) = GradedElement::monomial(sys, n, b, Matrix::unit(d, 0, d - 1)) else {
                    continue;
                };
                let image = rep.represent(&x).expect("block lies on the orbit");
                for k in -w..=w {
                    rep_covariance &= &image * &projections[&k] == &projections[&(n + k)] * &image;
                }
            }
        }
    }
    InnerPartitionCheck {
        disjoint,
        covers,
        shift_relation,
        rep_covariance,
    }
}

/// `(A ×_α ℤ) ×_{α̂} ℤ ≅ (A ×_α ℤ) ⊗ c_0(ℤ)` when the dual coaction is inner.
pub fn inner_crossed_product(sys: &PartialSystem) -> Result<StructureDescriptor> {
    require_no_core(sys)?;
    Ok(structure(sys).retag(SummandKind::RepeatedCountably))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitVerdict {
    pub orbit: Vec<String>,
    pub kind: OrbitKind,
    pub holds: bool,
    /// The double crossed product.
    pub lhs: StructureDescriptor,
    /// The orbit algebra tensored with the compacts.
    pub rhs: StructureDescriptor,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityVerdict {
    pub per_orbit: Vec<OrbitVerdict>,
    pub global_holds: bool,
}

/// Compares the double crossed product with `A ⊗ K` one orbit at a time.
///
/// On a cycle the classical duality theorem applies. On a chain of length `n`
/// the dual coaction is inner, so the double crossed product is
/// `M_{nd} ⊗ c_0(ℤ)`, whose primitive spectrum is infinite, while the
/// stabilized orbit algebra has `n` points.
pub fn duality_verdict(sys: &PartialSystem) -> DualityVerdict {
    let orbits = sys.orbits();
    let per_orbit: Vec<OrbitVerdict> = orbits
        .orbits
        .iter()
        .map(|orbit| {
            let d = u64::from(orbit.block_dim);
            let rhs = StructureDescriptor::of(SummandKind::FiniteMatrix, &vec![d; orbit.len()])
                .stabilized();
            let ids = orbits.ids(orbit);
            match orbit.kind {
                OrbitKind::Cycle => OrbitVerdict {
                    orbit: ids,
                    kind: orbit.kind,
                    holds: true,
                    lhs: rhs.clone(),
                    rhs,
                    witness: "automorphism orbit".into(),
                },
                OrbitKind::Chain => {
                    let restricted = sys
                        .restrict(&orbit.ideal(sys))
                        .expect("orbits are invariant");
                    let lhs = inner_crossed_product(&restricted).expect("chains have no core");
                    let witness = format!(
                        "primitive spectrum: {} vs {} points",
                        spectrum_label(&lhs),
                        rhs.summands().len()
                    );
                    OrbitVerdict {
                        orbit: ids,
                        kind: orbit.kind,
                        holds: lhs == rhs,
                        lhs,
                        rhs,
                        witness,
                    }
                }
            }
        })
        .collect();
    let global_holds = per_orbit.iter().all(|v| v.holds);
    DualityVerdict {
        per_orbit,
        global_holds,
    }
}

fn spectrum_label(d: &StructureDescriptor) -> String {
    match d.spectrum_size() {
        Some(n) => format!("{n} points"),
        None => "countably infinite".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialSubquotientReport {
    /// `I = D_{−1} + D_1`.
    pub ideal: IdealSet,
    pub quotient_map_empty: bool,
    pub descriptor: StructureDescriptor,
    pub expected: StructureDescriptor,
    pub holds: bool,
}

/// The quotient of the double crossed product by that of `I = D_{−1} + D_1`
/// is `A/I ⊗ c_0(ℤ)`: one countably repeated block per block outside `I`.
pub fn special_subquotient_check(sys: &PartialSystem) -> Result<SpecialSubquotientReport> {
    let ideal = union(&sys.ideal_d(-1), &sys.ideal_d(1));
    let quot = sys.quotient(&ideal)?;
    let quotient_map_empty = quot.map().pairs().is_empty();
    let descriptor = inner_crossed_product(&quot)?;
    let expected = StructureDescriptor::new(
        ideal
            .complement()
            .members()
            .iter()
            .map(|&b| crate::crossed_product::Summand {
                kind: SummandKind::RepeatedCountably,
                size: u64::from(sys.algebra().dim_of(b)),
            }),
        false,
    );
    let holds = quotient_map_empty && descriptor == expected;
    Ok(SpecialSubquotientReport {
        ideal,
        quotient_map_empty,
        descriptor,
        expected,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorDecomposition {
    pub i1: IdealSet,
    pub i2: IdealSet,
    pub i3: IdealSet,
    pub disjoint: bool,
    pub covers: bool,
    pub invariant: bool,
    /// The inner partition exists and checks out on each restriction.
    pub inner_on_each: bool,
}

impl CorDecomposition {
    pub fn holds(&self) -> bool {
        self.disjoint && self.covers && self.invariant && self.inner_on_each
    }
}

/// `I_1 = Σ_{n<0} p_∞(p_{n+1} − p_n)A`, `I_2 = Σ_{n>0} p_{−∞}(p_{n−1} − p_n)A`,
/// `I_3 = Σ_{n,k>0} (1 − p_∞ − p_{−∞})(p_{1−n} − p_{−n})(p_{k−1} − p_k)A`.
pub fn cor_decomposition(sys: &PartialSystem) -> Result<CorDecomposition> {
    require_no_core(sys)?;
    let d = |n: i64| sys.ideal_d(n);
    let d_inf = sys.d_infinity(Direction::Forward);
    let d_neg_inf = sys.d_infinity(Direction::Backward);
    let w = sys.stabilization_bound() + 1;
    let mut i1 = sys.empty_ideal();
    let mut i2 = sys.empty_ideal();
    let mut i3 = sys.empty_ideal();
    let rest = union(&d_inf, &d_neg_inf).complement();
    for n in 1..=w {
        i1 = union(&i1, &intersect(&d_inf, &d(1 - n).minus(&d(-n))));
        i2 = union(&i2, &intersect(&d_neg_inf, &d(n - 1).minus(&d(n))));
        for k in 1..=w {
            let term = intersect(
                &intersect(&rest, &d(1 - n).minus(&d(-n))),
                &d(k - 1).minus(&d(k)),
            );
            i3 = union(&i3, &term);
        }
    }
    let parts = [&i1, &i2, &i3];
    let disjoint = i1.len() + i2.len() + i3.len() == union(&union(&i1, &i2), &i3).len();
    let covers = union(&union(&i1, &i2), &i3).is_full();
    let invariant = parts.iter().all(|p| sys.is_invariant(p));
    let inner_on_each = invariant
        && parts.iter().all(|p| {
            let sub = sys.restrict(p).expect("checked invariant");
            inner_partition(&sub).is_ok_and(|q| check_inner_partition(&sub, &q).holds())
        });
    Ok(CorDecomposition {
        i1,
        i2,
        i3,
        disjoint,
        covers,
        invariant,
        inner_on_each,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift3() -> PartialSystem {
        PartialSystem::numbered(&[1, 1, 1], &[(1, 2), (2, 3)]).unwrap()
    }

    fn ids(set: &IdealSet) -> Vec<String> {
        set.ids()
    }

    #[test]
    fn dual_coaction_of_the_shift() {
        let report = dual_coaction_check(&shift3());
        assert!(report.holds());
        let listed: Vec<u64> = (-2..=2).map(|n| report.dims.at(n)).collect();
        assert_eq!(listed, vec![1, 2, 3, 2, 1]);
        assert_eq!(report.dims.support(), vec![-2, -1, 0, 1, 2]);
        let trivial = PartialSystem::numbered(&[2], &[]).unwrap();
        assert_eq!(dual_coaction_check(&trivial).dims.support(), vec![0]);
        let auto = PartialSystem::numbered(&[1, 2], &[(1, 1), (2, 2)]).unwrap();
        let r = dual_coaction_check(&auto);
        assert!(r.holds() && (-4..=4).all(|n| r.dims.at(n) == 5));
    }

    #[test]
    fn shift_partition() {
        let sys = shift3();
        let q = inner_partition(&sys).unwrap();
        assert_eq!(q.q.len(), 3);
        assert_eq!(ids(q.get(0).unwrap()), ["1"]);
        assert_eq!(ids(q.get(1).unwrap()), ["2"]);
        assert_eq!(ids(q.get(2).unwrap()), ["3"]);
        assert!(check_inner_partition(&sys, &q).holds());
        let empty = PartialSystem::numbered(&[1, 1], &[]).unwrap();
        let q = inner_partition(&empty).unwrap();
        assert_eq!(q.q.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert!(q.get(0).unwrap().is_full());
    }

    #[test]
    fn core_is_rejected() {
        let cyc = PartialSystem::numbered(&[1, 1, 1], &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(
            inner_partition(&cyc),
            Err(Error::CoreNonEmpty(vec!["1".into(), "2".into()]))
        );
        assert!(inner_crossed_product(&cyc).is_err());
        assert!(cor_decomposition(&cyc).is_err());
    }

    #[test]
    fn inner_crossed_products() {
        assert_eq!(
            inner_crossed_product(&shift3()).unwrap().to_string(),
            "{repeated_countably(3)}"
        );
        let one = PartialSystem::numbered(&[1], &[]).unwrap();
        assert_eq!(
            inner_crossed_product(&one).unwrap(),
            StructureDescriptor::of(SummandKind::RepeatedCountably, &[1])
        );
        let two_chains =
            PartialSystem::numbered(&[1, 1, 1, 1, 1], &[(1, 2), (2, 3), (4, 5)]).unwrap();
        assert_eq!(
            inner_crossed_product(&two_chains).unwrap(),
            StructureDescriptor::of(SummandKind::RepeatedCountably, &[3, 2])
        );
    }

    #[test]
    fn verdicts() {
        let cyc = PartialSystem::numbered(&[1, 1], &[(1, 2), (2, 1)]).unwrap();
        let v = duality_verdict(&cyc);
        assert!(v.global_holds);
        assert_eq!(v.per_orbit[0].witness, "automorphism orbit");

        let v = duality_verdict(&shift3());
        assert!(!v.global_holds);
        let o = &v.per_orbit[0];
        assert_eq!(
            o.lhs,
            StructureDescriptor::of(SummandKind::RepeatedCountably, &[3])
        );
        assert_eq!(o.rhs.spectrum_size(), Some(3));
        assert_eq!(
            o.witness,
            "primitive spectrum: countably infinite vs 3 points"
        );

        let mixed = PartialSystem::numbered(&[1, 1, 1, 1], &[(1, 2), (2, 1), (3, 4)]).unwrap();
        let v = duality_verdict(&mixed);
        assert!(!v.global_holds);
        let kinds: Vec<(OrbitKind, bool)> = v.per_orbit.iter().map(|o| (o.kind, o.holds)).collect();
        assert_eq!(
            kinds,
            vec![(OrbitKind::Cycle, true), (OrbitKind::Chain, false)]
        );
    }

    #[test]
    fn special_subquotients() {
        let r = special_subquotient_check(&shift3()).unwrap();
        assert!(r.ideal.is_full() && r.descriptor.is_empty() && r.holds);
        let empty = PartialSystem::numbered(&[1, 1], &[]).unwrap();
        let r = special_subquotient_check(&empty).unwrap();
        assert!(r.ideal.is_empty());
        assert_eq!(
            r.descriptor,
            StructureDescriptor::of(SummandKind::RepeatedCountably, &[1, 1])
        );
        let with_point = PartialSystem::numbered(&[1, 1, 3], &[(1, 2)]).unwrap();
        let r = special_subquotient_check(&with_point).unwrap();
        assert_eq!(r.descriptor.to_string(), "{repeated_countably(3)}");
        assert!(r.holds);
    }

    #[test]
    fn three_way_decomposition() {
        let c = cor_decomposition(&shift3()).unwrap();
        assert!(c.i1.is_empty() && c.i2.is_empty() && c.i3.is_full());
        assert!(c.holds());
        let empty = PartialSystem::numbered(&[1, 2], &[]).unwrap();
        let c = cor_decomposition(&empty).unwrap();
        assert!(c.i3.is_full() && c.holds());
    }
}
