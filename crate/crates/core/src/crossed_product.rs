//! The crossed product `A ×_α ℤ` as a ℤ-graded *-algebra `⊕_n D_n m^n`,
//! covariant representations of its orbits, and isomorphism-class descriptors.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra_core::IdealSet;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::partial_system::{Orbit, OrbitKind, PartialSystem};
use crate::scalar::{GaussQ, Laurent, StarRing};
use crate::star_engine::MatrixStarAlgebra;

type Component = BTreeMap<usize, Matrix<GaussQ>>;

/// A finite sum `Σ_n a_n m^n` with `a_n ∈ D_n`, each `a_n` a tuple of block
/// matrices keyed by block index. Zero blocks are never stored.
#[derive(Clone, PartialEq, Default)]
pub struct GradedElement {
    components: BTreeMap<i64, Component>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    /// Validates that every block at degree `n` lies in `D_n` and has the block's shape.
    pub fn new(
        sys: &PartialSystem,
        components: impl IntoIterator<Item = (i64, usize, Matrix<GaussQ>)>,
    ) -> Result<Self> {
        let mut out = GradedElement::zero();
        for (degree, block, m) in components {
            let alg = sys.algebra();
            if block >= alg.len() {
                return Err(Error::UnknownBlock(format!("#{block}")));
            }
            let dim = alg.dim_of(block);
            if m.rows() != dim as usize || m.cols() != dim as usize {
                return Err(Error::BlockShape {
                    block: alg.id_of(block).to_string(),
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
            if m.is_zero() {
                continue;
            }
            if !sys.ideal_d(degree).contains(block) {
                return Err(Error::SupportOutsideIdeal {
                    degree,
                    block: alg.id_of(block).to_string(),
                });
            }
            out.add_block(degree, block, m);
        }
        Ok(out)
    }

    /// `a m^n` with `a` supported on a single block.
    pub fn monomial(
        sys: &PartialSystem,
        degree: i64,
        block: usize,
        m: Matrix<GaussQ>,
    ) -> Result<Self> {
        GradedElement::new(sys, [(degree, block, m)])
    }

    /// The identity of `A`, sitting in degree 0.
    pub fn unit(sys: &PartialSystem) -> Self {
        let alg = sys.algebra();
        GradedElement::new(
            sys,
            (0..alg.len()).map(|b| (0, b, Matrix::identity(alg.dim_of(b) as usize))),
        )
        .expect("D_0 is everything")
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.components.keys().copied()
    }

    pub fn component(&self, degree: i64, block: usize) -> Option<&Matrix<GaussQ>> {
        self.components.get(&degree)?.get(&block)
    }

    /// `(degree, block, matrix)` triples in order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize, &Matrix<GaussQ>)> {
        self.components
            .iter()
            .flat_map(|(&n, c)| c.iter().map(move |(&b, m)| (n, b, m)))
    }

    pub fn support_blocks(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.values().flat_map(|c| c.keys().copied())
    }

    fn add_block(&mut self, degree: i64, block: usize, m: Matrix<GaussQ>) {
        let comp = self.components.entry(degree).or_default();
        let sum = match comp.remove(&block) {
            Some(prev) => &prev + &m,
            None => m,
        };
        if !sum.is_zero() {
            comp.insert(block, sum);
        }
        if comp.is_empty() {
            self.components.remove(&degree);
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (n, b, m) in other.entries() {
            out.add_block(n, b, m.clone());
        }
        out
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for (n, b, m) in self.entries() {
            list.entry(&format_args!("deg {n} block {b}: {m:?}"));
        }
        list.finish()
    }
}

/// `(xy)_n = Σ_k α^k(α^{−k}(x_k) y_{n−k})`, evaluated blockwise: block `b` of
/// `x_k` is carried to `f^{−k}(b)`, multiplied there, and carried back.
pub fn graded_multiply(sys: &PartialSystem, x: &GradedElement, y: &GradedElement) -> GradedElement {
    let mut out = GradedElement::zero();
    for (&k, xk) in &x.components {
        let back = sys.power(-k);
        for (&b, a) in xk {
            let src = back.apply(b).expect("component lies in D_k");
            for (&j, yj) in &y.components {
                if let Some(c) = yj.get(&src) {
                    out.add_block(k + j, b, a * c);
                }
            }
        }
    }
    out
}

/// `(x*)_n = α^n((x_{−n})^*)`.
pub fn graded_adjoint(sys: &PartialSystem, x: &GradedElement) -> GradedElement {
    let mut out = GradedElement::zero();
    for (&m, xm) in &x.components {
        let forward = sys.power(-m);
        for (&c, a) in xm {
            let target = forward
                .apply(c)
                .expect("component lies in D_m = dom f^{-m}");
            out.add_block(-m, target, a.adjoint());
        }
    }
    out
}

/// Dimensions of the spectral subspaces `D_n m^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralDims {
    /// `n ↦ dim D_n` for `|n| ≤ window`.
    pub dims: BTreeMap<i64, u64>,
    pub window: i64,
    /// Value for every `n ≥ window`.
    pub tail_positive: u64,
    /// Value for every `n ≤ −window`.
    pub tail_negative: u64,
}

impl SpectralDims {
    pub fn at(&self, n: i64) -> u64 {
        if n >= self.window {
            self.tail_positive
        } else if n <= -self.window {
            self.tail_negative
        } else {
            self.dims[&n]
        }
    }

    /// `Σ_n dim D_n`, finite exactly when both tails vanish.
    pub fn total(&self) -> Option<u64> {
        (self.tail_positive == 0 && self.tail_negative == 0).then(|| self.dims.values().sum())
    }

    /// Degrees with a nonzero subspace inside the window.
    pub fn support(&self) -> Vec<i64> {
        self.dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&n, _)| n)
            .collect()
    }
}

pub fn spectral_dims(sys: &PartialSystem) -> SpectralDims {
    let window = sys.stabilization_bound().max(1);
    let dims = (-window..=window)
        .map(|n| (n, sys.ideal_d(n).dim()))
        .collect();
    SpectralDims {
        dims,
        window,
        tail_positive: sys.ideal_d(window).dim(),
        tail_negative: sys.ideal_d(-window).dim(),
    }
}

/// A covariant pair `(π, u)` on the slots of one orbit. Entries are Laurent
/// polynomials so that a cycle's wrap-around can carry the variable `z`.
#[derive(Debug, Clone)]
pub struct CovariantRep {
    pub space_dim: usize,
    pub kind: OrbitKind,
    /// `(block, offset)`: block acts on coordinates `offset..offset + dim`.
    pub slots: Vec<(usize, usize)>,
    pub u: Matrix<Laurent>,
}

/// Outcome of checking the covariance relations of a [`CovariantRep`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepCheck {
    pub range_projection: bool,
    pub source_projection: bool,
    pub covariance: bool,
    pub power_projections: bool,
}

impl RepCheck {
    pub fn all_hold(&self) -> bool {
        self.range_projection && self.source_projection && self.covariance && self.power_projections
    }
}

impl CovariantRep {
    fn offset_of(&self, block: usize) -> Option<usize> {
        self.slots
            .iter()
            .find(|(b, _)| *b == block)
            .map(|&(_, o)| o)
    }

    /// `π(a)` for `a` supported on `block`.
    pub fn pi_block(&self, block: usize, a: &Matrix<GaussQ>) -> Option<Matrix<Laurent>> {
        let offset = self.offset_of(block)?;
        let mut m = Matrix::zeros(self.space_dim, self.space_dim);
        m.place_diagonal(offset, &a.to_laurent());
        Some(m)
    }

    /// `π(p_I)`; blocks of `I` outside the orbit act as zero.
    pub fn pi_projection(&self, ideal: &IdealSet) -> Matrix<Laurent> {
        let mut m = Matrix::zeros(self.space_dim, self.space_dim);
        let dim = self.block_dim();
        for &(b, offset) in &self.slots {
            if ideal.contains(b) {
                m.place_diagonal(offset, &Matrix::identity(dim));
            }
        }
        m
    }

    fn block_dim(&self) -> usize {
        self.space_dim / self.slots.len().max(1)
    }

    /// `u^n`, with `u^{−n} = (u*)^n`.
    pub fn u_power(&self, n: i64) -> Matrix<Laurent> {
        if n >= 0 {
            self.u.pow(n as u32)
        } else {
            self.u.adjoint().pow(n.unsigned_abs() as u32)
        }
    }

    /// The chain case's `u` over ℚ(i); `None` for cycles.
    pub fn u_gaussian(&self) -> Option<Matrix<GaussQ>> {
        self.u.to_gaussian()
    }

    pub fn verify(&self, sys: &PartialSystem) -> RepCheck {
        let u_star = self.u.adjoint();
        let range_projection = &self.u * &u_star == self.pi_projection(&sys.ideal_d(1));
        let source_projection = &u_star * &self.u == self.pi_projection(&sys.ideal_d(-1));
        let dim = self.block_dim();
        let domain = sys.ideal_d(-1);
        let mut covariance = true;
        for &(b, _) in &self.slots {
            if !domain.contains(b) {
                continue;
            }
            let image = sys.map().apply(b).expect("b is in the domain");
            for i in 0..dim {
                for j in 0..dim {
                    let e = Matrix::unit(dim, i, j);
                    let lhs = &(&self.u * &self.pi_block(b, &e).expect("slot")) * &u_star;
                    let rhs = self.pi_block(image, &e).expect("orbits are invariant");
                    covariance &= lhs == rhs;
                }
            }
        }
        let bound = self.slots.len() as i64 + 1;
        let power_projections = (-bound..=bound)
            .all(|n| &self.u_power(n) * &self.u_power(-n) == self.pi_projection(&sys.ideal_d(n)));
        RepCheck {
            range_projection,
            source_projection,
            covariance,
            power_projections,
        }
    }

    /// `(π × u)(x) = Σ_n π(x_n) u^n`.
    pub fn represent(&self, x: &GradedElement) -> Result<Matrix<Laurent>> {
        let mut out = Matrix::zeros(self.space_dim, self.space_dim);
        let mut powers: BTreeMap<i64, Matrix<Laurent>> = BTreeMap::new();
        for (n, b, a) in x.entries() {
            let pa = self
                .pi_block(b, a)
                .ok_or_else(|| Error::SupportOutsideOrbit(format!("#{b}")))?;
            let un = powers.entry(n).or_insert_with(|| self.u_power(n));
            out = &out + &(&pa * un);
        }
        Ok(out)
    }

    /// Matrices `π(E_ij)` for every block and matrix unit, together with `u`:
    /// the generators of `C*(π, u)`. Only defined for chains.
    pub fn oracle_generators(&self) -> Option<Vec<Matrix<GaussQ>>> {
        let u = self.u_gaussian()?;
        let dim = self.block_dim();
        let mut gens = Vec::new();
        for &(_, offset) in &self.slots {
            for i in 0..dim {
                for j in 0..dim {
                    gens.push(Matrix::unit(self.space_dim, offset + i, offset + j));
                }
            }
        }
        gens.push(u);
        Some(gens)
    }
}

/// The block-shift representation of an orbit: slot `j` carries the `j`-th
/// block along the orbit and `u` moves slot `j` to slot `j + 1`. On a cycle the
/// wrap-around entry carries the Laurent variable `z`.
pub fn standard_rep(sys: &PartialSystem, orbit: &Orbit) -> CovariantRep {
    let d = orbit.block_dim as usize;
    let len = orbit.len();
    let space_dim = len * d;
    let slots: Vec<(usize, usize)> = orbit
        .blocks
        .iter()
        .enumerate()
        .map(|(j, &b)| (b, j * d))
        .collect();
    let mut u = Matrix::zeros(space_dim, space_dim);
    for j in 0..len.saturating_sub(1) {
        for i in 0..d {
            u.set((j + 1) * d + i, j * d + i, Laurent::one());
        }
    }
    if orbit.kind == OrbitKind::Cycle {
        for i in 0..d {
            let (row, col) = (i, (len - 1) * d + i);
            let entry = u.get(row, col).clone() + Laurent::monomial(1);
            u.set(row, col, entry);
        }
    }
    debug_assert!(orbit
        .blocks
        .iter()
        .all(|&b| sys.algebra().dim_of(b) as usize == d));
    CovariantRep {
        space_dim,
        kind: orbit.kind,
        slots,
        u,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandKind {
    FiniteMatrix,
    CircleFibered,
    RepeatedCountably,
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandKind::FiniteMatrix => "finite_matrix",
            SummandKind::CircleFibered => "circle_fibered",
            SummandKind::RepeatedCountably => "repeated_countably",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Summand {
    pub kind: SummandKind,
    pub size: u64,
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.size)
    }
}

/// An isomorphism class, as a multiset of summands. `stable` marks a class
/// already tensored with the compacts; it is part of the comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StructureDescriptor {
    summands: Vec<Summand>,
    pub stable: bool,
}

impl StructureDescriptor {
    pub fn new(summands: impl IntoIterator<Item = Summand>, stable: bool) -> Self {
        let mut summands: Vec<Summand> = summands.into_iter().collect();
        summands.sort_by(|a, b| b.size.cmp(&a.size).then(a.kind.cmp(&b.kind)));
        StructureDescriptor { summands, stable }
    }

    pub fn empty() -> Self {
        StructureDescriptor::new([], false)
    }

    pub fn of(kind: SummandKind, sizes: &[u64]) -> Self {
        StructureDescriptor::new(sizes.iter().map(|&size| Summand { kind, size }), false)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Multiset union.
    pub fn merge(&self, other: &StructureDescriptor) -> StructureDescriptor {
        StructureDescriptor::new(
            self.summands.iter().chain(&other.summands).copied(),
            self.stable && other.stable,
        )
    }

    /// Same summands with every kind replaced.
    pub fn retag(&self, kind: SummandKind) -> StructureDescriptor {
        StructureDescriptor::new(
            self.summands.iter().map(|s| Summand { kind, size: s.size }),
            self.stable,
        )
    }

    pub fn stabilized(&self) -> StructureDescriptor {
        StructureDescriptor {
            summands: self.summands.clone(),
            stable: true,
        }
    }

    /// Sizes of finite-matrix summands, largest first.
    pub fn finite_sizes(&self) -> Vec<u64> {
        self.summands
            .iter()
            .filter(|s| s.kind == SummandKind::FiniteMatrix)
            .map(|s| s.size)
            .collect()
    }

    /// Number of points of the primitive ideal space, `None` when infinite.
    pub fn spectrum_size(&self) -> Option<u64> {
        if self
            .summands
            .iter()
            .any(|s| s.kind != SummandKind::FiniteMatrix)
        {
            None
        } else {
            Some(self.summands.len() as u64)
        }
    }
}

impl fmt::Display for StructureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(Summand::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if self.stable {
            write!(f, " ⊗ K")?;
        }
        Ok(())
    }
}

/// The summand contributed by one orbit.
pub fn orbit_summand(orbit: &Orbit) -> Summand {
    let size = orbit.len() as u64 * u64::from(orbit.block_dim);
    let kind = match orbit.kind {
        OrbitKind::Chain => SummandKind::FiniteMatrix,
        OrbitKind::Cycle => SummandKind::CircleFibered,
    };
    Summand { kind, size }
}

/// Chains of length `n` and dimension `d` give `M_{nd}`; cycles of length `k`
/// give `M_{kd}(C(𝕋))`.
pub fn structure(sys: &PartialSystem) -> StructureDescriptor {
    StructureDescriptor::new(sys.orbits().orbits.iter().map(orbit_summand), false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedCrossedProduct {
    pub descriptor: StructureDescriptor,
    pub dims: SpectralDims,
    /// `dims` agrees with `n ↦ dim(I ∩ D_n)` computed in the ambient system.
    pub dims_match_ambient: bool,
}

pub fn restrict_crossed_product(
    sys: &PartialSystem,
    ideal: &IdealSet,
) -> Result<RestrictedCrossedProduct> {
    let sub = sys.restrict(ideal)?;
    let dims = spectral_dims(&sub);
    let window = sys.stabilization_bound().max(1) + 1;
    let dims_match_ambient = (-window..=window).all(|n| {
        let ambient = ideal.product(&sys.ideal_d(n)).expect("same parent").dim();
        dims.at(n) == ambient
    });
    Ok(RestrictedCrossedProduct {
        descriptor: structure(&sub),
        dims,
        dims_match_ambient,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientCrossedProduct {
    pub descriptor: StructureDescriptor,
    pub dims: SpectralDims,
    /// `dim D_n(sys) = dim D_n(sys|I) + dim D_n(sys/I)` in every degree.
    pub additivity_holds: bool,
    /// The descriptors of ideal and quotient together give that of `sys`.
    pub descriptors_add_up: bool,
}

pub fn quotient_crossed_product(
    sys: &PartialSystem,
    ideal: &IdealSet,
) -> Result<QuotientCrossedProduct> {
    let restricted = restrict_crossed_product(sys, ideal)?;
    let quot = sys.quotient(ideal)?;
    let dims = spectral_dims(&quot);
    let full = spectral_dims(sys);
    let window = full.window + 1;
    let additivity_holds =
        (-window..=window).all(|n| full.at(n) == restricted.dims.at(n) + dims.at(n));
    let descriptor = structure(&quot);
    let descriptors_add_up = restricted.descriptor.merge(&descriptor) == structure(sys);
    Ok(QuotientCrossedProduct {
        descriptor,
        dims,
        additivity_holds,
        descriptors_add_up,
    })
}

/// Result of running the star-algebra oracle on one chain orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub orbit: Vec<String>,
    pub predicted: u64,
    pub algebra_dim: usize,
    pub blocks: Vec<usize>,
    pub matches: bool,
}

/// Saturate the standard representation of a chain orbit and compare its
/// Wedderburn decomposition with [`structure`]. `Ok(None)` for cycles.
pub fn orbit_oracle(sys: &PartialSystem, orbit: &Orbit) -> Result<Option<OracleCheck>> {
    let rep = standard_rep(sys, orbit);
    let Some(gens) = rep.oracle_generators() else {
        return Ok(None);
    };
    let alg = MatrixStarAlgebra::saturate(&gens)?;
    let blocks = alg.wedderburn()?;
    let predicted = orbit_summand(orbit).size;
    let matches = blocks == [predicted as usize] && alg.dim() as u64 == predicted * predicted;
    Ok(Some(OracleCheck {
        orbit: orbit
            .blocks
            .iter()
            .map(|&b| sys.algebra().id_of(b).to_string())
            .collect(),
        predicted,
        algebra_dim: alg.dim(),
        blocks,
        matches,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::BlockAlgebra;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shift3() -> PartialSystem {
        PartialSystem::numbered(&[1, 1, 1], &[(1, 2), (2, 3)]).unwrap()
    }

    fn one() -> Matrix<GaussQ> {
        Matrix::identity(1)
    }

    #[test]
    fn partial_isometry_relation() {
        let sys = shift3();
        let x = GradedElement::monomial(&sys, 1, 1, one()).unwrap();
        let prod = graded_multiply(&sys, &x, &graded_adjoint(&sys, &x));
        assert_eq!(prod, GradedElement::monomial(&sys, 0, 1, one()).unwrap());
    }

    #[test]
    fn adjoint_moves_blocks() {
        let sys = shift3();
        let x = GradedElement::monomial(&sys, -1, 0, one()).unwrap();
        let adj = graded_adjoint(&sys, &x);
        assert_eq!(adj, GradedElement::monomial(&sys, 1, 1, one()).unwrap());
        assert_eq!(graded_adjoint(&sys, &adj), x);
    }

    #[test]
    fn support_is_validated() {
        let sys = shift3();
        assert_eq!(
            GradedElement::monomial(&sys, 1, 0, one()),
            Err(Error::SupportOutsideIdeal {
                degree: 1,
                block: "1".into()
            })
        );
        assert!(matches!(
            GradedElement::monomial(&sys, 0, 0, Matrix::identity(2)),
            Err(Error::BlockShape { .. })
        ));
    }

    #[test]
    fn shift_spectral_dims() {
        for n in 1..=5u32 {
            let pairs: Vec<(usize, usize)> = (1..n as usize).map(|i| (i, i + 1)).collect();
            let sys = PartialSystem::numbered(&vec![1; n as usize], &pairs).unwrap();
            let dims = spectral_dims(&sys);
            for k in -(n as i64) - 2..=n as i64 + 2 {
                let expected = (n as i64 - k.abs()).max(0) as u64;
                assert_eq!(dims.at(k), expected);
            }
            assert_eq!(dims.total(), Some(u64::from(n * n)));
        }
        let trivial = PartialSystem::numbered(&[1, 2], &[]).unwrap();
        assert_eq!(spectral_dims(&trivial).support(), vec![0]);
        let cycle = PartialSystem::numbered(&[2, 2], &[(1, 2), (2, 1)]).unwrap();
        let dims = spectral_dims(&cycle);
        assert!((-5..=5).all(|k| dims.at(k) == 8));
        assert_eq!(dims.total(), None);
    }

    #[test]
    fn standard_reps_are_covariant() {
        let sys = PartialSystem::new(
            BlockAlgebra::new(
                ["a", "b", "c", "d"]
                    .iter()
                    .map(|id| crate::Block {
                        id: id.to_string(),
                        dim: 2,
                    })
                    .collect(),
            )
            .unwrap(),
            &[("a", "b"), ("b", "a"), ("c", "d")],
        )
        .unwrap();
        for orbit in &sys.orbits().orbits {
            let rep = standard_rep(&sys, orbit);
            assert!(rep.verify(&sys).all_hold(), "{orbit:?}");
        }
        let shift = shift3();
        let rep = standard_rep(&shift, &shift.orbits().orbits[0]);
        let uu = &rep.u * &rep.u.adjoint();
        assert_eq!(
            uu.to_gaussian().unwrap(),
            Matrix::from_ints(3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 1])
        );
        // π(e_2) u = E_{21}
        let x = GradedElement::monomial(&shift, 1, 1, one()).unwrap();
        assert_eq!(
            rep.represent(&x).unwrap().to_gaussian().unwrap(),
            Matrix::unit(3, 1, 0)
        );
    }

    #[test]
    fn two_cycle_rep() {
        let sys = PartialSystem::numbered(&[1, 1], &[(1, 2), (2, 1)]).unwrap();
        let rep = standard_rep(&sys, &sys.orbits().orbits[0]);
        assert_eq!(*rep.u.get(0, 1), Laurent::monomial(1));
        assert_eq!(*rep.u.get(1, 0), Laurent::one());
        assert_eq!(&rep.u * &rep.u.adjoint(), Matrix::identity(2));
        assert!(rep.oracle_generators().is_none());
    }

    #[test]
    fn descriptors() {
        assert_eq!(
            structure(&shift3()),
            StructureDescriptor::of(SummandKind::FiniteMatrix, &[3])
        );
        let trivial = PartialSystem::numbered(&[1, 1], &[]).unwrap();
        assert_eq!(
            structure(&trivial),
            StructureDescriptor::of(SummandKind::FiniteMatrix, &[1, 1])
        );
        let cycle = PartialSystem::numbered(&[3, 3], &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(
            structure(&cycle),
            StructureDescriptor::of(SummandKind::CircleFibered, &[6])
        );
        assert_eq!(structure(&PartialSystem::zero()).to_string(), "{}");
        assert_eq!(
            structure(&shift3().tensor_with_block(2).unwrap()).to_string(),
            "{finite_matrix(6)}"
        );
    }

    #[test]
    fn ideal_and_quotient_parts() {
        let sys = PartialSystem::numbered(&[1, 1, 1, 1], &[(1, 2), (2, 1), (3, 4)]).unwrap();
        let cycle = sys.ideal_of_indices([0, 1]);
        let r = restrict_crossed_product(&sys, &cycle).unwrap();
        assert_eq!(
            r.descriptor,
            StructureDescriptor::of(SummandKind::CircleFibered, &[2])
        );
        assert!(r.dims_match_ambient);
        let q = quotient_crossed_product(&sys, &cycle).unwrap();
        assert_eq!(
            q.descriptor,
            StructureDescriptor::of(SummandKind::FiniteMatrix, &[2])
        );
        assert!(q.additivity_holds && q.descriptors_add_up);
        let all = quotient_crossed_product(&sys, &sys.full()).unwrap();
        assert!(all.descriptor.is_empty());
        assert!(restrict_crossed_product(&sys, &sys.empty_ideal())
            .unwrap()
            .descriptor
            .is_empty());
        assert!(matches!(
            restrict_crossed_product(&sys, &sys.ideal_of_indices([2])),
            Err(Error::NotInvariant(_))
        ));
    }

    #[test]
    fn oracle_on_shift() {
        let sys = shift3();
        let check = orbit_oracle(&sys, &sys.orbits().orbits[0])
            .unwrap()
            .unwrap();
        assert_eq!(check.blocks, vec![3]);
        assert_eq!(check.algebra_dim, 9);
        assert!(check.matches);
    }

    fn arb_system() -> impl Strategy<Value = PartialSystem> {
        (1usize..=4)
            .prop_flat_map(|k| {
                (
                    proptest::collection::vec(1u32..=2, k),
                    Just((0..k).collect::<Vec<usize>>()).prop_shuffle(),
                    proptest::collection::vec(any::<bool>(), k),
                )
            })
            .prop_map(|(dims, perm, mask)| {
                let pairs: Vec<(usize, usize)> = (0..dims.len())
                    .filter(|&i| mask[i] && dims[i] == dims[perm[i]])
                    .map(|i| (i + 1, perm[i] + 1))
                    .collect();
                PartialSystem::numbered(&dims, &pairs).unwrap()
            })
    }

    fn random_element(sys: &PartialSystem, rng: &mut ChaCha8Rng) -> GradedElement {
        let mut entries = Vec::new();
        for n in -2..=2 {
            for b in sys.ideal_d(n).members().iter().copied() {
                if rng.gen_bool(0.5) {
                    continue;
                }
                let d = sys.algebra().dim_of(b) as usize;
                let m = Matrix::from_fn(d, d, |_, _| {
                    GaussQ::from_ints(rng.gen_range(-2..=2), rng.gen_range(-1..=1))
                });
                entries.push((n, b, m));
            }
        }
        GradedElement::new(sys, entries).unwrap()
    }

    fn restrict_to(x: &GradedElement, rep: &CovariantRep) -> GradedElement {
        let mut out = GradedElement::zero();
        for (n, b, m) in x.entries() {
            if rep.slots.iter().any(|(s, _)| *s == b) {
                out.add_block(n, b, m.clone());
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn graded_ring_axioms(sys in arb_system(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y, z) = (
                random_element(&sys, &mut rng),
                random_element(&sys, &mut rng),
                random_element(&sys, &mut rng),
            );
            let mul = |a: &GradedElement, b: &GradedElement| graded_multiply(&sys, a, b);
            let adj = |a: &GradedElement| graded_adjoint(&sys, a);
            prop_assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
            prop_assert_eq!(adj(&adj(&x)), x.clone());
            prop_assert_eq!(adj(&mul(&x, &y)), mul(&adj(&y), &adj(&x)));
            prop_assert_eq!(mul(&x, &y.add(&z)), mul(&x, &y).add(&mul(&x, &z)));
            let unit = GradedElement::unit(&sys);
            prop_assert_eq!(mul(&unit, &x), x.clone());
            prop_assert_eq!(mul(&x, &unit), x.clone());
            // every component of the product lies in D_n (constructor revalidates)
            let p = mul(&x, &y);
            let rebuilt = GradedElement::new(&sys, p.entries().map(|(n, b, m)| (n, b, m.clone())));
            prop_assert!(rebuilt.is_ok());
            // homogeneous pieces multiply degree-additively
            for (n, b, m) in x.entries() {
                for (k, c, w) in y.entries() {
                    let a = GradedElement::monomial(&sys, n, b, m.clone()).unwrap();
                    let e = GradedElement::monomial(&sys, k, c, w.clone()).unwrap();
                    prop_assert!(mul(&a, &e).degrees().all(|d| d == n + k));
                    prop_assert!(adj(&a).degrees().all(|d| d == -n));
                }
            }
        }

        #[test]
        fn representations_are_star_homomorphisms(sys in arb_system(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_element(&sys, &mut rng);
            let y = random_element(&sys, &mut rng);
            for orbit in &sys.orbits().orbits {
                let rep = standard_rep(&sys, orbit);
                prop_assert!(rep.verify(&sys).all_hold());
                let (xo, yo) = (restrict_to(&x, &rep), restrict_to(&y, &rep));
                let lhs = rep.represent(&graded_multiply(&sys, &xo, &yo)).unwrap();
                let rhs = &rep.represent(&xo).unwrap() * &rep.represent(&yo).unwrap();
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(
                    rep.represent(&graded_adjoint(&sys, &xo)).unwrap(),
                    rep.represent(&xo).unwrap().adjoint()
                );
                let unit = restrict_to(&GradedElement::unit(&sys), &rep);
                prop_assert_eq!(rep.represent(&unit).unwrap(), Matrix::identity(rep.space_dim));
            }
        }

        #[test]
        fn tensoring_scales_descriptor(sys in arb_system(), d in 1u32..=3) {
            let scaled = structure(&sys.tensor_with_block(d).unwrap());
            let expected = StructureDescriptor::new(
                structure(&sys).summands().iter().map(|s| Summand { kind: s.kind, size: s.size * u64::from(d) }),
                false,
            );
            prop_assert_eq!(scaled, expected);
        }
    }
}
