//! Partial automorphisms of block algebras.
//!
//! A partial automorphism of `A = ⊕ M_{d_i}` is an isomorphism between two
//! ideals, i.e. between two sums of blocks. Dropping inner twists inside each
//! block, it is a partial injection `f` on block indices that preserves block
//! dimensions. The power ideals are `D_n = ran f^n` (`D_{−n} = dom f^n`), and
//! everything below is read off from them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::algebra_core::{Block, BlockAlgebra, IdealSet};
use crate::error::{Error, Result};

/// A partial injection on `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    forward: Vec<Option<usize>>,
}

impl PartialInjection {
    pub fn identity(len: usize) -> Self {
        PartialInjection {
            forward: (0..len).map(Some).collect(),
        }
    }

    pub fn empty(len: usize) -> Self {
        PartialInjection {
            forward: vec![None; len],
        }
    }

    /// Panics if the pairs are not a partial injection on `0..len`.
    pub fn from_pairs(len: usize, pairs: &[(usize, usize)]) -> Self {
        let mut forward = vec![None; len];
        let mut hit = vec![false; len];
        for &(s, t) in pairs {
            assert!(forward[s].is_none(), "repeated source {s}");
            assert!(!hit[t], "repeated target {t}");
            forward[s] = Some(t);
            hit[t] = true;
        }
        PartialInjection { forward }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.forward[i]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (s, t)))
            .collect()
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.pairs().into_iter().map(|(s, _)| s).collect()
    }

    pub fn range(&self) -> BTreeSet<usize> {
        self.pairs().into_iter().map(|(_, t)| t).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut forward = vec![None; self.len()];
        for (s, t) in self.pairs() {
            forward[t] = Some(s);
        }
        PartialInjection { forward }
    }

    /// `self ∘ other`: defined on the points `other` maps into the domain of `self`.
    pub fn compose(&self, other: &PartialInjection) -> Self {
        assert_eq!(self.len(), other.len());
        PartialInjection {
            forward: other
                .forward
                .iter()
                .map(|t| t.and_then(|t| self.forward[t]))
                .collect(),
        }
    }

    /// Image of a set; points outside the domain are dropped.
    pub fn image(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().filter_map(|&i| self.forward[i]).collect()
    }

    pub fn is_total_bijection(&self) -> bool {
        self.forward.iter().all(Option::is_some)
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(s, t)| format!("{s}->{t}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Which tail intersection: `D_∞ = ∩_{n>0} D_n` or `D_{−∞} = ∩_{n<0} D_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// A block algebra together with a dimension-preserving partial injection of its blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialSystem {
    algebra: Arc<BlockAlgebra>,
    map: PartialInjection,
}

impl PartialSystem {
    /// Build from block ids; every map invariant is checked and the first
    /// violation is reported by id.
    pub fn new<S: AsRef<str>>(algebra: BlockAlgebra, pairs: &[(S, S)]) -> Result<Self> {
        let n = algebra.len();
        let mut forward = vec![None; n];
        let mut hit = vec![false; n];
        for (s, t) in pairs {
            let (s, t) = (s.as_ref(), t.as_ref());
            let si = algebra
                .index_of(s)
                .ok_or_else(|| Error::UnknownBlock(s.to_string()))?;
            let ti = algebra
                .index_of(t)
                .ok_or_else(|| Error::UnknownBlock(t.to_string()))?;
            if forward[si].is_some() {
                return Err(Error::NotFunctional(s.to_string()));
            }
            if hit[ti] {
                return Err(Error::NotInjective(t.to_string()));
            }
            if algebra.dim_of(si) != algebra.dim_of(ti) {
                return Err(Error::DimensionMismatch {
                    source_id: s.to_string(),
                    source_dim: algebra.dim_of(si),
                    target_id: t.to_string(),
                    target_dim: algebra.dim_of(ti),
                });
            }
            forward[si] = Some(ti);
            hit[ti] = true;
        }
        Ok(PartialSystem {
            algebra: Arc::new(algebra),
            map: PartialInjection { forward },
        })
    }

    pub fn from_parts(algebra: Arc<BlockAlgebra>, map: PartialInjection) -> Result<Self> {
        assert_eq!(
            algebra.len(),
            map.len(),
            "map size differs from block count"
        );
        for (s, t) in map.pairs() {
            if algebra.dim_of(s) != algebra.dim_of(t) {
                return Err(Error::DimensionMismatch {
                    source_id: algebra.id_of(s).to_string(),
                    source_dim: algebra.dim_of(s),
                    target_id: algebra.id_of(t).to_string(),
                    target_dim: algebra.dim_of(t),
                });
            }
        }
        Ok(PartialSystem { algebra, map })
    }

    /// Blocks `"1"..` with the given dims and a map given by 1-based indices.
    pub fn numbered(dims: &[u32], pairs: &[(usize, usize)]) -> Result<Self> {
        let algebra = BlockAlgebra::numbered(dims)?;
        let pairs: Vec<(String, String)> = pairs
            .iter()
            .map(|(s, t)| (s.to_string(), t.to_string()))
            .collect();
        PartialSystem::new(algebra, &pairs)
    }

    pub fn zero() -> Self {
        PartialSystem {
            algebra: Arc::new(BlockAlgebra::zero()),
            map: PartialInjection::empty(0),
        }
    }

    pub fn algebra(&self) -> &Arc<BlockAlgebra> {
        &self.algebra
    }

    pub fn map(&self) -> &PartialInjection {
        &self.map
    }

    pub fn block_count(&self) -> usize {
        self.algebra.len()
    }

    /// Map as pairs of block ids, in source order.
    pub fn id_pairs(&self) -> Vec<(String, String)> {
        self.map
            .pairs()
            .into_iter()
            .map(|(s, t)| {
                (
                    self.algebra.id_of(s).to_string(),
                    self.algebra.id_of(t).to_string(),
                )
            })
            .collect()
    }

    pub fn inverse(&self) -> PartialSystem {
        PartialSystem {
            algebra: Arc::clone(&self.algebra),
            map: self.map.inverse(),
        }
    }

    pub fn full(&self) -> IdealSet {
        IdealSet::full(&self.algebra)
    }

    pub fn empty_ideal(&self) -> IdealSet {
        IdealSet::empty(&self.algebra)
    }

    pub fn ideal_of_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<IdealSet> {
        IdealSet::from_ids(&self.algebra, ids)
    }

    pub fn ideal_of_indices(&self, indices: impl IntoIterator<Item = usize>) -> IdealSet {
        IdealSet::from_indices(&self.algebra, indices)
    }

    /// Re-express an ideal of another system over this system's algebra, by block id.
    pub fn translate(&self, ideal: &IdealSet) -> Result<IdealSet> {
        self.ideal_of_ids(&ideal.ids())
    }

    /// `f^n`, with `f^0 = id` and `f^{−n} = (f^{−1})^n`.
    pub fn power(&self, n: i64) -> PartialInjection {
        let step = if n >= 0 {
            self.map.clone()
        } else {
            self.map.inverse()
        };
        let mut acc = PartialInjection::identity(self.block_count());
        for _ in 0..n.unsigned_abs() {
            acc = step.compose(&acc);
        }
        acc
    }

    /// Exponent beyond which the power ideals no longer change.
    pub fn stabilization_bound(&self) -> i64 {
        self.block_count() as i64
    }

    /// `D_n`, the range of `f^n`.
    pub fn ideal_d(&self, n: i64) -> IdealSet {
        let bound = self.stabilization_bound();
        let n = n.clamp(-bound, bound);
        IdealSet::from_indices(&self.algebra, self.power(n).range())
    }

    /// Image under `f^n` of the part of `set` lying in its domain.
    pub fn apply_power(&self, n: i64, set: &IdealSet) -> IdealSet {
        IdealSet::from_indices(&self.algebra, self.power(n).image(set.members()))
    }

    /// Checks `f^n(D_k ∩ D_{−n}) = D_{n+k} ∩ D_n` for `|n|, |k| ≤ bound`.
    pub fn verify_map_ideals(&self, bound: i64) -> MapIdealsReport {
        let bound = bound.max(1);
        let mut checked = 0;
        for n in -bound..=bound {
            for k in -bound..=bound {
                let lhs = self.apply_power(n, &intersect(&self.ideal_d(k), &self.ideal_d(-n)));
                let rhs = intersect(&self.ideal_d(n + k), &self.ideal_d(n));
                checked += 1;
                if lhs != rhs {
                    return MapIdealsReport {
                        bound,
                        checked,
                        counterexample: Some(MapIdealsCounterexample { n, k, lhs, rhs }),
                    };
                }
            }
        }
        MapIdealsReport {
            bound,
            checked,
            counterexample: None,
        }
    }

    /// `D_∞` or `D_{−∞}`, read off at exponent `±N` for `N` the block count.
    pub fn d_infinity(&self, direction: Direction) -> IdealSet {
        let n = self.stabilization_bound();
        match direction {
            Direction::Forward => self.ideal_d(n),
            Direction::Backward => self.ideal_d(-n),
        }
    }

    /// The first block witnessing that `b` is not invariant, if any.
    pub fn invariance_violation(&self, b: &IdealSet) -> Option<usize> {
        let inv = self.map.inverse();
        for &i in b.members() {
            if let Some(t) = self.map.apply(i) {
                if !b.contains(t) {
                    return Some(i);
                }
            }
            if let Some(s) = inv.apply(i) {
                if !b.contains(s) {
                    return Some(i);
                }
            }
        }
        None
    }

    /// `f(B ∩ D_{−1}) ⊆ B` and `f^{−1}(B ∩ D_1) ⊆ B`.
    pub fn is_invariant(&self, b: &IdealSet) -> bool {
        self.invariance_violation(b).is_none()
    }

    /// For an invariant `B`, checks `f^n(B ∩ D_{−n}) = B ∩ D_n` for `|n| ≤` block count.
    pub fn invariant_powers_hold(&self, b: &IdealSet) -> bool {
        let bound = self.stabilization_bound().max(1);
        (-bound..=bound).all(|n| {
            self.apply_power(n, &intersect(b, &self.ideal_d(-n))) == intersect(b, &self.ideal_d(n))
        })
    }

    fn require_invariant(&self, b: &IdealSet) -> Result<()> {
        if let Some(i) = self.invariance_violation(b) {
            return Err(Error::NotInvariant(self.algebra.id_of(i).to_string()));
        }
        Ok(())
    }

    /// The restricted partial automorphism on the invariant ideal `B`.
    pub fn restrict(&self, b: &IdealSet) -> Result<PartialSystem> {
        self.require_invariant(b)?;
        Ok(self.induced_on(b))
    }

    /// The quotient partial automorphism on `A/I` for an invariant ideal `I`.
    pub fn quotient(&self, i: &IdealSet) -> Result<PartialSystem> {
        self.require_invariant(i)?;
        Ok(self.induced_on(&i.complement()))
    }

    fn induced_on(&self, keep: &IdealSet) -> PartialSystem {
        let kept: Vec<usize> = keep.members().iter().copied().collect();
        let mut position = vec![None; self.block_count()];
        for (new, &old) in kept.iter().enumerate() {
            position[old] = Some(new);
        }
        let blocks: Vec<Block> = kept
            .iter()
            .map(|&i| self.algebra.blocks()[i].clone())
            .collect();
        let pairs: Vec<(usize, usize)> = self
            .map
            .pairs()
            .into_iter()
            .filter_map(|(s, t)| Some((position[s]?, position[t]?)))
            .collect();
        PartialSystem {
            algebra: Arc::new(BlockAlgebra::new(blocks).expect("sub-algebra of a valid algebra")),
            map: PartialInjection::from_pairs(kept.len(), &pairs),
        }
    }

    pub fn wold(&self) -> WoldDecomposition {
        let d_inf = self.d_infinity(Direction::Forward);
        let d_neg_inf = self.d_infinity(Direction::Backward);
        let core = intersect(&d_inf, &d_neg_inf);
        let forward_part = d_neg_inf.minus(&core);
        let backward_part = d_inf.minus(&core);
        let finite_part = union(&d_inf, &d_neg_inf).complement();
        WoldDecomposition {
            core,
            forward_part,
            backward_part,
            finite_part,
        }
    }

    pub fn classify(&self) -> Classification {
        let bound = self.stabilization_bound() + 1;
        let nilpotency_index = (1..=bound)
            .find(|&n| self.ideal_d(n).is_empty())
            .map(|n| n as u32);
        let all_nonpositive_full = self.ideal_d(-1).is_full();
        let all_nonnegative_full = self.ideal_d(1).is_full();
        let d_inf = self.d_infinity(Direction::Forward);
        let d_neg_inf = self.d_infinity(Direction::Backward);
        let nilpotent_equivalence_holds = (1..=bound).all(|n| {
            let conditions = [
                self.ideal_d(n).is_empty(),
                self.ideal_d(-n).is_empty(),
                intersect(&self.ideal_d(n - 1), &self.ideal_d(-1)).is_empty(),
                intersect(&self.ideal_d(1 - n), &self.ideal_d(1)).is_empty(),
            ];
            conditions.iter().all(|&c| c == conditions[0])
        });
        Classification {
            nilpotent: nilpotency_index.is_some(),
            nilpotency_index,
            forward_shift: all_nonpositive_full && d_inf.is_empty(),
            backward_shift: all_nonnegative_full && d_neg_inf.is_empty(),
            completely_nonautomorphic: intersect(&d_inf, &d_neg_inf).is_empty(),
            automorphism: self.map.is_total_bijection(),
            nilpotent_equivalence_holds,
        }
    }

    /// `I_n = D_{1−n} + D_{2−n}D_1 + … + D_{n−1}`, for `n ≥ 2`.
    pub fn ladder_ideal(&self, n: i64) -> Result<IdealSet> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "ladder ideal index must be at least 2, got {n}"
            )));
        }
        Ok((1..=n).fold(self.empty_ideal(), |acc, j| {
            union(&acc, &intersect(&self.ideal_d(j - n), &self.ideal_d(j - 1)))
        }))
    }

    /// Layer `I_n / I_{n+1}` as `base ⊗ ℂ^n` with the shift, plus the witnessing
    /// block bijection.
    pub fn subquotient_structure(&self, n: i64) -> Result<SubquotientStructure> {
        let upper = self.ladder_ideal(n)?;
        let lower = self.ladder_ideal(n + 1)?;
        let d_prev = self.ideal_d(n - 1);
        let base = d_prev.minus(&union(
            &self.ideal_d(n),
            &intersect(&d_prev, &self.ideal_d(-1)),
        ));
        let layer = upper.complement_in(&lower)?;
        let lift = self.power(1 - n);
        let mut witness = Vec::new();
        for &b in base.members() {
            let first = lift
                .apply(b)
                .expect("base lies in D_{n-1}, the range of f^{n-1}");
            let mut current = Some(first);
            for copy in 1..=n as usize {
                let block = current.expect("copies stay inside the orbit chain");
                witness.push(WitnessEntry {
                    base_block: b,
                    copy,
                    block,
                });
                current = self.map.apply(block);
            }
        }
        let layer_system = self.restrict(&upper)?.quotient_by_ids(&lower)?;
        Ok(SubquotientStructure {
            n,
            upper,
            lower,
            layer,
            base,
            witness,
            layer_system,
        })
    }

    fn quotient_by_ids(&self, ideal: &IdealSet) -> Result<PartialSystem> {
        let local = IdealSet::from_indices(
            &self.algebra,
            ideal
                .ids()
                .iter()
                .filter_map(|id| self.algebra.index_of(id)),
        );
        self.quotient(&local)
    }

    pub fn eventually_constant_checks(&self) -> EventualConstancyReport {
        let w = self.stabilization_bound() + 1;
        let negative_index = (0..=w)
            .map(|j| -j)
            .find(|&j| self.ideal_d(j) == self.ideal_d(j - 1))
            .expect("power ideals stabilize within the block count");
        let positive_index = (0..=w)
            .find(|&j| self.ideal_d(j) == self.ideal_d(j + 1))
            .expect("power ideals stabilize within the block count");

        let constancy_holds = (-w..=0).all(|j| {
            self.ideal_d(j) != self.ideal_d(j - 1)
                || (-w - 1..=j).all(|k| self.ideal_d(k) == self.ideal_d(j))
        }) && (0..=w).all(|j| {
            self.ideal_d(j) != self.ideal_d(j + 1)
                || (j..=w + 1).all(|k| self.ideal_d(k) == self.ideal_d(j))
        });

        let inverse = self.inverse();
        let invariance_converse_holds = (-w..0).all(|j| {
            let d = self.ideal_d(j);
            !self.apply_power(1, &d).is_subset(&d) || d == self.ideal_d(j - 1)
        }) && (1..=w).all(|j| {
            let d = self.ideal_d(j);
            !inverse.apply_power(1, &d).is_subset(&d) || d == self.ideal_d(j + 1)
        });

        let stable = self.ideal_d(negative_index);
        let stable_is_automorphic = self
            .restrict(&stable)
            .map(|r| r.map.is_total_bijection())
            .unwrap_or(false);
        EventualConstancyReport {
            negative_index,
            positive_index,
            stable_negative: stable.clone(),
            stable_positive: self.ideal_d(positive_index),
            symmetric: negative_index == -positive_index,
            constancy_holds,
            invariance_converse_holds,
            stable_is_automorphic,
            stable_is_core: stable == self.wold().core,
        }
    }

    /// `ι ⊗ α` on `M_d ⊗ A`: every block dimension is multiplied by `d`.
    pub fn tensor_with_block(&self, d: u32) -> Result<PartialSystem> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "tensor factor must be positive".into(),
            ));
        }
        let blocks = self
            .algebra
            .blocks()
            .iter()
            .map(|b| Block {
                id: b.id.clone(),
                dim: b.dim * d,
            })
            .collect();
        Ok(PartialSystem {
            algebra: Arc::new(BlockAlgebra::new(blocks)?),
            map: self.map.clone(),
        })
    }

    /// Decomposition of the block set into chains and cycles of `f`, in order
    /// of first appearance.
    pub fn orbits(&self) -> OrbitDecomposition {
        let n = self.block_count();
        let inverse = self.map.inverse();
        let mut visited = vec![false; n];
        let mut orbits = Vec::new();
        for i in 0..n {
            if visited[i] {
                continue;
            }
            let mut start = i;
            let mut cyclic = false;
            while let Some(prev) = inverse.apply(start) {
                if prev == i {
                    cyclic = true;
                    break;
                }
                start = prev;
            }
            let start = if cyclic { i } else { start };
            let mut blocks = vec![start];
            visited[start] = true;
            let mut cur = start;
            while let Some(next) = self.map.apply(cur) {
                if next == start {
                    break;
                }
                visited[next] = true;
                blocks.push(next);
                cur = next;
            }
            orbits.push(Orbit {
                kind: if cyclic {
                    OrbitKind::Cycle
                } else {
                    OrbitKind::Chain
                },
                block_dim: self.algebra.dim_of(start),
                blocks,
            });
        }
        OrbitDecomposition {
            algebra: Arc::clone(&self.algebra),
            orbits,
        }
    }
}

impl fmt::Debug for PartialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .algebra
            .blocks()
            .iter()
            .map(|b| format!("{}:{}", b.id, b.dim))
            .collect();
        let pairs: Vec<String> = self
            .id_pairs()
            .into_iter()
            .map(|(s, t)| format!("{s}->{t}"))
            .collect();
        write!(
            f,
            "PartialSystem[{}]{{{}}}",
            blocks.join(" "),
            pairs.join(", ")
        )
    }
}

pub(crate) fn intersect(a: &IdealSet, b: &IdealSet) -> IdealSet {
    a.product(b).expect("ideals of one system share a parent")
}

pub(crate) fn union(a: &IdealSet, b: &IdealSet) -> IdealSet {
    a.sum(b).expect("ideals of one system share a parent")
}

impl Serialize for IdealSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.ids().serialize(serializer)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MapIdealsCounterexample {
    pub n: i64,
    pub k: i64,
    pub lhs: IdealSet,
    pub rhs: IdealSet,
}

#[derive(Debug, Clone, Serialize)]
pub struct MapIdealsReport {
    pub bound: i64,
    pub checked: usize,
    pub counterexample: Option<MapIdealsCounterexample>,
}

impl MapIdealsReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Four-way split: automorphic core, forward-shift part, backward-shift part,
/// and the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WoldDecomposition {
    pub core: IdealSet,
    pub forward_part: IdealSet,
    pub backward_part: IdealSet,
    pub finite_part: IdealSet,
}

impl WoldDecomposition {
    pub fn is_partition(&self) -> bool {
        let parts = [
            &self.core,
            &self.forward_part,
            &self.backward_part,
            &self.finite_part,
        ];
        let total: usize = parts.iter().map(|p| p.len()).sum();
        let all = parts
            .iter()
            .fold(IdealSet::empty(self.core.parent()), |acc, p| union(&acc, p));
        total == self.core.parent().len() && all.is_full()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub nilpotent: bool,
    pub nilpotency_index: Option<u32>,
    pub forward_shift: bool,
    pub backward_shift: bool,
    pub completely_nonautomorphic: bool,
    pub automorphism: bool,
    /// `D_n = 0 ⇔ D_{−n} = 0 ⇔ D_{n−1}D_{−1} = 0 ⇔ D_{1−n}D_1 = 0` for every `n > 0`.
    pub nilpotent_equivalence_holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub base_block: usize,
    /// 1-based copy index in `ℂ^n`.
    pub copy: usize,
    pub block: usize,
}

#[derive(Debug, Clone)]
pub struct SubquotientStructure {
    pub n: i64,
    pub upper: IdealSet,
    pub lower: IdealSet,
    pub layer: IdealSet,
    /// `D_{n−1} / (D_n + D_{n−1}D_{−1})`.
    pub base: IdealSet,
    /// Copy `j` of base block `b` is `f^{j−1} f^{1−n}(b)`.
    pub witness: Vec<WitnessEntry>,
    /// `(I_n/I_{n+1}, β_n)`.
    pub layer_system: PartialSystem,
}

impl SubquotientStructure {
    /// The witness is a bijection `base × {1..n} → I_n \ I_{n+1}` carrying
    /// `ι ⊗ σ_n` to `β_n`.
    pub fn witness_is_valid(&self, sys: &PartialSystem) -> bool {
        let blocks: BTreeSet<usize> = self.witness.iter().map(|w| w.block).collect();
        if blocks.len() != self.witness.len() || blocks != *self.layer.members() {
            return false;
        }
        if self.witness.len() != self.base.len() * self.n as usize {
            return false;
        }
        let layer_map = self.layer_system.map();
        let position = |b: usize| {
            self.layer_system
                .algebra()
                .index_of(sys.algebra().id_of(b))
                .expect("layer block present in layer system")
        };
        self.witness.iter().all(|w| {
            let image = layer_map.apply(position(w.block));
            if w.copy < self.n as usize {
                let next = self
                    .witness
                    .iter()
                    .find(|v| v.base_block == w.base_block && v.copy == w.copy + 1)
                    .map(|v| position(v.block));
                image.is_some() && image == next
            } else {
                image.is_none()
            }
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EventualConstancyReport {
    /// `max{j ≤ 0 | D_j = D_{j−1}}`.
    pub negative_index: i64,
    /// `min{j ≥ 0 | D_j = D_{j+1}}`.
    pub positive_index: i64,
    pub stable_negative: IdealSet,
    pub stable_positive: IdealSet,
    pub symmetric: bool,
    pub constancy_holds: bool,
    pub invariance_converse_holds: bool,
    pub stable_is_automorphic: bool,
    pub stable_is_core: bool,
}

impl EventualConstancyReport {
    pub fn all_hold(&self) -> bool {
        self.symmetric
            && self.constancy_holds
            && self.invariance_converse_holds
            && self.stable_is_automorphic
            && self.stable_is_core
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    Chain,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub kind: OrbitKind,
    /// Blocks in the order `f` visits them; a chain starts outside `ran f`.
    pub blocks: Vec<usize>,
    pub block_dim: u32,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ideal(&self, sys: &PartialSystem) -> IdealSet {
        sys.ideal_of_indices(self.blocks.iter().copied())
    }
}

#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    algebra: Arc<BlockAlgebra>,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn chains(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| o.kind == OrbitKind::Chain)
    }

    pub fn cycles(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| o.kind == OrbitKind::Cycle)
    }

    pub fn max_chain_len(&self) -> usize {
        self.chains().map(Orbit::len).max().unwrap_or(0)
    }

    pub fn ids(&self, orbit: &Orbit) -> Vec<String> {
        orbit
            .blocks
            .iter()
            .map(|&i| self.algebra.id_of(i).to_string())
            .collect()
    }
}

#[derive(Serialize)]
struct OrbitRecord {
    kind: OrbitKind,
    blocks: Vec<String>,
    block_dim: u32,
}

impl Serialize for OrbitDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<OrbitRecord> = self
            .orbits
            .iter()
            .map(|o| OrbitRecord {
                kind: o.kind,
                blocks: self.ids(o),
                block_dim: o.block_dim,
            })
            .collect();
        records.serialize(serializer)
    }
}
