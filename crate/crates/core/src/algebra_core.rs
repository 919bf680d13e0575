//! Finite-dimensional C*-algebras as lists of matrix blocks, and their ideals.
//!
//! Every ideal of `M_{d_1} ⊕ … ⊕ M_{d_k}` is a sum of some of the blocks, so an
//! ideal is stored as a subset of block indices. The same subset doubles as the
//! central support projection of the ideal and, via set difference, as a
//! quotient `I/J` or a projection difference `p − q`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub id: String,
    pub dim: u32,
}

/// `M_{d_1} ⊕ … ⊕ M_{d_k}`; the empty list is the zero algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockAlgebra {
    blocks: Vec<Block>,
}

impl BlockAlgebra {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        let mut seen = HashSet::new();
        for b in &blocks {
            if b.dim == 0 {
                return Err(Error::ZeroDimension(b.id.clone()));
            }
            if !seen.insert(b.id.as_str()) {
                return Err(Error::DuplicateBlock(b.id.clone()));
            }
        }
        Ok(BlockAlgebra { blocks })
    }

    /// Blocks `"1"`, `"2"`, … with the given dimensions.
    pub fn numbered(dims: &[u32]) -> Result<Self> {
        BlockAlgebra::new(
            dims.iter()
                .enumerate()
                .map(|(i, &dim)| Block {
                    id: (i + 1).to_string(),
                    dim,
                })
                .collect(),
        )
    }

    pub fn zero() -> Self {
        BlockAlgebra { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn dim_of(&self, index: usize) -> u32 {
        self.blocks[index].dim
    }

    pub fn id_of(&self, index: usize) -> &str {
        &self.blocks[index].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.id == id)
    }

    /// `Σ dim_i²`.
    pub fn total_dim(&self) -> u64 {
        self.blocks.iter().map(|b| u64::from(b.dim).pow(2)).sum()
    }
}

/// An ideal of a [`BlockAlgebra`], given by its member blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealSet {
    parent: Arc<BlockAlgebra>,
    members: BTreeSet<usize>,
}

impl IdealSet {
    pub fn empty(parent: &Arc<BlockAlgebra>) -> Self {
        IdealSet {
            parent: Arc::clone(parent),
            members: BTreeSet::new(),
        }
    }

    pub fn full(parent: &Arc<BlockAlgebra>) -> Self {
        IdealSet {
            parent: Arc::clone(parent),
            members: (0..parent.len()).collect(),
        }
    }

    /// Panics if an index is out of range.
    pub fn from_indices(
        parent: &Arc<BlockAlgebra>,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let members: BTreeSet<usize> = indices.into_iter().collect();
        assert!(
            members.iter().all(|&i| i < parent.len()),
            "block index out of range"
        );
        IdealSet {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub fn from_ids<S: AsRef<str>>(parent: &Arc<BlockAlgebra>, ids: &[S]) -> Result<Self> {
        let members = ids
            .iter()
            .map(|id| {
                parent
                    .index_of(id.as_ref())
                    .ok_or_else(|| Error::UnknownBlock(id.as_ref().to_string()))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(IdealSet {
            parent: Arc::clone(parent),
            members,
        })
    }

    pub fn parent(&self) -> &Arc<BlockAlgebra> {
        &self.parent
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent.len()
    }

    pub fn ids(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&i| self.parent.id_of(i).to_string())
            .collect()
    }

    /// `Σ_{i ∈ members} dim_i²`.
    pub fn dim(&self) -> u64 {
        self.members
            .iter()
            .map(|&i| u64::from(self.parent.dim_of(i)).pow(2))
            .sum()
    }

    pub fn is_subset(&self, other: &IdealSet) -> bool {
        self.members.is_subset(&other.members)
    }

    fn check_parent(&self, other: &IdealSet) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras)
        }
    }

    /// Product of ideals; in a C*-algebra `IJ = I ∩ J`.
    pub fn product(&self, other: &IdealSet) -> Result<IdealSet> {
        self.check_parent(other)?;
        Ok(IdealSet {
            parent: Arc::clone(&self.parent),
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }

    pub fn sum(&self, other: &IdealSet) -> Result<IdealSet> {
        self.check_parent(other)?;
        Ok(IdealSet {
            parent: Arc::clone(&self.parent),
            members: self.members.union(&other.members).copied().collect(),
        })
    }

    /// `self \ sub`, standing for the quotient `self/sub` or the projection
    /// difference `p_self − p_sub`. Requires `sub ⊆ self`.
    pub fn complement_in(&self, sub: &IdealSet) -> Result<IdealSet> {
        self.check_parent(sub)?;
        if let Some(&stray) = sub.members.difference(&self.members).next() {
            return Err(Error::NotSubset(self.parent.id_of(stray).to_string()));
        }
        Ok(self.minus(sub))
    }

    /// Set difference without the containment precondition.
    pub(crate) fn minus(&self, other: &IdealSet) -> IdealSet {
        IdealSet {
            parent: Arc::clone(&self.parent),
            members: self.members.difference(&other.members).copied().collect(),
        }
    }

    /// `1 − p`.
    pub fn complement(&self) -> IdealSet {
        IdealSet::full(&self.parent).minus(self)
    }
}

impl fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.ids().join(","))
    }
}

impl fmt::Display for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{{{}}}", self.ids().join(","))
        }
    }
}
