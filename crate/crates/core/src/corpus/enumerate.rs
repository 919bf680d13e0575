use crate::error::{Error, Result};
use crate::partial_system::{OrbitKind, PartialSystem};

/// Largest block count [`enumerate_systems`] accepts unless told otherwise.
pub const DEFAULT_CAP: usize = 4;

/// Every partial injection on `k ≤ max_blocks` points (`k ≥ 1`, all dims 1),
/// one per relabeling class, in a fixed order.
pub fn enumerate_systems(max_blocks: usize) -> Result<Vec<PartialSystem>> {
    enumerate_systems_capped(max_blocks, DEFAULT_CAP)
}

pub fn enumerate_systems_capped(max_blocks: usize, cap: usize) -> Result<Vec<PartialSystem>> {
    if max_blocks > cap {
        return Err(Error::CapExceeded {
            requested: max_blocks,
            cap,
        });
    }
    let mut out = Vec::new();
    for k in 1..=max_blocks {
        let mut parts = Vec::new();
        orbit_multisets(k, (k, OrbitKind::Cycle), &mut parts, &mut |types| {
            out.push(from_orbit_types(types));
        });
    }
    Ok(out)
}

type OrbitType = (usize, OrbitKind);

/// A partial injection up to relabeling is a multiset of orbit types. Parts
/// are emitted in non-increasing `(len, kind)` order so each multiset appears once.
fn orbit_multisets(
    remaining: usize,
    max_part: OrbitType,
    parts: &mut Vec<OrbitType>,
    emit: &mut dyn FnMut(&[OrbitType]),
) {
    if remaining == 0 {
        emit(parts);
        return;
    }
    for len in (1..=remaining.min(max_part.0)).rev() {
        for kind in [OrbitKind::Cycle, OrbitKind::Chain] {
            if (len, kind) > max_part {
                continue;
            }
            parts.push((len, kind));
            orbit_multisets(remaining - len, (len, kind), parts, emit);
            parts.pop();
        }
    }
}

fn from_orbit_types(types: &[OrbitType]) -> PartialSystem {
    let total: usize = types.iter().map(|t| t.0).sum();
    let mut pairs = Vec::new();
    let mut start = 1;
    for &(len, kind) in types {
        for i in start..start + len - 1 {
            pairs.push((i, i + 1));
        }
        if kind == OrbitKind::Cycle {
            pairs.push((start + len - 1, start));
        }
        start += len;
    }
    PartialSystem::numbered(&vec![1; total], &pairs).expect("dims all 1")
}

/// All partial injections on exactly `k` labeled points (dims 1), without
/// identifying relabelings.
pub fn labeled_systems(k: usize) -> Vec<PartialSystem> {
    let mut out = Vec::new();
    let mut used = vec![false; k];
    let mut pairs = Vec::new();
    labeled_rec(0, k, &mut used, &mut pairs, &mut out);
    out
}

fn labeled_rec(
    i: usize,
    k: usize,
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    out: &mut Vec<PartialSystem>,
) {
    if i == k {
        out.push(PartialSystem::numbered(&vec![1; k], pairs).expect("dims all 1"));
        return;
    }
    labeled_rec(i + 1, k, used, pairs, out);
    for t in 0..k {
        if used[t] {
            continue;
        }
        used[t] = true;
        pairs.push((i + 1, t + 1));
        labeled_rec(i + 1, k, used, pairs, out);
        pairs.pop();
        used[t] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_systems(1).unwrap().len(), 2);
        assert_eq!(enumerate_systems(2).unwrap().len(), 7);
        assert_eq!(enumerate_systems(0).unwrap().len(), 0);
        assert_eq!(
            enumerate_systems(5),
            Err(Error::CapExceeded {
                requested: 5,
                cap: 4
            })
        );
        assert!(!enumerate_systems_capped(5, 5).unwrap().is_empty());
    }

    #[test]
    fn labeled_counts() {
        // Σ_j C(k,j)² j!
        let counts: Vec<usize> = (0..=4).map(|k| labeled_systems(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 34, 209]);
    }

    #[test]
    fn deterministic_order() {
        assert_eq!(enumerate_systems(3).unwrap(), enumerate_systems(3).unwrap());
    }
}
