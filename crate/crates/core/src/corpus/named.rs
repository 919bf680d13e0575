use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra_core::{Block, BlockAlgebra};
use crate::error::{Error, Result};
use crate::partial_system::PartialSystem;

/// Named example families. Truncation families take their size parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedSystem {
    /// `σ_n` on `ℂ^n`: `1 → 2 → … → n`.
    Shift(usize),
    /// `1 → 2 → … → k → 1`.
    Cycle(usize),
    /// The forward shift on `c_0` cut down to its first `N` coordinates.
    C0ShiftTruncated(usize),
    /// `σ_1 ⊔ … ⊔ σ_N` on the points `(k, l)` with `k + l ≤ N + 1`, mapping
    /// `(k, l) ↦ (k + 1, l − 1)` while `l > 1`.
    DirectSumShifts(usize),
    /// Seeded random system: block dims in `{1, 2}`, each block mapped with
    /// probability `density` to an unused block of the same dimension.
    Random {
        seed: u64,
        size: usize,
        density: f64,
    },
}

impl NamedSystem {
    pub fn build(&self) -> Result<PartialSystem> {
        match *self {
            NamedSystem::Shift(n) => chain("", n),
            NamedSystem::C0ShiftTruncated(n) => chain("x", n),
            NamedSystem::Cycle(k) => {
                if k == 0 {
                    return Err(Error::InvalidArgument(
                        "a cycle needs at least one block".into(),
                    ));
                }
                let pairs: Vec<(usize, usize)> = (1..=k).map(|i| (i, i % k + 1)).collect();
                PartialSystem::numbered(&vec![1; k], &pairs)
            }
            NamedSystem::DirectSumShifts(n) => direct_sum_shifts(n),
            NamedSystem::Random {
                seed,
                size,
                density,
            } => random(seed, size, density),
        }
    }
}

fn chain(prefix: &str, n: usize) -> Result<PartialSystem> {
    let id = |i: usize| format!("{prefix}{i}");
    let blocks = (1..=n).map(|i| Block { id: id(i), dim: 1 }).collect();
    let pairs: Vec<(String, String)> = (1..n).map(|i| (id(i), id(i + 1))).collect();
    PartialSystem::new(BlockAlgebra::new(blocks)?, &pairs)
}

/// Block id of the point `(k, l)` in [`NamedSystem::DirectSumShifts`].
pub fn lattice_id(k: usize, l: usize) -> String {
    format!("{k}.{l}")
}

fn direct_sum_shifts(n: usize) -> Result<PartialSystem> {
    let points: Vec<(usize, usize)> = (2..=n + 1)
        .flat_map(|s| (1..s).map(move |k| (k, s - k)))
        .collect();
    let blocks = points
        .iter()
        .map(|&(k, l)| Block {
            id: lattice_id(k, l),
            dim: 1,
        })
        .collect();
    let pairs: Vec<(String, String)> = points
        .iter()
        .filter(|&&(_, l)| l > 1)
        .map(|&(k, l)| (lattice_id(k, l), lattice_id(k + 1, l - 1)))
        .collect();
    PartialSystem::new(BlockAlgebra::new(blocks)?, &pairs)
}

fn random(seed: u64, size: usize, density: f64) -> Result<PartialSystem> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<u32> = (0..size).map(|_| rng.gen_range(1..=2)).collect();
    let mut targets: Vec<usize> = (0..size).collect();
    targets.shuffle(&mut rng);
    let mut used = vec![false; size];
    let mut pairs = Vec::new();
    for s in 0..size {
        if !rng.gen_bool(density) {
            continue;
        }
        if let Some(&t) = targets.iter().find(|&&t| !used[t] && dims[t] == dims[s]) {
            used[t] = true;
            pairs.push((s + 1, t + 1));
        }
    }
    PartialSystem::numbered(&dims, &pairs)
}

impl fmt::Display for NamedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSystem::Shift(n) => write!(f, "shift_n({n})"),
            NamedSystem::Cycle(k) => write!(f, "cycle_k({k})"),
            NamedSystem::C0ShiftTruncated(n) => write!(f, "c0_shift_truncated_N({n})"),
            NamedSystem::DirectSumShifts(n) => write!(f, "direct_sum_shifts_N({n})"),
            NamedSystem::Random {
                seed,
                size,
                density,
            } => write!(f, "random({seed},{size},{density})"),
        }
    }
}

/// Parses `name(args)`, e.g. `shift_n(3)` or `random(7,5,0.5)`.
impl FromStr for NamedSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSystem(s.to_string());
        let s_trim = s.trim();
        let (name, rest) = s_trim.split_once('(').ok_or_else(unknown)?;
        let args: Vec<&str> = rest
            .strip_suffix(')')
            .ok_or_else(unknown)?
            .split(',')
            .map(str::trim)
            .collect();
        let int = |i: usize| -> Result<usize> {
            args.get(i)
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad argument list in `{s_trim}`")))
        };
        let one_arg = || -> Result<usize> {
            if args.len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "`{name}` takes one argument"
                )));
            }
            int(0)
        };
        match name.trim() {
            "shift_n" | "shift" => Ok(NamedSystem::Shift(one_arg()?)),
            "cycle_k" | "cycle" => Ok(NamedSystem::Cycle(one_arg()?)),
            "c0_shift_truncated_N" => Ok(NamedSystem::C0ShiftTruncated(one_arg()?)),
            "direct_sum_shifts_N" => Ok(NamedSystem::DirectSumShifts(one_arg()?)),
            "random" => {
                if args.len() != 3 {
                    return Err(Error::InvalidArgument(
                        "`random` takes seed, size and density".into(),
                    ));
                }
                let density = args[2]
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad density `{}`", args[2])))?;
                Ok(NamedSystem::Random {
                    seed: int(0)? as u64,
                    size: int(1)?,
                    density,
                })
            }
            _ => Err(unknown()),
        }
    }
}

/// Build a named system from its textual form.
pub fn named_system(text: &str) -> Result<PartialSystem> {
    text.parse::<NamedSystem>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_system::OrbitKind;

    #[test]
    fn shift_and_cycle() {
        let s = named_system("shift_n(3)").unwrap();
        assert_eq!(
            s,
            PartialSystem::numbered(&[1, 1, 1], &[(1, 2), (2, 3)]).unwrap()
        );
        let c = named_system("cycle_k(1)").unwrap();
        assert_eq!(c.id_pairs(), vec![("1".to_string(), "1".to_string())]);
        assert!(named_system("cycle_k(0)").is_err());
    }

    #[test]
    fn direct_sum_orbits() {
        let sys = named_system("direct_sum_shifts_N(3)").unwrap();
        assert_eq!(sys.block_count(), 6);
        let mut lens: Vec<usize> = sys.orbits().chains().map(|o| o.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 2, 3]);
        assert_eq!(sys.orbits().cycles().count(), 0);
    }

    #[test]
    fn random_is_seeded_and_valid() {
        let a = named_system("random(7, 6, 0.8)").unwrap();
        let b = named_system("random(7,6,0.8)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.block_count(), 6);
        let none = named_system("random(1,4,0)").unwrap();
        assert!(none.map().pairs().is_empty());
        assert!(named_system("random(1,4,1.5)").is_err());
    }

    #[test]
    fn truncated_c0_shift() {
        let sys = named_system("c0_shift_truncated_N(4)").unwrap();
        let orbits = sys.orbits();
        assert_eq!(orbits.orbits.len(), 1);
        assert_eq!(orbits.orbits[0].kind, OrbitKind::Chain);
        assert_eq!(orbits.ids(&orbits.orbits[0]), ["x1", "x2", "x3", "x4"]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            named_system("torus(3)"),
            Err(Error::UnknownSystem("torus(3)".into()))
        );
        assert!(matches!(
            named_system("shift_n"),
            Err(Error::UnknownSystem(_))
        ));
        assert!(matches!(
            named_system("shift_n(x)"),
            Err(Error::InvalidArgument(_))
        ));
        let round: NamedSystem = "random(3,4,0.25)".parse().unwrap();
        assert_eq!(round.to_string().parse::<NamedSystem>().unwrap(), round);
    }
}
