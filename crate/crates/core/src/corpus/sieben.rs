//! The set `S = {0} ∪ {±H_n}` of signed harmonic sums and its translates by
//! multiples of `π`, with exact equality and certified ordering.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Add;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Fixed-point precision, in bits, of the `π` enclosure.
const PI_BITS: u32 = 192;

/// `⌊π·2^P⌋` and `⌈π·2^P⌉` from Machin's formula `π = 16 atan(1/5) − 4 atan(1/239)`,
/// with both series truncated at a term below `2^{−(P+16)}`.
fn pi_scaled() -> &'static (BigInt, BigInt) {
    static PI: OnceLock<(BigInt, BigInt)> = OnceLock::new();
    PI.get_or_init(|| {
        let (a_lo, a_hi) = atan_inv(5);
        let (b_lo, b_hi) = atan_inv(239);
        let sixteen = BigRational::from_integer(16.into());
        let four = BigRational::from_integer(4.into());
        let lo = &sixteen * a_lo - &four * b_hi;
        let hi = sixteen * a_hi - four * b_lo;
        let scale = BigRational::from_integer(BigInt::one() << PI_BITS);
        (
            (lo * &scale).floor().to_integer(),
            (hi * scale).ceil().to_integer(),
        )
    })
}

/// Enclosure of `atan(1/x)` by consecutive partial sums of the alternating series.
fn atan_inv(x: i64) -> (BigRational, BigRational) {
    let tolerance = BigRational::new(BigInt::one(), BigInt::one() << (PI_BITS + 16));
    let x2 = BigInt::from(x * x);
    let mut power = BigInt::from(x);
    let mut sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        let next = if k.is_multiple_of(2) {
            &sum + &term
        } else {
            &sum - &term
        };
        if term < tolerance {
            return if next < sum { (next, sum) } else { (sum, next) };
        }
        sum = next;
        power *= &x2;
        k += 1;
    }
}

/// A rational enclosure of `π`, as `(lower, upper)`.
pub fn pi_enclosure() -> (BigRational, BigRational) {
    let (lo, hi) = pi_scaled();
    let den = BigInt::one() << PI_BITS;
    (
        BigRational::new(lo.clone(), den.clone()),
        BigRational::new(hi.clone(), den),
    )
}

/// `q + m·π` with `q` rational and `m` an integer. Since `π` is irrational,
/// two such numbers are equal exactly when both components are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiRational {
    pub q: BigRational,
    pub m: i64,
}

impl PiRational {
    pub fn new(q: BigRational, m: i64) -> Self {
        PiRational { q, m }
    }

    pub fn rational(q: BigRational) -> Self {
        PiRational { q, m: 0 }
    }

    pub fn pi_multiple(m: i64) -> Self {
        PiRational {
            q: BigRational::zero(),
            m,
        }
    }

    /// Integers `(lo, hi)` with `lo ≤ value·2^P ≤ hi`.
    fn scaled_enclosure(&self) -> (BigInt, BigInt) {
        let scale = BigRational::from_integer(BigInt::one() << PI_BITS);
        let q = &self.q * scale;
        let (q_lo, q_hi) = (q.floor().to_integer(), q.ceil().to_integer());
        let (p_lo, p_hi) = pi_scaled();
        let m = BigInt::from(self.m);
        if self.m >= 0 {
            (q_lo + &m * p_lo, q_hi + &m * p_hi)
        } else {
            (q_lo + &m * p_hi, q_hi + &m * p_lo)
        }
    }

    /// Exact when the `π`-components agree; otherwise decided by the
    /// enclosure, and `None` if the enclosure cannot separate the two values.
    pub fn cmp_certified(&self, other: &PiRational) -> Option<Ordering> {
        if self.m == other.m {
            return Some(self.q.cmp(&other.q));
        }
        let diff = PiRational::new(&self.q - &other.q, self.m - other.m);
        let (lo, hi) = diff.scaled_enclosure();
        if lo.is_positive() {
            Some(Ordering::Greater)
        } else if hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn approx(&self) -> f64 {
        self.q.to_f64().unwrap_or(f64::NAN) + self.m as f64 * std::f64::consts::PI
    }
}

impl Add for &PiRational {
    type Output = PiRational;
    fn add(self, o: &PiRational) -> PiRational {
        PiRational::new(&self.q + &o.q, self.m + o.m)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q.is_zero(), self.m) {
            (_, 0) => write!(f, "{}", self.q),
            (true, m) => write!(f, "{m}π"),
            (false, m) => write!(
                f,
                "{} {} {}π",
                self.q,
                if m < 0 { "-" } else { "+" },
                m.abs()
            ),
        }
    }
}

/// `H_j = 1 + 1/2 + … + 1/j`.
pub fn harmonic(j: u64) -> BigRational {
    (1..=j).fold(BigRational::zero(), |acc, k| {
        acc + BigRational::new(BigInt::one(), BigInt::from(k))
    })
}

/// `(S_N + m·π)` where `S_N = {0} ∪ {±H_j : 1 ≤ j ≤ N}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiebenSet {
    pub depth: u64,
    pub offset: i64,
    pub elements: Vec<PiRational>,
}

impl SiebenSet {
    pub fn new(depth: u64, offset: i64) -> Self {
        let mut elements = vec![PiRational::new(BigRational::zero(), offset)];
        let mut h = BigRational::zero();
        for j in 1..=depth {
            h += BigRational::new(BigInt::one(), BigInt::from(j));
            elements.push(PiRational::new(h.clone(), offset));
            elements.push(PiRational::new(-h.clone(), offset));
        }
        SiebenSet {
            depth,
            offset,
            elements,
        }
    }

    /// The same set shifted to `π`-component `offset`.
    pub fn translated(&self, offset: i64) -> Self {
        SiebenSet {
            depth: self.depth,
            offset,
            elements: self
                .elements
                .iter()
                .map(|x| PiRational::new(x.q.clone(), x.m - self.offset + offset))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Exact intersection of two finite unions of translates.
///
/// Sets with different offsets cannot meet, so only equal offsets are compared
/// element by element.
pub fn intersect_unions(left: &[SiebenSet], right: &[SiebenSet]) -> Vec<PiRational> {
    let offsets: HashSet<i64> = right.iter().map(|s| s.offset).collect();
    let lookup: HashSet<&PiRational> = right
        .iter()
        .filter(|s| left.iter().any(|l| l.offset == s.offset))
        .flat_map(|s| &s.elements)
        .collect();
    left.iter()
        .filter(|s| offsets.contains(&s.offset))
        .flat_map(|s| &s.elements)
        .filter(|x| lookup.contains(x))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointnessReport {
    pub n: i64,
    /// `π`-components occurring in `∪_{k=1}^{n} (S + kπ)`.
    pub left_components: Vec<i64>,
    /// `π`-components occurring in `∪_{k=0}^{n−1} (S − kπ)`.
    pub right_components: Vec<i64>,
    pub disjoint: bool,
    /// The component argument covers every truncation depth of `S` at once.
    pub proof_for_all_depths: bool,
    /// Depth of the explicit element-by-element cross-check.
    pub spot_check_depth: u64,
    pub spot_check_disjoint: bool,
}

/// `∪_{k=1}^{n} (S + kπ) ∩ ∪_{k=0}^{n−1} (S − kπ) = ∅`.
///
/// Every element of `S` is rational, so an element of `S + kπ` has
/// `π`-component exactly `k`. The left side only has components in `1..=n`, the
/// right side only in `−(n−1)..=0`, and equality of `q + mπ` forces equal `m`.
pub fn sieben_disjointness(n: i64) -> Result<DisjointnessReport> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 1, got {n}"
        )));
    }
    let left_components: Vec<i64> = (1..=n).collect();
    let right_components: Vec<i64> = (0..n).map(|k| -k).collect();
    let disjoint = !left_components.iter().any(|m| right_components.contains(m));
    let depth = n as u64;
    let base = SiebenSet::new(depth, 0);
    let left: Vec<SiebenSet> = (1..=n).map(|k| base.translated(k)).collect();
    let right: Vec<SiebenSet> = (0..n).map(|k| base.translated(-k)).collect();
    let spot_check_disjoint = intersect_unions(&left, &right).is_empty();
    Ok(DisjointnessReport {
        n,
        left_components,
        right_components,
        disjoint,
        proof_for_all_depths: disjoint,
        spot_check_depth: depth,
        spot_check_disjoint,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub n_terms: u64,
    pub window: u64,
    pub translates: i64,
    pub points_in_window: usize,
    /// The largest gap lies in `[lower, upper]`.
    #[serde(serialize_with = "ser_rational")]
    pub lower: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: BigRational,
}

fn ser_rational<S: serde::Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:.12}", r.to_f64().unwrap_or(f64::NAN)))
}

impl GapReport {
    pub fn approx(&self) -> (f64, f64) {
        (
            self.lower.to_f64().unwrap_or(f64::NAN),
            self.upper.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Largest gap between consecutive points of `∪_{0<k≤M} (S_N + kπ)` inside
/// `[−R, R]`, counting the window ends as points.
///
/// This is evidence for density, not a proof: the gaps shrink as `N` and `M`
/// grow but any finite union leaves gaps.
pub fn sieben_density_gap(n_terms: u64, window: u64, translates: i64) -> Result<GapReport> {
    let scale = BigInt::one() << PI_BITS;
    let edge = BigInt::from(window) * &scale;
    let neg_edge = -edge.clone();
    let mut points: Vec<(BigInt, BigInt)> = Vec::new();
    let base = SiebenSet::new(n_terms, 0);
    for k in 1..=translates {
        for x in base.translated(k).elements {
            let (lo, hi) = x.scaled_enclosure();
            if hi < neg_edge || lo > edge {
                continue;
            }
            if lo < neg_edge || hi > edge {
                return Err(Error::InvalidArgument(format!(
                    "point {x} cannot be placed relative to the window edge"
                )));
            }
            points.push((lo, hi));
        }
    }
    points.sort();
    if points.windows(2).any(|w| w[0].1 >= w[1].0) {
        return Err(Error::InvalidArgument(
            "two points could not be separated at the working precision".into(),
        ));
    }
    let mut bounds: Vec<(BigInt, BigInt)> = Vec::with_capacity(points.len() + 2);
    bounds.push((neg_edge.clone(), neg_edge));
    bounds.extend(points.iter().cloned());
    bounds.push((edge.clone(), edge));
    let (mut lower, mut upper) = (BigInt::zero(), BigInt::zero());
    for w in bounds.windows(2) {
        lower = lower.max(&w[1].0 - &w[0].1);
        upper = upper.max(&w[1].1 - &w[0].0);
    }
    Ok(GapReport {
        n_terms,
        window,
        translates,
        points_in_window: points.len(),
        lower: BigRational::new(lower, scale.clone()),
        upper: BigRational::new(upper, scale),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityLadder {
    pub settings: Vec<GapReport>,
    /// Each setting's upper bound is at most the previous one's.
    pub non_increasing: bool,
}

/// Gap reports at `(⌈N/4⌉, ⌈M/4⌉)`, `(⌈N/2⌉, ⌈M/2⌉)` and `(N, M)`.
pub fn density_ladder(n_terms: u64, window: u64, translates: i64) -> Result<DensityLadder> {
    if n_terms < 1 || translates < 1 {
        return Err(Error::InvalidArgument(
            "term count and translate count must be at least 1".into(),
        ));
    }
    let settings = [4, 2, 1]
        .iter()
        .map(|&d: &u64| {
            sieben_density_gap(n_terms.div_ceil(d), window, ceil_div(translates, d as i64))
        })
        .collect::<Result<Vec<_>>>()?;
    let non_increasing = settings.windows(2).all(|w| w[1].upper <= w[0].upper);
    Ok(DensityLadder {
        settings,
        non_increasing,
    })
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}
