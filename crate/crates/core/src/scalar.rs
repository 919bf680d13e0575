//! Exact scalar types: Gaussian rationals and Laurent polynomials over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A ring with an involution, enough structure for matrix algebra and adjoints.
pub trait StarRing:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Conjugation.
    fn star(&self) -> Self;
}

/// Element `re + i·im` of the field ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussQ {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussQ {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussQ::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussQ {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussQ {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussQ {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

impl StarRing for GaussQ {
    fn zero() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn one() -> Self {
        GaussQ {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn star(&self) -> Self {
        self.conj()
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, o: GaussQ) -> GaussQ {
        GaussQ {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl<'a> Add<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, o: GaussQ) -> GaussQ {
        GaussQ {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl<'a> Sub<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn sub(self, o: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, o: GaussQ) -> GaussQ {
        &self * &o
    }
}

impl<'a> Mul<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussQ::from_rational(&self.re * &o.re);
        }
        GaussQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Debug for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

/// Laurent polynomial `Σ c_k z^k` over ℚ(i), with `z` a formal unitary (`z* = z⁻¹`).
///
/// Used as the coefficient ring of representations of cycle orbits, where the
/// wrap-around entry of the implementing partial isometry carries `z`.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    coeffs: BTreeMap<i64, GaussQ>,
}

impl Laurent {
    pub fn constant(c: GaussQ) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        Laurent { coeffs }
    }

    /// `z^k`.
    pub fn monomial(k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, GaussQ::one());
        Laurent { coeffs }
    }

    pub fn coeff(&self, k: i64) -> GaussQ {
        self.coeffs.get(&k).cloned().unwrap_or_else(GaussQ::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussQ)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// The value as a plain scalar, if no power of `z` other than `z^0` occurs.
    pub fn as_constant(&self) -> Option<GaussQ> {
        match self.coeffs.len() {
            0 => Some(GaussQ::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, GaussQ>, k: i64, c: GaussQ) {
        let sum = match coeffs.remove(&k) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            coeffs.insert(k, sum);
        }
    }
}

impl StarRing for Laurent {
    fn zero() -> Self {
        Laurent {
            coeffs: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        Laurent::constant(GaussQ::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn star(&self) -> Self {
        Laurent {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.conj())).collect(),
        }
    }
}

impl From<GaussQ> for Laurent {
    fn from(c: GaussQ) -> Self {
        Laurent::constant(c)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        let mut coeffs = self.coeffs;
        for (k, c) in o.coeffs {
            Laurent::insert_add(&mut coeffs, k, c);
        }
        Laurent { coeffs }
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        self + (-o)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        let mut coeffs = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                Laurent::insert_add(&mut coeffs, a + b, x * y);
            }
        }
        Laurent { coeffs }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 if *c == GaussQ::one() => "z".to_string(),
                _ if *c == GaussQ::one() => format!("z^{k}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
