//! Exact linear algebra over ℚ(i): sparse reduced row echelon forms, dense
//! solves and rational roots of polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::scalar::{GaussQ, StarRing};

/// Sparse vector keyed by coordinate.
pub type SparseVec = BTreeMap<usize, GaussQ>;

pub fn matrix_to_sparse(m: &Matrix<GaussQ>) -> SparseVec {
    m.nonzero_entries()
        .map(|(i, j, v)| (i * m.cols() + j, v.clone()))
        .collect()
}

pub fn sparse_to_matrix(v: &SparseVec, n: usize) -> Matrix<GaussQ> {
    let mut m = Matrix::zeros(n, n);
    for (&k, c) in v {
        m.set(k / n, k % n, c.clone());
    }
    m
}

/// `x += c·y`.
pub fn axpy(x: &mut SparseVec, c: &GaussQ, y: &SparseVec) {
    for (&k, v) in y {
        let add = c * v;
        let sum = match x.remove(&k) {
            Some(prev) => prev + add,
            None => add,
        };
        if !sum.is_zero() {
            x.insert(k, sum);
        }
    }
}

pub fn scale(v: &SparseVec, c: &GaussQ) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, x * c)).collect()
}

/// Product of two `n × n` matrices stored as sparse row-major vectors.
pub fn sparse_matmul(a: &SparseVec, b: &SparseVec, n: usize) -> SparseVec {
    let mut b_rows: Vec<Vec<(usize, &GaussQ)>> = vec![Vec::new(); n];
    for (&k, v) in b {
        b_rows[k / n].push((k % n, v));
    }
    let mut out = SparseVec::new();
    for (&k, x) in a {
        let (i, mid) = (k / n, k % n);
        for &(j, y) in &b_rows[mid] {
            let idx = i * n + j;
            let add = x * y;
            let sum = match out.remove(&idx) {
                Some(prev) => prev + add,
                None => add,
            };
            if !sum.is_zero() {
                out.insert(idx, sum);
            }
        }
    }
    out
}

pub fn sparse_adjoint(a: &SparseVec, n: usize) -> SparseVec {
    a.iter()
        .map(|(&k, v)| ((k % n) * n + k / n, v.conj()))
        .collect()
}

/// Reduced row echelon form maintained incrementally. Each row has a leading
/// 1 at its pivot and zeros at every other row's pivot.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Pivot columns paired with their rows, ordered by column.
    pub fn pivots(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.pivot_row.iter().map(|(&c, &r)| (c, &self.rows[r]))
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (&col, &r) in &self.pivot_row {
            if let Some(c) = out.get(&col).cloned() {
                axpy(&mut out, &(-c), &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of a member of the span with respect to [`Echelon::rows`].
    pub fn coordinates(&self, v: &SparseVec) -> Vec<GaussQ> {
        let mut coords = vec![GaussQ::zero(); self.rows.len()];
        for (&col, &r) in &self.pivot_row {
            if let Some(c) = v.get(&col) {
                coords[r] = c.clone();
            }
        }
        coords
    }

    /// Insert `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("leading entry is nonzero");
        let row = scale(&r, &inv);
        for existing in &mut self.rows {
            if let Some(c) = existing.get(&pivot).cloned() {
                axpy(existing, &(-c), &row);
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }
}

/// Solve `Σ_j x_j · columns[j] = rhs`; `None` if inconsistent. Free variables are set to 0.
pub fn solve_columns(columns: &[SparseVec], rhs: &SparseVec) -> Option<Vec<GaussQ>> {
    // Augment each column with a unit marker past every coordinate in use.
    let offset = columns
        .iter()
        .chain(std::iter::once(rhs))
        .filter_map(|c| c.keys().next_back())
        .max()
        .map_or(0, |m| m + 1);
    let mut ech = Echelon::new();
    for (j, col) in columns.iter().enumerate() {
        let mut aug = col.clone();
        aug.insert(offset + j, GaussQ::one());
        ech.insert(&aug);
    }
    let residual = ech.reduce(rhs);
    if residual.keys().any(|&k| k < offset) {
        return None;
    }
    // rhs − Σ x_j col_j reduces to the marker part −Σ x_j e_j.
    let mut x = vec![GaussQ::zero(); columns.len()];
    for (&k, v) in &residual {
        x[k - offset] = -v.clone();
    }
    Some(x)
}

/// Basis of `{c : Σ_i c_i rows[i] = 0}`.
pub fn left_nullspace(rows: &[SparseVec]) -> Vec<Vec<GaussQ>> {
    let offset = rows
        .iter()
        .filter_map(|c| c.keys().next_back())
        .max()
        .map_or(0, |m| m + 1);
    let mut ech = Echelon::new();
    for (i, row) in rows.iter().enumerate() {
        let mut aug = row.clone();
        aug.insert(offset + i, GaussQ::one());
        ech.insert(&aug);
    }
    ech.pivots()
        .filter(|(col, _)| *col >= offset)
        .map(|(_, row)| {
            let mut c = vec![GaussQ::zero(); rows.len()];
            for (&k, v) in row {
                c[k - offset] = v.clone();
            }
            c
        })
        .collect()
}

/// Rational roots with multiplicity of a polynomial given by coefficients
/// (lowest degree first). Returns `None` if a coefficient is not real or an
/// integer needed for the root test could not be factored.
pub fn rational_roots(coeffs: &[GaussQ]) -> Option<Vec<(BigRational, usize)>> {
    if coeffs.iter().any(|c| !c.is_real()) {
        return None;
    }
    let mut poly: Vec<BigInt> =
        integerize(&coeffs.iter().map(|c| c.re.clone()).collect::<Vec<_>>());
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots: Vec<(BigRational, usize)> = Vec::new();
    let zero_mult = poly.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
        poly.drain(..zero_mult);
    }
    while poly.len() > 1 {
        let constant = poly[0].abs();
        let lead = poly[poly.len() - 1].abs();
        let numerators = divisors(&constant)?;
        let denominators = divisors(&lead)?;
        let mut found = None;
        'search: for q in &denominators {
            for p in &numerators {
                for sign in [1, -1] {
                    let r = BigRational::new(p * BigInt::from(sign), q.clone());
                    if eval(&poly, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let Some(r) = found else { break };
        poly = deflate(&poly, &r);
        match roots.iter_mut().find(|(x, _)| *x == r) {
            Some(entry) => entry.1 += 1,
            None => roots.push((r, 1)),
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Some(roots)
}

fn integerize(coeffs: &[BigRational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        scaled
    } else {
        scaled.into_iter().map(|c| c / &g).collect()
    }
}

fn eval(poly: &[BigInt], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

/// Divide by `(x − r)` and re-integerize; `r` must be a root.
fn deflate(poly: &[BigInt], r: &BigRational) -> Vec<BigInt> {
    let n = poly.len() - 1;
    let mut quotient = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for i in (0..n).rev() {
        carry = carry * r + BigRational::from_integer(poly[i + 1].clone());
        quotient[i] = carry.clone();
    }
    integerize(&quotient)
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n > 0`, or `None` if `n` has a prime factor that trial
/// division cannot certify.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return None;
    }
    let mut rest = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let limit = BigInt::from(TRIAL_LIMIT);
        if rest > &limit * &limit {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut power = BigInt::one();
            for _ in 0..=e {
                next.push(d * &power);
                power *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}
