//! Saturation of matrix sets into *-algebras and their Wedderburn block sizes,
//! computed with exact arithmetic over ℚ(i).
//!
//! This is the independent oracle against which crossed product descriptors
//! are checked: it knows nothing about partial automorphisms.

use crate::error::{Error, Result};
use crate::linalg::{
    axpy, left_nullspace, matrix_to_sparse, rational_roots, scale, solve_columns, sparse_adjoint,
    sparse_matmul, sparse_to_matrix, Echelon, SparseVec,
};
use crate::matrix::Matrix;
use crate::scalar::{GaussQ, StarRing};
use num_integer::Roots;

/// A *-closed subalgebra of `M_n(ℚ(i))`, stored by a reduced echelon basis.
#[derive(Debug, Clone)]
pub struct MatrixStarAlgebra {
    ambient_dim: usize,
    span: Echelon,
}

impl MatrixStarAlgebra {
    /// The smallest *-algebra containing `generators`.
    pub fn saturate(generators: &[Matrix<GaussQ>]) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidArgument(
                "saturation needs at least one generator".into(),
            ));
        };
        let n = first.rows();
        for g in generators {
            if g.rows() != n || g.cols() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    rows: g.rows(),
                    cols: g.cols(),
                });
            }
        }
        if n == 0 {
            return Err(Error::InvalidArgument("ambient dimension is 0".into()));
        }
        let sparse: Vec<SparseVec> = generators.iter().map(matrix_to_sparse).collect();
        Ok(Self::saturate_sparse(n, &sparse))
    }

    fn saturate_sparse(n: usize, generators: &[SparseVec]) -> Self {
        let mut span = Echelon::new();
        let mut elems: Vec<SparseVec> = Vec::new();
        let mut frontier: Vec<SparseVec> = Vec::new();
        for g in generators {
            if span.insert(g) {
                elems.push(g.clone());
                frontier.push(g.clone());
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                let adj = sparse_adjoint(x, n);
                if span.insert(&adj) {
                    elems.push(adj.clone());
                    next.push(adj);
                }
            }
            let snapshot = elems.len();
            for x in &frontier {
                for i in 0..snapshot {
                    for p in [
                        sparse_matmul(x, &elems[i], n),
                        sparse_matmul(&elems[i], x, n),
                    ] {
                        if span.insert(&p) {
                            elems.push(p.clone());
                            next.push(p);
                        }
                    }
                }
            }
            frontier = next;
        }
        MatrixStarAlgebra {
            ambient_dim: n,
            span,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// Basis in reduced echelon form, ordered by pivot; canonical for the span.
    pub fn basis(&self) -> Vec<Matrix<GaussQ>> {
        self.sparse_basis()
            .iter()
            .map(|v| sparse_to_matrix(v, self.ambient_dim))
            .collect()
    }

    fn sparse_basis(&self) -> Vec<SparseVec> {
        self.span.pivots().map(|(_, row)| row.clone()).collect()
    }

    pub fn contains(&self, m: &Matrix<GaussQ>) -> bool {
        m.rows() == self.ambient_dim
            && m.cols() == self.ambient_dim
            && self.span.contains(&matrix_to_sparse(m))
    }

    /// Same underlying subspace.
    pub fn same_span(&self, other: &MatrixStarAlgebra) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && self.sparse_basis() == other.sparse_basis()
    }

    /// Number of basis adjoints and basis products falling outside the span.
    pub fn closure_residual(&self) -> usize {
        let basis = self.sparse_basis();
        let n = self.ambient_dim;
        let mut misses = 0;
        for a in &basis {
            if !self.span.contains(&sparse_adjoint(a, n)) {
                misses += 1;
            }
            for b in &basis {
                if !self.span.contains(&sparse_matmul(a, b, n)) {
                    misses += 1;
                }
            }
        }
        misses
    }

    /// Sizes `n_i` of the simple summands `M_{n_i}`, largest first.
    ///
    /// Minimal central projections are found by splitting the unit along the
    /// rational eigenvalues of self-adjoint central elements. When some summand
    /// cannot be separated over ℚ(i) this reports [`Error::Indecomposable`].
    pub fn wedderburn(&self) -> Result<Vec<usize>> {
        let n = self.ambient_dim;
        let basis = self.sparse_basis();
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        let center = self.center(&basis);
        let unit = self.unit_of(&center)?;
        let mut idempotents = vec![unit];
        'outer: for z in &center {
            let z_star = sparse_adjoint(z, n);
            let mut sum = z.clone();
            axpy(&mut sum, &GaussQ::one(), &z_star);
            let mut diff = z.clone();
            axpy(&mut diff, &-GaussQ::one(), &z_star);
            for h in [sum, scale(&diff, &GaussQ::i())] {
                if idempotents.len() == center.len() {
                    break 'outer;
                }
                if h.is_empty() {
                    continue;
                }
                let mut next = Vec::with_capacity(idempotents.len());
                for e in &idempotents {
                    next.extend(split(e, &sparse_matmul(e, &h, n), n));
                }
                idempotents = next;
            }
        }
        if idempotents.len() != center.len() {
            return Err(Error::Indecomposable(format!(
                "center has dimension {} but only {} central projections split over Q(i)",
                center.len(),
                idempotents.len()
            )));
        }
        let mut sizes = Vec::with_capacity(idempotents.len());
        for e in &idempotents {
            let mut part = Echelon::new();
            for b in &basis {
                part.insert(&sparse_matmul(e, b, n));
            }
            let d = part.rank();
            let root = d.sqrt();
            if root * root != d {
                return Err(Error::Indecomposable(format!(
                    "summand of dimension {d} is not a full matrix algebra"
                )));
            }
            sizes.push(root);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(sizes)
    }

    /// Basis of the center, as the left null space of all commutators.
    fn center(&self, basis: &[SparseVec]) -> Vec<SparseVec> {
        let n = self.ambient_dim;
        let stride = n * n;
        let rows: Vec<SparseVec> = basis
            .iter()
            .map(|a| {
                let mut row = SparseVec::new();
                for (j, b) in basis.iter().enumerate() {
                    let mut c = sparse_matmul(a, b, n);
                    axpy(&mut c, &-GaussQ::one(), &sparse_matmul(b, a, n));
                    row.extend(c.into_iter().map(|(k, v)| (j * stride + k, v)));
                }
                row
            })
            .collect();
        left_nullspace(&rows)
            .into_iter()
            .map(|coeffs| {
                let mut z = SparseVec::new();
                for (c, b) in coeffs.iter().zip(basis) {
                    if !c.is_zero() {
                        axpy(&mut z, c, b);
                    }
                }
                z
            })
            .collect()
    }

    /// The unit `e`, found in the center by solving `e·z = z` for every central `z`.
    fn unit_of(&self, center: &[SparseVec]) -> Result<SparseVec> {
        let n = self.ambient_dim;
        let stride = n * n;
        let stack = |vs: &mut dyn Iterator<Item = SparseVec>| {
            let mut out = SparseVec::new();
            for (j, v) in vs.enumerate() {
                out.extend(v.into_iter().map(|(k, x)| (j * stride + k, x)));
            }
            out
        };
        let columns: Vec<SparseVec> = center
            .iter()
            .map(|a| stack(&mut center.iter().map(|z| sparse_matmul(a, z, n))))
            .collect();
        let rhs = stack(&mut center.iter().cloned());
        let coeffs = solve_columns(&columns, &rhs)
            .ok_or_else(|| Error::Indecomposable("algebra has no unit".into()))?;
        let mut e = SparseVec::new();
        for (c, z) in coeffs.iter().zip(center) {
            if !c.is_zero() {
                axpy(&mut e, c, z);
            }
        }
        Ok(e)
    }
}

/// Split the central idempotent `e` along the eigenvalues of `g ∈ eA`.
/// Returns `[e]` when `g` is scalar on `eA` or its eigenvalues are not rational.
fn split(e: &SparseVec, g: &SparseVec, n: usize) -> Vec<SparseVec> {
    let mut powers = vec![e.clone()];
    let coeffs = loop {
        let next = sparse_matmul(powers.last().expect("nonempty"), g, n);
        if let Some(c) = solve_columns(&powers, &next) {
            break c;
        }
        powers.push(next);
    };
    let degree = powers.len();
    if degree == 1 {
        return vec![e.clone()];
    }
    // minimal polynomial x^d − Σ c_i x^i, lowest degree first
    let mut poly: Vec<GaussQ> = coeffs.into_iter().map(|c| -c).collect();
    poly.push(GaussQ::one());
    let Some(roots) = rational_roots(&poly) else {
        return vec![e.clone()];
    };
    if roots.len() != degree || roots.iter().any(|(_, m)| *m != 1) {
        return vec![e.clone()];
    }
    roots
        .iter()
        .enumerate()
        .map(|(r, (lambda, _))| {
            let mut p = e.clone();
            for (s, (mu, _)) in roots.iter().enumerate() {
                if s == r {
                    continue;
                }
                let mut factor = g.clone();
                axpy(&mut factor, &GaussQ::from_rational(-mu.clone()), e);
                let denom = GaussQ::from_rational(lambda - mu);
                let inv = denom.inv().expect("distinct roots");
                p = scale(&sparse_matmul(&p, &factor, n), &inv);
            }
            p
        })
        .filter(|p| !p.is_empty())
        .collect()
}

impl PartialEq for MatrixStarAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_span(other)
    }
}
