//! Exact integer linear algebra: Smith normal form, integer kernels,
//! primitivity, and quotient-lattice normal forms.
//!
//! Everything here runs on arbitrary-precision integers; unimodular
//! reductions blow up intermediate entries, so fixed-width arithmetic is
//! never used.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Int;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        IntMatrix {
            rows: rows.len(),
            cols: ncols,
            entries: rows.iter().flatten().cloned().collect(),
        }
    }

    /// Convenience for literals in tests and fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_cols(cols: &[Vec<Int>]) -> Self {
        Self::from_rows(
            &(0..cols.first().map_or(0, Vec::len))
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<Int> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut p = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.at(r, k).is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    *p.at_mut(r, c) += self.at(r, k) * other.at(k, c);
                }
            }
        }
        p
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    *m.at_mut(i, j) = num / &prev;
                }
                *m.at_mut(i, k) = Int::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix, via its Smith normal form
    /// (U M V = I implies M^{-1} = V U).
    pub fn inverse_unimodular(&self) -> IntMatrix {
        assert!(self.is_square());
        let snf = smith_normal_form(self);
        for i in 0..self.rows {
            assert!(
                snf.d.at(i, i).is_one(),
                "matrix is not unimodular, cannot invert over Z"
            );
        }
        snf.v.mul(&snf.u)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row_r -= q * row_t
    fn row_sub(&mut self, r: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * self.at(t, c);
            *self.at_mut(r, c) -= delta;
        }
    }

    /// col_c -= q * col_t
    fn col_sub(&mut self, c: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = q * self.at(r, t);
            *self.at_mut(r, c) -= delta;
        }
    }

    /// row_t += row_r
    fn row_add(&mut self, t: usize, r: usize) {
        for c in 0..self.cols {
            let delta = self.at(r, c).clone();
            *self.at_mut(t, c) += delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }
}

/// Smith normal form decomposition: U * M * V = D with U, V unimodular and
/// D diagonal satisfying the divisibility chain d_1 | d_2 | ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SNFResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SNFResult {
    pub fn rank(&self) -> usize {
        let min = self.d.rows().min(self.d.cols());
        (0..min).filter(|&i| !self.d.at(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<Int> {
        let min = self.d.rows().min(self.d.cols());
        (0..min).map(|i| self.d.at(i, i).clone()).collect()
    }
}

fn pivot_min_abs(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..m.rows() {
        for c in t..m.cols() {
            if m.at(r, c).is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if m.at(br, bc).abs() <= m.at(r, c).abs() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}

/// Smith normal form by elementary row/column operations with pivot
/// selection by minimal absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SNFResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // One elimination step at a time, re-selecting the smallest pivot
        // before each: keeps quotients small and guarantees the pivot's
        // absolute value never increases between steps.
        'step: loop {
            let Some((pr, pc)) = pivot_min_abs(&d, t) else {
                break; // remaining submatrix is zero
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            for r in t + 1..rows {
                if !d.at(r, t).is_zero() {
                    let q = d.at(r, t).div_floor(d.at(t, t));
                    d.row_sub(r, t, &q);
                    u.row_sub(r, t, &q);
                    continue 'step;
                }
            }
            for c in t + 1..cols {
                if !d.at(t, c).is_zero() {
                    let q = d.at(t, c).div_floor(d.at(t, t));
                    d.col_sub(c, t, &q);
                    v.col_sub(c, t, &q);
                    continue 'step;
                }
            }

            // Row and column are clear; the pivot must also divide the
            // remaining submatrix. Folding an offending row into row t
            // leaves a non-divisible entry in row t whose remainder after
            // the next reduction is strictly smaller than the pivot.
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if !d.at(r, c).mod_floor(d.at(t, t)).is_zero() {
                        d.row_add(t, r);
                        u.row_add(t, r);
                        continue 'step;
                    }
                }
            }
            break;
        }

        if d.at(t, t).is_zero() {
            break;
        }
        if d.at(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SNFResult { u, d, v }
}

/// Canonical (Hermite-reduced) Z-basis of { v : M v = 0 }.
///
/// The basis is saturated: it spans the full kernel lattice, not a finite
/// index sublattice, since it comes from unimodular columns of V.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let cols: Vec<Vec<Int>> = (rank..m.cols()).map(|j| snf.v.col(j)).collect();
    hermite_basis(&cols)
}

/// Row-style Hermite normal form of a set of vectors: pivots positive,
/// entries above each pivot reduced into [0, pivot). Canonical for the
/// spanned sublattice.
pub fn hermite_basis(vectors: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let ncols = vectors[0].len();
    let mut b: Vec<Vec<Int>> = vectors.to_vec();
    let nrows = b.len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        loop {
            let best = (pivot_row..nrows)
                .filter(|&r| !b[r][col].is_zero())
                .min_by_key(|&r| b[r][col].abs());
            let Some(best) = best else { break };
            b.swap(pivot_row, best);
            let mut all_clear = true;
            for r in pivot_row + 1..nrows {
                if b[r][col].is_zero() {
                    continue;
                }
                let q = b[r][col].div_floor(&b[pivot_row][col]);
                for c in 0..ncols {
                    let delta = &q * &b[pivot_row][c];
                    b[r][c] -= delta;
                }
                if !b[r][col].is_zero() {
                    all_clear = false;
                }
            }
            if all_clear {
                break;
            }
        }
        if !b[pivot_row][col].is_zero() {
            if b[pivot_row][col].is_negative() {
                for c in 0..ncols {
                    b[pivot_row][c] = -b[pivot_row][c].clone();
                }
            }
            for r in 0..pivot_row {
                let q = b[r][col].div_floor(&b[pivot_row][col]);
                for c in 0..ncols {
                    let delta = &q * &b[pivot_row][c];
                    b[r][c] -= delta;
                }
            }
            pivot_row += 1;
        }
    }
    b.truncate(pivot_row);
    b
}

/// gcd of the entries; zero for the zero vector.
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// True iff the gcd of the entries is 1. The zero vector is rejected.
pub fn is_primitive(v: &[Int]) -> Result<bool, LatticeError> {
    if v.iter().all(Zero::is_zero) {
        return Err(LatticeError::ZeroVector);
    }
    Ok(content(v).is_one())
}

/// Divide a nonzero vector by its content.
pub fn primitive_part(v: &[Int]) -> Result<Vec<Int>, LatticeError> {
    if v.iter().all(Zero::is_zero) {
        return Err(LatticeError::ZeroVector);
    }
    let g = content(v);
    Ok(v.iter().map(|x| x / &g).collect())
}

/// A quotient of Z^ambient by the sublattice spanned by the relation
/// vectors, with canonical coset representatives.
///
/// In the coordinates w = U v given by the SNF of the relation matrix, the
/// relation sublattice is spanned by d_i e_i; torsion coordinates are
/// reduced modulo their orders and free coordinates are unconstrained.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    ambient_rank: usize,
    relation_basis: Vec<Vec<Int>>,
    snf: SNFResult,
    u_inv: IntMatrix,
    /// order of coordinate i in w-coordinates: d_i (1 = killed, >=2 =
    /// torsion) or 0 for a free coordinate.
    orders: Vec<Int>,
    torsion_orders: Vec<Int>,
    free_rank: usize,
}

impl PartialEq for QuotientLattice {
    fn eq(&self, other: &Self) -> bool {
        // Hermite basis is a complete invariant of the relation sublattice.
        self.ambient_rank == other.ambient_rank && self.relation_basis == other.relation_basis
    }
}

impl Eq for QuotientLattice {}

pub fn quotient_lattice(
    ambient_rank: usize,
    relations: &[Vec<Int>],
) -> Result<QuotientLattice, LatticeError> {
    for r in relations {
        if r.len() != ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient_rank,
                got: r.len(),
            });
        }
    }
    let relation_basis = hermite_basis(relations);
    // columns of the relation matrix span the sublattice
    let rel_matrix = if relations.is_empty() {
        IntMatrix::zeros(ambient_rank, 0)
    } else {
        IntMatrix::from_cols(relations)
    };
    let snf = smith_normal_form(&rel_matrix);
    let u_inv = snf.u.inverse_unimodular();
    let min = snf.d.rows().min(snf.d.cols());
    let orders: Vec<Int> = (0..ambient_rank)
        .map(|i| {
            if i < min {
                snf.d.at(i, i).clone()
            } else {
                Int::zero()
            }
        })
        .collect();
    let torsion_orders: Vec<Int> = orders
        .iter()
        .filter(|d| **d >= Int::from(2))
        .cloned()
        .collect();
    let free_rank = orders.iter().filter(|d| d.is_zero()).count();
    Ok(QuotientLattice {
        ambient_rank,
        relation_basis,
        snf,
        u_inv,
        orders,
        torsion_orders,
        free_rank,
    })
}

impl QuotientLattice {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[Int] {
        &self.torsion_orders
    }

    pub fn snf(&self) -> &SNFResult {
        &self.snf
    }

    /// Canonical coset representative: a complete invariant for cosets of
    /// the relation sublattice.
    pub fn normal_form(&self, v: &[Int]) -> Result<Vec<Int>, LatticeError> {
        if v.len() != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                got: v.len(),
            });
        }
        let mut w = self.snf.u.mul_vec(v);
        for (i, d) in self.orders.iter().enumerate() {
            if !d.is_zero() {
                w[i] = w[i].mod_floor(d);
            }
        }
        Ok(self.u_inv.mul_vec(&w))
    }
}
