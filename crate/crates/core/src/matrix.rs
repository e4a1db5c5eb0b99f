//! Dense exact matrices over any field spec.
//!
//! Arithmetic, exact Gaussian inversion, determinants, the division-free
//! Samuelson-Berkowitz characteristic polynomial, and Krylov minimal
//! polynomials. Matrices are plain immutable value types; everything here is
//! valid in any characteristic.

use crate::field::{FieldError, FieldScalar, FieldSpec};
use crate::poly::Polynomial;
use rand::Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("field spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },
    #[error("matrix is singular: rank {rank}, no pivot in column {column}")]
    Singular { rank: usize, column: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldScalar>,
}

impl ExactMatrix {
    pub fn new(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldScalar>,
    ) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(MatrixError::Parse(format!(
                "need {rows}x{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.spec() != &spec {
                return Err(MatrixError::SpecMismatch {
                    left: spec.to_string(),
                    right: e.spec().to_string(),
                });
            }
        }
        Ok(ExactMatrix { spec, rows, cols, entries })
    }

    pub fn from_fn(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldScalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix::new(spec, rows, cols, entries).expect("from_fn entries consistent")
    }

    pub fn zero(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        let z = spec.zero();
        ExactMatrix::from_fn(spec, rows, cols, |_, _| z.clone())
    }

    pub fn identity(spec: FieldSpec, m: usize) -> Self {
        ExactMatrix::from_fn(spec.clone(), m, m, |i, j| {
            if i == j {
                spec.one()
            } else {
                spec.zero()
            }
        })
    }

    pub fn diagonal(spec: FieldSpec, diag: &[FieldScalar]) -> Self {
        ExactMatrix::from_fn(spec.clone(), diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                spec.zero()
            }
        })
    }

    /// Elementary matrix unit E_{ij} (1-indexed positions are not used;
    /// i and j are 0-based).
    pub fn unit(spec: FieldSpec, m: usize, i: usize, j: usize) -> Self {
        ExactMatrix::from_fn(spec.clone(), m, m, |r, c| {
            if (r, c) == (i, j) {
                spec.one()
            } else {
                spec.zero()
            }
        })
    }

    pub fn random(spec: &FieldSpec, m: usize, rng: &mut impl Rng) -> Self {
        ExactMatrix::from_fn(spec.clone(), m, m, |_, _| spec.sample(rng))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_same_shape(&self, rhs: &Self, op: &'static str) -> Result<(), MatrixError> {
        if self.spec != rhs.spec {
            return Err(MatrixError::SpecMismatch {
                left: self.spec.to_string(),
                right: rhs.spec.to_string(),
            });
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(MatrixError::ShapeMismatch {
                op,
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(rhs, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        ExactMatrix::new(self.spec.clone(), self.rows, self.cols, entries)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(rhs, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        ExactMatrix::new(self.spec.clone(), self.rows, self.cols, entries)
    }

    pub fn neg(&self) -> Self {
        ExactMatrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, factor: &FieldScalar) -> Self {
        ExactMatrix {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(factor)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.spec != rhs.spec {
            return Err(MatrixError::SpecMismatch {
                left: self.spec.to_string(),
                right: rhs.spec.to_string(),
            });
        }
        if self.cols != rhs.rows {
            return Err(MatrixError::ShapeMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.spec.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(rhs.get(k, j)));
                }
                entries.push(acc);
            }
        }
        ExactMatrix::new(self.spec.clone(), self.rows, rhs.cols, entries)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self, MatrixError> {
        self.require_square()?;
        let mut result = ExactMatrix::identity(self.spec.clone(), self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact inverse via Gauss-Jordan elimination with nonzero pivoting.
    /// A singular input reports the achieved rank and the first column with
    /// no usable pivot.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let m = self.require_square()?;
        let mut work = self.entries.clone();
        let mut aug = ExactMatrix::identity(self.spec.clone(), m).entries;
        let at = |e: &Vec<FieldScalar>, i: usize, j: usize| e[i * m + j].clone();
        for col in 0..m {
            let pivot_row = (col..m).find(|&r| !at(&work, r, col).is_zero());
            let pivot_row = match pivot_row {
                Some(r) => r,
                None => return Err(MatrixError::Singular { rank: col, column: col }),
            };
            if pivot_row != col {
                for j in 0..m {
                    work.swap(pivot_row * m + j, col * m + j);
                    aug.swap(pivot_row * m + j, col * m + j);
                }
            }
            let inv_pivot = at(&work, col, col).inv()?;
            for j in 0..m {
                work[col * m + j] = work[col * m + j].mul(&inv_pivot);
                aug[col * m + j] = aug[col * m + j].mul(&inv_pivot);
            }
            for r in 0..m {
                if r == col {
                    continue;
                }
                let factor = at(&work, r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m {
                    work[r * m + j] = work[r * m + j].sub(&factor.mul(&at(&work, col, j)));
                    aug[r * m + j] = aug[r * m + j].sub(&factor.mul(&at(&aug, col, j)));
                }
            }
        }
        ExactMatrix::new(self.spec.clone(), m, m, aug)
    }

    /// Exact determinant by forward elimination with row swaps.
    pub fn det(&self) -> Result<FieldScalar, MatrixError> {
        let m = self.require_square()?;
        let mut work = self.entries.clone();
        let at = |e: &Vec<FieldScalar>, i: usize, j: usize| e[i * m + j].clone();
        let mut det = self.spec.one();
        for col in 0..m {
            let pivot_row = (col..m).find(|&r| !at(&work, r, col).is_zero());
            let pivot_row = match pivot_row {
                Some(r) => r,
                None => return Ok(self.spec.zero()),
            };
            if pivot_row != col {
                for j in 0..m {
                    work.swap(pivot_row * m + j, col * m + j);
                }
                det = det.neg();
            }
            let pivot = at(&work, col, col);
            det = det.mul(&pivot);
            let inv_pivot = pivot.inv()?;
            for r in col + 1..m {
                let factor = at(&work, r, col).mul(&inv_pivot);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m {
                    work[r * m + j] = work[r * m + j].sub(&factor.mul(&at(&work, col, j)));
                }
            }
        }
        Ok(det)
    }

    /// Solve self * x = rhs for a single column vector.
    pub fn solve(&self, rhs: &[FieldScalar]) -> Result<Vec<FieldScalar>, MatrixError> {
        let m = self.require_square()?;
        if rhs.len() != m {
            return Err(MatrixError::ShapeMismatch {
                op: "solve",
                left: (m, m),
                right: (rhs.len(), 1),
            });
        }
        let mut work = self.entries.clone();
        let mut b = rhs.to_vec();
        let at = |e: &Vec<FieldScalar>, i: usize, j: usize| e[i * m + j].clone();
        for col in 0..m {
            let pivot_row = (col..m).find(|&r| !at(&work, r, col).is_zero());
            let pivot_row = match pivot_row {
                Some(r) => r,
                None => return Err(MatrixError::Singular { rank: col, column: col }),
            };
            if pivot_row != col {
                for j in 0..m {
                    work.swap(pivot_row * m + j, col * m + j);
                }
                b.swap(pivot_row, col);
            }
            let inv_pivot = at(&work, col, col).inv()?;
            for j in 0..m {
                work[col * m + j] = work[col * m + j].mul(&inv_pivot);
            }
            b[col] = b[col].mul(&inv_pivot);
            for r in 0..m {
                if r == col {
                    continue;
                }
                let factor = at(&work, r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m {
                    work[r * m + j] = work[r * m + j].sub(&factor.mul(&at(&work, col, j)));
                }
                b[r] = b[r].sub(&factor.mul(&b[col]));
            }
        }
        Ok(b)
    }

    /// A nonzero kernel vector of a singular square matrix, or None when the
    /// matrix is invertible. Used as a zero-divisor certificate upstream.
    pub fn kernel_vector(&self) -> Option<Vec<FieldScalar>> {
        let m = self.require_square().ok()?;
        // Row reduce and track pivot columns.
        let mut work = self.entries.clone();
        let at = |e: &Vec<FieldScalar>, i: usize, j: usize| e[i * m + j].clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0usize;
        for col in 0..m {
            let pivot_row = (row..m).find(|&r| !at(&work, r, col).is_zero());
            let pivot_row = match pivot_row {
                Some(r) => r,
                None => continue,
            };
            if pivot_row != row {
                for j in 0..m {
                    work.swap(pivot_row * m + j, row * m + j);
                }
            }
            let inv_pivot = at(&work, row, col).inv().ok()?;
            for j in 0..m {
                work[row * m + j] = work[row * m + j].mul(&inv_pivot);
            }
            for r in 0..m {
                if r == row {
                    continue;
                }
                let factor = at(&work, r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m {
                    work[r * m + j] = work[r * m + j].sub(&factor.mul(&at(&work, row, j)));
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        if pivot_cols.len() == m {
            return None;
        }
        let free_col = (0..m).find(|c| !pivot_cols.contains(c))?;
        let mut v = vec![self.spec.zero(); m];
        v[free_col] = self.spec.one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = at(&work, r, free_col).neg();
        }
        Some(v)
    }

    /// Characteristic polynomial det(xI - A), monic of degree m, computed by
    /// the division-free Samuelson-Berkowitz scheme (sound over any field,
    /// including small characteristic).
    pub fn char_poly(&self) -> Result<Polynomial, MatrixError> {
        let m = self.require_square()?;
        let spec = self.spec.clone();
        // coefficients highest degree first; v has length r+1 after step r
        let mut v = vec![spec.one(), self.get(0, 0).neg()];
        for r in 2..=m {
            // Toeplitz column t_0..t_r for the r-th leading principal block:
            // t_0 = 1, t_1 = -A[r-1][r-1], t_k = -(R . M^{k-2} . C) where R is
            // the row strip, C the column strip, M the (r-1) principal block.
            let mut t = Vec::with_capacity(r + 1);
            t.push(spec.one());
            t.push(self.get(r - 1, r - 1).neg());
            let mut w: Vec<FieldScalar> = (0..r - 1).map(|i| self.get(i, r - 1).clone()).collect();
            for _ in 2..=r {
                let mut dot = spec.zero();
                for (i, wi) in w.iter().enumerate() {
                    dot = dot.add(&self.get(r - 1, i).mul(wi));
                }
                t.push(dot.neg());
                // w <- M . w
                let mut next = Vec::with_capacity(r - 1);
                for i in 0..r - 1 {
                    let mut acc = spec.zero();
                    for (j, wj) in w.iter().enumerate() {
                        acc = acc.add(&self.get(i, j).mul(wj));
                    }
                    next.push(acc);
                }
                w = next;
            }
            let mut next_v = vec![spec.zero(); r + 1];
            for (i, slot) in next_v.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j && i - j <= r {
                        *slot = slot.add(&t[i - j].mul(vj));
                    }
                }
            }
            v = next_v;
        }
        v.reverse();
        Ok(Polynomial::new(spec, v))
    }

    /// Monic minimal polynomial via Krylov iteration: flatten I, A, A^2, ...
    /// and return the first linear dependence found by incremental row
    /// reduction. Cayley-Hamilton bounds the degree by m.
    pub fn min_poly(&self) -> Result<Polynomial, MatrixError> {
        let m = self.require_square()?;
        let spec = self.spec.clone();
        let mut power = ExactMatrix::identity(spec.clone(), m);
        let powers = std::iter::from_fn(move || {
            let current = power.entries.clone();
            power = power.mul(self).expect("square powers conformable");
            Some(current)
        });
        let (k, combo) =
            first_linear_dependence(&spec, powers.take(m + 1)).expect("dependence within m+1 powers");
        let mut coeffs: Vec<FieldScalar> = combo.iter().map(|c| c.neg()).collect();
        coeffs.push(spec.one());
        debug_assert_eq!(coeffs.len(), k + 1);
        Ok(Polynomial::new(spec, coeffs))
    }

    /// Degree of the minimal polynomial: dim_F F(A).
    pub fn algebraic_degree(&self) -> Result<usize, MatrixError> {
        Ok(self.min_poly()?.degree().expect("min poly is nonzero"))
    }

    /// Evaluate a polynomial at this matrix (Horner).
    pub fn apply_poly(&self, p: &Polynomial) -> Result<Self, MatrixError> {
        let m = self.require_square()?;
        let mut acc = ExactMatrix::zero(self.spec.clone(), m, m);
        for c in p.coefficients().iter().rev() {
            acc = acc.mul(self)?;
            let c_on_diag = ExactMatrix::identity(self.spec.clone(), m).scale(c);
            acc = acc.add(&c_on_diag)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<FieldScalar, MatrixError> {
        let m = self.require_square()?;
        let mut acc = self.spec.zero();
        for i in 0..m {
            acc = acc.add(self.get(i, i));
        }
        Ok(acc)
    }

    pub fn diagonal_entries(&self) -> Vec<FieldScalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// Parse the matrix text format: first line `m n`, then m lines of n
    /// whitespace-separated scalars in the field's text form.
    pub fn parse_text(spec: &FieldSpec, text: &str) -> Result<Self, MatrixError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| MatrixError::Parse("empty matrix text".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(MatrixError::Parse(format!(
                "header must be `rows cols`, got `{header}`"
            )));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| MatrixError::Parse(format!("bad row count `{}`", dims[0])))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| MatrixError::Parse(format!("bad col count `{}`", dims[1])))?;
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| MatrixError::Parse(format!("missing row {}", i + 1)))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != cols {
                return Err(MatrixError::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    toks.len()
                )));
            }
            for tok in toks {
                entries.push(spec.parse_scalar(tok)?);
            }
        }
        if lines.next().is_some() {
            return Err(MatrixError::Parse("trailing lines after matrix".into()));
        }
        ExactMatrix::new(spec.clone(), rows, cols, entries)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Feed vectors one by one into an incremental row reduction; when vector k
/// first becomes a combination of its predecessors, return `(k, c)` with
/// v_k = sum c_i v_i. Each stored row remembers its expression in the
/// original vectors so the combination falls out of the reduction itself.
pub(crate) fn first_linear_dependence(
    spec: &FieldSpec,
    vectors: impl Iterator<Item = Vec<FieldScalar>>,
) -> Option<(usize, Vec<FieldScalar>)> {
    struct Row {
        vec: Vec<FieldScalar>,
        pivot: usize,
        combo: Vec<FieldScalar>,
    }
    let mut rows: Vec<Row> = Vec::new();
    for (k, v) in vectors.enumerate() {
        let mut work = v;
        // taken[i]: coefficient of original v_i accumulated from subtracted rows
        let mut taken = vec![spec.zero(); k];
        for row in &rows {
            let factor = work[row.pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (w, r) in work.iter_mut().zip(&row.vec) {
                *w = w.sub(&factor.mul(r));
            }
            for (i, c) in row.combo.iter().enumerate() {
                taken[i] = taken[i].add(&factor.mul(c));
            }
        }
        match work.iter().position(|x| !x.is_zero()) {
            None => return Some((k, taken)),
            Some(pivot) => {
                let inv = work[pivot].inv().expect("pivot nonzero");
                let vec: Vec<FieldScalar> = work.iter().map(|x| x.mul(&inv)).collect();
                // combo for the normalized row: (e_k - taken) / pivot
                let mut combo = vec![spec.zero(); k + 1];
                for (i, t) in taken.iter().enumerate() {
                    combo[i] = t.neg().mul(&inv);
                }
                combo[k] = inv;
                rows.push(Row { vec, pivot, combo });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn f101() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    fn qmat(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::new(
            q(),
            rows,
            cols,
            vals.iter().map(|&v| q().from_int(v)).collect(),
        )
        .unwrap()
    }

    fn qpoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(q(), coeffs.iter().map(|&c| q().from_int(c)).collect())
    }

    /// Cofactor-expansion determinant of a matrix of polynomials;
    /// the independent oracle for the Berkowitz characteristic polynomial.
    fn poly_det_cofactor(m: usize, get: &dyn Fn(usize, usize) -> Polynomial, spec: &FieldSpec) -> Polynomial {
        if m == 1 {
            return get(0, 0);
        }
        let mut acc = Polynomial::zero(spec.clone());
        for j in 0..m {
            let minor = |r: usize, c: usize| get(r + 1, if c < j { c } else { c + 1 });
            let sub = poly_det_cofactor(m - 1, &minor, spec);
            let term = get(0, j).mul(&sub);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn char_poly_oracle(a: &ExactMatrix) -> Polynomial {
        let spec = a.spec().clone();
        let m = a.rows();
        let entry = |i: usize, j: usize| {
            // xI - A
            let diag = if i == j {
                Polynomial::x(spec.clone())
            } else {
                Polynomial::zero(spec.clone())
            };
            diag.sub(&Polynomial::constant(a.get(i, j).clone()))
        };
        poly_det_cofactor(m, &entry, &spec)
    }

    #[test]
    fn unit_matrix_commutator() {
        // E12*E21 - E21*E12 = diag(1, -1)
        let e12 = ExactMatrix::unit(q(), 2, 0, 1);
        let e21 = ExactMatrix::unit(q(), 2, 1, 0);
        let c = e12.mul(&e21).unwrap().sub(&e21.mul(&e12).unwrap()).unwrap();
        assert_eq!(c, qmat(2, 2, &[1, 0, 0, -1]));
    }

    #[test]
    fn identity_neutral() {
        let a = qmat(2, 2, &[1, 2, 3, 4]);
        let i = ExactMatrix::identity(q(), 2);
        assert_eq!(a.mul(&i).unwrap(), a);
    }

    #[test]
    fn inverse_involution_and_diag() {
        let swap = qmat(2, 2, &[0, 1, 1, 0]);
        assert_eq!(swap.inverse().unwrap(), swap);

        let d = qmat(2, 2, &[1, 0, 0, 2]);
        let dinv = d.inverse().unwrap();
        assert_eq!(dinv.get(1, 1), &q().parse_scalar("1/2").unwrap());
        assert_eq!(d.mul(&dinv).unwrap(), ExactMatrix::identity(q(), 2));
    }

    #[test]
    fn inverse_of_companion_shape() {
        // [[0,3],[1,0]]^-1 = [[0,1],[1/3,0]], checked by the product.
        let a = qmat(2, 2, &[0, 3, 1, 0]);
        let inv = a.inverse().unwrap();
        let expected = ExactMatrix::new(
            q(),
            2,
            2,
            vec![
                q().zero(),
                q().one(),
                q().parse_scalar("1/3").unwrap(),
                q().zero(),
            ],
        )
        .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(q(), 2));
    }

    #[test]
    fn singular_reports_rank_certificate() {
        let a = qmat(2, 2, &[1, 2, 2, 4]);
        match a.inverse() {
            Err(MatrixError::Singular { rank, column }) => {
                assert_eq!((rank, column), (1, 1));
            }
            other => panic!("expected Singular, got {other:?}"),
        }
        // Kernel certificate: A v = 0, v nonzero.
        let v = a.kernel_vector().unwrap();
        assert!(v.iter().any(|x| !x.is_zero()));
        for i in 0..2 {
            let mut acc = q().zero();
            for j in 0..2 {
                acc = acc.add(&a.get(i, j).mul(&v[j]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn char_poly_diag12() {
        let a = qmat(2, 2, &[1, 0, 0, 2]);
        assert_eq!(a.char_poly().unwrap(), qpoly(&[2, -3, 1]));
    }

    #[test]
    fn char_poly_zero_matrix() {
        let z = ExactMatrix::zero(q(), 3, 3);
        assert_eq!(z.char_poly().unwrap(), qpoly(&[0, 0, 0, 1]));
    }

    #[test]
    fn char_poly_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let m = 1 + (rng.next_u32() as usize) % 4;
            let a = ExactMatrix::random(&f101(), m, &mut rng);
            assert_eq!(a.char_poly().unwrap(), char_poly_oracle(&a));
        }
    }

    #[test]
    fn min_poly_scalar_and_diag() {
        let i3 = ExactMatrix::identity(q(), 3);
        assert_eq!(i3.min_poly().unwrap(), qpoly(&[-1, 1]));

        // diag(1,2): min poly (x-1)(x-2), degree 2 -- the smallest.
        let a = qmat(2, 2, &[1, 0, 0, 2]);
        let p = a.min_poly().unwrap();
        assert_eq!(p, qpoly(&[2, -3, 1]));
        assert_eq!(a.algebraic_degree().unwrap(), 2);
    }

    #[test]
    fn min_poly_companion_cubic() {
        // Companion of x^3 - 2: min poly is x^3 - 2; additionally confirm no
        // monic quadratic annihilates it by checking I, A, A^2 independent.
        let a = qmat(3, 3, &[0, 0, 2, 1, 0, 0, 0, 1, 0]);
        let p = a.min_poly().unwrap();
        assert_eq!(p, qpoly(&[-2, 0, 0, 1]));
        assert!(a.apply_poly(&p).unwrap().is_zero());

        let powers = vec![
            ExactMatrix::identity(q(), 3).entries().to_vec(),
            a.entries().to_vec(),
            a.mul(&a).unwrap().entries().to_vec(),
        ];
        assert!(first_linear_dependence(&q(), powers.into_iter()).is_none());
    }

    #[test]
    fn algebraic_degree_examples() {
        let lam = ExactMatrix::identity(q(), 4).scale(&q().from_int(5));
        assert_eq!(lam.algebraic_degree().unwrap(), 1);

        let d = ExactMatrix::diagonal(
            q(),
            &[q().from_int(1), q().from_int(2), q().from_int(3)],
        );
        assert_eq!(d.algebraic_degree().unwrap(), 3);
    }

    #[test]
    fn min_poly_divides_char_poly_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let m = 1 + (rng.next_u32() as usize) % 4;
            let a = ExactMatrix::random(&f101(), m, &mut rng);
            let mp = a.min_poly().unwrap();
            let cp = a.char_poly().unwrap();
            let (_, r) = cp.divmod(&mp).unwrap();
            assert!(r.is_zero(), "min poly must divide char poly");
            assert!(a.apply_poly(&mp).unwrap().is_zero());
        }
    }

    #[test]
    fn mul_associative_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = ExactMatrix::random(&f101(), 3, &mut rng);
            let b = ExactMatrix::random(&f101(), 3, &mut rng);
            let c = ExactMatrix::random(&f101(), 3, &mut rng);
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn inverse_times_self_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut successes = 0;
        for _ in 0..50 {
            let a = ExactMatrix::random(&f101(), 3, &mut rng);
            if let Ok(inv) = a.inverse() {
                assert_eq!(inv.mul(&a).unwrap(), ExactMatrix::identity(f101(), 3));
                successes += 1;
            }
        }
        assert!(successes > 0);
    }

    #[test]
    fn text_format_round_trip() {
        let a = ExactMatrix::new(
            q(),
            2,
            3,
            vec![
                q().parse_scalar("1/2").unwrap(),
                q().from_int(-3),
                q().zero(),
                q().from_int(7),
                q().parse_scalar("-5/9").unwrap(),
                q().one(),
            ],
        )
        .unwrap();
        let text = a.to_string();
        assert!(text.starts_with("2 3\n"));
        let b = ExactMatrix::parse_text(&q(), &text).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), text);
    }

    #[test]
    fn shape_and_spec_errors() {
        let a = qmat(2, 2, &[1, 2, 3, 4]);
        let b = qmat(2, 2, &[1, 0, 0, 1]);
        let wide = qmat(1, 4, &[1, 2, 3, 4]);
        assert!(matches!(
            a.add(&wide),
            Err(MatrixError::ShapeMismatch { .. })
        ));
        let bf = ExactMatrix::identity(f101(), 2);
        assert!(matches!(b.add(&bf), Err(MatrixError::SpecMismatch { .. })));
        assert!(a.add(&b).is_ok());
    }
}
