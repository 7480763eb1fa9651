//! Dense exact linear algebra: matrices, row reduction, solvers, and
//! parity-aware linear maps.

use crate::graded::{GradedSpace, Vector};
use crate::scalar::Scalar;
use crate::Error;

/// Row-major dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(n, n);
        for (i, s) in entries.iter().enumerate() {
            *m.get_mut(i, i) = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "inconsistent row lengths".into(),
            ));
        }
        Ok(Matrix::from_rows_with_cols(rows, cols))
    }

    pub(crate) fn from_rows_with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector {
            coords: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn set_column(&mut self, c: usize, v: &Vector) {
        for r in 0..self.rows {
            *self.get_mut(r, c) = v.coords[r].clone();
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zero(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            m.set_column(c, v);
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    *out.get_mut(r, c) += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector, Error> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let mut out = Vector::zero(self.rows);
        for (c, x) in v.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out.coords[r] += &(a * x);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * s;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// First column whose entries differ, with the difference vector.
    /// Used to produce deterministic witnesses for map-equality checks.
    pub fn first_column_difference(&self, rhs: &Matrix) -> Option<(usize, Vector)> {
        for c in 0..self.cols {
            let diff = self.column(c).sub(&rhs.column(c));
            if !diff.is_zero() {
                return Some((c, diff));
            }
        }
        None
    }

    /// Block-diagonal composition.
    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(r, c) = self.get(r, c).clone();
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                *out.get_mut(self.rows + r, self.cols + c) = rhs.get(r, c).clone();
            }
        }
        out
    }

    /// Kronecker product, with `self`'s index major.
    pub fn kronecker(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = rhs.get(r2, c2);
                        if !b.is_zero() {
                            *out.get_mut(r1 * rhs.rows + r2, c1 * rhs.cols + c2) = a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Reduced row-echelon form; returns the reduced matrix and pivot columns.
/// Pivot choice is the first nonzero entry, so the outcome is deterministic.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let pivot_row = (row..a.rows).find(|&r| !a.get(r, col).is_zero());
        let Some(pr) = pivot_row else { continue };
        if pr != row {
            for c in 0..a.cols {
                let tmp = a.get(pr, c).clone();
                *a.get_mut(pr, c) = a.get(row, c).clone();
                *a.get_mut(row, c) = tmp;
            }
        }
        let inv = a.get(row, col).recip().expect("pivot is nonzero");
        for c in 0..a.cols {
            let v = a.get(row, c) * &inv;
            *a.get_mut(row, c) = v;
        }
        for r in 0..a.rows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in 0..a.cols {
                let v = a.get(r, c) - &(&factor * a.get(row, c));
                *a.get_mut(r, c) = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Result of an exact linear solve: a particular solution when consistent,
/// and a basis of the kernel.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub particular: Option<Vector>,
    pub kernel_basis: Vec<Vector>,
}

/// Exact reduced row-echelon solve of `A x = b`. The particular solution
/// sets all free variables to zero; each kernel basis vector sets one free
/// variable to one.
pub fn solve_linear(a: &Matrix, b: &Vector) -> Result<SolveOutcome, Error> {
    if a.rows() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "system {}x{} with right-hand side of dimension {}",
            a.rows(),
            a.cols(),
            b.dim()
        )));
    }
    let mut aug = Matrix::zero(a.rows(), a.cols() + 1);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            *aug.get_mut(r, c) = a.get(r, c).clone();
        }
        *aug.get_mut(r, a.cols()) = b.coords[r].clone();
    }
    let (red, pivots) = rref(&aug);
    let n = a.cols();
    let consistent = !pivots.contains(&n);
    let mut particular = None;
    if consistent {
        let mut x = Vector::zero(n);
        for (r, &pc) in pivots.iter().enumerate() {
            x.coords[pc] = red.get(r, n).clone();
        }
        particular = Some(x);
    }
    let mut kernel_basis = Vec::new();
    let pivot_set: Vec<usize> = pivots.iter().copied().filter(|&c| c < n).collect();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = Vector::zero(n);
        v.coords[free] = Scalar::one();
        for (r, &pc) in pivot_set.iter().enumerate() {
            v.coords[pc] = -red.get(r, free);
        }
        kernel_basis.push(v);
    }
    Ok(SolveOutcome {
        particular,
        kernel_basis,
    })
}

/// Exact determinant by Gaussian elimination.
pub fn det(m: &Matrix) -> Result<Scalar, Error> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("determinant of non-square".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut acc = Scalar::one();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a.get(r, col).is_zero());
        let Some(pr) = pivot_row else {
            return Ok(Scalar::zero());
        };
        if pr != col {
            for c in 0..n {
                let tmp = a.get(pr, c).clone();
                *a.get_mut(pr, c) = a.get(col, c).clone();
                *a.get_mut(col, c) = tmp;
            }
            acc = -acc;
        }
        let pivot = a.get(col, col).clone();
        acc = &acc * &pivot;
        let inv = pivot.recip().expect("pivot nonzero");
        for r in col + 1..n {
            if a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col) * &inv;
            for c in col..n {
                let v = a.get(r, c) - &(&factor * a.get(col, c));
                *a.get_mut(r, c) = v;
            }
        }
    }
    Ok(acc)
}

pub fn invert(m: &Matrix) -> Result<Matrix, Error> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("inverse of non-square".into()));
    }
    let n = m.rows();
    let mut aug = Matrix::zero(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            *aug.get_mut(r, c) = m.get(r, c).clone();
        }
        *aug.get_mut(r, n + r) = Scalar::one();
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
        return Err(Error::SingularMap("matrix is not invertible".into()));
    }
    let mut inv = Matrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            *inv.get_mut(r, c) = red.get(r, n + c).clone();
        }
    }
    Ok(inv)
}

/// A parity-preserving linear map, stored as an exact matrix whose column
/// `j` is the image of basis element `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvenMap {
    matrix: Matrix,
}

impl EvenMap {
    /// Even endomorphism of `space`; rejects entries crossing parity blocks.
    pub fn new(space: &GradedSpace, matrix: Matrix) -> Result<Self, Error> {
        Self::between(space, space, matrix)
    }

    /// Even map between two graded spaces.
    pub fn between(
        source: &GradedSpace,
        target: &GradedSpace,
        matrix: Matrix,
    ) -> Result<Self, Error> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix {}x{} for spaces of dimensions {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                if !matrix.get(r, c).is_zero() && target.parity(r) != source.parity(c) {
                    return Err(Error::ParityViolation {
                        what: "even map".into(),
                        detail: format!("nonzero entry at row {r}, column {c} crosses parity"),
                    });
                }
            }
        }
        Ok(EvenMap { matrix })
    }

    pub fn identity(space: &GradedSpace) -> Self {
        EvenMap {
            matrix: Matrix::identity(space.dim()),
        }
    }

    pub fn diagonal(space: &GradedSpace, entries: &[Scalar]) -> Result<Self, Error> {
        EvenMap::new(space, Matrix::diagonal(entries))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.rows())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.mul_vec(v).expect("dimension checked")
    }

    pub fn apply_basis(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    /// `self` after `rhs`: `(self.compose(rhs))(v) = self(rhs(v))`.
    pub fn compose(&self, rhs: &EvenMap) -> Result<EvenMap, Error> {
        Ok(EvenMap {
            matrix: self.matrix.mul(&rhs.matrix)?,
        })
    }

    pub fn commutes_with(&self, rhs: &EvenMap) -> bool {
        match (self.compose(rhs), rhs.compose(self)) {
            (Ok(a), Ok(b)) => a.matrix == b.matrix,
            _ => false,
        }
    }

    pub fn invert(&self) -> Result<EvenMap, Error> {
        Ok(EvenMap {
            matrix: invert(&self.matrix)?,
        })
    }

    pub fn pow(&self, k: usize) -> EvenMap {
        let n = self.matrix.rows();
        let mut acc = Matrix::identity(n);
        for _ in 0..k {
            acc = acc.mul(&self.matrix).expect("square");
        }
        EvenMap { matrix: acc }
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rows() == self.matrix.cols()
            && !det(&self.matrix).map(|d| d.is_zero()).unwrap_or(true)
    }
}

/// A homogeneous linear map of fixed parity: entry `(i, j)` may be nonzero
/// only when `parity[i] = parity[j] + parity` mod 2. Odd maps swap the
/// parity blocks; even ones coincide with [`EvenMap`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityMap {
    parity: u8,
    matrix: Matrix,
}

impl ParityMap {
    pub fn new(space: &GradedSpace, parity: u8, matrix: Matrix) -> Result<Self, Error> {
        Self::between(space, space, parity, matrix)
    }

    pub fn between(
        source: &GradedSpace,
        target: &GradedSpace,
        parity: u8,
        matrix: Matrix,
    ) -> Result<Self, Error> {
        if parity > 1 {
            return Err(Error::Validation {
                field: "parity".into(),
                reason: "map parity must be 0 or 1".into(),
            });
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("parity map shape".into()));
        }
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                if !matrix.get(r, c).is_zero()
                    && target.parity(r) != (source.parity(c) + parity) & 1
                {
                    return Err(Error::ParityViolation {
                        what: "homogeneous map".into(),
                        detail: format!(
                            "entry at row {r}, column {c} breaks the parity-{parity} pattern"
                        ),
                    });
                }
            }
        }
        Ok(ParityMap { parity, matrix })
    }

    pub fn zero(space: &GradedSpace, parity: u8) -> Self {
        ParityMap {
            parity,
            matrix: Matrix::zero(space.dim(), space.dim()),
        }
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.mul_vec(v).expect("dimension checked")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Supercommutator `[D, D'] = D D' - (-1)^{|D||D'|} D' D`.
    pub fn supercommutator(&self, other: &ParityMap) -> Result<ParityMap, Error> {
        let a = self.matrix.mul(&other.matrix)?;
        let b = other.matrix.mul(&self.matrix)?;
        let m = if (self.parity & other.parity) == 1 {
            a.add(&b)?
        } else {
            a.sub(&b)?
        };
        Ok(ParityMap {
            parity: (self.parity + other.parity) & 1,
            matrix: m,
        })
    }
}
