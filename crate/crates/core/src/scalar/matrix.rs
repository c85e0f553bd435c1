use std::fmt;

use super::{vector, Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length and field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
                entries.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: n,
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    c.len()
                )));
            }
            for (i, s) in c.iter().enumerate() {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
                m.set(i, j, s.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.entries)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            let mut acc = vector::zeros(self.field, rhs.cols);
            for k in 0..self.cols {
                vector::axpy(&mut acc, self.get(i, k), rhs.row(k));
            }
            out.entries[i * rhs.cols..(i + 1) * rhs.cols].clone_from_slice(&acc);
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| vector::dot(self.row(i), v, self.field))
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| op(a, b)).collect(),
        })
    }

    /// Reduced row echelon form and the pivot columns, pivoting on the first
    /// nonzero entry in each column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            let scaled = vector::scale(&inv, m.row(r));
            m.entries[r * m.cols..(r + 1) * m.cols].clone_from_slice(&scaled);
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let factor = -m.get(i, c);
                    let mut row = m.row(i).to_vec();
                    vector::axpy(&mut row, &factor, &scaled);
                    m.entries[i * m.cols..(i + 1) * m.cols].clone_from_slice(&row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing
    /// column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vector::zeros(self.field, self.cols);
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Solution set of a linear system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Empty,
    Affine {
        particular: Vec<Scalar>,
        nullspace: Vec<Vec<Scalar>>,
    },
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty)
    }

    /// Dimension of the affine solution space, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            SolutionSet::Empty => None,
            SolutionSet::Affine { nullspace, .. } => Some(nullspace.len()),
        }
    }

    pub fn particular(&self) -> Option<&[Scalar]> {
        match self {
            SolutionSet::Empty => None,
            SolutionSet::Affine { particular, .. } => Some(particular),
        }
    }

    /// Checks that every reported vector solves the system it came from.
    pub fn verify(&self, a: &Matrix, b: &[Scalar]) -> bool {
        match self {
            SolutionSet::Empty => true,
            SolutionSet::Affine {
                particular,
                nullspace,
            } => {
                a.apply(particular).is_ok_and(|v| v == b)
                    && nullspace.iter().all(|n| a.apply(n).is_ok_and(|v| vector::is_zero(&v)))
            }
        }
    }

    /// Every point of the solution set, in the order of the coefficient
    /// vectors produced by [`enumerate_vectors`].
    pub fn points(&self, field: Field) -> Result<Vec<Vec<Scalar>>> {
        match self {
            SolutionSet::Empty => Ok(Vec::new()),
            SolutionSet::Affine {
                particular,
                nullspace,
            } => enumerate_vectors(field, nullspace.len())?
                .map(|coeffs| {
                    let mut x = particular.clone();
                    for (c, n) in coeffs.iter().zip(nullspace) {
                        vector::axpy(&mut x, c, n);
                    }
                    Ok(x)
                })
                .collect(),
        }
    }
}

/// Solves `A x = b`; free variables are set to zero in the particular
/// solution.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<SolutionSet> {
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    let field = a.field();
    let mut aug = Matrix::zeros(field, a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug.set(i, j, a.get(i, j).clone());
        }
        if b[i].field() != field {
            return Err(Error::FieldMismatch);
        }
        aug.set(i, a.cols(), b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols()) {
        return Ok(SolutionSet::Empty);
    }
    let mut particular = vector::zeros(field, a.cols());
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = r.get(row, a.cols()).clone();
    }
    Ok(SolutionSet::Affine {
        particular,
        nullspace: a.nullspace(),
    })
}

/// Solves `g(x) = 0` for a map `g: F^n -> F^m` known to be affine, by
/// probing `g` at zero and at each unit vector.
pub fn solve_affine(field: Field, unknowns: usize, g: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Result<SolutionSet> {
    let base = g(&vector::zeros(field, unknowns));
    let columns: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|k| vector::sub(&g(&vector::unit(field, unknowns, k)), &base))
        .collect();
    let a = Matrix::from_columns(field, base.len(), &columns)?;
    solve_linear(&a, &vector::neg(&base))
}

/// Reduction modulo a subspace. Each vector is sent to the unique member of
/// its coset that vanishes at the pivot columns of the subspace's reduced
/// echelon basis; over a prime field this is the lexicographically smallest
/// member of the coset.
#[derive(Clone, Debug)]
pub struct SubspaceReducer {
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceReducer {
    /// The subspace spanned by `spanning`, all of length `len`.
    pub fn new(field: Field, len: usize, spanning: &[Vec<Scalar>]) -> Result<SubspaceReducer> {
        if spanning.is_empty() {
            return Ok(SubspaceReducer {
                basis: Vec::new(),
                pivots: Vec::new(),
            });
        }
        let m = Matrix::from_rows(field, spanning.to_vec())?;
        if m.cols() != len {
            return Err(Error::ShapeMismatch(format!("spanning vectors of length {}, expected {len}", m.cols())));
        }
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(SubspaceReducer { basis, pivots })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// The reduced echelon basis of the subspace.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            if !w[c].is_zero() {
                let factor = -&w[c];
                vector::axpy(&mut w, &factor, b);
            }
        }
        w
    }
}

/// Iterator over all vectors of `F_p^n` in lexicographic order, last
/// coordinate varying fastest.
pub struct VectorIter {
    p: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for VectorIter {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        let cur = self.current.as_mut()?;
        let out = cur
            .iter()
            .map(|&v| Scalar::Residue {
                value: v,
                modulus: self.p,
            })
            .collect();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.p {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_vectors(field: Field, n: usize) -> Result<VectorIter> {
    let p = field.order().ok_or(Error::InfiniteField)?;
    Ok(VectorIter {
        p,
        current: Some(vec![0; n]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, Matrix::from_rows(q, vec![
            vec![q.one(), q.zero(), q.one()],
            vec![q.zero(), q.one(), q.one()],
            vec![q.zero(), q.zero(), q.zero()],
        ]).unwrap());
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![q.from_i64(-1), q.from_i64(-1), q.one()]]);
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::Prime(5);
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 2));
        let singular = Matrix::from_i64(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn solve() {
        let q = Field::Rationals;
        let a = Matrix::from_i64(q, &[&[1, 1], &[1, -1]]);
        let b = vec![q.from_i64(3), q.from_i64(1)];
        let s = solve_linear(&a, &b).unwrap();
        assert_eq!(s.particular(), Some(&[q.from_i64(2), q.one()][..]));
        assert_eq!(s.dimension(), Some(0));
        assert!(s.verify(&a, &b));
        let a = Matrix::from_i64(q, &[&[1, 1], &[2, 2]]);
        let s = solve_linear(&a, &[q.one(), q.one()]).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn vector_enumeration_order() {
        let f = Field::Prime(2);
        let vs: Vec<Vec<u32>> = enumerate_vectors(f, 2)
            .unwrap()
            .map(|v| v.iter().map(|s| s.residue().unwrap()).collect())
            .collect();
        assert_eq!(vs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(enumerate_vectors(f, 0).unwrap().count(), 1);
        assert!(matches!(enumerate_vectors(Field::Rationals, 1), Err(Error::InfiniteField)));
    }

    #[test]
    fn coset_reduction_is_lexicographic_minimum() {
        let f = Field::Prime(3);
        let span = vec![vec![f.zero(), f.from_i64(2), f.one()], vec![f.one(), f.one(), f.zero()]];
        let red = SubspaceReducer::new(f, 3, &span).unwrap();
        assert_eq!(red.dim(), 2);
        for v in enumerate_vectors(f, 3).unwrap() {
            let min = enumerate_vectors(f, 2)
                .unwrap()
                .map(|c| {
                    let mut w = v.clone();
                    vector::axpy(&mut w, &c[0], &span[0]);
                    vector::axpy(&mut w, &c[1], &span[1]);
                    w
                })
                .min()
                .unwrap();
            assert_eq!(red.reduce(&v), min);
        }
    }

    #[test]
    fn affine_points() {
        let f = Field::Prime(3);
        let a = Matrix::from_i64(f, &[&[1, 1, 0]]);
        let s = solve_linear(&a, &[f.one()]).unwrap();
        let pts = s.points(f).unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|x| a.apply(x).unwrap() == vec![f.one()]));
    }
}
