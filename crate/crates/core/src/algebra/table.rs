use crate::error::{Error, Result};
use crate::scalar::{vector, Field, Scalar};

/// A bilinear map `U x W -> Z` given by structure constants: the pair of
/// basis vectors `(u_i, w_j)` maps to `sum_k c[i][j][k] z_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearTable {
    field: Field,
    d1: usize,
    d2: usize,
    dout: usize,
    coeffs: Vec<Scalar>,
}

impl BilinearTable {
    pub fn zeros(field: Field, d1: usize, d2: usize, dout: usize) -> BilinearTable {
        BilinearTable {
            field,
            d1,
            d2,
            dout,
            coeffs: vec![field.zero(); d1 * d2 * dout],
        }
    }

    /// Builds a table from a flat coefficient list indexed `(i * d2 + j) * dout + k`.
    pub fn from_flat(field: Field, d1: usize, d2: usize, dout: usize, coeffs: Vec<Scalar>) -> Result<BilinearTable> {
        if coeffs.len() != d1 * d2 * dout {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for a ({d1},{d2},{dout}) table",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(BilinearTable {
            field,
            d1,
            d2,
            dout,
            coeffs,
        })
    }

    pub fn from_fn(
        field: Field,
        d1: usize,
        d2: usize,
        dout: usize,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> BilinearTable {
        let mut t = BilinearTable::zeros(field, d1, d2, dout);
        for i in 0..d1 {
            for j in 0..d2 {
                let v = f(i, j);
                debug_assert_eq!(v.len(), dout);
                t.set_entry(i, j, &v);
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.d1, self.d2, self.dout)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.d2 + j) * self.dout
    }

    /// Image of the basis pair `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j);
        &self.coeffs[o..o + self.dout]
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.coeffs[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, s: Scalar) {
        let o = self.offset(i, j);
        self.coeffs[o + k] = s;
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: &[Scalar]) {
        let o = self.offset(i, j);
        self.coeffs[o..o + self.dout].clone_from_slice(v);
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coeffs)
    }

    /// Image of `(u, v)`; shapes are checked.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        if u.len() != self.d1 || v.len() != self.d2 {
            return Err(Error::DimensionMismatch(format!(
                "arguments of lengths ({}, {}) for a ({}, {}) table",
                u.len(),
                v.len(),
                self.d1,
                self.d2
            )));
        }
        if u.iter().chain(v).any(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.ev(u, v))
    }

    pub(crate) fn ev(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dout);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    vector::axpy(&mut out, &(a * b), self.entry(i, j));
                }
            }
        }
        out
    }

    /// Image of `(u_i, v)`.
    pub(crate) fn lv(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dout);
        for (j, b) in v.iter().enumerate() {
            vector::axpy(&mut out, b, self.entry(i, j));
        }
        out
    }

    /// Image of `(u, w_j)`.
    pub(crate) fn rv(&self, u: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dout);
        for (i, a) in u.iter().enumerate() {
            vector::axpy(&mut out, a, self.entry(i, j));
        }
        out
    }

    pub fn add(&self, rhs: &BilinearTable) -> Result<BilinearTable> {
        self.same_shape(rhs)?;
        Ok(BilinearTable {
            coeffs: vector::add(&self.coeffs, &rhs.coeffs),
            ..self.clone()
        })
    }

    pub fn sub(&self, rhs: &BilinearTable) -> Result<BilinearTable> {
        self.same_shape(rhs)?;
        Ok(BilinearTable {
            coeffs: vector::sub(&self.coeffs, &rhs.coeffs),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> BilinearTable {
        BilinearTable {
            coeffs: vector::scale(s, &self.coeffs),
            ..self.clone()
        }
    }

    fn same_shape(&self, rhs: &BilinearTable) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!("{:?} versus {:?}", self.shape(), rhs.shape())));
        }
        Ok(())
    }

    /// Completes a table given by its `i <= j` entries: each `(j, i)` entry
    /// with `i < j` is overwritten by the negation of `(i, j)` and diagonal
    /// entries are cleared.
    pub fn antisymmetrized(&self) -> BilinearTable {
        let mut t = self.clone();
        for i in 0..self.d1.min(self.d2) {
            t.set_entry(i, i, &vector::zeros(self.field, self.dout));
            for j in i + 1..self.d2.min(self.d1) {
                let v = vector::neg(self.entry(i, j));
                t.set_entry(j, i, &v);
            }
        }
        t
    }

    /// Whether the diagonal vanishes and `(j, i) = -(i, j)` for all pairs.
    pub fn is_antisymmetric(&self) -> bool {
        self.d1 == self.d2
            && (0..self.d1).all(|i| {
                vector::is_zero(self.entry(i, i))
                    && (i + 1..self.d2).all(|j| vector::add(self.entry(i, j), self.entry(j, i)).iter().all(Scalar::is_zero))
            })
    }

    /// Maps the coefficients into another field.
    pub fn convert(&self, field: Field) -> Result<BilinearTable> {
        let coeffs = self.coeffs.iter().map(|s| field.convert(s)).collect::<Result<_>>()?;
        BilinearTable::from_flat(field, self.d1, self.d2, self.dout, coeffs)
    }
}
