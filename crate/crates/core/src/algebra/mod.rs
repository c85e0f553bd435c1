//! Finite-dimensional Poisson algebras as pairs of structure-constant
//! tensors, their axiom checks and elementary constructions.

mod table;

pub use table::BilinearTable;

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Recorder};
use crate::scalar::{vector, Field, Matrix, Scalar};

/// An associative multiplication and a bracket on `field^dim`. The Poisson
/// identities are not enforced; see [`verify_poisson`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoissonAlgebra {
    field: Field,
    dim: usize,
    mul: BilinearTable,
    bracket: BilinearTable,
    names: Option<Vec<String>>,
}

/// A sparse structure constant `(i, j, k, c)`: `e_i e_j` has coefficient `c`
/// on `e_k`. Indices are 0-based.
pub type Entry = (usize, usize, usize, i64);

impl PoissonAlgebra {
    pub fn new(field: Field, mul: BilinearTable, bracket: BilinearTable) -> Result<PoissonAlgebra> {
        let dim = mul.shape().0;
        for t in [&mul, &bracket] {
            if t.shape() != (dim, dim, dim) {
                return Err(Error::ShapeMismatch(format!(
                    "algebra table of shape {:?}, expected ({dim},{dim},{dim})",
                    t.shape()
                )));
            }
            if t.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(PoissonAlgebra {
            field,
            dim,
            mul,
            bracket,
            names: None,
        })
    }

    /// The algebra with both tables zero.
    pub fn abelian(field: Field, dim: usize) -> PoissonAlgebra {
        let z = BilinearTable::zeros(field, dim, dim, dim);
        PoissonAlgebra {
            field,
            dim,
            mul: z.clone(),
            bracket: z,
            names: None,
        }
    }

    /// Builds an algebra from sparse integer entries. Bracket entries are
    /// given for one ordering only and completed antisymmetrically.
    pub fn from_entries(field: Field, dim: usize, mul: &[Entry], bracket: &[Entry]) -> PoissonAlgebra {
        let mut m = BilinearTable::zeros(field, dim, dim, dim);
        for &(i, j, k, c) in mul {
            m.set(i, j, k, field.from_i64(c));
        }
        let mut b = BilinearTable::zeros(field, dim, dim, dim);
        for &(i, j, k, c) in bracket {
            b.set(i, j, k, field.from_i64(c));
            b.set(j, i, k, field.from_i64(-c));
        }
        PoissonAlgebra::new(field, m, b).expect("consistent shapes")
    }

    /// `k0`: one-dimensional with zero tables.
    pub fn k0(field: Field) -> PoissonAlgebra {
        PoissonAlgebra::abelian(field, 1)
    }

    /// `k1`: the field itself, `e1 e1 = e1`.
    pub fn k1(field: Field) -> PoissonAlgebra {
        PoissonAlgebra::from_entries(field, 1, &[(0, 0, 0, 1)], &[])
    }

    /// `h1 h1 = h3`, `[h1, h2] = h3`.
    pub fn heisenberg(field: Field) -> PoissonAlgebra {
        PoissonAlgebra::from_entries(field, 3, &[(0, 0, 2, 1)], &[(0, 1, 2, 1)])
    }

    /// `e1 e1 = e1`, `e1 e2 = e2`, `{e1, e2} = e2`.
    pub fn left_k1_squared(field: Field) -> PoissonAlgebra {
        PoissonAlgebra::from_entries(field, 2, &[(0, 0, 0, 1), (0, 1, 1, 1)], &[(0, 1, 1, 1)])
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<PoissonAlgebra> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} names for dimension {}",
                names.len(),
                self.dim
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self) -> &BilinearTable {
        &self.mul
    }

    pub fn bracket(&self) -> &BilinearTable {
        &self.bracket
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Equality of the structure tensors, ignoring basis labels.
    pub fn same_tables(&self, other: &PoissonAlgebra) -> bool {
        self.field == other.field && self.mul == other.mul && self.bracket == other.bracket
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim, i)
    }

    /// Reduces a rational algebra into a prime field.
    pub fn convert(&self, field: Field) -> Result<PoissonAlgebra> {
        let mut a = PoissonAlgebra::new(field, self.mul.convert(field)?, self.bracket.convert(field)?)?;
        a.names = self.names.clone();
        Ok(a)
    }

    /// Restricts both tables to the span of the given basis vectors. The
    /// caller is responsible for the span being closed.
    pub fn restrict(&self, basis: &[usize]) -> PoissonAlgebra {
        let n = basis.len();
        let pick = |t: &BilinearTable| {
            BilinearTable::from_fn(self.field, n, n, n, |i, j| {
                basis.iter().map(|&k| t.get(basis[i], basis[j], k).clone()).collect()
            })
        };
        PoissonAlgebra::new(self.field, pick(&self.mul), pick(&self.bracket)).expect("square tables")
    }
}

pub fn verify_associative(p: &PoissonAlgebra) -> AxiomReport {
    let mut rec = Recorder::new(false);
    associativity_only(p, &mut rec);
    rec.finish()
}

pub fn verify_lie(p: &PoissonAlgebra) -> AxiomReport {
    let mut rec = Recorder::new(false);
    lie_only(p, &mut rec);
    rec.finish()
}

pub fn verify_leibniz(p: &PoissonAlgebra) -> AxiomReport {
    let mut rec = Recorder::new(false);
    leibniz_only(p, &mut rec);
    rec.finish()
}

pub fn verify_poisson(p: &PoissonAlgebra) -> AxiomReport {
    let mut rec = Recorder::new(false);
    poisson(p, &mut rec);
    rec.finish()
}

/// Short-circuiting form of [`verify_poisson`].
pub fn is_poisson(p: &PoissonAlgebra) -> bool {
    let mut rec = Recorder::new(true);
    poisson(p, &mut rec);
    rec.report.passed()
}

pub(crate) fn poisson(p: &PoissonAlgebra, rec: &mut Recorder) {
    associativity_only(p, rec);
    if rec.done() {
        return;
    }
    lie_only(p, rec);
    if rec.done() {
        return;
    }
    leibniz_only(p, rec);
}

pub(crate) fn associativity_only(p: &PoissonAlgebra, rec: &mut Recorder) {
    let m = &p.mul;
    for i in 0..p.dim {
        for j in 0..p.dim {
            let ij = m.entry(i, j);
            for k in 0..p.dim {
                let lhs = m.rv(ij, k);
                let rhs = m.lv(i, m.entry(j, k));
                if !rec.check("assoc", &[i, j, k], lhs, rhs) {
                    return;
                }
            }
        }
    }
}

pub(crate) fn lie_only(p: &PoissonAlgebra, rec: &mut Recorder) {
    let b = &p.bracket;
    let zero = vector::zeros(p.field, p.dim);
    for i in 0..p.dim {
        if !rec.check("lie-alt", &[i], b.entry(i, i).to_vec(), zero.clone()) {
            return;
        }
        for j in i + 1..p.dim {
            if !rec.check("lie-antisym", &[i, j], b.entry(i, j).to_vec(), vector::neg(b.entry(j, i))) {
                return;
            }
        }
    }
    for i in 0..p.dim {
        for j in 0..p.dim {
            for k in 0..p.dim {
                let mut s = b.lv(i, b.entry(j, k));
                s = vector::add(&s, &b.lv(j, b.entry(k, i)));
                s = vector::add(&s, &b.lv(k, b.entry(i, j)));
                if !rec.check("jacobi", &[i, j, k], s, zero.clone()) {
                    return;
                }
            }
        }
    }
}

pub(crate) fn leibniz_only(p: &PoissonAlgebra, rec: &mut Recorder) {
    let (m, b) = (&p.mul, &p.bracket);
    for i in 0..p.dim {
        for j in 0..p.dim {
            for k in 0..p.dim {
                // [e_i e_j, e_k] = [e_i, e_k] e_j + e_i [e_j, e_k]
                let lhs = b.rv(m.entry(i, j), k);
                let rhs = vector::add(&m.rv(b.entry(i, k), j), &m.lv(i, b.entry(j, k)));
                if !rec.check("leibniz", &[i, j, k], lhs, rhs) {
                    return;
                }
            }
        }
    }
}

/// `P x V` with block-diagonal tables, `P` first.
pub fn direct_product(p: &PoissonAlgebra, v: &PoissonAlgebra) -> Result<PoissonAlgebra> {
    if p.field != v.field {
        return Err(Error::FieldMismatch);
    }
    let (np, nv) = (p.dim, v.dim);
    let n = np + nv;
    let block = |tp: &BilinearTable, tv: &BilinearTable| {
        BilinearTable::from_fn(p.field, n, n, n, |i, j| {
            let mut out = vector::zeros(p.field, n);
            if i < np && j < np {
                out[..np].clone_from_slice(tp.entry(i, j));
            } else if i >= np && j >= np {
                out[np..].clone_from_slice(tv.entry(i - np, j - np));
            }
            out
        })
    };
    PoissonAlgebra::new(p.field, block(&p.mul, &v.mul), block(&p.bracket, &v.bracket))
}

/// Replaces the bracket by `u (ab - ba)`. Any existing bracket is discarded.
pub fn commutator_poisson(a: &PoissonAlgebra, u: &Scalar) -> Result<PoissonAlgebra> {
    if u.field() != a.field {
        return Err(Error::FieldMismatch);
    }
    let m = &a.mul;
    let bracket = BilinearTable::from_fn(a.field, a.dim, a.dim, a.dim, |i, j| {
        vector::scale(u, &vector::sub(m.entry(i, j), m.entry(j, i)))
    });
    PoissonAlgebra::new(a.field, m.clone(), bracket)
}

/// Adjoins a unit as the first basis vector; the old basis follows in order.
pub fn adjoin_unit(p: &PoissonAlgebra) -> PoissonAlgebra {
    let n = p.dim + 1;
    let f = p.field;
    let mul = BilinearTable::from_fn(f, n, n, n, |i, j| match (i, j) {
        (0, 0) => vector::unit(f, n, 0),
        (0, j) => vector::unit(f, n, j),
        (i, 0) => vector::unit(f, n, i),
        (i, j) => {
            let mut out = vec![f.zero()];
            out.extend_from_slice(p.mul.entry(i - 1, j - 1));
            out
        }
    });
    let bracket = BilinearTable::from_fn(f, n, n, n, |i, j| {
        if i == 0 || j == 0 {
            vector::zeros(f, n)
        } else {
            let mut out = vec![f.zero()];
            out.extend_from_slice(p.bracket.entry(i - 1, j - 1));
            out
        }
    });
    PoissonAlgebra::new(f, mul, bracket).expect("square tables")
}

/// Checks that `V` (of dimension `dim_v`) is a Poisson bimodule over `P`
/// under the left action `act_l`, the right action `act_r` and the Lie
/// action `act_lie`.
pub fn check_poisson_bimodule(
    p: &PoissonAlgebra,
    dim_v: usize,
    act_l: &BilinearTable,
    act_r: &BilinearTable,
    act_lie: &BilinearTable,
) -> Result<AxiomReport> {
    let (n, f) = (p.dim, p.field);
    for (t, shape) in [(act_l, (n, dim_v, dim_v)), (act_r, (dim_v, n, dim_v)), (act_lie, (n, dim_v, dim_v))] {
        if t.shape() != shape {
            return Err(Error::ShapeMismatch(format!("action of shape {:?}, expected {shape:?}", t.shape())));
        }
        if t.field() != f {
            return Err(Error::FieldMismatch);
        }
    }
    let mut rec = Recorder::new(false);
    let (m, b) = (&p.mul, &p.bracket);
    let (l, r, lie) = (act_l, act_r, act_lie);
    for i in 0..n {
        for j in 0..n {
            for x in 0..dim_v {
                let ix = [i, j, x];
                // (pq) -> x = p -> (q -> x)
                rec.check("left-module", &ix, l.rv(m.entry(i, j), x), l.lv(i, l.entry(j, x)));
                // x <- (pq) = (x <- p) <- q
                rec.check("right-module", &ix, r.lv(x, m.entry(i, j)), r.rv(r.entry(x, i), j));
                // (p -> x) <- q = p -> (x <- q)
                rec.check("bimodule", &ix, r.rv(l.entry(i, x), j), l.lv(i, r.entry(x, j)));
                // [p,q] |> x = p |> (q |> x) - q |> (p |> x)
                rec.check(
                    "lie-module",
                    &ix,
                    lie.rv(b.entry(i, j), x),
                    vector::sub(&lie.lv(i, lie.entry(j, x)), &lie.lv(j, lie.entry(i, x))),
                );
                // (pq) |> x = p -> (q |> x) + (p |> x) <- q
                rec.check(
                    "bimod1",
                    &ix,
                    lie.rv(m.entry(i, j), x),
                    vector::add(&l.lv(i, lie.entry(j, x)), &r.rv(lie.entry(i, x), j)),
                );
                // [p,q] -> x = p -> (q |> x) - q |> (p -> x)
                rec.check(
                    "bimod2",
                    &ix,
                    l.rv(b.entry(i, j), x),
                    vector::sub(&l.lv(i, lie.entry(j, x)), &lie.lv(j, l.entry(i, x))),
                );
                // x <- [p,q] = (q |> x) <- p - q |> (x <- p)
                rec.check(
                    "bimod3",
                    &ix,
                    r.lv(x, b.entry(i, j)),
                    vector::sub(&r.rv(lie.entry(j, x), i), &lie.lv(j, r.entry(x, i))),
                );
            }
        }
    }
    Ok(rec.finish())
}

/// Checks that the linear map `phi` (a `dim(b) x dim(a)` matrix) preserves
/// both products.
pub fn is_morphism(a: &PoissonAlgebra, b: &PoissonAlgebra, phi: &Matrix) -> Result<AxiomReport> {
    if a.field != b.field || phi.field() != a.field {
        return Err(Error::FieldMismatch);
    }
    if (phi.rows(), phi.cols()) != (b.dim, a.dim) {
        return Err(Error::ShapeMismatch(format!(
            "map of shape {}x{} between algebras of dimensions {} and {}",
            phi.rows(),
            phi.cols(),
            a.dim,
            b.dim
        )));
    }
    let images: Vec<Vec<Scalar>> = (0..a.dim).map(|i| phi.column(i)).collect();
    let mut rec = Recorder::new(false);
    for i in 0..a.dim {
        for j in 0..a.dim {
            rec.check("mul-hom", &[i, j], phi.apply(a.mul.entry(i, j))?, b.mul.ev(&images[i], &images[j]));
            rec.check(
                "bracket-hom",
                &[i, j],
                phi.apply(a.bracket.entry(i, j))?,
                b.bracket.ev(&images[i], &images[j]),
            );
        }
    }
    Ok(rec.finish())
}

/// Structure constants with respect to a new basis whose vectors are the
/// columns of `basis` (written in the old coordinates).
pub fn change_basis(p: &PoissonAlgebra, basis: &Matrix) -> Result<PoissonAlgebra> {
    if basis.field() != p.field {
        return Err(Error::FieldMismatch);
    }
    if (basis.rows(), basis.cols()) != (p.dim, p.dim) {
        return Err(Error::ShapeMismatch(format!(
            "basis matrix {}x{} for dimension {}",
            basis.rows(),
            basis.cols(),
            p.dim
        )));
    }
    let inv = basis.inverse()?;
    let cols: Vec<Vec<Scalar>> = (0..p.dim).map(|i| basis.column(i)).collect();
    let transport = |t: &BilinearTable| -> Result<BilinearTable> {
        let mut out = BilinearTable::zeros(p.field, p.dim, p.dim, p.dim);
        for i in 0..p.dim {
            for j in 0..p.dim {
                out.set_entry(i, j, &inv.apply(&t.ev(&cols[i], &cols[j]))?);
            }
        }
        Ok(out)
    };
    PoissonAlgebra::new(p.field, transport(&p.mul)?, transport(&p.bracket)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_is_poisson() {
        let h = PoissonAlgebra::heisenberg(Field::Rationals);
        assert!(verify_poisson(&h).passed());
        let q = Field::Rationals;
        assert_eq!(h.mul().eval(&h.unit(0), &h.unit(0)).unwrap(), h.unit(2));
        assert_eq!(h.bracket().eval(&h.unit(1), &h.unit(0)).unwrap(), vector::neg(&h.unit(2)));
        assert_eq!(h.field(), q);
    }

    #[test]
    fn leibniz_failure_is_located() {
        let q = Field::Rationals;
        let a = PoissonAlgebra::from_entries(q, 2, &[(0, 0, 1, 1)], &[(0, 1, 1, 1)]);
        assert!(verify_associative(&a).passed());
        assert!(verify_lie(&a).passed());
        let rep = verify_leibniz(&a);
        let v = &rep.violations[0];
        assert_eq!(v.indices, vec![0, 0, 0]);
        assert_eq!(v.lhs, vec![q.zero(), q.from_i64(-1)]);
        assert_eq!(v.rhs, vec![q.zero(), q.zero()]);
        assert!(!verify_poisson(&a).passed());
        assert!(!is_poisson(&a));
    }

    #[test]
    fn constructions() {
        let q = Field::Rationals;
        let k1k0 = direct_product(&PoissonAlgebra::k1(q), &PoissonAlgebra::k0(q)).unwrap();
        assert!(k1k0.same_tables(&PoissonAlgebra::from_entries(q, 2, &[(0, 0, 0, 1)], &[])));
        let assoc = PoissonAlgebra::from_entries(q, 2, &[(0, 0, 0, 1), (0, 1, 1, 1)], &[]);
        let c = commutator_poisson(&assoc, &q.one()).unwrap();
        assert!(c.same_tables(&PoissonAlgebra::left_k1_squared(q)));
        assert!(verify_poisson(&c).passed());
        let u = adjoin_unit(&PoissonAlgebra::abelian(q, 0));
        assert!(u.same_tables(&PoissonAlgebra::k1(q)));
        let hu = adjoin_unit(&PoissonAlgebra::heisenberg(q));
        assert!(verify_poisson(&hu).passed());
        assert!(hu.restrict(&[1, 2, 3]).same_tables(&PoissonAlgebra::heisenberg(q)));
    }

    #[test]
    fn bimodules() {
        let q = Field::Rationals;
        let h = PoissonAlgebra::heisenberg(q);
        let rep = check_poisson_bimodule(&h, 3, h.mul(), h.mul(), h.bracket()).unwrap();
        assert!(rep.passed(), "{rep}");
        let k1 = PoissonAlgebra::k1(q);
        let z = BilinearTable::zeros(q, 1, 1, 1);
        let mut lie = z.clone();
        lie.set(0, 0, 0, q.one());
        let rep = check_poisson_bimodule(&k1, 1, &z, &z, &lie).unwrap();
        assert_eq!(rep.failed_axioms(), vec!["bimod1"]);
        assert_eq!(rep.violations[0].indices, vec![0, 0, 0]);
    }

    #[test]
    fn basis_change_and_morphisms() {
        let q = Field::Rationals;
        let h = PoissonAlgebra::heisenberg(q);
        let m = Matrix::from_i64(q, &[&[1, 0, 0], &[1, 1, 0], &[0, 0, 2]]);
        let h2 = change_basis(&h, &m).unwrap();
        assert!(verify_poisson(&h2).passed());
        assert!(is_morphism(&h2, &h, &m).unwrap().passed());
        assert!(!is_morphism(&h, &h, &m).unwrap().passed());
    }
}
