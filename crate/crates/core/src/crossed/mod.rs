//! Pre-crossed data of a Poisson algebra `P` by a space `V`, the axiom
//! batteries deciding when the crossed product is a Poisson algebra, and
//! the passage between extensions and crossed systems.

mod axioms;

pub use axioms::{check_crossed_system, check_hochschild, check_lie_crossed, is_crossed_system};

use crate::algebra::{self, BilinearTable, PoissonAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{solve_linear, vector, Field, Matrix, Scalar, SolutionSet};

/// The seven bilinear maps of a pre-crossed datum.
///
/// Shapes, with `m = dim P` and `n = dim V`: `act_l` (m, n, n) is `p -> x`,
/// `act_r` (n, m, n) is `x <- p`, `act_lie` (m, n, n) is `p |> x`, `theta`
/// and `eff` are (m, m, n), `v_mul` and `v_bracket` are (n, n, n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DatumTables {
    pub act_l: BilinearTable,
    pub act_r: BilinearTable,
    pub act_lie: BilinearTable,
    pub theta: BilinearTable,
    pub eff: BilinearTable,
    pub v_mul: BilinearTable,
    pub v_bracket: BilinearTable,
}

impl DatumTables {
    pub fn zeros(field: Field, m: usize, n: usize) -> DatumTables {
        DatumTables {
            act_l: BilinearTable::zeros(field, m, n, n),
            act_r: BilinearTable::zeros(field, n, m, n),
            act_lie: BilinearTable::zeros(field, m, n, n),
            theta: BilinearTable::zeros(field, m, m, n),
            eff: BilinearTable::zeros(field, m, m, n),
            v_mul: BilinearTable::zeros(field, n, n, n),
            v_bracket: BilinearTable::zeros(field, n, n, n),
        }
    }

    /// The tables in the fixed order used by serialization and ordering:
    /// `v_mul`, `v_bracket`, `act_l`, `act_r`, `act_lie`, `theta`, `eff`.
    pub fn all(&self) -> [&BilinearTable; 7] {
        [
            &self.v_mul,
            &self.v_bracket,
            &self.act_l,
            &self.act_r,
            &self.act_lie,
            &self.theta,
            &self.eff,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreCrossedDatum {
    p: PoissonAlgebra,
    dim_v: usize,
    t: DatumTables,
}

impl PreCrossedDatum {
    pub fn new(p: PoissonAlgebra, dim_v: usize, tables: DatumTables) -> Result<PreCrossedDatum> {
        let (m, n, field) = (p.dim(), dim_v, p.field());
        let expected = [
            ("actL", &tables.act_l, (m, n, n)),
            ("actR", &tables.act_r, (n, m, n)),
            ("actLie", &tables.act_lie, (m, n, n)),
            ("theta", &tables.theta, (m, m, n)),
            ("eff", &tables.eff, (m, m, n)),
            ("V mul", &tables.v_mul, (n, n, n)),
            ("V bracket", &tables.v_bracket, (n, n, n)),
        ];
        for (name, t, shape) in expected {
            if t.shape() != shape {
                return Err(Error::ShapeMismatch(format!(
                    "{name} has shape {:?}, expected {shape:?}",
                    t.shape()
                )));
            }
            if t.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(PreCrossedDatum { p, dim_v, t: tables })
    }

    /// All seven maps zero.
    pub fn zero(p: &PoissonAlgebra, dim_v: usize) -> PreCrossedDatum {
        PreCrossedDatum {
            t: DatumTables::zeros(p.field(), p.dim(), dim_v),
            p: p.clone(),
            dim_v,
        }
    }

    /// Actions and cocycles zero, `V` carrying the structure of `v`.
    pub fn trivial(p: &PoissonAlgebra, v: &PoissonAlgebra) -> Result<PreCrossedDatum> {
        if p.field() != v.field() {
            return Err(Error::FieldMismatch);
        }
        let mut d = PreCrossedDatum::zero(p, v.dim());
        d.t.v_mul = v.mul().clone();
        d.t.v_bracket = v.bracket().clone();
        Ok(d)
    }

    pub fn p(&self) -> &PoissonAlgebra {
        &self.p
    }

    pub fn dim_p(&self) -> usize {
        self.p.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn field(&self) -> Field {
        self.p.field()
    }

    pub fn tables(&self) -> &DatumTables {
        &self.t
    }

    pub fn into_tables(self) -> DatumTables {
        self.t
    }

    /// Replaces the tables, re-validating shapes.
    pub fn with_tables(&self, tables: DatumTables) -> Result<PreCrossedDatum> {
        PreCrossedDatum::new(self.p.clone(), self.dim_v, tables)
    }

    /// `V` with its induced multiplication and bracket.
    pub fn v_algebra(&self) -> PoissonAlgebra {
        PoissonAlgebra::new(self.field(), self.t.v_mul.clone(), self.t.v_bracket.clone()).expect("validated shapes")
    }

    /// Whether both `V` tables vanish.
    pub fn v_is_abelian(&self) -> bool {
        self.t.v_mul.is_zero() && self.t.v_bracket.is_zero()
    }

    /// Concatenated coefficients in the order of [`DatumTables::all`];
    /// the basis of the canonical ordering of data over a fixed `P`.
    pub fn flat_key(&self) -> Vec<Scalar> {
        self.t.all().iter().flat_map(|t| t.coeffs().iter().cloned()).collect()
    }

    pub fn crossed_product(&self) -> PoissonAlgebra {
        crossed_product(self)
    }
}

/// The algebra on `P x V` (basis of `P` first, then `V`) with
/// `(p,x)(q,y) = (pq, theta(p,q) + p->y + x<-q + x.y)` and
/// `{(p,x),(q,y)} = ([p,q], f(p,q) + p|>y - q|>x + [x,y])`.
pub fn crossed_product(d: &PreCrossedDatum) -> PoissonAlgebra {
    let (m, n, field) = (d.dim_p(), d.dim_v, d.field());
    let e = m + n;
    let t = &d.t;
    let (pm, pb) = (d.p.mul(), d.p.bracket());
    let join = |head: &[Scalar], tail: &[Scalar]| {
        let mut v = head.to_vec();
        v.extend_from_slice(tail);
        v
    };
    let zp = vector::zeros(field, m);
    let mul = BilinearTable::from_fn(field, e, e, e, |i, j| match (i < m, j < m) {
        (true, true) => join(pm.entry(i, j), t.theta.entry(i, j)),
        (true, false) => join(&zp, t.act_l.entry(i, j - m)),
        (false, true) => join(&zp, t.act_r.entry(i - m, j)),
        (false, false) => join(&zp, t.v_mul.entry(i - m, j - m)),
    });
    let bracket = BilinearTable::from_fn(field, e, e, e, |i, j| match (i < m, j < m) {
        (true, true) => join(pb.entry(i, j), t.eff.entry(i, j)),
        (true, false) => join(&zp, t.act_lie.entry(i, j - m)),
        (false, true) => join(&zp, &vector::neg(t.act_lie.entry(j, i - m))),
        (false, false) => join(&zp, t.v_bracket.entry(i - m, j - m)),
    });
    PoissonAlgebra::new(field, mul, bracket).expect("square tables")
}

/// The datum with zero cocycles, `V`-structure from `v` and the given
/// actions. Validity is left to [`check_crossed_system`].
pub fn semidirect(
    p: &PoissonAlgebra,
    v: &PoissonAlgebra,
    act_l: &BilinearTable,
    act_r: &BilinearTable,
    act_lie: &BilinearTable,
) -> Result<PreCrossedDatum> {
    let mut t = PreCrossedDatum::trivial(p, v)?.into_tables();
    t.act_l = act_l.clone();
    t.act_r = act_r.clone();
    t.act_lie = act_lie.clone();
    PreCrossedDatum::new(p.clone(), v.dim(), t)
}

/// A linear projection `pi: E -> P` together with a linear map `s` with
/// `pi s = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pi: Matrix,
    s: Matrix,
}

impl Section {
    pub fn new(pi: Matrix, s: Matrix) -> Result<Section> {
        if pi.field() != s.field() {
            return Err(Error::FieldMismatch);
        }
        if (s.rows(), s.cols()) != (pi.cols(), pi.rows()) {
            return Err(Error::ShapeMismatch(format!(
                "section of shape {}x{} for a {}x{} projection",
                s.rows(),
                s.cols(),
                pi.rows(),
                pi.cols()
            )));
        }
        if pi.mul(&s)? != Matrix::identity(pi.field(), pi.rows()) {
            return Err(Error::NotASection);
        }
        Ok(Section { pi, s })
    }

    /// The section whose `k`-th column is the particular solution of
    /// `pi s_k = e_k` produced by elimination.
    pub fn canonical(pi: Matrix) -> Result<Section> {
        let field = pi.field();
        let mut cols = Vec::with_capacity(pi.rows());
        for k in 0..pi.rows() {
            match solve_linear(&pi, &vector::unit(field, pi.rows(), k))? {
                SolutionSet::Empty => {
                    return Err(Error::PreconditionViolated("projection is not surjective".into()));
                }
                SolutionSet::Affine { particular, .. } => cols.push(particular),
            }
        }
        let s = Matrix::from_columns(field, pi.cols(), &cols)?;
        Section::new(pi, s)
    }

    pub fn pi(&self) -> &Matrix {
        &self.pi
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }
}

/// Recovers the crossed system of an extension `pi: E -> P` along a section.
///
/// Returns the datum and the invertible matrix `phi = [s | K]`, where the
/// columns of `K` are the kernel basis of `pi` from elimination. The
/// crossed product of the datum equals `E` written in the basis `phi`.
pub fn extract_crossed_system(
    e: &PoissonAlgebra,
    p: &PoissonAlgebra,
    sec: &Section,
) -> Result<(PreCrossedDatum, Matrix)> {
    let field = e.field();
    if p.field() != field || sec.pi.field() != field {
        return Err(Error::FieldMismatch);
    }
    if (sec.pi.rows(), sec.pi.cols()) != (p.dim(), e.dim()) {
        return Err(Error::ShapeMismatch(format!(
            "projection of shape {}x{} from dimension {} onto {}",
            sec.pi.rows(),
            sec.pi.cols(),
            e.dim(),
            p.dim()
        )));
    }
    let hom = algebra::is_morphism(e, p, &sec.pi)?;
    if let Some(v) = hom.violations.first() {
        return Err(Error::NotAMorphism(v.to_string()));
    }
    let (m, total) = (p.dim(), e.dim());
    let n = total - m;
    let mut cols: Vec<Vec<Scalar>> = (0..m).map(|i| sec.s.column(i)).collect();
    cols.extend(sec.pi.nullspace());
    let phi = Matrix::from_columns(field, total, &cols)?;
    let moved = algebra::change_basis(e, &phi)?;
    let block = |t: &BilinearTable, r0: usize, c0: usize, d1: usize, d2: usize| {
        BilinearTable::from_fn(field, d1, d2, n, |i, j| t.entry(r0 + i, c0 + j)[m..].to_vec())
    };
    let (mul, br) = (moved.mul(), moved.bracket());
    let tables = DatumTables {
        act_l: block(mul, 0, m, m, n),
        act_r: block(mul, m, 0, n, m),
        act_lie: block(br, 0, m, m, n),
        theta: block(mul, 0, 0, m, m),
        eff: block(br, 0, 0, m, m),
        v_mul: block(mul, m, m, n, n),
        v_bracket: block(br, m, m, n, n),
    };
    let d = PreCrossedDatum::new(p.clone(), n, tables)?;
    debug_assert!(crossed_product(&d).same_tables(&moved));
    Ok((d, phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_product_is_direct_product() {
        let q = Field::Rationals;
        let p = PoissonAlgebra::heisenberg(q);
        let v = PoissonAlgebra::k1(q);
        let d = PreCrossedDatum::trivial(&p, &v).unwrap();
        assert!(crossed_product(&d).same_tables(&algebra::direct_product(&p, &v).unwrap()));
        assert!(check_crossed_system(&d).passed());
    }

    #[test]
    fn extraction_of_a_direct_product() {
        let q = Field::Rationals;
        let k1 = PoissonAlgebra::k1(q);
        let e = algebra::direct_product(&k1, &PoissonAlgebra::k0(q)).unwrap();
        let pi = Matrix::from_i64(q, &[&[1, 0]]);
        let sec = Section::new(pi.clone(), pi.transpose()).unwrap();
        let (d, phi) = extract_crossed_system(&e, &k1, &sec).unwrap();
        assert_eq!(d, PreCrossedDatum::zero(&k1, 1));
        assert_eq!(phi, Matrix::identity(q, 2));
        assert_eq!(Section::canonical(pi).unwrap(), sec);
    }

    #[test]
    fn extraction_errors() {
        let q = Field::Rationals;
        let k1 = PoissonAlgebra::k1(q);
        let e = algebra::direct_product(&k1, &k1).unwrap();
        let pi = Matrix::from_i64(q, &[&[1, 1]]);
        assert_eq!(
            Section::new(pi.clone(), Matrix::from_i64(q, &[&[1], &[1]])),
            Err(Error::NotASection)
        );
        let sec = Section::canonical(pi).unwrap();
        assert!(matches!(extract_crossed_system(&e, &k1, &sec), Err(Error::NotAMorphism(_))));
    }
}
