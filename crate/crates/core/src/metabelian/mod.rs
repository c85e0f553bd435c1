//! Metabelian Poisson algebras: extensions of an abelian Poisson algebra by
//! an abelian one. Covers metabelian systems, the matrix description of
//! extensions of `k0` by `k0^n`, the explicit families, and classification
//! at small dimensions.

mod classify;

pub use classify::{classify_metabelian, equiv_metabelian};

use crate::algebra::{is_poisson, BilinearTable, PoissonAlgebra};
use crate::crossed::{DatumTables, PreCrossedDatum};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Recorder, Sink};
use crate::scalar::{solve_linear, vector, Field, Matrix, Scalar, SolutionSet};

/// Five tables between the abelian spaces `P` (dimension `m`) and `V`
/// (dimension `n`): `act_l: P x V -> V`, `act_r: V x P -> V`,
/// `act_lie: P x V -> V`, and the cocycles `theta, eff: P x P -> V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetabelianSystem {
    pub act_l: BilinearTable,
    pub act_r: BilinearTable,
    pub act_lie: BilinearTable,
    pub theta: BilinearTable,
    pub eff: BilinearTable,
}

impl MetabelianSystem {
    pub fn zero(field: Field, m: usize, n: usize) -> MetabelianSystem {
        MetabelianSystem {
            act_l: BilinearTable::zeros(field, m, n, n),
            act_r: BilinearTable::zeros(field, n, m, n),
            act_lie: BilinearTable::zeros(field, m, n, n),
            theta: BilinearTable::zeros(field, m, m, n),
            eff: BilinearTable::zeros(field, m, m, n),
        }
    }

    pub fn field(&self) -> Field {
        self.act_l.field()
    }

    pub fn dim_p(&self) -> usize {
        self.theta.shape().0
    }

    pub fn dim_v(&self) -> usize {
        self.theta.shape().2
    }

    fn check_shapes(&self) -> Result<()> {
        let (m, n) = (self.dim_p(), self.dim_v());
        let want = [
            (&self.act_l, (m, n, n)),
            (&self.act_r, (n, m, n)),
            (&self.act_lie, (m, n, n)),
            (&self.theta, (m, m, n)),
            (&self.eff, (m, m, n)),
        ];
        for (t, shape) in want {
            if t.shape() != shape {
                return Err(Error::ShapeMismatch(format!("table {:?}, expected {shape:?}", t.shape())));
            }
            if t.field() != self.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(())
    }

    /// The crossed system of the abelian `P` by the abelian `V`.
    pub fn to_datum(&self) -> Result<PreCrossedDatum> {
        self.check_shapes()?;
        let (field, m, n) = (self.field(), self.dim_p(), self.dim_v());
        let tables = DatumTables {
            act_l: self.act_l.clone(),
            act_r: self.act_r.clone(),
            act_lie: self.act_lie.clone(),
            theta: self.theta.clone(),
            eff: self.eff.clone(),
            v_mul: BilinearTable::zeros(field, n, n, n),
            v_bracket: BilinearTable::zeros(field, n, n, n),
        };
        PreCrossedDatum::new(PoissonAlgebra::abelian(field, m), n, tables)
    }

    /// Reads a metabelian system from a datum whose `P` and `V` are abelian.
    pub fn from_datum(d: &PreCrossedDatum) -> Result<MetabelianSystem> {
        let p = d.p();
        if !(p.mul().is_zero() && p.bracket().is_zero() && d.v_is_abelian()) {
            return Err(Error::PreconditionViolated("P and V must be abelian".to_string()));
        }
        let t = d.tables();
        Ok(MetabelianSystem {
            act_l: t.act_l.clone(),
            act_r: t.act_r.clone(),
            act_lie: t.act_lie.clone(),
            theta: t.theta.clone(),
            eff: t.eff.clone(),
        })
    }
}

pub(crate) fn metabelian_axioms(
    s: &MetabelianSystem,
    sink: &mut Sink<'_, Vec<Scalar>>,
) {
    let (m, n, field) = (s.dim_p(), s.dim_v(), s.field());
    let (l, r, g, th, f) = (&s.act_l, &s.act_r, &s.act_lie, &s.theta, &s.eff);
    let zero = vector::zeros(field, n);
    for i in 0..m {
        for j in 0..m {
            for k in 0..n {
                let idx = [i, j, k];
                // (p -> x) <- q = p -> (x <- q)
                if !sink("cotang1", &idx, r.rv(l.entry(i, k), j), l.lv(i, r.entry(k, j))) {
                    return;
                }
                if !sink("cotang2", &idx, l.lv(i, l.entry(j, k)), zero.clone())
                    || !sink("cotang2", &idx, r.rv(r.entry(k, i), j), zero.clone())
                {
                    return;
                }
                if !sink("cotang3", &idx, g.lv(i, g.entry(j, k)), g.lv(j, g.entry(i, k))) {
                    return;
                }
                // p -> (q |> x) = -((p |> x) <- q) = q |> (p -> x)
                let a = l.lv(i, g.entry(j, k));
                if !sink("cotang6", &idx, a.clone(), vector::neg(&r.rv(g.entry(i, k), j)))
                    || !sink("cotang6", &idx, a, g.lv(j, l.entry(i, k)))
                {
                    return;
                }
                // (q |> x) <- p = q |> (x <- p)
                if !sink("cotang7", &idx, r.rv(g.entry(j, k), i), g.lv(j, r.entry(k, i))) {
                    return;
                }
            }
        }
    }
    for i in 0..m {
        if !sink("cotang3", &[i, i], f.entry(i, i).to_vec(), zero.clone()) {
            return;
        }
        for j in i + 1..m {
            if !sink("cotang3", &[i, j], f.entry(i, j).to_vec(), vector::neg(f.entry(j, i))) {
                return;
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let idx = [i, j, k];
                // theta(p, q) <- r = p -> theta(q, r)
                if !sink("cotang1", &idx, r.rv(th.entry(i, j), k), l.lv(i, th.entry(j, k))) {
                    return;
                }
                let cyc = vector::add(
                    &vector::add(&g.lv(i, f.entry(j, k)), &g.lv(j, f.entry(k, i))),
                    &g.lv(k, f.entry(i, j)),
                );
                if !sink("cotang4", &idx, cyc, zero.clone()) {
                    return;
                }
                // r |> theta(p, q) + f(p, r) <- q + p -> f(q, r) = 0
                let lhs = vector::add(
                    &vector::add(&g.lv(k, th.entry(i, j)), &r.rv(f.entry(i, k), j)),
                    &l.lv(i, f.entry(j, k)),
                );
                if !sink("cotang5", &idx, lhs, zero.clone()) {
                    return;
                }
            }
        }
    }
}

pub fn check_metabelian_system(s: &MetabelianSystem) -> Result<AxiomReport> {
    s.check_shapes()?;
    let mut rec = Recorder::new(false);
    metabelian_axioms(s, &mut |a, i, l, r| rec.check(a, i, l, r));
    Ok(rec.finish())
}

/// `(A, B, C, theta0)`: the matrices of `lambda`, `Lambda`, `gamma` on
/// `k^n` and the value `theta(1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMatrixDatum {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub theta0: Vec<Scalar>,
}

impl CMatrixDatum {
    pub fn zero(field: Field, n: usize) -> CMatrixDatum {
        CMatrixDatum {
            a: Matrix::zeros(field, n, n),
            b: Matrix::zeros(field, n, n),
            c: Matrix::zeros(field, n, n),
            theta0: vector::zeros(field, n),
        }
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn n(&self) -> usize {
        self.theta0.len()
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.n();
        for m in [&self.a, &self.b, &self.c] {
            if (m.rows(), m.cols()) != (n, n) {
                return Err(Error::ShapeMismatch(format!("expected {n} x {n} matrices")));
            }
            if m.field() != self.field() {
                return Err(Error::FieldMismatch);
            }
        }
        if self.theta0.iter().any(|s| s.field() != self.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

fn compare_matrices(rec: &mut Recorder, label: &'static str, lhs: &Matrix, rhs: &Matrix) -> bool {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if !rec.check(label, &[i, j], vec![lhs.get(i, j).clone()], vec![rhs.get(i, j).clone()]) {
                return false;
            }
        }
    }
    true
}

/// Checks `AB = BA`, `AC = CA = -BC = -CB`, `A^2 = B^2 = 0`,
/// `A theta0 = B theta0` and `C theta0 = 0`.
pub fn check_cmatrix(c: &CMatrixDatum) -> Result<AxiomReport> {
    c.check_shapes()?;
    let (field, n) = (c.field(), c.n());
    let mul = |x: &Matrix, y: &Matrix| x.mul(y).expect("square");
    let neg = |x: &Matrix| Matrix::zeros(field, n, n).sub(x).expect("square");
    let zero = Matrix::zeros(field, n, n);
    let (ab, ba) = (mul(&c.a, &c.b), mul(&c.b, &c.a));
    let (ac, ca) = (mul(&c.a, &c.c), mul(&c.c, &c.a));
    let (bc, cb) = (mul(&c.b, &c.c), mul(&c.c, &c.b));
    let mut rec = Recorder::new(false);
    let _ = compare_matrices(&mut rec, "AB=BA", &ab, &ba)
        && compare_matrices(&mut rec, "AC=CA", &ac, &ca)
        && compare_matrices(&mut rec, "CA=-BC", &ca, &neg(&bc))
        && compare_matrices(&mut rec, "BC=CB", &bc, &cb)
        && compare_matrices(&mut rec, "A^2=0", &mul(&c.a, &c.a), &zero)
        && compare_matrices(&mut rec, "B^2=0", &mul(&c.b, &c.b), &zero);
    let at = c.a.apply(&c.theta0)?;
    let bt = c.b.apply(&c.theta0)?;
    let ct = c.c.apply(&c.theta0)?;
    for j in 0..n {
        rec.check("A.theta0=B.theta0", &[j], vec![at[j].clone()], vec![bt[j].clone()]);
        rec.check("C.theta0=0", &[j], vec![ct[j].clone()], vec![field.zero()]);
    }
    Ok(rec.finish())
}

/// The metabelian system of `k0` by `k0^n` with `1 -> x = A x`,
/// `x <- 1 = B x`, `1 |> x = C x`, `theta(1, 1) = theta0` and `f = 0`.
pub fn lift(c: &CMatrixDatum) -> Result<MetabelianSystem> {
    c.check_shapes()?;
    let (field, n) = (c.field(), c.n());
    let col = |m: &Matrix, i: usize| m.column(i);
    Ok(MetabelianSystem {
        act_l: BilinearTable::from_fn(field, 1, n, n, |_, i| col(&c.a, i)),
        act_r: BilinearTable::from_fn(field, n, 1, n, |i, _| col(&c.b, i)),
        act_lie: BilinearTable::from_fn(field, 1, n, n, |_, i| col(&c.c, i)),
        theta: BilinearTable::from_fn(field, 1, 1, n, |_, _| c.theta0.clone()),
        eff: BilinearTable::zeros(field, 1, 1, n),
    })
}

fn reject_invalid(rep: AxiomReport) -> Result<()> {
    match rep.violations.first() {
        Some(v) => Err(Error::InvalidCMatrix(v.to_string())),
        None => Ok(()),
    }
}

/// The algebra on `E_1, ..., E_{n+1}` with `E_i E_{n+1} = sum_j b_ji E_j`,
/// `E_{n+1} E_i = sum_j a_ji E_j`, `E_{n+1} E_{n+1} = sum_j theta0_j E_j`
/// and `{E_{n+1}, E_i} = sum_j c_ji E_j`.
pub fn build_kn1_abc(c: &CMatrixDatum) -> Result<PoissonAlgebra> {
    reject_invalid(check_cmatrix(c)?)?;
    let (field, n) = (c.field(), c.n());
    let e = n + 1;
    let pad = |v: Vec<Scalar>| {
        let mut v = v;
        v.push(field.zero());
        v
    };
    let zero = vector::zeros(field, e);
    let mul = BilinearTable::from_fn(field, e, e, e, |i, j| match (i == n, j == n) {
        (false, true) => pad(c.b.column(i)),
        (true, false) => pad(c.a.column(j)),
        (true, true) => pad(c.theta0.clone()),
        (false, false) => zero.clone(),
    });
    let bracket = BilinearTable::from_fn(field, e, e, e, |i, j| match (i == n, j == n) {
        (true, false) => pad(c.c.column(j)),
        (false, true) => pad(vector::neg(&c.c.column(i))),
        _ => zero.clone(),
    });
    PoissonAlgebra::new(field, mul, bracket)
}

fn require_alternating(f: &Matrix) -> Result<()> {
    let n = f.rows();
    if f.cols() != n {
        return Err(Error::ShapeMismatch("f must be square".to_string()));
    }
    for i in 0..n {
        for j in i..n {
            let ok = if i == j {
                f.get(i, i).is_zero()
            } else {
                (f.get(i, j) + f.get(j, i)).is_zero()
            };
            if !ok {
                return Err(Error::PreconditionViolated(format!(
                    "f is not alternating at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// `E_i E_j = theta(e_i, e_j) E_{n+1}` and `{E_i, E_j} = f(e_i, e_j) E_{n+1}`.
pub fn build_kn1_theta_f(theta: &Matrix, f: &Matrix) -> Result<PoissonAlgebra> {
    require_alternating(f)?;
    let (field, n) = (f.field(), f.rows());
    if (theta.rows(), theta.cols()) != (n, n) {
        return Err(Error::ShapeMismatch("theta and f must have the same size".to_string()));
    }
    if theta.field() != field {
        return Err(Error::FieldMismatch);
    }
    let e = n + 1;
    let last = |s: &Scalar| {
        let mut v = vector::zeros(field, e);
        v[n] = s.clone();
        v
    };
    let zero = vector::zeros(field, e);
    let mul = BilinearTable::from_fn(field, e, e, e, |i, j| {
        if i < n && j < n {
            last(theta.get(i, j))
        } else {
            zero.clone()
        }
    });
    let bracket = BilinearTable::from_fn(field, e, e, e, |i, j| {
        if i < n && j < n {
            last(f.get(i, j))
        } else {
            zero.clone()
        }
    });
    PoissonAlgebra::new(field, mul, bracket)
}

/// `{E_i, E_j} = f(e_i, e_j) E_{n+1}` and `{E_i, E_{n+1}} = gamma(e_i) E_{n+1}`.
pub fn build_kn1_gamma_f(gamma: &[Scalar], f: &Matrix) -> Result<PoissonAlgebra> {
    require_alternating(f)?;
    let (field, n) = (f.field(), f.rows());
    if gamma.len() != n {
        return Err(Error::ShapeMismatch("gamma and f must have the same size".to_string()));
    }
    if gamma.iter().any(|s| s.field() != field) {
        return Err(Error::FieldMismatch);
    }
    if vector::is_zero(gamma) {
        return Err(Error::PreconditionViolated(
            "gamma must be nonzero; use build_kn1_theta_f for gamma = 0".to_string(),
        ));
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let s = &gamma[x] * f.get(y, z) + &gamma[y] * f.get(z, x) + &gamma[z] * f.get(x, y);
                if !s.is_zero() {
                    return Err(Error::PreconditionViolated(format!(
                        "cyclic condition fails at ({}, {}, {})",
                        x + 1,
                        y + 1,
                        z + 1
                    )));
                }
            }
        }
    }
    let e = n + 1;
    let last = |s: Scalar| {
        let mut v = vector::zeros(field, e);
        v[n] = s;
        v
    };
    let bracket = BilinearTable::from_fn(field, e, e, e, |i, j| match (i < n, j < n) {
        (true, true) => last(f.get(i, j).clone()),
        (true, false) => last(gamma[i].clone()),
        (false, true) => last(-&gamma[j]),
        (false, false) => vector::zeros(field, e),
    });
    PoissonAlgebra::new(field, BilinearTable::zeros(field, e, e, e), bracket)
}

/// The subspace spanned by all products and brackets, as the columns of a
/// matrix, when it squares to zero under both operations. `None` means the
/// algebra is not metabelian.
pub fn is_metabelian(q: &PoissonAlgebra) -> Result<Option<Matrix>> {
    if !is_poisson(q) {
        return Err(Error::NotPoisson);
    }
    let (n, field) = (q.dim(), q.field());
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            rows.push(q.mul().entry(i, j).to_vec());
            rows.push(q.bracket().entry(i, j).to_vec());
        }
    }
    let basis: Vec<Vec<Scalar>> = if rows.is_empty() {
        Vec::new()
    } else {
        let (r, pivots) = Matrix::from_rows(field, rows)?.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    };
    for u in &basis {
        for v in &basis {
            if !vector::is_zero(&q.mul().ev(u, v)) || !vector::is_zero(&q.bracket().ev(u, v)) {
                return Ok(None);
            }
        }
    }
    Ok(Some(Matrix::from_columns(field, n, &basis)?))
}

/// Decides `theta0 - theta0' = (A + B) r` for data with equal `A`, `B`, `C`.
pub fn equiv_cmatrix(c: &CMatrixDatum, c2: &CMatrixDatum) -> Result<Option<Vec<Scalar>>> {
    c.check_shapes()?;
    c2.check_shapes()?;
    if c.a != c2.a || c.b != c2.b || c.c != c2.c {
        return Ok(None);
    }
    let sum = c.a.add(&c.b)?;
    Ok(match solve_linear(&sum, &vector::sub(&c.theta0, &c2.theta0))? {
        SolutionSet::Empty => None,
        SolutionSet::Affine { particular, .. } => Some(particular),
    })
}
