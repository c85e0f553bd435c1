//! Extensions with one-dimensional kernel. Crossed systems of `P` by the
//! field correspond to co-flag data: abelian 5-tuples
//! `(lambda, Lambda, theta, gamma, f)` when `x.x = 0`, and non-abelian
//! triples `(lambda, theta, u)` when `x.x = u x` with `u != 0`.

mod enumerate;

pub use enumerate::{classify_coflag, enumerate_coflag, enumerate_lie_coflag, tower, LieCoflag};

use crate::algebra::{BilinearTable, PoissonAlgebra};
use crate::crossed::{check_crossed_system, DatumTables, PreCrossedDatum};
use crate::equivalence::Witness;
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Recorder, Sink};
use crate::scalar::{solve_linear, vector, Field, Matrix, Scalar, SolutionSet};

/// `lambda`, `Lambda`, `gamma` are covectors on `P`; `theta` and `f` are
/// bilinear forms stored as `dim P x dim P` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianCoflag {
    pub lambda: Vec<Scalar>,
    pub big_lambda: Vec<Scalar>,
    pub gamma: Vec<Scalar>,
    pub theta: Matrix,
    pub f: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonabelianCoflag {
    pub lambda: Vec<Scalar>,
    pub theta: Matrix,
    pub u: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoflagDatum {
    Abelian(AbelianCoflag),
    Nonabelian(NonabelianCoflag),
}

impl AbelianCoflag {
    pub fn zero(field: Field, n: usize) -> AbelianCoflag {
        AbelianCoflag {
            lambda: vector::zeros(field, n),
            big_lambda: vector::zeros(field, n),
            gamma: vector::zeros(field, n),
            theta: Matrix::zeros(field, n, n),
            f: Matrix::zeros(field, n, n),
        }
    }

    fn check_shapes(&self, p: &PoissonAlgebra) -> Result<()> {
        let n = p.dim();
        let vecs_ok = [&self.lambda, &self.big_lambda, &self.gamma].iter().all(|v| v.len() == n);
        let mats_ok = [&self.theta, &self.f].iter().all(|m| (m.rows(), m.cols()) == (n, n));
        if !vecs_ok || !mats_ok {
            return Err(Error::ShapeMismatch(format!("co-flag datum does not match dimension {n}")));
        }
        same_field(p.field(), self.lambda.iter().chain(&self.big_lambda).chain(&self.gamma), &[&self.theta, &self.f])
    }
}

impl NonabelianCoflag {
    fn check_shapes(&self, p: &PoissonAlgebra) -> Result<()> {
        let n = p.dim();
        if self.lambda.len() != n || (self.theta.rows(), self.theta.cols()) != (n, n) {
            return Err(Error::ShapeMismatch(format!("co-flag datum does not match dimension {n}")));
        }
        same_field(p.field(), self.lambda.iter().chain([&self.u]), &[&self.theta])
    }
}

fn same_field<'a>(field: Field, scalars: impl Iterator<Item = &'a Scalar>, mats: &[&Matrix]) -> Result<()> {
    let mut ok = true;
    for s in scalars {
        ok &= s.field() == field;
    }
    for m in mats {
        ok &= m.field() == field;
    }
    if ok {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl CoflagDatum {
    pub fn is_abelian(&self) -> bool {
        matches!(self, CoflagDatum::Abelian(_))
    }
}

/// `sum_k c_k form(k, j)` where `c` is the image of the first argument.
fn form_lv(form: &Matrix, c: &[Scalar], j: usize) -> Scalar {
    c.iter().enumerate().fold(form.field().zero(), |acc, (k, a)| acc + a * form.get(k, j))
}

fn form_rv(form: &Matrix, i: usize, c: &[Scalar]) -> Scalar {
    c.iter().enumerate().fold(form.field().zero(), |acc, (k, a)| acc + a * form.get(i, k))
}

fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    vector::dot(a, b, field)
}

/// Which axioms of an abelian datum to evaluate.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum AbelianAxioms {
    All,
    /// AF2, the `f` part of AF3, AF4 and AF5: the conditions on `(theta, f)`.
    ThetaF,
}

pub(crate) fn abelian_axioms(
    p: &PoissonAlgebra,
    a: &AbelianCoflag,
    which: AbelianAxioms,
    sink: &mut Sink<'_, Scalar>,
) {
    let (n, field) = (p.dim(), p.field());
    let (m, b) = (p.mul(), p.bracket());
    let (l, bl, g, th, f) = (&a.lambda, &a.big_lambda, &a.gamma, &a.theta, &a.f);
    let all = which == AbelianAxioms::All;
    let zero = field.zero();
    if all {
        for i in 0..n {
            for j in 0..n {
                let ij = m.entry(i, j);
                if !sink("AF1", &[i, j], dot(l, ij, field), &l[i] * &l[j])
                    || !sink("AF1", &[i, j], dot(bl, ij, field), &bl[i] * &bl[j])
                {
                    return;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // theta(p, qr) - theta(pq, r) = theta(p,q) Lambda(r) - theta(q,r) lambda(p)
                let lhs = form_rv(th, i, m.entry(j, k)) - form_lv(th, m.entry(i, j), k);
                let rhs = th.get(i, j) * &bl[k] - th.get(j, k) * &l[i];
                if !sink("AF2", &[i, j, k], lhs, rhs) {
                    return;
                }
            }
        }
    }
    for i in 0..n {
        if !sink("AF3", &[i, i], f.get(i, i).clone(), zero.clone()) {
            return;
        }
        for j in i + 1..n {
            if !sink("AF3", &[i, j], f.get(i, j).clone(), -f.get(j, i)) {
                return;
            }
        }
        if all {
            for j in 0..n {
                if !sink("AF3", &[i, j], dot(g, b.entry(i, j), field), zero.clone()) {
                    return;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = form_rv(f, i, b.entry(j, k))
                    + form_rv(f, j, b.entry(k, i))
                    + form_rv(f, k, b.entry(i, j))
                    + &g[i] * f.get(j, k)
                    + &g[j] * f.get(k, i)
                    + &g[k] * f.get(i, j);
                if !sink("AF4", &[i, j, k], s, zero.clone()) {
                    return;
                }
                // f(pq, r) - Lambda(q) f(p, r) - lambda(p) f(q, r)
                //   = gamma(r) theta(p, q) + theta([p, r], q) + theta(p, [q, r])
                let lhs = form_lv(f, m.entry(i, j), k) - &bl[j] * f.get(i, k) - &l[i] * f.get(j, k);
                let rhs = &g[k] * th.get(i, j) + form_lv(th, b.entry(i, k), j) + form_rv(th, i, b.entry(j, k));
                if !sink("AF5", &[i, j, k], lhs, rhs) {
                    return;
                }
            }
        }
    }
    if all {
        for i in 0..n {
            for j in 0..n {
                // gamma(pq) = gamma(p) Lambda(q) + lambda(p) gamma(q)
                let rhs = &g[i] * &bl[j] + &l[i] * &g[j];
                if !sink("AF6", &[i, j], dot(g, m.entry(i, j), field), rhs) {
                    return;
                }
                let br = b.entry(i, j);
                if !sink("AF7", &[i, j], dot(l, br, field), zero.clone())
                    || !sink("AF7", &[i, j], dot(bl, br, field), zero.clone())
                {
                    return;
                }
            }
        }
    }
}

fn record(rec: &mut Recorder) -> impl FnMut(&'static str, &[usize], Scalar, Scalar) -> bool + '_ {
    move |a, i, l, r| rec.check(a, i, vec![l], vec![r])
}

pub fn check_abelian_coflag(p: &PoissonAlgebra, a: &AbelianCoflag) -> Result<AxiomReport> {
    a.check_shapes(p)?;
    let mut rec = Recorder::new(false);
    abelian_axioms(p, a, AbelianAxioms::All, &mut record(&mut rec));
    Ok(rec.finish())
}

pub(crate) fn nonabelian_axioms(
    p: &PoissonAlgebra,
    c: &NonabelianCoflag,
    sink: &mut Sink<'_, Scalar>,
) {
    let (n, field) = (p.dim(), p.field());
    let m = p.mul();
    let (l, th, u) = (&c.lambda, &c.theta, &c.u);
    for i in 0..n {
        for j in 0..n {
            // lambda(pq) = lambda(p) lambda(q) - u theta(p, q)
            let rhs = &l[i] * &l[j] - u * th.get(i, j);
            if !sink("NF1", &[i, j], dot(l, m.entry(i, j), field), rhs) {
                return;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = form_rv(th, i, m.entry(j, k)) - form_lv(th, m.entry(i, j), k);
                let rhs = th.get(i, j) * &l[k] - th.get(j, k) * &l[i];
                if !sink("NF2", &[i, j, k], lhs, rhs) {
                    return;
                }
            }
        }
    }
}

pub fn check_nonabelian_coflag(p: &PoissonAlgebra, c: &NonabelianCoflag) -> Result<AxiomReport> {
    if c.u.is_zero() {
        return Err(Error::ZeroU);
    }
    c.check_shapes(p)?;
    let mut rec = Recorder::new(false);
    nonabelian_axioms(p, c, &mut record(&mut rec));
    Ok(rec.finish())
}

pub fn check_coflag(p: &PoissonAlgebra, c: &CoflagDatum) -> Result<AxiomReport> {
    match c {
        CoflagDatum::Abelian(a) => check_abelian_coflag(p, a),
        CoflagDatum::Nonabelian(b) => check_nonabelian_coflag(p, b),
    }
}

/// Lifts a covector and form pair to the one-dimensional tables.
fn vec_table(field: Field, v: &[Scalar], left: bool) -> BilinearTable {
    let n = v.len();
    if left {
        BilinearTable::from_fn(field, n, 1, 1, |i, _| vec![v[i].clone()])
    } else {
        BilinearTable::from_fn(field, 1, n, 1, |_, j| vec![v[j].clone()])
    }
}

fn form_table(m: &Matrix) -> BilinearTable {
    BilinearTable::from_fn(m.field(), m.rows(), m.cols(), 1, |i, j| vec![m.get(i, j).clone()])
}

/// The datum without validating the co-flag axioms.
pub(crate) fn lift_unchecked(p: &PoissonAlgebra, c: &CoflagDatum) -> PreCrossedDatum {
    let (n, field) = (p.dim(), p.field());
    let tables = match c {
        CoflagDatum::Abelian(a) => DatumTables {
            act_l: vec_table(field, &a.lambda, true),
            act_r: vec_table(field, &a.big_lambda, false),
            act_lie: vec_table(field, &a.gamma, true),
            theta: form_table(&a.theta),
            eff: form_table(&a.f),
            v_mul: BilinearTable::zeros(field, 1, 1, 1),
            v_bracket: BilinearTable::zeros(field, 1, 1, 1),
        },
        CoflagDatum::Nonabelian(b) => {
            let uinv = b.u.inverse().expect("u is nonzero");
            let eff = BilinearTable::from_fn(field, n, n, 1, |i, j| {
                vec![-(&uinv * &dot(&b.lambda, p.bracket().entry(i, j), field))]
            });
            let mut v_mul = BilinearTable::zeros(field, 1, 1, 1);
            v_mul.set(0, 0, 0, b.u.clone());
            DatumTables {
                act_l: vec_table(field, &b.lambda, true),
                act_r: vec_table(field, &b.lambda, false),
                act_lie: BilinearTable::zeros(field, n, 1, 1),
                theta: form_table(&b.theta),
                eff,
                v_mul,
                v_bracket: BilinearTable::zeros(field, 1, 1, 1),
            }
        }
    };
    PreCrossedDatum::new(p.clone(), 1, tables).expect("shapes follow the co-flag datum")
}

/// The crossed system of `P` by the field attached to a co-flag datum.
pub fn datum_from_coflag(p: &PoissonAlgebra, c: &CoflagDatum) -> Result<PreCrossedDatum> {
    let rep = check_coflag(p, c)?;
    if let Some(v) = rep.violations.first() {
        return Err(Error::InvalidCoflag {
            stage: None,
            reason: v.to_string(),
        });
    }
    Ok(lift_unchecked(p, c))
}

/// Reads the co-flag datum back from a crossed system with `dim V = 1`.
pub fn coflag_from_datum(d: &PreCrossedDatum) -> Result<CoflagDatum> {
    if d.dim_v() != 1 {
        return Err(Error::DimVNotOne(d.dim_v()));
    }
    let rep = check_crossed_system(d);
    if let Some(v) = rep.violations.first() {
        return Err(Error::NotValid(v.to_string()));
    }
    Ok(read_coflag(d))
}

pub(crate) fn read_coflag(d: &PreCrossedDatum) -> CoflagDatum {
    let (n, field) = (d.dim_p(), d.field());
    let t = d.tables();
    let col = |tab: &BilinearTable, left: bool| -> Vec<Scalar> {
        (0..n)
            .map(|i| if left { tab.get(i, 0, 0).clone() } else { tab.get(0, i, 0).clone() })
            .collect()
    };
    let form = |tab: &BilinearTable| {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, tab.get(i, j, 0).clone());
            }
        }
        m
    };
    let u = t.v_mul.get(0, 0, 0).clone();
    if u.is_zero() {
        CoflagDatum::Abelian(AbelianCoflag {
            lambda: col(&t.act_l, true),
            big_lambda: col(&t.act_r, false),
            gamma: col(&t.act_lie, true),
            theta: form(&t.theta),
            f: form(&t.eff),
        })
    } else {
        CoflagDatum::Nonabelian(NonabelianCoflag {
            lambda: col(&t.act_l, true),
            theta: form(&t.theta),
            u,
        })
    }
}

/// The linear map `r -> (delta theta, delta f)` of the abelian relation for
/// fixed `(lambda, Lambda, gamma)`, as a matrix with `2 n^2` rows (theta
/// entries row-major, then f entries) and `n` columns.
pub(crate) fn abelian_shift_matrix(p: &PoissonAlgebra, l: &[Scalar], bl: &[Scalar], g: &[Scalar]) -> Matrix {
    let (n, field) = (p.dim(), p.field());
    let (m, b) = (p.mul(), p.bracket());
    let mut a = Matrix::zeros(field, 2 * n * n, n);
    for i in 0..n {
        for j in 0..n {
            // theta - theta' = r(q) lambda'(p) + r(p) Lambda'(q) - r(pq)
            let row = i * n + j;
            for k in 0..n {
                let mut c = -&m.entry(i, j)[k];
                if k == j {
                    c = c + &l[i];
                }
                if k == i {
                    c = c + &bl[j];
                }
                a.set(row, k, c);
            }
            // f - f' = r(q) gamma'(p) - r(p) gamma'(q) - r([p, q])
            let row = n * n + i * n + j;
            for k in 0..n {
                let mut c = -&b.entry(i, j)[k];
                if k == j {
                    c = c + &g[i];
                }
                if k == i {
                    c = c - &g[j];
                }
                a.set(row, k, c);
            }
        }
    }
    a
}

pub(crate) fn theta_f_vector(a: &AbelianCoflag) -> Vec<Scalar> {
    a.theta.entries().iter().chain(a.f.entries()).cloned().collect()
}

/// Decides the abelian relation. Returns the witness `r` (a `1 x dim P`
/// matrix) when the data are equivalent.
pub fn equiv1(p: &PoissonAlgebra, a: &AbelianCoflag, a2: &AbelianCoflag) -> Result<Option<Witness>> {
    a.check_shapes(p)?;
    a2.check_shapes(p)?;
    if a.lambda != a2.lambda || a.big_lambda != a2.big_lambda || a.gamma != a2.gamma {
        return Ok(None);
    }
    let shift = abelian_shift_matrix(p, &a2.lambda, &a2.big_lambda, &a2.gamma);
    let diff = vector::sub(&theta_f_vector(a), &theta_f_vector(a2));
    Ok(match solve_linear(&shift, &diff)? {
        SolutionSet::Empty => None,
        SolutionSet::Affine { particular, .. } => Some(Witness::from_flat(p.field(), p.dim(), 1, &particular)),
    })
}

/// Decides the non-abelian relation. The witness is forced:
/// `r = (lambda - lambda') / u`.
pub fn equiv2(p: &PoissonAlgebra, c: &NonabelianCoflag, c2: &NonabelianCoflag) -> Result<Option<Witness>> {
    if c.u.is_zero() || c2.u.is_zero() {
        return Err(Error::ZeroU);
    }
    c.check_shapes(p)?;
    c2.check_shapes(p)?;
    if c.u != c2.u {
        return Ok(None);
    }
    let (n, field) = (p.dim(), p.field());
    let uinv = c.u.inverse()?;
    let r = vector::scale(&uinv, &vector::sub(&c.lambda, &c2.lambda));
    let m = p.mul();
    for i in 0..n {
        for j in 0..n {
            // theta = theta' + r(q) lambda'(p) + r(p) lambda'(q) - r(pq) + r(p) r(q) u
            let rhs = c2.theta.get(i, j) + &r[j] * &c2.lambda[i] + &r[i] * &c2.lambda[j]
                - dot(&r, m.entry(i, j), field)
                + &r[i] * &r[j] * &c.u;
            if c.theta.get(i, j) != &rhs {
                return Ok(None);
            }
        }
    }
    Ok(Some(Witness::from_flat(field, n, 1, &r)))
}
