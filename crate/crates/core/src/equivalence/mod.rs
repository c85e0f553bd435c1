//! Cohomologous crossed systems: witness maps `r: P -> V`, the associated
//! isomorphisms `psi_r(p, x) = (p, r(p) + x)`, deciding equivalence, and
//! partitioning candidate lists into classes.

pub(crate) mod classes;

pub use classes::{quotient_classes, ClassEntry, ClassificationResult};

use crate::coflag::{equiv1, equiv2, read_coflag, CoflagDatum};
use crate::crossed::{is_crossed_system, DatumTables, PreCrossedDatum};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Recorder, Sink};
use crate::scalar::vector::{add, sub};
use crate::scalar::{enumerate_vectors, solve_affine, vector, Field, Matrix, Scalar, SolutionSet};
use crate::BilinearTable;

/// Largest affine solution space searched point by point.
pub const MAX_SEARCH_POINTS: u64 = 1 << 20;

/// A linear map `r: P -> V` as an `dim V x dim P` matrix; column `i` is
/// `r(p_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub r: Matrix,
}

impl Witness {
    pub fn zero(field: Field, dim_p: usize, dim_v: usize) -> Witness {
        Witness {
            r: Matrix::zeros(field, dim_v, dim_p),
        }
    }

    /// Reads a witness from its entries listed row by row.
    pub fn from_flat(field: Field, dim_p: usize, dim_v: usize, entries: &[Scalar]) -> Witness {
        let mut r = Matrix::zeros(field, dim_v, dim_p);
        for a in 0..dim_v {
            for i in 0..dim_p {
                r.set(a, i, entries[a * dim_p + i].clone());
            }
        }
        Witness { r }
    }

    /// Entries row by row.
    pub fn flat(&self) -> Vec<Scalar> {
        self.r.entries().to_vec()
    }

    pub fn neg(&self) -> Witness {
        Witness {
            r: Matrix::zeros(self.r.field(), self.r.rows(), self.r.cols())
                .sub(&self.r)
                .expect("same shape"),
        }
    }

    /// Composition of the isomorphisms `psi_r` and `psi_s`.
    pub fn compose(&self, other: &Witness) -> Result<Witness> {
        Ok(Witness { r: self.r.add(&other.r)? })
    }

    fn image(&self, i: usize) -> Vec<Scalar> {
        self.r.column(i)
    }
}

/// Outcome of an equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Equivalent(Witness),
    NotEquivalent,
    Undecidable(String),
}

impl Decision {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Decision::Equivalent(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, Decision::Equivalent(_))
    }
}

/// The block matrix `[[1, 0], [r, 1]]` of `psi_r` on `P x V`.
pub fn psi_of(w: &Witness) -> Matrix {
    let (n, m) = (w.r.rows(), w.r.cols());
    let mut psi = Matrix::identity(w.r.field(), m + n);
    for a in 0..n {
        for i in 0..m {
            psi.set(m + a, i, w.r.get(a, i).clone());
        }
    }
    psi
}

fn comparable(d: &PreCrossedDatum, d2: &PreCrossedDatum) -> Result<()> {
    if d.field() != d2.field() {
        return Err(Error::FieldMismatch);
    }
    if d.dim_v() != d2.dim_v() || !d.p().same_tables(d2.p()) {
        return Err(Error::ShapeMismatch("crossed systems over different algebras or spaces".into()));
    }
    Ok(())
}

fn check_shape(w: &Witness, d: &PreCrossedDatum) -> Result<()> {
    if (w.r.rows(), w.r.cols()) != (d.dim_v(), d.dim_p()) || w.r.field() != d.field() {
        return Err(Error::ShapeMismatch(format!(
            "witness of shape {}x{} for dim V = {}, dim P = {}",
            w.r.rows(),
            w.r.cols(),
            d.dim_v(),
            d.dim_p()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Conditions {
    All,
    Linear { with_theta: bool, with_eff: bool },
}

/// Evaluates M1-M7 for `psi_r: d -> d2`, passing each instance to `sink`
/// until it returns `false`.
fn conditions(
    w: &Witness,
    d: &PreCrossedDatum,
    d2: &PreCrossedDatum,
    which: Conditions,
    sink: &mut Sink<'_, Vec<Scalar>>,
) {
    let (m, n) = (d.dim_p(), d.dim_v());
    let (t, u) = (d.tables(), d2.tables());
    let (pm, pb) = (d.p().mul(), d.p().bracket());
    let r: Vec<Vec<Scalar>> = (0..m).map(|i| w.image(i)).collect();
    let apply_r = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vector::zeros(d.field(), n);
        for (i, c) in v.iter().enumerate() {
            vector::axpy(&mut out, c, &r[i]);
        }
        out
    };
    let (all, with_theta, with_eff) = match which {
        Conditions::All => (true, true, true),
        Conditions::Linear { with_theta, with_eff } => (false, with_theta, with_eff),
    };
    if all {
        for x in 0..n {
            for y in 0..n {
                if !sink("M1", &[x, y], t.v_mul.entry(x, y).to_vec(), u.v_mul.entry(x, y).to_vec())
                    || !sink("M5", &[x, y], t.v_bracket.entry(x, y).to_vec(), u.v_bracket.entry(x, y).to_vec())
                {
                    return;
                }
            }
        }
    }
    for x in 0..n {
        for p in 0..m {
            // x <- p = x <-' p + x .' r(p)
            let rhs = add(u.act_r.entry(x, p), &u.v_mul.lv(x, &r[p]));
            if !sink("M2", &[x, p], t.act_r.entry(x, p).to_vec(), rhs) {
                return;
            }
            // p -> x = p ->' x + r(p) .' x
            let rhs = add(u.act_l.entry(p, x), &u.v_mul.rv(&r[p], x));
            if !sink("M3", &[p, x], t.act_l.entry(p, x).to_vec(), rhs) {
                return;
            }
            // p |> x = p |>' x + [r(p), x]'
            let rhs = add(u.act_lie.entry(p, x), &u.v_bracket.rv(&r[p], x));
            if !sink("M6", &[p, x], t.act_lie.entry(p, x).to_vec(), rhs) {
                return;
            }
        }
    }
    for p in 0..m {
        for q in 0..m {
            if with_theta {
                // theta = theta' + p ->' r(q) + r(p) <-' q - r(pq) + r(p) .' r(q)
                let mut rhs = add(u.theta.entry(p, q), &u.act_l.lv(p, &r[q]));
                rhs = add(&rhs, &u.act_r.rv(&r[p], q));
                rhs = sub(&rhs, &apply_r(pm.entry(p, q)));
                if all {
                    rhs = add(&rhs, &u.v_mul.ev(&r[p], &r[q]));
                }
                if !sink("M4", &[p, q], t.theta.entry(p, q).to_vec(), rhs) {
                    return;
                }
            }
            if with_eff {
                // f = f' + p |>' r(q) - q |>' r(p) + [r(p), r(q)]' - r([p,q])
                let mut rhs = add(u.eff.entry(p, q), &u.act_lie.lv(p, &r[q]));
                rhs = sub(&rhs, &u.act_lie.lv(q, &r[p]));
                rhs = sub(&rhs, &apply_r(pb.entry(p, q)));
                if all {
                    rhs = add(&rhs, &u.v_bracket.ev(&r[p], &r[q]));
                }
                if !sink("M7", &[p, q], t.eff.entry(p, q).to_vec(), rhs) {
                    return;
                }
            }
        }
    }
}

/// Checks M1-M7: whether `psi_r` is a morphism from the crossed product of
/// `d` to that of `d2`.
pub fn is_witness(w: &Witness, d: &PreCrossedDatum, d2: &PreCrossedDatum) -> Result<AxiomReport> {
    comparable(d, d2)?;
    check_shape(w, d)?;
    let mut rec = Recorder::new(false);
    conditions(w, d, d2, Conditions::All, &mut |a, i, l, r| rec.check(a, i, l, r));
    Ok(rec.finish())
}

fn witness_holds(w: &Witness, d: &PreCrossedDatum, d2: &PreCrossedDatum) -> bool {
    let mut ok = true;
    conditions(w, d, d2, Conditions::All, &mut |_, _, l, r| {
        ok = l == r;
        ok
    });
    ok
}

/// Stacked `lhs - rhs` of the selected conditions.
fn residual(w: &Witness, d: &PreCrossedDatum, d2: &PreCrossedDatum, which: Conditions) -> Vec<Scalar> {
    let mut out = Vec::new();
    conditions(w, d, d2, which, &mut |_, _, l, r| {
        out.extend(sub(&l, &r));
        true
    });
    out
}

/// Decides whether `d` and `d2` are cohomologous.
///
/// The `V` tables must agree. The conditions linear in `r` are solved
/// exactly; when `V` is abelian this decides the question. Otherwise the
/// remaining conditions are affine along the solution space of the linear
/// ones and are solved there. The search over a finite field and the
/// `Undecidable` answer over the rationals are kept as a fallback should
/// the affine solution fail to verify.
pub fn find_witness(d: &PreCrossedDatum, d2: &PreCrossedDatum) -> Result<Decision> {
    comparable(d, d2)?;
    let (t, u) = (d.tables(), d2.tables());
    if t.v_mul != u.v_mul || t.v_bracket != u.v_bracket {
        return Ok(Decision::NotEquivalent);
    }
    let (field, m, n) = (d.field(), d.dim_p(), d.dim_v());
    let which = Conditions::Linear {
        with_theta: u.v_mul.is_zero(),
        with_eff: u.v_bracket.is_zero(),
    };
    let solution = solve_conditions(d, d2, which)?;
    let (particular, nullspace) = match solution {
        SolutionSet::Empty => return Ok(Decision::NotEquivalent),
        SolutionSet::Affine { particular, nullspace } => (particular, nullspace),
    };
    let to_witness = |v: &[Scalar]| Witness::from_flat(field, m, n, v);
    let exact = which == Conditions::Linear { with_theta: true, with_eff: true };
    let w = to_witness(&particular);
    if witness_holds(&w, d, d2) {
        return Ok(Decision::Equivalent(w));
    }
    if exact || nullspace.is_empty() {
        return Ok(Decision::NotEquivalent);
    }
    let shift = |coeffs: &[Scalar]| {
        let mut v = particular.clone();
        for (c, b) in coeffs.iter().zip(&nullspace) {
            vector::axpy(&mut v, c, b);
        }
        v
    };
    // Along the nullspace, r(p) moves by elements annihilating V under both
    // operations, so products of two such moves vanish and the remaining
    // conditions are affine there.
    match solve_affine(field, nullspace.len(), |c| residual(&to_witness(&shift(c)), d, d2, Conditions::All))? {
        SolutionSet::Empty => return Ok(Decision::NotEquivalent),
        SolutionSet::Affine { particular: c, .. } => {
            let w = to_witness(&shift(&c));
            if witness_holds(&w, d, d2) {
                return Ok(Decision::Equivalent(w));
            }
        }
    }
    let Some(p) = field.order() else {
        return Ok(Decision::Undecidable(format!(
            "non-abelian V over Q leaves a {}-dimensional family of candidate maps",
            nullspace.len()
        )));
    };
    if (p as u64).checked_pow(nullspace.len() as u32).is_none_or(|c| c > MAX_SEARCH_POINTS) {
        return Err(Error::TooLarge(format!(
            "{}^{} candidate witness maps",
            p,
            nullspace.len()
        )));
    }
    for coeffs in enumerate_vectors(field, nullspace.len())? {
        let w = to_witness(&shift(&coeffs));
        if witness_holds(&w, d, d2) {
            return Ok(Decision::Equivalent(w));
        }
    }
    Ok(Decision::NotEquivalent)
}

/// Like [`find_witness`], but crossed systems with one-dimensional `V`
/// are compared through their co-flag data, which always decides.
pub fn decide(d: &PreCrossedDatum, d2: &PreCrossedDatum) -> Result<Decision> {
    comparable(d, d2)?;
    if d.dim_v() != 1 || !is_crossed_system(d) || !is_crossed_system(d2) {
        return find_witness(d, d2);
    }
    let w = match (read_coflag(d), read_coflag(d2)) {
        (CoflagDatum::Abelian(a), CoflagDatum::Abelian(b)) => equiv1(d.p(), &a, &b)?,
        (CoflagDatum::Nonabelian(a), CoflagDatum::Nonabelian(b)) => equiv2(d.p(), &a, &b)?,
        _ => None,
    };
    Ok(match w {
        Some(w) => Decision::Equivalent(w),
        None => Decision::NotEquivalent,
    })
}

/// Solves the selected conditions, which are affine in the entries of `r`.
fn solve_conditions(d: &PreCrossedDatum, d2: &PreCrossedDatum, which: Conditions) -> Result<SolutionSet> {
    let (field, m, n) = (d.field(), d.dim_p(), d.dim_v());
    solve_affine(field, m * n, |v| residual(&Witness::from_flat(field, m, n, v), d, d2, which))
}

/// Tries every `r` over a finite field, in lexicographic order of its
/// row-major entries.
pub fn find_witness_exhaustive(d: &PreCrossedDatum, d2: &PreCrossedDatum) -> Result<Option<Witness>> {
    comparable(d, d2)?;
    let (field, m, n) = (d.field(), d.dim_p(), d.dim_v());
    for v in enumerate_vectors(field, m * n)? {
        let w = Witness::from_flat(field, m, n, &v);
        if witness_holds(&w, d, d2) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The datum `d` for which `psi_r: d -> d2` is a witness.
pub fn gauge(d2: &PreCrossedDatum, w: &Witness) -> Result<PreCrossedDatum> {
    check_shape(w, d2)?;
    let (field, m, n) = (d2.field(), d2.dim_p(), d2.dim_v());
    let u = d2.tables();
    let (pm, pb) = (d2.p().mul(), d2.p().bracket());
    let r: Vec<Vec<Scalar>> = (0..m).map(|i| w.image(i)).collect();
    let apply_r = |v: &[Scalar]| w.r.apply(v).expect("shape checked");
    let act_r = BilinearTable::from_fn(field, n, m, n, |x, p| add(u.act_r.entry(x, p), &u.v_mul.lv(x, &r[p])));
    let act_l = BilinearTable::from_fn(field, m, n, n, |p, x| add(u.act_l.entry(p, x), &u.v_mul.rv(&r[p], x)));
    let act_lie =
        BilinearTable::from_fn(field, m, n, n, |p, x| add(u.act_lie.entry(p, x), &u.v_bracket.rv(&r[p], x)));
    let theta = BilinearTable::from_fn(field, m, m, n, |p, q| {
        let mut v = add(u.theta.entry(p, q), &u.act_l.lv(p, &r[q]));
        v = add(&v, &u.act_r.rv(&r[p], q));
        v = sub(&v, &apply_r(pm.entry(p, q)));
        add(&v, &u.v_mul.ev(&r[p], &r[q]))
    });
    let eff = BilinearTable::from_fn(field, m, m, n, |p, q| {
        let mut v = add(u.eff.entry(p, q), &u.act_lie.lv(p, &r[q]));
        v = sub(&v, &u.act_lie.lv(q, &r[p]));
        v = add(&v, &u.v_bracket.ev(&r[p], &r[q]));
        sub(&v, &apply_r(pb.entry(p, q)))
    });
    d2.with_tables(DatumTables {
        act_l,
        act_r,
        act_lie,
        theta,
        eff,
        v_mul: u.v_mul.clone(),
        v_bracket: u.v_bracket.clone(),
    })
}

/// The coboundary of `r` over the trivial datum with the `V`-structure of `d`.
pub fn coboundary(d: &PreCrossedDatum, w: &Witness) -> Result<PreCrossedDatum> {
    gauge(&trivial_like(d)?, w)
}

fn trivial_like(d: &PreCrossedDatum) -> Result<PreCrossedDatum> {
    PreCrossedDatum::trivial(d.p(), &d.v_algebra())
}

/// Decides whether `d` is cohomologous to the trivial datum with the same
/// `V`-structure.
pub fn is_coboundary(d: &PreCrossedDatum) -> Result<Decision> {
    find_witness(d, &trivial_like(d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PoissonAlgebra;

    #[test]
    fn psi_inverse() {
        let q = Field::Rationals;
        let w = Witness {
            r: Matrix::from_i64(q, &[&[3]]),
        };
        assert_eq!(psi_of(&w), Matrix::from_i64(q, &[&[1, 0], &[3, 1]]));
        assert_eq!(psi_of(&w).mul(&psi_of(&w.neg())).unwrap(), Matrix::identity(q, 2));
        assert_eq!(psi_of(&Witness::zero(q, 2, 1)), Matrix::identity(q, 3));
    }

    #[test]
    fn coboundaries_are_detected() {
        let q = Field::Rationals;
        let p = PoissonAlgebra::heisenberg(q);
        let triv = PreCrossedDatum::zero(&p, 2);
        let w = Witness {
            r: Matrix::from_i64(q, &[&[1, -2, 0], &[0, 5, 7]]),
        };
        let c = coboundary(&triv, &w).unwrap();
        assert!(is_witness(&w, &c, &triv).unwrap().passed());
        let found = is_coboundary(&c).unwrap();
        let fw = found.witness().unwrap();
        assert!(is_witness(fw, &c, &triv).unwrap().passed());
        assert_eq!(is_coboundary(&triv).unwrap(), Decision::Equivalent(Witness::zero(q, 3, 2)));
    }

    #[test]
    fn differing_v_structure() {
        let f = Field::Prime(2);
        let p = PoissonAlgebra::k0(f);
        let a = PreCrossedDatum::zero(&p, 1);
        let b = PreCrossedDatum::trivial(&p, &PoissonAlgebra::k1(f)).unwrap();
        assert_eq!(find_witness(&a, &b).unwrap(), Decision::NotEquivalent);
        let rep = is_witness(&Witness::zero(f, 1, 1), &a, &b).unwrap();
        assert_eq!(rep.failed_axioms(), vec!["M1"]);
    }
}
