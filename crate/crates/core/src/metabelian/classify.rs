use super::{metabelian_axioms, MetabelianSystem};
use crate::algebra::BilinearTable;
use crate::equivalence::{ClassEntry, ClassificationResult, Witness, MAX_SEARCH_POINTS};
use crate::error::{Error, Result};
use crate::scalar::{enumerate_vectors, solve_affine, solve_linear, vector, Field, Matrix, Scalar, SolutionSet, SubspaceReducer};

/// Largest `dim P * dim V` accepted by [`classify_metabelian`].
pub const MAX_METABELIAN_SIZE: usize = 6;

/// Whether the metabelian system `s` has no violation among the axioms
/// accepted by `keep`.
fn holds(s: &MetabelianSystem, keep: impl Fn(&str) -> bool) -> bool {
    let mut ok = true;
    metabelian_axioms(s, &mut |a, _, l, r| {
        if keep(a) && l != r {
            ok = false;
        }
        ok
    });
    ok
}

fn budget(field: Field, exponent: usize, what: &str) -> Result<()> {
    let q = u64::from(field.order().ok_or(Error::InfiniteField)?);
    let fits = u32::try_from(exponent)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .is_some_and(|size| size <= MAX_SEARCH_POINTS);
    if fits {
        Ok(())
    } else {
        Err(Error::TooLarge(format!("{what}: {q}^{exponent} candidates")))
    }
}

/// All tuples of operators `L_p` on `V` with `L_p L_q = 0`, as tables of
/// shape `(m, n, n)`.
fn square_zero_families(field: Field, m: usize, n: usize) -> Result<Vec<BilinearTable>> {
    budget(field, m * n * n, "left actions")?;
    let mut out = Vec::new();
    for v in enumerate_vectors(field, m * n * n)? {
        let t = BilinearTable::from_flat(field, m, n, n, v)?;
        let mut s = MetabelianSystem::zero(field, m, n);
        s.act_l = t;
        if holds(&s, |a| a == "cotang2") {
            out.push(s.act_l);
        }
    }
    Ok(out)
}

/// Transposes a `(m, n, n)` table into the `(n, m, n)` layout of `act_r`.
fn as_right(t: &BilinearTable) -> BilinearTable {
    let (m, n, _) = t.shape();
    BilinearTable::from_fn(t.field(), n, m, n, |x, p| t.entry(p, x).to_vec())
}

/// Action triples `(act_l, act_r, act_lie)` satisfying every condition that
/// does not involve the cocycles.
fn action_triples(field: Field, m: usize, n: usize) -> Result<Vec<MetabelianSystem>> {
    let family = square_zero_families(field, m, n)?;
    let mut out = Vec::new();
    for l in &family {
        for r in &family {
            let mut s = MetabelianSystem::zero(field, m, n);
            s.act_l = l.clone();
            s.act_r = as_right(r);
            if !holds(&s, |a| a == "cotang1") {
                continue;
            }
            // cotang6 and cotang7 are linear in act_lie; cotang3 is not.
            let linear = solve_affine(field, m * n * n, |x| {
                let mut t = s.clone();
                t.act_lie = BilinearTable::from_flat(field, m, n, n, x.to_vec()).expect("shape");
                let mut res = Vec::new();
                metabelian_axioms(&t, &mut |a, _, l, r| {
                    if a == "cotang6" || a == "cotang7" {
                        res.extend(vector::sub(&l, &r));
                    }
                    true
                });
                res
            })?;
            if let Some(dim) = linear.dimension() {
                budget(field, dim, "Lie actions")?;
            }
            for x in linear.points(field)? {
                let mut t = s.clone();
                t.act_lie = BilinearTable::from_flat(field, m, n, n, x)?;
                if holds(&t, |a| a == "cotang3") {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

fn with_cocycles(s: &MetabelianSystem, x: &[Scalar]) -> MetabelianSystem {
    let (field, m, n) = (s.field(), s.dim_p(), s.dim_v());
    let half = m * m * n;
    let mut t = s.clone();
    t.theta = BilinearTable::from_flat(field, m, m, n, x[..half].to_vec()).expect("shape");
    t.eff = BilinearTable::from_flat(field, m, m, n, x[half..].to_vec()).expect("shape");
    t
}

fn cocycle_vector(s: &MetabelianSystem) -> Vec<Scalar> {
    s.theta.coeffs().iter().chain(s.eff.coeffs()).cloned().collect()
}

/// The linear map `r -> (delta theta, delta f)` for fixed actions, with
/// `r` read row by row from its `n x m` matrix.
fn shift_matrix(s: &MetabelianSystem) -> Matrix {
    let (field, m, n) = (s.field(), s.dim_p(), s.dim_v());
    let columns: Vec<Vec<Scalar>> = (0..n * m)
        .map(|k| {
            let w = Witness::from_flat(field, m, n, &vector::unit(field, n * m, k));
            let r = |p: usize| w.r.column(p);
            let mut t = MetabelianSystem::zero(field, m, n);
            t.theta = BilinearTable::from_fn(field, m, m, n, |p, q| {
                // theta - theta' = p -> r(q) + r(p) <- q
                vector::add(&s.act_l.lv(p, &r(q)), &s.act_r.rv(&r(p), q))
            });
            t.eff = BilinearTable::from_fn(field, m, m, n, |p, q| {
                // f - f' = p |> r(q) - q |> r(p)
                vector::sub(&s.act_lie.lv(p, &r(q)), &s.act_lie.lv(q, &r(p)))
            });
            cocycle_vector(&t)
        })
        .collect();
    Matrix::from_columns(field, 2 * m * m * n, &columns).expect("uniform columns")
}

/// Decides cohomology of metabelian systems: the actions must agree and
/// the cocycle differences must come from a single `r: P -> V`.
pub fn equiv_metabelian(s: &MetabelianSystem, s2: &MetabelianSystem) -> Result<Option<Witness>> {
    s.check_shapes()?;
    s2.check_shapes()?;
    if s.act_l != s2.act_l || s.act_r != s2.act_r || s.act_lie != s2.act_lie {
        return Ok(None);
    }
    let diff = vector::sub(&cocycle_vector(s), &cocycle_vector(s2));
    Ok(match solve_linear(&shift_matrix(s2), &diff)? {
        SolutionSet::Empty => None,
        SolutionSet::Affine { particular, .. } => {
            Some(Witness::from_flat(s.field(), s.dim_p(), s.dim_v(), &particular))
        }
    })
}

/// Classes of extensions of the abelian `P` (dimension `m`) by the abelian
/// `V` (dimension `n`) over a prime field. Actions are enumerated first;
/// for each admissible triple the cocycles form a linear space, and classes
/// are its cosets modulo the image of `r`, each represented by its smallest
/// member.
pub fn classify_metabelian(m: usize, n: usize, field: Field) -> Result<ClassificationResult> {
    let q = field.order().ok_or(Error::InfiniteField)? as usize;
    if m * n > MAX_METABELIAN_SIZE {
        return Err(Error::TooLarge(format!(
            "dim P * dim V = {} exceeds {MAX_METABELIAN_SIZE}",
            m * n
        )));
    }
    let len = 2 * m * m * n;
    let mut classes = Vec::new();
    let mut candidates = 0usize;
    for s in action_triples(field, m, n)? {
        let cocycles = solve_affine(field, len, |x| {
            let mut res = Vec::new();
            metabelian_axioms(&with_cocycles(&s, x), &mut |_, _, l, r| {
                res.extend(vector::sub(&l, &r));
                true
            });
            res
        })?;
        let basis = match cocycles {
            SolutionSet::Affine { nullspace, .. } => nullspace,
            SolutionSet::Empty => unreachable!("homogeneous system"),
        };
        let shift = shift_matrix(&s);
        let image: Vec<Vec<Scalar>> = (0..shift.cols()).map(|k| shift.column(k)).collect();
        let reducer = SubspaceReducer::new(field, len, &image)?;
        let reduced: Vec<Vec<Scalar>> = basis.iter().map(|b| reducer.reduce(b)).collect();
        let reps = SubspaceReducer::new(field, len, &reduced)?;
        budget(field, reps.dim(), "classes")?;
        candidates += q.pow(basis.len() as u32);
        let size = q.pow(reducer.dim() as u32);
        for c in enumerate_vectors(field, reps.dim())? {
            let mut x = vector::zeros(field, len);
            for (a, b) in c.iter().zip(reps.basis()) {
                vector::axpy(&mut x, a, b);
            }
            let rep = with_cocycles(&s, &x);
            classes.push(ClassEntry {
                datum: rep.to_datum()?,
                coflag: None,
                size,
                tag: "metabelian".to_string(),
            });
        }
    }
    Ok(ClassificationResult {
        field,
        kind: "metabelian".to_string(),
        classes,
        candidates,
    }
    .finish())
}
