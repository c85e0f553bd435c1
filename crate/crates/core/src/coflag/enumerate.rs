use super::{
    abelian_axioms, abelian_shift_matrix, datum_from_coflag, equiv2, lift_unchecked, nonabelian_axioms, AbelianAxioms,
    AbelianCoflag, CoflagDatum, NonabelianCoflag,
};
use crate::algebra::PoissonAlgebra;
use crate::equivalence::classes::quotient_with;
use crate::equivalence::{ClassEntry, ClassificationResult, Decision};
use crate::error::{Error, Result};
use crate::scalar::{enumerate_vectors, solve_affine, vector, Field, Matrix, Scalar, SolutionSet, SubspaceReducer};

/// Largest `dim P` accepted by the enumerators.
pub const MAX_ENUMERATION_DIM: usize = 6;

/// A crossed system of a Lie algebra by the field: `p |> x = lambda(p) x`
/// and the cocycle `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieCoflag {
    pub lambda: Vec<Scalar>,
    pub f: Matrix,
}

fn check_enumerable(p: &PoissonAlgebra, field: Field) -> Result<()> {
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    if p.field() != field {
        return Err(Error::FieldMismatch);
    }
    if p.dim() > MAX_ENUMERATION_DIM {
        return Err(Error::TooLarge(format!(
            "dim P = {} exceeds {MAX_ENUMERATION_DIM}",
            p.dim()
        )));
    }
    Ok(())
}

/// Whether the brackets span `P`.
fn brackets_span(p: &PoissonAlgebra) -> bool {
    let n = p.dim();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| p.bracket().entry(i, j).to_vec())
        .collect();
    n == 0 || Matrix::from_rows(p.field(), rows).is_ok_and(|m| m.rank() == n)
}

/// Covectors multiplicative on `P` and vanishing on brackets.
fn characters(p: &PoissonAlgebra) -> Result<Vec<Vec<Scalar>>> {
    let (n, field) = (p.dim(), p.field());
    if brackets_span(p) {
        return Ok(vec![vector::zeros(field, n)]);
    }
    let (m, b) = (p.mul(), p.bracket());
    Ok(enumerate_vectors(field, n)?
        .filter(|l| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    vector::dot(l, m.entry(i, j), field) == &l[i] * &l[j]
                        && vector::dot(l, b.entry(i, j), field).is_zero()
                })
            })
        })
        .collect())
}

/// Solutions `gamma` of the derivation rule for `(lambda, Lambda)` that
/// vanish on brackets.
fn gammas(p: &PoissonAlgebra, l: &[Scalar], bl: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
    let (n, field) = (p.dim(), p.field());
    let (m, b) = (p.mul(), p.bracket());
    let set = solve_affine(field, n, |g| {
        let mut out = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(vector::dot(g, m.entry(i, j), field) - &g[i] * &bl[j] - &l[i] * &g[j]);
                out.push(vector::dot(g, b.entry(i, j), field));
            }
        }
        out
    })?;
    set.points(field)
}

fn abelian_from_vector(
    field: Field,
    n: usize,
    l: &[Scalar],
    bl: &[Scalar],
    g: &[Scalar],
    x: &[Scalar],
) -> AbelianCoflag {
    let grid = |off: usize| {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, x[off + i * n + j].clone());
            }
        }
        m
    };
    AbelianCoflag {
        lambda: l.to_vec(),
        big_lambda: bl.to_vec(),
        gamma: g.to_vec(),
        theta: grid(0),
        f: grid(n * n),
    }
}

/// One admissible `(lambda, Lambda, gamma)` together with a basis of the
/// `(theta, f)` solutions, each stored as theta entries then f entries.
struct AbelianCell {
    lambda: Vec<Scalar>,
    big_lambda: Vec<Scalar>,
    gamma: Vec<Scalar>,
    basis: Vec<Vec<Scalar>>,
}

fn abelian_cells(p: &PoissonAlgebra) -> Result<Vec<AbelianCell>> {
    let (n, field) = (p.dim(), p.field());
    let chars = characters(p)?;
    let mut cells = Vec::new();
    for l in &chars {
        for bl in &chars {
            for g in gammas(p, l, bl)? {
                let set = solve_affine(field, 2 * n * n, |x| {
                    let a = abelian_from_vector(field, n, l, bl, &g, x);
                    let mut out = Vec::new();
                    abelian_axioms(p, &a, AbelianAxioms::ThetaF, &mut |_, _, lhs, rhs| {
                        out.push(lhs - rhs);
                        true
                    });
                    out
                })?;
                let basis = match set {
                    SolutionSet::Affine { nullspace, .. } => nullspace,
                    SolutionSet::Empty => unreachable!("homogeneous system"),
                };
                cells.push(AbelianCell {
                    lambda: l.clone(),
                    big_lambda: bl.clone(),
                    gamma: g,
                    basis,
                });
            }
        }
    }
    Ok(cells)
}

fn span_points(field: Field, len: usize, basis: &[Vec<Scalar>]) -> Result<impl Iterator<Item = Vec<Scalar>> + '_> {
    Ok(enumerate_vectors(field, basis.len())?.map(move |c| {
        let mut x = vector::zeros(field, len);
        for (a, b) in c.iter().zip(basis) {
            vector::axpy(&mut x, a, b);
        }
        x
    }))
}

/// Non-abelian data `(lambda, theta, u)` with `theta` forced by NF1.
fn nonabelian_data(p: &PoissonAlgebra, u: &Scalar) -> Result<Vec<NonabelianCoflag>> {
    let (n, field) = (p.dim(), p.field());
    let uinv = u.inverse()?;
    let mut out = Vec::new();
    for l in enumerate_vectors(field, n)? {
        let mut theta = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                let t = (&l[i] * &l[j] - vector::dot(&l, p.mul().entry(i, j), field)) * &uinv;
                theta.set(i, j, t);
            }
        }
        let c = NonabelianCoflag {
            lambda: l,
            theta,
            u: u.clone(),
        };
        let mut ok = true;
        nonabelian_axioms(p, &c, &mut |_, _, lhs, rhs| {
            ok = lhs == rhs;
            ok
        });
        if ok {
            out.push(c);
        }
    }
    Ok(out)
}

/// All co-flag data of `P` over a prime field: abelian data first, grouped
/// by `(lambda, Lambda, gamma)`, then non-abelian data by `u`.
pub fn enumerate_coflag(p: &PoissonAlgebra, field: Field) -> Result<Vec<CoflagDatum>> {
    check_enumerable(p, field)?;
    let n = p.dim();
    let mut out = Vec::new();
    for cell in abelian_cells(p)? {
        for x in span_points(field, 2 * n * n, &cell.basis)? {
            let a = abelian_from_vector(field, n, &cell.lambda, &cell.big_lambda, &cell.gamma, &x);
            out.push(CoflagDatum::Abelian(a));
        }
    }
    for u in field.units()? {
        out.extend(nonabelian_data(p, &u)?.into_iter().map(CoflagDatum::Nonabelian));
    }
    Ok(out)
}

/// Classes of dimension-one crossed systems of `P` over a prime field.
///
/// Abelian data are split by `(lambda, Lambda, gamma)`; inside each cell the
/// classes are the cosets of the image of `r -> (delta theta, delta f)`, and
/// each coset is represented by its smallest member. Non-abelian data are
/// quotiented with [`equiv2`].
pub fn classify_coflag(p: &PoissonAlgebra, field: Field) -> Result<ClassificationResult> {
    check_enumerable(p, field)?;
    let n = p.dim();
    let len = 2 * n * n;
    let mut classes = Vec::new();
    let mut candidates = 0usize;
    let q = field.order().expect("finite") as usize;
    for cell in abelian_cells(p)? {
        let shift = abelian_shift_matrix(p, &cell.lambda, &cell.big_lambda, &cell.gamma);
        let image: Vec<Vec<Scalar>> = (0..n).map(|k| shift.column(k)).collect();
        let reducer = SubspaceReducer::new(field, len, &image)?;
        // Reduction is linear and fixes its image pointwise, so the span of
        // the reduced solution basis lists each coset exactly once.
        let reduced: Vec<Vec<Scalar>> = cell.basis.iter().map(|b| reducer.reduce(b)).collect();
        let reps = SubspaceReducer::new(field, len, &reduced)?;
        let class_size = q.pow(reducer.dim() as u32);
        candidates += q.pow(cell.basis.len() as u32);
        debug_assert_eq!(cell.basis.len(), reps.dim() + reducer.dim());
        for x in span_points(field, len, reps.basis())? {
            let a = CoflagDatum::Abelian(abelian_from_vector(field, n, &cell.lambda, &cell.big_lambda, &cell.gamma, &x));
            classes.push(ClassEntry {
                datum: lift_unchecked(p, &a),
                coflag: Some(a),
                size: class_size,
                tag: "abelian".to_string(),
            });
        }
    }
    for u in field.units()? {
        let data = nonabelian_data(p, &u)?;
        candidates += data.len();
        let tagged = data
            .into_iter()
            .map(|c| {
                let c = CoflagDatum::Nonabelian(c);
                (lift_unchecked(p, &c), Some(c), format!("non-abelian u={u}"))
            })
            .collect();
        let part = quotient_with(tagged, field, "", |d1, d2| {
            let (CoflagDatum::Nonabelian(a), CoflagDatum::Nonabelian(b)) =
                (super::read_coflag(d1), super::read_coflag(d2))
            else {
                unreachable!("non-abelian candidates")
            };
            Ok(match equiv2(p, &a, &b)? {
                Some(w) => Decision::Equivalent(w),
                None => Decision::NotEquivalent,
            })
        })?;
        classes.extend(part.classes);
    }
    Ok(ClassificationResult {
        field,
        kind: "co-flag".to_string(),
        classes,
        candidates,
    }
    .finish())
}

/// Iterated one-dimensional extensions. The result starts with `P` and
/// appends the crossed product built from each choice in turn.
pub fn tower(p: &PoissonAlgebra, choices: &[CoflagDatum]) -> Result<Vec<PoissonAlgebra>> {
    let mut out = vec![p.clone()];
    for (stage, c) in choices.iter().enumerate() {
        let last = out.last().expect("nonempty");
        let d = datum_from_coflag(last, c).map_err(|e| match e {
            Error::InvalidCoflag { reason, .. } => Error::InvalidCoflag {
                stage: Some(stage + 1),
                reason,
            },
            other => Error::InvalidCoflag {
                stage: Some(stage + 1),
                reason: other.to_string(),
            },
        })?;
        out.push(d.crossed_product());
    }
    Ok(out)
}

/// All crossed systems of a Lie algebra (zero multiplication) by the field.
pub fn enumerate_lie_coflag(p: &PoissonAlgebra, field: Field) -> Result<Vec<LieCoflag>> {
    check_enumerable(p, field)?;
    if !p.mul().is_zero() {
        return Err(Error::PreconditionViolated("multiplication must vanish".to_string()));
    }
    let n = p.dim();
    let zero = vector::zeros(field, n);
    let mut out = Vec::new();
    let b = p.bracket();
    let lambdas = solve_affine(field, n, |l| {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| vector::dot(l, b.entry(i, j), field))
            .collect()
    })?;
    for l in lambdas.points(field)? {
        let set = solve_affine(field, n * n, |x| {
            let mut v = vector::zeros(field, n * n);
            v.extend_from_slice(x);
            let a = abelian_from_vector(field, n, &zero, &zero, &l, &v);
            let mut res = Vec::new();
            abelian_axioms(p, &a, AbelianAxioms::ThetaF, &mut |_, _, lhs, rhs| {
                res.push(lhs - rhs);
                true
            });
            res
        })?;
        for x in set.points(field)? {
            let mut v = vector::zeros(field, n * n);
            v.extend(x);
            let a = abelian_from_vector(field, n, &zero, &zero, &l, &v);
            out.push(LieCoflag {
                lambda: l.clone(),
                f: a.f,
            });
        }
    }
    Ok(out)
}
