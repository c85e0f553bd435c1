//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

use poisson_ext::coflag::classify_coflag;
use poisson_ext::metabelian::classify_metabelian;
use poisson_ext::algebra::{is_morphism, BilinearTable, PoissonAlgebra};
use poisson_ext::crossed::{crossed_product, extract_crossed_system, DatumTables, PreCrossedDatum, Section};
use poisson_ext::equivalence::{psi_of, Witness};
use poisson_ext::scalar::{Field, Matrix, Scalar};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Number of coefficients in the seven tables of a datum.
pub fn datum_len(m: usize, n: usize) -> usize {
    3 * m * n * n + 2 * m * m * n + 2 * n * n * n
}

/// Splits a flat coefficient list into the seven tables, in the order
/// `v_mul, v_bracket, act_l, act_r, act_lie, theta, eff`.
pub fn datum_from_flat(p: &PoissonAlgebra, n: usize, coeffs: &[Scalar]) -> PreCrossedDatum {
    let (f, m) = (p.field(), p.dim());
    assert_eq!(coeffs.len(), datum_len(m, n));
    let mut rest = coeffs;
    let mut take = |d1: usize, d2: usize, d3: usize| {
        let (head, tail) = rest.split_at(d1 * d2 * d3);
        rest = tail;
        BilinearTable::from_flat(f, d1, d2, d3, head.to_vec()).unwrap()
    };
    let v_mul = take(n, n, n);
    let v_bracket = take(n, n, n);
    let act_l = take(m, n, n);
    let act_r = take(n, m, n);
    let act_lie = take(m, n, n);
    let theta = take(m, m, n);
    let eff = take(m, m, n);
    PreCrossedDatum::new(p.clone(), n, DatumTables { act_l, act_r, act_lie, theta, eff, v_mul, v_bracket }).unwrap()
}

/// An algebra from two flat coefficient lists.
pub fn algebra_from_flat(f: Field, n: usize, mul: &[Scalar], bracket: &[Scalar]) -> PoissonAlgebra {
    PoissonAlgebra::new(
        f,
        BilinearTable::from_flat(f, n, n, n, mul.to_vec()).unwrap(),
        BilinearTable::from_flat(f, n, n, n, bracket.to_vec()).unwrap(),
    )
    .unwrap()
}

/// Residue vector from small integers.
pub fn residues(f: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| f.from_i64(x)).collect()
}

/// All vectors of `F_p^len` decoded from an integer counter, first
/// coordinate least significant.
pub fn decode(f: Field, mut code: u64, len: usize) -> Vec<Scalar> {
    let p = f.order().unwrap() as u64;
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            f.from_i64(d as i64)
        })
        .collect()
}

/// The crossed system of `e` over `p`, where `p` is the quotient of `e` by
/// its last `e.dim() - p.dim()` basis vectors, read off with the canonical
/// section.
pub fn over_quotient(e: &PoissonAlgebra, p: &PoissonAlgebra) -> PreCrossedDatum {
    let pi = first_coordinates(e.field(), p.dim(), e.dim());
    let sec = Section::canonical(pi).unwrap();
    extract_crossed_system(e, p, &sec).unwrap().0
}

/// Whether `psi_r` is a morphism between the crossed products, checked on
/// the products themselves rather than through the witness conditions.
pub fn psi_is_morphism(w: &Witness, d: &PreCrossedDatum, d2: &PreCrossedDatum) -> bool {
    is_morphism(&crossed_product(d), &crossed_product(d2), &psi_of(w)).unwrap().passed()
}

/// Partitions `items` into classes of the equivalence `same`, comparing
/// each item with the first member of every class.
pub fn partition<T>(items: &[T], same: impl Fn(&T, &T) -> bool) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, x) in items.iter().enumerate() {
        match classes.iter_mut().find(|c| same(&items[c[0]], x)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// Named two-dimensional extensions of `k0` from the structure constants of
/// the standard list, parameters ranging as listed.
pub fn reps_over_k0(f: Field) -> Vec<(String, PoissonAlgebra)> {
    let mut out = Vec::new();
    for d in units(f) {
        out.push((format!("k0,{d}^2"), PoissonAlgebra::from_entries(f, 2, &[(0, 0, 1, d)], &[])));
    }
    for mu in elements(f) {
        out.push((format!("{mu}k0^2"), PoissonAlgebra::from_entries(f, 2, &[], &[(0, 1, 1, mu)])));
    }
    for u in units(f) {
        out.push((format!("k0,u={u}^2"), PoissonAlgebra::from_entries(f, 2, &[(1, 1, 1, u)], &[])));
    }
    out
}

/// Named two-dimensional extensions of `k1`.
pub fn reps_over_k1(f: Field) -> Vec<(String, PoissonAlgebra)> {
    let mut out = vec![
        ("k1^2".to_string(), PoissonAlgebra::from_entries(f, 2, &[(0, 0, 0, 1)], &[])),
        (
            "k1bar^2".to_string(),
            PoissonAlgebra::from_entries(f, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], &[]),
        ),
    ];
    for mu in elements(f) {
        out.push((
            format!("{mu}k1^2"),
            PoissonAlgebra::from_entries(f, 2, &[(0, 0, 0, 1), (0, 1, 1, 1)], &[(0, 1, 1, mu)]),
        ));
    }
    for mu in elements(f) {
        out.push((
            format!("{mu}k1bar^2"),
            PoissonAlgebra::from_entries(f, 2, &[(0, 0, 0, 1), (1, 0, 1, 1)], &[(0, 1, 1, mu)]),
        ));
    }
    for u in units(f) {
        out.push((format!("k1,u={u}^2"), PoissonAlgebra::from_entries(f, 2, &[(0, 0, 0, 1), (1, 1, 1, u)], &[])));
    }
    out
}

/// Named three-dimensional extensions of `1k1^2`.
pub fn reps_over_left_k1_squared(f: Field) -> Vec<(String, PoissonAlgebra)> {
    let base_mul = [(0, 0, 0, 1), (0, 1, 1, 1)];
    let with = |mul: &[(usize, usize, usize, i64)], br: &[(usize, usize, usize, i64)]| {
        let m: Vec<_> = base_mul.iter().chain(mul).copied().collect();
        let b: Vec<_> = [(0, 1, 1, 1)].iter().chain(br).copied().collect();
        PoissonAlgebra::from_entries(f, 3, &m, &b)
    };
    let mut out = vec![
        ("1k1^3".to_string(), with(&[], &[])),
        ("1k1bar^3".to_string(), with(&[(0, 2, 2, 1), (2, 0, 2, 1)], &[])),
    ];
    for nu in elements(f) {
        out.push((format!("{nu}k1^3"), with(&[(0, 2, 2, 1)], &[(0, 2, 2, 1), (0, 1, 2, nu)])));
    }
    for w in elements(f).filter(|&w| w != 1) {
        out.push((format!("{w}k1tilde^3"), with(&[(0, 2, 2, 1)], &[(0, 2, 2, w)])));
    }
    for t in elements(f) {
        out.push((format!("{t}k1bar^3"), with(&[(2, 0, 2, 1)], &[(0, 2, 2, t)])));
    }
    for u in units(f) {
        out.push((format!("k1,u={u}^3"), with(&[(2, 2, 2, u)], &[])));
    }
    out
}

/// Named four-dimensional extensions of the Heisenberg algebra. The first
/// family is read off its co-flag data `(theta, f)` with `theta(e1, e1)`
/// normalised to zero; the non-abelian family has `e4 e4 = u e4`.
pub fn reps_over_heisenberg(f: Field) -> Vec<(String, PoissonAlgebra)> {
    let h_mul = (0, 0, 2, 1);
    let h_br = (0, 1, 2, 1);
    let mut out = Vec::new();
    for b2 in elements(f) {
        for b3 in elements(f) {
            for b4 in elements(f) {
                for s in elements(f) {
                    out.push((
                        format!("H[{b2},{b3},{b4},{s}]"),
                        PoissonAlgebra::from_entries(
                            f,
                            4,
                            &[h_mul, (1, 1, 3, b2), (0, 1, 3, b3), (1, 0, 3, b4)],
                            &[h_br, (0, 1, 3, s)],
                        ),
                    ));
                }
            }
        }
    }
    for v in units(f) {
        out.push((format!("H^{v}"), PoissonAlgebra::from_entries(f, 4, &[h_mul], &[h_br, (1, 3, 3, v)])));
    }
    for v in units(f) {
        out.push((format!("Hbar^{v}"), PoissonAlgebra::from_entries(f, 4, &[h_mul], &[h_br, (0, 3, 3, v)])));
    }
    for v in units(f) {
        for w in units(f) {
            out.push((
                format!("H^{v},{w}"),
                PoissonAlgebra::from_entries(f, 4, &[h_mul], &[h_br, (0, 3, 3, v), (1, 3, 3, w)]),
            ));
        }
    }
    for u in units(f) {
        out.push((format!("Htilde^{u}"), PoissonAlgebra::from_entries(f, 4, &[h_mul, (3, 3, 3, u)], &[h_br])));
    }
    out
}

/// The Heisenberg extension with `e1 e1 = e3 + v e4` and no other new
/// constants.
pub fn heisenberg_shifted_square(f: Field, v: i64) -> PoissonAlgebra {
    PoissonAlgebra::from_entries(f, 4, &[(0, 0, 2, 1), (0, 0, 3, v)], &[(0, 1, 2, 1)])
}

pub fn elements(f: Field) -> impl Iterator<Item = i64> {
    0..f.order().unwrap() as i64
}

pub fn units(f: Field) -> impl Iterator<Item = i64> {
    1..f.order().unwrap() as i64
}

/// Classification representatives over `F_p`: the one-dimensional
/// extensions of `k0`, `k1`, `1k1^2` and the Heisenberg algebra, and the
/// metabelian extensions of `k0` by the plane.
pub fn representative_pool(p: u64) -> &'static [PreCrossedDatum] {
    static POOLS: OnceLock<Mutex<HashMap<u64, &'static [PreCrossedDatum]>>> = OnceLock::new();
    let mut pools = POOLS.get_or_init(Default::default).lock().unwrap();
    pools.entry(p).or_insert_with(|| Box::leak(build_pool(p).into_boxed_slice()))
}

fn build_pool(p: u64) -> Vec<PreCrossedDatum> {
    let f = Field::prime(p).unwrap();
    let mut pool = Vec::new();
    for base in [
        PoissonAlgebra::k0(f),
        PoissonAlgebra::k1(f),
        PoissonAlgebra::left_k1_squared(f),
        PoissonAlgebra::heisenberg(f),
    ] {
        pool.extend(classify_coflag(&base, f).unwrap().classes.into_iter().map(|c| c.datum));
    }
    pool.extend(classify_metabelian(1, 2, f).unwrap().classes.into_iter().map(|c| c.datum));
    pool
}

/// A uniformly random map `r: P -> V` for the shape of `d`.
pub fn random_witness<R: rand::Rng>(rng: &mut R, d: &PreCrossedDatum) -> Witness {
    let p = d.field().order().unwrap() as i64;
    let entries: Vec<Scalar> =
        (0..d.dim_p() * d.dim_v()).map(|_| d.field().from_i64(rng.gen_range(0..p))).collect();
    Witness::from_flat(d.field(), d.dim_p(), d.dim_v(), &entries)
}

/// The projection onto the first `m` coordinates of a space of dimension
/// `total`.
pub fn first_coordinates(f: Field, m: usize, total: usize) -> Matrix {
    let rows = (0..m).map(|i| (0..total).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
    Matrix::from_rows(f, rows).unwrap()
}
