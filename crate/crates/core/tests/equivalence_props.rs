mod common;

use common::*;
use poisson_ext::crossed::{check_crossed_system, PreCrossedDatum};
use poisson_ext::equivalence::{
    coboundary, decide, find_witness, find_witness_exhaustive, gauge, is_coboundary, is_witness,
};
use poisson_ext::scalar::{enumerate_vectors, Field, Scalar};
use poisson_ext::{Decision, PoissonAlgebra, Witness};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_witnesses(d: &PreCrossedDatum) -> Vec<Witness> {
    enumerate_vectors(d.field(), d.dim_p() * d.dim_v())
        .unwrap()
        .map(|v| Witness::from_flat(d.field(), d.dim_p(), d.dim_v(), &v))
        .collect()
}

/// `k1 x k0` on `V`: `x1 x1 = x1`, so the second direction annihilates `V`.
fn idempotent_plus_line(f: Field) -> PoissonAlgebra {
    PoissonAlgebra::from_entries(f, 2, &[(0, 0, 0, 1)], &[])
}

fn rational_witness(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Witness {
    let q = Field::Rationals;
    let v: Vec<Scalar> = (0..m * n).map(|_| q.from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)).unwrap()).collect();
    Witness::from_flat(q, m, n, &v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauged_data_are_found(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = representative_pool(p);
        let d2 = &pool[rng.gen_range(0..pool.len())];
        let r = random_witness(&mut rng, d2);
        let d = gauge(d2, &r).unwrap();
        prop_assert!(is_witness(&r, &d, d2).unwrap().passed());
        prop_assert!(check_crossed_system(&d).passed());
        let found = find_witness(&d, d2).unwrap();
        let w = found.witness().expect("gauged data are equivalent");
        prop_assert!(is_witness(w, &d, d2).unwrap().passed());
        prop_assert!(psi_is_morphism(w, &d, d2));
        // the inverse of psi_r is psi_{-r}
        prop_assert!(is_witness(&w.neg(), d2, &d).unwrap().passed());
        prop_assert!(find_witness(d2, &d).unwrap().is_equivalent());
        prop_assert_eq!(decide(&d, d2).unwrap().is_equivalent(), true);
    }

    #[test]
    fn reflexive_with_zero_witness(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = representative_pool(3);
        let d2 = &pool[rng.gen_range(0..pool.len())];
        let d = gauge(d2, &random_witness(&mut rng, d2)).unwrap();
        let found = find_witness(&d, &d).unwrap();
        prop_assert_eq!(found.witness().unwrap(), &Witness::zero(d.field(), d.dim_p(), d.dim_v()));
    }

    #[test]
    fn rational_gauges_are_found(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = Field::Rationals;
        let bases = [PoissonAlgebra::k0(q), PoissonAlgebra::k1(q), PoissonAlgebra::heisenberg(q)];
        let p = &bases[rng.gen_range(0..bases.len())];
        let base = PreCrossedDatum::trivial(p, &idempotent_plus_line(q)).unwrap();
        let d2 = gauge(&base, &rational_witness(&mut rng, p.dim(), 2)).unwrap();
        let d = gauge(&d2, &rational_witness(&mut rng, p.dim(), 2)).unwrap();
        let w = find_witness(&d, &d2).unwrap().witness().cloned().expect("decided over Q");
        prop_assert!(is_witness(&w, &d, &d2).unwrap().passed());
    }
}

#[test]
fn transitivity_through_gauge_chains() {
    let pool: Vec<&PreCrossedDatum> = representative_pool(2).iter().filter(|d| d.dim_p() * d.dim_v() <= 2).collect();
    assert!(pool.len() > 10);
    for d3 in pool {
        for r2 in all_witnesses(d3) {
            let d2 = gauge(d3, &r2).unwrap();
            for r1 in all_witnesses(d3) {
                let d1 = gauge(&d2, &r1).unwrap();
                assert!(is_witness(&r1.compose(&r2).unwrap(), &d1, d3).unwrap().passed());
                assert!(find_witness(&d1, d3).unwrap().is_equivalent());
            }
        }
    }
}

#[test]
fn search_agrees_with_exhaustive_search() {
    let f = Field::Prime(2);
    let len = datum_len(1, 1);
    for p in [PoissonAlgebra::k0(f), PoissonAlgebra::k1(f)] {
        let data: Vec<PreCrossedDatum> = (0..1u64 << len).map(|c| datum_from_flat(&p, 1, &decode(f, c, len))).collect();
        for d in &data {
            for d2 in &data {
                let fast = find_witness(d, d2).unwrap();
                let slow = find_witness_exhaustive(d, d2).unwrap();
                assert_eq!(fast.is_equivalent(), slow.is_some(), "{d:?} / {d2:?}");
                if let Some(w) = fast.witness() {
                    assert!(psi_is_morphism(w, d, d2));
                }
            }
        }
    }
}

#[test]
fn annihilator_directions_are_decided_over_q() {
    let q = Field::Rationals;
    let k0 = PoissonAlgebra::k0(q);
    let base = PreCrossedDatum::trivial(&k0, &idempotent_plus_line(q)).unwrap();
    let r = Witness::from_flat(q, 1, 2, &[q.from_i64(3), q.from_ratio(-5, 2).unwrap()]);
    let d = gauge(&base, &r).unwrap();
    assert!(find_witness(&d, &base).unwrap().is_equivalent());

    // theta(1, 1) along the annihilated direction is invariant
    let mut t = d.tables().clone();
    t.theta.set(0, 0, 1, q.one());
    let moved = d.with_tables(t).unwrap();
    assert!(check_crossed_system(&moved).passed());
    assert_eq!(find_witness(&moved, &base).unwrap(), Decision::NotEquivalent);
}

#[test]
fn abelian_and_nonabelian_never_merge() {
    for f in [Field::Prime(2), Field::Prime(3)] {
        for p in [PoissonAlgebra::k0(f), PoissonAlgebra::k1(f), PoissonAlgebra::heisenberg(f)] {
            let classes = poisson_ext::coflag::classify_coflag(&p, f).unwrap().classes;
            for a in classes.iter().filter(|c| c.datum.v_is_abelian()) {
                for b in classes.iter().filter(|c| !c.datum.v_is_abelian()) {
                    assert_eq!(find_witness(&a.datum, &b.datum).unwrap(), Decision::NotEquivalent);
                    assert_eq!(decide(&a.datum, &b.datum).unwrap(), Decision::NotEquivalent);
                }
            }
        }
    }
}

#[test]
fn coboundaries() {
    let q = Field::Rationals;
    let h = PoissonAlgebra::heisenberg(q);
    let zero = PreCrossedDatum::zero(&h, 1);
    let r = Witness::from_flat(q, 3, 1, &[q.from_i64(1), q.from_i64(-2), q.from_ratio(1, 3).unwrap()]);
    let b = coboundary(&zero, &r).unwrap();
    assert!(check_crossed_system(&b).passed());
    assert!(is_witness(&r, &b, &zero).unwrap().passed());
    // theta(e1, e1) = -r(e3) and f(e1, e2) = -r(e3)
    assert_eq!(b.tables().theta.get(0, 0, 0), &q.from_ratio(-1, 3).unwrap());
    assert_eq!(b.tables().eff.get(0, 1, 0), &q.from_ratio(-1, 3).unwrap());
    assert!(is_coboundary(&b).unwrap().is_equivalent());

    let mut t = zero.tables().clone();
    t.theta.set(1, 1, 0, q.one());
    let not = zero.with_tables(t).unwrap();
    assert!(check_crossed_system(&not).passed());
    assert_eq!(is_coboundary(&not).unwrap(), Decision::NotEquivalent);
}

#[test]
fn differing_v_tables_fail_m1() {
    let q = Field::Rationals;
    let k0 = PoissonAlgebra::k0(q);
    let a = PreCrossedDatum::zero(&k0, 1);
    let mut t = a.tables().clone();
    t.v_mul.set(0, 0, 0, q.one());
    let b = a.with_tables(t).unwrap();
    let rep = is_witness(&Witness::zero(q, 1, 1), &a, &b).unwrap();
    let v = rep.of("M1").next().expect("M1 violation");
    assert_eq!((v.lhs.clone(), v.rhs.clone()), (vec![q.zero()], vec![q.one()]));
    assert_eq!(find_witness(&a, &b).unwrap(), Decision::NotEquivalent);
    assert!(find_witness(&a, &PreCrossedDatum::zero(&PoissonAlgebra::k1(q), 1)).is_err());
}
