mod common;

use common::*;
use poisson_ext::algebra::verify_poisson;
use poisson_ext::crossed::check_crossed_system;
use poisson_ext::equivalence::{find_witness, is_witness};
use poisson_ext::metabelian::{
    build_kn1_abc, build_kn1_gamma_f, build_kn1_theta_f, check_cmatrix, check_metabelian_system, classify_metabelian,
    equiv_cmatrix, equiv_metabelian, is_metabelian, lift, CMatrixDatum, MetabelianSystem,
};
use poisson_ext::scalar::{Field, Matrix, Scalar};
use poisson_ext::{BilinearTable, Decision, PoissonAlgebra, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn system_len(m: usize, n: usize) -> usize {
    3 * m * n * n + 2 * m * m * n
}

fn system_from_flat(f: Field, m: usize, n: usize, x: &[Scalar]) -> MetabelianSystem {
    let mut it = x.iter().cloned();
    let mut table = |a: usize, b: usize| {
        let mut t = BilinearTable::zeros(f, a, b, n);
        for i in 0..a {
            for j in 0..b {
                for k in 0..n {
                    t.set(i, j, k, it.next().unwrap());
                }
            }
        }
        t
    };
    MetabelianSystem {
        act_l: table(m, n),
        act_r: table(n, m),
        act_lie: table(m, n),
        theta: table(m, m),
        eff: table(m, m),
    }
}

fn square(f: Field, n: usize, x: &[Scalar]) -> Matrix {
    Matrix::from_rows(f, (0..n).map(|i| x[i * n..(i + 1) * n].to_vec()).collect()).unwrap()
}

fn cmatrix_from_flat(f: Field, n: usize, x: &[Scalar]) -> CMatrixDatum {
    let k = n * n;
    CMatrixDatum {
        a: square(f, n, &x[..k]),
        b: square(f, n, &x[k..2 * k]),
        c: square(f, n, &x[2 * k..3 * k]),
        theta0: x[3 * k..].to_vec(),
    }
}

fn all_cmatrix(f: Field, n: usize) -> Vec<CMatrixDatum> {
    let len = 3 * n * n + n;
    let q = f.order().unwrap() as u64;
    (0..q.pow(len as u32)).map(|code| cmatrix_from_flat(f, n, &decode(f, code, len))).collect()
}

fn random_scalars(rng: &mut ChaCha8Rng, f: Field, len: usize) -> Vec<Scalar> {
    let q = f.order().unwrap() as i64;
    (0..len).map(|_| f.from_i64(rng.gen_range(0..q))).collect()
}

#[test]
fn matrix_conditions_match_the_system_axioms() {
    let f = Field::Prime(2);
    for n in 1..=2 {
        for c in all_cmatrix(f, n) {
            let ok = check_cmatrix(&c).unwrap().passed();
            let s = lift(&c).unwrap();
            assert_eq!(ok, check_metabelian_system(&s).unwrap().passed(), "{c:?}");
        }
    }
}

#[test]
fn system_axioms_match_the_crossed_axioms() {
    let f = Field::Prime(2);
    for (m, n) in [(1, 1), (2, 1)] {
        let len = system_len(m, n);
        for code in 0..1u64 << len {
            let s = system_from_flat(f, m, n, &decode(f, code, len));
            let d = s.to_datum().unwrap();
            assert_eq!(check_metabelian_system(&s).unwrap().passed(), check_crossed_system(&d).passed());
            assert_eq!(MetabelianSystem::from_datum(&d).unwrap(), s);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (m, n, f) in [(1, 2, Field::Prime(2)), (1, 2, Field::Prime(3)), (2, 2, Field::Prime(2))] {
        for _ in 0..5000 {
            let s = system_from_flat(f, m, n, &random_scalars(&mut rng, f, system_len(m, n)));
            assert_eq!(check_metabelian_system(&s).unwrap().passed(), check_crossed_system(&s.to_datum().unwrap()).passed());
        }
    }
}

#[test]
fn cmatrix_relation_agrees_with_the_general_search() {
    for f in [Field::Prime(2), Field::Prime(3)] {
        let n = if f == Field::Prime(2) { 2 } else { 1 };
        let valid: Vec<CMatrixDatum> = all_cmatrix(f, n).into_iter().filter(|c| check_cmatrix(c).unwrap().passed()).collect();
        let lifted: Vec<_> = valid.iter().map(|c| lift(c).unwrap().to_datum().unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for i in 0..valid.len() {
            let partners: Vec<usize> = (0..valid.len())
                .filter(|&j| (valid[i].a == valid[j].a && valid[i].b == valid[j].b && valid[i].c == valid[j].c) || rng.gen_bool(0.01))
                .collect();
            for j in partners {
                let fast = equiv_cmatrix(&valid[i], &valid[j]).unwrap();
                let slow = find_witness(&lifted[i], &lifted[j]).unwrap();
                match (&fast, &slow) {
                    (Some(r), Decision::Equivalent(_)) => {
                        let w = Witness::from_flat(f, 1, n, r);
                        assert!(is_witness(&w, &lifted[i], &lifted[j]).unwrap().passed());
                        assert!(psi_is_morphism(&w, &lifted[i], &lifted[j]));
                    }
                    (None, Decision::NotEquivalent) => {}
                    _ => panic!("{:?} / {:?}: {fast:?} against {slow:?}", valid[i], valid[j]),
                }
            }
        }
    }
}

#[test]
fn classification_counts_agree_with_brute_force() {
    let f = Field::Prime(2);
    let valid: Vec<CMatrixDatum> = all_cmatrix(f, 2).into_iter().filter(|c| check_cmatrix(c).unwrap().passed()).collect();
    let classes = partition(&valid, |a, b| equiv_cmatrix(a, b).unwrap().is_some());
    let result = classify_metabelian(1, 2, f).unwrap();
    assert_eq!(result.total(), classes.len());
    assert_eq!(result.total(), 64);
    assert_eq!(result.candidates, valid.len());

    for (m, n) in [(1, 1), (2, 1)] {
        let len = system_len(m, n);
        let brute = (0..1u64 << len)
            .filter(|&code| check_metabelian_system(&system_from_flat(f, m, n, &decode(f, code, len))).unwrap().passed())
            .count();
        let result = classify_metabelian(m, n, f).unwrap();
        assert_eq!(result.candidates, brute);
        assert_eq!(result.classes.iter().map(|c| c.size).sum::<usize>(), brute);
    }
}

#[test]
fn plane_over_the_line_has_35_classes_over_f2() {
    let f = Field::Prime(2);
    let result = classify_metabelian(2, 1, f).unwrap();
    assert_eq!(result.total(), 35);
    let systems: Vec<MetabelianSystem> =
        result.classes.iter().map(|c| MetabelianSystem::from_datum(&c.datum).unwrap()).collect();
    for (i, a) in systems.iter().enumerate() {
        assert!(check_metabelian_system(a).unwrap().passed());
        for (j, b) in systems.iter().enumerate() {
            let same = equiv_metabelian(a, b).unwrap().is_some();
            assert_eq!(same, i == j);
            let slow = find_witness(&result.classes[i].datum, &result.classes[j].datum).unwrap();
            assert_eq!(matches!(slow, Decision::Equivalent(_)), i == j);
        }
    }
}

#[test]
fn builders_produce_metabelian_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut abc, mut gamma_f) = (0, 0);
    for _ in 0..3000 {
        let f = [Field::Prime(2), Field::Prime(3), Field::Prime(5)][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let c = cmatrix_from_flat(f, n, &random_scalars(&mut rng, f, 3 * n * n + n));
        if check_cmatrix(&c).unwrap().passed() {
            let e = build_kn1_abc(&c).unwrap();
            assert!(verify_poisson(&e).passed());
            assert!(is_metabelian(&e).unwrap().is_some());
            abc += 1;
        } else {
            assert!(build_kn1_abc(&c).is_err());
        }

        let theta = square(f, n, &random_scalars(&mut rng, f, n * n));
        let upper = random_scalars(&mut rng, f, n * n);
        let alt = Matrix::from_rows(
            f,
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.cmp(&j) {
                            std::cmp::Ordering::Less => upper[i * n + j].clone(),
                            std::cmp::Ordering::Greater => -&upper[j * n + i],
                            std::cmp::Ordering::Equal => f.zero(),
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let e = build_kn1_theta_f(&theta, &alt).unwrap();
        assert!(verify_poisson(&e).passed() && is_metabelian(&e).unwrap().is_some());
        let gamma = random_scalars(&mut rng, f, n);
        if let Ok(e) = build_kn1_gamma_f(&gamma, &alt) {
            assert!(verify_poisson(&e).passed() && is_metabelian(&e).unwrap().is_some());
            gamma_f += 1;
        }
    }
    assert!(abc > 50 && gamma_f > 100, "{abc} {gamma_f}");
}

#[test]
fn metabelian_detection() {
    let f = Field::Prime(3);
    assert!(is_metabelian(&PoissonAlgebra::heisenberg(f)).unwrap().is_some());
    assert!(is_metabelian(&PoissonAlgebra::k1(f)).unwrap().is_none());
    let span = is_metabelian(&PoissonAlgebra::heisenberg(f)).unwrap().unwrap();
    assert_eq!((span.rows(), span.cols()), (3, 1));
    let not_poisson = PoissonAlgebra::from_entries(f, 1, &[(0, 0, 0, 1)], &[(0, 0, 0, 1)]);
    assert!(is_metabelian(&not_poisson).is_err());
}
