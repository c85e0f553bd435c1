mod common;

use common::decode;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use poisson_ext::scalar::{enumerate_vectors, solve_linear, Field, Matrix, Scalar, SolutionSet};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=30).prop_map(|(n, d)| Field::Rationals.from_ratio(n, d).unwrap())
}

fn prime_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u64, 3, 5, 7, 13, 101]).prop_map(|p| Field::prime(p).unwrap())
}

fn residues(f: Field, len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    let p = f.order().unwrap() as i64;
    prop::collection::vec(0..p, len).prop_map(move |v| v.into_iter().map(|x| f.from_i64(x)).collect())
}

fn in_lowest_terms(s: &Scalar) -> bool {
    let (n, d) = s.as_ratio().unwrap();
    d.is_positive() && (n.gcd(d).is_one() || (n.is_zero() && d.is_one()))
}

proptest! {
    #[test]
    fn rationals_stay_canonical(a in rational(), b in rational()) {
        for s in [&a + &b, &a - &b, &a * &b, -&a] {
            prop_assert!(in_lowest_terms(&s));
        }
        if !b.is_zero() {
            prop_assert!(in_lowest_terms(&a.checked_div(&b).unwrap()));
        }
        let z = &a + &(-&a);
        prop_assert!(z.is_zero());
        prop_assert_eq!(z.as_ratio().unwrap().1, &BigInt::one());
    }

    #[test]
    fn field_laws_mod_p(f in prime_field(), x in 0i64..1000, y in 0i64..1000, z in 0i64..1000) {
        let (a, b, c) = (f.from_i64(x), f.from_i64(y), f.from_i64(z));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        prop_assert!(a.residue().unwrap() < f.order().unwrap());
    }

    #[test]
    fn solutions_satisfy_the_system(
        f in prop::sample::select(vec![Field::Prime(2), Field::Prime(3)]),
        rows in 1usize..=4,
        cols in 1usize..=5,
        seed in any::<u64>(),
    ) {
        let p = f.order().unwrap() as u64;
        let entries = decode(f, seed % p.pow((rows * cols + rows) as u32), rows * cols + rows);
        let a = Matrix::from_rows(f, entries[..rows * cols].chunks(cols).map(<[Scalar]>::to_vec).collect()).unwrap();
        let b = entries[rows * cols..].to_vec();
        let sol = solve_linear(&a, &b).unwrap();
        prop_assert!(sol.verify(&a, &b));
        let brute: Vec<Vec<Scalar>> =
            enumerate_vectors(f, cols).unwrap().filter(|v| a.apply(v).unwrap() == b).collect();
        match sol {
            SolutionSet::Empty => prop_assert!(brute.is_empty()),
            SolutionSet::Affine { ref nullspace, .. } => {
                prop_assert_eq!(brute.len() as u64, p.pow(nullspace.len() as u32));
                for v in sol.points(f).unwrap() {
                    prop_assert_eq!(a.apply(&v).unwrap(), b.clone());
                }
            }
        }
    }

    #[test]
    fn rational_solutions_verify(
        entries in prop::collection::vec(rational(), 12),
        rhs in prop::collection::vec(rational(), 3),
    ) {
        let q = Field::Rationals;
        let a = Matrix::from_rows(q, entries.chunks(4).map(<[Scalar]>::to_vec).collect()).unwrap();
        let sol = solve_linear(&a, &rhs).unwrap();
        prop_assert!(sol.verify(&a, &rhs));
        if let SolutionSet::Affine { nullspace, .. } = &sol {
            prop_assert_eq!(nullspace.len(), 4 - a.rank());
        }
    }

    #[test]
    fn enumeration_is_complete(f in prop::sample::select(vec![2u64, 3, 5]), n in 0usize..=4) {
        let f = Field::prime(f).unwrap();
        let all: Vec<Vec<Scalar>> = enumerate_vectors(f, n).unwrap().collect();
        let p = f.order().unwrap() as usize;
        prop_assert_eq!(all.len(), p.pow(n as u32));
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn random_residue_vectors_are_in_range(v in prime_field().prop_flat_map(|f| residues(f, 5))) {
        prop_assert!(v.iter().all(|s| s.residue().unwrap() < s.field().order().unwrap()));
    }
}

#[test]
fn solve_examples() {
    let q = Field::Rationals;
    let sol = solve_linear(&Matrix::identity(q, 2), &[q.one(), q.zero()]).unwrap();
    assert_eq!(sol.particular().unwrap(), &[q.one(), q.zero()][..]);
    assert_eq!(sol.dimension(), Some(0));
    assert!(solve_linear(&Matrix::zeros(q, 1, 2), &[q.one()]).unwrap().is_empty());

    // Over F2 the solutions of x + y = 1 are exactly (1, 0) and (0, 1).
    let f2 = Field::Prime(2);
    let a = Matrix::from_i64(f2, &[&[1, 1]]);
    let sol = solve_linear(&a, &[f2.one()]).unwrap();
    let brute: Vec<Vec<Scalar>> = enumerate_vectors(f2, 2).unwrap().filter(|v| a.apply(v).unwrap() == [f2.one()]).collect();
    assert_eq!(brute, vec![vec![f2.zero(), f2.one()], vec![f2.one(), f2.zero()]]);
    match sol {
        SolutionSet::Affine { particular, nullspace } => {
            assert_eq!(particular, vec![f2.one(), f2.zero()]);
            assert_eq!(nullspace, vec![vec![f2.one(), f2.one()]]);
        }
        SolutionSet::Empty => panic!("x + y = 1 is solvable"),
    }
}

#[test]
fn scalar_examples() {
    let q = Field::Rationals;
    let half = q.from_ratio(1, 2).unwrap();
    let third = q.from_ratio(1, 3).unwrap();
    assert_eq!(&half + &third, q.from_ratio(5, 6).unwrap());
    let f5 = Field::prime(5).unwrap();
    assert_eq!(&f5.from_i64(3) * &f5.from_i64(4), f5.from_i64(2));
    assert_eq!(f5.from_i64(2).inverse().unwrap(), f5.from_i64(3));
    assert!(f5.zero().inverse().is_err());
    assert!(Field::prime(4).is_err());
    assert!(enumerate_vectors(q, 1).is_err());
}
