mod common;

use common::*;
use poisson_ext::coflag::{classify_coflag, AbelianCoflag, NonabelianCoflag};
use poisson_ext::format::{
    emit_algebra, emit_classification, emit_cmatrix, emit_coflag, emit_matrix, emit_system, parse_algebra,
    parse_cmatrix, parse_coflag, parse_matrix, parse_system, report_systems,
};
use poisson_ext::metabelian::{classify_metabelian, CMatrixDatum};
use poisson_ext::scalar::{Field, Matrix, Scalar};
use poisson_ext::{CoflagDatum, Error, PoissonAlgebra};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(7)])
}

fn scalars(f: Field, len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-20i64..=20, 1i64..=6, 0u8..3), len).prop_map(move |v| {
        v.into_iter()
            .map(|(n, d, sparse)| match (f, sparse) {
                (_, 0) => f.zero(),
                (Field::Rationals, _) => f.from_ratio(n, d).unwrap(),
                _ => f.from_i64(n),
            })
            .collect()
    })
}

fn matrix(f: Field, r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    scalars(f, r * c).prop_map(move |v| {
        if r == 0 {
            Matrix::zeros(f, 0, c)
        } else {
            Matrix::from_rows(f, (0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect()).unwrap()
        }
    })
}

fn base(f: Field, k: usize) -> PoissonAlgebra {
    match k {
        0 => PoissonAlgebra::abelian(f, 0),
        1 => PoissonAlgebra::k0(f),
        2 => PoissonAlgebra::k1(f),
        3 => PoissonAlgebra::left_k1_squared(f),
        _ => PoissonAlgebra::heisenberg(f),
    }
}

proptest! {
    #[test]
    fn algebras_round_trip((f, n, x) in field().prop_flat_map(|f| (Just(f), 0usize..=3)).prop_flat_map(|(f, n)| (Just(f), Just(n), scalars(f, 2 * n * n * n)))) {
        let k = n * n * n;
        let a = algebra_from_flat(f, n, &x[..k], &x[k..]);
        let text = emit_algebra(&a);
        prop_assert_eq!(parse_algebra(&text).unwrap(), a);
    }

    #[test]
    fn systems_round_trip((f, k, n, x) in field()
        .prop_flat_map(|f| (Just(f), 0usize..=4, 0usize..=2))
        .prop_flat_map(|(f, k, n)| {
            let m = base(f, k).dim();
            (Just(f), Just(k), Just(n), scalars(f, datum_len(m, n)))
        }))
    {
        let d = datum_from_flat(&base(f, k), n, &x);
        prop_assert_eq!(parse_system(&emit_system(&d)).unwrap(), d);
    }

    #[test]
    fn matrices_round_trip(m in field().prop_flat_map(|f| (Just(f), 0usize..=4, 0usize..=4)).prop_flat_map(|(f, r, c)| matrix(f, r, c))) {
        let text = emit_matrix(&m);
        prop_assert_eq!(parse_matrix(&text, Field::Rationals).unwrap(), m);
    }

    #[test]
    fn coflags_round_trip((f, x, na) in field()
        .prop_flat_map(|f| (Just(f), 0usize..=3, any::<bool>()))
        .prop_flat_map(|(f, n, na)| (Just(f), scalars(f, 3 * n + 2 * n * n + 1).prop_map(move |v| (n, v)), Just(na))))
    {
        let (n, v) = x;
        let grid = |o: usize| {
            if n == 0 { Matrix::zeros(f, 0, 0) } else {
                Matrix::from_rows(f, (0..n).map(|i| v[o + i * n..o + (i + 1) * n].to_vec()).collect()).unwrap()
            }
        };
        let u = if v[3 * n + 2 * n * n].is_zero() { f.one() } else { v[3 * n + 2 * n * n].clone() };
        let c = if na {
            CoflagDatum::Nonabelian(NonabelianCoflag { lambda: v[..n].to_vec(), theta: grid(3 * n), u })
        } else {
            CoflagDatum::Abelian(AbelianCoflag {
                lambda: v[..n].to_vec(),
                big_lambda: v[n..2 * n].to_vec(),
                gamma: v[2 * n..3 * n].to_vec(),
                theta: grid(3 * n),
                f: grid(3 * n + n * n),
            })
        };
        prop_assert_eq!(parse_coflag(&emit_coflag(f, &c)).unwrap(), (f, c));
    }

    #[test]
    fn cmatrix_round_trip((f, n, v) in field().prop_flat_map(|f| (Just(f), 0usize..=3)).prop_flat_map(|(f, n)| (Just(f), Just(n), scalars(f, 3 * n * n + n)))) {
        let sq = |o: usize| {
            let mut m = Matrix::zeros(f, n, n);
            for i in 0..n * n {
                m.set(i / n, i % n, v[o + i].clone());
            }
            m
        };
        let c = CMatrixDatum { a: sq(0), b: sq(n * n), c: sq(2 * n * n), theta0: v[3 * n * n..].to_vec() };
        prop_assert_eq!(parse_cmatrix(&emit_cmatrix(&c)).unwrap(), c);
    }
}

#[test]
fn reports_list_their_representatives() {
    let f = Field::Prime(3);
    for r in [classify_coflag(&PoissonAlgebra::k1(f), f).unwrap(), classify_metabelian(1, 2, f).unwrap()] {
        let text = emit_classification(&r);
        assert!(text.contains(&format!("total {}\n", r.total())));
        let data = report_systems(&text).unwrap();
        assert_eq!(data, r.classes.iter().map(|c| c.datum.clone()).collect::<Vec<_>>());
    }
}

#[test]
fn parse_errors_name_the_line() {
    let text = "poisson-algebra v1\nfield Q\ndim 3\n\n# comment\nmul 1 2 : 3 1\nmul 1 5 : 1 1\nend\n";
    assert_eq!(parse_algebra(text), Err(Error::IndexOutOfRange { line: 7, index: 5, bound: 3 }));
    let text = "poisson-algebra v1\nfield Q\ndim 2\nmul 1 1 : 1 1/0\nend\n";
    assert!(matches!(parse_algebra(text), Err(Error::Parse { line: 4, .. })));
    let text = "poisson-algebra v1\nfield F 4\ndim 1\nend\n";
    assert!(matches!(parse_algebra(text), Err(Error::FieldSyntax { line: 2, .. })));
    let text = "matrix v1\nrows 2\ncols 2\n1 0\nend\n";
    assert!(matches!(parse_matrix(text, Field::Rationals), Err(Error::Parse { .. })));
    let text = "coflag v1\nfield F 3\ndimP 1\ngamma 1\nu 2\nend\n";
    assert!(matches!(parse_coflag(text), Err(Error::Parse { line: 4, .. })));
    assert!(parse_system("poisson-algebra v1\nend\n").is_err());
}
