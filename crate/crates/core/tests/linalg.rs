use proptest::prelude::*;

use tubedef_core::linalg::{Field, Matrix, Scalar};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(7)), Just(Field::Prime(2_305_843_009_213_693_951))]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (field(), 0..=max, 0..=max).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(-4i64..=4, r * c).prop_map(move |v| Matrix::from_fn(f, r, c, |i, j| f.from_i64(v[i * c + j])))
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (field(), 1..=max).prop_flat_map(|(f, n)| {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| Matrix::from_fn(f, n, n, |i, j| f.from_i64(v[i * n + j])))
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(6)) {
        prop_assert_eq!(m.rank() + m.kernel_basis().cols(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(6)) {
        let k = m.kernel_basis();
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
        let l = m.left_kernel_basis();
        prop_assert!((&l * &m).is_zero());
    }

    #[test]
    fn rref_is_idempotent_and_preserves_row_space(m in matrix(6)) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&rr, &r);
        prop_assert_eq!(&pivots, &pivots2);
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(m.vstack(&r).unwrap().rank(), m.rank());
        for (i, &p) in pivots.iter().enumerate() {
            prop_assert!(r.get(i, p).is_one());
        }
    }

    #[test]
    fn solve_finds_exact_solutions(m in matrix(5), seed in any::<u64>()) {
        let x = tubedef_core::linalg::random_matrix(m.cols(), 1, m.field(), seed);
        let b = &m * &x;
        let y = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(&m * &y, b);
    }

    #[test]
    fn inverse_is_two_sided(m in square(5)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn trace_is_cyclic(a in square(4), seed in any::<u64>()) {
        let b = tubedef_core::linalg::random_matrix(a.rows(), a.cols(), a.field(), seed);
        prop_assert_eq!((&a * &b).trace(), (&b * &a).trace());
    }

    #[test]
    fn prime_field_matches_integer_arithmetic(x in -1000i64..1000, y in -1000i64..1000) {
        let p = 101i64;
        let f = Field::Prime(p as u64);
        let (a, b) = (f.from_i64(x), f.from_i64(y));
        prop_assert_eq!((&a * &b).to_string(), (x * y).rem_euclid(p).to_string());
        prop_assert_eq!((&a + &b).to_string(), (x + y).rem_euclid(p).to_string());
        prop_assert_eq!((&a - &b).to_string(), (x - y).rem_euclid(p).to_string());
        if x.rem_euclid(p) != 0 {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalars_round_trip_through_text(n in -10_000i64..10_000, d in 1i64..500) {
        let f = Field::Rationals;
        let s = f.from_ratio(n, d).unwrap();
        prop_assert_eq!(f.parse(&s.to_string()).unwrap(), s);
    }
}

#[test]
fn rational_arithmetic_is_exact() {
    let f = Field::Rationals;
    let third = f.parse("1/3").unwrap();
    let sum = &(&third + &third) + &third;
    assert!(sum.is_one());
    assert_eq!(f.parse("6/8").unwrap().to_string(), "3/4");
    assert_eq!(f.parse("-4/2").unwrap().to_string(), "-2");
}

#[test]
fn huge_rationals_do_not_overflow() {
    let f = Field::Rationals;
    let m = Matrix::from_fn(f, 12, 12, |i, j| f.from_ratio(1, (i + j + 1) as i64).unwrap());
    let inv = m.inverse().expect("Hilbert matrices are invertible");
    assert!((&m * &inv).is_identity());
    let big: &Scalar = inv.get(11, 11);
    assert!(big.to_i64().is_none() || big.to_i64().unwrap().abs() > 1_000_000);
}

#[test]
fn bad_input_is_rejected() {
    assert!(Field::prime(4).is_err());
    assert!(Field::Rationals.parse("1/0").is_err());
    assert!(Field::Rationals.parse("x").is_err());
    let a = Matrix::identity(Field::Rationals, 2);
    let b = Matrix::identity(Field::Prime(3), 2);
    assert!(a.try_mul(&b).is_err());
    assert!(a.try_add(&Matrix::identity(Field::Rationals, 3)).is_err());
}
