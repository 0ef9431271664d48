use duplicial::linalg::Matrix;
use duplicial::scalar::Field;
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            Matrix::from_triplets(Q, r, c, v.iter().enumerate().map(|(k, &x)| (k / c, k % c, Q.from_i64(x))))
        })
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
            Matrix::from_triplets(Q, n, n, v.iter().enumerate().map(|(k, &x)| (k / n, k % n, Q.from_i64(x))))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(m in matrix(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn invertible_iff_trivial_kernel(m in square(4)) {
        prop_assert_eq!(m.invert().is_ok(), m.kernel().is_empty());
        if let Ok(inv) = m.invert() {
            prop_assert!(inv.mul(&m).is_identity());
        }
    }

    #[test]
    fn kronecker_associative(a in matrix(2), b in matrix(2), c in matrix(2)) {
        prop_assert_eq!(a.kronecker(&b).kronecker(&c), a.kronecker(&b.kronecker(&c)));
        let one = Matrix::identity(Q, 1);
        prop_assert_eq!(one.kronecker(&a), a.clone());
        prop_assert_eq!(a.kronecker(&one), a);
    }

    #[test]
    fn rank_mod_large_prime(m in matrix(5)) {
        // entries ≤ 3 and size ≤ 5 keep every minor below the prime
        let p = 1_000_003;
        let mp = m.reduce_mod(p).expect("integer matrix");
        prop_assert_eq!(mp.rank(), m.rank());
    }

    #[test]
    fn kernel_vectors_are_killed(m in matrix(5)) {
        for v in m.kernel() {
            prop_assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.kernel().len() + m.rank(), m.cols());
    }
}
