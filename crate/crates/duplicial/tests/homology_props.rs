mod common;

use common::{catalog_algebras, exact_dims, invertible, random_conjugate, Q};
use duplicial::algebra::AlgebraMap;
use duplicial::complexes::{hc_all, t_operator_and_mixedify, ChainComplex, ComplexKind, DuchainComplex};
use duplicial::hochschild::{cyclic_module, twisted_module};
use duplicial::linalg::Matrix;
use duplicial::simplicial::{
    dold_kan_normalize, duplicial_equals_decalage_coalgebra, duplicial_to_duchain, hc_of_duplicial, pi_shriek, HcRoute,
    Level, TruncatedDuplicialModule,
};
use proptest::prelude::*;

/// A duplicial module from the catalog: cyclic, or twisted by a scaling.
fn source(k: usize, c: i64) -> TruncatedDuplicialModule {
    let top = 3;
    let algebras = catalog_algebras(Q);
    match k % 4 {
        0 => cyclic_module(&algebras[k / 4 % 3].1, top),
        1 => {
            let a = duplicial::algebra::Algebra::dual_numbers(Q);
            twisted_module(&a, &AlgebraMap::dual_scaling(&a, c), top)
        }
        2 => {
            let a = duplicial::algebra::Algebra::cyclic_group(Q, 3);
            twisted_module(&a, &AlgebraMap::group_power(&a, c.rem_euclid(3) as usize), top)
        }
        _ => cyclic_module(&duplicial::algebra::Algebra::cyclic_group(Q, 2), top),
    }
}

fn pool() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 16)
}

fn conj_chain(c: &ChainComplex, pool: &[i64]) -> ChainComplex {
    let ps: Vec<Matrix> = c.dims.iter().enumerate().map(|(n, &d)| invertible(Q, d, pool, 3 * n)).collect();
    let b = (1..=c.top())
        .map(|n| ps[n - 1].mul(c.b(n)).mul(&ps[n].invert().unwrap()))
        .collect();
    ChainComplex::new(Q, c.dims.clone(), b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duplicial_suite_survives_basis_change(k in 0usize..12, c in -2i64..=2, p in pool()) {
        let x = random_conjugate(&source(k, c), &p);
        prop_assert!(x.check_structure(Level::Duplicial).is_ok());
    }

    #[test]
    fn decalage_coalgebra_iff_duplicial(k in 0usize..12, c in -2i64..=2, p in pool(), bump in 0usize..2, deg in 1usize..=3) {
        let mut x = random_conjugate(&source(k, c), &p);
        if bump == 1 {
            let d = x.dims()[deg];
            let e = Matrix::from_triplets(Q, d, d, [(0, d - 1, Q.one())]);
            x.t[deg] = x.t[deg].add(&e);
        }
        let dup = x.check_structure(Level::Duplicial).is_ok();
        prop_assert_eq!(duplicial_equals_decalage_coalgebra(&x), dup);
    }

    #[test]
    fn routes_agree_below_truncation(k in 0usize..12, c in -2i64..=2, p in pool()) {
        let x = random_conjugate(&source(k, c), &p);
        let a = hc_of_duplicial(&x, HcRoute::ViaPiShriekK);
        let b = hc_of_duplicial(&x, HcRoute::ViaPF);
        prop_assert!(a.report.is_ok());
        prop_assert!(b.report.is_ok());
        let n = exact_dims(&a.betti).len().min(exact_dims(&b.betti).len());
        prop_assert_eq!(&exact_dims(&a.betti)[..n], &exact_dims(&b.betti)[..n]);
    }

    #[test]
    fn cyclic_duchains_are_mixed(k in 0usize..3, p in pool()) {
        let x = random_conjugate(&cyclic_module(&catalog_algebras(Q)[k].1, 3), &p);
        let d = duplicial_to_duchain(&x);
        prop_assert!(d.report.is_ok());
        prop_assert!(d.complex.validate(ComplexKind::Mixed).is_ok());
        let m = t_operator_and_mixedify(&d.complex);
        prop_assert!(m.report.is_ok());
        let (a, b) = (exact_dims(&hc_all(&m.mixed)), exact_dims(&hc_all(&d.complex)));
        let n = a.len().min(b.len());
        prop_assert!(n >= 2);
        prop_assert_eq!(&a[..n], &b[..n]);
    }

    #[test]
    fn mixedify_is_mixed(k in 0usize..12, c in -2i64..=2, p in pool()) {
        let x = random_conjugate(&source(k, c), &p);
        let d = duplicial_to_duchain(&x);
        prop_assert!(d.report.is_ok());
        let m = t_operator_and_mixedify(&d.complex);
        prop_assert!(m.report.is_ok(), "{}", m.report);
    }

    #[test]
    fn normalization_preserves_homology(k in 0usize..12, c in -2i64..=2, p in pool()) {
        let x = random_conjugate(&source(k, c), &p);
        let n = dold_kan_normalize(&x.simplicial);
        prop_assert_eq!(exact_dims(&n.moore.betti_numbers()), exact_dims(&n.normalized.betti_numbers()));
    }

    #[test]
    fn homology_is_basis_invariant(k in 0usize..12, c in -2i64..=2, p in pool()) {
        let moore = source(k, c).simplicial.moore_complex();
        let conj = conj_chain(&moore, &p);
        prop_assert!(conj.validate().is_ok());
        prop_assert_eq!(moore.betti_numbers(), conj.betti_numbers());
    }

    #[test]
    fn opsimplicial_involution_and_pi_idempotent(k in 0usize..12, c in -2i64..=2) {
        let x = source(k, c);
        prop_assert_eq!(x.simplicial.opsimplicial().opsimplicial(), x.simplicial.clone());
        let (y, r) = pi_shriek(&x);
        prop_assert!(r.is_ok());
        let (z, r2) = pi_shriek(&y);
        prop_assert!(r2.is_ok());
        prop_assert_eq!(y.dims(), z.dims());
        prop_assert!(z.check_structure(Level::Cyclic).is_ok());
    }
}

#[test]
fn mixed_input_is_fixed_by_mixedify() {
    let x = cyclic_module(&duplicial::algebra::Algebra::dual_numbers(Q), 4);
    let d = duplicial_to_duchain(&x).complex;
    let mixed: DuchainComplex = d.clone();
    let m = t_operator_and_mixedify(&mixed);
    assert_eq!(m.mixed.dims(), mixed.dims());
}
