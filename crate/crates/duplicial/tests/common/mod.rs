#![allow(dead_code)]

use duplicial::algebra::Algebra;
use duplicial::complexes::Betti;
use duplicial::linalg::Matrix;
use duplicial::scalar::Field;
use duplicial::simplicial::{Augmentation, TruncatedDuplicialModule, TruncatedSimplicialModule};

pub const Q: Field = Field::Rational;

/// Unit upper times unit lower triangular, entries drawn cyclically from `pool`.
pub fn invertible(field: Field, n: usize, pool: &[i64], offset: usize) -> Matrix {
    let mut k = offset;
    let mut next = || {
        let v = pool[k % pool.len()];
        k += 1;
        v
    };
    let mut u = Vec::new();
    let mut l = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                u.push((i, j, field.one()));
                l.push((i, j, field.one()));
            } else if i < j {
                u.push((i, j, field.from_i64(next())));
            } else {
                l.push((i, j, field.from_i64(next())));
            }
        }
    }
    Matrix::from_triplets(field, n, n, u).mul(&Matrix::from_triplets(field, n, n, l))
}

/// The same algebra in the basis given by the columns of `p`.
pub fn change_basis(a: &Algebra, p: &Matrix) -> Algebra {
    let d = a.dim();
    let pinv = p.invert().expect("invertible");
    let mult = (0..d)
        .map(|i| (0..d).map(|j| pinv.apply(&a.mul(&p.column(i), &p.column(j)))).collect())
        .collect();
    let unit = pinv.apply(&a.unit_dense());
    Algebra::new(a.field, (0..d).map(|k| format!("b{k}")).collect(), mult, unit).expect("isomorphic algebra")
}

/// Conjugates every structure map by `P_n` in degree `n`.
pub fn conjugate(x: &TruncatedDuplicialModule, ps: &[Matrix]) -> TruncatedDuplicialModule {
    let s = &x.simplicial;
    let inv: Vec<Matrix> = ps.iter().map(|p| p.invert().expect("invertible")).collect();
    let top = s.top();
    let faces = (0..=top)
        .map(|n| s.faces[n].iter().map(|d| ps[n - 1].mul(d).mul(&inv[n])).collect())
        .collect();
    let degens = (0..=top)
        .map(|n| s.degens[n].iter().map(|m| ps[n + 1].mul(m).mul(&inv[n])).collect())
        .collect();
    let augmentation = s.augmentation.as_ref().map(|a| Augmentation {
        dim: a.dim,
        map: a.map.mul(&inv[0]),
    });
    let t = (0..=top).map(|n| ps[n].mul(&x.t[n]).mul(&inv[n])).collect();
    let simplicial = TruncatedSimplicialModule::new(s.field, s.dims.clone(), faces, degens, augmentation).unwrap();
    TruncatedDuplicialModule::new(simplicial, t).unwrap()
}

pub fn random_conjugate(x: &TruncatedDuplicialModule, pool: &[i64]) -> TruncatedDuplicialModule {
    let ps: Vec<Matrix> = x
        .dims()
        .iter()
        .enumerate()
        .map(|(n, &d)| invertible(x.field(), d, pool, 7 * n))
        .collect();
    conjugate(x, &ps)
}

pub fn exact_dims(b: &[Betti]) -> Vec<usize> {
    b.iter().filter(|x| !x.truncated).map(|x| x.dim).collect()
}

pub fn catalog_algebras(field: Field) -> Vec<(&'static str, Algebra)> {
    vec![
        ("Q", Algebra::ground(field)),
        ("Q[x]/(x^2)", Algebra::dual_numbers(field)),
        ("UT2", Algebra::upper_triangular(field)),
        ("Q[C2]", Algebra::cyclic_group(field, 2)),
        ("Q[C3]", Algebra::cyclic_group(field, 3)),
        ("Q[{1,e}]", Algebra::idempotent_monoid(field)),
        ("M2", Algebra::matrix_algebra(field, 2)),
    ]
}
