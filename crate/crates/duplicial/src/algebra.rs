//! Finite-dimensional algebras by structure constants, bimodules and
//! algebra maps.

use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{Matrix, SparseVec};
use crate::report::ValidationReport;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error("invariant violated: {0}")]
    Invalid(ValidationReport),
}

/// `x_i x_j = Σ_k c_{ij}^k x_k`; `table[i][j]` holds the sparse product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub field: Field,
    pub labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    unit: SparseVec,
}

fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn add_scaled(acc: &mut Vec<Scalar>, c: &Scalar, v: &SparseVec) {
    for (k, x) in v {
        acc[*k] = acc[*k].add(&c.mul(x));
    }
}

impl Algebra {
    /// `mult[i][j]` is the coordinate vector of `x_i x_j`.
    pub fn new(field: Field, labels: Vec<String>, mult: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Algebra, AlgebraError> {
        let d = labels.len();
        if mult.len() != d || mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) || unit.len() != d {
            return Err(AlgebraError::Malformed(format!("structure constants must be {d}x{d}x{d} with a unit of length {d}")));
        }
        let all = mult.iter().flatten().flatten().chain(unit.iter());
        if let Some(bad) = all.into_iter().find(|x| x.field() != field) {
            return Err(AlgebraError::Malformed(format!("entry over {} in an algebra over {field}", bad.field())));
        }
        let table = mult.iter().map(|r| r.iter().map(|v| to_sparse(v)).collect()).collect();
        let a = Algebra {
            field,
            labels,
            table,
            unit: to_sparse(&unit),
        };
        let r = a.validate();
        if !r.is_ok() {
            return Err(AlgebraError::Invalid(r));
        }
        Ok(a)
    }

    /// Builds from basis products given as `(i, j) ↦ [(k, c)]` integer data.
    pub fn from_products(field: Field, labels: &[&str], unit: &[(usize, i64)], prod: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Algebra {
        let d = labels.len();
        let mult = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![field.zero(); d];
                        for (k, c) in prod(i, j) {
                            v[k] = v[k].add(&field.from_i64(c));
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut u = vec![field.zero(); d];
        for &(k, c) in unit {
            u[k] = field.from_i64(c);
        }
        Algebra::new(field, labels.iter().map(|s| s.to_string()).collect(), mult, u).expect("catalog algebra")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn unit_dense(&self) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, x) in &self.unit {
            v[*k] = x.clone();
        }
        v
    }

    /// Column vector `k → A` of the unit.
    pub fn unit_matrix(&self) -> Matrix {
        Matrix::from_triplets(self.field, self.dim(), 1, self.unit.iter().map(|(k, x)| (*k, 0, x.clone())))
    }

    /// `μ : A ⊗ A → A`.
    pub fn mult_matrix(&self) -> Matrix {
        let d = self.dim();
        Matrix::from_column_fn(self.field, d, d * d, |c| self.table[c / d][c % d].clone())
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut acc = vec![self.field.zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                add_scaled(&mut acc, &a[i].mul(&b[j]), &self.table[i][j]);
            }
        }
        acc
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// `L_i : a ↦ x_i a`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_column_fn(self.field, self.dim(), self.dim(), |j| self.table[i][j].clone())
    }

    /// `R_i : a ↦ a x_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        Matrix::from_column_fn(self.field, self.dim(), self.dim(), |j| self.table[j][i].clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ij = self.mul(&self.mul(&self.basis_vec(i), &self.basis_vec(j)), &self.basis_vec(k));
                    let jk = self.mul(&self.basis_vec(i), &self.mul(&self.basis_vec(j), &self.basis_vec(k)));
                    if ij != jk {
                        r.push(0, format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        let u = self.unit_dense();
        for i in 0..d {
            let x = self.basis_vec(i);
            if self.mul(&u, &x) != x || self.mul(&x, &u) != x {
                r.push(0, format!("unit law fails on {}", self.labels[i]));
            }
        }
        r
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn ground(field: Field) -> Algebra {
        Algebra::from_products(field, &["1"], &[(0, 1)], |_, _| vec![(0, 1)])
    }

    /// `k[x]/(x²)` with basis `1, x`.
    pub fn dual_numbers(field: Field) -> Algebra {
        Algebra::from_products(field, &["1", "x"], &[(0, 1)], |i, j| if i + j < 2 { vec![(i + j, 1)] } else { vec![] })
    }

    /// Upper-triangular 2×2 matrices, basis `e11, e12, e22`.
    pub fn upper_triangular(field: Field) -> Algebra {
        let pos = [(0usize, 0usize), (0, 1), (1, 1)];
        Algebra::from_products(field, &["e11", "e12", "e22"], &[(0, 1), (2, 1)], move |i, j| {
            let (a, b) = pos[i];
            let (c, e) = pos[j];
            if b == c {
                vec![(pos.iter().position(|&p| p == (a, e)).unwrap(), 1)]
            } else {
                vec![]
            }
        })
    }

    /// `n×n` matrices with basis `e_ij` in row-major order.
    pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
        let labels: Vec<String> = (0..n * n).map(|k| format!("e{}{}", k / n + 1, k % n + 1)).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let unit: Vec<(usize, i64)> = (0..n).map(|i| (i * n + i, 1)).collect();
        Algebra::from_products(field, &refs, &unit, move |i, j| {
            let (a, b) = (i / n, i % n);
            let (c, e) = (j / n, j % n);
            if b == c {
                vec![(a * n + e, 1)]
            } else {
                vec![]
            }
        })
    }

    /// Group algebra of the cyclic group of order `n`, basis `g^0 … g^{n−1}`.
    pub fn cyclic_group(field: Field, n: usize) -> Algebra {
        let labels: Vec<String> = (0..n).map(|k| format!("g{k}")).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        Algebra::from_products(field, &refs, &[(0, 1)], move |i, j| vec![((i + j) % n, 1)])
    }

    /// Monoid algebra of `{1, e}` with `e² = e`.
    pub fn idempotent_monoid(field: Field) -> Algebra {
        Algebra::from_products(field, &["1", "e"], &[(0, 1)], |i, j| vec![(if i + j == 0 { 0 } else { 1 }, 1)])
    }
}

/// An algebra endomorphism given by its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(a: &Algebra, matrix: Matrix) -> Result<AlgebraMap, AlgebraError> {
        if matrix.rows() != a.dim() || matrix.cols() != a.dim() {
            return Err(AlgebraError::Malformed("algebra map must be square of the algebra's dimension".into()));
        }
        let m = AlgebraMap { matrix };
        let r = m.validate(a);
        if !r.is_ok() {
            return Err(AlgebraError::Invalid(r));
        }
        Ok(m)
    }

    pub fn identity(a: &Algebra) -> AlgebraMap {
        AlgebraMap {
            matrix: Matrix::identity(a.field, a.dim()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn validate(&self, a: &Algebra) -> ValidationReport {
        let mut r = ValidationReport::new();
        let u = a.unit_dense();
        r.check(self.matrix.apply(&u) == u, 0, "σ(1) = 1");
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let xy = a.mul(&a.basis_vec(i), &a.basis_vec(j));
                let lhs = self.matrix.apply(&xy);
                let rhs = a.mul(&self.matrix.column(i), &self.matrix.column(j));
                if lhs != rhs {
                    r.push(0, format!("σ({} {}) ≠ σ({}) σ({})", a.labels[i], a.labels[j], a.labels[i], a.labels[j]));
                }
            }
        }
        r
    }

    /// `σ(x) = c·x` on the dual numbers.
    pub fn dual_scaling(a: &Algebra, c: i64) -> AlgebraMap {
        let f = a.field;
        AlgebraMap::new(a, Matrix::from_triplets(f, 2, 2, [(0, 0, f.one()), (1, 1, f.from_i64(c))])).expect("algebra map")
    }

    /// The permutation of a group basis induced by `g ↦ g^k`.
    pub fn group_power(a: &Algebra, k: usize) -> AlgebraMap {
        let n = a.dim();
        let f = a.field;
        AlgebraMap::new(a, Matrix::from_triplets(f, n, n, (0..n).map(|i| ((i * k) % n, i, f.one())))).expect("algebra map")
    }
}

/// A bimodule given by left and right action matrices per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub dim: usize,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(a: &Algebra, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule, AlgebraError> {
        if left.len() != a.dim() || right.len() != a.dim() {
            return Err(AlgebraError::Malformed("one action matrix per algebra basis element".into()));
        }
        if left.iter().chain(&right).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(AlgebraError::Malformed(format!("action matrices must be {dim}x{dim}")));
        }
        let b = Bimodule { dim, left, right };
        let r = b.validate(a);
        if !r.is_ok() {
            return Err(AlgebraError::Invalid(r));
        }
        Ok(b)
    }

    fn combo(a: &Algebra, ms: &[Matrix], v: &SparseVec, dim: usize) -> Matrix {
        v.iter()
            .fold(Matrix::zero(a.field, dim, dim), |acc, (k, c)| acc.add(&ms[*k].scale(c)))
    }

    pub fn left_of(&self, a: &Algebra, v: &SparseVec) -> Matrix {
        Self::combo(a, &self.left, v, self.dim)
    }

    pub fn right_of(&self, a: &Algebra, v: &SparseVec) -> Matrix {
        Self::combo(a, &self.right, v, self.dim)
    }

    pub fn validate(&self, a: &Algebra) -> ValidationReport {
        let mut r = ValidationReport::new();
        let d = a.dim();
        let id = Matrix::identity(a.field, self.dim);
        r.check(self.left_of(a, a.unit()) == id, 0, "1·m = m");
        r.check(self.right_of(a, a.unit()) == id, 0, "m·1 = m");
        for i in 0..d {
            for j in 0..d {
                let p = a.product(i, j);
                r.check(self.left[i].mul(&self.left[j]) == self.left_of(a, p), 0, format!("(x{i} x{j})m = x{i}(x{j} m)"));
                r.check(self.right[j].mul(&self.right[i]) == self.right_of(a, p), 0, format!("m(x{i} x{j}) = (m x{i})x{j}"));
                r.check(self.left[i].mul(&self.right[j]) == self.right[j].mul(&self.left[i]), 0, format!("x{i}(m x{j}) = (x{i} m)x{j}"));
            }
        }
        r
    }

    pub fn regular(a: &Algebra) -> Bimodule {
        let d = a.dim();
        Bimodule {
            dim: d,
            left: (0..d).map(|i| a.left_mult(i)).collect(),
            right: (0..d).map(|i| a.right_mult(i)).collect(),
        }
    }

    /// `A ⊗ A` with the outer actions.
    pub fn free(a: &Algebra) -> Bimodule {
        let d = a.dim();
        let id = Matrix::identity(a.field, d);
        Bimodule {
            dim: d * d,
            left: (0..d).map(|i| a.left_mult(i).kronecker(&id)).collect(),
            right: (0..d).map(|i| id.kronecker(&a.right_mult(i))).collect(),
        }
    }

    /// `M_σ`: right action through `σ`.
    pub fn twisted(&self, a: &Algebra, sigma: &AlgebraMap) -> Bimodule {
        let right = (0..a.dim())
            .map(|i| {
                let img: SparseVec = sigma.matrix.column(i).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                self.right_of(a, &img)
            })
            .collect();
        Bimodule {
            dim: self.dim,
            left: self.left.clone(),
            right,
        }
    }

    pub fn zero(a: &Algebra) -> Bimodule {
        let z = Matrix::zero(a.field, 0, 0);
        Bimodule {
            dim: 0,
            left: vec![z.clone(); a.dim()],
            right: vec![z; a.dim()],
        }
    }
}

pub type SharedAlgebra = Arc<Algebra>;

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn catalog_is_valid() {
        for a in [
            Algebra::ground(Q),
            Algebra::dual_numbers(Q),
            Algebra::upper_triangular(Q),
            Algebra::matrix_algebra(Q, 2),
            Algebra::cyclic_group(Q, 3),
            Algebra::idempotent_monoid(Q),
        ] {
            assert!(a.validate().is_ok());
            assert!(Bimodule::regular(&a).validate(&a).is_ok());
            assert!(Bimodule::free(&a).validate(&a).is_ok());
        }
    }

    #[test]
    fn nonassociative_table_names_triple() {
        let f = Q;
        let bad = Algebra::new(
            f,
            vec!["1".into(), "x".into(), "y".into()],
            vec![
                vec![vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.one(), f.zero()], vec![f.zero(), f.zero(), f.one()]],
                vec![vec![f.zero(), f.one(), f.zero()], vec![f.zero(), f.zero(), f.one()], vec![f.zero(), f.zero(), f.zero()]],
                vec![vec![f.zero(), f.zero(), f.one()], vec![f.zero(), f.zero(), f.zero()], vec![f.one(), f.zero(), f.zero()]],
            ],
            vec![f.one(), f.zero(), f.zero()],
        );
        match bad {
            Err(AlgebraError::Invalid(r)) => assert!(r.violations[0].identity.contains("associativity")),
            other => panic!("expected an associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn algebra_maps() {
        let a = Algebra::dual_numbers(Q);
        assert!(AlgebraMap::dual_scaling(&a, -1).validate(&a).is_ok());
        let c3 = Algebra::cyclic_group(Q, 3);
        assert!(AlgebraMap::group_power(&c3, 2).validate(&c3).is_ok());
        let bad = Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]);
        assert!(AlgebraMap::new(&a, bad).is_err());
    }
}
