//! Chain, duchain and mixed complexes, Connes' total complex and cyclic
//! homology.
//!
//! Every complex is truncated at a top degree `N`. The field
//! `exact_through` records the highest degree whose spaces and maps are
//! exact; a homology value in degree `n` is flagged truncated whenever
//! `n >= exact_through`, because it would need degree `n + 1`.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Matrix, Quotient};
use crate::report::ValidationReport;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree {0} out of range (top degree {1})")]
    OutOfRange(usize, usize),
    #[error("invalid complex: {0}")]
    Invalid(ValidationReport),
}

/// A homology dimension together with its truncation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub degree: usize,
    pub dim: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    ChainOnly,
    Duchain,
    Mixed,
}

/// `b[n - 1] = b_n : X_n → X_{n-1}` for `1 <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub field: Field,
    pub dims: Vec<usize>,
    pub b: Vec<Matrix>,
    pub exact_through: usize,
}

impl ChainComplex {
    pub fn new(field: Field, dims: Vec<usize>, b: Vec<Matrix>) -> Result<ChainComplex, ComplexError> {
        if dims.is_empty() {
            return Err(ComplexError::Shape("no degrees".into()));
        }
        let top = dims.len() - 1;
        if b.len() != top {
            return Err(ComplexError::Shape(format!("expected {top} differentials, got {}", b.len())));
        }
        for (k, m) in b.iter().enumerate() {
            let n = k + 1;
            if m.rows() != dims[n - 1] || m.cols() != dims[n] {
                return Err(ComplexError::Shape(format!(
                    "b_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[n - 1],
                    dims[n]
                )));
            }
            if m.field() != field {
                return Err(ComplexError::Shape(format!("b_{n} over {}", m.field())));
            }
        }
        Ok(ChainComplex {
            field,
            dims,
            b,
            exact_through: top,
        })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn b(&self, n: usize) -> &Matrix {
        &self.b[n - 1]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        for n in 1..self.top() {
            r.check(self.b(n).mul(self.b(n + 1)).is_zero(), n + 1, "b∘b = 0");
        }
        r
    }

    pub fn homology(&self, n: usize) -> Result<Betti, ComplexError> {
        let top = self.top();
        if n > top {
            return Err(ComplexError::OutOfRange(n, top));
        }
        let ker = if n == 0 {
            self.dims[0]
        } else {
            self.dims[n] - self.b(n).rank()
        };
        let im = if n < top { self.b(n + 1).rank() } else { 0 };
        Ok(Betti {
            degree: n,
            dim: ker - im,
            truncated: n >= self.exact_through,
        })
    }

    pub fn betti_numbers(&self) -> Vec<Betti> {
        (0..=self.top()).map(|n| self.homology(n).unwrap()).collect()
    }
}

/// `(X, b, B)` with `big_b[n] = B_n : X_n → X_{n+1}` for `0 <= n < N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuchainComplex {
    pub chain: ChainComplex,
    pub big_b: Vec<Matrix>,
}

pub type MixedComplex = DuchainComplex;

impl DuchainComplex {
    pub fn new(field: Field, dims: Vec<usize>, b: Vec<Matrix>, big_b: Vec<Matrix>) -> Result<DuchainComplex, ComplexError> {
        let chain = ChainComplex::new(field, dims, b)?;
        let top = chain.top();
        if big_b.len() != top {
            return Err(ComplexError::Shape(format!("expected {top} B maps, got {}", big_b.len())));
        }
        for (n, m) in big_b.iter().enumerate() {
            if m.rows() != chain.dims[n + 1] || m.cols() != chain.dims[n] || m.field() != field {
                return Err(ComplexError::Shape(format!("B_{n} has the wrong shape")));
            }
        }
        Ok(DuchainComplex { chain, big_b })
    }

    pub fn with_exact_through(mut self, e: usize) -> DuchainComplex {
        self.chain.exact_through = e.min(self.top());
        self
    }

    pub fn field(&self) -> Field {
        self.chain.field
    }

    pub fn top(&self) -> usize {
        self.chain.top()
    }

    pub fn dims(&self) -> &[usize] {
        &self.chain.dims
    }

    pub fn exact_through(&self) -> usize {
        self.chain.exact_through
    }

    pub fn b(&self, n: usize) -> &Matrix {
        self.chain.b(n)
    }

    pub fn big_b(&self, n: usize) -> &Matrix {
        &self.big_b[n]
    }

    /// `b_{n+1} B_n + B_{n-1} b_n` using only the composites that exist.
    pub fn anticommutator(&self, n: usize) -> Matrix {
        let d = self.dims()[n];
        let mut m = Matrix::zero(self.field(), d, d);
        if n < self.top() {
            m = m.add(&self.b(n + 1).mul(self.big_b(n)));
        }
        if n >= 1 {
            m = m.add(&self.big_b(n - 1).mul(self.b(n)));
        }
        m
    }

    pub fn validate(&self, kind: ComplexKind) -> ValidationReport {
        let mut r = self.chain.validate();
        if kind == ComplexKind::ChainOnly {
            return r;
        }
        for n in 0..self.top().saturating_sub(1) {
            r.check(self.big_b(n + 1).mul(self.big_b(n)).is_zero(), n, "B∘B = 0");
        }
        if kind == ComplexKind::Mixed {
            for n in 0..self.top() {
                r.check(self.anticommutator(n).is_zero(), n, "bB + Bb = 0");
            }
        }
        r
    }

    pub fn homology(&self, n: usize) -> Result<Betti, ComplexError> {
        self.chain.homology(n)
    }
}

/// Connes' total complex `T_n = X_n ⊕ X_{n-2} ⊕ …` with differential `b + B`.
pub fn total_complex(m: &MixedComplex) -> ChainComplex {
    let top = m.top();
    let field = m.field();
    let dims_x = m.dims();
    let summands = |n: usize| -> Vec<usize> { (0..=n / 2).map(|i| n - 2 * i).collect() };
    let offsets = |n: usize| -> Vec<usize> {
        let mut o = Vec::new();
        let mut acc = 0;
        for k in summands(n) {
            o.push(acc);
            acc += dims_x[k];
        }
        o
    };
    let dims: Vec<usize> = (0..=top).map(|n| summands(n).iter().map(|&k| dims_x[k]).sum()).collect();
    let mut b = Vec::new();
    for n in 1..=top {
        let src_off = offsets(n);
        let tgt_off = offsets(n - 1);
        let mut trip = Vec::new();
        for (i, k) in summands(n).into_iter().enumerate() {
            if k >= 1 && i < tgt_off.len() {
                for (r, c, v) in m.b(k).entries() {
                    trip.push((tgt_off[i] + r, src_off[i] + c, v.clone()));
                }
            }
            if i >= 1 {
                for (r, c, v) in m.big_b(k).entries() {
                    trip.push((tgt_off[i - 1] + r, src_off[i] + c, v.clone()));
                }
            }
        }
        b.push(Matrix::from_triplets(field, dims[n - 1], dims[n], trip));
    }
    let mut t = ChainComplex::new(field, dims, b).expect("total complex shapes");
    t.exact_through = m.exact_through();
    t
}

pub fn hc(m: &MixedComplex, n: usize) -> Result<Betti, ComplexError> {
    total_complex(m).homology(n)
}

pub fn hc_all(m: &MixedComplex) -> Vec<Betti> {
    total_complex(m).betti_numbers()
}

/// `T_n = 1 − b_{n+1}B_n − B_{n−1}b_n` degreewise.
pub fn t_operator(d: &DuchainComplex) -> Vec<Matrix> {
    (0..=d.top())
        .map(|n| Matrix::identity(d.field(), d.dims()[n]).sub(&d.anticommutator(n)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct Mixedified {
    pub t: Vec<Matrix>,
    pub quotients: Vec<Quotient>,
    pub mixed: MixedComplex,
    pub report: ValidationReport,
}

/// Quotients a duchain complex by `im(1 − T)`.
///
/// The top degree uses the truncated `T_N`, so the result is exact only
/// through degree `N − 1`.
pub fn t_operator_and_mixedify(d: &DuchainComplex) -> Mixedified {
    let field = d.field();
    let top = d.top();
    let t = t_operator(d);
    let mut report = ValidationReport::new();
    for n in 1..=top {
        report.check(d.b(n).mul(&t[n]) == t[n - 1].mul(d.b(n)), n, "bT = Tb");
    }
    for n in 0..top {
        report.check(d.big_b(n).mul(&t[n]) == t[n + 1].mul(d.big_b(n)), n, "BT = TB");
    }
    let quotients: Vec<Quotient> = (0..=top).map(|n| Quotient::by_image(&d.anticommutator(n))).collect();
    let dims = quotients.iter().map(|q| q.dim()).collect();
    let b = (1..=top).map(|n| quotients[n].induced(d.b(n), &quotients[n - 1])).collect();
    let big_b = (0..top).map(|n| quotients[n].induced(d.big_b(n), &quotients[n + 1])).collect();
    let exact = d.exact_through().min(top.saturating_sub(1));
    let mixed = DuchainComplex::new(field, dims, b, big_b)
        .expect("quotient shapes")
        .with_exact_through(exact);
    report.extend(mixed.validate(ComplexKind::Mixed));
    Mixedified {
        t,
        quotients,
        mixed,
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(Q, rows)
    }

    #[test]
    fn zero_complex_is_mixed() {
        let z = DuchainComplex::new(
            Q,
            vec![2, 3],
            vec![Matrix::zero(Q, 2, 3)],
            vec![Matrix::zero(Q, 3, 2)],
        )
        .unwrap();
        assert!(z.validate(ComplexKind::Mixed).is_ok());
        assert_eq!(z.homology(0).unwrap().dim, 2);
    }

    #[test]
    fn nonmixed_detected_at_degree_zero() {
        let c = DuchainComplex::new(Q, vec![1, 1], vec![m(&[&[1]])], vec![m(&[&[1]])]).unwrap();
        let r = c.validate(ComplexKind::Mixed);
        assert_eq!(r.first_failing_degree(), Some(0));
        assert!(c.validate(ComplexKind::Duchain).is_ok());
    }

    #[test]
    fn homology_rank_bookkeeping() {
        let c = ChainComplex::new(Q, vec![1, 1, 1], vec![m(&[&[0]]), m(&[&[1]])]).unwrap();
        assert_eq!(c.homology(0).unwrap().dim, 1);
        assert_eq!(c.homology(1).unwrap().dim, 0);
        assert!(c.homology(2).unwrap().truncated);
        let exact = ChainComplex::new(Q, vec![1, 1], vec![m(&[&[1]])]).unwrap();
        assert_eq!(exact.homology(0).unwrap().dim, 0);
        assert!(c.homology(3).is_err());
    }

    #[test]
    fn total_complex_of_point() {
        let dims = vec![1, 0, 0, 0, 0];
        let b = (1..5).map(|n| Matrix::zero(Q, dims[n - 1], dims[n])).collect();
        let bb = (0..4).map(|n| Matrix::zero(Q, dims[n + 1], dims[n])).collect();
        let x = DuchainComplex::new(Q, dims, b, bb).unwrap();
        let t = total_complex(&x);
        assert_eq!(t.dims, vec![1, 0, 1, 0, 1]);
        let h: Vec<usize> = hc_all(&x).iter().map(|b| b.dim).collect();
        assert_eq!(&h[..4], &[1, 0, 1, 0]);
        assert!(hc_all(&x)[4].truncated);
    }

    #[test]
    fn mixedify_kills_degree_zero() {
        let c = DuchainComplex::new(Q, vec![1, 1], vec![m(&[&[1]])], vec![m(&[&[1]])]).unwrap();
        let out = t_operator_and_mixedify(&c);
        assert!(out.t[0].is_zero());
        assert_eq!(out.mixed.dims()[0], 0);
    }

    #[test]
    fn mixedify_of_mixed_is_identity() {
        let c = DuchainComplex::new(Q, vec![1, 1, 1], vec![m(&[&[0]]), m(&[&[1]])], vec![m(&[&[0]]), m(&[&[0]])]).unwrap();
        let out = t_operator_and_mixedify(&c);
        assert!(out.t.iter().all(|t| t.is_identity()));
        assert_eq!(out.mixed.dims(), c.dims());
        assert!(out.report.is_ok());
    }
}
