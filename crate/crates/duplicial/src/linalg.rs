//! Exact sparse linear algebra: matrices, reduced row echelon forms,
//! kernels, inverses and quotient spaces.
//!
//! Tensor products use the left-factor-major convention: the basis vector
//! `e_i ⊗ e_j` of `U ⊗ V` has index `i * dim V + j`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sparse vector: sorted `(index, value)` pairs with no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sparse row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

fn axpy_sparse(acc: &mut Vec<Scalar>, touched: &mut Vec<usize>, mark: &mut [bool], c: &Scalar, v: &SparseVec) {
    for (j, x) in v {
        if !mark[*j] {
            mark[*j] = true;
            touched.push(*j);
        }
        acc[*j] = acc[*j].add(&c.mul(x));
    }
}

fn drain_sparse(acc: &mut [Scalar], touched: &mut Vec<usize>, mark: &mut [bool], zero: &Scalar) -> SparseVec {
    touched.sort_unstable();
    let mut out = Vec::with_capacity(touched.len());
    for &j in touched.iter() {
        mark[j] = false;
        let v = std::mem::replace(&mut acc[j], zero.clone());
        if !v.is_zero() {
            out.push((j, v));
        }
    }
    touched.clear();
    out
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix {
            field,
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    /// Sums duplicate entries.
    pub fn from_triplets<I>(field: Field, rows: usize, cols: usize, entries: I) -> Matrix
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut buckets: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i},{j}) outside {rows}x{cols}");
            assert_eq!(v.field(), field, "field mismatch in matrix entry");
            let e = buckets[i].entry(j).or_insert_with(|| field.zero());
            *e = e.add(&v);
        }
        let data = buckets
            .into_iter()
            .map(|b| b.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix { field, rows, cols, data }
    }

    /// Builds the matrix whose `j`-th column is `col(j)`.
    pub fn from_column_fn<F>(field: Field, rows: usize, cols: usize, mut col: F) -> Matrix
    where
        F: FnMut(usize) -> Vec<(usize, Scalar)>,
    {
        let mut trip = Vec::new();
        for j in 0..cols {
            for (i, v) in col(j) {
                trip.push((i, j, v));
            }
        }
        Matrix::from_triplets(field, rows, cols, trip)
    }

    pub fn from_dense(field: Field, rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Shape(format!("expected {rows}x{cols} entries")));
        }
        let mut trip = Vec::new();
        for (i, r) in entries.into_iter().enumerate() {
            for (j, v) in r.into_iter().enumerate() {
                if v.field() != field {
                    return Err(ScalarError::FieldMismatch(field, v.field()).into());
                }
                trip.push((i, j, v));
            }
        }
        Ok(Matrix::from_triplets(field, rows, cols, trip))
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let dense = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_dense(field, r, c, dense).expect("well-formed integer matrix")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn same_shape(&self, o: &Matrix) -> bool {
        self.rows == o.rows && self.cols == o.cols
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, o.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, o.rows, o.cols
        );
        assert_eq!(self.field, o.field, "field mismatch");
        let zero = self.field.zero();
        let mut acc = vec![zero.clone(); o.cols];
        let mut mark = vec![false; o.cols];
        let mut touched = Vec::new();
        let data = self
            .data
            .iter()
            .map(|r| {
                for (k, a) in r {
                    axpy_sparse(&mut acc, &mut touched, &mut mark, a, &o.data[*k]);
                }
                drain_sparse(&mut acc, &mut touched, &mut mark, &zero)
            })
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: o.cols,
            data,
        }
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(ScalarError::FieldMismatch(self.field, o.field).into());
        }
        Ok(self.mul(o))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .fold(self.field.zero(), |s, (j, a)| s.add(&a.mul(&v[*j])))
            })
            .collect()
    }

    fn combine(&self, o: &Matrix, c: &Scalar) -> Matrix {
        assert!(self.same_shape(o), "shape mismatch in addition");
        assert_eq!(self.field, o.field, "field mismatch");
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                        out.push(a[i].clone());
                        i += 1;
                    } else if i == a.len() || b[j].0 < a[i].0 {
                        out.push((b[j].0, c.mul(&b[j].1)));
                        j += 1;
                    } else {
                        let v = a[i].1.add(&c.mul(&b[j].1));
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.combine(o, &self.field.one())
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.combine(o, &self.field.one().neg())
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.one().neg())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        if c.is_zero() {
            return Matrix::zero(self.field, self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v.mul(c))).collect())
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            data[j].push((i, v.clone()));
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut out = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            out = self.mul(&out);
        }
        out
    }

    /// Left-factor-major Kronecker product.
    pub fn kronecker(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.field, o.field, "field mismatch");
        let mut data = Vec::with_capacity(self.rows * o.rows);
        for ra in &self.data {
            for rb in &o.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * o.cols + jb, a.mul(b)));
                    }
                }
                data.push(row);
            }
        }
        Matrix {
            field: self.field,
            rows: self.rows * o.rows,
            cols: self.cols * o.cols,
            data,
        }
    }

    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.field, o.field, "field mismatch");
        let mut data = self.data.clone();
        for r in &o.data {
            data.push(r.iter().map(|(j, v)| (j + self.cols, v.clone())).collect());
        }
        Matrix {
            field: self.field,
            rows: self.rows + o.rows,
            cols: self.cols + o.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let trip = self.entries().filter_map(|(i, j, v)| {
            (pos[j] != usize::MAX).then(|| (i, pos[j], v.clone()))
        });
        Matrix::from_triplets(self.field, self.rows, cols.len(), trip)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Stacks blocks `[a b]` horizontally.
    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.cols, v.clone())));
                r
            })
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols + o.cols,
            data,
        }
    }

    /// Stacks blocks vertically.
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.echelon().rank()
        } else {
            self.transpose().echelon().rank()
        }
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.echelon().kernel_basis()
    }

    pub fn invert(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let e = aug.echelon();
        if (0..n).any(|j| !e.is_pivot(j)) {
            return Err(LinalgError::NotInvertible);
        }
        let mut trip = Vec::new();
        for j in 0..n {
            for (c, v) in e.pivot_row(j).unwrap() {
                if *c >= n {
                    trip.push((j, c - n, v.clone()));
                }
            }
        }
        Ok(Matrix::from_triplets(self.field, n, n, trip))
    }

    /// Reduces every entry of a rational matrix modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<Matrix> {
        let f = Field::Prime(p);
        let mut trip = Vec::new();
        for (i, j, v) in self.entries() {
            trip.push((i, j, v.reduce_mod(p)?));
        }
        Some(Matrix::from_triplets(f, self.rows, self.cols, trip))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        if self.rows * self.cols <= 400 {
            for r in self.to_dense() {
                let s: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", s.join(", "))?;
            }
        } else {
            writeln!(f, "  ({} nonzeros)", self.nnz())?;
        }
        Ok(())
    }
}

pub fn rank_and_kernel(m: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    let e = m.echelon();
    (e.rank(), e.kernel_basis())
}

/// Incrementally maintained reduced row echelon form of a row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<SparseVec>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Echelon {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivot_of: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col].is_some()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_of[col].map(|r| &self.rows[r])
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Reduces `v` modulo the row space; the result has zeros at pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let zero = self.field.zero();
        let mut acc = vec![zero.clone(); self.width];
        let mut mark = vec![false; self.width];
        let mut touched = Vec::new();
        axpy_sparse(&mut acc, &mut touched, &mut mark, &self.field.one(), v);
        let mut k = 0;
        while k < touched.len() {
            let j = touched[k];
            k += 1;
            if let Some(r) = self.pivot_of[j] {
                if !acc[j].is_zero() {
                    let c = acc[j].neg();
                    axpy_sparse(&mut acc, &mut touched, &mut mark, &c, &self.rows[r]);
                }
            }
        }
        drain_sparse(&mut acc, &mut touched, &mut mark, &zero)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let r: SparseVec = r.into_iter().map(|(j, x)| (j, x.mul(&inv))).collect();
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |(c, _)| *c) {
                let c = row[k].1.neg();
                *row = merge_axpy(row, &c, &r);
            }
        }
        self.pivot_of[p] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![self.field.zero(); self.width];
                v[f] = self.field.one();
                for (p, r) in self.pivot_of.iter().enumerate() {
                    if let Some(r) = r {
                        let row = &self.rows[*r];
                        if let Ok(k) = row.binary_search_by_key(&f, |(c, _)| *c) {
                            v[p] = row[k].1.neg();
                        }
                    }
                }
                v
            })
            .collect()
    }

    pub fn basis(&self) -> Vec<&SparseVec> {
        self.pivots()
            .into_iter()
            .map(|c| self.pivot_row(c).unwrap())
            .collect()
    }
}

fn merge_axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A quotient `V / W` with `W` held in reduced echelon form; the
/// non-pivot coordinates index a basis of the quotient.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Echelon,
    free: Vec<usize>,
    index_of: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new(sub: Echelon) -> Quotient {
        let free = sub.free_columns();
        let mut index_of = vec![None; sub.width()];
        for (k, &f) in free.iter().enumerate() {
            index_of[f] = Some(k);
        }
        Quotient { sub, free, index_of }
    }

    /// Quotient by the column space of `m`.
    pub fn by_image(m: &Matrix) -> Quotient {
        Quotient::new(m.transpose().echelon())
    }

    pub fn by_images(field: Field, ambient: usize, ms: &[&Matrix]) -> Quotient {
        let mut e = Echelon::new(field, ambient);
        for m in ms {
            assert_eq!(m.rows(), ambient);
            for r in &m.transpose().data {
                e.insert(r.clone());
            }
        }
        Quotient::new(e)
    }

    pub fn trivial(field: Field, ambient: usize) -> Quotient {
        Quotient::new(Echelon::new(field, ambient))
    }

    pub fn ambient(&self) -> usize {
        self.sub.width()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn subspace(&self) -> &Echelon {
        &self.sub
    }

    pub fn complement(&self) -> &[usize] {
        &self.free
    }

    pub fn projection(&self) -> Matrix {
        let field = self.sub.field;
        let mut trip = Vec::new();
        for j in 0..self.ambient() {
            match (self.index_of[j], self.sub.pivot_row(j)) {
                (Some(k), _) => trip.push((k, j, field.one())),
                (None, Some(row)) => {
                    for (c, v) in row.iter().skip(1) {
                        let k = self.index_of[*c].expect("reduced row hits only free columns");
                        trip.push((k, j, v.neg()));
                    }
                }
                (None, None) => unreachable!(),
            }
        }
        Matrix::from_triplets(field, self.dim(), self.ambient(), trip)
    }

    pub fn section(&self) -> Matrix {
        let field = self.sub.field;
        Matrix::from_triplets(
            field,
            self.ambient(),
            self.dim(),
            self.free.iter().enumerate().map(|(k, &f)| (f, k, field.one())),
        )
    }

    /// Whether `f` maps this subspace into `tgt`'s subspace.
    pub fn descends(&self, f: &Matrix, tgt: &Quotient) -> bool {
        self.sub.basis().iter().all(|v| {
            let img = apply_sparse(f, v);
            tgt.sub.contains(&img)
        })
    }

    /// The map induced on quotients by `f: ambient(self) → ambient(tgt)`.
    pub fn induced(&self, f: &Matrix, tgt: &Quotient) -> Matrix {
        tgt.projection().mul(&f.mul(&self.section()))
    }
}

pub fn apply_sparse(m: &Matrix, v: &SparseVec) -> SparseVec {
    let t = Matrix::from_triplets(
        m.field(),
        m.cols(),
        1,
        v.iter().map(|(i, x)| (*i, 0, x.clone())),
    );
    let r = m.mul(&t);
    r.entries().map(|(i, _, x)| (i, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn identity_and_zero_kernels() {
        let (r, k) = rank_and_kernel(&Matrix::identity(Q, 3));
        assert_eq!((r, k.len()), (3, 0));
        let (r, k) = rank_and_kernel(&Matrix::zero(Q, 2, 3));
        assert_eq!((r, k.len()), (0, 3));
    }

    #[test]
    fn rank_one_kernel() {
        let m = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![Q.from_i64(-2), Q.from_i64(1)]]);
        let mp = m.reduce_mod(1_000_000_007).unwrap();
        assert_eq!(mp.rank(), 1);
    }

    #[test]
    fn inverses() {
        let i = Matrix::identity(Q, 2);
        assert_eq!(i.invert().unwrap(), i);
        let s = Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(s.invert().unwrap(), s);
        let u = Matrix::from_ints(Q, &[&[1, 1], &[0, 1]]);
        let ui = u.invert().unwrap();
        assert_eq!(ui, Matrix::from_ints(Q, &[&[1, -1], &[0, 1]]));
        assert!(u.mul(&ui).is_identity());
        let sing = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.invert(), Err(LinalgError::NotInvertible));
        assert!(matches!(Matrix::zero(Q, 1, 2).invert(), Err(LinalgError::NotSquare(1, 2))));
    }

    #[test]
    fn kronecker_and_sum() {
        assert_eq!(
            Matrix::identity(Q, 2).kronecker(&Matrix::identity(Q, 3)),
            Matrix::identity(Q, 6)
        );
        assert_eq!(
            Matrix::identity(Q, 1).direct_sum(&Matrix::identity(Q, 2)),
            Matrix::identity(Q, 3)
        );
        let k = Matrix::from_ints(Q, &[&[2]]).kronecker(&Matrix::from_ints(Q, &[&[0, 1], &[1, 0]]));
        assert_eq!(k, Matrix::from_ints(Q, &[&[0, 2], &[2, 0]]));
    }

    #[test]
    fn quotient_projection() {
        let w = Matrix::from_ints(Q, &[&[1], &[1], &[0]]);
        let q = Quotient::by_image(&w);
        assert_eq!(q.dim(), 2);
        let p = q.projection();
        assert!(p.mul(&w).is_zero());
        assert!(p.mul(&q.section()).is_identity());
    }

    #[test]
    fn mixed_fields_rejected() {
        let r = Matrix::from_dense(Q, 1, 2, vec![vec![Q.one(), Field::Prime(3).one()]]);
        assert!(matches!(r, Err(LinalgError::Scalar(ScalarError::FieldMismatch(..)))));
    }
}
