//! Truncated simplicial, duplicial and cyclic modules.
//!
//! Degrees run from `0` to a top degree `N`. Faces `d_i: X_n → X_{n-1}`
//! exist for `1 <= n <= N`, degeneracies `s_j: X_n → X_{n+1}` for
//! `n < N`, and an optional augmentation `X_0 → X_{-1}`.

use thiserror::Error;

use crate::complexes::{hc_all, t_operator_and_mixedify, Betti, ChainComplex, ComplexKind, DuchainComplex, MixedComplex};
use crate::linalg::{Matrix, Quotient};
use crate::report::ValidationReport;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(ValidationReport),
    #[error("nothing to shift at top degree 0")]
    TooShort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Simplicial,
    Duplicial,
    Cyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub dim: usize,
    pub map: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSimplicialModule {
    pub field: Field,
    pub dims: Vec<usize>,
    /// `faces[n][i] = d_i : X_n → X_{n-1}`; `faces[0]` is empty.
    pub faces: Vec<Vec<Matrix>>,
    /// `degens[n][j] = s_j : X_n → X_{n+1}`; `degens[N]` is empty.
    pub degens: Vec<Vec<Matrix>>,
    pub augmentation: Option<Augmentation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDuplicialModule {
    pub simplicial: TruncatedSimplicialModule,
    pub t: Vec<Matrix>,
}

fn shape(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<(), SimplicialError> {
    if m.rows() != rows || m.cols() != cols {
        return Err(SimplicialError::Shape(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

impl TruncatedSimplicialModule {
    pub fn new(
        field: Field,
        dims: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degens: Vec<Vec<Matrix>>,
        augmentation: Option<Augmentation>,
    ) -> Result<TruncatedSimplicialModule, SimplicialError> {
        if dims.is_empty() {
            return Err(SimplicialError::Shape("no degrees".into()));
        }
        let top = dims.len() - 1;
        if faces.len() != top + 1 || degens.len() != top + 1 {
            return Err(SimplicialError::Shape("face/degeneracy lists must cover 0..=N".into()));
        }
        for n in 0..=top {
            let nf = if n == 0 { 0 } else { n + 1 };
            let nd = if n == top { 0 } else { n + 1 };
            if faces[n].len() != nf || degens[n].len() != nd {
                return Err(SimplicialError::Shape(format!("wrong number of maps in degree {n}")));
            }
            for (i, d) in faces[n].iter().enumerate() {
                shape(d, dims[n - 1], dims[n], &format!("d_{i} in degree {n}"))?;
            }
            for (j, s) in degens[n].iter().enumerate() {
                shape(s, dims[n + 1], dims[n], &format!("s_{j} in degree {n}"))?;
            }
        }
        if let Some(a) = &augmentation {
            shape(&a.map, a.dim, dims[0], "augmentation")?;
        }
        Ok(TruncatedSimplicialModule {
            field,
            dims,
            faces,
            degens,
            augmentation,
        })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn d(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n][i]
    }

    pub fn s(&self, n: usize, j: usize) -> &Matrix {
        &self.degens[n][j]
    }

    pub fn id(&self, n: usize) -> Matrix {
        Matrix::identity(self.field, self.dims[n])
    }

    /// The augmentation, or the zero map to a zero space.
    pub fn epsilon(&self) -> Matrix {
        match &self.augmentation {
            Some(a) => a.map.clone(),
            None => Matrix::zero(self.field, 0, self.dims[0]),
        }
    }

    pub fn constant(field: Field, top: usize, augmented: bool) -> TruncatedSimplicialModule {
        Self::uniform(field, 1, top, augmented)
    }

    pub fn uniform(field: Field, dim: usize, top: usize, augmented: bool) -> TruncatedSimplicialModule {
        let id = Matrix::identity(field, dim);
        let faces = (0..=top).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect();
        let degens = (0..=top).map(|n| if n == top { vec![] } else { vec![id.clone(); n + 1] }).collect();
        let augmentation = augmented.then(|| Augmentation { dim, map: id.clone() });
        TruncatedSimplicialModule::new(field, vec![dim; top + 1], faces, degens, augmentation).unwrap()
    }

    pub fn zero(field: Field, top: usize) -> TruncatedSimplicialModule {
        Self::uniform(field, 0, top, false)
    }

    /// Moore differential `Σ (−1)^i d_i : X_n → X_{n−1}`.
    pub fn moore_b(&self, n: usize) -> Matrix {
        let mut b = Matrix::zero(self.field, self.dims[n - 1], self.dims[n]);
        for (i, d) in self.faces[n].iter().enumerate() {
            b = if i % 2 == 0 { b.add(d) } else { b.sub(d) };
        }
        b
    }

    pub fn moore_complex(&self) -> ChainComplex {
        ChainComplex::new(self.field, self.dims.clone(), (1..=self.top()).map(|n| self.moore_b(n)).collect()).unwrap()
    }

    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let top = self.top();
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    r.check(
                        self.d(n - 1, i).mul(self.d(n, j)) == self.d(n - 1, j - 1).mul(self.d(n, i)),
                        n,
                        format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                    );
                }
            }
        }
        for n in 0..top {
            for j in 0..=n {
                let s = self.s(n, j);
                for i in 0..=n + 1 {
                    let lhs = self.d(n + 1, i).mul(s);
                    let (ok, name) = if i < j {
                        (lhs == self.s(n - 1, j - 1).mul(self.d(n, i)), format!("d_{i} s_{j} = s_{} d_{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (lhs.is_identity(), format!("d_{i} s_{j} = 1"))
                    } else {
                        (lhs == self.s(n - 1, j).mul(self.d(n, i - 1)), format!("d_{i} s_{j} = s_{j} d_{}", i - 1))
                    };
                    r.check(ok, n, name);
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    r.check(
                        self.s(n + 1, i).mul(self.s(n, j)) == self.s(n + 1, j + 1).mul(self.s(n, i)),
                        n,
                        format!("s_{i} s_{j} = s_{} s_{i}", j + 1),
                    );
                }
            }
        }
        if self.augmentation.is_some() && top >= 1 {
            let e = self.epsilon();
            r.check(e.mul(self.d(1, 0)) == e.mul(self.d(1, 1)), 1, "ε d_0 = ε d_1");
        }
        r
    }

    pub fn opsimplicial(&self) -> TruncatedSimplicialModule {
        let faces = self
            .faces
            .iter()
            .map(|fs| fs.iter().rev().cloned().collect())
            .collect();
        let degens = self
            .degens
            .iter()
            .map(|ss| ss.iter().rev().cloned().collect())
            .collect();
        TruncatedSimplicialModule {
            field: self.field,
            dims: self.dims.clone(),
            faces,
            degens,
            augmentation: self.augmentation.clone(),
        }
    }

    /// Quotient by a family of subspaces, one per degree, with the
    /// induced structure maps; also reports any map that fails to descend.
    pub fn quotient(&self, qs: &[Quotient]) -> (TruncatedSimplicialModule, ValidationReport) {
        let mut r = ValidationReport::new();
        let top = self.top();
        let mut faces = vec![vec![]];
        for n in 1..=top {
            faces.push(
                (0..=n)
                    .map(|i| {
                        r.check(qs[n].descends(self.d(n, i), &qs[n - 1]), n, format!("d_{i} descends"));
                        qs[n].induced(self.d(n, i), &qs[n - 1])
                    })
                    .collect(),
            );
        }
        let mut degens = Vec::new();
        for n in 0..=top {
            if n == top {
                degens.push(vec![]);
                continue;
            }
            degens.push(
                (0..=n)
                    .map(|j| {
                        r.check(qs[n].descends(self.s(n, j), &qs[n + 1]), n, format!("s_{j} descends"));
                        qs[n].induced(self.s(n, j), &qs[n + 1])
                    })
                    .collect(),
            );
        }
        let augmentation = self.augmentation.as_ref().map(|a| {
            let triv = Quotient::trivial(self.field, a.dim);
            r.check(qs[0].descends(&a.map, &triv), 0, "ε descends");
            Augmentation {
                dim: a.dim,
                map: a.map.mul(&qs[0].section()),
            }
        });
        let dims = qs.iter().map(|q| q.dim()).collect();
        (
            TruncatedSimplicialModule::new(self.field, dims, faces, degens, augmentation).unwrap(),
            r,
        )
    }
}

impl TruncatedDuplicialModule {
    pub fn new(simplicial: TruncatedSimplicialModule, t: Vec<Matrix>) -> Result<TruncatedDuplicialModule, SimplicialError> {
        if t.len() != simplicial.dims.len() {
            return Err(SimplicialError::Shape("one t per degree required".into()));
        }
        for (n, m) in t.iter().enumerate() {
            shape(m, simplicial.dims[n], simplicial.dims[n], &format!("t in degree {n}"))?;
        }
        Ok(TruncatedDuplicialModule { simplicial, t })
    }

    pub fn constant(field: Field, top: usize, augmented: bool) -> TruncatedDuplicialModule {
        let s = TruncatedSimplicialModule::constant(field, top, augmented);
        let t = (0..=top).map(|_| Matrix::identity(field, 1)).collect();
        TruncatedDuplicialModule::new(s, t).unwrap()
    }

    pub fn zero(field: Field, top: usize) -> TruncatedDuplicialModule {
        let s = TruncatedSimplicialModule::zero(field, top);
        let t = (0..=top).map(|_| Matrix::zero(field, 0, 0)).collect();
        TruncatedDuplicialModule::new(s, t).unwrap()
    }

    pub fn field(&self) -> Field {
        self.simplicial.field
    }

    pub fn top(&self) -> usize {
        self.simplicial.top()
    }

    pub fn dims(&self) -> &[usize] {
        &self.simplicial.dims
    }

    pub fn d(&self, n: usize, i: usize) -> &Matrix {
        self.simplicial.d(n, i)
    }

    pub fn s(&self, n: usize, j: usize) -> &Matrix {
        self.simplicial.s(n, j)
    }

    pub fn t(&self, n: usize) -> &Matrix {
        &self.t[n]
    }

    /// `t̃ = (−1)^n t` in degree `n`.
    pub fn t_tilde(&self, n: usize) -> Matrix {
        if n % 2 == 0 {
            self.t[n].clone()
        } else {
            self.t[n].neg()
        }
    }

    /// Extra degeneracy `s_{−1} = t s_n : X_n → X_{n+1}`.
    pub fn s_minus_one(&self, n: usize) -> Matrix {
        self.t[n + 1].mul(self.s(n, n))
    }

    /// Norm operator `𝒩 = Σ_{i=0}^{n} t̃^i`.
    pub fn norm(&self, n: usize) -> Matrix {
        let tt = self.t_tilde(n);
        let mut p = Matrix::identity(self.field(), self.dims()[n]);
        let mut acc = p.clone();
        for _ in 0..n {
            p = tt.mul(&p);
            acc = acc.add(&p);
        }
        acc
    }

    /// Connes' operator `(1 − t̃) s_{−1} 𝒩 : X_n → X_{n+1}` on the full module.
    pub fn connes_b(&self, n: usize) -> Matrix {
        let one = Matrix::identity(self.field(), self.dims()[n + 1]);
        one.sub(&self.t_tilde(n + 1)).mul(&self.s_minus_one(n)).mul(&self.norm(n))
    }

    pub fn check_structure(&self, level: Level) -> ValidationReport {
        let x = &self.simplicial;
        let mut r = x.check();
        if level == Level::Simplicial {
            return r;
        }
        let top = self.top();
        for n in 1..=top {
            let t = &self.t[n];
            for i in 1..=n {
                r.check(
                    x.d(n, i).mul(t) == self.t[n - 1].mul(x.d(n, i - 1)),
                    n,
                    format!("d_{i} t = t d_{}", i - 1),
                );
            }
            r.check(x.d(n, 0).mul(t) == *x.d(n, n), n, "d_0 t = d_n");
        }
        if x.augmentation.is_some() {
            let e = x.epsilon();
            r.check(e.mul(&self.t[0]) == e, 0, "ε t = ε");
        }
        for n in 0..top {
            let t = &self.t[n];
            for j in 1..=n {
                r.check(
                    x.s(n, j).mul(t) == self.t[n + 1].mul(x.s(n, j - 1)),
                    n,
                    format!("s_{j} t = t s_{}", j - 1),
                );
            }
            let t2 = self.t[n + 1].mul(&self.t[n + 1]);
            r.check(x.s(n, 0).mul(t) == t2.mul(x.s(n, n)), n, "s_0 t = t² s_n");
        }
        if level == Level::Cyclic {
            for n in 0..=top {
                r.check(self.t[n].pow(n + 1).is_identity(), n, "t^{n+1} = 1");
            }
        }
        r
    }

    /// The lowest degree in which `t^{n+1} ≠ 1`.
    pub fn first_noncyclic_degree(&self) -> Option<usize> {
        (0..=self.top()).find(|&n| !self.t[n].pow(n + 1).is_identity())
    }

    pub fn quotient(&self, qs: &[Quotient]) -> (TruncatedDuplicialModule, ValidationReport) {
        let (s, mut r) = self.simplicial.quotient(qs);
        let t = (0..=self.top())
            .map(|n| {
                r.check(qs[n].descends(&self.t[n], &qs[n]), n, "t descends");
                qs[n].induced(&self.t[n], &qs[n])
            })
            .collect();
        (TruncatedDuplicialModule::new(s, t).unwrap(), r)
    }
}

/// Dold–Kan normalization together with the unnormalized Moore complex.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub moore: ChainComplex,
    pub normalized: ChainComplex,
    pub quotients: Vec<Quotient>,
}

/// `NX_n = X_n / Σ_j im s_j` with the induced alternating face sum.
pub fn dold_kan_normalize(x: &TruncatedSimplicialModule) -> Normalized {
    let quotients = degeneracy_quotients(x);
    let moore = x.moore_complex();
    let b = (1..=x.top())
        .map(|n| quotients[n].induced(moore.b(n), &quotients[n - 1]))
        .collect();
    let dims = quotients.iter().map(|q| q.dim()).collect();
    let normalized = ChainComplex::new(x.field, dims, b).unwrap();
    Normalized {
        moore,
        normalized,
        quotients,
    }
}

pub fn degeneracy_quotients(x: &TruncatedSimplicialModule) -> Vec<Quotient> {
    (0..=x.top())
        .map(|n| {
            if n == 0 {
                Quotient::trivial(x.field, x.dims[0])
            } else {
                let ss: Vec<&Matrix> = x.degens[n - 1].iter().collect();
                Quotient::by_images(x.field, x.dims[n], &ss)
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Duchain {
    pub complex: DuchainComplex,
    pub report: ValidationReport,
}

/// Pushes `(1 − t̃) s_{−1} 𝒩` to the normalized complex, cross-checked
/// against the induced map of `s_{−1} 𝒩`.
pub fn duplicial_to_duchain(x: &TruncatedDuplicialModule) -> Duchain {
    let nx = dold_kan_normalize(&x.simplicial);
    let q = &nx.quotients;
    let mut report = ValidationReport::new();
    let mut big_b = Vec::new();
    for n in 0..x.top() {
        let full = x.connes_b(n);
        let hat = x.s_minus_one(n).mul(&x.norm(n));
        let bn = q[n].induced(&full, &q[n + 1]);
        report.check(bn == q[n].induced(&hat, &q[n + 1]), n, "B = B̂ on NX");
        report.check(q[n].descends(&full, &q[n + 1]), n, "B descends to NX");
        big_b.push(bn);
    }
    let complex = DuchainComplex {
        chain: nx.normalized,
        big_b,
    };
    report.extend(complex.validate(ComplexKind::Duchain));
    Duchain { complex, report }
}

/// Codifferential `(−1)^n t s_n` induced on the normalized complex.
pub fn dwyer_kan(x: &TruncatedDuplicialModule) -> Duchain {
    let nx = dold_kan_normalize(&x.simplicial);
    let q = &nx.quotients;
    let mut report = ValidationReport::new();
    let mut big_b = Vec::new();
    for n in 0..x.top() {
        let mut m = x.s_minus_one(n);
        if n % 2 == 1 {
            m = m.neg();
        }
        report.check(q[n].descends(&m, &q[n + 1]), n, "t s_n descends to NX");
        big_b.push(q[n].induced(&m, &q[n + 1]));
    }
    let complex = DuchainComplex {
        chain: nx.normalized,
        big_b,
    };
    report.extend(complex.validate(ComplexKind::Duchain));
    Duchain { complex, report }
}

/// `(π_! X)_n = X_n / im(1 − t^{n+1})`.
pub fn pi_shriek(x: &TruncatedDuplicialModule) -> (TruncatedDuplicialModule, ValidationReport) {
    let qs: Vec<Quotient> = (0..=x.top())
        .map(|n| {
            let one = Matrix::identity(x.field(), x.dims()[n]);
            Quotient::by_image(&one.sub(&x.t[n].pow(n + 1)))
        })
        .collect();
    x.quotient(&qs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcRoute {
    ViaPiShriekK,
    ViaPF,
}

/// Normalized mixed complex of a cyclic module, with `B` computed on the
/// full module and then pushed to the normalized quotient.
pub fn cyclic_mixed_complex(y: &TruncatedDuplicialModule) -> (MixedComplex, ValidationReport) {
    let mut report = ValidationReport::new();
    let moore = y.simplicial.moore_complex();
    for n in 0..y.top() {
        let bb = y.connes_b(n);
        let mut ac = moore.b(n + 1).mul(&bb);
        if n >= 1 {
            ac = ac.add(&y.connes_b(n - 1).mul(moore.b(n)));
        }
        report.check(ac.is_zero(), n, "bB + Bb = 0 on the full module");
    }
    let d = duplicial_to_duchain(y);
    report.extend(d.report);
    report.extend(d.complex.validate(ComplexKind::Mixed));
    (d.complex, report)
}

#[derive(Debug, Clone)]
pub struct HcResult {
    pub betti: Vec<Betti>,
    pub report: ValidationReport,
}

pub fn hc_of_duplicial(x: &TruncatedDuplicialModule, route: HcRoute) -> HcResult {
    match route {
        HcRoute::ViaPiShriekK => {
            let (y, mut report) = pi_shriek(x);
            report.extend(y.check_structure(Level::Cyclic));
            let (m, r) = cyclic_mixed_complex(&y);
            report.extend(r);
            HcResult {
                betti: hc_all(&m),
                report,
            }
        }
        HcRoute::ViaPF => {
            let d = duplicial_to_duchain(x);
            let mut report = d.report;
            let mixed = t_operator_and_mixedify(&d.complex);
            report.extend(mixed.report);
            HcResult {
                betti: hc_all(&mixed.mixed),
                report,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A décalage comonad applied to `X`: the shifted module, its counit
/// (the discarded face) and comultiplication (the discarded degeneracy).
/// Index `k` of `counit`/`comult` is the shifted degree `k − 1`.
#[derive(Debug, Clone)]
pub struct Decalage {
    pub module: TruncatedSimplicialModule,
    pub counit: Vec<Matrix>,
    pub comult: Vec<Matrix>,
}

pub fn decalage(x: &TruncatedSimplicialModule, side: Side) -> Result<Decalage, SimplicialError> {
    let top = x.top();
    if top == 0 {
        return Err(SimplicialError::TooShort);
    }
    let off = match side {
        Side::Right => 0,
        Side::Left => 1,
    };
    let dims = x.dims[1..].to_vec();
    let faces = (0..top)
        .map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| x.d(n + 1, i + off).clone()).collect() })
        .collect();
    let degens = (0..top)
        .map(|n| if n + 1 == top { vec![] } else { (0..=n).map(|j| x.s(n + 1, j + off).clone()).collect() })
        .collect();
    let augmentation = Some(Augmentation {
        dim: x.dims[0],
        map: x.d(1, off).clone(),
    });
    let module = TruncatedSimplicialModule::new(x.field, dims, faces, degens, augmentation)?;
    let counit = (0..=top)
        .map(|k| match side {
            Side::Right if k == 0 => x.epsilon(),
            Side::Left if k == 0 => x.epsilon(),
            Side::Right => x.d(k, k).clone(),
            Side::Left => x.d(k, 0).clone(),
        })
        .collect();
    let comult = (0..top)
        .map(|k| match side {
            Side::Right => x.s(k, k).clone(),
            Side::Left => x.s(k, 0).clone(),
        })
        .collect();
    Ok(Decalage { module, counit, comult })
}

/// Whether `Dec^r Dec^l X` and `Dec^l Dec^r X` coincide.
pub fn decalages_commute(x: &TruncatedSimplicialModule) -> Result<bool, SimplicialError> {
    if x.top() < 2 {
        return Err(SimplicialError::TooShort);
    }
    let rl = decalage(&decalage(x, Side::Left)?.module, Side::Right)?;
    let lr = decalage(&decalage(x, Side::Right)?.module, Side::Left)?;
    Ok(rl.module == lr.module && rl.counit.len() == lr.counit.len())
}

/// Checks that `f` is a morphism of augmented modules `A → B`, where
/// `f[k]` sits over degree `k − 1`. Violations found at degree `n` of `A`
/// are reported at `n + 1`, the matching degree of the underlying `X`.
fn check_morphism(a: &TruncatedSimplicialModule, b: &TruncatedSimplicialModule, f: &[Matrix], name: &str, r: &mut ValidationReport) {
    let top = a.top().min(b.top()).min(f.len().saturating_sub(2));
    if f.len() >= 2 {
        r.check(b.epsilon().mul(&f[1]) == f[0].mul(&a.epsilon()), 1, format!("{name} commutes with ε"));
    }
    for n in 1..=top {
        for i in 0..=n {
            r.check(
                b.d(n, i).mul(&f[n + 1]) == f[n].mul(a.d(n, i)),
                n + 1,
                format!("{name} commutes with d_{i}"),
            );
        }
    }
    for n in 0..top {
        for j in 0..=n {
            r.check(
                b.s(n, j).mul(&f[n + 1]) == f[n + 2].mul(a.s(n, j)),
                n + 1,
                format!("{name} commutes with s_{j}"),
            );
        }
    }
}

/// Verifies that `t` is a coalgebra for the identity distributive law
/// between the décalage comonads. Reports use degrees of `X`.
pub fn decalage_coalgebra_report(x: &TruncatedDuplicialModule) -> ValidationReport {
    let mut r = ValidationReport::new();
    let xs = &x.simplicial;
    let top = x.top();
    if xs.augmentation.is_some() {
        let e = xs.epsilon();
        r.check(e.mul(&x.t[0]) == e, 0, "counit: ε t = ε");
    }
    if top == 0 {
        return r;
    }
    let dr = decalage(xs, Side::Right).unwrap();
    let dl = decalage(xs, Side::Left).unwrap();
    let mut base = xs.clone();
    if base.augmentation.is_none() {
        base.augmentation = Some(Augmentation {
            dim: 0,
            map: xs.epsilon(),
        });
    }
    for (dec, side, name) in [(&dr, Side::Right, "Dec^r"), (&dl, Side::Left, "Dec^l")] {
        for v in dec.module.check().violations {
            r.push(v.degree + 1, format!("{name}: {}", v.identity));
        }
        check_morphism(&dec.module, &base, &dec.counit, &format!("{name} counit"), &mut r);
        if top >= 2 {
            let dd = decalage(&dec.module, side).unwrap();
            check_morphism(&dec.module, &dd.module, &dec.comult, &format!("{name} comultiplication"), &mut r);
        }
        for k in 0..top {
            let inner = match side {
                Side::Right => xs.d(k + 1, k),
                Side::Left => xs.d(k + 1, 1),
            };
            r.check(inner.mul(&dec.comult[k]).is_identity(), k, format!("{name}: ε_Dec ∘ δ = 1"));
            r.check(dec.counit[k + 1].mul(&dec.comult[k]).is_identity(), k, format!("{name}: Dec(ε) ∘ δ = 1"));
        }
        for k in 0..top - 1 {
            let (outer, inner) = match side {
                Side::Right => (xs.s(k + 1, k + 1), xs.s(k + 1, k)),
                Side::Left => (xs.s(k + 1, 0), xs.s(k + 1, 1)),
            };
            r.check(outer.mul(&dec.comult[k]) == inner.mul(&dec.comult[k]), k, format!("{name}: coassociativity"));
        }
    }
    check_morphism(&dr.module, &dl.module, &x.t, "t: Dec^r → Dec^l", &mut r);
    for n in 1..=top {
        r.check(dl.counit[n].mul(&x.t[n]) == dr.counit[n], n, "counit: d_0 t = d_n");
    }
    for n in 0..top {
        let t2 = x.t[n + 1].mul(&x.t[n + 1]);
        r.check(
            dl.comult[n].mul(&x.t[n]) == t2.mul(&dr.comult[n]),
            n,
            "comultiplication: s_0 t = t² s_n",
        );
    }
    r
}

pub fn duplicial_equals_decalage_coalgebra(x: &TruncatedDuplicialModule) -> bool {
    decalage_coalgebra_report(x).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn constant_module_is_cyclic() {
        let x = TruncatedDuplicialModule::constant(Q, 4, true);
        assert!(x.check_structure(Level::Cyclic).is_ok());
        assert!(duplicial_equals_decalage_coalgebra(&x));
    }

    #[test]
    fn constant_normalizes_to_a_point() {
        let x = TruncatedSimplicialModule::constant(Q, 4, false);
        let nx = dold_kan_normalize(&x);
        assert_eq!(nx.normalized.dims, vec![1, 0, 0, 0, 0]);
        for n in 1..=4 {
            let expect = if n % 2 == 0 { 1 } else { 0 };
            assert_eq!(nx.moore.b(n), &Matrix::from_ints(Q, &[&[expect]]));
        }
    }

    #[test]
    fn constant_hc_both_routes() {
        let x = TruncatedDuplicialModule::constant(Q, 5, false);
        for route in [HcRoute::ViaPiShriekK, HcRoute::ViaPF] {
            let h = hc_of_duplicial(&x, route);
            assert!(h.report.is_ok(), "{}", h.report);
            let dims: Vec<usize> = h.betti.iter().take(4).map(|b| b.dim).collect();
            assert_eq!(dims, vec![1, 0, 1, 0]);
        }
    }

    #[test]
    fn corrupted_t_detected_at_same_degree() {
        let mut x = TruncatedDuplicialModule::constant(Q, 4, true);
        x.t[2] = Matrix::from_ints(Q, &[&[2]]);
        let direct = x.check_structure(Level::Duplicial);
        let dec = decalage_coalgebra_report(&x);
        assert!(!direct.is_ok() && !dec.is_ok());
        assert_eq!(direct.first_failing_degree(), dec.first_failing_degree());
    }

    #[test]
    fn decalage_shapes_and_commutation() {
        let x = TruncatedSimplicialModule::constant(Q, 3, true);
        let d = decalage(&x, Side::Right).unwrap();
        assert_eq!(d.module, TruncatedSimplicialModule::constant(Q, 2, true));
        assert!(decalages_commute(&x).unwrap());
        assert!(matches!(
            decalage(&TruncatedSimplicialModule::constant(Q, 0, true), Side::Left),
            Err(SimplicialError::TooShort)
        ));
    }

    #[test]
    fn opsimplicial_involution() {
        let x = TruncatedSimplicialModule::constant(Q, 3, false);
        assert_eq!(x.opsimplicial(), x);
        assert_eq!(x.opsimplicial().opsimplicial(), x);
    }

    #[test]
    fn zero_module() {
        let z = TruncatedDuplicialModule::zero(Q, 3);
        assert!(z.check_structure(Level::Cyclic).is_ok());
        assert!(duplicial_equals_decalage_coalgebra(&z));
        let (p, r) = pi_shriek(&z);
        assert!(r.is_ok());
        assert_eq!(p.dims(), &[0, 0, 0, 0]);
        let h = hc_of_duplicial(&z, HcRoute::ViaPF);
        assert!(h.betti.iter().all(|b| b.dim == 0));
    }

    #[test]
    fn dwyer_kan_squares_to_zero() {
        let x = TruncatedDuplicialModule::constant(Q, 4, false);
        assert!(dwyer_kan(&x).report.is_ok());
    }
}
