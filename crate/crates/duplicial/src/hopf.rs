//! Finite-dimensional bialgebras over a field: the Galois map, antipodes,
//! the Yetter–Drinfel'd braiding and the Hopf-cyclic duplicial module.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::engine::{ChiCoalgebra, ChiOpcoalgebra, Comonad, DistributiveLaw, Instance, LinearFunctor, Object};
use crate::linalg::{Matrix, Quotient, SparseVec};
use crate::report::ValidationReport;
use crate::scalar::{Field, Scalar};
use crate::simplicial::TruncatedDuplicialModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("not a Hopf algebra: the Galois map is singular")]
    NotHopf,
    #[error("invalid coefficients: {0}")]
    Coefficients(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bialgebra {
    pub algebra: Algebra,
    /// `Δ : H → H ⊗ H`.
    pub comult: Matrix,
    /// `ε : H → k` as a `1 × dim` matrix.
    pub counit: Matrix,
}

fn col(m: &Matrix, j: usize) -> SparseVec {
    m.column(j).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

fn unit_vec(field: Field, d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); d];
    v[i] = field.one();
    v
}

impl Bialgebra {
    pub fn new(algebra: Algebra, comult: Matrix, counit: Matrix) -> Result<Bialgebra, AlgebraError> {
        let d = algebra.dim();
        if comult.rows() != d * d || comult.cols() != d || counit.rows() != 1 || counit.cols() != d {
            return Err(AlgebraError::Malformed("comultiplication must be d²×d and counit 1×d".into()));
        }
        let b = Bialgebra { algebra, comult, counit };
        let r = b.validate();
        if !r.is_ok() {
            return Err(AlgebraError::Invalid(r));
        }
        Ok(b)
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn id(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = self.algebra.validate();
        let id = self.id();
        let (d, e) = (&self.comult, &self.counit);
        r.check(d.kronecker(&id).mul(d) == id.kronecker(d).mul(d), 0, "coassociativity");
        r.check(e.kronecker(&id).mul(d) == id && id.kronecker(e).mul(d) == id, 0, "counitality");
        let mu = self.algebra.mult_matrix();
        let n = self.dim();
        let swap = Matrix::from_triplets(self.field(), n * n, n * n, (0..n).flat_map(|i| (0..n).map(move |j| (j * n + i, i * n + j)))
            .map(|(a, b)| (a, b, self.field().one())));
        let mu2 = mu.kronecker(&mu).mul(&id.kronecker(&swap).kronecker(&id));
        r.check(d.mul(&mu) == mu2.mul(&d.kronecker(d)), 0, "Δ(gh) = Δ(g)Δ(h)");
        r.check(e.mul(&mu) == e.kronecker(e), 0, "ε(gh) = ε(g)ε(h)");
        let u = self.algebra.unit_matrix();
        r.check(d.mul(&u) == u.kronecker(&u), 0, "Δ(1) = 1 ⊗ 1");
        r.check(e.mul(&u).is_identity(), 0, "ε(1) = 1");
        r
    }

    /// Monoid bialgebra: basis elements grouplike.
    fn grouplike(algebra: Algebra) -> Bialgebra {
        let f = algebra.field;
        let n = algebra.dim();
        let comult = Matrix::from_triplets(f, n * n, n, (0..n).map(|i| (i * n + i, i, f.one())));
        let counit = Matrix::from_triplets(f, 1, n, (0..n).map(|i| (0, i, f.one())));
        Bialgebra::new(algebra, comult, counit).expect("monoid bialgebra")
    }

    pub fn ground(field: Field) -> Bialgebra {
        Bialgebra::grouplike(Algebra::ground(field))
    }

    pub fn cyclic_group(field: Field, n: usize) -> Bialgebra {
        Bialgebra::grouplike(Algebra::cyclic_group(field, n))
    }

    /// `k[{1, e}]` with `e² = e` grouplike.
    pub fn idempotent_monoid(field: Field) -> Bialgebra {
        Bialgebra::grouplike(Algebra::idempotent_monoid(field))
    }

    pub fn catalog() -> Vec<(&'static str, Bialgebra)> {
        let q = Field::Rational;
        vec![
            ("Q", Bialgebra::ground(q)),
            ("Q[C2]", Bialgebra::cyclic_group(q, 2)),
            ("Q[C3]", Bialgebra::cyclic_group(q, 3)),
            ("Q[{1,e}]", Bialgebra::idempotent_monoid(q)),
            ("F2[C2]", Bialgebra::cyclic_group(Field::Prime(2), 2)),
        ]
    }
}

/// `β(g ⊗ y) = g₍₁₎ ⊗ g₍₂₎ y`.
pub fn galois_map(h: &Bialgebra) -> Matrix {
    let id = h.id();
    let mu = h.algebra.mult_matrix();
    id.kronecker(&mu).mul(&h.comult.kronecker(&id))
}

/// `g ⊗ h ↦ g₍₁₎ h ⊗ g₍₂₎`.
pub fn yd_braiding(h: &Bialgebra) -> Matrix {
    let n = h.dim();
    let f = h.field();
    let id = h.id();
    let mu = h.algebra.mult_matrix();
    // g ⊗ h ↦ g₁ ⊗ g₂ ⊗ h ↦ g₁ ⊗ h ⊗ g₂ ↦ g₁h ⊗ g₂
    let swap = Matrix::from_triplets(f, n * n, n * n, (0..n).flat_map(|i| (0..n).map(move |j| (j * n + i, i * n + j, f.one()))));
    mu.kronecker(&id).mul(&id.kronecker(&swap)).mul(&h.comult.kronecker(&id))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfStructure {
    pub bialgebra: Bialgebra,
    pub antipode: Matrix,
    /// `h ↦ h₊ ⊗ h₋ = β⁻¹(h ⊗ 1)`.
    pub translation: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfVerdict {
    Hopf(HopfStructure),
    NotHopf,
}

pub fn is_hopf_and_antipode(h: &Bialgebra) -> HopfVerdict {
    let beta = galois_map(h);
    let Ok(inv) = beta.invert() else {
        return HopfVerdict::NotHopf;
    };
    let translation = inv.mul(&h.id().kronecker(&h.algebra.unit_matrix()));
    let antipode = h.counit.kronecker(&h.id()).mul(&translation);
    let s = HopfStructure {
        bialgebra: h.clone(),
        antipode,
        translation,
    };
    assert!(s.antipode_report().is_ok(), "antipode axioms fail for an invertible Galois map");
    HopfVerdict::Hopf(s)
}

/// Solves `m ∘ (S ⊗ id) ∘ Δ = η ε` as a linear system in the entries of `S`.
pub fn antipode_by_linear_system(h: &Bialgebra) -> Option<Matrix> {
    let n = h.dim();
    let f = h.field();
    // unknown S[a][b] at index a*n + b; equation per (output k, input g)
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let ue = h.algebra.unit_matrix().mul(&h.counit);
    let mut eqs: Vec<Vec<Scalar>> = vec![vec![f.zero(); n * n]; n * n];
    for g in 0..n {
        for (c, coef) in col(&h.comult, g) {
            let (g1, g2) = (c / n, c % n);
            for a in 0..n {
                for (k, p) in h.algebra.product(a, g2) {
                    let e = &mut eqs[k * n + g][a * n + g1];
                    *e = e.add(&coef.mul(p));
                }
            }
        }
    }
    for k in 0..n {
        for g in 0..n {
            rows.push(eqs[k * n + g].clone());
            rhs.push(ue.get(k, g));
        }
    }
    let mut aug: Vec<Vec<Scalar>> = rows.into_iter().zip(rhs).map(|(mut r, b)| {
        r.push(b.neg());
        r
    }).collect();
    let m = Matrix::from_dense(f, n * n, n * n + 1, std::mem::take(&mut aug)).ok()?;
    let ker = m.kernel();
    let sol = ker.iter().find(|v| !v[n * n].is_zero())?;
    let scale = sol[n * n].inv().ok()?;
    Some(Matrix::from_triplets(f, n, n, (0..n * n).map(|i| (i / n, i % n, sol[i].mul(&scale)))))
}

impl HopfStructure {
    pub fn bialgebra(&self) -> &Bialgebra {
        &self.bialgebra
    }

    pub fn antipode_report(&self) -> ValidationReport {
        let h = &self.bialgebra;
        let mut r = ValidationReport::new();
        let mu = h.algebra.mult_matrix();
        let id = h.id();
        let ue = h.algebra.unit_matrix().mul(&h.counit);
        r.check(mu.mul(&self.antipode.kronecker(&id)).mul(&h.comult) == ue, 0, "m(S ⊗ id)Δ = ηε");
        r.check(mu.mul(&id.kronecker(&self.antipode)).mul(&h.comult) == ue, 0, "m(id ⊗ S)Δ = ηε");
        r.check(galois_map(h).mul(&self.translation) == id.kronecker(&h.algebra.unit_matrix()), 0, "β(h₊ ⊗ h₋) = h ⊗ 1");
        r
    }

    /// The inverse braiding `a ⊗ b ↦ b₍₂₎ ⊗ S⁻¹(b₍₁₎) a`, checked on both sides.
    pub fn yd_braiding_inverse(&self) -> (Matrix, ValidationReport) {
        let h = &self.bialgebra;
        let n = h.dim();
        let f = h.field();
        let sinv = self.antipode.invert().expect("finite-dimensional antipode is bijective");
        let id = h.id();
        let mu = h.algebra.mult_matrix();
        // a ⊗ b ↦ a ⊗ b₁ ⊗ b₂ ↦ b₂ ⊗ S⁻¹(b₁) ⊗ a ↦ b₂ ⊗ S⁻¹(b₁)a
        let step1 = id.kronecker(&h.comult);
        let perm = Matrix::from_triplets(
            f,
            n * n * n,
            n * n * n,
            (0..n * n * n).map(|c| {
                let (a, b1, b2) = (c / (n * n), (c / n) % n, c % n);
                (b2 * n * n + b1 * n + a, c, f.one())
            }),
        );
        let inv = id.kronecker(&mu).mul(&id.kronecker(&sinv).kronecker(&id)).mul(&perm).mul(&step1);
        let c = yd_braiding(h);
        let mut r = ValidationReport::new();
        r.check(inv.mul(&c).is_identity(), 0, "c⁻¹ c = 1");
        r.check(c.mul(&inv).is_identity(), 0, "c c⁻¹ = 1");
        (inv, r)
    }

    fn trans(&self, h: usize) -> Vec<(usize, usize, Scalar)> {
        let n = self.bialgebra.dim();
        col(&self.translation, h).into_iter().map(|(c, s)| (c / n, c % n, s)).collect()
    }
}

/// The identities of a mixed distributive law of the monad `H ⊗ −` over the
/// comonad `H ⊗ −` for the braiding, on `X = k`.
pub fn braiding_law_report(h: &Bialgebra) -> ValidationReport {
    let id = h.id();
    let c = yd_braiding(h);
    let mu = h.algebra.mult_matrix();
    let u = h.algebra.unit_matrix();
    let mut r = ValidationReport::new();
    r.check(c.mul(&u.kronecker(&id)) == id.kronecker(&u), 0, "χ ∘ η = D η");
    r.check(
        c.mul(&mu.kronecker(&id)) == id.kronecker(&mu).mul(&c.kronecker(&id)).mul(&id.kronecker(&c)),
        0,
        "χ ∘ μ = D μ ∘ χ ∘ W χ",
    );
    r.check(h.counit.kronecker(&id).mul(&c) == id.kronecker(&h.counit), 0, "D-counit: ε ∘ χ = W ε");
    r.check(
        h.comult.kronecker(&id).mul(&c) == id.kronecker(&c).mul(&c.kronecker(&id)).mul(&id.kronecker(&h.comult)),
        0,
        "D-comult: δ ∘ χ = D χ ∘ χ ∘ W δ",
    );
    r
}

/// A right `H`-module and left `H`-comodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficients {
    pub dim: usize,
    /// `m ↦ m·h` per basis element `h` (right) or `h·m` (left).
    pub action: Vec<Matrix>,
    /// `m ↦ m₍₋₁₎ ⊗ m₍₀₎`.
    pub coaction: Matrix,
}

impl Coefficients {
    pub fn new(h: &Bialgebra, dim: usize, action: Vec<Matrix>, coaction: Matrix, right: bool) -> Result<Coefficients, HopfError> {
        if action.len() != h.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(HopfError::Coefficients(single("action matrices have the wrong shape")));
        }
        if coaction.rows() != h.dim() * dim || coaction.cols() != dim {
            return Err(HopfError::Coefficients(single("coaction has the wrong shape")));
        }
        let c = Coefficients { dim, action, coaction };
        let r = c.module_report(h, right);
        if !r.is_ok() {
            return Err(HopfError::Coefficients(r));
        }
        Ok(c)
    }

    /// `k` with `h` acting by `ε(h)` and coaction `m ↦ 1 ⊗ m`.
    pub fn trivial(h: &Bialgebra) -> Coefficients {
        let f = h.field();
        let action = (0..h.dim()).map(|i| Matrix::from_triplets(f, 1, 1, [(0, 0, h.counit.get(0, i))])).collect();
        Coefficients {
            dim: 1,
            action,
            coaction: h.algebra.unit_matrix(),
        }
    }

    /// `k` with `g^k` acting by `(−1)^k` on a cyclic group algebra.
    pub fn sign(h: &Bialgebra) -> Coefficients {
        let f = h.field();
        let action = (0..h.dim())
            .map(|i| Matrix::from_triplets(f, 1, 1, [(0, 0, f.from_i64(if i % 2 == 0 { 1 } else { -1 }))]))
            .collect();
        Coefficients {
            dim: 1,
            action,
            coaction: h.algebra.unit_matrix(),
        }
    }

    /// The same action with coaction `m ↦ x_g ⊗ m` for a grouplike basis element.
    pub fn with_grouplike_coaction(&self, h: &Bialgebra, g: usize) -> Coefficients {
        let f = h.field();
        let coaction = Matrix::from_triplets(f, h.dim() * self.dim, self.dim, (0..self.dim).map(|m| (g * self.dim + m, m, f.one())));
        Coefficients {
            dim: self.dim,
            action: self.action.clone(),
            coaction,
        }
    }

    fn action_of(&self, f: Field, v: &SparseVec) -> Matrix {
        v.iter().fold(Matrix::zero(f, self.dim, self.dim), |acc, (k, c)| acc.add(&self.action[*k].scale(c)))
    }

    /// Module and comodule axioms; `right` selects the side of the action.
    pub fn module_report(&self, h: &Bialgebra, right: bool) -> ValidationReport {
        let f = h.field();
        let n = h.dim();
        let mut r = ValidationReport::new();
        let id = Matrix::identity(f, self.dim);
        r.check(self.action_of(f, h.algebra.unit()) == id, 0, "unit acts trivially");
        for a in 0..n {
            for b in 0..n {
                let p = self.action_of(f, h.algebra.product(a, b));
                let q = if right { self.action[b].mul(&self.action[a]) } else { self.action[a].mul(&self.action[b]) };
                r.check(p == q, 0, format!("action is associative on ({}, {})", h.algebra.labels[a], h.algebra.labels[b]));
            }
        }
        let hid = Matrix::identity(f, n);
        let d = &self.coaction;
        r.check(h.comult.kronecker(&id).mul(d) == hid.kronecker(d).mul(d), 0, "coaction is coassociative");
        r.check(h.counit.kronecker(&id).mul(d) == id, 0, "coaction is counital");
        r
    }

    /// `(hn)₍₋₁₎ ⊗ (hn)₍₀₎ = h₊₍₁₎ n₍₋₁₎ h₋ ⊗ h₊₍₂₎ n₍₀₎` for a left module.
    pub fn yetter_drinfeld_report(&self, hs: &HopfStructure) -> ValidationReport {
        let h = &hs.bialgebra;
        let f = h.field();
        let n = h.dim();
        let mut r = ValidationReport::new();
        for g in 0..n {
            for x in 0..self.dim {
                let lhs = self.coaction.mul(&self.action[g]).column(x);
                let mut rhs = vec![f.zero(); n * self.dim];
                for (p, q, c) in hs.trans(g) {
                    for (pp, c1) in col(&h.comult, p) {
                        let (p1, p2) = (pp / n, pp % n);
                        for (kk, c2) in col(&self.coaction, x) {
                            let (k, x0) = (kk / self.dim, kk % self.dim);
                            let a = h.algebra.mul(&h.algebra.mul(&unit_vec(f, n, p1), &unit_vec(f, n, k)), &unit_vec(f, n, q));
                            let b = self.action[p2].column(x0);
                            let coef = c.mul(&c1).mul(&c2);
                            for (i, ai) in a.iter().enumerate() {
                                for (j, bj) in b.iter().enumerate() {
                                    if !ai.is_zero() && !bj.is_zero() {
                                        rhs[i * self.dim + j] = rhs[i * self.dim + j].add(&coef.mul(&ai.mul(bj)));
                                    }
                                }
                            }
                        }
                    }
                }
                r.check(lhs == rhs, 0, format!("Yetter–Drinfel'd condition on ({}, n{x})", h.algebra.labels[g]));
            }
        }
        r
    }
}

fn single(s: &str) -> ValidationReport {
    let mut r = ValidationReport::new();
    r.push(0, s);
    r
}

/// `m₍₀₎(n₍₋₁₎m₍₋₁₎)₊ ⊗ (n₍₋₁₎m₍₋₁₎)₋ n₍₀₎` on `M ⊗ N`.
pub fn stability_map(hs: &HopfStructure, m: &Coefficients, n: &Coefficients) -> Matrix {
    closed_form_t(hs, m, n, 0)
}

pub fn sayd_check(hs: &HopfStructure, m: &Coefficients, n: &Coefficients) -> bool {
    stability_map(hs, m, n).is_identity()
}

/// The closed-form cyclic operator on `M ⊗ H^{⊗k} ⊗ N`.
pub fn closed_form_t(hs: &HopfStructure, m: &Coefficients, nc: &Coefficients, k: usize) -> Matrix {
    let h = &hs.bialgebra;
    let f = h.field();
    let d = h.dim();
    let alg = &h.algebra;
    let dim = m.dim * d.pow(k as u32) * nc.dim;
    let mut trip = Vec::new();
    for c in 0..dim {
        let ni = c % nc.dim;
        let mut rest = c / nc.dim;
        let mut hs_in = vec![0; k];
        for i in (0..k).rev() {
            hs_in[i] = rest % d;
            rest /= d;
        }
        let mi = rest;
        // expand each h^i into h^i₊ ⊗ h^i₋
        let mut choices: Vec<(Scalar, Vec<usize>, Vec<usize>)> = vec![(f.one(), vec![], vec![])];
        for &x in &hs_in {
            let mut next = Vec::new();
            for (s, ps, qs) in &choices {
                for (p, q, c2) in hs.trans(x) {
                    let mut ps = ps.clone();
                    let mut qs = qs.clone();
                    ps.push(p);
                    qs.push(q);
                    next.push((s.mul(&c2), ps, qs));
                }
            }
            choices = next;
        }
        for (gm, cm) in col(&m.coaction, mi) {
            let (g, m0) = (gm / m.dim, gm % m.dim);
            for (kn, cn) in col(&nc.coaction, ni) {
                let (kk, n0) = (kn / nc.dim, kn % nc.dim);
                for (s, ps, qs) in &choices {
                    // P = n₋₁ h^k₋ ⋯ h^1₋ m₋₁
                    let mut prod = unit_vec(f, d, kk);
                    for q in qs.iter().rev() {
                        prod = alg.mul(&prod, &unit_vec(f, d, *q));
                    }
                    prod = alg.mul(&prod, &unit_vec(f, d, g));
                    let base = s.mul(&cm).mul(&cn);
                    for (pi, pc) in prod.iter().enumerate() {
                        if pc.is_zero() {
                            continue;
                        }
                        for (u, v, tc) in hs.trans(pi) {
                            let coef = base.mul(pc).mul(&tc);
                            let nvec = nc.action[v].column(n0);
                            let (mvec, hs_out) = if k == 0 {
                                (m.action[u].column(m0), vec![])
                            } else {
                                let mut out: Vec<usize> = ps[1..].to_vec();
                                out.push(u);
                                (m.action[ps[0]].column(m0), out)
                            };
                            let hidx = hs_out.iter().fold(0, |a, &x| a * d + x);
                            for (mo, mc) in mvec.iter().enumerate() {
                                if mc.is_zero() {
                                    continue;
                                }
                                for (no, ncf) in nvec.iter().enumerate() {
                                    if ncf.is_zero() {
                                        continue;
                                    }
                                    let row = (mo * d.pow(k as u32) + hidx) * nc.dim + no;
                                    trip.push((row, c, coef.mul(mc).mul(ncf)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Matrix::from_triplets(f, dim, dim, trip)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HLetter {
    /// `X ↦ X ⊗ H` with `(x ⊗ h)g = x ⊗ hg`.
    T,
    /// `X ↦ H ⊗ X` with `(h ⊗ x)g = g₋h ⊗ x g₊`.
    S,
}

/// A right `H`-module built from the coefficients by a word in `T`, `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HopfObj {
    pub word: Vec<HLetter>,
    dim: usize,
}

impl Object for HopfObj {
    fn dim(&self) -> usize {
        self.dim
    }
}

/// How the instance's opcoalgebra is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functor {
    /// `− ⊗_H N` for a Yetter–Drinfel'd module `N`.
    TensorYd,
    /// The forgetful functor, a `T`-opcoalgebra by `x ↦ x ⊗ 1`.
    Forgetful,
}

pub struct HCtx {
    pub hopf: HopfStructure,
    pub m: Coefficients,
    pub n: Coefficients,
    ra: Vec<Matrix>,
    la: Vec<Matrix>,
    acts: Mutex<HashMap<(HopfObj, usize), Arc<Matrix>>>,
    quots: Mutex<HashMap<HopfObj, Arc<(Matrix, Matrix)>>>,
}

impl HCtx {
    pub fn new(hopf: &HopfStructure, m: &Coefficients, n: &Coefficients) -> Arc<HCtx> {
        let a = &hopf.bialgebra.algebra;
        Arc::new(HCtx {
            hopf: hopf.clone(),
            m: m.clone(),
            n: n.clone(),
            ra: (0..a.dim()).map(|i| a.right_mult(i)).collect(),
            la: (0..a.dim()).map(|i| a.left_mult(i)).collect(),
            acts: Mutex::new(HashMap::new()),
            quots: Mutex::new(HashMap::new()),
        })
    }

    fn h(&self) -> &Bialgebra {
        &self.hopf.bialgebra
    }

    fn f(&self) -> Field {
        self.h().field()
    }

    fn d(&self) -> usize {
        self.h().dim()
    }

    pub fn base(&self) -> HopfObj {
        HopfObj {
            word: vec![],
            dim: self.m.dim,
        }
    }

    fn push(&self, x: &HopfObj, l: HLetter) -> HopfObj {
        let mut word = x.word.clone();
        word.push(l);
        HopfObj { word, dim: x.dim * self.d() }
    }

    fn inner(&self, x: &HopfObj) -> HopfObj {
        let mut word = x.word.clone();
        word.pop();
        HopfObj { word, dim: x.dim / self.d() }
    }

    /// Right action of the `g`-th basis element.
    pub fn act(&self, x: &HopfObj, g: usize) -> Arc<Matrix> {
        let key = (x.clone(), g);
        if let Some(m) = self.acts.lock().unwrap().get(&key) {
            return m.clone();
        }
        let f = self.f();
        let m = match x.word.last() {
            None => self.m.action[g].clone(),
            Some(HLetter::T) => Matrix::identity(f, self.inner(x).dim).kronecker(&self.ra[g]),
            Some(HLetter::S) => {
                let y = self.inner(x);
                self.hopf
                    .trans(g)
                    .into_iter()
                    .fold(Matrix::zero(f, x.dim, x.dim), |acc, (p, q, c)| {
                        acc.add(&self.la[q].kronecker(&self.act(&y, p)).scale(&c))
                    })
            }
        };
        let m = Arc::new(m);
        self.acts.lock().unwrap().insert(key, m.clone());
        m
    }

    /// `x ⊗ H → x`, `x ⊗ h ↦ x·h`.
    fn action_map(&self, x: &HopfObj) -> Matrix {
        let d = self.d();
        let acts: Vec<Arc<Matrix>> = (0..d).map(|g| self.act(x, g)).collect();
        Matrix::from_column_fn(self.f(), x.dim, x.dim * d, |c| col(&acts[c % d], c / d))
    }

    /// `H ⊗ N → N` for the left module `N`.
    fn n_action_map(&self) -> Matrix {
        let d = self.d();
        let nd = self.n.dim;
        Matrix::from_column_fn(self.f(), nd, d * nd, |c| col(&self.n.action[c / nd], c % nd))
    }

    /// `(π, ι)` presenting `x ⊗_H N` as a quotient of `x ⊗ N`.
    fn n_data(&self, x: &HopfObj) -> Arc<(Matrix, Matrix)> {
        if let Some(q) = self.quots.lock().unwrap().get(x) {
            return q.clone();
        }
        let f = self.f();
        let q = match x.word.last() {
            Some(HLetter::T) => {
                let p = self.inner(x);
                let idp = Matrix::identity(f, p.dim);
                let idn = Matrix::identity(f, self.n.dim);
                let u = self.h().algebra.unit_matrix();
                (idp.kronecker(&self.n_action_map()), idp.kronecker(&u).kronecker(&idn))
            }
            _ => {
                let idx = Matrix::identity(f, x.dim);
                let idn = Matrix::identity(f, self.n.dim);
                let rels: Vec<Matrix> = (0..self.d())
                    .map(|g| self.act(x, g).kronecker(&idn).sub(&idx.kronecker(&self.n.action[g])))
                    .collect();
                let refs: Vec<&Matrix> = rels.iter().collect();
                let q = Quotient::by_images(f, x.dim * self.n.dim, &refs);
                (q.projection(), q.section())
            }
        };
        let q = Arc::new(q);
        self.quots.lock().unwrap().insert(x.clone(), q.clone());
        q
    }

    /// `λ((h ⊗ x) ⊗ n) = x n₍₋₁₎₊ h₊ ⊗ h₋ n₍₋₁₎₋ n₍₀₎` in `x ⊗ N ≅ N T x`.
    fn lambda(&self, x: &HopfObj) -> Matrix {
        let f = self.f();
        let d = self.d();
        let nd = self.n.dim;
        let alg = &self.h().algebra;
        let sx = self.push(x, HLetter::S);
        let mut trip = Vec::new();
        for c in 0..d * x.dim * nd {
            let (hb, xi, ni) = (c / (x.dim * nd), (c / nd) % x.dim, c % nd);
            for (kn, c1) in col(&self.n.coaction, ni) {
                let (k, n0) = (kn / nd, kn % nd);
                for (p, q, c2) in self.hopf.trans(k) {
                    for (a, b, c3) in self.hopf.trans(hb) {
                        let coef = c1.mul(&c2).mul(&c3);
                        for (r, c4) in alg.product(p, a) {
                            let xv = col(&self.act(x, *r), xi);
                            for (s, c5) in alg.product(b, q) {
                                let nv = col(&self.n.action[*s], n0);
                                for (xo, xc) in &xv {
                                    for (no, nc) in &nv {
                                        trip.push((xo * nd + no, c, coef.mul(c4).mul(c5).mul(xc).mul(nc)));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let big = Matrix::from_triplets(f, x.dim * nd, d * x.dim * nd, trip);
        big.mul(&self.n_data(&sx).1)
    }

    /// `ρ(m ⊗ h) = h₋ m₍₋₁₎ ⊗ m₍₀₎ h₊`.
    pub fn rho(&self) -> Matrix {
        let f = self.f();
        let d = self.d();
        let md = self.m.dim;
        let alg = &self.h().algebra;
        let mut trip = Vec::new();
        for c in 0..md * d {
            let (mi, hb) = (c / d, c % d);
            for (gm, c1) in col(&self.m.coaction, mi) {
                let (g, m0) = (gm / md, gm % md);
                for (p, q, c2) in self.hopf.trans(hb) {
                    for (r, c3) in alg.product(q, g) {
                        for (mo, c4) in col(&self.m.action[p], m0) {
                            trip.push((r * md + mo, c, c1.mul(&c2).mul(c3).mul(&c4)));
                        }
                    }
                }
            }
        }
        Matrix::from_triplets(f, d * md, md * d, trip)
    }
}

pub struct HT(pub Arc<HCtx>);
pub struct HS(pub Arc<HCtx>);
pub struct TensorN(pub Arc<HCtx>);
pub struct Forget;

impl Comonad<HopfObj> for HT {
    fn obj(&self, x: &HopfObj) -> HopfObj {
        self.0.push(x, HLetter::T)
    }
    fn map(&self, _: &HopfObj, _: &HopfObj, f: &Matrix) -> Matrix {
        f.kronecker(&Matrix::identity(self.0.f(), self.0.d()))
    }
    fn counit(&self, x: &HopfObj) -> Matrix {
        self.0.action_map(x)
    }
    fn comult(&self, x: &HopfObj) -> Matrix {
        let f = self.0.f();
        let u = self.0.h().algebra.unit_matrix();
        Matrix::identity(f, x.dim).kronecker(&u).kronecker(&Matrix::identity(f, self.0.d()))
    }
}

impl Comonad<HopfObj> for HS {
    fn obj(&self, x: &HopfObj) -> HopfObj {
        self.0.push(x, HLetter::S)
    }
    fn map(&self, _: &HopfObj, _: &HopfObj, f: &Matrix) -> Matrix {
        Matrix::identity(self.0.f(), self.0.d()).kronecker(f)
    }
    fn counit(&self, x: &HopfObj) -> Matrix {
        self.0.h().counit.kronecker(&Matrix::identity(self.0.f(), x.dim))
    }
    fn comult(&self, x: &HopfObj) -> Matrix {
        self.0.h().comult.kronecker(&Matrix::identity(self.0.f(), x.dim))
    }
}

impl LinearFunctor<HopfObj> for TensorN {
    fn dim(&self, x: &HopfObj) -> usize {
        self.0.n_data(x).0.rows()
    }
    fn map(&self, x: &HopfObj, y: &HopfObj, f: &Matrix) -> Matrix {
        let idn = Matrix::identity(self.0.f(), self.0.n.dim);
        self.0.n_data(y).0.mul(&f.kronecker(&idn)).mul(&self.0.n_data(x).1)
    }
}

impl LinearFunctor<HopfObj> for Forget {
    fn dim(&self, x: &HopfObj) -> usize {
        x.dim
    }
    fn map(&self, _: &HopfObj, _: &HopfObj, f: &Matrix) -> Matrix {
        f.clone()
    }
}

/// `χ((c ⊗ x) ⊗ b) = b₋c ⊗ (x ⊗ b₊)`.
pub fn law(ctx: &Arc<HCtx>) -> DistributiveLaw<HopfObj> {
    let c = ctx.clone();
    DistributiveLaw {
        field: ctx.f(),
        t: Arc::new(HT(ctx.clone())),
        s: Arc::new(HS(ctx.clone())),
        chi: Arc::new(move |x: &HopfObj| {
            let f = c.f();
            let d = c.d();
            let alg = &c.h().algebra;
            let mut trip = Vec::new();
            for col_i in 0..d * x.dim * d {
                let (cc, xi, b) = (col_i / (x.dim * d), (col_i / d) % x.dim, col_i % d);
                for (p, q, c1) in c.hopf.trans(b) {
                    for (k, c2) in alg.product(q, cc) {
                        trip.push(((k * x.dim + xi) * d + p, col_i, c1.mul(c2)));
                    }
                }
            }
            Matrix::from_triplets(f, d * x.dim * d, d * x.dim * d, trip)
        }),
    }
}

/// The Hopf-cyclic instance on the coefficients `M` and `N` of the context.
pub fn instance(ctx: &Arc<HCtx>, functor: Functor) -> Instance<HopfObj> {
    let c = ctx.clone();
    let opcoalgebra = match functor {
        Functor::TensorYd => ChiOpcoalgebra {
            n: Arc::new(TensorN(ctx.clone())),
            lambda: Arc::new(move |x: &HopfObj| c.lambda(x)),
            t_opcoalgebra: None,
        },
        Functor::Forgetful => {
            let c2 = ctx.clone();
            ChiOpcoalgebra {
                n: Arc::new(Forget),
                lambda: Arc::new(move |x: &HopfObj| {
                    let f = c.f();
                    let u = c.h().algebra.unit_matrix();
                    Matrix::identity(f, x.dim).kronecker(&u).mul(&c.h().counit.kronecker(&Matrix::identity(f, x.dim)))
                }),
                t_opcoalgebra: Some(Arc::new(move |x: &HopfObj| {
                    Matrix::identity(c2.f(), x.dim).kronecker(&c2.h().algebra.unit_matrix())
                })),
            }
        }
    };
    Instance {
        law: law(ctx),
        coalgebra: ChiCoalgebra {
            m: ctx.base(),
            rho: ctx.rho(),
            s_coalgebra: None,
        },
        opcoalgebra,
    }
}

/// The engine-built module plus the comparison with the closed-form `t`.
pub fn hopf_cyclic_module(
    hs: &HopfStructure,
    m: &Coefficients,
    n: &Coefficients,
    top: usize,
) -> Result<(TruncatedDuplicialModule, ValidationReport), HopfError> {
    let h = &hs.bialgebra;
    let mut bad = m.module_report(h, true);
    bad.extend(n.module_report(h, false));
    bad.extend(n.yetter_drinfeld_report(hs));
    if !bad.is_ok() {
        return Err(HopfError::Coefficients(bad));
    }
    let ctx = HCtx::new(hs, m, n);
    let x = instance(&ctx, Functor::TensorYd).build_ct(top);
    let mut r = ValidationReport::new();
    for k in 0..=top {
        r.check(*x.t(k) == closed_form_t(hs, m, n, k), k, "engine t = closed-form t");
    }
    Ok((x, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Betti;
    use crate::engine::{build_all, HomotopySide, check_homotopy};
    use crate::simplicial::{hc_of_duplicial, HcRoute, Level};

    const Q: Field = Field::Rational;

    fn hopf(h: &Bialgebra) -> HopfStructure {
        match is_hopf_and_antipode(h) {
            HopfVerdict::Hopf(s) => s,
            HopfVerdict::NotHopf => panic!("expected Hopf"),
        }
    }

    #[test]
    fn catalog_bialgebras_are_valid() {
        for (_, h) in Bialgebra::catalog() {
            assert!(h.validate().is_ok());
        }
    }

    #[test]
    fn detection_agrees_with_linear_system() {
        for (name, h) in Bialgebra::catalog() {
            let by_beta = matches!(is_hopf_and_antipode(&h), HopfVerdict::Hopf(_));
            let by_system = antipode_by_linear_system(&h);
            assert_eq!(by_beta, by_system.is_some(), "{name}");
            if let (HopfVerdict::Hopf(s), Some(t)) = (is_hopf_and_antipode(&h), by_system) {
                assert_eq!(s.antipode, t, "{name}");
            }
        }
    }

    #[test]
    fn group_antipode_is_inverse_permutation() {
        let h = Bialgebra::cyclic_group(Q, 3);
        let s = hopf(&h);
        let expect = Matrix::from_ints(Q, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(s.antipode, expect);
        assert!(matches!(is_hopf_and_antipode(&Bialgebra::idempotent_monoid(Q)), HopfVerdict::NotHopf));
        assert!(galois_map(&Bialgebra::idempotent_monoid(Q)).rank() < 4);
    }

    #[test]
    fn braiding() {
        let h = Bialgebra::cyclic_group(Q, 2);
        let c = yd_braiding(&h);
        // g ⊗ 1 ↦ g ⊗ g
        assert_eq!(c.get(3, 2), Q.one());
        assert!(braiding_law_report(&h).is_ok());
        assert!(hopf(&h).yd_braiding_inverse().1.is_ok());
    }

    #[test]
    fn trivial_coefficients_cyclic() {
        for n in [2, 3] {
            let h = Bialgebra::cyclic_group(Q, n);
            let s = hopf(&h);
            let k = Coefficients::trivial(&h);
            assert!(sayd_check(&s, &k, &k));
            let ctx = HCtx::new(&s, &k, &k);
            let inst = instance(&ctx, Functor::TensorYd);
            assert!(inst.check(2).is_ok(), "{}", inst.check(2));
            let (ct, _cs, rl) = build_all(&inst, 3);
            assert!(rl.report.is_ok(), "{}", rl.report);
            assert!(crate::engine::Instance::<HopfObj>::is_cyclic_certificate(&rl));
            assert!(ct.check_structure(Level::Cyclic).is_ok());
            let (x, r) = hopf_cyclic_module(&s, &k, &k, 3).unwrap();
            assert!(r.is_ok(), "{r}");
            let hc = hc_of_duplicial(&x, HcRoute::ViaPiShriekK);
            let d: Vec<usize> = hc.betti.iter().filter(|b: &&Betti| !b.truncated).map(|b| b.dim).collect();
            assert_eq!(d, vec![1, 0, 1]);
        }
    }

    #[test]
    fn mutated_coaction_breaks_cyclicity() {
        let h = Bialgebra::cyclic_group(Q, 2);
        let s = hopf(&h);
        let k = Coefficients::trivial(&h);
        let sign = Coefficients::sign(&h);
        assert!(sayd_check(&s, &sign, &k));
        let bad = sign.with_grouplike_coaction(&h, 1);
        assert!(!sayd_check(&s, &bad, &k));
        let ctx = HCtx::new(&s, &bad, &k);
        let inst = instance(&ctx, Functor::TensorYd);
        assert!(inst.check(2).is_ok());
        let (_, _, rl) = build_all(&inst, 2);
        assert!(rl.report.is_ok(), "{}", rl.report);
        assert!(!crate::engine::Instance::<HopfObj>::is_cyclic_certificate(&rl));
    }

    #[test]
    fn forgetful_functor_contracts() {
        let h = Bialgebra::cyclic_group(Q, 2);
        let s = hopf(&h);
        let k = Coefficients::trivial(&h);
        let ctx = HCtx::new(&s, &k, &k);
        let inst = instance(&ctx, Functor::Forgetful);
        assert!(inst.check(2).is_ok(), "{}", inst.check(2));
        let (ct, cs, _) = build_all(&inst, 3);
        let h1 = inst.contracting_homotopy(3, HomotopySide::Functor, false).unwrap();
        assert!(check_homotopy(&ct, &h1).is_ok());
        let h2 = inst.contracting_homotopy(3, HomotopySide::Functor, true).unwrap();
        assert!(check_homotopy(&cs, &h2).is_ok());
    }

    #[test]
    fn modular_group_homology() {
        let f2 = Field::Prime(2);
        let h = Bialgebra::cyclic_group(f2, 2);
        let s = hopf(&h);
        let k = Coefficients::trivial(&h);
        let (x, r) = hopf_cyclic_module(&s, &k, &k, 4).unwrap();
        assert!(r.is_ok());
        let b = x.simplicial.moore_complex().betti_numbers();
        let d: Vec<usize> = b.iter().filter(|b| !b.truncated).map(|b| b.dim).collect();
        assert_eq!(d, vec![1, 1, 1, 1]);
    }
}
