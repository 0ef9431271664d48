//! Duplicial modules from a distributive law `χ: TS → ST` of linear
//! comonads, a χ-coalgebra `(M, ρ)` and a χ-opcoalgebra `(N, λ)`.
//!
//! Comonads are given concretely: an object map, an action on matrices,
//! and counit/comultiplication matrices per object. Every law check
//! quantifies over the tracked objects `T^a S^b M` and `S^b T^a M` with
//! `a + b` bounded by the requested depth.

use std::fmt::Debug;
use std::sync::Arc;

use crate::linalg::Matrix;
use crate::report::ValidationReport;
use crate::scalar::Field;
use crate::simplicial::{Augmentation, Level, TruncatedDuplicialModule, TruncatedSimplicialModule};

pub trait Object: Clone + PartialEq + Debug {
    fn dim(&self) -> usize;
}

impl Object for usize {
    fn dim(&self) -> usize {
        *self
    }
}

pub trait Comonad<O: Object>: Send + Sync {
    fn obj(&self, x: &O) -> O;
    /// `T f : T x → T y` for `f : x → y`.
    fn map(&self, x: &O, y: &O, f: &Matrix) -> Matrix;
    /// `ε_x : T x → x`.
    fn counit(&self, x: &O) -> Matrix;
    /// `δ_x : T x → T T x`.
    fn comult(&self, x: &O) -> Matrix;
}

/// A linear functor from objects to finite-dimensional spaces.
pub trait LinearFunctor<O: Object>: Send + Sync {
    fn dim(&self, x: &O) -> usize;
    fn map(&self, x: &O, y: &O, f: &Matrix) -> Matrix;
}

pub type ObjMatrix<O> = Arc<dyn Fn(&O) -> Matrix + Send + Sync>;

#[derive(Clone)]
pub struct DistributiveLaw<O: Object> {
    pub field: Field,
    pub t: Arc<dyn Comonad<O>>,
    pub s: Arc<dyn Comonad<O>>,
    /// `χ_x : T S x → S T x`.
    pub chi: ObjMatrix<O>,
}

#[derive(Clone, Debug)]
pub struct ChiCoalgebra<O: Object> {
    pub m: O,
    /// `ρ : T M → S M`.
    pub rho: Matrix,
    /// `∇ : M → S M` when `ρ = ∇ ∘ ε^T` for an `S`-coalgebra structure.
    pub s_coalgebra: Option<Matrix>,
}

#[derive(Clone)]
pub struct ChiOpcoalgebra<O: Object> {
    pub n: Arc<dyn LinearFunctor<O>>,
    /// `λ_x : N S x → N T x`.
    pub lambda: ObjMatrix<O>,
    /// `∇_x : N x → N T x` when `N` is a `T`-opcoalgebra with `λ = ∇ ∘ N ε^S`.
    pub t_opcoalgebra: Option<ObjMatrix<O>>,
}

/// A 1-cell `(Σ, σ, γ)` acting on χ-coalgebras.
#[derive(Clone)]
pub struct OneCell<O: Object> {
    pub sigma_obj: Arc<dyn Fn(&O) -> O + Send + Sync>,
    pub sigma_map: Arc<dyn Fn(&O, &O, &Matrix) -> Matrix + Send + Sync>,
    /// `σ_x : T Σ x → Σ T x`.
    pub sigma: ObjMatrix<O>,
    /// `γ_x : Σ S x → S Σ x`.
    pub gamma: ObjMatrix<O>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiShape {
    /// `χ^n : T^n S → S T^n`.
    TnS,
    /// `γ^n : T S^n → S^n T`.
    TSn,
}

/// Distributive law, coalgebra and opcoalgebra: everything the construction needs.
#[derive(Clone)]
pub struct Instance<O: Object> {
    pub law: DistributiveLaw<O>,
    pub coalgebra: ChiCoalgebra<O>,
    pub opcoalgebra: ChiOpcoalgebra<O>,
}

#[derive(Debug, Clone)]
pub struct RL {
    pub r: Vec<Matrix>,
    pub l: Vec<Matrix>,
    pub report: ValidationReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomotopySide {
    /// From a `T`-opcoalgebra structure on `N`.
    Functor,
    /// From an `S`-coalgebra structure on `M`.
    Coefficient,
}

#[derive(Debug, Clone)]
pub struct Homotopy {
    /// `h[k]` sits over degree `k − 1`: `h[0] : X_{−1} → X_0`.
    pub h: Vec<Matrix>,
}

impl<O: Object> DistributiveLaw<O> {
    pub fn tp(&self, k: usize, x: &O) -> O {
        (0..k).fold(x.clone(), |y, _| self.t.obj(&y))
    }

    pub fn sp(&self, k: usize, x: &O) -> O {
        (0..k).fold(x.clone(), |y, _| self.s.obj(&y))
    }

    /// `T^k f`.
    pub fn t_pow_map(&self, k: usize, x: &O, y: &O, f: &Matrix) -> Matrix {
        let (mut x, mut y, mut f) = (x.clone(), y.clone(), f.clone());
        for _ in 0..k {
            f = self.t.map(&x, &y, &f);
            x = self.t.obj(&x);
            y = self.t.obj(&y);
        }
        f
    }

    /// `S^k f`.
    pub fn s_pow_map(&self, k: usize, x: &O, y: &O, f: &Matrix) -> Matrix {
        let (mut x, mut y, mut f) = (x.clone(), y.clone(), f.clone());
        for _ in 0..k {
            f = self.s.map(&x, &y, &f);
            x = self.s.obj(&x);
            y = self.s.obj(&y);
        }
        f
    }

    pub fn id(&self, x: &O) -> Matrix {
        Matrix::identity(self.field, x.dim())
    }

    /// `χ^n_x : T^n S x → S T^n x` by `χ^{n+1} = χ_{T^n} ∘ T χ^n`.
    pub fn chi_pow(&self, n: usize, x: &O) -> Matrix {
        if n == 0 {
            return self.id(&self.s.obj(x));
        }
        let prev = self.chi_pow(n - 1, x);
        let src = self.tp(n - 1, &self.s.obj(x));
        let tgt = self.s.obj(&self.tp(n - 1, x));
        (self.chi)(&self.tp(n - 1, x)).mul(&self.t.map(&src, &tgt, &prev))
    }

    /// `χ^n_x` by the alternate recursion `χ^{n+1} = χ^n_T ∘ T^n χ`.
    pub fn chi_pow_alt(&self, n: usize, x: &O) -> Matrix {
        if n == 0 {
            return self.id(&self.s.obj(x));
        }
        let tx = self.t.obj(x);
        let inner = self.t_pow_map(n - 1, &self.t.obj(&self.s.obj(x)), &self.s.obj(&tx), &(self.chi)(x));
        self.chi_pow_alt(n - 1, &tx).mul(&inner)
    }

    /// `γ^n_x : T S^n x → S^n T x` by `γ^{n+1} = S γ^n ∘ χ_{S^n}`.
    pub fn gamma_pow(&self, n: usize, x: &O) -> Matrix {
        if n == 0 {
            return self.id(&self.t.obj(x));
        }
        let prev = self.gamma_pow(n - 1, x);
        let src = self.t.obj(&self.sp(n - 1, x));
        let tgt = self.sp(n - 1, &self.t.obj(x));
        self.s.map(&src, &tgt, &prev).mul(&(self.chi)(&self.sp(n - 1, x)))
    }

    /// `γ^n_x` by the alternate recursion `γ^{n+1} = S^n χ ∘ γ^n_S`.
    pub fn gamma_pow_alt(&self, n: usize, x: &O) -> Matrix {
        if n == 0 {
            return self.id(&self.t.obj(x));
        }
        let sx = self.s.obj(x);
        let outer = self.s_pow_map(n - 1, &self.t.obj(&sx), &self.s.obj(&self.t.obj(x)), &(self.chi)(x));
        outer.mul(&self.gamma_pow_alt(n - 1, &sx))
    }

    pub fn iterate_chi(&self, n: usize, x: &O, shape: ChiShape) -> (Matrix, bool) {
        match shape {
            ChiShape::TnS => {
                let a = self.chi_pow(n, x);
                let ok = a == self.chi_pow_alt(n, x);
                (a, ok)
            }
            ChiShape::TSn => {
                let a = self.gamma_pow(n, x);
                let ok = a == self.gamma_pow_alt(n, x);
                (a, ok)
            }
        }
    }

    /// Objects `T^a S^b x` and `S^b T^a x` with `a + b <= depth`.
    pub fn tracked(&self, x: &O, depth: usize) -> Vec<O> {
        let mut out: Vec<O> = Vec::new();
        for a in 0..=depth {
            for b in 0..=depth - a {
                for o in [self.tp(a, &self.sp(b, x)), self.sp(b, &self.tp(a, x))] {
                    if !out.contains(&o) {
                        out.push(o);
                    }
                }
            }
        }
        out
    }

    /// Comonad laws for `T` and `S` and the four distributive-law diagrams.
    pub fn check(&self, objects: &[O]) -> ValidationReport {
        let mut r = ValidationReport::new();
        for (k, x) in objects.iter().enumerate() {
            for (name, c) in [("T", &self.t), ("S", &self.s)] {
                let cx = c.obj(x);
                let d = c.comult(x);
                let e_outer = c.counit(&cx);
                let e_inner = c.map(&cx, x, &c.counit(x));
                r.check(e_outer.mul(&d).is_identity(), k, format!("{name}: ε_{name} ∘ δ = 1"));
                r.check(e_inner.mul(&d).is_identity(), k, format!("{name}: {name}ε ∘ δ = 1"));
                let ccx = c.obj(&cx);
                let lhs = c.comult(&cx).mul(&d);
                let rhs = c.map(&cx, &ccx, &d).mul(&d);
                r.check(lhs == rhs, k, format!("{name}: coassociativity"));
            }
            let sx = self.s.obj(x);
            let tx = self.t.obj(x);
            let chi = (self.chi)(x);
            r.check(
                self.s.counit(&tx).mul(&chi) == self.t.map(&sx, x, &self.s.counit(x)),
                k,
                "χ: ε^S_T ∘ χ = T ε^S",
            );
            r.check(
                self.s.map(&tx, x, &self.t.counit(x)).mul(&chi) == self.t.counit(&sx),
                k,
                "χ: S ε^T ∘ χ = ε^T_S",
            );
            let ttx = self.t.obj(&tx);
            let lhs = self.s.map(&tx, &ttx, &self.t.comult(x)).mul(&chi);
            let tsx = self.t.obj(&sx);
            let stx = self.s.obj(&tx);
            let rhs = (self.chi)(&tx)
                .mul(&self.t.map(&tsx, &stx, &chi))
                .mul(&self.t.comult(&sx));
            r.check(lhs == rhs, k, "χ: S δ^T ∘ χ = χ_T ∘ T χ ∘ δ^T_S");
            let ssx = self.s.obj(&sx);
            let lhs = self.s.comult(&tx).mul(&chi);
            let rhs = self
                .s
                .map(&self.t.obj(&sx), &stx, &chi)
                .mul(&(self.chi)(&sx))
                .mul(&self.t.map(&sx, &ssx, &self.s.comult(x)));
            r.check(lhs == rhs, k, "χ: δ^S_T ∘ χ = S χ ∘ χ_S ∘ T δ^S");
        }
        r
    }
}

impl<O: Object> Instance<O> {
    pub fn field(&self) -> Field {
        self.law.field
    }

    fn m(&self) -> &O {
        &self.coalgebra.m
    }

    fn nmap(&self, x: &O, y: &O, f: &Matrix) -> Matrix {
        self.opcoalgebra.n.map(x, y, f)
    }

    fn ndim(&self, x: &O) -> usize {
        self.opcoalgebra.n.dim(x)
    }

    fn lambda(&self, x: &O) -> Matrix {
        (self.opcoalgebra.lambda)(x)
    }

    /// Every precondition: comonad and distributive-law diagrams, the
    /// coalgebra and opcoalgebra axioms, on objects up to `depth`.
    pub fn check(&self, depth: usize) -> ValidationReport {
        let law = &self.law;
        let m = self.m();
        let objs = law.tracked(m, depth);
        let mut r = law.check(&objs);
        let rho = &self.coalgebra.rho;
        let tm = law.t.obj(m);
        let sm = law.s.obj(m);
        r.check(law.s.counit(m).mul(rho) == law.t.counit(m), 0, "coalgebra: ε^S ∘ ρ = ε^T");
        let lhs = law.s.comult(m).mul(rho);
        let rhs = law
            .s
            .map(&tm, &sm, rho)
            .mul(&(law.chi)(m))
            .mul(&law.t.map(&tm, &sm, rho))
            .mul(&law.t.comult(m));
        r.check(lhs == rhs, 0, "coalgebra: δ^S ∘ ρ = S ρ ∘ χ ∘ T ρ ∘ δ^T");
        if let Some(nabla) = &self.coalgebra.s_coalgebra {
            r.check(law.s.counit(m).mul(nabla).is_identity(), 0, "S-coalgebra: ε ∘ ∇ = 1");
            r.check(
                law.s.comult(m).mul(nabla) == law.s.map(m, &sm, nabla).mul(nabla),
                0,
                "S-coalgebra: δ ∘ ∇ = S∇ ∘ ∇",
            );
            r.check(nabla.mul(&law.t.counit(m)) == *rho, 0, "ρ = ∇ ∘ ε^T");
        }
        for (k, x) in objs.iter().enumerate() {
            let sx = law.s.obj(x);
            let tx = law.t.obj(x);
            let lam = self.lambda(x);
            r.check(
                self.nmap(&tx, x, &law.t.counit(x)).mul(&lam) == self.nmap(&sx, x, &law.s.counit(x)),
                k,
                "opcoalgebra: N ε^T ∘ λ = N ε^S",
            );
            let ssx = law.s.obj(&sx);
            let ttx = law.t.obj(&tx);
            let lhs = self.nmap(&tx, &ttx, &law.t.comult(x)).mul(&lam);
            let rhs = self
                .lambda(&tx)
                .mul(&self.nmap(&law.t.obj(&sx), &law.s.obj(&tx), &(law.chi)(x)))
                .mul(&self.lambda(&sx))
                .mul(&self.nmap(&sx, &ssx, &law.s.comult(x)));
            r.check(lhs == rhs, k, "opcoalgebra: N δ^T ∘ λ = λ_T ∘ N χ ∘ λ_S ∘ N δ^S");
            if let Some(nabla) = &self.opcoalgebra.t_opcoalgebra {
                let nab = nabla(x);
                r.check(
                    self.nmap(&tx, x, &law.t.counit(x)).mul(&nab).is_identity(),
                    k,
                    "T-opcoalgebra: N ε ∘ ∇ = 1",
                );
                r.check(
                    self.nmap(&tx, &ttx, &law.t.comult(x)).mul(&nab) == nabla(&tx).mul(&nab),
                    k,
                    "T-opcoalgebra: N δ ∘ ∇ = ∇_T ∘ ∇",
                );
                r.check(
                    nab.mul(&self.nmap(&sx, x, &law.s.counit(x))) == lam,
                    k,
                    "λ = ∇ ∘ N ε^S",
                );
            }
        }
        r
    }

    /// `C_T(N, M)`: `X_n = N T^{n+1} M`, augmented by `N ε_M`.
    pub fn build_ct(&self, top: usize) -> TruncatedDuplicialModule {
        let s = bar_resolution(&self.law, &*self.opcoalgebra.n, self.m(), top);
        let t = (0..=top).map(|n| self.t_t(n)).collect();
        TruncatedDuplicialModule::new(s, t).expect("bar shapes")
    }

    /// `t_T = λ_{T^n M} ∘ N χ^n_M ∘ N T^n ρ`.
    pub fn t_t(&self, n: usize) -> Matrix {
        let law = &self.law;
        let m = self.m();
        let tm = law.t.obj(m);
        let sm = law.s.obj(m);
        let a = law.t_pow_map(n, &tm, &sm, &self.coalgebra.rho);
        let src = law.tp(n + 1, m);
        let mid = law.tp(n, &sm);
        let tnm = law.tp(n, m);
        let b = law.chi_pow(n, m);
        self.lambda(&tnm)
            .mul(&self.nmap(&mid, &law.s.obj(&tnm), &b))
            .mul(&self.nmap(&src, &mid, &a))
    }

    /// `C*_S(N, M)`: `X_n = N S^{n+1} M`, augmented by `N ε_M`.
    pub fn build_cs_star(&self, top: usize) -> TruncatedDuplicialModule {
        let law = &self.law;
        let m = self.m();
        let x = |n: usize| law.sp(n + 1, m);
        let dims: Vec<usize> = (0..=top).map(|n| self.ndim(&x(n))).collect();
        let mut faces = vec![vec![]];
        for n in 1..=top {
            faces.push(
                (0..=n)
                    .map(|i| {
                        let inner = law.sp(i, m);
                        let e = law.s.counit(&inner);
                        let f = law.s_pow_map(n - i, &law.s.obj(&inner), &inner, &e);
                        self.nmap(&x(n), &x(n - 1), &f)
                    })
                    .collect(),
            );
        }
        let degens = (0..=top)
            .map(|n| {
                if n == top {
                    return vec![];
                }
                (0..=n)
                    .map(|j| {
                        let inner = law.sp(j, m);
                        let d = law.s.comult(&inner);
                        let si = law.s.obj(&inner);
                        let f = law.s_pow_map(n - j, &si, &law.s.obj(&si), &d);
                        self.nmap(&x(n), &x(n + 1), &f)
                    })
                    .collect()
            })
            .collect();
        let augmentation = Some(Augmentation {
            dim: self.ndim(m),
            map: self.nmap(&law.s.obj(m), m, &law.s.counit(m)),
        });
        let s = TruncatedSimplicialModule::new(self.field(), dims, faces, degens, augmentation).expect("opbar shapes");
        let t = (0..=top).map(|n| self.t_s(n)).collect();
        TruncatedDuplicialModule::new(s, t).expect("opbar shapes")
    }

    /// `t_S = N S^n ρ ∘ N γ^n_M ∘ λ_{S^n M}`.
    pub fn t_s(&self, n: usize) -> Matrix {
        let law = &self.law;
        let m = self.m();
        let snm = law.sp(n, m);
        let tsn = law.t.obj(&snm);
        let sntm = law.sp(n, &law.t.obj(m));
        let lam = self.lambda(&snm);
        let g = self.nmap(&tsn, &sntm, &law.gamma_pow(n, m));
        let rho = law.s_pow_map(n, &law.t.obj(m), &law.s.obj(m), &self.coalgebra.rho);
        self.nmap(&sntm, &law.sp(n + 1, m), &rho).mul(&g).mul(&lam)
    }

    /// `ρ_n : T^{n+1} M → S^{n+1} M` as the vertical composite of the
    /// `ρ_{i,n} = S^i χ^{n−i}_M ∘ S^i T^{n−i} ρ`.
    pub fn rho_n(&self, n: usize) -> Matrix {
        let law = &self.law;
        let m = self.m();
        let mut acc = law.id(&law.tp(n + 1, m));
        for i in 0..=n {
            let k = n - i;
            let tm = law.t.obj(m);
            let sm = law.s.obj(m);
            let g = law
                .chi_pow(k, m)
                .mul(&law.t_pow_map(k, &tm, &sm, &self.coalgebra.rho));
            let src = law.tp(k + 1, m);
            let tgt = law.s.obj(&law.tp(k, m));
            acc = law.s_pow_map(i, &src, &tgt, &g).mul(&acc);
        }
        acc
    }

    /// Both recursive factorizations of `ρ_n`.
    pub fn rho_n_recursive(&self, n: usize) -> (Matrix, Matrix) {
        let law = &self.law;
        let m = self.m();
        let rho = &self.coalgebra.rho;
        if n == 0 {
            return (rho.clone(), rho.clone());
        }
        let (prev_a, prev_b) = self.rho_n_recursive(n - 1);
        let tm = law.t.obj(m);
        let sm = law.s.obj(m);
        let tn = law.tp(n, m);
        let sn = law.sp(n, m);
        let a = law
            .s
            .map(&tn, &sn, &prev_a)
            .mul(&law.chi_pow(n, m))
            .mul(&law.t_pow_map(n, &tm, &sm, rho));
        let b = law
            .s_pow_map(n, &tm, &sm, rho)
            .mul(&law.gamma_pow(n, m))
            .mul(&law.t.map(&tn, &sn, &prev_b));
        (a, b)
    }

    /// `λ_n : N S^{n+1} x → N T^{n+1} x` as the composite of the
    /// `λ_{i,n} = λ_{T^{n−i} S^i} ∘ N χ^{n−i}_{S^i}`.
    pub fn lambda_n(&self, n: usize, x: &O) -> Matrix {
        let law = &self.law;
        let mut acc = Matrix::identity(self.field(), self.ndim(&law.sp(n + 1, x)));
        for i in (0..=n).rev() {
            let k = n - i;
            let si = law.sp(i, x);
            let src = law.tp(k, &law.s.obj(&si));
            let tk = law.tp(k, &si);
            let mid = law.s.obj(&tk);
            let step = self.lambda(&tk).mul(&self.nmap(&src, &mid, &law.chi_pow(k, &si)));
            acc = step.mul(&acc);
        }
        acc
    }

    /// Both recursive factorizations of `λ_n` at `x`.
    pub fn lambda_n_recursive(&self, n: usize, x: &O) -> (Matrix, Matrix) {
        let law = &self.law;
        if n == 0 {
            let l = self.lambda(x);
            return (l.clone(), l);
        }
        let sx = law.s.obj(x);
        let tx = law.t.obj(x);
        let a = {
            let prev = self.lambda_n_recursive(n - 1, &sx).0;
            let tn = law.tp(n, x);
            self.lambda(&tn)
                .mul(&self.nmap(&law.tp(n, &sx), &law.s.obj(&tn), &law.chi_pow(n, x)))
                .mul(&prev)
        };
        let b = {
            let prev = self.lambda_n_recursive(n - 1, &tx).1;
            let sn = law.sp(n, x);
            prev.mul(&self.nmap(&law.t.obj(&sn), &law.sp(n, &tx), &law.gamma_pow(n, x)))
                .mul(&self.lambda(&sn))
        };
        (a, b)
    }

    /// `R_n = N ρ_n` and `L_n = λ_n M`, with every morphism and
    /// cyclicity identity asserted against the two modules.
    pub fn build_r_l(&self, ct: &TruncatedDuplicialModule, cs: &TruncatedDuplicialModule) -> RL {
        let law = &self.law;
        let m = self.m();
        let top = ct.top();
        let mut report = ValidationReport::new();
        let mut r = Vec::new();
        let mut l = Vec::new();
        for n in 0..=top {
            let rho = self.rho_n(n);
            let (ra, rb) = self.rho_n_recursive(n);
            report.check(rho == ra, n, "ρ_n = S ρ_{n−1} ∘ χ^n ∘ T^n ρ");
            report.check(rho == rb, n, "ρ_n = S^n ρ ∘ γ^n ∘ T ρ_{n−1}");
            let lam = self.lambda_n(n, m);
            let (la, lb) = self.lambda_n_recursive(n, m);
            report.check(lam == la, n, "λ_n = λ_{T^n} ∘ N χ^n ∘ (λ_{n−1})_S");
            report.check(lam == lb, n, "λ_n = (λ_{n−1})_T ∘ N γ^n ∘ λ_{S^n}");
            r.push(self.nmap(&law.tp(n + 1, m), &law.sp(n + 1, m), &rho));
            l.push(lam);
        }
        for n in 0..=top {
            report.check(l[n].mul(&r[n]) == ct.t(n).pow(n + 1), n, "L R = t_T^{n+1}");
            report.check(r[n].mul(&l[n]) == cs.t(n).pow(n + 1), n, "R L = t_S^{n+1}");
            report.check(r[n].mul(ct.t(n)) == cs.t(n).mul(&r[n]), n, "R t = t R");
            report.check(l[n].mul(cs.t(n)) == ct.t(n).mul(&l[n]), n, "L t = t L");
            if n >= 1 {
                for i in 0..=n {
                    report.check(r[n - 1].mul(ct.d(n, i)) == cs.d(n, i).mul(&r[n]), n, format!("R d_{i} = d_{i} R"));
                    report.check(l[n - 1].mul(cs.d(n, i)) == ct.d(n, i).mul(&l[n]), n, format!("L d_{i} = d_{i} L"));
                }
            }
            if n < top {
                for j in 0..=n {
                    report.check(r[n + 1].mul(ct.s(n, j)) == cs.s(n, j).mul(&r[n]), n, format!("R s_{j} = s_{j} R"));
                    report.check(l[n + 1].mul(cs.s(n, j)) == ct.s(n, j).mul(&l[n]), n, format!("L s_{j} = s_{j} L"));
                }
            }
        }
        RL { r, l, report }
    }

    /// Whether `L R = 1` in every degree up to `top`.
    pub fn is_cyclic_certificate(rl: &RL) -> bool {
        rl.l.iter().zip(&rl.r).all(|(l, r)| l.mul(r).is_identity())
    }

    /// Contracting homotopy of `C*_S` (`on_cs = true`) or `C_T`.
    pub fn contracting_homotopy(&self, top: usize, side: HomotopySide, on_cs: bool) -> Option<Homotopy> {
        let law = &self.law;
        let m = self.m();
        let mut h = Vec::new();
        for k in 0..=top {
            // h[k] : X_{k−1} → X_k, where X_{−1} = N M
            let hk = match (side, on_cs) {
                (HomotopySide::Functor, false) => {
                    let nab = self.opcoalgebra.t_opcoalgebra.as_ref()?;
                    nab(&law.tp(k, m))
                }
                (HomotopySide::Functor, true) => {
                    let nab = self.opcoalgebra.t_opcoalgebra.as_ref()?;
                    let sk = law.sp(k, m);
                    let tm = law.t.obj(m);
                    let sktm = law.sp(k, &tm);
                    let rho = law.s_pow_map(k, &tm, &law.s.obj(m), &self.coalgebra.rho);
                    self.nmap(&sktm, &law.sp(k + 1, m), &rho)
                        .mul(&self.nmap(&law.t.obj(&sk), &sktm, &law.gamma_pow(k, m)))
                        .mul(&nab(&sk))
                }
                (HomotopySide::Coefficient, true) => {
                    let nab = self.coalgebra.s_coalgebra.as_ref()?;
                    let f = law.s_pow_map(k, m, &law.s.obj(m), nab);
                    self.nmap(&law.sp(k, m), &law.sp(k + 1, m), &f)
                }
                (HomotopySide::Coefficient, false) => {
                    let nab = self.coalgebra.s_coalgebra.as_ref()?;
                    let sm = law.s.obj(m);
                    let tk = law.tp(k, m);
                    let a = law.t_pow_map(k, m, &sm, nab);
                    let tks = law.tp(k, &sm);
                    let stk = law.s.obj(&tk);
                    self.lambda(&tk)
                        .mul(&self.nmap(&tks, &stk, &law.chi_pow(k, m)))
                        .mul(&self.nmap(&tk, &tks, &a))
                }
            };
            h.push(hk);
        }
        Some(Homotopy { h })
    }

    /// Applies a 1-cell to the coalgebra: `ρ' = γ_M ∘ Σ ρ ∘ σ_M` on `Σ M`.
    pub fn twist(&self, cell: &OneCell<O>) -> Instance<O> {
        let law = &self.law;
        let m = self.m();
        let tm = law.t.obj(m);
        let sm = law.s.obj(m);
        let rho = (cell.gamma)(m)
            .mul(&(cell.sigma_map)(&tm, &sm, &self.coalgebra.rho))
            .mul(&(cell.sigma)(m));
        Instance {
            law: self.law.clone(),
            coalgebra: ChiCoalgebra {
                m: (cell.sigma_obj)(m),
                rho,
                s_coalgebra: None,
            },
            opcoalgebra: self.opcoalgebra.clone(),
        }
    }
}

/// `h_{n−1} b_n + b_{n+1} h_n = 1` on `X_n` for `0 <= n < top`, with the
/// augmentation as `b_0`, plus `ε h_{−1} = 1`.
pub fn check_homotopy(x: &TruncatedDuplicialModule, h: &Homotopy) -> ValidationReport {
    let xs = &x.simplicial;
    let mut r = ValidationReport::new();
    let e = xs.epsilon();
    r.check(e.mul(&h.h[0]).is_identity(), 0, "ε h = 1");
    for n in 0..x.top() {
        let lower = if n == 0 { h.h[0].mul(&e) } else { h.h[n].mul(&xs.moore_b(n)) };
        let upper = xs.moore_b(n + 1).mul(&h.h[n + 1]);
        r.check(lower.add(&upper).is_identity(), n, "h b + b h = 1");
    }
    r
}

/// The Yang–Baxter hexagon `S σ ∘ χ_Σ ∘ T γ = γ_T ∘ Σ χ ∘ σ_S` and the
/// comonad (op)morphism conditions for `(Σ, σ)` and `(Σ, γ)`.
pub fn check_one_cell<O: Object>(law: &DistributiveLaw<O>, cell: &OneCell<O>, objects: &[O]) -> ValidationReport {
    let mut r = ValidationReport::new();
    let so = |x: &O| (cell.sigma_obj)(x);
    let sm = |x: &O, y: &O, f: &Matrix| (cell.sigma_map)(x, y, f);
    for (k, x) in objects.iter().enumerate() {
        let (t, s) = (&law.t, &law.s);
        let sx = s.obj(x);
        let tx = t.obj(x);
        let lhs = s
            .map(&t.obj(&so(x)), &so(&tx), &(cell.sigma)(x))
            .mul(&(law.chi)(&so(x)))
            .mul(&t.map(&so(&sx), &s.obj(&so(x)), &(cell.gamma)(x)));
        let rhs = (cell.gamma)(&tx)
            .mul(&sm(&t.obj(&sx), &s.obj(&tx), &(law.chi)(x)))
            .mul(&(cell.sigma)(&sx));
        r.check(lhs == rhs, k, "Yang–Baxter: Sσ ∘ χΣ ∘ Tγ = γT ∘ Σχ ∘ σS");
        let sig = (cell.sigma)(x);
        r.check(
            sm(&tx, x, &t.counit(x)).mul(&sig) == t.counit(&so(x)),
            k,
            "σ: Σ ε ∘ σ = ε_Σ",
        );
        let ttx = t.obj(&tx);
        let lhs = sm(&tx, &ttx, &t.comult(x)).mul(&sig);
        let rhs = (cell.sigma)(&tx)
            .mul(&t.map(&t.obj(&so(x)), &so(&tx), &sig))
            .mul(&t.comult(&so(x)));
        r.check(lhs == rhs, k, "σ: Σ δ ∘ σ = σ_T ∘ T σ ∘ δ_Σ");
        let gam = (cell.gamma)(x);
        r.check(
            s.counit(&so(x)).mul(&gam) == sm(&sx, x, &s.counit(x)),
            k,
            "γ: ε_Σ ∘ γ = Σ ε",
        );
        let ssx = s.obj(&sx);
        let lhs = s.comult(&so(x)).mul(&gam);
        let rhs = s
            .map(&so(&sx), &s.obj(&so(x)), &gam)
            .mul(&(cell.gamma)(&sx))
            .mul(&sm(&sx, &ssx, &s.comult(x)));
        r.check(lhs == rhs, k, "γ: δ_Σ ∘ γ = S γ ∘ γ_S ∘ Σ δ");
    }
    r
}

/// The simplicial part of `C_T(N, M)`, which needs no coalgebra structure on `M`.
pub fn bar_resolution<O: Object>(law: &DistributiveLaw<O>, n_functor: &dyn LinearFunctor<O>, m: &O, top: usize) -> TruncatedSimplicialModule {
    let x = |n: usize| law.tp(n + 1, m);
    let dims: Vec<usize> = (0..=top).map(|n| n_functor.dim(&x(n))).collect();
    let mut faces = vec![vec![]];
    for n in 1..=top {
        faces.push(
            (0..=n)
                .map(|i| {
                    let inner = law.tp(n - i, m);
                    let e = law.t.counit(&inner);
                    let f = law.t_pow_map(i, &law.t.obj(&inner), &inner, &e);
                    n_functor.map(&x(n), &x(n - 1), &f)
                })
                .collect(),
        );
    }
    let degens = (0..=top)
        .map(|n| {
            if n == top {
                return vec![];
            }
            (0..=n)
                .map(|j| {
                    let inner = law.tp(n - j, m);
                    let d = law.t.comult(&inner);
                    let ti = law.t.obj(&inner);
                    let f = law.t_pow_map(j, &ti, &law.t.obj(&ti), &d);
                    n_functor.map(&x(n), &x(n + 1), &f)
                })
                .collect()
        })
        .collect();
    let augmentation = Some(Augmentation {
        dim: n_functor.dim(m),
        map: n_functor.map(&law.t.obj(m), m, &law.t.counit(m)),
    });
    TruncatedSimplicialModule::new(law.field, dims, faces, degens, augmentation).expect("bar shapes")
}

/// Builds both modules and the comparison maps, asserting the duplicial
/// identities on each.
pub fn build_all<O: Object>(inst: &Instance<O>, top: usize) -> (TruncatedDuplicialModule, TruncatedDuplicialModule, RL) {
    let ct = inst.build_ct(top);
    let cs = inst.build_cs_star(top);
    let mut rl = inst.build_r_l(&ct, &cs);
    for v in ct.check_structure(Level::Duplicial).violations {
        rl.report.push(v.degree, format!("C_T: {}", v.identity));
    }
    for v in cs.check_structure(Level::Duplicial).violations {
        rl.report.push(v.degree, format!("C*_S: {}", v.identity));
    }
    (ct, cs, rl)
}

pub mod trivial {
    //! Identity comonads on bare dimensions.

    use super::*;

    pub struct Identity(pub Field);

    impl Comonad<usize> for Identity {
        fn obj(&self, x: &usize) -> usize {
            *x
        }
        fn map(&self, _: &usize, _: &usize, f: &Matrix) -> Matrix {
            f.clone()
        }
        fn counit(&self, x: &usize) -> Matrix {
            Matrix::identity(self.0, *x)
        }
        fn comult(&self, x: &usize) -> Matrix {
            Matrix::identity(self.0, *x)
        }
    }

    impl LinearFunctor<usize> for Identity {
        fn dim(&self, x: &usize) -> usize {
            *x
        }
        fn map(&self, _: &usize, _: &usize, f: &Matrix) -> Matrix {
            f.clone()
        }
    }

    pub fn instance(field: Field, dim: usize) -> Instance<usize> {
        let id = Arc::new(Identity(field));
        Instance {
            law: DistributiveLaw {
                field,
                t: id.clone(),
                s: id.clone(),
                chi: Arc::new(move |x: &usize| Matrix::identity(field, *x)),
            },
            coalgebra: ChiCoalgebra {
                m: dim,
                rho: Matrix::identity(field, dim),
                s_coalgebra: Some(Matrix::identity(field, dim)),
            },
            opcoalgebra: ChiOpcoalgebra {
                n: id,
                lambda: Arc::new(move |x: &usize| Matrix::identity(field, *x)),
                t_opcoalgebra: Some(Arc::new(move |x: &usize| Matrix::identity(field, *x))),
            },
        }
    }
}
