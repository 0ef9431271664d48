//! Hochschild, cyclic and twisted cyclic modules of an algebra, built both
//! by explicit formulas and through the bimodule comonads `−⊗A`, `A⊗−`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Algebra, AlgebraError, AlgebraMap, Bimodule};
use crate::engine::{
    bar_resolution, check_one_cell, ChiCoalgebra, ChiOpcoalgebra, Comonad, DistributiveLaw, Instance, LinearFunctor,
    Object, OneCell,
};
use crate::linalg::{Matrix, Quotient, SparseVec};
use crate::report::ValidationReport;
use crate::scalar::{Field, Scalar};
use crate::simplicial::{Augmentation, TruncatedDuplicialModule, TruncatedSimplicialModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `P ↦ P ⊗ A`.
    T,
    /// `Y ↦ A ⊗ Y`.
    S,
    /// `X ↦ X_σ` for the `k`-th registered automorphism.
    Sigma(usize),
}

/// A bimodule obtained from a registered base by applying `word` left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HObj {
    pub base: usize,
    pub word: Vec<Letter>,
    dim: usize,
}

impl Object for HObj {
    fn dim(&self) -> usize {
        self.dim
    }
}

/// How `N = − ⊗_{A^e} A` is computed on free bimodules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NMode {
    /// `(p ⊗ a) ↦ a·p` on `P ⊗ A` and `(a ⊗ y) ↦ y·a` on `A ⊗ Y`.
    Fast,
    /// Always the quotient by commutators.
    Generic,
}

type ActKey = (HObj, bool, usize);

pub struct Ctx {
    pub alg: Algebra,
    bases: Vec<Bimodule>,
    sigmas: Vec<AlgebraMap>,
    mode: NMode,
    la: Vec<Matrix>,
    ra: Vec<Matrix>,
    unit: Matrix,
    acts: Mutex<HashMap<ActKey, Arc<Matrix>>>,
    quots: Mutex<HashMap<HObj, Arc<(Matrix, Matrix)>>>,
}

/// Quotient of a bimodule by `[A, X]`, as `(projection, section)`.
pub fn commutator_quotient(alg: &Algebra, dim: usize, left: &[Matrix], right: &[Matrix]) -> (Matrix, Matrix) {
    let comms: Vec<Matrix> = left.iter().zip(right).map(|(l, r)| l.sub(r)).collect();
    let refs: Vec<&Matrix> = comms.iter().collect();
    let q = Quotient::by_images(alg.field, dim, &refs);
    (q.projection(), q.section())
}

impl Ctx {
    /// The regular bimodule is always base `0`; `extra` follow in order.
    pub fn new(alg: &Algebra, extra: Vec<Bimodule>, sigmas: Vec<AlgebraMap>, mode: NMode) -> Arc<Ctx> {
        let d = alg.dim();
        let mut bases = vec![Bimodule::regular(alg)];
        bases.extend(extra);
        Arc::new(Ctx {
            alg: alg.clone(),
            bases,
            sigmas,
            mode,
            la: (0..d).map(|i| alg.left_mult(i)).collect(),
            ra: (0..d).map(|i| alg.right_mult(i)).collect(),
            unit: alg.unit_matrix(),
            acts: Mutex::new(HashMap::new()),
            quots: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    fn da(&self) -> usize {
        self.alg.dim()
    }

    pub fn base(&self, k: usize) -> HObj {
        HObj {
            base: k,
            word: vec![],
            dim: self.bases[k].dim,
        }
    }

    fn push(&self, x: &HObj, l: Letter) -> HObj {
        let mut word = x.word.clone();
        word.push(l);
        let dim = match l {
            Letter::T | Letter::S => x.dim * self.da(),
            Letter::Sigma(_) => x.dim,
        };
        HObj { base: x.base, word, dim }
    }

    fn inner(&self, x: &HObj) -> HObj {
        let mut word = x.word.clone();
        let l = word.pop().expect("free object");
        let dim = match l {
            Letter::T | Letter::S => x.dim / self.da(),
            Letter::Sigma(_) => x.dim,
        };
        HObj { base: x.base, word, dim }
    }

    /// The action of the `b`-th basis element on `x`, on the right if `right`.
    pub fn act(&self, x: &HObj, right: bool, b: usize) -> Arc<Matrix> {
        let key = (x.clone(), right, b);
        if let Some(m) = self.acts.lock().unwrap().get(&key) {
            return m.clone();
        }
        let f = self.field();
        let m = match x.word.last() {
            None => {
                let bm = &self.bases[x.base];
                if right { bm.right[b].clone() } else { bm.left[b].clone() }
            }
            Some(Letter::T) => {
                let p = self.inner(x);
                if right {
                    Matrix::identity(f, p.dim).kronecker(&self.ra[b])
                } else {
                    self.act(&p, false, b).kronecker(&Matrix::identity(f, self.da()))
                }
            }
            Some(Letter::S) => {
                let y = self.inner(x);
                if right {
                    Matrix::identity(f, self.da()).kronecker(&self.act(&y, true, b))
                } else {
                    self.la[b].kronecker(&Matrix::identity(f, y.dim))
                }
            }
            Some(Letter::Sigma(k)) => {
                let y = self.inner(x);
                if right {
                    let col = self.sigmas[*k].matrix.column(b);
                    col.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .fold(Matrix::zero(f, y.dim, y.dim), |acc, (c, s)| acc.add(&self.act(&y, true, c).scale(s)))
                } else {
                    (*self.act(&y, false, b)).clone()
                }
            }
        };
        let m = Arc::new(m);
        self.acts.lock().unwrap().insert(key, m.clone());
        m
    }

    /// `x ⊗ A → x`, `(x_i ⊗ a_j) ↦ x_i·a_j`.
    fn right_action_map(&self, x: &HObj) -> Matrix {
        let da = self.da();
        let acts: Vec<Arc<Matrix>> = (0..da).map(|j| self.act(x, true, j)).collect();
        Matrix::from_column_fn(self.field(), x.dim, x.dim * da, |c| sparse_col(&acts[c % da], c / da))
    }

    /// `A ⊗ x → x`, `(a_j ⊗ x_i) ↦ a_j·x_i`.
    fn left_action_map(&self, x: &HObj) -> Matrix {
        let da = self.da();
        let acts: Vec<Arc<Matrix>> = (0..da).map(|j| self.act(x, false, j)).collect();
        Matrix::from_column_fn(self.field(), x.dim, x.dim * da, |c| sparse_col(&acts[c / x.dim], c % x.dim))
    }

    /// `x ⊗ A → x`, `(x_i ⊗ a_j) ↦ a_j·x_i`.
    fn left_action_map_swapped(&self, x: &HObj) -> Matrix {
        let da = self.da();
        let acts: Vec<Arc<Matrix>> = (0..da).map(|j| self.act(x, false, j)).collect();
        Matrix::from_column_fn(self.field(), x.dim, x.dim * da, |c| sparse_col(&acts[c % da], c / da))
    }

    /// `A ⊗ x → x`, `(a_j ⊗ x_i) ↦ x_i·a_j`.
    fn right_action_map_swapped(&self, x: &HObj) -> Matrix {
        let da = self.da();
        let acts: Vec<Arc<Matrix>> = (0..da).map(|j| self.act(x, true, j)).collect();
        Matrix::from_column_fn(self.field(), x.dim, x.dim * da, |c| sparse_col(&acts[c / x.dim], c % x.dim))
    }

    /// `(π, ι)` for `N x`.
    pub fn n_data(&self, x: &HObj) -> Arc<(Matrix, Matrix)> {
        if let Some(q) = self.quots.lock().unwrap().get(x) {
            return q.clone();
        }
        let f = self.field();
        let q = match (self.mode, x.word.last()) {
            (NMode::Fast, Some(Letter::T)) => {
                let p = self.inner(x);
                (self.left_action_map_swapped(&p), Matrix::identity(f, p.dim).kronecker(&self.unit))
            }
            (NMode::Fast, Some(Letter::S)) => {
                let y = self.inner(x);
                (self.right_action_map_swapped(&y), self.unit.kronecker(&Matrix::identity(f, y.dim)))
            }
            _ => {
                let d = self.da();
                let l: Vec<Matrix> = (0..d).map(|b| (*self.act(x, false, b)).clone()).collect();
                let r: Vec<Matrix> = (0..d).map(|b| (*self.act(x, true, b)).clone()).collect();
                commutator_quotient(&self.alg, x.dim, &l, &r)
            }
        };
        let q = Arc::new(q);
        self.quots.lock().unwrap().insert(x.clone(), q.clone());
        q
    }

    /// `λ_x : N(A ⊗ x) → N(x ⊗ A)`, `[a ⊗ x] ↦ [x·a ⊗ 1]`.
    pub fn lambda(&self, x: &HObj) -> Matrix {
        let f = self.field();
        let sx = self.push(x, Letter::S);
        let tx = self.push(x, Letter::T);
        let into = Matrix::identity(f, x.dim).kronecker(&self.unit);
        self.n_data(&tx)
            .0
            .mul(&into)
            .mul(&self.right_action_map_swapped(x))
            .mul(&self.n_data(&sx).1)
    }
}

fn sparse_col(m: &Matrix, j: usize) -> SparseVec {
    m.column(j).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

pub struct TComonad(pub Arc<Ctx>);
pub struct SComonad(pub Arc<Ctx>);
pub struct NFunctor(pub Arc<Ctx>);

impl Comonad<HObj> for TComonad {
    fn obj(&self, x: &HObj) -> HObj {
        self.0.push(x, Letter::T)
    }
    fn map(&self, _: &HObj, _: &HObj, f: &Matrix) -> Matrix {
        f.kronecker(&Matrix::identity(self.0.field(), self.0.da()))
    }
    fn counit(&self, x: &HObj) -> Matrix {
        self.0.right_action_map(x)
    }
    fn comult(&self, x: &HObj) -> Matrix {
        let f = self.0.field();
        let ins = self.0.unit.kronecker(&Matrix::identity(f, self.0.da()));
        Matrix::identity(f, x.dim).kronecker(&ins)
    }
}

impl Comonad<HObj> for SComonad {
    fn obj(&self, x: &HObj) -> HObj {
        self.0.push(x, Letter::S)
    }
    fn map(&self, _: &HObj, _: &HObj, f: &Matrix) -> Matrix {
        Matrix::identity(self.0.field(), self.0.da()).kronecker(f)
    }
    fn counit(&self, x: &HObj) -> Matrix {
        self.0.left_action_map(x)
    }
    fn comult(&self, x: &HObj) -> Matrix {
        let f = self.0.field();
        let ins = Matrix::identity(f, self.0.da()).kronecker(&self.0.unit);
        ins.kronecker(&Matrix::identity(f, x.dim))
    }
}

impl LinearFunctor<HObj> for NFunctor {
    fn dim(&self, x: &HObj) -> usize {
        self.0.n_data(x).0.rows()
    }
    fn map(&self, x: &HObj, y: &HObj, f: &Matrix) -> Matrix {
        self.0.n_data(y).0.mul(f).mul(&self.0.n_data(x).1)
    }
}

/// The law `χ = id : (A ⊗ X) ⊗ A → A ⊗ (X ⊗ A)` with `N = − ⊗_{A^e} A`.
pub fn law(ctx: &Arc<Ctx>) -> DistributiveLaw<HObj> {
    let c = ctx.clone();
    DistributiveLaw {
        field: ctx.field(),
        t: Arc::new(TComonad(ctx.clone())),
        s: Arc::new(SComonad(ctx.clone())),
        chi: Arc::new(move |x: &HObj| Matrix::identity(c.field(), x.dim * c.da() * c.da())),
    }
}

fn opcoalgebra(ctx: &Arc<Ctx>) -> ChiOpcoalgebra<HObj> {
    let c = ctx.clone();
    ChiOpcoalgebra {
        n: Arc::new(NFunctor(ctx.clone())),
        lambda: Arc::new(move |x: &HObj| c.lambda(x)),
        t_opcoalgebra: None,
    }
}

/// `M = A` with `ρ = 1 : A ⊗ A → A ⊗ A`.
pub fn cyclic_instance(ctx: &Arc<Ctx>) -> Instance<HObj> {
    let d = ctx.da();
    Instance {
        law: law(ctx),
        coalgebra: ChiCoalgebra {
            m: ctx.base(0),
            rho: Matrix::identity(ctx.field(), d * d),
            s_coalgebra: None,
        },
        opcoalgebra: opcoalgebra(ctx),
    }
}

/// `M = A ⊗ A` with `∇ = δ^S_A`.
pub fn free_instance(ctx: &Arc<Ctx>) -> Instance<HObj> {
    let law = law(ctx);
    let a = ctx.base(0);
    let m = law.s.obj(&a);
    let nabla = law.s.comult(&a);
    let rho = nabla.mul(&law.t.counit(&m));
    Instance {
        law,
        coalgebra: ChiCoalgebra {
            m,
            rho,
            s_coalgebra: Some(nabla),
        },
        opcoalgebra: opcoalgebra(ctx),
    }
}

/// `Σ = (−)_σ` with `σ_X(x ⊗ a) = x ⊗ σ(a)` and `γ = 1`.
pub fn one_cell(ctx: &Arc<Ctx>, k: usize) -> OneCell<HObj> {
    let c1 = ctx.clone();
    let c2 = ctx.clone();
    let c3 = ctx.clone();
    OneCell {
        sigma_obj: Arc::new(move |x: &HObj| c1.push(x, Letter::Sigma(k))),
        sigma_map: Arc::new(|_: &HObj, _: &HObj, f: &Matrix| f.clone()),
        sigma: Arc::new(move |x: &HObj| Matrix::identity(c2.field(), x.dim).kronecker(&c2.sigmas[k].matrix)),
        gamma: Arc::new(move |x: &HObj| Matrix::identity(c3.field(), x.dim * c3.da())),
    }
}

/// The cyclic instance twisted by the `k`-th registered automorphism.
pub fn twisted_instance(ctx: &Arc<Ctx>, k: usize) -> Instance<HObj> {
    cyclic_instance(ctx).twist(&one_cell(ctx, k))
}

/// `C_T(N, −)` on `A_σ` obtained by twisting, with the 1-cell checks.
pub fn twist_by_one_cell(a: &Algebra, sigma: &AlgebraMap, top: usize) -> (TruncatedDuplicialModule, ValidationReport) {
    let ctx = Ctx::new(a, vec![], vec![sigma.clone()], NMode::Fast);
    let inst = twisted_instance(&ctx, 0);
    let objs = inst.law.tracked(&ctx.base(0), 2);
    let report = check_one_cell(&inst.law, &one_cell(&ctx, 0), &objs);
    (inst.build_ct(top), report)
}

/// The simplicial module `C_T(N, M)` computed through the comonad.
pub fn bar_module(a: &Algebra, m: &Bimodule, top: usize, mode: NMode) -> TruncatedSimplicialModule {
    let ctx = Ctx::new(a, vec![m.clone()], vec![], mode);
    bar_resolution(&law(&ctx), &NFunctor(ctx.clone()), &ctx.base(1), top)
}

/// The duplicial module `C_T(N, A)` of the cyclic instance.
pub fn bar_cyclic_module(a: &Algebra, top: usize, mode: NMode) -> TruncatedDuplicialModule {
    let ctx = Ctx::new(a, vec![], vec![], mode);
    cyclic_instance(&ctx).build_ct(top)
}

fn digits(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    for k in (0..len).rev() {
        v[k] = idx % base;
        idx /= base;
    }
    v
}

/// Index of `m ⊗ a_1 ⊗ … ⊗ a_n`.
fn index(m: usize, a: &[usize], da: usize) -> usize {
    a.iter().fold(m, |acc, &x| acc * da + x)
}

/// Basis expansion `(m, [a_1 … a_n])` with coefficients.
type Terms = Vec<(Scalar, usize, Vec<usize>)>;

fn collect(field: Field, rows: usize, cols: usize, da: usize, f: impl Fn(usize, &[usize]) -> Terms, m_dim: usize, n: usize) -> Matrix {
    Matrix::from_triplets(
        field,
        rows,
        cols,
        (0..m_dim * da.pow(n as u32)).flat_map(|c| {
            let m = c / da.pow(n as u32);
            let a = digits(c % da.pow(n as u32), da, n);
            f(m, &a).into_iter().map(move |(s, mm, aa)| (index(mm, &aa, da), c, s))
        }),
    )
}

fn col_terms(m: &Matrix, j: usize) -> Vec<(usize, Scalar)> {
    sparse_col(m, j)
}

/// The Hochschild simplicial module `M ⊗ A^{⊗n}`, augmented by `M → M/[A, M]`,
/// from the explicit face and degeneracy formulas.
pub fn hochschild_module(a: &Algebra, m: &Bimodule, top: usize) -> TruncatedSimplicialModule {
    let f = a.field;
    let da = a.dim();
    let dm = m.dim;
    let dims: Vec<usize> = (0..=top).map(|n| dm * da.pow(n as u32)).collect();
    let unit = a.unit().clone();
    let mut faces = vec![vec![]];
    for n in 1..=top {
        let mut fs = Vec::new();
        for i in 0..=n {
            let face = |mi: usize, av: &[usize]| -> Terms {
                if i == 0 {
                    let rest = av[..n - 1].to_vec();
                    col_terms(&m.left[av[n - 1]], mi).into_iter().map(|(k, s)| (s, k, rest.clone())).collect()
                } else if i == n {
                    let rest = av[1..].to_vec();
                    col_terms(&m.right[av[0]], mi).into_iter().map(|(k, s)| (s, k, rest.clone())).collect()
                } else {
                    let p = n - i - 1;
                    a.product(av[p], av[p + 1])
                        .iter()
                        .map(|(k, s)| {
                            let mut w = av[..p].to_vec();
                            w.push(*k);
                            w.extend_from_slice(&av[p + 2..]);
                            (s.clone(), mi, w)
                        })
                        .collect()
                }
            };
            fs.push(collect(f, dims[n - 1], dims[n], da, face, dm, n));
        }
        faces.push(fs);
    }
    let degens = (0..=top)
        .map(|n| {
            if n == top {
                return vec![];
            }
            (0..=n)
                .map(|j| {
                    let deg = |mi: usize, av: &[usize]| -> Terms {
                        unit.iter()
                            .map(|(k, s)| {
                                let mut w = av[..n - j].to_vec();
                                w.push(*k);
                                w.extend_from_slice(&av[n - j..]);
                                (s.clone(), mi, w)
                            })
                            .collect()
                    };
                    collect(f, dims[n + 1], dims[n], da, deg, dm, n)
                })
                .collect()
        })
        .collect();
    let (proj, _) = commutator_quotient(a, dm, &m.left, &m.right);
    let augmentation = Some(Augmentation {
        dim: proj.rows(),
        map: proj,
    });
    TruncatedSimplicialModule::new(f, dims, faces, degens, augmentation).expect("hochschild shapes")
}

/// `t(a_0 ⊗ … ⊗ a_n) = σ(a_1) ⊗ … ⊗ a_n ⊗ a_0`, and `t = σ` in degree 0.
fn rotation(a: &Algebra, sigma: &Matrix, n: usize) -> Matrix {
    let da = a.dim();
    let rot = |m: usize, av: &[usize]| -> Terms {
        if n == 0 {
            return col_terms(sigma, m).into_iter().map(|(k, s)| (s, k, vec![])).collect();
        }
        let mut w = av[1..].to_vec();
        w.push(m);
        col_terms(sigma, av[0]).into_iter().map(|(k, s)| (s, k, w.clone())).collect()
    };
    let d = da.pow(n as u32 + 1);
    collect(a.field, d, d, da, rot, da, n)
}

/// The cyclic module `A^{⊗(n+1)}`.
pub fn cyclic_module(a: &Algebra, top: usize) -> TruncatedDuplicialModule {
    twisted_module(a, &AlgebraMap::identity(a), top)
}

/// The twisted cyclic module: coefficients in `A_σ` and `t = t^σ`.
pub fn twisted_module(a: &Algebra, sigma: &AlgebraMap, top: usize) -> TruncatedDuplicialModule {
    let m = Bimodule::regular(a).twisted(a, sigma);
    let s = hochschild_module(a, &m, top);
    let t = (0..=top).map(|n| rotation(a, &sigma.matrix, n)).collect();
    TruncatedDuplicialModule::new(s, t).expect("twisted shapes")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0AndCenter {
    /// Basis indices of `M` spanning a complement of `[A, M]`.
    pub h0_basis: Vec<usize>,
    /// A basis of `{m : a m = m a for all a}`.
    pub center: Vec<Vec<Scalar>>,
}

/// `H_0(A, M) = M/[A, M]` and `H^0(A, M)`.
pub fn h0_and_center(a: &Algebra, m: &Bimodule) -> H0AndCenter {
    let comms: Vec<Matrix> = m.left.iter().zip(&m.right).map(|(l, r)| l.sub(r)).collect();
    let refs: Vec<&Matrix> = comms.iter().collect();
    let q = Quotient::by_images(a.field, m.dim, &refs);
    let stacked = comms
        .iter()
        .fold(Matrix::zero(a.field, 0, m.dim), |acc, c| acc.vstack(c));
    H0AndCenter {
        h0_basis: q.complement().to_vec(),
        center: stacked.kernel(),
    }
}

/// The cap product `H^0(A, M) × H_0(A, A) → H_0(A, M)`, `(z, a) ↦ [z·a]`,
/// in the coordinates of [`h0_and_center`].
pub fn cap0(a: &Algebra, m: &Bimodule, z: &[Scalar], x: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
    if z.len() != m.dim || x.len() != a.dim() {
        return Err(AlgebraError::Malformed("cap product arguments have the wrong length".into()));
    }
    for b in 0..a.dim() {
        if m.left[b].apply(z) != m.right[b].apply(z) {
            return Err(AlgebraError::Malformed(format!("z is not central: fails against {}", a.labels[b])));
        }
    }
    let xs: SparseVec = x.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())).collect();
    let za = m.right_of(a, &xs).apply(z);
    let (proj, _) = commutator_quotient(a, m.dim, &m.left, &m.right);
    Ok(proj.apply(&za))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Betti;
    use crate::simplicial::Level;

    const Q: Field = Field::Rational;

    fn dims(b: &[Betti]) -> Vec<usize> {
        b.iter().filter(|x| !x.truncated).map(|x| x.dim).collect()
    }

    /// Brute-force Hochschild homology through the unnormalized complex.
    fn hh(a: &Algebra, top: usize) -> Vec<usize> {
        let x = hochschild_module(a, &Bimodule::regular(a), top);
        assert!(x.check().is_ok());
        dims(&x.moore_complex().betti_numbers())
    }

    #[test]
    fn dual_numbers_hh() {
        let a = Algebra::dual_numbers(Q);
        assert_eq!(hh(&a, 4), vec![2, 1, 1, 1]);
    }

    #[test]
    fn ground_hh() {
        assert_eq!(hh(&Algebra::ground(Q), 4), vec![1, 0, 0, 0]);
    }

    #[test]
    fn separable_algebras_have_no_higher_hh() {
        assert_eq!(hh(&Algebra::matrix_algebra(Q, 2), 3), vec![1, 0, 0]);
        assert_eq!(hh(&Algebra::cyclic_group(Q, 3), 3), vec![3, 0, 0]);
        assert_eq!(hh(&Algebra::upper_triangular(Q), 3), vec![2, 0, 0]);
    }

    #[test]
    fn direct_modules_are_cyclic() {
        for a in [Algebra::dual_numbers(Q), Algebra::upper_triangular(Q), Algebra::cyclic_group(Q, 3)] {
            let x = cyclic_module(&a, 3);
            assert!(x.check_structure(Level::Cyclic).is_ok());
        }
    }

    #[test]
    fn bar_equals_direct_on_fast_path() {
        for a in [Algebra::dual_numbers(Q), Algebra::upper_triangular(Q), Algebra::cyclic_group(Q, 2)] {
            let direct = cyclic_module(&a, 3);
            let bar = bar_cyclic_module(&a, 3, NMode::Fast);
            assert_eq!(direct.simplicial, bar.simplicial);
            for n in 0..=3 {
                assert_eq!(direct.t(n), bar.t(n), "t in degree {n}");
            }
        }
    }

    #[test]
    fn generic_n_agrees_in_homology() {
        let a = Algebra::dual_numbers(Q);
        let bar = bar_module(&a, &Bimodule::regular(&a), 4, NMode::Generic);
        assert!(bar.check().is_ok());
        assert_eq!(dims(&bar.moore_complex().betti_numbers()), vec![2, 1, 1, 1]);
    }

    #[test]
    fn twisting_matches_explicit_module() {
        let a = Algebra::dual_numbers(Q);
        let s = AlgebraMap::dual_scaling(&a, -1);
        let (x, r) = twist_by_one_cell(&a, &s, 3);
        assert!(r.is_ok(), "{r}");
        let y = twisted_module(&a, &s, 3);
        assert_eq!(x.simplicial, y.simplicial);
        for n in 0..=3 {
            assert_eq!(x.t(n), y.t(n), "t in degree {n}");
        }
        assert!(y.check_structure(Level::Duplicial).is_ok());
        assert_eq!(y.first_noncyclic_degree(), Some(0));
    }

    #[test]
    fn instance_preconditions() {
        let a = Algebra::dual_numbers(Q);
        let ctx = Ctx::new(&a, vec![], vec![AlgebraMap::dual_scaling(&a, -1)], NMode::Fast);
        assert!(cyclic_instance(&ctx).check(2).is_ok());
        assert!(free_instance(&ctx).check(2).is_ok());
        assert!(twisted_instance(&ctx, 0).check(2).is_ok());
        let g = Ctx::new(&a, vec![], vec![], NMode::Generic);
        assert!(cyclic_instance(&g).check(2).is_ok());
    }

    #[test]
    fn h0_center_and_cap() {
        let a = Algebra::upper_triangular(Q);
        let m = Bimodule::regular(&a);
        let h = h0_and_center(&a, &m);
        assert_eq!(h.h0_basis.len(), 2);
        assert_eq!(h.center.len(), 1);
        let one = a.unit_dense();
        let c = cap0(&a, &m, &h.center[0], &one).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().any(|x| !x.is_zero()));
        let e12 = a.basis_vec(1);
        assert!(cap0(&a, &m, &e12, &one).is_err());
    }
}
