//! Finite categories, their nerves, and duplicial structures on nerves
//! found through coreflective groupoids.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::report::ValidationReport;
use crate::scalar::Field;
use crate::simplicial::{Level, TruncatedDuplicialModule, TruncatedSimplicialModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("malformed witness: {0}")]
    Witness(String),
    #[error("coreflector fails: {0}")]
    Coreflector(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category by its full composition table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// `compose[g][f] = g ∘ f` exactly when `tgt f = src g`.
    compose: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
}

#[derive(Deserialize)]
struct CategoryJson {
    objects: Vec<String>,
    morphisms: Vec<MorphismJson>,
    #[serde(default)]
    compose: BTreeMap<String, String>,
    identities: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct MorphismJson {
    id: String,
    src: String,
    tgt: String,
}

impl FiniteCategory {
    /// `compose` lists `(g, f, g∘f)`; composites with identities may be omitted.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: &[(usize, usize, usize)],
    ) -> Result<FiniteCategory, NerveError> {
        let bad = |s: String| Err(NerveError::InvalidCategory(s));
        let nm = morphisms.len();
        if identities.len() != objects.len() {
            return bad("one identity per object required".into());
        }
        for m in &morphisms {
            if m.src >= objects.len() || m.tgt >= objects.len() {
                return bad(format!("morphism {} has an endpoint out of range", m.id));
            }
        }
        for (a, &i) in identities.iter().enumerate() {
            if i >= nm || morphisms[i].src != a || morphisms[i].tgt != a {
                return bad(format!("identity of {} must be an endomorphism of it", objects[a]));
            }
        }
        let mut table = vec![vec![None; nm]; nm];
        for &(g, f, h) in compose {
            if g >= nm || f >= nm || h >= nm {
                return bad("composite out of range".into());
            }
            if morphisms[f].tgt != morphisms[g].src {
                return bad(format!("{} ∘ {} is not composable", morphisms[g].id, morphisms[f].id));
            }
            if morphisms[h].src != morphisms[f].src || morphisms[h].tgt != morphisms[g].tgt {
                return bad(format!("{} ∘ {} has the wrong endpoints", morphisms[g].id, morphisms[f].id));
            }
            if table[g][f].is_some_and(|x| x != h) {
                return bad(format!("{} ∘ {} given twice", morphisms[g].id, morphisms[f].id));
            }
            table[g][f] = Some(h);
        }
        for f in 0..nm {
            let (s, t) = (morphisms[f].src, morphisms[f].tgt);
            for (g, h) in [(identities[t], f), (f, identities[s])] {
                match table[g][h] {
                    None => table[g][h] = Some(f),
                    Some(x) if x != f => return bad(format!("identity law fails at {}", morphisms[f].id)),
                    _ => {}
                }
            }
        }
        let c = FiniteCategory {
            objects,
            morphisms,
            compose: table,
            identities,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), NerveError> {
        let nm = self.morphisms.len();
        for g in 0..nm {
            for f in 0..nm {
                let composable = self.morphisms[f].tgt == self.morphisms[g].src;
                if composable != self.compose[g][f].is_some() {
                    return Err(NerveError::InvalidCategory(format!(
                        "composite {} ∘ {} missing",
                        self.morphisms[g].id, self.morphisms[f].id
                    )));
                }
            }
        }
        for h in 0..nm {
            for g in self.out_of(self.morphisms[h].tgt) {
                for f in self.out_of(self.morphisms[g].tgt) {
                    if self.comp(f, self.comp(g, h)) != self.comp(self.comp(f, g), h) {
                        return Err(NerveError::InvalidCategory(format!(
                            "associativity fails at ({}, {}, {})",
                            self.morphisms[f].id, self.morphisms[g].id, self.morphisms[h].id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<FiniteCategory, NerveError> {
        let raw: CategoryJson = serde_json::from_str(text).map_err(|e| NerveError::InvalidCategory(e.to_string()))?;
        let obj = |s: &str| {
            raw.objects
                .iter()
                .position(|o| o == s)
                .ok_or_else(|| NerveError::InvalidCategory(format!("unknown object {s}")))
        };
        let mut morphisms = Vec::new();
        for m in &raw.morphisms {
            morphisms.push(Morphism {
                id: m.id.clone(),
                src: obj(&m.src)?,
                tgt: obj(&m.tgt)?,
            });
        }
        let mor = |s: &str| {
            morphisms
                .iter()
                .position(|m| m.id == s)
                .ok_or_else(|| NerveError::InvalidCategory(format!("unknown morphism {s}")))
        };
        let mut identities = Vec::new();
        for o in &raw.objects {
            let i = raw
                .identities
                .get(o)
                .ok_or_else(|| NerveError::InvalidCategory(format!("no identity for {o}")))?;
            identities.push(mor(i)?);
        }
        let mut compose = Vec::new();
        for (k, h) in &raw.compose {
            let inner = k
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| NerveError::InvalidCategory(format!("bad composite key {k}")))?;
            let (g, f) = inner
                .split_once(',')
                .ok_or_else(|| NerveError::InvalidCategory(format!("bad composite key {k}")))?;
            compose.push((mor(g.trim())?, mor(f.trim())?, mor(h)?));
        }
        FiniteCategory::new(raw.objects.clone(), morphisms, identities, &compose)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    /// `g ∘ f`.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g][f].unwrap_or_else(|| panic!("{} ∘ {} not composable", self.morphisms[g].id, self.morphisms[f].id))
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.num_morphisms()).filter(|&f| self.src(f) == a && self.tgt(f) == b).collect()
    }

    fn out_of(&self, a: usize) -> Vec<usize> {
        (0..self.num_morphisms()).filter(|&f| self.src(f) == a).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .into_iter()
            .find(|&g| self.comp(g, f) == self.identity(a) && self.comp(f, g) == self.identity(b))
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|f| self.inverse(f).is_some())
    }

    pub fn morphism_id(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    /// One object, morphisms `0..n` with `compose(a, b)` for `a ∘ b`; `0` is the identity.
    pub fn monoid(names: &[&str], compose: impl Fn(usize, usize) -> usize) -> FiniteCategory {
        let n = names.len();
        let morphisms = names
            .iter()
            .map(|s| Morphism {
                id: s.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let table: Vec<(usize, usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, compose(a, b))).collect();
        FiniteCategory::new(vec!["*".into()], morphisms, vec![0], &table).expect("catalog monoid")
    }

    pub fn cyclic_group(n: usize) -> FiniteCategory {
        let names: Vec<String> = (0..n).map(|k| if k == 0 { "1".into() } else { format!("g{k}") }).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        FiniteCategory::monoid(&refs, |a, b| (a + b) % n)
    }

    /// A poset on `0..n` from its strict order.
    pub fn poset(n: usize, less: impl Fn(usize, usize) -> bool) -> FiniteCategory {
        let objects: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || less(a, b) {
                    index.insert((a, b), morphisms.len());
                    let id = if a == b { format!("1_{a}") } else { format!("{a}<{b}") };
                    morphisms.push(Morphism { id, src: a, tgt: b });
                }
            }
        }
        let identities = (0..n).map(|a| index[&(a, a)]).collect();
        let mut compose = Vec::new();
        for (&(a, b), &f) in &index {
            for (&(b2, c), &g) in &index {
                if b == b2 {
                    compose.push((g, f, index[&(a, c)]));
                }
            }
        }
        FiniteCategory::new(objects, morphisms, identities, &compose).expect("catalog poset")
    }

    /// Every pair of objects joined by exactly one morphism.
    pub fn indiscrete(n: usize) -> FiniteCategory {
        FiniteCategory::poset(n, |a, b| a != b)
    }

    pub fn interval() -> FiniteCategory {
        FiniteCategory::poset(2, |a, b| a < b)
    }

    /// `{1, e}` with `e² = e`.
    pub fn idempotent_monoid() -> FiniteCategory {
        FiniteCategory::monoid(&["1", "e"], |a, b| a.max(b))
    }

    /// A non-thin category: `ℤ/2` acting on `a`, with `f, fg : a → b`.
    pub fn group_with_tail() -> FiniteCategory {
        let m = |id: &str, src, tgt| Morphism { id: id.into(), src, tgt };
        let morphisms = vec![m("1a", 0, 0), m("g", 0, 0), m("1b", 1, 1), m("f", 0, 1), m("fg", 0, 1)];
        FiniteCategory::new(
            vec!["a".into(), "b".into()],
            morphisms,
            vec![0, 2],
            &[(1, 1, 0), (3, 1, 4), (4, 1, 3)],
        )
        .expect("catalog")
    }

    /// A parallel pair `f, g : a → b`.
    pub fn parallel_pair() -> FiniteCategory {
        let m = |id: &str, src, tgt| Morphism { id: id.into(), src, tgt };
        FiniteCategory::new(
            vec!["a".into(), "b".into()],
            vec![m("1a", 0, 0), m("1b", 1, 1), m("f", 0, 1), m("g", 0, 1)],
            vec![0, 1],
            &[],
        )
        .expect("catalog")
    }

    /// Disjoint union.
    pub fn sum(&self, other: &FiniteCategory) -> FiniteCategory {
        let (no, nm) = (self.num_objects(), self.num_morphisms());
        let objects = self.objects.iter().cloned().chain(other.objects.iter().map(|o| format!("{o}'"))).collect();
        let morphisms = self
            .morphisms
            .iter()
            .cloned()
            .chain(other.morphisms.iter().map(|m| Morphism {
                id: format!("{}'", m.id),
                src: m.src + no,
                tgt: m.tgt + no,
            }))
            .collect();
        let identities = self.identities.iter().copied().chain(other.identities.iter().map(|i| i + nm)).collect();
        let mut compose = Vec::new();
        for (c, off) in [(self, 0), (other, nm)] {
            for g in 0..c.num_morphisms() {
                for f in 0..c.num_morphisms() {
                    if let Some(h) = c.compose[g][f] {
                        compose.push((g + off, f + off, h + off));
                    }
                }
            }
        }
        FiniteCategory::new(objects, morphisms, identities, &compose).expect("sum of categories")
    }

    /// Named categories with at most eight morphisms.
    pub fn catalog() -> Vec<(&'static str, FiniteCategory)> {
        vec![
            ("terminal", FiniteCategory::cyclic_group(1)),
            ("Z2", FiniteCategory::cyclic_group(2)),
            ("Z3", FiniteCategory::cyclic_group(3)),
            ("indiscrete2", FiniteCategory::indiscrete(2)),
            ("discrete2", FiniteCategory::poset(2, |_, _| false)),
            ("interval", FiniteCategory::interval()),
            ("chain3", FiniteCategory::poset(3, |a, b| a < b)),
            ("span", FiniteCategory::poset(3, |a, b| a == 0 && b > 0)),
            ("cospan", FiniteCategory::poset(3, |a, b| a > 0 && b == 0)),
            ("idempotent", FiniteCategory::idempotent_monoid()),
            ("left-zero", FiniteCategory::monoid(&["1", "e", "f"], |a, b| if a == 0 { b } else { a })),
            ("group-with-tail", FiniteCategory::group_with_tail()),
            ("parallel-pair", FiniteCategory::parallel_pair()),
            ("Z2+interval", FiniteCategory::cyclic_group(2).sum(&FiniteCategory::interval())),
        ]
    }
}

/// The nerve up to a top degree. Degree 0 holds objects as one-element
/// lists; degree `n ≥ 1` holds `[f_0, …, f_{n−1}]` with `tgt f_i = src f_{i+1}`.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn new(c: &FiniteCategory, top: usize) -> Nerve {
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..c.num_objects()).map(|a| vec![a]).collect()];
        if top >= 1 {
            simplices.push((0..c.num_morphisms()).map(|f| vec![f]).collect());
        }
        for n in 2..=top {
            let mut next = Vec::new();
            for s in &simplices[n - 1] {
                for f in c.out_of(c.tgt(*s.last().unwrap())) {
                    let mut t = s.clone();
                    t.push(f);
                    next.push(t);
                }
            }
            simplices.push(next);
        }
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
            .collect();
        Nerve { simplices, index }
    }

    pub fn top(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|l| l.len()).collect()
    }

    pub fn position(&self, n: usize, s: &[usize]) -> usize {
        self.index[n][s]
    }

    pub fn face(c: &FiniteCategory, s: &[usize], i: usize) -> Vec<usize> {
        let n = s.len();
        if n == 1 {
            return vec![if i == 0 { c.tgt(s[0]) } else { c.src(s[0]) }];
        }
        let mut out = s.to_vec();
        if i == 0 {
            out.remove(0);
        } else if i == n {
            out.pop();
        } else {
            let h = c.comp(s[i], s[i - 1]);
            out.splice(i - 1..=i, [h]);
        }
        out
    }

    pub fn degeneracy(c: &FiniteCategory, s: &[usize], n: usize, i: usize) -> Vec<usize> {
        if n == 0 {
            return vec![c.identity(s[0])];
        }
        let obj = if i < n { c.src(s[i]) } else { c.tgt(s[n - 1]) };
        let mut out = s.to_vec();
        out.insert(i, c.identity(obj));
        out
    }

    fn map(&self, n_from: usize, n_to: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> Matrix {
        let field = Field::Rational;
        Matrix::from_column_fn(field, self.simplices[n_to].len(), self.simplices[n_from].len(), |j| {
            vec![(self.position(n_to, &f(&self.simplices[n_from][j])), field.one())]
        })
    }

    /// The free `ℚ`-module on the nerve.
    pub fn linearize(&self, c: &FiniteCategory) -> TruncatedSimplicialModule {
        let top = self.top();
        let faces = (0..=top)
            .map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| self.map(n, n - 1, |s| Nerve::face(c, s, i))).collect() })
            .collect();
        let degens = (0..=top)
            .map(|n| if n == top { vec![] } else { (0..=n).map(|i| self.map(n, n + 1, |s| Nerve::degeneracy(c, s, n, i))).collect() })
            .collect();
        TruncatedSimplicialModule::new(Field::Rational, self.counts(), faces, degens, None).expect("nerve shapes")
    }
}

/// An object map `A ↦ tA` and a morphism map `(f : A → B) ↦ (tf : tB → A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coreflector {
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl Coreflector {
    pub fn check(&self, c: &FiniteCategory) -> ValidationReport {
        let mut r = ValidationReport::new();
        if self.on_objects.len() != c.num_objects() || self.on_morphisms.len() != c.num_morphisms() {
            r.push(0, "coreflector size");
            return r;
        }
        for f in 0..c.num_morphisms() {
            let tf = self.on_morphisms[f];
            r.check(
                c.src(tf) == self.on_objects[c.tgt(f)] && c.tgt(tf) == c.src(f),
                1,
                format!("t({}) : tB → A", c.morphism_id(f)),
            );
        }
        if !r.is_ok() {
            return r;
        }
        for a in 0..c.num_objects() {
            let t1 = self.on_morphisms[c.identity(a)];
            r.check(
                self.on_morphisms[t1] == c.identity(self.on_objects[a]),
                1,
                format!("t²(1) = 1 at {}", c.objects[a]),
            );
        }
        for f in 0..c.num_morphisms() {
            for g in c.out_of(c.tgt(f)) {
                let h = c.comp(g, f);
                r.check(
                    self.on_morphisms[g] == c.comp(f, self.on_morphisms[h]),
                    2,
                    format!("t({}) = {} ∘ t({})", c.morphism_id(g), c.morphism_id(f), c.morphism_id(h)),
                );
            }
        }
        r
    }

    /// `t(f_0, …, f_{n−1}) = (t(f_{n−1} ⋯ f_0), f_0, …, f_{n−2})`.
    pub fn apply(&self, c: &FiniteCategory, s: &[usize]) -> Vec<usize> {
        let comp = s[1..].iter().fold(s[0], |acc, &g| c.comp(g, acc));
        let mut out = vec![self.on_morphisms[comp]];
        out.extend_from_slice(&s[..s.len() - 1]);
        out
    }
}

/// A full groupoid subcategory with coreflections `ε_c : Rc → c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subcategory: Vec<usize>,
    pub reflection: Vec<usize>,
    pub counit: Vec<usize>,
}

impl Witness {
    pub fn names(&self, c: &FiniteCategory) -> Vec<String> {
        self.subcategory.iter().map(|&a| c.objects[a].clone()).collect()
    }
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0..1u64 << n).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

fn coreflection(c: &FiniteCategory, d: &[usize], x: usize) -> Option<(usize, usize)> {
    for &r in d {
        for e in c.hom(r, x) {
            let unique = d.iter().all(|&y| {
                c.hom(y, x)
                    .into_iter()
                    .all(|g| c.hom(y, r).into_iter().filter(|&u| c.comp(e, u) == g).count() == 1)
            });
            if unique {
                return Some((r, e));
            }
        }
    }
    None
}

/// Checks a witness: full, invertible, and coreflective.
pub fn check_witness(c: &FiniteCategory, w: &Witness) -> ValidationReport {
    let mut r = ValidationReport::new();
    let n = c.num_objects();
    if w.reflection.len() != n || w.counit.len() != n {
        r.push(0, "witness size");
        return r;
    }
    let inside = |a: usize| w.subcategory.contains(&a);
    for &a in &w.subcategory {
        for &b in &w.subcategory {
            for f in c.hom(a, b) {
                r.check(c.inverse(f).is_some(), 1, format!("{} invertible", c.morphism_id(f)));
            }
        }
    }
    for x in 0..n {
        let (rx, e) = (w.reflection[x], w.counit[x]);
        if !inside(rx) || c.src(e) != rx || c.tgt(e) != x {
            r.push(0, format!("ε at {} : R{} → {}", c.objects[x], c.objects[x], c.objects[x]));
            continue;
        }
        for &y in &w.subcategory {
            for g in c.hom(y, x) {
                let k = c.hom(y, rx).into_iter().filter(|&u| c.comp(e, u) == g).count();
                r.check(k == 1, 1, format!("{} factors uniquely", c.morphism_id(g)));
            }
        }
    }
    r
}

/// Full subcategories in order of size, then lexicographically; the first witness.
pub fn find_coreflective_groupoid(c: &FiniteCategory) -> Option<Witness> {
    let n = c.num_objects();
    for d in subsets_by_size(n) {
        let invertible = d
            .iter()
            .all(|&a| d.iter().all(|&b| c.hom(a, b).into_iter().all(|f| c.inverse(f).is_some())));
        if !invertible {
            continue;
        }
        let mut reflection = Vec::new();
        let mut counit = Vec::new();
        for x in 0..n {
            match coreflection(c, &d, x) {
                Some((r, e)) => {
                    reflection.push(r);
                    counit.push(e);
                }
                None => break,
            }
        }
        if reflection.len() == n {
            return Some(Witness {
                subcategory: d,
                reflection,
                counit,
            });
        }
    }
    None
}

/// The identity witness of a groupoid.
pub fn identity_witness(c: &FiniteCategory) -> Option<Witness> {
    c.is_groupoid().then(|| Witness {
        subcategory: (0..c.num_objects()).collect(),
        reflection: (0..c.num_objects()).collect(),
        counit: (0..c.num_objects()).map(|a| c.identity(a)).collect(),
    })
}

/// `tA = RA`, `tf = ε_A ∘ (Rf)⁻¹`.
pub fn coreflector_from_witness(c: &FiniteCategory, w: &Witness) -> Result<Coreflector, NerveError> {
    let r = check_witness(c, w);
    if !r.is_ok() {
        return Err(NerveError::Witness(r.to_string()));
    }
    let mut on_morphisms = Vec::new();
    for f in 0..c.num_morphisms() {
        let (a, b) = (c.src(f), c.tgt(f));
        let (ra, rb) = (w.reflection[a], w.reflection[b]);
        let target = c.comp(f, w.counit[a]);
        let rf = c
            .hom(ra, rb)
            .into_iter()
            .find(|&u| c.comp(w.counit[b], u) == target)
            .ok_or_else(|| NerveError::Witness(format!("no R({})", c.morphism_id(f))))?;
        let inv = c.inverse(rf).ok_or_else(|| NerveError::Witness(format!("R({}) not invertible", c.morphism_id(f))))?;
        on_morphisms.push(c.comp(w.counit[a], inv));
    }
    let t = Coreflector {
        on_objects: w.reflection.clone(),
        on_morphisms,
    };
    let rep = t.check(c);
    if !rep.is_ok() {
        return Err(NerveError::Coreflector(rep));
    }
    Ok(t)
}

/// Every coreflector, by backtracking over object and morphism maps.
pub fn all_coreflectors(c: &FiniteCategory, limit: usize) -> Vec<Coreflector> {
    let no = c.num_objects();
    let nm = c.num_morphisms();
    let mut out = Vec::new();
    let mut objs = vec![0; no];
    loop {
        let mut mors = vec![usize::MAX; nm];
        search_morphisms(c, &objs, &mut mors, 0, &mut out, limit);
        if out.len() >= limit {
            break;
        }
        let mut k = 0;
        while k < no {
            objs[k] += 1;
            if objs[k] < no {
                break;
            }
            objs[k] = 0;
            k += 1;
        }
        if k == no {
            break;
        }
    }
    out
}

fn consistent(c: &FiniteCategory, objs: &[usize], mors: &[usize], upto: usize) -> bool {
    let set = |f: usize| f <= upto;
    let f = upto;
    for a in 0..c.num_objects() {
        let i = c.identity(a);
        if set(i) {
            let t1 = mors[i];
            if set(t1) && (f == i || f == t1) && mors[t1] != c.identity(objs[a]) {
                return false;
            }
        }
    }
    for x in 0..=upto {
        for g in c.out_of(c.tgt(x)) {
            let h = c.comp(g, x);
            if set(g) && set(h) && (f == x || f == g || f == h) && mors[g] != c.comp(x, mors[h]) {
                return false;
            }
        }
    }
    true
}

fn search_morphisms(c: &FiniteCategory, objs: &[usize], mors: &mut Vec<usize>, k: usize, out: &mut Vec<Coreflector>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    if k == c.num_morphisms() {
        out.push(Coreflector {
            on_objects: objs.to_vec(),
            on_morphisms: mors.clone(),
        });
        return;
    }
    for cand in c.hom(objs[c.tgt(k)], c.src(k)) {
        mors[k] = cand;
        if consistent(c, objs, mors, k) {
            search_morphisms(c, objs, mors, k + 1, out, limit);
        }
    }
    mors[k] = usize::MAX;
}

/// The duplicial nerve of a coreflector, linearized over `ℚ`.
pub fn duplicial_on_nerve(c: &FiniteCategory, t: &Coreflector, top: usize) -> Result<TruncatedDuplicialModule, NerveError> {
    let rep = t.check(c);
    if !rep.is_ok() {
        return Err(NerveError::Coreflector(rep));
    }
    let nerve = Nerve::new(c, top);
    let lin = nerve.linearize(c);
    let ts = (0..=top)
        .map(|n| {
            if n == 0 {
                nerve.map(0, 0, |s| vec![t.on_objects[s[0]]])
            } else {
                nerve.map(n, n, |s| t.apply(c, s))
            }
        })
        .collect();
    Ok(TruncatedDuplicialModule::new(lin, ts).expect("nerve shapes"))
}

#[derive(Debug, Clone, Serialize)]
pub struct NerveVerdict {
    pub duplicial: bool,
    pub cyclic: bool,
    pub groupoid: bool,
    pub witness: Option<Witness>,
    pub coreflector: Option<Coreflector>,
    /// Lowest degree with `t^{n+1} ≠ 1` for the witness structure.
    pub first_noncyclic_degree: Option<usize>,
    pub report: ValidationReport,
}

/// Decides duplicial and cyclic structure on the nerve, verified through `top`.
pub fn decide(c: &FiniteCategory, top: usize) -> NerveVerdict {
    let groupoid = c.is_groupoid();
    let witness = find_coreflective_groupoid(c);
    let mut report = ValidationReport::new();
    let mut coreflector = None;
    let mut first = None;
    if let Some(w) = &witness {
        match coreflector_from_witness(c, w) {
            Ok(t) => {
                let x = duplicial_on_nerve(c, &t, top).expect("checked coreflector");
                report.extend(x.check_structure(Level::Duplicial));
                first = x.first_noncyclic_degree();
                coreflector = Some(t);
            }
            Err(e) => report.push(0, e.to_string()),
        }
    }
    let mut cyclic = false;
    if let Some(w) = identity_witness(c) {
        let t = coreflector_from_witness(c, &w).expect("identity witness");
        let x = duplicial_on_nerve(c, &t, top).expect("checked coreflector");
        let r = x.check_structure(Level::Cyclic);
        cyclic = r.is_ok();
        report.extend(r);
    }
    NerveVerdict {
        duplicial: witness.is_some() && report.is_ok(),
        cyclic,
        groupoid,
        witness,
        coreflector,
        first_noncyclic_degree: first,
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_nerve() {
        let c = FiniteCategory::interval();
        let n = Nerve::new(&c, 3);
        assert_eq!(n.counts()[1], 3);
        assert_eq!(n.counts()[2], 4);
        assert!(n.linearize(&c).check().is_ok());
        let one = Nerve::new(&FiniteCategory::cyclic_group(1), 3);
        assert_eq!(one.counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn interval_witness_and_coreflector() {
        let c = FiniteCategory::interval();
        let w = find_coreflective_groupoid(&c).unwrap();
        assert_eq!(w.names(&c), vec!["0"]);
        let t = coreflector_from_witness(&c, &w).unwrap();
        assert_eq!(t.on_objects, vec![0, 0]);
        let f = c.hom(0, 1)[0];
        let (i0, i1) = (c.identity(0), c.identity(1));
        assert_eq!(t.on_morphisms[f], i0);
        assert_eq!(t.on_morphisms[i1], f);
        assert_eq!(t.apply(&c, &[i0, f]), vec![i0, i0]);
        let x = duplicial_on_nerve(&c, &t, 4).unwrap();
        assert!(x.check_structure(Level::Duplicial).is_ok());
        assert!(!x.check_structure(Level::Cyclic).is_ok());
        assert_eq!(x.first_noncyclic_degree(), Some(0));
    }

    #[test]
    fn catalog_decisions() {
        for (name, c) in FiniteCategory::catalog() {
            let v = decide(&c, 3);
            assert!(v.report.is_ok(), "{name}: {}", v.report);
            assert_eq!(v.cyclic, c.is_groupoid(), "{name}");
            let oracle = all_coreflectors(&c, 1);
            assert_eq!(v.witness.is_some(), !oracle.is_empty(), "{name}");
            for t in &oracle {
                assert!(t.check(&c).is_ok());
                assert!(duplicial_on_nerve(&c, t, 3).unwrap().check_structure(Level::Duplicial).is_ok(), "{name}");
            }
        }
    }

    #[test]
    fn idempotent_has_none() {
        let c = FiniteCategory::idempotent_monoid();
        assert!(find_coreflective_groupoid(&c).is_none());
        assert!(all_coreflectors(&c, usize::MAX).is_empty());
    }

    #[test]
    fn groupoid_inverse() {
        let c = FiniteCategory::cyclic_group(2);
        let t = coreflector_from_witness(&c, &identity_witness(&c).unwrap()).unwrap();
        assert_eq!(t.on_morphisms, vec![0, 1]);
        let c = FiniteCategory::cyclic_group(3);
        let t = coreflector_from_witness(&c, &identity_witness(&c).unwrap()).unwrap();
        assert_eq!(t.on_morphisms, vec![0, 2, 1]);
    }

    #[test]
    fn invalid_tables() {
        let m = |id: &str| Morphism { id: id.into(), src: 0, tgt: 0 };
        let r = FiniteCategory::new(vec!["*".into()], vec![m("1"), m("a")], vec![0], &[]);
        assert!(r.is_err());
        let json = r#"{"objects":["0","1"],"morphisms":[{"id":"i0","src":"0","tgt":"0"},{"id":"i1","src":"1","tgt":"1"},{"id":"f","src":"0","tgt":"1"}],"compose":{},"identities":{"0":"i0","1":"i1"}}"#;
        let c = FiniteCategory::from_json(json).unwrap();
        assert_eq!(find_coreflective_groupoid(&c).unwrap().names(&c), vec!["0"]);
    }
}
