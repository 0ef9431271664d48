//! Monads and comonads on finite sets, their mixed distributive laws,
//! entwined algebras, and the nonempty-list bimonad.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::report::ValidationReport;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("bound too large: about {estimate} candidates")]
    TooLarge { estimate: u128 },
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("malformed structure: {0}")]
    Malformed(String),
}

/// An element of a nested functor application over atoms `x0, x1, …`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Val {
    Atom(u32),
    /// `(c, x) ∈ C × X`.
    Pair(u32, Box<Val>),
    List(Vec<Val>),
    /// A subset; also a filter by its generating set.
    Set(BTreeSet<Val>),
    /// `f ∈ X^M`, indexed by monoid elements.
    Func(Vec<Val>),
    /// Finite support, sorted, positive weights summing to 1.
    Dist(Vec<(Val, Rational)>),
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, it: impl IntoIterator<Item = T>) -> fmt::Result {
            for (i, x) in it.into_iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
        match self {
            Val::Atom(a) => write!(f, "x{a}"),
            Val::Pair(c, x) => write!(f, "(c{c}, {x})"),
            Val::List(xs) => {
                write!(f, "[")?;
                join(f, xs)?;
                write!(f, "]")
            }
            Val::Set(xs) => {
                write!(f, "{{")?;
                join(f, xs)?;
                write!(f, "}}")
            }
            Val::Func(xs) => {
                write!(f, "<")?;
                join(f, xs.iter().enumerate().map(|(m, x)| format!("m{m}↦{x}")))?;
                write!(f, ">")
            }
            Val::Dist(ps) => {
                write!(f, "{{")?;
                join(f, ps.iter().map(|(x, p)| format!("{x}: {p}")))?;
                write!(f, "}}")
            }
        }
    }
}

impl Val {
    fn list(&self) -> &[Val] {
        match self {
            Val::List(xs) => xs,
            other => panic!("expected a list, got {other}"),
        }
    }

    fn set(&self) -> &BTreeSet<Val> {
        match self {
            Val::Set(xs) => xs,
            other => panic!("expected a set, got {other}"),
        }
    }

    fn func(&self) -> &[Val] {
        match self {
            Val::Func(xs) => xs,
            other => panic!("expected a function, got {other}"),
        }
    }

    fn dist(&self) -> &[(Val, Rational)] {
        match self {
            Val::Dist(xs) => xs,
            other => panic!("expected a distribution, got {other}"),
        }
    }

    fn pair(&self) -> (u32, &Val) {
        match self {
            Val::Pair(c, x) => (*c, x),
            other => panic!("expected a pair, got {other}"),
        }
    }

    fn atom(&self) -> usize {
        match self {
            Val::Atom(a) => *a as usize,
            other => panic!("expected an atom, got {other}"),
        }
    }

    /// Flattened list length: nested lists count their leaves.
    fn weight(&self) -> usize {
        match self {
            Val::List(xs) => xs.iter().map(|x| if matches!(x, Val::List(_)) { x.weight() } else { 1 }).sum(),
            _ => 1,
        }
    }

    /// Longest list anywhere inside.
    pub fn max_list_len(&self) -> usize {
        match self {
            Val::Atom(_) => 0,
            Val::Pair(_, x) => x.max_list_len(),
            Val::List(xs) => xs.iter().map(|x| x.max_list_len()).max().unwrap_or(0).max(xs.len()),
            Val::Set(xs) => xs.iter().map(|x| x.max_list_len()).max().unwrap_or(0),
            Val::Func(xs) => xs.iter().map(|x| x.max_list_len()).max().unwrap_or(0),
            Val::Dist(ps) => ps.iter().map(|(x, _)| x.max_list_len()).max().unwrap_or(0),
        }
    }

    pub fn dist_from(items: impl IntoIterator<Item = (Val, Rational)>) -> Val {
        let mut m: BTreeMap<Val, Rational> = BTreeMap::new();
        for (x, p) in items {
            let e = m.entry(x).or_insert_with(Rational::zero);
            *e = e.add(&p);
        }
        Val::Dist(m.into_iter().filter(|(_, p)| !p.is_zero()).collect())
    }
}

pub fn atoms(n: usize) -> Vec<Val> {
    (0..n as u32).map(Val::Atom).collect()
}

/// A finite monoid by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteMonoid {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteMonoid, SetError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) || identity >= n {
            return Err(SetError::Malformed("monoid table must be square with entries and identity in range".into()));
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(SetError::Malformed(format!("identity law fails at {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(SetError::Malformed(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteMonoid { table, identity })
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid::new(vec![vec![0]], 0).unwrap()
    }

    pub fn z2() -> FiniteMonoid {
        FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    /// `{e, z}` with `z² = z`.
    pub fn idempotent() -> FiniteMonoid {
        FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap()
    }

    pub fn catalog() -> Vec<(&'static str, FiniteMonoid)> {
        vec![("trivial", FiniteMonoid::trivial()), ("Z2", FiniteMonoid::z2()), ("idem", FiniteMonoid::idempotent())]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Powerset,
    List { bound: usize },
    NonemptyList { bound: usize },
    /// Filters by their generating nonempty set.
    Filter,
    /// Principal ultrafilters by their point.
    Ultrafilter,
    /// Distributions with weights on a `1/grid` lattice.
    Distribution { grid: u32 },
    /// `C × −` with `C = {c0 < … }`.
    Product { colors: u32 },
    /// `X^M`.
    Reader(FiniteMonoid),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    Monad,
    Comonad,
}

fn subsets(xs: &[Val], nonempty: bool) -> Vec<Val> {
    let n = xs.len();
    (0..1u64 << n)
        .filter(|&b| !nonempty || b != 0)
        .map(|b| Val::Set((0..n).filter(|i| b >> i & 1 == 1).map(|i| xs[i].clone()).collect()))
        .collect()
}

fn lists(xs: &[Val], bound: usize, nonempty: bool) -> Vec<Val> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Val>, usize)> = vec![(vec![], 0)];
    while let Some((cur, w)) = stack.pop() {
        if !(nonempty && cur.is_empty()) {
            out.push(Val::List(cur.clone()));
        }
        if cur.len() == bound {
            continue;
        }
        for x in xs {
            let xw = if matches!(x, Val::List(_)) { x.weight() } else { 1 };
            if w + xw <= bound {
                let mut next = cur.clone();
                next.push(x.clone());
                stack.push((next, w + xw));
            }
        }
    }
    out.sort();
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn functions(xs: &[Val], m: usize) -> Vec<Val> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Val>| {
                xs.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Val::Func).collect()
}

impl Structure {
    pub fn name(&self) -> String {
        match self {
            Structure::Powerset => "P".into(),
            Structure::List { bound } => format!("L(ℓ={bound})"),
            Structure::NonemptyList { bound } => format!("L+(ℓ={bound})"),
            Structure::Filter => "F".into(),
            Structure::Ultrafilter => "U".into(),
            Structure::Distribution { grid } => format!("D(1/{grid})"),
            Structure::Product { colors } => format!("C×(|C|={colors})"),
            Structure::Reader(m) => format!("X^M(|M|={})", m.size()),
        }
    }

    pub fn is_monad(&self) -> bool {
        !matches!(self, Structure::Product { .. } | Structure::Reader(_))
    }

    pub fn is_comonad(&self) -> bool {
        matches!(self, Structure::Product { .. } | Structure::Reader(_) | Structure::NonemptyList { .. })
    }

    fn list_bound(&self) -> Option<usize> {
        match self {
            Structure::List { bound } | Structure::NonemptyList { bound } => Some(*bound),
            _ => None,
        }
    }

    /// Every element of `F(inner)` within the bounds.
    pub fn elements(&self, inner: &[Val]) -> Vec<Val> {
        match self {
            Structure::Powerset => subsets(inner, false),
            Structure::Filter => subsets(inner, true),
            Structure::Ultrafilter => inner.iter().map(|x| Val::Set([x.clone()].into())).collect(),
            Structure::List { bound } => lists(inner, *bound, false),
            Structure::NonemptyList { bound } => lists(inner, *bound, true),
            Structure::Distribution { grid } => compositions(*grid, inner.len())
                .into_iter()
                .map(|ws| {
                    Val::dist_from(
                        inner
                            .iter()
                            .zip(ws)
                            .map(|(x, w)| (x.clone(), Rational::new(w as i64, *grid as i64).unwrap())),
                    )
                })
                .collect(),
            Structure::Product { colors } => (0..*colors)
                .flat_map(|c| inner.iter().map(move |x| Val::Pair(c, Box::new(x.clone()))))
                .collect(),
            Structure::Reader(m) => functions(inner, m.size()),
        }
    }

    pub fn fmap(&self, v: &Val, f: &dyn Fn(&Val) -> Val) -> Val {
        match self {
            Structure::Powerset | Structure::Filter | Structure::Ultrafilter => Val::Set(v.set().iter().map(f).collect()),
            Structure::List { .. } | Structure::NonemptyList { .. } => Val::List(v.list().iter().map(f).collect()),
            Structure::Distribution { .. } => Val::dist_from(v.dist().iter().map(|(x, p)| (f(x), p.clone()))),
            Structure::Product { .. } => {
                let (c, x) = v.pair();
                Val::Pair(c, Box::new(f(x)))
            }
            Structure::Reader(_) => Val::Func(v.func().iter().map(f).collect()),
        }
    }

    pub fn unit(&self, x: &Val) -> Val {
        match self {
            Structure::Powerset | Structure::Filter | Structure::Ultrafilter => Val::Set([x.clone()].into()),
            Structure::List { .. } | Structure::NonemptyList { .. } => Val::List(vec![x.clone()]),
            Structure::Distribution { .. } => Val::Dist(vec![(x.clone(), Rational::one())]),
            _ => panic!("{} is not a monad", self.name()),
        }
    }

    pub fn mult(&self, v: &Val) -> Val {
        match self {
            Structure::Powerset | Structure::Filter | Structure::Ultrafilter => {
                Val::Set(v.set().iter().flat_map(|a| a.set().iter().cloned()).collect())
            }
            Structure::List { .. } | Structure::NonemptyList { .. } => {
                Val::List(v.list().iter().flat_map(|a| a.list().iter().cloned()).collect())
            }
            Structure::Distribution { .. } => Val::dist_from(
                v.dist()
                    .iter()
                    .flat_map(|(p, w)| p.dist().iter().map(move |(x, q)| (x.clone(), w.mul(q)))),
            ),
            _ => panic!("{} is not a monad", self.name()),
        }
    }

    pub fn counit(&self, v: &Val) -> Val {
        match self {
            Structure::NonemptyList { .. } => v.list()[0].clone(),
            Structure::Product { .. } => v.pair().1.clone(),
            Structure::Reader(m) => v.func()[m.identity].clone(),
            _ => panic!("{} is not a comonad", self.name()),
        }
    }

    pub fn comult(&self, v: &Val) -> Val {
        match self {
            Structure::NonemptyList { .. } => {
                let xs = v.list();
                Val::List((0..xs.len()).map(|i| Val::List(xs[i..].to_vec())).collect())
            }
            Structure::Product { .. } => {
                let (c, _) = v.pair();
                Val::Pair(c, Box::new(v.clone()))
            }
            Structure::Reader(m) => {
                let f = v.func();
                let n = m.size();
                Val::Func((0..n).map(|a| Val::Func((0..n).map(|b| f[m.table[a][b]].clone()).collect())).collect())
            }
            _ => panic!("{} is not a comonad", self.name()),
        }
    }

    fn fits(&self, vs: &[&Val]) -> bool {
        match self.list_bound() {
            Some(b) => vs.iter().all(|v| v.max_list_len() <= b),
            None => true,
        }
    }
}

/// A report with coverage for bounded list structures.
#[derive(Debug, Clone, Default, Serialize)]
pub struct LawReport {
    pub report: ValidationReport,
    pub checked: usize,
    /// Instances whose intermediate values leave the list bound.
    pub skipped: usize,
}

impl LawReport {
    pub fn coverage(&self) -> f64 {
        let total = self.checked + self.skipped;
        if total == 0 { 1.0 } else { self.checked as f64 / total as f64 }
    }

    pub fn is_ok(&self) -> bool {
        self.report.is_ok()
    }

    fn record(&mut self, fits: bool, ok: bool, law: &str, input: &Val) {
        if !fits {
            self.skipped += 1;
            return;
        }
        self.checked += 1;
        if !ok && self.report.violations.len() < 20 {
            self.report.push(0, format!("{law} fails on {input}"));
        }
    }

    fn merge(&mut self, o: LawReport) {
        self.report.extend(o.report);
        self.checked += o.checked;
        self.skipped += o.skipped;
    }
}

const MAX_CARRIER: usize = 3;

fn too_large(s: &Structure, carrier: usize) -> Option<u128> {
    let n = carrier as u128;
    let limit = match s {
        Structure::Powerset | Structure::Filter => 2,
        _ => MAX_CARRIER,
    };
    (carrier > limit).then(|| {
        let m = 1u128 << n.min(7);
        1u128.checked_shl(m.min(127) as u32).unwrap_or(u128::MAX)
    })
}

const MAX_ELEMENTS: u128 = 1 << 20;

/// Size of `s` applied to a set of `n` elements, for the exponential structures.
fn cardinality(s: &Structure, n: u128) -> Option<u128> {
    match s {
        Structure::Powerset | Structure::Filter => Some(if n >= 127 { u128::MAX } else { 1 << n }),
        _ => None,
    }
}

fn guard(s: &Structure, n: usize) -> Result<(), SetError> {
    match cardinality(s, n as u128) {
        Some(estimate) if estimate > MAX_ELEMENTS => Err(SetError::TooLarge { estimate }),
        _ => Ok(()),
    }
}

/// Exhaustive unit/associativity or counit/coassociativity checks.
pub fn check_laws(s: &Structure, kind: Kind, carrier: usize) -> Result<LawReport, SetError> {
    if let Some(estimate) = too_large(s, carrier) {
        return Err(SetError::TooLarge { estimate });
    }
    let x = atoms(carrier);
    let mut r = LawReport::default();
    match kind {
        Kind::Monad => {
            if !s.is_monad() {
                return Err(SetError::Unknown(format!("{} is not a monad", s.name())));
            }
            let fx = s.elements(&x);
            for v in &fx {
                let a = s.mult(&s.unit(v));
                let b = s.mult(&s.fmap(v, &|y| s.unit(y)));
                r.record(s.fits(&[v, &a, &b]), a == *v && b == *v, "μ ∘ ηB = 1 = μ ∘ Bη", v);
            }
            let ffx = s.elements(&fx);
            let fffx = s.elements(&ffx);
            for v in &fffx {
                let inner = s.mult(v);
                let a = s.mult(&inner);
                let mapped = s.fmap(v, &|y| s.mult(y));
                let b = s.mult(&mapped);
                r.record(s.fits(&[v, &inner, &mapped, &a, &b]), a == b, "μ ∘ μB = μ ∘ Bμ", v);
            }
        }
        Kind::Comonad => {
            if !s.is_comonad() {
                return Err(SetError::Unknown(format!("{} is not a comonad", s.name())));
            }
            for v in &s.elements(&x) {
                let d = s.comult(v);
                let a = s.counit(&d);
                let b = s.fmap(&d, &|y| s.counit(y));
                let c1 = s.comult(&d);
                let c2 = s.fmap(&d, &|y| s.comult(y));
                r.record(s.fits(&[v, &d, &c1, &c2]), a == *v && b == *v && c1 == c2, "comonad laws", v);
            }
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LawName {
    /// `P(C × −) → C × P`.
    PowersetColor,
    /// `L(C × −) → C × L`.
    ListColor,
    /// `D(C × −) → C × D`.
    DistColor,
    /// `L S → S L` for `S = (−)^M`.
    ListReader,
    PowersetReader,
    FilterReader,
    DistReader,
    UltrafilterReader,
    /// `L⁺ L⁺ → L⁺ L⁺`.
    LPlus,
}

impl LawName {
    pub const SEVEN: [LawName; 7] = [
        LawName::PowersetColor,
        LawName::ListColor,
        LawName::DistColor,
        LawName::ListReader,
        LawName::PowersetReader,
        LawName::FilterReader,
        LawName::DistReader,
    ];

    pub fn parse(s: &str) -> Result<LawName, SetError> {
        Ok(match s {
            "powerset-color" => LawName::PowersetColor,
            "list-color" => LawName::ListColor,
            "dist-color" => LawName::DistColor,
            "list-reader" => LawName::ListReader,
            "powerset-reader" => LawName::PowersetReader,
            "filter-reader" => LawName::FilterReader,
            "dist-reader" => LawName::DistReader,
            "ultrafilter-reader" => LawName::UltrafilterReader,
            "lplus" => LawName::LPlus,
            other => return Err(SetError::Unknown(other.into())),
        })
    }

    pub fn slug(&self) -> &'static str {
        match self {
            LawName::PowersetColor => "powerset-color",
            LawName::ListColor => "list-color",
            LawName::DistColor => "dist-color",
            LawName::ListReader => "list-reader",
            LawName::PowersetReader => "powerset-reader",
            LawName::FilterReader => "filter-reader",
            LawName::DistReader => "dist-reader",
            LawName::UltrafilterReader => "ultrafilter-reader",
            LawName::LPlus => "lplus",
        }
    }
}

/// A mixed distributive law `θ : B C ⇒ C B` of a monad over a comonad.
#[derive(Debug, Clone)]
pub struct MixedLaw {
    pub name: LawName,
    pub monad: Structure,
    pub comonad: Structure,
}

#[derive(Debug, Clone)]
pub struct LawParams {
    pub colors: u32,
    pub monoid: FiniteMonoid,
    pub bound: usize,
    pub grid: u32,
}

impl Default for LawParams {
    fn default() -> LawParams {
        LawParams {
            colors: 2,
            monoid: FiniteMonoid::z2(),
            bound: 3,
            grid: 2,
        }
    }
}

impl MixedLaw {
    pub fn new(name: LawName, p: &LawParams) -> MixedLaw {
        let color = Structure::Product { colors: p.colors };
        let reader = Structure::Reader(p.monoid.clone());
        let (monad, comonad) = match name {
            LawName::PowersetColor => (Structure::Powerset, color),
            LawName::ListColor => (Structure::List { bound: p.bound }, color),
            LawName::DistColor => (Structure::Distribution { grid: p.grid }, color),
            LawName::ListReader => (Structure::List { bound: p.bound }, reader),
            LawName::PowersetReader => (Structure::Powerset, reader),
            LawName::FilterReader => (Structure::Filter, reader),
            LawName::DistReader => (Structure::Distribution { grid: p.grid }, reader),
            LawName::UltrafilterReader => (Structure::Ultrafilter, reader),
            LawName::LPlus => (Structure::NonemptyList { bound: p.bound }, Structure::NonemptyList { bound: p.bound }),
        };
        MixedLaw { name, monad, comonad }
    }

    fn m_size(&self) -> usize {
        match &self.comonad {
            Structure::Reader(m) => m.size(),
            _ => 0,
        }
    }

    pub fn theta(&self, v: &Val) -> Val {
        let sup = |cs: &mut dyn Iterator<Item = u32>| cs.max().unwrap_or(0);
        match self.name {
            LawName::PowersetColor => {
                let s = v.set();
                let c = sup(&mut s.iter().map(|p| p.pair().0));
                Val::Pair(c, Box::new(Val::Set(s.iter().map(|p| p.pair().1.clone()).collect())))
            }
            LawName::ListColor => {
                let s = v.list();
                let c = sup(&mut s.iter().map(|p| p.pair().0));
                Val::Pair(c, Box::new(Val::List(s.iter().map(|p| p.pair().1.clone()).collect())))
            }
            LawName::DistColor => {
                let s = v.dist();
                let c = sup(&mut s.iter().map(|(p, _)| p.pair().0));
                Val::Pair(c, Box::new(Val::dist_from(s.iter().map(|(p, w)| (p.pair().1.clone(), w.clone())))))
            }
            LawName::ListReader => {
                let s = v.list();
                Val::Func((0..self.m_size()).map(|m| Val::List(s.iter().map(|f| f.func()[m].clone()).collect())).collect())
            }
            LawName::PowersetReader | LawName::FilterReader | LawName::UltrafilterReader => {
                let s = v.set();
                Val::Func((0..self.m_size()).map(|m| Val::Set(s.iter().map(|f| f.func()[m].clone()).collect())).collect())
            }
            LawName::DistReader => {
                let s = v.dist();
                Val::Func(
                    (0..self.m_size())
                        .map(|m| Val::dist_from(s.iter().map(|(f, w)| (f.func()[m].clone(), w.clone()))))
                        .collect(),
                )
            }
            LawName::LPlus => lplus_theta(v),
        }
    }

    /// The four mixed-law identities on every input over `carrier` atoms.
    pub fn check(&self, carrier: usize) -> Result<LawReport, SetError> {
        for s in [&self.monad, &self.comonad] {
            if let Some(estimate) = too_large(s, carrier) {
                return Err(SetError::TooLarge { estimate });
            }
        }
        let (b, c) = (&self.monad, &self.comonad);
        let x = atoms(carrier);
        let cx = c.elements(&x);
        guard(b, cx.len())?;
        let bcx = b.elements(&cx);
        let th = |v: &Val| self.theta(v);
        let mut r = LawReport::default();
        for w in &cx {
            let a = th(&b.unit(w));
            let e = c.fmap(w, &|y| b.unit(y));
            r.record(b.fits(&[w, &a, &e]), a == e, "θ ∘ ηC = C η", w);
        }
        for v in &bcx {
            let t = th(v);
            let a = c.counit(&t);
            let e = b.fmap(v, &|y| c.counit(y));
            r.record(b.fits(&[v, &t, &a, &e]), a == e, "ε B ∘ θ = B ε", v);
            let lhs = c.comult(&t);
            let bd = b.fmap(v, &|y| c.comult(y));
            let mid = th(&bd);
            let rhs = c.fmap(&mid, &th);
            r.record(b.fits(&[v, &t, &lhs, &bd, &mid, &rhs]), lhs == rhs, "δ B ∘ θ = C θ ∘ θ C ∘ B δ", v);
        }
        guard(b, bcx.len())?;
        let bbcx = b.elements(&bcx);
        for v in &bbcx {
            let mu = b.mult(v);
            let lhs = th(&mu);
            let inner = b.fmap(v, &th);
            let mid = th(&inner);
            let rhs = c.fmap(&mid, &|y| b.mult(y));
            r.record(b.fits(&[v, &mu, &lhs, &inner, &mid, &rhs]), lhs == rhs, "θ ∘ μ C = C μ ∘ θ B ∘ B θ", v);
        }
        Ok(r)
    }

    /// `∇ ∘ β = C β ∘ θ ∘ B ∇` on every element of `B X` within the bounds.
    pub fn entwined_check(&self, carrier: usize, beta: &dyn Fn(&Val) -> Val, nabla: &dyn Fn(&Val) -> Val) -> bool {
        let (b, c) = (&self.monad, &self.comonad);
        let x = atoms(carrier);
        let mut bx = b.elements(&x);
        bx.sort_by_key(|v| v.weight());
        bx.iter().all(|v| nabla(&beta(v)) == c.fmap(&self.theta(&b.fmap(v, nabla)), beta))
    }
}

/// The nonempty-list law: `[w_1, …, w_m]` goes to the lists
/// `[x_{i,j}, x_{i+1,1}, …, x_{m,1}]` for `i = 1…m`, `j = 1…n_i`.
pub fn lplus_theta(v: &Val) -> Val {
    let ws = v.list();
    let heads: Vec<Val> = ws.iter().map(|w| w.list()[0].clone()).collect();
    let mut out = Vec::new();
    for (i, w) in ws.iter().enumerate() {
        for x in w.list() {
            let mut l = vec![x.clone()];
            l.extend_from_slice(&heads[i + 1..]);
            out.push(Val::List(l));
        }
    }
    Val::List(out)
}

/// `Σ n_i (m − i + 1)`.
pub fn lplus_term_count(v: &Val) -> usize {
    let ws = v.list();
    let m = ws.len();
    ws.iter().enumerate().map(|(i, w)| w.list().len() * (m - i)).sum()
}

/// The bimonad law on `L⁺` with its mixed-law report, the term count
/// asserted on every evaluated input.
pub fn lplus_bimonad(x_size: usize, bound: usize) -> Result<(MixedLaw, LawReport), SetError> {
    if x_size > MAX_CARRIER || bound > 5 {
        return Err(SetError::TooLarge {
            estimate: (x_size as u128 + 1).pow(bound as u32 * 2),
        });
    }
    let law = MixedLaw::new(
        LawName::LPlus,
        &LawParams {
            bound,
            ..LawParams::default()
        },
    );
    let mut r = law.check(x_size)?;
    let s = &law.monad;
    let x = atoms(x_size);
    let mut counts = LawReport::default();
    for v in s.elements(&s.elements(&x)) {
        let t = lplus_theta(&v);
        let n: usize = t.list().iter().map(|l| l.list().len()).sum();
        counts.record(true, n == lplus_term_count(&v), "term count Σ n_i(m−i+1)", &v);
    }
    r.merge(counts);
    Ok((law, r))
}

/// A finite semigroup by its table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Semigroup {
    pub table: Vec<Vec<usize>>,
}

impl Semigroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Semigroup, SetError> {
        let s = Semigroup { table };
        let n = s.size();
        if s.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(SetError::Malformed("semigroup table must be square with entries in range".into()));
        }
        if !s.is_associative() {
            return Err(SetError::Malformed("semigroup table is not associative".into()));
        }
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn product(&self, w: &[usize]) -> usize {
        w[1..].iter().fold(w[0], |acc, &x| self.mul(acc, x))
    }

    fn is_associative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    /// `xy = x`.
    pub fn left_zero(n: usize) -> Semigroup {
        Semigroup {
            table: (0..n).map(|a| vec![a; n]).collect(),
        }
    }

    /// Every associative table on `n` elements.
    pub fn all(n: usize) -> Vec<Semigroup> {
        let cells = n * n;
        let total = n.pow(cells as u32);
        (0..total)
            .filter_map(|mut code| {
                let mut t = vec![vec![0; n]; n];
                for k in 0..cells {
                    t[k / n][k % n] = code % n;
                    code /= n;
                }
                let s = Semigroup { table: t };
                s.is_associative().then_some(s)
            })
            .collect()
    }

    /// The semigroup `W X`: `[x_1…x_m][y_1…y_n] = [x_1y_1, …, x_my_1, y_1, …, y_n]`.
    pub fn w_product(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = a.iter().map(|&x| self.mul(x, b[0])).collect();
        out.extend_from_slice(b);
        out
    }

    /// The left machine expansion `[x_1⋯x_n, x_2⋯x_n, …, x_n]`.
    pub fn machine_expansion(&self, w: &[usize]) -> Vec<usize> {
        (0..w.len()).map(|i| self.product(&w[i..])).collect()
    }
}

/// An `L⁺`-coalgebra: a forest by parent pointers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Forest {
    pub parent: Vec<Option<usize>>,
}

impl Forest {
    /// `x ↦ [x, parent(x), …, root]`, or `None` on a cycle.
    pub fn chain(&self, x: usize) -> Option<Vec<usize>> {
        let mut out = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur] {
            if out.len() > self.parent.len() {
                return None;
            }
            out.push(p);
            cur = p;
        }
        Some(out)
    }

    pub fn all(n: usize) -> Vec<Forest> {
        let total = (n + 1).pow(n as u32);
        (0..total)
            .map(|mut code| {
                let parent = (0..n)
                    .map(|_| {
                        let p = code % (n + 1);
                        code /= n + 1;
                        (p < n).then_some(p)
                    })
                    .collect();
                Forest { parent }
            })
            .filter(|f| (0..n).all(|x| f.chain(x).is_some()))
            .collect()
    }
}

fn list_of(xs: &[usize]) -> Val {
    Val::List(xs.iter().map(|&x| Val::Atom(x as u32)).collect())
}

/// `θ`-entwined check for a semigroup with a forest coalgebra.
pub fn lplus_entwined(law: &MixedLaw, sg: &Semigroup, forest: &Forest) -> bool {
    let beta = |v: &Val| Val::Atom(sg.product(&v.list().iter().map(|a| a.atom()).collect::<Vec<_>>()) as u32);
    let nabla = |v: &Val| list_of(&forest.chain(v.atom()).expect("acyclic"));
    law.entwined_check(sg.size(), &beta, &nabla)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntwinedLPlus {
    pub semigroup: Semigroup,
    pub forest: Forest,
}

/// All entwined algebras for the `L⁺` law on carriers of size at most `max_carrier`.
pub fn entwined_enumerate_lplus(max_carrier: usize, bound: usize) -> Result<Vec<EntwinedLPlus>, SetError> {
    if max_carrier > 3 {
        let n = max_carrier as u128;
        return Err(SetError::TooLarge {
            estimate: n.pow((n * n) as u32) * (n + 1).pow(n as u32),
        });
    }
    let law = MixedLaw::new(
        LawName::LPlus,
        &LawParams {
            bound,
            ..LawParams::default()
        },
    );
    let mut out = Vec::new();
    for n in 0..=max_carrier {
        let forests = Forest::all(n);
        for sg in Semigroup::all(n) {
            for f in &forests {
                if lplus_entwined(&law, &sg, f) {
                    out.push(EntwinedLPlus {
                        semigroup: sg.clone(),
                        forest: f.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// A `P`-algebra `β : P X → X` as a table indexed by subset bitmask.
pub type SupTable = Vec<usize>;

/// Every Eilenberg–Moore algebra of `P` on `n` points, by brute force.
pub fn powerset_algebras(n: usize) -> Vec<SupTable> {
    let subsets = 1usize << n;
    let free: Vec<usize> = (0..subsets).filter(|b| b.count_ones() != 1).collect();
    let total = n.pow(free.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut beta = vec![0; subsets];
        for i in 0..n {
            beta[1 << i] = i;
        }
        for &b in &free {
            beta[b] = code % n;
            code /= n;
        }
        // β(∪𝒜) = β{β(A) : A ∈ 𝒜}
        let ok = (0..1u64 << subsets).all(|fam| {
            let mut union = 0;
            let mut images = 0;
            for a in 0..subsets {
                if fam >> a & 1 == 1 {
                    union |= a;
                    images |= 1 << beta[a];
                }
            }
            beta[union] == beta[images]
        });
        if ok {
            out.push(beta);
        }
    }
    out
}

/// Complete lattices on `n` points, as sup tables.
pub fn complete_lattices(n: usize) -> Vec<SupTable> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for code in 0..1u64 << pairs.len() {
        let le = |a: usize, b: usize| a == b || pairs.iter().position(|&p| p == (a, b)).is_some_and(|k| code >> k & 1 == 1);
        let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))));
        let trans = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(le(a, b) && le(b, c)) || le(a, c))));
        if !antisym || !trans {
            continue;
        }
        let mut table = Vec::new();
        let mut complete = true;
        for s in 0..1usize << n {
            let ubs: Vec<usize> = (0..n).filter(|&u| (0..n).all(|a| s >> a & 1 == 0 || le(a, u))).collect();
            match ubs.iter().find(|&&u| ubs.iter().all(|&v| le(u, v))) {
                Some(&l) => table.push(l),
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            out.push(table);
        }
    }
    out.sort();
    out
}

fn colorings(n: usize, colors: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..colors).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn set_to_mask(v: &Val) -> usize {
    v.set().iter().fold(0, |m, a| m | 1 << a.atom())
}

/// Entwined algebras for the powerset/colour law, found through the law.
pub fn powerset_color_entwined(n: usize, colors: u32) -> Vec<(SupTable, Vec<u32>)> {
    let law = MixedLaw::new(
        LawName::PowersetColor,
        &LawParams {
            colors,
            ..LawParams::default()
        },
    );
    let mut out = Vec::new();
    for beta in powerset_algebras(n) {
        for kappa in colorings(n, colors) {
            let b = |v: &Val| Val::Atom(beta[set_to_mask(v)] as u32);
            let nab = |v: &Val| Val::Pair(kappa[v.atom()], Box::new(v.clone()));
            if law.entwined_check(n, &b, &nab) {
                out.push((beta.clone(), kappa));
            }
        }
    }
    out.sort();
    out
}

/// Complete lattices with a sup-preserving colouring, `sup ∅ = c0`.
pub fn sup_preserving_colorings(n: usize, colors: u32) -> Vec<(SupTable, Vec<u32>)> {
    let mut out = Vec::new();
    for table in complete_lattices(n) {
        for kappa in colorings(n, colors) {
            let ok = (0..1usize << n).all(|s| kappa[table[s]] == (0..n).filter(|a| s >> a & 1 == 1).map(|a| kappa[a]).max().unwrap_or(0));
            if ok {
                out.push((table.clone(), kappa));
            }
        }
    }
    out.sort();
    out
}

/// Monoid tables on `n` points (any identity).
pub fn all_monoids(n: usize) -> Vec<FiniteMonoid> {
    Semigroup::all(n)
        .into_iter()
        .filter_map(|s| (0..n).find_map(|e| FiniteMonoid::new(s.table.clone(), e).ok()))
        .collect()
}

/// Entwined algebras for the list/colour law, through the law.
pub fn list_color_entwined(n: usize, colors: u32, bound: usize) -> Vec<(FiniteMonoid, Vec<u32>)> {
    let law = MixedLaw::new(
        LawName::ListColor,
        &LawParams {
            colors,
            bound,
            ..LawParams::default()
        },
    );
    let mut out = Vec::new();
    for m in all_monoids(n) {
        for kappa in colorings(n, colors) {
            let b = |v: &Val| Val::Atom(v.list().iter().fold(m.identity, |acc, a| m.table[acc][a.atom()]) as u32);
            let nab = |v: &Val| Val::Pair(kappa[v.atom()], Box::new(v.clone()));
            if law.entwined_check(n, &b, &nab) {
                out.push((m.clone(), kappa));
            }
        }
    }
    out
}

/// Monoids with `κ(xy) = sup(κx, κy)` and `κ(e) = c0`.
pub fn monoid_colorings(n: usize, colors: u32) -> Vec<(FiniteMonoid, Vec<u32>)> {
    let mut out = Vec::new();
    for m in all_monoids(n) {
        for kappa in colorings(n, colors) {
            let ok = kappa[m.identity] == 0
                && (0..n).all(|a| (0..n).all(|b| kappa[m.table[a][b]] == kappa[a].max(kappa[b])));
            if ok {
                out.push((m.clone(), kappa));
            }
        }
    }
    out
}

/// `μ ∘ B g ∘ f`.
pub fn kleisli_compose<'a>(
    s: &'a Structure,
    f: &'a dyn Fn(&Val) -> Val,
    g: &'a dyn Fn(&Val) -> Val,
) -> impl Fn(&Val) -> Val + 'a {
    move |x: &Val| s.mult(&s.fmap(&f(x), g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> LawParams {
        LawParams::default()
    }

    #[test]
    fn monads_and_comonads() {
        for s in [
            Structure::Powerset,
            Structure::List { bound: 3 },
            Structure::NonemptyList { bound: 3 },
            Structure::Filter,
            Structure::Ultrafilter,
            Structure::Distribution { grid: 2 },
        ] {
            let r = check_laws(&s, Kind::Monad, 2).unwrap();
            assert!(r.is_ok(), "{}: {}", s.name(), r.report);
            assert!(r.checked > 0);
        }
        for s in [
            Structure::NonemptyList { bound: 3 },
            Structure::Product { colors: 2 },
            Structure::Reader(FiniteMonoid::z2()),
            Structure::Reader(FiniteMonoid::idempotent()),
        ] {
            let r = check_laws(&s, Kind::Comonad, 2).unwrap();
            assert!(r.is_ok(), "{}: {}", s.name(), r.report);
        }
        let r = check_laws(&Structure::NonemptyList { bound: 3 }, Kind::Comonad, 2).unwrap();
        assert_eq!(r.checked, 14);
        assert!(check_laws(&Structure::Powerset, Kind::Monad, 3).is_err());
    }

    #[test]
    fn seven_laws() {
        for name in LawName::SEVEN.iter().chain([&LawName::UltrafilterReader]) {
            let r = MixedLaw::new(*name, &params()).check(2).unwrap();
            assert!(r.is_ok(), "{name:?}: {}", r.report);
        }
    }

    #[test]
    fn empty_branches() {
        let p = params();
        let law = MixedLaw::new(LawName::PowersetColor, &p);
        assert_eq!(law.theta(&Val::Set(BTreeSet::new())), Val::Pair(0, Box::new(Val::Set(BTreeSet::new()))));
        let law = MixedLaw::new(LawName::ListColor, &p);
        assert_eq!(law.theta(&Val::List(vec![])), Val::Pair(0, Box::new(Val::List(vec![]))));
    }

    #[test]
    fn lplus_pattern() {
        let a = Val::Atom(0);
        let b = Val::Atom(1);
        let one = Val::List(vec![Val::List(vec![a.clone()])]);
        assert_eq!(lplus_theta(&one), one);
        let ab = Val::List(vec![Val::List(vec![a.clone(), b.clone()])]);
        assert_eq!(lplus_theta(&ab), Val::List(vec![Val::List(vec![a.clone()]), Val::List(vec![b.clone()])]));
        assert_eq!(lplus_term_count(&ab), 2);
        let (_, r) = lplus_bimonad(2, 4).unwrap();
        assert!(r.is_ok(), "{}", r.report);
        assert!(r.checked > 0 && r.coverage() > 0.0);
    }

    #[test]
    fn machine_expansion_and_w() {
        let s = Semigroup::left_zero(2);
        assert_eq!(s.machine_expansion(&[0, 1]), vec![0, 1]);
        for sg in Semigroup::all(2) {
            let words: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![0, 1], vec![1, 1, 0]];
            for a in &words {
                for b in &words {
                    for c in &words {
                        assert_eq!(sg.w_product(&sg.w_product(a, b), c), sg.w_product(a, &sg.w_product(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn only_empty_entwined() {
        let found = entwined_enumerate_lplus(2, 4).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].semigroup.size(), 0);
    }

    #[test]
    fn powerset_characterization() {
        for n in 0..=3 {
            assert_eq!(powerset_algebras(n).len(), complete_lattices(n).len());
            assert_eq!(powerset_color_entwined(n, 2), sup_preserving_colorings(n, 2));
        }
        let constant = powerset_color_entwined(2, 1);
        assert!(constant.iter().all(|(_, k)| k.iter().all(|&c| c == 0)));
    }

    #[test]
    fn list_characterization() {
        for n in 0..=2 {
            assert_eq!(list_color_entwined(n, 2, 3), monoid_colorings(n, 2));
        }
    }

    #[test]
    fn kleisli() {
        let s = Structure::Powerset;
        let f = |_: &Val| Val::Set([Val::Atom(0)].into());
        let g = |_: &Val| Val::Set([Val::Atom(1), Val::Atom(2)].into());
        let h = kleisli_compose(&s, &f, &g);
        assert_eq!(h(&Val::Atom(5)), Val::Set([Val::Atom(1), Val::Atom(2)].into()));
        let eta = |x: &Val| s.unit(x);
        let k = kleisli_compose(&s, &f, &eta);
        assert_eq!(k(&Val::Atom(3)), f(&Val::Atom(3)));
    }
}
