mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{catalog_algebras, exact_dims, Q};
use duplicial::algebra::{Algebra, AlgebraMap, Bimodule};
use duplicial::engine::{build_all, check_homotopy, HomotopySide, Instance, Object};
use duplicial::hochschild::{
    bar_module, cyclic_instance, cyclic_module, free_instance, hochschild_module, twist_by_one_cell, twisted_instance,
    twisted_module, Ctx, NMode,
};
use duplicial::hopf::{
    antipode_by_linear_system, galois_map, hopf_cyclic_module, instance, is_hopf_and_antipode, sayd_check, Bialgebra,
    Coefficients, Functor, HCtx, HopfStructure, HopfVerdict,
};
use duplicial::linalg::Matrix;
use duplicial::nerve::{all_coreflectors, decide, duplicial_on_nerve, FiniteCategory};
use duplicial::setlaws::{
    all_monoids, atoms, entwined_enumerate_lplus, lplus_bimonad, lplus_term_count, lplus_theta, LawName, LawParams,
    MixedLaw, Val,
};
use duplicial::simplicial::{decalage_coalgebra_report, hc_of_duplicial, HcRoute, Level, TruncatedDuplicialModule};

type Outcome = Result<String, String>;

fn sigma_catalog() -> Vec<(String, Algebra, AlgebraMap)> {
    let d = Algebra::dual_numbers(Q);
    let c3 = Algebra::cyclic_group(Q, 3);
    let mut out = Vec::new();
    for c in [1, -1, 2] {
        out.push((format!("Q[x]/(x^2), x -> {c}x"), d.clone(), AlgebraMap::dual_scaling(&d, c)));
    }
    for k in [1, 2] {
        out.push((format!("Q[C3], g -> g^{k}"), c3.clone(), AlgebraMap::group_power(&c3, k)));
    }
    out
}

fn hopf(n: usize) -> HopfStructure {
    match is_hopf_and_antipode(&Bialgebra::cyclic_group(Q, n)) {
        HopfVerdict::Hopf(s) => s,
        HopfVerdict::NotHopf => panic!("Q[C{n}] is Hopf"),
    }
}

/// Trivial, sign, and sign with the coaction `m ↦ g ⊗ m`.
fn coefficient_catalog() -> Vec<(String, HopfStructure, Coefficients, Coefficients)> {
    let mut out = Vec::new();
    for n in [2, 3] {
        let s = hopf(n);
        let k = Coefficients::trivial(&s.bialgebra);
        out.push((format!("Q[C{n}] trivial"), s.clone(), k.clone(), k));
    }
    let s = hopf(2);
    let k = Coefficients::trivial(&s.bialgebra);
    let sign = Coefficients::sign(&s.bialgebra);
    let bad = sign.with_grouplike_coaction(&s.bialgebra, 1);
    out.push(("Q[C2] sign".into(), s.clone(), sign, k.clone()));
    out.push(("Q[C2] sign, coaction g".into(), s, bad, k));
    out
}

fn suite(name: &str, x: &TruncatedDuplicialModule) -> Result<(), String> {
    let r = x.check_structure(Level::Duplicial);
    if !r.is_ok() {
        return Err(format!("{name}: {r}"));
    }
    let d = decalage_coalgebra_report(x);
    if !d.is_ok() {
        return Err(format!("{name} (décalage): {d}"));
    }
    Ok(())
}

fn c1() -> Outcome {
    let top = 4;
    let mut n = 0;
    for (name, a) in catalog_algebras(Q) {
        suite(&format!("C({name})"), &cyclic_module(&a, top))?;
        n += 1;
    }
    for (name, a, s) in sigma_catalog() {
        suite(&name, &twisted_module(&a, &s, top))?;
        n += 1;
    }
    for (name, a) in catalog_algebras(Q).into_iter().take(3) {
        let ctx = Ctx::new(&a, vec![], vec![], NMode::Fast);
        let (ct, cs, _) = build_all(&cyclic_instance(&ctx), top);
        suite(&format!("C_T({name})"), &ct)?;
        suite(&format!("C*_S({name})"), &cs)?;
        n += 2;
    }
    for (name, s, m, k) in coefficient_catalog() {
        let (x, r) = hopf_cyclic_module(&s, &m, &k, top).map_err(|e| e.to_string())?;
        if !r.is_ok() {
            return Err(format!("{name}: {r}"));
        }
        suite(&name, &x)?;
        n += 1;
    }
    for (name, c) in FiniteCategory::catalog() {
        let v = decide(&c, top);
        if let Some(t) = v.coreflector {
            let x = duplicial_on_nerve(&c, &t, top).map_err(|e| e.to_string())?;
            suite(&format!("nerve {name}"), &x)?;
            n += 1;
        }
    }
    Ok(format!("{n} modules, top {top}"))
}

fn certificate<O: Object>(name: &str, inst: &Instance<O>, top: usize) -> Result<bool, String> {
    let (ct, cs, rl) = build_all(inst, top);
    if !rl.report.is_ok() {
        return Err(format!("{name}: {}", rl.report));
    }
    let law = &inst.law;
    let m = &inst.coalgebra.m;
    for n in 0..=top {
        let rho = inst.rho_n_recursive(n).1;
        let r = inst.opcoalgebra.n.map(&law.tp(n + 1, m), &law.sp(n + 1, m), &rho);
        let l = inst.lambda_n_recursive(n, m).1;
        if l.mul(&r) != ct.t(n).pow(n + 1) || rl.l[n].mul(&rl.r[n]) != ct.t(n).pow(n + 1) {
            return Err(format!("{name}: LR ≠ t_T^{} at degree {n}", n + 1));
        }
        if r.mul(&l) != cs.t(n).pow(n + 1) || rl.r[n].mul(&rl.l[n]) != cs.t(n).pow(n + 1) {
            return Err(format!("{name}: RL ≠ t_S^{} at degree {n}", n + 1));
        }
    }
    Ok(Instance::<O>::is_cyclic_certificate(&rl))
}

fn c2() -> Outcome {
    let mut n = 0;
    for (name, a) in catalog_algebras(Q).into_iter().take(5) {
        let ctx = Ctx::new(&a, vec![], vec![], NMode::Fast);
        certificate(&name, &cyclic_instance(&ctx), 3)?;
        n += 1;
    }
    for (name, a, s) in sigma_catalog() {
        let ctx = Ctx::new(&a, vec![], vec![s], NMode::Fast);
        certificate(&name, &twisted_instance(&ctx, 0), 3)?;
        n += 1;
    }
    for (name, s, m, k) in coefficient_catalog() {
        let ctx = HCtx::new(&s, &m, &k);
        certificate(&name, &instance(&ctx, Functor::TensorYd), 3)?;
        n += 1;
    }
    Ok(format!("{n} instances, n ≤ 3"))
}

fn c3() -> Outcome {
    let mut lines = Vec::new();
    for (name, a, s) in sigma_catalog() {
        let x = twisted_module(&a, &s, 4);
        let failing = x.first_noncyclic_degree();
        if failing.is_none() != s.is_identity() {
            return Err(format!("{name}: cyclic = {}", failing.is_none()));
        }
        lines.push(match failing {
            Some(d) => format!("{name}: fails at degree {d}"),
            None => format!("{name}: cyclic"),
        });
    }
    Ok(lines.join("; "))
}

fn c4() -> Outcome {
    let mut n = 0;
    for (name, a, s) in sigma_catalog() {
        let (x, r) = twist_by_one_cell(&a, &s, 4);
        if !r.is_ok() {
            return Err(format!("{name}: {r}"));
        }
        let y = twisted_module(&a, &s, 4);
        if x.simplicial != y.simplicial || (0..=4).any(|k| x.t(k) != y.t(k)) {
            return Err(format!("{name}: matrices differ"));
        }
        n += 1;
    }
    Ok(format!("{n} twists, top 4"))
}

fn c5() -> Outcome {
    let mut lines = Vec::new();
    for a in [Algebra::ground(Q), Algebra::dual_numbers(Q), Algebra::upper_triangular(Q)] {
        let m = Bimodule::regular(&a);
        let direct = exact_dims(&hochschild_module(&a, &m, 4).moore_complex().betti_numbers());
        for mode in [NMode::Fast, NMode::Generic] {
            let bar = exact_dims(&bar_module(&a, &m, 4, mode).moore_complex().betti_numbers());
            if bar.len() < 4 || bar[..4] != direct[..4] {
                return Err(format!("dim {}: bar {bar:?} vs direct {direct:?}", a.dim()));
            }
        }
        lines.push(format!("{:?}", &direct[..4]));
    }
    Ok(lines.join(" "))
}

fn c6() -> Outcome {
    let x = cyclic_module(&Algebra::ground(Q), 5);
    let a = hc_of_duplicial(&x, HcRoute::ViaPiShriekK);
    let b = hc_of_duplicial(&x, HcRoute::ViaPF);
    if !a.report.is_ok() || !b.report.is_ok() {
        return Err(format!("{}{}", a.report, b.report));
    }
    let (da, db) = (exact_dims(&a.betti), exact_dims(&b.betti));
    if da.len() < 4 || db.len() < 4 || da[..4] != [1, 0, 1, 0] || db[..4] != [1, 0, 1, 0] {
        return Err(format!("{da:?} / {db:?}"));
    }
    Ok(format!("{:?} by both routes", &da[..4]))
}

fn c7() -> Outcome {
    for n in [2, 3] {
        let h = Bialgebra::cyclic_group(Q, n);
        let HopfVerdict::Hopf(s) = is_hopf_and_antipode(&h) else {
            return Err(format!("Q[C{n}] not detected Hopf"));
        };
        let inverse = Matrix::from_triplets(Q, n, n, (0..n).map(|i| ((n - i) % n, i, Q.one())));
        if s.antipode != inverse {
            return Err(format!("Q[C{n}]: antipode is not g ↦ g⁻¹"));
        }
        if antipode_by_linear_system(&h).as_ref() != Some(&inverse) {
            return Err(format!("Q[C{n}]: linear system disagrees"));
        }
        let r = s.antipode_report();
        if !r.is_ok() {
            return Err(format!("Q[C{n}]: {r}"));
        }
    }
    let idem = Bialgebra::idempotent_monoid(Q);
    if !matches!(is_hopf_and_antipode(&idem), HopfVerdict::NotHopf) || galois_map(&idem).rank() == 4 {
        return Err("{1,e} detected Hopf".into());
    }
    if antipode_by_linear_system(&idem).is_some() {
        return Err("{1,e} has an antipode".into());
    }
    Ok("Q[C2], Q[C3] Hopf with S(g) = g⁻¹; {1,e} not Hopf".into())
}

fn c8() -> Outcome {
    let mut notes = Vec::new();
    for (name, s, m, k) in coefficient_catalog() {
        let sayd = sayd_check(&s, &m, &k);
        let ctx = HCtx::new(&s, &m, &k);
        let top = if sayd { 3 } else { 2 };
        let (_, _, rl) = build_all(&instance(&ctx, Functor::TensorYd), top);
        if !rl.report.is_ok() {
            return Err(format!("{name}: {}", rl.report));
        }
        let failing = (0..=top).find(|&n| !rl.l[n].mul(&rl.r[n]).is_identity());
        match (sayd, failing) {
            (true, None) => {}
            (true, Some(d)) => return Err(format!("{name}: SAYD but LR ≠ 1 at degree {d}")),
            (false, Some(d)) => notes.push(format!("{name}: LR ≠ 1 at degree {d}")),
            (false, None) => return Err(format!("{name}: not SAYD but LR = 1 through {top}")),
        }
    }
    if notes.is_empty() {
        return Err("no non-SAYD coefficients".into());
    }
    Ok(notes.join("; "))
}

fn c9() -> Outcome {
    let bound = 4;
    let mut notes = Vec::new();
    let mut inputs = 0;
    for x in 0..=2 {
        let (law, r) = lplus_bimonad(x, bound).map_err(|e| e.to_string())?;
        if !r.is_ok() {
            return Err(format!("|X| = {x}: {}", r.report));
        }
        notes.push(format!("|X|={x}: {} checked, coverage {:.0}%", r.checked, 100.0 * r.coverage()));
        for v in law.monad.elements(&law.comonad.elements(&atoms(x))) {
            let Val::List(out) = lplus_theta(&v) else {
                return Err(format!("θ({v}) is not a list"));
            };
            let terms: usize = out.iter().map(|l| if let Val::List(x) = l { x.len() } else { 0 }).sum();
            if terms != lplus_term_count(&v) {
                return Err(format!("term count fails on {v}"));
            }
            inputs += 1;
        }
    }
    let found = entwined_enumerate_lplus(2, bound).map_err(|e| e.to_string())?;
    if found.len() != 1 || !found[0].semigroup.table.is_empty() {
        return Err(format!("{} entwined algebras", found.len()));
    }
    Ok(format!("{}; term count on {inputs} inputs; entwined = {{∅}}", notes.join(", ")))
}

fn c10() -> Outcome {
    let mut monoids = all_monoids(1);
    monoids.extend(all_monoids(2));
    let mut total = 0;
    let mut covered = (0usize, 0usize);
    for name in LawName::SEVEN {
        let mut params = Vec::new();
        for colors in 1..=2 {
            for monoid in &monoids {
                for bound in 1..=3 {
                    params.push(LawParams { colors, monoid: monoid.clone(), bound, grid: 2 });
                }
            }
        }
        let mut laws: Vec<MixedLaw> = Vec::new();
        for p in &params {
            let law = MixedLaw::new(name, p);
            if !laws.iter().any(|l| l.monad == law.monad && l.comonad == law.comonad) {
                laws.push(law);
            }
        }
        for law in &laws {
            for carrier in 0..=2 {
                let r = law.check(carrier).map_err(|e| format!("{}: {e}", name.slug()))?;
                if !r.is_ok() {
                    return Err(format!("{} on {carrier} atoms: {}", name.slug(), r.report));
                }
                covered.0 += r.checked;
                covered.1 += r.skipped;
                total += 1;
            }
        }
    }
    let coverage = 100.0 * covered.0 as f64 / (covered.0 + covered.1).max(1) as f64;
    Ok(format!("7 laws, {total} configurations, {} inputs, coverage {coverage:.1}%", covered.0))
}

fn c11() -> Outcome {
    let cats: Vec<(&str, FiniteCategory)> = FiniteCategory::catalog();
    let get = |n: &str| cats.iter().find(|(m, _)| *m == n).map(|(_, c)| c).ok_or(format!("missing {n}"));
    for name in ["Z2", "Z3", "indiscrete2"] {
        let v = decide(get(name)?, 4);
        if !(v.duplicial && v.cyclic && v.report.is_ok()) {
            return Err(format!("{name} not cyclic"));
        }
    }
    let interval = get("interval")?;
    let v = decide(interval, 4);
    let witness = v.witness.as_ref().map(|w| w.names(interval));
    if !v.duplicial || v.cyclic || witness != Some(vec!["0".to_string()]) {
        return Err(format!("interval: duplicial {}, cyclic {}, witness {witness:?}", v.duplicial, v.cyclic));
    }
    if decide(get("idempotent")?, 4).duplicial {
        return Err("idempotent monoid has a duplicial structure".into());
    }
    for (name, c) in &cats {
        if c.num_morphisms() > 8 {
            return Err(format!("{name} has {} morphisms", c.num_morphisms()));
        }
        let v = decide(c, 3);
        if v.witness.is_some() == all_coreflectors(c, 1).is_empty() {
            return Err(format!("{name}: oracle disagrees"));
        }
    }
    Ok(format!("decisions as expected; oracle agrees on {} categories", cats.len()))
}

fn contractible<O: Object>(name: &str, inst: &Instance<O>, side: HomotopySide) -> Result<(), String> {
    let top = 4;
    let (ct, cs, _) = build_all(inst, top);
    for (x, on_cs) in [(&ct, false), (&cs, true)] {
        let h = inst.contracting_homotopy(top, side, on_cs).ok_or(format!("{name}: no homotopy"))?;
        let r = check_homotopy(x, &h);
        if !r.is_ok() {
            return Err(format!("{name}: {r}"));
        }
        let b = x.simplicial.moore_complex().betti_numbers();
        if b[1..=3].iter().any(|b| b.truncated || b.dim != 0) {
            return Err(format!("{name}: positive homology {b:?}"));
        }
    }
    Ok(())
}

fn c12() -> Outcome {
    let mut n = 0;
    for (name, a) in catalog_algebras(Q).into_iter().take(6) {
        let ctx = Ctx::new(&a, vec![], vec![], NMode::Fast);
        contractible(&format!("A ⊗ A over {name}"), &free_instance(&ctx), HomotopySide::Coefficient)?;
        n += 1;
    }
    for k in [2, 3] {
        let s = hopf(k);
        let t = Coefficients::trivial(&s.bialgebra);
        let ctx = HCtx::new(&s, &t, &t);
        contractible(&format!("forgetful over Q[C{k}]"), &instance(&ctx, Functor::Forgetful), HomotopySide::Functor)?;
        n += 1;
    }
    Ok(format!("{n} free instances, h b + b h = 1 through degree 3"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, Option<u64>, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("C1", "duplicial identity suite", Some(10), c1),
        ("C2", "LR = t_T^{n+1}, RL = t_S^{n+1}", None, c2),
        ("C3", "cyclic iff σ = id", None, c3),
        ("C4", "twist by 1-cell = twisted module", None, c4),
        ("C5", "bar/direct Betti agreement", None, c5),
        ("C6", "HC(Q) = (1,0,1,0)", Some(1), c6),
        ("C7", "Galois/Hopf detection", None, c7),
        ("C8", "SAYD implies LR = 1", None, c8),
        ("C9", "L⁺ bimonad", Some(60), c9),
        ("C10", "seven set laws", Some(120), c10),
        ("C11", "nerve decision", Some(30), c11),
        ("C12", "contractibility", None, c12),
    ];
    let mut failed = 0;
    for (id, title, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(msg), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("{msg}; over the {s} s limit")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS {id} {title}: {msg} ({:.2} s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {id} {title}: {msg} ({:.2} s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
