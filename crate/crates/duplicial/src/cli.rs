//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Bimodule};
use crate::complexes::Betti;
use crate::hochschild::{cyclic_module, hochschild_module, twisted_module};
use crate::hopf::{hopf_cyclic_module, is_hopf_and_antipode, sayd_check, Coefficients, HopfVerdict};
use crate::io::{self, InputError};
use crate::nerve::decide;
use crate::report::ValidationReport;
use crate::setlaws::{
    check_laws, entwined_enumerate_lplus, list_color_entwined, powerset_color_entwined, FiniteMonoid, Kind, LawName,
    LawParams, MixedLaw, SetError, Structure,
};
use crate::simplicial::{hc_of_duplicial, HcRoute, Level};

/// Largest chain-module dimension computed before the top degree is lowered.
pub const DIM_CAP: usize = 50_000;

#[derive(Parser, Debug)]
#[command(name = "duplicial", about = "Exact Hochschild, cyclic and Hopf-cyclic homology; set laws; nerves")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hochschild homology `HH_n(A, M)`.
    Hochschild {
        #[arg(long)]
        algebra: PathBuf,
        /// Bimodule file; defaults to `A` itself.
        #[arg(long)]
        bimodule: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        top: usize,
    },
    /// Cyclic homology `HC_n(A)`.
    Cyclic {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        top: usize,
    },
    /// Twisted cyclic homology for an algebra map `σ`.
    Twisted {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, default_value_t = 4)]
        top: usize,
    },
    /// Hopf test, antipode, and Hopf-cyclic homology.
    Hopf {
        #[arg(long)]
        bialgebra: PathBuf,
        /// Right module / left comodule `M`; trivial by default.
        #[arg(long)]
        coefficients: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// Monad, comonad or mixed distributive law checks on finite sets.
    CheckLaw {
        /// powerset-color, list-color, dist-color, list-reader, powerset-reader,
        /// filter-reader, dist-reader, ultrafilter-reader, lplus
        #[arg(long, conflicts_with = "structure")]
        law: Option<String>,
        /// P, L, L+, F, U, D, C, R
        #[arg(long)]
        structure: Option<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Monad)]
        kind: KindArg,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        /// trivial, Z2 or idem
        #[arg(long, default_value = "Z2")]
        monoid: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        grid: u32,
    },
    /// Enumerates entwined algebras for a law.
    EntwinedSearch {
        /// powerset-color, list-color or lplus
        #[arg(long)]
        law: String,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
        #[arg(long, default_value_t = 2)]
        colors: u32,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Duplicial and cyclic structures on the nerve of a finite category.
    Nerve {
        #[arg(long)]
        category: PathBuf,
        #[arg(long, default_value_t = 4)]
        top: usize,
    },
    /// Schema and invariant check of an input file.
    Validate { path: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Monad,
    Comonad,
}

/// Exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Invalid = 1,
    Parse = 2,
}

struct Out<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Format,
}

impl Out<'_> {
    fn emit(&mut self, table: &str, value: Value) {
        match self.format {
            Format::Table => {
                let _ = write!(self.out, "{table}");
            }
            Format::Json => {
                let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            }
        }
    }

    fn warn(&mut self, msg: &str) {
        let _ = writeln!(self.err, "warning: {msg}");
    }
}

fn input_status(e: &InputError) -> Status {
    match e {
        InputError::Invariant(_) => Status::Invalid,
        _ => Status::Parse,
    }
}

fn fail(o: &mut Out, e: InputError) -> Status {
    let _ = writeln!(o.err, "error: {e}");
    input_status(&e)
}

fn report_status(r: &ValidationReport) -> Status {
    if r.is_ok() {
        Status::Ok
    } else {
        Status::Invalid
    }
}

fn betti_table(title: &str, bs: &[Betti]) -> String {
    let mut s = format!("{title}\n degree  dim\n");
    for b in bs {
        let flag = if b.truncated { "  (truncated)" } else { "" };
        s += &format!(" {:>6}  {:>3}{flag}\n", b.degree, b.dim);
    }
    s
}

fn betti_json(bs: &[Betti]) -> Value {
    json!(bs.iter().map(|b| json!({"degree": b.degree, "dim": b.dim, "truncated": b.truncated})).collect::<Vec<_>>())
}

/// Lowers `top` until the largest chain module `base · d^n` fits under the cap.
fn capped_top(o: &mut Out, base: usize, d: usize, top: usize) -> usize {
    let mut n = top;
    while n > 0 && base.saturating_mul(d.saturating_pow(n as u32 + 1)) > DIM_CAP {
        n -= 1;
    }
    if n < top {
        o.warn(&format!(
            "chain modules above degree {n} exceed dimension {DIM_CAP}; top lowered from {top} to {n}"
        ));
    }
    n
}

fn load_algebra(path: &Path) -> Result<Algebra, InputError> {
    io::algebra_from_json(&io::read(path)?)
}

fn report_json(r: &ValidationReport) -> Value {
    serde_json::to_value(r).expect("json")
}

fn hochschild(o: &mut Out, algebra: &Path, bimodule: Option<&Path>, top: usize) -> Status {
    let a = match load_algebra(algebra) {
        Ok(a) => a,
        Err(e) => return fail(o, e),
    };
    let m = match bimodule {
        None => Bimodule::regular(&a),
        Some(p) => match io::read(p).and_then(|t| io::bimodule_from_json(&a, &t)) {
            Ok(m) => m,
            Err(e) => return fail(o, e),
        },
    };
    let top = capped_top(o, m.dim, a.dim(), top);
    let x = hochschild_module(&a, &m, top);
    let r = x.check();
    let b = x.moore_complex().betti_numbers();
    o.emit(
        &format!("{}{}", betti_table("HH_n(A, M)", &b), verdict_line(&r)),
        json!({"hochschild": betti_json(&b), "report": report_json(&r)}),
    );
    report_status(&r)
}

fn verdict_line(r: &ValidationReport) -> String {
    if r.is_ok() {
        String::new()
    } else {
        format!("identity failures:\n{r}\n")
    }
}

fn cyclic(o: &mut Out, algebra: &Path, top: usize) -> Status {
    let a = match load_algebra(algebra) {
        Ok(a) => a,
        Err(e) => return fail(o, e),
    };
    let top = capped_top(o, 1, a.dim(), top);
    let x = cyclic_module(&a, top);
    let mut r = x.check_structure(Level::Cyclic);
    let hc = hc_of_duplicial(&x, HcRoute::ViaPiShriekK);
    r.extend(hc.report);
    o.emit(
        &format!("{}{}", betti_table("HC_n(A)", &hc.betti), verdict_line(&r)),
        json!({"cyclic": betti_json(&hc.betti), "report": report_json(&r)}),
    );
    report_status(&r)
}

fn twisted(o: &mut Out, algebra: &Path, sigma: &Path, top: usize) -> Status {
    let a = match load_algebra(algebra) {
        Ok(a) => a,
        Err(e) => return fail(o, e),
    };
    let s = match io::read(sigma).and_then(|t| io::algebra_map_from_json(&a, &t)) {
        Ok(s) => s,
        Err(e) => return fail(o, e),
    };
    let top = capped_top(o, 1, a.dim(), top);
    let x = twisted_module(&a, &s, top);
    let mut r = x.check_structure(Level::Duplicial);
    let first = x.first_noncyclic_degree();
    let hc = hc_of_duplicial(&x, HcRoute::ViaPiShriekK);
    r.extend(hc.report);
    let verdict = match first {
        None => format!("cyclic: yes (through degree {top})\n"),
        Some(n) => format!("cyclic: no (t^(n+1) != 1 in degree {n})\n"),
    };
    o.emit(
        &format!("{}{verdict}{}", betti_table("HC^σ_n(A)", &hc.betti), verdict_line(&r)),
        json!({
            "twisted_cyclic": betti_json(&hc.betti),
            "cyclic": first.is_none(),
            "first_noncyclic_degree": first,
            "report": report_json(&r),
        }),
    );
    report_status(&r)
}

fn matrix_table(labels: &[String], m: &crate::linalg::Matrix) -> String {
    let mut s = String::new();
    for (j, l) in labels.iter().enumerate() {
        let terms: Vec<String> = (0..m.rows())
            .filter(|&i| !m.get(i, j).is_zero())
            .map(|i| {
                let c = m.get(i, j);
                if c.is_one() { labels[i].clone() } else { format!("{c}·{}", labels[i]) }
            })
            .collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        s += &format!("  S({l}) = {rhs}\n");
    }
    s
}

fn hopf(o: &mut Out, bialgebra: &Path, coefficients: Option<&Path>, top: usize) -> Status {
    let h = match io::read(bialgebra).and_then(|t| io::bialgebra_from_json(&t)) {
        Ok(h) => h,
        Err(e) => return fail(o, e),
    };
    let hs = match is_hopf_and_antipode(&h) {
        HopfVerdict::NotHopf => {
            o.emit("Hopf: no (Galois map singular)\n", json!({"hopf": false, "reason": "Galois map singular"}));
            return Status::Ok;
        }
        HopfVerdict::Hopf(s) => s,
    };
    let k = Coefficients::trivial(&h);
    let m = match coefficients {
        None => k.clone(),
        Some(p) => match io::read(p).and_then(|t| io::coefficients_from_json(&h, &t)) {
            Ok((c, true)) => c,
            Ok((_, false)) => return fail(o, InputError::Schema("coefficients must be a right module".into())),
            Err(e) => return fail(o, e),
        },
    };
    let sayd = sayd_check(&hs, &m, &k);
    let top = capped_top(o, m.dim, h.dim(), top);
    let (x, mut r) = match hopf_cyclic_module(&hs, &m, &k, top) {
        Ok(v) => v,
        Err(e) => return fail(o, e.into()),
    };
    r.extend(x.check_structure(Level::Duplicial));
    let first = x.first_noncyclic_degree();
    let labels = &h.algebra.labels;
    let hc = hc_of_duplicial(&x, HcRoute::ViaPiShriekK);
    r.extend(hc.report.clone());
    let hh = x.simplicial.moore_complex().betti_numbers();
    let table = format!(
        "Hopf: yes\nantipode:\n{}SAYD: {}\ncyclic: {}\n{}{}{}",
        matrix_table(labels, &hs.antipode),
        if sayd { "yes" } else { "no" },
        match first {
            None => format!("yes (through degree {top})"),
            Some(n) => format!("no (degree {n})"),
        },
        betti_table("Hopf-Hochschild H_n", &hh),
        betti_table("Hopf-cyclic HC_n", &hc.betti),
        verdict_line(&r)
    );
    o.emit(
        &table,
        json!({
            "hopf": true,
            "antipode": io::matrix_json(&hs.antipode),
            "sayd": sayd,
            "cyclic": first.is_none(),
            "first_noncyclic_degree": first,
            "hochschild": betti_json(&hh),
            "cyclic_homology": betti_json(&hc.betti),
            "report": report_json(&r),
        }),
    );
    report_status(&r)
}

fn monoid(name: &str) -> Result<FiniteMonoid, SetError> {
    FiniteMonoid::catalog()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, m)| m)
        .ok_or_else(|| SetError::Unknown(name.into()))
}

fn structure(name: &str, p: &LawParams) -> Result<Structure, SetError> {
    Ok(match name {
        "P" => Structure::Powerset,
        "L" => Structure::List { bound: p.bound },
        "L+" => Structure::NonemptyList { bound: p.bound },
        "F" => Structure::Filter,
        "U" => Structure::Ultrafilter,
        "D" => Structure::Distribution { grid: p.grid },
        "C" => Structure::Product { colors: p.colors },
        "R" => Structure::Reader(p.monoid.clone()),
        other => return Err(SetError::Unknown(other.into())),
    })
}

fn set_fail(o: &mut Out, e: SetError) -> Status {
    let _ = writeln!(o.err, "error: {e}");
    match e {
        SetError::TooLarge { .. } => Status::Invalid,
        _ => Status::Parse,
    }
}

#[allow(clippy::too_many_arguments)]
fn check_law(
    o: &mut Out,
    law: Option<&str>,
    structure_name: Option<&str>,
    kind: KindArg,
    carrier: usize,
    colors: u32,
    monoid_name: &str,
    bound: usize,
    grid: u32,
) -> Status {
    let m = match monoid(monoid_name) {
        Ok(m) => m,
        Err(e) => return set_fail(o, e),
    };
    let p = LawParams {
        colors,
        monoid: m,
        bound,
        grid,
    };
    let (title, rep) = match (law, structure_name) {
        (Some(l), _) => {
            let name = match LawName::parse(l) {
                Ok(n) => n,
                Err(e) => return set_fail(o, e),
            };
            let law = MixedLaw::new(name, &p);
            (
                format!("{} over {} ⇒ {}", name.slug(), law.monad.name(), law.comonad.name()),
                law.check(carrier),
            )
        }
        (None, Some(s)) => {
            let st = match structure(s, &p) {
                Ok(s) => s,
                Err(e) => return set_fail(o, e),
            };
            let k = match kind {
                KindArg::Monad => Kind::Monad,
                KindArg::Comonad => Kind::Comonad,
            };
            (format!("{} {:?} laws", st.name(), k), check_laws(&st, k, carrier))
        }
        (None, None) => return set_fail(o, SetError::Unknown("give --law or --structure".into())),
    };
    let rep = match rep {
        Ok(r) => r,
        Err(e) => return set_fail(o, e),
    };
    let table = format!(
        "{title}, |X| = {carrier}\nverdict: {}\nchecked: {}, skipped (list bound): {}, coverage: {:.1}%\n{}",
        if rep.is_ok() { "holds" } else { "fails" },
        rep.checked,
        rep.skipped,
        100.0 * rep.coverage(),
        verdict_line(&rep.report)
    );
    o.emit(
        &table,
        json!({
            "law": title,
            "holds": rep.is_ok(),
            "checked": rep.checked,
            "skipped": rep.skipped,
            "report": report_json(&rep.report),
        }),
    );
    report_status(&rep.report)
}

fn entwined_search(o: &mut Out, law: &str, carrier: usize, colors: u32, bound: usize) -> Status {
    let (lines, value): (Vec<String>, Value) = match law {
        "powerset-color" => {
            if carrier > 3 {
                return set_fail(o, SetError::TooLarge { estimate: 1 << (1 << carrier) });
            }
            let found: Vec<_> = (0..=carrier).flat_map(|n| powerset_color_entwined(n, colors)).collect();
            (
                found.iter().map(|(sup, k)| format!("sup table {sup:?}, colours {k:?}")).collect(),
                json!(found.iter().map(|(s, k)| json!({"sup": s, "colours": k})).collect::<Vec<_>>()),
            )
        }
        "list-color" => {
            if carrier > 3 {
                return set_fail(o, SetError::TooLarge { estimate: (carrier as u128).pow((carrier * carrier) as u32) });
            }
            let found: Vec<_> = (0..=carrier).flat_map(|n| list_color_entwined(n, colors, bound)).collect();
            (
                found.iter().map(|(m, k)| format!("monoid {:?} (unit {}), colours {k:?}", m.table, m.identity)).collect(),
                json!(found.iter().map(|(m, k)| json!({"monoid": m, "colours": k})).collect::<Vec<_>>()),
            )
        }
        "lplus" => match entwined_enumerate_lplus(carrier, bound) {
            Ok(found) => (
                found
                    .iter()
                    .map(|e| if e.semigroup.size() == 0 { "∅".to_string() } else { format!("{:?} {:?}", e.semigroup.table, e.forest.parent) })
                    .collect(),
                serde_json::to_value(&found).expect("json"),
            ),
            Err(e) => return set_fail(o, e),
        },
        other => return set_fail(o, SetError::Unknown(other.into())),
    };
    let mut table = format!("entwined algebras for {law}, carriers ≤ {carrier}: {}\n", lines.len());
    for l in &lines {
        table += &format!("  {l}\n");
    }
    o.emit(&table, json!({"law": law, "count": lines.len(), "found": value}));
    Status::Ok
}

fn nerve(o: &mut Out, category: &Path, top: usize) -> Status {
    let c = match io::read(category).and_then(|t| io::category_from_json(&t)) {
        Ok(c) => c,
        Err(e) => return fail(o, e),
    };
    let v = decide(&c, top);
    let witness = v.witness.as_ref().map(|w| format!("{{{}}}", w.names(&c).join(", ")));
    let yn = |b: bool| if b { "yes" } else { "no" };
    let table = format!(
        "duplicial: {}, cyclic: {}, witness: {}\n{}",
        yn(v.duplicial),
        yn(v.cyclic),
        witness.clone().unwrap_or_else(|| "none".into()),
        verdict_line(&v.report)
    );
    o.emit(
        &table,
        json!({
            "duplicial": v.duplicial,
            "cyclic": v.cyclic,
            "groupoid": v.groupoid,
            "witness": v.witness.as_ref().map(|w| w.names(&c)),
            "first_noncyclic_degree": v.first_noncyclic_degree,
            "report": report_json(&v.report),
        }),
    );
    report_status(&v.report)
}

fn validate(o: &mut Out, path: &Path) -> Status {
    match io::validate_input(path) {
        Ok(r) => {
            let text = if r.is_ok() { "valid\n".to_string() } else { format!("invalid:\n{r}\n") };
            o.emit(&text, json!({"valid": r.is_ok(), "report": report_json(&r)}));
            report_status(&r)
        }
        Err(e) => fail(o, e),
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Status {
    let mut o = Out {
        out,
        err,
        format: cli.format,
    };
    match cli.command {
        Command::Hochschild { algebra, bimodule, top } => hochschild(&mut o, &algebra, bimodule.as_deref(), top),
        Command::Cyclic { algebra, top } => cyclic(&mut o, &algebra, top),
        Command::Twisted { algebra, sigma, top } => twisted(&mut o, &algebra, &sigma, top),
        Command::Hopf {
            bialgebra,
            coefficients,
            top,
        } => hopf(&mut o, &bialgebra, coefficients.as_deref(), top),
        Command::CheckLaw {
            law,
            structure,
            kind,
            carrier,
            colors,
            monoid,
            bound,
            grid,
        } => check_law(&mut o, law.as_deref(), structure.as_deref(), kind, carrier, colors, &monoid, bound, grid),
        Command::EntwinedSearch {
            law,
            carrier,
            colors,
            bound,
        } => entwined_search(&mut o, &law, carrier, colors, bound),
        Command::Nerve { category, top } => nerve(&mut o, &category, top),
        Command::Validate { path } => validate(&mut o, &path),
    }
}

/// Parses `args` (including the program name) and runs.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                Status::Parse
            } else {
                let _ = write!(out, "{text}");
                Status::Ok
            }
        }
    }
}
