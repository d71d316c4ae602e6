//! One function per subcommand. Each returns its output instead of printing,
//! so the exit code is decided in one place.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use nhtopo::gaps::{flatten_in_place, gap_report};
use nhtopo::invariants::{chern_2d, det_winding_point_gap, sign_det, signature_0d, winding_1d};
use nhtopo::ktable::{Engine, Oracle, TableSet};
use nhtopo::models::{block_models, catalog_all, catalog_build, verify_block, BlockReport, Params};
use nhtopo::symmetry::{detect_class, require_symmetric, verify_spec, SymmetryClassId};
use nhtopo::{c64, Error, C64};
use serde::Serialize;

use crate::model::{kind_spelling, Model, ModelFile};
use crate::{Cli, CliError, Command, Format, InvariantArg, Outcome};

pub const ORACLE_ENV: &str = "NHTOPO_ORACLE";

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Error::InvalidTolerance(cli.tol).into());
    }
    let tol = cli.tol;
    match &cli.command {
        Command::Classes => Ok(Outcome::ok(classes())),
        Command::Classify { model } => classify(&load(model)?, tol),
        Command::Gaps { model } => Ok(Outcome::ok(json(&gap_report(&load(model)?.family, tol)?))),
        Command::Invariant { model, kind, eref } => invariant(&load(model)?, *kind, eref, tol),
        Command::Flatten { model, axis, output } => {
            let m = load(model)?;
            let flat = Model { family: flatten_in_place(&m.family, *axis, tol)?, spec: m.spec };
            let text = ModelFile::from_model(&flat).to_json() + "\n";
            match output {
                Some(path) => {
                    write_file(path, &text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Table { all, class, delta, format } => table(*all, class.as_deref(), *delta, *format),
        Command::VerifyGenerators { id, json } => verify_generators(id.as_deref(), *json),
        Command::Catalog { id, export, params } => catalog(id.as_deref(), export.as_deref(), params, tol),
    }
}

fn load(path: &Path) -> Result<Model, CliError> {
    ModelFile::read(path)?.load()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn classes() -> String {
    let all = SymmetryClassId::all();
    let mut out = String::new();
    for c in &all {
        let mark = if c.is_orbit_representative() { "*" } else { " " };
        let _ = writeln!(out, "{mark} {:<22} {:<22} iH: {}", c.name(), c.ascii_name(), c.i_map());
    }
    let reps = all.iter().filter(|c| c.is_orbit_representative()).count();
    let _ = writeln!(out, "{} classes, {reps} orbit representatives", all.len());
    out
}

#[derive(Serialize)]
struct Residual {
    kind: &'static str,
    residual: f64,
}

#[derive(Serialize)]
struct Classification {
    class: String,
    ascii: String,
    i_map: String,
    orbit_representative: bool,
    residuals: Vec<Residual>,
}

fn classify(m: &Model, tol: f64) -> Result<Outcome, CliError> {
    let class = detect_class(&m.spec)?;
    let residuals = verify_spec(&m.family, &m.spec)?
        .into_iter()
        .map(|(k, r)| Residual { kind: kind_spelling(k), residual: r })
        .collect();
    require_symmetric(&m.family, &m.spec, tol)?;
    Ok(Outcome::ok(json(&Classification {
        class: class.name(),
        ascii: class.ascii_name(),
        i_map: class.i_map().name(),
        orbit_representative: class.is_orbit_representative(),
        residuals,
    })))
}

fn parse_complex(s: &str) -> Result<C64, CliError> {
    let bad = || CliError::Usage(format!("expected `re,im`, got `{s}`"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(c64(re, im))
}

fn invariant(m: &Model, kind: InvariantArg, eref: &str, tol: f64) -> Result<Outcome, CliError> {
    let h = &m.family;
    let single = || {
        if h.len() == 1 {
            Ok(h.sample(0))
        } else {
            Err(CliError::Usage("this invariant needs a zero-dimensional model".into()))
        }
    };
    let value = match kind {
        InvariantArg::Winding => winding_1d(h, tol)?,
        InvariantArg::Detwinding => det_winding_point_gap(h, parse_complex(eref)?, tol)?,
        InvariantArg::Chern => chern_2d(h, tol)?,
        InvariantArg::Signature => signature_0d(single()?, tol)?,
        InvariantArg::Signdet => sign_det(single()?, tol)?,
    };
    Ok(Outcome::ok(json(&value)))
}

fn oracle() -> Result<Oracle, CliError> {
    match std::env::var_os(ORACLE_ENV) {
        Some(path) => Ok(Oracle::from_path(path)?),
        None => Ok(Oracle::embedded()),
    }
}

fn table(all: bool, class: Option<&str>, delta: Option<u8>, format: Format) -> Result<Outcome, CliError> {
    let classes = match (all, class) {
        (true, _) => SymmetryClassId::all(),
        (false, Some(name)) => vec![name.parse()?],
        (false, None) => return Err(CliError::Usage("pass --all or --class NAME".into())),
    };
    let deltas: Vec<u8> = match delta {
        Some(d) if d < 8 => vec![d],
        Some(d) => return Err(CliError::Usage(format!("delta must be 0..7, got {d}"))),
        None => (0..8).collect(),
    };
    let set = TableSet::generate(&Engine::standard(), &classes, &deltas)?;
    let report = set.diff(&oracle()?);
    let stdout = match format {
        Format::Tsv => set.to_tsv(),
        Format::Md => set.to_markdown(),
        Format::Json if set.rows.len() == 1 => json(&set.rows[0]),
        Format::Json => json(&set.rows),
    };
    Ok(Outcome { stdout, stderr: report.render(), code: if report.is_clean() { 0 } else { 2 } })
}

fn report_line(r: &BlockReport) -> String {
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    let map = if r.derived.iter().flatten().all(|&a| a == 0) { "zero map".to_string() } else { r.map.clone() };
    let mut line = format!(
        "block {:>2} {:<16} {verdict}  {} -> {}: {map} ({} checks, {})",
        r.id,
        r.slug,
        r.domain,
        r.codomain,
        r.checks.len(),
        r.method
    );
    for c in r.failures() {
        let _ = write!(line, "\n    failed: {} ({})", c.name, c.detail);
    }
    line + "\n"
}

fn verify_generators(id: Option<&str>, as_json: bool) -> Result<Outcome, CliError> {
    let reports = match id {
        Some(id) => vec![verify_block(id)?],
        None => block_models()?.iter().map(|b| verify_block(&b.id.to_string())).collect::<Result<_, _>>()?,
    };
    let passed = reports.iter().filter(|r| r.passed).count();
    let stdout = if as_json {
        json(&reports)
    } else {
        let mut s: String = reports.iter().map(report_line).collect();
        let _ = writeln!(s, "{passed} of {} blocks pass", reports.len());
        s
    };
    Ok(Outcome { stdout, stderr: String::new(), code: if passed == reports.len() { 0 } else { 2 } })
}

fn parse_params(raw: &[String]) -> Result<Params, CliError> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (k, v) = p.split_once('=').ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got `{p}`")))?;
        let v: f64 = v.trim().parse().map_err(|_| CliError::Usage(format!("`{v}` is not a number")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn catalog(id: Option<&str>, export: Option<&Path>, raw: &[String], tol: f64) -> Result<Outcome, CliError> {
    let Some(id) = id else {
        let mut s = String::new();
        for e in catalog_all()? {
            let _ = writeln!(s, "{:<16} {}", e.id, e.title);
        }
        return Ok(Outcome::ok(s));
    };
    let params = parse_params(raw)?;
    let entry = catalog_build(id, &params)?;
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut s = String::new();
        for m in &entry.models {
            let model = Model { family: m.family.clone(), spec: m.symmetry.clone() };
            let file = ModelFile::from_catalog(&entry.id, &m.label, params.clone(), &model);
            let name: String = format!("{}-{}", entry.id, m.label)
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '+' { c } else { '_' })
                .collect();
            let path = dir.join(format!("{name}.json"));
            write_file(&path, &(file.to_json() + "\n"))?;
            let _ = writeln!(s, "{}", path.display());
        }
        return Ok(Outcome::ok(s));
    }
    let checks = entry.check(tol, tol)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut s = format!("{}: {}\n", entry.id, entry.title);
    for c in &checks {
        let _ = writeln!(s, "  {} {} ({})", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    for claim in &entry.claims {
        let _ = writeln!(s, "  claim: {}", claim.statement);
    }
    Ok(Outcome { stdout: s, stderr: String::new(), code: if failed == 0 { 0 } else { 2 } })
}
