//! Command-line front end. Every command emits a single document, JSON by
//! default, carrying `"schema": "v1"`.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::constructions::{
    Construction, Family, MixedConstruction, OddConstruction, PowerTwoConstruction,
};
use crate::error::{Error, Result};
use crate::lattice::{
    build_lattice, diversity_proxy, dn_generators_agree, gram_and_verify, volume_check,
    LatticeDescriptor, LatticeKind, DIVERSITY_SAMPLES, DIVERSITY_SEED,
};
use crate::metrics::{
    closed_form_dpmin, comparative_distances, norm_of_x_check, oracle_dpmin, ratio_asymptotics,
    table, DistanceReport, Table, DEFAULT_WORK_CAP,
};
use crate::real::Precision;

pub const SCHEMA: &str = "v1";

#[derive(Debug, Parser)]
#[command(name = "cyclolat", version, about = "Rotated Z^n and D_n lattices from cyclotomic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a lattice and print its exact data and generator matrix.
    Construct(LatticeArgs),
    /// Run the structural, orthonormality, volume and diversity checks.
    Verify(FieldArgs),
    /// Minimum product distance, optionally with the enumeration oracle.
    Distance(DistanceArgs),
    /// Recompute comparison table 1, 2 or 3.
    Table(TableArgs),
    /// Everything for one parameter set.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "odd")]
    Odd,
    #[value(name = "power_two")]
    PowerTwo,
    #[value(name = "mixed")]
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "zn")]
    Zn,
    #[value(name = "dn")]
    Dn,
}

impl From<KindArg> for LatticeKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Zn => LatticeKind::Zn,
            KindArg::Dn => LatticeKind::Dn,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    #[value(name = "json")]
    Json,
    #[value(name = "csv")]
    Csv,
    #[value(name = "pretty")]
    Pretty,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Dimension (odd family; a power of two for power_two)
    #[arg(long)]
    n: Option<usize>,
    /// Odd part of a mixed construction
    #[arg(long)]
    l: Option<usize>,
    /// Power-of-two conductor exponent, k = 2^(m-2)
    #[arg(long)]
    m: Option<u32>,
    /// Prime override; the least admissible prime otherwise
    #[arg(long)]
    p: Option<usize>,
    /// Working precision in decimal digits
    #[arg(long, default_value_t = Precision::DEFAULT_DIGITS)]
    precision: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct LatticeArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value = "zn")]
    kind: KindArg,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Run the enumeration oracle over coefficient vectors with |y_i| <= radius
    #[arg(long)]
    radius: Option<u32>,
    /// Upper bound on n·(2·radius+1)^n for the oracle
    #[arg(long, default_value_t = DEFAULT_WORK_CAP)]
    work_cap: u128,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    which: u8,
    #[arg(long, default_value_t = Precision::DEFAULT_DIGITS)]
    precision: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_WORK_CAP)]
    work_cap: u128,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// exit code and the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, error_document("usage", &e.to_string())),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => (0, out),
        Err(e) => (1, error_document(e.kind(), &e.to_string())),
    }
}

fn error_document(kind: &str, message: &str) -> String {
    let doc = json!({
        "schema": SCHEMA,
        "error": { "kind": kind, "message": message.trim_end() },
    });
    to_pretty(&doc)
}

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn document(command: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Value::Object(out)
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Distance(a) => distance(a),
        Command::Table(a) => run_table(a),
        Command::Report(a) => report(a),
    }
}

fn reject(flag: &str, family: &str) -> Error {
    Error::InvalidParameter(format!("--{flag} does not apply to the {family} family"))
}

/// Validates the flag combination and builds the construction.
fn build_construction(a: &FieldArgs) -> Result<Construction> {
    match a.family {
        FamilyArg::Odd => {
            if a.l.is_some() {
                return Err(reject("l", "odd"));
            }
            if a.m.is_some() {
                return Err(reject("m", "odd"));
            }
            let n = a
                .n
                .ok_or_else(|| Error::InvalidParameter("the odd family needs --n".into()))?;
            Ok(Construction::Odd(OddConstruction::build(n, a.p)?))
        }
        FamilyArg::PowerTwo => {
            if a.l.is_some() {
                return Err(reject("l", "power_two"));
            }
            if a.p.is_some() {
                return Err(reject("p", "power_two"));
            }
            let m = match (a.m, a.n) {
                (Some(m), None) => m,
                (None, Some(n)) if n >= 2 && n.is_power_of_two() => n.trailing_zeros() + 2,
                (None, Some(n)) => {
                    return Err(Error::InvalidParameter(format!(
                        "power_two dimension must be a power of two >= 2, got {n}"
                    )))
                }
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidParameter("give either --m or --n, not both".into()))
                }
                (None, None) => {
                    return Err(Error::InvalidParameter("the power_two family needs --m".into()))
                }
            };
            Ok(Construction::PowerTwo(PowerTwoConstruction::build(m)?))
        }
        FamilyArg::Mixed => {
            if a.n.is_some() {
                return Err(Error::InvalidParameter(
                    "the mixed family takes --l and --m; the dimension is l·2^(m-2)".into(),
                ));
            }
            let (Some(l), Some(m)) = (a.l, a.m) else {
                return Err(Error::InvalidParameter("the mixed family needs --l and --m".into()));
            };
            Ok(Construction::Mixed(MixedConstruction::build(l, m, a.p)?))
        }
    }
}

fn setup(a: &FieldArgs) -> Result<(Arc<Construction>, Precision)> {
    let precision = Precision::new(a.precision)?;
    Ok((Arc::new(build_construction(a)?), precision))
}

fn parameters(c: &Construction) -> Value {
    match c {
        Construction::Odd(o) => json!({
            "family": Family::Odd,
            "n": o.n, "p": o.p, "r": o.r, "lambda": o.lambda,
        }),
        Construction::PowerTwo(t) => json!({
            "family": Family::PowerTwo,
            "n": t.k, "m": t.m, "k": t.k, "conductor": t.conductor,
        }),
        Construction::Mixed(x) => json!({
            "family": Family::Mixed,
            "n": x.n, "l": x.l, "p": x.p, "r": x.odd.r, "lambda": x.odd.lambda,
            "m": x.m, "k": x.k, "conductor": x.conductor,
        }),
    }
}

fn construct(a: LatticeArgs) -> Result<String> {
    let (c, precision) = setup(&a.field)?;
    let d = build_lattice(c.clone(), a.kind.into(), precision)?;
    match a.field.format {
        Format::Csv => d.generator_matrix.to_csv(),
        Format::Json => Ok(to_pretty(&document(
            "construct",
            json!({
                "parameters": parameters(&c),
                "construction": c.as_ref(),
                "lattice": d.to_json(),
            }),
        ))),
        Format::Pretty => {
            let mut out = format!("{}\n", pretty_parameters(&c));
            out.push_str(&format!("{} generator matrix ({0}x{0}):\n", d.dimension));
            for row in d.generator_matrix.to_strings(12) {
                out.push_str(&row.join("  "));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn pretty_parameters(c: &Construction) -> String {
    match parameters(c) {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", v.as_str().map_or(v.to_string(), str::to_string)))
            .collect::<Vec<_>>()
            .join(" "),
        _ => unreachable!(),
    }
}

fn lattice_checks(d: &LatticeDescriptor) -> Result<(Value, bool)> {
    let g = gram_and_verify(d)?;
    let v = volume_check(d)?;
    let div = diversity_proxy(d, DIVERSITY_SAMPLES, DIVERSITY_SEED);
    let ok = g.det_ok
        && g.orthonormal
        && g.exact_orthonormal.unwrap_or(true)
        && v.matches.unwrap_or(true)
        && div.passed;
    let digits = d.precision.digits() as usize;
    Ok((
        json!({
            "gram": {
                "det": g.det.to_decimal(digits),
                "expected_det": g.expected_det,
                "det_ok": g.det_ok,
                "max_deviation": g.max_deviation.to_decimal(6),
                "orthonormal": g.orthonormal,
                "exact_orthonormal": g.exact_orthonormal,
            },
            "volume": v.to_json(digits),
            "diversity": div.to_json(),
        }),
        ok,
    ))
}

fn structural_checks(c: &Construction, precision: Precision) -> Result<(Value, bool)> {
    let odd_checks = |o: &OddConstruction| -> Result<Value> {
        let a = o.alpha_identities()?;
        Ok(json!({
            "sigma_alpha": a.sigma_alpha,
            "sigma_twisted_alpha": a.sigma_twisted_alpha,
            "twisted_alpha_square": a.twisted_alpha_square,
            "trace_identities": o.verify_trace_identities(),
        }))
    };
    let v = match c {
        Construction::Odd(o) => odd_checks(o)?,
        Construction::PowerTwo(t) => json!({
            "tau_generates": t.tau_generates(),
            "tau_w_formula": t.tau_w_formula_holds(),
            "dn_generators_agree": dn_generators_agree(t)?,
            "beta_totally_positive": t.beta_totally_positive(precision)?,
        }),
        Construction::Mixed(x) => {
            let mut m = match odd_checks(&x.odd)? {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            m.insert("lift_consistent".into(), json!(x.lift_consistent()?));
            m.insert("tau_generates".into(), json!(x.two.tau_generates()));
            m.insert("beta_totally_positive".into(), json!(x.beta_totally_positive(precision)?));
            Value::Object(m)
        }
    };
    let ok = v.as_object().unwrap().values().all(|b| b.as_bool() == Some(true));
    Ok((v, ok))
}

fn verify(a: FieldArgs) -> Result<String> {
    if a.format == Format::Csv {
        return Err(Error::InvalidParameter("verify has no CSV form".into()));
    }
    let (c, precision) = setup(&a)?;
    let (structural, s_ok) = structural_checks(&c, precision)?;
    let mut lattices = Map::new();
    let mut all = s_ok;
    for kind in [LatticeKind::Zn, LatticeKind::Dn] {
        let d = build_lattice(c.clone(), kind, precision)?;
        let (v, ok) = lattice_checks(&d)?;
        all &= ok;
        lattices.insert(kind.as_str().into(), v);
    }
    Ok(to_pretty(&document(
        "verify",
        json!({
            "parameters": parameters(&c),
            "structural": structural,
            "lattices": lattices,
            "all_passed": all,
        }),
    )))
}

fn distance_report(
    d: &LatticeDescriptor,
    radius: Option<u32>,
    work_cap: u128,
) -> Result<DistanceReport> {
    let mut rep = closed_form_dpmin(d, None);
    if let Some(r) = radius {
        rep.oracle = Some(oracle_dpmin(d, r, work_cap)?);
    }
    Ok(rep)
}

fn comparative_json(rep: &DistanceReport) -> Value {
    match comparative_distances(rep) {
        Ok(c) => json!({
            "d_rel_root": c.d_rel_root.to_json(),
            "d_nor_root": c.d_nor_root.to_json(),
        }),
        Err(_) => Value::Null,
    }
}

fn distance(a: DistanceArgs) -> Result<String> {
    let f = &a.lattice.field;
    let (c, precision) = setup(f)?;
    let d = build_lattice(c.clone(), a.lattice.kind.into(), precision)?;
    let rep = distance_report(&d, a.radius, a.work_cap)?;
    match f.format {
        Format::Json => Ok(to_pretty(&document(
            "distance",
            json!({
                "parameters": parameters(&c),
                "report": rep.to_json(),
                "comparative": comparative_json(&rep),
            }),
        ))),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let cf = rep.closed_form.as_ref();
            let (oracle, radius) = rep
                .oracle
                .as_ref()
                .map_or((String::new(), String::new()), |o| (o.value.to_decimal(20), o.radius.to_string()));
            let rows = [
                vec!["family", "kind", "n", "status", "closed_form", "value", "oracle", "radius"]
                    .into_iter()
                    .map(String::from)
                    .collect::<Vec<_>>(),
                vec![
                    d.family.to_string(),
                    d.kind.as_str().into(),
                    d.dimension.to_string(),
                    rep.status.as_str().into(),
                    cf.map_or(String::new(), |v| v.to_string()),
                    cf.map_or(String::new(), |v| v.significant(20)),
                    oracle,
                    radius,
                ],
            ];
            for r in rows {
                w.write_record(&r).map_err(|e| Error::Parse(e.to_string()))?;
            }
            finish_csv(w)
        }
        Format::Pretty => {
            let mut out = format!("{}\n", pretty_parameters(&c));
            out.push_str(&format!("kind={} status={}\n", d.kind.as_str(), rep.status.as_str()));
            if let Some(v) = &rep.closed_form {
                out.push_str(&format!("d_p,min = {v} = {}\n", v.significant(20)));
            }
            if let Some(h) = &rep.hypothesis {
                out.push_str(&format!("u integral: {}, unit: {}\n", h.u_integral, h.unit_label()));
            }
            if let Some(e) = &rep.erratum {
                out.push_str(&format!("published form {}: {}\n", e.published, e.note));
            }
            if let Some(o) = &rep.oracle {
                out.push_str(&format!(
                    "oracle (radius {}): {} at {:?}\n",
                    o.radius,
                    o.value.to_decimal(20),
                    o.witness
                ));
            }
            Ok(out)
        }
    }
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn run_table(a: TableArgs) -> Result<String> {
    let precision = Precision::new(a.precision)?;
    let t = table(a.which, precision)?;
    match a.format {
        Format::Json => Ok(to_pretty(&document("table", t.to_json()))),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(t.csv_header()).map_err(|e| Error::Parse(e.to_string()))?;
            for r in t.csv_records() {
                w.write_record(&r).map_err(|e| Error::Parse(e.to_string()))?;
            }
            finish_csv(w)
        }
        Format::Pretty => Ok(pretty_table(&t)),
    }
}

fn pretty_table(t: &Table) -> String {
    let mut header = vec!["n".to_string(), "family".into(), "p".into(), "m".into(), "unit".into()];
    header.extend(t.columns.iter().map(|c| c.to_string()));
    let mut lines = vec![header];
    for tr in &t.rows {
        let r = &tr.row;
        let mut line = vec![
            r.n.to_string(),
            r.family.to_string(),
            r.p.map_or("-".into(), |v| v.to_string()),
            r.m.map_or("-".into(), |v| v.to_string()),
            r.unit.unwrap_or("-").to_string(),
        ];
        line.extend(tr.cells.iter().map(|c| {
            let mut s = c.rendered();
            if c.flag.is_some() {
                s.push('*');
            }
            s
        }));
        lines.push(line);
    }
    let widths: Vec<usize> = (0..lines[0].len())
        .map(|j| lines.iter().map(|l| l[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("Table {}\n", t.which);
    for l in &lines {
        let cells: Vec<String> = l
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    for (r, c) in t.flagged() {
        let f = c.flag.as_ref().unwrap();
        out.push_str(&format!(
            "* n={} {}: printed {}, {}\n",
            r.row.n,
            c.column,
            c.published.unwrap_or("-"),
            f.note
        ));
    }
    for d in &t.diagnostics {
        out.push_str(&format!("omitted: {d}\n"));
    }
    out
}

fn report(a: ReportArgs) -> Result<String> {
    if a.field.format == Format::Csv {
        return Err(Error::InvalidParameter("report has no CSV form".into()));
    }
    let (c, precision) = setup(&a.field)?;
    let (structural, _) = structural_checks(&c, precision)?;
    let mut lattices = Map::new();
    for kind in [LatticeKind::Zn, LatticeKind::Dn] {
        let d = build_lattice(c.clone(), kind, precision)?;
        let (checks, _) = lattice_checks(&d)?;
        let rep = distance_report(&d, a.radius, a.work_cap)?;
        lattices.insert(
            kind.as_str().into(),
            json!({
                "generator_matrix": d.generator_matrix.to_json(),
                "module_generators": d.module_generators,
                "checks": checks,
                "distance": rep.to_json(),
                "comparative": comparative_json(&rep),
            }),
        );
    }
    let norm = match c.as_ref() {
        Construction::PowerTwo(_) => Value::Null,
        other => norm_of_x_check(other).map_or(Value::Null, Value::Bool),
    };
    let ratios = ratio_asymptotics(c.dimension(), c.family())
        .map(|r| r.to_json())
        .unwrap_or(Value::Null);
    Ok(to_pretty(&document(
        "report",
        json!({
            "parameters": parameters(&c),
            "construction": c.as_ref(),
            "structural": structural,
            "norm_of_x": norm,
            "lattices": lattices,
            "ratios": ratios,
        }),
    )))
}
