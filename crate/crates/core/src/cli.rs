//! Command-line front end. `run` parses arguments and returns the exit code
//! with the text for stdout and stderr, so it can be driven from tests.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{make_extension, prime_power, FieldDescriptor, FiniteQuadratic};
use crate::orbit::{enumerate_orbits, orbit_census, orbit_census_sampled, orbit_dimension, JordanType};
use crate::parabolic::{
    adapted_parabolic, induce_orbit, richardson_type, standard_parabolic, verify_porb, InduceConfig,
};
use crate::verify::{run_suite, Suite, VerifyConfig, SCHEMA};
use crate::with_model;
use crate::zeta::{exponent_table, local_zeta_model, scaling_check};

#[derive(Parser, Debug)]
#[command(name = "tworb", version, about = "Twisted nilpotent orbits: catalogs, induction, zeta exponents")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, env = "TWORB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Field model for linear algebra.
    #[arg(long, global = true, value_enum, default_value_t = FieldKind::Rational)]
    pub field: FieldKind,
    /// Radicand of the rational model Q(√τ).
    #[arg(long, global = true, default_value_t = 2, allow_hyphen_values = true)]
    pub tau: i64,
    /// Base field size of the finite model F_{q²}/F_q.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Sampling trials per case.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Number of T-series coefficients beyond the constant term.
    #[arg(long, global = true, default_value_t = 3)]
    pub series_order: usize,
    /// Cap on exhaustive enumeration steps.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub budget: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldKind {
    Rational,
    Finite,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One row per Jordan type of size n.
    Orbits {
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite.
    Verify {
        /// centralizer, identity, uX, dimHY, porb, richardson, igusa, scaling or census.
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Independent reruns per case (richardson).
        #[arg(long, default_value_t = 5)]
        reruns: usize,
        /// Largest lattice scaling power (scaling).
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Induce from a standard Levi: --levi 2,2 --types "1,1;2".
    Induce {
        #[arg(long)]
        levi: String,
        /// Block types separated by ';', parts by ','. Defaults to zero types.
        #[arg(long)]
        types: Option<String>,
        #[arg(long, default_value_t = 32)]
        max_attempts: usize,
    },
    /// Exponent table and local model for one type, or for all types of size n.
    Zeta {
        #[arg(long = "type")]
        jordan_type: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Nilpotent classes of gl_n(F_{q²}) by Jordan type.
    Census {
        #[arg(long)]
        n: usize,
        /// Sample this many matrices instead of enumerating.
        #[arg(long)]
        samples: Option<u64>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command result: the JSON document, a flat table for csv/pretty, and
/// whether every check passed.
struct Report {
    doc: Value,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    pass: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => match render(&report, cli.global.format) {
            Ok(stdout) => Outcome { code: if report.pass { 0 } else { 1 }, stdout, stderr: String::new() },
            Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
        },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// 1 for failed checks, 2 for usage and configuration errors.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GenericityFailure { .. } | Error::NotNilpotent | Error::SingularMatrix => 1,
        _ => 2,
    }
}

fn field_descriptor(g: &GlobalArgs) -> Result<FieldDescriptor> {
    match g.field {
        FieldKind::Rational => Ok(FieldDescriptor::Rational { tau: g.tau }),
        FieldKind::Finite => {
            let q = g.q.unwrap_or(2);
            let (p, e) = prime_power(q).ok_or_else(|| Error::Invalid(format!("q = {q} is not a prime power")))?;
            Ok(FieldDescriptor::Finite { p, e })
        }
    }
}

fn finite_model(q: u64) -> Result<FiniteQuadratic> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::Invalid(format!("q = {q} is not a prime power")))?;
    FiniteQuadratic::new(p, e)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad integer {p:?} in {s:?}"))))
        .collect()
}

fn execute(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Orbits { n } => Ok(cmd_orbits(*n)),
        Command::Verify { suite, n_max, n, reruns, k_max } => {
            let suite: Suite = suite.parse()?;
            let defaults = VerifyConfig::default();
            let config = VerifyConfig {
                field: field_descriptor(g)?,
                n_max: n_max.unwrap_or(defaults.n_max),
                n: n.unwrap_or(defaults.n),
                q: g.q.unwrap_or(defaults.q),
                seed: g.seed,
                trials: g.trials,
                reruns: *reruns,
                series_order: g.series_order,
                budget: g.budget,
                k_max: *k_max,
                bound: defaults.bound,
            };
            cmd_verify(suite, &config)
        }
        Command::Induce { levi, types, max_attempts } => cmd_induce(g, levi, types.as_deref(), *max_attempts),
        Command::Zeta { jordan_type, n, k_max } => {
            let types = match (jordan_type, n) {
                (Some(t), None) => vec![t.parse::<JordanType>()?],
                (None, Some(n)) => enumerate_orbits(*n),
                _ => return Err(Error::Invalid("zeta needs exactly one of --type or --n".into())),
            };
            cmd_zeta(&types, *k_max, g.series_order)
        }
        Command::Census { n, samples } => cmd_census(g, *n, *samples),
    }
}

fn table_string(t: &JordanType) -> String {
    exponent_table(t)
        .table
        .iter()
        .map(|x| format!("({},{}):{}+{}s", x.i, x.j, x.e, x.s_coeff))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_orbits(n: usize) -> Report {
    let mut rows = Vec::new();
    let mut docs = Vec::new();
    for t in enumerate_orbits(n) {
        let inv = orbit_dimension(&t);
        let table = exponent_table(&t);
        let u_dim = adapted_parabolic(&t).u_dim_f();
        rows.push(vec![
            t.to_string(),
            inv.dim_orbit_f.to_string(),
            inv.half_dim.to_string(),
            inv.c_exponent.to_string(),
            inv.centralizer_dim_f.to_string(),
            inv.springer_dim_f.to_string(),
            u_dim.to_string(),
            table_string(&t),
        ]);
        docs.push(json!({
            "type": t,
            "dim_orbit": inv.dim_orbit_f,
            "half_dim": inv.half_dim,
            "c": inv.c_exponent,
            "centralizer_dim": inv.centralizer_dim_f,
            "springer_dim": inv.springer_dim_f,
            "u_dim": u_dim,
            "table": table.table.iter().map(|x| json!({"i": x.i, "j": x.j, "e": x.e, "s_coeff": x.s_coeff})).collect::<Vec<_>>(),
        }));
    }
    Report {
        doc: json!({"schema": SCHEMA, "command": "orbits", "n": n, "dimensions": "F", "orbits": docs}),
        columns: vec!["type", "dim_orbit", "half_dim", "c", "centralizer_dim", "springer_dim", "u_dim", "table"],
        rows,
        pass: true,
    }
}

fn cmd_verify(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    let report = run_suite(suite, config)?;
    let rows = report
        .cases
        .iter()
        .map(|c| vec![c.case.clone(), if c.pass { "pass" } else { "FAIL" }.to_string(), c.details.to_string()])
        .collect();
    Ok(Report {
        pass: report.passed,
        doc: serde_json::to_value(&report).expect("plain struct"),
        columns: vec!["case", "result", "details"],
        rows,
    })
}

fn cmd_induce(g: &GlobalArgs, levi: &str, types: Option<&str>, max_attempts: usize) -> Result<Report> {
    let comp = parse_list(levi)?;
    let p = standard_parabolic(&comp)?;
    let types: Vec<JordanType> = match types {
        None => comp.iter().map(|&s| JordanType::zero(s)).collect(),
        Some(spec) => spec.split(';').map(str::parse).collect::<Result<_>>()?,
    };
    let descriptor = field_descriptor(g)?;
    let model = make_extension(&descriptor)?;
    let config = InduceConfig { seed: g.seed, max_attempts, ..InduceConfig::default() };
    let (induction, porb) = with_model!(&model, |k| {
        let induction = induce_orbit(k, &p, &types, &config)?;
        let porb = verify_porb(k, &p, &types, g.trials.max(1), g.seed.wrapping_add(1), config.bound)?;
        (induction, porb)
    });
    let zero_levi = types.iter().all(JordanType::is_zero_orbit);
    let prediction = zero_levi.then(|| richardson_type(&comp));
    let agrees = prediction.as_ref().is_none_or(|r| *r == induction.induced_type);
    let pass = porb.passed && agrees && porb.induced_type.as_ref().is_none_or(|t| *t == induction.induced_type);
    let type_list = types.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
    Ok(Report {
        doc: json!({
            "schema": SCHEMA,
            "command": "induce",
            "field": descriptor,
            "levi": comp,
            "types": types,
            "induced_type": induction.induced_type,
            "attempts": induction.attempts,
            "certified": induction.certified,
            "richardson_prediction": prediction,
            "trials": porb,
        }),
        columns: vec!["levi", "types", "induced_type", "attempts", "certified_trials", "richardson_prediction"],
        rows: vec![vec![
            levi.to_string(),
            type_list,
            induction.induced_type.to_string(),
            induction.attempts.to_string(),
            format!("{}/{}", porb.certified_trials, porb.trials),
            prediction.map_or("-".into(), |t| t.to_string()),
        ]],
        pass,
    })
}

fn cmd_zeta(types: &[JordanType], k_max: usize, series_order: usize) -> Result<Report> {
    let mut docs = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for t in types {
        let model = local_zeta_model(t);
        let mut doc = model.to_json(series_order)?;
        let checks = (1..=k_max).map(|k| scaling_check(t, k)).collect::<Result<Vec<_>>>()?;
        pass &= checks.iter().all(|c| c.holds());
        rows.push(vec![
            t.to_string(),
            table_string(t),
            model.table.half_dim.to_string(),
            model.table.c.to_string(),
            model.function.to_string(),
            if checks.iter().all(|c| c.holds()) { "pass" } else { "FAIL" }.to_string(),
        ]);
        doc["scaling"] = serde_json::to_value(&checks).expect("plain struct");
        docs.push(doc);
    }
    Ok(Report {
        doc: json!({"schema": SCHEMA, "command": "zeta", "models": docs}),
        columns: vec!["type", "table", "half_dim", "c", "local_factor", "scaling"],
        rows,
        pass,
    })
}

fn cmd_census(g: &GlobalArgs, n: usize, samples: Option<u64>) -> Result<Report> {
    let q = g.q.unwrap_or(2);
    let k = finite_model(q)?;
    if let Some(samples) = samples {
        let s = orbit_census_sampled(&k, n, samples, g.seed);
        let rows = s
            .hits
            .iter()
            .map(|(t, h)| vec![t.clone(), h.to_string(), format!("{:.1}", s.estimated_counts[t])])
            .collect();
        return Ok(Report {
            doc: json!({"schema": SCHEMA, "command": "census", "mode": "sampled", "census": s}),
            columns: vec!["type", "hits", "estimated_count"],
            rows,
            pass: true,
        });
    }
    let report = orbit_census(&k, n, g.budget)?;
    let rows = report
        .entries
        .iter()
        .map(|e| vec![e.jordan_type.to_string(), e.count.to_string(), e.centralizer_order.to_string()])
        .collect();
    let pass = report.orbit_stabilizer_holds();
    Ok(Report {
        doc: json!({"schema": SCHEMA, "command": "census", "mode": "exhaustive", "census": report}),
        columns: vec!["type", "count", "centralizer_order"],
        rows,
        pass,
    })
}

fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&report.doc).expect("serializable") + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
            w.write_record(&report.columns).map_err(io)?;
            for row in &report.rows {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("utf-8 input"))
        }
        Format::Pretty => {
            let mut widths: Vec<usize> = report.columns.iter().map(|c| c.chars().count()).collect();
            for row in &report.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(report.columns.clone());
            for row in &report.rows {
                out += &line(row.iter().map(String::as_str).collect());
            }
            out += if report.pass { "result: pass\n" } else { "result: FAIL\n" };
            Ok(out)
        }
    }
}
