//! Command-line frontend. `run` is the whole program; the binary only maps
//! its return value to the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::admissible::EnhancedCoxeterDatum;
use crate::charts::{build_chart, eliminate, ChartCase, ChartParams, NormalForm};
use crate::error::{Error, Result};
use crate::kumar::{kumar_case, GcmChoice, KumarCase, KumarReport};
use crate::poincare::{ccp_check, classify_ccp, is_symmetric, poincare_polynomial, rspss_screen, ScreenVerdict};
use crate::root_system::Family;
use crate::weyl::{interval_cap_from_env, Weyl};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "weylab", version, about = "Affine Weyl group combinatorics of local models")]
pub struct RunConfig {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify enhanced Coxeter data with the component count property.
    ClassifyCcp(ClassifyArgs),
    /// Poincare polynomial of one datum.
    Poincare(PoincareArgs),
    /// Kumar's criterion on one of the built-in cases.
    Kumar(KumarArgs),
    /// Reduce a local model chart to normal form.
    Chart(ChartArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_rank: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Compare the JSON report with a golden file; exit 2 on mismatch.
    #[arg(long)]
    pub check: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Args)]
pub struct PoincareArgs {
    #[arg(long, required_unless_present = "datum")]
    pub family: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Fundamental coweight coordinates, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<i64>,
    /// Vertices of K~, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// JSON file `{family, rank, lambda, k}` instead of the flags above.
    #[arg(long, conflicts_with_all = ["family", "rank", "lambda", "k"])]
    pub datum: Option<PathBuf>,
    /// Skip the component and intersection screen.
    #[arg(long)]
    pub no_screen: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct KumarArgs {
    #[arg(long)]
    pub case: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "split")]
    pub gcm: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    #[arg(long)]
    pub case: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, default_value_t = 1)]
    pub kappa: usize,
    /// Dump every original equation with its vanishing witness.
    #[arg(long)]
    pub certificate: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Deserialize)]
struct DatumFile {
    family: String,
    rank: Option<usize>,
    lambda: Vec<i64>,
    k: Vec<usize>,
}

/// Sorted-key JSON.
fn to_json<T: Serialize>(v: &T) -> String {
    let v = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

enum Failure {
    Usage(String),
    Compute(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            return EXIT_FAILURE;
        }
    };
    let res = pool.install(|| dispatch(&cfg.command));
    match res {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {}", m);
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {}", e);
            EXIT_FAILURE
        }
        Err(Failure::Mismatch(m)) => {
            let _ = writeln!(err, "check failed: {}", m);
            EXIT_MISMATCH
        }
    }
}

fn dispatch(cmd: &Command) -> std::result::Result<String, Failure> {
    match cmd {
        Command::ClassifyCcp(a) => cmd_classify(a),
        Command::Poincare(a) => cmd_poincare(a).map_err(Failure::from),
        Command::Kumar(a) => cmd_kumar(a).map_err(Failure::from),
        Command::Chart(a) => cmd_chart(a).map_err(Failure::from),
    }
}

fn cmd_classify(a: &ClassifyArgs) -> std::result::Result<String, Failure> {
    let family = a.family.as_deref().map(str::parse::<Family>).transpose()?;
    let report = classify_ccp(a.max_rank as usize, family)?;
    let text = match a.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    if let Some(path) = &a.check {
        let golden = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
        let golden: serde_json::Value = serde_json::from_str(&golden)
            .map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
        let ours = serde_json::to_value(&report).expect("json");
        if ours != golden {
            return Err(Failure::Mismatch(format!("report differs from {}", path.display())));
        }
    }
    Ok(text)
}

#[derive(Serialize)]
struct PoincareOut {
    family: String,
    rank: usize,
    lambda: Vec<i64>,
    k: Vec<usize>,
    polynomial: String,
    coefficients: Vec<i64>,
    symmetric: bool,
    extreme_count: usize,
    ccp: bool,
    screen: Option<ScreenVerdict>,
}

fn cmd_poincare(a: &PoincareArgs) -> Result<String> {
    let (family, rank, lambda, k) = match &a.datum {
        Some(path) => {
            let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
            let d: DatumFile = serde_json::from_str(&s).map_err(|e| Error::Parse(e.to_string()))?;
            let f: Family = d.family.parse()?;
            (f, d.rank, d.lambda, d.k)
        }
        None => {
            let f: Family = a.family.as_deref().unwrap_or_default().parse()?;
            (f, a.rank, a.lambda.clone(), a.k.clone())
        }
    };
    let rank = rank
        .or(family.fixed_rank())
        .ok_or_else(|| Error::Parse("--rank is required for classical families".into()))?;
    let weyl = Arc::new(Weyl::new(family, rank)?);
    let ecd = EnhancedCoxeterDatum::new(weyl, lambda.clone(), &k)?;
    let p = poincare_polynomial(&ecd)?;
    let ccp = ccp_check(&ecd);
    let screen = if a.no_screen { None } else { Some(rspss_screen(&ecd)?) };
    let o = PoincareOut {
        family: family.to_string(),
        rank,
        lambda,
        k: ecd.k_tilde.clone(),
        polynomial: p.to_string(),
        coefficients: p.coeffs().to_vec(),
        symmetric: is_symmetric(&p),
        extreme_count: ccp.extreme_count,
        ccp: ccp.passes,
        screen,
    };
    Ok(match a.format {
        Format::Json => to_json(&o),
        _ => {
            let mut s = format!(
                "{}, {}\n",
                o.polynomial,
                if o.symmetric { "symmetric" } else { "asymmetric" }
            );
            s.push_str(&format!(
                "extreme elements: {} (|K| = {}), CCP {}\n",
                o.extreme_count,
                o.k.len(),
                if o.ccp { "holds" } else { "fails" }
            ));
            match &o.screen {
                Some(ScreenVerdict::PassesAllPoincareTests) => s.push_str("screen: passes all Poincare tests\n"),
                Some(ScreenVerdict::FailsAt {
                    location,
                    polynomial,
                    witness,
                    ..
                }) => s.push_str(&format!(
                    "screen: fails at {:?}: {} (coeff {} is {} vs {})\n",
                    location, polynomial, witness.0, witness.1, witness.2
                )),
                None => {}
            }
            s
        }
    })
}

fn cmd_kumar(a: &KumarArgs) -> Result<String> {
    let case: KumarCase = a.case.parse()?;
    let gcm: GcmChoice = a.gcm.parse()?;
    let r: KumarReport = kumar_case(case, a.n, gcm, interval_cap_from_env())?;
    Ok(match a.format {
        Format::Json => to_json(&r),
        _ => {
            let mut s = format!("{}\n", r.verdict);
            s.push_str(&format!("case {} n={} gcm={}\n", r.case, r.n, r.gcm));
            s.push_str(&format!("word ({}): {:?}\n", r.length, r.word));
            s.push_str(&format!("reflections below w: {}\n", r.reflections));
            s.push_str(&format!("e_1 X(w) = {}\n", r.e1));
            s.push_str(&format!(
                "e_1 X(w) * prod(alpha) = {}{}\n",
                r.normalized,
                if r.normalized_even { " (all coefficients even)" } else { "" }
            ));
            if let (Some(c), Some(av)) = (r.sn_count, r.sn_avoided) {
                s.push_str(&format!("s_n occurs {} time(s); subexpressions for 1 avoid it: {}\n", c, av));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct ChartOut<'a> {
    case: String,
    params: &'a ChartParams,
    verdict: &'a crate::charts::Verdict,
    relation: &'a str,
    m: Option<usize>,
    eliminated: &'a std::collections::BTreeMap<String, String>,
    retained: &'a [String],
    note: &'a Option<String>,
    components: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a [crate::charts::CertLine]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flat_steps: Option<&'a [crate::charts::FlatStep]>,
}

fn cmd_chart(a: &ChartArgs) -> Result<String> {
    let case: ChartCase = a.case.parse()?;
    let params = ChartParams {
        n: a.n,
        r: a.r,
        kappa: a.kappa,
    };
    let chart = build_chart(case, params)?;
    let nf = eliminate(&chart)?;
    Ok(match a.format {
        Format::Json => to_json(&ChartOut {
            case: case.to_string(),
            params: &nf.params,
            verdict: &nf.verdict,
            relation: &nf.relation,
            m: nf.m(),
            eliminated: &nf.eliminated,
            retained: &nf.retained_vars,
            note: &nf.note,
            components: &nf.components,
            certificate: a.certificate.then_some(&nf.certificate[..]),
            flat_steps: a.certificate.then_some(&nf.flat_steps[..]),
        }),
        _ => chart_text(&nf, a.certificate),
    })
}

pub fn chart_text(nf: &NormalForm, certificate: bool) -> String {
    let mut s = format!("{}\n", nf.verdict);
    let p = &nf.params;
    let params = if nf.case == ChartCase::Gl {
        format!("n={} r={} kappa={}", p.n, p.r, p.kappa)
    } else {
        format!("n={}", p.n)
    };
    s.push_str(&format!("case {} {}\n", nf.case, params));
    s.push_str(&format!("relation: {} = 0\n", nf.relation));
    if let Some(n) = &nf.note {
        s.push_str(&format!("note: {}\n", n));
    }
    s.push_str(&format!("retained ({}): {}\n", nf.retained_vars.len(), nf.retained_vars.join(" ")));
    for c in &nf.components {
        s.push_str(&format!("component: {}\n", c));
    }
    for f in &nf.flat_steps {
        s.push_str(&format!("flat {}: {} = 0\n", f.label, f.equation));
        for w in &f.witnesses {
            s.push_str(&format!(
                "  {} * ({}) = {} * {} - ({}) * relation\n",
                w.multiplier, f.equation, w.scalar, w.equation, w.quotient
            ));
        }
    }
    s.push_str("eliminated:\n");
    for (v, e) in &nf.eliminated {
        s.push_str(&format!("  {} = {}\n", v, e));
    }
    if certificate {
        s.push_str("certificate:\n");
        for c in &nf.certificate {
            s.push_str(&format!("  {}: {}  ->  ({}) * relation\n", c.label, c.equation, c.quotient));
        }
    }
    s
}
