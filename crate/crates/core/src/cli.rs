//! Command-line front end.
//!
//! Every invocation produces one record: a JSON object (default), a text
//! report, or for `auxsearch` a CSV table. Rationals are always rendered
//! exactly as `p/q` or integer strings.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::Error;
use crate::forms::function_tuple;
use crate::forms::{
    ak_polynomial, check_system, discriminant_series, eisenstein, g_series, theta_series,
    EquationCheck,
};
use crate::multlab::{
    compute_k0, experiment_grid, operational_exponent, printed_exponent, DegreeBudget,
    ExperimentRow, GridReport,
};
use crate::ring::{derive, evaluate, parse, Monomial, Polynomial, SystemConfig, Var};
use crate::series::{Order, TruncatedSeries};
use crate::stability::{cofactor_profile, principal_stability};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "ramanujan-lab",
    version,
    about = "Exact experiments with the extended Ramanujan system"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the record to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Exit with status 1 on precision-limited results.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump the q-expansion of E2k, g[u,v], Delta or Theta.
    Series {
        #[arg(long)]
        which: String,
        #[arg(long)]
        prec: usize,
        /// Also evaluate the truncation at this rational point.
        #[arg(long, value_name = "RATIONAL")]
        at: Option<String>,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Check the differential system coefficientwise.
    VerifySystem {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        prec: usize,
    },
    /// Express E_{2k} as a polynomial in E4, E6.
    Ak {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 60)]
        prec: usize,
    },
    /// Order of vanishing at z = 0 of a polynomial evaluated at the functions.
    Ord {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        prec: usize,
    },
    /// Apply the derivation D.
    Deriv {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: u32,
    },
    /// Decide whether a polynomial divides its image under D.
    Stable {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: u32,
    },
    /// Order of vanishing of Theta = z (E4^3 - E6^2).
    K0 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        prec: usize,
    },
    /// Search for auxiliary polynomials of maximal order of vanishing.
    Auxsearch {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d0: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Precision per budget; defaults to three times the monomial count.
        #[arg(long)]
        prec: Option<usize>,
        /// Budgets such as `0-1:0-2` or `1:2,0:3` (d0:d, ranges inclusive).
        #[arg(long)]
        grid: Option<String>,
    },
}

/// Failure of a command, mapped onto the exit status.
#[derive(Debug)]
enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precision { .. } | Error::Internal(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Record {
    command: &'static str,
    params: Value,
    payload: Value,
    errata: Vec<Value>,
    text: String,
    csv: Option<String>,
    exit: i32,
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let record = match execute(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 1;
        }
    };
    let rendered = match cli.format {
        Format::Json => {
            let obj = json!({
                "command": record.command,
                "params": record.params,
                "payload": record.payload,
                "errata": record.errata,
            });
            format!("{}\n", serde_json::to_string_pretty(&obj).expect("json"))
        }
        Format::Text => record.text,
        Format::Csv => match record.csv {
            Some(csv) => csv,
            None => {
                let _ = writeln!(
                    stderr,
                    "error: --format csv is only available for auxsearch"
                );
                return 2;
            }
        },
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, rendered.as_bytes()).map_err(|e| e.to_string()),
        None => stdout
            .write_all(rendered.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 2;
    }
    record.exit
}

fn execute(cli: &Cli) -> Result<Record, Failure> {
    match &cli.command {
        Command::Series {
            which,
            prec,
            at,
            digits,
        } => series_cmd(which, *prec, at.as_deref(), *digits),
        Command::VerifySystem { m, prec } => verify_cmd(*m, *prec),
        Command::Ak { k, prec } => ak_cmd(*k, *prec),
        Command::Ord { poly, m, prec } => ord_cmd(poly, *m, *prec, cli.strict),
        Command::Deriv { poly, m } => deriv_cmd(poly, *m),
        Command::Stable { poly, m } => stable_cmd(poly, *m),
        Command::K0 { m, prec } => k0_cmd(*m, *prec),
        Command::Auxsearch {
            m,
            d0,
            d,
            prec,
            grid,
        } => auxsearch_cmd(*m, *d0, *d, *prec, grid.as_deref(), cli.strict),
    }
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn ord_json(o: Order) -> Value {
    match o {
        Order::Finite(t) => json!({ "finite": true, "value": t }),
        Order::AtLeast(t) => json!({ "finite": false, "at_least": t }),
    }
}

fn coefficients_json(s: &TruncatedSeries) -> Value {
    Value::Array(s.coeffs().iter().map(rat).collect())
}

fn parse_poly(text: &str, m: u32) -> Result<(SystemConfig, Polynomial), Failure> {
    let config = SystemConfig::new(m)?;
    Ok((config, parse(text, config)?))
}

fn series_by_name(which: &str, prec: usize) -> Result<TruncatedSeries, Failure> {
    let which = which.trim();
    if which == "Delta" {
        return Ok(discriminant_series(prec));
    }
    if which == "Theta" {
        return Ok(theta_series(prec));
    }
    if let Some(weight) = which.strip_prefix('E') {
        let weight: u32 = weight
            .parse()
            .map_err(|_| Failure::Usage(format!("unknown series `{which}`")))?;
        if weight < 2 || weight % 2 == 1 {
            return Err(Failure::Usage(format!(
                "Eisenstein weight must be even and >= 2, got {weight}"
            )));
        }
        return Ok(eisenstein(weight / 2, prec)?);
    }
    if let Some(inner) = which.strip_prefix("g[").and_then(|s| s.strip_suffix(']')) {
        let (u, v) = inner
            .split_once(',')
            .ok_or_else(|| Failure::Usage(format!("malformed `{which}`")))?;
        let u: u32 = u
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("malformed `{which}`")))?;
        let v: u32 = v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("malformed `{which}`")))?;
        return Ok(g_series(u, v, prec)?);
    }
    Err(Failure::Usage(format!(
        "unknown series `{which}` (expected E2k, g[u,v], Delta or Theta)"
    )))
}

fn series_cmd(
    which: &str,
    prec: usize,
    at: Option<&str>,
    digits: usize,
) -> Result<Record, Failure> {
    let s = series_by_name(which, prec)?;
    let mut payload = json!({
        "which": which,
        "precision": prec,
        "coefficients": coefficients_json(&s),
        "ord": ord_json(s.ord()),
    });
    let mut text = format!("{which} to z^{prec}\n");
    for (n, c) in s.coeffs().iter().enumerate() {
        text.push_str(&format!("z^{n}: {}\n", format_rational(c)));
    }
    if let Some(at) = at {
        let x = parse_rational(at)
            .ok_or_else(|| Failure::Usage(format!("`{at}` is not a rational")))?;
        let value = s.numeric_eval(&x, digits)?;
        text.push_str(&format!(
            "value at {at}: {} ({})\n",
            value.decimal,
            value.note()
        ));
        payload["numeric"] = json!({
            "at": format_rational(&x),
            "digits": digits,
            "value": value.decimal,
            "exact": format_rational(&value.exact),
            "note": value.note(),
        });
    }
    Ok(Record {
        command: "series",
        params: json!({ "which": which, "prec": prec, "at": at, "digits": digits }),
        payload,
        errata: Vec::new(),
        text,
        csv: None,
        exit: 0,
    })
}

fn check_json(e: &EquationCheck) -> Value {
    json!({
        "equation": e.name,
        "checked": e.checked,
        "mismatches": e.mismatches,
        "first_mismatch": e.first_mismatch,
        "passed": e.passed(),
    })
}

fn check_line(e: &EquationCheck) -> String {
    match e.first_mismatch {
        None => format!("PASS  {}\n", e.name),
        Some(n) => format!(
            "FAIL  {} ({} mismatches, first at z^{n})\n",
            e.name, e.mismatches
        ),
    }
}

fn verify_cmd(m: u32, prec: usize) -> Result<Record, Failure> {
    let report = check_system(m, prec)?;
    let passed = report.passed();
    let mut text = format!(
        "system check, m = {m}, coefficients z^0..z^{}\n",
        prec.saturating_sub(1)
    );
    report
        .equations
        .iter()
        .for_each(|e| text.push_str(&check_line(e)));
    if !report.errata.is_empty() {
        text.push_str("errata (literal formulas):\n");
        report
            .errata
            .iter()
            .for_each(|e| text.push_str(&check_line(e)));
    }
    Ok(Record {
        command: "verify-system",
        params: json!({ "m": m, "prec": prec }),
        payload: json!({
            "passed": passed,
            "equations": report.equations.iter().map(check_json).collect::<Vec<_>>(),
        }),
        errata: report.errata.iter().map(check_json).collect(),
        text,
        csv: None,
        exit: if passed { 0 } else { 1 },
    })
}

fn ak_cmd(k: u32, prec: usize) -> Result<Record, Failure> {
    let ak = ak_polynomial(k, prec)?;
    let config = SystemConfig::new(1).expect("m = 1");
    let ring_form = Polynomial::from_terms(
        config,
        ak.terms().iter().map(|(&(a, b), c)| {
            (
                Monomial::from_pairs([(Var::X2, a), (Var::X3, b)]),
                c.clone(),
            )
        }),
    );
    let terms: Vec<Value> = ak
        .terms()
        .iter()
        .map(|(&(a, b), c)| json!({ "a": a, "b": b, "coeff": format_rational(c) }))
        .collect();
    Ok(Record {
        command: "ak",
        params: json!({ "k": k, "prec": prec }),
        payload: json!({
            "k": k,
            "polynomial": ak.to_string(),
            "in_generators": ring_form.to_string(),
            "terms": terms,
            "verified_through": prec,
        }),
        errata: Vec::new(),
        text: format!(
            "A_{k}(X, Y) = {ak}\nE{} = {ring_form}  (verified through z^{prec})\n",
            2 * k
        ),
        csv: None,
        exit: 0,
    })
}

fn ord_cmd(poly: &str, m: u32, prec: usize, strict: bool) -> Result<Record, Failure> {
    let (_, p) = parse_poly(poly, m)?;
    let tuple = function_tuple(m, prec)?;
    let ord = evaluate(&p, &tuple)?.ord();
    let limited = matches!(ord, Order::AtLeast(_));
    Ok(Record {
        command: "ord",
        params: json!({ "poly": poly, "m": m, "prec": prec }),
        payload: json!({ "poly": p.to_string(), "ord": ord_json(ord) }),
        errata: Vec::new(),
        text: format!("ord_(z=0) {p} = {ord}\n"),
        csv: None,
        exit: if limited && strict { 1 } else { 0 },
    })
}

fn deriv_cmd(poly: &str, m: u32) -> Result<Record, Failure> {
    let (config, p) = parse_poly(poly, m)?;
    let d = derive(&p, config)?;
    Ok(Record {
        command: "deriv",
        params: json!({ "poly": poly, "m": m }),
        payload: json!({ "poly": p.to_string(), "derivative": d.to_string() }),
        errata: Vec::new(),
        text: format!("D({p}) = {d}\n"),
        csv: None,
        exit: 0,
    })
}

fn stable_cmd(poly: &str, m: u32) -> Result<Record, Failure> {
    let (config, p) = parse_poly(poly, m)?;
    let verdict = principal_stability(&p, config)?;
    let profile = if verdict.stable {
        let prof = cofactor_profile(&p, config)?;
        json!({
            "phi_of_cofactor": prof.phi_of_cofactor,
            "z_degree_of_cofactor": prof.z_degree_of_cofactor,
            "linear_form": prof.linear_form.as_ref().map(|(a, b)| json!({ "a": rat(a), "b": rat(b) })),
            "min_phi2_part_z_degree": prof.min_phi2_part_z_degree,
        })
    } else {
        Value::Null
    };
    let text = match &verdict.cofactor {
        Some(c) => format!("stable: D({p}) = ({c}) * ({p})\n"),
        None => format!("not stable: {p} does not divide D({p})\n"),
    };
    Ok(Record {
        command: "stable",
        params: json!({ "poly": poly, "m": m }),
        payload: json!({
            "poly": p.to_string(),
            "stable": verdict.stable,
            "cofactor": verdict.cofactor.as_ref().map(ToString::to_string),
            "profile": profile,
        }),
        errata: Vec::new(),
        text,
        csv: None,
        exit: 0,
    })
}

fn k0_cmd(m: u32, prec: usize) -> Result<Record, Failure> {
    let ord = compute_k0(m, prec)?;
    let value = ord.finite().expect("compute_k0 returns a finite order");
    Ok(Record {
        command: "k0",
        params: json!({ "m": m, "prec": prec }),
        payload: json!({ "ord": value }),
        errata: Vec::new(),
        text: format!("K0 = ord_(z=0) Theta = {value}\n"),
        csv: None,
        exit: 0,
    })
}

fn parse_range(text: &str) -> Option<(u32, u32)> {
    let text = text.trim();
    match text.split_once('-') {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (a <= b).then_some((a, b))
        }
        None => {
            let a = text.parse().ok()?;
            Some((a, a))
        }
    }
}

/// Parses a grid such as `0-1:0-2` or `1:2,0:3`.
pub fn parse_grid(spec: &str) -> Option<Vec<DegreeBudget>> {
    let mut budgets = Vec::new();
    for item in spec.split(',') {
        let (d0, d) = item.split_once(':')?;
        let (d0_lo, d0_hi) = parse_range(d0)?;
        let (d_lo, d_hi) = parse_range(d)?;
        for a in d0_lo..=d0_hi {
            for b in d_lo..=d_hi {
                budgets.push(DegreeBudget::new(a, b));
            }
        }
    }
    Some(budgets)
}

fn row_json(r: &ExperimentRow) -> Value {
    json!({
        "m": r.m,
        "d0": r.budget.d0,
        "d": r.budget.d,
        "T": r.t,
        "precision": r.precision,
        "n_star": r.n_star,
        "ord": ord_json(r.measured_ord),
        "ratio": rat(&r.ratio),
        "ratio_printed_exponent": rat(&r.ratio_printed),
        "precision_limited": r.precision_limited,
        "witness": r.witness.to_string(),
    })
}

fn grid_csv(report: &GridReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "m",
        "d0",
        "d",
        "T",
        "n_star",
        "ord",
        "ratio_num",
        "ratio_den",
        "flag",
    ])
    .expect("in-memory csv");
    for r in &report.rows {
        w.write_record([
            r.m.to_string(),
            r.budget.d0.to_string(),
            r.budget.d.to_string(),
            r.t.to_string(),
            r.n_star.to_string(),
            r.measured_ord.to_string(),
            r.ratio.numer().to_string(),
            r.ratio.denom().to_string(),
            if r.precision_limited {
                "precision_limited"
            } else {
                "ok"
            }
            .to_string(),
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn auxsearch_cmd(
    m: u32,
    d0: Option<u32>,
    d: Option<u32>,
    prec: Option<usize>,
    grid: Option<&str>,
    strict: bool,
) -> Result<Record, Failure> {
    let budgets = match (grid, d0, d) {
        (Some(spec), _, _) => {
            parse_grid(spec).ok_or_else(|| Failure::Usage(format!("malformed grid `{spec}`")))?
        }
        (None, Some(d0), Some(d)) => vec![DegreeBudget::new(d0, d)],
        _ => {
            return Err(Failure::Usage(
                "auxsearch needs --d0 and --d, or --grid".into(),
            ))
        }
    };
    let report = experiment_grid(m, &budgets, prec)?;
    let nu = operational_exponent(m);
    let printed = printed_exponent(m);
    let mut text = format!(
        "m = {m}, exponent nu = {nu} (printed formula gives {printed})\n\
         {:>3} {:>3} {:>6} {:>6} {:>8} {:>14} {:>14}  flag\n",
        "d0", "d", "T", "n*", "ord", "ratio(nu)", "ratio(printed)"
    );
    for r in &report.rows {
        text.push_str(&format!(
            "{:>3} {:>3} {:>6} {:>6} {:>8} {:>14} {:>14}  {}\n",
            r.budget.d0,
            r.budget.d,
            r.t,
            r.n_star,
            r.measured_ord.to_string(),
            format_rational(&r.ratio),
            format_rational(&r.ratio_printed),
            if r.precision_limited {
                "precision_limited"
            } else {
                "ok"
            }
        ));
    }
    text.push_str(&format!(
        "max ratio: {} (nu = {nu}), {} (printed exponent {printed})\n",
        format_rational(&report.max_ratio),
        format_rational(&report.max_ratio_printed)
    ));
    let limited = !report.precision_limited.is_empty();
    Ok(Record {
        command: "auxsearch",
        params: json!({
            "m": m,
            "budgets": budgets.iter().map(|b| json!([b.d0, b.d])).collect::<Vec<_>>(),
            "prec": prec,
        }),
        payload: json!({
            "exponent": nu,
            "printed_exponent": printed,
            "rows": report.rows.iter().map(row_json).collect::<Vec<_>>(),
            "max_ratio": rat(&report.max_ratio),
            "max_ratio_printed_exponent": rat(&report.max_ratio_printed),
            "precision_limited_rows": report.precision_limited,
        }),
        errata: Vec::new(),
        csv: Some(grid_csv(&report)),
        text,
        exit: if limited && strict { 1 } else { 0 },
    })
}
