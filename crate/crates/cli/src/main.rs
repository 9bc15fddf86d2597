use std::io::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use stirling_core::catalog::{self, CatalogEntry};
use stirling_core::certify::{certify_bound, CertifyError, CertifyOptions};
use stirling_core::expr::{parse_ratfunc, ExprError};
use stirling_core::precision::{
    eval_log_bound, factorial, strict_compare, PrecisionError, Verdict,
};
use stirling_core::series::{stirling_coeff, SeriesError};
use stirling_core::wallis::{
    ratio_limit_table, ratio_table_csv, wallis_monotone_check, wallis_sandwich_check,
};
use stirling_core::{BoundSpec, Direction, Interval, Rat, RatFunc};

#[derive(Parser)]
#[command(name = "stirling", version, about = "Certify precise Stirling bounds n! ≷ √(2πn)(n/e)ⁿe^{a(n)}")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; `certify` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Highest working precision (bits) for interval comparisons.
    #[arg(
        long,
        global = true,
        env = "STIRLING_PREC_CEILING",
        default_value_t = 16384,
        value_parser = clap::value_parser!(u32).range(64..)
    )]
    prec_ceiling: u32,

    /// Report elapsed wall-clock time on stderr (text mode only).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Derive and certify a bound, printing its certificate.
    Certify {
        /// Correction term a(n), e.g. "1/(12n+1)".
        #[arg(long)]
        an: String,
        /// Series truncation parameter: lower bounds use S_{2r-1}, upper S_{2r}.
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, value_enum)]
        direction: Dir,
        /// First n the bound is claimed for.
        #[arg(long, default_value_t = 1)]
        from: u64,
    },
    /// Enclose the bound value √(2πn)(n/e)ⁿe^{a(n)}.
    Eval {
        #[arg(long)]
        n: u64,
        /// Correction term, as an expression or a catalogue name.
        #[arg(long)]
        an: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// Enclose n! between a lower and an upper bound.
    Sandwich {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        lower: String,
        #[arg(long)]
        upper: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// Certify every catalogued bound and compare with the printed data.
    Reproduce,
    /// Wallis-integral sandwich checks and the ratio table.
    Wallis {
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        /// Also print the n!eⁿ/n^{n+½} table (CSV) for these n.
        #[arg(long, value_delimiter = ',')]
        ratio: Vec<u64>,
        #[arg(long, default_value_t = 64)]
        ratio_prec: u32,
    },
    /// Exact Stirling-series coefficients c_2..c_upto.
    Series {
        #[arg(long, default_value_t = 12)]
        upto: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Lower,
    Upper,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Lower => Direction::Lower,
            Dir::Upper => Direction::Upper,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_REFUTED: u8 = 2;
const EXIT_UNDECIDABLE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// A failed command: exit status plus a diagnostic for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<PrecisionError> for Failure {
    fn from(e: PrecisionError) -> Self {
        let code = match e {
            PrecisionError::Undecidable { .. } => EXIT_UNDECIDABLE,
            PrecisionError::Pole(_) | PrecisionError::Domain(_) => EXIT_USAGE,
            PrecisionError::DivisionByZero => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = std::panic::catch_unwind(|| run(&cli)).unwrap_or_else(|_| {
        Err(Failure { code: EXIT_INTERNAL, message: "internal error".into() })
    });
    let text_mode = format_of(&cli) == Format::Text;
    let code = match result {
        Ok(out) => {
            print_stdout(&out);
            0
        }
        Err(Failure { code, message }) => {
            // refutations still carry a machine-readable record on stdout
            if let Some((out, msg)) = message.split_once('\u{0}') {
                print_stdout(out);
                eprintln!("stirling: {msg}");
            } else {
                eprintln!("stirling: {message}");
            }
            code
        }
    };
    if cli.timing && text_mode {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}

fn print_stdout(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    if !out.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
}

fn format_of(cli: &Cli) -> Format {
    cli.format.unwrap_or(match cli.command {
        Command::Certify { .. } => Format::Json,
        _ => Format::Text,
    })
}

fn run(cli: &Cli) -> Outcome {
    let format = format_of(cli);
    let ceiling = cli.prec_ceiling;
    match &cli.command {
        Command::Certify { an, r, direction, from } => {
            cmd_certify(an, *r, (*direction).into(), *from, ceiling, format)
        }
        Command::Eval { n, an, digits } => cmd_eval(*n, an, *digits, format),
        Command::Sandwich { n, lower, upper, digits } => {
            cmd_sandwich(*n, lower, upper, *digits, ceiling, format)
        }
        Command::Reproduce => cmd_reproduce(ceiling, format),
        Command::Wallis { max_n, ratio, ratio_prec } => {
            cmd_wallis(*max_n, ratio, *ratio_prec, ceiling, format)
        }
        Command::Series { upto } => cmd_series(*upto, format),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

/// Parse error with the offending text and a caret under the position.
fn parse_diagnostic(text: &str, err: &ExprError) -> Failure {
    let detail = match err {
        ExprError::Parse(p) => {
            let col = text[..p.offset().min(text.len())].chars().count();
            format!("{err}\n  {text}\n  {}^", " ".repeat(col))
        }
        ExprError::Lower(_) => format!("{err}\n  {text}"),
    };
    Failure::usage(format!("cannot parse correction term: {detail}"))
}

/// A catalogue name or an expression.
fn resolve(text: &str) -> Result<(RatFunc, Option<CatalogEntry>), Failure> {
    if let Some(entry) = catalog::find(text) {
        return Ok((entry.spec.a().clone(), Some(entry)));
    }
    parse_ratfunc(text)
        .map(|a| (a, None))
        .map_err(|e| parse_diagnostic(text, &e))
}

fn cmd_certify(an: &str, r: u32, direction: Direction, from: u64, ceiling: u32, format: Format) -> Outcome {
    let a = parse_ratfunc(an).map_err(|e| parse_diagnostic(an, &e))?;
    let spec = BoundSpec::new("cli", direction, a, r, from).map_err(|e| Failure::usage(e.to_string()))?;
    let opts = CertifyOptions { prec_ceiling: ceiling, ..CertifyOptions::default() };
    match certify_bound(&spec, &opts) {
        Ok(cert) => Ok(match format {
            Format::Json => to_json(&cert),
            Format::Text => format!(
                "certified: {} bound with a(n) = {} holds for all n >= {}\n\
                 sign polynomial: {} {}\n\
                 threshold: {} ({} base cases)",
                direction_word(direction),
                spec.a(),
                cert.valid_from,
                cert.claim.p,
                sign_text(&cert),
                cert.claim.threshold,
                cert.base_cases.len(),
            ),
        }),
        Err(e) => Err(certify_failure(&e, format)),
    }
}

fn direction_word(d: Direction) -> &'static str {
    match d {
        Direction::Lower => "lower",
        Direction::Upper => "upper",
    }
}

fn sign_text(cert: &stirling_core::Certificate) -> String {
    serde_json::to_value(cert.claim.required_sign)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn certify_failure(e: &CertifyError, format: Format) -> Failure {
    let code = match e {
        CertifyError::Spec(_) => EXIT_USAGE,
        CertifyError::Derivation(_) => EXIT_INTERNAL,
        CertifyError::Refuted { .. } => EXIT_REFUTED,
        CertifyError::Threshold { counterexample: Some(_), .. } => EXIT_REFUTED,
        CertifyError::Threshold { counterexample: None, .. } | CertifyError::Undecidable { .. } => {
            EXIT_UNDECIDABLE
        }
    };
    let status = match code {
        EXIT_REFUTED => "refuted",
        EXIT_UNDECIDABLE => "undecidable",
        _ => "error",
    };
    let record = match format {
        Format::Json => to_json(&json!({
            "status": status,
            "stage": e.stage(),
            "error": e.to_string(),
            "counterexample": e.counterexample().map(|n| n.to_string()),
        })),
        Format::Text => match e.counterexample() {
            Some(n) => format!("{status}: counterexample n = {n}"),
            None => format!("{status}: {e}"),
        },
    };
    Failure { code, message: format!("{record}\u{0}{e}") }
}

/// Working precision for `digits` significant decimals of a bound at `n`.
fn working_prec(digits: u32, n: u64) -> u32 {
    digits * 4 + 64 + (64 - n.leading_zeros())
}

fn bound_value(n: u64, a: &RatFunc, prec: u32) -> Result<Interval, PrecisionError> {
    eval_log_bound(n, a, prec + 64)?.exp().map(|v| v.with_prec(prec))
}

fn cmd_eval(n: u64, an: &str, digits: u32, format: Format) -> Outcome {
    let (a, entry) = resolve(an)?;
    if let Some(entry) = &entry {
        check_range(entry, n)?;
    }
    let v = bound_value(n, &a, working_prec(digits, n))?;
    let (lo, hi) = v.to_sci(digits);
    Ok(match format {
        Format::Json => to_json(&json!({ "n": n.to_string(), "a": a.to_string(), "lo": lo, "hi": hi })),
        Format::Text => format!("n = {n}\na(n) = {a}\nbound in [{lo}, {hi}]"),
    })
}

fn check_range(entry: &CatalogEntry, n: u64) -> Result<(), Failure> {
    let from = entry.spec.claim_from();
    if n < from {
        return Err(Failure::usage(format!(
            "{} is only established for n >= {from}, not n = {n}",
            entry.spec.name()
        )));
    }
    Ok(())
}

/// Leading decimal digits shared by every number in `[lo, hi]`.
fn pinned_digits(lo: &Interval, hi: &Interval, max: u32) -> u32 {
    let a = lo.to_sci(max + 2).0;
    let b = hi.to_sci(max + 2).1;
    let split = |s: &str| -> Option<(String, i64)> {
        let (m, e) = s.split_once('e')?;
        Some((m.replace('.', ""), e.parse().ok()?))
    };
    match (split(&a), split(&b)) {
        (Some((ma, ea)), Some((mb, eb))) if ea == eb => {
            let common = ma.chars().zip(mb.chars()).take_while(|(x, y)| x == y).count();
            (common as u32).min(max)
        }
        _ => 0,
    }
}

#[derive(Serialize)]
struct SandwichReport {
    n: String,
    lower: BoundReport,
    upper: BoundReport,
    factorial: String,
    contains: Verdict,
    pinned_digits: u32,
    relative_gap_below: String,
}

#[derive(Serialize)]
struct BoundReport {
    term: String,
    a: String,
    lo: String,
    hi: String,
    verdict: Verdict,
}

fn cmd_sandwich(n: u64, lower: &str, upper: &str, digits: u32, ceiling: u32, format: Format) -> Outcome {
    if n == 0 {
        return Err(Failure::usage("n must be at least 1"));
    }
    let sides = [(lower, Direction::Lower), (upper, Direction::Upper)];
    let mut reports = Vec::new();
    let mut terms = Vec::new();
    let mut values = Vec::new();
    let prec = working_prec(digits, n);
    for (text, direction) in sides {
        let (a, entry) = resolve(text)?;
        if let Some(entry) = &entry {
            check_range(entry, n)?;
        }
        let decision = strict_compare(n, &a, direction, ceiling)?;
        let value = bound_value(n, &a, prec)?;
        let (lo, hi) = value.to_sci(digits);
        reports.push(BoundReport {
            term: text.to_string(),
            a: a.to_string(),
            lo,
            hi,
            verdict: if decision.holds { Verdict::Holds } else { Verdict::Violated },
        });
        terms.push(a);
        values.push(value);
    }
    let upper_report = reports.pop().expect("two sides");
    let lower_report = reports.pop().expect("two sides");
    let contains = if lower_report.verdict == Verdict::Holds && upper_report.verdict == Verdict::Holds {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    // U/L − 1 = e^{a_U(n) − a_L(n)} − 1, with the exponent exact
    let nn = Rat::from_integer(BigInt::from(n));
    let diff = terms[1].eval(&nn).map_err(|_| PrecisionError::Pole(n))?
        - terms[0].eval(&nn).map_err(|_| PrecisionError::Pole(n))?;
    let gap = &Interval::from_rat(&diff, 256).exp()? - &Interval::one(256);
    let gap_hi = gap.to_sci(3).1;
    let pinned = pinned_digits(&values[0], &values[1], digits);
    let report = SandwichReport {
        n: n.to_string(),
        lower: lower_report,
        upper: upper_report,
        factorial: factorial(n).to_string(),
        contains,
        pinned_digits: pinned,
        relative_gap_below: gap_hi,
    };
    let out = match format {
        Format::Json => to_json(&report),
        Format::Text => format!(
            "n = {}\nlower {} in [{}, {}]  {}\nupper {} in [{}, {}]  {}\nn! = {}\n\
             contains: {}\npinned digits: {}\nrelative gap < {}",
            report.n,
            report.lower.term,
            report.lower.lo,
            report.lower.hi,
            verdict_word(report.lower.verdict),
            report.upper.term,
            report.upper.lo,
            report.upper.hi,
            verdict_word(report.upper.verdict),
            report.factorial,
            verdict_word(report.contains),
            report.pinned_digits,
            report.relative_gap_below,
        ),
    };
    if contains == Verdict::Holds {
        Ok(out)
    } else {
        Err(Failure { code: EXIT_REFUTED, message: format!("{out}\u{0}the bounds do not enclose {n}!") })
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::Undecidable => "undecidable",
    }
}

fn cmd_reproduce(ceiling: u32, format: Format) -> Outcome {
    let opts = CertifyOptions { prec_ceiling: ceiling, ..CertifyOptions::default() };
    let report = catalog::reproduce_catalog(&opts);
    let out = match format {
        Format::Json => to_json(&report),
        Format::Text => report.to_table(),
    };
    if report.all_certified {
        Ok(out)
    } else {
        Err(Failure { code: EXIT_REFUTED, message: format!("{out}\u{0}some bounds were not certified") })
    }
}

#[derive(Serialize)]
struct WallisRow {
    n: String,
    sandwich: Verdict,
    decreasing: Verdict,
}

fn cmd_wallis(max_n: u64, ratio: &[u64], ratio_prec: u32, ceiling: u32, format: Format) -> Outcome {
    let rows = (1..=max_n)
        .map(|n| {
            Ok(WallisRow {
                n: n.to_string(),
                sandwich: wallis_sandwich_check(n, ceiling)?,
                decreasing: wallis_monotone_check(n, ceiling)?,
            })
        })
        .collect::<Result<Vec<_>, PrecisionError>>()?;
    let table = if ratio.is_empty() {
        None
    } else {
        Some(ratio_limit_table(ratio, ratio_prec.max(64))?)
    };
    let failed = rows
        .iter()
        .any(|r| r.sandwich != Verdict::Holds || r.decreasing != Verdict::Holds)
        || table.iter().flatten().any(|r| r.envelope != Verdict::Holds);
    let out = match format {
        Format::Json => {
            let csv = table.as_ref().map(|t| ratio_table_csv(t, 20));
            to_json(&json!({ "rows": rows, "ratio_table_csv": csv }))
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                s.push_str(&format!("{} {}\n", r.n, verdict_word(r.sandwich)));
            }
            if let Some(t) = &table {
                s.push_str(&ratio_table_csv(t, 20));
            }
            s
        }
    };
    if failed {
        Err(Failure { code: EXIT_REFUTED, message: format!("{out}\u{0}a Wallis check failed") })
    } else {
        Ok(out)
    }
}

fn cmd_series(upto: u32, format: Format) -> Outcome {
    let coeffs = (2..=upto)
        .map(|k| Ok((k, stirling_coeff(k)?)))
        .collect::<Result<Vec<(u32, Rat)>, SeriesError>>()
        .map_err(|e| Failure::usage(e.to_string()))?;
    if coeffs.is_empty() {
        return Err(Failure::usage("--upto must be at least 2"));
    }
    Ok(match format {
        Format::Json => to_json(
            &coeffs
                .iter()
                .map(|(k, c)| json!({ "k": k.to_string(), "c": c.to_string() }))
                .collect::<Vec<_>>(),
        ),
        Format::Text => coeffs.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>().join("\n"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use stirling_core::precision::parse_sci;

    #[test]
    fn pinned_digit_count() {
        let lo = Interval::from_rat(&parse_sci("3.62879e6").unwrap(), 80);
        let hi = Interval::from_rat(&parse_sci("3.62881e6").unwrap(), 80);
        assert_eq!(pinned_digits(&lo, &hi, 30), 4);
        assert_eq!(pinned_digits(&lo, &lo, 3), 3);
    }

    #[test]
    fn certify_defaults_to_json() {
        let cli = Cli::try_parse_from(["stirling", "certify", "--an", "1/(12n)", "--direction", "upper"]).unwrap();
        assert!(format_of(&cli) == Format::Json);
        let cli = Cli::try_parse_from(["stirling", "series"]).unwrap();
        assert!(format_of(&cli) == Format::Text);
        assert!(Cli::try_parse_from(["stirling", "--prec-ceiling", "32", "series"]).is_err());
    }
}
