//! Command-line front end: flag parsing, dispatch, and output assembly.
//!
//! Subcommands: `expand`, `half`, `factor`, `antecedent`, `pseudo`,
//! `hankel`, `jfraction`, `identify`, `verify`. Flags accept one or two
//! leading dashes interchangeably. Exit codes: 0 success, 1 failed
//! verification, 2 input error (bad flags or unparsable expressions),
//! 3 math error (a computation rejected valid-looking input).
//!
//! Output is deterministic: the same argv always produces byte-identical
//! stdout. Notices (precision auto-raises, skipped database lines) go to
//! stderr so they never disturb machine-read output.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use serde_json::{json, Value};

use crate::antecedent::{self, AntecedentError, AntecedentResult, HalfKind};
use crate::array::{RiordanArray, RiordanError, TriangleMatrix};
use crate::expr::{parse_eval, ExprError};
use crate::halves::{self, HalvesError};
use crate::identify::{IdentifyError, SequenceDb};
use crate::moments::{self, MomentsError};
use crate::rational::Rat;
use crate::render::{
    coeff_line, json_document, matrix_csv, matrix_json, matrix_text, rationals_json,
    series_json, OutputFormat,
};
use crate::series::Series;
use crate::verify;

/// Environment variable consulted for the sequence database when
/// `--oeis-db` is not given.
pub const OEIS_PATH_VAR: &str = "RIORDAN_OEIS_PATH";

const USAGE: &str = "\
usage: riordan <command> [flags]

commands:
  expand     -g <expr> -f <expr> [--rows R] [-N P] [--format text|json|csv]
  half       --vertical|--horizontal -g <expr> -f <expr> [--rows R] [-N P] [--format ...]
  factor     -g <expr> -f <expr> [-N P] [--format text|json]
  antecedent --vertical|--horizontal -psi <expr> -phi <expr> [--rows R] [-N P] [--format ...]
  pseudo     -f <expr> [-N P] [--format text|json]
  hankel     -expr <expr> [--nmax M] [-N P] [--format text|json]
  jfraction  -expr <expr> [--depth D] [-N P] [--format text|json]
  identify   -expr <expr> | --column K -g <expr> -f <expr>
             [--min-match M] [--oeis-db PATH] [-N P] [--format text|json]
  verify     (no flags) run the built-in example suite

defaults: precision 16, rows 8, format text. The sequence database for
identify comes from --oeis-db or the RIORDAN_OEIS_PATH environment variable.
";

/// A classified failure: input errors exit 2, math errors exit 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Math(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl From<RiordanError> for CliError {
    fn from(e: RiordanError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<HalvesError> for CliError {
    fn from(e: HalvesError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<AntecedentError> for CliError {
    fn from(e: AntecedentError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<MomentsError> for CliError {
    fn from(e: MomentsError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<IdentifyError> for CliError {
    fn from(e: IdentifyError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Evaluate an expression flag, classifying parse failures as input
/// errors and evaluation failures as math errors, always naming the flag.
fn eval_flag(flag: &str, text: &str, precision: usize) -> Result<Series, CliError> {
    parse_eval(text, precision).map_err(|e| {
        let message = format!("{flag} \"{text}\": {}", e.annotate(text));
        match e {
            ExprError::Syntax { .. } => CliError::Input(message),
            ExprError::Eval { .. } => CliError::Math(message),
        }
    })
}

// ---- flag parsing ----

fn canonical(name: &str) -> Option<(&'static str, bool)> {
    match name {
        "g" => Some(("g", true)),
        "f" => Some(("f", true)),
        "psi" => Some(("psi", true)),
        "phi" => Some(("phi", true)),
        "expr" => Some(("expr", true)),
        "rows" => Some(("rows", true)),
        "N" | "precision" => Some(("precision", true)),
        "nmax" => Some(("nmax", true)),
        "depth" => Some(("depth", true)),
        "column" => Some(("column", true)),
        "format" => Some(("format", true)),
        "oeis-db" => Some(("oeis-db", true)),
        "min-match" => Some(("min-match", true)),
        "vertical" => Some(("vertical", false)),
        "horizontal" => Some(("horizontal", false)),
        _ => None,
    }
}

#[derive(Debug)]
struct Flags {
    values: BTreeMap<&'static str, String>,
    switches: BTreeSet<&'static str>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, CliError> {
        let mut values = BTreeMap::new();
        let mut switches = BTreeSet::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let name = arg
                .strip_prefix("--")
                .or_else(|| arg.strip_prefix('-'))
                .ok_or_else(|| {
                    CliError::Input(format!("unexpected argument \"{arg}\" (expected a flag)"))
                })?;
            let (key, takes_value) = canonical(name)
                .ok_or_else(|| CliError::Input(format!("unknown flag \"{arg}\"")))?;
            if takes_value {
                let value = args.get(i + 1).ok_or_else(|| {
                    CliError::Input(format!("flag \"{arg}\" needs a value"))
                })?;
                values.insert(key, value.clone());
                i += 2;
            } else {
                switches.insert(key);
                i += 1;
            }
        }
        Ok(Flags { values, switches })
    }

    fn value(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &'static str) -> Result<&str, CliError> {
        self.value(key)
            .ok_or_else(|| CliError::Input(format!("missing required flag \"-{key}\"")))
    }

    fn count(&self, key: &'static str, default: usize, minimum: usize) -> Result<usize, CliError> {
        match self.value(key) {
            None => Ok(default),
            Some(text) => {
                let n: usize = text.parse().map_err(|_| {
                    CliError::Input(format!("flag \"-{key}\": \"{text}\" is not a count"))
                })?;
                if n < minimum {
                    return Err(CliError::Input(format!(
                        "flag \"-{key}\": must be at least {minimum}"
                    )));
                }
                Ok(n)
            }
        }
    }

    fn format(&self) -> Result<OutputFormat, CliError> {
        match self.value("format") {
            None => Ok(OutputFormat::Text),
            Some(text) => OutputFormat::parse(text).ok_or_else(|| {
                CliError::Input(format!(
                    "flag \"-format\": \"{text}\" is not one of text, json, csv"
                ))
            }),
        }
    }

    /// Exactly one of `--vertical` / `--horizontal`.
    fn direction(&self) -> Result<HalfKind, CliError> {
        match (self.switches.contains("vertical"), self.switches.contains("horizontal")) {
            (true, false) => Ok(HalfKind::Vertical),
            (false, true) => Ok(HalfKind::Horizontal),
            _ => Err(CliError::Input(
                "pass exactly one of --vertical or --horizontal".into(),
            )),
        }
    }
}

/// Raise the working precision when the requested rows demand more
/// coefficients, with a notice on stderr.
fn raise_precision(precision: usize, needed: usize, reason: &str) -> usize {
    if precision < needed {
        eprintln!("notice: raising precision from {precision} to {needed} {reason}");
        needed
    } else {
        precision
    }
}

fn csv_unavailable() -> CliError {
    CliError::Input(
        "csv output is only available for matrix commands (expand, half, antecedent)".into(),
    )
}

// ---- per-command output assembly ----

fn triangle_output(
    format: OutputFormat,
    g: &Series,
    f: &Series,
    matrix: &TriangleMatrix,
    extra: &[(&str, Value)],
    meta: Value,
) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&coeff_line("g", g.coeffs()));
            out.push('\n');
            out.push_str(&coeff_line("f", f.coeffs()));
            out.push('\n');
            for (label, value) in extra {
                if let Value::Array(items) = value {
                    let joined: Vec<&str> =
                        items.iter().filter_map(Value::as_str).collect();
                    out.push_str(&format!("{label}: {}\n", joined.join(", ")));
                }
            }
            out.push('\n');
            out.push_str(&matrix_text(matrix));
            out
        }
        OutputFormat::Json => {
            let mut doc = json!({
                "g": series_json(g),
                "f": series_json(f),
                "matrix": matrix_json(matrix),
                "meta": meta,
            });
            for (label, value) in extra {
                doc[*label] = value.clone();
            }
            json_document(&doc)
        }
        OutputFormat::Csv => matrix_csv(matrix),
    }
}

fn cmd_expand(flags: &Flags) -> Result<String, CliError> {
    let rows = flags.count("rows", 8, 1)?;
    let n = raise_precision(flags.count("precision", 16, 1)?, rows, "to cover the requested rows");
    let g = eval_flag("-g", flags.require("g")?, n)?;
    let f = eval_flag("-f", flags.require("f")?, n)?;
    let array = RiordanArray::new(g, f)?;
    let matrix = array.expand(rows)?;
    Ok(triangle_output(
        flags.format()?,
        array.g(),
        array.f(),
        &matrix,
        &[],
        json!({"precision": n, "rows": rows}),
    ))
}

fn cmd_half(flags: &Flags) -> Result<String, CliError> {
    let kind = flags.direction()?;
    let rows = flags.count("rows", 8, 1)?;
    let n = raise_precision(
        flags.count("precision", 16, 1)?,
        2 * rows,
        "so the half covers the requested rows",
    );
    let g = eval_flag("-g", flags.require("g")?, n)?;
    let f = eval_flag("-f", flags.require("f")?, n)?;
    let array = RiordanArray::new(g, f)?;
    let half = match kind {
        HalfKind::Vertical => halves::vertical_half(&array)?,
        HalfKind::Horizontal => halves::horizontal_half(&array)?,
    };
    let matrix = half.expand(rows)?;
    let kind_name = match kind {
        HalfKind::Vertical => "vertical",
        HalfKind::Horizontal => "horizontal",
    };
    Ok(triangle_output(
        flags.format()?,
        half.g(),
        half.f(),
        &matrix,
        &[],
        json!({"kind": kind_name, "precision": n, "rows": rows}),
    ))
}

fn cmd_factor(flags: &Flags) -> Result<String, CliError> {
    let n = flags.count("precision", 16, 1)?;
    let g = eval_flag("-g", flags.require("g")?, n)?;
    let f = eval_flag("-f", flags.require("f")?, n)?;
    let decomposition = halves::decompose(&RiordanArray::new(g, f)?)?;
    let identities = decomposition.identities()?;
    match flags.format()? {
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&coeff_line("phi", decomposition.phi.coeffs()));
            out.push('\n');
            for (label, array) in [
                ("vertical", &decomposition.vertical),
                ("horizontal", &decomposition.horizontal),
                ("left factor", &decomposition.left_factor),
                ("hitting-time factor", &decomposition.hitting_factor),
            ] {
                out.push_str(&coeff_line(&format!("{label} g"), array.g().coeffs()));
                out.push('\n');
                out.push_str(&coeff_line(&format!("{label} f"), array.f().coeffs()));
                out.push('\n');
            }
            out.push_str("identities:\n");
            for (name, ok) in &identities {
                out.push_str(&format!("  {}  {name}\n", if *ok { "ok " } else { "FAIL" }));
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let pair_json = |array: &RiordanArray| {
                json!({"g": series_json(array.g()), "f": series_json(array.f())})
            };
            let identity_map: BTreeMap<&str, bool> = identities.iter().copied().collect();
            Ok(json_document(&json!({
                "phi": series_json(&decomposition.phi),
                "vertical": pair_json(&decomposition.vertical),
                "horizontal": pair_json(&decomposition.horizontal),
                "left_factor": pair_json(&decomposition.left_factor),
                "hitting_factor": pair_json(&decomposition.hitting_factor),
                "identities": identity_map,
                "meta": {"precision": n},
            })))
        }
        OutputFormat::Csv => Err(csv_unavailable()),
    }
}

fn cmd_antecedent(flags: &Flags) -> Result<String, CliError> {
    let kind = flags.direction()?;
    let rows = flags.count("rows", 8, 1)?;
    let n = raise_precision(
        flags.count("precision", 16, 1)?,
        2 * rows,
        "so the antecedent covers the requested rows",
    );
    let psi = eval_flag("-psi", flags.require("psi")?, n)?;
    let phi = eval_flag("-phi", flags.require("phi")?, n)?;
    let result: AntecedentResult = match kind {
        HalfKind::Vertical => antecedent::vertical_antecedent(&psi, &phi)?,
        HalfKind::Horizontal => antecedent::horizontal_antecedent(&psi, &phi)?,
    };
    let matrix = result.antecedent.expand(rows)?;
    let kind_name = match kind {
        HalfKind::Vertical => "vertical",
        HalfKind::Horizontal => "horizontal",
    };
    Ok(triangle_output(
        flags.format()?,
        result.antecedent.g(),
        result.antecedent.f(),
        &matrix,
        &[("phibar", rationals_json(result.phi_bar.coeffs()))],
        json!({"kind": kind_name, "precision": n, "rows": rows}),
    ))
}

fn cmd_pseudo(flags: &Flags) -> Result<String, CliError> {
    let n = flags.count("precision", 16, 1)?;
    let f = eval_flag("-f", flags.require("f")?, n)?;
    let verdict = halves::vertical_pseudo_involution_test(&f)?;
    let source = RiordanArray::new(Series::one(n), f.clone())?;
    let half = halves::vertical_half(&source)?;
    match flags.format()? {
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&coeff_line("f", f.coeffs()));
            out.push('\n');
            out.push_str(&coeff_line("vertical half g", half.g().coeffs()));
            out.push('\n');
            out.push_str(&coeff_line("vertical half f", half.f().coeffs()));
            out.push('\n');
            out.push_str(&format!(
                "pseudo-involution: {}\n",
                if verdict { "yes" } else { "no" }
            ));
            Ok(out)
        }
        OutputFormat::Json => Ok(json_document(&json!({
            "f": series_json(&f),
            "half": {"g": series_json(half.g()), "f": series_json(half.f())},
            "pseudo_involution": verdict,
            "meta": {"precision": n},
        }))),
        OutputFormat::Csv => Err(csv_unavailable()),
    }
}

fn cmd_hankel(flags: &Flags) -> Result<String, CliError> {
    let mut n = flags.count("precision", 16, 1)?;
    let nmax = match flags.value("nmax") {
        None => (n - 1) / 2,
        Some(_) => {
            let m = flags.count("nmax", 0, 0)?;
            n = raise_precision(n, 2 * m + 1, "so the sequence covers the requested order");
            m
        }
    };
    let a = eval_flag("-expr", flags.require("expr")?, n)?;
    let h = moments::hankel_transform(a.coeffs(), nmax)?;
    match flags.format()? {
        OutputFormat::Text => Ok(format!(
            "{}\n{}\n",
            coeff_line("a", a.coeffs()),
            coeff_line("h", h.h())
        )),
        OutputFormat::Json => Ok(json_document(&json!({
            "a": series_json(&a),
            "h": rationals_json(h.h()),
            "meta": {"nmax": nmax, "precision": n},
        }))),
        OutputFormat::Csv => Err(csv_unavailable()),
    }
}

fn cmd_jfraction(flags: &Flags) -> Result<String, CliError> {
    let depth = flags.count("depth", 6, 1)?;
    let n = raise_precision(
        flags.count("precision", 16, 1)?,
        2 * depth + 1,
        "so the expansion covers the requested depth",
    );
    let g = eval_flag("-expr", flags.require("expr")?, n)?;
    let jf = moments::jfraction(&g, depth)?;
    match flags.format()? {
        OutputFormat::Text => Ok(format!(
            "{}\n{}\n",
            coeff_line("b", jf.b()),
            coeff_line("lambda", jf.lam())
        )),
        OutputFormat::Json => Ok(json_document(&json!({
            "b": rationals_json(jf.b()),
            "lam": rationals_json(jf.lam()),
            "depth": jf.depth(),
            "meta": {"precision": n},
        }))),
        OutputFormat::Csv => Err(csv_unavailable()),
    }
}

fn database_path(flags: &Flags) -> Result<PathBuf, CliError> {
    if let Some(path) = flags.value("oeis-db") {
        return Ok(PathBuf::from(path));
    }
    match std::env::var_os(OEIS_PATH_VAR) {
        Some(path) => Ok(PathBuf::from(path)),
        None => Err(CliError::Input(format!(
            "no sequence database: pass --oeis-db or set {OEIS_PATH_VAR}"
        ))),
    }
}

fn cmd_identify(flags: &Flags) -> Result<String, CliError> {
    let n = flags.count("precision", 16, 1)?;
    let min_match = flags.count("min-match", 6, 1)?;
    let query: Vec<Rat> = match (flags.value("expr"), flags.value("column")) {
        (Some(text), None) => eval_flag("-expr", text, n)?.coeffs().to_vec(),
        (None, Some(_)) => {
            let k = flags.count("column", 0, 0)?;
            if k >= n {
                return Err(CliError::Input(format!(
                    "flag \"-column\": column {k} needs precision above {k}"
                )));
            }
            let g = eval_flag("-g", flags.require("g")?, n)?;
            let f = eval_flag("-f", flags.require("f")?, n)?;
            let matrix = RiordanArray::new(g, f)?.expand(n)?;
            (k..n).map(|row| matrix.entry(row, k)).collect()
        }
        _ => {
            return Err(CliError::Input(
                "pass either -expr, or --column with -g and -f".into(),
            ))
        }
    };
    let db = SequenceDb::load(&database_path(flags)?)?;
    if db.malformed_lines() > 0 {
        eprintln!(
            "notice: skipped {} malformed line(s) in {}",
            db.malformed_lines(),
            db.source_path().display()
        );
    }
    let result = db.identify(&query, min_match);
    match flags.format()? {
        OutputFormat::Text => {
            let mut out = coeff_line("query", &query);
            out.push('\n');
            if result.non_integral {
                out.push_str("no matches (query has non-integer terms)\n");
            } else if result.matches.is_empty() {
                out.push_str("no matches\n");
            } else {
                for m in &result.matches {
                    out.push_str(&format!("{} offset {}\n", m.id(), m.offset));
                }
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let matches: Vec<Value> = result
                .matches
                .iter()
                .map(|m| json!({"id": m.id(), "offset": m.offset}))
                .collect();
            Ok(json_document(&json!({
                "query": rationals_json(&query),
                "matches": matches,
                "non_integral": result.non_integral,
                "meta": {"min_match": min_match, "precision": n},
            })))
        }
        OutputFormat::Csv => Err(csv_unavailable()),
    }
}

fn cmd_verify() -> (String, i32) {
    let outcomes = verify::run_all();
    let mut out = String::new();
    let mut failed = 0usize;
    for outcome in &outcomes {
        if outcome.passed {
            out.push_str(&format!("ok   {}\n", outcome.name));
        } else {
            failed += 1;
            out.push_str(&format!("FAIL {}\n", outcome.name));
        }
    }
    out.push_str(&format!("{} passed, {failed} failed\n", outcomes.len() - failed));
    (out, if failed == 0 { 0 } else { 1 })
}

/// Parse argv (without the program name) and run one command, printing
/// output and returning the process exit code.
pub fn run(args: &[String]) -> i32 {
    let Some((command, rest)) = args.split_first() else {
        eprint!("{USAGE}");
        return 2;
    };
    if command == "verify" {
        if !rest.is_empty() {
            eprintln!("error: verify takes no flags");
            return 2;
        }
        let (out, code) = cmd_verify();
        print!("{out}");
        return code;
    }
    let result = Flags::parse(rest).and_then(|flags| match command.as_str() {
        "expand" => cmd_expand(&flags),
        "half" => cmd_half(&flags),
        "factor" => cmd_factor(&flags),
        "antecedent" => cmd_antecedent(&flags),
        "pseudo" => cmd_pseudo(&flags),
        "hankel" => cmd_hankel(&flags),
        "jfraction" => cmd_jfraction(&flags),
        "identify" => cmd_identify(&flags),
        _ => Err(CliError::Input(format!(
            "unknown command \"{command}\" (expected expand, half, factor, antecedent, \
             pseudo, hankel, jfraction, identify, or verify)"
        ))),
    });
    match result {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(error) => {
            eprintln!("error: {}", error.message());
            error.exit_code()
        }
    }
}
