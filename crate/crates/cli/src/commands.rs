//! The subcommands, as functions from input text to [`Outcome`].

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use singulus_core::bettirules::{full_report, hspog_dim_guarantee, koszul_smooth_table};
use singulus_core::oracle::{cross_check_with, default_max_degree, default_window, OracleError, OracleOptions};
use singulus_core::polycore::{squarefree_check_with, DEFAULT_SQUAREFREE_TRIALS};
use singulus_core::Polynomial;

use crate::document::BettiTableDocument;
use crate::report::{self, big, to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_OBSTRUCTION: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// What a command prints and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: EXIT_INPUT,
        }
    }
}

pub fn analyze_betti(text: &str, format: Format) -> Outcome {
    let doc = match BettiTableDocument::parse(text) {
        Ok(doc) => doc,
        Err(e) => return Outcome::input_error(e),
    };
    let canonical = doc.to_canonical_json();
    let digest = report::digest(&canonical);
    let r = full_report(&doc.table);
    let code = if r.realizable() { EXIT_OK } else { EXIT_OBSTRUCTION };
    let stdout = match format {
        Format::Json => {
            let input: Value = serde_json::from_str(&canonical).expect("canonical document is JSON");
            to_json(&json!({
                "tool": report::tool_value(),
                "input_digest": digest,
                "input": input,
                "analysis": report::analysis_value(&r),
            }))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{} {}  input sha256:{}", report::TOOL, report::VERSION, digest);
            if let Some(label) = &doc.label {
                let _ = writeln!(out, "label: {label}");
            }
            report::table_text(&doc.table, &mut out);
            report::analysis_text(&r, &mut out);
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InspectArgs {
    /// Polynomial text; lines starting with `#` are ignored.
    pub text: String,
    pub n: Option<usize>,
    pub max_degree: Option<u32>,
    pub primes: Vec<u64>,
    pub window: Option<u32>,
    pub format: Format,
    pub squarefree_trials: usize,
}

impl InspectArgs {
    pub fn new(text: impl Into<String>) -> Self {
        InspectArgs {
            text: text.into(),
            n: None,
            max_degree: None,
            primes: Vec::new(),
            window: None,
            format: Format::Json,
            squarefree_trials: DEFAULT_SQUAREFREE_TRIALS,
        }
    }
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn inspect_poly(args: &InspectArgs) -> Outcome {
    let text = strip_comments(&args.text);
    let n = match args.n {
        Some(n) => n,
        None => match Polynomial::max_variable_index(&text) {
            Ok(Some(i)) => i,
            Ok(None) => return Outcome::input_error("the polynomial has no variables; pass --n"),
            Err(e) => return Outcome::input_error(e),
        },
    };
    let f = match Polynomial::parse(&text, n) {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(e),
    };
    let mut stderr = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(f.fingerprint());
    let squarefree = squarefree_check_with(&f, args.squarefree_trials, &mut rng);
    if !squarefree {
        let _ = writeln!(stderr, "warning: f appears to have a repeated factor; results assume a reduced hypersurface");
    }
    let options = OracleOptions {
        primes: args.primes.clone(),
        max_degree: args.max_degree,
        window: args.window,
    };
    let check = match cross_check_with(&f, &options) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return Outcome {
                stdout: String::new(),
                stderr,
                code: EXIT_INPUT,
            };
        }
    };
    let canonical_input = format!("n={n}\n{f}\n");
    let digest = report::digest(&canonical_input);
    let d = f.degree().expect("checked by the oracle");

    let (status, code) = match (&check.betti, &check.report) {
        (Err(OracleError::Cone { .. }), _) => ("cone", EXIT_INPUT),
        (Err(_), _) => ("incomplete", EXIT_INPUT),
        _ if !check.deviations.is_empty() => ("deviations", EXIT_OBSTRUCTION),
        (Ok(_), Some(r)) if !r.realizable() => ("obstructed", EXIT_OBSTRUCTION),
        _ => ("consistent", EXIT_OK),
    };
    if let Err(e) = &check.betti {
        let _ = writeln!(stderr, "error: {e}");
    }

    let stdout = match args.format {
        Format::Json => {
            let betti = match &check.betti {
                Ok(b) => report::betti_value(b),
                Err(e) => json!({ "status": status, "error": e.to_string() }),
            };
            let deviations: Vec<Value> = check
                .deviations
                .iter()
                .map(|dv| json!({ "kind": dv.kind, "detail": dv.detail }))
                .collect();
            to_json(&json!({
                "tool": report::tool_value(),
                "input_digest": digest,
                "input": { "polynomial": f.to_string(), "n": n, "d": d },
                "options": {
                    "max_degree": args.max_degree.unwrap_or_else(|| default_max_degree(n, d)),
                    "window": args.window.unwrap_or_else(|| default_window(n, d)),
                    "primes": args.primes,
                    "squarefree_trials": args.squarefree_trials,
                },
                "squarefree": squarefree,
                "hilbert": report::hilbert_value(&check.hilbert),
                "betti": betti,
                "analysis": check.report.as_ref().map_or(Value::Null, report::analysis_value),
                "deviations": deviations,
                "status": status,
            }))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{} {}  input sha256:{}", report::TOOL, report::VERSION, digest);
            let _ = writeln!(out, "f = {f}  (n = {n}, d = {d})");
            if !squarefree {
                let _ = writeln!(out, "warning: repeated factor suspected");
            }
            report::hilbert_text(&check.hilbert, &mut out);
            match &check.betti {
                Ok(b) => {
                    let primes = b.primes.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
                    let _ = writeln!(
                        out,
                        "betti numbers up to degree {} (primes {primes}; {} escalations)",
                        b.max_degree,
                        b.escalations.len()
                    );
                    report::table_text(&b.table, &mut out);
                }
                Err(e) => {
                    let _ = writeln!(out, "betti numbers: {status}: {e}");
                }
            }
            if let Some(r) = &check.report {
                report::analysis_text(r, &mut out);
            }
            if check.deviations.is_empty() {
                let _ = writeln!(out, "deviations: none");
            } else {
                for dv in &check.deviations {
                    let _ = writeln!(out, "deviation [{}]: {}", dv.kind, dv.detail);
                }
            }
            let _ = writeln!(out, "status: {status}");
            out
        }
    };
    Outcome { stdout, stderr, code }
}

pub fn smooth_table(n: usize, d: u64) -> Outcome {
    match koszul_smooth_table(n, d) {
        Ok(t) => Outcome {
            stdout: BettiTableDocument::new(t).to_canonical_json(),
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(e) => Outcome::input_error(e),
    }
}

pub fn hspog(n: usize, d: u64, format: Format) -> Outcome {
    let g = match hspog_dim_guarantee(n, d) {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(e),
    };
    let stdout = match format {
        Format::Json => to_json(&json!({
            "tool": report::tool_value(),
            "n": n,
            "d": d,
            "g": big(&g.g),
            "threshold": {
                "exact": g.threshold.to_string(),
                "approx": format!("{:.4}", g.threshold.approx),
            },
            "guaranteed": g.guaranteed,
        })),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "n = {n}, d = {d}");
            let _ = writeln!(out, "g(d) = (n+1)d^2 - 2n(n+1)d + 4n^2 = {}", g.g);
            let _ = writeln!(out, "threshold d' = {} ~ {:.4}", g.threshold, g.threshold.approx);
            let _ = writeln!(
                out,
                "dim Sigma = n - 2 for every HSPOG table: {}",
                if g.guaranteed { "guaranteed (d > d')" } else { "not guaranteed (d <= d')" }
            );
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    }
}
