//! Command-line front end.
//!
//! One subcommand per capability, stable text output, and a single JSON
//! document per invocation under `--json` with rationals rendered as
//! `"p/q"`. Exit codes: 0 on success, 1 on a domain error, 2 on a usage
//! error.
//!
//! Environment:
//! * `OBCALC_C1SQ_CHANNEL` - `printed` (default) or `first_principles`;
//!   selects the `c_1^2` expression feeding grading shifts.
//! * `OBCALC_D3_OFFSET` - rational `p/q` added to reported d3 values
//!   (default 0).

use crate::domains::{C1Channel, PeriodicData};
use crate::dthree::{binding_bound, d3, D3Options};
use crate::foliations::{u_image_report, FoliationData, UImageReport};
use crate::infer::{run as run_inference, Closure, Provenance, Script};
use crate::links3::{
    determinant, determinant_bracket, Braid3Word, DetMethod, DetReport, SupportGenusVerdict,
};
use crate::mcg::classify;
use crate::openbook::{glue, self_glue, OpenBookDesc};
use crate::rational::Rat;
use crate::words::TwistWord;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "obcalc",
    version,
    about = "Exact calculator for open books, 3-braid links and contact invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonFlag {
    /// Emit one JSON document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a genus-one monodromy word over the curves a, b.
    Classify {
        /// Word in the shared grammar, e.g. "a b^-1 a^3" (A = a^-1).
        #[arg(long)]
        word: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// d3 invariant of genus-one periodic data, with the per-cap table.
    D3 {
        #[arg(long, default_value_t = 1)]
        genus: u32,
        /// The multiplier m of the twist coefficients k_i / m.
        #[arg(short)]
        m: u64,
        /// Comma-separated twist multiplicities, e.g. 0,1 (sorted if needed;
        /// a negative entry means the overtwisted regime and is an error).
        #[arg(short, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        k: Vec<i64>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Cap off one boundary component of an open book descriptor.
    Cap {
        /// Path to the descriptor JSON.
        #[arg(long)]
        book: PathBuf,
        #[arg(long)]
        label: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Glue two open books (or self-glue one) along boundary circles.
    Glue {
        #[arg(long)]
        book1: PathBuf,
        #[arg(long, required_unless_present = "self_pair")]
        book2: Option<PathBuf>,
        /// Comma-separated label pairs "A:B,C:D".
        #[arg(long, required_unless_present = "self_pair")]
        pairs: Option<String>,
        /// Self-glue book1 along "A:B" instead of gluing two books.
        #[arg(long, conflicts_with_all = ["book2", "pairs"])]
        self_pair: Option<String>,
        /// Permit a closed page (no remaining binding components).
        #[arg(long)]
        allow_closed: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Determinant of a 3-braid closure.
    Det {
        /// Braid word over s1, s2, e.g. "s2 s1^-1".
        #[arg(long)]
        braid: String,
        /// burau (default) or bracket.
        #[arg(long, default_value = "burau")]
        method: String,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Support genus of the pseudo-Anosov normal form (n, d).
    Sg {
        /// Comma-separated tuple entries, e.g. 1,2.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Run the inference engine over a script file.
    Infer {
        #[arg(long)]
        script: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Validate pseudo-Anosov foliation data and apply the U-power criterion.
    ValidatePa {
        /// Path to the foliation data JSON.
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(output) => {
            // Tolerate a closed pipe (e.g. piping into `head`).
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{output}");
            0
        }
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<String, String> {
    match command {
        Command::Classify { word, json } => cmd_classify(&word, json.json),
        Command::D3 { genus, m, k, json } => cmd_d3(genus, m, &k, json.json),
        Command::Cap { book, label, json } => cmd_cap(&book, &label, json.json),
        Command::Glue { book1, book2, pairs, self_pair, allow_closed, json } => {
            cmd_glue(&book1, book2.as_deref(), pairs.as_deref(), self_pair.as_deref(), allow_closed, json.json)
        }
        Command::Det { braid, method, json } => cmd_det(&braid, &method, json.json),
        Command::Sg { n, d, json } => cmd_sg(&n, d, json.json),
        Command::Infer { script, json } => cmd_infer(&script, json.json),
        Command::ValidatePa { data, json } => cmd_validate_pa(&data, json.json),
    }
}

fn options_from_env() -> Result<D3Options, String> {
    let channel = match std::env::var("OBCALC_C1SQ_CHANNEL") {
        Ok(value) => value.parse::<C1Channel>()?,
        Err(_) => C1Channel::default(),
    };
    let offset = match std::env::var("OBCALC_D3_OFFSET") {
        Ok(value) => value.parse::<Rat>().map_err(|e| e.to_string())?,
        Err(_) => Rat::zero(),
    };
    Ok(D3Options { channel, offset })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&raw).map_err(|e| format!("invalid JSON in {}: {e}", path.display()))
}

fn to_pretty<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn cmd_classify(word: &str, json: bool) -> Result<String, String> {
    let word = TwistWord::parse(word).map_err(|e| e.to_string())?;
    let verdict = classify(&word).map_err(|e| e.to_string())?;
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            word: &'a TwistWord,
            classification: &'a crate::mcg::NormalForm3,
        }
        to_pretty(&Out { word: &word, classification: &verdict })
    } else {
        Ok(verdict.to_string())
    }
}

fn cmd_d3(genus: u32, m: u64, k: &[i64], json: bool) -> Result<String, String> {
    let opts = options_from_env()?;
    if let Some(&bad) = k.iter().find(|&&k| k < 0) {
        return Err(format!("negative coefficient {bad}: overtwisted, d3 undefined here"));
    }
    let unsigned: Vec<u64> = k.iter().map(|&x| x as u64).collect();
    let pd = PeriodicData::new(genus, m, &unsigned).map_err(|e| e.to_string())?;
    let report = d3(&pd, opts).map_err(|e| e.to_string())?;
    let other_channel = match opts.channel {
        C1Channel::Printed => C1Channel::FirstPrinciples,
        C1Channel::FirstPrinciples => C1Channel::Printed,
    };
    let other = d3(&pd, D3Options { channel: other_channel, offset: opts.offset })
        .map_err(|e| e.to_string())?;
    let bound = binding_bound(genus, m, k, opts).map_err(|e| e.to_string())?;

    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            pd: &'a PeriodicData,
            report: &'a crate::dthree::GradingReport,
            other_convention: &'a crate::dthree::GradingReport,
            bound_margin: Rat,
            bound_satisfied: bool,
            notes: [&'static str; 2],
        }
        return to_pretty(&Out {
            pd: &pd,
            report: &report,
            other_convention: &other,
            bound_margin: bound.margin,
            bound_satisfied: bound.satisfied,
            notes: D3_NOTES,
        });
    }

    let mut out = String::new();
    out.push_str(&format!("d3 = {}\n", report.d3_telescoped));
    let ks = pd.k.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    out.push_str(&format!("sorted k = ({ks}), m = {m}, genus {genus}\n"));
    out.push_str(&format!("input positions after sort: {:?}\n", pd.sort_permutation));
    match pd.first_nonzero() {
        Some(i) => out.push_str(&format!("I = {i}\n")),
        None => out.push_str("I undefined (all coefficients zero)\n"),
    }
    if let Ok((i_index, s)) = crate::domains::s_sequence(&pd) {
        let rendered = s
            .iter()
            .enumerate()
            .map(|(off, v)| format!("s_{} = {}", i_index - 1 + off, v))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!("{rendered}\n"));
    }
    out.push_str(&format!("f({}) = {}\n", report.fdtc_last, report.f_value));
    if report.per_cap.is_empty() {
        out.push_str("caps: none (single binding component)\n");
    } else {
        out.push_str("caps in ascending-k order:\n");
        for (i, cap) in report.per_cap.iter().enumerate() {
            let form = match cap.form {
                crate::domains::FormType::Trivial => "trivial",
                crate::domains::FormType::Negative => "negative",
            };
            out.push_str(&format!(
                "  cap {}: form {}, chi^ = {}, H^2 = {}, <c1,H> = {}, c1^2 printed = {}, c1^2 fp = {}, shift = {}\n",
                i + 1,
                form,
                cap.euler_measure,
                cap.self_intersection,
                cap.c1_pairing,
                cap.c1_squared_printed,
                cap.c1_squared_fp,
                cap.shift
            ));
        }
    }
    out.push_str(&format!(
        "d3 ({}): printed = {}, telescoped = {}\n",
        opts.channel.name(),
        report.d3_printed,
        report.d3_telescoped
    ));
    out.push_str(&format!(
        "d3 ({}): printed = {}, telescoped = {}\n",
        other_channel.name(),
        other.d3_printed,
        other.d3_telescoped
    ));
    if !report.offset.is_zero() {
        out.push_str(&format!("offset applied: {}\n", report.offset));
    }
    out.push_str(&format!(
        "binding bound margin r + 1 + 4*d3 = {} -> {}\n",
        bound.margin,
        if bound.satisfied { "satisfied" } else { "violated" }
    ));
    out.push_str(D3_NOTES[0]);
    out.push('\n');
    out.push_str(D3_NOTES[1]);
    Ok(out)
}

/// Standing qualifications attached to every d3 report.
const D3_NOTES: [&str; 2] = [
    "note: d3 is well-defined here because nonnegative periodic coefficients force a torsion first Chern class",
    "note: (m, k) is evaluated formally; realizability by an actual surface diffeomorphism is not checked",
];

fn cmd_cap(book: &Path, label: &str, _json: bool) -> Result<String, String> {
    let book: OpenBookDesc = read_json(book)?;
    book.validate().map_err(|e| e.to_string())?;
    let capped = book.cap_off(label).map_err(|e| e.to_string())?;
    // The capped descriptor is the output in both modes.
    to_pretty(&capped)
}

fn parse_pair(text: &str) -> Result<(String, String), String> {
    text.split_once(':')
        .map(|(a, b)| (a.trim().to_owned(), b.trim().to_owned()))
        .ok_or_else(|| format!("invalid pair {text:?}: expected \"A:B\""))
}

fn cmd_glue(
    book1: &Path,
    book2: Option<&Path>,
    pairs: Option<&str>,
    self_pair: Option<&str>,
    allow_closed: bool,
    _json: bool,
) -> Result<String, String> {
    let first: OpenBookDesc = read_json(book1)?;
    let glued = if let Some(pair) = self_pair {
        let (l1, l2) = parse_pair(pair)?;
        self_glue(&first, (&l1, &l2)).map_err(|e| e.to_string())?
    } else {
        let second: OpenBookDesc = read_json(book2.expect("clap enforces book2"))?;
        let pairs: Vec<(String, String)> = pairs
            .expect("clap enforces pairs")
            .split(',')
            .map(parse_pair)
            .collect::<Result<_, _>>()?;
        glue(&first, &second, &pairs, allow_closed).map_err(|e| e.to_string())?
    };
    to_pretty(&glued)
}

fn cmd_det(braid: &str, method: &str, json: bool) -> Result<String, String> {
    let braid = Braid3Word::parse(braid).map_err(|e| e.to_string())?;
    let report = match method {
        "burau" => DetReport {
            determinant: determinant(&braid).map_err(|e| e.to_string())?,
            braid,
            method: DetMethod::Burau,
        },
        "bracket" => DetReport {
            determinant: determinant_bracket(&braid).map_err(|e| e.to_string())?,
            braid,
            method: DetMethod::BracketOracle,
        },
        other => return Err(format!("unknown method {other:?} (expected burau or bracket)")),
    };
    if json {
        to_pretty(&report)
    } else {
        Ok(report.determinant.to_string())
    }
}

fn cmd_sg(n: &[u64], d: i64, json: bool) -> Result<String, String> {
    let report = crate::links3::support_genus(n, d).map_err(|e| e.to_string())?;
    if json {
        return to_pretty(&report);
    }
    let mut out = format!("support genus: {}", report.verdict);
    match report.verdict {
        SupportGenusVerdict::Zero => out.push_str(" (overtwisted for d <= 0)"),
        SupportGenusVerdict::UnknownD1 => out.push_str(" (the classification is silent at d = 1)"),
        SupportGenusVerdict::One => {}
    }
    if let Some(chain) = &report.condition_r_chain {
        out.push_str("\ncondition R certificate:");
        for step in chain {
            out.push_str(&format!("\n  {step}"));
        }
    }
    Ok(out)
}

fn cmd_infer(script: &Path, json: bool) -> Result<String, String> {
    let script: Script = read_json(script)?;
    let closure = run_inference(&script).map_err(|e| e.to_string())?;
    if json {
        #[derive(Serialize)]
        struct FactOut<'a> {
            subject: &'a str,
            predicate: String,
            provenance: &'a Provenance,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            facts: Vec<FactOut<'a>>,
            derived_trees: Vec<String>,
        }
        let facts = closure
            .facts
            .iter()
            .map(|(f, p)| FactOut {
                subject: &f.subject,
                predicate: f.predicate.to_string(),
                provenance: p,
            })
            .collect();
        let derived_trees = closure
            .facts
            .iter()
            .enumerate()
            .filter(|(_, (_, p))| matches!(p, Provenance::Derived { .. }))
            .map(|(i, _)| closure.derivation_tree(i))
            .collect();
        return to_pretty(&Out { facts, derived_trees });
    }
    Ok(render_closure_text(&closure))
}

fn render_closure_text(closure: &Closure) -> String {
    let derived: Vec<usize> = closure
        .facts
        .iter()
        .enumerate()
        .filter(|(_, (_, p))| matches!(p, Provenance::Derived { .. }))
        .map(|(i, _)| i)
        .collect();
    let asserted = closure.facts.len() - derived.len();
    let mut out = format!(
        "closure: {} facts ({} asserted, {} derived)",
        closure.facts.len(),
        asserted,
        derived.len()
    );
    if derived.is_empty() {
        return out;
    }
    out.push_str("\n\nderivations:");
    for idx in derived {
        out.push('\n');
        let tree = closure.derivation_tree(idx);
        out.push_str(tree.trim_end());
        out.push('\n');
    }
    out.trim_end().to_owned()
}

fn cmd_validate_pa(data: &Path, json: bool) -> Result<String, String> {
    let fd: FoliationData = read_json(data)?;
    let validation = fd.validate();
    let u_image = u_image_report(&fd);
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            valid: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            violation: Option<&'a crate::foliations::Violation>,
            u_image: &'a UImageReport,
        }
        return to_pretty(&Out {
            valid: validation.is_ok(),
            violation: validation.as_ref().err(),
            u_image: &u_image,
        });
    }
    let mut out = String::new();
    match &validation {
        Ok(()) => out.push_str("ok: singularity data is balanced\n"),
        Err(v) => out.push_str(&format!("violation: {v}\n")),
    }
    match &u_image {
        UImageReport::InImUAllD => {
            out.push_str("U-power criterion: contact class lies in the image of U^d for every d")
        }
        UImageReport::Inconclusive { reason } => {
            out.push_str(&format!("U-power criterion: inconclusive ({reason})"))
        }
    }
    Ok(out)
}
