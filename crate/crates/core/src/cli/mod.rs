//! Batch front end: every command reads JSON files and writes JSON to stdout.
//!
//! Exit codes: 0 success or positive decision, 1 negative decision, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::LaurentJson;
use crate::assembly::{summarize, verify_nodal, AssemblyError};
use crate::hereditary::{HereditaryError, MatrixJson};
use crate::semisimple::{are_similar_seeded, decompose, reassemble, HomJson, SemisimpleError};
use crate::tuples::{
    canonical_key, enumerate, equivalent, ClassTuple, EnumerationBounds, EnumerationFilter, RawTuple,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "nodal", version, about = "Classify, build and verify complete real nodal orders")]
struct Cli {
    /// Human-readable summary on stderr.
    #[arg(long, global = true)]
    verbose: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Truncation N for series computations.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a tuple file against every clause.
    Validate { tuple: PathBuf },
    /// Canonical key and canonical representative of a tuple.
    Canon { tuple: PathBuf },
    /// Decide equivalence of two tuples and print a witness.
    Equiv { a: PathBuf, b: PathBuf },
    /// Stream one JSON line {key, representative} per class.
    Enumerate(EnumerateArgs),
    /// Forget the weights.
    Basify { tuple: PathBuf },
    /// Assemble A_N and report its dimensions.
    Build { tuple: PathBuf },
    /// Run every nodality check on A_N.
    Verify { tuple: PathBuf },
    /// Split an embedding into elementary components.
    Decompose { embedding: PathBuf },
    /// Monomial normal form of a normalizer element.
    NormalForm {
        matrix: PathBuf,
        /// Include the unit factors g and h.
        #[arg(long)]
        witnesses: bool,
    },
    /// Class of a real Laurent series modulo squares.
    SquareClass { series: PathBuf },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    max_elements: usize,
    #[arg(long, default_value_t = 1)]
    max_weight: u32,
    #[arg(long)]
    commutative: bool,
    #[arg(long)]
    non_hereditary: bool,
    #[arg(long)]
    hereditary: bool,
    #[arg(long)]
    basic: bool,
    /// Also list tuples whose gluing graph is disconnected.
    #[arg(long)]
    include_decomposable: bool,
}

/// Outcome of a command: exit code and stdout payload lines.
struct Outcome {
    code: i32,
    lines: Vec<String>,
    summary: String,
}

impl Outcome {
    fn ok(v: Value, summary: impl Into<String>) -> Self {
        Outcome { code: EXIT_OK, lines: vec![v.to_string()], summary: summary.into() }
    }

    fn decided(yes: bool, v: Value, summary: impl Into<String>) -> Self {
        Outcome { code: if yes { EXIT_OK } else { EXIT_NEGATIVE }, lines: vec![v.to_string()], summary: summary.into() }
    }
}

/// Input error with a location-bearing message.
struct InputError(String);

impl From<String> for InputError {
    fn from(s: String) -> Self {
        InputError(s)
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            for l in &o.lines {
                let _ = writeln!(out, "{l}");
            }
            if cli.verbose && !o.summary.is_empty() {
                let _ = writeln!(err, "{}", o.summary);
            }
            o.code
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let text = read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column())))
}

fn load_tuple(path: &Path) -> Result<ClassTuple, InputError> {
    let raw: RawTuple = parse(path)?;
    raw.validate().map_err(|e| {
        let lines: Vec<String> = e.0.iter().map(|i| format!("{}: {i}", path.display())).collect();
        InputError(lines.join("\n"))
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, InputError> {
    let trunc = cli.trunc.unwrap_or(crate::DEFAULT_TRUNC);
    match &cli.command {
        Command::Validate { tuple } => {
            let t = load_tuple(tuple)?;
            let d = t.derived();
            Ok(Outcome::ok(
                json!({"valid": true, "elements": t.element_count(), "shapes": d.shapes}),
                format!("{}: valid, {} elements", tuple.display(), t.element_count()),
            ))
        }
        Command::Canon { tuple } => {
            let t = load_tuple(tuple)?;
            let key = canonical_key(&t);
            Ok(Outcome::ok(json!({"key": key, "representative": t.to_json()}), key.to_string()))
        }
        Command::Equiv { a, b } => {
            let (ta, tb) = (load_tuple(a)?, load_tuple(b)?);
            Ok(match equivalent(&ta, &tb) {
                Some(w) => Outcome::decided(true, json!({"equivalent": true, "witness": w}), "equivalent"),
                None => Outcome::decided(false, json!({"equivalent": false}), "not equivalent"),
            })
        }
        Command::Enumerate(e) => {
            let mut bounds = EnumerationBounds::new(e.max_elements, e.max_weight);
            bounds.include_decomposable = e.include_decomposable;
            let filter = EnumerationFilter {
                commutative: e.commutative,
                non_hereditary: e.non_hereditary,
                hereditary: e.hereditary,
                basic: e.basic,
            };
            let classes = enumerate(&bounds, &filter);
            let lines =
                classes.iter().map(|(k, t)| json!({"key": k, "representative": t.to_json()}).to_string()).collect();
            Ok(Outcome { code: EXIT_OK, lines, summary: format!("{} classes", classes.len()) })
        }
        Command::Basify { tuple } => {
            let t = load_tuple(tuple)?.basify();
            Ok(Outcome::ok(t.to_json(), canonical_key(&t).to_string()))
        }
        Command::Build { tuple } => {
            let t = load_tuple(tuple)?;
            let s = summarize(&t, trunc).map_err(assembly_input)?;
            let summary = format!("dim A_{trunc} = {}, radical {}", s.dims.a_n, s.radical_dim);
            Ok(Outcome::ok(serde_json::to_value(&s).expect("serializable"), summary))
        }
        Command::Verify { tuple } => {
            let t = load_tuple(tuple)?;
            let r = verify_nodal(&t, trunc).map_err(assembly_input)?;
            let summary = r
                .checks
                .iter()
                .map(|c| format!("{} {}: {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.detail))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::decided(r.all_pass, serde_json::to_value(&r).expect("serializable"), summary))
        }
        Command::Decompose { embedding } => {
            let hj: HomJson = parse(embedding)?;
            if hj.version.is_none() {
                return Err(InputError(format!("{}: missing field `version`", embedding.display())));
            }
            let phi = hj.to_hom().map_err(|e| InputError(format!("{}: {e}", embedding.display())))?;
            match decompose(&phi) {
                Ok(comps) => {
                    let re = reassemble(&phi.source, &phi.target, &comps);
                    let cert = are_similar_seeded(&re, &phi, cli.seed);
                    let types: Vec<u8> = comps.iter().map(|c| c.kind.type_number()).collect();
                    let v = json!({
                        "components": comps.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                        "reassembly_certified": cert.is_some(),
                    });
                    Ok(Outcome::decided(cert.is_some(), v, format!("types {types:?}")))
                }
                Err(e) if negative_semisimple(&e) => {
                    Ok(Outcome::decided(false, json!({"nodal": false, "reason": e.to_string()}), e.to_string()))
                }
                Err(e) => Err(InputError(format!("{}: {e}", embedding.display()))),
            }
        }
        Command::NormalForm { matrix, witnesses } => {
            let mut mj: MatrixJson = parse(matrix)?;
            if let Some(n) = cli.trunc {
                mj.trunc = n;
            }
            let (h, x) = mj.to_order_and_matrix().map_err(|e| InputError(format!("{}: {e}", matrix.display())))?;
            match h.normal_form(&x) {
                Ok(f) => {
                    let certified = h.verify_form(&x, &f).map_err(|e| InputError(e.to_string()))?;
                    let mut v = json!({"d": f.d, "k": f.k});
                    if *witnesses {
                        v["g"] = serde_json::to_value(MatrixJson::from_matrix(&h, &f.g.to_laurent())).expect("json");
                        v["h"] = serde_json::to_value(MatrixJson::from_matrix(&h, &f.h.to_laurent())).expect("json");
                        v["certified"] = json!(certified);
                    }
                    Ok(Outcome::decided(certified, v, format!("d = {}, k = {}", f.d, f.k)))
                }
                Err(e @ (HereditaryError::NotInvertible(_) | HereditaryError::NotNormalizing(_))) => {
                    Ok(Outcome::decided(false, json!({"normalizer": false, "reason": e.to_string()}), e.to_string()))
                }
                Err(e) => Err(InputError(format!("{}: {e}", matrix.display()))),
            }
        }
        Command::SquareClass { series } => {
            let sf: SeriesFile = parse(series)?;
            if sf.version != 1 {
                return Err(InputError(format!("{}: unsupported schema version {}", series.display(), sf.version)));
            }
            let f = sf.series.to_laurent(trunc).map_err(|e| InputError(format!("{}: {e}", series.display())))?;
            let c = f.square_class().map_err(|e| InputError(format!("{}: {e}", series.display())))?;
            Ok(Outcome::ok(json!({"class": c.name()}), c.name()))
        }
    }
}

/// `{"version": 1, "tag", "offset", "coeffs"}`.
#[derive(Deserialize)]
struct SeriesFile {
    version: u32,
    #[serde(flatten)]
    series: LaurentJson,
}

fn negative_semisimple(e: &SemisimpleError) -> bool {
    matches!(
        e,
        SemisimpleError::NotInjective
            | SemisimpleError::NotHomomorphism(_)
            | SemisimpleError::NonIntegral { .. }
            | SemisimpleError::NotNodal { .. }
            | SemisimpleError::NonBasicSource
    )
}

fn assembly_input(e: AssemblyError) -> InputError {
    InputError(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("nodal").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bad_flag_is_input_error() {
        let (code, _, err) = call(&["enumerate", "--max-elements", "x"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("invalid value"));
    }

    #[test]
    fn help_succeeds() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("enumerate"));
    }

    #[test]
    fn missing_file() {
        let (code, _, err) = call(&["validate", "/nonexistent/t.json"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("/nonexistent/t.json"));
    }

    #[test]
    fn census_lines() {
        let (code, out, _) = call(&["enumerate", "--max-elements", "1", "--basic"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 14);
    }
}
