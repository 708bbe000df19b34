//! Command dispatch. [`run`] never exits the process so it can be driven from
//! tests; `main` forwards its outcome.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;
use swtqft::{
    alexander_check, check_transverse, graded_trace, induced_map, macdonald_series, sw_series,
    sw_sum, CobordismWord, Error as CoreError, SpMatrix, Surface, SymSpace,
};

use crate::output::{emit_json, join, report_text, to_json, trail_text};
use crate::wordfile::{parse_rational, parse_word_file};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "swtqft",
    version,
    about = "Summed Seiberg-Witten invariants of 3-manifolds from cobordism words"
)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the invariant of a closed-up word file.
    Sw { file: PathBuf },
    /// Sweep the Spin^c degree over a range.
    Series {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        dmax: i64,
    },
    /// Betti numbers of Sym^k of a genus-g surface.
    Betti {
        #[arg(short = 'g')]
        genus: usize,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
    },
    /// Graded trace of a mapping class on H^*(Sym^k).
    Trace {
        #[arg(short = 'g')]
        genus: usize,
        #[arg(short = 'k', allow_hyphen_values = true)]
        k: i64,
        /// Row-major integers, separated by commas or spaces.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Coefficients of det(I - tM) / (1 - t)^2.
    Oracle {
        #[arg(short = 'g')]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        kmax: usize,
        /// Also verify the identity against graded traces (needs kmax >= 2g).
        #[arg(long)]
        check: bool,
    },
    /// Validate a word file and optionally test two subspaces for transversality.
    Check {
        file: PathBuf,
        /// Vectors separated by ';', entries by ',' or spaces, e.g. "1,0;0,1".
        #[arg(long = "subspace-u", allow_hyphen_values = true)]
        subspace_u: Option<String>,
        #[arg(long = "subspace-v", allow_hyphen_values = true)]
        subspace_v: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = if e.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<String, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Sw { file } => cmd_sw(file, cli.json),
        Command::Series { file, dmin, dmax } => cmd_series(file, *dmin, *dmax, cli.json),
        Command::Betti { genus, k } => cmd_betti(*genus, *k, cli.json),
        Command::Trace { genus, k, matrix } => cmd_trace(*genus, *k, matrix, cli.json),
        Command::Oracle {
            genus,
            matrix,
            kmax,
            check,
        } => cmd_oracle(*genus, matrix, *kmax, *check, cli.json),
        Command::Check {
            file,
            subspace_u,
            subspace_v,
        } => cmd_check(file, subspace_u.as_deref(), subspace_v.as_deref(), cli.json),
    }
}

pub fn load_word(path: &Path) -> Result<CobordismWord, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_word_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn word_from(path: &Path) -> Result<CobordismWord, Failure> {
    load_word(path).map_err(Failure::input)
}

fn cmd_sw(file: &Path, json: bool) -> CmdResult {
    let word = word_from(file)?;
    let report = sw_sum(&word)?;
    Ok(if json {
        emit_json(&report)
    } else {
        report_text(&report)
    })
}

fn cmd_series(file: &Path, dmin: i64, dmax: i64, json: bool) -> CmdResult {
    let word = word_from(file)?;
    let values = sw_series(&word, dmin, dmax)?;
    if json {
        return Ok(to_json(&json!({
            "genus": word.start_genus(),
            "chamber": word.params().chamber.to_string(),
            "d_min": dmin,
            "d_max": dmax,
            "values": values,
        })));
    }
    let mut out = String::from("d value\n");
    for (d, v) in values {
        out.push_str(&format!("{d} {v}\n"));
    }
    Ok(out)
}

fn surface(genus: usize) -> Result<Surface, Failure> {
    Ok(Surface::try_new(genus)?)
}

fn cmd_betti(genus: usize, k: i64, json: bool) -> CmdResult {
    let space = SymSpace::new(surface(genus)?, k);
    if space.dimension() > swtqft::cobordism::MAX_SPACE_DIMENSION {
        return Err(Failure::input(format!(
            "Sym^{k} of genus {genus} is too large"
        )));
    }
    let dims = space.betti();
    if json {
        return Ok(to_json(&json!({
            "genus": genus,
            "k": k,
            "betti": dims,
            "euler_characteristic": space.euler_char(),
        })));
    }
    Ok(format!("{}\n", join(&dims)))
}

fn parse_ints(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Failure::input(format!("malformed integer '{s}' in --matrix")))
        })
        .collect()
}

fn parse_matrix(genus: usize, text: &str) -> Result<SpMatrix, Failure> {
    let entries = parse_ints(text)?;
    Ok(SpMatrix::from_row_major(surface(genus)?, &entries)?)
}

fn integral(value: BigRational) -> Result<String, Failure> {
    if !value.is_integer() {
        return Err(CoreError::NonIntegralTrace(value.to_string()).into());
    }
    Ok(value.to_integer().to_string())
}

#[derive(Serialize)]
struct TraceJson {
    genus: usize,
    k: i64,
    trace: serde_json::Value,
}

/// A JSON number when the integer fits in `i64`, its decimal string otherwise.
fn json_int(text: &str) -> serde_json::Value {
    match text.parse::<i64>() {
        Ok(n) => n.into(),
        Err(_) => text.into(),
    }
}

fn cmd_trace(genus: usize, k: i64, matrix: &str, json: bool) -> CmdResult {
    let m = parse_matrix(genus, matrix)?;
    let space = SymSpace::new(m.surface(), k);
    if space.dimension() > swtqft::cobordism::MAX_SPACE_DIMENSION {
        return Err(Failure::input(format!(
            "Sym^{k} of genus {genus} is too large"
        )));
    }
    let trace = integral(graded_trace(&induced_map(&m, space)?)?)?;
    if json {
        return Ok(to_json(&TraceJson {
            genus,
            k,
            trace: json_int(&trace),
        }));
    }
    Ok(format!("trace: {trace}\n"))
}

fn cmd_oracle(genus: usize, matrix: &str, kmax: usize, check: bool, json: bool) -> CmdResult {
    let m = parse_matrix(genus, matrix)?;
    let coeffs: Vec<String> = macdonald_series(&m, kmax)
        .into_iter()
        .map(integral)
        .collect::<Result<_, _>>()?;
    let det: Vec<String> = swtqft::series::det_one_minus_t(&m)
        .iter()
        .map(ToString::to_string)
        .collect();
    let verdict = if check {
        Some(alexander_check(&m, kmax)?.holds)
    } else {
        None
    };
    if json {
        let ints = |v: &[String]| v.iter().map(|s| json_int(s)).collect::<Vec<_>>();
        return Ok(to_json(&json!({
            "genus": genus,
            "k_max": kmax,
            "det_one_minus_t": ints(&det),
            "coefficients": ints(&coeffs),
            "identity_holds": verdict,
        })));
    }
    let mut out = format!("{}\n", join(&coeffs));
    if let Some(holds) = verdict {
        out.push_str(&format!("identity holds: {holds}\n"));
    }
    Ok(out)
}

fn parse_subspace(text: &str) -> Result<Vec<Vec<BigRational>>, Failure> {
    text.split(';')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    parse_rational(s).ok_or_else(|| {
                        Failure::input(format!("malformed rational '{s}' in subspace"))
                    })
                })
                .collect()
        })
        .collect()
}

fn cmd_check(file: &Path, u: Option<&str>, v: Option<&str>, json: bool) -> CmdResult {
    let word = word_from(file)?;
    let k_trail = word.k_trail()?;
    let transverse = match (u, v) {
        (None, None) => None,
        (Some(u), Some(v)) => {
            let u = parse_subspace(u)?;
            let v = parse_subspace(v)?;
            let len = u.iter().chain(&v).map(Vec::len).next().unwrap_or(0);
            if len % 2 != 0 {
                return Err(Failure::input(format!(
                    "subspace vectors have odd length {len}; expected 2g"
                )));
            }
            Some(check_transverse(surface(len / 2)?, &u, &v)?)
        }
        _ => {
            return Err(Failure::input(
                "--subspace-u and --subspace-v must be given together",
            ))
        }
    };
    let genus_trail = word.genus_trail();
    if json {
        return Ok(to_json(&json!({
            "valid": true,
            "genus_trail": genus_trail,
            "k_trail": k_trail,
            "transverse": transverse,
        })));
    }
    let mut out = String::from("valid: true\n");
    out.push_str(&format!("genus_trail: {}\n", join(&genus_trail)));
    out.push_str(&format!("k_trail: {}\n", trail_text(&k_trail)));
    match transverse {
        Some(t) => out.push_str(&format!("transverse: {t}\n")),
        None => out.push_str("transverse: not checked\n"),
    }
    Ok(out)
}
