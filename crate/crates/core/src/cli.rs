//! Command-line front end. Every command prints one JSON document on stdout;
//! failures print a single JSON error line on stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::caravan::{period_vector, reduce_to_caravan_with_budget, search_budget};
use crate::diagram::{canonical_numbering, intersection_matrix, is_admissible, ArcDiagram};
use crate::error::Error;
use crate::matrix::parse_matrix_value;
use crate::moves::{apply_sequence, format_script, parse_script};
use crate::planner::plan;
use crate::random::{random_caravan, scramble};
use crate::rational::format_rational;
use crate::render;
use crate::symplectic::decompose;

#[derive(Debug, Parser)]
#[command(name = "isoperiod", version, about = "Arc diagrams, Vasiliev moves and caravans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissibility and parity of the intersection determinant.
    Check { diagram: PathBuf },
    /// Intersection matrix in left-endpoint numbering.
    Matrix { diagram: PathBuf },
    /// Move a diagram to a caravan.
    Reduce {
        diagram: PathBuf,
        /// Largest number of diagrams the search may realize
        /// [default: ISOPERIOD_SEARCH_BUDGET or 20000].
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Write an integer symplectic matrix as a word in A_k, B_k, C_k.
    Decompose {
        matrix: PathBuf,
        /// Genus; half the matrix size when omitted.
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Moves taking one caravan onto another with the same polarized lattice.
    Connect { from: PathBuf, to: PathBuf },
    /// Replay a move script.
    Apply { diagram: PathBuf, script: PathBuf },
    /// Draw a diagram into a file.
    Render {
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long, short)]
        output: PathBuf,
        /// Columns used by the text picture.
        #[arg(long, default_value_t = 72)]
        width: usize,
    },
    /// Random caravan with incommensurable periods, optionally scrambled by
    /// legal moves.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        steps: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

/// Why a command failed, and with which exit status.
#[derive(Debug)]
pub enum Failure {
    Io { path: PathBuf, error: io::Error },
    Library(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io { .. } | Failure::Library(Error::Parse(_)) => 2,
            Failure::Library(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Failure::Io { path, error } => json!({
                "error": "Io",
                "message": format!("{}: {error}", path.display()),
            }),
            Failure::Library(e) => json!({ "error": e.kind(), "message": e.to_string() }),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Reads a file, or stdin for `-`.
fn read(path: &Path) -> std::result::Result<String, Failure> {
    let fail = |error| Failure::Io { path: path.to_path_buf(), error };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(fail)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(fail)
}

fn diagram(path: &Path) -> std::result::Result<ArcDiagram, Failure> {
    Ok(ArcDiagram::from_json(&read(path)?)?)
}

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Check { diagram: p } => {
            let d = diagram(p)?;
            let admissible = is_admissible(&d);
            let det = intersection_matrix(&d).0.det();
            let parity = if det.is_odd() { "odd" } else { "even" };
            Ok(json!({
                "admissible": admissible,
                "det_parity": parity,
                "determinant": det.to_string(),
                "summary": format!("admissible: {admissible}, det parity: {parity}"),
            }))
        }
        Command::Matrix { diagram: p } => {
            let d = diagram(p)?;
            Ok(json!({
                "numbering": canonical_numbering(&d),
                "matrix": intersection_matrix(&d).0.to_json_value(),
            }))
        }
        Command::Reduce { diagram: p, budget } => {
            let d = diagram(p)?;
            let (c, moves) = reduce_to_caravan_with_budget(&d, budget.unwrap_or_else(search_budget))?;
            let (_, product) = apply_sequence(&d, &moves)?;
            let periods: Vec<String> = period_vector(&c)?.lengths.iter().map(format_rational).collect();
            Ok(json!({
                "caravan": c.to_json_value(),
                "periods": periods,
                "moves": moves.len(),
                "script": format_script(&moves),
                "product": product.to_json_value(),
            }))
        }
        Command::Decompose { matrix, genus } => {
            let text = read(matrix)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let m = parse_matrix_value(&v)?;
            let g = match genus {
                Some(g) => *g,
                None if m.size() % 2 == 0 => m.size() / 2,
                None => {
                    return Err(Error::SizeMismatch(format!("odd matrix size {}", m.size())).into())
                }
            };
            let w = decompose(&m, g)?;
            Ok(json!({
                "genus": g,
                "length": w.len(),
                "word": w.to_string(),
            }))
        }
        Command::Connect { from, to } => {
            let d1 = diagram(from)?;
            let d2 = diagram(to)?;
            let p = plan(&d1, &d2)?;
            let (_, product) = apply_sequence(&d1, &p.moves)?;
            Ok(json!({
                "change_of_basis": p.matrix.to_json_value(),
                "word": p.word.to_string(),
                "moves": p.moves.len(),
                "script": format_script(&p.moves),
                "product": product.to_json_value(),
                "result": p.result.to_json_value(),
            }))
        }
        Command::Apply { diagram: p, script } => {
            let d = diagram(p)?;
            let moves = parse_script(&read(script)?)?;
            let (out, product) = apply_sequence(&d, &moves)?;
            Ok(json!({
                "diagram": out.to_json_value(),
                "matrix": product.to_json_value(),
            }))
        }
        Command::Render { diagram: p, format, output, width } => {
            let d = diagram(p)?;
            let pic = match format {
                Format::Ascii => render::ascii(&d, *width),
                Format::Svg => render::svg(&d),
            };
            fs::write(output, pic).map_err(|error| Failure::Io { path: output.clone(), error })?;
            Ok(json!({ "written": output.display().to_string() }))
        }
        Command::Generate { seed, genus, steps } => {
            if *genus == 0 {
                return Err(Error::BadArity { genus: 0, expected: 2, found: 0 }.into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let c = random_caravan(*genus, &mut rng);
            let (d, _) = scramble(&c, *steps, &mut rng)?;
            Ok(d.to_json_value())
        }
    }
}

/// Parses arguments, runs the command and prints its outcome. Returns the
/// process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli.command) {
        Ok(v) => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&v).expect("json output"));
            0
        }
        Err(f) => {
            eprintln!("{}", f.to_json());
            f.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    const CARAVAN: &str = r#"{"genus": 1, "basis": ["2", "2"], "arcs": [
        {"id": 1, "left": "0", "right": "2", "lattice": [1, 0]},
        {"id": 2, "left": "1", "right": "3", "lattice": [0, 1]}]}"#;

    #[test]
    fn check_reports_odd_parity() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "c.json", CARAVAN);
        let v = run(&Command::Check { diagram: p }).unwrap();
        assert_eq!(v["summary"], "admissible: true, det parity: odd");
    }

    #[test]
    fn decompose_identity_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "m.json", "[[1,0],[0,1]]");
        let v = run(&Command::Decompose { matrix: p, genus: None }).unwrap();
        assert_eq!(v["word"], "");
    }

    #[test]
    fn parse_and_library_errors_have_distinct_codes() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "bad.json", "{ not json");
        let f = run(&Command::Check { diagram: p }).unwrap_err();
        assert_eq!(f.exit_code(), 2);
        let p = write(&dir, "m.json", "[[2,0],[0,1]]");
        let f = run(&Command::Decompose { matrix: p, genus: None }).unwrap_err();
        assert_eq!(f.exit_code(), 1);
        assert_eq!(f.to_json()["error"], "NotSymplectic");
        let f = run(&Command::Check { diagram: dir.path().join("missing.json") }).unwrap_err();
        assert_eq!(f.exit_code(), 2);
    }

    #[test]
    fn generated_diagrams_parse_back() {
        let v = run(&Command::Generate { seed: 3, genus: 2, steps: 4 }).unwrap();
        let d = ArcDiagram::from_json(&v.to_string()).unwrap();
        assert_eq!(d.genus(), 2);
        assert!(d.basis().iter().all(|x| x > &int(0)));
    }
}
