//! Command-line front end. Structured output is a single JSON document on
//! stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success or passing verification, 1 verification failure,
//! 2 usage or domain error.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::abdiagrams::{build_pair, enumerate_b_parts, max_b_part, ABDiagram};
use crate::error::{Error, Result};
use crate::exactmat::{FieldSpec, DEFAULT_PRIME};
use crate::partitions::{DimVector, Partition};
use crate::quiverrep::{
    build_from_chain, chain_to_type, max_reachable_type, reachable_types, sample_stable,
    witness_reducible, QuiverRep,
};
use crate::verify::{self, trial_rng, SuiteConfig, DEFAULT_BUDGET, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "quiverkit",
    version,
    about = "Type-A quiver variety toolkit over prime fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Prime modulus (default 32003; 2 for exhaustive verification)
    #[arg(long = "p", global = true)]
    pub p: Option<u64>,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long, global = true)]
    pub trials: Option<usize>,

    /// Emit JSON even where a text rendering exists
    #[arg(long, global = true)]
    pub json: bool,

    /// Maximum number of enumerated items
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition operations
    #[command(subcommand)]
    Part(PartCmd),
    /// Dimension-vector classification and the reducibility verdict
    #[command(subcommand)]
    Dimvec(DimvecCmd),
    /// ab-diagram operations
    #[command(subcommand)]
    Ab(AbCmd),
    /// Points of Z
    #[command(subcommand)]
    Rep(RepCmd),
    /// Exhaustive and randomized verification drivers
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum PartCmd {
    Dual { eta: String },
    Add { eta: String, a: usize },
    Dom { eta: String, nu: String },
    Young { eta: String },
    Nvec { eta: String },
}

#[derive(Debug, Subcommand)]
pub enum DimvecCmd {
    Classify {
        dims: String,
    },
    Mu {
        dims: String,
    },
    Lambda {
        dims: String,
    },
    Slack {
        dims: String,
    },
    Obstruction {
        dims: String,
    },
    Verdict {
        dims: String,
    },
    /// theta types reachable by chains of ab-diagrams, with a chain to the maximum
    Reach {
        dims: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum AbCmd {
    /// b-parts of all diagrams with a-part eta and a extra b's
    Parts { eta: String, a: usize },
    /// Dominance-maximal b-part
    Max { eta: String, a: usize },
    /// Explicit (A, B) for a diagram such as "babab,bab,a"
    Pair { diagram: String },
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    /// Random stable point
    Sample { dims: String },
    /// Point glued from ab-diagrams, separated by ';'
    Chain { diagrams: String },
    /// Check a point of Z (bare, or under "rep" in a report) from a file or '-' for stdin
    Check { path: String },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// lemma-step | thm72 | prop-inject | example-reduc | all
    pub statement: String,

    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long)]
    pub a: Option<usize>,

    /// Largest n_t in the thm72 sweep
    #[arg(long)]
    pub max_last: Option<usize>,

    /// Dimension vectors for prop-inject, separated by ';'
    #[arg(long)]
    pub dims: Option<String>,
}

enum Outcome {
    Json(serde_json::Value),
    Text(String),
    Verified { doc: serde_json::Value, pass: bool },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };

    let outcome = match cli.global.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Parse(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };

    match outcome {
        Ok(Outcome::Json(v)) => {
            let _ = writeln!(out, "{}", to_json(&v));
            EXIT_OK
        }
        Ok(Outcome::Text(s)) => {
            let _ = writeln!(out, "{s}");
            EXIT_OK
        }
        Ok(Outcome::Verified { doc, pass }) => {
            let _ = writeln!(out, "{}", to_json(&doc));
            let _ = writeln!(
                err,
                "verification {}",
                if pass { "passed" } else { "FAILED" }
            );
            if pass {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn field(global: &GlobalOpts, default: u64) -> Result<FieldSpec> {
    FieldSpec::new(global.p.unwrap_or(default))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Part(cmd) => part(cmd, g),
        Command::Dimvec(cmd) => dimvec(cmd, g),
        Command::Ab(cmd) => ab(cmd, g),
        Command::Rep(cmd) => rep(cmd, g),
        Command::Verify(args) => verify_cmd(args, g),
    }
}

fn part(cmd: &PartCmd, g: &GlobalOpts) -> Result<Outcome> {
    Ok(match cmd {
        PartCmd::Dual { eta } => Outcome::Json(value(&eta.parse::<Partition>()?.dual())),
        PartCmd::Add { eta, a } => Outcome::Json(value(&eta.parse::<Partition>()?.add(*a))),
        PartCmd::Dom { eta, nu } => {
            let eta: Partition = eta.parse()?;
            Outcome::Json(json!(eta.dominates(&nu.parse()?)?))
        }
        PartCmd::Young { eta } => {
            let rendered = eta.parse::<Partition>()?.render_young();
            if g.json {
                Outcome::Json(json!(rendered))
            } else {
                Outcome::Text(rendered)
            }
        }
        PartCmd::Nvec { eta } => Outcome::Json(value(&eta.parse::<Partition>()?.n_vector()?)),
    })
}

fn dimvec(cmd: &DimvecCmd, g: &GlobalOpts) -> Result<Outcome> {
    Ok(Outcome::Json(match cmd {
        DimvecCmd::Classify { dims } => value(&dims.parse::<DimVector>()?.classify()),
        DimvecCmd::Mu { dims } => value(&dims.parse::<DimVector>()?.mu()?),
        DimvecCmd::Lambda { dims } => value(&dims.parse::<DimVector>()?.theta_image()?),
        DimvecCmd::Slack { dims } => value(&dims.parse::<DimVector>()?.cartan_slack()?),
        DimvecCmd::Obstruction { dims } => {
            value(&dims.parse::<DimVector>()?.zss_density_obstruction()?)
        }
        DimvecCmd::Verdict { dims } => {
            let dims: DimVector = dims.parse()?;
            let mut rng = trial_rng(g.seed, 0);
            value(&witness_reducible(
                &dims,
                field(g, DEFAULT_PRIME)?,
                &mut rng,
            )?)
        }
        DimvecCmd::Reach { dims } => {
            let dims: DimVector = dims.parse()?;
            let max = max_reachable_type(&dims)?;
            let chain = match &max {
                Some(m) => chain_to_type(&dims, m)?,
                None => None,
            };
            json!({
                "lambda": dims.theta_image()?,
                "max": max,
                "max_chain": chain,
                "types": reachable_types(&dims)?,
            })
        }
    }))
}

fn ab(cmd: &AbCmd, g: &GlobalOpts) -> Result<Outcome> {
    Ok(Outcome::Json(match cmd {
        AbCmd::Parts { eta, a } => value(&enumerate_b_parts(&eta.parse()?, *a)),
        AbCmd::Max { eta, a } => value(&max_b_part(&eta.parse()?, *a)?),
        AbCmd::Pair { diagram } => {
            let delta: ABDiagram = diagram.parse()?;
            let (a, b) = build_pair(&delta, field(g, DEFAULT_PRIME)?);
            let ba_type = b.mul(&a)?.jordan_type()?;
            let ab_type = a.mul(&b)?.jordan_type()?;
            json!({ "diagram": delta, "A": a, "B": b, "ba_type": ba_type, "ab_type": ab_type })
        }
    }))
}

fn rep_summary(z: &QuiverRep) -> Result<serde_json::Value> {
    let relations = z.check_relations();
    let theta_type = if relations && z.dims().len() >= 2 {
        Some(z.theta()?.jordan_type()?)
    } else {
        None
    };
    Ok(json!({
        "rep": z,
        "relations": relations,
        "nilpotency": if relations { Some(z.nilpotency_degrees()?) } else { None },
        "stable": z.is_stable(),
        "theta_type": theta_type,
    }))
}

fn rep(cmd: &RepCmd, g: &GlobalOpts) -> Result<Outcome> {
    let z = match cmd {
        RepCmd::Sample { dims } => {
            let mut rng = trial_rng(g.seed, 0);
            sample_stable(&dims.parse()?, field(g, DEFAULT_PRIME)?, &mut rng)?
        }
        RepCmd::Chain { diagrams } => {
            let deltas = diagrams
                .split(';')
                .map(str::parse)
                .collect::<Result<Vec<ABDiagram>>>()?;
            build_from_chain(&deltas, field(g, DEFAULT_PRIME)?)?
        }
        RepCmd::Check { path } => {
            let mut text = String::new();
            let read = if path == "-" {
                std::io::stdin().read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(path).map(|s| text = s)
            };
            read.map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            // a bare point, or any report carrying one under "rep"
            let mut doc: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            if let Some(inner) = doc.get_mut("rep") {
                doc = inner.take();
            }
            serde_json::from_value(doc).map_err(|e| Error::Parse(e.to_string()))?
        }
    };
    Ok(Outcome::Json(rep_summary(&z)?))
}

fn parse_dims_list(s: &str) -> Result<Vec<DimVector>> {
    s.split(';').map(str::parse).collect()
}

fn verify_cmd(args: &VerifyArgs, g: &GlobalOpts) -> Result<Outcome> {
    let report = match args.statement.as_str() {
        "lemma-step" => {
            let n = args.n.unwrap_or(2);
            let a = args.a.unwrap_or(1);
            verify::lemma_step(n, a, field(g, 2)?, g.budget)?
        }
        "thm72" => verify::thm72(
            args.max_last.unwrap_or(6),
            g.trials.unwrap_or(10),
            field(g, DEFAULT_PRIME)?,
            g.seed,
        )?,
        "prop-inject" => {
            let dims = match &args.dims {
                Some(s) => parse_dims_list(s)?,
                None => parse_dims_list("1,2;1,2,3")?,
            };
            verify::prop_inject(&dims, field(g, 2)?, g.budget)?
        }
        "example-reduc" => verify::example_reduc(field(g, DEFAULT_PRIME)?, g.seed)?,
        "all" => {
            let config = SuiteConfig {
                field: field(g, DEFAULT_PRIME)?,
                seed: g.seed,
                trials: g.trials.unwrap_or(SuiteConfig::default().trials),
                budget: g.budget,
                max_last: args.max_last.unwrap_or(SuiteConfig::default().max_last),
            };
            let suite = verify::run_suite(&config)?;
            return Ok(Outcome::Verified {
                pass: suite.pass,
                doc: value(&suite),
            });
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown statement {other:?}; expected lemma-step, thm72, prop-inject, example-reduc or all"
            )))
        }
    };
    Ok(Outcome::Verified {
        pass: report.pass,
        doc: value(&report),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("quiverkit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn part_commands() {
        assert_eq!(run_str(&["part", "add", "2,1,1", "1"]).1.trim(), "[3,2]");
        assert_eq!(
            run_str(&["part", "dual", "5,3,3,1"]).1.trim(),
            "[4,3,3,1,1]"
        );
        assert_eq!(run_str(&["part", "dom", "3,2", "3,1,1"]).1.trim(), "true");
        assert_eq!(run_str(&["part", "young", "2,1"]).1, "[][]\n[]\n");
        assert_eq!(
            run_str(&["part", "nvec", "5,3,3,1"]).1.trim(),
            "[1,2,5,8,12]"
        );
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, out, err) = run_str(&["part", "dual", "1,3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("invalid partition"));
        assert_eq!(run_str(&["part", "dom", "3", "2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify", "nothing"]).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["verify", "lemma-step", "--n", "3", "--a", "2"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn dimvec_commands() {
        assert_eq!(
            run_str(&["dimvec", "classify", "1,2,5,8,12"]).1.trim(),
            r#"{"tag":"kraft_procesi","eta":[5,3,3,1]}"#
        );
        assert_eq!(run_str(&["dimvec", "slack", "1,2"]).1.trim(), "[0]");
        let (code, out, _) = run_str(&["dimvec", "verdict", "1,4,5"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["lambda"], json!([3, 2]));
        assert_eq!(v["mu"], json!([3, 1, 1]));
        assert_eq!(v["verdict"], "reducible");
    }

    #[test]
    fn ab_and_rep_commands() {
        let (_, out, _) = run_str(&["ab", "pair", "babab,bab,a"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ab_type"], json!([3, 2]));
        assert_eq!(v["ba_type"], json!([2, 1, 1]));
        assert_eq!(run_str(&["ab", "max", "2,1,1", "1"]).1.trim(), "[3,2]");

        let (_, out, _) = run_str(&["rep", "chain", "bab,b,b;babab,bab,a"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["theta_type"], json!([3, 2]));
        assert_eq!(v["stable"], false);
        let z: QuiverRep = serde_json::from_value(v["rep"].clone()).unwrap();
        assert!(z.check_relations());
    }
}
