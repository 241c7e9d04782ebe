//! Command-line front end: argument handling, group expressions and
//! rendering. [`run`] is the whole program minus process setup.

pub mod group;
pub mod render;

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use nctori_core::classify::{analyze_action, classify_cyclic, classify_fg};
use nctori_core::exactlin::parse_matrix_text;
use nctori_core::invariants::{s1, BlockSpec};
use nctori_core::theta::{invariant_space, nondegenerate_invariant_exists};
use nctori_core::wfun::{max_order, w_group, w_order};
use nctori_core::IntMatrix;

pub use group::{parse_group, GroupExpr, GroupParseError};
use render::Style;

#[derive(Debug, Parser)]
#[command(name = "nctori", version, about = "Abelian group actions on noncommutative tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Least d such that GL_d(Z) has an element of order n
    Wfun { n: u64 },
    /// W(G) and a minimizing cyclic decomposition
    Wgroup { expr: String },
    /// Coefficients of the n-th cyclotomic polynomial, ascending
    Cyclotomic { n: u64 },
    /// K1 rank of the crossed product for a block spec such as C3+negC5
    S1 {
        #[arg(long)]
        blocks: String,
    },
    /// Verdict for Z_n acting on a d-torus
    Classify {
        d: usize,
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Verdict for a finitely generated abelian group such as Z2xZ2
    ClassifyGroup {
        d: usize,
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Invariant skew matrices for the action in a matrix file
    Theta { file: PathBuf },
    /// Order, freeness, invariant ranks and K1 for a matrix file
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Verdict grid over 1 <= d <= dmax and 2 <= n <= nmax
    Table {
        #[arg(long)]
        dmax: usize,
        /// Defaults to the largest finite order in GL_dmax(Z)
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    fn json(&self) -> bool {
        match self {
            Command::Classify { json, .. }
            | Command::ClassifyGroup { json, .. }
            | Command::Analyze { json, .. }
            | Command::Table { json, .. } => *json,
            _ => false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(nctori_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl From<nctori_core::Error> for CliError {
    fn from(e: nctori_core::Error) -> Self {
        match e {
            nctori_core::Error::Parse(msg) => CliError::Usage(msg),
            e => CliError::Domain(e),
        }
    }
}

impl From<GroupParseError> for CliError {
    fn from(e: GroupParseError) -> Self {
        CliError::Usage(format!("group expression: {e}"))
    }
}

/// `NO_COLOR` set to anything non-empty disables styling.
pub fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_styled(args, out, err, Style { color: color_enabled() })
}

pub fn run_styled<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, style: Style) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) if args.iter().any(|a| a == "--json") => {
            let text = e.to_string();
            let head = text.split("\n\n").next().unwrap_or_default();
            let msg = head.strip_prefix("error: ").unwrap_or(head).split_whitespace().collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "{}", json!({ "error": msg }));
            return 1;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return 1;
        }
    };
    let json = cli.command.json();
    match dispatch(cli.command, style) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            if json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn read_matrix(path: &PathBuf) -> Result<IntMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_matrix_text(&text)?)
}

fn dispatch(command: Command, style: Style) -> Result<String, CliError> {
    Ok(match command {
        Command::Wfun { n } => format!("W({n}) = {}\n", w_order(n)?),
        Command::Wgroup { expr } => {
            let g = parse_group(&expr)?;
            let (w, parts) = w_group(&g.torsion_part());
            format!("W({g}) = {w} via {parts}\n")
        }
        Command::Cyclotomic { n } => {
            let p = nctori_core::arith::cyclotomic(n)?;
            let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
            format!("{}\n", coeffs.join(" "))
        }
        Command::S1 { blocks } => {
            let spec: BlockSpec = blocks.parse()?;
            format!("{}\n", s1(&spec))
        }
        Command::Classify { d, n, json } => {
            let v = classify_cyclic(d, n)?;
            if json { pretty(&render::verdict_json(&v)) } else { render::verdict_text(&v, style) }
        }
        Command::ClassifyGroup { d, expr, json } => {
            let g = parse_group(&expr)?;
            let v = classify_fg(d, &g)?;
            if json { pretty(&render::verdict_json(&v)) } else { render::verdict_text(&v, style) }
        }
        Command::Theta { file } => {
            let a = read_matrix(&file)?;
            let dim = invariant_space(&a)?.len();
            let witness = nondegenerate_invariant_exists(&a)?;
            let mut s = format!("invariant space dimension {dim}\n");
            match witness {
                Some(t) => {
                    s.push_str("nondegenerate invariant Θ exists\n");
                    s.push_str(&t.to_string());
                }
                None => s.push_str("no nondegenerate invariant Θ\n"),
            }
            s
        }
        Command::Analyze { file, json } => {
            let r = analyze_action(&read_matrix(&file)?, None)?;
            if json { pretty(&render::report_json(&r)) } else { render::report_text(&r, style) }
        }
        Command::Table { dmax, nmax, json } => {
            if dmax < 1 {
                return Err(CliError::Usage("--dmax must be at least 1".into()));
            }
            let nmax = nmax.unwrap_or_else(|| max_order(dmax as u64));
            let mut rows = Vec::new();
            for d in 1..=dmax {
                for n in 2..=nmax {
                    rows.push((n, classify_cyclic(d, n)?));
                }
            }
            if json {
                pretty(&serde_json::Value::Array(rows.iter().map(|(_, v)| render::verdict_json(v)).collect()))
            } else {
                let mut s = format!("{}\n", render::TABLE_HEADER);
                for (n, v) in &rows {
                    s.push_str(&render::table_row(v, *n));
                    s.push('\n');
                }
                s
            }
        }
    })
}
