//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 an exhausted degree,
//! extension or fuel cap, 3 an inconsistent input or a violated dimension
//! precondition.

pub mod json;
pub mod parse;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Map;

use crate::error::Error;
use crate::poly::{Poly, Var};
use crate::poly::coeff::{fmt_rat, Coeff, NumberField};
use crate::puiseux::{Point, Verdict};
use crate::solver::{
    decide_existence, expand_system, invert_components, minimal_polynomial_system, residual_report, simple_system_solve,
    Family, SolvedSystem,
};
use crate::systems::{dimension, DiffSystem, Dimension, Kind};
use crate::thomas::{algebraic_decompose, differential_decompose};
use crate::Config;

pub use parse::{parse, print};

#[derive(Parser, Debug)]
#[command(name = "aodesolve", version, about = "Algebraic and Puiseux series solutions of autonomous ODE systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Default, Clone)]
struct Global {
    /// Largest degree handed to factorization.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Largest degree of an algebraic extension.
    #[arg(long, global = true)]
    max_extension: Option<usize>,
    /// Bound on decomposition steps.
    #[arg(long, global = true)]
    fuel: Option<usize>,
    /// Write the decomposition log to this file.
    #[arg(long, global = true)]
    log: Option<PathBuf>,
    /// Seed for sampling-based checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// File of `key = value` lines with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Simple,
    Minpoly,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum At {
    #[value(name = "0")]
    Zero,
    #[value(name = "inf")]
    Inf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Thomas decomposition into simple systems.
    Decompose {
        file: PathBuf,
        #[arg(long, conflicts_with = "differential")]
        algebraic: bool,
        #[arg(long)]
        differential: bool,
        #[arg(long)]
        json: bool,
    },
    /// Algebraic dimension.
    Dimension { file: PathBuf },
    /// Algebraic solutions up to a shift of x.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "simple")]
        format: Format,
        #[arg(long)]
        json: bool,
        /// Value (a rational or `x`) substituted for parametric unknowns.
        #[arg(long)]
        instantiate: Option<String>,
    },
    /// Whether formal Puiseux series solutions exist.
    Exists {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Puiseux expansions of the algebraic solutions with residuals.
    Puiseux {
        file: PathBuf,
        #[arg(long)]
        order: i64,
        #[arg(long, value_enum, default_value = "0")]
        at: At,
        #[arg(long)]
        json: bool,
    },
    /// Replaces the given unknowns by their reciprocals.
    Invert {
        file: PathBuf,
        /// Names or 1-based indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        components: Vec<String>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            e if e.is_cap() => 2,
            Error::Inconsistent(_) | Error::Dimension { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn config(g: &Global) -> Result<(Config, Option<PathBuf>), Failure> {
    let mut cfg = Config::default();
    let mut log = None;
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(usage(format!("{}:{}: expected key = value", path.display(), k + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = || usage(format!("{}:{}: bad value for {key}", path.display(), k + 1));
            match key {
                "max-degree" => cfg.limits.max_degree = value.parse().map_err(|_| bad())?,
                "max-extension" => cfg.limits.max_extension = value.parse().map_err(|_| bad())?,
                "fuel" => cfg.fuel = value.parse().map_err(|_| bad())?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad())?,
                "log" => log = Some(PathBuf::from(value)),
                _ => return Err(usage(format!("{}:{}: unknown key {key}", path.display(), k + 1))),
            }
        }
    }
    if let Some(v) = g.max_degree {
        cfg.limits.max_degree = v;
    }
    if let Some(v) = g.max_extension {
        cfg.limits.max_extension = v;
    }
    if let Some(v) = g.fuel {
        cfg.fuel = v;
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if g.log.is_some() {
        log = g.log.clone();
    }
    Ok((cfg, log))
}

fn read_system(path: &PathBuf) -> Result<DiffSystem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_log(path: &Option<PathBuf>, lines: &[String]) -> Result<(), Failure> {
    if let Some(p) = path {
        let mut text = lines.join("\n");
        text.push('\n');
        std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn show_system(out: &mut String, k: usize, s: &SolvedSystem) {
    let g = &s.simple;
    let _ = writeln!(out, "system {} (type {}):", k + 1, g.kind);
    for p in &g.system.equations {
        let _ = writeln!(out, "  {} = 0", g.system.show(p));
    }
    for p in &g.system.inequations {
        let _ = writeln!(out, "  {} /= 0", g.system.show(p));
    }
    if !g.free_variables.is_empty() {
        let names: Vec<&str> = g.free_variables.iter().map(|&j| g.system.names[j].as_str()).collect();
        let _ = writeln!(out, "  free: {}", names.join(", "));
    }
    match s.family {
        Family::Shift => {
            let _ = writeln!(out, "  family: x -> x + c");
        }
        Family::ParametricConstant(t) => {
            let _ = writeln!(out, "  family: {} constant", g.system.names[t]);
        }
        Family::Fixed => {}
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass(n) => format!("pass to order {}", fmt_rat(n)),
        Verdict::Fail { equation, valuation } => {
            format!("fail: equation {} has valuation {}", equation + 1, fmt_rat(valuation))
        }
        Verdict::FailInequation(i) => format!("fail: inequation {} vanishes", i + 1),
        Verdict::Inconclusive => "inconclusive".to_string(),
    }
}

fn field_poly(field: &NumberField) -> String {
    let coeffs: Vec<Poly> = field
        .minpoly()
        .iter()
        .map(|r| Poly::constant(Coeff::Rat(r.clone())))
        .collect();
    let p = Poly::from_coeffs_in(Var::jet(0, 0), &coeffs);
    p.display(&|_| field.name().to_string()).to_string()
}

fn instantiate(systems: Vec<SolvedSystem>, value: &str, cfg: &Config) -> Result<Vec<SolvedSystem>, Failure> {
    let v = if value == "x" {
        Poly::x()
    } else {
        let probe = parse(&format!("{value} = 0")).map_err(|e| usage(format!("--instantiate: {e}")))?;
        match probe.equations.first().and_then(|p| p.constant_value()) {
            Some(c) => Poly::constant(c),
            None => return Err(usage("--instantiate expects a rational number or x")),
        }
    };
    let mut out = Vec::new();
    for s in systems {
        let Family::ParametricConstant(t) = s.family else {
            out.push(s);
            continue;
        };
        let sys = s.simple.system.map_polys(|p| p.subst(Var::jet(t, 0), &v));
        if sys.inequations.iter().any(|p| p.is_zero()) {
            return Err(usage(format!("{value} is excluded for {}", s.simple.system.names[t])));
        }
        for g in algebraic_decompose(&sys, cfg)?.systems {
            out.push(SolvedSystem {
                family: if v.is_constant() { Family::Fixed } else { Family::Shift },
                simple: g,
                minimal_polynomials: None,
            });
        }
    }
    Ok(out)
}

fn execute(cli: Cli) -> Result<String, Failure> {
    let (cfg, log) = config(&cli.global)?;
    let mut out = String::new();
    match cli.command {
        Command::Decompose {
            file,
            algebraic,
            differential: _,
            json,
        } => {
            let s = read_system(&file)?;
            let d = if algebraic {
                algebraic_decompose(&s, &cfg)?
            } else {
                differential_decompose(&s, &cfg)?
            };
            write_log(&log, &d.log)?;
            if json {
                out = pretty(&json::document("decompose", &s, json::decomposition(&d)));
            } else {
                for (k, g) in d.systems.iter().enumerate() {
                    let solved = SolvedSystem {
                        simple: g.clone(),
                        family: Family::Fixed,
                        minimal_polynomials: None,
                    };
                    show_system(&mut out, k, &solved);
                }
                if d.systems.is_empty() {
                    out.push_str("no systems\n");
                }
            }
        }
        Command::Dimension { file } => {
            let s = read_system(&file)?;
            match dimension(&s, &cfg)? {
                Dimension::Inconsistent => out.push_str("inconsistent\n"),
                Dimension::Value(d) => {
                    let _ = writeln!(out, "{d}");
                }
            }
        }
        Command::Solve {
            file,
            format,
            json,
            instantiate: value,
        } => {
            let s = read_system(&file)?;
            let r = simple_system_solve(&s, &cfg)?;
            write_log(&log, &r.decomposition.log)?;
            let systems = match &value {
                Some(v) => instantiate(r.systems, v, &cfg)?,
                None => r.systems,
            };
            let with_simple = format != Format::Minpoly;
            let with_min = format != Format::Simple;
            if json {
                let body = json::solved(&systems, &r.decomposition, &r.diagnostics, with_min, with_simple);
                out = pretty(&json::document("solve", &s, body));
            } else {
                for (k, sys) in systems.iter().enumerate() {
                    if with_simple {
                        show_system(&mut out, k, sys);
                    } else {
                        let _ = writeln!(out, "system {} (type {}):", k + 1, sys.simple.kind);
                    }
                    if with_min {
                        if let Some(m) = &sys.minimal_polynomials {
                            for (_, q) in &m.polys {
                                let _ = writeln!(out, "  minimal polynomial: {}", sys.simple.system.show(q));
                            }
                        }
                    }
                }
                for d in &r.diagnostics {
                    let _ = writeln!(out, "note: {d}");
                }
            }
        }
        Command::Exists { file, json } => {
            let s = read_system(&file)?;
            let v = decide_existence(&s, &cfg)?;
            if json {
                out = pretty(&json::document("exists", &s, json::existence(&v)));
            } else {
                let _ = writeln!(out, "{}", v.verdict);
                if let Some((g, _)) = &v.witness {
                    let _ = writeln!(out, "witness: {}", g.system);
                }
            }
        }
        Command::Puiseux { file, order, at, json } => {
            if order < 1 {
                return Err(usage("--order must be positive"));
            }
            let s = read_system(&file)?;
            let point = match at {
                At::Zero => Point::Zero,
                At::Inf => Point::Infinity,
            };
            let r = simple_system_solve(&s, &cfg)?;
            write_log(&log, &r.decomposition.log)?;
            let mut entries = Vec::new();
            for (k, sys) in r.systems.iter().enumerate() {
                if !matches!(sys.simple.kind, Kind::III | Kind::IV) {
                    continue;
                }
                let mins = match &sys.minimal_polynomials {
                    Some(m) => m.clone(),
                    None => minimal_polynomial_system(&sys.simple.system, &cfg)?,
                };
                for tuple in expand_system(&sys.simple.system, &mins, point, order, &cfg)? {
                    let report = residual_report(&s, &tuple, order)?;
                    let comps: Vec<(String, String)> = sys
                        .simple
                        .system
                        .present()
                        .into_iter()
                        .map(|j| (s.names[j].clone(), tuple.series[j].to_string()))
                        .collect();
                    if !json {
                        let _ = writeln!(out, "system {} branch (class size {}):", k + 1, tuple.class_size);
                        for (n, v) in &comps {
                            let _ = writeln!(out, "  {n} = {v}");
                        }
                        if let Some(field) = tuple.series.iter().flat_map(|x| x.terms()).find_map(|(_, c)| c.field().cloned()) {
                            let _ = writeln!(out, "  where {} is a root of {}", field.name(), field_poly(&field));
                        }
                        let _ = writeln!(out, "  residual: {}", verdict_text(&report.verdict));
                    }
                    entries.push(serde_json::json!({
                        "system": k + 1,
                        "class_size": tuple.class_size,
                        "series": comps.into_iter().map(|(n, v)| (n, serde_json::Value::String(v))).collect::<Map<_, _>>(),
                        "residual": json::report(&report),
                    }));
                }
            }
            if json {
                let mut body = Map::new();
                body.insert("order".into(), serde_json::json!(order));
                body.insert("point".into(), serde_json::json!(if point == Point::Zero { "0" } else { "inf" }));
                body.insert("branches".into(), serde_json::Value::Array(entries));
                out = pretty(&json::document("puiseux", &s, body));
            }
        }
        Command::Invert { file, components } => {
            let s = read_system(&file)?;
            let mut idx = Vec::new();
            for c in &components {
                let j = match s.names.iter().position(|n| n == c) {
                    Some(j) => j,
                    None => match c.parse::<usize>() {
                        Ok(k) if k >= 1 && k <= s.names.len() => k - 1,
                        _ => return Err(usage(format!("no unknown {c}"))),
                    },
                };
                idx.push(j);
            }
            out = print(&invert_components(&s, &idx)?);
        }
    }
    Ok(out)
}

/// Runs the command line `args` (including the program name), writing the
/// result to `stdout` and messages to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(cli) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
