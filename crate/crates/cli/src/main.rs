use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rr_core::model::export_lp;
use rr_core::oracle::random_model;
use rr_core::{
    check_equivalence, feasible_points, parse_constant, parse_model, rationalize_model, solve_lpr, write_model,
    Equivalence, Error, FieldChoice, IntegerBox, Limits, Model,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rr", version, about = "Exact rationalization of integer programs with radical coefficients")]
struct Cli {
    /// Largest radical field dimension allowed.
    #[arg(long, global = true, env = "RR_DIM_CAP")]
    dim_cap: Option<usize>,
    /// Largest working precision, in bits, for sign determination.
    #[arg(long, global = true, env = "RR_PREC_CAP")]
    prec_cap: Option<u32>,
    /// Largest number of points enumerated by `verify`.
    #[arg(long, global = true, env = "RR_ENUM_CAP")]
    enum_cap: Option<u64>,
    /// Seed for `generate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of a radical expression.
    Canon { expr: String },
    /// Replace eligible equalities by their rational component equalities.
    Rationalize {
        model: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Solve a linear relaxation exactly. Without `--relaxation` the model is
    /// rationalized first.
    Solve {
        model: PathBuf,
        /// Relax the model as written instead of its rationalization.
        #[arg(long)]
        relaxation: bool,
        #[arg(long, value_enum, default_value_t = Field::Auto)]
        field: Field,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Enumerate integer points in a box and check equivalence with a
    /// rationalized model.
    Verify {
        model: PathBuf,
        /// Bounds `lo:hi` applied to every variable.
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
        bounds: (i64, i64),
        /// Compare against this model instead of the model's own rationalization.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write CPLEX LP text.
    ExportLp {
        model: PathBuf,
        /// Significant digits for irrational coefficients.
        #[arg(long, default_value_t = 15)]
        precision: usize,
    },
    /// Print a random model with a known integer solution.
    Generate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Auto,
    Rational,
    Radical,
}

fn parse_box(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo > hi {
        return Err("lower bound exceeds upper bound".into());
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Core(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(Error::Contract(_)) => 1,
            Failure::Core(Error::Resource(_)) => 3,
            Failure::Core(_) => 2,
            Failure::Verification(_) => 4,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut stdout = io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Verification(m) => eprintln!("rr: {m}"),
                Failure::Core(e) => eprintln!("rr: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let d = Limits::default();
    Limits {
        dim_cap: cli.dim_cap.unwrap_or(d.dim_cap),
        prec_cap: cli.prec_cap.unwrap_or(d.prec_cap),
        enum_cap: cli.enum_cap.unwrap_or(d.enum_cap),
        ..d
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))
}

fn load(path: &Path, limits: &Limits) -> Result<Model, Failure> {
    let text = read_text(path)?;
    parse_model(&text, limits).map_err(|e| match e {
        Error::Parse { pos, message } => {
            Failure::Core(Error::Parse { pos, message: format!("{}: {message}", path.display()) })
        }
        other => Failure::Core(other),
    })
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Outcome {
    write_file(path, &(serde_json::to_string_pretty(v).expect("json") + "\n"))
}

fn emit(out: &mut impl Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("writing output: {e}")))
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    let limits = limits(cli);
    match &cli.command {
        Command::Canon { expr } => {
            let c = parse_constant(expr, &limits)?;
            emit(out, &format!("{c}\n"))
        }
        Command::Rationalize { model, output, report } => {
            let m = load(model, &limits)?;
            let (r, rep) = rationalize_model(&m, &limits)?;
            for w in &rep.warnings {
                eprintln!("warning: {w}");
            }
            for &i in &rep.infeasible_rows {
                eprintln!("warning: row {} is 0 = nonzero; the model is infeasible", r.model.constraints[i].name);
            }
            let text = write_model(&r.model);
            match output {
                Some(p) => write_file(p, &text)?,
                None => emit(out, &text)?,
            }
            match report {
                Some(p) => write_json(p, &rep.to_json(&r)),
                None => Ok(()),
            }
        }
        Command::Solve { model, relaxation, field, report } => {
            let mut m = load(model, &limits)?;
            if !relaxation {
                m = rationalize_model(&m, &limits)?.0.model;
            }
            let field = match field {
                Field::Auto => FieldChoice::Auto,
                Field::Rational => FieldChoice::Rational,
                Field::Radical => FieldChoice::Radical,
            };
            let s = solve_lpr(&m, field, &limits)?;
            emit(out, &s.render(&m))?;
            let verified = s.verify(&m, &limits);
            if let Some(p) = report {
                let mut v = s.to_json(&m);
                v["verified"] = Value::from(verified);
                write_json(p, &v)?;
            }
            if !verified {
                return Err(Failure::Verification("solver certificate failed exact verification".into()));
            }
            Ok(())
        }
        Command::Verify { model, bounds, against, report } => {
            let m = load(model, &limits)?;
            let b = IntegerBox::uniform(m.variables.len(), bounds.0, bounds.1)?;
            let points = feasible_points(&m, &b, &limits)?;
            let mut text = format!("{} feasible point(s) in [{}, {}]^{}\n", points.len(), bounds.0, bounds.1, b.dim());
            for p in &points {
                let coords: Vec<String> = p.iter().map(i64::to_string).collect();
                text.push_str(&format!("({})\n", coords.join(", ")));
            }
            let other = match against {
                Some(p) => load(p, &limits)?,
                None => rationalize_model(&m, &limits)?.0.model,
            };
            let eq = check_equivalence(&m, &other, &b, &limits)?;
            let verdict = match &eq {
                Equivalence::Equal => json!("equal"),
                Equivalence::Counterexample { point, feasible_in_original } => {
                    json!({ "counterexample": point, "feasible_in_original": feasible_in_original })
                }
            };
            match &eq {
                Equivalence::Equal => text.push_str("equivalent: yes\n"),
                Equivalence::Counterexample { point, feasible_in_original } => {
                    let side = if *feasible_in_original { "original only" } else { "comparison only" };
                    text.push_str(&format!("equivalent: no, counterexample {point:?} feasible in {side}\n"));
                }
            }
            emit(out, &text)?;
            if let Some(p) = report {
                write_json(p, &json!({ "points": points, "equivalence": verdict }))?;
            }
            match eq {
                Equivalence::Equal => Ok(()),
                Equivalence::Counterexample { .. } => Err(Failure::Verification("models are not equivalent".into())),
            }
        }
        Command::ExportLp { model, precision } => {
            let m = load(model, &limits)?;
            emit(out, &export_lp(&m, *precision)?)
        }
        Command::Generate => {
            let (m, _) = random_model(cli.seed);
            emit(out, &write_model(&m))
        }
    }
}
