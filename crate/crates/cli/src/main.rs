//! Command-line front end: intersection numbers on `C^n` and Chern data of
//! tautological bundles on symmetric products.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::Document;
use symprod::chow::DEFAULT_AMBIENT_CAP;
use symprod::dsl::{evaluate, parse, Value};
use symprod::stability::{bogomolov_gap, classify_slope, moduli_expected_dim};
use symprod::taut::{discriminant, BundleSpec, DiscriminantMode};
use symprod::verify::run_verification;
use symprod::{Assignment, RatPoly, Rational, Symbol};

#[derive(Parser)]
#[command(
    name = "symprod",
    version,
    about = "Exact intersection numbers on symmetric products of curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    /// Largest ambient dimension n accepted.
    #[arg(long, default_value_t = DEFAULT_AMBIENT_CAP, global = true)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Engine,
    Closed,
}

#[derive(Args)]
struct Values {
    /// Genus of the curve.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<Rational>,
    /// Degree of E.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<Rational>,
    /// Rank of E.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<Rational>,
}

impl Values {
    fn assignment(&self) -> Assignment {
        let mut a = Assignment::new();
        a.set(Symbol::G, self.g.clone());
        a.set(Symbol::D, self.d.clone());
        a.set(Symbol::R, self.r.clone());
        a
    }

    fn echo(&self) -> Vec<(&'static str, serde_json::Value)> {
        [("g", &self.g), ("d", &self.d), ("r", &self.r)]
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, json!(v.to_string()))))
            .collect()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression on C^n.
    Intersect {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        values: Values,
    },
    /// The discriminant of E^[n] paired with H^(n-2).
    Discriminant {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        values: Values,
        #[arg(long, value_enum, default_value_t = Mode::Engine)]
        mode: Mode,
    },
    /// Stability diagnostics for E^[n] at slope mu.
    Stability {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        g: u32,
        /// Slope as P/Q.
        #[arg(long, allow_hyphen_values = true)]
        mu: Rational,
    },
    /// Expected dimension of the moduli space containing E^[2].
    ModuliDim {
        #[arg(long, allow_hyphen_values = true)]
        g: Rational,
        #[arg(long, allow_hyphen_values = true)]
        r: Rational,
        #[arg(long, allow_hyphen_values = true)]
        d: Rational,
    },
    /// Re-derive every identity for n = 2..=max-n.
    Verify {
        #[arg(long)]
        max_n: usize,
    },
}

enum Failure {
    Usage(String),
    Verification(Box<Document>),
}

impl From<symprod::Error> for Failure {
    fn from(e: symprod::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn within_cap(n: usize, cap: usize) -> Result<(), Failure> {
    if n > cap {
        Err(symprod::Error::AmbientTooLarge { n, cap }.into())
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<Document, Failure> {
    Ok(match &cli.command {
        Command::Intersect { n, expr, values } => {
            within_cap(*n, cli.cap)?;
            let ast = parse(expr)?;
            let at = values.assignment();
            let result = match evaluate(&ast, *n)? {
                Value::Scalar(p) => report::poly(&p.substitute(&at)),
                Value::Class(c) => {
                    let c = if at.is_empty() {
                        c
                    } else {
                        let mut out = symprod::ChowClass::zero(c.n())?;
                        for (conf, p) in c.terms() {
                            let term = symprod::ChowClass::from(conf.clone());
                            out = out.add(&term.scale(&p.substitute(&at)))?;
                        }
                        out
                    };
                    report::class(&c)
                }
            };
            Document {
                n: Some(*n),
                expr: ast.to_string(),
                result,
                extra: values.echo(),
            }
        }
        Command::Discriminant { n, values, mode } => {
            within_cap(*n, cli.cap)?;
            let rank = values.r.clone().map_or_else(RatPoly::r, RatPoly::constant);
            let degree = values.d.clone().map_or_else(RatPoly::d, RatPoly::constant);
            let bundle = BundleSpec::new(rank, degree)?;
            let mode_name = match mode {
                Mode::Engine => "engine",
                Mode::Closed => "closed",
            };
            let mode = match mode {
                Mode::Engine => DiscriminantMode::Engine,
                Mode::Closed => DiscriminantMode::Closed,
            };
            let value = discriminant(*n, &bundle, mode)?.substitute(&values.assignment());
            let mut extra = values.echo();
            extra.push(("mode", json!(mode_name)));
            Document {
                n: Some(*n),
                expr: "integrate(discriminant * H^(n-2))".into(),
                result: report::poly(&value),
                extra,
            }
        }
        Command::Stability { n, g, mu } => {
            let verdict = classify_slope(*n, *g, mu)?;
            let gap = bogomolov_gap(*n, *g)?;
            let gap = report::interval(gap.as_ref());
            Document {
                n: Some(*n as usize),
                expr: "stability".into(),
                result: report::verdict(&verdict),
                extra: vec![
                    ("g", json!(g)),
                    ("mu", json!(mu.to_string())),
                    (
                        "gap",
                        json!({"kind": gap.kind, "text": gap.text, "terms": gap.terms}),
                    ),
                ],
            }
        }
        Command::ModuliDim { g, r, d } => {
            let m = moduli_expected_dim(g, r, d)?;
            Document {
                n: Some(2),
                expr: "moduli-dim".into(),
                result: report::poly(&RatPoly::constant(m.expected_dim)),
                extra: vec![
                    ("g", json!(g.to_string())),
                    ("r", json!(r.to_string())),
                    ("d", json!(d.to_string())),
                    ("chi", json!(m.chi.to_string())),
                ],
            }
        }
        Command::Verify { max_n } => {
            let report = run_verification(*max_n, cli.cap)?;
            let doc = Document {
                n: Some(*max_n),
                expr: "verify".into(),
                result: report::verification(&report),
                extra: Vec::new(),
            };
            if !report.passed() {
                return Err(Failure::Verification(Box::new(doc)));
            }
            doc
        }
    })
}

fn render(cli: &Cli, doc: &Document) -> String {
    match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc.to_json()).expect("serialisable");
            s.push('\n');
            s
        }
        Format::Text => doc.to_text(),
    }
}

fn emit(cli: &Cli, doc: &Document) -> Result<(), String> {
    let text = render(cli, doc);
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (doc, code) = match run(&cli) {
        Ok(doc) => (doc, 0),
        Err(Failure::Verification(doc)) => (*doc, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = emit(&cli, &doc) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
