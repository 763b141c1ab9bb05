//! Command-line front end. `run` is pure so tests can drive it without a process.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::{bernoulli, Rational};
use crate::combinatorics::partitions;
use crate::error::{Error, Result};
use crate::formulas::{
    ch_bundle, chern_classes, to_lambda_basis, Bundle, FormulaConfig, HodgeNormalization, KappaSeries,
};
use crate::taut::{render, to_json, Format, ModuliSpec, TautExpr};
use crate::verify::run_suite;

#[derive(Parser, Debug)]
#[command(name = "mgn-chern", version, about = "Chern character and Chern classes of the moduli of stable curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded components of the Chern character.
    Ch {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = BundleArg::Cotangent)]
        bundle: BundleArg,
        #[arg(long, value_enum, default_value_t = BasisArg::Kappa)]
        basis: BasisArg,
    },
    /// Chern classes c_1..c_jmax.
    Chern {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        jmax: u32,
        #[arg(long, value_enum, default_value_t = BundleArg::Tangent)]
        bundle: BundleArg,
        #[arg(long, value_enum, default_value_t = BasisArg::Lambda)]
        basis: BasisArg,
    },
    /// Run the consistency checks; exit status 1 if any fails.
    Verify {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(4..))]
        order: u32,
        /// Perturb the theta series to confirm the harness notices.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Bernoulli number B_k (B_1 = -1/2).
    Bernoulli {
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Partitions of j in reverse-lexicographic order.
    Partitions {
        #[arg(allow_negative_numbers = true)]
        j: i64,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    g: u32,
    /// Number of marked points (labels p1..pn).
    #[arg(long, conflicts_with = "labels")]
    n: Option<usize>,
    /// Comma-separated marking labels; implies concrete mode.
    #[arg(long, value_delimiter = ',')]
    labels: Option<Vec<String>>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = KappaArg::MinusA)]
    kappa_series: KappaArg,
    #[arg(long, value_enum, default_value_t = HodgeArg::BoundaryHalf)]
    hodge: HodgeArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BundleArg {
    Tangent,
    Cotangent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Kappa,
    Lambda,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Generic,
    Concrete,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KappaArg {
    MinusA,
    PlusA,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HodgeArg {
    BoundaryHalf,
    WholeBrace,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

impl Common {
    fn spec(&self) -> Result<Arc<ModuliSpec>> {
        let concrete = match (self.mode, &self.labels) {
            (Some(ModeArg::Generic), Some(_)) => {
                return Err(Error::Parse("--labels requires concrete mode".into()));
            }
            (Some(ModeArg::Concrete), _) | (None, Some(_)) => true,
            _ => false,
        };
        if let Some(labels) = &self.labels {
            return ModuliSpec::concrete(self.g, labels.clone());
        }
        let n = self.n.unwrap_or(0);
        if concrete {
            ModuliSpec::concrete_n(self.g, n)
        } else {
            ModuliSpec::generic(self.g, n)
        }
    }

    fn config(&self) -> FormulaConfig {
        FormulaConfig {
            kappa: match self.kappa_series {
                KappaArg::MinusA => KappaSeries::MinusA,
                KappaArg::PlusA => KappaSeries::PlusA,
            },
            hodge: match self.hodge {
                HodgeArg::BoundaryHalf => HodgeNormalization::BoundaryHalf,
                HodgeArg::WholeBrace => HodgeNormalization::WholeBrace,
            },
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

fn bundle(b: BundleArg) -> Bundle {
    match b {
        BundleArg::Tangent => Bundle::Tangent,
        BundleArg::Cotangent => Bundle::Cotangent,
    }
}

/// One `label: expr` line per entry, or a JSON array of per-degree documents.
fn emit(rank: &TautExpr, lines: Vec<(String, TautExpr)>, format: Format) -> String {
    if format == Format::Json {
        let docs: Vec<_> = std::iter::once(rank).chain(lines.iter().map(|(_, e)| e)).map(to_json).collect();
        return serde_json::to_string(&docs).expect("json serialization of plain data") + "\n";
    }
    let mut out = format!("deg 0: rank = {}\n", rank.coeff(&crate::taut::Monomial::one()));
    for (label, e) in lines {
        out += &format!("{label}: {}\n", render(&e, format));
    }
    out
}

fn rank_expr(spec: &Arc<ModuliSpec>) -> TautExpr {
    TautExpr::constant(spec, 0, Rational::integer(spec.dimension()))
}

fn cmd_ch(common: &Common, degree: u32, b: BundleArg, basis: BasisArg) -> Result<String> {
    let spec = common.spec()?;
    let mut ch = ch_bundle(&spec, degree.max(1), bundle(b), &common.config())?;
    if basis == BasisArg::Lambda {
        ch = to_lambda_basis(&ch)?;
    }
    let lines = (1..=degree).map(|d| (format!("deg {d}"), ch.component(d).with_order(d))).collect();
    Ok(emit(&rank_expr(&spec), lines, common.format()))
}

fn cmd_chern(common: &Common, jmax: u32, b: BundleArg, basis: BasisArg) -> Result<String> {
    let spec = common.spec()?;
    let classes = chern_classes(&spec, jmax, bundle(b), basis == BasisArg::Lambda, &common.config())?;
    let lines =
        classes.into_iter().enumerate().map(|(i, c)| (format!("c_{}", i + 1), c.with_order(i as u32 + 1))).collect();
    Ok(emit(&rank_expr(&spec), lines, common.format()))
}

fn cmd_verify(order: u32, inject_fault: bool) -> Result<Outcome> {
    let results = run_suite(order, inject_fault)?;
    let mut stdout = String::new();
    for r in &results {
        stdout += &format!("{r}\n");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    stdout += &format!("{} checks, {failed} failed\n", results.len());
    Ok(Outcome { code: i32::from(failed > 0), stdout, stderr: String::new() })
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Ch { common, degree, bundle, basis } => cmd_ch(&common, degree, bundle, basis).map(Outcome::ok),
        Command::Chern { common, jmax, bundle, basis } => cmd_chern(&common, jmax, bundle, basis).map(Outcome::ok),
        Command::Verify { order, inject_fault } => cmd_verify(order, inject_fault),
        Command::Bernoulli { k } => Ok(Outcome::ok(format!("{}\n", bernoulli(k)?))),
        Command::Partitions { j } => {
            let ps: Vec<String> = partitions(j)?.iter().map(ToString::to_string).collect();
            Ok(Outcome::ok(ps.join(" ") + "\n"))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
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
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
