//! `welfarelens` command-line front end.
//!
//! Exit status: 0 on success, 1 on invalid input or usage, 2 on numerical
//! failure. `verify` exits 2 when any certificate fails.

mod dist_spec;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use welfarelens::dominance::{lorenz_dominance, zenga_dominance, DEFAULT_GRID};
use welfarelens::welfare::{certify, weight_profile};
use welfarelens::{
    curves, distributions, indices, welfare, CurveKind, Distribution, IndexKind, QuadConfig,
    WeightVariant,
};

use crate::dist_spec::parse_dist_spec;
use crate::render::{DominanceReport, Rendered, WelfareReport, WelfareRow};

#[derive(Parser)]
#[command(
    name = "welfarelens",
    version,
    about = "Inequality curves, indices, and welfare weights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gini, generalized Gini, Bonferroni, and Zenga indices.
    Index {
        #[command(flatten)]
        source: Source,
        /// Generalized Gini exponents to report (repeatable).
        #[arg(long = "k")]
        ks: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// A curve tabulated on the open grid i/(n+1).
    Curve {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = CurveArg::Lorenz)]
        curve: CurveArg,
        #[arg(long, default_value_t = 99)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
    /// A welfare weight function and its integral.
    Weights {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, value_enum, default_value_t = VariantArg::Nu)]
        variant: VariantArg,
        #[arg(long, default_value_t = 99)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Welfare values μ(1 − I) and their direct integrals.
    Welfare {
        #[command(flatten)]
        source: Source,
        /// Report a single kind; all four by default.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long)]
        k: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Lorenz and Zenga orderings of two distributions.
    Dominance {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        second: SecondSource,
        #[arg(long, value_enum, default_value_t = OrderingArg::Both)]
        ordering: OrderingArg,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Numerical certificates for the Zenga weight propositions.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Source {
    /// CSV file with a header row.
    #[arg(long, conflicts_with = "dist")]
    input: Option<PathBuf>,
    #[arg(long, default_value = "income")]
    column: String,
    #[arg(long)]
    weight_column: Option<String>,
    /// Parametric distribution, e.g. pareto:2,1 or lognormal:0,1.
    #[arg(long)]
    dist: Option<String>,
}

#[derive(Args)]
struct SecondSource {
    #[arg(long, conflicts_with = "dist2")]
    input2: Option<PathBuf>,
    #[arg(long)]
    dist2: Option<String>,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Relative tolerance for quadrature.
    #[arg(long, env = "WELFARELENS_REL_TOL")]
    rel_tol: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum KindArg {
    Gini,
    GiniK,
    Bonferroni,
    Zenga,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CurveArg {
    Lorenz,
    GeneralizedLorenz,
    BonferroniCurve,
    UniformityRatio,
    ZengaInequality,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum VariantArg {
    Nu,
    NuStar,
    Beta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    Lorenz,
    Zenga,
    Both,
}

impl KindArg {
    fn resolve(self, k: Option<f64>) -> Result<IndexKind> {
        let name = match self {
            KindArg::Gini => "gini",
            KindArg::GiniK => "gini_k",
            KindArg::Bonferroni => "bonferroni",
            KindArg::Zenga => "zenga",
        };
        Ok(IndexKind::parse(name, k)?)
    }
}

impl From<CurveArg> for CurveKind {
    fn from(c: CurveArg) -> Self {
        match c {
            CurveArg::Lorenz => CurveKind::Lorenz,
            CurveArg::GeneralizedLorenz => CurveKind::GeneralizedLorenz,
            CurveArg::BonferroniCurve => CurveKind::BonferroniCurve,
            CurveArg::UniformityRatio => CurveKind::UniformityRatio,
            CurveArg::ZengaInequality => CurveKind::ZengaInequality,
        }
    }
}

impl From<VariantArg> for WeightVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Nu => WeightVariant::Nu,
            VariantArg::NuStar => WeightVariant::NuStar,
            VariantArg::Beta => WeightVariant::Beta,
        }
    }
}

impl Common {
    fn quad(&self) -> Result<QuadConfig> {
        match self.rel_tol {
            None => Ok(QuadConfig::default()),
            Some(t) if t.is_finite() && t > 0.0 && t < 1.0 => Ok(QuadConfig::with_rel_tol(t)),
            Some(t) => bail!("--rel-tol must be in (0, 1), got {t}"),
        }
    }
}

fn load(
    input: Option<&PathBuf>,
    dist: Option<&str>,
    source: &Source,
    flag: &str,
) -> Result<Option<Distribution>> {
    match (input, dist) {
        (Some(path), None) => {
            let sample =
                distributions::from_csv_path(path, &source.column, source.weight_column.as_deref())
                    .map_err(welfarelens::Error::from)
                    .context("reading income data")?;
            Ok(Some(Distribution::Empirical(sample)))
        }
        (None, Some(spec)) => Ok(Some(parse_dist_spec(spec)?)),
        (None, None) => Ok(None),
        (Some(_), Some(_)) => bail!("give either --input{flag} or --dist{flag}, not both"),
    }
}

impl Source {
    fn optional(&self) -> Result<Option<Distribution>> {
        load(self.input.as_ref(), self.dist.as_deref(), self, "")
    }

    fn required(&self) -> Result<Distribution> {
        self.optional()?
            .context("no distribution given: pass --input FILE.csv or --dist family:params")
    }
}

fn run(command: Command) -> Result<(Rendered, Common, bool)> {
    Ok(match command {
        Command::Index { source, ks, common } => {
            let d = source.required()?;
            let report = indices::index_report(&d, &ks, &common.quad()?)?;
            (render::index(&report, &ks, common.format)?, common, true)
        }
        Command::Curve {
            source,
            curve,
            grid,
            common,
        } => {
            let d = source.required()?;
            let g = curves::curve_grid(&d, curve.into(), grid)?;
            (render::curve(&g, common.format)?, common, true)
        }
        Command::Weights {
            source,
            kind,
            k,
            variant,
            grid,
            common,
        } => {
            let d = source.optional()?;
            let profile = weight_profile(
                kind.resolve(k)?,
                variant.into(),
                d.as_ref(),
                grid,
                &common.quad()?,
            )?;
            (render::weights(&profile, common.format)?, common, true)
        }
        Command::Welfare {
            source,
            kind,
            k,
            common,
        } => {
            let d = source.required()?;
            let cfg = common.quad()?;
            let kinds = match kind {
                Some(kind) => vec![kind.resolve(k)?],
                None => {
                    let mut all = vec![IndexKind::Gini];
                    if let Some(k) = k {
                        all.push(IndexKind::parse("gini_k", Some(k))?);
                    }
                    all.extend([IndexKind::Bonferroni, IndexKind::Zenga]);
                    all
                }
            };
            let rows = kinds
                .into_iter()
                .map(|kind| -> Result<WelfareRow> {
                    Ok(WelfareRow {
                        kind,
                        index: indices::index(&d, kind, &cfg)?,
                        welfare: welfare::welfare(&d, kind, &cfg)?,
                        welfare_by_curve: welfare::welfare_by_curve(&d, kind, &cfg)?,
                        welfare_direct: welfare::welfare_direct(&d, kind, &cfg)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let report = WelfareReport {
                mean: d.mean(),
                rows,
            };
            (render::welfare(&report, common.format)?, common, true)
        }
        Command::Dominance {
            source,
            second,
            ordering,
            grid,
            common,
        } => {
            let x = source.required()?;
            let y = load(
                second.input2.as_ref(),
                second.dist2.as_deref(),
                &source,
                "2",
            )?
            .context(
                "no second distribution given: pass --input2 FILE.csv or --dist2 family:params",
            )?;
            let lorenz = match ordering {
                OrderingArg::Zenga => None,
                _ => Some(lorenz_dominance(&x, &y, grid)?),
            };
            let zenga = match ordering {
                OrderingArg::Lorenz => None,
                _ => Some(zenga_dominance(&x, &y, grid)?),
            };
            let equivalent = match (&lorenz, &zenga) {
                (Some(l), Some(z)) => Some(l.relation == z.relation),
                _ => None,
            };
            let report = DominanceReport {
                lorenz,
                zenga,
                equivalent,
            };
            (render::dominance(&report, common.format)?, common, true)
        }
        Command::Verify { source, common } => {
            let d = source.required()?;
            let certs = certify(&d, &common.quad()?);
            let ok = certs.iter().all(|c| c.passed());
            (render::certificates(&certs, common.format)?, common, ok)
        }
    })
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let numerical = err
        .chain()
        .filter_map(|e| e.downcast_ref::<welfarelens::Error>())
        .any(|e| e.is_numerical());
    if numerical {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command).and_then(|(text, common, ok)| {
        emit(&text.0, common.output.as_ref())?;
        Ok(ok)
    }) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: one or more certificates failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
