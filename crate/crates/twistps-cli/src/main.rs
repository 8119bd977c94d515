//! Batch interface: dimension tables, verification reports and conjecture
//! evidence, with machine-readable output and a persistent dimension
//! cache.
//!
//! Exit codes: 0 success (including recorded conjecture outcomes),
//! 1 mismatch in a theorem-grade check, 2 invalid configuration,
//! 3 truncation or guard violation, 4 cache corruption.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twistps::{
    character, check_conjecture, module_table, nahm_sum, presentation_table, verify_conjectured_sequence,
    verify_exact_sequences, verify_presentation, verify_proposition, verify_recursions,
    verify_shift_lemmas, Convention, DimTable, Error, ExtraForm, Report, TruncationBox,
    VerifyOptions,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Side {
    Presentation,
    Module,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ConventionArg {
    #[value(name = "m-neg")]
    MNeg,
    #[value(name = "arg-neg")]
    ArgNeg,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::MNeg => Convention::MNeg,
            ConventionArg::ArgNeg => Convention::ArgNeg,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ExtraFormArg {
    #[value(name = "sum-family")]
    SumFamily,
    #[value(name = "power-form")]
    PowerForm,
}

impl From<ExtraFormArg> for ExtraForm {
    fn from(f: ExtraFormArg) -> ExtraForm {
        match f {
            ExtraFormArg::SumFamily => ExtraForm::SumFamily,
            ExtraFormArg::PowerForm => ExtraForm::PowerForm,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Level of the construction
    #[arg(long)]
    k: u32,

    /// Number of twisted tensor slots
    #[arg(long, default_value_t = 0)]
    i: u32,

    /// Number of re-pointed tensor slots
    #[arg(long, default_value_t = 0)]
    j: u32,

    /// Truncation reading of the relation families
    #[arg(long, value_enum, default_value = "m-neg")]
    convention: ConventionArg,

    /// Shape of the extra generator family
    #[arg(long, value_enum, default_value = "sum-family")]
    extra_form: ExtraFormArg,

    /// Charge cap of the truncation box (default: 2(k+2))
    #[arg(long)]
    max_charge: Option<i64>,

    /// Weight cap of the truncation box, in quarters (default: 20)
    #[arg(long = "max-4w")]
    max_weight4: Option<i64>,

    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Write the artifact here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Dimension cache directory (env: TWISTPS_CACHE_DIR)
    #[arg(long, env = "TWISTPS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Parallelism degree for bidegree jobs (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

impl CommonArgs {
    fn boxed(&self) -> TruncationBox {
        let default = TruncationBox::default_for_level(self.k);
        TruncationBox::new(
            self.max_charge.unwrap_or(default.max_charge),
            self.max_weight4.unwrap_or(default.max_weight4),
        )
    }

    fn verify_options(&self) -> Result<VerifyOptions, Error> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("level k must be positive".into()));
        }
        if self.i + self.j > self.k {
            return Err(Error::InvalidConfig(format!(
                "i + j = {} exceeds k = {}",
                self.i + self.j,
                self.k
            )));
        }
        let box_ = self.boxed();
        if box_.max_charge <= 0 || box_.max_weight4 <= 0 {
            return Err(Error::InvalidConfig("truncation bounds must be positive".into()));
        }
        let mut opts = VerifyOptions::new(box_, self.convention.into(), self.extra_form.into());
        opts.cache_dir = self.cache_dir.clone();
        Ok(opts)
    }

    fn install_thread_pool(&self) {
        if let Some(jobs) = self.jobs {
            // ignore failure: the global pool can only be set once
            let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
        }
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => println!("{text}"),
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "twistps",
    about = "Exact graded dimensions, presentations and q-series for twisted principal subspaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a bigraded dimension table
    Dims {
        /// Which construction to tabulate
        #[arg(long, value_enum, default_value = "presentation")]
        side: Side,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a theorem-grade verification (exit 1 on mismatch)
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Record conjecture evidence (always exit 0 unless the guard trips)
    Conjecture {
        #[command(subcommand)]
        what: ConjectureWhat,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCheck {
    /// Quotient dimensions of the ideal equal the module-side span
    Presentation {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact-sequence rank conditions among the spanned subspaces
    Sequences {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Character recursions on the module-side tables
    Recursions {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ideal shift lemmas (forward-shift image, psi∘tau, right multiples)
    Lemmas {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// The two extra-generator forms give identical tables
    Proposition {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ConjectureWhat {
    /// Specialized character vs Nahm sum (vs congruence product for even k)
    Nahm {
        /// Comparison order in the specialized variable
        #[arg(long = "N", default_value_t = 16)]
        order: i64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generalized three-term sequences through re-pointed spaces
    Sequences {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn render_table(table: &DimTable, common: &CommonArgs) -> String {
    match common.format {
        Format::Json => table.to_json_string(),
        Format::Csv => table.to_csv_string(),
        Format::Text => {
            let mut out = format!(
                "{} table k={} i={} j={} ({}, {}), box charge<={} 4w<={}\n",
                table.side,
                table.k,
                table.i,
                table.j,
                table.convention,
                table.extra_form,
                table.box_[0],
                table.box_[1]
            );
            for e in &table.entries {
                if e[2] != 0 {
                    out.push_str(&format!("  ({}, {}/4): {}\n", e[0], e[1], e[2]));
                }
            }
            out
        }
    }
}

fn render_report(report: &Report, common: &CommonArgs) -> String {
    match common.format {
        Format::Json | Format::Csv => report.to_json_string(),
        Format::Text => {
            let mut out = format!("{} k={} i={}: {:?}\n", report.check, report.k, report.i, report.status);
            for m in &report.mismatches {
                out.push_str(&format!("  {} ({}, {}/4): {}\n", m.kind, m.charge, m.weight4, m.detail));
            }
            out
        }
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Dims { side, common } => {
            common.install_thread_pool();
            let opts = common.verify_options()?;
            let table = match side {
                Side::Presentation => presentation_table(common.k, common.i, &opts)?,
                Side::Module => module_table(common.k, common.i, common.j, &opts)?,
            };
            common.emit(&render_table(&table, &common))?;
            Ok(0)
        }
        Command::Verify { check } => {
            let (report, common) = match check {
                VerifyCheck::Presentation { common } => {
                    common.install_thread_pool();
                    let opts = common.verify_options()?;
                    (verify_presentation(common.k, common.i, &opts)?, common)
                }
                VerifyCheck::Sequences { common } => {
                    common.install_thread_pool();
                    let opts = common.verify_options()?;
                    (verify_exact_sequences(common.k, &opts)?, common)
                }
                VerifyCheck::Recursions { common } => {
                    common.install_thread_pool();
                    let opts = common.verify_options()?;
                    let t0 = module_table(common.k, 0, 0, &opts)?;
                    let t1 = module_table(common.k, 1, 0, &opts)?;
                    let tk = module_table(common.k, common.k, 0, &opts)?;
                    (verify_recursions(common.k, &t0, &t1, &tk), common)
                }
                VerifyCheck::Lemmas { common } => {
                    common.install_thread_pool();
                    let opts = common.verify_options()?;
                    (verify_shift_lemmas(common.k, &opts)?, common)
                }
                VerifyCheck::Proposition { common } => {
                    common.install_thread_pool();
                    let opts = common.verify_options()?;
                    (verify_proposition(common.k, common.i, &opts)?, common)
                }
            };
            common.emit(&render_report(&report, &common))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Conjecture { what } => {
            match what {
                ConjectureWhat::Nahm { order, common } => {
                    common.install_thread_pool();
                    let opts = common.verify_options()?;
                    let table = module_table(common.k, 0, 0, &opts)?;
                    let (report, evidence) = check_conjecture(common.k, &table, order)?;
                    let payload = serde_json::json!({
                        "report": report,
                        "evidence": evidence,
                    });
                    match common.format {
                        Format::Text => {
                            let mut text = render_report(&report, &common);
                            let series = character(&table).specialize_q4(order);
                            text.push_str(&format!("module: {series}\n"));
                            text.push_str(&format!("nahm:   {}\n", nahm_sum(common.k as usize, order)));
                            common.emit(&text)?;
                        }
                        _ => common.emit(&serde_json::to_string_pretty(&payload).expect("serializable"))?,
                    }
                    Ok(0)
                }
                ConjectureWhat::Sequences { common } => {
                    common.install_thread_pool();
                    let opts = common.verify_options()?;
                    let report = verify_conjectured_sequence(common.k, common.i, &opts)?;
                    common.emit(&render_report(&report, &common))?;
                    Ok(0)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
