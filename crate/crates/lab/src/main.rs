use bfk_core::functor::FunctorKind;
use bfk_core::group::{load_group, SectionClass, CACHE_DIR_ENV};
use bfk_lab::campaigns::{self, limit, CampaignKind, Group};
use bfk_lab::catalog::catalog;
use bfk_lab::config::{Format, RunConfig};
use bfk_lab::store::Store;
use bfk_lab::Envelope;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "bfk",
    version,
    about = "Limits of Burnside functors over sections of p-groups"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// The prime.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// Largest group order in the catalog.
    #[arg(long, global = true, default_value_t = 81)]
    max_order: usize,
    /// Directory for cached subgroup lattices.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Seeded appendix cases above the exhaustive order.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Largest order checked exhaustively by the appendix suite.
    #[arg(long, global = true, default_value_t = 27)]
    exhaustive_order: usize,
    /// Record wall times (output is then not reproducible byte for byte).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List the group catalog.
    Catalog,
    /// Run a verification campaign over the catalog.
    Verify {
        #[arg(value_enum)]
        campaign: Campaign,
    },
    /// Probe the counit of the X-colimit of K.
    Probe {
        #[arg(value_enum)]
        what: ProbeKind,
    },
    /// Compute one limit.
    Limit {
        /// A descriptor such as `xsp:3`, or a multiplication table file.
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "X3")]
        class: SectionClass,
        #[arg(long, default_value = "Kdual")]
        functor: FunctorKind,
        /// Also validate a coefficient system read from this JSON file.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Write the functor's system as JSON to this file.
        #[arg(long)]
        emit_system: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Campaign {
    Induction,
    Exact,
    Main,
    Appendix,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKind {
    M,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            p: self.p,
            max_order: self.max_order,
            seed: self.seed,
            exhaustive_order: self.exhaustive_order,
            samples: self.samples,
            cache_dir: self.cache_dir.clone(),
            jobs: self.jobs,
            format: match self.format {
                OutFormat::Json => Format::Json,
                OutFormat::Csv => Format::Csv,
            },
            timings: self.timings,
        }
    }
}

fn emit(env: &Envelope, format: Format) -> ExitCode {
    match format {
        Format::Json => print!("{}", env.to_json()),
        Format::Csv => print!("{}", env.to_csv()),
    }
    ExitCode::from(env.exit_code() as u8)
}

fn run_limit(
    cfg: &RunConfig,
    spec: &str,
    class: SectionClass,
    functor: FunctorKind,
    system: Option<PathBuf>,
    emit_system: Option<PathBuf>,
) -> Result<Envelope, String> {
    let store = Store::new(cfg.lattice_cache());
    let g = Arc::new(load_group(spec).map_err(|e| e.to_string())?);
    let ctx = store.context(g).map_err(|e| e.to_string())?;
    let group = Group::new(spec, ctx.clone(), &store, cfg.timings);
    let reports = campaigns::pool(cfg)
        .map_err(|e| e.to_string())?
        .install(|| -> Result<_, String> {
            let mut out = vec![limit::eta(&group, class, functor).map_err(|e| e.to_string())?];
            if let Some(path) = &emit_system {
                let sys = store.system(&ctx, class, functor, false).map_err(|e| e.to_string())?;
                let text = serde_json::to_string_pretty(&sys.system().to_json()).expect("values serialize");
                std::fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if let Some(path) = &system {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                out.push(limit::ingest(&group, &text).map_err(|e| e.to_string())?);
            }
            Ok(out)
        })?;
    Ok(Envelope::new("limit", cfg, Vec::new(), reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.common.config();
    let result = match cli.command {
        Command::Catalog => {
            let entries = catalog(cfg.p, cfg.max_order);
            match cfg.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&entries).expect("catalog serializes")
                ),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(std::io::stdout());
                    for e in &entries {
                        w.serialize(e).expect("stdout write");
                    }
                    w.flush().expect("stdout write");
                }
            }
            return ExitCode::SUCCESS;
        }
        Command::Verify { campaign } => {
            let kind = match campaign {
                Campaign::Induction => CampaignKind::Induction,
                Campaign::Exact => CampaignKind::Exact,
                Campaign::Main => CampaignKind::Main,
                Campaign::Appendix => CampaignKind::Appendix,
            };
            campaigns::run_campaign(kind, &cfg).map_err(|e| e.to_string())
        }
        Command::Probe { what: ProbeKind::M } => {
            campaigns::run_campaign(CampaignKind::Probe, &cfg).map_err(|e| e.to_string())
        }
        Command::Limit {
            group,
            class,
            functor,
            system,
            emit_system,
        } => run_limit(&cfg, &group, class, functor, system, emit_system),
    };
    match result {
        Ok(env) => emit(&env, cfg.format),
        Err(e) => {
            eprintln!("bfk: {e}");
            ExitCode::from(1)
        }
    }
}
