use boxpush::io::{run_experiment, AlgorithmChoice, ExperimentSpec, OutputFormats};
use boxpush::planner::OptimizerSettings;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "boxpush",
    version,
    about = "Seeded box-pushing planning experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan on a map, repeated over consecutive seeds, and write reports.
    Plan(PlanArgs),
}

#[derive(clap::Args)]
struct PlanArgs {
    /// Map file to plan on.
    #[arg(long)]
    map: PathBuf,
    /// mopso, nsga2 or both.
    #[arg(long, default_value = "mopso")]
    algo: AlgorithmChoice,
    /// Seed of the first repetition.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long)]
    pop: Option<usize>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    archive: Option<usize>,
    #[arg(long = "grid-div")]
    grid_div: Option<usize>,
    #[arg(long = "mut-rate")]
    mut_rate: Option<f64>,
    #[arg(long = "max-steps", default_value_t = 50)]
    max_steps: usize,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Comma-separated subset of text, csv, svg.
    #[arg(long, default_value = "text,csv")]
    format: OutputFormats,
}

impl PlanArgs {
    fn into_spec(self) -> ExperimentSpec {
        let mut optimizer = OptimizerSettings::default();
        if let Some(v) = self.pop {
            optimizer.population = v;
        }
        if let Some(v) = self.iters {
            optimizer.iterations = v;
        }
        if let Some(v) = self.archive {
            optimizer.archive_capacity = v;
        }
        if let Some(v) = self.grid_div {
            optimizer.grid_divisions = v;
        }
        if let Some(v) = self.mut_rate {
            optimizer.mutation_rate = v;
        }
        ExperimentSpec {
            map_path: self.map,
            algorithms: self.algo,
            repetitions: self.reps,
            base_seed: self.seed,
            optimizer,
            max_steps: self.max_steps,
            out_dir: self.out,
            formats: self.format,
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match cli.command {
        Command::Plan(args) => {
            let spec = args.into_spec();
            match run_experiment(&spec) {
                Ok(outcome) => {
                    if spec.formats.text {
                        print!("{}", outcome.text);
                    }
                    for path in &outcome.written {
                        log::info!("wrote {}", path.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
    }
}
