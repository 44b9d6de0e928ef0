use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use treespace::complex::SpaceKind;
use treespace::cycle::SplitOrder;
use treespace::lie::Flavor;
use treespace::report::{self, Depth, Format, Module, Report, RunConfig};
use treespace::Error;

#[derive(Parser)]
#[command(name = "treespace", version, about = "Tree spaces, partition-lattice nerves and their integral homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "TREESPACE_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Clone)]
struct Shape {
    #[arg(long, default_value_t = 4)]
    n: usize,

    #[arg(long, value_enum, default_value_t = SpaceArg::TreeSpace)]
    space: SpaceArg,
}

#[derive(Subcommand)]
enum Command {
    /// Count simplices per dimension.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        /// List every simplex.
        #[arg(long)]
        list: bool,
    },
    /// Reduced and unreduced integral homology.
    Homology {
        #[command(flatten)]
        shape: Shape,
    },
    /// Run the structural checks; exit status 1 if any fails.
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DepthArg::Quick)]
        depth: DepthArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check a dumped complex instead of building one.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Leave out wall-clock timings.
        #[arg(long)]
        no_timings: bool,
    },
    /// Character table of a module.
    Character {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModuleArg::Lie)]
        module: ModuleArg,
    },
    /// Character identity and exact sequence for the complement pair.
    Whitehouse {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DepthArg::Quick)]
        depth: DepthArg,
    },
    /// Export the fundamental cycle.
    Cycle {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Which half of a root split comes first in the recursion.
        #[arg(long, value_enum, default_value_t = OrderArg::SmallerFirst)]
        order: OrderArg,
    },
    /// Dump a complex (simplices and boundary triplets).
    Complex {
        #[command(flatten)]
        shape: Shape,
    },
    /// Rewrite a bracket sum such as "[a,[b,c]] - [b,[a,c]]" in the basis.
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Ordinary)]
        flavor: FlavorArg,
        /// Apply the ordinary-to-super isomorphism afterwards.
        #[arg(long)]
        theta: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    TreeSpace,
    PartitionNerve,
}

#[derive(Clone, Copy, ValueEnum)]
enum DepthArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleArg {
    Lie,
    Superlie,
    Hatlie,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Ordinary,
    Super,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    MinLabel,
    MaxLabel,
    SmallerFirst,
}

impl Shape {
    fn config(&self) -> RunConfig {
        RunConfig {
            n: self.n,
            space: match self.space {
                SpaceArg::TreeSpace => SpaceKind::TreeSpace,
                SpaceArg::PartitionNerve => SpaceKind::PartitionNerve,
            },
            ..RunConfig::default()
        }
    }
}

fn depth(d: DepthArg) -> Depth {
    match d {
        DepthArg::Quick => Depth::Quick,
        DepthArg::Full => Depth::Full,
    }
}

fn run(cmd: &Command) -> treespace::Result<Report> {
    match cmd {
        Command::Enumerate { shape, list } => report::cmd_enumerate(&shape.config(), *list),
        Command::Homology { shape } => report::cmd_homology(&shape.config()),
        Command::Complex { shape } => report::cmd_complex(&shape.config()),
        Command::Verify { n, depth: d, seed, complex, no_timings } => {
            let cfg = RunConfig { n: *n, depth: depth(*d), seed: *seed, timings: !no_timings, ..RunConfig::default() };
            match complex {
                Some(path) => report::cmd_verify(&cfg, Some(&std::fs::read_to_string(path)?)),
                None => report::cmd_verify(&cfg, None),
            }
        }
        Command::Character { n, module } => {
            let module = match module {
                ModuleArg::Lie => Module::Lie,
                ModuleArg::Superlie => Module::SuperLie,
                ModuleArg::Hatlie => Module::HatLie,
            };
            report::cmd_character(&RunConfig { n: *n, ..RunConfig::default() }, module)
        }
        Command::Whitehouse { n, depth: d } => report::cmd_whitehouse(&RunConfig { n: *n, depth: depth(*d), ..RunConfig::default() }),
        Command::Cycle { n, order } => {
            let order = match order {
                OrderArg::MinLabel => SplitOrder::MinLabel,
                OrderArg::MaxLabel => SplitOrder::MaxLabel,
                OrderArg::SmallerFirst => SplitOrder::SmallerFirst,
            };
            report::cmd_cycle(&RunConfig { n: *n, ..RunConfig::default() }, order)
        }
        Command::Normalize { expr, flavor, theta } => {
            let flavor = match flavor {
                FlavorArg::Ordinary => Flavor::Ordinary,
                FlavorArg::Super => Flavor::Super,
            };
            report::cmd_normalize(expr, flavor, *theta)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs).build_global() {
            eprintln!("treespace: {e}");
        }
    }
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("treespace: {e}");
            return ExitCode::from(match e {
                Error::Io(_) => 1,
                _ => 2,
            });
        }
    };
    let format = match cli.common.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let text = report.render(format);
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("treespace: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
