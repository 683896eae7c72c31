//! `ccomp`: build composites of convex state spaces and certify separability.
//!
//! Exit codes: 0 success or separable, 1 entangled / failed check, 2 input
//! error, 3 internal invariant breach.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use convex_composite::demo::{check_universal, run_demo, DemoName};
use convex_composite::io::{load, to_json, CompositeFile, InputError, StateFile, WitnessFile};
use convex_composite::sample::seeded;
use convex_composite::space::{effect_cone_rays, remove_redundant_generators};
use convex_composite::{
    compose, is_separable, min_tensor, verify_witness, Error, Mode, StateSpace,
};

#[derive(Parser)]
#[command(
    name = "ccomp",
    version,
    about = "Exact composites of convex state spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a state-space file.
    Info { space: PathBuf },
    /// Combine party state spaces into a composite file.
    Compose {
        #[arg(required = true)]
        parties: Vec<PathBuf>,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        out: PathBuf,
        /// Also enumerate the vertices of a maximal composite.
        #[arg(long)]
        enumerate_vertices: bool,
    },
    /// Decide whether a composite state is separable.
    Separability {
        #[command(flatten)]
        parties: PartyArgs,
        #[arg(long)]
        state: PathBuf,
        /// Write the verdict here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an entanglement witness against a state.
    WitnessVerify {
        #[command(flatten)]
        parties: PartyArgs,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        state: PathBuf,
    },
    /// Check the factorization of random multilinear maps through the span of
    /// simple functionals.
    VerifyUniversal {
        #[command(flatten)]
        parties: PartyArgs,
        #[arg(long, default_value_t = 2)]
        target_dim: usize,
        #[arg(long, default_value_t = 20)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a built-in end-to-end scenario.
    Demo {
        #[arg(value_enum)]
        name: DemoArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PartyArgs {
    /// Composite file whose parties are used.
    #[arg(long)]
    composite: Option<PathBuf>,
    /// Party state-space file; repeat once per party, in order.
    #[arg(long = "party")]
    party: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Min,
    Max,
    Juxtapose,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Min => Mode::MinTensor,
            ModeArg::Max => Mode::MaxTensor,
            ModeArg::Juxtapose => Mode::Juxtaposition,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoArg {
    Classical,
    Gbit,
    Universal,
}

impl From<DemoArg> for DemoName {
    fn from(d: DemoArg) -> DemoName {
        match d {
            DemoArg::Classical => DemoName::Classical,
            DemoArg::Gbit => DemoName::Gbit,
            DemoArg::Universal => DemoName::Universal,
        }
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Normalization(_)
            | Error::DegenerateSpan { .. }
            | Error::DimensionMismatch { .. }
            | Error::Domain(_)
            | Error::Membership { .. }
            | Error::ParseRational { .. } => Failure::Input(e.to_string()),
            Error::RankDeficiency { .. }
            | Error::FactorizationMismatch { .. }
            | Error::UnboundedPolyhedron
            | Error::Certificate(_) => Failure::Internal(e.to_string()),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

impl PartyArgs {
    fn load(&self) -> Result<Vec<StateSpace>, Failure> {
        match &self.composite {
            Some(path) => Ok(CompositeFile::load_composite(path)?.1),
            None => Ok(self
                .party
                .iter()
                .map(|p| load::<StateSpace>(p))
                .collect::<Result<_, _>>()?),
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Info { space } => {
            let s: StateSpace = load(&space)?;
            let extreme = remove_redundant_generators(&s)?.generators().len();
            let rays = effect_cone_rays(&s)?.len();
            println!("label: {}", s.label());
            println!(
                "dim {}, {} generators, {extreme} extreme, {rays} effect rays",
                s.ambient_dim(),
                s.generators().len()
            );
            Ok(0)
        }
        Command::Compose {
            parties,
            mode,
            out,
            enumerate_vertices,
        } => {
            let spaces = parties
                .iter()
                .map(|p| load::<StateSpace>(p))
                .collect::<Result<Vec<_>, _>>()?;
            let c = compose(mode.into(), spaces)?;
            if enumerate_vertices {
                c.vrep()?;
            }
            write_file(&out, &to_json(&CompositeFile::describe(&c)?))?;
            match c.hrep() {
                Some(h) if c.has_vrep() => println!(
                    "{} ({}): dim {}, {} inequalities, {} vertices",
                    c.label(),
                    c.mode(),
                    c.ambient_dim(),
                    h.inequalities.len(),
                    c.generators()?.len()
                ),
                Some(h) => println!(
                    "{} ({}): dim {}, {} inequalities",
                    c.label(),
                    c.mode(),
                    c.ambient_dim(),
                    h.inequalities.len()
                ),
                None => println!(
                    "{} ({}): dim {}, {} generators",
                    c.label(),
                    c.mode(),
                    c.ambient_dim(),
                    c.generators()?.len()
                ),
            }
            Ok(0)
        }
        Command::Separability {
            parties,
            state,
            out,
        } => {
            let spaces = parties.load()?;
            let state: StateFile = load(&state)?;
            let verdict = is_separable(&spaces, &state.state)?;
            if !verdict.verify(&spaces, &state.state)? {
                return Err(Failure::Internal("verdict failed re-verification".into()));
            }
            let json = to_json(&verdict);
            if let Some(out) = out {
                write_file(&out, &json)?;
            }
            print!("{json}");
            Ok(if verdict.is_separable() { 0 } else { 1 })
        }
        Command::WitnessVerify {
            parties,
            witness,
            state,
        } => {
            let spaces = parties.load()?;
            let witness: WitnessFile = load(&witness)?;
            let state: StateFile = load(&state)?;
            let ok = verify_witness(&spaces, witness.functional(), &state.state)?;
            println!("witness: {}", if ok { "VALID" } else { "INVALID" });
            Ok(if ok { 0 } else { 1 })
        }
        Command::VerifyUniversal {
            parties,
            target_dim,
            probes,
            seed,
        } => {
            let c = min_tensor(parties.load()?)?;
            let dim_w = c.simple_span_dim()?;
            let expected = c.ambient_dim();
            let mut rng = seeded(seed);
            let ok = check_universal(&c, target_dim, probes, &mut rng)?;
            let word = |b: bool| if b { "PASS" } else { "FAIL" };
            println!(
                "{}: dim W = {dim_w}, expected {expected}: {}",
                c.label(),
                word(dim_w == expected)
            );
            println!(
                "factorization into dim {target_dim} on {probes} random probes: {}",
                word(ok)
            );
            Ok(if ok && dim_w == expected { 0 } else { 1 })
        }
        Command::Demo { name, seed } => {
            let transcript = run_demo(name.into(), seed)?;
            print!("{}", transcript.render());
            Ok(if transcript.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
