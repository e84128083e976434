use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wildrank_cli::{certify, classify, parse_quiver_spec, recheck_text, tilt, variety, CertifyOptions, Outcome, QuiverSpec, TiltOptions, VarietyOptions};

#[derive(Parser)]
#[command(name = "wildrank", version, about = "Rank bounds and probes for bound-quiver algebras")]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Representation type of each component of a path algebra.
    Classify { file: PathBuf },
    /// Search covering windows for a wild factor and write a rank certificate.
    Certify {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long = "max-dim", default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the certificate; printed after the report otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_witness: bool,
    },
    /// Number-of-parameters probe on module varieties.
    Variety {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Preprojectives, tilting modules and their endomorphism algebras.
    Tilt {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Directory for the endomorphism algebra specs.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Re-check the arithmetic of a certificate file.
    Recheck { file: PathBuf },
}

fn read(path: &Path) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn load(path: &Path) -> Result<QuiverSpec, ExitCode> {
    let text = read(path)?;
    parse_quiver_spec(&text).map_err(|e| {
        eprintln!("{}:{e}", path.display());
        ExitCode::from(2)
    })
}

fn write(path: &Path, contents: &str) -> Result<(), ExitCode> {
    fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn emit(out: &Outcome, format: Format) {
    match format {
        Format::Human => print!("{}", out.human),
        Format::Kv => print!("{}", out.kv.render()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let outcome = match cli.command {
        Command::Classify { file } => classify(&load(&file)?),
        Command::Certify { file, radius, samples, max_dim, seed, out, corrupt_witness } => {
            let spec = load(&file)?;
            let opts = CertifyOptions { radius, samples, max_dim, seed, corrupt_witness };
            let outcome = certify(&spec, &opts);
            emit(&outcome, cli.format);
            if let Some(cert) = &outcome.certificate {
                match &out {
                    Some(path) => write(path, cert)?,
                    None if cli.format == Format::Human => print!("\n{cert}"),
                    None => {}
                }
            }
            return Ok(ExitCode::from(outcome.status.code() as u8));
        }
        Command::Variety { file, nmax, samples, seed } => variety(&load(&file)?, &VarietyOptions { n_max: nmax, samples, seed }),
        Command::Tilt { file, depth, export } => {
            let outcome = tilt(&load(&file)?, &TiltOptions { depth });
            if let Some(dir) = &export {
                fs::create_dir_all(dir).map_err(|e| {
                    eprintln!("error: cannot create {}: {e}", dir.display());
                    ExitCode::from(2)
                })?;
                for (name, contents) in &outcome.exports {
                    write(&dir.join(name), contents)?;
                }
            }
            outcome
        }
        Command::Recheck { file } => recheck_text(&read(&file)?),
    };
    emit(&outcome, cli.format);
    Ok(ExitCode::from(outcome.status.code() as u8))
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
