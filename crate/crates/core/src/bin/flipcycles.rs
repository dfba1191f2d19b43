//! Command line front end: generate balanced Gray codes and rainbow cycles,
//! verify previously written artifact files, and summarize them.
//!
//! Exit codes: 0 success / verified, 1 verification failure, 2 usage or
//! parameter error.

use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flipcycles::assoc_rainbow::r_rainbow_cycle;
use flipcycles::balanced_all::{balanced, lift_rainbow};
use flipcycles::cadj::balanced_cadj;
use flipcycles::error::Error;
use flipcycles::format::{Artifact, Format, Payload, Target};
use flipcycles::permutahedron::{rainbow2, rainbow3};
use flipcycles::verify::verify_artifact;

#[derive(Parser)]
#[command(name = "flipcycles", version, about = "Balanced Gray codes and rainbow cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// Balanced code on S_n, all transpositions
    PermAll,
    /// Balanced code on S_n, cyclically adjacent transpositions
    PermCadj,
    /// 2- or 3-rainbow cycle, adjacent transpositions
    PermAdjRainbow,
    /// r-rainbow cycle on triangulations of the n-gon
    Assoc,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct GenArgs {
    target: TargetArg,
    /// Order: permutation length or polygon size
    #[arg(long)]
    n: u32,
    /// Color multiplicity (assoc: 1..=2n+2; perm-adj-rainbow: 2 or 3)
    #[arg(long)]
    r: Option<u32>,
    /// Base order for rainbow lifting (perm-all only)
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a code and write it out
    Gen(GenArgs),
    /// Re-certify a previously written artifact ("-" reads stdin)
    Verify { path: String },
    /// Print a short summary of an artifact ("-" reads stdin)
    Info { path: String },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn generate(a: &GenArgs) -> Result<Artifact, Error> {
    match a.target {
        TargetArg::PermAll => {
            if a.r.is_some() {
                return Err(Error::domain("--r is not valid for perm-all"));
            }
            let payload = match a.m {
                Some(m) => Payload::Perm(lift_rainbow(&balanced(m)?, a.n)?),
                None => Payload::Perm(balanced(a.n)?.code),
            };
            Ok(Artifact {
                target: Target::PermAll,
                n: a.n,
                r: None,
                m: a.m,
                payload,
            })
        }
        TargetArg::PermCadj => {
            if a.r.is_some() || a.m.is_some() {
                return Err(Error::domain("--r/--m are not valid for perm-cadj"));
            }
            Ok(Artifact {
                target: Target::PermCadj,
                n: a.n,
                r: None,
                m: None,
                payload: Payload::Perm(balanced_cadj(a.n)?.code),
            })
        }
        TargetArg::PermAdjRainbow => {
            if a.m.is_some() {
                return Err(Error::domain("--m is not valid for perm-adj-rainbow"));
            }
            let r = a.r.ok_or_else(|| Error::domain("perm-adj-rainbow needs --r"))?;
            let code = match r {
                2 => rainbow2(a.n)?,
                3 => rainbow3(a.n)?,
                _ => return Err(Error::domain("--r must be 2 or 3")),
            };
            Ok(Artifact {
                target: Target::PermAdjRainbow,
                n: a.n,
                r: Some(r),
                m: None,
                payload: Payload::Perm(code.code),
            })
        }
        TargetArg::Assoc => {
            if a.m.is_some() {
                return Err(Error::domain("--m is not valid for assoc"));
            }
            let r = a.r.ok_or_else(|| Error::domain("assoc needs --r"))?;
            let c = r_rainbow_cycle(a.n, r)?;
            Ok(Artifact {
                target: Target::Assoc,
                n: a.n,
                r: Some(r),
                m: None,
                payload: Payload::Assoc(c),
            })
        }
    }
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen(args) => {
            let artifact = match generate(&args) {
                Ok(a) => a,
                Err(e) => return usage_error(&e.to_string()),
            };
            let rendered = artifact.render(match args.format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            });
            match &args.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, rendered) {
                        eprintln!("error: cannot write {path}: {e}");
                        return ExitCode::from(1);
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::SUCCESS
        }
        Command::Verify { path } => {
            let input = match read_input(&path) {
                Ok(s) => s,
                Err(e) => return usage_error(&format!("cannot read {path}: {e}")),
            };
            let artifact = match Artifact::parse(&input) {
                Ok(a) => a,
                Err(e) => return usage_error(&e.to_string()),
            };
            let cert = match verify_artifact(&artifact) {
                Ok(c) => c,
                Err(e) => return usage_error(&e.to_string()),
            };
            print!("{}", cert.render());
            if cert.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Info { path } => {
            let input = match read_input(&path) {
                Ok(s) => s,
                Err(e) => return usage_error(&format!("cannot read {path}: {e}")),
            };
            let artifact = match Artifact::parse(&input) {
                Ok(a) => a,
                Err(e) => return usage_error(&e.to_string()),
            };
            println!("kind: {}", artifact.target.as_str());
            println!("n: {}", artifact.n);
            if let Some(r) = artifact.r {
                println!("r: {r}");
            }
            if let Some(m) = artifact.m {
                println!("m: {m}");
            }
            match &artifact.payload {
                Payload::Perm(seq) => {
                    println!("flips: {}", seq.flips().len());
                    println!("cyclic: {}", seq.cyclic());
                }
                Payload::Assoc(c) => {
                    println!("flips: {}", c.flips.len());
                    println!("cyclic: true");
                }
            }
            ExitCode::SUCCESS
        }
    }
}
