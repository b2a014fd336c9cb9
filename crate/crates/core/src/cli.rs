//! Command-line front end. The binary only forwards `std::env::args` here.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analysis::{render_csv, render_markdown, table1_report, Table1Row};
use crate::codec::{
    deserialize_ct, deserialize_pk, deserialize_sk, serialize_ct, serialize_pk, serialize_sk,
};
use crate::kat::{default_entropy, generate, KatFile};
use crate::kem::{Kem, ENCAPS_COINS, KEYGEN_COINS};
use crate::params::ParamName;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Args(#[from] clap::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("--{flag}: {msg}")]
    Hex { flag: &'static str, msg: String },
    #[error(transparent)]
    Lib(#[from] crate::Error),
    #[error("os randomness unavailable: {0}")]
    Random(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "rudraksh",
    version,
    about = "Lightweight module-LWE KEM with an ASCON core"
)]
struct Cli {
    /// Parameter set.
    #[arg(long, global = true, env = "RUDRAKSH_PARAMS", default_value = "poly64", value_parser = parse_params)]
    params: ParamName,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen {
        #[arg(long)]
        out_pk: PathBuf,
        #[arg(long)]
        out_sk: PathBuf,
        /// 48 bytes of hex: seed_A || seed_se || z.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Encapsulate to a public key.
    Encaps {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        out_ct: PathBuf,
        #[arg(long)]
        out_ss: PathBuf,
        /// 16 bytes of hex used as the message.
        #[arg(long)]
        coins: Option<String>,
    },
    /// Decapsulate a ciphertext.
    Decaps {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        out_ss: PathBuf,
    },
    /// Write known-answer records.
    Kat {
        #[arg(long, default_value_t = 100)]
        count: u32,
        #[arg(long)]
        out: PathBuf,
        /// 48 bytes of hex; defaults to 00 01 .. 2f.
        #[arg(long)]
        entropy: Option<String>,
    },
    /// Regenerate a KAT file and compare it byte for byte.
    KatVerify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Failure probabilities, sizes and memory estimates.
    Analyze {
        /// All three parameter sets instead of `--params` only.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Median wall time of keygen, encaps and decaps.
    Bench {
        #[arg(long, default_value_t = 100)]
        iters: u32,
    },
}

fn parse_params(s: &str) -> Result<ParamName, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn hex_arg<const N: usize>(flag: &'static str, value: Option<&str>) -> Result<[u8; N], CliError> {
    match value {
        Some(h) => {
            let bytes = hex::decode(h.trim()).map_err(|e| CliError::Hex {
                flag,
                msg: e.to_string(),
            })?;
            bytes.try_into().map_err(|b: Vec<u8>| CliError::Hex {
                flag,
                msg: format!("expected {N} bytes, got {}", b.len()),
            })
        }
        None => {
            let mut out = [0u8; N];
            getrandom::getrandom(&mut out).map_err(|e| CliError::Random(e.to_string()))?;
            Ok(out)
        }
    }
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let kem = Kem::new(cli.params);
    let ps = kem.params();
    let io_err = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };

    match cli.command {
        Command::Keygen {
            out_pk,
            out_sk,
            seed,
        } => {
            let coins = hex_arg::<KEYGEN_COINS>("seed", seed.as_deref())?;
            let (pk, sk) = kem.keygen(&coins);
            write(&out_pk, &serialize_pk(&pk, ps))?;
            write(&out_sk, &serialize_sk(&sk, ps))?;
        }
        Command::Encaps {
            pk,
            out_ct,
            out_ss,
            coins,
        } => {
            let pk = deserialize_pk(&read(&pk)?, ps)?;
            let msg = hex_arg::<ENCAPS_COINS>("coins", coins.as_deref())?;
            let (ct, ss) = kem.encaps(&pk, &msg);
            write(&out_ct, &serialize_ct(&ct, ps))?;
            write(&out_ss, ss.as_bytes())?;
        }
        Command::Decaps { sk, ct, out_ss } => {
            let sk = deserialize_sk(&read(&sk)?, ps)?;
            let ct = deserialize_ct(&read(&ct)?, ps)?;
            write(&out_ss, kem.decaps(&sk, &ct).as_bytes())?;
        }
        Command::Kat {
            count,
            out,
            entropy,
        } => {
            let entropy = match entropy {
                Some(h) => hex_arg::<48>("entropy", Some(&h))?,
                None => default_entropy(),
            };
            write(
                &out,
                generate(cli.params, count, &entropy).to_rsp().as_bytes(),
            )?;
        }
        Command::KatVerify { file } => {
            let text = read(&file)?;
            let kat = KatFile::parse(&String::from_utf8_lossy(&text))?;
            kat.verify()?;
            writeln!(
                out,
                "{}: {} records verified ({})",
                file.display(),
                kat.records.len(),
                kat.params
            )
            .map_err(io_err)?;
        }
        Command::Analyze { all, format } => {
            let rows = if all {
                table1_report()?
            } else {
                vec![Table1Row::compute(cli.params)?]
            };
            let text = match format {
                Format::Markdown => render_markdown(&rows),
                Format::Csv => render_csv(&rows),
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
        }
        Command::Bench { iters } => {
            let iters = iters.max(1);
            let (mut kg, mut enc, mut dec) = (vec![], vec![], vec![]);
            for i in 0..iters {
                let mut coins = [0u8; KEYGEN_COINS];
                coins[..4].copy_from_slice(&i.to_le_bytes());
                let t = Instant::now();
                let (pk, sk) = kem.keygen(&coins);
                kg.push(t.elapsed());
                let t = Instant::now();
                let (ct, ss) = kem.encaps(&pk, &[i as u8; ENCAPS_COINS]);
                enc.push(t.elapsed());
                let t = Instant::now();
                let ss2 = kem.decaps(&sk, &ct);
                dec.push(t.elapsed());
                assert_eq!(ss, ss2);
            }
            writeln!(out, "{} over {iters} iterations (median):", ps.name.label())
                .map_err(io_err)?;
            for (name, samples) in [("keygen", kg), ("encaps", enc), ("decaps", dec)] {
                writeln!(
                    out,
                    "  {name:<7} {:>10.1} µs",
                    median(samples).as_secs_f64() * 1e6
                )
                .map_err(io_err)?;
            }
        }
    }
    Ok(())
}
