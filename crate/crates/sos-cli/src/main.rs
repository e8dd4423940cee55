//! `sos`: command-line access to Sós permutations and their shape predictions.

mod commands;
mod config;
mod svg;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use sos_core::Error;

use config::RunConfig;

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_DOMAIN),
            };
        }
    };
    match commands::run(&cfg) {
        Ok(out) => {
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, &out.body),
                None => std::io::stdout().write_all(out.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("sos: cannot write output: {e}");
                return ExitCode::from(EXIT_RESOURCE);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("sos: a predicted bound was violated");
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("sos: {e}");
            ExitCode::from(match e {
                Error::Resource(_) => EXIT_RESOURCE,
                _ => EXIT_DOMAIN,
            })
        }
    }
}
