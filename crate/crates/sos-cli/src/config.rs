use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sos_core::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// Command line of `sos`; also the run configuration.
#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "sos", version, about = "Sós permutations, Schensted shapes and their two-slope limit")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Decimal digits in rounded output.
    #[arg(long, global = true, default_value_t = 6)]
    pub digits: u32,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct NRange {
    /// A single n.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub n_from: Option<u64>,
    #[arg(long)]
    pub n_to: Option<u64>,
    #[arg(long)]
    pub n_step: Option<u64>,
    /// n = 2^k for k from this exponent…
    #[arg(long)]
    pub n_log2_from: Option<u32>,
    /// …through this one.
    #[arg(long)]
    pub n_log2_to: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print w(n, α).
    Perm {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: u64,
        /// Print w⁻¹ instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Print w(n, α) and its Schensted shape.
    Shape {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: u64,
        /// Also draw the P and Q tableaux.
        #[arg(long)]
        tableaux: bool,
    },
    /// Predicted arm, leg, corner and boundary.
    Predict {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: u64,
    },
    /// Compare the shape with every prediction; exit 2 on any violated bound.
    Verify {
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        range: NRange,
    },
    /// Verify over a range of n for one or more α.
    Scan {
        /// Comma-separated or repeated.
        #[arg(long, required = true, value_delimiter = ',')]
        alpha: Vec<String>,
        #[command(flatten)]
        range: NRange,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Emit arm/√n and leg/√n only.
        #[arg(long)]
        armleg: bool,
    },
    /// Every Sós permutation of order n with its Farey interval.
    Enumerate {
        #[arg(long)]
        n: u64,
    },
    /// ℓ⁺ and ℓ⁻ at every point of L_{a,b}.
    LatticeDump {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// SVG of the staircase with the predicted boundary.
    Plot {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: u64,
        /// Overlay the limit curve of a random permutation.
        #[arg(long)]
        lsvk: bool,
    },
}

impl NRange {
    pub fn values(&self) -> Result<Vec<u64>> {
        match (self.n, self.n_from, self.n_to, self.n_log2_from, self.n_log2_to) {
            (Some(n), None, None, None, None) => Ok(vec![n]),
            (None, Some(a), Some(b), None, None) => {
                let step = self.n_step.unwrap_or(1);
                if step == 0 || a > b {
                    return Err(Error::Parse(format!("empty range {a}..={b} step {step}")));
                }
                Ok((a..=b).step_by(step as usize).collect())
            }
            (None, None, None, Some(a), Some(b)) => {
                if a > b || b > 62 {
                    return Err(Error::Parse(format!("bad exponent range {a}..={b}")));
                }
                Ok((a..=b).map(|k| 1u64 << k).collect())
            }
            _ => Err(Error::Parse(
                "give --n, or --n-from/--n-to [--n-step], or --n-log2-from/--n-log2-to".into(),
            )),
        }
    }

    fn push_args(&self, out: &mut Vec<String>) {
        let mut put = |flag: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push(flag.into());
                out.push(v);
            }
        };
        put("--n", self.n.map(|v| v.to_string()));
        put("--n-from", self.n_from.map(|v| v.to_string()));
        put("--n-to", self.n_to.map(|v| v.to_string()));
        put("--n-step", self.n_step.map(|v| v.to_string()));
        put("--n-log2-from", self.n_log2_from.map(|v| v.to_string()));
        put("--n-log2-to", self.n_log2_to.map(|v| v.to_string()));
    }
}

impl RunConfig {
    /// Arguments that parse back to this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut a: Vec<String> = vec!["sos".into()];
        let flag = |a: &mut Vec<String>, f: &str, v: String| {
            a.push(f.into());
            a.push(v);
        };
        match &self.command {
            Command::Perm { alpha, n, inverse } => {
                a.push("perm".into());
                flag(&mut a, "--alpha", alpha.clone());
                flag(&mut a, "--n", n.to_string());
                if *inverse {
                    a.push("--inverse".into());
                }
            }
            Command::Shape { alpha, n, tableaux } => {
                a.push("shape".into());
                flag(&mut a, "--alpha", alpha.clone());
                flag(&mut a, "--n", n.to_string());
                if *tableaux {
                    a.push("--tableaux".into());
                }
            }
            Command::Predict { alpha, n } => {
                a.push("predict".into());
                flag(&mut a, "--alpha", alpha.clone());
                flag(&mut a, "--n", n.to_string());
            }
            Command::Verify { alpha, range } => {
                a.push("verify".into());
                flag(&mut a, "--alpha", alpha.clone());
                range.push_args(&mut a);
            }
            Command::Scan { alpha, range, jobs, armleg } => {
                a.push("scan".into());
                for al in alpha {
                    flag(&mut a, "--alpha", al.clone());
                }
                range.push_args(&mut a);
                flag(&mut a, "--jobs", jobs.to_string());
                if *armleg {
                    a.push("--armleg".into());
                }
            }
            Command::Enumerate { n } => {
                a.push("enumerate".into());
                flag(&mut a, "--n", n.to_string());
            }
            Command::LatticeDump { a: x, b } => {
                a.push("lattice-dump".into());
                flag(&mut a, "--a", x.clone());
                flag(&mut a, "--b", b.clone());
            }
            Command::Plot { alpha, n, lsvk } => {
                a.push("plot".into());
                flag(&mut a, "--alpha", alpha.clone());
                flag(&mut a, "--n", n.to_string());
                if *lsvk {
                    a.push("--lsvk".into());
                }
            }
        }
        if let Some(f) = self.format {
            flag(&mut a, "--format", f.to_string());
        }
        flag(&mut a, "--digits", self.digits.to_string());
        if let Some(p) = &self.out {
            flag(&mut a, "--out", p.display().to_string());
        }
        a
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_args().join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RunConfig {
        RunConfig::try_parse_from(s.split_whitespace()).unwrap()
    }

    #[test]
    fn round_trips() {
        for line in [
            "sos perm --alpha 3/10 --n 7 --inverse",
            "sos shape --alpha e --n 20 --tableaux --format json",
            "sos verify --alpha e --n 4700 --format json --digits 5",
            "sos scan --alpha e,golden --n-log2-from 1 --n-log2-to 10 --jobs 4 --armleg --format csv --out x.csv",
            "sos scan --alpha sqrt2 --n-from 10 --n-to 100 --n-step 5",
            "sos enumerate --n 4 --format csv",
            "sos lattice-dump --a 51 --b 71",
            "sos plot --alpha e --n 4700 --lsvk --out fig.svg",
            "sos predict --alpha 25/211 --n 210",
        ] {
            let c = parse(line);
            let again = RunConfig::try_parse_from(c.to_args()).unwrap();
            assert_eq!(c, again, "{line}");
            assert_eq!(again.to_string().split_whitespace().next(), Some("sos"));
        }
    }

    #[test]
    fn ranges() {
        let r = |s: &str| match parse(s).command {
            Command::Verify { range, .. } => range.values(),
            _ => unreachable!(),
        };
        assert_eq!(r("sos verify --alpha e --n 5").unwrap(), vec![5]);
        assert_eq!(r("sos verify --alpha e --n-from 5 --n-to 11 --n-step 3").unwrap(), vec![5, 8, 11]);
        assert_eq!(r("sos verify --alpha e --n-log2-from 1 --n-log2-to 3").unwrap(), vec![2, 4, 8]);
        assert!(r("sos verify --alpha e").is_err());
        assert!(r("sos verify --alpha e --n 5 --n-from 2 --n-to 3").is_err());
    }
}
