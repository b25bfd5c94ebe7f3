mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use palwidth::identities::run_suite;
use palwidth::width::{
    decompose_2n, decompose_free, load_or_build, memory_estimate, support_certificate, Claim,
    LengthTable,
};
use palwidth::{palindromes, BuildOptions, GroupSpec, NormalForm, RankLimits, Word};

use output::{Format, OutputRecord};

#[derive(Debug, Parser)]
#[command(name = "palwidth", version, about = "Palindromic lengths in class-2 nilpotent groups")]
struct Cli {
    #[arg(long, global = true)]
    rank: Option<usize>,
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    class: u8,
    /// Work modulo the squares of the generators (letters `y_i`).
    #[arg(long, global = true)]
    quotient: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory holding cached length tables.
    #[arg(long, global = true, env = "PALWIDTH_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Raise the rank cap for exhaustive search.
    #[arg(long, global = true)]
    max_rank_override: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Collected normal form of a word.
    Normalize { word: String },
    /// Exact palindromic length with a shortest witness.
    Length { word: String },
    /// Largest palindromic length in the quotient.
    Width,
    /// Number of elements of each length.
    Spectrum,
    /// Every element with its length and witness.
    Table,
    /// Search-free palindromic factorization.
    Decompose { word: String },
    /// Commutator-support statements behind the lower bound.
    Certify,
    /// Randomized checks of the factorization identities.
    Identities,
    /// Packed codes of all palindromic elements.
    Palindromes,
}

struct Outcome {
    record: OutputRecord,
    ok: bool,
}

impl From<OutputRecord> for Outcome {
    fn from(record: OutputRecord) -> Self {
        Outcome { record, ok: true }
    }
}

impl Cli {
    fn spec(&self) -> anyhow::Result<GroupSpec> {
        let rank = self.rank.context("--rank is required for this command")?;
        Ok(GroupSpec::new(rank, self.class, self.quotient)?)
    }

    fn quotient_spec(&self) -> anyhow::Result<GroupSpec> {
        let spec = self.spec()?;
        if !spec.is_quotient() {
            bail!("this command needs --quotient (exhaustive search runs in the finite quotient)");
        }
        Ok(spec)
    }

    fn options(&self) -> BuildOptions {
        BuildOptions {
            limits: self
                .max_rank_override
                .map(RankLimits::with_override)
                .unwrap_or_default(),
            parallel: true,
        }
    }

    fn table(&self) -> anyhow::Result<LengthTable> {
        let spec = self.quotient_spec()?;
        let options = self.options();
        options.limits.check(&spec)?;
        if memory_estimate(&spec) > 1 << 30 {
            eprintln!(
                "note: building the table for {spec} needs about {} MiB",
                memory_estimate(&spec) >> 20
            );
        }
        Ok(load_or_build(&spec, &options, self.cache.as_deref())?)
    }

    fn element(&self, word: &str) -> anyhow::Result<NormalForm> {
        let spec = self.spec()?;
        let w = Word::parse(word, &spec).with_context(|| format!("cannot parse {word:?}"))?;
        Ok(NormalForm::eval(&w, &spec)?)
    }

    fn run(&self) -> anyhow::Result<Outcome> {
        Ok(match &self.command {
            Command::Normalize { word } => {
                let g = self.element(word)?;
                if g.spec().is_quotient() {
                    let mut r = OutputRecord::new(vec!["normal_form", "code", "bits"]);
                    r.push(vec![json!(g.render()), json!(g.code()?), json!(g.bit_string()?)]);
                    r
                } else {
                    OutputRecord::single("normal_form", g.render())
                }
                .into()
            }
            Command::Length { word } => {
                let table = self.table()?;
                let g = self.element(word)?;
                let witness = table.witness(&g)?;
                let mut r = OutputRecord::new(vec!["element", "length", "witness"]);
                r.push(vec![
                    json!(g.render()),
                    json!(table.palindromic_length(&g)?),
                    json!(witness.render()),
                ]);
                r.into()
            }
            Command::Width => OutputRecord::single("width", self.table()?.width()).into(),
            Command::Spectrum => {
                let mut r = OutputRecord::new(vec!["length", "count"]);
                for (len, count) in self.table()?.spectrum() {
                    r.push(vec![json!(len), json!(count)]);
                }
                r.into()
            }
            Command::Table => {
                let mut r = OutputRecord::new(vec!["code", "alpha", "beta", "length", "witness"]);
                for row in self.table()?.rows()? {
                    r.push(vec![
                        json!(row.code),
                        json!(row.alpha),
                        json!(row.beta),
                        json!(row.length),
                        json!(row.witness),
                    ]);
                }
                r.into()
            }
            Command::Decompose { word } => {
                let g = self.element(word)?;
                let f = if g.spec().is_quotient() {
                    decompose_2n(&g)?
                } else {
                    decompose_free(&g)?
                };
                let verified = f.verify()?;
                let mut r = OutputRecord::new(vec!["element", "factors", "factorization", "verified"]);
                r.push(vec![json!(g.render()), json!(f.len()), json!(f.render()), json!(verified)]);
                Outcome {
                    record: r,
                    ok: verified,
                }
            }
            Command::Certify => {
                let n = self.rank.context("--rank is required for this command")?;
                let cert = support_certificate(n)?;
                let mut r = OutputRecord::new(vec!["statement", "holds", "missing"]);
                for s in &cert.statements {
                    let name = match s.claim {
                        Claim::Cover => "cover".to_string(),
                        Claim::DropOne { i } => format!("drop_one {i}"),
                        Claim::DropTwo { i, j } => format!("drop_two {i} {j}"),
                        Claim::Parity => "parity".to_string(),
                    };
                    let missing = s
                        .missing
                        .map(|(i, j)| json!(format!("z{i}.{j}")))
                        .unwrap_or(Value::Null);
                    r.push(vec![json!(name), json!(s.holds), missing]);
                }
                Outcome {
                    record: r,
                    ok: cert.all_hold(),
                }
            }
            Command::Identities => {
                let reports = run_suite(self.trials, self.seed);
                let mut r =
                    OutputRecord::new(vec!["identity", "trials", "failure_count", "failures"]);
                for rep in &reports {
                    r.push(vec![
                        json!(rep.identity),
                        json!(rep.trials),
                        json!(rep.failure_count),
                        serde_json::to_value(&rep.failures)?,
                    ]);
                }
                Outcome {
                    record: r,
                    ok: reports.iter().all(|rep| rep.passed()),
                }
            }
            Command::Palindromes => {
                let spec = self.quotient_spec()?;
                let mut r = OutputRecord::new(vec!["code"]);
                for code in palindromes::enumerate_codes(&spec)? {
                    r.push(vec![json!(code)]);
                }
                r.into()
            }
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(outcome) => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            if let Err(e) = outcome.record.write(cli.format, &mut out).and_then(|_| Ok(out.flush()?)) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
