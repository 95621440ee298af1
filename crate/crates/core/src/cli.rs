//! Command-line front end.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage, parse or guard errors.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::axioms::{check_axioms, Axiom, AxiomReport};
use crate::bias::{bias_report_for, posterior_lines};
use crate::designs::binary_design;
use crate::enumeration::{enumerate_good_announcements, special_point_announcements};
use crate::error::{Error, Result};
use crate::limits::{WorkLimit, DEFAULT_MAX_WORK};
use crate::model::{parse_announcement, Announcement, CardSet, Parameters};
use crate::protocols::{build_protocol, sample_seeded, validate_protocol, ProtocolKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cardeal", version, about = "Check, build and analyze card-deal announcements")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Override the exhaustive-work guard.
    #[arg(long, env = "CARDEAL_MAX_WORK", global = true)]
    pub max_work: Option<u128>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an announcement against CA1–CA5.
    Verify(VerifyArgs),
    /// Build an announcement from a design construction.
    Construct {
        #[command(subcommand)]
        design: Construction,
    },
    /// List good announcements containing a hand.
    Enumerate(EnumerateArgs),
    /// Draw announcements from a protocol.
    Sample(SampleArgs),
    /// Exact posterior analysis of a protocol.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Deal parameters `a,b,c`.
    #[arg(long)]
    pub params: String,
    #[arg(long, conflicts_with_all = ["stdin", "file"])]
    pub announcement: Option<String>,
    /// Read the announcement from standard input.
    #[arg(long, conflicts_with = "file")]
    pub stdin: bool,
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Comma separated axioms to require, e.g. `ca1,ca2,ca3`.
    #[arg(long, default_value = "ca1,ca2,ca3,ca4,ca5")]
    pub axioms: String,
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// The binary design on `--bits` bits.
    Binary {
        #[arg(long)]
        bits: u32,
    },
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub params: String,
    #[arg(long)]
    pub hand: String,
    /// Number of lines per announcement.
    #[arg(long, default_value_t = 5)]
    pub size: usize,
    /// Print only the number of announcements.
    #[arg(long)]
    pub count: bool,
    /// Keep only announcements whose triple point is this card.
    #[arg(long)]
    pub special_point: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, default_value = "3,3,1")]
    pub params: String,
    /// uniform60 | fact1 | fact2-conditional | fact2-literal
    #[arg(long)]
    pub protocol: String,
    #[arg(long)]
    pub hand: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Public triple point for the fact2 protocols.
    #[arg(long)]
    pub point: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, default_value = "3,3,1")]
    pub params: String,
    #[arg(long)]
    pub protocol: String,
    /// Eavesdropper's cards; omitted for an outside observer.
    #[arg(long)]
    pub observer: Option<String>,
    #[arg(long)]
    pub point: Option<usize>,
    /// Show the posterior table of this announcement only.
    #[arg(long)]
    pub announcement: Option<String>,
}

/// Parses a card set written like a line (`035`, or `0,3,11`).
pub fn parse_cards(text: &str, v: usize) -> Result<CardSet> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(CardSet::EMPTY);
    }
    let cards: Vec<usize> = if text.contains(',') || v > 10 {
        text.split(',')
            .enumerate()
            .map(|(i, part)| {
                part.trim().parse().map_err(|_| Error::Parse {
                    column: i + 1,
                    message: format!("expected a card number, found {part:?}"),
                })
            })
            .collect::<Result<_>>()?
    } else {
        text.char_indices()
            .map(|(i, ch)| {
                ch.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse {
                    column: i + 1,
                    message: format!("unexpected character {ch:?}"),
                })
            })
            .collect::<Result<_>>()?
    };
    CardSet::from_cards(cards, v)
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(&cli, stdin, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.error);
            if let Some(context) = failure.context {
                let _ = writeln!(err, "{context}");
            }
            EXIT_USAGE
        }
    }
}

/// An error together with an optional caret line pointing into the input.
#[derive(Debug)]
pub struct Failure {
    pub error: Error,
    pub context: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, context: None }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            error: Error::Unsupported(format!("i/o: {e}")),
            context: None,
        }
    }
}

fn annotate(text: &str, error: Error) -> Failure {
    let context = match &error {
        Error::Parse { column, .. } if !text.contains('\n') => {
            Some(format!("  {text}\n  {}^", " ".repeat(column.saturating_sub(1))))
        }
        _ => None,
    };
    Failure { error, context }
}

fn parse_with_context(text: &str, params: &Parameters) -> std::result::Result<Announcement, Failure> {
    parse_announcement(text, params).map_err(|e| annotate(text.trim_end(), e))
}

pub fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let limit = WorkLimit(cli.max_work.unwrap_or(DEFAULT_MAX_WORK));
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Verify(args) => verify(args, limit, json, stdin, out),
        Command::Construct { design: Construction::Binary { bits } } => {
            let ann = binary_design(*bits)?;
            let v = 1usize << bits;
            if json {
                let lines: Vec<Vec<usize>> = ann.lines().iter().map(|l| l.to_vec()).collect();
                writeln!(out, "{}", serde_json::to_string(&lines).expect("serializes"))?;
            } else {
                writeln!(out, "{}", ann.to_compact(v))?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate(args) => enumerate(args, limit, json, out),
        Command::Sample(args) => sample(args, limit, json, out),
        Command::Analyze(args) => analyze(args, limit, json, out),
    }
}

fn verify(
    args: &VerifyArgs,
    limit: WorkLimit,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let params = Parameters::parse(&args.params)?;
    let text = match (&args.announcement, args.stdin, &args.file) {
        (Some(text), _, _) => text.clone(),
        (None, true, _) => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf)?;
            buf
        }
        (None, false, Some(path)) => std::fs::read_to_string(path)?,
        (None, false, None) => {
            return Err(Error::Unsupported(
                "give --announcement, --stdin or --file".into(),
            )
            .into())
        }
    };
    let ann = parse_with_context(&text, &params)?;
    let selected = args
        .axioms
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Axiom::parse)
        .collect::<Result<Vec<_>>>()?;
    let report = check_axioms(&ann, &params, limit)?;
    let pass = selected.iter().all(|&a| report.passes(a));
    if json {
        let mut doc = report.to_json();
        doc["selected"] = serde_json::json!(selected.iter().map(|a| a.name()).collect::<Vec<_>>());
        doc["pass"] = serde_json::json!(pass);
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
    } else {
        write_verify_text(out, &ann, &report, &selected, pass)?;
    }
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn braces(set: CardSet) -> String {
    format!("{{{}}}", set.to_vec().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn write_verify_text(
    out: &mut dyn Write,
    ann: &Announcement,
    report: &AxiomReport,
    selected: &[Axiom],
    pass: bool,
) -> std::io::Result<()> {
    let v = report.params.v;
    writeln!(out, "announcement {} under {}", ann.to_compact(v), report.params)?;
    for &axiom in selected {
        let verdict = if report.passes(axiom) { "pass" } else { "FAIL" };
        write!(out, "{} {verdict}", axiom.name())?;
        match axiom {
            Axiom::Ca1 => {
                if let Some(w) = &report.ca1.witness {
                    let lines: Vec<String> = w.lines.iter().map(|l| l.to_compact(v)).collect();
                    write!(
                        out,
                        ": X={} avoided by {} ({} violating b-sets)",
                        braces(w.bset),
                        lines.join(" "),
                        report.ca1.violations
                    )?;
                }
            }
            Axiom::Ca2 => {
                if let Some(w) = report.ca2.witness() {
                    write!(out, ": X={} leaves common cards {}", braces(w.cset), braces(w.common))?;
                }
            }
            Axiom::Ca3 => {
                if let Some(w) = report.ca3.witness() {
                    write!(out, ": X={} leaves cards {} uncovered", braces(w.cset), braces(w.missing))?;
                }
            }
            Axiom::Ca4 | Axiom::Ca5 => {
                let (verdict, symbol) = if axiom == Axiom::Ca4 {
                    (&report.ca4, "n")
                } else {
                    (&report.ca5, "m")
                };
                if verdict.pass {
                    let mut values: Vec<usize> = verdict.table.values().copied().collect();
                    values.dedup();
                    if values.len() == 1 {
                        write!(out, ": {symbol}={} for every c-set", values[0])?;
                    } else {
                        let table: Vec<String> = verdict
                            .table
                            .iter()
                            .map(|(x, n)| format!("{}:{n}", braces(*x)))
                            .collect();
                        write!(out, ": {symbol} = {}", table.join(" "))?;
                    }
                } else {
                    let sets: Vec<String> = verdict.witnesses.iter().map(|w| braces(w.cset)).collect();
                    write!(out, ": witness X={}", sets.join(", X="))?;
                    for w in &verdict.witnesses {
                        let counts: Vec<String> =
                            w.counts.iter().map(|(card, n)| format!("{card}:{n}")).collect();
                        write!(out, "\n    X={} counts {}", braces(w.cset), counts.join(" "))?;
                    }
                }
            }
        }
        writeln!(out)?;
    }
    writeln!(out, "{}", if pass { "result: pass" } else { "result: FAIL" })
}

fn enumerate(args: &EnumerateArgs, limit: WorkLimit, json: bool, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let params = Parameters::parse(&args.params)?;
    let hand = parse_cards(&args.hand, params.v).map_err(|e| annotate(&args.hand, e))?;
    let anns = match args.special_point {
        Some(p) => {
            if args.size != 5 {
                return Err(Error::Unsupported("--special-point needs --size 5".into()).into());
            }
            special_point_announcements(&params, hand, p, limit)?
        }
        None => enumerate_good_announcements(&params, hand, args.size, limit)?,
    };
    if args.count {
        if json {
            writeln!(out, "{}", serde_json::json!({ "count": anns.len() }))?;
        } else {
            writeln!(out, "{}", anns.len())?;
        }
    } else if json {
        let list: Vec<String> = anns.iter().map(|a| a.to_compact(params.v)).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&list).expect("serializes"))?;
    } else {
        for ann in &anns {
            writeln!(out, "{}", ann.to_compact(params.v))?;
        }
    }
    Ok(EXIT_OK)
}

fn sample(args: &SampleArgs, limit: WorkLimit, json: bool, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let params = Parameters::parse(&args.params)?;
    let kind = ProtocolKind::parse(&args.protocol, args.point)?;
    let hand = parse_cards(&args.hand, params.v).map_err(|e| annotate(&args.hand, e))?;
    let proto = build_protocol(kind, &params, limit)?;
    let draws = sample_seeded(&proto, hand, args.seed, args.n)?;
    if json {
        let doc = serde_json::json!({
            "protocol": proto.name,
            "hand": hand,
            "seed": args.seed,
            "draws": draws.iter().map(|a| a.to_compact(params.v)).collect::<Vec<_>>(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
    } else {
        for ann in &draws {
            writeln!(out, "{}", ann.to_compact(params.v))?;
        }
    }
    Ok(EXIT_OK)
}

fn analyze(args: &AnalyzeArgs, limit: WorkLimit, json: bool, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let params = Parameters::parse(&args.params)?;
    let kind = ProtocolKind::parse(&args.protocol, args.point)?;
    let observer = match &args.observer {
        Some(text) => parse_cards(text, params.v).map_err(|e| annotate(text, e))?,
        None => CardSet::EMPTY,
    };
    let proto = build_protocol(kind, &params, limit)?;
    let validation = validate_protocol(&proto);
    let v = params.v;

    if let Some(text) = &args.announcement {
        let ann = parse_with_context(text, &params)?;
        let table = posterior_lines(&proto, &ann, observer)?;
        if json {
            writeln!(out, "{}", serde_json::to_string_pretty(&table.to_json(v)).expect("serializes"))?;
        } else {
            writeln!(out, "protocol {} announcement {} observer {}", proto.name, ann.to_compact(v), braces(observer))?;
            for (line, p) in &table.posteriors {
                writeln!(out, "  {} {p}", line.to_compact(v))?;
            }
        }
        return Ok(if validation.valid { EXIT_OK } else { EXIT_CHECK_FAILED });
    }

    let report = bias_report_for(&proto, observer)?;
    if json {
        let mut doc = report.to_json(v);
        doc["validation"] = serde_json::to_value(&validation).expect("serializes");
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))?;
    } else {
        writeln!(out, "protocol {}", report.protocol)?;
        if report.literal_reading {
            writeln!(out, "reading: literal (hand-class weights applied)")?;
        }
        writeln!(out, "observer {}", braces(observer))?;
        writeln!(out, "valid {}", validation.valid)?;
        writeln!(out, "announcements {}", report.announcements.len())?;
        let triples: Vec<String> = report.triple_posteriors().iter().map(|p| p.to_string()).collect();
        writeln!(out, "P(triple in hand | announcement) {}", triples.join(" "))?;
        writeln!(out, "P(triple in hand) {}", report.class_triple_in_hand)?;
        writeln!(out, "max line deviation {}", report.max_line_deviation)?;
        writeln!(out, "references: prior 3/7, uniform 3/5, even 1/2")?;
    }
    Ok(if validation.valid { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cardeal").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn verify_good() {
        let (code, out, _) = call(
            &["verify", "--params", "3,3,1", "--announcement", "012 034 056 135 246", "--axioms", "ca1,ca2,ca3"],
            "",
        );
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn verify_ca4_fails_with_witness() {
        let (code, out, _) = call(
            &["verify", "--params", "3,3,1", "--announcement", "012 034 056 135 246", "--axioms", "ca4"],
            "",
        );
        assert_eq!(code, 1);
        assert!(out.contains("X={5} counts 0:2 1:1 2:2"), "{out}");
    }

    #[test]
    fn pipe_construct_into_verify() {
        let (code, built, _) = call(&["construct", "binary", "--bits", "3"], "");
        assert_eq!(code, 0);
        let (code, out, _) = call(
            &["verify", "--params", "4,3,1", "--axioms", "ca1,ca2,ca3,ca4", "--stdin"],
            &built,
        );
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("CA4 pass: n=4 for every c-set"), "{out}");
    }

    #[test]
    fn parse_error_exits_two() {
        let (code, _, err) = call(&["verify", "--params", "3,3,1", "--announcement", "012 0x4"], "");
        assert_eq!(code, 2);
        assert!(err.contains("column 6"), "{err}");
        assert!(err.contains("       ^"), "{err}");
        let (code, _, _) = call(&["verify", "--params", "3,3,0", "--announcement", "012"], "");
        assert_eq!(code, 2);
        let (code, _, _) = call(&["frobnicate"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn guard_flag() {
        let (code, _, err) = call(
            &["--max-work", "10", "enumerate", "--params", "3,3,1", "--hand", "012", "--count"],
            "",
        );
        assert_eq!(code, 2);
        assert!(err.contains("exceeds the limit"), "{err}");
    }

    #[test]
    fn enumerate_counts() {
        let (code, out, _) = call(&["enumerate", "--params", "3,3,1", "--hand", "012", "--count"], "");
        assert_eq!((code, out.trim()), (0, "60"));
        let (_, out, _) = call(
            &["enumerate", "--params", "3,3,1", "--hand", "135", "--special-point", "0"],
            "",
        );
        assert_eq!(out.lines().count(), 6);
        assert_eq!(out.lines().next(), Some("012 034 056 135 246"));
    }

    #[test]
    fn sample_and_analyze() {
        let args = ["sample", "--protocol", "fact1", "--hand", "012", "--seed", "3", "--n", "4"];
        let (code, first, _) = call(&args, "");
        assert_eq!(code, 0);
        assert_eq!(first.lines().count(), 4);
        assert_eq!(call(&args, "").1, first);
        let (code, out, _) = call(&["analyze", "--protocol", "fact1"], "");
        assert_eq!(code, 0);
        assert!(out.contains("P(triple in hand | announcement) 1/2"), "{out}");
        let (code, out, _) = call(&["--format", "json", "analyze", "--protocol", "uniform60", "--observer", "3"], "");
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["validation"]["valid"], true);
    }
}
