//! Command-line front end. `run` is the whole program minus process exit.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::bound::{self, BoundError, BoundReport, RatioSummary};
use crate::covers::{self, CoverError, SurfaceSig};
use crate::format::{Field, Format, Record, RecordWriter};
use crate::geodesic::{self, GeodesicError};
use crate::lobachevsky::{self, Angle, LobachevskyError};
use crate::template::{self, TemplateError};
use crate::word::{self, CyclicWord, WordError};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_WORD: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "modknot",
    version,
    about = "Modular geodesic codes, template combinatorics and volume bounds"
)]
struct Cli {
    /// Significant digits for reals (6 to 30).
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Word coding: parse, canonical rotation, even continued fraction.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Matrix, trace and geodesic length of a word.
    Length { word: String },
    /// Strand order on the branch line.
    Template {
        #[command(subcommand)]
        action: TemplateAction,
    },
    /// Volume bound reports.
    Bound(BoundArgs),
    /// Cover degrees of punctured surfaces over the modular surface.
    Covers {
        #[command(subcommand)]
        action: CoversAction,
    },
    Lobachevsky {
        #[command(subcommand)]
        action: LobachevskyAction,
    },
}

#[derive(Debug, Subcommand)]
enum CodeAction {
    Parse { word: String },
    Canon { word: String },
    Cf { word: String },
}

#[derive(Debug, Subcommand)]
enum TemplateAction {
    Arrange {
        #[arg(required = true)]
        words: Vec<String>,
    },
    Crossings {
        #[arg(required = true)]
        words: Vec<String>,
    },
    Chains {
        #[arg(required = true)]
        words: Vec<String>,
    },
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct BoundArgs {
    #[command(subcommand)]
    mode: Option<BoundMode>,
    /// One report per word, or one for the whole collection with --joint.
    words: Vec<String>,
    #[arg(long)]
    joint: bool,
}

#[derive(Debug, Subcommand)]
enum BoundMode {
    /// Every x^n y^m with 1 <= n <= N, 1 <= m <= M.
    Family {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Seeded random corpus, one report per word and a ratio summary.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_syllables: u64,
        #[arg(long, default_value_t = 500)]
        max_exponent: u64,
        #[arg(long)]
        summary_only: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CoversAction {
    Degree {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        punctures: u64,
    },
    Constant {
        #[arg(long, default_value_t = 1.0)]
        base: f64,
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        punctures: u64,
        #[arg(long, default_value_t = 1.0)]
        brooks: f64,
    },
}

#[derive(Debug, Subcommand)]
enum LobachevskyAction {
    Eval {
        #[arg(allow_negative_numbers = true)]
        radians: f64,
    },
}

/// Everything that ends a run with a nonzero status.
#[derive(Debug)]
enum Failure {
    Word(WordError),
    Precondition(String),
    Io(std::io::Error),
}

impl Failure {
    fn status(&self) -> i32 {
        match self {
            Failure::Word(_) => EXIT_WORD,
            Failure::Precondition(_) | Failure::Io(_) => EXIT_PRECONDITION,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Word(e) => format!("invalid word: {e}"),
            Failure::Precondition(m) => m.clone(),
            Failure::Io(e) => format!("output error: {e}"),
        }
    }
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        Failure::Word(e)
    }
}

impl From<TemplateError> for Failure {
    fn from(e: TemplateError) -> Self {
        match e {
            TemplateError::Word(w) => Failure::Word(w),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::Word(w) => Failure::Word(w),
            BoundError::Template(t) => t.into(),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

impl From<GeodesicError> for Failure {
    fn from(e: GeodesicError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<LobachevskyError> for Failure {
    fn from(e: LobachevskyError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs one invocation. Records go to `out`, the one-line diagnostic to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let msg = e.render().to_string();
                    let first = msg.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{}", first.trim_start_matches("error: "));
                    EXIT_USAGE
                }
            };
        }
    };
    if !(6..=30).contains(&cli.precision) {
        let _ = writeln!(
            err,
            "precision must be between 6 and 30, got {}",
            cli.precision
        );
        return EXIT_PRECONDITION;
    }
    let mut w = RecordWriter::new(out, cli.format, cli.precision);
    match dispatch(cli.command, &mut w) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message());
            f.status()
        }
    }
}

fn parse_words(texts: &[String]) -> Result<Vec<CyclicWord>, Failure> {
    texts
        .iter()
        .map(|t| word::parse(t).map_err(Failure::from))
        .collect()
}

fn join_words(ws: &[CyclicWord]) -> String {
    ws.iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn dispatch(cmd: Command, w: &mut RecordWriter<'_>) -> Result<(), Failure> {
    match cmd {
        Command::Code { action } => code(action, w),
        Command::Length { word } => length(&word, w),
        Command::Template { action } => template_cmd(action, w),
        Command::Bound(args) => bound_cmd(args, w),
        Command::Covers { action } => covers_cmd(action, w),
        Command::Lobachevsky {
            action: LobachevskyAction::Eval { radians },
        } => {
            let v = lobachevsky::lambda(Angle(radians))?;
            // Evaluation always reports 15 significant digits.
            let digits = crate::format::format_real(v, 15);
            w.write(
                &Record::new("lobachevsky")
                    .with("radians", radians)
                    .with("value", Field::Big(digits)),
            )?;
            Ok(())
        }
    }
}

fn cf_string(cf: &[u64]) -> String {
    cf.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn code(action: CodeAction, w: &mut RecordWriter<'_>) -> Result<(), Failure> {
    let rec = match action {
        CodeAction::Parse { word } => {
            let cw = word::parse(&word)?;
            let syl = cw.syllables();
            let pairs = syl
                .pairs()
                .iter()
                .map(|(k, m)| format!("{k}:{m}"))
                .collect::<Vec<_>>()
                .join(",");
            Record::new("word")
                .with("word", cw.to_string())
                .with("letters", cw.letter_string())
                .with("length", cw.len())
                .with("primitive", cw.is_primitive())
                .with("n_gamma", syl.n_gamma())
                .with("syllables", pairs)
        }
        CodeAction::Canon { word } => {
            let cw = word::parse(&word)?;
            Record::new("canon")
                .with("word", cw.to_string())
                .with("letters", cw.letter_string())
        }
        CodeAction::Cf { word } => {
            let cw = word::parse(&word)?;
            let cf = cw.to_even_cf();
            Record::new("cf")
                .with("word", cw.to_string())
                .with("period", cf.len())
                .with("even_cf", cf_string(&cf))
        }
    };
    w.write(&rec)?;
    Ok(())
}

fn length(text: &str, w: &mut RecordWriter<'_>) -> Result<(), Failure> {
    let cw = word::parse(text)?;
    let m = geodesic::matrix_of(&cw);
    let l = geodesic::geodesic_length(&m)?;
    let b = geodesic::length_lower_bounds(&cw.syllables());
    w.write(
        &Record::new("length")
            .with("word", cw.to_string())
            .with("primitive", cw.is_primitive())
            .with("a", Field::Big(m.a.to_string()))
            .with("b", Field::Big(m.b.to_string()))
            .with("c", Field::Big(m.c.to_string()))
            .with("d", Field::Big(m.d.to_string()))
            .with("trace", Field::Big(m.trace().to_string()))
            .with("length", l)
            .with("sum_log_bound", b.sum_log)
            .with("count_bound", b.count_bound),
    )?;
    Ok(())
}

fn template_cmd(action: TemplateAction, w: &mut RecordWriter<'_>) -> Result<(), Failure> {
    match action {
        TemplateAction::Arrange { words } => {
            let arr = template::arrange(&parse_words(&words)?)?;
            for (id, cw) in arr.words().iter().enumerate() {
                w.write(
                    &Record::new("strand")
                        .with("word_id", id)
                        .with("word", cw.to_string()),
                )?;
            }
            for (pos, p) in arr.points().iter().enumerate() {
                w.write(
                    &Record::new("point")
                        .with("position", pos)
                        .with("word_id", p.word)
                        .with("shift", p.shift)
                        .with("successor", arr.successor()[pos])
                        .with("band", arr.letter_at(pos).as_char().to_string()),
                )?;
            }
        }
        TemplateAction::Crossings { words } => {
            let arr = template::arrange(&parse_words(&words)?)?;
            w.write(
                &Record::new("crossings")
                    .with("words", join_words(arr.words()))
                    .with("points", arr.len())
                    .with("crossings", template::crossings(&arr)),
            )?;
        }
        TemplateAction::Chains { words } => {
            let arr = template::arrange(&parse_words(&words)?)?;
            let dec = template::decompose(&arr);
            for c in &dec.chains {
                w.write(
                    &Record::new("chain")
                        .with("ear", c.ear.to_string())
                        .with("side", c.side.to_string())
                        .with("anchor", c.anchor)
                        .with("length", c.length)
                        .with("exponent", c.exponent),
                )?;
            }
            for s in &dec.splittings {
                w.write(
                    &Record::new("splitting")
                        .with("ear", s.ear.to_string())
                        .with("left", s.left)
                        .with("right", s.left + 1)
                        .with("gap", s.gap)
                        .with("exits", s.exits),
                )?;
            }
        }
    }
    Ok(())
}

fn report_record(r: &BoundReport) -> Record {
    let c = &r.counts;
    let chains = r
        .b_chains
        .iter()
        .map(|(s, _)| s.to_string())
        .collect::<Vec<_>>()
        .join(",");
    Record::new("bound")
        .with("words", join_words(&r.words))
        .with("n_gamma", r.n_gamma)
        .with("word_length", r.word_length)
        .with("total_length", r.total_length)
        .with("a_tetra", c.a_tetra)
        .with("b_linear_tetra", c.b_linear_tetra)
        .with("c_tetra", c.c_tetra)
        .with("d_tetra", c.d_tetra)
        .with("chain_lengths", chains)
        .with("a", r.a)
        .with("b_linear", r.b_linear)
        .with("b_chains", r.b_chain_total())
        .with("c", r.c)
        .with("d", r.d)
        .with("total_bound", r.total_bound)
        .with("closed_form_b", r.closed_form_b)
        .with("ratio", r.ratio)
        .with("v_max", r.coefficients.v_max)
        .with("split_coeff", r.coefficients.split_coeff)
        .with("cone_coeff", r.coefficients.cone_coeff)
        .with("closed_form_a", r.coefficients.closed_form_a)
}

fn summary_record(s: &RatioSummary, seed: u64) -> Record {
    Record::new("summary")
        .with("seed", seed)
        .with("count", s.count)
        .with("min", s.min)
        .with("p25", s.p25)
        .with("median", s.median)
        .with("p75", s.p75)
        .with("p90", s.p90)
        .with("p99", s.p99)
        .with("max", s.max)
        .with("mean", s.mean)
        .with("argmax", join_words(&s.argmax))
}

fn bound_cmd(args: BoundArgs, w: &mut RecordWriter<'_>) -> Result<(), Failure> {
    match args.mode {
        None => {
            if args.words.is_empty() {
                return Err(Failure::Precondition(
                    "bound needs at least one word".into(),
                ));
            }
            let words = parse_words(&args.words)?;
            if args.joint {
                w.write(&report_record(&bound::total_bound(&words)?))?;
            } else {
                for r in bound::corpus_reports(&words)? {
                    w.write(&report_record(&r))?;
                }
            }
        }
        Some(BoundMode::Family { n, m }) => {
            for row in bound::family_scan(n, m)? {
                let mut rec = report_record(&row.report);
                rec.fields
                    .splice(0..0, [("n", Field::from(row.n)), ("m", Field::from(row.m))]);
                rec.kind = "family";
                w.write(&rec)?;
            }
        }
        Some(BoundMode::Corpus {
            seed,
            count,
            max_syllables,
            max_exponent,
            summary_only,
        }) => {
            let words = bound::random_corpus(seed, count, max_syllables, max_exponent)?;
            let reports = bound::corpus_reports(&words)?;
            if !summary_only {
                for r in &reports {
                    w.write(&report_record(r))?;
                }
            }
            let s = bound::summarize(&reports).expect("count >= 1");
            w.write(&summary_record(&s, seed))?;
        }
    }
    Ok(())
}

fn covers_cmd(action: CoversAction, w: &mut RecordWriter<'_>) -> Result<(), Failure> {
    match action {
        CoversAction::Degree { genus, punctures } => {
            let s = SurfaceSig::new(genus, punctures);
            let f = covers::cover_family(s)?;
            w.write(
                &Record::new("cover")
                    .with("genus", genus)
                    .with("punctures", punctures)
                    .with("family", f.name)
                    .with("chain", f.chain_string().replace(' ', ""))
                    .with("chain_degree", f.chain_degree)
                    .with("stated_degree", f.claimed_degree)
                    .with("oracle_degree", f.oracle_degree)
                    .with("consistent", f.consistent),
            )?;
        }
        CoversAction::Constant {
            base,
            genus,
            punctures,
            brooks,
        } => {
            let s = SurfaceSig::new(genus, punctures);
            let c = covers::propagate_constant(base, s, brooks)?;
            let p = covers::padded(s);
            w.write(
                &Record::new("constant")
                    .with("genus", genus)
                    .with("punctures", punctures)
                    .with("padding", covers::puncture_padding(s))
                    .with("degree", covers::euler_degree(p)?)
                    .with("base", base)
                    .with("brooks", brooks)
                    .with("constant", c),
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("modknot").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn status_codes() {
        assert_eq!(call(&["bound", "xy"]).0, 0);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["length", "xz"]).0, EXIT_WORD);
        assert_eq!(call(&["bound", "xyxy"]).0, EXIT_WORD);
        assert_eq!(
            call(&["covers", "degree", "--genus", "0", "--punctures", "2"]).0,
            EXIT_PRECONDITION
        );
        assert_eq!(
            call(&["--precision", "40", "bound", "xy"]).0,
            EXIT_PRECONDITION
        );
        let (_, _, err) = call(&["length", "x^0y"]);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("bound"));
    }
}
