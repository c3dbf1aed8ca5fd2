//! `lowprob`: construct lower probabilities from evidence files and verify
//! their structure, in exact rational arithmetic.
//!
//! Exit codes are a stable contract: 0 success, 2 invalid input, 3 empty
//! (infeasible) family, 4 cross-check mismatch.

mod problem;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lowprob::dempster::{
    belief_from_mapping, is_belief_function, is_r_monotone, is_r_monotone_sampled,
};
use lowprob::envelope::classify;
use lowprob::family::{self, EnvelopeEvidence, FamilySpec};
use lowprob::rational::format_rational;
use lowprob::reduction::reduced_lower_value;
use lowprob::setfun::{mobius, upper_from_lower, SetFunction};
use lowprob::space::Subset;
use lowprob::{Error, Rational};

use problem::ProblemFile;
use report::{
    EnvelopeGapWitness, MassWitness, PredicateFlags, Report, TableRow, VerifyRow, Witnesses,
    DECIMAL_NOTE,
};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 2;
const EXIT_EMPTY_FAMILY: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Samples drawn per order when a space is too large for exhaustive
/// monotonicity checking.
const MONOTONICITY_SAMPLES: usize = 4096;

#[derive(Parser)]
#[command(
    name = "lowprob",
    version,
    about = "Exact lower probabilities from evidence: construction, classification, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add approximate decimal renderings next to the exact rationals.
    #[arg(long)]
    decimal: bool,
    /// Seed for sampling modes on spaces too large to check exhaustively.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Highest monotonicity order to check (2 or 3).
    #[arg(long = "max-r", default_value_t = 3)]
    max_r: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Push a measure through a multivalued mapping: belief function, upper
    /// dual, and mass table over every subset of x.
    Dempster {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Classify a set function: lower probability, dominated, lower
    /// envelope, 2-/3-monotone, belief function; witnesses on failure.
    Check {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Minimize the x-marginal over a family of joint measures.
    Lower {
        #[command(flatten)]
        opts: CommonOpts,
        /// Which evidence shape defines the family.
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Query subset by name (repeatable); all subsets when omitted.
        #[arg(long = "set")]
        sets: Vec<String>,
    },
    /// Compute the family minimum and the reduced minimum by independent
    /// routes for every subset and compare them exactly.
    Verify {
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Dempster,
    Envelope,
    Polyhedral,
}

impl FamilyKind {
    fn name(self) -> &'static str {
        match self {
            FamilyKind::Dempster => "dempster",
            FamilyKind::Envelope => "envelope",
            FamilyKind::Polyhedral => "polyhedral",
        }
    }
}

enum Failure {
    Invalid(String),
    EmptyFamily(String),
}

impl From<String> for Failure {
    fn from(msg: String) -> Failure {
        Failure::Invalid(msg)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::EmptyFamily => Failure::EmptyFamily(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (opts, result) = match &cli.command {
        Command::Dempster { opts } => (opts, cmd_dempster(opts)),
        Command::Check { opts } => (opts, cmd_check(opts)),
        Command::Lower { opts, family, sets } => (opts, cmd_lower(opts, *family, sets)),
        Command::Verify { opts } => (opts, cmd_verify(opts)),
    };
    match result {
        Ok((mut report, exit)) => {
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            let text = report.render();
            if let Some(path) = &opts.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(exit)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::EmptyFamily(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_EMPTY_FAMILY)
        }
    }
}

fn load(opts: &CommonOpts) -> Result<ProblemFile, Failure> {
    ProblemFile::load(&opts.input).map_err(Failure::Invalid)
}

fn input_echo(opts: &CommonOpts) -> String {
    opts.input.display().to_string()
}

/// Full per-subset table for a normalized lower function: value, upper dual,
/// mass.
fn full_table(lower: &SetFunction, decimal: bool) -> Result<Vec<TableRow>, Failure> {
    let upper = upper_from_lower(lower)?;
    let mass = mobius(lower);
    Ok(lower
        .space()
        .subsets()
        .map(|s| {
            TableRow::new(
                s.name(),
                lower.value(&s),
                upper.value(&s),
                Some(mass.value(&s)),
                decimal,
            )
        })
        .collect())
}

fn cmd_dempster(opts: &CommonOpts) -> Result<(Report, u8), Failure> {
    let file = load(opts)?;
    file.require_fields(&["x", "y", "p", "gamma"], &[])?;
    let x = file.x_space()?;
    let y = file.y_space()?;
    let p = file.measure(&y)?;
    let mapping = file.mapping(&y, &x)?;
    let belief = belief_from_mapping(&p, &mapping)?;

    let mut report = Report::new("dempster".into(), input_echo(opts));
    report.space = Some(x.labels().to_vec());
    report.decimal_note = opts.decimal.then_some(DECIMAL_NOTE);
    report.table = Some(full_table(&belief, opts.decimal)?);
    Ok((report, EXIT_OK))
}

fn cmd_check(opts: &CommonOpts) -> Result<(Report, u8), Failure> {
    if !(2..=3).contains(&opts.max_r) {
        return Err(Failure::Invalid(format!(
            "--max-r must be 2 or 3, got {}",
            opts.max_r
        )));
    }
    let file = load(opts)?;
    // the function lives on whichever single space the file declares
    let space = match (&file.x, &file.y) {
        (None, Some(_)) => {
            file.require_fields(&["y", "ell"], &[])?;
            file.y_space()?
        }
        (Some(_), None) => {
            file.require_fields(&["x", "ell"], &[])?;
            file.x_space()?
        }
        (Some(_), Some(_)) => {
            return Err(Failure::Invalid(
                "check takes exactly one space; both \"x\" and \"y\" are present".into(),
            ))
        }
        (None, None) => {
            return Err(Failure::Invalid(
                "check needs a space: supply \"x\" or \"y\"".into(),
            ))
        }
    };
    let ell = file.ell(&space)?;

    let classification = classify(&ell)?;
    let mut witnesses = Witnesses::empty();
    witnesses.lower_probability = classification
        .lower_probability_witness
        .as_ref()
        .map(|(a, b)| [a.name(), b.name()]);
    witnesses.dominating_measure = classification.dominating_witness.as_ref().map(|q| {
        space
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), format_rational(q.mass(i))))
            .collect::<BTreeMap<_, _>>()
    });
    witnesses.envelope_gap = classification.envelope_gap_witness.as_ref().map(|gap| {
        EnvelopeGapWitness {
            set: gap.subset.name(),
            value: format_rational(&gap.lower_value),
            envelope: format_rational(&gap.envelope_value),
        }
    });

    let mut evidence = "exhaustive".to_string();
    let mut order_flags: [Option<bool>; 2] = [None, None];
    let mut order_witnesses: [Option<Vec<String>>; 2] = [None, None];
    for (slot, r) in (2..=opts.max_r).enumerate() {
        match is_r_monotone(&ell, r) {
            Ok(check) => {
                order_flags[slot] = Some(check.holds);
                order_witnesses[slot] = check
                    .witness
                    .map(|sets| sets.iter().map(Subset::name).collect());
            }
            Err(Error::UnsupportedSize(_)) => {
                let sampled =
                    is_r_monotone_sampled(&ell, r, opts.seed, MONOTONICITY_SAMPLES)?;
                evidence = format!(
                    "sampled seed={} samples={}",
                    opts.seed, MONOTONICITY_SAMPLES
                );
                match sampled.counterexample {
                    Some(sets) => {
                        order_flags[slot] = Some(false);
                        order_witnesses[slot] =
                            Some(sets.iter().map(Subset::name).collect());
                    }
                    None => order_flags[slot] = None,
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    let [two_monotone, three_monotone] = order_flags;
    let [w2, w3] = order_witnesses;
    witnesses.two_monotone = w2;
    witnesses.three_monotone = w3;

    let belief = is_belief_function(&ell)?;
    if !belief {
        let mass = mobius(&ell);
        witnesses.negative_mass = mass
            .iter()
            .find(|(_, v)| *v < &Rational::from_integer(0.into()))
            .map(|(s, v)| MassWitness { set: s.name(), mass: format_rational(v) });
    }

    let mut report = Report::new("check".into(), input_echo(opts));
    report.space = Some(space.labels().to_vec());
    report.decimal_note = opts.decimal.then_some(DECIMAL_NOTE);
    report.table = Some(full_table(&ell, opts.decimal)?);
    report.flags = Some(PredicateFlags {
        lower_probability: classification.is_lower_probability,
        dominated: classification.is_dominated,
        lower_envelope: classification.is_lower_envelope,
        two_monotone,
        three_monotone,
        belief_function: belief,
        monotonicity_evidence: evidence,
    });
    report.witnesses = Some(witnesses);
    Ok((report, EXIT_OK))
}

fn family_spec(file: &ProblemFile, kind: FamilyKind) -> Result<FamilySpec, Failure> {
    match kind {
        FamilyKind::Dempster => {
            file.require_fields(&["x", "y", "p", "gamma"], &["query"])?;
            let x = file.x_space()?;
            let y = file.y_space()?;
            let p = file.measure(&y)?;
            let mapping = file.mapping(&y, &x)?;
            Ok(FamilySpec::dempster(p, mapping)?)
        }
        FamilyKind::Envelope => {
            file.require_fields(&["x", "y", "ell", "lambda_y"], &["query"])?;
            let x = file.x_space()?;
            let y = file.y_space()?;
            let ell = file.ell(&y)?;
            let lambdas = file.lambdas(&y, &x)?;
            let evidence = EnvelopeEvidence::new(ell, lambdas).map_err(hypothesis_failure)?;
            Ok(FamilySpec::envelope_evidence(evidence))
        }
        FamilyKind::Polyhedral => {
            file.require_fields(&["x", "y", "constraints"], &["query"])?;
            let x = file.x_space()?;
            let y = file.y_space()?;
            let rows = file.constraint_rows(&x, &y)?;
            Ok(FamilySpec::polyhedral(x, y, rows)?)
        }
    }
}

/// Names the violated hypothesis when envelope evidence fails validation.
fn hypothesis_failure(e: Error) -> Failure {
    match e {
        Error::NotDominated => {
            Failure::Invalid("hypothesis violated: \"ell\" is not dominated".into())
        }
        Error::NotLowerEnvelope(msg) => {
            Failure::Invalid(format!("hypothesis violated: {msg}"))
        }
        other => other.into(),
    }
}

fn cmd_lower(
    opts: &CommonOpts,
    kind: FamilyKind,
    cli_sets: &[String],
) -> Result<(Report, u8), Failure> {
    let file = load(opts)?;
    let spec = family_spec(&file, kind)?;
    let x = spec.x_space().clone();

    let queried: Option<Vec<String>> = if !cli_sets.is_empty() {
        Some(cli_sets.to_vec())
    } else {
        file.query.clone()
    };

    let mut command = format!("lower --family {}", kind.name());
    let mut report_rows = Vec::new();
    match &queried {
        Some(names) => {
            for name in names {
                command.push_str(&format!(" --set {name:?}"));
                let subset = x
                    .subset_from_name(name)
                    .map_err(|e| Failure::Invalid(format!("query set {name:?}: {e}")))?;
                let lower = family::lower_value(&spec, &subset)?;
                let co_lower = family::lower_value(&spec, &subset.complement())?;
                let upper = Rational::from_integer(1.into()) - co_lower;
                report_rows.push(TableRow::new(
                    subset.name(),
                    &lower,
                    &upper,
                    None,
                    opts.decimal,
                ));
            }
        }
        None => {
            let lower = family::lower_function(&spec)?;
            report_rows = full_table(&lower, opts.decimal)?;
        }
    }

    let mut report = Report::new(command, input_echo(opts));
    report.space = Some(x.labels().to_vec());
    report.decimal_note = opts.decimal.then_some(DECIMAL_NOTE);
    report.table = Some(report_rows);
    Ok((report, EXIT_OK))
}

fn cmd_verify(opts: &CommonOpts) -> Result<(Report, u8), Failure> {
    let file = load(opts)?;
    file.require_fields(&["x", "y", "ell", "lambda_y"], &[])?;
    let x = file.x_space()?;
    let y = file.y_space()?;
    let ell = file.ell(&y)?;
    let lambdas = file.lambdas(&y, &x)?;
    let evidence = EnvelopeEvidence::new(ell, lambdas).map_err(hypothesis_failure)?;
    let spec = FamilySpec::envelope_evidence(evidence.clone());

    let mut rows = Vec::with_capacity(x.num_subsets());
    let mut all_equal = true;
    for subset in x.subsets() {
        let family_minimum = family::lower_value(&spec, &subset)?;
        let reduced_minimum = reduced_lower_value(&evidence, &subset)?;
        let equal = family_minimum == reduced_minimum;
        all_equal &= equal;
        rows.push(VerifyRow {
            set: subset.name(),
            family_minimum: format_rational(&family_minimum),
            reduced_minimum: format_rational(&reduced_minimum),
            equal,
        });
    }

    let mut report = Report::new("verify".into(), input_echo(opts));
    report.space = Some(x.labels().to_vec());
    report.verification = Some(rows);
    report.verdict = Some(if all_equal { "all-equal" } else { "mismatch" });
    Ok((report, if all_equal { EXIT_OK } else { EXIT_MISMATCH }))
}
