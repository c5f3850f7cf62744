use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use motzkin_core::algebraics::{self, Ansatz, AlgebraicEquation};
use motzkin_core::counting::{self, count_paths_dp, motzkin_sequence};
use motzkin_core::genfunc::{build_system, solve_system, CoeffSeries};
use motzkin_core::paths::{self, ColoredPath, EnumGuard};
use motzkin_core::recurrence::{self, published, Recurrence};
use motzkin_core::{wire, BigInt, Error, WeightSpec};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, PublishedRec, SeqMethod, SourceArgs};
use crate::reproduce;
use crate::CliError;

const DEFAULT_SERIES_ORDER: usize = 64;
const DEFAULT_GUESS_TERMS: usize = 120;
const DEFAULT_VERIFY_TERMS: usize = 101;

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    let threads = cli.threads as usize;
    match &cli.command {
        Command::Count { spec, n, s, t } => {
            let spec = resolve_spec(&spec.weights, spec.rank)?;
            let value = count_paths_dp(&spec, *n, *s, *t);
            Ok(match fmt(Format::Json) {
                Format::Json => wire::count_to_json(*n, &value),
                Format::Csv => format!("n,value\n{n},{value}"),
                Format::Plain => value.to_string(),
            })
        }
        Command::Seq { spec, terms, method } => {
            let spec = resolve_spec(&spec.weights, spec.rank)?;
            let seq = sequence(&spec, *terms, *method)?;
            Ok(render_sequence(&seq, fmt(Format::Json)))
        }
        Command::Enumerate {
            spec,
            n,
            s,
            t,
            uncolored,
        } => {
            let spec = resolve_spec(&spec.weights, spec.rank)?;
            let guard = enum_guard()?;
            let paths = paths::enumerate_paths_guarded(&spec, *n, *s, *t, !uncolored, guard)
                .map_err(Error::from)?;
            let lines: Vec<String> = paths.iter().map(ToString::to_string).collect();
            match fmt(Format::Json) {
                Format::Json => Ok(Value::from(lines).to_string()),
                Format::Plain => Ok(lines.join("\n")),
                Format::Csv => Err(no_csv("enumerate")),
            }
        }
        Command::Series {
            spec,
            order,
            i,
            j,
            system,
            symmetric,
        } => {
            let spec = resolve_spec(&spec.weights, spec.rank)?;
            let sys = build_system(&spec, *symmetric).map_err(Error::from)?;
            if *system {
                let text = sys.to_string();
                return match fmt(Format::Plain) {
                    Format::Json => Ok(Value::from(text.lines().collect::<Vec<_>>()).to_string()),
                    Format::Plain => Ok(text),
                    Format::Csv => Err(no_csv("series --system")),
                };
            }
            let r = spec.rank();
            if *i >= r || *j >= r {
                return Err(CliError::Usage(format!(
                    "--i {i} / --j {j} out of range for rank {r}"
                )));
            }
            let family = solve_system(&sys, *order).map_err(Error::from)?;
            let s = family.get(*i, *j).expect("every (i, j) below the rank is solved");
            Ok(match fmt(Format::Json) {
                Format::Json => wire::series_to_json(s),
                Format::Plain => s.to_string(),
                Format::Csv => {
                    let mut out = String::from("n,value\n");
                    for (k, c) in s.coeffs().iter().enumerate() {
                        out.push_str(&format!("{k},{c}\n"));
                    }
                    out
                }
            })
        }
        Command::GuessAlgeq {
            source,
            order,
            max_y_deg,
            max_x_deg,
            guard,
        } => {
            let series = load_series(source, *order)?;
            let rep = algebraics::guess_algebraic_equation(&series, *max_y_deg, *max_x_deg, *guard)
                .map_err(Error::from)?;
            match fmt(Format::Json) {
                Format::Json => Ok(json!({
                    "found": rep.found(),
                    "equation": rep.equation.as_ref().map(equation_value),
                    "ansatz": match rep.ansatz {
                        Ansatz::Triangular => "triangular".to_string(),
                        Ansatz::Uniform(b) => format!("uniform:{b}"),
                    },
                    "fitted_order": rep.fitted_order,
                    "verification_order": rep.verification_order,
                })
                .to_string()),
                Format::Plain => Ok(rep
                    .equation
                    .map_or_else(|| "not found".to_string(), |e| format!("0 = {e}"))),
                Format::Csv => Err(no_csv("guess-algeq")),
            }
        }
        Command::VerifyAlgeq {
            source,
            equation,
            published,
            order,
        } => {
            let eq = match (equation, published) {
                (Some(path), _) => wire::equation_from_json(&read_input(path)?)?,
                (None, Some(rank)) => {
                    algebraics::published_equation(*rank)
                        .map_err(Error::from)?
                        .printed
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let series = load_series(source, *order)?;
            let n = order.unwrap_or(series.order());
            let ok = algebraics::verify_algebraic_equation(&eq, &series, n);
            verdict(ok, n, "order", fmt(Format::Json), "verify-algeq")
        }
        Command::GuessRec {
            source,
            terms,
            max_order,
            max_degree,
        } => {
            let seq = load_sequence(source, terms.unwrap_or(DEFAULT_GUESS_TERMS))?;
            let rec = recurrence::guess_recurrence(&seq, *max_order, *max_degree)
                .map_err(Error::from)?;
            match fmt(Format::Json) {
                Format::Json => Ok(json!({
                    "found": rec.is_some(),
                    "recurrence": rec.as_ref().map(recurrence_value),
                })
                .to_string()),
                Format::Plain => Ok(rec.map_or_else(|| "not found".to_string(), |r| r.to_string())),
                Format::Csv => Err(no_csv("guess-rec")),
            }
        }
        Command::VerifyRec {
            source,
            recurrence,
            published,
            terms,
        } => {
            let rec = match (recurrence, published) {
                (Some(path), _) => wire::recurrence_from_json(&read_input(path)?)?,
                (None, Some(PublishedRec::Prodinger)) => published::prodinger_rank2(),
                (None, Some(PublishedRec::Motzkin)) => published::motzkin(),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let seq = load_sequence(source, terms.unwrap_or(DEFAULT_VERIFY_TERMS))?;
            let ok = recurrence::verify_recurrence(&rec, &seq);
            verdict(ok, seq.len(), "terms", fmt(Format::Json), "verify-rec")
        }
        Command::ScanMin {
            source,
            terms,
            order_bound,
            degree_bound,
        } => {
            let seq = load_sequence(source, terms.unwrap_or(DEFAULT_GUESS_TERMS))?;
            let rep = recurrence::minimality_scan(&seq, *order_bound, *degree_bound, threads)
                .map_err(Error::from)?;
            match fmt(Format::Json) {
                Format::Json => Ok(json!({
                    "terms_used": rep.terms_used,
                    "order_bound": rep.order_bound,
                    "degree_bound": rep.degree_bound,
                    "verified_cells": rep.verified_cells,
                    "smallest": rep.smallest,
                    "min_order": rep.min_order,
                    "degree_at_min_order": rep.degree_at_min_order,
                    "observed_term_count": rep.observed_term_count(),
                    "recurrence": rep.recurrence.as_ref().map(recurrence_value),
                })
                .to_string()),
                Format::Plain => Ok(match (&rep.min_order, &rep.recurrence) {
                    (Some(k), Some(r)) => format!(
                        "minimal order {k} ({}-term), degree {}\nfirst cell in scan order: {:?}\n{r}",
                        k + 1,
                        rep.degree_at_min_order.unwrap_or(0),
                        rep.smallest.unwrap_or((0, 0)),
                    ),
                    _ => format!(
                        "no relation with order <= {order_bound}, degree <= {degree_bound}"
                    ),
                }),
                Format::Csv => Err(no_csv("scan-min")),
            }
        }
        Command::Biject {
            spec,
            path,
            start,
            inverse,
        } => {
            let original = resolve_spec(&spec.weights, spec.rank)?;
            if original.rank() != 1 {
                return Err(Error::from(motzkin_core::error::PathError::NotRankOne(original.rank())).into());
            }
            let image = if *inverse {
                let target = WeightSpec::rank1(1, original.level(), original.up(1) * original.down(1));
                let p = ColoredPath::parse(Arc::new(target), path, *start).map_err(Error::from)?;
                paths::recolor_inverse(&p, &original).map_err(Error::from)?
            } else {
                let p = ColoredPath::parse(Arc::new(original), path, *start).map_err(Error::from)?;
                paths::recolor_bijection(&p).map_err(Error::from)?
            };
            match fmt(Format::Json) {
                Format::Json => Ok(json!({
                    "weights": image.spec().to_string(),
                    "path": image.to_string(),
                })
                .to_string()),
                Format::Plain => Ok(image.to_string()),
                Format::Csv => Err(no_csv("biject")),
            }
        }
        Command::Reproduce { target } => reproduce::run(*target, fmt(Format::Plain)),
    }
}

fn no_csv(cmd: &str) -> CliError {
    CliError::Usage(format!("--format csv is not supported by `{cmd}`"))
}

fn verdict(ok: bool, n: usize, key: &str, fmt: Format, cmd: &str) -> Result<String, CliError> {
    match fmt {
        Format::Json => Ok(json!({ "verified": ok, key: n }).to_string()),
        Format::Plain => Ok(if ok { "verified" } else { "not verified" }.to_string()),
        Format::Csv => Err(no_csv(cmd)),
    }
}

fn equation_value(e: &AlgebraicEquation) -> Value {
    serde_json::from_str(&wire::equation_to_json(e)).expect("wire output is JSON")
}

fn recurrence_value(r: &Recurrence) -> Value {
    serde_json::from_str(&wire::recurrence_to_json(r)).expect("wire output is JSON")
}

pub fn render_sequence(seq: &[BigInt], fmt: Format) -> String {
    match fmt {
        Format::Json => wire::sequence_to_json(seq),
        Format::Csv => wire::sequence_to_csv(seq),
        Format::Plain => seq.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Parses `--weights` (inline or `@file`) and checks `--rank`.
pub fn resolve_spec(weights: &str, rank: Option<usize>) -> Result<WeightSpec, CliError> {
    let text = match weights.strip_prefix('@') {
        Some(path) => read_input(Path::new(path))?,
        None => weights.to_string(),
    };
    let spec: WeightSpec = text
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("invalid value for --weights: {e}")))?;
    if let Some(r) = rank {
        if r != spec.rank() {
            return Err(CliError::Usage(format!(
                "--rank {r} does not match --weights, which has rank {}",
                spec.rank()
            )));
        }
    }
    Ok(spec)
}

fn source_spec(source: &SourceArgs) -> Result<Option<WeightSpec>, CliError> {
    source
        .weights
        .as_deref()
        .map(|w| resolve_spec(w, source.rank))
        .transpose()
}

fn load_series(source: &SourceArgs, order: Option<usize>) -> Result<CoeffSeries, CliError> {
    match (source_spec(source)?, &source.input) {
        (Some(spec), _) => Ok(motzkin_core::genfunc::solve_series(&spec, order.unwrap_or(DEFAULT_SERIES_ORDER)).into_a00()),
        (None, Some(path)) => Ok(wire::series_from_text(&read_input(path)?)?),
        (None, None) => unreachable!("clap requires --weights or --input"),
    }
}

fn load_sequence(source: &SourceArgs, terms: usize) -> Result<Vec<BigInt>, CliError> {
    match (source_spec(source)?, &source.input) {
        (Some(spec), _) => Ok(to_ints(motzkin_sequence(&spec, terms))),
        (None, Some(path)) => Ok(wire::sequence_from_text(&read_input(path)?)?),
        (None, None) => unreachable!("clap requires --weights or --input"),
    }
}

fn to_ints(v: Vec<motzkin_core::BigUint>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

fn sequence(spec: &WeightSpec, terms: usize, method: SeqMethod) -> Result<Vec<BigInt>, CliError> {
    match method {
        SeqMethod::Dp => Ok(to_ints(motzkin_sequence(spec, terms))),
        SeqMethod::Series => {
            let s = motzkin_core::genfunc::solve_series(spec, terms).into_a00();
            Ok(s.to_integers().expect("counting series are integral"))
        }
        SeqMethod::Recurrence if spec.rank() == 1 => {
            let seq = counting::rank1_recurrence_seq(spec.up(1), spec.level(), spec.down(1), terms)
                .map_err(Error::from)?;
            Ok(to_ints(seq))
        }
        SeqMethod::Recurrence if *spec == WeightSpec::all_ones(2) => {
            Ok(to_ints(counting::rank2_prodinger_seq(terms).map_err(Error::from)?))
        }
        SeqMethod::Recurrence => Err(CliError::Usage(
            "--method recurrence needs a rank-1 spec or the all-ones rank-2 spec".into(),
        )),
        SeqMethod::Explicit if spec.rank() == 1 => Ok((0..terms)
            .map(|n| BigInt::from(counting::rank1_explicit(spec.up(1), spec.level(), spec.down(1), n)))
            .collect()),
        SeqMethod::Explicit => Err(CliError::Usage("--method explicit needs a rank-1 spec".into())),
    }
}

fn enum_guard() -> Result<EnumGuard, CliError> {
    let mut guard = EnumGuard::default();
    if let Ok(v) = std::env::var("MOTZKIN_MAX_ENUM") {
        guard.max_paths = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("MOTZKIN_MAX_ENUM must be a nonnegative integer, got {v:?}")))?;
        // The path-count cap is the real safeguard; the length limit only
        // protects callers who did not opt in.
        guard.max_length = usize::MAX;
    }
    Ok(guard)
}
