use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};
use turancert::certify::{
    certificate_from_str, certificate_to_string, certify_property, outcome_to_json, reverify, CertifyOptions,
    Criterion, LaguerreMode,
};
use turancert::inequality::{check_sequence, CheckOutcome, Property, Status as CheckStatus};
use turancert::oeis::{cross_validate_range, fetch_bfile, parse_bfile, BFileSource, FetchOptions};
use turancert::sequence::Target;
use turancert::specio::{load_spec, SequenceSpec};

use crate::{CertifyArgs, CheckArgs, CliError, CriterionArg, OeisArgs, Output, Status, TermsArgs, VerifyArgs};

type Res<T> = Result<T, CliError>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn spec(path: &Path) -> Res<SequenceSpec> {
    load_spec(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(output: &Output, value: Value, text: String) -> Res<()> {
    if output.json {
        emit(&output.out, &pretty(&value))
    } else {
        emit(&output.out, &text)
    }
}

fn check_range(from: i64, to: i64) -> Res<()> {
    if from > to {
        return Err(CliError::input(format!("empty range: --from {from} exceeds --to {to}")));
    }
    Ok(())
}

fn check_precision(bits: u32) -> Res<()> {
    if bits == 0 {
        return Err(CliError::input("--precision must be positive"));
    }
    Ok(())
}

pub fn terms(a: TermsArgs) -> Res<Status> {
    let s = spec(&a.spec)?;
    let seq = s.sequence();
    let from = a.from.unwrap_or(seq.start());
    check_range(from, a.to)?;
    let input = |e: turancert::SequenceError| CliError::input(e.to_string());
    let mut rows = Vec::new();
    let mut text = String::new();
    for n in from..=a.to {
        let t = seq.term(n).map_err(input)?;
        let mut row = json!({"n": n, "value": t.to_string()});
        let mut line = format!("{n} {t}");
        if a.ratios {
            let r = seq.ratio(n).map(|r| r.to_string()).ok();
            line.push(' ');
            line.push_str(r.as_deref().unwrap_or("-"));
            row["ratio"] = r.map_or(Value::Null, Value::String);
        }
        text.push_str(&line);
        text.push('\n');
        rows.push(row);
    }
    emit_report(&a.output, json!({"sequence": seq.name(), "terms": rows}), text)?;
    Ok(Status::Ok)
}

struct CheckReport {
    name: String,
    outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    fn count(&self, s: CheckStatus) -> usize {
        self.outcomes.iter().filter(|o| o.status == s).count()
    }

    fn status(&self) -> Status {
        if self.count(CheckStatus::Fails) > 0 {
            Status::Failed
        } else if self.count(CheckStatus::Undecided) > 0 {
            Status::Inconclusive
        } else {
            Status::Ok
        }
    }
}

fn check_one(path: &Path, target: Target, property: Property, from: i64, to: i64, cap: u32) -> Res<CheckReport> {
    let s = spec(path)?;
    let seq = s.sequence();
    let (lo, _) = property.window(from);
    let first = if target == Target::Raw { seq.start() } else { s.positivity_from.max(1) };
    if lo < first {
        return Err(CliError::input(format!(
            "{}: the check at n = {from} reads index {lo}, below {first}",
            s.name
        )));
    }
    let outcomes = (from..=to)
        .map(|n| check_sequence(seq, target, property, n, cap))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::input(format!("{}: {e}", s.name)))?;
    Ok(CheckReport {
        name: s.name.clone(),
        outcomes,
    })
}

/// Runs `job` on every item with at most `jobs` worker threads; results keep
/// the input order.
fn fan_out<T: Sync, R: Send>(items: &[T], jobs: usize, job: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(item) = items.get(i) else { break };
                *slots[i].lock().unwrap() = Some(job(item));
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot is filled"))
        .collect()
}

pub fn check(a: CheckArgs) -> Res<Status> {
    check_range(a.from, a.to)?;
    check_precision(a.precision)?;
    let property = Property::parse(&a.property)
        .ok_or_else(|| CliError::input(format!("unknown property {:?}; use hot, log-concave or laguerre<m>", a.property)))?;
    let target = Target::from(a.target);
    let reports = fan_out(&a.spec, a.jobs, |p| check_one(p, target, property, a.from, a.to, a.precision))
        .into_iter()
        .collect::<Res<Vec<_>>>()?;

    let mut text = String::new();
    let mut values = Vec::new();
    for r in &reports {
        text.push_str(&format!("{} {} {} n = {}..{}\n", r.name, target.as_str(), property, a.from, a.to));
        for o in &r.outcomes {
            text.push_str(&format!("  {} {} {} ({} bits)\n", o.index, o.status, o.margin, o.precision));
        }
        let counts = [
            CheckStatus::Holds,
            CheckStatus::HoldsWithEquality,
            CheckStatus::Fails,
            CheckStatus::Undecided,
        ]
        .map(|s| (s.as_str(), r.count(s)));
        let summary: Vec<String> = counts.iter().map(|(k, c)| format!("{c} {k}")).collect();
        text.push_str(&format!("  summary: {}\n", summary.join(", ")));
        values.push(json!({
            "sequence": r.name,
            "target": target.as_str(),
            "property": property.to_string(),
            "from": a.from,
            "to": a.to,
            "precision_cap": a.precision,
            "outcomes": r.outcomes.iter().map(outcome_to_json).collect::<Vec<_>>(),
            "summary": counts.iter().map(|(k, c)| ((*k).to_owned(), json!(c))).collect::<serde_json::Map<_, _>>(),
        }));
    }
    emit_report(&a.output, json!({"reports": values}), text)?;
    let worst = reports.iter().map(CheckReport::status);
    Ok(if worst.clone().any(|s| s == Status::Failed) {
        Status::Failed
    } else if worst.into_iter().any(|s| s == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Ok
    })
}

pub fn certify(a: CertifyArgs) -> Res<Status> {
    check_precision(a.precision)?;
    let property = match (a.property, a.mode) {
        (CriterionArg::Hot, None) => Criterion::HigherTuran,
        (CriterionArg::Hot, Some(_)) => {
            return Err(CliError::input("--mode applies only to --property laguerre2"));
        }
        (CriterionArg::Laguerre2, m) => Criterion::Laguerre2(m.map_or(LaguerreMode::default(), Into::into)),
    };
    let s = spec(&a.spec)?;
    let opts = CertifyOptions {
        precision_cap: a.precision,
        ..CertifyOptions::default()
    };
    let target = Target::from(a.target);
    let cert = match certify_property(s.sequence(), &s.bounds, target, property, a.from, &opts) {
        Ok(c) => c,
        Err(e) => {
            let status = match &e {
                turancert::CertifyError::MissingBound(_) | turancert::CertifyError::UnsupportedTarget(_) => {
                    Status::InputError
                }
                e if e.is_inconclusive() => Status::Inconclusive,
                _ => Status::Failed,
            };
            let message = match e.stage() {
                Some(stage) => format!("stage {stage} failed: {e}"),
                None => e.to_string(),
            };
            return Err(CliError { status, message });
        }
    };
    emit(&a.out, &certificate_to_string(&cert))?;
    eprintln!(
        "certified {} for the {} sequence of {} for n >= {} (criterion from {}, window [{}, {}))",
        property,
        target.as_str(),
        cert.sequence,
        cert.overall_from,
        cert.covered_from,
        cert.window.from,
        cert.window.to
    );
    Ok(Status::Ok)
}

pub fn verify_cert(a: VerifyArgs) -> Res<Status> {
    let cert = certificate_from_str(&read(&a.cert)?).map_err(|e| CliError::input(e.to_string()))?;
    let s = spec(&a.spec)?;
    let precision_cap = a.precision.unwrap_or(cert.window.precision_cap);
    check_precision(precision_cap)?;
    let opts = CertifyOptions {
        precision_cap,
        ..CertifyOptions::default()
    };
    let report = reverify(&cert, s.sequence(), &s.bounds, &opts);
    let text = if report.is_ok() {
        format!("ok: {} checks passed\n", report.checks)
    } else {
        format!("{report}\n")
    };
    emit_report(
        &a.output,
        json!({"ok": report.is_ok(), "checks": report.checks, "failures": report.failures}),
        text,
    )?;
    match report.failures.first() {
        None => Ok(Status::Ok),
        Some(first) => {
            eprintln!("first failed check: {first}");
            Ok(Status::Failed)
        }
    }
}

pub fn oeis_check(a: OeisArgs) -> Res<Status> {
    let s = spec(&a.spec)?;
    let seq = s.sequence();
    let b = match &a.bfile {
        Some(p) => parse_bfile(&read(p)?).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?,
        None => {
            let id = a
                .id
                .clone()
                .or_else(|| s.oeis_id.clone())
                .ok_or_else(|| CliError::input("no --bfile, --id or oeis_id in the spec"))?;
            let mut opts = FetchOptions::from_env();
            if let Some(d) = &a.cache_dir {
                opts.cache_dir = d.clone();
            }
            opts.allow_network = a.network;
            fetch_bfile(&id, &opts).map_err(|e| CliError::input(e.to_string()))?
        }
    };
    let from = a.from.unwrap_or(seq.start());
    let to = a.to.unwrap_or(i64::MAX);
    check_range(from, to)?;
    let report = cross_validate_range(seq, &b, from, to);
    let source = match b.source {
        BFileSource::LocalFile => "local_file",
        BFileSource::Cache => "cache",
        BFileSource::Network => "network",
    };
    let mut text = format!(
        "{}: {} compared, {} confirmed, {} mismatches (b-file from {source})\n",
        seq.name(),
        report.compared,
        report.confirmed,
        report.mismatches.len()
    );
    let mut mismatches = Vec::new();
    for m in &report.mismatches {
        let actual = m.actual.as_ref().map(|x| x.to_string());
        text.push_str(&format!(
            "  n = {}: b-file {}, computed {}\n",
            m.index,
            m.expected,
            actual.as_deref().unwrap_or("unavailable")
        ));
        mismatches.push(json!({"index": m.index, "expected": m.expected.to_string(), "actual": actual}));
    }
    emit_report(
        &a.output,
        json!({
            "sequence": seq.name(),
            "oeis_id": b.oeis_id,
            "source": source,
            "compared": report.compared,
            "confirmed": report.confirmed,
            "mismatches": mismatches,
        }),
        text,
    )?;
    if report.compared == 0 {
        return Err(CliError::input("no shared indices between the b-file and the requested range"));
    }
    Ok(if report.is_clean() { Status::Ok } else { Status::Failed })
}
