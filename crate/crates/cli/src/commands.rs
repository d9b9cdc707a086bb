//! Subcommand implementations.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use schreier_core::closed_form::term;
use schreier_core::detect::required_len;
use schreier_core::identities::{coupled_identity, derivation_identities};
use schreier_core::{
    characteristic_coefficients, check_recurrence, detect_minimal, seq_order_p,
    seq_order_pq_coupled, seq_order_pq_uncoupled, verify_annihilates, verify_partition_order_p,
    verify_partition_order_pq, Detection, FamilyParams, LinearRecurrence, Method, Oracle,
    SequenceTable,
};

use crate::output::render;
use crate::{BenchArgs, CliError, CountArgs, DetectArgs, MethodArg, TableArgs, VerifyArgs};

/// Table of terms `1..=len` produced by one method.
pub fn compute_table(
    oracle: &Oracle,
    params: FamilyParams,
    len: u32,
    method: MethodArg,
) -> Result<SequenceTable, CliError> {
    let table = match (method, params.q()) {
        (MethodArg::Enum, _) => SequenceTable::tabulate(params, len, Method::Enumeration, |m| {
            oracle.count(params, m)
        })?,
        (MethodArg::Closed, _) => {
            if params.q().is_some() {
                params.require_p_lt_q()?;
            }
            SequenceTable::tabulate(params, len, Method::ClosedForm, |m| {
                Ok(term(params, m)?.value)
            })?
        }
        (MethodArg::Rec | MethodArg::RecUncoupled, None) => seq_order_p(params.p(), len)?,
        (MethodArg::Rec, Some(q)) => seq_order_pq_coupled(params.p(), q, len)?,
        (MethodArg::RecUncoupled, Some(q)) => seq_order_pq_uncoupled(params.p(), q, len)?,
    };
    Ok(table)
}

pub fn count(oracle: &Oracle, args: &CountArgs) -> Result<String, CliError> {
    let params = args.family.params()?;
    let n = args.n;
    let table = match args.method {
        MethodArg::Enum => SequenceTable::new(
            params,
            n,
            vec![oracle.count(params, n)?],
            Method::Enumeration,
        )?,
        MethodArg::Closed => {
            if params.q().is_some() {
                params.require_p_lt_q()?;
            }
            SequenceTable::new(params, n, vec![term(params, n)?.value], Method::ClosedForm)?
        }
        method => compute_table(oracle, params, n, method)?
            .slice_from(n)
            .expect("the table ends at n"),
    };
    Ok(render(&table, args.output.format))
}

pub fn table(oracle: &Oracle, args: &TableArgs) -> Result<String, CliError> {
    let params = args.family.params()?;
    let table = compute_table(oracle, params, args.max_n, args.method)?;
    Ok(render(&table, args.output.format))
}

struct Report {
    text: String,
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            failures: 0,
        }
    }

    fn line(&mut self, passed: bool, what: impl AsRef<str>) {
        if !passed {
            self.failures += 1;
        }
        let tag = if passed { "PASS" } else { "FAIL" };
        let _ = writeln!(self.text, "[{tag}] {}", what.as_ref());
    }

    fn skip(&mut self, what: impl AsRef<str>) {
        let _ = writeln!(self.text, "[SKIP] {}", what.as_ref());
    }
}

fn first_mismatch(reference: &SequenceTable, other: &SequenceTable) -> Option<u32> {
    reference
        .iter()
        .find(|(m, v)| other.get(*m) != Some(*v))
        .map(|(m, _)| m)
}

fn agreement(report: &mut Report, tables: &[SequenceTable]) {
    let reference = &tables[0];
    for other in &tables[1..] {
        let what = format!(
            "{} = {} for n = 1..={}",
            reference.method(),
            other.method(),
            reference.last_index()
        );
        match first_mismatch(reference, other) {
            None => report.line(true, what),
            Some(m) => report.line(false, format!("{what}: first mismatch at n = {m}")),
        }
    }
}

fn recurrence_line(
    report: &mut Report,
    name: &str,
    rec: &LinearRecurrence,
    table: &SequenceTable,
) -> Result<(), CliError> {
    if table.len() <= rec.order() {
        report.skip(format!("{name}: table too short for order {}", rec.order()));
        return Ok(());
    }
    let what = format!(
        "{name} holds on n = {}..={}",
        table.first_index(),
        table.last_index()
    );
    match check_recurrence(rec, table)? {
        None => report.line(true, what),
        Some(m) => report.line(false, format!("{what}: first violation at n = {m}")),
    }
    Ok(())
}

/// Runs every applicable check; returns the report text and whether all passed.
pub fn verify(oracle: &Oracle, args: &VerifyArgs) -> Result<(String, bool), CliError> {
    let params = args.family.params()?;
    let max_n = args.max_n;
    let mut report = Report::new();
    let _ = writeln!(report.text, "family: {params}, n = 1..={max_n}");

    match params.q() {
        None => {
            let p = params.p();
            let tables = [
                compute_table(oracle, params, max_n, MethodArg::Enum)?,
                compute_table(oracle, params, max_n, MethodArg::Closed)?,
                compute_table(oracle, params, max_n, MethodArg::Rec)?,
            ];
            agreement(&mut report, &tables);
            let rec = LinearRecurrence::order_p(p)?;
            recurrence_line(
                &mut report,
                &format!("order-{} recurrence", p + 1),
                &rec,
                &tables[1],
            )?;
            for n in (1..).take_while(|n| n + p + 1 <= max_n) {
                let r = verify_partition_order_p(oracle, p, n)?;
                report.line(r.passed(), format!("partition R1/R2 n = {n}: {r}"));
            }
        }
        Some(q) => {
            let (p, q) = (params.p(), q);
            params.require_p_lt_q()?;
            let tables = [
                compute_table(oracle, params, max_n, MethodArg::Enum)?,
                compute_table(oracle, params, max_n, MethodArg::Closed)?,
                compute_table(oracle, params, max_n, MethodArg::Rec)?,
                compute_table(oracle, params, max_n, MethodArg::RecUncoupled)?,
            ];
            agreement(&mut report, &tables);
            let closed = &tables[1];
            let single = SequenceTable::tabulate(
                FamilyParams::order_p(q)?,
                max_n,
                Method::ClosedForm,
                |m| Ok(term(FamilyParams::order_p(q)?, m)?.value),
            )?;

            let coupled_n = max_n.saturating_sub(2 * q + 1);
            if coupled_n >= 1 {
                let r = coupled_identity(closed, &single, coupled_n)?;
                report.line(r.holds(), identity_text(&r));
            } else {
                report.skip("coupled identity: max-n too small");
            }
            let derived_n = max_n.saturating_sub(3 * q + 2);
            if derived_n >= 1 {
                for r in derivation_identities(closed, &single, derived_n)? {
                    report.line(r.holds(), identity_text(&r));
                }
            } else {
                report.skip("derivation identities: max-n too small");
            }
            let rec = LinearRecurrence::uncoupled_pq(q)?;
            match closed.slice_from(q + 1) {
                Some(shifted) => recurrence_line(
                    &mut report,
                    &format!("depth-{} recurrence", 2 * q + 2),
                    &rec,
                    &shifted,
                )?,
                None => report.skip("uncoupled recurrence: max-n too small"),
            }
            for n in (1..).take_while(|n| n + 2 * q + 1 <= max_n) {
                let r = verify_partition_order_pq(oracle, p, q, n)?;
                report.line(r.passed(), format!("partition tau/psi/phi n = {n}: {r}"));
            }
        }
    }
    let passed = report.failures == 0;
    let _ = writeln!(
        report.text,
        "{}",
        if passed {
            "all checks passed".to_string()
        } else {
            format!("{} check(s) failed", report.failures)
        }
    );
    Ok((report.text, passed))
}

fn identity_text(r: &schreier_core::identities::IdentityReport) -> String {
    match r.first_failure {
        None => format!("{} identity holds for n = 1..={}", r.name, r.checked),
        Some(n) => format!("{} identity fails at n = {n}", r.name),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub fn detect(args: &DetectArgs) -> Result<String, CliError> {
    let params = args.family.params()?;
    let len = args.prefix_len;
    let max_order = args.max_order as usize;
    if (len as usize) < required_len(max_order) {
        return Err(CliError::Usage(format!(
            "prefix too short for max-order {max_order}: need at least {} terms, got {len}",
            required_len(max_order)
        )));
    }
    let (table, reference) = match params.q() {
        None => {
            let p = params.p();
            let t = seq_order_p(p, len + p - 1)?
                .slice_from(p)
                .expect("len >= 1");
            (t, LinearRecurrence::order_p(p)?)
        }
        Some(_) => {
            let (p, q) = params.require_p_lt_q()?;
            let t = seq_order_pq_coupled(p, q, len + q)?
                .slice_from(q + 1)
                .expect("len >= 1");
            (t, LinearRecurrence::uncoupled_pq(q)?)
        }
    };
    let prefix = table.signed_values();
    let mut out = String::new();
    let _ = writeln!(out, "family: {params}");
    let _ = writeln!(
        out,
        "prefix: {} terms, n = {}..={}",
        prefix.len(),
        table.first_index(),
        table.last_index()
    );
    match detect_minimal(&prefix, max_order)? {
        Detection::Found(found) => {
            let rec = &found.recurrence;
            let _ = writeln!(out, "order: {}", rec.order());
            let _ = writeln!(out, "coefficients: {}", join(rec.coefficients()));
            let _ = writeln!(
                out,
                "characteristic: {}",
                join(&characteristic_coefficients(rec))
            );
            let _ = writeln!(out, "minimal: {}", found.minimal);
            let _ = writeln!(out, "recurrence: {rec}");
        }
        Detection::NoneFound { searched_up_to } => {
            let _ = writeln!(out, "order: none up to {searched_up_to}");
        }
    }
    let annihilates = prefix.len() > reference.order() && verify_annihilates(&reference, &prefix)?;
    let _ = writeln!(
        out,
        "reference order-{} recurrence annihilates prefix: {annihilates}",
        reference.order()
    );
    Ok(out)
}

fn fastest<F: FnMut() -> Result<BigUint, CliError>>(
    reps: u32,
    mut f: F,
) -> Result<Duration, CliError> {
    let mut best = Duration::MAX;
    for _ in 0..reps {
        let start = Instant::now();
        std::hint::black_box(f()?);
        best = best.min(start.elapsed());
    }
    Ok(best)
}

/// Per-n timings as CSV, followed by `#` summary lines over the range every
/// method covers.
pub fn bench(oracle: &Oracle, args: &BenchArgs) -> Result<String, CliError> {
    let params = args.family.params()?;
    if params.q().is_some() {
        params.require_p_lt_q()?;
    }
    let mut legs: Vec<(&str, MethodArg)> = vec![
        ("enumeration", MethodArg::Enum),
        ("closed_form", MethodArg::Closed),
    ];
    if params.q().is_some() {
        legs.push(("recurrence_coupled", MethodArg::Rec));
        legs.push(("recurrence_uncoupled", MethodArg::RecUncoupled));
    } else {
        legs.push(("recurrence", MethodArg::Rec));
    }

    let mut out = String::from("n");
    for (name, _) in &legs {
        let _ = write!(out, ",{name}_ns");
    }
    out.push('\n');

    let mut totals = vec![Duration::ZERO; legs.len()];
    let shared = args.max_n.min(oracle.ceiling());
    for n in 1..=args.max_n {
        let _ = write!(out, "{n}");
        for (i, (_, method)) in legs.iter().enumerate() {
            if *method == MethodArg::Enum && n > oracle.ceiling() {
                out.push(',');
                continue;
            }
            let elapsed = fastest(args.reps, || match method {
                MethodArg::Enum => Ok(oracle.count(params, n)?),
                MethodArg::Closed => Ok(term(params, n)?.value),
                _ => Ok(compute_table(oracle, params, n, *method)?
                    .get(n)
                    .cloned()
                    .expect("table reaches n")),
            })?;
            if n <= shared {
                totals[i] += elapsed;
            }
            let _ = write!(out, ",{}", elapsed.as_nanos());
        }
        out.push('\n');
    }

    let _ = writeln!(out, "# totals over n = 1..={shared}");
    for ((name, _), total) in legs.iter().zip(&totals) {
        let _ = writeln!(out, "# {name}_ns,{}", total.as_nanos());
    }
    let (best, _) = legs
        .iter()
        .zip(&totals)
        .min_by_key(|(_, t)| **t)
        .map(|((name, _), t)| (*name, *t))
        .expect("at least one leg");
    let recurrence_best = best.starts_with("recurrence");
    let _ = writeln!(out, "# fastest: {best}");
    let _ = writeln!(out, "# recurrence fastest: {recurrence_best}");
    Ok(out)
}
