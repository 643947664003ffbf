//! One function per subcommand. Each returns the rendered report; refusals
//! and bad arguments come back as [`CliError`].

use std::time::Instant;

use pipow_core::exactnum::guard_digits;
use pipow_core::series::{
    converge_with, partial_sum_exact, Mode, SigmaRow, EXACT_MODE_MAX_TRUNCATION,
};
use pipow_core::symmetric::THEOREM_PRACTICAL_CEILING;
use pipow_core::{
    expand_product, fixed_from_rational, newton_cross_check, partial_sum, partial_sum_naive,
    verify_theorem1, BigRational, Error, SeriesResult, SincEval,
};

use crate::cache::shared_pi;
use crate::config::{require, DEFAULT_SINC_TERMS, DEFAULT_TABLE_TRUNCATION};
use crate::report::{
    csv_rows, json_pretty, render_bench, render_series, render_table, BenchRecord, SeriesRecord,
    SincRecord, TheoremRecord,
};
use crate::{exit, CliError, Format, ModeChoice, Outcome, RunConfig, SubcommandKind};

/// Largest depth and truncation of the exact-oracle grid in `verify-theorem`.
const ORACLE_MAX_DEPTH: u32 = 4;
const ORACLE_MAX_TRUNCATION: u32 = 20;

/// Grid of `bench`: literal loops are only timed up to N = 35.
const BENCH_DEPTHS: [usize; 4] = [1, 2, 3, 4];
const BENCH_NAIVE_TRUNCATIONS: [u64; 4] = [10, 20, 30, 35];
const BENCH_SWEEP_DEPTH: usize = 4;
/// The sweep is timed at powers of ten up to this, or the work ceiling if lower.
const BENCH_SWEEP_MAX: u64 = 100_000;
const BENCH_REFUSAL: (usize, u64) = (5, 100);

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.subcommand {
        SubcommandKind::Sum => cmd_sum(config),
        SubcommandKind::Converge => cmd_converge(config),
        SubcommandKind::Table => cmd_table(config),
        SubcommandKind::VerifyTheorem => cmd_verify_theorem(config),
        SubcommandKind::Expand => cmd_expand(config),
        SubcommandKind::Sinc => cmd_sinc(config),
        SubcommandKind::Bench => cmd_bench(config),
    }
}

fn resolve_mode(config: &RunConfig, truncation: u64) -> Result<Mode, CliError> {
    let mode = match config.mode {
        Some(ModeChoice::Exact) => Mode::Exact,
        Some(ModeChoice::Fixed) => Mode::Fixed {
            digits: config.digits,
        },
        None => Mode::default_for(truncation, config.digits),
    };
    if mode == Mode::Exact && truncation > EXACT_MODE_MAX_TRUNCATION && !config.force_exact {
        return Err(CliError::Refused(format!(
            "exact mode at N = {truncation} exceeds N = {EXACT_MODE_MAX_TRUNCATION}; \
             use --mode fixed or pass --force-exact"
        )));
    }
    Ok(mode)
}

fn check_ceiling(truncation: u64, ceiling: u64) -> Result<(), CliError> {
    if truncation > ceiling {
        return Err(CliError::Refused(format!(
            "N = {truncation} exceeds the work ceiling {ceiling} (--work-ceiling or PIPOW_WORK_CEILING)"
        )));
    }
    Ok(())
}

pub fn cmd_sum(config: &RunConfig) -> Result<Outcome, CliError> {
    let depth = require(config.depth, "--depth", "sum")?;
    let truncation = require(config.truncation, "--upto", "sum")?;
    check_ceiling(truncation, config.work_ceiling)?;
    let mode = resolve_mode(config, truncation)?;
    let value = partial_sum(depth, truncation, mode);
    let result = SeriesResult::assemble(
        &mut shared_pi(),
        depth,
        truncation,
        mode,
        config.digits,
        value,
    );
    let record = SeriesRecord::from_result(&result, config.digits, config.as_decimal);
    Ok(Outcome::success(render_series(&record, config.format)))
}

pub fn cmd_converge(config: &RunConfig) -> Result<Outcome, CliError> {
    let depth = require(config.depth, "--depth", "converge")?;
    let result = converge_with(&mut shared_pi(), depth, config.digits, config.work_ceiling).map_err(|e| match e {
        Error::WorkCeiling { required, ceiling, .. } => CliError::Refused(format!(
            "reaching {} digits at depth {depth} requires N = {required}, above the work ceiling {ceiling}",
            config.digits
        )),
        other => CliError::Invalid(other.to_string()),
    })?;
    let record = SeriesRecord::from_result(&result, config.digits, config.as_decimal);
    Ok(Outcome::success(render_series(&record, config.format)))
}

/// Rows `1..=max_depth`, each summed on its own thread and assembled in
/// row order.
pub fn cmd_table(config: &RunConfig) -> Result<Outcome, CliError> {
    let max_depth = require(config.max_depth, "--max-depth", "table")?;
    if max_depth == 0 {
        return Err(CliError::Invalid("--max-depth must be at least 1".into()));
    }
    let truncation = config
        .truncation
        .unwrap_or(DEFAULT_TABLE_TRUNCATION)
        .min(config.work_ceiling);
    let mode = resolve_mode(config, truncation)?;
    let values = std::thread::scope(|scope| {
        let handles: Vec<_> = (1..=max_depth)
            .map(|n| scope.spawn(move || partial_sum(n, truncation, mode)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep thread panicked"))
            .collect::<Vec<_>>()
    });
    let mut pi = shared_pi();
    let records: Vec<SeriesRecord> = values
        .into_iter()
        .zip(1..)
        .map(|(value, n)| {
            let result = SeriesResult::assemble(&mut pi, n, truncation, mode, config.digits, value);
            SeriesRecord::from_result(&result, config.digits, config.as_decimal)
        })
        .collect();
    Ok(Outcome::success(render_table(&records, config.format)))
}

/// Checks the product expansion against the nested sum and the recurrence,
/// then the three exact evaluations of `Sₙ(N)` on a small grid.
pub fn cmd_verify_theorem(config: &RunConfig) -> Result<Outcome, CliError> {
    let m = require(config.m, "--m", "verify-theorem")?;
    let mut warnings = Vec::new();
    if m > THEOREM_PRACTICAL_CEILING {
        warnings.push(format!(
            "M = {m} is above {THEOREM_PRACTICAL_CEILING}; the expansion has 2^{m} monomials and may be slow"
        ));
    }
    let report = verify_theorem1(m);

    let mut oracle_cases = 0;
    let mut oracle_mismatch = None;
    'grid: for n in 0..=m.min(ORACLE_MAX_DEPTH) as usize {
        for truncation in n as u64..=m.min(ORACLE_MAX_TRUNCATION) as u64 {
            let swept = partial_sum_exact(n, truncation);
            let naive =
                partial_sum_naive(n, truncation).map_err(|e| CliError::Invalid(e.to_string()))?;
            let newton = newton_cross_check(n, truncation);
            oracle_cases += 1;
            if swept != naive || swept != newton {
                oracle_mismatch = Some(format!(
                    "n = {n}, N = {truncation}: sweep {swept}, loops {naive}, Newton {newton}"
                ));
                break 'grid;
            }
        }
    }

    let mismatch = report.mismatch.as_ref();
    let passed = mismatch.is_none() && oracle_mismatch.is_none();
    let verdict = |ok: bool| if ok { "pass" } else { "FAIL" }.to_string();
    let record = TheoremRecord {
        m,
        theorem: verdict(mismatch.is_none()),
        coefficients_checked: report.checked,
        oracles: verdict(oracle_mismatch.is_none()),
        oracle_cases,
        mismatch_k: mismatch.map(|x| x.k),
        expansion: mismatch.map(|x| x.expansion.to_string()),
        nested_sum: mismatch.map(|x| x.nested_sum.to_string()),
        recurrence: mismatch.map(|x| x.recurrence.to_string()),
        oracle_mismatch,
    };
    Ok(Outcome {
        output: record.render(config.format),
        exit_code: if passed {
            exit::SUCCESS
        } else {
            exit::MISMATCH
        },
        warnings,
    })
}

#[derive(serde::Serialize)]
struct ExpandRow {
    power: usize,
    terms: usize,
    coefficient: String,
}

/// Coefficient of each `t^k` in `∏_{k≤m} (1 + x_k t)`.
pub fn cmd_expand(config: &RunConfig) -> Result<Outcome, CliError> {
    let m = require(config.m, "--m", "expand")?;
    let mut warnings = Vec::new();
    if m > THEOREM_PRACTICAL_CEILING {
        warnings.push(format!("M = {m}: the expansion has 2^{m} monomials"));
    }
    let rows: Vec<ExpandRow> = expand_product(m)
        .coefficients_by_power
        .iter()
        .enumerate()
        .map(|(power, p)| ExpandRow {
            power,
            terms: p.num_terms(),
            coefficient: p.to_string(),
        })
        .collect();
    let output = match config.format {
        Format::Text => rows
            .iter()
            .map(|r| format!("t^{}: {}\n", r.power, r.coefficient))
            .collect(),
        Format::Csv => csv_rows(&rows),
        Format::Json => json_pretty(&rows),
    };
    Ok(Outcome {
        output,
        exit_code: exit::SUCCESS,
        warnings,
    })
}

pub fn cmd_sinc(config: &RunConfig) -> Result<Outcome, CliError> {
    let x = config
        .x
        .clone()
        .ok_or_else(|| CliError::Invalid("`sinc` needs --x".into()))?;
    let terms = config.terms.unwrap_or(DEFAULT_SINC_TERMS);
    check_ceiling(terms, config.work_ceiling)?;
    let eval = SincEval::compute(&x, terms, config.powers, config.digits);
    let record = SincRecord::new(
        x.to_string(),
        terms,
        config.powers,
        [&eval.product_value, &eval.series_value, &eval.reference],
        config.digits,
    );
    Ok(Outcome::success(record.render(config.format)))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let value = f();
    (
        value,
        start.elapsed().as_micros().try_into().unwrap_or(u64::MAX),
    )
}

/// Times the literal loops, the exact sweep and Newton's identities on a
/// fixed grid after checking that all three agree, then fixed-point sweeps
/// at growing N.
pub fn cmd_bench(config: &RunConfig) -> Result<Outcome, CliError> {
    let digits = config.digits;
    let shown = |q: &BigRational| fixed_from_rational(q, digits, 0).to_decimal_string(digits);
    let mut records = Vec::new();

    for &n in &BENCH_DEPTHS {
        for &truncation in &BENCH_NAIVE_TRUNCATIONS {
            let (naive, naive_us) = timed(|| partial_sum_naive(n, truncation));
            let naive = naive.map_err(|e| CliError::Refused(e.to_string()))?;
            let (swept, sweep_us) = timed(|| partial_sum_exact(n, truncation));
            let (newton, newton_us) = timed(|| newton_cross_check(n, truncation));
            if naive != swept || swept != newton {
                return Err(CliError::Mismatch(format!(
                    "n = {n}, N = {truncation}: loops {naive}, sweep {swept}, Newton {newton}"
                )));
            }
            let value = Some(shown(&swept));
            for (method, micros) in [
                ("naive", naive_us),
                ("dp-exact", sweep_us),
                ("newton", newton_us),
            ] {
                records.push(BenchRecord {
                    method: method.into(),
                    depth: n,
                    truncation,
                    ring_ops: (method == "dp-exact").then_some(n as u64 * truncation),
                    micros: Some(micros),
                    value: value.clone(),
                    note: None,
                });
            }
        }
    }

    let top = BENCH_SWEEP_MAX.min(config.work_ceiling);
    let sweep_sizes =
        std::iter::successors(Some(100u64), |&t| t.checked_mul(10)).take_while(|&t| t <= top);
    for truncation in sweep_sizes {
        let n = BENCH_SWEEP_DEPTH;
        let (row, micros) = timed(|| {
            let mut row = SigmaRow::fixed(n, digits, guard_digits(truncation, n));
            row.advance_to(truncation);
            row
        });
        records.push(BenchRecord {
            method: "dp-fixed".into(),
            depth: n,
            truncation,
            ring_ops: Some(row.ring_ops()),
            micros: Some(micros),
            value: Some(row.get(n).to_decimal_string(digits)),
            note: None,
        });
    }

    let (n, truncation) = BENCH_REFUSAL;
    if let Err(e) = partial_sum_naive(n, truncation) {
        records.push(BenchRecord {
            method: "naive".into(),
            depth: n,
            truncation,
            ring_ops: None,
            micros: None,
            value: None,
            note: Some(format!("refused: {e}")),
        });
    }

    Ok(Outcome::success(render_bench(&records, config.format)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(kind: SubcommandKind) -> RunConfig {
        RunConfig::new(kind)
    }

    #[test]
    fn sum_exact_small() {
        let mut c = config(SubcommandKind::Sum);
        c.depth = Some(2);
        c.truncation = Some(3);
        c.mode = Some(ModeChoice::Exact);
        let out = cmd_sum(&c).unwrap();
        assert!(out.output.contains("value: 7/18"), "{}", out.output);
    }

    #[test]
    fn sum_refuses_large_exact() {
        let mut c = config(SubcommandKind::Sum);
        c.depth = Some(1);
        c.truncation = Some(5000);
        c.mode = Some(ModeChoice::Exact);
        assert_eq!(cmd_sum(&c).unwrap_err().exit_code(), exit::REFUSED);
        c.truncation = Some(50);
        c.work_ceiling = 10;
        assert_eq!(cmd_sum(&c).unwrap_err().exit_code(), exit::REFUSED);
    }

    #[test]
    fn missing_arguments_are_invalid() {
        assert_eq!(
            cmd_sum(&config(SubcommandKind::Sum))
                .unwrap_err()
                .exit_code(),
            exit::INVALID
        );
        let mut c = config(SubcommandKind::Converge);
        c.depth = Some(0);
        assert_eq!(cmd_converge(&c).unwrap_err().exit_code(), exit::INVALID);
        let mut t = config(SubcommandKind::Table);
        t.max_depth = Some(0);
        assert_eq!(cmd_table(&t).unwrap_err().exit_code(), exit::INVALID);
    }

    #[test]
    fn converge_refusal_names_required_n() {
        let mut c = config(SubcommandKind::Converge);
        c.depth = Some(2);
        c.digits = 50;
        match cmd_converge(&c).unwrap_err() {
            CliError::Refused(msg) => assert!(msg.contains("requires N = "), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verify_theorem_small() {
        let mut c = config(SubcommandKind::VerifyTheorem);
        c.m = Some(4);
        let out = cmd_verify_theorem(&c).unwrap();
        assert_eq!(out.exit_code, exit::SUCCESS);
        assert!(out.warnings.is_empty());
        assert!(out.output.contains("theorem: pass"));
    }

    #[test]
    fn expand_two_variables() {
        let mut c = config(SubcommandKind::Expand);
        c.m = Some(2);
        let out = cmd_expand(&c).unwrap();
        assert_eq!(out.output, "t^0: 1\nt^1: x_1 + x_2\nt^2: x_1*x_2\n");
    }

    #[test]
    fn table_rows_in_order() {
        let mut c = config(SubcommandKind::Table);
        c.max_depth = Some(3);
        c.truncation = Some(50);
        c.format = Format::Json;
        let out = cmd_table(&c).unwrap();
        let rows: Vec<SeriesRecord> = serde_json::from_str(&out.output).unwrap();
        assert_eq!(rows.iter().map(|r| r.depth).collect::<Vec<_>>(), [1, 2, 3]);
        assert!(rows.iter().all(|r| r.mode == "exact"));
    }
}
