//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the report is always printed; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pipow_core::series::{partial_sum_exact, partial_sum_fixed, rounding_allowance, SigmaRow};
use pipow_core::symmetric::{
    expand_product, sigma_naive, sigma_recurrence, term_count, verify_theorem1,
};
use pipow_core::{
    basel_power, newton_cross_check, partial_sum_naive, rat, reference_value, sin_over_pix,
    sinc_product, sinc_series, tail_bound, BigRational, FixedDecimal,
};

/// π⁴/5!, π⁶/7!, π⁸/9! as printed by a 50-digit CAS session. The last one
/// carries 51 decimals.
const GOLDEN: [(u32, &str); 3] = [
    (2, "0.81174242528335364363700277240587592708106321393904"),
    (3, "0.19075182412208421369647211183579759898159077938116"),
    (4, "0.026147847817654800504653261419496157949452103923173"),
];

type Check = Result<String, String>;

/// Name, time budget and check.
type Criterion = (&'static str, Duration, fn() -> Check);

fn q(num: i64, den: i64) -> BigRational {
    rat(num, den).expect("nonzero denominator")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Interval `[x − ulp, x + ulp]` known to hold the constant `x` approximates.
fn enclosure(x: &FixedDecimal) -> (BigRational, BigRational) {
    let q = x.to_rational();
    (&q - &x.ulp(), &q + &x.ulp())
}

fn golden_reference() -> Check {
    let mut notes = Vec::new();
    for (n, printed) in GOLDEN {
        let decimals = printed.split('.').nth(1).unwrap().len() as u32;
        let ours = reference_value(n, decimals);
        let ours_str = ours.to_decimal_string(decimals);
        let theirs: FixedDecimal = printed.parse().unwrap();
        let mine: FixedDecimal = ours_str.parse().unwrap();
        let units = (mine.mantissa() - theirs.mantissa()).magnitude().clone();
        ensure(units <= 1u32.into(), || {
            format!("n = {n}: {ours_str} vs {printed}")
        })?;
        notes.push(format!("n={n}: {units} unit(s) at {decimals} decimals"));
    }
    Ok(notes.join(", "))
}

fn basel_convergence() -> Check {
    let truncation = 1_000_000u64;
    let sum = partial_sum_fixed(1, truncation, 12);
    let slack = rounding_allowance(1, truncation, sum.scale());
    let (lo, hi) = enclosure(&basel_power(1, 40));
    let gap_lo = &lo - &sum.to_rational() - slack.clone();
    let gap_hi = &hi - &sum.to_rational() + slack;
    ensure(gap_lo >= q(1, truncation as i64 + 1), || {
        format!("gap below 1/(N+1): {gap_lo}")
    })?;
    ensure(gap_hi <= q(1, truncation as i64), || {
        format!("gap above 1/N: {gap_hi}")
    })?;
    Ok(format!("S_1(10^6) = {}", sum.to_decimal_string(12)))
}

fn depth_two_convergence() -> Check {
    let truncation = 100_000u64;
    let sum = partial_sum_fixed(2, truncation, 30);
    let slack = rounding_allowance(2, truncation, sum.scale());
    let reference = reference_value(2, 30);
    let (lo, hi) = enclosure(&reference);
    let (_, zeta2_hi) = enclosure(&basel_power(1, 30));
    let gap_lo = &lo - &sum.to_rational() - slack.clone();
    let gap_hi = &hi - &sum.to_rational() + slack;
    ensure(gap_lo > BigRational::zero(), || {
        "partial sum reaches the limit".into()
    })?;
    let bound = zeta2_hi / BigRational::from(truncation as i64);
    ensure(gap_hi <= bound, || format!("gap {gap_hi} above (pi^2/6)/N"))?;
    Ok(format!(
        "gap = {}",
        (&reference - &sum).to_decimal_string(15)
    ))
}

fn three_oracles() -> Check {
    let mut cases = 0;
    for n in 1..=4usize {
        for truncation in n as u64..=40 {
            let swept = partial_sum_exact(n, truncation);
            let naive = partial_sum_naive(n, truncation).map_err(|e| e.to_string())?;
            let newton = newton_cross_check(n, truncation);
            ensure(swept == naive && naive == newton, || {
                format!("n = {n}, N = {truncation}: {swept} / {naive} / {newton}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, exact equality"))
}

fn theorem_small_m() -> Check {
    for m in 0..=6u32 {
        let report = verify_theorem1(m);
        ensure(report.passed(), || {
            format!("M = {m}: {:?}", report.mismatch)
        })?;
        let expansion = expand_product(m);
        let recurrence = sigma_recurrence(m, m);
        for k in 0..=m {
            let count = term_count(m as u64, k as u64);
            let ku = k as usize;
            for (what, terms) in [
                ("expansion", expansion.coefficients_by_power[ku].num_terms()),
                ("nested sum", sigma_naive(m, k).num_terms()),
                ("recurrence", recurrence[ku].num_terms()),
            ] {
                ensure(count == terms.into(), || {
                    format!("M = {m}, k = {k}: {what} has {terms} terms")
                })?;
            }
        }
    }
    Ok("M = 0..=6".into())
}

fn spot_values() -> Check {
    let s33 = q(1, 36);
    let s34 = q(1, 36) + q(1, 64) + q(1, 144) + q(1, 576);
    let cases = [(2, 2, q(1, 4)), (2, 3, q(7, 18)), (3, 3, s33), (3, 4, s34)];
    for (n, truncation, expected) in cases {
        let got = partial_sum_exact(n, truncation);
        ensure(got == expected, || {
            format!("S_{n}({truncation}) = {got}, expected {expected}")
        })?;
    }
    Ok("S_2(2), S_2(3), S_3(3), S_3(4)".into())
}

fn tail_bound_soundness() -> Check {
    let mut checked = 0;
    for n in 1..=4usize {
        let (lo, hi) = enclosure(&reference_value(n as u32, 30));
        let mut row = SigmaRow::exact(n);
        for truncation in 1..=200u64 {
            row.advance();
            if truncation < n as u64 {
                continue;
            }
            let value = row.get(n).clone();
            let bound = tail_bound(n, truncation, 30).to_rational();
            ensure(&lo - &value >= BigRational::zero(), || {
                format!("n = {n}, N = {truncation}: above the limit")
            })?;
            ensure(&hi - &value <= bound, || {
                format!("n = {n}, N = {truncation}: tail exceeds B(n, N)")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, N) pairs"))
}

fn sinc_consistency() -> Check {
    let half = q(1, 2);
    let two_over_pi = sin_over_pix(&half, 30).to_rational();
    let dist = |m: u64| (sinc_product(&half, m, 20).to_rational() - two_over_pi.clone()).abs();
    let (d10, d100, d1000) = (dist(10), dist(100), dist(1000));
    ensure(d1000 < d100 && d100 < d10, || {
        "product error not decreasing in M".into()
    })?;
    let series = sinc_series(&half, 6, 1000, 20).to_rational();
    let reference = sin_over_pix(&half, 20).to_rational();
    let dev = (series - reference).abs();
    ensure(dev < q(5, 10_000), || format!("series deviation {dev}"))?;
    let shown = |q: &BigRational| pipow_core::fixed_from_rational(q, 6, 0).to_decimal_string(6);
    Ok(format!(
        "product errors {} > {} > {}; series deviation {}",
        shown(&d10),
        shown(&d100),
        shown(&d1000),
        shown(&dev)
    ))
}

fn upper_bound_invariant() -> Check {
    let top = 10_000u64;
    let digits = 20;
    let mut checked = 0u64;
    for n in 1..=5usize {
        let guard = pipow_core::exactnum::guard_digits(top, n);
        let mut row = SigmaRow::fixed(n, digits, guard);
        let (limit, _) = enclosure(&basel_power(n as u32, digits + 5));
        let ceiling = limit - rounding_allowance(n, top, digits + guard);
        for truncation in 1..=top {
            row.advance();
            let value = row.get(n).to_rational();
            ensure(value < ceiling, || {
                format!("S_{n}({truncation}) reaches (pi^2/6)^{n}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, N) pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "golden 50-digit reference values",
            Duration::from_secs(1),
            golden_reference,
        ),
        (
            "Basel convergence at N = 10^6",
            Duration::from_secs(10),
            basel_convergence,
        ),
        (
            "depth-2 convergence at N = 10^5",
            Duration::from_secs(10),
            depth_two_convergence,
        ),
        (
            "three exact oracles agree, n <= 4, N <= 40",
            Duration::from_secs(30),
            three_oracles,
        ),
        (
            "product expansion = nested sum = recurrence, M <= 6",
            Duration::from_secs(5),
            theorem_small_m,
        ),
        (
            "exact partial-sum spot values",
            Duration::from_secs(5),
            spot_values,
        ),
        (
            "tail bound soundness, n <= 4, N <= 200",
            Duration::from_secs(30),
            tail_bound_soundness,
        ),
        (
            "sinc product and series consistency",
            Duration::from_secs(10),
            sinc_consistency,
        ),
        (
            "S_n(N) < (pi^2/6)^n, n <= 5, N <= 10^4",
            Duration::from_secs(30),
            upper_bound_invariant,
        ),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= limit) {
            (Ok(detail), true) => format!("PASS  {detail}"),
            (Ok(detail), false) => format!("FAIL  over the {limit:?} budget; {detail}"),
            (Err(why), _) => format!("FAIL  {why}"),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!(
            "criterion {} [{:.2} s] {name}: {verdict}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
