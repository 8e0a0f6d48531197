//! Acceptance criteria, one line each.
//!
//! Every comparison is exact: two series agree when every coefficient on the
//! requested window is equal as a rational. The only tolerances are the wall
//! clock limits below.
//!
//! Exit status is non-zero when a criterion fails that is not listed in
//! `KNOWN_FALSE`, or when a listed one unexpectedly passes. Set
//! `QSW_ACCEPTANCE_STRICT=1` to fail on every FAIL line instead.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use qsw_core::harness::{
    coherence, registry, HResult, resolve_garrett_convention, verify, verify_many, Report, VerifyConfig,
};
use qsw_core::qcalculus::{poch, rq, PochSpec};
use qsw_core::qoperators::{dq_pow, leibniz_rhs, OperatorContext};
use qsw_core::swpoly::{sw_star, sw_star_op};
use qsw_core::{Monomial, Rational, Series, TruncationSpec, VarTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RR_Q_MAX: i64 = 60;
const RR_LIMIT: Duration = Duration::from_secs(5);
const SW_STAR_MAX_N: u32 = 12;
const SW_STAR_LIMIT: Duration = Duration::from_secs(2);
const LEIBNIZ_PAIRS: usize = 100;
const LEIBNIZ_MAX_N: u32 = 5;
const LEIBNIZ_SEED: u64 = 0x5eed;
const GF_ORDER: i64 = 8;
const GF_LIMIT: Duration = Duration::from_secs(30);
const MIN_RATIONAL_TRIALS: usize = 5;
const GARRETT_K_MAX: u32 = 6;
const GARRETT_Q_MAX: i64 = 40;
const COHERENCE_EXTRA_Q: i64 = 5;

/// Criteria whose statement is false as written. They are still evaluated and
/// printed as FAIL.
const KNOWN_FALSE: &[u32] = &[9];

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn quiet() -> VerifyConfig {
    VerifyConfig {
        timing: false,
        ..VerifyConfig::default()
    }
}

fn describe(r: &Report) -> String {
    match &r.witness {
        None => format!("{} ok", r.id),
        Some(w) => format!("{} differs at {} ({} vs {})", r.id, w.monomial, w.lhs, w.rhs),
    }
}

/// Runs `ids` under `cfg`; passes when every report passes.
fn all_pass(ids: &[&str], cfg: &VerifyConfig) -> (bool, Vec<Report>, Vec<String>) {
    let mut ok = true;
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    for id in ids {
        match verify(id, cfg) {
            Ok(r) => {
                ok &= r.pass;
                if !r.pass {
                    notes.push(describe(&r));
                }
                reports.push(r);
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{id}: {e}"));
            }
        }
    }
    (ok, reports, notes)
}

fn rogers_ramanujan_values() -> Outcome {
    let vars = VarTable::new(std::iter::empty::<&str>()).unwrap();
    let caps = TruncationSpec::q_only(&vars, RR_Q_MAX);
    let mut notes = Vec::new();
    let mut ok = true;
    for (shift, residues) in [(0, [1u32, 4]), (1, [2, 3])] {
        let start = Instant::now();
        let sum = rq(&Series::q_pow(&vars, shift), &caps).unwrap();
        let args = residues.iter().map(|&r| Series::q_pow(&vars, r as i64)).collect();
        let prod = poch(&PochSpec::infinite(args).with_base(5), &caps).unwrap();
        let inv = Series::one(&vars).truncate(&caps).checked_div(&prod).unwrap();
        let elapsed = start.elapsed();
        let covered = sum.caps().covers(&caps) && inv.caps().covers(&caps);
        let same = sum.equals_mod_caps(&inv).unwrap().is_none();
        ok &= covered && same && elapsed < RR_LIMIT;
        notes.push(format!(
            "R(q^{shift}) vs 1/(q^{},q^{};q^5) {} in {} ms",
            residues[0],
            residues[1],
            if same && covered { "agree" } else { "DIFFER" },
            elapsed.as_millis()
        ));
    }
    Outcome::new(ok, format!("to q^{RR_Q_MAX}: {}", notes.join("; ")))
}

fn q_binomial_theorem() -> Outcome {
    let cfg = VerifyConfig {
        q_max: Some(30),
        degree: Some(10),
        ..quiet()
    };
    match verify("I-QBINTHM", &cfg) {
        Ok(r) => {
            let formal = r.bindings.iter().all(|b| b.is_empty());
            Outcome::new(r.pass && formal, format!("{}, a and z formal: {formal}", describe(&r)))
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn operator_image_of_powers() -> Outcome {
    let vars = VarTable::new(["x", "y"]).unwrap();
    let ctx = OperatorContext::new("x", "y").unwrap();
    let exact = TruncationSpec::exact(&vars);
    let x = Series::var(&vars, "x").unwrap();
    let y = Series::var(&vars, "y").unwrap();
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 0..=SW_STAR_MAX_N {
        let op = sw_star_op(&vars, &ctx, n, &exact).unwrap();
        let closed = sw_star(&x, &y, n, &exact).unwrap();
        if !(op.is_exact() && op == closed) {
            bad.push(n);
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        bad.is_empty() && elapsed < SW_STAR_LIMIT,
        format!(
            "n = 0..={SW_STAR_MAX_N}, exact, mismatches {bad:?}, {} ms (limit {} ms)",
            elapsed.as_millis(),
            SW_STAR_LIMIT.as_millis()
        ),
    )
}

fn random_series(vars: &Arc<VarTable>, rng: &mut ChaCha8Rng, caps: &TruncationSpec) -> Series {
    let len = rng.gen_range(1..=8);
    let terms = (0..len).map(|_| {
        let c = Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=5));
        let m = Monomial::from_pairs(vars, rng.gen_range(0..10), &[("x", rng.gen_range(0..8))]).unwrap();
        (c, m)
    });
    Series::make_series(vars, terms, caps.clone()).unwrap()
}

fn leibniz_rule() -> Outcome {
    let vars = VarTable::new(["x"]).unwrap();
    let caps = TruncationSpec::uniform(&vars, 16, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(LEIBNIZ_SEED);
    let mut failures = 0;
    for _ in 0..LEIBNIZ_PAIRS {
        let f = random_series(&vars, &mut rng, &caps);
        let g = random_series(&vars, &mut rng, &caps);
        let n = rng.gen_range(0..=LEIBNIZ_MAX_N);
        let direct = dq_pow(&f.checked_mul(&g).unwrap(), "x", n).unwrap();
        let expanded = leibniz_rhs(&f, &g, "x", n).unwrap();
        if direct.equals_mod_caps(&expanded).unwrap().is_some() {
            failures += 1;
        }
    }
    Outcome::new(
        failures == 0,
        format!("{LEIBNIZ_PAIRS} random pairs, n <= {LEIBNIZ_MAX_N}, seed {LEIBNIZ_SEED:#x}: {failures} mismatches"),
    )
}

fn derivative_closed_forms() -> Outcome {
    let ids = ["I-DQ-4", "I-DQ-5", "I-DQ-6", "I-DQ-7", "I-DQ-8", "I-DQ-9"];
    let cfg = VerifyConfig {
        q_max: Some(25),
        degree: Some(8),
        caps: [("n".to_string(), 4)].into(),
        ..quiet()
    };
    let (ok, reports, notes) = all_pass(&ids, &cfg);
    let formal = reports.iter().all(|r| r.bindings.iter().all(|b| b.is_empty()));
    Outcome::new(
        ok && formal && reports.len() == ids.len(),
        format!(
            "{} of {} at n <= 4, qMax 25, degree 8, a and b formal: {formal}{}",
            reports.iter().filter(|r| r.pass).count(),
            ids.len(),
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }
        ),
    )
}

fn generating_functions() -> Outcome {
    let ids = ["I-GF1", "I-GF2", "I-GF3", "T4-GF", "T4-ALTGF", "T4-SRIAGA", "T4-ABGF"];
    let cfg = VerifyConfig {
        sum_order: Some(GF_ORDER),
        ..quiet()
    };
    let start = Instant::now();
    let (ok, reports, notes) = all_pass(&ids, &cfg);
    let elapsed = start.elapsed();
    Outcome::new(
        ok && reports.len() == ids.len() && elapsed < GF_LIMIT,
        format!(
            "{} of {} at order {GF_ORDER} in {} ms (limit {} ms){}",
            reports.iter().filter(|r| r.pass).count(),
            ids.len(),
            elapsed.as_millis(),
            GF_LIMIT.as_millis(),
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }
        ),
    )
}

fn mehler_and_rogers() -> Outcome {
    let ids = ["T5-MEHLER", "T5-OPPROD", "T5-ALTMEHLER", "T6-ROGERS-ALT", "T6-ROGERS"];
    let cfg = VerifyConfig {
        sum_order: Some(6),
        degree: Some(6),
        q_max: Some(20),
        trials: MIN_RATIONAL_TRIALS as u32,
        ..quiet()
    };
    let (ok, reports, mut notes) = all_pass(&ids, &cfg);
    let mut enough = true;
    for r in &reports {
        let distinct: BTreeSet<_> = r.bindings.iter().collect();
        let bound = r.bindings.iter().any(|b| !b.is_empty());
        if bound && distinct.len() < MIN_RATIONAL_TRIALS {
            enough = false;
            notes.push(format!("{} ran {} distinct bindings", r.id, distinct.len()));
        }
    }
    let trials: Vec<String> = reports.iter().map(|r| format!("{}x{}", r.id, r.bindings.len())).collect();
    Outcome::new(
        ok && enough && reports.len() == ids.len(),
        format!(
            "order 6, degree 6, qMax 20, trials {}{}",
            trials.join(" "),
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }
        ),
    )
}

fn garrett_resolution() -> Outcome {
    let res = resolve_garrett_convention(GARRETT_K_MAX, GARRETT_Q_MAX);
    let Some(convention) = res.convention else {
        return Outcome::new(false, "no single convention holds for every k");
    };
    let discrepancy = res.printed_discrepancy();
    let at_one = matches!(discrepancy, Some((1, _)));
    let cfg = VerifyConfig {
        convention: Some(convention),
        ..quiet()
    };
    let specs = registry();
    let results = verify_many(&specs, &cfg);
    let passed = results.iter().filter(|r| matches!(r, Ok(rep) if rep.pass)).count();
    let recorded = results
        .iter()
        .flatten()
        .filter(|r| r.convention.is_some())
        .all(|r| r.convention.as_deref() == Some(convention.tag()));
    let shown = match discrepancy {
        Some((k, w)) => format!("printed form first fails at k = {k}: {} vs {} at {}", w.lhs, w.rhs, w.monomial),
        None => "printed form never fails".to_string(),
    };
    Outcome::new(
        at_one && passed == specs.len() && recorded,
        format!(
            "selected {convention} (k <= {GARRETT_K_MAX}, qMax {GARRETT_Q_MAX}); {shown}; verify all {passed}/{}",
            specs.len()
        ),
    )
}

fn difference_equation() -> Outcome {
    let cfg = VerifyConfig {
        q_max: Some(30),
        degree: Some(10),
        ..quiet()
    };
    // the statement exactly as given, then the form that does hold
    let printed = verify("E-RQ-DIFFEQ", &cfg);
    let corrected = verify("I-RQ-DIFFEQ", &cfg);
    let corrected_note = match &corrected {
        Ok(r) if r.pass => "R(z) - R(qz) = qz R(q^2 z) holds".to_string(),
        Ok(r) => describe(r),
        Err(e) => e.to_string(),
    };
    match printed {
        Ok(r) => Outcome::new(
            r.pass,
            format!("(1-q) z R(q^2 z): {}; {corrected_note}", describe(&r).replacen("E-RQ-DIFFEQ ", "", 1)),
        ),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn determinism_and_coherence() -> Outcome {
    let specs = registry();
    let cfg = VerifyConfig {
        seed: 20240917,
        ..quiet()
    };
    let json = |rs: Vec<HResult<Report>>| -> Vec<String> {
        rs.into_iter()
            .map(|r| r.map(|r| r.to_json()).unwrap_or_else(|e| e.to_string()))
            .collect()
    };
    let first = json(verify_many(&specs, &cfg));
    let sequential: Vec<String> = specs
        .iter()
        .map(|s| verify(s.id, &cfg).map(|r| r.to_json()).unwrap_or_else(|e| e.to_string()))
        .collect();
    let identical = first == sequential;

    let mut moved = Vec::new();
    let mut checked = 0;
    for (spec, text) in specs.iter().zip(&first) {
        if !text.contains(r#""pass":true"#) {
            continue;
        }
        checked += 1;
        match coherence(spec.id, &cfg, COHERENCE_EXTRA_Q) {
            Ok(None) => {}
            Ok(Some((side, w))) => moved.push(format!("{} {side} side at {}", spec.id, w.monomial)),
            Err(e) => moved.push(format!("{}: {e}", spec.id)),
        }
    }
    Outcome::new(
        identical && moved.is_empty() && checked == specs.len(),
        format!(
            "{} reports byte-identical between pooled and sequential runs: {identical}; {checked} passing identities rebuilt at qMax+{COHERENCE_EXTRA_Q}, {} changed{}",
            specs.len(),
            moved.len(),
            if moved.is_empty() { String::new() } else { format!(": {}", moved.join(", ")) }
        ),
    )
}

fn main() -> ExitCode {
    let strict = std::env::var("QSW_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [(u32, &str, Check); 10] = [
        (1, "Rogers-Ramanujan special values", rogers_ramanujan_values),
        (2, "q-binomial theorem", q_binomial_theorem),
        (3, "operator image of x^n", operator_image_of_powers),
        (4, "Leibniz rule", leibniz_rule),
        (5, "D_q closed forms", derivative_closed_forms),
        (6, "generating functions", generating_functions),
        (7, "Mehler and Rogers formulas", mehler_and_rogers),
        (8, "Garrett sign resolution", garrett_resolution),
        (9, "difference equation as stated", difference_equation),
        (10, "determinism and truncation coherence", determinism_and_coherence),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (n, title, run) in criteria {
        let start = Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_FALSE.contains(&n);
        let note = if known && !out.pass { " [statement is false as written]" } else { "" };
        println!(
            "{status} {n:>2} {title}: {} ({} ms){note}",
            out.detail,
            start.elapsed().as_millis()
        );
        if out.pass {
            passed += 1;
        }
        if out.pass == known || (strict && !out.pass) {
            unexpected.push(n);
        }
    }
    println!("{passed}/10 criteria pass");
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for {unexpected:?}");
        ExitCode::FAILURE
    }
}
