use super::*;
use crate::qcalculus::binom2;
use proptest::prelude::*;
use std::collections::HashSet;

fn quiet() -> VerifyConfig {
    VerifyConfig {
        timing: false,
        ..VerifyConfig::default()
    }
}

#[test]
fn registry_is_complete_and_duplicate_free() {
    let reg = registry();
    assert!(reg.len() >= 30);
    assert!(reg.iter().any(|s| s.id == "I-RR1"));
    let mut seen = HashSet::new();
    for s in reg.iter().chain(errata().iter()) {
        assert!(seen.insert(s.id), "duplicate id {}", s.id);
        // tags, expansion, random and overridden names all live in the table
        let vars = s.var_table();
        for (t, _) in s.tags {
            assert!(vars.index_of(t).is_ok(), "{}: {t}", s.id);
        }
        for name in s.random.iter().chain(s.expansion.iter()) {
            assert!(vars.index_of(name).is_ok(), "{}: {name}", s.id);
        }
        for (name, _) in s.cap_overrides {
            assert!(vars.index_of(name).is_ok(), "{}: {name}", s.id);
        }
    }
    for id in [
        "I-POCH-1", "I-POCH-2", "I-POCH-3", "I-QBINTHM", "I-EQ-PROD", "I-EQBIG-PROD", "I-GF1", "I-GF2", "I-GF3",
        "I-LEIBNIZ", "I-DQ-4", "I-DQ-5", "I-DQ-6", "I-DQ-7", "I-DQ-8", "I-DQ-9", "I-RQ-DIFFEQ", "I-RQ-DQN", "I-RR1",
        "I-RR2", "I-GARRETT", "T4-XN", "T4-INVPOCH", "T4-GF", "T4-POCH", "T4-ALTGF", "T4-RATIO", "T4-BY1",
        "T4-BY1-SUM", "T4-SRIAGA", "T4-SRIAGA-YZ1", "T4-2PROD", "T4-2PROD-BY1", "T4-RSGF", "T4-RSGF-BZY1",
        "T4-ABGF", "T5-MEHLER", "T5-OPPROD", "T5-ALTMEHLER", "T6-ROGERS-ALT", "T6-ROGERS",
    ] {
        assert!(reg.iter().any(|s| s.id == id), "missing {id}");
    }
}

#[test]
fn params_are_classified() {
    let by1 = find("T4-BY1").unwrap();
    let kinds: Vec<(String, ParamKind)> = by1.params().into_iter().map(|p| (p.name, p.kind)).collect();
    assert_eq!(
        kinds,
        vec![
            ("a".to_string(), ParamKind::FormalVariable),
            ("b".to_string(), ParamKind::Rational),
            ("x".to_string(), ParamKind::FormalVariable),
            ("y".to_string(), ParamKind::Rational),
        ]
    );
    let poch = find("I-POCH-1").unwrap();
    assert_eq!(poch.params()[1].kind, ParamKind::Integer);
}

#[test]
fn rogers_ramanujan_at_q40() {
    let cfg = VerifyConfig {
        q_max: Some(40),
        ..quiet()
    };
    let r = verify("I-RR1", &cfg).unwrap();
    assert!(r.pass);
    assert_eq!(r.caps.caps.q_max(), 40);
}

#[test]
fn operator_images_of_powers() {
    let r = verify("T4-XN", &quiet()).unwrap();
    assert!(r.pass, "{}", r.summary_line());
    assert_eq!(r.caps.caps.var_caps(), &[10, 10, 10]);
}

fn perturbed_rhs(e: &Env) -> crate::Result<Series> {
    let exact = (find("I-RR1").unwrap().rhs)(e)?;
    Ok(&exact + &e.q(7))
}

#[test]
fn perturbed_side_fails_with_witness() {
    let mut spec = find("I-RR1").unwrap();
    let lhs_before = (spec.lhs)(&Env::new(
        spec.var_table(),
        TruncationSpec::q_only(&spec.var_table(), 25),
        BTreeMap::new(),
        GarrettConvention::Signed,
    ))
    .unwrap();
    spec.rhs = perturbed_rhs;
    let r = verify_spec(&spec, &quiet()).unwrap();
    assert!(!r.pass);
    let w = r.witness.unwrap();
    assert_eq!(w.monomial, "q^7");
    // R(1) has 3 partitions of 7 with parts = 1, 4 mod 5
    assert_eq!(w.lhs, "3/1");
    assert_eq!(w.rhs, "4/1");
    // the other side is untouched
    let lhs_after = (spec.lhs)(&Env::new(
        spec.var_table(),
        TruncationSpec::q_only(&spec.var_table(), 25),
        BTreeMap::new(),
        GarrettConvention::Signed,
    ))
    .unwrap();
    assert_eq!(lhs_before, lhs_after);
}

#[test]
fn garrett_resolution() {
    let res = resolve_garrett_convention(6, 40);
    assert_eq!(res.convention, Some(GarrettConvention::Signed));
    assert!(res.report.pass);
    assert_eq!(res.report.convention.as_deref(), Some("signed"));
    assert_eq!(res.rows.len(), 7);
    // k = 0: both agree
    assert!(res.rows[0].printed.is_none() && res.rows[0].signed.is_none());
    // k = 1: the printed form gives -R(q)
    let (k, w) = res.printed_discrepancy().unwrap();
    assert_eq!(k, 1);
    assert_eq!((w.monomial.as_str(), w.lhs.as_str(), w.rhs.as_str()), ("1", "1/1", "-1/1"));
    for row in &res.rows {
        assert_eq!(row.printed.is_none(), row.k % 2 == 0, "k = {}", row.k);
    }
}

#[test]
fn garrett_entry_records_convention() {
    let r = verify("I-GARRETT", &quiet()).unwrap();
    assert!(r.pass);
    assert_eq!(r.convention.as_deref(), Some("signed"));
    let cfg = VerifyConfig {
        convention: Some(GarrettConvention::Printed),
        ..quiet()
    };
    let r = verify("I-GARRETT", &cfg).unwrap();
    assert!(!r.pass);
    // witness sits on the tag k^1
    assert_eq!(r.witness.unwrap().monomial, "k");
}

#[test]
fn reports_are_deterministic() {
    let cfg = VerifyConfig {
        seed: 11,
        ..quiet()
    };
    let a = verify("T5-OPPROD", &cfg).unwrap().to_json();
    let b = verify("T5-OPPROD", &cfg).unwrap().to_json();
    assert_eq!(a, b);
    let threads: Vec<_> = (0..3)
        .map(|_| {
            let cfg = cfg.clone();
            std::thread::spawn(move || verify("T5-OPPROD", &cfg).unwrap().to_json())
        })
        .collect();
    for t in threads {
        assert_eq!(t.join().unwrap(), a);
    }
    let other = VerifyConfig { seed: 12, ..cfg };
    assert_ne!(verify("T5-OPPROD", &other).unwrap().to_json(), a);
}

#[test]
fn report_json_layout() {
    let r = verify("I-RR2", &quiet()).unwrap();
    let json = r.to_json();
    assert!(json.starts_with(r#"{"id":"I-RR2","pass":true,"caps":{"q":25"#), "{json}");
    assert!(!json.contains("elapsed_ms") && !json.contains("witness") && !json.contains("convention"));
    let timed = verify("I-RR2", &VerifyConfig::default()).unwrap().to_json();
    assert!(timed.contains(r#""elapsed_ms":"#));
}

#[test]
fn constrained_bindings() {
    let r = verify("T4-BY1", &quiet()).unwrap();
    assert!(r.pass);
    assert_eq!(r.bindings.len(), 5);
    let distinct: HashSet<_> = r.bindings.iter().map(|b| b["y"].clone()).collect();
    assert_eq!(distinct.len(), 5);
    for b in &r.bindings {
        let y: Rational = b["y"].parse().unwrap();
        let bb: Rational = b["b"].parse().unwrap();
        assert!((&y * &bb).is_one());
    }
    // a user binding fixes y, so a single trial is run
    let mut cfg = quiet();
    cfg.bindings.insert("y".into(), Rational::new(2, 3));
    let r = verify("T4-BY1", &cfg).unwrap();
    assert_eq!(r.bindings.len(), 1);
    assert_eq!(r.bindings[0]["b"], "3/2");
}

#[test]
fn binding_errors() {
    let mut cfg = quiet();
    cfg.bindings.insert("y".into(), Rational::new(2, 3));
    cfg.bindings.insert("b".into(), Rational::new(2, 3));
    assert!(matches!(verify("T4-BY1", &cfg), Err(HarnessError::BindingViolation(_))));

    let mut cfg = quiet();
    cfg.bindings.insert("w".into(), Rational::new(2, 3));
    assert!(matches!(verify("I-RR1", &cfg), Err(HarnessError::BindingViolation(_))));

    let mut cfg = quiet();
    cfg.bindings.insert("n".into(), Rational::new(2, 1));
    assert!(matches!(verify("I-POCH-1", &cfg), Err(HarnessError::BindingViolation(_))));

    let mut cfg = quiet();
    cfg.caps.insert("w".into(), 3);
    assert!(matches!(verify("I-RR1", &cfg), Err(HarnessError::BindingViolation(_))));

    let cfg = VerifyConfig { trials: 0, ..quiet() };
    assert!(matches!(verify("T4-BY1", &cfg), Err(HarnessError::BindingViolation(_))));

    assert!(matches!(verify("NOPE", &quiet()), Err(HarnessError::UnknownIdentity(_))));
}

#[test]
fn ratio_parameters_need_rationals() {
    let spec = find("T6-ROGERS-ALT").unwrap();
    let env = Env::new(
        spec.var_table(),
        TruncationSpec::uniform(&spec.var_table(), 10, 3),
        BTreeMap::new(),
        GarrettConvention::Signed,
    );
    assert!((spec.rhs)(&env).is_err());
}

#[test]
fn formal_bindings_of_free_variables() {
    // a formal variable may still be pinned to a rational
    let mut cfg = quiet();
    cfg.bindings.insert("a".into(), Rational::new(-1, 2));
    let r = verify("I-QBINTHM", &cfg).unwrap();
    assert!(r.pass);
    assert_eq!(r.caps.caps.var_caps(), &[0, 8]);
}

#[test]
fn generating_functions_are_order_sound() {
    // the order-N window of the truncated sum does not move when N grows
    for id in ["T4-GF", "T4-ALTGF", "T4-SRIAGA", "T5-MEHLER", "T6-ROGERS"] {
        let spec = find(id).unwrap();
        let small = VerifyConfig {
            q_max: Some(12),
            degree: Some(4),
            sum_order: Some(4),
            trials: 1,
            ..quiet()
        };
        let bindings = trial_bindings(&spec, &small).unwrap().remove(0);
        let caps = requested_caps(&spec, &small, &bindings).unwrap();
        let big = VerifyConfig {
            sum_order: Some(6),
            degree: Some(6),
            ..small.clone()
        };
        let big_caps = requested_caps(&spec, &big, &bindings).unwrap();
        let env = |c: &TruncationSpec| Env::new(spec.var_table(), c.clone(), bindings.clone(), GarrettConvention::Signed);
        let lo = build_side(&spec, "left", spec.lhs, &env(&caps), &caps).unwrap();
        let hi = build_side(&spec, "left", spec.lhs, &env(&big_caps), &big_caps).unwrap();
        assert_eq!(lo.equals_mod_caps(&hi.truncate(&caps)).unwrap(), None, "{id}");
    }
}

#[test]
fn errata_fail() {
    let cfg = VerifyConfig {
        trials: 2,
        ..quiet()
    };
    for spec in errata() {
        match verify_spec(&spec, &cfg) {
            Ok(r) => assert!(!r.pass, "{} unexpectedly holds", spec.id),
            Err(HarnessError::Series(crate::SeriesError::NonIntegerExponent(_))) => {
                assert_eq!(spec.id, "E-T4-2PROD-BY1")
            }
            Err(e) => panic!("{}: {e}", spec.id),
        }
    }
}

#[test]
fn printed_difference_equation_witness() {
    let cfg = VerifyConfig {
        q_max: Some(30),
        degree: Some(10),
        ..quiet()
    };
    let r = verify("E-RQ-DIFFEQ", &cfg).unwrap();
    let w = r.witness.unwrap();
    assert_eq!((w.monomial.as_str(), w.lhs.as_str(), w.rhs.as_str()), ("z", "0/1", "1/1"));
    assert!(verify("I-RQ-DIFFEQ", &cfg).unwrap().pass);
}

#[test]
fn precision_is_widened_not_lost() {
    // q^-binom(k,2) in the Garrett form eats 15 powers of q at k = 6
    let cfg = VerifyConfig {
        q_max: Some(40),
        ..quiet()
    };
    let r = verify("I-GARRETT", &cfg).unwrap();
    assert!(r.pass);
    assert_eq!(r.caps.caps.q_max(), 40);
}

#[test]
fn pooled_reports_match_sequential_order() {
    let ids = ["I-RR2", "E-EQ-PHI", "I-POCH-1", "E-T4-2PROD-BY1", "T4-XN"];
    let specs: Vec<IdentitySpec> = ids.iter().map(|id| find(id).unwrap()).collect();
    let cfg = VerifyConfig {
        convention: Some(GarrettConvention::Signed),
        ..quiet()
    };
    let pooled = verify_many(&specs, &cfg);
    for (id, r) in ids.iter().zip(&pooled) {
        assert_eq!(r, &verify(id, &cfg));
    }
    assert!(pooled[1].as_ref().is_ok_and(|r| !r.pass));
    assert!(pooled[3].is_err());
}

#[test]
fn convention_parsing() {
    assert_eq!("signed".parse::<GarrettConvention>(), Ok(GarrettConvention::Signed));
    assert_eq!("printed".parse::<GarrettConvention>(), Ok(GarrettConvention::Printed));
    assert!("other".parse::<GarrettConvention>().is_err());
    assert_eq!(GarrettConvention::Signed.sign(3), -Rational::ONE);
    assert_eq!(GarrettConvention::Signed.sign(4), Rational::ONE);
    assert_eq!(GarrettConvention::Printed.sign(3), Rational::ONE);
}

proptest! {
    #[test]
    fn binomial_exponent_identities(n in -200i64..200, k in -200i64..200) {
        prop_assert_eq!(binom2(n + k), binom2(n) + binom2(k) + n * k);
        prop_assert_eq!(binom2(n - k), binom2(n) + binom2(k) + k * (1 - n));
    }
}
