//! Measures which sign convention makes the Garrett expansion agree with the
//! direct sum.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{GarrettConvention, Report, Stopwatch, WitnessReport};
use crate::qcalculus::{binom2, garrett, rq, rq_at_power, GarrettKind};
use crate::rational::Rational;
use crate::series::{monomial_text, CapsJson, Monomial, Series, TruncationSpec, VarTable};

/// Outcome of both conventions at one `k`.
#[derive(Debug, Clone, Serialize)]
pub struct GarrettRow {
    pub k: u32,
    pub printed: Option<WitnessReport>,
    pub signed: Option<WitnessReport>,
}

impl GarrettRow {
    pub fn holds(&self, c: GarrettConvention) -> bool {
        match c {
            GarrettConvention::Printed => self.printed.is_none(),
            GarrettConvention::Signed => self.signed.is_none(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GarrettResolution {
    /// The single convention that holds for every `k`, if there is one.
    pub convention: Option<GarrettConvention>,
    pub rows: Vec<GarrettRow>,
    pub report: Report,
}

impl GarrettResolution {
    /// First `k` where the printed convention fails, with its witness.
    pub fn printed_discrepancy(&self) -> Option<(u32, &WitnessReport)> {
        self.rows.iter().find_map(|r| r.printed.as_ref().map(|w| (r.k, w)))
    }
}

/// Compares `sum q^(n^2+kn)/(q;q)_n` with both candidate expansions for every
/// `0 <= k <= k_max`, on the window `q^0..q^q_max`.
pub fn resolve_garrett_convention(k_max: u32, q_max: i64) -> GarrettResolution {
    let clock = Stopwatch::start();
    let vars = VarTable::new(std::iter::empty::<&str>()).expect("empty table");
    let caps = TruncationSpec::q_only(&vars, q_max);
    // q^(-binom(k,2)) eats into the window, so R(1) and R(q) are expanded further
    let wide = caps.clone().with_q_max(q_max + binom2(k_max as i64));
    let r1 = rq(&Series::one(&vars), &wide).expect("R(1) terminates");
    let rqq = rq(&Series::q_pow(&vars, 1), &wide).expect("R(q) terminates");

    let mut rows = Vec::new();
    for k in 0..=k_max {
        let direct = rq_at_power(&vars, k, &caps).expect("finite window");
        let a = garrett(&vars, GarrettKind::A, k);
        let b = garrett(&vars, GarrettKind::B, k);
        let base = (&(&a * &r1) - &(&b * &rqq)) * Series::q_pow(&vars, -binom2(k as i64));
        let mut row = GarrettRow {
            k,
            printed: None,
            signed: None,
        };
        for c in GarrettConvention::ALL {
            let candidate = base.scale(&c.sign(k)).truncate(&caps);
            let w = direct
                .equals_mod_caps(&candidate)
                .expect("same table")
                .map(|w| WitnessReport {
                    monomial: monomial_text(&vars, &w.monomial),
                    lhs: w.lhs.to_fraction_string(),
                    rhs: w.rhs.to_fraction_string(),
                });
            match c {
                GarrettConvention::Printed => row.printed = w,
                GarrettConvention::Signed => row.signed = w,
            }
        }
        rows.push(row);
    }

    let holding: Vec<GarrettConvention> = GarrettConvention::ALL
        .into_iter()
        .filter(|&c| rows.iter().all(|r| r.holds(c)))
        .collect();
    let convention = match holding.as_slice() {
        [c] => Some(*c),
        _ => None,
    };
    let witness = match convention {
        Some(_) => None,
        None => rows
            .iter()
            .find_map(|r| r.signed.clone().or_else(|| r.printed.clone())),
    };
    let witness = match (convention, witness) {
        (None, None) => Some(WitnessReport {
            monomial: monomial_text(&vars, &Monomial::one(&vars)),
            lhs: Rational::ONE.to_fraction_string(),
            rhs: Rational::ONE.to_fraction_string(),
        }),
        (_, w) => w,
    };
    let report = Report {
        id: "GARRETT-CONVENTION".to_string(),
        pass: convention.is_some(),
        convention: convention.map(|c| c.tag().to_string()),
        witness,
        caps: CapsJson { vars, caps },
        bindings: vec![BTreeMap::new()],
        elapsed_ms: clock.elapsed_ms(),
    };
    GarrettResolution {
        convention,
        rows,
        report,
    }
}
