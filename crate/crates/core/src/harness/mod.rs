//! Identity registry and verifier.
//!
//! Every identity is a pair of independent builders producing the two sides
//! as truncated series over one variable table. [`verify`] builds both, widens
//! the working window until each side is known on the requested window, and
//! compares coefficient by coefficient.

mod env;
mod errata;
mod eval;
mod garrett;
mod registry;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::error::SeriesError;
use crate::rational::Rational;
use crate::series::{monomial_text, CapsJson, Series, TruncationSpec, VarTable, UNBOUNDED};

pub use env::Env;
pub use errata::errata;
pub use eval::{eval, EvalTarget};
pub use garrett::{resolve_garrett_convention, GarrettResolution, GarrettRow};
pub use registry::registry;

pub const DEFAULT_Q_MAX: i64 = 25;
pub const DEFAULT_DEGREE: i64 = 8;
pub const DEFAULT_SUM_ORDER: i64 = 8;
pub const DEFAULT_TRIALS: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("binding violation: {0}")]
    BindingViolation(String),
    #[error("{id}: {side} side not known on the requested window (reached {reached})")]
    InsufficientPrecision {
        id: String,
        side: &'static str,
        reached: String,
    },
    #[error("{0}")]
    Series(#[from] SeriesError),
}

pub type HResult<T> = std::result::Result<T, HarnessError>;

/// Sign convention for the expansion of `sum q^(n^2+kn)/(q;q)_n` in terms of
/// `a_k`, `b_k` and the two Rogers-Ramanujan series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GarrettConvention {
    /// `q^(-binom(k,2)) (a_k R(1) - b_k R(q))`
    Printed,
    /// the same with an extra `(-1)^k`
    Signed,
}

impl GarrettConvention {
    pub const ALL: [GarrettConvention; 2] = [GarrettConvention::Printed, GarrettConvention::Signed];

    pub fn tag(self) -> &'static str {
        match self {
            GarrettConvention::Printed => "printed",
            GarrettConvention::Signed => "signed",
        }
    }

    pub fn sign(self, k: u32) -> Rational {
        match self {
            GarrettConvention::Signed if k % 2 == 1 => -Rational::ONE,
            _ => Rational::ONE,
        }
    }
}

impl fmt::Display for GarrettConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GarrettConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "printed" => Ok(GarrettConvention::Printed),
            "signed" => Ok(GarrettConvention::Signed),
            _ => Err(format!("unknown convention `{s}` (printed|signed)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamKind {
    FormalVariable,
    Integer,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Param {
    pub name: String,
    pub kind: ParamKind,
}

pub type Builder = fn(&Env) -> crate::error::Result<Series>;
pub type Derive = fn(&mut BTreeMap<String, Rational>);

/// One identity: two builders plus everything needed to choose the window and
/// the bindings.
#[derive(Clone)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub description: &'static str,
    /// Variable table; bound parameters stay in the table but never appear.
    pub vars: &'static [&'static str],
    /// Expansion variable of a generating function. Its cap is the sum order:
    /// coefficients are compared up to that power only.
    pub expansion: Option<&'static str>,
    /// Index variables `(name, max)` that sweep an integer parameter: the
    /// builders return `sum_i side(i) * name^i`.
    pub tags: &'static [(&'static str, i64)],
    /// Parameters drawn as random rationals on every trial.
    pub random: &'static [&'static str],
    /// Fills in parameters fixed by a constraint such as `b = 1/y`.
    pub derive: Option<Derive>,
    /// The constraint in words, for listings.
    pub constraint: Option<&'static str>,
    pub cap_overrides: &'static [(&'static str, i64)],
    pub uses_convention: bool,
    pub lhs: Builder,
    pub rhs: Builder,
}

impl IdentitySpec {
    pub fn params(&self) -> Vec<Param> {
        self.vars
            .iter()
            .map(|&v| {
                let kind = if self.tags.iter().any(|(t, _)| *t == v) {
                    ParamKind::Integer
                } else if self.random.contains(&v) || self.is_derived(v) {
                    ParamKind::Rational
                } else {
                    ParamKind::FormalVariable
                };
                Param {
                    name: v.to_string(),
                    kind,
                }
            })
            .collect()
    }

    fn is_derived(&self, name: &str) -> bool {
        self.derived_names().iter().any(|n| n == name)
    }

    fn derived_names(&self) -> Vec<String> {
        let Some(derive) = self.derive else {
            return Vec::new();
        };
        let mut probe: BTreeMap<String, Rational> = self
            .random
            .iter()
            .map(|r| (r.to_string(), Rational::new(2, 3)))
            .collect();
        let before: Vec<String> = probe.keys().cloned().collect();
        derive(&mut probe);
        probe.into_keys().filter(|k| !before.contains(k)).collect()
    }

    pub fn var_table(&self) -> std::sync::Arc<VarTable> {
        VarTable::new(self.vars.iter().copied()).expect("registry variable names are valid")
    }
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec").field("id", &self.id).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub q_max: Option<i64>,
    pub degree: Option<i64>,
    pub sum_order: Option<i64>,
    pub caps: BTreeMap<String, i64>,
    pub bindings: BTreeMap<String, Rational>,
    pub trials: u32,
    pub seed: u64,
    pub convention: Option<GarrettConvention>,
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            q_max: None,
            degree: None,
            sum_order: None,
            caps: BTreeMap::new(),
            bindings: BTreeMap::new(),
            trials: DEFAULT_TRIALS,
            seed: 0,
            convention: None,
            timing: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub caps: CapsJson,
    /// One map per trial, in trial order.
    pub bindings: Vec<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report json")
    }

    pub fn summary_line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {}", self.id);
        if let Some(c) = &self.convention {
            line.push_str(&format!(" [{c}]"));
        }
        if let Some(w) = &self.witness {
            line.push_str(&format!(" at {}: lhs {} rhs {}", w.monomial, w.lhs, w.rhs));
        }
        if let Some(ms) = self.elapsed_ms {
            line.push_str(&format!(" ({ms} ms)"));
        }
        line
    }
}

pub fn find(id: &str) -> HResult<IdentitySpec> {
    registry()
        .into_iter()
        .chain(errata())
        .find(|s| s.id == id)
        .ok_or_else(|| HarnessError::UnknownIdentity(id.to_string()))
}

/// Verifies one registered identity (errata entries included).
pub fn verify(id: &str, cfg: &VerifyConfig) -> HResult<Report> {
    let spec = find(id)?;
    verify_spec(&spec, cfg)
}

/// Verifies every registry entry. The Garrett convention is resolved first
/// unless the config pins one. Entries run on worker threads; results come
/// back in registry order.
pub fn verify_all(cfg: &VerifyConfig) -> Vec<HResult<Report>> {
    verify_many(&registry(), &with_resolved_convention(cfg))
}

pub fn with_resolved_convention(cfg: &VerifyConfig) -> VerifyConfig {
    let mut cfg = cfg.clone();
    if cfg.convention.is_none() {
        cfg.convention = resolve_garrett_convention(6, 40).convention;
    }
    cfg
}

pub fn verify_many(specs: &[IdentitySpec], cfg: &VerifyConfig) -> Vec<HResult<Report>> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(specs.len().max(1));
    if cfg!(target_arch = "wasm32") || workers <= 1 {
        return specs.iter().map(|s| verify_spec(s, cfg)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<HResult<Report>>>> = specs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(spec) = specs.get(i) else { break };
                *slots[i].lock().expect("slot") = Some(verify_spec(spec, cfg));
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot").expect("every slot filled"))
        .collect()
}

/// Wall-clock timer. There is no clock on bare wasm, so it reads `None` there.
#[derive(Clone, Copy)]
pub(crate) struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    pub(crate) fn elapsed_ms(self) -> Option<u64> {
        #[cfg(not(target_arch = "wasm32"))]
        return Some(self.start.elapsed().as_millis() as u64);
        #[cfg(target_arch = "wasm32")]
        None
    }
}

/// The window the comparison is made on.
pub fn requested_caps(spec: &IdentitySpec, cfg: &VerifyConfig, bound: &BTreeMap<String, Rational>) -> HResult<TruncationSpec> {
    let vars = spec.var_table();
    let mut caps = TruncationSpec::uniform(&vars, cfg.q_max.unwrap_or(DEFAULT_Q_MAX), cfg.degree.unwrap_or(DEFAULT_DEGREE));
    for (name, cap) in spec.cap_overrides {
        caps = caps.with_cap(&vars, name, *cap)?;
    }
    if let Some(e) = spec.expansion {
        caps = caps.with_cap(&vars, e, cfg.sum_order.unwrap_or(DEFAULT_SUM_ORDER))?;
    }
    for (t, max) in spec.tags {
        caps = caps.with_cap(&vars, t, *max)?;
    }
    for (name, cap) in &cfg.caps {
        if *cap < 0 {
            return Err(HarnessError::BindingViolation(format!("negative cap for {name}")));
        }
        caps = caps
            .with_cap(&vars, name, *cap)
            .map_err(|_| HarnessError::BindingViolation(format!("{} has no variable `{name}`", spec.id)))?;
    }
    for name in bound.keys() {
        caps = caps.with_cap(&vars, name, 0)?;
    }
    Ok(caps)
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Small nonzero rational other than `1` and `-1`.
fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let r: i64 = rng.gen_range(1..=6);
        let c = Rational::new(p, r);
        if !c.is_zero() && c.abs() != Rational::ONE {
            return c;
        }
    }
}

fn trial_bindings(spec: &IdentitySpec, cfg: &VerifyConfig) -> HResult<Vec<BTreeMap<String, Rational>>> {
    let params = spec.params();
    for name in cfg.bindings.keys() {
        match params.iter().find(|p| &p.name == name) {
            None => {
                return Err(HarnessError::BindingViolation(format!("{} has no parameter `{name}`", spec.id)))
            }
            Some(p) if p.kind == ParamKind::Integer => {
                return Err(HarnessError::BindingViolation(format!("`{name}` is an index; use --cap")))
            }
            Some(_) => {}
        }
    }
    if cfg.trials == 0 {
        return Err(HarnessError::BindingViolation("trials must be at least 1".into()));
    }
    let free: Vec<&str> = spec.random.iter().copied().filter(|r| !cfg.bindings.contains_key(*r)).collect();
    let derived = spec.derived_names();
    let trials = if free.is_empty() { 1 } else { cfg.trials };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv1a(spec.id));
    let mut out: Vec<BTreeMap<String, Rational>> = Vec::new();
    let mut attempts = 0;
    while out.len() < trials as usize {
        attempts += 1;
        let mut b = cfg.bindings.clone();
        for name in &free {
            b.insert(name.to_string(), random_rational(&mut rng));
        }
        if let Some(derive) = spec.derive {
            let mut d = b.clone();
            derive(&mut d);
            for name in &derived {
                let want = d[name].clone();
                match b.get(name) {
                    Some(given) if *given != want => {
                        return Err(HarnessError::BindingViolation(format!(
                            "{name} = {given} contradicts {}",
                            spec.constraint.unwrap_or("the constraint")
                        )))
                    }
                    _ => {
                        b.insert(name.clone(), want);
                    }
                }
            }
        }
        if out.contains(&b) && attempts < 1000 {
            continue;
        }
        out.push(b);
    }
    Ok(out)
}

/// Builds one side, widening the working window until the result is known on
/// `requested`.
fn build_side(spec: &IdentitySpec, side: &'static str, builder: Builder, env: &Env, requested: &TruncationSpec) -> HResult<Series> {
    let tag_index: Vec<usize> = spec
        .tags
        .iter()
        .map(|(t, _)| env.vars.index_of(t).expect("tag in table"))
        .collect();
    let mut work = requested.clone();
    let mut last = None;
    for _ in 0..6 {
        let s = builder(&env.with_caps(work.clone()))?;
        let got = s.caps();
        if got.covers(requested) {
            return Ok(s.truncate(requested));
        }
        let dq = (requested.q_max() - got.q_max()).max(0);
        let mut next = work.widen(dq, 0);
        for i in 0..env.vars.arity() {
            let short = requested.var_cap(i).saturating_sub(got.var_cap(i));
            if short > 0 && !tag_index.contains(&i) && work.var_cap(i) != UNBOUNDED {
                next.set_var_cap(i, work.var_cap(i) + short);
            }
        }
        last = Some(format!("{got:?}"));
        if next == work {
            break;
        }
        work = next;
    }
    Err(HarnessError::InsufficientPrecision {
        id: spec.id.to_string(),
        side,
        reached: last.unwrap_or_default(),
    })
}

pub fn verify_spec(spec: &IdentitySpec, cfg: &VerifyConfig) -> HResult<Report> {
    let clock = Stopwatch::start();
    let vars = spec.var_table();
    let trials = trial_bindings(spec, cfg)?;
    let convention = cfg.convention.unwrap_or(GarrettConvention::Signed);
    let mut witness = None;
    let mut used = Vec::new();
    let mut caps_used = None;
    for bindings in trials {
        let requested = requested_caps(spec, cfg, &bindings)?;
        let env = Env::new(vars.clone(), requested.clone(), bindings.clone(), convention);
        let lhs = build_side(spec, "left", spec.lhs, &env, &requested)?;
        let rhs = build_side(spec, "right", spec.rhs, &env, &requested)?;
        used.push(
            bindings
                .iter()
                .map(|(k, v)| (k.clone(), v.to_fraction_string()))
                .collect(),
        );
        caps_used = Some(requested);
        if let Some(w) = lhs.equals_mod_caps(&rhs)? {
            witness = Some(WitnessReport {
                monomial: monomial_text(&vars, &w.monomial),
                lhs: w.lhs.to_fraction_string(),
                rhs: w.rhs.to_fraction_string(),
            });
            break;
        }
    }
    Ok(Report {
        id: spec.id.to_string(),
        pass: witness.is_none(),
        convention: spec.uses_convention.then(|| convention.tag().to_string()),
        witness,
        caps: CapsJson {
            vars,
            caps: caps_used.expect("at least one trial"),
        },
        bindings: used,
        elapsed_ms: cfg.timing.then(|| clock.elapsed_ms()).flatten(),
    })
}

/// Rebuilds each side of `id` with `extra` more powers of `q` and compares it
/// with the original build on the original window. Returns the first side
/// that changed, with where.
pub fn coherence(id: &str, cfg: &VerifyConfig, extra: i64) -> HResult<Option<(&'static str, WitnessReport)>> {
    let spec = find(id)?;
    let vars = spec.var_table();
    let convention = cfg.convention.unwrap_or(GarrettConvention::Signed);
    for bindings in trial_bindings(&spec, cfg)? {
        let requested = requested_caps(&spec, cfg, &bindings)?;
        let wide = requested.widen(extra, 0);
        let env = Env::new(vars.clone(), requested.clone(), bindings, convention);
        for (side, builder) in [("left", spec.lhs), ("right", spec.rhs)] {
            let narrow = build_side(&spec, side, builder, &env, &requested)?;
            let widened = build_side(&spec, side, builder, &env.with_caps(wide.clone()), &wide)?.truncate(&requested);
            if let Some(w) = narrow.equals_mod_caps(&widened)? {
                let w = WitnessReport {
                    monomial: monomial_text(&vars, &w.monomial),
                    lhs: w.lhs.to_fraction_string(),
                    rhs: w.rhs.to_fraction_string(),
                };
                return Ok(Some((side, w)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests;
