//! Truncation ideals.
//!
//! A [`TruncationSpec`] describes the window of monomials whose coefficients a
//! series actually knows: absolute q-exponent at most `q_max`, and degree in
//! each non-q variable at most its cap. Everything outside the window lies in
//! the ideal generated by `q^(q_max+1)` and `v^(cap_v+1)`.
//!
//! [`UNBOUNDED`] marks a coordinate that is not truncated at all, which is how
//! exact polynomials (monomials, constants, finite products of those) are
//! represented. A cap of `-1` means no coefficient in that direction is known.

use std::sync::Arc;

use serde::ser::{SerializeMap, Serializer};

use super::vars::{VarTable, Q};
use crate::error::{Result, SeriesError};

pub const UNBOUNDED: i64 = i64::MAX;

/// `a + b` on caps/valuations, with [`UNBOUNDED`] absorbing.
pub(crate) fn cap_add(a: i64, b: i64) -> i64 {
    if a == UNBOUNDED || b == UNBOUNDED {
        UNBOUNDED
    } else {
        a + b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncationSpec {
    q_max: i64,
    var_caps: Vec<i64>,
}

impl TruncationSpec {
    /// Caps aligned with `vars.var_names()`.
    pub fn new(q_max: i64, var_caps: Vec<i64>) -> Self {
        Self { q_max, var_caps }
    }

    /// Same degree cap for every non-q variable.
    pub fn uniform(vars: &VarTable, q_max: i64, degree: i64) -> Self {
        Self::new(q_max, vec![degree; vars.arity()])
    }

    /// No truncation anywhere.
    pub fn exact(vars: &VarTable) -> Self {
        Self::uniform(vars, UNBOUNDED, UNBOUNDED)
    }

    /// Only q is truncated.
    pub fn q_only(vars: &VarTable, q_max: i64) -> Self {
        Self::uniform(vars, q_max, UNBOUNDED)
    }

    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    pub fn var_caps(&self) -> &[i64] {
        &self.var_caps
    }

    pub fn var_cap(&self, index: usize) -> i64 {
        self.var_caps[index]
    }

    pub fn cap_of(&self, vars: &VarTable, name: &str) -> Result<i64> {
        if name == Q {
            return Ok(self.q_max);
        }
        Ok(self.var_caps[vars.index_of(name)?])
    }

    pub fn with_q_max(mut self, q_max: i64) -> Self {
        self.q_max = q_max;
        self
    }

    pub fn with_cap(mut self, vars: &VarTable, name: &str, cap: i64) -> Result<Self> {
        if name == Q {
            self.q_max = cap;
        } else {
            self.var_caps[vars.index_of(name)?] = cap;
        }
        Ok(self)
    }

    pub(crate) fn set_var_cap(&mut self, index: usize, cap: i64) {
        self.var_caps[index] = cap;
    }

    pub(crate) fn set_q_max(&mut self, q_max: i64) {
        self.q_max = q_max;
    }

    /// Componentwise minimum: the larger of the two ideals.
    pub fn meet(&self, other: &Self) -> Self {
        debug_assert_eq!(self.var_caps.len(), other.var_caps.len());
        Self {
            q_max: self.q_max.min(other.q_max),
            var_caps: self
                .var_caps
                .iter()
                .zip(&other.var_caps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// True when every monomial known under `other` is also known here.
    pub fn covers(&self, other: &Self) -> bool {
        self.q_max >= other.q_max
            && self
                .var_caps
                .iter()
                .zip(&other.var_caps)
                .all(|(a, b)| a >= b)
    }

    /// Raises `q_max` by `dq` and every finite variable cap by `dv`.
    pub fn widen(&self, dq: i64, dv: i64) -> Self {
        Self {
            q_max: cap_add(self.q_max, dq),
            var_caps: self.var_caps.iter().map(|c| cap_add(*c, dv)).collect(),
        }
    }

    pub fn widen_var(&self, vars: &VarTable, name: &str, dv: i64) -> Result<Self> {
        let mut out = self.clone();
        let i = vars.index_of(name)?;
        out.var_caps[i] = cap_add(out.var_caps[i], dv);
        Ok(out)
    }

    pub fn is_exact(&self) -> bool {
        self.q_max == UNBOUNDED && self.var_caps.iter().all(|c| *c == UNBOUNDED)
    }

    pub(crate) fn admits_vars(&self, exps: &[u32]) -> bool {
        exps.iter()
            .zip(&self.var_caps)
            .all(|(e, c)| (*e as i64) <= *c)
    }

    pub(crate) fn check_arity(&self, vars: &VarTable) -> Result<()> {
        if self.var_caps.len() != vars.arity() {
            return Err(SeriesError::InvalidCaps(format!(
                "{} caps for {} variables",
                self.var_caps.len(),
                vars.arity()
            )));
        }
        Ok(())
    }

    /// `{"q": n, "x": n, ...}` with `null` for unbounded coordinates.
    pub fn serialize_with<S: Serializer>(&self, vars: &Arc<VarTable>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(vars.names().len()))?;
        let opt = |c: i64| if c == UNBOUNDED { None } else { Some(c) };
        map.serialize_entry(Q, &opt(self.q_max))?;
        for (name, c) in vars.var_names().iter().zip(&self.var_caps) {
            map.serialize_entry(name, &opt(*c))?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_is_componentwise_min() {
        let a = TruncationSpec::new(5, vec![3, UNBOUNDED]);
        let b = TruncationSpec::new(UNBOUNDED, vec![4, 2]);
        let m = a.meet(&b);
        assert_eq!(m, TruncationSpec::new(5, vec![3, 2]));
        assert!(a.covers(&m) && b.covers(&m));
        assert!(!m.covers(&a));
    }

    #[test]
    fn widen_keeps_unbounded() {
        let a = TruncationSpec::new(5, vec![3, UNBOUNDED]);
        assert_eq!(a.widen(2, 1), TruncationSpec::new(7, vec![4, UNBOUNDED]));
        assert_eq!(cap_add(UNBOUNDED, -4), UNBOUNDED);
    }
}
