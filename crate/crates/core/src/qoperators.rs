//! The q-derivative `D_q f(x) = (f(x) - f(qx)) / x`, its iterates, the q-Leibniz
//! rule and the Rogers-Ramanujan operator `R(yD_q) = sum q^(n^2) y^n D_q^n / (q;q)_n`.

use std::collections::BTreeMap;

use crate::error::{Result, SeriesError};
use crate::qcalculus::{degree_certificate, factor, min_cert, q_weight_certificate, qbinom};
use crate::rational::Rational;
use crate::series::{Monomial, Series, TruncationSpec, UNBOUNDED};

/// Differentiation variable and operator weight variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorContext {
    pub x: String,
    pub y: String,
}

impl OperatorContext {
    pub fn new(x: &str, y: &str) -> Result<Self> {
        if x == y {
            return Err(SeriesError::InvalidCaps(format!("operator variables coincide: {x}")));
        }
        Ok(Self {
            x: x.to_string(),
            y: y.to_string(),
        })
    }
}

/// `x^k -> (1 - q^k) x^(k-1)`. Lowers the x cap by one.
pub fn dq(f: &Series, x: &str) -> Result<Series> {
    let vars = f.vars();
    let xi = vars.index_of(x)?;
    let mut caps = f.caps().clone();
    let cap = caps.var_cap(xi);
    if cap != UNBOUNDED {
        caps.set_var_cap(xi, cap - 1);
    }
    let mut raw = BTreeMap::new();
    for (exps, p) in f.raw_terms() {
        let k = exps[xi] as usize;
        if k == 0 {
            continue;
        }
        let mut out = vec![Rational::ZERO; p.len() + k];
        for (i, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[i] += c;
            out[i + k] -= c;
        }
        let mut e = exps.clone();
        e[xi] -= 1;
        raw.insert(e, out);
    }
    Ok(Series::from_raw(vars.clone(), caps, f.q_floor(), raw))
}

/// `D_q^n f`
pub fn dq_pow(f: &Series, x: &str, n: u32) -> Result<Series> {
    let mut g = f.clone();
    for _ in 0..n {
        g = dq(&g, x)?;
    }
    Ok(g)
}

/// `f(x) -> f(q^k x)`
pub fn dilate(f: &Series, x: &str, k: i64) -> Result<Series> {
    let vars = f.vars();
    let m = Monomial::from_pairs(vars, k, &[(x, 1)])?;
    f.substitute_monomial(x, &Rational::ONE, &m)
}

/// `sum_k q^(k(k-n)) [n k] D_q^k{f(x)} D_q^(n-k){g(q^k x)}`. The operator in
/// the second factor acts after the dilation, so each `q^(k(k-n))` is cancelled
/// by the chain rule and the sum is an ordinary series; the known window still
/// shrinks by the largest `k(n-k)`.
pub fn leibniz_rhs(f: &Series, g: &Series, x: &str, n: u32) -> Result<Series> {
    let vars = f.vars();
    let mut sum: Option<Series> = None;
    for k in 0..=n {
        let kk = k as i64;
        let left = dq_pow(f, x, k)?;
        let right = dq_pow(&dilate(g, x, kk)?, x, n - k)?;
        let coeff = &qbinom(vars, n, kk) * &Series::q_pow(vars, kk * (kk - n as i64));
        let term = coeff.checked_mul(&left)?.checked_mul(&right)?;
        sum = Some(match sum {
            None => term,
            Some(s) => s.checked_add(&term)?,
        });
    }
    Ok(sum.expect("n + 1 >= 1 terms"))
}

/// `R(yD_q) f` with `y` a variable of the table.
pub fn rr_op(f: &Series, ctx: &OperatorContext, caps: &TruncationSpec) -> Result<Series> {
    let w = Series::var(f.vars(), &ctx.y)?;
    rr_op_weighted(f, &ctx.x, &w, caps)
}

/// `sum_n q^(n^2) w^n / (q;q)_n D_q^n f` for an arbitrary weight series `w`,
/// e.g. a rational constant when the weight variable is bound.
///
/// Stops when `D_q^n f` vanishes identically, when `w^n` leaves the variable
/// window, or when `n^2 + n v(w) + v(f)` passes `q_max` for good. Running out
/// of known x-degree first is an error: the caller must widen the x cap.
pub fn rr_op_weighted(f: &Series, x: &str, w: &Series, caps: &TruncationSpec) -> Result<Series> {
    let vars = f.vars().clone();
    let xi = vars.index_of(x)?;
    let by_degree = degree_certificate(w, caps);
    let by_weight = match (w.q_valuation(), f.q_valuation()) {
        (Some(vw), Some(vf)) => q_weight_certificate(2, vw + 1, vf, caps.q_max()),
        _ => Some(0),
    };
    let last = min_cert([by_degree, by_weight]);

    let mut g = f.clone();
    let mut num = Series::one(&vars);
    let mut den = Series::one(&vars);
    let mut sum = Series::zero(&vars, caps.clone());
    let mut n = 0i64;
    loop {
        if last.is_some_and(|l| n as u64 > l) {
            break;
        }
        let x_cap = g.caps().var_cap(xi);
        if g.is_zero() && x_cap == UNBOUNDED {
            break;
        }
        if x_cap < 0 {
            return Err(SeriesError::NonTerminatingSeries(format!(
                "operator sum outran the known {x}-degree at n = {n}"
            )));
        }
        let term = num.checked_mul(&g)?.div_within(&den, caps)?;
        sum = sum.checked_add(&term)?;
        g = dq(&g, x)?;
        num = num
            .checked_mul(&Series::q_pow(&vars, 2 * n + 1))?
            .checked_mul(w)?
            .truncate(caps);
        n += 1;
        den = den.checked_mul(&factor(&Series::one(&vars), n))?;
    }
    Ok(sum)
}
