//! q-Pochhammer symbols, Gaussian binomials, basic hypergeometric series, the
//! q-exponentials and the Rogers-Ramanujan function `R_q(z)`.
//!
//! Every infinite sum here stops on an explicit certificate that the remaining
//! terms vanish modulo the requested truncation ideal. If none applies the
//! call fails with [`SeriesError::NonTerminatingSeries`] rather than
//! guessing a cutoff.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Result, SeriesError};
use crate::rational::Rational;
use crate::series::{Monomial, Series, TruncationSpec, VarTable, UNBOUNDED};

/// Number of factors in a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochCount {
    Finite(u32),
    Infinite,
}

/// `(a_1, ..., a_m; q^base)_count`.
#[derive(Debug, Clone)]
pub struct PochSpec {
    pub args: Vec<Series>,
    pub count: PochCount,
    pub base: u32,
}

impl PochSpec {
    pub fn finite(args: Vec<Series>, n: u32) -> Self {
        Self {
            args,
            count: PochCount::Finite(n),
            base: 1,
        }
    }

    pub fn infinite(args: Vec<Series>) -> Self {
        Self {
            args,
            count: PochCount::Infinite,
            base: 1,
        }
    }

    pub fn with_base(mut self, base: u32) -> Self {
        self.base = base;
        self
    }
}

/// `1 - a q^k`
pub(crate) fn factor(a: &Series, k: i64) -> Series {
    let vars = a.vars();
    let shifted = a * &Series::q_pow(vars, k);
    &Series::one(vars) - &shifted
}

/// Product of the factors `1 - a q^(base k)` over every argument `a`.
pub fn poch(spec: &PochSpec, caps: &TruncationSpec) -> Result<Series> {
    let first = spec
        .args
        .first()
        .ok_or_else(|| SeriesError::InvalidCaps("q-Pochhammer symbol needs an argument".into()))?;
    if spec.base == 0 {
        return Err(SeriesError::InvalidCaps("Pochhammer base must be positive".into()));
    }
    let vars = first.vars().clone();
    let base = spec.base as i64;
    let count = match spec.count {
        PochCount::Finite(n) => n as i64,
        PochCount::Infinite => {
            if caps.q_max() == UNBOUNDED {
                return Err(SeriesError::NonTerminatingSeries(
                    "infinite product needs a finite q cap".into(),
                ));
            }
            if spec.args.iter().any(|a| a.q_floor() < 0) {
                return Err(SeriesError::NegativeQOrderInInfiniteProduct);
            }
            // factors past q^qMax are 1 modulo the ideal
            caps.q_max().max(0) / base + 1
        }
    };
    let mut acc = Series::one(&vars).truncate(caps);
    for a in &spec.args {
        if a.is_zero() {
            continue;
        }
        for k in 0..count {
            acc = acc.checked_mul(&factor(a, base * k))?.truncate(caps);
        }
    }
    Ok(acc)
}

/// `(a; q)_n`
pub fn poch_n(a: &Series, n: u32, caps: &TruncationSpec) -> Result<Series> {
    poch(&PochSpec::finite(vec![a.clone()], n), caps)
}

/// `(a; q)_inf`
pub fn poch_inf(a: &Series, caps: &TruncationSpec) -> Result<Series> {
    poch(&PochSpec::infinite(vec![a.clone()]), caps)
}

/// `(q; q)_n` as an exact polynomial.
pub fn q_factorial(vars: &Arc<VarTable>, n: u32) -> Series {
    let exact = TruncationSpec::exact(vars);
    poch_n(&Series::q_pow(vars, 1), n, &exact).expect("finite product of exact factors")
}

/// Coefficients of the Gaussian polynomial `[n k]_q`, lowest power first.
pub fn gaussian_coeffs(n: u32, k: i64) -> Vec<Rational> {
    if k < 0 || k > n as i64 {
        return Vec::new();
    }
    let k = k as usize;
    // row[j] = [m j]_q, built up m = 0..n with [m j] = [m-1 j-1] + q^j [m-1 j]
    let mut row: Vec<Vec<Rational>> = vec![vec![Rational::ONE]];
    for m in 1..=n as usize {
        let mut next = Vec::with_capacity(m.min(k) + 1);
        for j in 0..=m.min(k) {
            let mut p: Vec<Rational> = if j > 0 { row[j - 1].clone() } else { Vec::new() };
            if j < row.len() && j < m {
                let prev = &row[j];
                if p.len() < prev.len() + j {
                    p.resize(prev.len() + j, Rational::ZERO);
                }
                for (i, c) in prev.iter().enumerate() {
                    p[i + j] += c;
                }
            }
            next.push(p);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// `[n k]_q`, zero when `k < 0` or `k > n`.
pub fn qbinom(vars: &Arc<VarTable>, n: u32, k: i64) -> Series {
    let coeffs = gaussian_coeffs(n, k);
    let mut raw = BTreeMap::new();
    raw.insert(vec![0; vars.arity()], coeffs);
    Series::from_raw(vars.clone(), TruncationSpec::exact(vars), 0, raw)
}

/// `n (n - 1) / 2`
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Upper parameter of the form exactly `q^(-m)`, which makes the series
/// terminate after `m` terms.
fn terminating_order(a: &Series) -> Option<u64> {
    let terms = a.terms();
    match terms.as_slice() {
        [(m, c)] if c.is_one() && m.q <= 0 && m.vars.iter().all(|&e| e == 0) => Some((-m.q) as u64),
        _ => None,
    }
}

/// Number of terms after which `z^n` leaves the variable window: each term of
/// `z` carries a capped variable, so `z^n` has capped degree at least `n`.
pub(crate) fn degree_certificate(z: &Series, caps: &TruncationSpec) -> Option<u64> {
    if z.is_zero() {
        return Some(0);
    }
    let arity = z.vars().arity();
    let capped: Vec<usize> = (0..arity)
        .filter(|&i| caps.var_cap(i) != UNBOUNDED && z.degree_at(i) > 0)
        .collect();
    if capped.is_empty() || z.min_degree_over(&capped)? == 0 {
        return None;
    }
    Some(capped.iter().map(|&i| caps.var_cap(i).max(0) as u64).sum())
}

/// Last index `n` for which `L(n) = quad * binom(n,2) + lin * n + offset` can
/// still be `<= q_max`, provided `L` eventually grows past `q_max` for good.
pub(crate) fn q_weight_certificate(quad: i64, lin: i64, offset: i64, q_max: i64) -> Option<u64> {
    if q_max == UNBOUNDED || quad < 0 || (quad == 0 && lin <= 0) {
        return None;
    }
    let l = |n: i64| quad * binom2(n) + lin * n + offset;
    let mut last = None;
    let mut n = 0i64;
    loop {
        let v = l(n);
        let inc = l(n + 1) - v;
        if v <= q_max {
            last = Some(n as u64);
        } else if inc >= 0 {
            // increments are non-decreasing from here on
            return Some(last.unwrap_or(0));
        }
        n += 1;
    }
}

pub(crate) fn min_cert(certs: impl IntoIterator<Item = Option<u64>>) -> Option<u64> {
    certs.into_iter().flatten().min()
}

/// Basic hypergeometric series
/// `r phi s (a_1..a_r; b_1..b_s; q, z)
///   = sum_n (a;q)_n / ((q;q)_n (b;q)_n) [(-1)^n q^binom(n,2)]^(1+s-r) z^n`.
pub fn phi(upper: &[Series], lower: &[Series], z: &Series, caps: &TruncationSpec) -> Result<Series> {
    let vars = z.vars().clone();
    let e = 1 + lower.len() as i64 - upper.len() as i64;

    let terminating = upper.iter().filter_map(terminating_order).min();
    let by_degree = degree_certificate(z, caps);
    let by_weight = if z.is_zero() {
        Some(0)
    } else {
        let vz = z.q_valuation().unwrap_or(0);
        let upper_min: i64 = upper
            .iter()
            .filter(|a| !a.is_zero())
            .map(|a| a.val_bound().min(0))
            .sum();
        q_weight_certificate(e, vz + upper_min, 0, caps.q_max())
    };
    let last = min_cert([terminating, by_degree, by_weight]).ok_or_else(|| {
        SeriesError::NonTerminatingSeries(format!(
            "{}phi{} argument has neither a terminating parameter nor positive weight",
            upper.len(),
            lower.len()
        ))
    })?;

    // Laurent factors eat into the numerator's window; keep enough headroom
    let vz = z.q_valuation().unwrap_or(0);
    let headroom: i64 = (0..last as i64)
        .map(|n| {
            let from_upper: i64 = upper
                .iter()
                .filter(|a| !a.is_zero())
                .map(|a| (-(a.val_bound() + n)).max(0))
                .sum();
            from_upper + (-(vz + e * n)).max(0)
        })
        .sum();
    let num_caps = caps.widen(headroom, 0);

    let mut num = Series::one(&vars);
    let mut den = Series::one(&vars);
    let mut sum = Series::zero(&vars, caps.clone());
    let sign = if e.rem_euclid(2) == 1 { -Rational::ONE } else { Rational::ONE };
    for n in 0..=last as i64 {
        if num.is_zero() {
            break;
        }
        let term = num.div_within(&den, caps)?;
        sum = sum.checked_add(&term)?;
        if n as u64 == last {
            break;
        }
        for a in upper {
            num = num.checked_mul(&factor(a, n))?;
        }
        num = num
            .checked_mul(&Series::monomial(&vars, sign.clone(), &Monomial::q_pow(&vars, e * n)))?
            .checked_mul(z)?
            .truncate(&num_caps);
        den = den.checked_mul(&factor(&Series::one(&vars), n + 1))?;
        for b in lower {
            den = den.checked_mul(&factor(b, n))?;
        }
    }
    Ok(sum.truncate(caps))
}

/// `e_q(z) = sum z^n / (q;q)_n = 1 phi 0 (0; -; q, z)`
pub fn eq_small(z: &Series, caps: &TruncationSpec) -> Result<Series> {
    let zero = Series::zero(z.vars(), TruncationSpec::exact(z.vars()));
    phi(&[zero], &[], z, caps)
}

/// `E_q(z) = sum q^binom(n,2) z^n / (q;q)_n = 1 phi 1 (0; 0; q, -z)`
pub fn eq_big(z: &Series, caps: &TruncationSpec) -> Result<Series> {
    let zero = Series::zero(z.vars(), TruncationSpec::exact(z.vars()));
    phi(&[zero.clone()], &[zero], &-z, caps)
}

/// `R_q(z) = sum q^(n^2) z^n / (q;q)_n`. `z` may carry negative powers of q as
/// long as `q^(n^2) z^n` still runs off the window.
pub fn rq(z: &Series, caps: &TruncationSpec) -> Result<Series> {
    let vars = z.vars().clone();
    let by_degree = degree_certificate(z, caps);
    let by_weight = match z.q_valuation() {
        None => Some(0),
        Some(vz) => q_weight_certificate(2, vz + 1, 0, caps.q_max()),
    };
    let last = min_cert([by_degree, by_weight]).ok_or_else(|| {
        SeriesError::NonTerminatingSeries("R_q argument has no decaying weight".into())
    })?;
    let vz = z.q_valuation().unwrap_or(0);
    let headroom: i64 = (0..last as i64).map(|n| (-(2 * n + 1 + vz)).max(0)).sum();
    let num_caps = caps.widen(headroom, 0);
    let mut num = Series::one(&vars);
    let mut den = Series::one(&vars);
    let mut sum = Series::zero(&vars, caps.clone());
    for n in 0..=last as i64 {
        sum = sum.checked_add(&num.div_within(&den, caps)?)?;
        // q^((n+1)^2) z^(n+1) = q^(n^2) z^n * q^(2n+1) z
        num = num
            .checked_mul(&Series::q_pow(&vars, 2 * n + 1))?
            .checked_mul(z)?
            .truncate(&num_caps);
        den = den.checked_mul(&factor(&Series::one(&vars), n + 1))?;
        if num.is_zero() {
            break;
        }
    }
    Ok(sum.truncate(caps))
}

/// `sum q^(n^2 + k n) / (q;q)_n`, summed directly.
pub fn rq_at_power(vars: &Arc<VarTable>, k: u32, caps: &TruncationSpec) -> Result<Series> {
    let q_max = caps.q_max();
    if q_max == UNBOUNDED {
        return Err(SeriesError::NonTerminatingSeries("needs a finite q cap".into()));
    }
    let k = k as i64;
    let mut sum = Series::zero(vars, caps.clone());
    let mut den = Series::one(vars);
    let mut n = 0i64;
    while n * n + k * n <= q_max {
        let num = Series::q_pow(vars, n * n + k * n);
        sum = sum.checked_add(&num.div_within(&den, caps)?)?;
        n += 1;
        den = den.checked_mul(&factor(&Series::one(vars), n))?;
    }
    Ok(sum)
}

/// Which of the two Garrett polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GarrettKind {
    A,
    B,
}

/// `a_k(q) = sum_i (-1)^i q^(i(5i-3)/2) [k-1, floor((k+1-5i)/2)]_q` and
/// `b_k(q) = sum_i (-1)^i q^(i(5i+1)/2) [k-1, floor((k-1-5i)/2)]_q`, with
/// `a_0 = 1`, `b_0 = 0`.
pub fn garrett(vars: &Arc<VarTable>, kind: GarrettKind, k: u32) -> Series {
    if k == 0 {
        return match kind {
            GarrettKind::A => Series::one(vars),
            GarrettKind::B => Series::zero(vars, TruncationSpec::exact(vars)),
        };
    }
    let kk = k as i64;
    let mut acc = Series::zero(vars, TruncationSpec::exact(vars));
    // the Gaussian coefficient vanishes unless 0 <= floor(..) <= k-1, which
    // forces |5i| <= k+1
    for i in -kk..=kk {
        let (expo, lower) = match kind {
            GarrettKind::A => (i * (5 * i - 3) / 2, (kk + 1 - 5 * i).div_euclid(2)),
            GarrettKind::B => (i * (5 * i + 1) / 2, (kk - 1 - 5 * i).div_euclid(2)),
        };
        let b = qbinom(vars, k - 1, lower);
        if b.is_zero() {
            continue;
        }
        let sign = if i.rem_euclid(2) == 1 { -Rational::ONE } else { Rational::ONE };
        let term = &b * &Series::monomial(vars, sign, &Monomial::q_pow(vars, expo));
        acc = &acc + &term;
    }
    acc
}
