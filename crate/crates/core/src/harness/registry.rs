//! The identities. Each side is built from scratch; the two builders of one
//! entry never share a series value.

use std::collections::BTreeMap;

use super::env::{isqrt, Env};
use super::{Builder, Derive, IdentitySpec};
use crate::error::Result;
use crate::qcalculus::{binom2, eq_big, eq_small, garrett, q_factorial, qbinom, rq_at_power, GarrettKind};
use crate::qoperators::{dq_pow, leibniz_rhs};
use crate::rational::Rational;
use crate::series::Series;
use crate::swpoly::{rogers_szego, sw_classic, sw_star};

impl IdentitySpec {
    pub(crate) fn new(
        id: &'static str,
        description: &'static str,
        vars: &'static [&'static str],
        lhs: Builder,
        rhs: Builder,
    ) -> Self {
        Self {
            id,
            description,
            vars,
            expansion: None,
            tags: &[],
            random: &[],
            derive: None,
            constraint: None,
            cap_overrides: &[],
            uses_convention: false,
            lhs,
            rhs,
        }
    }

    pub(crate) fn tags(mut self, tags: &'static [(&'static str, i64)]) -> Self {
        self.tags = tags;
        self
    }

    pub(crate) fn expansion(mut self, var: &'static str) -> Self {
        self.expansion = Some(var);
        self
    }

    pub(crate) fn random(mut self, names: &'static [&'static str]) -> Self {
        self.random = names;
        self
    }

    pub(crate) fn constrained(mut self, derive: Derive, text: &'static str) -> Self {
        self.derive = Some(derive);
        self.constraint = Some(text);
        self
    }

    pub(crate) fn caps(mut self, caps: &'static [(&'static str, i64)]) -> Self {
        self.cap_overrides = caps;
        self
    }

    pub(crate) fn garrett(mut self) -> Self {
        self.uses_convention = true;
        self
    }
}

pub(crate) fn b_is_inv_y(m: &mut BTreeMap<String, Rational>) {
    let y = m["y"].clone();
    m.insert("b".into(), y.recip());
}

pub(crate) fn z_is_inv_y(m: &mut BTreeMap<String, Rational>) {
    let y = m["y"].clone();
    m.insert("z".into(), y.recip());
}

pub(crate) fn b_is_inv_zy(m: &mut BTreeMap<String, Rational>) {
    let zy = &m["z"] * &m["y"];
    m.insert("b".into(), zy.recip());
}

// ---------------------------------------------------------------- helpers

pub(crate) fn prod(e: &Env, factors: &[&Series]) -> Result<Series> {
    let mut acc = e.one();
    for f in factors {
        acc = acc.checked_mul(f)?;
    }
    Ok(acc)
}

/// `(-1)^n q^binom(n,2)`
pub(crate) fn alt_weight(e: &Env, n: u32) -> Series {
    e.signed_q(n % 2 == 1, binom2(n as i64))
}

/// `x^n / (q;q)_n`-style division by the q-factorial.
pub(crate) fn over_qfac(e: &Env, s: &Series, n: u32) -> Result<Series> {
    e.div(s, &q_factorial(&e.vars, n))
}

/// `R(1) sum_k sgn(2k) t_k a_2k - R(q) sum_k sgn(2k) t_k b_2k` with both
/// Rogers-Ramanujan values taken as products.
pub(crate) fn garrett_split(e: &Env, last: u64, term: impl Fn(u32) -> Result<Series>) -> Result<Series> {
    let mut sa = e.zero().truncate(&e.caps);
    let mut sb = e.zero().truncate(&e.caps);
    for k in 0..=last as u32 {
        let t = term(k)?.scale(&e.convention.sign(2 * k));
        sa = sa.checked_add(&t.checked_mul(&garrett(&e.vars, GarrettKind::A, 2 * k))?)?;
        sb = sb.checked_add(&t.checked_mul(&garrett(&e.vars, GarrettKind::B, 2 * k))?)?;
    }
    let r1 = e.inv(&e.rr_product(1, 4)?)?;
    let rq = e.inv(&e.rr_product(2, 3)?)?;
    sa.checked_mul(&r1)?.checked_sub(&sb.checked_mul(&rq)?)
}

fn var(e: &Env, name: &str) -> Result<Series> {
    e.p(name)
}

// ---------------------------------------------------------- q-factorials

fn poch1_lhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("n", |n| e.pn(&a, n))
}

fn poch1_rhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    let full = e.pinf(&[a.clone()])?;
    e.sweep("n", |n| e.div(&full, &e.pinf(&[&a * &e.q(n as i64)])?))
}

fn poch2_lhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("n", |n| e.sweep("k", |k| e.pn(&a, n + k)))
}

fn poch2_rhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("n", |n| {
        let head = e.pn(&a, n)?;
        let shifted = &a * &e.q(n as i64);
        e.sweep("k", |k| head.checked_mul(&e.pn(&shifted, k)?))
    })
}

fn poch3_lhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("n", |n| {
        let shifted = &a * &e.q(n as i64);
        e.sweep("k", |k| e.pn(&shifted, k))
    })
}

fn poch3_rhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("n", |n| {
        let den = e.pn(&a, n)?;
        e.sweep("k", |k| {
            let num = e.pn(&a, k)?.checked_mul(&e.pn(&(&a * &e.q(k as i64)), n)?)?;
            e.div(&num, &den)
        })
    })
}

// ------------------------------------------- binomial theorem, exponentials

fn qbinthm_lhs(e: &Env) -> Result<Series> {
    e.phi(&[var(e, "a")?], &[], &var(e, "z")?)
}

fn qbinthm_rhs(e: &Env) -> Result<Series> {
    let (a, z) = (var(e, "a")?, var(e, "z")?);
    e.div(&e.pinf(&[&a * &z])?, &e.pinf(&[z])?)
}

fn eq_lhs(e: &Env) -> Result<Series> {
    eq_small(&var(e, "z")?, &e.caps)
}

pub(crate) fn eq_rhs(e: &Env) -> Result<Series> {
    e.inv(&e.pinf(&[var(e, "z")?])?)
}

fn eqbig_lhs(e: &Env) -> Result<Series> {
    eq_big(&var(e, "z")?, &e.caps)
}

fn eqbig_rhs(e: &Env) -> Result<Series> {
    e.pinf(&[-&var(e, "z")?])
}

// ------------------------------------------ classical Stieltjes-Wigert

fn gf_argument(e: &Env) -> Result<Series> {
    // -q t x
    Ok(&(&e.signed_q(true, 1) * &var(e, "t")?) * &var(e, "x")?)
}

fn gf1_lhs(e: &Env) -> Result<Series> {
    let t = var(e, "t")?;
    let series = e.phi(&[], &[e.zero()], &gf_argument(e)?)?;
    e.inv(&e.pinf(&[t])?)?.checked_mul(&series)
}

fn gf1_rhs(e: &Env) -> Result<Series> {
    e.sweep("t", |n| sw_classic(&e.vars, "x", n, &e.caps))
}

fn gf2_lhs(e: &Env) -> Result<Series> {
    let t = var(e, "t")?;
    let series = e.phi(&[], &[e.zero(), t.clone()], &gf_argument(e)?)?;
    e.pinf(&[t])?.checked_mul(&series)
}

fn gf2_rhs(e: &Env) -> Result<Series> {
    e.sweep("t", |n| Ok(&alt_weight(e, n) * &sw_classic(&e.vars, "x", n, &e.caps)?))
}

fn gf3_lhs(e: &Env) -> Result<Series> {
    let (a, t) = (var(e, "a")?, var(e, "t")?);
    let at = &a * &t;
    let series = e.phi(&[a], &[e.zero(), at.clone()], &gf_argument(e)?)?;
    e.div(&e.pinf(&[at])?, &e.pinf(&[t])?)?.checked_mul(&series)
}

fn gf3_rhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("t", |n| e.pn(&a, n)?.checked_mul(&sw_classic(&e.vars, "x", n, &e.caps)?))
}

// ------------------------------------------------------ q-derivative

fn ax(e: &Env) -> Result<Series> {
    Ok(&var(e, "a")? * &var(e, "x")?)
}

fn bx(e: &Env) -> Result<Series> {
    Ok(&var(e, "b")? * &var(e, "x")?)
}

pub(crate) fn leibniz_lhs(e: &Env) -> Result<Series> {
    let f = e.pinf(&[ax(e)?])?;
    let g = e.inv(&e.pinf(&[bx(e)?])?)?;
    let fg = f.checked_mul(&g)?;
    e.sweep("n", |n| dq_pow(&fg, "x", n))
}

fn leibniz_rhs_side(e: &Env) -> Result<Series> {
    let f = e.pinf(&[ax(e)?])?;
    let g = e.inv(&e.pinf(&[bx(e)?])?)?;
    e.sweep("n", |n| leibniz_rhs(&f, &g, "x", n))
}

fn dq4_lhs(e: &Env) -> Result<Series> {
    let x = var(e, "x")?;
    e.sweep("n", |n| e.sweep("k", |k| dq_pow(&x.pow(k), "x", n)))
}

fn dq4_rhs(e: &Env) -> Result<Series> {
    let x = var(e, "x")?;
    e.sweep("n", |n| {
        e.sweep("k", |k| {
            if n > k {
                return Ok(e.zero());
            }
            // (q;q)_k / (q;q)_(k-n) = prod_{j=k-n+1}^{k} (1 - q^j)
            let mut c = e.one();
            for j in (k - n + 1)..=k {
                c = &c * &(&e.one() - &e.q(j as i64));
            }
            Ok(&c * &x.pow(k - n))
        })
    })
}

fn dq5_lhs(e: &Env) -> Result<Series> {
    let f = e.inv(&e.pinf(&[ax(e)?])?)?;
    e.sweep("n", |n| dq_pow(&f, "x", n))
}

fn dq5_rhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    let f = e.inv(&e.pinf(&[ax(e)?])?)?;
    e.sweep("n", |n| a.pow(n).checked_mul(&f))
}

fn dq6_lhs(e: &Env) -> Result<Series> {
    let f = e.pinf(&[ax(e)?])?;
    e.sweep("n", |n| dq_pow(&f, "x", n))
}

fn dq6_rhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("n", |n| {
        let shifted = &(&a * &e.q(n as i64)) * &var(e, "x")?;
        (&alt_weight(e, n) * &a.pow(n)).checked_mul(&e.pinf(&[shifted])?)
    })
}

pub(crate) fn dq7_lhs(e: &Env) -> Result<Series> {
    let f = e.pinf(&[ax(e)?, bx(e)?])?;
    e.sweep("n", |n| dq_pow(&f, "x", n))
}

fn dq7_sum(e: &Env, n: u32) -> Result<Series> {
    let (a, b) = (var(e, "a")?, var(e, "b")?);
    let mut acc = e.zero().truncate(&e.caps);
    for k in 0..=n {
        let kk = k as i64;
        let c = prod(e, &[&qbinom(&e.vars, n, kk), &e.q(kk * (kk - n as i64)), &a.pow(k), &b.pow(n - k)])?;
        acc = acc.checked_add(&e.div(&c, &e.pn(&ax(e)?, k)?)?)?;
    }
    Ok(acc)
}

fn dq7_rhs_with(e: &Env, signed: bool) -> Result<Series> {
    let b = var(e, "b")?;
    e.sweep("n", |n| {
        let shifted = &(&b * &e.q(n as i64)) * &var(e, "x")?;
        let head = e.pinf(&[ax(e)?, shifted])?;
        let w = if signed { alt_weight(e, n) } else { e.q(binom2(n as i64)) };
        (&w * &head).checked_mul(&dq7_sum(e, n)?)
    })
}

fn dq7_rhs(e: &Env) -> Result<Series> {
    dq7_rhs_with(e, true)
}

pub(crate) fn dq7_rhs_printed(e: &Env) -> Result<Series> {
    dq7_rhs_with(e, false)
}

fn dq8_lhs(e: &Env) -> Result<Series> {
    let f = e.div(&e.pinf(&[ax(e)?])?, &e.pinf(&[bx(e)?])?)?;
    e.sweep("n", |n| dq_pow(&f, "x", n))
}

fn dq8_rhs(e: &Env) -> Result<Series> {
    let (a, b) = (var(e, "a")?, var(e, "b")?);
    let head = e.div(&e.pinf(&[ax(e)?])?, &e.pinf(&[bx(e)?])?)?;
    let neg_a = -&a;
    e.sweep("n", |n| {
        let mut acc = e.zero().truncate(&e.caps);
        for k in 0..=n {
            let kk = k as i64;
            let c = prod(e, &[&qbinom(&e.vars, n, kk), &e.q(binom2(kk)), &neg_a.pow(k), &b.pow(n - k)])?;
            let ratio = e.div(&e.pn(&bx(e)?, k)?, &e.pn(&ax(e)?, k)?)?;
            acc = acc.checked_add(&c.checked_mul(&ratio)?)?;
        }
        head.checked_mul(&acc)
    })
}

fn dq9_lhs(e: &Env) -> Result<Series> {
    let f = e.inv(&e.pinf(&[ax(e)?, bx(e)?])?)?;
    e.sweep("n", |n| dq_pow(&f, "x", n))
}

fn dq9_rhs(e: &Env) -> Result<Series> {
    let (a, b) = (var(e, "a")?, var(e, "b")?);
    let head = e.inv(&e.pinf(&[ax(e)?, bx(e)?])?)?;
    e.sweep("n", |n| {
        let mut acc = e.zero();
        for k in 0..=n {
            let c = prod(e, &[&qbinom(&e.vars, n, k as i64), &a.pow(k), &b.pow(n - k), &e.pn(&bx(e)?, k)?])?;
            acc = acc.checked_add(&c)?;
        }
        head.checked_mul(&acc)
    })
}

// ------------------------------------------------ Ramanujan function

pub(crate) fn diffeq_lhs(e: &Env) -> Result<Series> {
    let z = var(e, "z")?;
    e.rq(&z)?.checked_sub(&e.rq(&(&e.q(1) * &z))?)
}

fn diffeq_rhs(e: &Env) -> Result<Series> {
    let z = var(e, "z")?;
    prod(e, &[&e.q(1), &z, &e.rq(&(&e.q(2) * &z))?])
}

pub(crate) fn diffeq_rhs_printed(e: &Env) -> Result<Series> {
    let z = var(e, "z")?;
    let one_minus_q = &e.one() - &e.q(1);
    prod(e, &[&one_minus_q, &z, &e.rq(&(&e.q(2) * &z))?])
}

fn rqdqn_lhs(e: &Env) -> Result<Series> {
    let f = e.rq(&ax(e)?)?;
    e.sweep("n", |n| dq_pow(&f, "x", n))
}

fn rqdqn_rhs(e: &Env) -> Result<Series> {
    let a = var(e, "a")?;
    e.sweep("n", |n| {
        let nn = n as i64;
        let inner = &(&a * &e.q(2 * nn)) * &var(e, "x")?;
        prod(e, &[&a.pow(n), &e.q(nn * nn), &e.rq(&inner)?])
    })
}

fn rr1_lhs(e: &Env) -> Result<Series> {
    e.rq(&e.one())
}

fn rr1_rhs(e: &Env) -> Result<Series> {
    e.inv(&e.rr_product(1, 4)?)
}

fn rr2_lhs(e: &Env) -> Result<Series> {
    e.rq(&e.q(1))
}

fn rr2_rhs(e: &Env) -> Result<Series> {
    e.inv(&e.rr_product(2, 3)?)
}

pub(crate) fn garrett_lhs(e: &Env) -> Result<Series> {
    e.sweep("k", |k| rq_at_power(&e.vars, k, &e.caps))
}

pub(crate) fn garrett_rhs(e: &Env) -> Result<Series> {
    e.sweep("k", |k| e.garrett_value(k))
}

// ------------------------------------------------ operator images

fn xn_lhs(e: &Env) -> Result<Series> {
    let (x, y) = (var(e, "x")?, var(e, "y")?);
    e.sweep("n", |n| e.rr("x", &y, |_| Ok(x.pow(n))))
}

fn xn_rhs(e: &Env) -> Result<Series> {
    let (x, y) = (var(e, "x")?, var(e, "y")?);
    e.sweep("n", |n| sw_star(&x, &y, n, &e.caps))
}

fn invpoch_lhs(e: &Env) -> Result<Series> {
    e.rr("x", &var(e, "y")?, |w| w.inv(&w.pinf(&[ax(w)?])?))
}

fn invpoch_rhs(e: &Env) -> Result<Series> {
    let ay = &var(e, "a")? * &var(e, "y")?;
    e.div(&e.rq(&ay)?, &e.pinf(&[ax(e)?])?)
}

fn sw_gf_lhs(e: &Env) -> Result<Series> {
    let (x, y) = (var(e, "x")?, var(e, "y")?);
    e.sweep("z", |n| over_qfac(e, &sw_star(&x, &y, n, &e.caps)?, n))
}

fn sw_gf_rhs(e: &Env) -> Result<Series> {
    let z = var(e, "z")?;
    let zy = &z * &var(e, "y")?;
    let zx = &z * &var(e, "x")?;
    e.div(&e.rq(&zy)?, &e.pinf(&[zx])?)
}

fn poch_image_lhs(e: &Env) -> Result<Series> {
    e.rr("x", &var(e, "y")?, |w| w.pinf(&[ax(w)?]))
}

fn poch_image_rhs(e: &Env) -> Result<Series> {
    let arg = prod(e, &[&e.q(1), &var(e, "a")?, &var(e, "y")?])?;
    let series = e.phi(&[], &[ax(e)?, e.zero()], &arg)?;
    e.pinf(&[ax(e)?])?.checked_mul(&series)
}

fn altgf_lhs(e: &Env) -> Result<Series> {
    let (x, y) = (var(e, "x")?, var(e, "y")?);
    e.sweep("z", |n| {
        let s = &alt_weight(e, n) * &sw_star(&x, &y, n, &e.caps)?;
        over_qfac(e, &s, n)
    })
}

fn altgf_rhs(e: &Env) -> Result<Series> {
    let z = var(e, "z")?;
    let zx = &z * &var(e, "x")?;
    let arg = prod(e, &[&e.q(1), &z, &var(e, "y")?])?;
    let series = e.phi(&[], &[zx.clone(), e.zero()], &arg)?;
    e.pinf(&[zx])?.checked_mul(&series)
}

fn ratio_lhs(e: &Env) -> Result<Series> {
    e.rr("z", &var(e, "y")?, |w| {
        let z = var(w, "z")?;
        w.div(&w.pinf(&[&var(w, "a")? * &z])?, &w.pinf(&[z])?)
    })
}

fn ratio_rhs(e: &Env) -> Result<Series> {
    let (a, z) = (var(e, "a")?, var(e, "z")?);
    let az = &a * &z;
    let head = e.div(&e.pinf(&[az.clone()])?, &e.pinf(&[z])?)?;
    let arg = &e.q(1) * &var(e, "y")?;
    head.checked_mul(&e.phi(&[a], &[az, e.zero()], &arg)?)
}

fn pq_ratio(e: &Env) -> Result<Series> {
    e.div(&e.pinf(&[ax(e)?])?, &e.pinf(&[bx(e)?])?)
}

fn by1_lhs(e: &Env) -> Result<Series> {
    e.rr("x", &var(e, "y")?, pq_ratio)
}

fn by1_sum_rhs(e: &Env) -> Result<Series> {
    let (a, b, y) = (var(e, "a")?, var(e, "b")?, var(e, "y")?);
    let neg_ay = -&(&a * &y);
    let last = e.cap("a").min(e.cap("y")) as u64;
    let sum = e.sum_to(last, |k| {
        let kk = k as i64;
        let den = e.pn(&ax(e)?, k)?.checked_mul(&q_factorial(&e.vars, k))?;
        let num = prod(e, &[&e.q((3 * kk * kk - kk) / 2), &e.pn(&bx(e)?, k)?, &neg_ay.pow(k)])?;
        let r = e.rq(&prod(e, &[&e.q(2 * kk), &b, &y])?)?;
        e.div(&num, &den)?.checked_mul(&r)
    })?;
    pq_ratio(e)?.checked_mul(&sum)
}

fn by1_rhs(e: &Env) -> Result<Series> {
    let (a, y) = (var(e, "a")?, var(e, "y")?);
    let neg_ay = -&(&a * &y);
    let split = garrett_split(e, e.cap("a") as u64, |k| {
        let den = e.pn(&ax(e)?, k)?.checked_mul(&q_factorial(&e.vars, k))?;
        let num = prod(e, &[&e.q(-binom2(k as i64)), &e.pn(&bx(e)?, k)?, &neg_ay.pow(k)])?;
        e.div(&num, &den)
    })?;
    pq_ratio(e)?.checked_mul(&split)
}

pub(crate) fn sriaga_lhs(e: &Env) -> Result<Series> {
    let (a, x, y) = (var(e, "a")?, var(e, "x")?, var(e, "y")?);
    e.sweep("z", |n| {
        let s = sw_star(&x, &y, n, &e.caps)?.checked_mul(&e.pn(&a, n)?)?;
        over_qfac(e, &s, n)
    })
}

fn sriaga_rhs_with(e: &Env, arg: Series) -> Result<Series> {
    let a = var(e, "a")?;
    let zx = &var(e, "z")? * &var(e, "x")?;
    let azx = &a * &zx;
    let head = e.div(&e.pinf(&[azx.clone()])?, &e.pinf(&[zx])?)?;
    head.checked_mul(&e.phi(&[a], &[azx, e.zero()], &arg)?)
}

pub(crate) fn sriaga_rhs(e: &Env) -> Result<Series> {
    let arg = prod(e, &[&e.q(1), &var(e, "y")?, &var(e, "z")?])?;
    sriaga_rhs_with(e, arg)
}

pub(crate) fn sriaga_rhs_printed(e: &Env) -> Result<Series> {
    sriaga_rhs_with(e, &e.q(1) * &var(e, "y")?)
}

/// Last `n` of a sum of `S*_n(x, y) c^n` with `y c = 1`: the x-degree `n - k`
/// is capped and `q^(k^2)` bounds `k`.
fn bound_sw_order(e: &Env) -> u64 {
    (e.cap("x") + isqrt(e.q_max())).max(0) as u64
}

fn sriaga_yz1_lhs(e: &Env) -> Result<Series> {
    let (a, x, y, z) = (var(e, "a")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    e.sum_to(bound_sw_order(e), |n| {
        let s = prod(e, &[&sw_star(&x, &y, n, &e.caps)?, &e.pn(&a, n)?, &z.pow(n)])?;
        over_qfac(e, &s, n)
    })
}

fn sriaga_yz1_rhs(e: &Env) -> Result<Series> {
    let (a, x, y, z) = (var(e, "a")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    let zx = &z * &x;
    let azx = &a * &zx;
    let neg_azy = -&prod(e, &[&a, &z, &y])?;
    let head = e.div(&e.pinf(&[azx.clone()])?, &e.pinf(&[zx.clone()])?)?;
    let split = garrett_split(e, e.cap("a") as u64, |k| {
        let den = e.pn(&azx, k)?.checked_mul(&q_factorial(&e.vars, k))?;
        let num = prod(e, &[&e.q(-binom2(k as i64)), &e.pn(&zx, k)?, &neg_azy.pow(k)])?;
        e.div(&num, &den)
    })?;
    head.checked_mul(&split)
}

pub(crate) fn two_prod_lhs(e: &Env) -> Result<Series> {
    e.rr("x", &var(e, "y")?, |w| w.inv(&w.pinf(&[ax(w)?, bx(w)?])?))
}

fn two_prod_rhs(e: &Env) -> Result<Series> {
    let (a, b, y) = (var(e, "a")?, var(e, "b")?, var(e, "y")?);
    let ay = &a * &y;
    let head = e.inv(&e.pinf(&[ax(e)?, bx(e)?])?)?;
    let last = e.cap("a").min(e.cap("y")) as u64;
    let sum = e.sum_to(last, |i| {
        let ii = i as i64;
        let num = prod(e, &[&e.q(ii * ii), &e.pn(&bx(e)?, i)?, &ay.pow(i)])?;
        let r = e.rq(&prod(e, &[&b, &e.q(2 * ii), &y])?)?;
        over_qfac(e, &num, i)?.checked_mul(&r)
    })?;
    head.checked_mul(&sum)
}

fn two_prod_by1_rhs_with(e: &Env, exponent: fn(i64) -> Result<i64>) -> Result<Series> {
    let ay = &var(e, "a")? * &var(e, "y")?;
    let head = e.inv(&e.pinf(&[ax(e)?, bx(e)?])?)?;
    let split = garrett_split(e, e.cap("a") as u64, |i| {
        let num = prod(e, &[&e.q(exponent(i as i64)?), &e.pn(&bx(e)?, i)?, &ay.pow(i)])?;
        over_qfac(e, &num, i)
    })?;
    head.checked_mul(&split)
}

fn two_prod_by1_rhs(e: &Env) -> Result<Series> {
    two_prod_by1_rhs_with(e, |i| Ok(-i * (i - 1)))
}

/// `-i(3i-2)/2`, which is only an integer for even `i`.
pub(crate) fn printed_two_prod_exponent(i: i64) -> Result<i64> {
    let twice = -i * (3 * i - 2);
    if twice % 2 != 0 {
        return Err(crate::SeriesError::NonIntegerExponent(format!("-i(3i-2)/2 at i = {i}")));
    }
    Ok(twice / 2)
}

pub(crate) fn two_prod_by1_rhs_printed(e: &Env) -> Result<Series> {
    two_prod_by1_rhs_with(e, printed_two_prod_exponent)
}

pub(crate) fn rsgf_lhs(e: &Env) -> Result<Series> {
    let (a, b, x, y) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?);
    e.sweep("z", |n| {
        let s = sw_star(&x, &y, n, &e.caps)?.checked_mul(&rogers_szego(&a, &b, n)?)?;
        over_qfac(e, &s, n)
    })
}

fn rsgf_rhs_with(e: &Env, printed: bool) -> Result<Series> {
    let (a, b, x, y, z) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    let zx = &z * &x;
    let bzx = &b * &zx;
    let head = e.inv(&e.pinf(&[&a * &zx, bzx.clone()])?)?;
    let (weight, inner) = if printed {
        (&a * &y, &b * &y)
    } else {
        (prod(e, &[&a, &z, &y])?, prod(e, &[&b, &z, &y])?)
    };
    let last = e.cap("z").min(e.cap("a")).min(e.cap("y")) as u64;
    let sum = e.sum_to(last, |i| {
        let ii = i as i64;
        let num = prod(e, &[&e.q(ii * ii), &e.pn(&bzx, i)?, &weight.pow(i)])?;
        let r = e.rq(&(&inner * &e.q(2 * ii)))?;
        over_qfac(e, &num, i)?.checked_mul(&r)
    })?;
    head.checked_mul(&sum)
}

fn rsgf_rhs(e: &Env) -> Result<Series> {
    rsgf_rhs_with(e, false)
}

pub(crate) fn rsgf_rhs_printed(e: &Env) -> Result<Series> {
    rsgf_rhs_with(e, true)
}

fn rsgf_bzy1_lhs(e: &Env) -> Result<Series> {
    let (a, b, x, y, z) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    e.sum_to(bound_sw_order(e), |n| {
        let s = prod(e, &[&sw_star(&x, &y, n, &e.caps)?, &rogers_szego(&a, &b, n)?, &z.pow(n)])?;
        over_qfac(e, &s, n)
    })
}

fn rsgf_bzy1_rhs(e: &Env) -> Result<Series> {
    let (a, b, x, y, z) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    let zx = &z * &x;
    let bzx = &b * &zx;
    let azy = prod(e, &[&a, &z, &y])?;
    let head = e.inv(&e.pinf(&[&a * &zx, bzx.clone()])?)?;
    let split = garrett_split(e, e.cap("a") as u64, |i| {
        let ii = i as i64;
        let num = prod(e, &[&e.q(-ii * (ii - 1)), &e.pn(&bzx, i)?, &azy.pow(i)])?;
        over_qfac(e, &num, i)
    })?;
    head.checked_mul(&split)
}

fn abgf_lhs(e: &Env) -> Result<Series> {
    let (a, b, x, y) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?);
    e.sweep("z", |n| {
        let num = sw_star(&x, &y, n, &e.caps)?.checked_mul(&e.pn(&a, n)?)?;
        let den = e.pn(&b, n)?.checked_mul(&q_factorial(&e.vars, n))?;
        e.div(&num, &den)
    })
}

fn abgf_rhs(e: &Env) -> Result<Series> {
    let (a, b, x, y, z) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    let zx = &z * &x;
    let zy = &z * &y;
    let head = e.div(&e.pinf(&[a.clone()])?, &e.pinf(&[zx.clone(), b.clone()])?)?;
    // (b/a;q)_k a^k = prod_{j<k} (a - b q^j); the term of a-degree m has
    // q-degree at least binom(k-m, 2)
    let last = (e.cap("a") as u64) + e.weight_order(1, 0)?;
    let mut lifted = e.one();
    let mut acc = e.zero().truncate(&e.caps);
    for k in 0..=last as u32 {
        if k > 0 {
            let f = &a - &(&b * &e.q(k as i64 - 1));
            lifted = lifted.checked_mul(&f)?.truncate(&e.caps);
        }
        let num = prod(e, &[&lifted, &e.pn(&zx, k)?, &e.rq(&(&e.q(k as i64) * &zy))?])?;
        acc = acc.checked_add(&over_qfac(e, &num, k)?)?;
    }
    head.checked_mul(&acc)
}

// ------------------------------------------------------------ Mehler

fn mehler_lhs(e: &Env) -> Result<Series> {
    let (w, x, y, z) = (var(e, "w")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    e.sweep("t", |n| {
        let s = sw_star(&x, &y, n, &e.caps)?.checked_mul(&sw_star(&w, &z, n, &e.caps)?)?;
        over_qfac(e, &s, n)
    })
}

fn mehler_rhs(e: &Env) -> Result<Series> {
    let (t, w, x, y, z) = (var(e, "t")?, var(e, "w")?, var(e, "x")?, var(e, "y")?, var(e, "z")?);
    let twx = prod(e, &[&t, &w, &x])?;
    let tyz = prod(e, &[&t, &y, &z])?;
    let tzx = prod(e, &[&t, &z, &x])?;
    let tyw = prod(e, &[&t, &y, &w])?;
    let head = e.inv(&e.pinf(&[twx.clone()])?)?;
    let sum = e.sum_to(e.cap("t") as u64, |k| {
        let kk = k as i64;
        let num = prod(e, &[&e.q(2 * kk * kk), &e.pn(&twx, k)?, &tyz.pow(k)])?;
        let r = e.rq(&(&tzx * &e.q(2 * kk)))?.checked_mul(&e.rq(&(&tyw * &e.q(2 * kk)))?)?;
        over_qfac(e, &num, k)?.checked_mul(&r)
    })?;
    head.checked_mul(&sum)
}

pub(crate) fn opprod_lhs(e: &Env) -> Result<Series> {
    e.rr("x", &var(e, "y")?, |w| w.pinf(&[ax(w)?, bx(w)?]))
}

/// `(AX, BX)_inf sum_k q^(3 binom(k,2)) (s q A Y)^k / ((AX)_k (BX)_k (q)_k)
///   0phi2(-; B q^k X, 0; q, t q^(2k+1) B Y)` with `s = -1, t = 1` for the
/// verified form and `s = 1, t = -1` as printed.
fn opprod_shape(e: &Env, a: &Series, b: &Series, xx: &Series, yy: &Series, printed: bool) -> Result<Series> {
    let ax = a * xx;
    let bx = b * xx;
    let head = e.pinf(&[ax.clone(), bx.clone()])?;
    let weight = prod(e, &[&e.signed_q(!printed, 1), a, yy])?;
    let last = e.cap("y") as u64;
    let sum = e.sum_to(last, |k| {
        let kk = k as i64;
        let den = prod(e, &[&e.pn(&ax, k)?, &e.pn(&bx, k)?, &q_factorial(&e.vars, k)])?;
        let num = &e.q(3 * binom2(kk)) * &weight.pow(k);
        let arg = prod(e, &[&e.signed_q(printed, 2 * kk + 1), b, yy])?;
        let series = e.phi(&[], &[&bx * &e.q(kk), e.zero()], &arg)?;
        e.div(&num, &den)?.checked_mul(&series)
    })?;
    head.checked_mul(&sum)
}

fn opprod_rhs(e: &Env) -> Result<Series> {
    opprod_shape(e, &var(e, "a")?, &var(e, "b")?, &var(e, "x")?, &var(e, "y")?, false)
}

pub(crate) fn opprod_rhs_printed(e: &Env) -> Result<Series> {
    opprod_shape(e, &var(e, "a")?, &var(e, "b")?, &var(e, "x")?, &var(e, "y")?, true)
}

/// `sum_n (-1)^n q^binom(n,2) S*_n(p1, p2) S*_n(r1, r2 q^-n) z^n / (q;q)_n`
fn altmehler_sum(e: &Env, p: (&Series, &Series), r: (&Series, &Series)) -> Result<Series> {
    let exact = crate::series::TruncationSpec::exact(&e.vars);
    e.sweep("z", |n| {
        let shifted = r.1 * &e.q(-(n as i64));
        let second = sw_star(r.0, &shifted, n, &exact)?;
        let s = prod(e, &[&alt_weight(e, n), &sw_star(p.0, p.1, n, &e.caps)?, &second])?;
        over_qfac(e, &s, n)
    })
}

pub(crate) fn altmehler_lhs(e: &Env) -> Result<Series> {
    let (a, b, x, y) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?);
    altmehler_sum(e, (&x, &y), (&a, &b))
}

pub(crate) fn altmehler_lhs_swapped(e: &Env) -> Result<Series> {
    let (a, b, x, y) = (var(e, "a")?, var(e, "b")?, var(e, "x")?, var(e, "y")?);
    altmehler_sum(e, (&a, &b), (&x, &y))
}

pub(crate) fn altmehler_rhs(e: &Env) -> Result<Series> {
    let (a, b, z) = (var(e, "a")?, var(e, "b")?, var(e, "z")?);
    let zx = &z * &var(e, "x")?;
    let zy = &z * &var(e, "y")?;
    opprod_shape(e, &a, &b, &zx, &zy, false)
}

pub(crate) fn altmehler_rhs_printed(e: &Env) -> Result<Series> {
    // printed: z appears in the products but not in the two y-weights
    let (a, b, z, y) = (var(e, "a")?, var(e, "b")?, var(e, "z")?, var(e, "y")?);
    let azx = prod(e, &[&a, &z, &var(e, "x")?])?;
    let bzx = prod(e, &[&b, &z, &var(e, "x")?])?;
    let head = e.pinf(&[azx.clone(), bzx.clone()])?;
    let weight = prod(e, &[&e.q(1), &a, &y])?;
    let sum = e.sum_to(e.cap("y") as u64, |k| {
        let kk = k as i64;
        let den = prod(e, &[&e.pn(&azx, k)?, &e.pn(&bzx, k)?, &q_factorial(&e.vars, k)])?;
        let num = &e.q(3 * binom2(kk)) * &weight.pow(k);
        let arg = prod(e, &[&e.signed_q(true, 2 * kk + 1), &b, &y])?;
        let series = e.phi(&[], &[&bzx * &e.q(kk), e.zero()], &arg)?;
        e.div(&num, &den)?.checked_mul(&series)
    })?;
    head.checked_mul(&sum)
}

// ------------------------------------------------------------ Rogers

/// `sum_{n,m} sgn_n S*_(n+m)(x,y) t^n s^m / ((q)_n (q)_m)`; `S*_(n+m)` has
/// total degree `n+m` in x and y, which bounds the double sum.
fn rogers_double_sum(e: &Env, alternating: bool) -> Result<Series> {
    let (t, s, x, y) = (var(e, "t")?, var(e, "s")?, var(e, "x")?, var(e, "y")?);
    let top = (e.cap("x") + e.cap("y")) as u32;
    let mut acc = e.zero().truncate(&e.caps);
    for total in 0..=top {
        let star = sw_star(&x, &y, total, &e.caps)?;
        for n in 0..=total {
            let m = total - n;
            let w = if alternating { alt_weight(e, n) } else { e.one() };
            let c = prod(e, &[&w, &t.pow(n), &s.pow(m), &star])?;
            let den = q_factorial(&e.vars, n).checked_mul(&q_factorial(&e.vars, m))?;
            acc = acc.checked_add(&e.div(&c, &den)?)?;
        }
    }
    Ok(acc)
}

pub(crate) fn rogers_alt_lhs(e: &Env) -> Result<Series> {
    rogers_double_sum(e, true)
}

fn rogers_alt_rhs_with(e: &Env, weight: Series) -> Result<Series> {
    let x = var(e, "x")?;
    let tx = &var(e, "t")? * &x;
    let sx = &var(e, "s")? * &x;
    let ratio = match (e.bound("t"), e.bound("s")) {
        (Some(t), Some(s)) => e.rat(t / s),
        _ => {
            return Err(crate::SeriesError::InvalidCaps(
                "the ratio t/s needs rational values for t and s".into(),
            ))
        }
    };
    let head = e.div(&e.pinf(&[tx.clone()])?, &e.pinf(&[sx])?)?;
    let arg = prod(e, &[&e.q(1), &weight, &var(e, "y")?])?;
    head.checked_mul(&e.phi(&[ratio], &[tx, e.zero()], &arg)?)
}

fn rogers_alt_rhs(e: &Env) -> Result<Series> {
    rogers_alt_rhs_with(e, var(e, "s")?)
}

pub(crate) fn rogers_alt_rhs_printed(e: &Env) -> Result<Series> {
    rogers_alt_rhs_with(e, e.one())
}

fn rogers_lhs(e: &Env) -> Result<Series> {
    rogers_double_sum(e, false)
}

fn rogers_rhs(e: &Env) -> Result<Series> {
    let (t, s, x, y) = (var(e, "t")?, var(e, "s")?, var(e, "x")?, var(e, "y")?);
    let sx = &s * &x;
    let ty = &t * &y;
    let head = e.inv(&e.pinf(&[&t * &x, sx.clone()])?)?;
    let sum = e.sum_to(e.cap("y") as u64, |i| {
        let ii = i as i64;
        let num = prod(e, &[&e.q(ii * ii), &e.pn(&sx, i)?, &ty.pow(i)])?;
        let r = e.rq(&prod(e, &[&s, &e.q(2 * ii), &y])?)?;
        over_qfac(e, &num, i)?.checked_mul(&r)
    })?;
    head.checked_mul(&sum)
}

/// Every verified identity, in a fixed order.
pub fn registry() -> Vec<IdentitySpec> {
    use IdentitySpec as S;
    vec![
        S::new("I-POCH-1", "(a;q)_n = (a;q)_inf / (aq^n;q)_inf", &["a", "n"], poch1_lhs, poch1_rhs)
            .tags(&[("n", 8)]),
        S::new("I-POCH-2", "(a;q)_(n+k) = (a;q)_n (aq^n;q)_k", &["a", "n", "k"], poch2_lhs, poch2_rhs)
            .tags(&[("n", 6), ("k", 6)]),
        S::new(
            "I-POCH-3",
            "(aq^n;q)_k = (a;q)_k (aq^k;q)_n / (a;q)_n",
            &["a", "n", "k"],
            poch3_lhs,
            poch3_rhs,
        )
        .tags(&[("n", 6), ("k", 6)]),
        S::new(
            "I-QBINTHM",
            "1phi0(a; -; q, z) = (az;q)_inf / (z;q)_inf",
            &["a", "z"],
            qbinthm_lhs,
            qbinthm_rhs,
        ),
        S::new("I-EQ-PROD", "e_q(z) = sum z^n/(q;q)_n = 1/(z;q)_inf", &["z"], eq_lhs, eq_rhs),
        S::new(
            "I-EQBIG-PROD",
            "E_q(z) = 1phi1(0; 0; q, -z) = (-z;q)_inf",
            &["z"],
            eqbig_lhs,
            eqbig_rhs,
        ),
        S::new(
            "I-GF1",
            "1/(t;q)_inf 0phi1(-; 0; q, -qtx) = sum S_n(x;q) t^n",
            &["x", "t"],
            gf1_lhs,
            gf1_rhs,
        )
        .expansion("t"),
        S::new(
            "I-GF2",
            "(t;q)_inf 0phi2(-; 0, t; q, -qtx) = sum (-1)^n q^binom(n,2) S_n(x;q) t^n",
            &["x", "t"],
            gf2_lhs,
            gf2_rhs,
        )
        .expansion("t"),
        S::new(
            "I-GF3",
            "(at;q)_inf/(t;q)_inf 1phi2(a; 0, at; q, -qtx) = sum (a;q)_n S_n(x;q) t^n",
            &["a", "x", "t"],
            gf3_lhs,
            gf3_rhs,
        )
        .expansion("t"),
        S::new(
            "I-LEIBNIZ",
            "D^n{f g} = sum_k q^(k(k-n)) [n k] D^k{f} D^(n-k){g(q^k x)}, f = (ax;q)_inf, g = 1/(bx;q)_inf",
            &["a", "b", "x", "n"],
            leibniz_lhs,
            leibniz_rhs_side,
        )
        .tags(&[("n", 4)]),
        S::new("I-DQ-4", "D^n x^k = (q;q)_k/(q;q)_(k-n) x^(k-n)", &["x", "n", "k"], dq4_lhs, dq4_rhs)
            .tags(&[("n", 8), ("k", 8)]),
        S::new("I-DQ-5", "D^n 1/(ax;q)_inf = a^n/(ax;q)_inf", &["a", "x", "n"], dq5_lhs, dq5_rhs)
            .tags(&[("n", 4)]),
        S::new(
            "I-DQ-6",
            "D^n (ax;q)_inf = (-a)^n q^binom(n,2) (aq^n x;q)_inf",
            &["a", "x", "n"],
            dq6_lhs,
            dq6_rhs,
        )
        .tags(&[("n", 4)]),
        S::new(
            "I-DQ-7",
            "D^n (ax,bx;q)_inf = (-1)^n q^binom(n,2) (ax,bq^n x;q)_inf sum_k [n k] q^(k(k-n)) a^k b^(n-k)/(ax;q)_k",
            &["a", "b", "x", "n"],
            dq7_lhs,
            dq7_rhs,
        )
        .tags(&[("n", 4)]),
        S::new(
            "I-DQ-8",
            "D^n (ax;q)_inf/(bx;q)_inf = (ax;q)_inf/(bx;q)_inf sum_k [n k] q^binom(k,2) (-a)^k b^(n-k) (bx;q)_k/(ax;q)_k",
            &["a", "b", "x", "n"],
            dq8_lhs,
            dq8_rhs,
        )
        .tags(&[("n", 4)]),
        S::new(
            "I-DQ-9",
            "D^n 1/(ax,bx;q)_inf = 1/(ax,bx;q)_inf sum_k [n k] a^k b^(n-k) (bx;q)_k",
            &["a", "b", "x", "n"],
            dq9_lhs,
            dq9_rhs,
        )
        .tags(&[("n", 4)]),
        S::new("I-RQ-DIFFEQ", "R(z) - R(qz) = q z R(q^2 z)", &["z"], diffeq_lhs, diffeq_rhs),
        S::new("I-RQ-DQN", "D^n R(ax) = a^n q^(n^2) R(aq^(2n) x)", &["a", "x", "n"], rqdqn_lhs, rqdqn_rhs)
            .tags(&[("n", 4)]),
        S::new("I-RR1", "R(1) = 1/(q,q^4;q^5)_inf", &[], rr1_lhs, rr1_rhs),
        S::new("I-RR2", "R(q) = 1/(q^2,q^3;q^5)_inf", &[], rr2_lhs, rr2_rhs),
        S::new(
            "I-GARRETT",
            "sum q^(n^2+kn)/(q;q)_n = sgn_k q^-binom(k,2) (a_k R(1) - b_k R(q))",
            &["k"],
            garrett_lhs,
            garrett_rhs,
        )
        .tags(&[("k", 6)])
        .garrett(),
        S::new("T4-XN", "R(yD){x^n} = S*_n(x,y)", &["x", "y", "n"], xn_lhs, xn_rhs)
            .tags(&[("n", 10)])
            .caps(&[("x", 10), ("y", 10)]),
        S::new(
            "T4-INVPOCH",
            "R(yD){1/(ax;q)_inf} = R(ay)/(ax;q)_inf",
            &["a", "x", "y"],
            invpoch_lhs,
            invpoch_rhs,
        ),
        S::new(
            "T4-GF",
            "sum S*_n(x,y) z^n/(q;q)_n = R(zy)/(zx;q)_inf",
            &["x", "y", "z"],
            sw_gf_lhs,
            sw_gf_rhs,
        )
        .expansion("z"),
        S::new(
            "T4-POCH",
            "R(yD){(ax;q)_inf} = (ax;q)_inf 0phi2(-; ax, 0; q, qay)",
            &["a", "x", "y"],
            poch_image_lhs,
            poch_image_rhs,
        ),
        S::new(
            "T4-ALTGF",
            "sum (-1)^n q^binom(n,2) S*_n(x,y) z^n/(q;q)_n = (zx;q)_inf 0phi2(-; zx, 0; q, qzy)",
            &["x", "y", "z"],
            altgf_lhs,
            altgf_rhs,
        )
        .expansion("z"),
        S::new(
            "T4-RATIO",
            "R(yD_z){(az;q)_inf/(z;q)_inf} = (az;q)_inf/(z;q)_inf 1phi2(a; az, 0; q, qy)",
            &["a", "z", "y"],
            ratio_lhs,
            ratio_rhs,
        ),
        S::new(
            "T4-BY1-SUM",
            "R(yD){(ax;q)_inf/(bx;q)_inf} = (ax;q)_inf/(bx;q)_inf sum_k q^((3k^2-k)/2) (bx;q)_k/((ax;q)_k (q;q)_k) (-ay)^k R(q^(2k) by)",
            &["a", "b", "x", "y"],
            by1_lhs,
            by1_sum_rhs,
        )
        .caps(&[("a", 5), ("b", 5), ("x", 5), ("y", 5)]),
        S::new(
            "T4-BY1",
            "by = 1: R(yD){(ax;q)_inf/(bx;q)_inf} in terms of a_2k, b_2k, R(1), R(q)",
            &["a", "b", "x", "y"],
            by1_lhs,
            by1_rhs,
        )
        .random(&["y"])
        .constrained(b_is_inv_y, "b = 1/y")
        .garrett(),
        S::new(
            "T4-SRIAGA",
            "sum S*_n(x,y) (a;q)_n/(q;q)_n z^n = (azx;q)_inf/(zx;q)_inf 1phi2(a; azx, 0; q, qyz)",
            &["a", "x", "y", "z"],
            sriaga_lhs,
            sriaga_rhs,
        )
        .expansion("z")
        .caps(&[("a", 6), ("x", 6), ("y", 6)]),
        S::new(
            "T4-SRIAGA-YZ1",
            "yz = 1: sum S*_n(x,y) (a;q)_n/(q;q)_n z^n in terms of a_2k, b_2k, R(1), R(q)",
            &["a", "x", "y", "z"],
            sriaga_yz1_lhs,
            sriaga_yz1_rhs,
        )
        .random(&["y"])
        .constrained(z_is_inv_y, "z = 1/y")
        .garrett(),
        S::new(
            "T4-2PROD",
            "R(yD){1/(ax,bx;q)_inf} = 1/(ax,bx;q)_inf sum_i q^(i^2) (bx;q)_i/(q;q)_i (ay)^i R(bq^(2i) y)",
            &["a", "b", "x", "y"],
            two_prod_lhs,
            two_prod_rhs,
        )
        .caps(&[("a", 5), ("b", 5), ("x", 5), ("y", 5)]),
        S::new(
            "T4-2PROD-BY1",
            "by = 1: R(yD){1/(ax,bx;q)_inf} with weights q^(-i(i-1)) a_2i, b_2i",
            &["a", "b", "x", "y"],
            two_prod_lhs,
            two_prod_by1_rhs,
        )
        .random(&["y"])
        .constrained(b_is_inv_y, "b = 1/y")
        .garrett(),
        S::new(
            "T4-RSGF",
            "sum S*_n(x,y) r_n(a,b) z^n/(q;q)_n = 1/(azx,bzx;q)_inf sum_i q^(i^2) (bzx;q)_i/(q;q)_i (azy)^i R(bzq^(2i) y)",
            &["a", "b", "x", "y", "z"],
            rsgf_lhs,
            rsgf_rhs,
        )
        .expansion("z")
        .caps(&[("a", 4), ("b", 4), ("x", 4), ("y", 4)]),
        S::new(
            "T4-RSGF-BZY1",
            "bzy = 1: sum S*_n(x,y) r_n(a,b) z^n/(q;q)_n with weights q^(-i(i-1)) a_2i, b_2i",
            &["a", "b", "x", "y", "z"],
            rsgf_bzy1_lhs,
            rsgf_bzy1_rhs,
        )
        .random(&["y", "z"])
        .constrained(b_is_inv_zy, "b = 1/(zy)")
        .garrett(),
        S::new(
            "T4-ABGF",
            "sum S*_n(x,y) (a;q)_n/((b;q)_n (q;q)_n) z^n = (a;q)_inf/(zx,b;q)_inf sum_k (b/a;q)_k (zx;q)_k/(q;q)_k a^k R(q^k zy)",
            &["a", "b", "x", "y", "z"],
            abgf_lhs,
            abgf_rhs,
        )
        .expansion("z")
        .random(&["b"])
        .caps(&[("a", 6), ("x", 6), ("y", 6)]),
        S::new(
            "T5-MEHLER",
            "sum S*_n(x,y) S*_n(w,z) t^n/(q;q)_n = 1/(twx;q)_inf sum_k q^(2k^2) (twx;q)_k/(q;q)_k (tyz)^k R(tzq^(2k) x) R(tyq^(2k) w)",
            &["t", "w", "x", "y", "z"],
            mehler_lhs,
            mehler_rhs,
        )
        .expansion("t")
        .random(&["w", "z"]),
        S::new(
            "T5-OPPROD",
            "R(yD){(ax,bx;q)_inf} = (ax,bx;q)_inf sum_k q^(3binom(k,2)) (-qay)^k/((ax;q)_k (bx;q)_k (q;q)_k) 0phi2(-; bq^k x, 0; q, q^(2k+1) by)",
            &["a", "b", "x", "y"],
            opprod_lhs,
            opprod_rhs,
        )
        .random(&["a", "b"]),
        S::new(
            "T5-ALTMEHLER",
            "sum (-1)^n q^binom(n,2) S*_n(x,y) S*_n(a,bq^-n) z^n/(q;q)_n = (azx,bzx;q)_inf sum_k q^(3binom(k,2)) (-qazy)^k/((azx;q)_k (bzx;q)_k (q;q)_k) 0phi2(-; bq^k zx, 0; q, q^(2k+1) bzy)",
            &["a", "b", "x", "y", "z"],
            altmehler_lhs,
            altmehler_rhs,
        )
        .expansion("z")
        .random(&["a", "b"]),
        S::new(
            "T6-ROGERS-ALT",
            "sum_(n,m) (-1)^n q^binom(n,2) S*_(n+m)(x,y) t^n s^m/((q;q)_n (q;q)_m) = (tx;q)_inf/(sx;q)_inf 1phi2(t/s; tx, 0; q, qsy)",
            &["s", "t", "x", "y"],
            rogers_alt_lhs,
            rogers_alt_rhs,
        )
        .random(&["t", "s"]),
        S::new(
            "T6-ROGERS",
            "sum_(n,m) S*_(n+m)(x,y) t^n s^m/((q;q)_n (q;q)_m) = 1/(tx,sx;q)_inf sum_i q^(i^2) (sx;q)_i/(q;q)_i (ty)^i R(sq^(2i) y)",
            &["s", "t", "x", "y"],
            rogers_lhs,
            rogers_rhs,
        )
        .random(&["t", "s"]),
    ]
}
