//! Small vocabulary shared by the identity builders.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::GarrettConvention;
use crate::error::{Result, SeriesError};
use crate::qcalculus::{
    binom2, degree_certificate, garrett, min_cert, phi, poch, poch_n, q_weight_certificate, rq, GarrettKind,
    PochSpec,
};
use crate::qoperators::rr_op_weighted;
use crate::rational::Rational;
use crate::series::{Monomial, Series, TruncationSpec, VarTable, UNBOUNDED};

/// Working state handed to a builder: the table, the working window, the
/// rational bindings of this trial and the Garrett convention.
#[derive(Debug, Clone)]
pub struct Env {
    pub vars: Arc<VarTable>,
    pub caps: TruncationSpec,
    pub bindings: BTreeMap<String, Rational>,
    pub convention: GarrettConvention,
}

impl Env {
    pub fn new(
        vars: Arc<VarTable>,
        caps: TruncationSpec,
        bindings: BTreeMap<String, Rational>,
        convention: GarrettConvention,
    ) -> Self {
        Self {
            vars,
            caps,
            bindings,
            convention,
        }
    }

    pub fn with_caps(&self, caps: TruncationSpec) -> Self {
        Self {
            caps,
            ..self.clone()
        }
    }

    /// Parameter as a series: its bound value, or the formal variable.
    pub fn p(&self, name: &str) -> Result<Series> {
        match self.bindings.get(name) {
            Some(r) => Ok(self.rat(r.clone())),
            None => Series::var(&self.vars, name),
        }
    }

    pub fn bound(&self, name: &str) -> Option<&Rational> {
        self.bindings.get(name)
    }

    pub fn rat(&self, r: Rational) -> Series {
        Series::constant(&self.vars, r)
    }

    pub fn int(&self, n: i64) -> Series {
        self.rat(Rational::from_integer(n))
    }

    pub fn one(&self) -> Series {
        Series::one(&self.vars)
    }

    pub fn zero(&self) -> Series {
        Series::zero(&self.vars, TruncationSpec::exact(&self.vars))
    }

    pub fn q(&self, e: i64) -> Series {
        Series::q_pow(&self.vars, e)
    }

    /// `sign * q^e`
    pub fn signed_q(&self, negative: bool, e: i64) -> Series {
        let c = if negative { -Rational::ONE } else { Rational::ONE };
        Series::monomial(&self.vars, c, &Monomial::q_pow(&self.vars, e))
    }

    pub fn cap(&self, name: &str) -> i64 {
        self.caps.cap_of(&self.vars, name).expect("builder variable in table")
    }

    pub fn q_max(&self) -> i64 {
        self.caps.q_max()
    }

    pub fn inv(&self, s: &Series) -> Result<Series> {
        self.one().div_within(s, &self.caps)
    }

    pub fn div(&self, num: &Series, den: &Series) -> Result<Series> {
        num.div_within(den, &self.caps)
    }

    /// `(a_1, ..., a_m; q)_inf`
    pub fn pinf(&self, args: &[Series]) -> Result<Series> {
        poch(&PochSpec::infinite(args.to_vec()), &self.caps)
    }

    /// `(a; q)_n`
    pub fn pn(&self, a: &Series, n: u32) -> Result<Series> {
        poch_n(a, n, &self.caps)
    }

    /// `(q^a, q^b; q^5)_inf`
    pub fn rr_product(&self, a: i64, b: i64) -> Result<Series> {
        poch(&PochSpec::infinite(vec![self.q(a), self.q(b)]).with_base(5), &self.caps)
    }

    pub fn phi(&self, upper: &[Series], lower: &[Series], z: &Series) -> Result<Series> {
        phi(upper, lower, z, &self.caps)
    }

    pub fn rq(&self, z: &Series) -> Result<Series> {
        rq(z, &self.caps)
    }

    /// `q^(-binom(k,2)) (a_k R(1) - b_k R(q))` under the working convention,
    /// with `R(1)` and `R(q)` taken from the product side.
    pub fn garrett_value(&self, k: u32) -> Result<Series> {
        let shift = binom2(k as i64);
        let inner = self.caps.widen(shift, 0);
        let wide = self.with_caps(inner);
        let r1 = wide.inv(&wide.rr_product(1, 4)?)?;
        let rqq = wide.inv(&wide.rr_product(2, 3)?)?;
        let a = garrett(&self.vars, GarrettKind::A, k);
        let b = garrett(&self.vars, GarrettKind::B, k);
        let sum = a.checked_mul(&r1)?.checked_sub(&b.checked_mul(&rqq)?)?;
        let sign = self.convention.sign(k);
        Ok(sum
            .checked_mul(&Series::monomial(&self.vars, sign, &Monomial::q_pow(&self.vars, -shift)))?
            .truncate(&self.caps))
    }

    /// `sum_{i=0}^{cap(tag)} f(i) tag^i`
    pub fn sweep(&self, tag: &str, f: impl Fn(u32) -> Result<Series>) -> Result<Series> {
        let t = Series::var(&self.vars, tag)?;
        let top = self.cap(tag);
        let mut acc = Series::zero(&self.vars, self.caps.clone());
        for i in 0..=top as u32 {
            acc = acc.checked_add(&f(i)?.checked_mul(&t.pow(i))?)?;
        }
        Ok(acc)
    }

    /// Number of operator terms `sum_n q^(n^2) w^n / (q;q)_n D^n` that can
    /// reach the window.
    pub fn operator_order(&self, w: &Series) -> Result<u64> {
        let by_degree = degree_certificate(w, &self.caps);
        let by_weight = match w.q_valuation() {
            Some(vw) => q_weight_certificate(2, vw + 1, 0, self.q_max()),
            None => Some(0),
        };
        min_cert([by_degree, by_weight])
            .ok_or_else(|| SeriesError::NonTerminatingSeries("operator weight has no decay".into()))
    }

    /// `R(w D_x)` applied to the function built by `f`, which is evaluated on a
    /// window widened in `x` by the operator order.
    pub fn rr(&self, x: &str, w: &Series, f: impl Fn(&Env) -> Result<Series>) -> Result<Series> {
        let order = self.operator_order(w)? as i64;
        let mut wide = self.caps.clone();
        let xi = self.vars.index_of(x)?;
        if wide.var_cap(xi) != UNBOUNDED {
            wide.set_var_cap(xi, wide.var_cap(xi) + order + 1);
        }
        let g = f(&self.with_caps(wide))?;
        rr_op_weighted(&g, x, w, &self.caps)
    }

    /// Last index of a sum whose `n`-th term carries `q^(quad binom(n,2) + lin n)`.
    pub fn weight_order(&self, quad: i64, lin: i64) -> Result<u64> {
        q_weight_certificate(quad, lin, 0, self.q_max())
            .ok_or_else(|| SeriesError::NonTerminatingSeries("sum has no decaying q-weight".into()))
    }

    /// Sum of `f(n)` for `n = 0..=last`.
    pub fn sum_to(&self, last: u64, f: impl Fn(u32) -> Result<Series>) -> Result<Series> {
        let mut acc = Series::zero(&self.vars, self.caps.clone());
        for n in 0..=last as u32 {
            acc = acc.checked_add(&f(n)?)?;
        }
        Ok(acc)
    }
}

/// Integer square root.
pub(crate) fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
