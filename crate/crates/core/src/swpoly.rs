//! Stieltjes-Wigert and Rogers-Szego polynomials.

use std::sync::Arc;

use crate::error::Result;
use crate::qcalculus::{phi, q_factorial, qbinom};
use crate::qoperators::{rr_op, OperatorContext};
use crate::rational::Rational;
use crate::series::{Monomial, Series, TruncationSpec, VarTable};

/// `S_n(x;q) = 1/(q;q)_n * 1phi1(q^-n; 0; q, -q^(n+1) x)`
pub fn sw_classic(vars: &Arc<VarTable>, x: &str, n: u32, caps: &TruncationSpec) -> Result<Series> {
    let xs = Series::var(vars, x)?;
    let nn = n as i64;
    let z = &Series::monomial(vars, -Rational::ONE, &Monomial::q_pow(vars, nn + 1)) * &xs;
    let zero = Series::zero(vars, TruncationSpec::exact(vars));
    let inner = phi(&[Series::q_pow(vars, -nn)], &[zero], &z, caps)?;
    inner.div_within(&q_factorial(vars, n), caps)
}

/// `S*_n(x, y; q) = sum_k [n k] q^(k^2) x^(n-k) y^k` with arbitrary series in
/// place of `x` and `y`.
pub fn sw_star(xs: &Series, ys: &Series, n: u32, caps: &TruncationSpec) -> Result<Series> {
    let vars = xs.vars();
    let mut acc = Series::zero(vars, caps.clone());
    for k in 0..=n {
        let kk = k as i64;
        let coeff = &qbinom(vars, n, kk) * &Series::q_pow(vars, kk * kk);
        let term = coeff.checked_mul(&xs.pow(n - k))?.checked_mul(&ys.pow(k))?;
        acc = acc.checked_add(&term)?;
    }
    Ok(acc.truncate(caps))
}

/// `R(yD_q){x^n}`, the operator route to `S*_n`.
pub fn sw_star_op(vars: &Arc<VarTable>, ctx: &OperatorContext, n: u32, caps: &TruncationSpec) -> Result<Series> {
    let xn = Series::var(vars, &ctx.x)?.pow(n);
    let top = (n as i64) * (n as i64);
    if caps.q_max() > top {
        // every term k has q-degree at most k^2 + k(n-k) = kn <= n^2
        let inner = caps.clone().with_q_max(top);
        let out = rr_op(&xn, ctx, &inner)?;
        return Ok(out.assume_caps(inner.with_q_max(caps.q_max())).truncate(caps));
    }
    Ok(rr_op(&xn, ctx, caps)?.truncate(caps))
}

/// `r_n(a, b) = sum_k [n k] a^(n-k) b^k`
pub fn rogers_szego(a: &Series, b: &Series, n: u32) -> Result<Series> {
    let vars = a.vars();
    let mut acc = Series::zero(vars, TruncationSpec::exact(vars));
    for k in 0..=n {
        let term = qbinom(vars, n, k as i64)
            .checked_mul(&a.pow(n - k))?
            .checked_mul(&b.pow(k))?;
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalculus::poch;
    use crate::qcalculus::PochSpec;

    fn table(names: &[&str]) -> Arc<VarTable> {
        VarTable::new(names.iter().copied()).unwrap()
    }

    fn var(v: &Arc<VarTable>, name: &str) -> Series {
        Series::var(v, name).unwrap()
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn classic_examples() {
        let v = table(&["x"]);
        let caps = TruncationSpec::uniform(&v, 20, 8);
        assert_eq!(sw_classic(&v, "x", 0, &caps).unwrap().to_text(), "1");
        let s1 = sw_classic(&v, "x", 1, &caps).unwrap();
        let want = (&Series::one(&v) - &(&Series::q_pow(&v, 1) * &var(&v, "x")))
            .truncate(&caps)
            .checked_div(&q_factorial(&v, 1))
            .unwrap();
        assert_eq!(s1.equals_mod_caps(&want).unwrap(), None);
        for n in 0..=6 {
            let s = sw_classic(&v, "x", n, &caps).unwrap();
            let inv = Series::one(&v).truncate(&caps).checked_div(&q_factorial(&v, n)).unwrap();
            for e in 0..=20 {
                let m = Monomial::q_pow(&v, e);
                assert_eq!(s.coeff(&m), inv.coeff(&m));
            }
        }
    }

    #[test]
    fn star_examples() {
        let v = table(&["x", "y"]);
        let caps = TruncationSpec::exact(&v);
        let (x, y) = (var(&v, "x"), var(&v, "y"));
        assert_eq!(sw_star(&x, &y, 0, &caps).unwrap().to_text(), "1");
        assert_eq!(sw_star(&x, &y, 1, &caps).unwrap().to_text(), "x + q*y");
        let s2 = sw_star(&x, &y, 2, &caps).unwrap();
        let want = Series::make_series(
            &v,
            [
                (int(1), Monomial::from_pairs(&v, 0, &[("x", 2)]).unwrap()),
                (int(1), Monomial::from_pairs(&v, 1, &[("x", 1), ("y", 1)]).unwrap()),
                (int(1), Monomial::from_pairs(&v, 2, &[("x", 1), ("y", 1)]).unwrap()),
                (int(1), Monomial::from_pairs(&v, 4, &[("y", 2)]).unwrap()),
            ],
            caps,
        )
        .unwrap();
        assert_eq!(s2, want);
    }

    #[test]
    fn operator_route_agrees() {
        let v = table(&["x", "y"]);
        let ctx = OperatorContext::new("x", "y").unwrap();
        let caps = TruncationSpec::exact(&v);
        let (x, y) = (var(&v, "x"), var(&v, "y"));
        for n in 0..=12 {
            let op = sw_star_op(&v, &ctx, n, &caps).unwrap();
            assert_eq!(op, sw_star(&x, &y, n, &caps).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn star_specializations_and_homogeneity() {
        let v = table(&["x", "y"]);
        let caps = TruncationSpec::exact(&v);
        let (x, y) = (var(&v, "x"), var(&v, "y"));
        let zero = Series::zero(&v, caps.clone());
        let lambda = Series::constant(&v, Rational::new(-3, 2));
        for n in 0..=8 {
            assert_eq!(sw_star(&x, &zero, n, &caps).unwrap(), x.pow(n));
            assert_eq!(
                sw_star(&zero, &y, n, &caps).unwrap(),
                &Series::q_pow(&v, (n * n) as i64) * &y.pow(n)
            );
            let scaled = sw_star(&(&lambda * &x), &(&lambda * &y), n, &caps).unwrap();
            assert_eq!(scaled, &lambda.pow(n) * &sw_star(&x, &y, n, &caps).unwrap());
        }
    }

    #[test]
    fn rogers_szego_examples() {
        let v = table(&["a", "b"]);
        let (a, b) = (var(&v, "a"), var(&v, "b"));
        assert_eq!(rogers_szego(&a, &b, 0).unwrap().to_text(), "1");
        assert_eq!(rogers_szego(&a, &b, 1).unwrap().to_text(), "b + a");
        assert_eq!(rogers_szego(&a, &b, 2).unwrap().to_text(), "b^2 + a*b + a^2 + q*a*b");
        for n in 0..=8 {
            assert_eq!(rogers_szego(&a, &b, n).unwrap(), rogers_szego(&b, &a, n).unwrap());
        }
    }

    #[test]
    fn rogers_szego_generating_function() {
        let v = table(&["a", "b", "x", "z"]);
        let n_max = 6u32;
        let caps = TruncationSpec::new(25, vec![8, 8, 8, n_max as i64]);
        let (a, b) = (var(&v, "a"), var(&v, "b"));
        let zx = &var(&v, "z") * &var(&v, "x");
        let mut lhs = Series::zero(&v, caps.clone());
        for n in 0..=n_max {
            let term = (&rogers_szego(&a, &b, n).unwrap() * &zx.pow(n))
                .truncate(&caps)
                .checked_div(&q_factorial(&v, n))
                .unwrap();
            lhs = lhs.checked_add(&term).unwrap();
        }
        let spec = PochSpec::infinite(vec![&a * &zx, &b * &zx]);
        let rhs = Series::one(&v)
            .truncate(&caps)
            .checked_div(&poch(&spec, &caps).unwrap())
            .unwrap();
        assert_eq!(lhs.equals_mod_caps(&rhs).unwrap(), None);
    }
}
