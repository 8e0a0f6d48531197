//! Dense coefficient vectors in q. Index `i` holds the coefficient of
//! `q^(base + i)` for whatever base the owning series uses.

use crate::rational::Rational;

pub(crate) type QPoly = Vec<Rational>;

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

pub(crate) fn is_zero(p: &[Rational]) -> bool {
    p.iter().all(Rational::is_zero)
}

pub(crate) fn first_nonzero(p: &[Rational]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

/// `acc += sign * a * b`, dropping indices `>= limit`.
pub(crate) fn mul_acc(acc: &mut QPoly, a: &[Rational], b: &[Rational], limit: Option<usize>, negate: bool) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let full = a.len() + b.len() - 1;
    let len = limit.map_or(full, |l| l.min(full));
    if acc.len() < len {
        acc.resize(len, Rational::ZERO);
    }
    for (i, x) in a.iter().enumerate() {
        if i >= len {
            break;
        }
        if x.is_zero() {
            continue;
        }
        let jmax = b.len().min(len - i);
        for (j, y) in b[..jmax].iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let t = x * y;
            if negate {
                acc[i + j] -= &t;
            } else {
                acc[i + j] += &t;
            }
        }
    }
}

pub(crate) fn mul(a: &[Rational], b: &[Rational], limit: Option<usize>) -> QPoly {
    let mut out = Vec::new();
    mul_acc(&mut out, a, b, limit, false);
    out
}

/// Power-series inverse of `p` (with `p[0] != 0`) to `len` coefficients.
pub(crate) fn inverse(p: &[Rational], len: usize) -> QPoly {
    debug_assert!(!p[0].is_zero());
    let c0 = p[0].recip();
    let mut inv: QPoly = Vec::with_capacity(len);
    if len == 0 {
        return inv;
    }
    inv.push(c0.clone());
    for n in 1..len {
        let mut s = Rational::ZERO;
        for k in 1..=n.min(p.len() - 1) {
            if p[k].is_zero() {
                continue;
            }
            s += &(&p[k] * &inv[n - k]);
        }
        inv.push(-(&s * &c0));
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> QPoly {
        v.iter().map(|&n| Rational::from_integer(n)).collect()
    }

    #[test]
    fn inverse_of_one_minus_q() {
        assert_eq!(inverse(&ints(&[1, -1]), 4), ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn truncated_product() {
        let p = mul(&ints(&[1, 1]), &ints(&[1, 2, 1]), Some(3));
        assert_eq!(p, ints(&[1, 3, 3]));
    }
}
