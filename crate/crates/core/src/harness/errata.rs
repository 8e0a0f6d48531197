//! Forms that differ from the registry entries and are expected to fail. Each
//! entry shares its id suffix with the registry entry it shadows.

use super::env::Env;
use super::registry::*;
use super::{GarrettConvention, IdentitySpec};
use crate::error::Result;
use crate::qcalculus::phi;
use crate::qoperators::{dilate, dq_pow};
use crate::series::Series;

fn eq_as_phi_with_negated_argument(e: &Env) -> Result<Series> {
    // 1phi0(0; -; q, -z)
    let z = e.p("z")?;
    phi(&[e.zero()], &[], &-&z, &e.caps)
}

fn garrett_rhs_printed(e: &Env) -> Result<Series> {
    let mut printed = e.clone();
    printed.convention = GarrettConvention::Printed;
    garrett_rhs(&printed)
}

/// `sum_k q^(k(k-n)) [n k] D^k{f} (D^(n-k) g)(q^k x)`
fn leibniz_dilate_after(e: &Env) -> Result<Series> {
    let a = e.p("a")?;
    let b = e.p("b")?;
    let x = e.p("x")?;
    let f = e.pinf(&[&a * &x])?;
    let g = e.inv(&e.pinf(&[&b * &x])?)?;
    e.sweep("n", |n| {
        let mut acc = e.zero().truncate(&e.caps);
        for k in 0..=n {
            let kk = k as i64;
            let coeff = &crate::qcalculus::qbinom(&e.vars, n, kk) * &e.q(kk * (kk - n as i64));
            let right = dilate(&dq_pow(&g, "x", n - k)?, "x", kk)?;
            let term = coeff.checked_mul(&dq_pow(&f, "x", k)?)?.checked_mul(&right)?;
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    })
}

/// Printed variants, each expected to fail.
pub fn errata() -> Vec<IdentitySpec> {
    use IdentitySpec as S;
    vec![
        S::new(
            "E-RQ-DIFFEQ",
            "R(z) - R(qz) = (1-q) z R(q^2 z)",
            &["z"],
            diffeq_lhs,
            diffeq_rhs_printed,
        ),
        S::new("E-EQ-PHI", "1phi0(0; -; q, -z) = 1/(z;q)_inf", &["z"], eq_as_phi_with_negated_argument, eq_rhs),
        S::new(
            "E-GARRETT-PRINTED",
            "sum q^(n^2+kn)/(q;q)_n = q^-binom(k,2) (a_k R(1) - b_k R(q)) without a sign",
            &["k"],
            garrett_lhs,
            garrett_rhs_printed,
        )
        .tags(&[("k", 6)]),
        S::new(
            "E-DQ-7",
            "D^n (ax,bx;q)_inf = q^binom(n,2) (ax,bq^n x;q)_inf sum_k [n k] q^(k(k-n)) a^k b^(n-k)/(ax;q)_k",
            &["a", "b", "x", "n"],
            dq7_lhs,
            dq7_rhs_printed,
        )
        .tags(&[("n", 4)]),
        S::new(
            "E-LEIBNIZ-DILATE-AFTER",
            "D^n{f g} = sum_k q^(k(k-n)) [n k] D^k{f} (D^(n-k) g)(q^k x)",
            &["a", "b", "x", "n"],
            leibniz_lhs,
            leibniz_dilate_after,
        )
        .tags(&[("n", 4)]),
        S::new(
            "E-T4-SRIAGA",
            "sum S*_n(x,y) (a;q)_n/(q;q)_n z^n = (azx;q)_inf/(zx;q)_inf 1phi2(a; azx, 0; q, qy)",
            &["a", "x", "y", "z"],
            sriaga_lhs,
            sriaga_rhs_printed,
        )
        .expansion("z")
        .caps(&[("a", 6), ("x", 6), ("y", 6)]),
        S::new(
            "E-T4-2PROD-BY1",
            "by = 1: weights q^(-i(3i-2)/2), not an integer power of q for odd i",
            &["a", "b", "x", "y"],
            two_prod_lhs,
            two_prod_by1_rhs_printed,
        )
        .random(&["y"])
        .constrained(b_is_inv_y, "b = 1/y")
        .garrett(),
        S::new(
            "E-T4-RSGF",
            "sum S*_n(x,y) r_n(a,b) z^n/(q;q)_n = 1/(azx,bzx;q)_inf sum_i q^(i^2) (bzx;q)_i/(q;q)_i (ay)^i R(bq^(2i) y)",
            &["a", "b", "x", "y", "z"],
            rsgf_lhs,
            rsgf_rhs_printed,
        )
        .expansion("z")
        .caps(&[("a", 4), ("b", 4), ("x", 4), ("y", 4)]),
        S::new(
            "E-T5-OPPROD",
            "R(yD){(ax,bx;q)_inf} = (ax,bx;q)_inf sum_k q^(3binom(k,2)) (qay)^k/(...) 0phi2(-; bq^k x, 0; q, -q^(2k+1) by)",
            &["a", "b", "x", "y"],
            opprod_lhs,
            opprod_rhs_printed,
        )
        .random(&["a", "b"]),
        S::new(
            "E-T5-ALTMEHLER",
            "sum (-1)^n q^binom(n,2) S*_n(x,y) S*_n(a,bq^-n) z^n/(q;q)_n = (azx,bzx;q)_inf sum_k q^(3binom(k,2)) (qay)^k/(...) 0phi2(-; bq^k zx, 0; q, -q^(2k+1) by)",
            &["a", "b", "x", "y", "z"],
            altmehler_lhs,
            altmehler_rhs_printed,
        )
        .expansion("z")
        .random(&["a", "b"]),
        S::new(
            "E-T5-ALTMEHLER-SWAPPED",
            "sum (-1)^n q^binom(n,2) S*_n(a,b) S*_n(x,yq^-n) z^n/(q;q)_n against the verified right-hand side",
            &["a", "b", "x", "y", "z"],
            altmehler_lhs_swapped,
            altmehler_rhs,
        )
        .expansion("z")
        .random(&["a", "b"]),
        S::new(
            "E-T6-ROGERS-ALT",
            "sum_(n,m) (-1)^n q^binom(n,2) S*_(n+m)(x,y) t^n s^m/((q;q)_n (q;q)_m) = (tx;q)_inf/(sx;q)_inf 1phi2(t/s; tx, 0; q, qy)",
            &["s", "t", "x", "y"],
            rogers_alt_lhs,
            rogers_alt_rhs_printed,
        )
        .random(&["t", "s"]),
    ]
}
