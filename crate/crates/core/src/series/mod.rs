//! Truncated multivariate power series over the rationals.
//!
//! A [`Series`] is an element of `Q[[x_1..x_m]]((q))` known modulo a monomial
//! ideal. Only `q` may carry negative exponents; the series stores
//! `q^floor * (ordinary series)` with `floor = min(0, q-valuation)`.
//!
//! Coefficients are kept as dense vectors in q under each exponent vector of
//! the other variables. The identities this crate checks are dense in q and
//! sparse in everything else, so this layout keeps the inner product loops
//! tight.
//!
//! Every operation tracks the window on which its result is actually exact.
//! Multiplying by a negative power of q, dividing by a series of positive
//! q-valuation or applying the q-derivative all shrink that window; callers who
//! need a given window compute their inputs on a wider one.

pub mod caps;
pub(crate) mod poly;
mod render;
pub mod vars;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use caps::{TruncationSpec, UNBOUNDED};
pub use render::{monomial_text, CapsJson, MonomialJson, SeriesJson, TermJson};
pub use vars::{VarTable, Q};

use crate::error::{Result, SeriesError};
use crate::rational::Rational;
use caps::cap_add;
use poly::QPoly;

/// An exponent vector: signed q-exponent plus non-negative exponents aligned
/// with the variable table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: i64,
    pub vars: Vec<u32>,
}

impl Monomial {
    pub fn one(vars: &VarTable) -> Self {
        Self {
            q: 0,
            vars: vec![0; vars.arity()],
        }
    }

    pub fn q_pow(vars: &VarTable, q: i64) -> Self {
        Self { q, ..Self::one(vars) }
    }

    /// `q^q * prod name^exp`.
    pub fn from_pairs(vars: &VarTable, q: i64, pairs: &[(&str, u32)]) -> Result<Self> {
        let mut m = Self::q_pow(vars, q);
        for (name, e) in pairs {
            m.vars[vars.index_of(name)?] += e;
        }
        Ok(m)
    }

    pub fn total_var_degree(&self) -> u64 {
        self.vars.iter().map(|&e| e as u64).sum()
    }
}

/// Least discrepancy found by [`Series::equals_mod_caps`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub monomial: Monomial,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub struct Series {
    vars: Arc<VarTable>,
    caps: TruncationSpec,
    floor: i64,
    terms: BTreeMap<Vec<u32>, QPoly>,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        VarTable::same(&self.vars, &other.vars)
            && self.caps == other.caps
            && self.floor == other.floor
            && self.terms == other.terms
    }
}

impl Eq for Series {}

fn len_limit(q_max: i64, base: i64) -> Option<usize> {
    if q_max == UNBOUNDED {
        None
    } else if q_max < base {
        Some(0)
    } else {
        Some((q_max - base + 1) as usize)
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Series {
    /// Normalizes raw coefficient vectors whose index `i` means `q^(base+i)`:
    /// drops everything outside `caps`, trims zeros and re-bases to
    /// `floor = min(0, valuation)`.
    pub(crate) fn from_raw(
        vars: Arc<VarTable>,
        caps: TruncationSpec,
        base: i64,
        raw: BTreeMap<Vec<u32>, QPoly>,
    ) -> Self {
        let limit = len_limit(caps.q_max(), base);
        let mut kept = BTreeMap::new();
        let mut min_idx: Option<usize> = None;
        for (exps, mut p) in raw {
            if !caps.admits_vars(&exps) {
                continue;
            }
            if let Some(l) = limit {
                p.truncate(l);
            }
            poly::trim(&mut p);
            let Some(first) = poly::first_nonzero(&p) else {
                continue;
            };
            min_idx = Some(min_idx.map_or(first, |m| m.min(first)));
            kept.insert(exps, p);
        }
        let floor = match min_idx {
            Some(i) => (base + i as i64).min(0),
            None => 0,
        };
        if floor != base {
            for p in kept.values_mut() {
                if floor > base {
                    p.drain(..(floor - base) as usize);
                } else {
                    let pad = (base - floor) as usize;
                    p.splice(0..0, std::iter::repeat_n(Rational::ZERO, pad));
                }
            }
        }
        Self {
            vars,
            caps,
            floor,
            terms: kept,
        }
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Vec<u32>, QPoly> {
        &self.terms
    }

    /// The zero series known on `caps`.
    pub fn zero(vars: &Arc<VarTable>, caps: TruncationSpec) -> Self {
        Self {
            vars: vars.clone(),
            caps,
            floor: 0,
            terms: BTreeMap::new(),
        }
    }

    /// `r * m`, exact (no truncation).
    pub fn monomial(vars: &Arc<VarTable>, r: Rational, m: &Monomial) -> Self {
        let mut raw = BTreeMap::new();
        raw.insert(m.vars.clone(), vec![r]);
        Self::from_raw(vars.clone(), TruncationSpec::exact(vars), m.q, raw)
    }

    pub fn constant(vars: &Arc<VarTable>, r: Rational) -> Self {
        Self::monomial(vars, r, &Monomial::one(vars))
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, Rational::ONE)
    }

    pub fn q_pow(vars: &Arc<VarTable>, e: i64) -> Self {
        Self::monomial(vars, Rational::ONE, &Monomial::q_pow(vars, e))
    }

    /// The formal variable `name` (or `q`).
    pub fn var(vars: &Arc<VarTable>, name: &str) -> Result<Self> {
        if name == Q {
            return Ok(Self::q_pow(vars, 1));
        }
        let mut m = Monomial::one(vars);
        m.vars[vars.index_of(name)?] = 1;
        Ok(Self::monomial(vars, Rational::ONE, &m))
    }

    /// Builds a series from a term list, summing duplicates and dropping
    /// anything outside `caps`.
    pub fn make_series<I>(vars: &Arc<VarTable>, terms: I, caps: TruncationSpec) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Monomial)>,
    {
        caps.check_arity(vars)?;
        let terms: Vec<_> = terms.into_iter().collect();
        let base = terms.iter().map(|(_, m)| m.q).min().unwrap_or(0).min(0);
        let mut raw: BTreeMap<Vec<u32>, QPoly> = BTreeMap::new();
        for (c, m) in terms {
            if m.vars.len() != vars.arity() {
                return Err(SeriesError::InvalidCaps(format!(
                    "monomial has {} exponents, table has {} variables",
                    m.vars.len(),
                    vars.arity()
                )));
            }
            let i = (m.q - base) as usize;
            let p = raw.entry(m.vars).or_default();
            if p.len() <= i {
                p.resize(i + 1, Rational::ZERO);
            }
            p[i] += &c;
        }
        Ok(Self::from_raw(vars.clone(), caps, base, raw))
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn caps(&self) -> &TruncationSpec {
        &self.caps
    }

    /// Storage offset: `min(0, q-valuation)`.
    pub fn q_floor(&self) -> i64 {
        self.floor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.caps.is_exact()
    }

    pub fn num_terms(&self) -> usize {
        self.terms
            .values()
            .map(|p| p.iter().filter(|c| !c.is_zero()).count())
            .sum()
    }

    /// Smallest q-exponent carrying a nonzero coefficient.
    pub fn q_valuation(&self) -> Option<i64> {
        self.terms
            .values()
            .filter_map(|p| poly::first_nonzero(p))
            .min()
            .map(|i| self.floor + i as i64)
    }

    /// A lower bound on the true q-valuation: the known valuation, or just past
    /// the window when nothing nonzero is known.
    pub(crate) fn val_bound(&self) -> i64 {
        self.q_valuation()
            .unwrap_or_else(|| cap_add(self.caps.q_max(), 1))
    }

    /// Largest exponent of a non-q variable present in the stored terms.
    pub fn degree_in(&self, name: &str) -> Result<Option<u32>> {
        let i = self.vars.index_of(name)?;
        Ok(self.terms.keys().map(|e| e[i]).max())
    }

    pub(crate) fn degree_at(&self, index: usize) -> u32 {
        self.terms.keys().map(|e| e[index]).max().unwrap_or(0)
    }

    /// Smallest total degree over the variables at `indices` among all terms.
    pub(crate) fn min_degree_over(&self, indices: &[usize]) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| indices.iter().map(|&i| e[i] as u64).sum())
            .min()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        if m.q < self.floor {
            return Rational::ZERO;
        }
        self.terms
            .get(&m.vars)
            .and_then(|p| p.get((m.q - self.floor) as usize))
            .cloned()
            .unwrap_or(Rational::ZERO)
    }

    /// Nonzero terms in canonical order: q-exponent, then lexicographic
    /// exponent vector.
    pub fn terms(&self) -> Vec<(Monomial, Rational)> {
        let mut out: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .flat_map(|(exps, p)| {
                p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
                    (
                        Monomial {
                            q: self.floor + i as i64,
                            vars: exps.clone(),
                        },
                        c.clone(),
                    )
                })
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Replaces the window outright. Only for callers that know every
    /// coefficient outside the current window vanishes.
    pub(crate) fn assume_caps(mut self, caps: TruncationSpec) -> Self {
        self.caps = caps;
        self
    }

    /// Restricts to the window `meet(self.caps, caps)`.
    pub fn truncate(&self, caps: &TruncationSpec) -> Self {
        Self::from_raw(
            self.vars.clone(),
            self.caps.meet(caps),
            self.floor,
            self.terms.clone(),
        )
    }

    fn same_table(&self, other: &Self) -> Result<()> {
        if VarTable::same(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(SeriesError::VarTableMismatch)
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        self.same_table(other)?;
        let caps = self.caps.meet(&other.caps);
        let base = self.floor.min(other.floor);
        let mut raw = BTreeMap::new();
        for (src, neg) in [(self, false), (other, negate)] {
            let off = (src.floor - base) as usize;
            for (exps, p) in &src.terms {
                let acc: &mut QPoly = raw.entry(exps.clone()).or_default();
                if acc.len() < off + p.len() {
                    acc.resize(off + p.len(), Rational::ZERO);
                }
                for (i, c) in p.iter().enumerate() {
                    if neg {
                        acc[off + i] -= c;
                    } else {
                        acc[off + i] += c;
                    }
                }
            }
        }
        Ok(Self::from_raw(self.vars.clone(), caps, base, raw))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        if r.is_zero() {
            out.terms.clear();
            out.floor = 0;
            return out;
        }
        for p in out.terms.values_mut() {
            for c in p.iter_mut() {
                if !c.is_zero() {
                    *c = &*c * r;
                }
            }
        }
        out
    }

    /// Product modulo the ideal. The q-window of the result is the largest one
    /// on which the product is determined by the known coefficients.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_table(other)?;
        let mut caps = self.caps.meet(&other.caps);
        let honest = cap_add(self.caps.q_max(), other.val_bound())
            .min(cap_add(other.caps.q_max(), self.val_bound()));
        caps.set_q_max(caps.q_max().min(honest));
        let base = self.floor + other.floor;
        let limit = len_limit(caps.q_max(), base);
        let mut raw: BTreeMap<Vec<u32>, QPoly> = BTreeMap::new();
        if limit != Some(0) {
            for (ea, pa) in &self.terms {
                for (eb, pb) in &other.terms {
                    let e = add_exps(ea, eb);
                    if !caps.admits_vars(&e) {
                        continue;
                    }
                    poly::mul_acc(raw.entry(e).or_default(), pa, pb, limit, false);
                }
            }
        }
        Ok(Self::from_raw(self.vars.clone(), caps, base, raw))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self / other`. The divisor must be a unit: its lowest q-power must occur
    /// with no other variable attached.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_table(other)?;
        let vg = other.q_valuation().ok_or(SeriesError::DivisionByNonUnit)?;
        let g0 = other
            .terms
            .get(&vec![0; self.vars.arity()])
            .ok_or(SeriesError::DivisionByNonUnit)?;
        let shift = (vg - other.floor) as usize;
        if g0.get(shift).is_none_or(Rational::is_zero) {
            return Err(SeriesError::DivisionByNonUnit);
        }

        let mut caps = self.caps.meet(&other.caps);
        let honest = cap_add(self.caps.q_max(), -vg).min(cap_add(
            cap_add(other.caps.q_max(), -2 * vg),
            self.val_bound(),
        ));
        caps.set_q_max(caps.q_max().min(honest));

        // divisor as a valuation-0 series
        let g: Vec<(&Vec<u32>, &[Rational])> = other
            .terms
            .iter()
            .map(|(e, p)| (e, if p.len() > shift { &p[shift..] } else { &[][..] }))
            .collect();
        for (e, _) in &g {
            for (i, d) in e.iter().enumerate() {
                if *d > 0 && caps.var_cap(i) == UNBOUNDED {
                    return Err(SeriesError::NonTerminatingSeries(format!(
                        "inverse is not polynomial in `{}`; give it a degree cap",
                        self.vars.var_names()[i]
                    )));
                }
            }
        }
        let g0 = &g0[shift..];
        let base = self.floor - vg;
        let limit = len_limit(caps.q_max(), base);
        let inv_len = match limit {
            Some(l) => l,
            None => {
                if g0.len() > 1 {
                    return Err(SeriesError::NonTerminatingSeries(
                        "inverse of a non-constant q-polynomial needs a finite q cap".into(),
                    ));
                }
                1
            }
        };
        let inv0 = poly::inverse(g0, inv_len);

        let mut acc: BTreeMap<Vec<u32>, QPoly> = self
            .terms
            .iter()
            .filter(|(e, _)| caps.admits_vars(e))
            .map(|(e, p)| (e.clone(), p.clone()))
            .collect();
        let mut out = BTreeMap::new();
        while let Some((e, p)) = acc.pop_first() {
            let h = poly::mul(&p, &inv0, limit);
            if poly::is_zero(&h) {
                continue;
            }
            for (eg, pg) in &g {
                if eg.iter().all(|&d| d == 0) || pg.is_empty() {
                    continue;
                }
                let e2 = add_exps(&e, eg);
                if !caps.admits_vars(&e2) {
                    continue;
                }
                poly::mul_acc(acc.entry(e2).or_default(), &h, pg, limit, true);
            }
            out.insert(e, h);
        }
        Ok(Self::from_raw(self.vars.clone(), caps, base, out))
    }

    /// `self / den` on the window `caps`. An exact divisor is expanded far
    /// enough that a Laurent numerator does not eat into the window.
    pub fn div_within(&self, den: &Series, caps: &TruncationSpec) -> Result<Self> {
        let vg = den.q_valuation().ok_or(SeriesError::DivisionByNonUnit)?;
        let target = caps.q_max();
        let vf = self.val_bound();
        let mut den_caps = caps.clone();
        if target != UNBOUNDED && vf != UNBOUNDED {
            den_caps.set_q_max(target.max(target + 2 * vg - vf));
        }
        let mut num_caps = caps.clone();
        if target != UNBOUNDED {
            num_caps.set_q_max(target.max(target + vg));
        }
        let num = self.truncate(&num_caps);
        Ok(num.checked_div(&den.truncate(&den_caps))?.truncate(caps))
    }

    /// Replaces `v` by `r * m` throughout. `m` may carry a negative q-power;
    /// the known window shrinks accordingly. Eliminating a truncated variable
    /// entirely is refused because the lost high-degree terms would leak into
    /// the result.
    pub fn substitute_monomial(&self, v: &str, r: &Rational, m: &Monomial) -> Result<Self> {
        let vi = self.vars.index_of(v)?;
        if m.vars.len() != self.vars.arity() {
            return Err(SeriesError::InvalidCaps("monomial arity mismatch".into()));
        }
        let cap_v = self.caps.var_cap(vi);
        let mut caps = self.caps.clone();

        if m.q < 0 && self.caps.q_max() != UNBOUNDED {
            if cap_v == UNBOUNDED {
                return Err(SeriesError::UnsoundSubstitution(v.to_string()));
            }
            caps.set_q_max(self.caps.q_max() + cap_v * m.q);
        }
        if cap_v != UNBOUNDED && m.vars[vi] == 0 {
            let mut guarded = false;
            for (u, &mu) in m.vars.iter().enumerate() {
                if mu > 0 {
                    guarded = true;
                    let bound = (cap_v + 1) * mu as i64 - 1;
                    caps.set_var_cap(u, caps.var_cap(u).min(bound));
                }
            }
            if !guarded {
                return Err(SeriesError::UnsoundSubstitution(v.to_string()));
            }
        }

        let shifts: Vec<i64> = self.terms.keys().map(|e| e[vi] as i64 * m.q).collect();
        let min_shift = shifts.iter().copied().min().unwrap_or(0).min(0);
        let base = self.floor + min_shift;
        let mut raw: BTreeMap<Vec<u32>, QPoly> = BTreeMap::new();
        for ((exps, p), s) in self.terms.iter().zip(shifts) {
            let e = exps[vi];
            let mut ne = exps.clone();
            ne[vi] = 0;
            for (i, mi) in m.vars.iter().enumerate() {
                ne[i] += e * mi;
            }
            let factor = r.pow(e as i32);
            if factor.is_zero() {
                continue;
            }
            let off = (s - min_shift) as usize;
            let acc = raw.entry(ne).or_default();
            if acc.len() < off + p.len() {
                acc.resize(off + p.len(), Rational::ZERO);
            }
            for (i, c) in p.iter().enumerate() {
                if !c.is_zero() {
                    acc[off + i] += &(c * &factor);
                }
            }
        }
        Ok(Self::from_raw(self.vars.clone(), caps, base, raw))
    }

    /// Compares on the common window `meet(self.caps, other.caps)`. Returns the
    /// least discrepant monomial (q-exponent first, then lexicographic) when
    /// the series differ there.
    pub fn equals_mod_caps(&self, other: &Self) -> Result<Option<Witness>> {
        self.same_table(other)?;
        let window = self.caps.meet(&other.caps);
        let a = self.truncate(&window);
        let b = other.truncate(&window);
        let diff = a.checked_sub(&b)?;
        let least = diff
            .terms
            .iter()
            .filter_map(|(e, p)| {
                poly::first_nonzero(p).map(|i| Monomial {
                    q: diff.floor + i as i64,
                    vars: e.clone(),
                })
            })
            .min();
        Ok(least.map(|monomial| Witness {
            lhs: a.coeff(&monomial),
            rhs: b.coeff(&monomial),
            monomial,
        }))
    }
}

impl Add for &Series {
    type Output = Series;
    /// Panics if the variable tables differ.
    fn add(self, rhs: &Series) -> Series {
        self.checked_add(rhs).expect("series add")
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.checked_sub(rhs).expect("series sub")
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.checked_mul(rhs).expect("series mul")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rational::ONE)
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}
