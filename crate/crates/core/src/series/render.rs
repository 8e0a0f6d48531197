//! Canonical renderings. Equal series render to identical strings.

use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{Monomial, Series, TruncationSpec, VarTable, Q};

/// `q^a*x^b*...` with unit exponents omitted; `1` for the empty monomial.
pub fn monomial_text(vars: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    if m.q != 0 {
        parts.push(if m.q == 1 {
            Q.to_string()
        } else {
            format!("{Q}^{}", m.q)
        });
    }
    for (name, &e) in vars.var_names().iter().zip(&m.vars) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl Series {
    /// Terms sorted by (q-exponent, lexicographic exponents), written as
    /// `p/r*q^a*x^b` and joined with ` + ` / ` - `. The zero series is `0`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (m, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = monomial_text(&self.vars, &m);
            if mono == "1" {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json_value(&self) -> SeriesJson {
        SeriesJson {
            q_floor: self.q_floor(),
            caps: CapsJson {
                vars: self.vars.clone(),
                caps: self.caps.clone(),
            },
            terms: self
                .terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    coeff: c.to_fraction_string(),
                    mono: MonomialJson {
                        vars: self.vars.clone(),
                        mono: m,
                    },
                })
                .collect(),
        }
    }

    /// `{"qFloor":..,"caps":{..},"terms":[{"coeff":"p/r","mono":{"q":a,..}}]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series json")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesJson {
    #[serde(rename = "qFloor")]
    pub q_floor: i64,
    pub caps: CapsJson,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub mono: MonomialJson,
}

/// Serializes as `{"q": a, "x": b, ...}`, listing `q` always and other
/// variables only when their exponent is nonzero.
#[derive(Debug, Clone)]
pub struct MonomialJson {
    pub vars: Arc<VarTable>,
    pub mono: Monomial,
}

impl Serialize for MonomialJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry(Q, &self.mono.q)?;
        for (name, e) in self.vars.var_names().iter().zip(&self.mono.vars) {
            if *e != 0 {
                map.serialize_entry(name, e)?;
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapsJson {
    pub vars: Arc<VarTable>,
    pub caps: TruncationSpec,
}

impl Serialize for CapsJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.caps.serialize_with(&self.vars, s)
    }
}
