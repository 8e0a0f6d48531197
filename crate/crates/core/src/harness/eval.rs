//! Single polynomials and series by name, for the command line and the demo.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Result;
use crate::qcalculus::{garrett, rq_at_power, GarrettKind};
use crate::series::{Series, TruncationSpec, VarTable};
use crate::swpoly::{rogers_szego, sw_classic, sw_star};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalTarget {
    /// `S_n(x;q)`, truncated in `q`
    Sw,
    /// `S*_n(x,y;q)`, exact
    SwStar,
    /// `r_n(a,b)`, exact
    Rs,
    /// `sum q^(m^2+nm)/(q;q)_m`, truncated in `q`
    Rq,
    GarrettA,
    GarrettB,
}

impl EvalTarget {
    pub const ALL: [EvalTarget; 6] = [
        EvalTarget::Sw,
        EvalTarget::SwStar,
        EvalTarget::Rs,
        EvalTarget::Rq,
        EvalTarget::GarrettA,
        EvalTarget::GarrettB,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            EvalTarget::Sw => "sw",
            EvalTarget::SwStar => "sw-star",
            EvalTarget::Rs => "rs",
            EvalTarget::Rq => "rq",
            EvalTarget::GarrettA => "garrett-a",
            EvalTarget::GarrettB => "garrett-b",
        }
    }

    /// Whether `q_max` affects the result.
    pub fn is_truncated(self) -> bool {
        matches!(self, EvalTarget::Sw | EvalTarget::Rq)
    }
}

impl fmt::Display for EvalTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EvalTarget {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        EvalTarget::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| format!("unknown target `{s}` (sw|sw-star|rs|rq|garrett-a|garrett-b)"))
    }
}

fn vars(names: &[&str]) -> Arc<VarTable> {
    VarTable::new(names.iter().copied()).expect("distinct names")
}

pub fn eval(target: EvalTarget, n: u32, q_max: i64) -> Result<Series> {
    match target {
        EvalTarget::Sw => {
            let v = vars(&["x"]);
            sw_classic(&v, "x", n, &TruncationSpec::q_only(&v, q_max))
        }
        EvalTarget::SwStar => {
            let v = vars(&["x", "y"]);
            sw_star(&Series::var(&v, "x")?, &Series::var(&v, "y")?, n, &TruncationSpec::exact(&v))
        }
        EvalTarget::Rs => {
            let v = vars(&["a", "b"]);
            rogers_szego(&Series::var(&v, "a")?, &Series::var(&v, "b")?, n)
        }
        EvalTarget::Rq => {
            let v = vars(&[]);
            rq_at_power(&v, n, &TruncationSpec::q_only(&v, q_max))
        }
        EvalTarget::GarrettA => Ok(garrett(&vars(&[]), GarrettKind::A, n)),
        EvalTarget::GarrettB => Ok(garrett(&vars(&[]), GarrettKind::B, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_round_trip() {
        for t in EvalTarget::ALL {
            assert_eq!(t.tag().parse::<EvalTarget>(), Ok(t));
        }
        assert!("nope".parse::<EvalTarget>().is_err());
    }

    #[test]
    fn small_values() {
        assert_eq!(eval(EvalTarget::Rs, 1, 0).unwrap().to_text(), "b + a");
        assert_eq!(eval(EvalTarget::GarrettA, 5, 0).unwrap().to_text(), "1 + q^2 + q^3");
        assert_eq!(eval(EvalTarget::Rq, 0, 4).unwrap().to_text(), "1 + q + q^2 + q^3 + 2*q^4");
    }
}
