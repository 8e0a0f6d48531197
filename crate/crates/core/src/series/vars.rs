use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SeriesError};

/// Name of the distinguished Laurent variable.
pub const Q: &str = "q";

/// Ordered table of formal variables. `q` always sits at index 0; the other
/// variables follow in declaration order, and exponent vectors in
/// [`Monomial`](super::Monomial) are aligned with them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    /// Builds a table over `q` plus `names`. Duplicates and `q` itself are
    /// rejected.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut all = vec![Q.to_string()];
        for n in names {
            let n = n.into();
            if n == Q {
                return Err(SeriesError::ReservedVariable(n));
            }
            if n.is_empty() || all.contains(&n) {
                return Err(SeriesError::InvalidCaps(format!(
                    "duplicate or empty variable name `{n}`"
                )));
            }
            all.push(n);
        }
        Ok(Arc::new(Self { names: all }))
    }

    /// All names, `q` first.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Names of the non-q variables, in exponent-vector order.
    pub fn var_names(&self) -> &[String] {
        &self.names[1..]
    }

    /// Number of non-q variables.
    pub fn arity(&self) -> usize {
        self.names.len() - 1
    }

    /// Position of a non-q variable inside exponent vectors.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        if name == Q {
            return Err(SeriesError::ReservedVariable(name.to_string()));
        }
        self.names[1..]
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SeriesError::VariableNotFound(name.to_string()))
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a.names == b.names
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarTable{:?}", self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_is_reserved() {
        assert!(matches!(
            VarTable::new(["x", "q"]),
            Err(SeriesError::ReservedVariable(_))
        ));
        let v = VarTable::new(["x", "y"]).unwrap();
        assert_eq!(v.names()[0], "q");
        assert_eq!(v.index_of("y").unwrap(), 1);
        assert!(v.index_of("q").is_err());
        assert!(matches!(
            v.index_of("z"),
            Err(SeriesError::VariableNotFound(_))
        ));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(VarTable::new(["x", "x"]).is_err());
    }
}
