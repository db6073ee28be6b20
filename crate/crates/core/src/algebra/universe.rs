use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    /// Cohomological (real) degree. Even for every space in this crate.
    pub degree: i32,
}

/// Ordered list of variables with weights. The declaration order is the
/// lexicographic tie-break of the term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    vars: Vec<Variable>,
}

impl Universe {
    pub fn new<S, I>(vars: I) -> Result<Arc<Self>, AlgebraError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, i32)>,
    {
        let mut out: Vec<Variable> = Vec::new();
        for (name, degree) in vars {
            let name = name.into();
            if !valid_name(&name) {
                return Err(AlgebraError::InvalidName(name));
            }
            if out.iter().any(|v| v.name == name) {
                return Err(AlgebraError::DuplicateVariable(name));
            }
            out.push(Variable { name, degree });
        }
        Ok(Arc::new(Universe { vars: out }))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.vars[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn weighted_degree(&self, exps: &[u32]) -> i64 {
        exps.iter()
            .zip(&self.vars)
            .map(|(&e, v)| e as i64 * v.degree as i64)
            .sum()
    }

    /// New universe with some variables appended (names must be fresh).
    pub fn extended<S, I>(&self, extra: I) -> Result<Arc<Self>, AlgebraError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, i32)>,
    {
        let mut all: Vec<(String, i32)> =
            self.vars.iter().map(|v| (v.name.clone(), v.degree)).collect();
        all.extend(extra.into_iter().map(|(n, d)| (n.into(), d)));
        Universe::new(all)
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", v.name, v.degree)?;
        }
        write!(f, "]")
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
