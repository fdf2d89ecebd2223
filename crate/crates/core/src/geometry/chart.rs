use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{GradedVariable, Parity, Series, Weight};

/// An ordered list of base coordinates. Declaration order fixes the monomial order.
#[derive(Clone, PartialEq, Eq)]
pub struct Chart {
    vars: Arc<Vec<GradedVariable>>,
}

impl Chart {
    /// Build a chart from `(name, parity, weight)` triples, indexed from `first_index`.
    pub fn new(first_index: u32, coords: &[(&str, Parity, i64)]) -> Result<Self> {
        let vars = coords
            .iter()
            .enumerate()
            .map(|(i, (name, p, w))| GradedVariable::new(*name, *p, Weight(*w), 0, first_index + i as u32))
            .collect();
        Chart::from_vars(vars)
    }

    pub fn from_vars(vars: Vec<GradedVariable>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if v.fiber_degree() != 0 {
                return Err(Error::ChartMismatch(format!("`{}` is a fiber variable, not a base coordinate", v)));
            }
            if vars[..i].iter().any(|w| w.name() == v.name()) {
                return Err(Error::ChartMismatch(format!("duplicate coordinate name `{}`", v)));
            }
        }
        Ok(Chart { vars: Arc::new(vars) })
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn get(&self, name: &str) -> Option<&GradedVariable> {
        self.vars.iter().find(|v| v.name() == name)
    }

    pub fn position(&self, v: &GradedVariable) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    /// Largest declaration index used, for building a chart that orders after this one.
    pub fn next_index(&self) -> u32 {
        self.vars.iter().map(|v| v.index() + 1).max().unwrap_or(0)
    }

    /// True if every variable of `s` is a coordinate of this chart.
    pub fn contains_series(&self, s: &Series) -> bool {
        s.variables().iter().all(|v| self.vars.contains(v))
    }

    pub(crate) fn require_series(&self, s: &Series, what: &str) -> Result<()> {
        for v in s.variables() {
            if !self.vars.contains(&v) {
                return Err(Error::ChartMismatch(format!(
                    "{} uses `{}`, which is not a coordinate of the chart",
                    what, v
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vars.iter()).finish()
    }
}
