use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{Bigrading, GradedVariable, Parity, Rational, Series, Weight};

use super::chart::Chart;

/// A homogeneous vector field `X = X^a d/dx^a`, components written to the left of the
/// derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    coords: Arc<Vec<GradedVariable>>,
    components: Vec<Series>,
    grading: Bigrading,
}

impl VectorField {
    /// Infers the field's bigrading from its nonzero components.
    pub fn new(coords: &[GradedVariable], components: Vec<Series>) -> Result<Self> {
        if coords.len() != components.len() {
            return Err(Error::ChartMismatch(format!(
                "{} components for {} coordinates",
                components.len(),
                coords.len()
            )));
        }
        let mut grading = None;
        for (v, c) in coords.iter().zip(&components) {
            if c.is_zero() {
                continue;
            }
            let g = c.bigrade().map_err(|e| Error::GradingMismatch(format!("component along `{}`: {}", v, e)))?;
            grading = Some(g - v.bigrading());
            break;
        }
        let grading = grading.ok_or_else(|| {
            Error::GradingMismatch("the zero field has no intrinsic bigrading; use VectorField::zero".into())
        })?;
        VectorField::with_grading(coords, components, grading)
    }

    pub fn with_grading(coords: &[GradedVariable], components: Vec<Series>, grading: Bigrading) -> Result<Self> {
        if coords.len() != components.len() {
            return Err(Error::ChartMismatch(format!(
                "{} components for {} coordinates",
                components.len(),
                coords.len()
            )));
        }
        for (v, c) in coords.iter().zip(&components) {
            c.expect_bigrade(v.bigrading() + grading, &format!("component along `{}`", v))?;
            for w in c.variables() {
                if !coords.contains(&w) {
                    return Err(Error::ChartMismatch(format!("component along `{}` uses foreign variable `{}`", v, w)));
                }
            }
        }
        Ok(VectorField { coords: Arc::new(coords.to_vec()), components, grading })
    }

    pub fn on_chart(chart: &Chart, components: Vec<Series>) -> Result<Self> {
        VectorField::new(chart.vars(), components)
    }

    pub fn zero(coords: &[GradedVariable], grading: Bigrading) -> Self {
        VectorField { coords: Arc::new(coords.to_vec()), components: vec![Series::zero(); coords.len()], grading }
    }

    /// The coordinate derivation `d/dv` scaled by `c`.
    pub fn partial(coords: &[GradedVariable], v: &GradedVariable, c: Rational) -> Result<Self> {
        let pos = coords
            .iter()
            .position(|w| w == v)
            .ok_or_else(|| Error::ChartMismatch(format!("`{}` is not a coordinate", v)))?;
        let mut comps = vec![Series::zero(); coords.len()];
        comps[pos] = Series::constant(c);
        let grading = Bigrading::ZERO - v.bigrading();
        Ok(VectorField { coords: Arc::new(coords.to_vec()), components: comps, grading })
    }

    pub fn coords(&self) -> &[GradedVariable] {
        &self.coords
    }

    pub fn components(&self) -> &[Series] {
        &self.components
    }

    pub fn component(&self, v: &GradedVariable) -> Option<&Series> {
        self.coords.iter().position(|w| w == v).map(|i| &self.components[i])
    }

    pub fn bigrading(&self) -> Bigrading {
        self.grading
    }

    pub fn parity(&self) -> Parity {
        self.grading.parity
    }

    pub fn weight(&self) -> Weight {
        self.grading.weight
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Series::is_zero)
    }

    /// `X(f) = sum_a X^a * df/dx^a`.
    pub fn apply(&self, f: &Series) -> Series {
        let mut out = Series::zero();
        for (v, c) in self.coords.iter().zip(&self.components) {
            if c.is_zero() {
                continue;
            }
            let d = f.left_derivative(v);
            if !d.is_zero() {
                out = out + c * &d;
            }
        }
        out
    }

    /// Components with every coordinate set to zero.
    pub fn constant_part(&self) -> Vec<Rational> {
        self.components.iter().map(Series::constant_term).collect()
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            coords: self.coords.clone(),
            components: self.components.iter().map(|s| s.scale(c)).collect(),
            grading: self.grading,
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.same_chart(other)?;
        if self.grading != other.grading && !self.is_zero() && !other.is_zero() {
            return Err(Error::GradingMismatch(format!(
                "cannot add fields of bigrading {} and {}",
                self.grading, other.grading
            )));
        }
        let grading = if self.is_zero() { other.grading } else { self.grading };
        Ok(VectorField {
            coords: self.coords.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
            grading,
        })
    }

    fn same_chart(&self, other: &VectorField) -> Result<()> {
        if self.coords != other.coords {
            return Err(Error::ChartMismatch("vector fields live on different charts".into()));
        }
        Ok(())
    }

    /// Supercommutator `[X,Y] = X∘Y - (-1)^{X̃Ỹ} Y∘X`.
    pub fn commutator(&self, other: &VectorField) -> Result<VectorField> {
        self.same_chart(other)?;
        let sign = if self.parity().times(other.parity()).is_odd() { Rational::one() } else { -Rational::one() };
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(xa, ya)| {
                let a = self.apply(ya);
                let b = other.apply(xa);
                a + b.scale(&sign)
            })
            .collect();
        Ok(VectorField { coords: self.coords.clone(), components, grading: self.grading + other.grading })
    }

    /// `[Q,Q]`, the obstruction to being homological.
    pub fn self_commutator(&self) -> VectorField {
        self.commutator(self).expect("same chart")
    }

    /// Odd and squares to zero.
    pub fn is_homological(&self) -> bool {
        self.parity().is_odd() && self.self_commutator().is_zero()
    }

    /// Keep only the terms of polynomial degree at most `degree` in every component.
    pub fn truncate_polynomial_degree(&self, degree: u32) -> VectorField {
        let components = self
            .components
            .iter()
            .map(|s| {
                let mut out = Series::zero();
                for (m, c) in s.terms() {
                    let d: u32 = m.factors().iter().map(|(_, e)| *e).sum();
                    if d <= degree {
                        out.add_term(c.clone(), m.clone());
                    }
                }
                out
            })
            .collect();
        VectorField { coords: self.coords.clone(), components, grading: self.grading }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in self.coords.iter().zip(&self.components) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})*d/d{}", c, v)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::rat;

    fn chart_x_xi() -> Chart {
        Chart::new(0, &[("x", Parity::EVEN, 0), ("xi", Parity::ODD, 0)]).unwrap()
    }

    #[test]
    fn classical_commutator() {
        let c = Chart::new(0, &[("x", Parity::EVEN, 0)]).unwrap();
        let x = c.vars()[0].clone();
        let dx = VectorField::on_chart(&c, vec![Series::one()]).unwrap();
        let xdx = VectorField::on_chart(&c, vec![Series::var(&x)]).unwrap();
        assert_eq!(dx.commutator(&xdx).unwrap(), dx);
    }

    #[test]
    fn odd_field_squares_to_zero() {
        let c = chart_x_xi();
        let xi = c.vars()[1].clone();
        let x_field = VectorField::on_chart(&c, vec![Series::var(&xi), Series::zero()]).unwrap();
        assert!(x_field.parity().is_odd());
        assert!(x_field.self_commutator().is_zero());
        assert!(x_field.is_homological());
    }

    #[test]
    fn solvable_lie_algebra_field_is_homological() {
        let c = Chart::new(0, &[("xi1", Parity::ODD, 1), ("xi2", Parity::ODD, 0)]).unwrap();
        let (a, b) = (c.vars()[0].clone(), c.vars()[1].clone());
        let q = VectorField::on_chart(&c, vec![Series::zero(), Series::var(&a) * Series::var(&b)]).unwrap();
        assert!(q.is_homological());
    }

    #[test]
    fn residual_of_non_homological_field() {
        let c = chart_x_xi();
        let (x, xi) = (c.vars()[0].clone(), c.vars()[1].clone());
        // Q = xi d/dx + x d/dxi
        let q = VectorField::on_chart(&c, vec![Series::var(&xi), Series::var(&x)]).unwrap();
        let r = q.self_commutator();
        assert_eq!(r.components()[0], Series::var(&x).scale(&rat(2)));
        assert_eq!(r.components()[1], Series::var(&xi).scale(&rat(2)));
        assert!(!q.is_homological());
    }

    #[test]
    fn even_field_is_never_homological() {
        let c = chart_x_xi();
        let x = c.vars()[0].clone();
        let f = VectorField::on_chart(&c, vec![Series::var(&x), Series::zero()]).unwrap();
        assert!(!f.is_homological());
    }

    #[test]
    fn inhomogeneous_components_rejected() {
        let c = chart_x_xi();
        let (x, xi) = (c.vars()[0].clone(), c.vars()[1].clone());
        let _ = xi;
        assert!(VectorField::on_chart(&c, vec![Series::var(&x), Series::one()]).is_err());
    }

    #[test]
    fn chart_mismatch() {
        let a = chart_x_xi();
        let b = Chart::new(5, &[("y", Parity::EVEN, 0)]).unwrap();
        let fa = VectorField::on_chart(&a, vec![Series::one(), Series::zero()]).unwrap();
        let fb = VectorField::on_chart(&b, vec![Series::one()]).unwrap();
        assert!(matches!(fa.commutator(&fb), Err(Error::ChartMismatch(_))));
    }
}
