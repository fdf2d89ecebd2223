use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{Bigrading, GradedVariable, Parity, Series, Weight};

use super::chart::Chart;

/// Which bundle: `T*M[s]` (momenta keep the base parity) or `ΠT*M[s]` (antimomenta flip it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberKind {
    Even,
    Odd,
}

impl FiberKind {
    /// Parity shift of the fiber relative to the base, and of the canonical bracket.
    pub fn kappa(self) -> Parity {
        match self {
            FiberKind::Even => Parity::EVEN,
            FiberKind::Odd => Parity::ODD,
        }
    }
}

/// A base chart together with conjugate fiber coordinates of shifted weight `-w^a + s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotangentChart {
    base: Chart,
    fiber: Vec<GradedVariable>,
    shift: Weight,
    kind: FiberKind,
    all: Vec<GradedVariable>,
}

fn fiber_name(kind: FiberKind, base: &str) -> String {
    match kind {
        FiberKind::Even => format!("p_{}", base),
        FiberKind::Odd => format!("xs_{}", base),
    }
}

fn build(base: &Chart, s: Weight, kind: FiberKind) -> CotangentChart {
    let fiber: Vec<GradedVariable> = base
        .vars()
        .iter()
        .map(|x| {
            GradedVariable::new(fiber_name(kind, x.name()), x.parity() + kind.kappa(), s - x.weight(), 1, x.index())
        })
        .collect();
    let all = base.vars().iter().cloned().chain(fiber.iter().cloned()).collect();
    CotangentChart { base: base.clone(), fiber, shift: s, kind, all }
}

/// `T*M[s]`: momenta `p_<x>` with the base parity and weight `-w + s`.
pub fn shifted_cotangent(base: &Chart, s: Weight) -> CotangentChart {
    build(base, s, FiberKind::Even)
}

/// `ΠT*M[s]`: antimomenta `xs_<x>` with flipped parity and weight `-w + s`.
pub fn shifted_anticotangent(base: &Chart, s: Weight) -> CotangentChart {
    build(base, s, FiberKind::Odd)
}

impl CotangentChart {
    pub fn new(base: &Chart, s: Weight, kind: FiberKind) -> Self {
        build(base, s, kind)
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn fiber(&self) -> &[GradedVariable] {
        &self.fiber
    }

    pub fn shift(&self) -> Weight {
        self.shift
    }

    pub fn kind(&self) -> FiberKind {
        self.kind
    }

    /// Base coordinates followed by fiber coordinates.
    pub fn vars(&self) -> &[GradedVariable] {
        &self.all
    }

    pub fn get(&self, name: &str) -> Option<&GradedVariable> {
        self.all.iter().find(|v| v.name() == name)
    }

    /// The fiber variable conjugate to base coordinate number `a`.
    pub fn conjugate(&self, a: usize) -> &GradedVariable {
        &self.fiber[a]
    }

    pub(crate) fn require_series(&self, s: &Series, what: &str) -> Result<()> {
        for v in s.variables() {
            if !self.all.contains(&v) {
                return Err(Error::ChartMismatch(format!(
                    "{} uses `{}`, which is not a coordinate of the bundle",
                    what, v
                )));
            }
        }
        Ok(())
    }

    /// Parity shift `κ` of the bracket: 0 for the even bracket, 1 for the odd one.
    pub fn bracket_parity(&self) -> Parity {
        self.kind.kappa()
    }

    /// Bigrading of the bracket itself: weight `-s`, parity `κ`.
    pub fn bracket_grading(&self) -> Bigrading {
        Bigrading::new(self.kind.kappa(), -self.shift)
    }
}

/// The canonical bracket of two homogeneous functions on the bundle.
///
/// With `π_a` the fiber coordinate conjugate to `x^a` and `κ` the fiber parity shift,
///
/// ```text
/// (F,G) = Σ_a (-1)^{π̃_a (F̃+1)} ∂F/∂π_a ∂G/∂x^a  +  β_a (-1)^{x̃^a (F̃+1)} ∂F/∂x^a ∂G/∂π_a
/// β_a   = -(-1)^{x̃^a (x̃^a + κ)}
/// ```
///
/// where all derivatives are left derivatives. Equivalently `(F,G) = F ∂⃖/∂π ∂⃗/∂x G + β F ∂⃖/∂x ∂⃗/∂π G`
/// with constant coefficients, so `(π_a, x^a) = 1`.
pub fn canonical_bracket(f: &Series, g: &Series, ct: &CotangentChart) -> Result<Series> {
    ct.require_series(f, "first argument")?;
    ct.require_series(g, "second argument")?;
    if !f.is_homogeneous() {
        return Err(Error::GradingMismatch(format!("first argument is not homogeneous: {}", f)));
    }
    if !g.is_homogeneous() {
        return Err(Error::GradingMismatch(format!("second argument is not homogeneous: {}", g)));
    }
    Ok(bracket_raw(f, g, ct))
}

/// Bilinear extension of the canonical bracket; splits `f` by parity.
pub(crate) fn bracket_raw(f: &Series, g: &Series, ct: &CotangentChart) -> Series {
    let mut out = Series::zero();
    if f.is_zero() || g.is_zero() {
        return out;
    }
    let kappa = ct.kind.kappa();
    for (k, part) in f.parity_parts().iter().enumerate() {
        if part.is_zero() {
            continue;
        }
        let fp = Parity::new(k as i64);
        for (a, x) in ct.base.vars().iter().enumerate() {
            let pi = &ct.fiber[a];
            let xp = x.parity();
            let d_pi_f = part.left_derivative(pi);
            if !d_pi_f.is_zero() {
                let d_x_g = g.left_derivative(x);
                if !d_x_g.is_zero() {
                    let t = &d_pi_f * &d_x_g;
                    out = if pi.parity().times(fp.flip()).is_odd() { out - t } else { out + t };
                }
            }
            let d_x_f = part.left_derivative(x);
            if !d_x_f.is_zero() {
                let d_pi_g = g.left_derivative(pi);
                if !d_pi_g.is_zero() {
                    let t = &d_x_f * &d_pi_g;
                    // beta * (-1)^{x̃(F̃+1)}
                    let exponent = Parity::ODD + xp.times(xp + kappa) + xp.times(fp.flip());
                    out = if exponent.is_odd() { out - t } else { out + t };
                }
            }
        }
    }
    out
}

/// Set all fiber coordinates to zero.
pub fn restrict_to_base(f: &Series, ct: &CotangentChart) -> Series {
    f.set_zero(ct.fiber.iter())
}

/// Rename a function on one bundle to the same base coordinates on another bundle; the chart's
/// fiber variables are matched by position.
pub fn transfer_fiber(f: &Series, from: &CotangentChart, to: &CotangentChart) -> Result<Series> {
    let mut bindings = HashMap::new();
    for (a, b) in from.fiber.iter().zip(&to.fiber) {
        bindings.insert(a.clone(), Series::var(b));
    }
    f.substitute(&bindings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::rat;

    fn even_line() -> Chart {
        Chart::new(0, &[("x", Parity::EVEN, 0)]).unwrap()
    }

    #[test]
    fn cotangent_weights() {
        let ct = shifted_cotangent(&even_line(), Weight(0));
        assert_eq!(ct.fiber()[0].name(), "p_x");
        assert_eq!(ct.fiber()[0].weight(), Weight(0));
        let c2 = Chart::new(0, &[("x", Parity::EVEN, 2)]).unwrap();
        let ct = shifted_cotangent(&c2, Weight(1));
        assert_eq!(ct.fiber()[0].weight(), Weight(-1));
        assert!(ct.fiber()[0].parity().is_even());
        let cxi = Chart::new(0, &[("xi", Parity::ODD, 1)]).unwrap();
        // s = 1 - k with k = 1
        let ct = shifted_cotangent(&cxi, Weight(0));
        assert_eq!(ct.fiber()[0].weight(), Weight(-1));
        assert!(ct.fiber()[0].parity().is_odd());
    }

    #[test]
    fn anticotangent_flips_parity() {
        let ct = shifted_anticotangent(&even_line(), Weight(0));
        assert_eq!(ct.fiber()[0].name(), "xs_x");
        assert!(ct.fiber()[0].parity().is_odd());
        let cxi = Chart::new(0, &[("xi", Parity::ODD, 1)]).unwrap();
        let ct = shifted_anticotangent(&cxi, Weight(2));
        assert!(ct.fiber()[0].parity().is_even());
        assert_eq!(ct.fiber()[0].weight(), Weight(1));
        let two = Chart::new(0, &[("a", Parity::EVEN, 0), ("b", Parity::ODD, 3)]).unwrap();
        let ct = shifted_anticotangent(&two, Weight(0));
        let names: Vec<&str> = ct.fiber().iter().map(|v| v.name()).collect();
        assert_eq!(names, ["xs_a", "xs_b"]);
    }

    #[test]
    fn basic_brackets() {
        let ct = shifted_cotangent(&even_line(), Weight(0));
        let (x, p) = (ct.vars()[0].clone(), ct.vars()[1].clone());
        assert_eq!(canonical_bracket(&Series::var(&p), &Series::var(&x), &ct).unwrap(), Series::one());
        assert_eq!(canonical_bracket(&Series::var(&x), &Series::var(&p), &ct).unwrap(), Series::integer(-1));
        assert!(canonical_bracket(&Series::var(&p), &Series::var(&p), &ct).unwrap().is_zero());
        // (p^2/2, x^2) = 2 p x
        let h = Series::var(&p).pow(2).scale(&crate::graded::ratio(1, 2));
        let r = canonical_bracket(&h, &Series::var(&x).pow(2), &ct).unwrap();
        assert_eq!(r, (Series::var(&p) * Series::var(&x)).scale(&rat(2)));
    }

    #[test]
    fn odd_base_coordinates_are_graded_symmetric() {
        let c = Chart::new(0, &[("t", Parity::ODD, 0)]).unwrap();
        let ct = shifted_cotangent(&c, Weight(0));
        let (t, p) = (Series::var(&ct.vars()[0]), Series::var(&ct.vars()[1]));
        // both arguments odd: (F,G) = (G,F) for the even bracket
        assert_eq!(canonical_bracket(&p, &t, &ct).unwrap(), canonical_bracket(&t, &p, &ct).unwrap());
        let ct = shifted_anticotangent(&even_line(), Weight(0));
        let (x, xs) = (Series::var(&ct.vars()[0]), Series::var(&ct.vars()[1]));
        assert_eq!(canonical_bracket(&xs, &x, &ct).unwrap(), Series::one());
        assert_eq!(canonical_bracket(&x, &xs, &ct).unwrap(), Series::integer(-1));
    }

    #[test]
    fn restriction() {
        let ct = shifted_cotangent(&even_line(), Weight(1));
        let (x, p) = (Series::var(&ct.vars()[0]), Series::var(&ct.vars()[1]));
        assert_eq!(restrict_to_base(&(&x + &(&x * &p)), &ct), x);
        assert!(restrict_to_base(&p.pow(2), &ct).is_zero());
    }

    #[test]
    fn rejects_foreign_and_inhomogeneous() {
        let ct = shifted_cotangent(&even_line(), Weight(0));
        let y = GradedVariable::even("y", 0, 9);
        assert!(matches!(canonical_bracket(&Series::var(&y), &Series::one(), &ct), Err(Error::ChartMismatch(_))));
        let c = Chart::new(0, &[("x", Parity::EVEN, 0), ("t", Parity::ODD, 0)]).unwrap();
        let ct = shifted_cotangent(&c, Weight(0));
        let mixed = Series::var(&ct.vars()[0]) + Series::var(&ct.vars()[1]);
        assert!(matches!(canonical_bracket(&mixed, &mixed, &ct), Err(Error::GradingMismatch(_))));
    }
}
