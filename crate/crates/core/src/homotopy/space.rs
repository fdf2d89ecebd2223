use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Chart, VectorField};
use crate::graded::{sign_of, Bigrading, GradedVariable, Parity, Rational, Weight};

/// The `(ε, k)` of a shifted structure: brackets of weight `2-n+k(n-1)` and parity `ε(n+1)+n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftSignature {
    pub epsilon: Parity,
    pub k: Weight,
}

impl ShiftSignature {
    pub fn new(epsilon: u8, k: i64) -> Self {
        ShiftSignature { epsilon: Parity::new(epsilon as i64), k: Weight(k) }
    }

    /// The shift `1 - k` of the carrier space.
    pub fn s(&self) -> Weight {
        Weight(1 - self.k.0)
    }

    /// Bigrading the `n`-bracket adds to the sum of its inputs.
    pub fn bracket_grading(&self, n: usize) -> Bigrading {
        let n = n as i64;
        Bigrading::new(Parity::new(self.epsilon.value() as i64 * (n + 1) + n), Weight(2 - n + self.k.0 * (n - 1)))
    }
}

impl fmt::Display for ShiftSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(eps={}, k={})", self.epsilon.value(), self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
    pub weight: Weight,
}

/// A graded vector space given by a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
}

impl GradedSpace {
    pub fn new(basis: &[(&str, Parity, i64)]) -> Self {
        GradedSpace {
            basis: basis
                .iter()
                .map(|(n, p, w)| BasisElement { name: n.to_string(), parity: *p, weight: Weight(*w) })
                .collect(),
        }
    }

    pub fn from_elements(basis: Vec<BasisElement>) -> Self {
        GradedSpace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn grading(&self, i: usize) -> Bigrading {
        Bigrading::new(self.basis[i].parity, self.basis[i].weight)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// `ΠV`: same basis names prefixed `Pi_` (or stripped), parities flipped, weights kept.
    pub fn parity_reversed(&self) -> GradedSpace {
        GradedSpace {
            basis: self
                .basis
                .iter()
                .map(|b| BasisElement {
                    name: match b.name.strip_prefix("Pi_") {
                        Some(rest) => rest.to_string(),
                        None => format!("Pi_{}", b.name),
                    },
                    parity: b.parity.flip(),
                    weight: b.weight,
                })
                .collect(),
        }
    }

    /// Coordinates on `Π^{1+ε}V[1-k]`: for basis vector `e` of bigrading `(p, w)` the coordinate
    /// has parity `p + 1 + ε` and weight `-w + 1 - k`. Named `xi_<e>` when ε = 0, `y_<e>` when ε = 1.
    pub fn coordinate_chart(&self, sig: ShiftSignature, first_index: u32) -> Chart {
        let prefix = if sig.epsilon.is_odd() { "y_" } else { "xi_" };
        let vars = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                GradedVariable::new(
                    format!("{}{}", prefix, b.name),
                    b.parity + Parity::ODD + sig.epsilon,
                    -b.weight + sig.s(),
                    0,
                    first_index + i as u32,
                )
            })
            .collect();
        Chart::from_vars(vars).expect("basis names are unique")
    }

    /// Bigrading of a nonzero homogeneous vector.
    pub fn grading_of(&self, v: &GradedVector) -> Result<Option<Bigrading>> {
        let mut out: Option<Bigrading> = None;
        for i in v.support() {
            let g = self.grading(i);
            match out {
                None => out = Some(g),
                Some(h) if h != g => {
                    return Err(Error::GradingMismatch(format!(
                        "vector {} mixes bigradings {} and {}",
                        self.show(v),
                        h,
                        g
                    )))
                }
                _ => {}
            }
        }
        Ok(out)
    }

    pub fn show(&self, v: &GradedVector) -> String {
        v.display_with(|i| self.basis.get(i).map_or_else(|| format!("e{}", i), |b| b.name.clone()))
    }
}

/// A rational combination of basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVector(BTreeMap<usize, Rational>);

impl GradedVector {
    pub fn zero() -> Self {
        GradedVector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(i, Rational::from_integer(1.into()));
        GradedVector(m)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut v = GradedVector::zero();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add_at(&mut self, i: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &GradedVector) {
        for (i, x) in &other.0 {
            self.add_at(*i, &(c * x));
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedVector {
        let mut out = GradedVector::zero();
        out.axpy(c, self);
        out
    }

    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in self.0.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if abs == Rational::from_integer(1.into()) {
                s.push_str(&name(*i));
            } else {
                s.push_str(&format!("{}*{}", abs, name(*i)));
            }
        }
        s
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|i| format!("e{}", i)))
    }
}

/// The constant vector field `i_u` on `Π^{1+ε}V[1-k]`.
///
/// For ε = 1 this is `u^i d/dy^i` (even map); for ε = 0 it is `(-1)^{ũ} u^i d/dξ^i` (odd map).
/// Both have weight `-s` relative to `u`.
pub fn constant_field(
    u: &GradedVector,
    space: &GradedSpace,
    sig: ShiftSignature,
    chart: &Chart,
) -> Result<VectorField> {
    if chart.dim() != space.dim() {
        return Err(Error::ChartMismatch(format!(
            "chart has {} coordinates but the space has dimension {}",
            chart.dim(),
            space.dim()
        )));
    }
    for (i, v) in chart.vars().iter().enumerate() {
        let g = space.grading(i);
        if v.parity() != g.parity + Parity::ODD + sig.epsilon || v.weight() != -g.weight + sig.s() {
            return Err(Error::ChartMismatch(format!(
                "coordinate `{}` is not the {} shifted copy of `{}`",
                v,
                sig,
                space.element(i).name
            )));
        }
    }
    if let Some(i) = u.support().find(|i| *i >= space.dim()) {
        return Err(Error::ChartMismatch(format!("basis index {} out of range", i)));
    }
    let grading = match space.grading_of(u)? {
        Some(g) => g,
        None => return Ok(VectorField::zero(chart.vars(), Bigrading::new(sig.epsilon.flip(), -sig.s()))),
    };
    let comps = (0..space.dim())
        .map(|i| {
            let c = u.coeff(i);
            let c = if sig.epsilon.is_even() { c * sign_of(space.parity(i)) } else { c };
            crate::graded::Series::constant(c)
        })
        .collect();
    VectorField::with_grading(
        chart.vars(),
        comps,
        Bigrading::new(grading.parity + sig.epsilon.flip(), grading.weight - sig.s()),
    )
}
