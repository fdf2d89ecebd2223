use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// The Z/2 grading. Controls every sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parity(u8);

impl Parity {
    pub const EVEN: Parity = Parity(0);
    pub const ODD: Parity = Parity(1);

    pub fn new(value: i64) -> Parity {
        Parity(value.rem_euclid(2) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 == 1
    }

    pub fn is_even(self) -> bool {
        self.0 == 0
    }

    pub fn flip(self) -> Parity {
        Parity(1 - self.0)
    }

    /// Product of parities as exponents: `(-1)^{a*b}` is negative iff this is odd.
    pub fn times(self, other: Parity) -> Parity {
        Parity(self.0 & other.0)
    }

    /// `(-1)^self` as an integer sign.
    pub fn sign(self) -> i32 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

impl AddAssign for Parity {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Parity) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Parity {
    type Output = Parity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// The Z grading. Pure bookkeeping; never produces signs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub i64);

impl Weight {
    pub fn value(self) -> i64 {
        self.0
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parity together with weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bigrading {
    pub parity: Parity,
    pub weight: Weight,
}

impl Bigrading {
    pub const ZERO: Bigrading = Bigrading { parity: Parity::EVEN, weight: Weight(0) };

    pub fn new(parity: Parity, weight: Weight) -> Self {
        Bigrading { parity, weight }
    }
}

impl Add for Bigrading {
    type Output = Bigrading;
    fn add(self, rhs: Bigrading) -> Bigrading {
        Bigrading { parity: self.parity + rhs.parity, weight: self.weight + rhs.weight }
    }
}

impl Sub for Bigrading {
    type Output = Bigrading;
    fn sub(self, rhs: Bigrading) -> Bigrading {
        Bigrading { parity: self.parity - rhs.parity, weight: self.weight - rhs.weight }
    }
}

impl fmt::Display for Bigrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.parity, self.weight)
    }
}

#[derive(Debug)]
struct VarData {
    name: String,
    parity: Parity,
    weight: Weight,
    fiber_degree: u8,
    index: u32,
}

/// A named graded symbol.
///
/// Variables are totally ordered by `(fiber_degree, index, name)`; this order is the canonical
/// order of factors inside every monomial, so base coordinates always precede momenta.
/// Cloning is cheap.
#[derive(Clone)]
pub struct GradedVariable(Arc<VarData>);

impl GradedVariable {
    pub fn new(name: impl Into<String>, parity: Parity, weight: Weight, fiber_degree: u8, index: u32) -> Self {
        GradedVariable(Arc::new(VarData { name: name.into(), parity, weight, fiber_degree, index }))
    }

    pub fn even(name: impl Into<String>, weight: i64, index: u32) -> Self {
        Self::new(name, Parity::EVEN, Weight(weight), 0, index)
    }

    pub fn odd(name: impl Into<String>, weight: i64, index: u32) -> Self {
        Self::new(name, Parity::ODD, Weight(weight), 0, index)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn parity(&self) -> Parity {
        self.0.parity
    }

    pub fn weight(&self) -> Weight {
        self.0.weight
    }

    pub fn bigrading(&self) -> Bigrading {
        Bigrading::new(self.0.parity, self.0.weight)
    }

    pub fn fiber_degree(&self) -> u8 {
        self.0.fiber_degree
    }

    pub fn index(&self) -> u32 {
        self.0.index
    }

    pub fn is_odd(&self) -> bool {
        self.0.parity.is_odd()
    }

    fn key(&self) -> (u8, u32, &str) {
        (self.0.fiber_degree, self.0.index, &self.0.name)
    }
}

impl PartialEq for GradedVariable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.key() == other.key()
    }
}

impl Eq for GradedVariable {}

impl PartialOrd for GradedVariable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GradedVariable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for GradedVariable {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Debug for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.0.name, self.0.parity, self.0.weight)
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}
