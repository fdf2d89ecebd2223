use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::var::{Bigrading, GradedVariable, Parity, Weight};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^p` as a rational.
pub(crate) fn sign_of(p: Parity) -> Rational {
    rat(p.sign() as i64)
}

/// A product of graded variables in canonical order.
///
/// Odd variables carry exponent one; a variable never appears twice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(GradedVariable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: &GradedVariable) -> Self {
        Monomial(vec![(v.clone(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(GradedVariable, u32)] {
        &self.0
    }

    pub fn parity(&self) -> Parity {
        self.0.iter().fold(Parity::EVEN, |p, (v, e)| p + Parity::new((v.parity().value() as u32 * e) as i64))
    }

    pub fn weight(&self) -> Weight {
        Weight(self.0.iter().map(|(v, e)| v.weight().value() * *e as i64).sum())
    }

    pub fn bigrading(&self) -> Bigrading {
        Bigrading::new(self.parity(), self.weight())
    }

    /// Total degree in fiber variables.
    pub fn fiber_degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.fiber_degree() as u32 * e).sum()
    }

    pub fn exponent(&self, v: &GradedVariable) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    /// Product `self * other` as a sign and a monomial, or `None` if an odd variable repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        // odd factors of `self` not yet emitted
        let mut odd_left: usize = self.0.iter().filter(|(v, _)| v.is_odd()).count();
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() {
                out.push(self.0[i].clone());
                i += 1;
                continue;
            }
            if i == self.0.len() {
                out.push(other.0[j].clone());
                j += 1;
                continue;
            }
            let (a, ea) = &self.0[i];
            let (b, eb) = &other.0[j];
            match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    if a.is_odd() {
                        odd_left -= 1;
                    }
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    if b.is_odd() && odd_left % 2 == 1 {
                        negative = !negative;
                    }
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if a.is_odd() {
                        return None;
                    }
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        Some((negative, Monomial(out)))
    }

    /// Left derivative: sign, multiplicity and the lowered monomial.
    fn left_derivative(&self, v: &GradedVariable) -> Option<(bool, u32, Monomial)> {
        let pos = self.0.iter().position(|(w, _)| w == v)?;
        let mut preceding = Parity::EVEN;
        for (w, e) in &self.0[..pos] {
            preceding += Parity::new((w.parity().value() as u32 * e) as i64);
        }
        let negative = v.parity().times(preceding).is_odd();
        let mut factors = self.0.clone();
        let e = factors[pos].1;
        if e == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        Some((negative, e, Monomial(factors)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// A coefficient attached to a monomial. A zero coefficient means the zero term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Rational,
    pub monomial: Monomial,
}

impl Term {
    pub fn zero() -> Self {
        Term { coefficient: Rational::zero(), monomial: Monomial::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }
}

/// Sort an ordered product of variables into canonical form, tracking the Koszul sign.
///
/// Returns the zero term when an odd variable occurs twice.
pub fn normalize_product(factors: &[GradedVariable]) -> Term {
    let mut vars: Vec<GradedVariable> = factors.to_vec();
    let mut negative = false;
    // insertion sort; every adjacent swap of two odd factors flips the sign
    for i in 1..vars.len() {
        let mut j = i;
        while j > 0 && vars[j - 1] > vars[j] {
            if vars[j - 1].is_odd() && vars[j].is_odd() {
                negative = !negative;
            }
            vars.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut out: Vec<(GradedVariable, u32)> = Vec::new();
    for v in vars {
        match out.last_mut() {
            Some((w, e)) if *w == v => {
                if v.is_odd() {
                    return Term::zero();
                }
                *e += 1;
            }
            _ => out.push((v, 1)),
        }
    }
    Term { coefficient: if negative { -Rational::one() } else { Rational::one() }, monomial: Monomial(out) }
}

/// A finite sum of rational multiples of canonical monomials.
///
/// `truncation` records the largest total fiber degree that is retained; `None` means exact.
#[derive(Clone, Debug, Default)]
pub struct Series {
    terms: BTreeMap<Monomial, Rational>,
    truncation: Option<u32>,
}

// Equality is on terms only; the truncation marker is metadata.
impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Series {}

fn min_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Series {
    pub fn zero() -> Self {
        Series::default()
    }

    pub fn one() -> Self {
        Series::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Series::monomial(c, Monomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Series::constant(rat(n))
    }

    pub fn var(v: &GradedVariable) -> Self {
        Series::monomial(Rational::one(), Monomial::var(v))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut s = Series::zero();
        if !c.is_zero() {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn from_term(t: Term) -> Self {
        Series::monomial(t.coefficient, t.monomial)
    }

    /// Product of variables in the given (arbitrary) order.
    pub fn product_of(vars: &[GradedVariable]) -> Self {
        Series::from_term(normalize_product(vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn with_truncation(mut self, order: Option<u32>) -> Self {
        self.truncation = order;
        if let Some(n) = order {
            self.terms.retain(|m, _| m.fiber_degree() <= n);
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn variables(&self) -> BTreeSet<GradedVariable> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn max_fiber_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::fiber_degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        if let Some(n) = self.truncation {
            if m.fiber_degree() > n {
                return;
            }
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series { terms: BTreeMap::new(), truncation: self.truncation };
        }
        Series { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(), truncation: self.truncation }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone().with_truncation(min_trunc(self.truncation, other.truncation));
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Series) -> Series {
        let trunc = min_trunc(self.truncation, other.truncation);
        let mut out = Series { terms: BTreeMap::new(), truncation: trunc };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(n) = trunc {
                    if ma.fiber_degree() + mb.fiber_degree() > n {
                        continue;
                    }
                }
                if let Some((neg, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(if neg { -c } else { c }, m);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut out = Series::one().with_truncation(self.truncation);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The common bigrading of all terms.
    pub fn bigrade(&self) -> Result<Bigrading> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroSeries)?.bigrading();
        for m in it {
            let g = m.bigrading();
            if g != first {
                return Err(Error::InhomogeneousSeries(format!(
                    "term {} has bigrading {} but the leading term has {}",
                    m, g, first
                )));
            }
        }
        Ok(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bigrade().is_ok()
    }

    /// Checks that the series is zero or homogeneous of the given bigrading.
    pub fn expect_bigrade(&self, expected: Bigrading, what: &str) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        let actual = self.bigrade().map_err(|e| Error::GradingMismatch(format!("{}: {}", what, e)))?;
        if actual != expected {
            return Err(Error::GradingMismatch(format!(
                "{} has bigrading {} but {} is required",
                what, actual, expected
            )));
        }
        Ok(())
    }

    /// Split into parity-homogeneous parts (even part first).
    pub fn parity_parts(&self) -> [Series; 2] {
        let mut even = Series { terms: BTreeMap::new(), truncation: self.truncation };
        let mut odd = even.clone();
        for (m, c) in &self.terms {
            if m.parity().is_odd() {
                odd.terms.insert(m.clone(), c.clone());
            } else {
                even.terms.insert(m.clone(), c.clone());
            }
        }
        [even, odd]
    }

    /// Terms of exactly the given fiber degree.
    pub fn fiber_component(&self, degree: u32) -> Series {
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.fiber_degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    /// Left partial derivative with respect to `v`.
    pub fn left_derivative(&self, v: &GradedVariable) -> Series {
        let mut out = Series { terms: BTreeMap::new(), truncation: self.truncation };
        for (m, c) in &self.terms {
            if let Some((neg, e, low)) = m.left_derivative(v) {
                let k = c * rat(e as i64);
                out.add_term(if neg { -k } else { k }, low);
            }
        }
        out
    }

    /// Drop every term of total fiber degree above `order`.
    pub fn truncate(&self, order: u32) -> Series {
        let mut out = self.clone();
        out.truncation = Some(order);
        out.terms.retain(|m, _| m.fiber_degree() <= order);
        out
    }

    /// Forget the truncation marker without changing terms.
    pub fn exact(mut self) -> Series {
        self.truncation = None;
        self
    }

    /// Simultaneous substitution. Every binding must be zero or share the bigrading of its key.
    pub fn substitute(&self, bindings: &HashMap<GradedVariable, Series>) -> Result<Series> {
        for (v, s) in bindings {
            s.expect_bigrade(v.bigrading(), &format!("binding for `{}`", v))?;
        }
        Ok(self.substitute_unchecked(bindings))
    }

    pub(crate) fn substitute_unchecked(&self, bindings: &HashMap<GradedVariable, Series>) -> Series {
        let mut trunc = self.truncation;
        for s in bindings.values() {
            trunc = min_trunc(trunc, s.truncation);
        }
        let mut powers: HashMap<(GradedVariable, u32), Series> = HashMap::new();
        let mut out = Series { terms: BTreeMap::new(), truncation: trunc };
        for (m, c) in &self.terms {
            let mut acc = Series::constant(c.clone()).with_truncation(trunc);
            for (v, e) in m.factors() {
                let factor = match bindings.get(v) {
                    Some(s) => powers.entry((v.clone(), *e)).or_insert_with(|| s.pow(*e)).clone(),
                    None => Series::monomial(Rational::one(), Monomial(vec![(v.clone(), *e)])),
                };
                acc = acc.mul(&factor);
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(cc, mm);
            }
        }
        out
    }

    /// Set the given variables to zero.
    pub fn set_zero<'a>(&self, vars: impl IntoIterator<Item = &'a GradedVariable>) -> Series {
        let vars: BTreeSet<&GradedVariable> = vars.into_iter().collect();
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.factors().iter().all(|(v, _)| !vars.contains(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                Series::$method(self, rhs)
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                Series::$method(&self, &rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                Series::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rational::one())
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rational::one())
    }
}
