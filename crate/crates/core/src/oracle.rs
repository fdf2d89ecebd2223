//! Brute-force evaluation in a finite Grassmann algebra over the rationals.
//!
//! Graded expressions are evaluated at random parity-respecting points: odd variables become
//! scaled generators, even variables a rational plus a nilpotent bivector. Derivatives are never
//! taken symbolically here. `∂f/∂v` at a point `A` is read off from `f(A + δ) - f(A) = δ·∂f/∂v(A)`,
//! where `δ` is a fresh generator (odd `v`) or a fresh product of two generators (even `v`).
//! Nested derivatives use disjoint reserved generators, two per nesting level, at the bottom
//! of the index range.
//!
//! Agreement over many trials is evidence, not proof: a passing check reports only that no
//! counterexample was found.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{CotangentChart, VectorField};
use crate::graded::{sign_of, GradedVariable, Parity, Rational, Series};
use crate::homotopy::{GradedSpace, GradedVector, ShiftSignature};
use crate::microformal::{order_parameter, PullbackResult, ThickMorphism};
use crate::report::{Entry, Report};

/// Largest supported number of generators.
pub const MAX_GENERATORS: u32 = 32;

/// A rational combination of products `θ_{i1}…θ_{ik}`, `i1 < … < ik`, keyed by bit mask.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multivector(BTreeMap<u32, Rational>);

fn reorder_sign(a: u32, b: u32) -> bool {
    // θ_a θ_b = (-1)^{#{(i,j): i in a, j in b, i > j}} θ_{a|b}
    let mut n = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        n += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    n % 2 == 1
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector(BTreeMap::new())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(0, c);
        }
        Multivector(m)
    }

    pub fn blade(mask: u32, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(mask, c);
        }
        Multivector(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.0.iter().map(|(m, c)| (*m, c))
    }

    /// Coefficient of the unit.
    pub fn scalar_part(&self) -> Rational {
        self.0.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(p)` if every blade has parity `p`; the zero element reports even.
    pub fn parity(&self) -> Option<Parity> {
        let mut out = None;
        for m in self.0.keys() {
            let p = Parity::new(m.count_ones() as i64);
            match out {
                None => out = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(Parity::EVEN))
    }

    fn add_blade(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(mask).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&mask);
        }
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_blade(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Multivector {
        if c.is_zero() {
            return Multivector::zero();
        }
        Multivector(self.0.iter().map(|(m, x)| (*m, x * c)).collect())
    }

    pub fn mul(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                if a & b != 0 {
                    continue;
                }
                let c = x * y;
                out.add_blade(a | b, if reorder_sign(*a, *b) { -c } else { c });
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Multivector {
        let mut out = Multivector::scalar(Rational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Given `self = θ_B · D` with `D` free of the generators in `B`, return `D`.
    /// Errors if some blade does not contain `B`.
    fn strip_left(&self, b: u32) -> Result<Multivector> {
        let mut out = Multivector::zero();
        for (m, c) in &self.0 {
            if m & b != b {
                return Err(Error::ParityViolation(format!(
                    "shifted difference has a blade {:#b} without the probe {:#b}",
                    m, b
                )));
            }
            let d = m & !b;
            out.add_blade(d, if reorder_sign(b, d) { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", c)?;
            let mut rest = *m;
            while rest != 0 {
                write!(f, "*t{}", rest.trailing_zeros())?;
                rest &= rest - 1;
            }
        }
        Ok(())
    }
}

/// The Grassmann algebra on a fixed number of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrassmannAlgebra {
    generators: u32,
}

impl GrassmannAlgebra {
    pub fn new(generators: u32) -> Result<Self> {
        if generators > MAX_GENERATORS {
            return Err(Error::ParityViolation(format!("at most {} generators are supported", MAX_GENERATORS)));
        }
        Ok(GrassmannAlgebra { generators })
    }

    pub fn generator_count(&self) -> u32 {
        self.generators
    }

    pub fn generator(&self, i: u32) -> Multivector {
        assert!(i < self.generators, "generator index out of range");
        Multivector::blade(1 << i, Rational::one())
    }
}

/// Values of variables. Even variables take even values and odd variables odd ones.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: HashMap<GradedVariable, Multivector>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn insert(&mut self, v: GradedVariable, value: Multivector) -> Result<()> {
        match value.parity() {
            Some(p) if p == v.parity() || value.is_zero() => {
                self.values.insert(v, value);
                Ok(())
            }
            _ => Err(Error::ParityViolation(format!("value {} does not have the parity of `{}`", value, v))),
        }
    }

    pub fn get(&self, v: &GradedVariable) -> Option<&Multivector> {
        self.values.get(v)
    }

    pub fn extended(&self, other: &Assignment) -> Assignment {
        let mut out = self.clone();
        out.values.extend(other.values.iter().map(|(k, v)| (k.clone(), v.clone())));
        out
    }

    fn with(&self, v: &GradedVariable, value: Multivector) -> Assignment {
        let mut out = self.clone();
        out.values.insert(v.clone(), value);
        out
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<_> = self.values.iter().collect();
        items.sort_by(|a, b| a.0.cmp(b.0));
        for (k, (v, x)) in items.into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} = {}", v, x)?;
        }
        Ok(())
    }
}

/// Substitute and multiply out in the Grassmann algebra.
pub fn evaluate(a: &Series, asg: &Assignment) -> Result<Multivector> {
    let mut out = Multivector::zero();
    let mut powers: HashMap<(GradedVariable, u32), Multivector> = HashMap::new();
    for (m, c) in a.terms() {
        let mut acc = Multivector::scalar(c.clone());
        for (v, e) in m.factors() {
            let val = asg.get(v).ok_or_else(|| Error::MissingBinding(v.name().to_string()))?;
            if val.parity() != Some(v.parity()) && !val.is_zero() {
                return Err(Error::ParityViolation(format!("`{}` is bound to {}", v, val)));
            }
            let p = powers.entry((v.clone(), *e)).or_insert_with(|| val.pow(*e));
            acc = acc.mul(p);
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// A random nonzero rational with numerator and denominator in `[-9, 9] \ {0}`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let pick = |rng: &mut dyn rand::RngCore| loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return n;
        }
    };
    let n = pick(rng);
    let d = pick(rng);
    Rational::new(n.into(), d.into())
}

/// Draw a parity-respecting point for `vars`, using generators `first..first+count`.
pub fn random_assignment(vars: &[GradedVariable], first: u32, count: u32, rng: &mut impl Rng) -> Result<Assignment> {
    let odd = vars.iter().filter(|v| v.is_odd()).count() as u32;
    if odd > count {
        return Err(Error::ParityViolation(format!(
            "{} odd variables need at least {} generators, got {}",
            odd, odd, count
        )));
    }
    if first + count > MAX_GENERATORS {
        return Err(Error::ParityViolation(format!(
            "{} generators exceed the limit {}",
            first + count,
            MAX_GENERATORS
        )));
    }
    let mut asg = Assignment::new();
    let mut next_odd = first;
    for v in vars {
        if v.is_odd() {
            asg.insert(v.clone(), Multivector::blade(1 << next_odd, random_rational(rng)))?;
            next_odd += 1;
        } else {
            let mut val = Multivector::scalar(random_rational(rng));
            if count >= 2 {
                let a = first + rng.gen_range(0..count);
                let mut b = first + rng.gen_range(0..count - 1);
                if b >= a {
                    b += 1;
                }
                let (a, b) = (a.min(b), a.max(b));
                val = val.add(&Multivector::blade((1 << a) | (1 << b), random_rational(rng)));
            }
            asg.insert(v.clone(), val)?;
        }
    }
    Ok(asg)
}

type Eval = Rc<dyn Fn(&Assignment) -> Result<Multivector>>;

/// A function evaluated pointwise. `depth` counts nested probes, `parity` is the parity of its
/// values when known.
#[derive(Clone)]
pub struct PointFn {
    eval: Eval,
    depth: u32,
    parity: Option<Parity>,
    constant_zero: bool,
}

impl PointFn {
    pub fn new(depth: u32, parity: Option<Parity>, f: impl Fn(&Assignment) -> Result<Multivector> + 'static) -> Self {
        PointFn { eval: Rc::new(f), depth, parity, constant_zero: false }
    }

    pub fn zero() -> Self {
        PointFn {
            eval: Rc::new(|_| Ok(Multivector::zero())),
            depth: 0,
            parity: Some(Parity::EVEN),
            constant_zero: true,
        }
    }

    /// Evaluation of a series, with no symbolic processing.
    pub fn series(s: &Series) -> Self {
        if s.is_zero() {
            return PointFn::zero();
        }
        let parity = s.bigrade().ok().map(|g| g.parity);
        let s = s.clone();
        PointFn::new(0, parity, move |a| evaluate(&s, a))
    }

    pub fn eval(&self, a: &Assignment) -> Result<Multivector> {
        (self.eval)(a)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn is_constant_zero(&self) -> bool {
        self.constant_zero
    }

    pub fn add(&self, other: &PointFn) -> PointFn {
        if self.constant_zero {
            return other.clone();
        }
        if other.constant_zero {
            return self.clone();
        }
        let (a, b) = (self.clone(), other.clone());
        let parity = if a.parity == b.parity { a.parity } else { None };
        PointFn::new(a.depth.max(b.depth), parity, move |x| Ok(a.eval(x)?.add(&b.eval(x)?)))
    }

    pub fn scale(&self, c: Rational) -> PointFn {
        if self.constant_zero || c.is_zero() {
            return PointFn::zero();
        }
        let a = self.clone();
        PointFn::new(a.depth, a.parity, move |x| Ok(a.eval(x)?.scale(&c)))
    }

    pub fn mul(&self, other: &PointFn) -> PointFn {
        if self.constant_zero || other.constant_zero {
            return PointFn::zero();
        }
        let (a, b) = (self.clone(), other.clone());
        let parity = match (a.parity, b.parity) {
            (Some(p), Some(q)) => Some(p + q),
            _ => None,
        };
        PointFn::new(a.depth.max(b.depth), parity, move |x| Ok(a.eval(x)?.mul(&b.eval(x)?)))
    }

    /// Left derivative by probing: `f(A + δ) - f(A) = δ·∂f/∂v(A)`.
    pub fn derivative(&self, v: &GradedVariable) -> PointFn {
        if self.constant_zero {
            return PointFn::zero();
        }
        let f = self.clone();
        let level = f.depth;
        let v = v.clone();
        let parity = f.parity.map(|p| p + v.parity());
        let probe = if v.is_odd() { 1u32 << (2 * level) } else { (1u32 << (2 * level)) | (1u32 << (2 * level + 1)) };
        PointFn::new(level + 1, parity, move |a| {
            let base = a.get(&v).cloned().ok_or_else(|| Error::MissingBinding(v.name().to_string()))?;
            let shifted = a.with(&v, base.add(&Multivector::blade(probe, Rational::one())));
            f.eval(&shifted)?.sub(&f.eval(a)?).strip_left(probe)
        })
    }

    /// Evaluate with some variables replaced by other point functions.
    pub fn compose(&self, bindings: Vec<(GradedVariable, PointFn)>) -> PointFn {
        let f = self.clone();
        let depth = bindings.iter().map(|(_, g)| g.depth).max().unwrap_or(0).max(f.depth);
        PointFn::new(depth, f.parity, move |a| {
            let mut b = a.clone();
            for (v, g) in &bindings {
                b.insert(v.clone(), g.eval(a)?)?;
            }
            f.eval(&b)
        })
    }

    /// Evaluate with the given variables set to zero.
    pub fn at_zero(&self, vars: &[GradedVariable]) -> PointFn {
        let f = self.clone();
        let vars = vars.to_vec();
        PointFn::new(f.depth, f.parity, move |a| {
            let mut b = a.clone();
            for v in &vars {
                b.values.insert(v.clone(), Multivector::zero());
            }
            f.eval(&b)
        })
    }
}

/// Pointwise canonical bracket, writing out the same constant-coefficient convention as the
/// symbolic kernel but with probe derivatives.
pub fn bracket_fn(f: &PointFn, g: &PointFn, ct: &CotangentChart) -> Result<PointFn> {
    if f.constant_zero || g.constant_zero {
        return Ok(PointFn::zero());
    }
    let fp = f.parity.ok_or_else(|| Error::GradingMismatch("bracket needs a homogeneous first argument".into()))?;
    let kappa = ct.kind().kappa();
    let mut out = PointFn::zero();
    for (a, x) in ct.base().vars().iter().enumerate() {
        let pi = ct.conjugate(a);
        let xp = x.parity();
        let t1 = f.derivative(pi).mul(&g.derivative(x));
        out = out.add(&t1.scale(sign_of(pi.parity().times(fp.flip()))));
        let e = Parity::ODD + xp.times(xp + kappa) + xp.times(fp.flip());
        let t2 = f.derivative(x).mul(&g.derivative(pi));
        out = out.add(&t2.scale(sign_of(e)));
    }
    if out.parity.is_none() && !out.constant_zero {
        out.parity = g.parity.map(|q| fp + q + kappa);
    }
    Ok(out)
}

/// Pointwise `{f_1,…,f_n}_H`, restricted to the base.
pub fn hamiltonian_bracket_fn(h: &Series, args: &[PointFn], ct: &CotangentChart) -> Result<PointFn> {
    let n = args.len();
    let mut x = PointFn::series(h);
    for f in args {
        x = bracket_fn(&x, f, ct)?;
    }
    let mut out = x.at_zero(ct.fiber());
    if ct.kind() == crate::geometry::FiberKind::Odd {
        let mut e = Parity::EVEN;
        for (j, f) in args.iter().enumerate() {
            let p = f.parity.ok_or_else(|| Error::GradingMismatch("argument is not homogeneous".into()))?;
            e += p.times(Parity::new((n - 1 - j) as i64));
        }
        out = out.scale(sign_of(e));
    }
    Ok(out)
}

/// A vector field evaluated pointwise, one function per coordinate.
#[derive(Clone)]
pub struct PointField {
    pub coords: Vec<GradedVariable>,
    pub components: Vec<PointFn>,
    pub parity: Parity,
}

impl PointField {
    pub fn from_field(x: &VectorField) -> Self {
        PointField {
            coords: x.coords().to_vec(),
            components: x.components().iter().map(PointFn::series).collect(),
            parity: x.parity(),
        }
    }

    /// `X(f) = Σ X^b ∂f/∂x^b`.
    pub fn apply(&self, f: &PointFn) -> PointFn {
        let mut out = PointFn::zero();
        for (v, c) in self.coords.iter().zip(&self.components) {
            if c.constant_zero {
                continue;
            }
            out = out.add(&c.mul(&f.derivative(v)));
        }
        out
    }

    pub fn commutator(&self, other: &PointField) -> PointField {
        let sign = if self.parity.times(other.parity).is_odd() { Rational::one() } else { -Rational::one() };
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(xa, ya)| self.apply(ya).add(&other.apply(xa).scale(sign.clone())))
            .collect();
        PointField { coords: self.coords.clone(), components, parity: self.parity + other.parity }
    }
}

/// Derived bracket of basis vectors, by pointwise iterated commutators evaluated at the origin.
pub fn oracle_derived_bracket_q(
    q: &VectorField,
    tuple: &[usize],
    space: &GradedSpace,
    sig: ShiftSignature,
) -> Result<GradedVector> {
    let coords = q.coords().to_vec();
    let mut acc = PointField::from_field(q);
    for &j in tuple {
        let mut comps = vec![PointFn::zero(); coords.len()];
        let c = if sig.epsilon.is_even() { sign_of(space.parity(j)) } else { Rational::one() };
        comps[j] = PointFn::new(0, Some(Parity::EVEN), move |_| Ok(Multivector::scalar(c.clone())));
        let i = PointField { coords: coords.clone(), components: comps, parity: coords[j].parity() };
        acc = acc.commutator(&i);
    }
    let mut origin = Assignment::new();
    for v in &coords {
        origin.insert(v.clone(), Multivector::zero())?;
    }
    let n = tuple.len();
    let mut pre = Parity::EVEN;
    if sig.epsilon.is_even() {
        for (j, &t) in tuple.iter().enumerate() {
            pre += space.parity(t).times(Parity::new((n - 1 - j) as i64));
        }
    }
    let mut out = Vec::new();
    for (a, c) in acc.components.iter().enumerate() {
        let v = c.eval(&origin)?;
        if v.terms().any(|(m, _)| m != 0) {
            return Err(Error::ParityViolation(format!("value at the origin is not a number: {}", v)));
        }
        let mut x = v.scalar_part() * sign_of(pre);
        if sig.epsilon.is_even() {
            x *= sign_of(space.parity(a));
        }
        out.push((a, x));
    }
    Ok(GradedVector::from_pairs(out))
}

/// Settings for pointwise comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub trials: usize,
    /// Generators available for variable values, on top of those reserved for probes.
    pub generators: u32,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { trials: 100, generators: 8, seed: 0x5eed }
    }
}

/// Compare two point functions at random points. Extra fixed bindings (such as a nilpotent
/// order parameter) are added to every point.
pub fn pointwise_check(
    check: &str,
    lhs: &PointFn,
    rhs: &PointFn,
    vars: &[GradedVariable],
    fixed: &Assignment,
    cfg: OracleConfig,
) -> Report {
    let mut report = Report::new();
    let reserved = 2 * lhs.depth.max(rhs.depth);
    let fixed_top =
        fixed.values.values().flat_map(|m| m.terms().map(|(b, _)| 32 - b.leading_zeros())).max().unwrap_or(0);
    let first = reserved.max(fixed_top);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for trial in 0..cfg.trials {
        let outcome = random_assignment(vars, first, cfg.generators, &mut rng).and_then(|a| {
            let a = a.extended(fixed);
            Ok((lhs.eval(&a)?, rhs.eval(&a)?, a))
        });
        match outcome {
            Ok((l, r, _)) if l == r => {}
            Ok((l, r, a)) => {
                report.push(
                    Entry::fail(check, format!("trial {}", trial))
                        .expected(r)
                        .actual(l)
                        .note(format!("seed {}", cfg.seed))
                        .note(format!("point {}", a)),
                );
                return report;
            }
            Err(e) => {
                report.push(
                    Entry::fail(check, format!("trial {}", trial))
                        .note(e.to_string())
                        .note(format!("seed {}", cfg.seed)),
                );
                return report;
            }
        }
    }
    report.push(
        Entry::pass(check, format!("{} trials", cfg.trials))
            .note(format!("no counterexample in {} trials", cfg.trials))
            .note(format!("seed {}", cfg.seed)),
    );
    report
}

/// Evaluate both sides at `trials` random points and report the first disagreement.
pub fn identity_check(lhs: &Series, rhs: &Series, trials: usize, generators: u32, seed: u64) -> Report {
    let mut vars: Vec<GradedVariable> = lhs.variables().union(&rhs.variables()).cloned().collect();
    vars.sort();
    pointwise_check(
        "oracle-identity",
        &PointFn::series(lhs),
        &PointFn::series(rhs),
        &vars,
        &Assignment::new(),
        OracleConfig { trials, generators, seed },
    )
}

/// A nilpotent even value `Λ` with `Λ^{order+1} = 0` and `Λ^order ≠ 0`, built from generators
/// starting at `first`. Evaluating a series truncated at order `N` in `Λ` is then exact.
pub fn nilpotent_parameter(order: u32, first: u32) -> Multivector {
    let mut out = Multivector::zero();
    for k in 0..order {
        let a = first + 2 * k;
        out = out.add(&Multivector::blade((1 << a) | (1 << (a + 1)), Rational::one()));
    }
    out
}

fn relabel(r: Report, what: &str) -> Report {
    let mut out = Report::new();
    for mut e in r.entries {
        e.location = format!("{} ({})", what, e.location);
        out.push(e);
    }
    out
}

fn lambda_point(order: u32) -> Result<(PointFn, Assignment)> {
    let lam = order_parameter();
    let mut fixed = Assignment::new();
    fixed.insert(lam.clone(), nilpotent_parameter(order, 2))?;
    Ok((PointFn::series(&Series::var(&lam)), fixed))
}

fn bind(vars: &[GradedVariable], fns: &[PointFn]) -> Vec<(GradedVariable, PointFn)> {
    vars.iter().cloned().zip(fns.iter().cloned()).collect()
}

/// Check pointwise that a computed pullback solves its defining equations, with the order
/// parameter replaced by a nilpotent `Λ`, `Λ^{N+1} = 0`.
pub fn oracle_pullback_check(
    phi: &ThickMorphism,
    g: &Series,
    pb: &PullbackResult,
    cfg: OracleConfig,
) -> Result<Report> {
    let (lam, fixed) = lambda_point(pb.order)?;
    let xs = phi.source().vars();
    let ys = phi.target().vars();
    let y_fns: Vec<PointFn> = pb.graded_y().iter().map(PointFn::series).collect();
    let q_fns: Vec<PointFn> = pb.graded_q().iter().map(PointFn::series).collect();
    let gf = PointFn::series(g);
    let sf = PointFn::series(phi.generating_function());
    let mut report = Report::new();
    for (i, y) in ys.iter().enumerate() {
        let q_rhs = lam.mul(&gf.derivative(y).compose(bind(ys, &y_fns)));
        report.extend(relabel(
            pointwise_check("oracle-pullback", &q_fns[i], &q_rhs, xs, &fixed, cfg),
            &format!("q_{}", y),
        ));
        let q = &phi.momenta()[i];
        let y_rhs = sf.derivative(q).compose(bind(phi.momenta(), &q_fns)).scale(phi.y_sign(i));
        report
            .extend(relabel(pointwise_check("oracle-pullback", &y_fns[i], &y_rhs, xs, &fixed, cfg), &format!("{}", y)));
    }
    let mut f_rhs = lam.mul(&gf.compose(bind(ys, &y_fns))).add(&sf.compose(bind(phi.momenta(), &q_fns)));
    for (yf, qf) in y_fns.iter().zip(&q_fns) {
        f_rhs = f_rhs.add(&yf.mul(qf).scale(-Rational::one()));
    }
    let f_lhs = PointFn::series(pb.graded_f());
    report.extend(relabel(pointwise_check("oracle-pullback", &f_lhs, &f_rhs, xs, &fixed, cfg), "f"));
    Ok(report)
}

/// Pointwise Hamilton-Jacobi identity with every momentum scaled by a nilpotent `Λ`, which
/// truncates at degree `N` in the momenta.
pub fn oracle_hamilton_jacobi_check(
    phi: &ThickMorphism,
    h1: &Series,
    h2: &Series,
    order: u32,
    cfg: OracleConfig,
) -> Result<Report> {
    let (lam, fixed) = lambda_point(order)?;
    let xs = phi.source().vars();
    let qs = phi.momenta();
    let sf = PointFn::series(phi.generating_function());
    let p_bind: Vec<(GradedVariable, PointFn)> =
        phi.source_bundle().fiber().iter().cloned().zip(xs.iter().map(|x| sf.derivative(x))).collect();
    let y_bind: Vec<(GradedVariable, PointFn)> = phi
        .target()
        .vars()
        .iter()
        .enumerate()
        .map(|(i, y)| (y.clone(), sf.derivative(&qs[i]).scale(phi.y_sign(i))))
        .collect();
    let scaled: Vec<(GradedVariable, PointFn)> =
        qs.iter().map(|q| (q.clone(), lam.mul(&PointFn::series(&Series::var(q))))).collect();
    let lhs = PointFn::series(h1).compose(p_bind).compose(scaled.clone());
    let rhs = PointFn::series(h2).compose(y_bind).compose(scaled);
    let mut vars = xs.to_vec();
    vars.extend(qs.iter().cloned());
    Ok(relabel(pointwise_check("oracle-hamilton-jacobi", &lhs, &rhs, &vars, &fixed, cfg), &format!("order {}", order)))
}

/// Pointwise `H₁(x, ∂f/∂x) = H₂(y, q)` for the order-graded pullback of `g`.
pub fn oracle_intertwining_check(
    phi: &ThickMorphism,
    h1: &Series,
    h2: &Series,
    pb: &PullbackResult,
    cfg: OracleConfig,
) -> Result<Report> {
    let (_, fixed) = lambda_point(pb.order)?;
    let xs = phi.source().vars();
    let f = PointFn::series(pb.graded_f());
    let p_bind: Vec<(GradedVariable, PointFn)> =
        phi.source_bundle().fiber().iter().cloned().zip(xs.iter().map(|x| f.derivative(x))).collect();
    let y_fns: Vec<PointFn> = pb.graded_y().iter().map(PointFn::series).collect();
    let q_fns: Vec<PointFn> = pb.graded_q().iter().map(PointFn::series).collect();
    let mut rhs_bind = bind(phi.target().vars(), &y_fns);
    rhs_bind.extend(bind(phi.momenta(), &q_fns));
    let lhs = PointFn::series(h1).compose(p_bind);
    let rhs = PointFn::series(h2).compose(rhs_bind);
    Ok(relabel(pointwise_check("oracle-intertwining", &lhs, &rhs, xs, &fixed, cfg), &format!("order {}", pb.order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::rat;

    fn gens() -> (GradedVariable, GradedVariable, GradedVariable) {
        (GradedVariable::odd("xi1", 0, 0), GradedVariable::odd("xi2", 0, 1), GradedVariable::even("x", 0, 2))
    }

    #[test]
    fn evaluation_examples() {
        let (a, b, x) = gens();
        let g = GrassmannAlgebra::new(4).unwrap();
        let mut asg = Assignment::new();
        asg.insert(a.clone(), g.generator(1)).unwrap();
        asg.insert(b.clone(), g.generator(2)).unwrap();
        let ab = Series::var(&a) * Series::var(&b);
        assert_eq!(evaluate(&ab, &asg).unwrap(), Multivector::blade(0b110, rat(1)));
        let mut swapped = Assignment::new();
        swapped.insert(a.clone(), g.generator(2)).unwrap();
        swapped.insert(b.clone(), g.generator(1)).unwrap();
        assert_eq!(evaluate(&ab, &swapped).unwrap(), Multivector::blade(0b110, rat(-1)));
        let mut ex = Assignment::new();
        ex.insert(x.clone(), Multivector::scalar(rat(3)).add(&g.generator(1).mul(&g.generator(2)))).unwrap();
        let v = evaluate(&Series::var(&x).pow(2), &ex).unwrap();
        assert_eq!(v, Multivector::scalar(rat(9)).add(&Multivector::blade(0b110, rat(6))));
        assert!(matches!(evaluate(&Series::var(&a), &ex), Err(Error::MissingBinding(_))));
        assert!(matches!(ex.insert(a, g.generator(0).mul(&g.generator(1))), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn identity_check_examples() {
        let (a, b, _) = gens();
        let ab = Series::var(&a) * Series::var(&b);
        assert!(identity_check(&ab, &ab, 20, 4, 1).passed());
        let ba = Series::from_term(crate::graded::Term {
            coefficient: rat(1),
            monomial: ab.terms().next().unwrap().0.clone(),
        })
        .scale(&rat(-1));
        let r = identity_check(&ab, &ba, 20, 4, 1);
        assert!(!r.passed());
        assert!(r.failures().next().unwrap().notes.iter().any(|n| n == "seed 1"));
    }

    #[test]
    fn probe_derivatives_match_left_derivatives() {
        let (a, b, x) = gens();
        let s = Series::var(&a) * Series::var(&b) * Series::var(&x).pow(2) + Series::var(&b) * Series::var(&x);
        let vars = vec![a.clone(), b.clone(), x.clone()];
        for v in &vars {
            let sym = PointFn::series(&s.left_derivative(v));
            let probe = PointFn::series(&s).derivative(v);
            let r = pointwise_check(
                "d",
                &probe,
                &sym,
                &vars,
                &Assignment::new(),
                OracleConfig { trials: 30, generators: 6, seed: 7 },
            );
            assert!(r.passed(), "{}", r);
        }
        let second = PointFn::series(&s).derivative(&a).derivative(&b);
        let sym = PointFn::series(&s.left_derivative(&a).left_derivative(&b));
        assert!(pointwise_check("dd", &second, &sym, &vars, &Assignment::new(), OracleConfig::default()).passed());
    }

    #[test]
    fn nilpotent_parameter_order() {
        let l = nilpotent_parameter(3, 0);
        assert!(!l.pow(3).is_zero());
        assert!(l.pow(4).is_zero());
    }

    #[test]
    fn pullback_and_intertwining_pointwise() {
        use crate::geometry::{Chart, FiberKind};
        use crate::graded::{ratio, Weight};
        use crate::microformal::pullback;
        let m1 = Chart::new(0, &[("x", Parity::EVEN, 0)]).unwrap();
        let m2 = Chart::new(10, &[("y", Parity::EVEN, 0)]).unwrap();
        let t = CotangentChart::new(&m2, Weight(0), FiberKind::Even);
        let (x, q) = (Series::var(&m1.vars()[0]), Series::var(&t.fiber()[0]));
        let sg = &x * &q + q.pow(2).scale(&ratio(1, 2)) + (&x * &q.pow(3)).scale(&ratio(1, 6));
        let phi = ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, sg).unwrap();
        let g = Series::var(&m2.vars()[0]).pow(2);
        let pb = pullback(&phi, &g, 4).unwrap();
        let cfg = OracleConfig { trials: 40, ..OracleConfig::default() };
        let r = oracle_pullback_check(&phi, &g, &pb, cfg).unwrap();
        assert!(r.passed(), "{}", r);
        assert_eq!(r.entries.len(), 3);

        let lin =
            ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, &x * &q + q.pow(2).scale(&ratio(1, 2))).unwrap();
        let (p, q) = (Series::var(&lin.source_bundle().fiber()[0]), Series::var(&lin.momenta()[0]));
        assert!(oracle_hamilton_jacobi_check(&lin, &p, &q, 4, cfg).unwrap().passed());
        assert!(!oracle_hamilton_jacobi_check(&lin, &p, &q.scale(&rat(2)), 4, cfg).unwrap().passed());
        let pb = pullback(&lin, &g, 3).unwrap();
        assert!(oracle_intertwining_check(&lin, &p, &q, &pb, cfg).unwrap().passed());
        assert!(!oracle_intertwining_check(&lin, &p, &q.scale(&rat(2)), &pb, cfg).unwrap().passed());
    }
}
