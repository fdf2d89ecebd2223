//! Thick morphisms between graded charts and their nonlinear pullbacks.
//!
//! A thick morphism `Φ: M₁ ⇒ M₂` is framed by a generating function `S(x, q)` in the source
//! coordinates and the target momenta (antimomenta for the odd kind). The pullback of `g` on
//! `M₂` is `f(x) = g(y) + S(x, q) - y^i q_i` where
//!
//! ```text
//! q_i = ∂g/∂y^i (y),    y^i = (-1)^{ỹ q̃} ∂S/∂q_i (x, q).
//! ```
//!
//! The system is solved by iteration, graded by the number of factors of `g`: every occurrence of
//! `∂g` carries a bookkeeping parameter `λ` and the solution is truncated at `λ^N`. Each pass
//! fixes one more order, so `N + 1` passes suffice.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{Chart, CotangentChart, FiberKind};
use crate::graded::{sign_of, Bigrading, GradedVariable, Parity, Series, Weight};
use crate::homotopy::{check_master, MasterObject};
use crate::report::{Entry, Report, Status};

/// `S(x, q)` on `M₁ × (fiber of T*M₂[s])`, or with antimomenta for the odd kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickMorphism {
    source: CotangentChart,
    target: CotangentChart,
    generating: Series,
}

impl ThickMorphism {
    pub fn new(source: &Chart, target: &Chart, s: Weight, kind: FiberKind, generating: Series) -> Result<Self> {
        for v in target.vars() {
            if source.get(v.name()).is_some() {
                return Err(Error::ChartMismatch(format!("`{}` is a coordinate of both source and target", v)));
            }
        }
        let source = CotangentChart::new(source, s, kind);
        let target = CotangentChart::new(target, s, kind);
        for v in generating.variables() {
            if !source.base().vars().contains(&v) && !target.fiber().contains(&v) {
                return Err(Error::ChartMismatch(format!(
                    "generating function uses `{}`; only source coordinates and target momenta are allowed",
                    v
                )));
            }
        }
        Ok(ThickMorphism { source, target, generating })
    }

    /// The thick morphism over the ordinary identity between two charts with matching gradings.
    pub fn identity(source: &Chart, target: &Chart, s: Weight, kind: FiberKind) -> Result<Self> {
        if source.dim() != target.dim()
            || source.vars().iter().zip(target.vars()).any(|(a, b)| a.bigrading() != b.bigrading())
        {
            return Err(Error::ChartMismatch("identity needs charts with matching gradings".into()));
        }
        let t = CotangentChart::new(target, s, kind);
        let mut sgen = Series::zero();
        for (x, q) in source.vars().iter().zip(t.fiber()) {
            sgen = sgen + Series::var(x) * Series::var(q);
        }
        ThickMorphism::new(source, target, s, kind, sgen)
    }

    pub fn source(&self) -> &Chart {
        self.source.base()
    }

    pub fn target(&self) -> &Chart {
        self.target.base()
    }

    /// `T*M₁[s]` (or `ΠT*M₁[s]`), the home of `H₁`.
    pub fn source_bundle(&self) -> &CotangentChart {
        &self.source
    }

    /// `T*M₂[s]` (or `ΠT*M₂[s]`): its fiber variables are the `q` of the generating function and its
    /// functions are the home of `H₂`.
    pub fn target_bundle(&self) -> &CotangentChart {
        &self.target
    }

    pub fn momenta(&self) -> &[GradedVariable] {
        self.target.fiber()
    }

    pub fn shift(&self) -> Weight {
        self.source.shift()
    }

    pub fn kind(&self) -> FiberKind {
        self.source.kind()
    }

    pub fn generating_function(&self) -> &Series {
        &self.generating
    }

    /// Parity required of `S` and of admissible `g`.
    pub fn expected_parity(&self) -> Parity {
        self.kind().kappa()
    }

    /// Sign relating `y^i` to `∂S/∂q_i`.
    pub fn y_sign(&self, i: usize) -> crate::graded::Rational {
        let y = &self.target.base().vars()[i];
        sign_of(y.parity().times(self.momenta()[i].parity()))
    }

    /// `(-1)^{ỹ q̃} ∂S/∂q_i` as a function of `(x, q)`.
    fn y_of_q(&self) -> Vec<Series> {
        (0..self.target.base().dim())
            .map(|i| self.generating.left_derivative(&self.momenta()[i]).scale(&self.y_sign(i)))
            .collect()
    }

    /// `S⁰(x)`, the part of `S` free of momenta.
    pub fn s0(&self) -> Series {
        self.generating.fiber_component(0)
    }

    /// The quadratic part `½ S^{ij}(x) q_j q_i`.
    pub fn s2(&self) -> Series {
        self.generating.fiber_component(2)
    }
}

/// The ordinary map `φ` read off the linear part of `S`.
pub fn support(phi: &ThickMorphism) -> Vec<Series> {
    let lin = phi.generating.fiber_component(1);
    (0..phi.target().dim()).map(|i| lin.left_derivative(&phi.momenta()[i]).scale(&phi.y_sign(i))).collect()
}

/// Parity and weight of `S`, its support, and the weights of its partial derivatives.
pub fn validate_thick(phi: &ThickMorphism) -> Report {
    let mut r = Report::new();
    let s = phi.shift();
    let want = Bigrading::new(phi.expected_parity(), s);
    let sg = &phi.generating;
    if sg.is_zero() {
        r.push(Entry::pass("thick-grading", "S").note("S = 0"));
    } else {
        match sg.bigrade() {
            Ok(g) if g == want => r.push(Entry::pass("thick-grading", "S").expected(want).actual(g)),
            Ok(g) => {
                let mut e = Entry::fail("thick-grading", "S").expected(want).actual(g);
                if g.parity != want.parity {
                    e = e.note(format!("S must be {} for the {} kind", want.parity, kind_name(phi.kind())));
                }
                r.push(e)
            }
            Err(e) => {
                let [even, odd] = sg.parity_parts();
                let mut entry = Entry::fail("thick-grading", "S").expected(want).note(e.to_string());
                let wrong = if want.parity.is_even() { odd } else { even };
                if !wrong.is_zero() {
                    entry = entry.note(format!("terms of the wrong parity: {}", wrong));
                }
                r.push(entry)
            }
        }
    }
    r.push(Entry::info("thick-s0", "S0").actual(phi.s0()));
    for (y, f) in phi.target().vars().iter().zip(support(phi)) {
        r.push(Entry::info("thick-support", format!("phi^{}", y)).actual(f));
    }
    let mut derivs = 0;
    let mut bad = Vec::new();
    for x in phi.source().vars() {
        let d = sg.left_derivative(x);
        derivs += 1;
        if !d.is_zero() && d.bigrade().map(|g| g.weight) != Ok(s - x.weight()) {
            bad.push(format!("dS/d{} is not of weight {}", x, s - x.weight()));
        }
    }
    for (y, q) in phi.target().vars().iter().zip(phi.momenta()) {
        let d = sg.left_derivative(q);
        derivs += 1;
        if !d.is_zero() && d.bigrade().map(|g| g.weight) != Ok(y.weight()) {
            bad.push(format!("dS/d{} is not of weight {}", q, y.weight()));
        }
    }
    if bad.is_empty() {
        r.push(Entry::pass("thick-derivative-weights", format!("{} partials", derivs)));
    } else {
        for b in bad {
            r.push(Entry::fail("thick-derivative-weights", b));
        }
    }
    r
}

fn kind_name(k: FiberKind) -> &'static str {
    match k {
        FiberKind::Even => "even",
        FiberKind::Odd => "odd",
    }
}

/// The bookkeeping parameter counting factors of `∂g`. Its name cannot be produced by the parser.
pub fn order_parameter() -> GradedVariable {
    lambda()
}

fn lambda() -> GradedVariable {
    GradedVariable::new("#g", Parity::EVEN, Weight(0), 1, u32::MAX)
}

/// Solution of the pullback equations, with `λ` set to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackResult {
    pub f: Series,
    pub y: Vec<Series>,
    pub q: Vec<Series>,
    pub order: u32,
    pub iterations: usize,
    graded_f: Series,
    graded_y: Vec<Series>,
    graded_q: Vec<Series>,
}

impl PullbackResult {
    /// `Φ*(λg)` before setting `λ = 1`, with `λ` = [`order_parameter`].
    pub fn graded_f(&self) -> &Series {
        &self.graded_f
    }

    pub fn graded_y(&self) -> &[Series] {
        &self.graded_y
    }

    pub fn graded_q(&self) -> &[Series] {
        &self.graded_q
    }

    /// The terms of `Φ*g` with at most `m` factors of `g`.
    pub fn through_order(&self, m: u32) -> Series {
        at_unit(&self.graded_f.truncate(m))
    }
}

fn at_unit(s: &Series) -> Series {
    let mut b = HashMap::new();
    b.insert(lambda(), Series::one());
    s.substitute_unchecked(&b).exact()
}

fn check_admissible(phi: &ThickMorphism, g: &Series) -> Result<()> {
    for v in g.variables() {
        if !phi.target().vars().contains(&v) {
            return Err(Error::ChartMismatch(format!("`{}` is not a target coordinate", v)));
        }
    }
    if !g.is_zero() {
        g.expect_bigrade(Bigrading::new(phi.expected_parity(), phi.shift()), "pulled-back function")?;
    }
    Ok(())
}

fn require_valid(phi: &ThickMorphism) -> Result<()> {
    let r = validate_thick(phi);
    if let Some(e) = r.failures().next() {
        return Err(Error::GradingMismatch(format!("invalid thick morphism: {} ({})", e.location, e.notes.join("; "))));
    }
    Ok(())
}

/// Pullback `Φ*g` to order `N` in `g`.
pub fn pullback(phi: &ThickMorphism, g: &Series, order: u32) -> Result<PullbackResult> {
    require_valid(phi)?;
    check_admissible(phi, g)?;
    let lam = Series::var(&lambda());
    let ys = phi.target().vars();
    let dg: Vec<Series> = ys.iter().map(|y| g.left_derivative(y)).collect();
    let y_of_q = phi.y_of_q();
    let mut y: Vec<Series> = support(phi);
    let mut q: Vec<Series>;
    let max_iter = order as usize + 2;
    let mut iterations = 0;
    loop {
        if iterations > max_iter {
            return Err(Error::NonConvergent(iterations));
        }
        iterations += 1;
        let at_y: HashMap<GradedVariable, Series> = ys.iter().cloned().zip(y.iter().cloned()).collect();
        q = dg.iter().map(|d| (&lam * &d.substitute_unchecked(&at_y)).truncate(order)).collect();
        let at_q: HashMap<GradedVariable, Series> = phi.momenta().iter().cloned().zip(q.iter().cloned()).collect();
        let next: Vec<Series> = y_of_q.iter().map(|s| s.substitute_unchecked(&at_q).truncate(order)).collect();
        if next == y {
            break;
        }
        y = next;
    }
    let at_y: HashMap<GradedVariable, Series> = ys.iter().cloned().zip(y.iter().cloned()).collect();
    let at_q: HashMap<GradedVariable, Series> = phi.momenta().iter().cloned().zip(q.iter().cloned()).collect();
    // the pullback of λg; setting λ = 1 afterwards gives Φ*g
    let mut f = (&lam * &g.substitute_unchecked(&at_y)).truncate(order);
    f = f + phi.generating.substitute_unchecked(&at_q).truncate(order);
    for (yi, qi) in y.iter().zip(&q) {
        f = f - (yi * qi).truncate(order);
    }
    Ok(PullbackResult {
        f: at_unit(&f),
        y: y.iter().map(at_unit).collect(),
        q: q.iter().map(at_unit).collect(),
        order,
        iterations,
        graded_f: f,
        graded_y: y,
        graded_q: q,
    })
}

/// Pullback along an odd thick morphism; `g` must be odd.
pub fn odd_pullback(phi: &ThickMorphism, g: &Series, order: u32) -> Result<PullbackResult> {
    if phi.kind() != FiberKind::Odd {
        return Err(Error::GradingMismatch("odd_pullback needs a thick morphism of odd kind".into()));
    }
    pullback(phi, g, order)
}

/// `S⁰ + g(φ) + ½ S^{ij} ∂_j g(φ) ∂_i g(φ)` through `terms` factors of `g`, computed directly.
pub fn pullback_expansion_oracle(phi: &ThickMorphism, g: &Series, terms: u32) -> Result<Series> {
    check_admissible(phi, g)?;
    let ys = phi.target().vars();
    let phi_map: HashMap<GradedVariable, Series> = ys.iter().cloned().zip(support(phi)).collect();
    let mut f = phi.s0();
    if terms >= 1 {
        f = f + g.substitute_unchecked(&phi_map);
    }
    if terms >= 2 {
        let q0: HashMap<GradedVariable, Series> = phi
            .momenta()
            .iter()
            .cloned()
            .zip(ys.iter().map(|y| g.left_derivative(y).substitute_unchecked(&phi_map)))
            .collect();
        f = f + phi.s2().substitute_unchecked(&q0);
    }
    Ok(f.exact())
}

fn audit_hamiltonian(r: &mut Report, name: &str, h: &Series, ct: &CotangentChart, k: Weight) {
    let want = Weight(2) - k;
    if !h.is_zero() {
        match h.bigrade() {
            Ok(g) if g.weight == want => {}
            Ok(g) => r.push(
                Entry::info("hj-weight-audit", name)
                    .expected(want)
                    .actual(g.weight)
                    .note("not of weight 2-k; the identity is still checked"),
            ),
            Err(e) => r.push(Entry::info("hj-weight-audit", name).note(e.to_string())),
        }
    }
    match check_master(&MasterObject::Hamiltonian(h.clone(), ct.clone())) {
        Ok(m) => {
            for e in m.entries {
                if e.status == Status::Fail {
                    r.push(Entry::info("hj-master-audit", name).note(format!("{} {}", e.check, e.location)));
                }
            }
        }
        Err(e) => r.push(Entry::info("hj-master-audit", name).note(e.to_string())),
    }
}

fn require_shift(phi: &ThickMorphism, k: Weight) -> Result<()> {
    if phi.shift() != Weight(1) - k {
        return Err(Error::GradingMismatch(format!(
            "a {}-shifted bracket structure needs a thick morphism shifted by {}, not {}",
            k,
            Weight(1) - k,
            phi.shift()
        )));
    }
    Ok(())
}

fn check_on(ct: &CotangentChart, h: &Series, what: &str) -> Result<()> {
    for v in h.variables() {
        if !ct.vars().contains(&v) {
            return Err(Error::ChartMismatch(format!("{} uses `{}`, which is not on its bundle", what, v)));
        }
    }
    Ok(())
}

/// `H₁(x, ∂S/∂x) - H₂((-1)^{ỹq̃} ∂S/∂q, q)`, truncated at degree `N` in `q`.
pub fn hamilton_jacobi_residual(phi: &ThickMorphism, h1: &Series, h2: &Series, order: u32) -> Result<Series> {
    check_on(phi.source_bundle(), h1, "H1")?;
    check_on(phi.target_bundle(), h2, "H2")?;
    let sg = &phi.generating;
    let p_sub: HashMap<GradedVariable, Series> = phi
        .source()
        .vars()
        .iter()
        .zip(phi.source_bundle().fiber())
        .map(|(x, p)| (p.clone(), sg.left_derivative(x)))
        .collect();
    let y_sub: HashMap<GradedVariable, Series> = phi.target().vars().iter().cloned().zip(phi.y_of_q()).collect();
    let lhs = h1.substitute(&p_sub)?;
    let rhs = h2.substitute(&y_sub)?;
    Ok((lhs - rhs).truncate(order).exact())
}

pub fn check_hamilton_jacobi(phi: &ThickMorphism, h1: &Series, h2: &Series, k: Weight, order: u32) -> Result<Report> {
    require_shift(phi, k)?;
    let mut r = Report::new();
    audit_hamiltonian(&mut r, "H1", h1, phi.source_bundle(), k);
    audit_hamiltonian(&mut r, "H2", h2, phi.target_bundle(), k);
    let res = hamilton_jacobi_residual(phi, h1, h2, order)?;
    let loc = format!("order {}", order);
    r.push(if res.is_zero() {
        Entry::pass("hamilton-jacobi", loc)
    } else {
        Entry::fail("hamilton-jacobi", loc).expected("0").residual(&res)
    });
    Ok(r)
}

/// Residual of `H₁(x, ∂f/∂x) = H₂(y(x), q(x))` for `f = Φ*g`, plus the Legendre identity
/// `∂f/∂x = ∂S/∂x (x, q(x))`. Both are compared through order `N` in `g`.
pub fn check_intertwining(
    phi: &ThickMorphism,
    h1: &Series,
    h2: &Series,
    g: &Series,
    k: Weight,
    order: u32,
) -> Result<Report> {
    require_shift(phi, k)?;
    check_on(phi.source_bundle(), h1, "H1")?;
    check_on(phi.target_bundle(), h2, "H2")?;
    let pb = pullback(phi, g, order)?;
    let mut r = Report::new();
    audit_hamiltonian(&mut r, "H1", h1, phi.source_bundle(), k);
    audit_hamiltonian(&mut r, "H2", h2, phi.target_bundle(), k);
    let xs = phi.source().vars();
    let df: Vec<Series> = xs.iter().map(|x| pb.graded_f.left_derivative(x)).collect();
    let p_sub: HashMap<GradedVariable, Series> =
        phi.source_bundle().fiber().iter().cloned().zip(df.iter().cloned()).collect();
    let mut h2_sub: HashMap<GradedVariable, Series> =
        phi.target().vars().iter().cloned().zip(pb.graded_y.iter().cloned()).collect();
    h2_sub.extend(phi.momenta().iter().cloned().zip(pb.graded_q.iter().cloned()));
    let lhs = h1.substitute_unchecked(&p_sub).truncate(order);
    let rhs = h2.substitute_unchecked(&h2_sub).truncate(order);
    let res = at_unit(&(lhs - rhs));
    let loc = format!("order {}", order);
    r.push(if res.is_zero() {
        Entry::pass("intertwining", loc.clone())
    } else {
        Entry::fail("intertwining", loc.clone()).expected("0").residual(&res)
    });

    let at_q: HashMap<GradedVariable, Series> =
        phi.momenta().iter().cloned().zip(pb.graded_q.iter().cloned()).collect();
    let mut failures = Vec::new();
    for (x, d) in xs.iter().zip(&df) {
        let want = phi.generating.left_derivative(x).substitute_unchecked(&at_q).truncate(order);
        let diff = at_unit(&(d - &want));
        if !diff.is_zero() {
            failures.push(Entry::fail("legendre", format!("{} d/d{}", loc, x)).residual(diff));
        }
    }
    if failures.is_empty() {
        r.push(Entry::pass("legendre", loc));
    }
    for e in failures {
        r.push(e);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{rat, ratio};

    const E: Parity = Parity::EVEN;
    const O: Parity = Parity::ODD;

    fn lines() -> (Chart, Chart) {
        (Chart::new(0, &[("x", E, 0)]).unwrap(), Chart::new(10, &[("y", E, 0)]).unwrap())
    }

    fn quadratic(a: i64) -> ThickMorphism {
        let (m1, m2) = lines();
        let t = CotangentChart::new(&m2, Weight(0), FiberKind::Even);
        let (x, q) = (Series::var(&m1.vars()[0]), Series::var(&t.fiber()[0]));
        let sg = &x * &q + q.pow(2).scale(&ratio(a, 2));
        ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, sg).unwrap()
    }

    #[test]
    fn closed_form_quadratic() {
        let phi = quadratic(1);
        let (x, y) = (Series::var(&phi.source().vars()[0]), Series::var(&phi.target().vars()[0]));
        let c = ratio(3, 2);
        let g = y.scale(&c);
        let pb = pullback(&phi, &g, 4).unwrap();
        assert_eq!(pb.f, x.scale(&c) + Series::constant(&c * &c / rat(2)));
        assert_eq!(pb.q[0], Series::constant(c.clone()));
        assert_eq!(pb.y[0], &x + &Series::constant(c.clone()));
        assert_eq!(pullback_expansion_oracle(&phi, &g, 2).unwrap(), pb.f);
    }

    #[test]
    fn identity_and_support() {
        let (m1, m2) = lines();
        let id = ThickMorphism::identity(&m1, &m2, Weight(0), FiberKind::Even).unwrap();
        let y = Series::var(&m2.vars()[0]);
        let x = Series::var(&m1.vars()[0]);
        let g = y.pow(3) + y.scale(&rat(2));
        assert_eq!(pullback(&id, &g, 4).unwrap().f, x.pow(3) + x.scale(&rat(2)));
        assert_eq!(support(&quadratic(1)), vec![x.clone()]);
        let t = CotangentChart::new(&m2, Weight(0), FiberKind::Even);
        let q = Series::var(&t.fiber()[0]);
        let s0 = x.pow(2);
        let phi = ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, &s0 + &(x.pow(2) * q.clone())).unwrap();
        assert_eq!(support(&phi), vec![x.pow(2)]);
        assert_eq!(pullback(&phi, &Series::zero(), 4).unwrap().f, s0);
        let phi = ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, q.pow(2)).unwrap();
        assert!(support(&phi)[0].is_zero());
    }

    #[test]
    fn validation() {
        let m1 = Chart::new(0, &[("x", E, 0)]).unwrap();
        let m2 = Chart::new(10, &[("y", E, 1)]).unwrap();
        let t = CotangentChart::new(&m2, Weight(0), FiberKind::Even);
        let q = Series::var(&t.fiber()[0]);
        let phi = ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, q).unwrap();
        assert!(!validate_thick(&phi).passed());
        assert!(matches!(pullback(&phi, &Series::zero(), 2), Err(Error::GradingMismatch(_))));
        let m1 = Chart::new(0, &[("x", E, 0), ("t", O, 0)]).unwrap();
        let (m1_, m2) = lines();
        let _ = m1_;
        let phi = ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, Series::var(&m1.vars()[1])).unwrap();
        let r = validate_thick(&phi);
        assert!(r.failures().any(|e| e.notes.iter().any(|n| n.contains("must be even"))));
    }

    #[test]
    fn hamilton_jacobi_examples() {
        let phi = quadratic(1);
        let p = Series::var(&phi.source_bundle().fiber()[0]);
        let q = Series::var(&phi.momenta()[0]);
        let r = check_hamilton_jacobi(&phi, &p, &q, Weight(1), 4).unwrap();
        assert!(r.passed(), "{}", r);
        let r = check_hamilton_jacobi(&phi, &p, &q.scale(&rat(2)), Weight(1), 4).unwrap();
        let f = r.failures().next().unwrap();
        assert_eq!(f.residual.as_deref(), Some("-p_y"));
        assert!(matches!(check_hamilton_jacobi(&phi, &p, &q, Weight(0), 4), Err(Error::GradingMismatch(_))));
        let y = Series::var(&phi.target().vars()[0]);
        let r = check_intertwining(&phi, &p, &q, &y.scale(&rat(5)), Weight(1), 4).unwrap();
        assert!(r.passed(), "{}", r);
        let r = check_intertwining(&phi, &p, &q.scale(&rat(2)), &y.scale(&rat(5)), Weight(1), 4).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn odd_kind() {
        let m1 = Chart::new(0, &[("x", E, 0)]).unwrap();
        let m2 = Chart::new(10, &[("y", E, 0)]).unwrap();
        let id = ThickMorphism::identity(&m1, &m2, Weight(1), FiberKind::Odd).unwrap();
        let ys = Series::var(&id.momenta()[0]);
        assert!(ys.bigrade().unwrap().parity.is_odd());
        assert!(validate_thick(&id).passed());
        let g = Series::zero();
        assert!(odd_pullback(&id, &g, 3).unwrap().f.is_zero());
        assert!(matches!(odd_pullback(&quadratic(1), &g, 3), Err(Error::GradingMismatch(_))));
    }
}
