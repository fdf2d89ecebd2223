use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{bracket_raw, restrict_to_base, Chart, CotangentChart, FiberKind, VectorField};
use crate::graded::{sign_of, Bigrading, Parity, Rational, Series};

use super::space::{constant_field, GradedSpace, GradedVector, ShiftSignature};

/// A sequence of multilinear brackets `ℓ_0, ℓ_1, …` on some space of elements.
pub trait BracketFamily {
    type Elem: Clone;

    fn signature(&self) -> ShiftSignature;
    fn arity_max(&self) -> usize;
    fn bracket(&self, args: &[Self::Elem]) -> Result<Self::Elem>;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `acc += c * x`.
    fn axpy(&self, acc: &mut Self::Elem, c: &Rational, x: &Self::Elem);
    /// Bigrading of a nonzero homogeneous element, `None` for zero.
    fn grading(&self, x: &Self::Elem) -> Result<Option<Bigrading>>;
    /// Named homogeneous elements used to enumerate test tuples.
    fn generators(&self) -> Vec<(String, Self::Elem)>;
    fn show(&self, x: &Self::Elem) -> String;
}

/// Swap sign for adjacent arguments of parities `a`, `b` in a graded-(anti)symmetric bracket.
pub(crate) fn swap_sign(epsilon: Parity, a: Parity, b: Parity) -> Parity {
    a.times(b) + epsilon.flip()
}

/// Sort a basis tuple, returning the sign picked up, or `None` if symmetry forces the value to vanish.
pub(crate) fn canonical_order(tuple: &[usize], space: &GradedSpace, epsilon: Parity) -> Option<(Parity, Vec<usize>)> {
    let mut t = tuple.to_vec();
    let mut sign = Parity::EVEN;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            sign += swap_sign(epsilon, space.parity(t[j - 1]), space.parity(t[j]));
            t.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in t.windows(2) {
        if w[0] == w[1] && swap_sign(epsilon, space.parity(w[0]), space.parity(w[0])).is_odd() {
            return None;
        }
    }
    Some((sign, t))
}

/// Expand a multilinear function of vectors into basis tuples.
fn expand_multilinear(
    args: &[GradedVector],
    mut f: impl FnMut(&[usize]) -> Result<GradedVector>,
) -> Result<GradedVector> {
    let mut out = GradedVector::zero();
    if args.iter().any(GradedVector::is_zero) {
        return Ok(out);
    }
    let supports: Vec<Vec<(usize, Rational)>> =
        args.iter().map(|a| a.entries().map(|(i, c)| (i, c.clone())).collect()).collect();
    let mut idx = vec![0usize; args.len()];
    loop {
        let tuple: Vec<usize> = idx.iter().zip(&supports).map(|(k, s)| s[*k].0).collect();
        let mut coeff = Rational::one();
        for (k, s) in idx.iter().zip(&supports) {
            coeff *= &s[*k].1;
        }
        let v = f(&tuple)?;
        out.axpy(&coeff, &v);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < supports[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn vector_generators(space: &GradedSpace) -> Vec<(String, GradedVector)> {
    (0..space.dim()).map(|i| (space.element(i).name.clone(), GradedVector::basis(i))).collect()
}

/// Iterated commutators of `x` with constant fields, read off at the origin and decoded as a vector.
fn derived_basis_value(
    x: &VectorField,
    tuple: &[usize],
    space: &GradedSpace,
    sig: ShiftSignature,
    consts: &[VectorField],
) -> Result<GradedVector> {
    let mut acc = x.clone();
    for &j in tuple {
        acc = acc.commutator(&consts[j])?;
        if acc.is_zero() {
            return Ok(GradedVector::zero());
        }
    }
    let n = tuple.len();
    let mut prefactor = Parity::EVEN;
    if sig.epsilon.is_even() {
        for (j, &t) in tuple.iter().enumerate() {
            prefactor += space.parity(t).times(Parity::new((n - 1 - j) as i64));
        }
    }
    let consts = acc.constant_part();
    Ok(GradedVector::from_pairs(consts.into_iter().enumerate().map(|(a, c)| {
        let c = if sig.epsilon.is_even() { c * sign_of(space.parity(a)) } else { c };
        (a, c * sign_of(prefactor))
    })))
}

fn basis_constant_fields(space: &GradedSpace, sig: ShiftSignature, chart: &Chart) -> Result<Vec<VectorField>> {
    (0..space.dim()).map(|i| constant_field(&GradedVector::basis(i), space, sig, chart)).collect()
}

/// The derived brackets of a homological field on `Π^{1+ε}V[1-k]`, memoized by basis tuple.
pub struct QBrackets {
    q: VectorField,
    space: GradedSpace,
    sig: ShiftSignature,
    arity_max: usize,
    consts: Vec<VectorField>,
    cache: Mutex<HashMap<Vec<usize>, GradedVector>>,
}

impl QBrackets {
    pub fn new(q: VectorField, space: GradedSpace, sig: ShiftSignature, arity_max: usize) -> Result<Self> {
        let chart = Chart::from_vars(q.coords().to_vec())?;
        let consts = basis_constant_fields(&space, sig, &chart)?;
        if !q.is_homological() {
            let r = q.self_commutator();
            return Err(Error::NotHomological(if q.parity().is_even() {
                format!("{} is even", q)
            } else {
                format!("[Q,Q] = {}", r)
            }));
        }
        Ok(QBrackets { q, space, sig, arity_max, consts, cache: Mutex::new(HashMap::new()) })
    }

    pub fn field(&self) -> &VectorField {
        &self.q
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn basis_bracket(&self, tuple: &[usize]) -> Result<GradedVector> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(tuple) {
            return Ok(v.clone());
        }
        let v = derived_basis_value(&self.q, tuple, &self.space, self.sig, &self.consts)?;
        self.cache.lock().expect("cache lock").insert(tuple.to_vec(), v.clone());
        Ok(v)
    }
}

impl BracketFamily for QBrackets {
    type Elem = GradedVector;

    fn signature(&self) -> ShiftSignature {
        self.sig
    }
    fn arity_max(&self) -> usize {
        self.arity_max
    }
    fn bracket(&self, args: &[GradedVector]) -> Result<GradedVector> {
        expand_multilinear(args, |t| self.basis_bracket(t))
    }
    fn zero(&self) -> GradedVector {
        GradedVector::zero()
    }
    fn is_zero(&self, x: &GradedVector) -> bool {
        x.is_zero()
    }
    fn axpy(&self, acc: &mut GradedVector, c: &Rational, x: &GradedVector) {
        acc.axpy(c, x)
    }
    fn grading(&self, x: &GradedVector) -> Result<Option<Bigrading>> {
        self.space.grading_of(x)
    }
    fn generators(&self) -> Vec<(String, GradedVector)> {
        vector_generators(&self.space)
    }
    fn show(&self, x: &GradedVector) -> String {
        self.space.show(x)
    }
}

/// `[u_1, …, u_n]` from `Q` for a single tuple of input vectors.
pub fn derived_bracket_q(
    q: &VectorField,
    inputs: &[GradedVector],
    space: &GradedSpace,
    sig: ShiftSignature,
) -> Result<GradedVector> {
    QBrackets::new(q.clone(), space.clone(), sig, inputs.len())?.bracket(inputs)
}

/// Brackets given by a table of structure constants, stored on sorted basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitBrackets {
    space: GradedSpace,
    sig: ShiftSignature,
    arity_max: usize,
    table: BTreeMap<Vec<usize>, GradedVector>,
    warnings: Vec<String>,
}

impl ExplicitBrackets {
    /// Load `(tuple, value)` entries in any argument order. Entries related by symmetry are averaged;
    /// a warning is recorded whenever that changes a value.
    pub fn from_entries(
        space: GradedSpace,
        sig: ShiftSignature,
        arity_max: usize,
        entries: Vec<(Vec<usize>, GradedVector)>,
    ) -> Result<Self> {
        let mut groups: BTreeMap<Vec<usize>, Vec<(Vec<usize>, GradedVector)>> = BTreeMap::new();
        let mut warnings = Vec::new();
        for (tuple, value) in entries {
            if let Some(i) = tuple.iter().chain(value.support().collect::<Vec<_>>().iter()).find(|i| **i >= space.dim())
            {
                return Err(Error::ChartMismatch(format!("basis index {} out of range", i)));
            }
            if tuple.len() > arity_max {
                return Err(Error::GradingMismatch(format!(
                    "bracket of arity {} exceeds the bound {}",
                    tuple.len(),
                    arity_max
                )));
            }
            space.grading_of(&value)?;
            let label = show_tuple(&space, &tuple);
            match canonical_order(&tuple, &space, sig.epsilon) {
                None => {
                    if !value.is_zero() {
                        warnings.push(format!(
                            "{} must vanish by symmetry; value {} dropped",
                            label,
                            space.show(&value)
                        ));
                    }
                }
                Some((sign, sorted)) => {
                    groups.entry(sorted).or_default().push((tuple, value.scale(&sign_of(sign))));
                }
            }
        }
        let mut table = BTreeMap::new();
        for (key, vals) in groups {
            let mut sum = GradedVector::zero();
            for (_, v) in &vals {
                sum.axpy(&Rational::one(), v);
            }
            let avg = sum.scale(&Rational::new(1.into(), (vals.len() as i64).into()));
            if vals.iter().any(|(_, v)| *v != avg) {
                warnings.push(format!(
                    "symmetrization changed {} to {}",
                    vals.iter().map(|(t, _)| show_tuple(&space, t)).collect::<Vec<_>>().join(", "),
                    space.show(&avg)
                ));
            }
            if !avg.is_zero() {
                table.insert(key, avg);
            }
        }
        Ok(ExplicitBrackets { space, sig, arity_max, table, warnings })
    }

    /// Record every bracket of `fam` on sorted basis tuples up to `arity`.
    pub fn tabulate<F: BracketFamily<Elem = GradedVector>>(fam: &F, space: &GradedSpace, arity: usize) -> Result<Self> {
        let mut table = BTreeMap::new();
        for n in 0..=arity {
            for t in nondecreasing_tuples(space.dim(), n) {
                let args: Vec<GradedVector> = t.iter().map(|i| GradedVector::basis(*i)).collect();
                let v = fam.bracket(&args)?;
                if !v.is_zero() {
                    table.insert(t, v);
                }
            }
        }
        Ok(ExplicitBrackets {
            space: space.clone(),
            sig: fam.signature(),
            arity_max: arity,
            table,
            warnings: Vec::new(),
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn table(&self) -> &BTreeMap<Vec<usize>, GradedVector> {
        &self.table
    }

    pub fn basis_bracket(&self, tuple: &[usize]) -> GradedVector {
        match canonical_order(tuple, &self.space, self.sig.epsilon) {
            None => GradedVector::zero(),
            Some((sign, sorted)) => match self.table.get(&sorted) {
                Some(v) => v.scale(&sign_of(sign)),
                None => GradedVector::zero(),
            },
        }
    }

    /// Transport to `ΠL`: `[Πx_1,…,Πx_n] = (-1)^{Σ x̃_j (n-j)} Π[x_1,…,x_n]`, the exponent read on the side
    /// with ε = 0. Applying it twice returns the original family.
    pub fn parity_reverse(&self) -> ExplicitBrackets {
        let target = self.space.parity_reversed();
        let even_side = if self.sig.epsilon.is_even() { &self.space } else { &target };
        let table = self
            .table
            .iter()
            .map(|(t, v)| {
                let n = t.len();
                let mut e = Parity::EVEN;
                for (j, &i) in t.iter().enumerate() {
                    e += even_side.parity(i).times(Parity::new((n - 1 - j) as i64));
                }
                (t.clone(), v.scale(&sign_of(e)))
            })
            .collect();
        ExplicitBrackets {
            space: target,
            sig: ShiftSignature { epsilon: self.sig.epsilon.flip(), k: self.sig.k },
            arity_max: self.arity_max,
            table,
            warnings: Vec::new(),
        }
    }

    /// The formal field `Q` on `Π^{1+ε}V[1-k]` whose derived brackets are this table.
    pub fn to_vector_field(&self) -> Result<VectorField> {
        let chart = self.space.coordinate_chart(self.sig, 0);
        let consts = basis_constant_fields(&self.space, self.sig, &chart)?;
        let vars = chart.vars();
        let mut q = VectorField::zero(vars, Bigrading::new(Parity::ODD, crate::graded::Weight(1)));
        for (key, value) in &self.table {
            let coords: Vec<_> = key.iter().map(|i| vars[*i].clone()).collect();
            let m = Series::product_of(&coords);
            for (a, c) in value.entries() {
                let mut comps = vec![Series::zero(); vars.len()];
                comps[a] = m.clone();
                let piece = VectorField::new(vars, comps)?;
                let lambda = derived_basis_value(&piece, key, &self.space, self.sig, &consts)?.coeff(a);
                if lambda.is_zero() {
                    return Err(Error::GradingMismatch(format!(
                        "{} has no monomial representative",
                        show_tuple(&self.space, key)
                    )));
                }
                q = q.add(&piece.scale(&(c / lambda)))?;
            }
        }
        Ok(q)
    }
}

impl BracketFamily for ExplicitBrackets {
    type Elem = GradedVector;

    fn signature(&self) -> ShiftSignature {
        self.sig
    }
    fn arity_max(&self) -> usize {
        self.arity_max
    }
    fn bracket(&self, args: &[GradedVector]) -> Result<GradedVector> {
        if args.len() > self.arity_max {
            return Ok(GradedVector::zero());
        }
        expand_multilinear(args, |t| Ok(self.basis_bracket(t)))
    }
    fn zero(&self) -> GradedVector {
        GradedVector::zero()
    }
    fn is_zero(&self, x: &GradedVector) -> bool {
        x.is_zero()
    }
    fn axpy(&self, acc: &mut GradedVector, c: &Rational, x: &GradedVector) {
        acc.axpy(c, x)
    }
    fn grading(&self, x: &GradedVector) -> Result<Option<Bigrading>> {
        self.space.grading_of(x)
    }
    fn generators(&self) -> Vec<(String, GradedVector)> {
        vector_generators(&self.space)
    }
    fn show(&self, x: &GradedVector) -> String {
        self.space.show(x)
    }
}

/// Derived brackets `{f_1,…,f_n} = (…(H,f_1),…,f_n)|_M` of a function on a shifted (anti)cotangent bundle.
///
/// On `T*M[1-k]` the brackets are odd (ε = 1); on `ΠT*M[1-k]` they alternate (ε = 0) and carry the
/// prefactor `(-1)^{Σ f̃_i (n-i)}`.
#[derive(Clone, Debug)]
pub struct HamiltonianBrackets {
    h: Series,
    ct: CotangentChart,
    sig: ShiftSignature,
    arity_max: usize,
    tests: Vec<(String, Series)>,
}

impl HamiltonianBrackets {
    pub fn new(h: Series, ct: CotangentChart, arity_max: usize) -> Result<Self> {
        ct.require_series(&h, "Hamiltonian")?;
        if !h.is_zero() {
            h.bigrade()?;
        }
        let epsilon = match ct.kind() {
            FiberKind::Even => Parity::ODD,
            FiberKind::Odd => Parity::EVEN,
        };
        let sig = ShiftSignature { epsilon, k: crate::graded::Weight(1) - ct.shift() };
        let base = ct.base().vars();
        let mut tests: Vec<(String, Series)> = base.iter().map(|v| (v.name().to_string(), Series::var(v))).collect();
        if base.len() >= 2 {
            let p = Series::var(&base[0]) * Series::var(&base[1]);
            if !p.is_zero() {
                tests.push((format!("{}*{}", base[0], base[1]), p));
            }
        }
        Ok(HamiltonianBrackets { h, ct, sig, arity_max, tests })
    }

    /// Replace the test functions used by the Jacobi and weight checks.
    pub fn with_test_functions(mut self, tests: Vec<(String, Series)>) -> Result<Self> {
        for (name, f) in &tests {
            self.ct.base().require_series(f, &format!("test function `{}`", name))?;
            if !f.is_zero() {
                f.bigrade()?;
            }
        }
        self.tests = tests;
        Ok(self)
    }

    pub fn hamiltonian(&self) -> &Series {
        &self.h
    }

    pub fn chart(&self) -> &CotangentChart {
        &self.ct
    }

    fn homogeneous_bracket(&self, args: &[Series], parities: &[Parity]) -> Series {
        let n = args.len();
        // each bracket with a base function lowers fiber degree by exactly one
        let mut x = self.h.fiber_component(n as u32);
        for f in args {
            if x.is_zero() {
                return x;
            }
            x = bracket_raw(&x, f, &self.ct);
        }
        let x = restrict_to_base(&x, &self.ct);
        if self.sig.epsilon.is_even() {
            let mut e = Parity::EVEN;
            for (j, p) in parities.iter().enumerate() {
                e += p.times(Parity::new((n - 1 - j) as i64));
            }
            if e.is_odd() {
                return -x;
            }
        }
        x
    }
}

impl BracketFamily for HamiltonianBrackets {
    type Elem = Series;

    fn signature(&self) -> ShiftSignature {
        self.sig
    }
    fn arity_max(&self) -> usize {
        self.arity_max
    }
    fn bracket(&self, args: &[Series]) -> Result<Series> {
        for (i, a) in args.iter().enumerate() {
            self.ct.base().require_series(a, &format!("argument {}", i + 1))?;
        }
        // split every argument by parity and expand
        let parts: Vec<[Series; 2]> = args.iter().map(Series::parity_parts).collect();
        let mut out = Series::zero();
        let n = args.len();
        for mask in 0u32..(1u32 << n) {
            let mut chosen = Vec::with_capacity(n);
            let mut parities = Vec::with_capacity(n);
            let mut empty = false;
            for (j, p) in parts.iter().enumerate() {
                let bit = ((mask >> j) & 1) as usize;
                if p[bit].is_zero() {
                    empty = true;
                    break;
                }
                chosen.push(p[bit].clone());
                parities.push(Parity::new(bit as i64));
            }
            if !empty {
                out = out + self.homogeneous_bracket(&chosen, &parities);
            }
        }
        Ok(out)
    }
    fn zero(&self) -> Series {
        Series::zero()
    }
    fn is_zero(&self, x: &Series) -> bool {
        x.is_zero()
    }
    fn axpy(&self, acc: &mut Series, c: &Rational, x: &Series) {
        *acc = &*acc + &x.scale(c);
    }
    fn grading(&self, x: &Series) -> Result<Option<Bigrading>> {
        if x.is_zero() {
            Ok(None)
        } else {
            x.bigrade().map(Some)
        }
    }
    fn generators(&self) -> Vec<(String, Series)> {
        self.tests.clone()
    }
    fn show(&self, x: &Series) -> String {
        x.to_string()
    }
}

/// `{f_1,…,f_n}_H` for one tuple of base functions.
pub fn derived_bracket_h(h: &Series, inputs: &[Series], ct: &CotangentChart) -> Result<Series> {
    for (i, f) in inputs.iter().enumerate() {
        if !f.is_zero() && !f.is_homogeneous() {
            return Err(Error::GradingMismatch(format!("argument {} is not homogeneous: {}", i + 1, f)));
        }
    }
    HamiltonianBrackets::new(h.clone(), ct.clone(), inputs.len())?.bracket(inputs)
}

pub(crate) fn show_tuple(space: &GradedSpace, t: &[usize]) -> String {
    format!("[{}]", t.iter().map(|i| space.element(*i).name.as_str()).collect::<Vec<_>>().join(", "))
}

pub(crate) fn nondecreasing_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(dim: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, n, i, cur, out);
            cur.pop();
        }
    }
    rec(dim, n, 0, &mut cur, &mut out);
    out
}

pub(crate) fn all_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}
