use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{bracket_raw, CotangentChart, FiberKind, VectorField};
use crate::graded::{Bigrading, Parity, Rational, Series, Weight};
use crate::report::{Entry, Report};

use super::family::{all_tuples, nondecreasing_tuples, swap_sign, BracketFamily, HamiltonianBrackets};
use super::space::ShiftSignature;

fn label<F: BracketFamily>(gens: &[(String, F::Elem)], t: &[usize]) -> String {
    format!("n={} ({})", t.len(), t.iter().map(|i| gens[*i].0.as_str()).collect::<Vec<_>>().join(", "))
}

fn generator_parities<F: BracketFamily>(fam: &F, gens: &[(String, F::Elem)]) -> Result<Vec<Parity>> {
    gens.iter()
        .map(|(name, g)| {
            fam.grading(g)?
                .map(|b| b.parity)
                .ok_or_else(|| Error::GradingMismatch(format!("generator `{}` is zero", name)))
        })
        .collect()
}

/// Left side of the `n`-th higher Jacobi identity on one ordered tuple of arguments.
///
/// Sums `±ℓ_{s+1}(ℓ_r(u_I), u_J)` over all `(r,s)`-unshuffles `I ⊔ J`. The sign is
/// `(-1)^{rs} sgn(σ) × Koszul` when ε = 0 and the Koszul sign alone when ε = 1.
pub fn jacobiator<F: BracketFamily>(fam: &F, args: &[F::Elem], parities: &[Parity]) -> Result<F::Elem> {
    let n = args.len();
    let eps = fam.signature().epsilon;
    let mut total = fam.zero();
    for mask in 0u32..(1u32 << n) {
        let inner_idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let outer_idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let (r, s) = (inner_idx.len(), outer_idx.len());
        let mut sign = Parity::EVEN;
        for &j in &outer_idx {
            for &i in &inner_idx {
                if j < i {
                    sign += parities[i].times(parities[j]);
                    if eps.is_even() {
                        sign += Parity::ODD;
                    }
                }
            }
        }
        if eps.is_even() {
            sign += Parity::new((r * s) as i64);
        }
        let inner_args: Vec<F::Elem> = inner_idx.iter().map(|i| args[*i].clone()).collect();
        let inner = fam.bracket(&inner_args)?;
        if fam.is_zero(&inner) {
            continue;
        }
        let mut outer_args = Vec::with_capacity(s + 1);
        outer_args.push(inner);
        outer_args.extend(outer_idx.iter().map(|i| args[*i].clone()));
        let v = fam.bracket(&outer_args)?;
        let c = if sign.is_odd() { -Rational::one() } else { Rational::one() };
        fam.axpy(&mut total, &c, &v);
    }
    Ok(total)
}

/// Higher Jacobi identities on every ordered tuple of generators, for each `n ≤ n_max`.
pub fn check_higher_jacobi<F: BracketFamily>(fam: &F, n_max: usize) -> Report {
    let mut report = Report::new();
    let gens = fam.generators();
    let parities = match generator_parities(fam, &gens) {
        Ok(p) => p,
        Err(e) => {
            report.push(Entry::fail("jacobi", "generators").note(e.to_string()));
            return report;
        }
    };
    for n in 0..=n_max {
        let mut count = 0usize;
        let mut failed = 0usize;
        for t in all_tuples(gens.len(), n) {
            count += 1;
            let args: Vec<F::Elem> = t.iter().map(|i| gens[*i].1.clone()).collect();
            let ps: Vec<Parity> = t.iter().map(|i| parities[*i]).collect();
            match jacobiator(fam, &args, &ps) {
                Ok(r) if fam.is_zero(&r) => {}
                Ok(r) => {
                    failed += 1;
                    report.push(Entry::fail("jacobi", label::<F>(&gens, &t)).expected("0").residual(fam.show(&r)));
                }
                Err(e) => {
                    failed += 1;
                    report.push(Entry::fail("jacobi", label::<F>(&gens, &t)).note(e.to_string()));
                }
            }
        }
        if failed == 0 {
            report.push(Entry::pass("jacobi", format!("n={}", n)).note(format!("{} tuples", count)));
        }
    }
    report
}

/// `w(ℓ_n) = 2-n+k(n-1)` and `p(ℓ_n) = ε(n+1)+n` on every sorted tuple of generators with nonzero bracket.
pub fn check_weights_parities<F: BracketFamily>(fam: &F, sig: ShiftSignature, n_max: usize) -> Report {
    let mut report = Report::new();
    let gens = fam.generators();
    let gradings: Vec<Bigrading> = match gens
        .iter()
        .map(|(name, g)| fam.grading(g)?.ok_or_else(|| Error::GradingMismatch(format!("generator `{}` is zero", name))))
        .collect::<Result<_>>()
    {
        Ok(g) => g,
        Err(e) => {
            report.push(Entry::fail("weights", "generators").note(e.to_string()));
            return report;
        }
    };
    for n in 0..=n_max {
        let expected = sig.bracket_grading(n);
        let (mut nonzero, mut failed) = (0usize, 0usize);
        for t in nondecreasing_tuples(gens.len(), n) {
            let args: Vec<F::Elem> = t.iter().map(|i| gens[*i].1.clone()).collect();
            let input = t.iter().fold(Bigrading::ZERO, |acc, i| acc + gradings[*i]);
            let v = match fam.bracket(&args) {
                Ok(v) => v,
                Err(e) => {
                    failed += 1;
                    report.push(Entry::fail("weights", label::<F>(&gens, &t)).note(e.to_string()));
                    continue;
                }
            };
            match fam.grading(&v) {
                Ok(None) => {}
                Ok(Some(g)) => {
                    nonzero += 1;
                    let got = g - input;
                    if got != expected {
                        failed += 1;
                        report.push(
                            Entry::fail("weights", label::<F>(&gens, &t))
                                .expected(expected)
                                .actual(got)
                                .note(format!("weight discrepancy {}", got.weight - expected.weight))
                                .note(format!("value {}", fam.show(&v))),
                        );
                    }
                }
                Err(e) => {
                    failed += 1;
                    report.push(Entry::fail("weights", label::<F>(&gens, &t)).note(e.to_string()));
                }
            }
        }
        if failed == 0 {
            report.push(
                Entry::pass("weights", format!("n={}", n))
                    .expected(expected)
                    .note(format!("{} nonzero brackets", nonzero)),
            );
        }
    }
    report
}

/// Graded (anti)symmetry under every adjacent transposition, on ordered generator tuples.
pub fn check_symmetry<F: BracketFamily>(fam: &F, n_max: usize) -> Report {
    let mut report = Report::new();
    let gens = fam.generators();
    let parities = match generator_parities(fam, &gens) {
        Ok(p) => p,
        Err(e) => {
            report.push(Entry::fail("symmetry", "generators").note(e.to_string()));
            return report;
        }
    };
    let eps = fam.signature().epsilon;
    for n in 2..=n_max {
        let mut failed = 0usize;
        for t in all_tuples(gens.len(), n) {
            let args: Vec<F::Elem> = t.iter().map(|i| gens[*i].1.clone()).collect();
            for j in 0..n - 1 {
                let mut swapped = args.clone();
                swapped.swap(j, j + 1);
                let sign = swap_sign(eps, parities[t[j]], parities[t[j + 1]]);
                let res = fam.bracket(&args).and_then(|a| {
                    let b = fam.bracket(&swapped)?;
                    let mut r = a;
                    let c = if sign.is_odd() { Rational::one() } else { -Rational::one() };
                    fam.axpy(&mut r, &c, &b);
                    Ok(r)
                });
                match res {
                    Ok(r) if fam.is_zero(&r) => {}
                    Ok(r) => {
                        failed += 1;
                        report.push(
                            Entry::fail("symmetry", format!("{} swap {}", label::<F>(&gens, &t), j + 1))
                                .residual(fam.show(&r)),
                        );
                    }
                    Err(e) => {
                        failed += 1;
                        report.push(Entry::fail("symmetry", label::<F>(&gens, &t)).note(e.to_string()));
                    }
                }
            }
        }
        if failed == 0 {
            report.push(Entry::pass("symmetry", format!("n={}", n)));
        }
    }
    report
}

/// Every nonzero bracket on sorted generator tuples, annotated with its bigrading.
pub fn list_brackets<F: BracketFamily>(fam: &F, n_max: usize) -> Report {
    let mut report = Report::new();
    let gens = fam.generators();
    for n in 0..=n_max {
        for t in nondecreasing_tuples(gens.len(), n) {
            let args: Vec<F::Elem> = t.iter().map(|i| gens[*i].1.clone()).collect();
            match fam.bracket(&args) {
                Ok(v) if fam.is_zero(&v) => {}
                Ok(v) => {
                    let mut e = Entry::info("bracket", label::<F>(&gens, &t)).actual(fam.show(&v));
                    if let Ok(Some(g)) = fam.grading(&v) {
                        e = e.note(format!("bigrading {}", g));
                    }
                    report.push(e);
                }
                Err(err) => report.push(Entry::fail("bracket", label::<F>(&gens, &t)).note(err.to_string())),
            }
        }
    }
    report
}

/// One Leibniz test: arguments `a_1..a_n` and the factors `b`, `c`.
#[derive(Clone, Debug)]
pub struct LeibnizSample {
    pub inputs: Vec<Series>,
    pub b: Series,
    pub c: Series,
}

/// Sign exponent in `{a, bc} = {a, b}c + (-1)^e b{a, c}`.
///
/// For ε = 1 this is `(Σã + 1)b̃`; for ε = 0 it is `(Σã + n + 1)b̃`.
pub fn leibniz_exponent(epsilon: Parity, inputs: &[Parity], b: Parity) -> Parity {
    let mut e = inputs.iter().fold(Parity::ODD, |acc, p| acc + *p);
    if epsilon.is_even() {
        e += Parity::new(inputs.len() as i64);
    }
    e.times(b)
}

pub fn check_leibniz(fam: &HamiltonianBrackets, samples: &[LeibnizSample]) -> Result<Report> {
    let mut report = Report::new();
    let eps = fam.signature().epsilon;
    let homog = |s: &Series, what: &str| -> Result<Parity> {
        if s.is_zero() {
            return Ok(Parity::EVEN);
        }
        s.bigrade().map(|g| g.parity).map_err(|e| Error::GradingMismatch(format!("{}: {}", what, e)))
    };
    for (k, smp) in samples.iter().enumerate() {
        let ps: Vec<Parity> = smp
            .inputs
            .iter()
            .enumerate()
            .map(|(i, a)| homog(a, &format!("sample {} input {}", k, i + 1)))
            .collect::<Result<_>>()?;
        let bp = homog(&smp.b, &format!("sample {} b", k))?;
        homog(&smp.c, &format!("sample {} c", k))?;
        let with = |x: Series| {
            let mut v = smp.inputs.clone();
            v.push(x);
            v
        };
        let lhs = fam.bracket(&with(&smp.b * &smp.c))?;
        let first = &fam.bracket(&with(smp.b.clone()))? * &smp.c;
        let second = &smp.b * &fam.bracket(&with(smp.c.clone()))?;
        let e = leibniz_exponent(eps, &ps, bp);
        let rhs = if e.is_odd() { first - second } else { first + second };
        let residual = &lhs - &rhs;
        let loc = format!("sample {} (n={})", k, smp.inputs.len());
        report.push(if residual.is_zero() {
            Entry::pass("leibniz", loc)
        } else {
            Entry::fail("leibniz", loc).expected(&rhs).actual(&lhs).residual(&residual)
        });
    }
    Ok(report)
}

/// Objects whose self-bracket must vanish.
#[derive(Clone, Debug)]
pub enum MasterObject {
    Field(VectorField),
    /// A function on `T*M[1-k]` or `ΠT*M[1-k]`.
    Hamiltonian(Series, CotangentChart),
}

/// The master equation `[Q,Q] = 0`, `(H,H) = 0` or `[P,P] = 0`, plus the weight audit.
///
/// `Q` must be odd of weight 1. A Hamiltonian on `T*M[1-k]` must be odd, one on `ΠT*M[1-k]` even,
/// both of weight `2-k`.
pub fn check_master(obj: &MasterObject) -> Result<Report> {
    let mut report = Report::new();
    match obj {
        MasterObject::Field(q) => {
            if q.parity().is_even() {
                return Err(Error::GradingMismatch(format!("homological field must be odd; {} is even", q)));
            }
            let r = q.self_commutator();
            report.push(if r.is_zero() {
                Entry::pass("master", "[Q,Q]")
            } else {
                Entry::fail("master", "[Q,Q]").expected("0").residual(&r)
            });
            report.push(weight_entry(q.weight(), Weight(1)));
        }
        MasterObject::Hamiltonian(h, ct) => {
            ct.require_series(h, "Hamiltonian")?;
            let k = Weight(1) - ct.shift();
            if !h.is_zero() {
                let g = h.bigrade()?;
                let want = match ct.kind() {
                    FiberKind::Even => Parity::ODD,
                    FiberKind::Odd => Parity::EVEN,
                };
                if g.parity != want {
                    return Err(Error::GradingMismatch(format!(
                        "a master function on the {} bundle must be {}; got {} of bigrading {}",
                        match ct.kind() {
                            FiberKind::Even => "even",
                            FiberKind::Odd => "odd",
                        },
                        want,
                        h,
                        g
                    )));
                }
                report.push(weight_entry(g.weight, Weight(2) - k));
            }
            let r = bracket_raw(h, h, ct);
            report.push(if r.is_zero() {
                Entry::pass("master", "(H,H)")
            } else {
                Entry::fail("master", "(H,H)").expected("0").residual(&r)
            });
        }
    }
    Ok(report)
}

fn weight_entry(got: Weight, want: Weight) -> Entry {
    let e = if got == want { Entry::pass("master-weight", "weight") } else { Entry::fail("master-weight", "weight") };
    e.expected(want).actual(got)
}
