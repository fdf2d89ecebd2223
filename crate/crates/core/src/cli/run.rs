use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::VectorField;
use crate::graded::{rat, Bigrading, Series, Weight};
use crate::homotopy::{
    check_higher_jacobi, check_leibniz, check_master, check_symmetry, check_weights_parities, list_brackets,
    nondecreasing_tuples, parity_reverse_brackets, BracketFamily, ExplicitBrackets, GradedSpace, GradedVector,
    HamiltonianBrackets, LeibnizSample, MasterObject, QBrackets,
};
use crate::microformal::{
    check_hamilton_jacobi, check_intertwining, pullback, pullback_expansion_oracle, validate_thick, ThickMorphism,
};
use crate::oracle::{
    hamiltonian_bracket_fn, oracle_derived_bracket_q, oracle_hamilton_jacobi_check, oracle_intertwining_check,
    oracle_pullback_check, pointwise_check, Assignment, OracleConfig, PointFn,
};
use crate::report::{Entry, Report};

use super::parse::{Object, ProblemFile, Task};

/// Run-time settings shared by every task.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub arity: usize,
    pub order: u32,
    pub seed: u64,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { arity: 4, order: 4, seed: OracleConfig::default().seed }
    }
}

/// Execute every task in order. Task errors become failed entries.
pub fn run(problem: &ProblemFile, flags: &Flags) -> Report {
    let mut report = Report::new();
    for task in &problem.tasks {
        let label = task.label();
        let r = run_task(problem, task, flags)
            .unwrap_or_else(|e| {
                let mut r = Report::new();
                r.push(Entry::fail("error", format!("line {}", task.line)).note(e.to_string()));
                r
            })
            .with_task(&label);
        report.extend(r);
    }
    report
}

enum Family {
    Q(QBrackets),
    Explicit(ExplicitBrackets),
    H(HamiltonianBrackets),
}

fn family(problem: &ProblemFile, name: &str, arity: usize) -> Result<Family> {
    match problem.get(name) {
        Some(Object::Homological { space, field, sig, arity: a }) => {
            let Some(Object::Space(v)) = problem.get(space) else { unreachable!("checked by the parser") };
            Ok(Family::Q(QBrackets::new(field.clone(), v.clone(), *sig, a.unwrap_or(arity))?))
        }
        Some(Object::Explicit { space, entries, sig, arity: a }) => {
            let Some(Object::Space(v)) = problem.get(space) else { unreachable!("checked by the parser") };
            Ok(Family::Explicit(ExplicitBrackets::from_entries(v.clone(), *sig, a.unwrap_or(arity), entries.clone())?))
        }
        Some(Object::Hamiltonian { bundle, h, .. }) => {
            Ok(Family::H(HamiltonianBrackets::new(h.clone(), bundle.clone(), arity)?))
        }
        _ => Err(Error::GradingMismatch(format!("`{}` does not define brackets", name))),
    }
}

macro_rules! with_family {
    ($fam:expr, $f:ident => $body:expr) => {
        match $fam {
            Family::Q($f) => $body,
            Family::Explicit($f) => $body,
            Family::H($f) => $body,
        }
    };
}

fn thick<'a>(problem: &'a ProblemFile, name: &str) -> &'a ThickMorphism {
    match problem.get(name) {
        Some(Object::Thick { phi, .. }) => phi,
        _ => unreachable!("checked by the parser"),
    }
}

fn function<'a>(problem: &'a ProblemFile, name: &str) -> &'a Series {
    match problem.get(name) {
        Some(Object::Function { f, .. }) => f,
        Some(Object::Hamiltonian { h, .. }) => h,
        _ => unreachable!("checked by the parser"),
    }
}

fn run_task(problem: &ProblemFile, task: &Task, flags: &Flags) -> Result<Report> {
    let arity = task.option::<usize>("arity")?;
    let order = task.option::<u32>("order")?;
    let cfg = OracleConfig { seed: flags.seed, ..OracleConfig::default() };
    let a = &task.args;
    match task.kind.as_str() {
        "bigrade" => {
            let s = task.expr.as_ref().expect("parsed with the task");
            let g = s.bigrade()?;
            Ok(single(Entry::pass("bigrade", a[0].clone()).actual(g)))
        }
        "check-master" => match problem.get(&a[0]) {
            Some(Object::Homological { field, .. }) => check_master(&MasterObject::Field(field.clone())),
            Some(Object::Hamiltonian { h, bundle, .. }) => {
                check_master(&MasterObject::Hamiltonian(h.clone(), bundle.clone()))
            }
            _ => unreachable!("checked by the parser"),
        },
        "check-jacobi" | "check-weights" | "check-symmetry" | "derive-brackets" => {
            let fam = family(problem, &a[0], flags.arity)?;
            Ok(with_family!(&fam, f => {
                let n = arity.unwrap_or(flags.arity);
                match task.kind.as_str() {
                    "check-jacobi" => check_higher_jacobi(f, n),
                    "check-weights" => check_weights_parities(f, f.signature(), n),
                    "check-symmetry" => check_symmetry(f, n),
                    _ => {
                        let mut r = Report::new();
                        if let Family::Explicit(e) = &fam {
                            for w in e.warnings() {
                                r.push(Entry::info("symmetrization", "input").note(w.clone()));
                            }
                        }
                        r.extend(list_brackets(f, n));
                        r
                    }
                }
            }))
        }
        "check-leibniz" => {
            let Family::H(fam) = family(problem, &a[0], flags.arity)? else { unreachable!("checked by the parser") };
            let count = task.option::<usize>("samples")?.unwrap_or(20);
            let max_inputs = arity.unwrap_or(3).max(1) - 1;
            let samples = leibniz_samples(&fam, count, max_inputs, flags.seed ^ task.line as u64);
            check_leibniz(&fam, &samples)
        }
        "parity-reverse" => {
            let n = arity.unwrap_or(flags.arity.min(3));
            let fam = match family(problem, &a[0], flags.arity)? {
                Family::Q(q) => ExplicitBrackets::tabulate(&q, q.space(), n)?,
                Family::Explicit(e) => e,
                Family::H(_) => unreachable!("checked by the parser"),
            };
            parity_round_trip(&fam, n)
        }
        "validate" => Ok(validate_thick(thick(problem, &a[0]))),
        "pullback" => {
            let phi = thick(problem, &a[0]);
            let g = function(problem, &a[1]);
            pullback_task(phi, g, order.unwrap_or(flags.order))
        }
        "check-hj" => {
            let phi = thick(problem, &a[0]);
            let k = task.option::<i64>("k")?.map(Weight).unwrap_or(Weight(1) - phi.shift());
            check_hamilton_jacobi(
                phi,
                function(problem, &a[1]),
                function(problem, &a[2]),
                k,
                order.unwrap_or(flags.order),
            )
        }
        "check-intertwining" => {
            let phi = thick(problem, &a[0]);
            let k = task.option::<i64>("k")?.map(Weight).unwrap_or(Weight(1) - phi.shift());
            let n = order.unwrap_or(flags.order.saturating_sub(1));
            check_intertwining(phi, function(problem, &a[1]), function(problem, &a[2]), function(problem, &a[3]), k, n)
        }
        "oracle-verify" => oracle_task(problem, task, flags, cfg, arity, order),
        other => Err(Error::Syntax { line: task.line, col: 1, msg: format!("unknown task `{}`", other) }),
    }
}

fn single(e: Entry) -> Report {
    let mut r = Report::new();
    r.push(e);
    r
}

fn leibniz_samples(fam: &HamiltonianBrackets, count: usize, max_inputs: usize, seed: u64) -> Vec<LeibnizSample> {
    let base = fam.chart().base().vars().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monomial = |rng: &mut ChaCha8Rng, min: usize| loop {
        let len = rng.gen_range(min..=2);
        let mut s = Series::constant(rat(rng.gen_range(1..=5)));
        for _ in 0..len {
            s = s * Series::var(&base[rng.gen_range(0..base.len())]);
        }
        if !s.is_zero() {
            return s;
        }
    };
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_inputs);
            LeibnizSample {
                inputs: (0..n).map(|_| monomial(&mut rng, 1)).collect(),
                b: monomial(&mut rng, 1),
                c: monomial(&mut rng, 0),
            }
        })
        .collect()
}

fn parity_round_trip(fam: &ExplicitBrackets, n: usize) -> Result<Report> {
    let rev = parity_reverse_brackets(fam);
    let back = rev.parity_reverse();
    let mut r = Report::new();
    r.push(if back.table() == fam.table() {
        Entry::pass("round-trip", "twice reversed")
    } else {
        Entry::fail("round-trip", "twice reversed").note("the brackets changed after two reversions")
    });
    for mut e in
        check_higher_jacobi(&rev, n).entries.into_iter().chain(check_weights_parities(&rev, rev.signature(), n).entries)
    {
        e.location = format!("reversed {}", e.location);
        r.push(e);
    }
    Ok(r)
}

fn pullback_task(phi: &ThickMorphism, g: &Series, order: u32) -> Result<Report> {
    let pb = pullback(phi, g, order)?;
    let mut r = Report::new();
    let loc = format!("order {}", order);
    r.push(Entry::info("pullback", loc.clone()).actual(&pb.f).note(format!("{} iterations", pb.iterations)));
    for (y, s) in phi.target().vars().iter().zip(&pb.y) {
        r.push(Entry::info("pullback-y", y.name()).actual(s));
    }
    let want = Bigrading::new(phi.expected_parity(), phi.shift());
    r.push(if pb.f.is_zero() {
        Entry::pass("weight-theorem", loc.clone()).expected(want).actual("0")
    } else {
        match pb.f.bigrade() {
            Ok(b) if b == want => Entry::pass("weight-theorem", loc.clone()).expected(want).actual(b),
            Ok(b) => Entry::fail("weight-theorem", loc.clone()).expected(want).actual(b),
            Err(e) => Entry::fail("weight-theorem", loc.clone()).expected(want).note(e.to_string()),
        }
    });
    if order >= 2 {
        let exp = pullback_expansion_oracle(phi, g, 2)?;
        let got = pb.through_order(2);
        let res = &got - &exp;
        r.push(if res.is_zero() {
            Entry::pass("expansion", "through two factors of g")
        } else {
            Entry::fail("expansion", "through two factors of g").expected(&exp).actual(&got).residual(&res)
        });
    }
    Ok(r)
}

fn oracle_task(
    problem: &ProblemFile,
    task: &Task,
    flags: &Flags,
    cfg: OracleConfig,
    arity: Option<usize>,
    order: Option<u32>,
) -> Result<Report> {
    let a = &task.args;
    match problem.get(&a[0]) {
        Some(Object::Thick { phi, .. }) => {
            let n = order.unwrap_or(flags.order);
            match a.len() {
                2 => {
                    let g = function(problem, &a[1]);
                    let pb = pullback(phi, g, n)?;
                    oracle_pullback_check(phi, g, &pb, cfg)
                }
                3 | 4 => {
                    let (h1, h2) = (function(problem, &a[1]), function(problem, &a[2]));
                    let mut r = oracle_hamilton_jacobi_check(phi, h1, h2, n, cfg)?;
                    if let Some(gn) = a.get(3) {
                        let pb = pullback(phi, function(problem, gn), n.saturating_sub(1))?;
                        r.extend(oracle_intertwining_check(phi, h1, h2, &pb, cfg)?);
                    }
                    Ok(r)
                }
                _ => Err(Error::Syntax {
                    line: task.line,
                    col: 1,
                    msg: "oracle-verify on a thick morphism takes `G` or `H1 H2 [G]`".into(),
                }),
            }
        }
        _ => {
            if a.len() > 1 {
                return Err(Error::Syntax {
                    line: task.line,
                    col: 1,
                    msg: "too many arguments for a bracket family".into(),
                });
            }
            let fam = family(problem, &a[0], flags.arity)?;
            match fam {
                Family::Q(q) => {
                    let n = arity.unwrap_or(flags.arity.min(3)).min(q.arity_max());
                    derived_bracket_oracle(&q, q.space(), q.field(), n)
                }
                Family::Explicit(e) => {
                    let n = arity.unwrap_or(flags.arity.min(3)).min(e.arity_max());
                    let field = e.to_vector_field()?;
                    derived_bracket_oracle(&e, e.space(), &field, n)
                }
                Family::H(h) => hamiltonian_oracle(&h, arity.unwrap_or(2).min(h.arity_max()), cfg),
            }
        }
    }
}

/// Compare each bracket of basis vectors with pointwise iterated commutators of `field`.
fn derived_bracket_oracle<F: BracketFamily<Elem = GradedVector>>(
    fam: &F,
    space: &GradedSpace,
    field: &VectorField,
    n: usize,
) -> Result<Report> {
    let gens = fam.generators();
    let mut r = Report::new();
    let mut count = 0usize;
    for k in 0..=n {
        for t in nondecreasing_tuples(gens.len(), k) {
            let args: Vec<_> = t.iter().map(|i| gens[*i].1.clone()).collect();
            let sym = fam.bracket(&args)?;
            let pt = oracle_derived_bracket_q(field, &t, space, fam.signature())?;
            count += 1;
            if sym != pt {
                let names: Vec<&str> = t.iter().map(|i| gens[*i].0.as_str()).collect();
                r.push(
                    Entry::fail("oracle-derived-bracket", format!("n={} ({})", k, names.join(", ")))
                        .expected(space.show(&pt))
                        .actual(space.show(&sym)),
                );
            }
        }
    }
    if r.entries.is_empty() {
        r.push(
            Entry::pass("oracle-derived-bracket", format!("arity <= {}", n)).note(format!("{} tuples agree", count)),
        );
    }
    Ok(r)
}

/// Pointwise Hamiltonian brackets of the test functions against the symbolic ones.
fn hamiltonian_oracle(fam: &HamiltonianBrackets, n: usize, cfg: OracleConfig) -> Result<Report> {
    let gens = fam.generators();
    let ct = fam.chart();
    let base = ct.base().vars().to_vec();
    let mut r = Report::new();
    for k in 0..=n {
        for t in nondecreasing_tuples(gens.len(), k) {
            let args: Vec<Series> = t.iter().map(|i| gens[*i].1.clone()).collect();
            let sym = PointFn::series(&fam.bracket(&args)?);
            let pts: Vec<PointFn> = args.iter().map(PointFn::series).collect();
            let pt = hamiltonian_bracket_fn(fam.hamiltonian(), &pts, ct)?;
            let names: Vec<&str> = t.iter().map(|i| gens[*i].0.as_str()).collect();
            let loc = format!("n={} ({})", k, names.join(", "));
            for mut e in
                pointwise_check("oracle-hamiltonian-bracket", &sym, &pt, &base, &Assignment::new(), cfg).entries
            {
                e.location = format!("{} {}", loc, e.location);
                r.push(e);
            }
        }
    }
    Ok(r)
}
