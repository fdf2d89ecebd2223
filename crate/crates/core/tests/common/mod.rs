//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use gradedhom::geometry::Chart;
use gradedhom::graded::{rat, ratio, Bigrading, GradedVariable, Parity, Rational, Series};
use rand::Rng;

/// Two even and two odd coordinates of assorted weights.
pub fn mixed_chart() -> Chart {
    Chart::new(
        0,
        &[("x", Parity::EVEN, 0), ("u", Parity::EVEN, 2), ("theta", Parity::ODD, 1), ("eta", Parity::ODD, -1)],
    )
    .unwrap()
}

/// A nonzero small rational.
pub fn coefficient(rng: &mut impl Rng) -> Rational {
    let n = loop {
        let n = rng.gen_range(-6i64..=6);
        if n != 0 {
            break n;
        }
    };
    ratio(n, rng.gen_range(1..=3))
}

/// Product of up to `max_len` random variables (possibly zero when an odd one repeats).
pub fn monomial(rng: &mut impl Rng, vars: &[GradedVariable], max_len: usize) -> Series {
    let len = rng.gen_range(0..=max_len);
    let factors: Vec<GradedVariable> = (0..len).map(|_| vars[rng.gen_range(0..vars.len())].clone()).collect();
    Series::product_of(&factors).scale(&coefficient(rng))
}

/// A sum of random monomials, generally inhomogeneous.
pub fn series(rng: &mut impl Rng, vars: &[GradedVariable], max_terms: usize, max_len: usize) -> Series {
    let n = rng.gen_range(0..=max_terms);
    (0..n).fold(Series::zero(), |acc, _| acc + monomial(rng, vars, max_len))
}

/// A nonzero homogeneous series: random monomials sharing the bigrading of the first one.
pub fn homogeneous(rng: &mut impl Rng, vars: &[GradedVariable], max_terms: usize, max_len: usize) -> Series {
    let first = loop {
        let m = monomial(rng, vars, max_len);
        if !m.is_zero() {
            break m;
        }
    };
    let target = first.bigrade().unwrap();
    let mut out = first;
    for _ in 0..(max_terms * 8) {
        if out.len() >= max_terms {
            break;
        }
        let m = monomial(rng, vars, max_len);
        if !m.is_zero() && m.bigrade().unwrap() == target {
            out = out + m;
        }
    }
    if out.is_zero() {
        homogeneous(rng, vars, max_terms, max_len)
    } else {
        out
    }
}

pub fn parity_of(s: &Series) -> Parity {
    s.bigrade().map(|b| b.parity).unwrap_or(Parity::EVEN)
}

pub fn grading_of(s: &Series) -> Bigrading {
    s.bigrade().unwrap()
}

/// `(-1)^p` as a rational.
pub fn sign(p: Parity) -> Rational {
    rat(p.sign() as i64)
}

/// Every product of at most `max_len` of the given variables, with unit coefficient and no repeats
/// of the same multiset.
pub fn all_monomials(vars: &[GradedVariable], max_len: usize) -> Vec<Series> {
    fn go(vars: &[GradedVariable], start: usize, left: usize, acc: &mut Vec<GradedVariable>, out: &mut Vec<Series>) {
        out.push(Series::product_of(acc));
        if left == 0 {
            return;
        }
        for i in start..vars.len() {
            acc.push(vars[i].clone());
            go(vars, i, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, 0, max_len, &mut Vec::new(), &mut out);
    out.into_iter().filter(|s| !s.is_zero()).collect()
}
