mod common;

use common::{grading_of, homogeneous, mixed_chart, parity_of, sign};
use gradedhom::geometry::{canonical_bracket, CotangentChart, FiberKind};
use gradedhom::graded::{Bigrading, Series, Weight};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bundle(s: i64, odd: bool) -> CotangentChart {
    let kind = if odd { FiberKind::Odd } else { FiberKind::Even };
    CotangentChart::new(&mixed_chart(), Weight(s), kind)
}

fn functions(ct: &CotangentChart, seed: u64, n: usize) -> Vec<Series> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| homogeneous(&mut rng, ct.vars(), 2, 3)).collect()
}

fn br(f: &Series, g: &Series, ct: &CotangentChart) -> Series {
    canonical_bracket(f, g, ct).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), s in -1i64..=2, odd in any::<bool>()) {
        let ct = bundle(s, odd);
        let k = ct.bracket_parity();
        let fg = functions(&ct, seed, 2);
        let (f, g) = (&fg[0], &fg[1]);
        let e = (parity_of(f) + k).times(parity_of(g) + k);
        prop_assert_eq!(br(f, g, &ct), -br(g, f, &ct).scale(&sign(e)));
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>(), s in -1i64..=2, odd in any::<bool>()) {
        let ct = bundle(s, odd);
        let k = ct.bracket_parity();
        let v = functions(&ct, seed, 3);
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        let e = (parity_of(f) + k).times(parity_of(g) + k);
        let lhs = br(f, &br(g, h, &ct), &ct);
        let rhs = br(&br(f, g, &ct), h, &ct) + br(g, &br(f, h, &ct), &ct).scale(&sign(e));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_in_second_slot(seed in any::<u64>(), s in -1i64..=2, odd in any::<bool>()) {
        let ct = bundle(s, odd);
        let k = ct.bracket_parity();
        let v = functions(&ct, seed, 3);
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        let e = (parity_of(f) + k).times(parity_of(g));
        let lhs = br(f, &(g * h), &ct);
        let rhs = &br(f, g, &ct) * h + (g * &br(f, h, &ct)).scale(&sign(e));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_law(seed in any::<u64>(), s in -1i64..=2, odd in any::<bool>()) {
        let ct = bundle(s, odd);
        let v = functions(&ct, seed, 2);
        let r = br(&v[0], &v[1], &ct);
        if !r.is_zero() {
            let expected: Bigrading = grading_of(&v[0]) + grading_of(&v[1]) + ct.bracket_grading();
            prop_assert_eq!(grading_of(&r), expected);
            prop_assert_eq!(expected.weight, grading_of(&v[0]).weight + grading_of(&v[1]).weight - Weight(s));
        }
    }
}

#[test]
fn conjugate_pairs_are_normalized() {
    for s in -1..=2 {
        for odd in [false, true] {
            let ct = bundle(s, odd);
            for a in 0..ct.base().dim() {
                let x = Series::var(&ct.base().vars()[a]);
                let p = Series::var(ct.conjugate(a));
                assert_eq!(br(&p, &x, &ct), Series::one());
            }
        }
    }
}
