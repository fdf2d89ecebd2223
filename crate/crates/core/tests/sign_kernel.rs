mod common;

use common::{homogeneous, mixed_chart, parity_of, series, sign};
use gradedhom::graded::{GradedVariable, Series};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vars() -> Vec<GradedVariable> {
    mixed_chart().vars().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn supercommutative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = vars();
        let a = homogeneous(&mut rng, &v, 3, 3);
        let b = homogeneous(&mut rng, &v, 3, 3);
        let s = sign(parity_of(&a).times(parity_of(&b)));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&s));
    }

    #[test]
    fn odd_elements_square_to_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = vars();
        let a = homogeneous(&mut rng, &v, 4, 3);
        if parity_of(&a).is_odd() {
            prop_assert!((&a * &a).is_zero());
        }
    }

    #[test]
    fn left_derivative_is_graded_leibniz(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = vars();
        let a = homogeneous(&mut rng, &v, 3, 3);
        let b = series(&mut rng, &v, 4, 3);
        let d = &v[which];
        let lhs = (&a * &b).left_derivative(d);
        let rhs = &a.left_derivative(d) * &b + (&a * &b.left_derivative(d)).scale(&sign(d.parity().times(parity_of(&a))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivatives_graded_commute(seed in any::<u64>(), i in 0usize..4, j in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = vars();
        let f = series(&mut rng, &v, 5, 4);
        let s = sign(v[i].parity().times(v[j].parity()));
        prop_assert_eq!(
            f.left_derivative(&v[j]).left_derivative(&v[i]),
            f.left_derivative(&v[i]).left_derivative(&v[j]).scale(&s)
        );
    }

    #[test]
    fn multiplication_associates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = vars();
        let (a, b, c) = (series(&mut rng, &v, 3, 2), series(&mut rng, &v, 3, 2), series(&mut rng, &v, 3, 2));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn parity_parts_reassemble(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = vars();
        let a = series(&mut rng, &v, 6, 3);
        let [even, odd] = a.parity_parts();
        prop_assert_eq!(&even + &odd, a);
        prop_assert!(even.terms().all(|(m, _)| m.parity().is_even()));
        prop_assert!(odd.terms().all(|(m, _)| m.parity().is_odd()));
    }
}

#[test]
fn odd_variable_times_itself_vanishes() {
    let v = vars();
    let theta = Series::var(&v[2]);
    assert!((&theta * &theta).is_zero());
    assert!(Series::product_of(&[v[3].clone(), v[0].clone(), v[3].clone()]).is_zero());
}
