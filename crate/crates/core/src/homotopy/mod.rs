//! Higher derived brackets and the identities they satisfy.
//!
//! A [`BracketFamily`] is anything that evaluates multilinear brackets of every arity. Three sources
//! are provided: a homological field on `Π^{1+ε}V[1-k]` ([`QBrackets`]), a table of structure
//! constants ([`ExplicitBrackets`]) and a master function on a shifted (anti)cotangent bundle
//! ([`HamiltonianBrackets`]). The `check_*` functions never fail on a broken identity; they
//! return a [`Report`](crate::report::Report) naming each offending tuple.

mod checks;
mod family;
mod space;

pub use checks::{
    check_higher_jacobi, check_leibniz, check_master, check_symmetry, check_weights_parities, jacobiator,
    leibniz_exponent, list_brackets, LeibnizSample, MasterObject,
};
pub(crate) use family::nondecreasing_tuples;
pub use family::{
    derived_bracket_h, derived_bracket_q, BracketFamily, ExplicitBrackets, HamiltonianBrackets, QBrackets,
};
pub use space::{constant_field, BasisElement, GradedSpace, GradedVector, ShiftSignature};

/// Transport an explicit family on `L` to `ΠL`.
pub fn parity_reverse_brackets(fam: &ExplicitBrackets) -> ExplicitBrackets {
    fam.parity_reverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{shifted_anticotangent, shifted_cotangent, Chart, VectorField};
    use crate::graded::{rat, ratio, Parity, Series, Weight};
    use crate::Error;

    const E: Parity = Parity::EVEN;
    const O: Parity = Parity::ODD;

    fn lie2(k: i64) -> (GradedSpace, ShiftSignature, VectorField) {
        let space = GradedSpace::new(&[("e1", E, -k), ("e2", E, 0)]);
        let sig = ShiftSignature::new(0, k);
        let chart = space.coordinate_chart(sig, 0);
        let v = chart.vars();
        let q = VectorField::on_chart(&chart, vec![Series::zero(), Series::var(&v[0]) * Series::var(&v[1])]).unwrap();
        (space, sig, q)
    }

    #[test]
    fn constant_fields() {
        let space = GradedSpace::new(&[("e1", E, 0)]);
        let sig = ShiftSignature::new(1, 1);
        let chart = space.coordinate_chart(sig, 0);
        let i = constant_field(&GradedVector::basis(0), &space, sig, &chart).unwrap();
        assert_eq!(i.components()[0], Series::one());
        assert!(i.parity().is_even());
        assert_eq!(i.weight(), Weight(0));

        let space = GradedSpace::new(&[("e1", O, 2)]);
        let sig = ShiftSignature::new(0, 0);
        let chart = space.coordinate_chart(sig, 0);
        let i = constant_field(&GradedVector::basis(0), &space, sig, &chart).unwrap();
        assert_eq!(i.components()[0], Series::integer(-1));
        // u -> i_u is an odd map, so an odd u gives an even field
        assert!(i.parity().is_even());
        assert_eq!(i.weight(), Weight(1));

        let other = GradedSpace::new(&[("e1", E, 2)]);
        assert!(matches!(constant_field(&GradedVector::basis(0), &other, sig, &chart), Err(Error::ChartMismatch(_))));
    }

    #[test]
    fn lie_algebra_brackets_from_q() {
        for k in 0..3 {
            let (space, sig, q) = lie2(k);
            let fam = QBrackets::new(q, space, sig, 4).unwrap();
            let b = |i: usize, j: usize| fam.bracket(&[GradedVector::basis(i), GradedVector::basis(j)]).unwrap();
            assert_eq!(b(0, 1), GradedVector::basis(1).scale(&rat(-1)));
            assert_eq!(b(1, 0), GradedVector::basis(1));
            assert!(b(0, 0).is_zero() && b(1, 1).is_zero());
            assert!(fam.bracket(&[]).unwrap().is_zero());
            assert!(check_higher_jacobi(&fam, 4).passed());
            assert!(check_weights_parities(&fam, sig, 4).passed());
            assert!(check_symmetry(&fam, 3).passed());
        }
    }

    #[test]
    fn linear_field_gives_unary_bracket() {
        let space = GradedSpace::new(&[("e1", O, 0)]);
        let sig = ShiftSignature::new(1, 1);
        let chart = space.coordinate_chart(sig, 0);
        let y = chart.vars()[0].clone();
        assert!(y.is_odd());
        // y d/dy is even, so use the odd unary differential on a two-dimensional space instead
        let space = GradedSpace::new(&[("e1", E, 0), ("e2", O, 1)]);
        let chart = space.coordinate_chart(sig, 0);
        let v = chart.vars();
        let q = VectorField::on_chart(&chart, vec![Series::zero(), Series::var(&v[0])]).unwrap();
        let fam = QBrackets::new(q, space, sig, 4).unwrap();
        assert_eq!(fam.bracket(&[GradedVector::basis(0)]).unwrap(), GradedVector::basis(1).scale(&rat(-1)));
        assert!(fam.bracket(&[GradedVector::basis(1)]).unwrap().is_zero());
        assert!(fam.bracket(&[GradedVector::basis(0), GradedVector::basis(0)]).unwrap().is_zero());
        assert!(check_higher_jacobi(&fam, 4).passed());
        assert!(check_weights_parities(&fam, sig, 4).passed());
    }

    #[test]
    fn rejects_non_homological() {
        let space = GradedSpace::new(&[("e1", E, 0)]);
        let sig = ShiftSignature::new(0, 0);
        let chart = space.coordinate_chart(sig, 0);
        let xi = chart.vars()[0].clone();
        let even = VectorField::on_chart(&chart, vec![Series::var(&xi)]).unwrap();
        assert!(matches!(QBrackets::new(even, space, sig, 2), Err(Error::NotHomological(_))));
    }

    fn broken_lie(flip: bool) -> ExplicitBrackets {
        let space = GradedSpace::new(&[("e1", E, 0), ("e2", E, 0), ("e3", E, 0), ("e4", E, 0)]);
        let c = if flip { 1 } else { -1 };
        let v = |i: usize, c: i64| GradedVector::basis(i).scale(&rat(c));
        ExplicitBrackets::from_entries(
            space,
            ShiftSignature::new(0, 0),
            2,
            vec![(vec![0, 1], v(1, 1)), (vec![0, 2], v(2, c)), (vec![1, 2], v(3, 1))],
        )
        .unwrap()
    }

    #[test]
    fn explicit_jacobi_detects_broken_sign() {
        assert!(check_higher_jacobi(&broken_lie(false), 4).passed());
        let r = check_higher_jacobi(&broken_lie(true), 4);
        assert!(!r.passed());
        let first = r.failures().next().unwrap();
        assert!(first.location.starts_with("n=3"), "{}", first.location);
        assert!(r.failures().all(|e| e.location.starts_with("n=3") || e.location.starts_with("n=4")));
    }

    #[test]
    fn symmetrization_warnings() {
        let space = GradedSpace::new(&[("a", E, 0), ("b", E, 0)]);
        let sig = ShiftSignature::new(0, 0);
        let fam = ExplicitBrackets::from_entries(
            space.clone(),
            sig,
            2,
            vec![(vec![0, 1], GradedVector::basis(1)), (vec![1, 0], GradedVector::basis(1).scale(&rat(-1)))],
        )
        .unwrap();
        assert!(fam.warnings().is_empty());
        let fam = ExplicitBrackets::from_entries(
            space.clone(),
            sig,
            2,
            vec![(vec![0, 1], GradedVector::basis(1)), (vec![1, 0], GradedVector::basis(1))],
        )
        .unwrap();
        assert_eq!(fam.warnings().len(), 1);
        assert!(fam.table().is_empty());
        let fam = ExplicitBrackets::from_entries(space, sig, 2, vec![(vec![0, 0], GradedVector::basis(1))]).unwrap();
        assert_eq!(fam.warnings().len(), 1);
    }

    #[test]
    fn tabulate_and_reassemble() {
        let (space, sig, q) = lie2(1);
        let fam = QBrackets::new(q.clone(), space.clone(), sig, 4).unwrap();
        let table = ExplicitBrackets::tabulate(&fam, &space, 3).unwrap();
        let back = table.to_vector_field().unwrap();
        assert_eq!(back.components(), q.components());
        assert!(check_higher_jacobi(&table, 4).passed());
    }

    #[test]
    fn parity_reversion_round_trip() {
        let fam = broken_lie(false);
        let pi = parity_reverse_brackets(&fam);
        assert!(pi.signature().epsilon.is_odd());
        assert_eq!(pi.space().element(0).name, "Pi_e1");
        assert!(check_higher_jacobi(&pi, 4).passed());
        assert_eq!(pi.parity_reverse(), fam);
        let bad = parity_reverse_brackets(&broken_lie(true));
        assert!(!check_higher_jacobi(&bad, 3).passed());
    }

    #[test]
    fn odd_brackets_from_q() {
        // Q = y1 y2 d/dy3 with e1, e2 even and e3 odd
        let space = GradedSpace::new(&[("e1", E, 0), ("e2", E, 0), ("e3", O, 0)]);
        for k in 0..3 {
            let sig = ShiftSignature::new(1, k);
            let chart = space.coordinate_chart(sig, 0);
            let v = chart.vars();
            let q = VectorField::on_chart(
                &chart,
                vec![Series::zero(), Series::zero(), Series::var(&v[0]) * Series::var(&v[1])],
            )
            .unwrap();
            assert_eq!(q.weight(), Weight(1 - k));
            if k != 0 {
                assert!(check_master(&MasterObject::Field(q.clone())).map(|r| !r.passed()).unwrap());
                continue;
            }
            let fam = QBrackets::new(q, space.clone(), sig, 4).unwrap();
            let b = fam.bracket(&[GradedVector::basis(0), GradedVector::basis(1)]).unwrap();
            assert_eq!(b, GradedVector::basis(2));
            assert!(check_higher_jacobi(&fam, 4).passed());
            assert!(check_weights_parities(&fam, sig, 4).passed());
            assert!(check_symmetry(&fam, 3).passed());
        }
    }

    #[test]
    fn weight_two_field_fails_weight_check() {
        // Q = xi1 xi2 d/dxi2 with w(e1) = -1 at k = 0 has weight 2
        let space = GradedSpace::new(&[("e1", E, -1), ("e2", E, 0)]);
        let sig = ShiftSignature::new(0, 0);
        let chart = space.coordinate_chart(sig, 0);
        let v = chart.vars();
        let q = VectorField::on_chart(&chart, vec![Series::zero(), Series::var(&v[0]) * Series::var(&v[1])]).unwrap();
        assert_eq!(q.weight(), Weight(2));
        let fam = QBrackets::new(q, space, sig, 4).unwrap();
        let r = check_weights_parities(&fam, sig, 4);
        let f = r.failures().next().unwrap();
        assert!(f.notes.iter().any(|n| n == "weight discrepancy 1"), "{:?}", f);
    }

    #[test]
    fn hamiltonian_brackets() {
        // H = theta p_x^2 / 2 on T*M[0], M = (x even w 0, theta odd w 1): odd of weight 1 = 2 - k
        let base = Chart::new(0, &[("x", E, 0), ("theta", O, 1)]).unwrap();
        let ct = shifted_cotangent(&base, Weight(0));
        let (x, th, px) = (ct.vars()[0].clone(), ct.vars()[1].clone(), ct.vars()[2].clone());
        let h = (Series::var(&th) * Series::var(&px).pow(2)).scale(&ratio(1, 2));
        let r = check_master(&MasterObject::Hamiltonian(h.clone(), ct.clone())).unwrap();
        assert!(r.passed(), "{}", r);
        let fam = HamiltonianBrackets::new(h.clone(), ct.clone(), 4).unwrap();
        assert!(fam.signature().epsilon.is_odd());
        let xx = derived_bracket_h(&h, &[Series::var(&x), Series::var(&x)], &ct).unwrap();
        assert_eq!(xx, Series::var(&th));
        assert!(derived_bracket_h(&h, &[Series::var(&x)], &ct).unwrap().is_zero());
        assert!(check_higher_jacobi(&fam, 4).passed());
        assert!(check_weights_parities(&fam, fam.signature(), 4).passed());
        let even = Series::var(&px).pow(2).scale(&ratio(1, 2));
        assert!(matches!(check_master(&MasterObject::Hamiltonian(even, ct)), Err(Error::GradingMismatch(_))));
    }

    #[test]
    fn antihamiltonian_brackets() {
        // P = x2 xs_1 xs_2 on PiT*M[1] over two even weight-0 coordinates: Lie-Poisson of [e1,e2] = e2
        let base = Chart::new(0, &[("x1", E, 0), ("x2", E, 0)]).unwrap();
        let ct = shifted_anticotangent(&base, Weight(1));
        let v = ct.vars().to_vec();
        let p = Series::var(&v[1]) * Series::var(&v[2]) * Series::var(&v[3]);
        let r = check_master(&MasterObject::Hamiltonian(p.clone(), ct.clone())).unwrap();
        assert!(r.passed(), "{}", r);
        let fam = HamiltonianBrackets::new(p, ct.clone(), 4).unwrap();
        assert!(fam.signature().epsilon.is_even());
        assert!(check_higher_jacobi(&fam, 4).passed());
        assert!(check_weights_parities(&fam, fam.signature(), 4).passed());
        assert!(check_symmetry(&fam, 3).passed());
        let f = |s: &Series| fam.bracket(&[Series::var(&v[0]), s.clone()]).unwrap();
        assert!(!f(&Series::var(&v[1])).scale(&rat(1)).is_zero());
    }

    #[test]
    fn leibniz_signs() {
        let base = Chart::new(0, &[("x", E, 0), ("theta", O, 1)]).unwrap();
        let ct = shifted_cotangent(&base, Weight(0));
        let v = ct.vars().to_vec();
        let h = Series::var(&v[1]) * Series::var(&v[2]).pow(2)
            + Series::var(&v[0]) * Series::var(&v[1]) * Series::var(&v[2]);
        let fam = HamiltonianBrackets::new(h, ct, 4).unwrap();
        let (x, th) = (Series::var(&v[0]), Series::var(&v[1]));
        let samples = vec![
            LeibnizSample { inputs: vec![x.clone()], b: th.clone(), c: x.clone() },
            LeibnizSample { inputs: vec![th.clone()], b: x.pow(2), c: th.clone() },
            LeibnizSample { inputs: vec![], b: th.clone(), c: &x * &th },
            LeibnizSample { inputs: vec![x.clone()], b: Series::one(), c: &x * &th },
        ];
        let r = check_leibniz(&fam, &samples).unwrap();
        assert!(r.passed(), "{}", r);
        let bad = vec![LeibnizSample { inputs: vec![], b: &x + &th, c: x }];
        assert!(matches!(check_leibniz(&fam, &bad), Err(Error::GradingMismatch(_))));
        assert_eq!(leibniz_exponent(Parity::EVEN, &[E], O), E);
        assert_eq!(leibniz_exponent(Parity::ODD, &[E], O), O);
    }
}
