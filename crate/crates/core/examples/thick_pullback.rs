//! Nonlinear pullback along a thick morphism, compared with its low-order expansion.

use gradedhom::geometry::{Chart, CotangentChart, FiberKind};
use gradedhom::graded::{ratio, Parity, Series, Weight};
use gradedhom::microformal::{pullback, pullback_expansion_oracle, ThickMorphism};

fn main() -> gradedhom::Result<()> {
    let m1 = Chart::new(0, &[("x", Parity::EVEN, 0)])?;
    let m2 = Chart::new(10, &[("y", Parity::EVEN, 0)])?;
    let q = Series::var(&CotangentChart::new(&m2, Weight(0), FiberKind::Even).fiber()[0]);
    let x = Series::var(&m1.vars()[0]);
    let y = Series::var(&m2.vars()[0]);
    let phi = ThickMorphism::new(&m1, &m2, Weight(0), FiberKind::Even, &x * &q + q.pow(2).scale(&ratio(1, 2)))?;

    let c = ratio(2, 3);
    let pb = pullback(&phi, &y.scale(&c), 4)?;
    println!("pullback of c*y with c = {}: {}", c, pb.f);

    let g = y.pow(2);
    let pb = pullback(&phi, &g, 4)?;
    println!("pullback of y^2 through order 4: {}", pb.f);
    println!("terms with at most two factors of g: {}", pb.through_order(2));
    println!("expansion: {}", pullback_expansion_oracle(&phi, &g, 2)?);
    Ok(())
}
