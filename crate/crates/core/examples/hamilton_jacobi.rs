//! A thick morphism relating two odd Hamiltonians, and the intertwining identity it implies.

use gradedhom::geometry::{Chart, CotangentChart, FiberKind};
use gradedhom::graded::{rat, Parity, Series, Weight};
use gradedhom::microformal::{check_hamilton_jacobi, check_intertwining, ThickMorphism};

fn main() -> gradedhom::Result<()> {
    let (e, o) = (Parity::EVEN, Parity::ODD);
    let m1 = Chart::new(0, &[("x", e, 0), ("theta", o, 1)])?;
    let m2 = Chart::new(10, &[("y", e, 0), ("eta", o, 1)])?;
    let t = CotangentChart::new(&m2, Weight(1), FiberKind::Odd);
    let (x, th) = (Series::var(&m1.vars()[0]), Series::var(&m1.vars()[1]));
    let (ys, es) = (Series::var(&t.fiber()[0]), Series::var(&t.fiber()[1]));
    let s = &x * &ys + &th * &es + (&ys * &es).scale(&rat(2));
    let phi = ThickMorphism::new(&m1, &m2, Weight(1), FiberKind::Odd, s)?;

    let p1 = &th * &Series::var(&phi.source_bundle().fiber()[0]);
    let p2 = Series::var(&m2.vars()[1]) * ys.clone();
    println!("P1 = {}, P2 = {}", p1, p2);
    println!("{}", check_hamilton_jacobi(&phi, &p1, &p2, Weight(0), 4)?);
    let g = Series::var(&m2.vars()[1]) * Series::var(&m2.vars()[0]).pow(2);
    println!("{}", check_intertwining(&phi, &p1, &p2, &g, Weight(0), 3)?);
    println!("{}", check_hamilton_jacobi(&phi, &p1, &p2.scale(&rat(2)), Weight(0), 4)?);
    Ok(())
}
