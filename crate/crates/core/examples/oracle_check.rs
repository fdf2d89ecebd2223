//! Pointwise confirmation of symbolic identities in a finite Grassmann algebra.

use gradedhom::geometry::{canonical_bracket, shifted_anticotangent, Chart};
use gradedhom::graded::{Parity, Series, Weight};
use gradedhom::oracle::{bracket_fn, identity_check, pointwise_check, Assignment, OracleConfig, PointFn};

fn main() -> gradedhom::Result<()> {
    let base = Chart::new(0, &[("x", Parity::EVEN, 0), ("theta", Parity::ODD, 1)])?;
    let ct = shifted_anticotangent(&base, Weight(1));
    let v = ct.vars().to_vec();
    let f = Series::var(&v[0]) * Series::var(&v[2]);
    let g = Series::var(&v[1]) * Series::var(&v[0]).pow(2) * Series::var(&v[3]);
    let sym = canonical_bracket(&f, &g, &ct)?;
    println!("[f, g] = {}", sym);
    let pt = bracket_fn(&PointFn::series(&f), &PointFn::series(&g), &ct)?;
    println!(
        "{}",
        pointwise_check("odd-bracket", &PointFn::series(&sym), &pt, &v, &Assignment::new(), OracleConfig::default())
    );
    let a = Series::var(&v[1]) * Series::var(&v[2]);
    let b = Series::var(&v[2]) * Series::var(&v[1]);
    println!("{}", identity_check(&a, &b.scale(&(-gradedhom::graded::rat(1))), 100, 8, 7));
    Ok(())
}
