//! Brackets of the two-dimensional Lie algebra from its homological vector field.

use gradedhom::geometry::VectorField;
use gradedhom::graded::{Parity, Series};
use gradedhom::homotopy::{
    check_higher_jacobi, check_weights_parities, list_brackets, GradedSpace, QBrackets, ShiftSignature,
};

fn main() -> gradedhom::Result<()> {
    let space = GradedSpace::new(&[("e1", Parity::EVEN, 0), ("e2", Parity::EVEN, 0)]);
    let sig = ShiftSignature::new(0, 0);
    let chart = space.coordinate_chart(sig, 0);
    let xi = chart.vars();
    let q = VectorField::on_chart(&chart, vec![Series::zero(), Series::var(&xi[0]) * Series::var(&xi[1])])?;
    println!("Q = {}", q);
    let fam = QBrackets::new(q, space, sig, 4)?;
    println!("{}", list_brackets(&fam, 3));
    println!("{}", check_higher_jacobi(&fam, 4));
    println!("{}", check_weights_parities(&fam, sig, 4));
    Ok(())
}
