//! Transport of an even bracket family to odd brackets on the parity-reversed space and back.

use gradedhom::graded::{rat, Parity};
use gradedhom::homotopy::{
    check_higher_jacobi, parity_reverse_brackets, BracketFamily, ExplicitBrackets, GradedSpace, GradedVector,
    ShiftSignature,
};

fn main() -> gradedhom::Result<()> {
    let e = Parity::EVEN;
    let space = GradedSpace::new(&[("e1", e, 0), ("e2", e, 0), ("e3", e, 0), ("e4", e, 0)]);
    let v = |i: usize, c: i64| GradedVector::basis(i).scale(&rat(c));
    let fam = ExplicitBrackets::from_entries(
        space,
        ShiftSignature::new(0, 0),
        2,
        vec![(vec![0, 1], v(1, 1)), (vec![0, 2], v(2, -1)), (vec![1, 2], v(3, 1))],
    )?;
    let odd = parity_reverse_brackets(&fam);
    println!("reversed signature: {}", odd.signature());
    for (t, val) in odd.table() {
        let names: Vec<&str> = t.iter().map(|i| odd.space().element(*i).name.as_str()).collect();
        println!("[{}] = {}", names.join(", "), odd.space().show(val));
    }
    println!("{}", check_higher_jacobi(&odd, 3));
    println!("round trip is the identity: {}", odd.parity_reverse() == fam);
    Ok(())
}
