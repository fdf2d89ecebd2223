//! Higher brackets on functions from a master Hamiltonian, with the Leibniz rule.

use gradedhom::geometry::{shifted_cotangent, Chart};
use gradedhom::graded::{ratio, Parity, Series, Weight};
use gradedhom::homotopy::{
    check_higher_jacobi, check_leibniz, check_master, derived_bracket_h, HamiltonianBrackets, LeibnizSample,
    MasterObject,
};

fn main() -> gradedhom::Result<()> {
    let base = Chart::new(0, &[("x", Parity::EVEN, 0), ("theta", Parity::ODD, 1)])?;
    let ct = shifted_cotangent(&base, Weight(0));
    let v = ct.vars().to_vec();
    let (x, th, px) = (Series::var(&v[0]), Series::var(&v[1]), Series::var(&v[2]));
    let h = &th * &px.pow(2) + (&th * &px.pow(3)).scale(&ratio(1, 6));
    println!("H = {}", h);
    println!("{}", check_master(&MasterObject::Hamiltonian(h.clone(), ct.clone()))?);
    println!("{{x, x}} = {}", derived_bracket_h(&h, &[x.clone(), x.clone()], &ct)?);
    println!("{{x, x, x}} = {}", derived_bracket_h(&h, &[x.clone(), x.clone(), x.clone()], &ct)?);
    let fam = HamiltonianBrackets::new(h, ct, 4)?;
    println!("{}", check_higher_jacobi(&fam, 4));
    let samples = vec![
        LeibnizSample { inputs: vec![x.clone()], b: x.pow(2), c: th.clone() },
        LeibnizSample { inputs: vec![x.clone(), x.clone()], b: th.clone(), c: x.clone() },
    ];
    println!("{}", check_leibniz(&fam, &samples)?);
    Ok(())
}
