use std::path::Path;

use gradedhom::cli::{parse_problem, Object, ProblemFile};
use gradedhom::graded::{rat, Series};
use gradedhom::homotopy::{BracketFamily, QBrackets};
use gradedhom::microformal::pullback;
use gradedhom::oracle::{identity_check, oracle_derived_bracket_q, oracle_pullback_check, OracleConfig};

fn load(name: &str) -> ProblemFile {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/pass").join(name);
    parse_problem(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn derived_brackets_agree_with_pointwise_field() {
    for file in ["lie2.gk", "abelian_and_linear.gk", "curved.gk", "odd_brackets.gk"] {
        let pf = load(file);
        for obj in pf.objects.values() {
            let Object::Homological { space, field, sig, .. } = obj else { continue };
            let Some(Object::Space(v)) = pf.get(space) else { panic!() };
            let fam = QBrackets::new(field.clone(), v.clone(), *sig, 3).unwrap();
            let gens = fam.generators();
            for a in 0..gens.len() {
                for b in 0..gens.len() {
                    let sym = fam.bracket(&[gens[a].1.clone(), gens[b].1.clone()]).unwrap();
                    let pt = oracle_derived_bracket_q(field, &[a, b], v, *sig).unwrap();
                    assert_eq!(sym, pt, "{} [{}, {}]", file, gens[a].0, gens[b].0);
                }
            }
        }
    }
}

#[test]
fn pullbacks_agree_pointwise() {
    let mut checked = 0;
    for file in ["thick_even.gk", "thick_super.gk", "thick_odd.gk", "thick_shifted.gk"] {
        let pf = load(file);
        for obj in pf.objects.values() {
            let Object::Thick { target, phi, .. } = obj else { continue };
            for g in pf.objects.values() {
                let Object::Function { manifold, f } = g else { continue };
                if manifold != target || f.bigrade().map(|b| b.weight) != Ok(phi.shift()) {
                    continue;
                }
                let pb = pullback(phi, f, 3).unwrap();
                let r = oracle_pullback_check(phi, f, &pb, OracleConfig { trials: 20, ..Default::default() }).unwrap();
                assert!(r.passed(), "{}\n{}", file, r);
                checked += 1;
            }
        }
    }
    assert!(checked >= 6, "only {} pullbacks checked", checked);
}

#[test]
fn identity_oracle_catches_a_sign_error() {
    let pf = load("thick_super.gk");
    let Some(Object::Manifold(m)) = pf.get("M") else { panic!() };
    let v = m.vars();
    let (x, th) = (Series::var(&v[0]), Series::var(&v[1]));
    let good = identity_check(&(&x * &th), &(&th * &x), 30, 6, 1);
    assert!(good.passed());
    let t2 = &th * &th;
    assert!(identity_check(&t2, &Series::zero(), 30, 6, 2).passed());
    let bad = identity_check(&(&x * &th), &(&th * &x).scale(&rat(-1)), 30, 6, 3);
    assert!(!bad.passed());
}
