use std::time::Instant;

use freeprod::freeword::{Evaluator, LegElement, LegId, NCPoly, TRIG_LEG, U_LEG};
use freeprod::matmodel::{
    embed_conjugated_sum, embed_matrix_model, embed_matrix_model_conj, embed_sum_model,
    verify_partial_isometries, verify_rotation, Constants, Harness, Mat2,
};
use freeprod::rational::q;
use freeprod::trigalg::{PiValue, TrigPoly};

fn run(h: Harness, len: usize) {
    let t = Instant::now();
    let mut ev = Evaluator::new();
    let r = h.check(len, &mut ev).unwrap();
    eprintln!("{} len {len}: {} words, {:?}", h.name, r.words_checked, t.elapsed());
    assert!(r.pass(), "{:?}", r.failures);
}

#[test]
fn rotation_identity() {
    for r in 1..=20 {
        assert!(verify_rotation(r).pass, "r = {r}");
    }
}

#[test]
fn partial_isometries() {
    for c in verify_partial_isometries() {
        assert!(c.pass, "{}", c.name);
    }
}

#[test]
fn constants_examples() {
    let k = Constants::build();
    assert_eq!(k.u.mul(&k.u), Mat2::zero());
    let us = k.u.adjoint();
    assert_eq!(us.entry(2, 1), &NCPoly::letter(freeprod::freeword::Letter::Haar { leg: U_LEG, power: -1 }));
    assert!(us.entry(1, 2).is_zero());
    assert_eq!(k.w.mul(&k.w.adjoint()), Mat2::identity());
    assert_eq!(k.p0, Mat2::rational(q(1) / q(2), q(0), q(0), q(-1) / q(2)));
    let mut ev = Evaluator::new();
    assert_eq!(Mat2::identity().tr(&mut ev).unwrap(), PiValue::one());
}

#[test]
fn embeddings() {
    let k = Constants::build();
    let leg = LegId(3);
    let one = LegElement::atoms(leg, vec![q(1)]);
    let minus = LegElement::atoms(leg, vec![q(-1)]);
    let mut m = freeprod::freeword::Model::standard();
    m.add_finite_leg("T1", 1, &[]).unwrap();
    assert_eq!(embed_sum_model(&one, &minus), k.p0.scale(&q(2)));
    assert_eq!(embed_conjugated_sum(&one, &minus), k.q0.scale(&q(2)));
    let e12 = Mat2::rational(q(0), q(1), q(0), q(0));
    assert_eq!(embed_matrix_model(&e12), k.u);
    assert_eq!(embed_matrix_model_conj(&e12), k.x);
    let refl = Mat2::rational(q(1), q(0), q(0), q(-1));
    assert_eq!(embed_matrix_model_conj(&refl), k.q0.scale(&q(2)));
    let two_q0 = k.q0.scale(&q(2));
    let c2 = LegElement::trig(TRIG_LEG, TrigPoly::cos_k(2)).to_ncpoly();
    assert_eq!(two_q0.entry(1, 1), &c2);
}

#[test]
fn harness_pq() {
    run(Harness::pq(), 12);
}

#[test]
fn harness_ux() {
    run(Harness::ux(), 5);
}

#[test]
fn harness_px_uq() {
    run(Harness::px(), 6);
    run(Harness::uq(), 6);
}

#[test]
fn harness_sum() {
    run(Harness::sum(&Harness::default_finite_model()).unwrap(), 6);
}

#[test]
fn harness_mat() {
    run(Harness::mat(&Harness::default_finite_model()).unwrap(), 4);
}

#[test]
fn uncentered_generator_rejected() {
    let k = Constants::build();
    let mut h = Harness::pq();
    h.gen_a[0].mat = k.p.clone();
    assert!(h.check(2, &mut Evaluator::new()).is_err());
}
