#![allow(dead_code)]

use std::collections::BTreeMap;

use freeprod::freeword::{Family, LegElement, LegId, LegValue, Model, TRIG_LEG, U_LEG, V_LEG};
use freeprod::rational::{qf, Q};
use freeprod::trigalg::TrigPoly;
use rand::seq::SliceRandom;
use rand::Rng;

/// Standard legs plus a 3-atom finite leg `A`.
pub fn test_model() -> (Model, LegId) {
    let mut m = Model::standard();
    let a = m.add_finite_leg("A", 3, &[]).unwrap();
    (m, a)
}

pub fn small_q<R: Rng>(rng: &mut R) -> Q {
    qf(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn random_trig<R: Rng>(rng: &mut R) -> TrigPoly {
    let mut f = TrigPoly::constant(small_q(rng));
    for _ in 0..rng.gen_range(1..=2) {
        let k = rng.gen_range(1..=3);
        let basis = if rng.gen_bool(0.5) { TrigPoly::cos_k(k) } else { TrigPoly::sin_k(k) };
        f = f.add(&basis.scale(&small_q(rng)));
    }
    if rng.gen_bool(0.3) {
        f = f.mul(&TrigPoly::c());
    }
    f
}

pub fn random_element<R: Rng>(rng: &mut R, leg: LegId, atoms: LegId) -> LegElement {
    if leg == TRIG_LEG {
        LegElement::trig(leg, random_trig(rng))
    } else if leg == atoms {
        LegElement::atoms(leg, (0..3).map(|_| small_q(rng)).collect())
    } else if rng.gen_bool(0.7) {
        let p = *[1, -1, 1, -1, 2, -2].choose(rng).unwrap();
        LegElement::haar(leg, p)
    } else {
        let mut m = BTreeMap::new();
        for _ in 0..2 {
            m.insert(rng.gen_range(-2..=2), small_q(rng));
        }
        LegElement { leg, value: LegValue::Laurent(m) }
    }
}

/// A random alternating word for a random bipartition of the legs.
pub fn random_admissible<R: Rng>(rng: &mut R, max_len: usize) -> (Vec<LegElement>, Vec<Family>) {
    let (_, atoms) = test_model();
    let all = [TRIG_LEG, U_LEG, V_LEG, atoms];
    let mut f1: Vec<LegId> = Vec::new();
    let mut f2: Vec<LegId> = Vec::new();
    for &l in &all {
        if rng.gen_bool(0.5) {
            f1.push(l);
        } else {
            f2.push(l);
        }
    }
    if f1.is_empty() {
        f1.push(f2.pop().unwrap());
    }
    if f2.is_empty() {
        f2.push(f1.pop().unwrap());
    }
    let len = rng.gen_range(1..=max_len);
    let mut fam = if rng.gen_bool(0.5) { Family::F1 } else { Family::F2 };
    let mut word = Vec::new();
    let mut split = Vec::new();
    for _ in 0..len {
        let legs = if fam == Family::F1 { &f1 } else { &f2 };
        let leg = *legs.choose(rng).unwrap();
        word.push(random_element(rng, leg, atoms));
        split.push(fam);
        fam = if fam == Family::F1 { Family::F2 } else { Family::F1 };
    }
    (word, split)
}

/// A random raw word over the standard legs and `A`.
pub fn random_raw<R: Rng>(rng: &mut R, len: usize) -> Vec<LegElement> {
    let (_, atoms) = test_model();
    let all = [TRIG_LEG, U_LEG, V_LEG, atoms];
    (0..len)
        .map(|_| {
            let leg = *all.choose(rng).unwrap();
            random_element(rng, leg, atoms)
        })
        .collect()
}

/// Golden rewrite case: input and expected `M₂ᵈ(LF_t)`.
pub struct Golden {
    pub input: String,
    pub depth: u32,
    pub param: Q,
    pub alias: Option<Q>,
}

fn golden(input: impl Into<String>, depth: u32, param: Q, alias: Option<Q>) -> Golden {
    Golden { input: input.into(), depth, param, alias }
}

/// Closed-form normal forms for small free products.
pub fn rewrite_corpus() -> Vec<Golden> {
    use freeprod::rational::q;
    let mut v = vec![
        golden("C^2 * C^2", 1, q(1), None),
        golden("M2(C) * C^2", 1, q(2), Some(qf(5, 4))),
        golden("M2(C) * M2(C)", 1, q(3), Some(qf(3, 2))),
        golden("R * R", 1, q(5), Some(q(2))),
        golden("C^4 * C^4", 1, q(3), Some(qf(3, 2))),
        golden("M2(M2(LF(2)))", 2, q(2), Some(qf(17, 16))),
    ];
    let params = [q(0), q(1), q(2), qf(5, 2)];
    for l in &params {
        v.push(golden(format!("LZ * M2(LF({l}))"), 1, l + q(4), None));
        v.push(golden(format!("R * M2(LF({l}))"), 1, l + q(4), None));
        v.push(golden(format!("M2(LF({l})) * LZ"), 1, l + q(4), None));
        for m in &params {
            v.push(golden(format!("R * (LF({l}) (+) LF({m}))"), 1, l + m + q(3), None));
            v.push(golden(format!("(LF({l}) (+) LF({m})) * LZ"), 1, l + m + q(3), None));
            v.push(golden(format!("M2(LF({l})) * M2(LF({m}))"), 1, l + m + q(3), None));
            for k in &params {
                v.push(golden(format!("(LF({l}) (+) LF({m})) * M2(LF({k}))"), 1, l + m + k + q(2), None));
                for j in &params {
                    v.push(golden(
                        format!("(LF({l}) (+) LF({m})) * (LF({k}) (+) LF({j}))"),
                        1,
                        l + m + k + j + q(1),
                        None,
                    ));
                }
            }
        }
    }
    for i in 4..=24 {
        let t = qf(i, 4);
        v.push(golden(format!("R * LF({t})"), 0, t + q(1), None));
    }
    v
}

/// Random free-product fragment with at least two non-trivial factors.
pub fn random_fragment<R: Rng>(rng: &mut R) -> freeprod::freedim::Expr {
    use freeprod::freedim::Expr;
    fn atom<R: Rng>(rng: &mut R) -> Expr {
        match rng.gen_range(0..4) {
            0 => Expr::C,
            1 => Expr::LZ,
            2 => Expr::R,
            _ => Expr::LF([qf(0, 1), qf(1, 1), qf(3, 2), qf(2, 1), qf(5, 2), qf(3, 1)].choose(rng).unwrap().clone()),
        }
    }
    fn product<R: Rng>(rng: &mut R, depth: u32) -> Expr {
        let n = rng.gen_range(2..=3);
        Expr::Free((0..n).map(|_| sub(rng, depth)).collect())
    }
    fn sub<R: Rng>(rng: &mut R, depth: u32) -> Expr {
        if depth == 0 {
            return atom(rng);
        }
        match rng.gen_range(0..5) {
            0 | 1 => atom(rng),
            2 => Expr::sum(sub(rng, depth - 1), sub(rng, depth - 1)),
            3 => Expr::mat(atom(rng)),
            _ => Expr::mat(product(rng, depth - 1)),
        }
    }
    let trivial = |e: &Expr| matches!(e, Expr::C) || *e == Expr::LF(qf(0, 1));
    loop {
        let n = rng.gen_range(2..=4);
        let factors: Vec<Expr> = (0..n).map(|_| sub(rng, 2)).collect();
        if factors.iter().filter(|f| !trivial(f)).count() >= 2 {
            return Expr::Free(factors);
        }
    }
}

/// CLI golden invocations: file stem, arguments, expected exit code.
pub fn cli_cases() -> Vec<(&'static str, Vec<&'static str>, i32)> {
    vec![
        ("nc_enum_count", vec!["nc-enum", "--n", "4", "--count"], 0),
        ("nc_enum_list", vec!["nc-enum", "--n", "4"], 0),
        ("nc_enum_json", vec!["nc-enum", "--n", "3", "--json"], 0),
        ("nc_kreweras", vec!["nc-kreweras", "--partition", "1,7|2|3,5|4|6"], 0),
        ("nc_lemma", vec!["nc-lemma", "--n", "8"], 0),
        ("trace", vec!["trace", "--word", "c u c u*"], 0),
        ("trace_json", vec!["trace", "--word", "u s v s u* v*", "--json"], 0),
        ("free_check_ux", vec!["free-check", "--model", "UX", "--max-len", "4"], 0),
        ("free_check_pq_json", vec!["free-check", "--model", "PQ", "--max-len", "8", "--json"], 0),
        ("normalize_rr", vec!["normalize", "--expr", "R * R"], 0),
        ("normalize_steps", vec!["normalize", "--expr", "C^4 * C^4", "--steps"], 0),
        ("normalize_json", vec!["normalize", "--expr", "(LF(2) (+) C) * M2(R) * LZ", "--json"], 0),
        ("normalize_seeded", vec!["normalize", "--expr", "M2(C) * LZ * R * R", "--seed", "7", "--steps"], 0),
        ("normalize_unsupported", vec!["normalize", "--expr", "M3(C) * R"], 2),
        ("normalize_syntax", vec!["normalize", "--expr", "C ** R"], 2),
        ("tables", vec!["tables", "--n-max", "4"], 0),
    ]
}
