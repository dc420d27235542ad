use std::collections::BTreeMap;
use std::fmt;

use super::leg::{letter_trace, letter_value, LegElement};
use super::{LegId, Model, TRIG_LEG, U_LEG, V_LEG};
use crate::trigalg::PiValue;

/// Basis letter of one leg.
///
/// Trigonometric legs use `c_k = cos kθ` and `s_k = sin kθ` (`k ≥ 1`), Haar
/// legs the powers `uᵏ (k ≠ 0)`, finite legs the atoms `e_0..e_{m-2}`.
/// `Centered(x)` stands for `x − tr(x)` and only appears inside trace
/// evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Cos { leg: LegId, k: u32 },
    Sin { leg: LegId, k: u32 },
    Haar { leg: LegId, power: i64 },
    Atom { leg: LegId, index: u16, m: u16 },
    Centered(Box<Letter>),
}

impl Letter {
    pub fn leg(&self) -> LegId {
        match self {
            Letter::Cos { leg, .. }
            | Letter::Sin { leg, .. }
            | Letter::Haar { leg, .. }
            | Letter::Atom { leg, .. } => *leg,
            Letter::Centered(inner) => inner.leg(),
        }
    }

    pub fn adjoint(&self) -> Letter {
        match self {
            Letter::Haar { leg, power } => Letter::Haar { leg: *leg, power: -power },
            Letter::Centered(inner) => Letter::Centered(Box::new(inner.adjoint())),
            other => other.clone(),
        }
    }

    pub fn trace(&self) -> PiValue {
        letter_trace(self)
    }

    fn render(&self, model: Option<&Model>) -> String {
        let leg_name = |leg: &LegId| match model {
            Some(m) => m.leg(*leg).name.clone(),
            None => match *leg {
                U_LEG => "u".into(),
                V_LEG => "v".into(),
                TRIG_LEG => "T".into(),
                LegId(i) => format!("#{i}"),
            },
        };
        let trig_suffix = |leg: &LegId| {
            if *leg == TRIG_LEG {
                String::new()
            } else {
                format!("@{}", leg_name(leg))
            }
        };
        match self {
            Letter::Cos { leg, k: 1 } => format!("c{}", trig_suffix(leg)),
            Letter::Cos { leg, k } => format!("c[{k}]{}", trig_suffix(leg)),
            Letter::Sin { leg, k: 1 } => format!("s{}", trig_suffix(leg)),
            Letter::Sin { leg, k } => format!("s[{k}]{}", trig_suffix(leg)),
            Letter::Haar { leg, power: 1 } => leg_name(leg),
            Letter::Haar { leg, power: -1 } => format!("{}*", leg_name(leg)),
            Letter::Haar { leg, power } => format!("{}^{power}", leg_name(leg)),
            Letter::Atom { leg, index, .. } => format!("{}.e{index}", leg_name(leg)),
            Letter::Centered(inner) => format!("({})°", inner.render(model)),
        }
    }
}

pub type Word = Vec<Letter>;

/// Product of two letters from the same leg, as `scalar + Σ coeff·letter`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegComb {
    pub scalar: PiValue,
    pub terms: Vec<(Letter, PiValue)>,
}

fn split_center(letter: &Letter) -> (LegElement, PiValue) {
    match letter {
        Letter::Centered(inner) => (letter_value(inner), -&letter_trace(inner)),
        other => (letter_value(other), PiValue::zero()),
    }
}

pub(crate) fn letter_product(a: &Letter, b: &Letter) -> LegComb {
    debug_assert_eq!(a.leg(), b.leg());
    let (x, alpha) = split_center(a);
    let (y, beta) = split_center(b);
    // (x + α)(y + β) = xy + α·y + β·x + αβ
    let mut poly = x.mul(&y).to_ncpoly();
    if !alpha.is_zero() {
        poly.add_scaled(&y.to_ncpoly(), &alpha);
    }
    if !beta.is_zero() {
        poly.add_scaled(&x.to_ncpoly(), &beta);
    }
    if !alpha.is_zero() && !beta.is_zero() {
        poly.add_term(Vec::new(), &alpha * &beta);
    }
    let mut comb = LegComb { scalar: PiValue::zero(), terms: Vec::new() };
    for (w, c) in poly.terms {
        match w.len() {
            0 => comb.scalar = c,
            1 => comb.terms.push((w.into_iter().next().unwrap(), c)),
            _ => unreachable!("leg product expands into single letters"),
        }
    }
    comb
}

/// Normalized product of two alternating words: boundary letters from the
/// same leg are merged and scalar parts peeled off, cascading inward.
pub(crate) fn concat(left: &[Letter], right: &[Letter]) -> Vec<(Word, PiValue)> {
    let mut states: Vec<(Word, PiValue)> = vec![(left.to_vec(), PiValue::one())];
    for y in right {
        let mut next = Vec::with_capacity(states.len());
        for (mut w, c) in states {
            match w.last() {
                Some(last) if last.leg() == y.leg() => {
                    let last = w.pop().unwrap();
                    let comb = letter_product(&last, y);
                    for (z, cz) in comb.terms {
                        let mut w2 = w.clone();
                        w2.push(z);
                        next.push((w2, &c * &cz));
                    }
                    if !comb.scalar.is_zero() {
                        next.push((w, &c * &comb.scalar));
                    }
                }
                _ => {
                    w.push(y.clone());
                    next.push((w, c));
                }
            }
        }
        states = next;
    }
    states
}

/// Finite linear combination of alternating words with `ℚ[λ]` coefficients.
/// The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, PiValue>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(PiValue::one())
    }

    pub fn scalar(v: PiValue) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), v);
        p
    }

    /// A single word, assumed alternating.
    pub fn word(w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, PiValue::one());
        p
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(vec![l])
    }

    pub fn element(e: &LegElement) -> Self {
        e.to_ncpoly()
    }

    pub fn add_term(&mut self, w: Word, c: PiValue) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, s: &PiValue) {
        if s.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c * s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PiValue)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(v)` when the polynomial is `v·1`.
    pub fn as_scalar(&self) -> Option<PiValue> {
        match self.terms.len() {
            0 => Some(PiValue::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &PiValue) -> NCPoly {
        let mut out = NCPoly::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let c = ca * cb;
                for (w, cw) in concat(wa, wb) {
                    out.add_term(w, &c * &cw);
                }
            }
        }
        out
    }

    /// Reverses words and adjoints letters; coefficients are real.
    pub fn adjoint(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let rev: Word = w.iter().rev().map(Letter::adjoint).collect();
            out.add_term(rev, c.clone());
        }
        out
    }

    /// Text with leg names taken from `model`.
    pub fn render(&self, model: &Model) -> String {
        self.render_opt(Some(model))
    }

    fn render_opt(&self, model: Option<&Model>) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = w.iter().map(|l| l.render(model)).collect::<Vec<_>>().join(" ");
                match (w.is_empty(), c.is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => word,
                    (false, false) => format!("({c})*{word}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_opt(None))
    }
}

/// Product of a raw sequence of leg elements, merged into alternating form.
pub fn normalize(letters: &[LegElement]) -> NCPoly {
    letters
        .iter()
        .fold(NCPoly::one(), |acc, e| acc.mul(&e.to_ncpoly()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, q};
    use crate::trigalg::TrigPoly;

    fn c() -> LegElement {
        LegElement::trig(TRIG_LEG, TrigPoly::c())
    }
    fn u(p: i64) -> LegElement {
        LegElement::haar(U_LEG, p)
    }

    #[test]
    fn unitary_cancels() {
        assert_eq!(normalize(&[u(1), u(-1)]), NCPoly::one());
    }

    #[test]
    fn c_squared() {
        let got = normalize(&[c(), c()]);
        let mut expected = NCPoly::scalar(PiValue::rational(half()));
        expected.add_term(vec![Letter::Cos { leg: TRIG_LEG, k: 2 }], PiValue::rational(half()));
        assert_eq!(got, expected);
    }

    #[test]
    fn scalar_part_lets_neighbours_merge() {
        let got = normalize(&[u(1), c(), c(), u(1)]);
        let mut expected = NCPoly::zero();
        expected.add_term(vec![Letter::Haar { leg: U_LEG, power: 2 }], PiValue::rational(half()));
        expected.add_term(
            vec![
                Letter::Haar { leg: U_LEG, power: 1 },
                Letter::Cos { leg: TRIG_LEG, k: 2 },
                Letter::Haar { leg: U_LEG, power: 1 },
            ],
            PiValue::rational(half()),
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn cascade_through_cancelled_unitaries() {
        // c u u* c = c² since u u* = 1
        let got = normalize(&[c(), u(1), u(-1), c()]);
        assert_eq!(got, normalize(&[c(), c()]));
    }

    #[test]
    fn adjoint_reverses() {
        let p = normalize(&[u(1), c(), LegElement::haar(V_LEG, 1)]);
        let a = p.adjoint();
        assert_eq!(a, normalize(&[LegElement::haar(V_LEG, -1), c(), u(-1)]));
        assert_eq!(a.adjoint(), p);
    }

    #[test]
    fn atoms_expand_in_basis() {
        let leg = LegId(3);
        let v = LegElement::atoms(leg, vec![q(2), q(5)]);
        let p = v.to_ncpoly();
        // (2,5) = 5·1 − 3·e0
        assert_eq!(p.as_scalar(), None);
        assert_eq!(p.len(), 2);
        let sq = p.mul(&p);
        assert_eq!(sq, LegElement::atoms(leg, vec![q(4), q(25)]).to_ncpoly());
    }
}
