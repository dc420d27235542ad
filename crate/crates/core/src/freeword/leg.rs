use std::collections::BTreeMap;

use num_traits::Zero;

use super::word::{Letter, NCPoly};
use super::LegId;
use crate::rational::{q, qf, Q};
use crate::trigalg::{PiValue, TrigPoly};

/// Element of a single leg, in that leg's own coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LegValue {
    Trig(TrigPoly),
    /// Laurent polynomial `Σ aₖ uᵏ` in a Haar unitary.
    Laurent(BTreeMap<i64, Q>),
    /// Vector in `ℂ^m`, pointwise product, uniform trace.
    Atoms(Vec<Q>),
}

/// An element of one leg of the free product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegElement {
    pub leg: LegId,
    pub value: LegValue,
}

impl LegElement {
    pub fn trig(leg: LegId, f: TrigPoly) -> Self {
        LegElement { leg, value: LegValue::Trig(f) }
    }

    /// `uᵖ` (`p = -1` is `u*`).
    pub fn haar(leg: LegId, power: i64) -> Self {
        let mut m = BTreeMap::new();
        m.insert(power, q(1));
        LegElement { leg, value: LegValue::Laurent(m) }
    }

    pub fn atoms(leg: LegId, v: Vec<Q>) -> Self {
        LegElement { leg, value: LegValue::Atoms(v) }
    }

    /// The unit of this element's leg.
    pub fn unit(&self) -> Self {
        let value = match &self.value {
            LegValue::Trig(_) => LegValue::Trig(TrigPoly::one()),
            LegValue::Laurent(_) => {
                let mut m = BTreeMap::new();
                m.insert(0, q(1));
                LegValue::Laurent(m)
            }
            LegValue::Atoms(v) => LegValue::Atoms(vec![q(1); v.len()]),
        };
        LegElement { leg: self.leg, value }
    }

    /// Product inside the leg. Panics when legs or kinds differ.
    pub fn mul(&self, other: &LegElement) -> LegElement {
        assert_eq!(self.leg, other.leg, "leg product across different legs");
        let value = match (&self.value, &other.value) {
            (LegValue::Trig(a), LegValue::Trig(b)) => LegValue::Trig(a.mul(b)),
            (LegValue::Laurent(a), LegValue::Laurent(b)) => {
                let mut out: BTreeMap<i64, Q> = BTreeMap::new();
                for (i, x) in a {
                    for (j, y) in b {
                        *out.entry(i + j).or_insert_with(Q::zero) += x * y;
                    }
                }
                out.retain(|_, v| !v.is_zero());
                LegValue::Laurent(out)
            }
            (LegValue::Atoms(a), LegValue::Atoms(b)) => {
                assert_eq!(a.len(), b.len());
                LegValue::Atoms(a.iter().zip(b).map(|(x, y)| x * y).collect())
            }
            _ => panic!("leg product across different leg kinds"),
        };
        LegElement { leg: self.leg, value }
    }

    /// The leg's own trace.
    pub fn trace(&self) -> PiValue {
        match &self.value {
            LegValue::Trig(f) => f.trace(),
            LegValue::Laurent(m) => PiValue::rational(m.get(&0).cloned().unwrap_or_else(Q::zero)),
            LegValue::Atoms(v) => {
                let sum: Q = v.iter().cloned().fold(Q::zero(), |a, b| a + b);
                PiValue::rational(sum / Q::from_integer((v.len() as i64).into()))
            }
        }
    }

    pub fn adjoint(&self) -> LegElement {
        let value = match &self.value {
            LegValue::Laurent(m) => LegValue::Laurent(m.iter().map(|(k, v)| (-k, v.clone())).collect()),
            other => other.clone(),
        };
        LegElement { leg: self.leg, value }
    }

    /// If this is a single power of a Haar unitary, that power.
    pub fn haar_power(&self) -> Option<i64> {
        match &self.value {
            LegValue::Laurent(m) if m.len() == 1 => {
                let (k, v) = m.iter().next().unwrap();
                (*v == q(1)).then_some(*k)
            }
            _ => None,
        }
    }

    /// Expansion `scalar + Σ coeff·letter` in the leg's basis: `c_k, s_k`
    /// for trig legs, `uᵏ (k≠0)` for Haar legs, atoms `e_0..e_{m-2}` for finite
    /// legs (the last atom is `1 − Σ others`).
    pub fn to_ncpoly(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        match &self.value {
            LegValue::Trig(f) => {
                for (k, a) in f.cos_terms() {
                    if k == 0 {
                        out.add_term(Vec::new(), PiValue::rational(a.clone()));
                    } else {
                        out.add_term(vec![Letter::Cos { leg: self.leg, k }], PiValue::rational(a.clone()));
                    }
                }
                for (k, b) in f.sin_terms() {
                    out.add_term(vec![Letter::Sin { leg: self.leg, k }], PiValue::rational(b.clone()));
                }
            }
            LegValue::Laurent(m) => {
                for (&p, a) in m {
                    let word = if p == 0 {
                        Vec::new()
                    } else {
                        vec![Letter::Haar { leg: self.leg, power: p }]
                    };
                    out.add_term(word, PiValue::rational(a.clone()));
                }
            }
            LegValue::Atoms(v) => {
                let m = v.len();
                let last = v[m - 1].clone();
                out.add_term(Vec::new(), PiValue::rational(last.clone()));
                for (i, x) in v[..m - 1].iter().enumerate() {
                    out.add_term(
                        vec![Letter::Atom { leg: self.leg, index: i as u16, m: m as u16 }],
                        PiValue::rational(x - &last),
                    );
                }
            }
        }
        out
    }
}

/// Trace of a single basis letter (`Centered` letters have trace 0).
pub(crate) fn letter_trace(letter: &Letter) -> PiValue {
    match letter {
        Letter::Cos { k, .. } => TrigPoly::cos_k(*k).trace(),
        Letter::Sin { k, .. } => TrigPoly::sin_k(*k).trace(),
        Letter::Haar { .. } => PiValue::zero(),
        Letter::Atom { m, .. } => PiValue::rational(qf(1, *m as i64)),
        Letter::Centered(_) => PiValue::zero(),
    }
}

/// The leg element a (non-centered) basis letter stands for.
pub(crate) fn letter_value(letter: &Letter) -> LegElement {
    match letter {
        Letter::Cos { leg, k } => LegElement::trig(*leg, TrigPoly::cos_k(*k)),
        Letter::Sin { leg, k } => LegElement::trig(*leg, TrigPoly::sin_k(*k)),
        Letter::Haar { leg, power } => LegElement::haar(*leg, *power),
        Letter::Atom { leg, index, m } => {
            let mut v = vec![q(0); *m as usize];
            v[*index as usize] = q(1);
            LegElement::atoms(*leg, v)
        }
        Letter::Centered(inner) => letter_value(inner),
    }
}
