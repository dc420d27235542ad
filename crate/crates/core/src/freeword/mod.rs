//! Exact traces of words in a free product of tracial "legs".
//!
//! The default model is `L∞([0,π/2]) ∗ LZ ∗ LZ`: one trigonometric leg `T`
//! (generated by `c = cos θ`, `s = sin θ`) and two Haar-unitary legs `u`, `v`.
//! Finite commutative legs (`ℂ^m` with the uniform trace) can be declared
//! through a JSON model file.
//!
//! Two independent trace algorithms are provided:
//! * [`Evaluator`] expands words in a basis and centers letters recursively;
//! * [`partition_trace`]/[`trace_bipartite`] sum free cumulants against
//!   partitioned traces over non-crossing partitions and their Kreweras
//!   complements.

mod cumulants;
mod eval;
mod leg;
mod partition;
mod syntax;
mod word;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{parse_q, Q};

pub use cumulants::{cumulants_to_moments, moments_to_cumulants, SubsetFunctional, MAX_CUMULANT_LEN};
pub use eval::Evaluator;
pub use leg::{LegElement, LegValue};
pub use partition::{
    partition_trace, potentially_nonzero_partitions, r_diagonal_filter, trace_bipartite, Family,
    HaarLetter,
};
pub use syntax::parse_word;
pub use word::{normalize, LegComb, Letter, NCPoly, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeError {
    #[error("unknown leg `{0}`")]
    UnknownLeg(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("ambiguous element `{0}`; qualify it as leg.element")]
    AmbiguousElement(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("invalid model: {0}")]
    Model(String),
    #[error("word length {len} exceeds the evaluation guard {max}")]
    SizeGuard { len: usize, max: usize },
    #[error("tuple length {len} exceeds the cumulant guard {max}")]
    LengthGuard { len: usize, max: usize },
    #[error("letters {0} and {1} belong to the same family; the word must alternate")]
    NotAlternating(usize, usize),
    #[error("leg `{0}` appears in both families")]
    FamilyOverlap(String),
    #[error("split has {split} entries but the word has {word} letters")]
    SplitLength { split: usize, word: usize },
}

/// Index of a leg inside a [`Model`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LegId(pub u16);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LegKind {
    /// `L∞([0,π/2])` with the normalized Lebesgue trace.
    Trig,
    /// `LZ` generated by a Haar unitary: `tr(uᵏ) = δ_{k,0}`.
    Haar,
    /// `ℂ^m` with weights `1/m`; named elements are rational m-vectors.
    Finite {
        m: usize,
        elements: BTreeMap<String, Vec<Q>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub name: String,
    pub kind: LegKind,
}

/// A set of mutually free legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    legs: Vec<Leg>,
}

pub const TRIG_LEG: LegId = LegId(0);
pub const U_LEG: LegId = LegId(1);
pub const V_LEG: LegId = LegId(2);

#[derive(Debug, Deserialize)]
struct ModelFile {
    legs: Vec<LegDecl>,
}

#[derive(Debug, Deserialize)]
struct LegDecl {
    name: String,
    kind: String,
    #[serde(default)]
    m: Option<usize>,
    #[serde(default)]
    elements: BTreeMap<String, Vec<String>>,
}

impl Model {
    /// `T` (trigonometric), `u`, `v` (Haar).
    pub fn standard() -> Self {
        Model {
            legs: vec![
                Leg { name: "T".into(), kind: LegKind::Trig },
                Leg { name: "u".into(), kind: LegKind::Haar },
                Leg { name: "v".into(), kind: LegKind::Haar },
            ],
        }
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn leg(&self, id: LegId) -> &Leg {
        &self.legs[id.0 as usize]
    }

    pub fn leg_id(&self, name: &str) -> Option<LegId> {
        self.legs
            .iter()
            .position(|l| l.name == name)
            .map(|i| LegId(i as u16))
    }

    /// Adds a leg; names must be unique.
    pub fn add_leg(&mut self, name: &str, kind: LegKind) -> Result<LegId, FreeError> {
        if self.leg_id(name).is_some() {
            return Err(FreeError::Model(format!("duplicate leg `{name}`")));
        }
        if let LegKind::Finite { m, elements } = &kind {
            if *m == 0 {
                return Err(FreeError::Model(format!("leg `{name}` needs m >= 1")));
            }
            if let Some((e, v)) = elements.iter().find(|(_, v)| v.len() != *m) {
                return Err(FreeError::Model(format!(
                    "element `{e}` of leg `{name}` has {} entries, expected {m}",
                    v.len()
                )));
            }
        }
        self.legs.push(Leg { name: name.to_string(), kind });
        Ok(LegId((self.legs.len() - 1) as u16))
    }

    /// Convenience for a finite leg with named vectors.
    pub fn add_finite_leg(
        &mut self,
        name: &str,
        m: usize,
        elements: &[(&str, Vec<Q>)],
    ) -> Result<LegId, FreeError> {
        let elements = elements
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.add_leg(name, LegKind::Finite { m, elements })
    }

    /// Standard legs plus the legs declared in a JSON model document:
    ///
    /// ```json
    /// {"legs": [{"name": "A1", "kind": "finite", "m": 2, "elements": {"p": ["1", "0"]}},
    ///           {"name": "w", "kind": "haar"}]}
    /// ```
    pub fn from_json(text: &str) -> Result<Self, FreeError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| FreeError::Model(e.to_string()))?;
        let mut model = Model::standard();
        for decl in file.legs {
            let kind = match decl.kind.as_str() {
                "trig" => LegKind::Trig,
                "haar" => LegKind::Haar,
                "finite" => {
                    let m = decl
                        .m
                        .ok_or_else(|| FreeError::Model(format!("leg `{}` needs m", decl.name)))?;
                    let mut elements = BTreeMap::new();
                    for (k, v) in decl.elements {
                        let vals: Option<Vec<Q>> = v.iter().map(|x| parse_q(x)).collect();
                        let vals = vals.ok_or_else(|| {
                            FreeError::Model(format!("element `{k}` has a malformed rational"))
                        })?;
                        elements.insert(k, vals);
                    }
                    LegKind::Finite { m, elements }
                }
                other => return Err(FreeError::Model(format!("unknown leg kind `{other}`"))),
            };
            model.add_leg(&decl.name, kind)?;
        }
        Ok(model)
    }

    /// Looks up `leg.element` or an unqualified element name.
    pub fn element(&self, name: &str) -> Result<(LegId, Vec<Q>), FreeError> {
        if let Some((leg, elem)) = name.split_once('.') {
            let id = self
                .leg_id(leg)
                .ok_or_else(|| FreeError::UnknownLeg(leg.to_string()))?;
            return match &self.leg(id).kind {
                LegKind::Finite { elements, .. } => elements
                    .get(elem)
                    .map(|v| (id, v.clone()))
                    .ok_or_else(|| FreeError::UnknownElement(name.to_string())),
                _ => Err(FreeError::UnknownElement(name.to_string())),
            };
        }
        let mut found = None;
        for (i, leg) in self.legs.iter().enumerate() {
            if let LegKind::Finite { elements, .. } = &leg.kind {
                if let Some(v) = elements.get(name) {
                    if found.is_some() {
                        return Err(FreeError::AmbiguousElement(name.to_string()));
                    }
                    found = Some((LegId(i as u16), v.clone()));
                }
            }
        }
        found.ok_or_else(|| FreeError::UnknownElement(name.to_string()))
    }
}

impl Default for Model {
    fn default() -> Self {
        Model::standard()
    }
}
