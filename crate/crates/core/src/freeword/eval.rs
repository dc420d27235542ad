use std::collections::{BTreeMap, HashMap};

use super::word::{concat, Letter, NCPoly, Word};
use super::FreeError;
use crate::trigalg::PiValue;

/// Default bound on the length of a word handed to [`Evaluator::trace_word`].
pub const DEFAULT_MAX_LEN: usize = 96;

/// Trace evaluator by recursive centering.
///
/// For an alternating word, pick the first letter `x` with `tr(x) ≠ 0` and
/// write `x = x° + tr(x)`. The `tr(x)` part leaves a shorter product that is
/// re-normalized; the `x°` part has one more centered letter. A word whose
/// letters are all centered has trace zero by freeness.
#[derive(Debug, Clone)]
pub struct Evaluator {
    memo: HashMap<Word, PiValue>,
    max_len: usize,
    haar_shortcut: bool,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator { memo: HashMap::new(), max_len: DEFAULT_MAX_LEN, haar_shortcut: true }
    }

    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = max_len;
        self
    }

    /// Toggles the rule that a word whose Haar powers do not cancel per leg
    /// has trace 0. Off, the recursion alone decides.
    pub fn with_haar_shortcut(mut self, on: bool) -> Self {
        self.haar_shortcut = on;
        self
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn trace_poly(&mut self, p: &NCPoly) -> Result<PiValue, FreeError> {
        let mut total = PiValue::zero();
        for (w, c) in p.terms() {
            let t = self.trace_word(w)?;
            if !t.is_zero() {
                total.add_assign_ref(&(c * &t));
            }
        }
        Ok(total)
    }

    /// Trace of an alternating word.
    pub fn trace_word(&mut self, w: &[Letter]) -> Result<PiValue, FreeError> {
        if w.len() > self.max_len {
            return Err(FreeError::SizeGuard { len: w.len(), max: self.max_len });
        }
        if w.is_empty() {
            return Ok(PiValue::one());
        }
        if self.haar_shortcut && !haar_balanced(w) {
            return Ok(PiValue::zero());
        }
        if let Some(v) = self.memo.get(w) {
            return Ok(v.clone());
        }
        let value = self.centering_step(w)?;
        self.memo.insert(w.to_vec(), value.clone());
        Ok(value)
    }

    fn centering_step(&mut self, w: &[Letter]) -> Result<PiValue, FreeError> {
        let pick = w
            .iter()
            .enumerate()
            .find_map(|(i, l)| {
                let t = l.trace();
                (!t.is_zero()).then_some((i, t))
            });
        let Some((i, tau)) = pick else {
            return Ok(PiValue::zero());
        };
        let mut total = PiValue::zero();
        for (shorter, c) in concat(&w[..i], &w[i + 1..]) {
            let t = self.trace_word(&shorter)?;
            if !t.is_zero() {
                total.add_assign_ref(&(&(&c * &t) * &tau));
            }
        }
        let mut centered = w.to_vec();
        centered[i] = Letter::Centered(Box::new(w[i].clone()));
        let rest = self.trace_word(&centered)?;
        total.add_assign_ref(&rest);
        Ok(total)
    }
}

fn haar_balanced(w: &[Letter]) -> bool {
    let mut sums: BTreeMap<_, i64> = BTreeMap::new();
    for l in w {
        let base = match l {
            Letter::Centered(inner) => inner.as_ref(),
            other => other,
        };
        if let Letter::Haar { leg, power } = base {
            *sums.entry(*leg).or_default() += power;
        }
    }
    sums.values().all(|&s| s == 0)
}
