use std::collections::HashMap;

use super::cumulants::{moments_to_cumulants, SubsetFunctional, MAX_CUMULANT_LEN};
use super::leg::LegElement;
use super::{FreeError, LegId};
use crate::ncpart::{enumerate_unchecked, NCPartition, MAX_ENUMERATE};
use crate::trigalg::PiValue;

/// Side of a letter in a bipartite split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    F1,
    F2,
}

/// A Haar-unitary letter `uᵖ`, as seen by the R-diagonal filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HaarLetter {
    pub leg: LegId,
    pub power: i64,
}

/// Whether a tuple of Haar letters can have a nonzero free cumulant: one leg,
/// powers `±1` strictly alternating, even length.
pub fn r_diagonal_filter(letters: &[HaarLetter]) -> bool {
    let Some(first) = letters.first() else {
        return false;
    };
    letters.len().is_multiple_of(2)
        && letters.iter().all(|l| l.leg == first.leg && l.power.abs() == 1)
        && letters.windows(2).all(|w| w[0].power == -w[1].power)
}

fn merge_adjacent(elems: &[LegElement]) -> Vec<LegElement> {
    let mut out: Vec<LegElement> = Vec::with_capacity(elems.len());
    for e in elems {
        match out.last_mut() {
            Some(last) if last.leg == e.leg => *last = last.mul(e),
            _ => out.push(e.clone()),
        }
    }
    out
}

/// Trace of a product of leg elements from the free product, by the
/// non-crossing cumulant formula `tr(a₁b₁⋯a_kb_k) = Σ_π κ_π[a] · tr_{K(π)}[b]`
/// with the `a`'s taken from the leg of the first element.
pub fn partition_trace(elems: &[LegElement]) -> Result<PiValue, FreeError> {
    PartitionEval::default().trace(elems)
}

#[derive(Default)]
struct PartitionEval {
    memo: HashMap<Vec<LegElement>, PiValue>,
    nc: HashMap<usize, Vec<NCPartition>>,
}

impl PartitionEval {
    fn nc(&mut self, k: usize) -> Vec<NCPartition> {
        self.nc.entry(k).or_insert_with(|| enumerate_unchecked(k)).clone()
    }

    fn trace(&mut self, elems: &[LegElement]) -> Result<PiValue, FreeError> {
        if elems.is_empty() {
            return Ok(PiValue::one());
        }
        let mut seq = merge_adjacent(elems);
        // cyclic merge: tr(x ⋯ y) = tr(yx ⋯) when x and y share a leg
        while seq.len() > 1 && seq[0].leg == seq[seq.len() - 1].leg {
            let last = seq.pop().unwrap();
            seq[0] = last.mul(&seq[0]);
        }
        if seq.len() == 1 {
            return Ok(seq[0].trace());
        }
        if let Some(v) = self.memo.get(&seq) {
            return Ok(v.clone());
        }
        let leg = seq[0].leg;
        let mut a: Vec<LegElement> = Vec::new();
        let mut groups: Vec<Vec<LegElement>> = Vec::new();
        for e in &seq {
            if e.leg == leg {
                a.push(e.clone());
                groups.push(Vec::new());
            } else {
                groups.last_mut().unwrap().push(e.clone());
            }
        }
        let k = a.len();
        if k > MAX_CUMULANT_LEN {
            return Err(FreeError::LengthGuard { len: k, max: MAX_CUMULANT_LEN });
        }
        let kappa = moments_to_cumulants(&SubsetFunctional::moments_of(&a)?)?;
        let mut total = PiValue::zero();
        for p in self.nc(k) {
            let mut coef = PiValue::one();
            for b in p.blocks() {
                let mask = b.iter().fold(0usize, |m, &j| m | 1 << (j - 1));
                coef = &coef * kappa.get(mask);
                if coef.is_zero() {
                    break;
                }
            }
            if coef.is_zero() {
                continue;
            }
            for w in p.kreweras().blocks() {
                let joined: Vec<LegElement> =
                    w.iter().flat_map(|&j| groups[j - 1].iter().cloned()).collect();
                coef = &coef * &self.trace(&joined)?;
                if coef.is_zero() {
                    break;
                }
            }
            total.add_assign_ref(&coef);
        }
        self.memo.insert(seq, total.clone());
        Ok(total)
    }
}

/// Trace of an alternating product of letters split into two families of
/// legs: `Σ_{π ∈ NC(F₁ positions)} κ_π[F₁ letters] · tr_{K(π)}[F₂ letters]`.
///
/// Mixed-leg cumulants inside `F₁` vanish; `F₂` partial traces are evaluated
/// with [`partition_trace`]. A unit is inserted in front when the word starts
/// in `F₂` and at the end when it ends in `F₁`.
pub fn trace_bipartite(elems: &[LegElement], split: &[Family]) -> Result<PiValue, FreeError> {
    if split.len() != elems.len() {
        return Err(FreeError::SplitLength { split: split.len(), word: elems.len() });
    }
    if elems.is_empty() {
        return Ok(PiValue::one());
    }
    if let Some(i) = split.windows(2).position(|w| w[0] == w[1]) {
        return Err(FreeError::NotAlternating(i, i + 1));
    }
    for (e, f) in elems.iter().zip(split) {
        if elems.iter().zip(split).any(|(e2, f2)| e2.leg == e.leg && f2 != f) {
            return Err(FreeError::FamilyOverlap(format!("#{}", e.leg.0)));
        }
    }
    let mut a: Vec<Option<LegElement>> = Vec::new();
    let mut b: Vec<Option<LegElement>> = Vec::new();
    if split[0] == Family::F2 {
        a.push(None);
    }
    for (e, f) in elems.iter().zip(split) {
        match f {
            Family::F1 => a.push(Some(e.clone())),
            Family::F2 => b.push(Some(e.clone())),
        }
    }
    if split[split.len() - 1] == Family::F1 {
        b.push(None);
    }
    let k = a.len();
    if k > MAX_ENUMERATE.min(MAX_CUMULANT_LEN) {
        return Err(FreeError::LengthGuard { len: k, max: MAX_CUMULANT_LEN });
    }

    let mut ev = PartitionEval::default();
    let mut kappa_cache: HashMap<usize, PiValue> = HashMap::new();
    let mut total = PiValue::zero();
    for p in enumerate_unchecked(k) {
        let mut coef = PiValue::one();
        for blk in p.blocks() {
            let mask = blk.iter().fold(0usize, |m, &j| m | 1 << (j - 1));
            let kv = match kappa_cache.get(&mask) {
                Some(v) => v.clone(),
                None => {
                    let v = block_cumulant(&a, blk)?;
                    kappa_cache.insert(mask, v.clone());
                    v
                }
            };
            coef = &coef * &kv;
            if coef.is_zero() {
                break;
            }
        }
        if coef.is_zero() {
            continue;
        }
        for w in p.kreweras().blocks() {
            let joined: Vec<LegElement> = w.iter().filter_map(|&j| b[j - 1].clone()).collect();
            coef = &coef * &ev.trace(&joined)?;
            if coef.is_zero() {
                break;
            }
        }
        total.add_assign_ref(&coef);
    }
    Ok(total)
}

fn block_cumulant(a: &[Option<LegElement>], blk: &[usize]) -> Result<PiValue, FreeError> {
    let elems: Option<Vec<LegElement>> = blk.iter().map(|&j| a[j - 1].clone()).collect();
    let Some(elems) = elems else {
        // a block containing the inserted unit
        return Ok(if blk.len() == 1 { PiValue::one() } else { PiValue::zero() });
    };
    if elems.iter().any(|e| e.leg != elems[0].leg) {
        return Ok(PiValue::zero());
    }
    let k = moments_to_cumulants(&SubsetFunctional::moments_of(&elems)?)?;
    Ok(k.full().clone())
}

/// Non-crossing partitions of the letter positions whose cumulant is not
/// excluded structurally: every block lies in one leg, and blocks of Haar
/// letters pass [`r_diagonal_filter`].
pub fn potentially_nonzero_partitions(elems: &[LegElement]) -> Result<Vec<NCPartition>, FreeError> {
    let n = elems.len();
    if n == 0 || n > MAX_ENUMERATE {
        return Err(FreeError::LengthGuard { len: n, max: MAX_ENUMERATE });
    }
    let haar: Vec<Option<HaarLetter>> = elems
        .iter()
        .map(|e| e.haar_power().filter(|&p| p != 0).map(|power| HaarLetter { leg: e.leg, power }))
        .collect();
    let ok = |blk: &[usize]| {
        let leg = elems[blk[0] - 1].leg;
        if blk.iter().any(|&j| elems[j - 1].leg != leg) {
            return false;
        }
        let hs: Option<Vec<HaarLetter>> = blk.iter().map(|&j| haar[j - 1]).collect();
        match hs {
            Some(hs) => r_diagonal_filter(&hs),
            None => true,
        }
    };
    Ok(enumerate_unchecked(n)
        .into_iter()
        .filter(|p| p.blocks().iter().all(|b| ok(b)))
        .collect())
}
