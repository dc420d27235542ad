use super::leg::LegElement;
use super::FreeError;
use crate::ncpart::{enumerate_unchecked, NCPartition};
use crate::trigalg::PiValue;

pub const MAX_CUMULANT_LEN: usize = 10;

/// A functional on the ordered sub-tuples of an `n`-tuple, indexed by bitmask.
/// `values[mask]` is the value on the letters whose bits are set, taken in
/// increasing position order; `values[0]` is the empty tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFunctional {
    n: usize,
    values: Vec<PiValue>,
}

impl SubsetFunctional {
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(&[usize]) -> PiValue,
    ) -> Result<Self, FreeError> {
        guard(n)?;
        let values = (0..1usize << n).map(|mask| f(&positions(mask, n))).collect();
        Ok(SubsetFunctional { n, values })
    }

    /// Moments `tr(x_{i₁}⋯x_{i_k})` of a tuple drawn from one leg.
    pub fn moments_of(elems: &[LegElement]) -> Result<Self, FreeError> {
        Self::from_fn(elems.len(), |pos| match pos.split_first() {
            None => PiValue::one(),
            Some((&first, rest)) => rest
                .iter()
                .fold(elems[first].clone(), |acc, &i| acc.mul(&elems[i]))
                .trace(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mask: usize) -> &PiValue {
        &self.values[mask]
    }

    /// Value on the whole tuple.
    pub fn full(&self) -> &PiValue {
        &self.values[(1usize << self.n) - 1]
    }
}

fn guard(n: usize) -> Result<(), FreeError> {
    if n > MAX_CUMULANT_LEN {
        return Err(FreeError::LengthGuard { len: n, max: MAX_CUMULANT_LEN });
    }
    Ok(())
}

fn positions(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Block masks of `p` transported onto the given positions.
fn block_masks(p: &NCPartition, pos: &[usize]) -> Vec<usize> {
    p.blocks()
        .iter()
        .map(|b| b.iter().fold(0usize, |m, &j| m | 1 << pos[j - 1]))
        .collect()
}

fn product_over(vals: &[PiValue], masks: &[usize]) -> PiValue {
    let mut acc = PiValue::one();
    for &m in masks {
        let v = &vals[m];
        if v.is_zero() {
            return PiValue::zero();
        }
        acc = &acc * v;
    }
    acc
}

/// Möbius inversion over non-crossing partitions:
/// `k(S) = m(S) − Σ_{π ≠ 1} Π_{V∈π} k(V)`.
pub fn moments_to_cumulants(m: &SubsetFunctional) -> Result<SubsetFunctional, FreeError> {
    guard(m.n)?;
    let n = m.n;
    let ncs: Vec<Vec<NCPartition>> = (0..=n).map(enumerate_unchecked).collect();
    let mut k = vec![PiValue::zero(); 1 << n];
    k[0] = PiValue::one();
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|x| x.count_ones());
    for mask in masks {
        let pos = positions(mask, n);
        let mut v = m.values[mask].clone();
        for p in &ncs[pos.len()] {
            if p.num_blocks() == 1 {
                continue;
            }
            let t = product_over(&k, &block_masks(p, &pos));
            if !t.is_zero() {
                v = &v - &t;
            }
        }
        k[mask] = v;
    }
    Ok(SubsetFunctional { n, values: k })
}

/// `m(S) = Σ_{π ∈ NC(S)} Π_{V∈π} k(V)`.
pub fn cumulants_to_moments(k: &SubsetFunctional) -> Result<SubsetFunctional, FreeError> {
    guard(k.n)?;
    let n = k.n;
    let ncs: Vec<Vec<NCPartition>> = (0..=n).map(enumerate_unchecked).collect();
    let mut m = vec![PiValue::zero(); 1 << n];
    m[0] = PiValue::one();
    for (mask, slot) in m.iter_mut().enumerate().skip(1) {
        let pos = positions(mask, n);
        for p in &ncs[pos.len()] {
            slot.add_assign_ref(&product_over(&k.values, &block_masks(p, &pos)));
        }
    }
    Ok(SubsetFunctional { n, values: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeword::U_LEG;
    use crate::rational::q;

    fn alternating_u(n: usize) -> Vec<LegElement> {
        (0..n).map(|i| LegElement::haar(U_LEG, if i % 2 == 0 { 1 } else { -1 })).collect()
    }

    #[test]
    fn haar_second_and_fourth() {
        let k2 = moments_to_cumulants(&SubsetFunctional::moments_of(&alternating_u(2)).unwrap()).unwrap();
        assert_eq!(k2.full(), &PiValue::one());
        let k4 = moments_to_cumulants(&SubsetFunctional::moments_of(&alternating_u(4)).unwrap()).unwrap();
        assert_eq!(k4.full(), &PiValue::rational(q(-1)));
    }

    #[test]
    fn first_cumulant_is_trace() {
        let m = SubsetFunctional::from_fn(1, |p| if p.is_empty() { PiValue::one() } else { PiValue::lambda() }).unwrap();
        assert_eq!(moments_to_cumulants(&m).unwrap().full(), &PiValue::lambda());
    }

    #[test]
    fn guard_fires() {
        assert!(SubsetFunctional::from_fn(11, |_| PiValue::zero()).is_err());
    }
}
