//! Non-crossing partitions of `{1..n}`, Kreweras complements, and an
//! exhaustive checker for the interval property of Kreweras blocks.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub const MAX_ENUMERATE: usize = 12;
pub const MAX_LEMMA: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("size {n} outside supported range {min}..={max}")]
    SizeLimit { n: usize, min: usize, max: usize },
    #[error("blocks do not partition 1..{0}")]
    NotAPartition(usize),
    #[error("partition is crossing")]
    Crossing,
    #[error("cannot parse partition: {0}")]
    Parse(String),
}

/// A non-crossing partition of `{1..n}`.
///
/// Blocks are sorted internally and ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NCPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NCPartition {
    /// Validates and canonicalizes `blocks` (1-based elements).
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, NcError> {
        if n == 0 {
            return Err(NcError::SizeLimit { n, min: 1, max: usize::MAX });
        }
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(NcError::NotAPartition(n));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > n || seen[x] {
                    return Err(NcError::NotAPartition(n));
                }
                seen[x] = true;
            }
        }
        if !seen[1..].iter().all(|&s| s) {
            return Err(NcError::NotAPartition(n));
        }
        blocks.sort_by_key(|b| b[0]);
        let labels = labels_of(n, &blocks);
        if !is_noncrossing_labels(&labels) {
            return Err(NcError::Crossing);
        }
        Ok(NCPartition { n, blocks })
    }

    /// Builds from a block-of-element vector (`labels[i]` is the block of `i+1`).
    pub fn from_labels(labels: &[usize]) -> Result<Self, NcError> {
        let n = labels.len();
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(i + 1);
        }
        Self::new(n, groups.into_values().collect())
    }

    /// `1_n`: a single block.
    pub fn one(n: usize) -> Self {
        NCPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    /// `0_n`: all singletons.
    pub fn zero(n: usize) -> Self {
        NCPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each element, `labels()[i]` for element `i+1`.
    pub fn labels(&self) -> Vec<usize> {
        labels_of(self.n, &self.blocks)
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.blocks
            .iter()
            .any(|blk| blk.contains(&a) && blk.contains(&b))
    }

    /// Kreweras complement.
    ///
    /// Points are interleaved as `1 < 1' < 2 < 2' < … < n < n'`. Starting from
    /// singletons on the primed points, blocks are merged greedily as long as
    /// the union with `self` stays non-crossing; the admissible partitions form
    /// a down-set with a unique maximum, so the greedy join reaches it.
    pub fn kreweras(&self) -> NCPartition {
        let n = self.n;
        let base = self.labels();
        let mut primed: Vec<usize> = (0..n).collect();
        let offset = self.blocks.len();
        let interleaved = |primed: &[usize]| -> Vec<usize> {
            let mut out = Vec::with_capacity(2 * n);
            for i in 0..n {
                out.push(base[i]);
                out.push(offset + primed[i]);
            }
            out
        };
        loop {
            let mut merged = false;
            let mut ids: Vec<usize> = primed.clone();
            ids.sort_unstable();
            ids.dedup();
            'search: for (ai, &a) in ids.iter().enumerate() {
                for &b in &ids[ai + 1..] {
                    let trial: Vec<usize> =
                        primed.iter().map(|&l| if l == b { a } else { l }).collect();
                    if is_noncrossing_labels(&interleaved(&trial)) {
                        primed = trial;
                        merged = true;
                        break 'search;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        NCPartition::from_labels(&primed).expect("Kreweras complement is a non-crossing partition")
    }

    /// Blocks made of consecutive integers.
    pub fn interval_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .filter(|b| b.windows(2).all(|w| w[1] == w[0] + 1))
            .cloned()
            .collect()
    }

    /// Is the union of `self` (unprimed) and `other` (primed) non-crossing on
    /// the `2n` interleaved points?
    pub fn interleaves_noncrossing(&self, other: &NCPartition) -> bool {
        assert_eq!(self.n, other.n);
        let a = self.labels();
        let b = other.labels();
        let off = self.blocks.len();
        let mut pts = Vec::with_capacity(2 * self.n);
        for i in 0..self.n {
            pts.push(a[i]);
            pts.push(off + b[i]);
        }
        is_noncrossing_labels(&pts)
    }
}

fn labels_of(n: usize, blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut labels = vec![0; n];
    for (bi, b) in blocks.iter().enumerate() {
        for &x in b {
            labels[x - 1] = bi;
        }
    }
    labels
}

/// Linear-time non-crossing test on points in linear order labelled by block.
pub fn is_noncrossing_labels(labels: &[usize]) -> bool {
    let max_label = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut last = vec![usize::MAX; max_label];
    let mut first = vec![usize::MAX; max_label];
    for (p, &l) in labels.iter().enumerate() {
        last[l] = p;
        if first[l] == usize::MAX {
            first[l] = p;
        }
    }
    let mut stack: Vec<usize> = Vec::new();
    for (p, &l) in labels.iter().enumerate() {
        if first[l] == p {
            if last[l] > p {
                stack.push(l);
            }
        } else {
            if stack.last() != Some(&l) {
                return false;
            }
            if last[l] == p {
                stack.pop();
            }
        }
    }
    true
}

impl fmt::Display for NCPartition {
    /// `1,3|2|4`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("|");
        f.write_str(&text)
    }
}

impl FromStr for NCPartition {
    type Err = NcError;

    fn from_str(s: &str) -> Result<Self, NcError> {
        let mut blocks = Vec::new();
        for part in s.trim().split('|') {
            let block: Result<Vec<usize>, _> =
                part.split(',').map(|x| x.trim().parse::<usize>()).collect();
            blocks.push(block.map_err(|_| NcError::Parse(s.to_string()))?);
        }
        let n = blocks.iter().map(|b| b.len()).sum();
        NCPartition::new(n, blocks)
    }
}

/// Every non-crossing partition of `{1..n}`, in lexicographic order of the
/// restricted-growth block-of-element vector.
pub fn enumerate(n: usize) -> Result<Vec<NCPartition>, NcError> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        return Err(NcError::SizeLimit { n, min: 1, max: MAX_ENUMERATE });
    }
    Ok(enumerate_unchecked(n))
}

pub(crate) fn enumerate_unchecked(n: usize) -> Vec<NCPartition> {
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(n);
    let mut block_min: Vec<usize> = Vec::new();
    let mut block_max: Vec<usize> = Vec::new();
    grow(n, &mut labels, &mut block_min, &mut block_max, &mut out);
    out
}

fn grow(
    n: usize,
    labels: &mut Vec<usize>,
    block_min: &mut Vec<usize>,
    block_max: &mut Vec<usize>,
    out: &mut Vec<NCPartition>,
) {
    let i = labels.len();
    if i == n {
        let mut blocks = vec![Vec::new(); block_min.len()];
        for (x, &l) in labels.iter().enumerate() {
            blocks[l].push(x + 1);
        }
        out.push(NCPartition { n, blocks });
        return;
    }
    for b in 0..=block_min.len() {
        if b < block_min.len() {
            // joining b is legal iff nothing strictly between max(b) and i
            // belongs to a block opened before max(b)
            let j = block_max[b];
            if (j + 1..i).any(|k| block_min[labels[k]] < j) {
                continue;
            }
            let saved = block_max[b];
            block_max[b] = i;
            labels.push(b);
            grow(n, labels, block_min, block_max, out);
            labels.pop();
            block_max[b] = saved;
        } else {
            block_min.push(i);
            block_max.push(i);
            labels.push(b);
            grow(n, labels, block_min, block_max, out);
            labels.pop();
            block_min.pop();
            block_max.pop();
        }
    }
}

/// All set partitions of `{1..n}` as restricted-growth strings, lexicographic.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = if cur.is_empty() { 0 } else { max + 1 };
        for l in 0..=top {
            cur.push(l);
            rec(n, cur, max.max(l), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), 0, &mut out);
    out
}

/// Quartic crossing test straight from the definition: some `a<b<c<d` with
/// `a,c` in one block and `b,d` in another.
pub fn has_crossing_bruteforce(labels: &[usize]) -> bool {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if labels[b] == labels[a] {
                continue;
            }
            for c in b + 1..n {
                if labels[c] != labels[a] {
                    continue;
                }
                for d in c + 1..n {
                    if labels[d] == labels[b] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCounterexample {
    pub partition: String,
    pub kreweras: String,
    pub interval: Vec<usize>,
    pub k: usize,
    pub successor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub partitions_checked: usize,
    pub intervals_checked: usize,
    pub pass: bool,
    pub counterexample: Option<LemmaCounterexample>,
}

/// For each `π ∈ NC(n)` with `1 ∼ n` and each interval block `(k..k+l)` of
/// `K(π)`, checks `k ∼_π k+l+1` where `n+1` wraps to `1`. All interval
/// blocks are checked, including those touching `1` or `n`.
pub fn verify_kreweras_interval_lemma(n: usize) -> Result<LemmaReport, NcError> {
    if !(2..=MAX_LEMMA).contains(&n) {
        return Err(NcError::SizeLimit { n, min: 2, max: MAX_LEMMA });
    }
    let mut report = LemmaReport {
        n,
        partitions_checked: 0,
        intervals_checked: 0,
        pass: true,
        counterexample: None,
    };
    for pi in enumerate_unchecked(n) {
        if !pi.same_block(1, n) {
            continue;
        }
        report.partitions_checked += 1;
        let k_pi = pi.kreweras();
        for block in k_pi.interval_blocks() {
            report.intervals_checked += 1;
            let k = block[0];
            let last = *block.last().unwrap();
            let successor = if last + 1 > n { last + 1 - n } else { last + 1 };
            if !pi.same_block(k, successor) {
                report.pass = false;
                report.counterexample = Some(LemmaCounterexample {
                    partition: pi.to_string(),
                    kreweras: k_pi.to_string(),
                    interval: block.clone(),
                    k,
                    successor,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// `C_n = (2n)! / (n!(n+1)!)`.
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NCPartition {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate(1).unwrap(), vec![NCPartition::one(1)]);
        assert_eq!(enumerate(4).unwrap().len(), 14);
        assert_eq!(enumerate(7).unwrap().len(), 429);
        assert!(matches!(enumerate(0), Err(NcError::SizeLimit { .. })));
        assert!(matches!(enumerate(13), Err(NcError::SizeLimit { .. })));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = enumerate(6).unwrap();
        let labels: Vec<Vec<usize>> = all.iter().map(|p| p.labels()).collect();
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kreweras_examples() {
        assert_eq!(NCPartition::one(5).kreweras(), NCPartition::zero(5));
        assert_eq!(NCPartition::zero(5).kreweras(), NCPartition::one(5));
        assert_eq!(p("1,3|2|4").kreweras(), p("1,2|3,4"));
    }

    #[test]
    fn interval_block_examples() {
        assert_eq!(NCPartition::zero(3).interval_blocks(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(p("1,3|2|4").interval_blocks(), vec![vec![2], vec![4]]);
        assert_eq!(p("1,4|2,3").interval_blocks(), vec![vec![2, 3]]);
    }

    #[test]
    fn lemma_small() {
        assert!(verify_kreweras_interval_lemma(2).unwrap().pass);
        assert!(verify_kreweras_interval_lemma(5).unwrap().pass);
        assert!(verify_kreweras_interval_lemma(1).is_err());
        assert!(verify_kreweras_interval_lemma(11).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!("1,3|2,4".parse::<NCPartition>(), Err(NcError::Crossing));
        assert_eq!("1,2|2".parse::<NCPartition>(), Err(NcError::NotAPartition(3)));
        assert!("1,a".parse::<NCPartition>().is_err());
    }

    #[test]
    fn text_round_trip() {
        let x = p("4|1,3|2");
        assert_eq!(x.to_string(), "1,3|2|4");
    }

    #[test]
    fn catalan_values() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), c);
        }
    }
}
