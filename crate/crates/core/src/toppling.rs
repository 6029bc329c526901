//! CTI and ITC parallel toppling, weighted toppling statistics, and ITC
//! toppling sequences.
//!
//! Both processes start by toppling the sink and then alternate parallel
//! rounds over the clique and independent parts. CTI (clique then
//! independent) records pairs `(P_i, Q_i)`; ITC (independent then clique)
//! records pairs `(Q'_i, P'_i)`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::asm::{check_sorted_recurrent, Configuration, SplitGraphShape};
use crate::combinat::{binomial, compositions};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Which part topples first in each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "CTI")]
    Cti,
    #[serde(rename = "ITC")]
    Itc,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cti => "CTI",
            Mode::Itc => "ITC",
        })
    }
}

/// One parallel round, with 1-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

/// The rounds of a CTI or ITC process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToppleTrace {
    pub mode: Mode,
    pub rounds: Vec<Round>,
}

impl ToppleTrace {
    /// Round sizes in toppling order: `(p_1,q_1,..)` for CTI, `(q'_1,p'_1,..)` for ITC.
    pub fn sizes(&self) -> Vec<usize> {
        self.rounds
            .iter()
            .flat_map(|r| match self.mode {
                Mode::Cti => [r.clique.len(), r.independent.len()],
                Mode::Itc => [r.independent.len(), r.clique.len()],
            })
            .collect()
    }

    /// `sum_i i * (size of round i)`.
    pub fn wtopple(&self) -> u64 {
        self.rounds
            .iter()
            .enumerate()
            .map(|(i, r)| (i as u64 + 1) * (r.clique.len() + r.independent.len()) as u64)
            .sum()
    }

    /// Checks the structural invariants of a trace on `shape`.
    pub fn validate(&self, shape: SplitGraphShape) -> Result<()> {
        let mut seen_k = vec![false; shape.n];
        let mut seen_i = vec![false; shape.d];
        let last = self.rounds.len().saturating_sub(1);
        for (t, r) in self.rounds.iter().enumerate() {
            if r.clique.is_empty() && r.independent.is_empty() {
                return Err(Error::Internal(format!("round {} is empty", t + 1)));
            }
            if self.mode == Mode::Itc && t < last && r.clique.is_empty() {
                return Err(Error::Internal(format!(
                    "ITC round {} has no clique topplings",
                    t + 1
                )));
            }
            for (set, seen) in [(&r.clique, &mut seen_k), (&r.independent, &mut seen_i)] {
                for &v in set {
                    if v == 0 || v > seen.len() || seen[v - 1] {
                        return Err(Error::Internal(format!(
                            "vertex index {v} repeated or out of range"
                        )));
                    }
                    seen[v - 1] = true;
                }
            }
        }
        if seen_k.iter().chain(&seen_i).any(|s| !s) {
            return Err(Error::Internal("some vertex never toppled".into()));
        }
        Ok(())
    }
}

fn topple_clique_round(shape: SplitGraphShape, c: &mut Configuration) -> Vec<usize> {
    let deg = shape.clique_degree();
    let set: Vec<usize> = (0..shape.n).filter(|&i| c.clique[i] >= deg).collect();
    let k = set.len() as u64;
    if k == 0 {
        return set;
    }
    for (i, x) in c.clique.iter_mut().enumerate() {
        *x += k;
        if set.binary_search(&i).is_ok() {
            *x -= deg + 1;
        }
    }
    for x in c.independent.iter_mut() {
        *x += k;
    }
    set.into_iter().map(|i| i + 1).collect()
}

fn topple_independent_round(shape: SplitGraphShape, c: &mut Configuration) -> Vec<usize> {
    let deg = shape.independent_degree();
    let set: Vec<usize> = (0..shape.d).filter(|&j| c.independent[j] >= deg).collect();
    let k = set.len() as u64;
    for &j in &set {
        c.independent[j] -= deg;
    }
    for x in c.clique.iter_mut() {
        *x += k;
    }
    set.into_iter().map(|j| j + 1).collect()
}

/// Runs the process without checking recurrence. Used internally after validation.
pub(crate) fn run_process(
    shape: SplitGraphShape,
    c: &Configuration,
    mode: Mode,
) -> (ToppleTrace, Configuration) {
    let mut cur = c.clone();
    for x in cur.clique.iter_mut().chain(cur.independent.iter_mut()) {
        *x += 1;
    }
    let mut rounds = Vec::new();
    let bound = shape.vertex_count() + 1;
    while rounds.len() <= bound {
        let round = match mode {
            Mode::Cti => {
                let clique = topple_clique_round(shape, &mut cur);
                let independent = topple_independent_round(shape, &mut cur);
                Round {
                    clique,
                    independent,
                }
            }
            Mode::Itc => {
                let independent = topple_independent_round(shape, &mut cur);
                let clique = topple_clique_round(shape, &mut cur);
                Round {
                    clique,
                    independent,
                }
            }
        };
        if round.clique.is_empty() && round.independent.is_empty() {
            break;
        }
        rounds.push(round);
    }
    (ToppleTrace { mode, rounds }, cur)
}

fn topple_process(shape: SplitGraphShape, c: &Configuration, mode: Mode) -> Result<ToppleTrace> {
    check_sorted_recurrent(shape, c)?;
    let (trace, fin) = run_process(shape, c, mode);
    trace.validate(shape)?;
    if fin != *c {
        return Err(Error::Internal(format!(
            "{mode} process on {c} ended at {fin}"
        )));
    }
    Ok(trace)
}

/// The CTI trace of a sorted recurrent configuration.
pub fn topple_cti(shape: SplitGraphShape, c: &Configuration) -> Result<ToppleTrace> {
    topple_process(shape, c, Mode::Cti)
}

/// The ITC trace of a sorted recurrent configuration.
pub fn topple_itc(shape: SplitGraphShape, c: &Configuration) -> Result<ToppleTrace> {
    topple_process(shape, c, Mode::Itc)
}

pub fn wtopple(trace: &ToppleTrace) -> u64 {
    trace.wtopple()
}

/// A pair `[(b_1..b_k), (a_1..a_k)]` of independent and clique round sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ItcSequence {
    pub b: Vec<u32>,
    pub a: Vec<u32>,
}

impl ItcSequence {
    pub fn new(b: Vec<u32>, a: Vec<u32>) -> Self {
        Self { b, a }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `a_i` with the convention `a_0 = 1`.
    pub fn a_at(&self, i: usize) -> u32 {
        if i == 0 {
            1
        } else {
            self.a[i - 1]
        }
    }

    /// `b_i` with the convention `b_0 = 0`.
    pub fn b_at(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.b[i - 1]
        }
    }

    /// Membership in the set characterized for `S_{n,d}`.
    pub fn is_valid_for(&self, n: usize, d: usize) -> bool {
        let k = self.a.len();
        if k == 0 || self.b.len() != k {
            return false;
        }
        if self.a.iter().sum::<u32>() as usize != n || self.b.iter().sum::<u32>() as usize != d {
            return false;
        }
        if k == 1 {
            return true;
        }
        self.a[..k - 1].iter().all(|&x| x > 0) && self.b[k - 1] + self.a[k - 1] > 0
    }

    pub fn shape(&self) -> Result<SplitGraphShape> {
        SplitGraphShape::new(
            self.a.iter().sum::<u32>() as usize,
            self.b.iter().sum::<u32>() as usize,
        )
    }
}

impl fmt::Display for ItcSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[({}),({})]", join(&self.b), join(&self.a))
    }
}

/// Regroups an ITC trace into its sequence.
pub fn itc_sequence_of(trace: &ToppleTrace) -> Result<ItcSequence> {
    if trace.mode != Mode::Itc {
        return Err(Error::ModeMismatch {
            expected: "ITC".into(),
            found: trace.mode.to_string(),
        });
    }
    Ok(ItcSequence {
        b: trace
            .rounds
            .iter()
            .map(|r| r.independent.len() as u32)
            .collect(),
        a: trace.rounds.iter().map(|r| r.clique.len() as u32).collect(),
    })
}

/// All ITC sequences for `S_{n,d}`, ordered by length and then lexicographically.
pub fn enumerate_itc_sequences(n: usize, d: usize) -> Vec<ItcSequence> {
    let mut out = vec![ItcSequence::new(vec![d as u32], vec![n as u32])];
    for k in 2..=n + 1 {
        let bs = compositions(d as u32, k, false);
        let as_ = compositions(n as u32, k, false);
        for b in &bs {
            for a in &as_ {
                if a[..k - 1].iter().all(|&x| x > 0) && b[k - 1] + a[k - 1] > 0 {
                    out.push(ItcSequence::new(b.clone(), a.clone()));
                }
            }
        }
    }
    out
}

/// ITC sequences grouped by length `k` (index `k - 1`).
pub fn itc_sequences_by_length(n: usize, d: usize) -> Vec<Vec<ItcSequence>> {
    let mut groups: Vec<Vec<ItcSequence>> = vec![Vec::new(); n + 1];
    for s in enumerate_itc_sequences(n, d) {
        groups[s.len() - 1].push(s);
    }
    while groups.last().is_some_and(|g| g.is_empty()) {
        groups.pop();
    }
    groups
}

/// The lowest-level configuration with the given ITC sequence, built block
/// by block: clique block `j` holds `n+d - sum_{l<j}(a_l+b_l) - b_j` and
/// independent block `j` holds `n+1 - sum_{l<j} a_l`, with `a_0 = 1, b_0 = 0`.
pub fn lower_config_formula(seq: &ItcSequence) -> Result<Configuration> {
    let shape = seq.shape()?;
    let (n, d) = (shape.n as i64, shape.d as i64);
    let mut clique = Vec::with_capacity(shape.n);
    let mut independent = Vec::with_capacity(shape.d);
    let mut sum_ab = 1i64;
    let mut sum_a = 1i64;
    for j in 1..=seq.len() {
        let (a, b) = (seq.a_at(j) as i64, seq.b_at(j) as i64);
        let kv = n + d - sum_ab - b;
        let iv = n + 1 - sum_a;
        if (a > 0 && kv < 0) || (b > 0 && iv < 0) {
            return Err(Error::InvalidSequence(seq.to_string()));
        }
        clique.extend(std::iter::repeat_n(kv as u64, a as usize));
        independent.extend(std::iter::repeat_n(iv as u64, b as usize));
        sum_ab += a + b;
        sum_a += a;
    }
    Ok(Configuration::new(clique, independent).sorted())
}

fn itc_sequence_of_config(shape: SplitGraphShape, c: &Configuration) -> Result<ItcSequence> {
    itc_sequence_of(&topple_itc(shape, c)?)
}

/// A sorted recurrent configuration realizing `seq`, validated by replay.
///
/// Uses the block formula of [`lower_config_formula`]; if replay disagrees,
/// falls back to an exhaustive fiber search when `n + d <= 9`.
pub fn canonical_config(shape: SplitGraphShape, seq: &ItcSequence) -> Result<Configuration> {
    if !seq.is_valid_for(shape.n, shape.d) {
        return Err(Error::InvalidSequence(format!(
            "{seq} is not an ITC sequence for {shape}"
        )));
    }
    if let Ok(c) = lower_config_formula(seq) {
        if itc_sequence_of_config(shape, &c).ok().as_ref() == Some(seq) {
            return Ok(c);
        }
    }
    if shape.n + shape.d > 9 {
        return Err(Error::InvalidSequence(format!(
            "formula failed for {seq} and the shape is too large to search"
        )));
    }
    crate::asm::enumerate_sorted_recurrent(shape)
        .into_iter()
        .rev()
        .find(|c| itc_sequence_of_config(shape, c).ok().as_ref() == Some(seq))
        .ok_or_else(|| Error::InvalidSequence(format!("{seq} is not realized on {shape}")))
}

/// Number of ITC sequences of length `k`.
pub fn count_itc_k(n: usize, d: usize, k: usize) -> BigUint {
    let (n, d, k) = (n as i64, d as i64, k as i64);
    if k == 1 {
        return BigUint::from(1u32);
    }
    binomial(d + k - 2, d - 1) * binomial(n - 1, k - 2)
        + binomial(d + k - 1, d) * binomial(n - 1, k - 1)
}

/// Total number of ITC sequences, `sum_{k=1}^n C(d+k,d) C(n-1,k-1)`.
pub fn count_itc(n: usize, d: usize) -> BigUint {
    let (n, d) = (n as i64, d as i64);
    (1..=n)
        .map(|k| binomial(d + k, d) * binomial(n - 1, k - 1))
        .sum()
}

/// `C(n-1,k-1) C(d+k,d)`.
pub fn count_ehkk_k(n: usize, d: usize, k: usize) -> BigUint {
    let (n, d, k) = (n as i64, d as i64, k as i64);
    binomial(n - 1, k - 1) * binomial(d + k, d)
}

pub fn count_ehkk(n: usize, d: usize) -> BigUint {
    (1..=n).map(|k| count_ehkk_k(n, d, k)).sum()
}

/// The ITC sequence of every sorted recurrent configuration, in enumeration order.
pub fn itc_image(
    shape: SplitGraphShape,
    configs: &[Configuration],
    exec: Execution,
) -> Result<Vec<ItcSequence>> {
    exec.map(configs, |c| itc_sequence_of_config(shape, c))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn s(n: usize, d: usize) -> SplitGraphShape {
        SplitGraphShape::new(n, d).unwrap()
    }

    fn c(x: &str) -> Configuration {
        x.parse().unwrap()
    }

    #[test]
    fn cti_example() {
        let t = topple_cti(s(5, 3), &c("7,6,5,2,1;5,4,4")).unwrap();
        assert_eq!(t.sizes(), vec![1, 3, 2, 0, 2, 0]);
        assert_eq!(t.rounds[0].clique, vec![1]);
        assert_eq!(t.rounds[0].independent, vec![1, 2, 3]);
        assert_eq!(t.rounds[1].clique, vec![2, 3]);
        assert_eq!(t.rounds[2].clique, vec![4, 5]);
        assert_eq!(t.wtopple(), 14);
        assert_eq!(
            topple_cti(s(2, 2), &c("3,3;2,2")).unwrap().sizes(),
            vec![2, 2]
        );
        let t = topple_cti(s(2, 2), &c("2,1;2,0")).unwrap();
        assert_eq!(t.sizes(), vec![0, 1, 1, 0, 1, 1]);
        assert_eq!(t.wtopple(), 9);
    }

    #[test]
    fn itc_examples() {
        let t = topple_itc(s(5, 3), &c("7,6,5,2,1;5,4,4")).unwrap();
        assert_eq!(t.sizes(), vec![1, 2, 2, 2, 0, 1]);
        assert_eq!(t.wtopple(), 14);
        assert_eq!(
            itc_sequence_of(&t).unwrap(),
            ItcSequence::new(vec![1, 2, 0], vec![2, 2, 1])
        );
        let t = topple_itc(s(5, 3), &c("7,7,6,5,2;3,3,1")).unwrap();
        assert_eq!(t.sizes(), vec![0, 2, 2, 2, 1, 1]);
        assert_eq!(
            itc_sequence_of(&t).unwrap(),
            ItcSequence::new(vec![0, 2, 1], vec![2, 2, 1])
        );
        let t = topple_itc(s(2, 2), &c("3,3;2,2")).unwrap();
        assert_eq!(t.sizes(), vec![2, 2]);
        assert_eq!(
            itc_sequence_of(&t).unwrap(),
            ItcSequence::new(vec![2], vec![2])
        );
        let cti = topple_cti(s(2, 2), &c("3,3;2,2")).unwrap();
        assert!(matches!(
            itc_sequence_of(&cti),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_recurrent() {
        assert_eq!(topple_cti(s(2, 2), &c("2,2;1,1")), Err(Error::NotRecurrent));
        assert_eq!(topple_itc(s(2, 2), &c("2,3;2,2")), Err(Error::NotSorted));
    }

    #[test]
    fn trace_json() {
        let t = topple_cti(s(5, 3), &c("7,6,5,2,1;5,4,4")).unwrap();
        let j = serde_json::to_string(&t).unwrap();
        assert!(j.starts_with(r#"{"mode":"CTI","rounds":[{"clique":[1],"independent":[1,2,3]}"#));
        let back: ToppleTrace = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn itc_sequences_small() {
        let g = itc_sequences_by_length(2, 2);
        assert_eq!(g.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 5, 3]);
        assert_eq!(
            enumerate_itc_sequences(1, 0),
            vec![ItcSequence::new(vec![0], vec![1])]
        );
        assert_eq!(enumerate_itc_sequences(3, 1).len(), 12);
        let k3: BTreeSet<_> = g[2].iter().cloned().collect();
        let expect: BTreeSet<_> = [
            ItcSequence::new(vec![1, 0, 1], vec![1, 1, 0]),
            ItcSequence::new(vec![0, 1, 1], vec![1, 1, 0]),
            ItcSequence::new(vec![0, 0, 2], vec![1, 1, 0]),
        ]
        .into_iter()
        .collect();
        assert_eq!(k3, expect);
    }

    #[test]
    fn counts() {
        assert_eq!(count_itc(2, 2), BigUint::from(9u32));
        assert_eq!(count_itc_k(2, 2, 2), BigUint::from(5u32));
        assert_eq!(count_itc_k(2, 2, 3), BigUint::from(3u32));
        assert_eq!(count_ehkk(2, 2), BigUint::from(9u32));
        assert_eq!(count_itc(3, 1), BigUint::from(12u32));
        for n in 1..5 {
            for d in 0..4 {
                assert_eq!(count_itc_k(n, d, 1), BigUint::from(1u32));
                assert_eq!(count_ehkk_k(n, d, 1), BigUint::from(d as u32 + 1));
                assert_eq!(
                    count_itc(n, d),
                    BigUint::from(enumerate_itc_sequences(n, d).len())
                );
            }
        }
        assert_eq!(count_itc(3, 0), BigUint::from(4u32));
    }

    #[test]
    fn canonical_examples() {
        let lower = canonical_config(s(2, 2), &ItcSequence::new(vec![2], vec![2])).unwrap();
        assert_eq!(lower, c("1,1;2,2"));
        let x = canonical_config(s(2, 2), &ItcSequence::new(vec![0, 0, 2], vec![1, 1, 0])).unwrap();
        assert_eq!(x, c("3,2;0,0"));
        let seq = ItcSequence::new(vec![1, 2, 0], vec![2, 2, 1]);
        let y = canonical_config(s(5, 3), &seq).unwrap();
        assert_eq!(
            itc_sequence_of(&topple_itc(s(5, 3), &y).unwrap()).unwrap(),
            seq
        );
        assert!(canonical_config(s(2, 2), &ItcSequence::new(vec![2], vec![1, 1])).is_err());
    }
}
