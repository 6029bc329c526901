//! Extended configurations and the topple-max-then-sort operators.
//!
//! An extended configuration allows negative entries; the sink holds
//! `-(sum of entries)` implicitly. On sorted compact configurations the
//! operators `T_s`, `T_K`, `T_I` and their inverses act by closed forms, and
//! `T_W = T_K^{n+1} T_I^d` lowers the clique weight by one. These tools split
//! the sorted quasi-stable non-negative configurations into classes of size
//! `n + 1`, each holding exactly one recurrent configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::asm::{
    enumerate_sorted_recurrent_with, is_recurrent, parse_parts, stabilize, Configuration,
    EnumerationBackend, SplitGraphShape,
};
use crate::combinat::{binomial, decreasing_tuples};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Integer heights on the clique and independent vertices, sink implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtendedConfiguration {
    pub clique: Vec<i64>,
    pub independent: Vec<i64>,
}

fn spread(v: &[i64]) -> i64 {
    match (v.iter().max(), v.iter().min()) {
        (Some(a), Some(b)) => a - b,
        _ => 0,
    }
}

impl ExtendedConfiguration {
    pub fn new(clique: Vec<i64>, independent: Vec<i64>) -> Self {
        Self {
            clique,
            independent,
        }
    }

    /// `-(sum of all entries)`.
    pub fn sink_value(&self) -> i64 {
        -self.clique.iter().chain(&self.independent).sum::<i64>()
    }

    pub fn is_sorted(&self) -> bool {
        self.clique.windows(2).all(|w| w[0] >= w[1])
            && self.independent.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_compact(&self, shape: SplitGraphShape) -> bool {
        spread(&self.clique) <= (shape.n + shape.d + 1) as i64
            && spread(&self.independent) <= (shape.n + 1) as i64
    }

    pub fn is_quasi_stable(&self, shape: SplitGraphShape) -> bool {
        self.clique.iter().all(|&a| a <= (shape.n + shape.d) as i64)
            && self.independent.iter().all(|&b| b <= shape.n as i64)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.clique.iter().chain(&self.independent).all(|&x| x >= 0)
    }

    fn sorted(mut self) -> Self {
        self.clique.sort_unstable_by(|a, b| b.cmp(a));
        self.independent.sort_unstable_by(|a, b| b.cmp(a));
        self
    }

    /// The plain configuration, if every entry is non-negative.
    pub fn to_configuration(&self) -> Result<Configuration> {
        if !self.is_nonnegative() {
            return Err(Error::Negative);
        }
        Ok(Configuration::new(
            self.clique.iter().map(|&x| x as u64).collect(),
            self.independent.iter().map(|&x| x as u64).collect(),
        ))
    }

    fn check(&self, shape: SplitGraphShape) -> Result<()> {
        if self.clique.len() != shape.n || self.independent.len() != shape.d {
            return Err(Error::ShapeMismatch(format!("{self} on {shape}")));
        }
        if !self.is_sorted() {
            return Err(Error::NotSorted);
        }
        if !self.is_compact(shape) {
            return Err(Error::NotCompact);
        }
        Ok(())
    }
}

impl From<&Configuration> for ExtendedConfiguration {
    fn from(c: &Configuration) -> Self {
        Self {
            clique: c.clique.iter().map(|&x| x as i64).collect(),
            independent: c.independent.iter().map(|&x| x as i64).collect(),
        }
    }
}

impl fmt::Display for ExtendedConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.clique), join(&self.independent))
    }
}

impl FromStr for ExtendedConfiguration {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (clique, independent) = parse_parts::<i64>(s)?;
        if clique.is_empty() {
            return Err(Error::Parse(format!("'{s}' has no clique entries")));
        }
        Ok(Self {
            clique,
            independent,
        })
    }
}

/// The operators acting on sorted compact configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operator {
    Ts,
    Tk,
    Ti,
    TsInv,
    TkInv,
    TiInv,
    Tw,
    TwInv,
}

impl Operator {
    pub fn inverse(self) -> Operator {
        match self {
            Operator::Ts => Operator::TsInv,
            Operator::Tk => Operator::TkInv,
            Operator::Ti => Operator::TiInv,
            Operator::TsInv => Operator::Ts,
            Operator::TkInv => Operator::Tk,
            Operator::TiInv => Operator::Ti,
            Operator::Tw => Operator::TwInv,
            Operator::TwInv => Operator::Tw,
        }
    }
}

fn add(v: &mut [i64], k: i64) {
    for x in v {
        *x += k;
    }
}

/// Applies one operator by its closed form. The output is checked to be
/// sorted and compact.
pub fn apply(
    shape: SplitGraphShape,
    op: Operator,
    u: &ExtendedConfiguration,
) -> Result<ExtendedConfiguration> {
    u.check(shape)?;
    let (n, d) = (shape.n as i64, shape.d as i64);
    let mut out = u.clone();
    match op {
        Operator::Ts => {
            add(&mut out.clique, 1);
            add(&mut out.independent, 1);
        }
        Operator::TsInv => {
            add(&mut out.clique, -1);
            add(&mut out.independent, -1);
        }
        Operator::Tk => {
            out.clique[0] -= n + d + 1;
            add(&mut out.clique, 1);
            out.clique.rotate_left(1);
            add(&mut out.independent, 1);
        }
        Operator::TkInv => {
            out.clique.rotate_right(1);
            add(&mut out.clique, -1);
            out.clique[0] += n + d + 1;
            add(&mut out.independent, -1);
        }
        Operator::Ti | Operator::TiInv if d == 0 => {
            return Err(Error::OutOfRange("T_I needs an independent vertex".into()));
        }
        Operator::Ti => {
            add(&mut out.clique, 1);
            out.independent[0] -= n + 1;
            out.independent.rotate_left(1);
        }
        Operator::TiInv => {
            add(&mut out.clique, -1);
            out.independent.rotate_right(1);
            out.independent[0] += n + 1;
        }
        Operator::Tw => {
            let mut w = out;
            for _ in 0..=n {
                w = apply(shape, Operator::Tk, &w)?;
            }
            for _ in 0..d {
                w = apply(shape, Operator::Ti, &w)?;
            }
            return Ok(w);
        }
        Operator::TwInv => {
            let mut w = out;
            for _ in 0..d {
                w = apply(shape, Operator::TiInv, &w)?;
            }
            for _ in 0..=n {
                w = apply(shape, Operator::TkInv, &w)?;
            }
            return Ok(w);
        }
    }
    if !out.is_sorted() || !out.is_compact(shape) {
        return Err(Error::Internal(format!(
            "{op:?} on {u} left the sorted compact set"
        )));
    }
    Ok(out)
}

/// Applies `ops` left to right.
pub fn apply_word(
    shape: SplitGraphShape,
    ops: &[Operator],
    u: &ExtendedConfiguration,
) -> Result<ExtendedConfiguration> {
    ops.iter()
        .try_fold(u.clone(), |acc, &op| apply(shape, op, &acc))
}

/// `sort(u + Delta)` for the toppling of the sink or of a maximal vertex.
pub fn apply_by_definition(
    shape: SplitGraphShape,
    op: Operator,
    u: &ExtendedConfiguration,
) -> Result<ExtendedConfiguration> {
    let (n, d) = (shape.n as i64, shape.d as i64);
    let mut out = u.clone();
    match op {
        Operator::Ts => {
            add(&mut out.clique, 1);
            add(&mut out.independent, 1);
        }
        Operator::Tk => {
            let i = (0..out.clique.len())
                .max_by_key(|&i| (out.clique[i], std::cmp::Reverse(i)))
                .unwrap_or(0);
            add(&mut out.clique, 1);
            out.clique[i] -= n + d + 1;
            add(&mut out.independent, 1);
        }
        Operator::Ti if d > 0 => {
            let j = (0..out.independent.len())
                .max_by_key(|&j| (out.independent[j], std::cmp::Reverse(j)))
                .unwrap_or(0);
            add(&mut out.clique, 1);
            out.independent[j] -= n + 1;
        }
        _ => {
            return Err(Error::OutOfRange(format!(
                "{op:?} has no toppling definition here"
            )))
        }
    }
    Ok(out.sorted())
}

/// `T_s T_K^n T_I^d` returns `u`, and the three operators commute pairwise on `u`.
pub fn identity_check(shape: SplitGraphShape, u: &ExtendedConfiguration) -> Result<bool> {
    let mut word = vec![Operator::Ts];
    word.extend(std::iter::repeat_n(Operator::Tk, shape.n));
    word.extend(std::iter::repeat_n(Operator::Ti, shape.d));
    if apply_word(shape, &word, u)? != *u {
        return Ok(false);
    }
    let ops: &[Operator] = if shape.d > 0 {
        &[Operator::Ts, Operator::Tk, Operator::Ti]
    } else {
        &[Operator::Ts, Operator::Tk]
    };
    for (i, &a) in ops.iter().enumerate() {
        for &b in &ops[i + 1..] {
            if apply_word(shape, &[a, b], u)? != apply_word(shape, &[b, a], u)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `sum_k floor(u_k / (n+d+1))` over the clique part.
pub fn weight(shape: SplitGraphShape, clique: &[i64]) -> i64 {
    let m = (shape.n + shape.d + 1) as i64;
    clique.iter().map(|&x| x.div_euclid(m)).sum()
}

/// Applies `T_W^k`, using the inverse for negative `k`.
pub fn apply_tw_power(
    shape: SplitGraphShape,
    k: i64,
    u: &ExtendedConfiguration,
) -> Result<ExtendedConfiguration> {
    let op = if k >= 0 {
        Operator::Tw
    } else {
        Operator::TwInv
    };
    (0..k.unsigned_abs()).try_fold(u.clone(), |acc, _| apply(shape, op, &acc))
}

/// Sorted configurations with clique entries in `[0, n+d]` and independent
/// entries in `[0, n]`, lexicographically decreasing.
pub fn enumerate_quasistable_nonneg(shape: SplitGraphShape) -> Vec<ExtendedConfiguration> {
    let cliques = decreasing_tuples(shape.n, (shape.n + shape.d) as u64);
    let indeps = decreasing_tuples(shape.d, shape.n as u64);
    let mut out = Vec::with_capacity(cliques.len() * indeps.len());
    for k in &cliques {
        for i in &indeps {
            out.push(ExtendedConfiguration::new(
                k.iter().map(|&x| x as i64).collect(),
                i.iter().map(|&x| x as i64).collect(),
            ));
        }
    }
    out
}

/// `C(2n+d, n) C(n+d, n)`.
pub fn count_quasistable_nonneg(n: usize, d: usize) -> BigUint {
    let (n, d) = (n as i64, d as i64);
    binomial(2 * n + d, n) * binomial(n + d, n)
}

/// The sorted recurrent configuration equivalent to `u` under toppling and
/// permuting: raise to non-negative with sink topplings, then repeat
/// {topple sink, stabilize, sort} until the burning test passes.
pub fn recurrent_representative(
    shape: SplitGraphShape,
    u: &ExtendedConfiguration,
) -> Result<Configuration> {
    u.check(shape)?;
    let low = u
        .clique
        .iter()
        .chain(&u.independent)
        .copied()
        .min()
        .unwrap_or(0);
    let mut ext = u.clone();
    if low < 0 {
        add(&mut ext.clique, -low);
        add(&mut ext.independent, -low);
    }
    let mut c = stabilize(shape, &ext.to_configuration()?)?
        .final_config
        .sorted();
    let bound = 4 * (shape.n + shape.d + 2) * (shape.n + shape.d + 2);
    for _ in 0..bound {
        if is_recurrent(shape, &c)? {
            return Ok(c);
        }
        c.add_all(1)?;
        c = stabilize(shape, &c)?.final_config.sorted();
    }
    Err(Error::Internal(format!(
        "no recurrent representative found for {u}"
    )))
}

/// The `n + 1` quasi-stable non-negative configurations equivalent to the
/// recurrent `v`: prefixes of the burning word
/// `T_s T_I^{k_0} prod_i (T_K T_I^{k_i})` (independent topplings first),
/// each normalized by `T_W^{weight}`. The first member is `v` itself.
pub fn class_members(
    shape: SplitGraphShape,
    v: &Configuration,
) -> Result<Vec<ExtendedConfiguration>> {
    crate::asm::check_sorted_recurrent(shape, v)?;
    let start = ExtendedConfiguration::from(v);
    let unstable_i =
        |u: &ExtendedConfiguration| u.independent.first().is_some_and(|&b| b > shape.n as i64);
    let mut prefixes = vec![start.clone()];
    let mut cur = apply(shape, Operator::Ts, &start)?;
    while unstable_i(&cur) {
        cur = apply(shape, Operator::Ti, &cur)?;
    }
    for i in 0..shape.n {
        prefixes.push(cur.clone());
        cur = apply(shape, Operator::Tk, &cur)?;
        while unstable_i(&cur) {
            cur = apply(shape, Operator::Ti, &cur)?;
        }
        if i + 1 == shape.n && cur != start {
            return Err(Error::Internal(format!(
                "burning word of {v} did not close"
            )));
        }
    }
    prefixes.truncate(shape.n + 1);
    prefixes
        .iter()
        .map(|p| apply_tw_power(shape, weight(shape, &p.clique), p))
        .collect()
}

/// Outcome of [`verify_cycle_lemma`].
#[derive(Debug, Clone, Serialize)]
pub struct CycleLemmaReport {
    pub n: usize,
    pub d: usize,
    pub recurrent: usize,
    pub quasistable: usize,
    pub failure: Option<String>,
}

/// Checks that the classes of all sorted recurrent configurations partition
/// the quasi-stable non-negative configurations into blocks of size `n + 1`
/// with one recurrent member each.
pub fn verify_cycle_lemma(shape: SplitGraphShape, exec: Execution) -> Result<CycleLemmaReport> {
    let recs = enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec);
    let all = enumerate_quasistable_nonneg(shape);
    let mut report = CycleLemmaReport {
        n: shape.n,
        d: shape.d,
        recurrent: recs.len(),
        quasistable: all.len(),
        failure: None,
    };
    let expected = count_quasistable_nonneg(shape.n, shape.d);
    if BigUint::from(all.len()) != expected {
        report.failure = Some(format!(
            "{} quasi-stable configurations, formula gives {expected}",
            all.len()
        ));
        return Ok(report);
    }
    if BigUint::from(recs.len()) * BigUint::from(shape.n + 1) != expected {
        report.failure = Some(format!(
            "{} recurrent configurations do not divide the count by n+1",
            recs.len()
        ));
        return Ok(report);
    }
    let modulus = (shape.n + shape.d + 1) as i64;
    let classes: Vec<Result<std::result::Result<Vec<ExtendedConfiguration>, String>>> =
        exec.map(&recs, |v| {
            let members = class_members(shape, v)?;
            let distinct: BTreeSet<_> = members.iter().collect();
            let sinks: BTreeSet<i64> = members
                .iter()
                .map(|m| m.sink_value().rem_euclid(modulus))
                .collect();
            if members.len() != shape.n + 1
                || distinct.len() != members.len()
                || sinks.len() != members.len()
            {
                return Ok(Err(format!("class of {v} is {members:?}")));
            }
            if members[0] != ExtendedConfiguration::from(v) {
                return Ok(Err(format!("class of {v} does not start with it")));
            }
            let mut recurrent = 0;
            for m in &members {
                if !(m.is_quasi_stable(shape) && m.is_nonnegative()) {
                    return Ok(Err(format!(
                        "class member {m} of {v} is not quasi-stable non-negative"
                    )));
                }
                let c = m.to_configuration()?;
                if c.is_stable(shape) && is_recurrent(shape, &c)? {
                    recurrent += 1;
                }
                if recurrent_representative(shape, m)? != *v {
                    return Ok(Err(format!("representative of {m} is not {v}")));
                }
            }
            if recurrent != 1 {
                return Ok(Err(format!(
                    "class of {v} has {recurrent} recurrent members"
                )));
            }
            Ok(Ok(members))
        });
    let mut seen = BTreeSet::new();
    for class in classes {
        match class? {
            Err(msg) => {
                report.failure = Some(msg);
                return Ok(report);
            }
            Ok(members) => {
                for m in members {
                    if !seen.insert(m.clone()) {
                        report.failure = Some(format!("{m} lies in two classes"));
                        return Ok(report);
                    }
                }
            }
        }
    }
    if seen.len() != all.len() || !all.iter().all(|u| seen.contains(u)) {
        report.failure = Some("classes do not cover every quasi-stable configuration".into());
    }
    Ok(report)
}
