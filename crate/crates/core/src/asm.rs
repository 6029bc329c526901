//! The abelian sandpile model on the complete split graph `S_{n,d}`.
//!
//! Non-sink clique vertices are `v_1..v_n`, independent vertices are
//! `w_1..w_d`. The sink is a clique vertex whose height is not tracked here.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, decreasing_tuples};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// The pair `(n, d)` identifying `S_{n,d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitGraphShape {
    pub n: usize,
    pub d: usize,
}

impl SplitGraphShape {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidShape { n, d });
        }
        Ok(Self { n, d })
    }

    /// Degree of a non-sink clique vertex, also the sink degree.
    pub fn clique_degree(&self) -> u64 {
        (self.n + self.d) as u64
    }

    /// Degree of an independent vertex.
    pub fn independent_degree(&self) -> u64 {
        (self.n + 1) as u64
    }

    pub fn sink_degree(&self) -> u64 {
        self.clique_degree()
    }

    /// Number of edges not incident to the sink: `C(n+d,2) - C(d,2)`.
    pub fn non_sink_edges(&self) -> i64 {
        let nd = (self.n + self.d) as i64;
        let d = self.d as i64;
        nd * (nd - 1) / 2 - d * (d - 1) / 2
    }

    /// Number of non-sink vertices.
    pub fn vertex_count(&self) -> usize {
        self.n + self.d
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let (n, d) = (self.n, self.d);
        (0..n)
            .map(Vertex::Clique)
            .chain((0..d).map(Vertex::Independent))
    }
}

impl fmt::Display for SplitGraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.n, self.d)
    }
}

/// A vertex of `S_{n,d}` with 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Sink,
    Clique(usize),
    Independent(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Sink => write!(f, "s"),
            Vertex::Clique(i) => write!(f, "v{}", i + 1),
            Vertex::Independent(j) => write!(f, "w{}", j + 1),
        }
    }
}

/// Grain counts on the clique and independent vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "ConfigurationJson", try_from = "ConfigurationJson")]
pub struct Configuration {
    pub clique: Vec<u64>,
    pub independent: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    n: usize,
    d: usize,
    clique: Vec<u64>,
    independent: Vec<u64>,
}

impl From<Configuration> for ConfigurationJson {
    fn from(c: Configuration) -> Self {
        Self {
            n: c.clique.len(),
            d: c.independent.len(),
            clique: c.clique,
            independent: c.independent,
        }
    }
}

impl TryFrom<ConfigurationJson> for Configuration {
    type Error = Error;
    fn try_from(j: ConfigurationJson) -> Result<Self> {
        if j.clique.len() != j.n || j.independent.len() != j.d {
            return Err(Error::ShapeMismatch(format!(
                "declared ({},{}) but found {} clique and {} independent entries",
                j.n,
                j.d,
                j.clique.len(),
                j.independent.len()
            )));
        }
        Ok(Configuration {
            clique: j.clique,
            independent: j.independent,
        })
    }
}

impl Configuration {
    pub fn new(clique: Vec<u64>, independent: Vec<u64>) -> Self {
        Self {
            clique,
            independent,
        }
    }

    pub fn zero(shape: SplitGraphShape) -> Self {
        Self {
            clique: vec![0; shape.n],
            independent: vec![0; shape.d],
        }
    }

    /// The shape implied by the entry counts.
    pub fn shape(&self) -> Result<SplitGraphShape> {
        SplitGraphShape::new(self.clique.len(), self.independent.len())
    }

    pub fn check_shape(&self, shape: SplitGraphShape) -> Result<()> {
        if self.clique.len() != shape.n || self.independent.len() != shape.d {
            return Err(Error::ShapeMismatch(format!(
                "{} has {} clique and {} independent entries",
                shape,
                self.clique.len(),
                self.independent.len()
            )));
        }
        Ok(())
    }

    pub fn get(&self, v: Vertex) -> u64 {
        match v {
            Vertex::Sink => 0,
            Vertex::Clique(i) => self.clique[i],
            Vertex::Independent(j) => self.independent[j],
        }
    }

    pub fn height(&self) -> u64 {
        self.clique.iter().chain(&self.independent).sum()
    }

    /// `height - (C(n+d,2) - C(d,2))`.
    pub fn level(&self, shape: SplitGraphShape) -> i64 {
        self.height() as i64 - shape.non_sink_edges()
    }

    pub fn is_sorted(&self) -> bool {
        self.clique.windows(2).all(|w| w[0] >= w[1])
            && self.independent.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sorted(&self) -> Self {
        let mut c = self.clone();
        c.clique.sort_unstable_by(|a, b| b.cmp(a));
        c.independent.sort_unstable_by(|a, b| b.cmp(a));
        c
    }

    pub fn is_stable(&self, shape: SplitGraphShape) -> bool {
        self.clique.iter().all(|&a| a < shape.clique_degree())
            && self
                .independent
                .iter()
                .all(|&b| b < shape.independent_degree())
    }

    fn is_unstable_at(&self, shape: SplitGraphShape, v: Vertex) -> bool {
        match v {
            Vertex::Sink => false,
            Vertex::Clique(i) => self.clique[i] >= shape.clique_degree(),
            Vertex::Independent(j) => self.independent[j] >= shape.independent_degree(),
        }
    }

    /// Adds `k` grains to every non-sink vertex.
    pub fn add_all(&mut self, k: u64) -> Result<()> {
        for x in self.clique.iter_mut().chain(self.independent.iter_mut()) {
            *x = x.checked_add(k).ok_or(Error::Overflow)?;
        }
        Ok(())
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.clique), join(&self.independent))
    }
}

/// Parses `a1,..,an;b1,..,bd` into integer parts; used by both configuration kinds.
pub(crate) fn parse_parts<T: FromStr>(s: &str) -> Result<(Vec<T>, Vec<T>)> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (k, i) = match s.split_once(';') {
        Some((k, i)) => (k, i),
        None => (s, ""),
    };
    let list = |part: &str| -> Result<Vec<T>> {
        let part = part.trim();
        if part.is_empty() {
            return Ok(Vec::new());
        }
        part.split(',')
            .map(|x| {
                x.trim()
                    .parse::<T>()
                    .map_err(|_| Error::Parse(format!("bad entry '{}'", x.trim())))
            })
            .collect()
    };
    Ok((list(k)?, list(i)?))
}

impl FromStr for Configuration {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (clique, independent) = parse_parts::<u64>(s)?;
        if clique.is_empty() {
            return Err(Error::Parse(format!("'{s}' has no clique entries")));
        }
        Ok(Self {
            clique,
            independent,
        })
    }
}

/// Per-vertex toppling counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Odometer {
    pub sink: u64,
    pub clique: Vec<u64>,
    pub independent: Vec<u64>,
}

impl Odometer {
    pub fn zero(shape: SplitGraphShape) -> Self {
        Self {
            sink: 0,
            clique: vec![0; shape.n],
            independent: vec![0; shape.d],
        }
    }

    fn bump(&mut self, v: Vertex) {
        match v {
            Vertex::Sink => self.sink += 1,
            Vertex::Clique(i) => self.clique[i] += 1,
            Vertex::Independent(j) => self.independent[j] += 1,
        }
    }
}

/// Result of [`stabilize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationTrace {
    pub final_config: Configuration,
    pub odometer: Odometer,
}

/// Topples one vertex in place. The sink may always be toppled.
pub fn topple_in_place(shape: SplitGraphShape, c: &mut Configuration, v: Vertex) -> Result<()> {
    if v != Vertex::Sink && !c.is_unstable_at(shape, v) {
        return Err(Error::VertexStable(v.to_string()));
    }
    match v {
        Vertex::Sink => c.add_all(1)?,
        Vertex::Clique(i) => {
            c.clique[i] -= shape.clique_degree();
            for (k, x) in c.clique.iter_mut().enumerate() {
                if k != i {
                    *x = x.checked_add(1).ok_or(Error::Overflow)?;
                }
            }
            for x in c.independent.iter_mut() {
                *x = x.checked_add(1).ok_or(Error::Overflow)?;
            }
        }
        Vertex::Independent(j) => {
            c.independent[j] -= shape.independent_degree();
            for x in c.clique.iter_mut() {
                *x = x.checked_add(1).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(())
}

/// Topples `v`, returning the new configuration.
pub fn topple(shape: SplitGraphShape, c: &Configuration, v: Vertex) -> Result<Configuration> {
    c.check_shape(shape)?;
    let mut out = c.clone();
    topple_in_place(shape, &mut out, v)?;
    Ok(out)
}

fn toppling_bound(shape: SplitGraphShape, c: &Configuration) -> u64 {
    let m = (shape.vertex_count() + 1) as u64;
    (c.height() + 1).saturating_mul(m * m)
}

/// Stabilizes `c` using a FIFO work queue of unstable vertices.
pub fn stabilize(shape: SplitGraphShape, c: &Configuration) -> Result<StabilizationTrace> {
    c.check_shape(shape)?;
    let bound = toppling_bound(shape, c);
    let mut cur = c.clone();
    let mut odo = Odometer::zero(shape);
    let mut queue: VecDeque<Vertex> = shape
        .vertices()
        .filter(|&v| cur.is_unstable_at(shape, v))
        .collect();
    let mut queued: Vec<bool> = shape
        .vertices()
        .map(|v| cur.is_unstable_at(shape, v))
        .collect();
    let slot = |v: Vertex| match v {
        Vertex::Clique(i) => i,
        Vertex::Independent(j) => shape.n + j,
        Vertex::Sink => unreachable!(),
    };
    let mut steps = 0u64;
    while let Some(v) = queue.pop_front() {
        queued[slot(v)] = false;
        while cur.is_unstable_at(shape, v) {
            topple_in_place(shape, &mut cur, v)?;
            odo.bump(v);
            steps += 1;
            if steps > bound {
                return Err(Error::Internal(
                    "stabilization exceeded its toppling bound".into(),
                ));
            }
        }
        for u in shape.vertices() {
            if !queued[slot(u)] && cur.is_unstable_at(shape, u) {
                queued[slot(u)] = true;
                queue.push_back(u);
            }
        }
    }
    Ok(StabilizationTrace {
        final_config: cur,
        odometer: odo,
    })
}

/// Stabilizes `c`, letting `pick` choose which unstable vertex topples next.
/// `pick` receives the current unstable vertices and returns an index into them.
pub fn stabilize_by<F>(
    shape: SplitGraphShape,
    c: &Configuration,
    mut pick: F,
) -> Result<StabilizationTrace>
where
    F: FnMut(&[Vertex]) -> usize,
{
    c.check_shape(shape)?;
    let bound = toppling_bound(shape, c);
    let mut cur = c.clone();
    let mut odo = Odometer::zero(shape);
    let mut steps = 0u64;
    loop {
        let unstable: Vec<Vertex> = shape
            .vertices()
            .filter(|&v| cur.is_unstable_at(shape, v))
            .collect();
        if unstable.is_empty() {
            break;
        }
        let v = unstable[pick(&unstable) % unstable.len()];
        topple_in_place(shape, &mut cur, v)?;
        odo.bump(v);
        steps += 1;
        if steps > bound {
            return Err(Error::Internal(
                "stabilization exceeded its toppling bound".into(),
            ));
        }
    }
    Ok(StabilizationTrace {
        final_config: cur,
        odometer: odo,
    })
}

/// Dhar's burning test. Returns the burning order when `c` is recurrent.
///
/// After the sink topples, each vertex topples at most once when unstable;
/// `c` is recurrent iff every vertex topples, in which case the configuration
/// returns to `c`.
pub fn burning_order(shape: SplitGraphShape, c: &Configuration) -> Result<Option<Vec<Vertex>>> {
    c.check_shape(shape)?;
    if !c.is_stable(shape) {
        return Err(Error::NotStable);
    }
    let mut cur = c.clone();
    cur.add_all(1)?;
    let mut burnt = vec![false; shape.vertex_count()];
    let mut order = Vec::with_capacity(shape.vertex_count());
    let mut progress = true;
    while progress {
        progress = false;
        for (k, v) in shape.vertices().enumerate() {
            if !burnt[k] && cur.is_unstable_at(shape, v) {
                topple_in_place(shape, &mut cur, v)?;
                burnt[k] = true;
                order.push(v);
                progress = true;
            }
        }
    }
    if order.len() < shape.vertex_count() {
        return Ok(None);
    }
    if cur != *c {
        return Err(Error::Internal(format!("burning {c} did not return to it")));
    }
    Ok(Some(order))
}

/// Dhar's burning test for a stable configuration.
pub fn is_recurrent(shape: SplitGraphShape, c: &Configuration) -> Result<bool> {
    Ok(burning_order(shape, c)?.is_some())
}

/// Sorted, stable and recurrent.
pub fn check_sorted_recurrent(shape: SplitGraphShape, c: &Configuration) -> Result<()> {
    c.check_shape(shape)?;
    if !c.is_sorted() {
        return Err(Error::NotSorted);
    }
    if !c.is_stable(shape) {
        return Err(Error::NotStable);
    }
    if !is_recurrent(shape, c)? {
        return Err(Error::NotRecurrent);
    }
    Ok(())
}

/// How [`enumerate_sorted_recurrent_with`] generates configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationBackend {
    /// Burning test over all sorted stable configurations.
    DharFilter,
    /// Image of all Schröder words under `phi`.
    SchroderImage,
}

/// Sorted recurrent configurations in lexicographically decreasing order.
pub fn enumerate_sorted_recurrent(shape: SplitGraphShape) -> Vec<Configuration> {
    enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, Execution::default())
}

pub fn enumerate_sorted_recurrent_with(
    shape: SplitGraphShape,
    backend: EnumerationBackend,
    exec: Execution,
) -> Vec<Configuration> {
    let mut out = match backend {
        EnumerationBackend::DharFilter => {
            let cliques = decreasing_tuples(shape.n, shape.clique_degree() - 1);
            let indeps = decreasing_tuples(shape.d, shape.independent_degree() - 1);
            exec.flat_map(&cliques, |k| {
                indeps
                    .iter()
                    .map(|i| Configuration::new(k.clone(), i.clone()))
                    .filter(|c| matches!(is_recurrent(shape, c), Ok(true)))
                    .collect()
            })
        }
        EnumerationBackend::SchroderImage => {
            let words = crate::schroder::enumerate_schroder_words(shape.n, shape.d);
            exec.map(&words, crate::schroder::phi)
        }
    };
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// `1/(n+1) C(2n+d, n) C(n+d, n)`, checked against `1/(2n+1) C(2n+1, n) C(2n+d, d)`.
pub fn sorted_recurrent_count(n: usize, d: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidShape { n, d });
    }
    let (n, d) = (n as i64, d as i64);
    let first = binomial(2 * n + d, n) * binomial(n + d, n) / BigUint::from((n + 1) as u64);
    let second =
        binomial(2 * n + 1, n) * binomial(2 * n + d, d) / BigUint::from((2 * n + 1) as u64);
    if first != second {
        return Err(Error::Internal(format!(
            "count forms disagree: {first} vs {second}"
        )));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, d: usize) -> SplitGraphShape {
        SplitGraphShape::new(n, d).unwrap()
    }

    fn c(x: &str) -> Configuration {
        x.parse().unwrap()
    }

    #[test]
    fn degrees() {
        let sh = s(5, 3);
        assert_eq!(sh.clique_degree(), 8);
        assert_eq!(sh.independent_degree(), 6);
        assert_eq!(sh.sink_degree(), 8);
        assert!(SplitGraphShape::new(0, 2).is_err());
    }

    #[test]
    fn topple_examples() {
        assert_eq!(
            topple(s(5, 3), &c("7,6,5,2,1;5,4,4"), Vertex::Sink).unwrap(),
            c("8,7,6,3,2;6,5,5")
        );
        assert_eq!(
            topple(s(2, 2), &c("4,0;0,0"), Vertex::Clique(0)).unwrap(),
            c("0,1;1,1")
        );
        assert_eq!(
            topple(s(2, 2), &c("0,0;3,0"), Vertex::Independent(0)).unwrap(),
            c("1,1;0,0")
        );
        assert!(matches!(
            topple(s(2, 2), &c("3,0;0,0"), Vertex::Clique(0)),
            Err(Error::VertexStable(_))
        ));
    }

    #[test]
    fn stabilize_examples() {
        let t = stabilize(s(2, 2), &c("4,0;0,0")).unwrap();
        assert_eq!(t.final_config, c("0,1;1,1"));
        assert_eq!(t.odometer.clique, vec![1, 0]);
        assert_eq!(t.odometer.independent, vec![0, 0]);
        let t = stabilize(s(2, 2), &c("3,3;2,2")).unwrap();
        assert_eq!(t.final_config, c("3,3;2,2"));
        assert_eq!(t.odometer, Odometer::zero(s(2, 2)));
        let t = stabilize(s(5, 3), &c("8,7,6,3,2;6,5,5")).unwrap();
        assert_eq!(t.final_config, c("7,6,5,2,1;5,4,4"));
        assert_eq!(t.odometer.clique, vec![1; 5]);
        assert_eq!(t.odometer.independent, vec![1; 3]);
    }

    #[test]
    fn recurrence_examples() {
        assert!(is_recurrent(s(2, 2), &c("3,3;2,2")).unwrap());
        assert!(!is_recurrent(s(2, 2), &c("0,0;0,0")).unwrap());
        assert!(!is_recurrent(s(2, 2), &c("2,2;1,1")).unwrap());
        assert_eq!(is_recurrent(s(2, 2), &c("4,0;0,0")), Err(Error::NotStable));
        let order = burning_order(s(2, 2), &c("3,3;2,2")).unwrap().unwrap();
        assert_eq!(order.len(), 4);
    }

    #[test]
    fn height_and_level() {
        assert_eq!(c("3,3;2,2").height(), 10);
        assert_eq!(c("3,3;2,2").level(s(2, 2)), 5);
        assert_eq!(c("7,6,5,2,1;5,4,4").height(), 34);
        assert_eq!(c("7,6,5,2,1;5,4,4").level(s(5, 3)), 9);
        assert_eq!(Configuration::zero(s(5, 3)).level(s(5, 3)), -25);
    }

    #[test]
    fn counts() {
        assert_eq!(sorted_recurrent_count(2, 2).unwrap(), BigUint::from(30u32));
        assert_eq!(sorted_recurrent_count(1, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(
            sorted_recurrent_count(5, 3).unwrap(),
            BigUint::from(12012u32)
        );
        assert_eq!(sorted_recurrent_count(3, 2).unwrap(), BigUint::from(140u32));
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(enumerate_sorted_recurrent(s(2, 2)).len(), 30);
        assert_eq!(enumerate_sorted_recurrent(s(1, 0)), vec![c("0")]);
        assert_eq!(enumerate_sorted_recurrent(s(3, 2)).len(), 140);
        let first = &enumerate_sorted_recurrent(s(2, 2))[0];
        assert_eq!(*first, c("3,3;2,2"));
    }

    #[test]
    fn parse_and_json() {
        assert_eq!(c("0"), Configuration::new(vec![0], vec![]));
        assert_eq!(c("0;"), Configuration::new(vec![0], vec![]));
        assert_eq!(c("7,6;5").to_string(), "7,6;5");
        let j = serde_json::to_string(&c("3,3;2,1")).unwrap();
        assert_eq!(j, r#"{"n":2,"d":2,"clique":[3,3],"independent":[2,1]}"#);
        let back: Configuration = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c("3,3;2,1"));
        assert!(serde_json::from_str::<Configuration>(
            r#"{"n":1,"d":2,"clique":[3,3],"independent":[]}"#
        )
        .is_err());
        assert!("a;1".parse::<Configuration>().is_err());
    }
}
