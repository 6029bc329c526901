//! Sawtooth polyominoes and their CTI and ITC bounce paths.
//!
//! Both boundary paths run from `(n+1, d)` to the origin. The upper path uses
//! `nw = (-1, 1)` and `s = (0, -1)`; the lower path uses `w = (-1, 0)` and `s`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::asm::{Configuration, SplitGraphShape};
use crate::error::{Error, Result};
use crate::schroder::{phi_inv, Letter, Point, Word};
use crate::toppling::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Nw,
    W,
    S,
}

impl Step {
    pub fn delta(self) -> Point {
        match self {
            Step::Nw => (-1, 1),
            Step::W => (-1, 0),
            Step::S => (0, -1),
        }
    }
}

fn walk(start: Point, steps: &[Step]) -> Vec<Point> {
    let mut p = start;
    let mut out = Vec::with_capacity(steps.len() + 1);
    out.push(p);
    for s in steps {
        let d = s.delta();
        p = (p.0 + d.0, p.1 + d.1);
        out.push(p);
    }
    out
}

/// A pair of boundary paths of dimension `(n+1, d)`; not necessarily valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SawtoothPolyomino {
    pub n: usize,
    pub d: usize,
    pub upper: Vec<Step>,
    pub lower: Vec<Step>,
}

impl SawtoothPolyomino {
    pub fn start(&self) -> Point {
        (self.n as i64 + 1, self.d as i64)
    }

    pub fn upper_points(&self) -> Vec<Point> {
        walk(self.start(), &self.upper)
    }

    pub fn lower_points(&self) -> Vec<Point> {
        walk(self.start(), &self.lower)
    }

    /// The two paths meet only at their endpoints.
    pub fn is_valid(&self) -> bool {
        let up = self.upper_points();
        let lo = self.lower_points();
        if up.last() != Some(&(0, 0)) || lo.last() != Some(&(0, 0)) {
            return false;
        }
        let lower: HashSet<Point> = lo.into_iter().collect();
        let ends = [self.start(), (0, 0)];
        up.iter().all(|p| ends.contains(p) || !lower.contains(p))
    }

    /// Upper path as a string over `N` (nw) and `S`.
    pub fn upper_string(&self) -> String {
        self.upper
            .iter()
            .map(|s| if *s == Step::Nw { 'N' } else { 'S' })
            .collect()
    }

    /// Lower path as a string over `W` and `S`.
    pub fn lower_string(&self) -> String {
        self.lower
            .iter()
            .map(|s| if *s == Step::W { 'W' } else { 'S' })
            .collect()
    }

    /// Number of unit squares inside: per column, from the lower path up to
    /// the lower end of the upper path's diagonal in that column.
    pub fn area(&self) -> u64 {
        let cols = self.n + 1;
        let mut top = vec![0i64; cols];
        let mut bottom = vec![0i64; cols];
        for pair in self.upper_points().windows(2) {
            if pair[1].0 < pair[0].0 {
                top[pair[1].0 as usize] = pair[0].1;
            }
        }
        for pair in self.lower_points().windows(2) {
            if pair[1].0 < pair[0].0 {
                bottom[pair[1].0 as usize] = pair[0].1;
            }
        }
        top.iter()
            .zip(&bottom)
            .map(|(t, b)| (t - b).max(0) as u64)
            .sum()
    }

    fn point_sets(&self) -> (HashSet<Point>, HashSet<Point>) {
        (
            self.upper_points().into_iter().collect(),
            self.lower_points().into_iter().collect(),
        )
    }

    fn check_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPolyomino(format!(
                "paths {} / {} touch",
                self.upper_string(),
                self.lower_string()
            )))
        }
    }
}

impl fmt::Display for SawtoothPolyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}] upper {} lower {}",
            self.n + 1,
            self.d,
            self.upper_string(),
            self.lower_string()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct PolyominoJson {
    dim: [usize; 2],
    upper: String,
    lower: String,
}

impl Serialize for SawtoothPolyomino {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyominoJson {
            dim: [self.n + 1, self.d],
            upper: self.upper_string(),
            lower: self.lower_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SawtoothPolyomino {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = PolyominoJson::deserialize(de)?;
        let parse =
            |s: &str, horizontal: char, step: Step| -> std::result::Result<Vec<Step>, D::Error> {
                s.chars()
                    .map(|c| match c {
                        'S' => Ok(Step::S),
                        x if x == horizontal => Ok(step),
                        x => Err(serde::de::Error::custom(format!("bad step '{x}'"))),
                    })
                    .collect()
            };
        if j.dim[0] == 0 {
            return Err(serde::de::Error::custom("dimension must be at least 1"));
        }
        Ok(SawtoothPolyomino {
            n: j.dim[0] - 1,
            d: j.dim[1],
            upper: parse(&j.upper, 'N', Step::Nw)?,
            lower: parse(&j.lower, 'W', Step::W)?,
        })
    }
}

/// The boundary pair of any word with equal U and D counts.
pub fn sts(w: &Word) -> Result<SawtoothPolyomino> {
    let (n, d) = (w.count(Letter::U), w.count(Letter::H));
    if w.count(Letter::D) != n {
        return Err(Error::LetterCount(format!(
            "{w} has {} U's and {} D's",
            n,
            w.count(Letter::D)
        )));
    }
    let mut upper = Vec::with_capacity(2 * n + d + 2);
    let mut lower = Vec::with_capacity(n + d + 1);
    upper.push(Step::Nw);
    for &l in w.letters() {
        upper.push(if l == Letter::U { Step::Nw } else { Step::S });
        match l {
            Letter::H => lower.push(Step::S),
            Letter::D => lower.push(Step::W),
            Letter::U => {}
        }
    }
    upper.push(Step::S);
    lower.push(Step::W);
    Ok(SawtoothPolyomino { n, d, upper, lower })
}

/// Inverse of [`sts`]: reads the word back from the boundary pair.
pub fn word_of(p: &SawtoothPolyomino) -> Result<Word> {
    let bad = || Error::InvalidPolyomino(format!("{p} is not the image of a word"));
    let (n, d) = (p.n, p.d);
    if p.upper.len() != 2 * n + d + 2 || p.lower.len() != n + d + 1 {
        return Err(bad());
    }
    if p.upper[0] != Step::Nw
        || p.upper[p.upper.len() - 1] != Step::S
        || p.lower[p.lower.len() - 1] != Step::W
    {
        return Err(bad());
    }
    let mut rest = p.lower[..n + d].iter();
    let mut letters = Vec::with_capacity(2 * n + d);
    for s in &p.upper[1..p.upper.len() - 1] {
        letters.push(match s {
            Step::Nw => Letter::U,
            _ => match rest.next() {
                Some(Step::S) => Letter::H,
                Some(Step::W) => Letter::D,
                _ => return Err(bad()),
            },
        });
    }
    let w = Word(letters);
    if w.count(Letter::U) != n || w.count(Letter::H) != d {
        return Err(bad());
    }
    Ok(w)
}

fn steps_between(points: &[Point]) -> Result<Vec<Step>> {
    let mut out = Vec::new();
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let step = match (b.0 - a.0, b.1 - a.1) {
            (0, dy) if dy < 0 => (Step::S, -dy),
            (dx, 0) if dx < 0 => (Step::W, -dx),
            (dx, dy) if dx < 0 && dy == -dx => (Step::Nw, -dx),
            (0, 0) => continue,
            _ => {
                return Err(Error::Internal(format!(
                    "segment {a:?} -> {b:?} is not a path step"
                )))
            }
        };
        out.extend(std::iter::repeat_n(step.0, step.1 as usize));
    }
    Ok(out)
}

/// Direct construction from a sorted recurrent configuration, checked
/// against `sts(phi_inv(c))`.
pub fn from_config(shape: SplitGraphShape, c: &Configuration) -> Result<SawtoothPolyomino> {
    c.check_shape(shape)?;
    let expected = sts(phi_inv(c)?.word())?;
    let (n, d) = (shape.n as i64, shape.d as i64);
    let a = |j: i64| c.clique[(j - 1) as usize] as i64;
    let b = |i: i64| c.independent[(i - 1) as usize] as i64;

    let mut lower_pts = vec![(n + 1, d)];
    for i in (1..=d).rev() {
        let x = 1 + b(d + 1 - i);
        lower_pts.push((x, i));
        lower_pts.push((x, i - 1));
    }
    lower_pts.push((0, 0));

    let mut upper_pts = vec![(n + 1, d), (n, d + 1)];
    for j in (1..=n).rev() {
        let av = a(n + 1 - j);
        upper_pts.push((j, 2 - j + av));
        upper_pts.push((j - 1, 3 - j + av));
    }
    upper_pts.push((0, 0));

    let p = SawtoothPolyomino {
        n: shape.n,
        d: shape.d,
        upper: steps_between(&upper_pts)?,
        lower: steps_between(&lower_pts)?,
    };
    if p != expected {
        return Err(Error::Internal(format!(
            "direct polyomino of {c} differs from the word construction"
        )));
    }
    Ok(p)
}

/// A bounce path and its run lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BounceRecord {
    pub mode: Mode,
    pub sizes: Vec<usize>,
    pub path: Vec<Point>,
}

impl BounceRecord {
    /// Sizes with trailing zeros removed.
    pub fn normalized(&self) -> Vec<usize> {
        normalize_sizes(&self.sizes)
    }
}

/// Strips trailing zero entries.
pub fn normalize_sizes(sizes: &[usize]) -> Vec<usize> {
    let end = sizes.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    sizes[..end].to_vec()
}

fn run(
    mut p: Point,
    step: Step,
    target: &HashSet<Point>,
    path: &mut Vec<Point>,
    limit: i64,
) -> Result<(Point, usize)> {
    let mut k = 0;
    while !target.contains(&p) {
        let d = step.delta();
        p = (p.0 + d.0, p.1 + d.1);
        path.push(p);
        k += 1;
        if k as i64 > limit {
            return Err(Error::Internal("bounce path left the polyomino".into()));
        }
    }
    Ok((p, k))
}

/// CTI bounce: from `(n, d)`, nw to the upper path (`p_i`), then s to the
/// lower path (`p_i + q_i`), until the origin.
pub fn cti_bounce(poly: &SawtoothPolyomino) -> Result<BounceRecord> {
    poly.check_valid()?;
    let (upper, lower) = poly.point_sets();
    let limit = (poly.n + poly.d + 2) as i64 * 2;
    let mut p: Point = (poly.n as i64, poly.d as i64);
    let mut path = vec![p];
    let mut sizes = Vec::new();
    while p != (0, 0) {
        let (q, nw) = run(p, Step::Nw, &upper, &mut path, limit)?;
        let (r, s) = run(q, Step::S, &lower, &mut path, limit)?;
        if s < nw || (nw == 0 && s == 0) {
            return Err(Error::Internal(format!("CTI bounce stalled at {r:?}")));
        }
        sizes.push(nw);
        sizes.push(s - nw);
        p = r;
    }
    Ok(BounceRecord {
        mode: Mode::Cti,
        sizes,
        path,
    })
}

/// ITC bounce: from `(n, d)`, s to the lower path first (`q'_1`), then
/// alternate nw runs (`p'_i`) and s runs (`p'_i + q'_{i+1}`). A final s run
/// longer than the last nw run contributes `(q'_{m+1}, 0)`.
pub fn itc_bounce(poly: &SawtoothPolyomino) -> Result<BounceRecord> {
    poly.check_valid()?;
    let (upper, lower) = poly.point_sets();
    let limit = (poly.n + poly.d + 2) as i64 * 2;
    let mut p: Point = (poly.n as i64, poly.d as i64);
    let mut path = vec![p];
    let (q, first) = run(p, Step::S, &lower, &mut path, limit)?;
    p = q;
    let mut sizes = vec![first];
    loop {
        let (q, nw) = run(p, Step::Nw, &upper, &mut path, limit)?;
        let (r, s) = run(q, Step::S, &lower, &mut path, limit)?;
        if nw == 0 || s < nw {
            return Err(Error::Internal(format!("ITC bounce stalled at {r:?}")));
        }
        sizes.push(nw);
        p = r;
        if p == (0, 0) {
            if s > nw {
                sizes.push(s - nw);
                sizes.push(0);
            }
            break;
        }
        sizes.push(s - nw);
    }
    Ok(BounceRecord {
        mode: Mode::Itc,
        sizes,
        path,
    })
}

/// All polyominoes for sorted recurrent configurations of `shape`, in enumeration order.
pub fn enumerate_polyominoes(shape: SplitGraphShape) -> Result<Vec<SawtoothPolyomino>> {
    crate::asm::enumerate_sorted_recurrent(shape)
        .iter()
        .map(|c| from_config(shape, c))
        .collect()
}
