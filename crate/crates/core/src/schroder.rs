//! Schröder words, the bijection `phi` with sorted recurrent configurations,
//! the mirror map, and the area and bounce statistics.
//!
//! Lattice convention: `U = (0,1)`, `H = (1,1)`, `D = (1,0)`, starting at the
//! origin. A Schröder word stays weakly above the diagonal `y = x`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::asm::{Configuration, SplitGraphShape};
use crate::error::{Error, Result};
use crate::toppling::{Mode, ToppleTrace};

/// A lattice point `(x, y)`.
pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    U,
    H,
    D,
}

impl Letter {
    pub fn step(self) -> Point {
        match self {
            Letter::U => (0, 1),
            Letter::H => (1, 1),
            Letter::D => (1, 0),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::U => 'U',
            Letter::H => 'H',
            Letter::D => 'D',
        }
    }

    fn mirrored(self) -> Letter {
        match self {
            Letter::U => Letter::D,
            Letter::H => Letter::H,
            Letter::D => Letter::U,
        }
    }
}

/// Any word over `{U, H, D}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    /// Equal numbers of `U` and `D`, and no prefix with more `D` than `U`.
    pub fn is_schroder(&self) -> bool {
        let mut h = 0i64;
        for &l in &self.0 {
            match l {
                Letter::U => h += 1,
                Letter::D => {
                    h -= 1;
                    if h < 0 {
                        return false;
                    }
                }
                Letter::H => {}
            }
        }
        h == 0
    }

    /// Lattice points visited, starting at the origin.
    pub fn points(&self) -> Vec<Point> {
        let mut p = (0, 0);
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(p);
        for l in &self.0 {
            let s = l.step();
            p = (p.0 + s.0, p.1 + s.1);
            out.push(p);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' | 'u' => Ok(Letter::U),
                'H' | 'h' => Ok(Letter::H),
                'D' | 'd' => Ok(Letter::D),
                other => Err(Error::Parse(format!("invalid letter '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A word known to be Schröder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchroderWord(Word);

impl SchroderWord {
    pub fn new(w: Word) -> Result<Self> {
        if w.is_schroder() {
            Ok(Self(w))
        } else {
            Err(Error::NotSchroder(w.to_string()))
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0 .0
    }

    /// Number of `U` steps.
    pub fn n(&self) -> usize {
        self.0.count(Letter::U)
    }

    /// Number of `H` steps.
    pub fn d(&self) -> usize {
        self.0.count(Letter::H)
    }

    pub fn points(&self) -> Vec<Point> {
        self.0.points()
    }
}

impl fmt::Display for SchroderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for SchroderWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SchroderWord::new(s.parse()?)
    }
}

impl Serialize for SchroderWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SchroderWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses and tests a word; invalid letters are an error.
pub fn is_schroder(s: &str) -> Result<bool> {
    Ok(s.parse::<Word>()?.is_schroder())
}

/// All Schröder words with `n` U's and `d` H's, lexicographic with `U < H < D`.
pub fn enumerate_schroder_words(n: usize, d: usize) -> Vec<SchroderWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(2 * n + d);
    fn rec(
        u: usize,
        h: usize,
        dn: usize,
        height: usize,
        cur: &mut Vec<Letter>,
        out: &mut Vec<SchroderWord>,
    ) {
        if u == 0 && h == 0 && dn == 0 {
            out.push(SchroderWord(Word(cur.clone())));
            return;
        }
        if u > 0 {
            cur.push(Letter::U);
            rec(u - 1, h, dn, height + 1, cur, out);
            cur.pop();
        }
        if h > 0 {
            cur.push(Letter::H);
            rec(u, h - 1, dn, height, cur, out);
            cur.pop();
        }
        if dn > 0 && height > 0 {
            cur.push(Letter::D);
            rec(u, h, dn - 1, height - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, d, n, 0, &mut cur, &mut out);
    out
}

/// All words with `n` U's, `n` D's and `d` H's, Schröder or not.
pub fn enumerate_words(n: usize, d: usize) -> Vec<Word> {
    crate::combinat::multiset_permutations(&[(Letter::U, n), (Letter::H, d), (Letter::D, n)])
        .into_iter()
        .map(Word)
        .collect()
}

/// `b_i` = number of D's after the i-th H; `a_j + 1` = number of non-U letters after the j-th U.
pub fn phi(w: &SchroderWord) -> Configuration {
    let letters = w.letters();
    let mut clique = Vec::with_capacity(w.n());
    let mut independent = Vec::with_capacity(w.d());
    let mut d_after = w.0.count(Letter::D) as u64;
    let mut non_u_after = (letters.len() - w.n()) as u64;
    for &l in letters {
        match l {
            Letter::U => clique.push(non_u_after - 1),
            Letter::H => {
                independent.push(d_after);
                non_u_after -= 1;
            }
            Letter::D => {
                d_after -= 1;
                non_u_after -= 1;
            }
        }
    }
    Configuration::new(clique, independent)
}

/// Inverse of [`phi`]; fails unless `c` is sorted recurrent.
pub fn phi_inv(c: &Configuration) -> Result<SchroderWord> {
    let shape = c.shape()?;
    if !c.is_sorted() {
        return Err(Error::NotSorted);
    }
    let (n, d) = (shape.n, shape.d);
    if c.independent.iter().any(|&b| b as usize > n)
        || c.clique.iter().any(|&a| a as usize >= n + d)
    {
        return Err(Error::NotStable);
    }
    let mut hd = Vec::with_capacity(n + d);
    let mut hs = c.independent.iter().peekable();
    for remaining in (0..=n).rev() {
        while hs.peek().is_some_and(|&&b| b as usize == remaining) {
            hd.push(Letter::H);
            hs.next();
        }
        if remaining > 0 {
            hd.push(Letter::D);
        }
    }
    let mut letters = Vec::with_capacity(2 * n + d);
    let mut us = c.clique.iter().peekable();
    for (p, &l) in hd.iter().enumerate() {
        let remaining = (n + d - p) as u64;
        while us.peek().is_some_and(|&&a| a + 1 == remaining) {
            letters.push(Letter::U);
            us.next();
        }
        letters.push(l);
    }
    let w = SchroderWord::new(Word(letters)).map_err(|_| Error::NotRecurrent)?;
    if phi(&w) != *c {
        return Err(Error::NotRecurrent);
    }
    Ok(w)
}

/// Reverses the word and swaps `U` with `D`.
pub fn mirror(w: &Word) -> Word {
    Word(w.0.iter().rev().map(|l| l.mirrored()).collect())
}

pub fn mirror_schroder(w: &SchroderWord) -> SchroderWord {
    SchroderWord(mirror(&w.0))
}

/// Number of lower triangles between the path and the diagonal.
pub fn area(w: &SchroderWord) -> u64 {
    let mut p: Point = (0, 0);
    let mut total = 0;
    for &l in w.letters() {
        if l != Letter::D {
            total += (p.1 - p.0) as u64;
        }
        let s = l.step();
        p = (p.0 + s.0, p.1 + s.1);
    }
    total
}

/// The lower triangles `(i, j)` (cell column `i`, row `j`) under the path.
pub fn lower_triangles(w: &SchroderWord) -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    let mut p: Point = (0, 0);
    for &l in w.letters() {
        if l != Letter::D {
            for i in p.0..p.1 {
                out.insert((i, p.1));
            }
        }
        let s = l.step();
        p = (p.0 + s.0, p.1 + s.1);
    }
    out
}

fn row_crossings(w: &SchroderWord) -> Vec<(i64, Letter)> {
    let mut p: Point = (0, 0);
    let mut out = Vec::new();
    for &l in w.letters() {
        if l != Letter::D {
            out.push((p.0, l));
        }
        let s = l.step();
        p = (p.0 + s.0, p.1 + s.1);
    }
    out
}

/// Lower-triangle containment: `a <= b` iff every lower triangle under `a`
/// lies under `b`. Only a preorder: `UDH` and `HUD` contain the same triangles.
pub fn triangle_le(a: &SchroderWord, b: &SchroderWord) -> bool {
    let (ra, rb) = (row_crossings(a), row_crossings(b));
    ra.len() == rb.len() && ra.iter().zip(&rb).all(|(x, y)| x.0 >= y.0)
}

/// Region containment: `a <= b` iff the region under `a` lies inside the
/// region under `b`, unit triangles of both orientations included.
pub fn region_le(a: &SchroderWord, b: &SchroderWord) -> bool {
    // Doubled abscissa of each row's crossing step at mid-height.
    let mid = |(x, l): &(i64, Letter)| 2 * x + i64::from(*l == Letter::H);
    let (ra, rb) = (row_crossings(a), row_crossings(b));
    ra.len() == rb.len() && ra.iter().zip(&rb).all(|(x, y)| mid(x) >= mid(y))
}

/// Deletes every `H`, leaving a Dyck word.
pub fn collapse(w: &SchroderWord) -> SchroderWord {
    SchroderWord(Word(
        w.letters()
            .iter()
            .copied()
            .filter(|&l| l != Letter::H)
            .collect(),
    ))
}

/// Classical bounce of a Dyck word, with the peaks `(col, Y)` of the bounce
/// path from the top right down to the origin.
pub fn dyck_bounce(dyck: &SchroderWord) -> Result<(u64, Vec<Point>)> {
    if dyck.d() > 0 {
        return Err(Error::NotSchroder(format!("{dyck} is not a Dyck word")));
    }
    let (peaks, bounce) = dyck_peaks_by_u(dyck);
    let ucols = u_tops(dyck);
    Ok((bounce, peaks.iter().map(|&m| ucols[m - 1]).collect()))
}

/// Tops of the U steps, in order.
fn u_tops(w: &SchroderWord) -> Vec<Point> {
    let mut p: Point = (0, 0);
    let mut out = Vec::with_capacity(w.n());
    for &l in w.letters() {
        let s = l.step();
        p = (p.0 + s.0, p.1 + s.1);
        if l == Letter::U {
            out.push(p);
        }
    }
    out
}

/// Bounce peaks of the collapsed word as 1-based U indices, and its bounce.
fn dyck_peaks_by_u(w: &SchroderWord) -> (Vec<usize>, u64) {
    let dyck = collapse(w);
    let tops = u_tops(&dyck);
    let mut y = dyck.n() as i64;
    let mut peaks = Vec::new();
    let mut bounce = 0u64;
    while y > 0 {
        let col = tops[(y - 1) as usize].0;
        peaks.push(y as usize);
        bounce += col as u64;
        y = col;
    }
    (peaks, bounce)
}

/// `Peak^Sch(1), Peak^Sch(2), ..`: the bounce peaks of the collapsed Dyck
/// word carried back to the tops of the same U steps, top right first.
pub fn schroder_peaks(w: &SchroderWord) -> Vec<Point> {
    let (peaks, _) = dyck_peaks_by_u(w);
    let tops = u_tops(w);
    peaks.iter().map(|&m| tops[m - 1]).collect()
}

/// `bounce(C(w)) + sum over H steps of the peaks strictly above the step`.
pub fn haglund_bounce(w: &SchroderWord) -> u64 {
    let (_, dyck) = dyck_peaks_by_u(w);
    let peaks = schroder_peaks(w);
    let mut p: Point = (0, 0);
    let mut extra = 0u64;
    for &l in w.letters() {
        if l == Letter::H {
            extra += peaks.iter().filter(|q| q.1 > p.1 + 1).count() as u64;
        }
        let s = l.step();
        p = (p.0 + s.0, p.1 + s.1);
    }
    dyck + extra
}

/// Squares to the left of each peak in its row, i.e. the sum of peak x-coordinates.
pub fn loehr_bounce(w: &SchroderWord) -> u64 {
    schroder_peaks(w).iter().map(|p| p.0 as u64).sum()
}

/// Bounce path drawn directly on the Schröder path, crossing each H band
/// diagonally. Experimental; returns the peaks it finds (top right first)
/// and every lattice point it visits.
pub fn antidiagonal_bounce_walk(w: &SchroderWord) -> (Vec<Point>, Vec<Point>) {
    let size = (w.n() + w.d()) as i64;
    let tops: HashSet<Point> = u_tops(w).into_iter().collect();
    let mut bands = HashSet::new();
    let mut p: Point = (0, 0);
    for &l in w.letters() {
        if l == Letter::H {
            bands.insert(p.0 + p.1 + 2);
        }
        let s = l.step();
        p = (p.0 + s.0, p.1 + s.1);
    }
    let mut peaks = Vec::new();
    let mut cur: Point = (size, size);
    let mut path = vec![cur];
    let mut west = true;
    let mut guard = 0;
    while cur != (0, 0) && guard <= 4 * size + 4 {
        guard += 1;
        let band = bands.contains(&(cur.0 + cur.1));
        let next = if west {
            if tops.contains(&cur) {
                peaks.push(cur);
                west = false;
                continue;
            } else if band {
                (cur.0 - 1, cur.1 - 1)
            } else {
                (cur.0 - 1, cur.1)
            }
        } else if cur.1 == cur.0 {
            west = true;
            continue;
        } else if band {
            (cur.0 - 1, cur.1 - 1)
        } else {
            (cur.0, cur.1 - 1)
        };
        cur = next;
        path.push(cur);
    }
    (peaks, path)
}

/// Peaks found by [`antidiagonal_bounce_walk`].
pub fn antidiagonal_bounce_peaks(w: &SchroderWord) -> Vec<Point> {
    antidiagonal_bounce_walk(w).0
}

/// Bounce computed from the anti-diagonal peaks.
pub fn antidiagonal_bounce(w: &SchroderWord) -> u64 {
    antidiagonal_bounce_peaks(w)
        .iter()
        .map(|p| p.0 as u64)
        .sum()
}

/// Schröder bounce, computed both as Haglund's sum and as Loehr's peak sum.
pub fn schroder_bounce(w: &SchroderWord) -> Result<u64> {
    let h = haglund_bounce(w);
    let l = loehr_bounce(w);
    if h != l {
        return Err(Error::Internal(format!(
            "bounce of {w}: Haglund {h} vs Loehr {l}"
        )));
    }
    Ok(h)
}

/// `phi . pi_{U,D} . phi^{-1}`: a recurrent configuration on `K_{n+1}`.
pub fn compress(shape: SplitGraphShape, c: &Configuration) -> Result<Configuration> {
    c.check_shape(shape)?;
    Ok(phi(&collapse(&phi_inv(c)?)))
}

/// Peaks predicted by an ITC trace: `Peak(i) = (S_i, p'_i + S_i)` with
/// `S_i = sum_{j>i}(p'_j + q'_j)`, skipping rounds with `p'_i = 0`.
pub fn peaks_from_itc_trace(trace: &ToppleTrace) -> Result<Vec<Point>> {
    if trace.mode != Mode::Itc {
        return Err(Error::ModeMismatch {
            expected: "ITC".into(),
            found: trace.mode.to_string(),
        });
    }
    let sizes: Vec<(i64, i64)> = trace
        .rounds
        .iter()
        .map(|r| (r.independent.len() as i64, r.clique.len() as i64))
        .collect();
    let mut out = Vec::new();
    for i in 0..sizes.len() {
        let (_, p) = sizes[i];
        if p == 0 {
            continue;
        }
        let tail: i64 = sizes[i + 1..].iter().map(|(q, p)| p + q).sum();
        out.push((tail, p + tail));
    }
    Ok(out)
}
