//! Partitions, cell statistics and the rational weight `W(mu; q, t)`.
//!
//! A cell `(i, j)` sits in row `i` and column `j`, both 0-based. For a cell
//! `x`: coarm `a'(x) = j`, arm `a(x) = mu_i - 1 - j`, coleg `l'(x) = i`,
//! leg `l(x) = mu'_j - 1 - i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::partitions;
use crate::error::{Error, Result};

use super::{qt_schroder, rpow};

/// A cell `(row, column)`.
pub type Cell = (usize, usize);

/// An integer partition with weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions of `n`.
    pub fn all(n: usize) -> Vec<Partition> {
        partitions(n)
            .into_iter()
            .map(|parts| Partition { parts })
            .collect()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
            .collect()
    }

    pub fn arm(&self, x: Cell) -> usize {
        self.parts[x.0] - 1 - x.1
    }

    pub fn coarm(&self, x: Cell) -> usize {
        x.1
    }

    pub fn leg(&self, x: Cell) -> usize {
        self.conjugate().parts[x.1] - 1 - x.0
    }

    pub fn coleg(&self, x: Cell) -> usize {
        x.0
    }

    /// `n(mu) = sum of colegs = sum_i i * mu_i`.
    pub fn n_stat(&self) -> usize {
        self.cells().iter().map(|&x| self.coleg(x)).sum()
    }
}

/// An exact evaluation point `(q0, t0, z0)`.
pub type RationalPoint = (BigRational, BigRational, BigRational);

/// `T_mu (prod_x (z + q^{a'} t^{l'})) M Pi_mu B_mu / w_mu` at an exact point.
pub fn w_weight(
    mu: &Partition,
    q: &BigRational,
    t: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    let conj = mu.conjugate();
    let cells = mu.cells();
    let one = BigRational::one();
    let mono = |x: Cell| rpow(q, x.1 as u32) * rpow(t, x.0 as u32);
    let mut denom = one.clone();
    for &x in &cells {
        let a = mu.arm(x) as u32;
        let l = (conj.parts[x.1] - 1 - x.0) as u32;
        denom *= (rpow(q, a) - rpow(t, l + 1)) * (rpow(t, l) - rpow(q, a + 1));
    }
    if denom.is_zero() {
        return Err(Error::DegeneratePoint(format!(
            "w_mu vanishes for {:?} at q={q}, t={t}",
            mu.parts
        )));
    }
    let n_mu: u32 = cells.iter().map(|x| x.0 as u32).sum();
    let n_conj: u32 = cells.iter().map(|x| x.1 as u32).sum();
    let tmu = rpow(t, n_mu) * rpow(q, n_conj);
    let zprod = cells
        .iter()
        .fold(one.clone(), |acc, &x| acc * (z + mono(x)));
    let m = (&one - q) * (&one - t);
    let pi = cells
        .iter()
        .filter(|&&x| x != (0, 0))
        .fold(one.clone(), |acc, &x| acc * (&one - mono(x)));
    let b = cells
        .iter()
        .fold(BigRational::zero(), |acc, &x| acc + mono(x));
    Ok(tmu * zprod * m * pi * b / denom)
}

/// Values at one point.
#[derive(Debug, Clone, Serialize)]
pub struct NablaPoint {
    pub q: String,
    pub t: String,
    pub z: String,
    pub lhs: String,
    pub rhs: String,
    pub lhs_swapped: String,
    pub rhs_swapped: String,
    pub ok: bool,
}

/// Outcome of [`nabla_symmetry_check`].
#[derive(Debug, Clone, Serialize)]
pub struct NablaReport {
    pub n: usize,
    pub points: Vec<NablaPoint>,
}

impl NablaReport {
    pub fn all_ok(&self) -> bool {
        self.points.iter().all(|p| p.ok)
    }
}

fn partition_sum(
    n: usize,
    q: &BigRational,
    t: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    Partition::all(n)
        .iter()
        .try_fold(BigRational::zero(), |acc, mu| {
            Ok(acc + w_weight(mu, q, t, z)?)
        })
}

/// Checks `sum_{mu |- N} W(mu) = sum_d z^d S(N-d, d)` at every point, and
/// the same identity with `q` and `t` exchanged.
pub fn nabla_symmetry_check(n: usize, points: &[RationalPoint]) -> Result<NablaReport> {
    if n == 0 {
        return Err(Error::OutOfRange("N must be at least 1".into()));
    }
    let polys = (0..=n)
        .map(|d| qt_schroder(n - d, d))
        .collect::<Result<Vec<_>>>()?;
    let rhs_at = |q: &BigRational, t: &BigRational, z: &BigRational| {
        polys
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (d, p)| {
                acc + rpow(z, d as u32) * p.eval(q, t)
            })
    };
    let mut out = Vec::with_capacity(points.len());
    for (q, t, z) in points {
        let lhs = partition_sum(n, q, t, z)?;
        let lhs_swapped = partition_sum(n, t, q, z)?;
        let rhs = rhs_at(q, t, z);
        let rhs_swapped = rhs_at(t, q, z);
        let ok = lhs == rhs && lhs_swapped == rhs_swapped && rhs == rhs_swapped;
        out.push(NablaPoint {
            q: q.to_string(),
            t: t.to_string(),
            z: z.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            lhs_swapped: lhs_swapped.to_string(),
            rhs_swapped: rhs_swapped.to_string(),
            ok,
        });
    }
    Ok(NablaReport { n, points: out })
}

/// `count` deterministic points at which no `w_mu` with `mu |- N` vanishes,
/// in either orientation. Degenerate candidates are skipped.
pub fn default_points(n: usize, count: usize) -> Vec<RationalPoint> {
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let parts = Partition::all(n);
    let mut out = Vec::with_capacity(count);
    let mut k: i64 = 0;
    while out.len() < count {
        k += 1;
        let q = r(2 + 3 * k % 7, 1 + k % 3) * if k % 4 == 0 { r(-1, 1) } else { r(1, 1) };
        let t = r(3 + 5 * k % 11, 2 + k % 5);
        let z = r(5 - 2 * k, 1 + k % 4);
        let good = parts
            .iter()
            .all(|mu| w_weight(mu, &q, &t, &z).is_ok() && w_weight(mu, &t, &q, &z).is_ok());
        if good {
            out.push((q, t, z));
        }
    }
    out
}
