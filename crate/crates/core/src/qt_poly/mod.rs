//! Exact polynomials in `q` and `t` with big-integer coefficients.
//!
//! [`QtPolynomial`] is sparse and canonical (no zero coefficients), so
//! equality is term-map equality. [`QPolynomial`] is a dense univariate
//! polynomial used for Gaussian coefficients.

mod gaussian;
mod partition;
mod sums;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use gaussian::{hexagon_area, hexagon_shuffle_gf, inversions, q_binomial, q_multinomial};
pub use partition::{
    default_points, nabla_symmetry_check, w_weight, Cell, NablaPoint, NablaReport, Partition,
    RationalPoint,
};
pub use sums::{
    egge_sum, egge_sum_with, egge_terms, extremal_words, f_cti, f_cti_with, f_itc, f_itc_with,
    fiber_words, hexagon_fiber, itc_sum, itc_sum_term, itc_sum_with, qt_schroder, qt_schroder_with,
    EggeTerm,
};

/// Raises an exact rational to a non-negative power.
pub(crate) fn rpow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Sparse polynomial in `q` and `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QtPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl QtPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    /// `c q^a t^b`.
    pub fn monomial(c: BigInt, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    /// Builds a polynomial from `(q-exponent, t-exponent, coefficient)` triples.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (a, b, c) in terms {
            p.add_term(a, b, BigInt::from(c));
        }
        p
    }

    /// A univariate polynomial read as a polynomial in `q`.
    pub fn from_q(p: &QPolynomial) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.coeffs().iter().enumerate() {
            out.add_term(e as u32, 0, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by `q^a t^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    /// Exchanges the roles of `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((y, x), c.clone()))
                .collect(),
        }
    }

    pub fn is_qt_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(a, b), c)| self.terms.get(&(b, a)) == Some(c))
    }

    /// Value at `q = t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q: &BigRational, t: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            total += BigRational::from_integer(c.clone()) * rpow(q, a) * rpow(t, b);
        }
        total
    }

    /// Terms in display order: total degree, then larger exponent, then
    /// q-exponent, all descending.
    fn display_order(&self) -> Vec<((u32, u32), &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by(|((a1, b1), _), ((a2, b2), _)| {
            (a2 + b2, (*a2).max(*b2), *a2).cmp(&(a1 + b1, (*a1).max(*b1), *a1))
        });
        v
    }

    /// LaTeX rendering, e.g. `q^5 + t^5 + q^4t + \dots + q + t`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let var = |name: char, e: u32| match e {
            0 => String::new(),
            1 => name.to_string(),
            e if e < 10 => format!("{name}^{e}"),
            e => format!("{name}^{{{e}}}"),
        };
        let mut out = String::new();
        for (i, ((a, b), c)) in self.display_order().into_iter().enumerate() {
            let mono = format!("{}{}", var('q', a), var('t', b));
            let mag = c.abs();
            let coeff = if mono.is_empty() || !mag.is_one() {
                mag.to_string()
            } else {
                String::new()
            };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&coeff);
            out.push_str(&mono);
        }
        out
    }

    /// JSON value `{"terms":[{"q":..,"t":..,"c":..}]}`, sorted by `(q,t)` descending.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    q: u32,
    t: u32,
    c: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for QtPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(&(q, t), c)| TermJson {
                q,
                t,
                c: match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                },
            })
            .collect();
        PolyJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QtPolynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(de)?;
        let mut p = QtPolynomial::zero();
        for t in j.terms {
            let c: BigInt = match &t.c {
                serde_json::Value::Number(n) => {
                    n.to_string().parse().map_err(serde::de::Error::custom)?
                }
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom)?,
                _ => {
                    return Err(serde::de::Error::custom(
                        "coefficient must be a number or string",
                    ))
                }
            };
            p.add_term(t.q, t.t, c);
        }
        Ok(p)
    }
}

impl fmt::Display for QtPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_latex())
    }
}

impl AddAssign<&QtPolynomial> for QtPolynomial {
    fn add_assign(&mut self, rhs: &QtPolynomial) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Add for QtPolynomial {
    type Output = QtPolynomial;
    fn add(mut self, rhs: QtPolynomial) -> QtPolynomial {
        if self.terms.len() < rhs.terms.len() {
            let mut r = rhs;
            r += &self;
            return r;
        }
        self += &rhs;
        self
    }
}

impl Mul for &QtPolynomial {
    type Output = QtPolynomial;
    fn mul(self, rhs: &QtPolynomial) -> QtPolynomial {
        let mut out = QtPolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

/// Dense univariate polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `q^e`.
    pub fn power(e: usize) -> Self {
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![BigInt::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in rhs.coeffs.iter().enumerate() {
            c[i] += x;
        }
        QPolynomial::new(c)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return QPolynomial::default();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        QPolynomial::new(c)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&QtPolynomial::from_q(self).to_latex())
    }
}
