//! The five computations of the q,t-Schröder polynomial and the extremal
//! words of ITC fibers.

use num_bigint::BigInt;
use num_traits::One;

use crate::asm::{
    enumerate_sorted_recurrent_with, Configuration, EnumerationBackend, SplitGraphShape,
};
use crate::combinat::{compositions, multiset_permutations};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::schroder::{
    area, enumerate_schroder_words, mirror_schroder, phi_inv, schroder_bounce, Letter,
    SchroderWord, Word,
};
use crate::toppling::{enumerate_itc_sequences, run_process, ItcSequence, Mode};

use super::{q_binomial, q_multinomial, QPolynomial, QtPolynomial};

fn accumulate(monomials: Vec<(u32, u32)>) -> QtPolynomial {
    let mut p = QtPolynomial::zero();
    for (a, b) in monomials {
        p.add_term(a, b, BigInt::one());
    }
    p
}

fn toppling_gf(shape: SplitGraphShape, mode: Mode, exec: Execution) -> Result<QtPolynomial> {
    let configs = enumerate_sorted_recurrent_with(shape, EnumerationBackend::DharFilter, exec);
    let shift = shape.vertex_count() as u64;
    let monos: Result<Vec<(u32, u32)>> = exec
        .map(&configs, |c| {
            let (trace, fin) = run_process(shape, c, mode);
            if fin != *c {
                return Err(Error::Internal(format!(
                    "{mode} process on {c} did not return"
                )));
            }
            let level = c.level(shape);
            let w = trace.wtopple();
            if level < 0 || w < shift {
                return Err(Error::Internal(format!("negative exponent for {c}")));
            }
            Ok((level as u32, (w - shift) as u32))
        })
        .into_iter()
        .collect();
    Ok(accumulate(monos?))
}

/// `sum over sorted recurrent c of q^level(c) t^(wtopple_CTI(c) - (n+d))`.
pub fn f_cti(n: usize, d: usize) -> Result<QtPolynomial> {
    f_cti_with(SplitGraphShape::new(n, d)?, Execution::default())
}

pub fn f_cti_with(shape: SplitGraphShape, exec: Execution) -> Result<QtPolynomial> {
    toppling_gf(shape, Mode::Cti, exec)
}

/// As [`f_cti`] with the ITC statistic.
pub fn f_itc(n: usize, d: usize) -> Result<QtPolynomial> {
    f_itc_with(SplitGraphShape::new(n, d)?, Execution::default())
}

pub fn f_itc_with(shape: SplitGraphShape, exec: Execution) -> Result<QtPolynomial> {
    toppling_gf(shape, Mode::Itc, exec)
}

/// `sum over Schröder words of q^area t^bounce`; `n = 0` gives `1`.
pub fn qt_schroder(n: usize, d: usize) -> Result<QtPolynomial> {
    qt_schroder_with(n, d, Execution::default())
}

pub fn qt_schroder_with(n: usize, d: usize, exec: Execution) -> Result<QtPolynomial> {
    let words = enumerate_schroder_words(n, d);
    let monos: Result<Vec<(u32, u32)>> = exec
        .map(&words, |w| Ok((area(w) as u32, schroder_bounce(w)? as u32)))
        .into_iter()
        .collect();
    Ok(accumulate(monos?))
}

/// One summand of the explicit double sum: `alpha` a composition of `n`
/// into `k` parts and `beta` a weak composition of `d` into `k + 1` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EggeTerm {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl EggeTerm {
    pub fn value(&self) -> QtPolynomial {
        let (al, be) = (&self.alpha, &self.beta);
        let k = al.len();
        let u = |x: u32| x as usize;
        let mut q = &q_binomial(u(be[0] + al[0]), u(be[0])).expect("in range")
            * &q_binomial(u(be[k] + al[k - 1] - 1), u(be[k])).expect("in range");
        for i in 1..k {
            q = &q * &q_multinomial(u(be[i]), u(al[i]), u(al[i - 1] - 1));
        }
        let qexp: u32 = al.iter().map(|&a| a * a.saturating_sub(1) / 2).sum();
        let texp: u32 = (0..=k).map(|i| i as u32 * be[i]).sum::<u32>()
            + (0..k).map(|i| i as u32 * al[i]).sum::<u32>();
        QtPolynomial::from_q(&q).shift(qexp, texp)
    }
}

/// All summands of the explicit double sum.
pub fn egge_terms(n: usize, d: usize) -> Vec<EggeTerm> {
    let mut out = Vec::new();
    for k in 1..=n {
        let alphas = compositions(n as u32, k, true);
        let betas = compositions(d as u32, k + 1, false);
        for alpha in &alphas {
            for beta in &betas {
                out.push(EggeTerm {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                });
            }
        }
    }
    out
}

/// The explicit double sum over compositions.
pub fn egge_sum(n: usize, d: usize) -> Result<QtPolynomial> {
    egge_sum_with(n, d, Execution::default())
}

pub fn egge_sum_with(n: usize, d: usize, exec: Execution) -> Result<QtPolynomial> {
    SplitGraphShape::new(n, d)?;
    let terms = egge_terms(n, d);
    Ok(exec.map_reduce(&terms, QtPolynomial::zero, EggeTerm::value, |a, b| a + b))
}

/// `prod_i q^C(a_i,2) [a_i+b_i+a_{i-1}-1; a_i, b_i, a_{i-1}-1]_q t^((i-1)(a_i+b_i))`, `a_0 = 1`.
pub fn itc_sum_term(seq: &ItcSequence) -> QtPolynomial {
    let mut q = QPolynomial::one();
    let mut qexp = 0u32;
    let mut texp = 0u32;
    for i in 1..=seq.len() {
        let (a, b, prev) = (seq.a_at(i), seq.b_at(i), seq.a_at(i - 1));
        q = &q * &q_multinomial(a as usize, b as usize, (prev - 1) as usize);
        qexp += a * a.saturating_sub(1) / 2;
        texp += (i as u32 - 1) * (a + b);
    }
    QtPolynomial::from_q(&q).shift(qexp, texp)
}

/// Sum of [`itc_sum_term`] over all ITC sequences. For `d = 0` the same
/// formula is used with every `b_i = 0`.
pub fn itc_sum(n: usize, d: usize) -> Result<QtPolynomial> {
    itc_sum_with(n, d, Execution::default())
}

pub fn itc_sum_with(n: usize, d: usize, exec: Execution) -> Result<QtPolynomial> {
    SplitGraphShape::new(n, d)?;
    let seqs = enumerate_itc_sequences(n, d);
    Ok(exec.map_reduce(&seqs, QtPolynomial::zero, itc_sum_term, |a, b| a + b))
}

fn push(out: &mut Vec<Letter>, l: Letter, k: u32) {
    out.extend(std::iter::repeat_n(l, k as usize));
}

/// The least and greatest words of the fiber of `seq` in region order:
///
/// `w_lower = mu(H^{b_1} U^{a_1} prod_{i>=2}(D^{a_{i-1}} H^{b_i} U^{a_i}) D^{a_k})` and
/// `w_upper = mu(U^{a_1} H^{b_1} prod_{i>=2}(D U^{a_i} H^{b_i} D^{a_{i-1}-1}) D^{a_k})`.
pub fn extremal_words(seq: &ItcSequence) -> Result<(SchroderWord, SchroderWord)> {
    let shape = seq.shape()?;
    if !seq.is_valid_for(shape.n, shape.d) {
        return Err(Error::InvalidSequence(seq.to_string()));
    }
    let k = seq.len();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    push(&mut lower, Letter::H, seq.b_at(1));
    push(&mut lower, Letter::U, seq.a_at(1));
    push(&mut upper, Letter::U, seq.a_at(1));
    push(&mut upper, Letter::H, seq.b_at(1));
    for i in 2..=k {
        push(&mut lower, Letter::D, seq.a_at(i - 1));
        push(&mut lower, Letter::H, seq.b_at(i));
        push(&mut lower, Letter::U, seq.a_at(i));
        upper.push(Letter::D);
        push(&mut upper, Letter::U, seq.a_at(i));
        push(&mut upper, Letter::H, seq.b_at(i));
        push(&mut upper, Letter::D, seq.a_at(i - 1) - 1);
    }
    push(&mut lower, Letter::D, seq.a_at(k));
    push(&mut upper, Letter::D, seq.a_at(k));
    let lower = SchroderWord::new(Word(lower))?;
    let upper = SchroderWord::new(Word(upper))?;
    Ok((mirror_schroder(&lower), mirror_schroder(&upper)))
}

/// Every word obtained from `w_lower` by rearranging each hexagon factor:
/// `mu(S(H^{b_1}, U^{a_1}) prod_{i>=2}(D S(D^{a_{i-1}-1}, H^{b_i}, U^{a_i})) D^{a_k})`,
/// where `S` ranges over shuffles. Sorted in word order.
pub fn hexagon_fiber(seq: &ItcSequence) -> Result<Vec<SchroderWord>> {
    let shape = seq.shape()?;
    if !seq.is_valid_for(shape.n, shape.d) {
        return Err(Error::InvalidSequence(seq.to_string()));
    }
    let k = seq.len();
    let mut prefixes: Vec<Vec<Letter>> = vec![Vec::new()];
    for i in 1..=k {
        let shuffles = multiset_permutations(&[
            (Letter::U, seq.a_at(i) as usize),
            (Letter::H, seq.b_at(i) as usize),
            (Letter::D, seq.a_at(i - 1) as usize - 1),
        ]);
        prefixes = prefixes
            .iter()
            .flat_map(|p| {
                shuffles.iter().map(move |sh| {
                    let mut w = p.clone();
                    if i > 1 {
                        w.push(Letter::D);
                    }
                    w.extend_from_slice(sh);
                    w
                })
            })
            .collect();
    }
    let mut out = prefixes
        .into_iter()
        .map(|mut w| {
            push(&mut w, Letter::D, seq.a_at(k));
            Ok(mirror_schroder(&SchroderWord::new(Word(w))?))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The words `mirror(phi_inv(c))` over a set of configurations.
pub fn fiber_words(configs: &[Configuration]) -> Result<Vec<SchroderWord>> {
    configs
        .iter()
        .map(|c| Ok(mirror_schroder(&phi_inv(c)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schroder::phi;
    use crate::toppling::lower_config_formula;

    fn qb(m: usize, k: usize) -> QtPolynomial {
        QtPolynomial::from_q(&q_binomial(m, k).unwrap())
    }

    fn seq(b: &[u32], a: &[u32]) -> ItcSequence {
        ItcSequence::new(b.to_vec(), a.to_vec())
    }

    #[test]
    fn itc_sum_table_terms() {
        let q = QtPolynomial::from_terms([(1, 0, 1)]);
        let t = |e: u32| QtPolynomial::from_terms([(0, e, 1)]);
        let qt = |a: u32, b: u32| QtPolynomial::from_terms([(a, b, 1)]);
        assert_eq!(itc_sum_term(&seq(&[2], &[2])), &q * &qb(4, 2));
        assert_eq!(itc_sum_term(&seq(&[2, 0], &[1, 1])), &t(1) * &qb(3, 1));
        assert_eq!(
            itc_sum_term(&seq(&[1, 1], &[2, 0])),
            &(&qt(1, 1) * &qb(2, 1)) * &qb(3, 1)
        );
        assert_eq!(
            itc_sum_term(&seq(&[1, 1], &[1, 1])),
            &(&t(2) * &qb(2, 1)) * &qb(2, 1)
        );
        assert_eq!(itc_sum_term(&seq(&[0, 2], &[2, 0])), &qt(1, 2) * &qb(3, 1));
        assert_eq!(itc_sum_term(&seq(&[0, 2], &[1, 1])), &t(3) * &qb(3, 1));
        assert_eq!(
            itc_sum_term(&seq(&[1, 0, 1], &[1, 1, 0])),
            &t(3) * &qb(2, 1)
        );
        assert_eq!(
            itc_sum_term(&seq(&[0, 1, 1], &[1, 1, 0])),
            &t(4) * &qb(2, 1)
        );
        assert_eq!(itc_sum_term(&seq(&[0, 0, 2], &[1, 1, 0])), t(5));
    }

    #[test]
    fn small_values() {
        assert_eq!(f_cti(1, 0).unwrap(), QtPolynomial::one());
        assert_eq!(f_itc(1, 0).unwrap(), QtPolynomial::one());
        assert_eq!(qt_schroder(0, 3).unwrap(), QtPolynomial::one());
        assert_eq!(
            qt_schroder(2, 0).unwrap(),
            QtPolynomial::from_terms([(1, 0, 1), (0, 1, 1)])
        );
        assert_eq!(egge_sum(1, 0).unwrap(), QtPolynomial::one());
        assert_eq!(egge_terms(2, 2).len(), 9);
        assert_eq!(f_itc(2, 2).unwrap().eval_one(), 30.into());
        let s = qt_schroder(2, 2).unwrap();
        assert_eq!(f_cti(2, 2).unwrap(), s);
        assert_eq!(f_itc(2, 2).unwrap(), s);
        assert_eq!(egge_sum(2, 2).unwrap(), s);
        assert_eq!(itc_sum(2, 2).unwrap(), s);
        assert_eq!(itc_sum(3, 0).unwrap(), qt_schroder(3, 0).unwrap());
    }

    #[test]
    fn extremal_examples() {
        let (lo, up) = extremal_words(&seq(&[2], &[2])).unwrap();
        assert_eq!(lo.to_string(), "UUDDHH");
        assert_eq!(up.to_string(), "UUHHDD");
        assert_eq!(phi(&mirror_schroder(&lo)), "1,1;2,2".parse().unwrap());
        assert_eq!(phi(&mirror_schroder(&up)), "3,3;2,2".parse().unwrap());
        let s = seq(&[0, 0, 2], &[1, 1, 0]);
        let (lo, _) = extremal_words(&s).unwrap();
        assert_eq!(
            phi(&mirror_schroder(&lo)),
            lower_config_formula(&s).unwrap()
        );
    }

    #[test]
    fn hexagon_fiber_example() {
        let f: Vec<String> = hexagon_fiber(&seq(&[1, 0], &[2, 1]))
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(
            f,
            ["UUDUHDD", "UUDUDHD", "UUDUDDH", "UDUUHDD", "UDUUDHD", "UDUUDDH"]
        );
        let (lo, up) = extremal_words(&seq(&[1, 0], &[2, 1])).unwrap();
        assert!(f.contains(&lo.to_string()) && f.contains(&up.to_string()));
    }
}
