//! Gaussian binomials, q-multinomials and the hexagon shuffle generating function.

use crate::combinat::multiset_permutations;
use crate::error::{Error, Result};
use crate::schroder::Letter;

use super::QPolynomial;

/// `[m choose k]_q` from `[m,k] = [m-1,k-1] + q^k [m-1,k]`.
pub fn q_binomial(m: usize, k: usize) -> Result<QPolynomial> {
    if k > m {
        return Err(Error::OutOfRange(format!("q_binomial({m}, {k})")));
    }
    let mut row: Vec<QPolynomial> = vec![QPolynomial::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(mm + 1);
        for kk in 0..=mm {
            let left = if kk > 0 {
                row[kk - 1].clone()
            } else {
                QPolynomial::default()
            };
            let right = if kk < mm {
                &QPolynomial::power(kk) * &row[kk]
            } else {
                QPolynomial::default()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// `[a+b+c; a, b, c]_q = [a+b+c choose a]_q [b+c choose b]_q`.
pub fn q_multinomial(a: usize, b: usize, c: usize) -> QPolynomial {
    let x = q_binomial(a + b + c, a).expect("a <= a+b+c");
    let y = q_binomial(b + c, b).expect("b <= b+c");
    &x * &y
}

/// Pairs out of order under `D < H < U`.
pub fn inversions(w: &[Letter]) -> usize {
    let rank = |l: Letter| match l {
        Letter::D => 0,
        Letter::H => 1,
        Letter::U => 2,
    };
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if rank(w[i]) > rank(w[j]) {
                count += 1;
            }
        }
    }
    count
}

/// Lower triangles between `w` and the lowest shuffle `D^a H^b U^c`, where
/// `a, b, c` are the letter counts of `w`.
pub fn hexagon_area(w: &[Letter]) -> usize {
    let width = w.iter().filter(|&&l| l != Letter::U).count() as i64;
    let right_of = |letters: &mut dyn Iterator<Item = Letter>| -> i64 {
        let mut x = 0i64;
        let mut total = 0i64;
        for l in letters {
            if l != Letter::D {
                total += width - x;
            }
            if l != Letter::U {
                x += 1;
            }
        }
        total
    };
    let mut sorted: Vec<Letter> = w.to_vec();
    sorted.sort_by_key(|&l| match l {
        Letter::D => 0,
        Letter::H => 1,
        Letter::U => 2,
    });
    (right_of(&mut w.iter().copied()) - right_of(&mut sorted.into_iter())) as usize
}

/// `sum over shuffles of D^a, H^b, U^c of q^{hexagon_area}`.
pub fn hexagon_shuffle_gf(a: usize, b: usize, c: usize) -> QPolynomial {
    let words = multiset_permutations(&[(Letter::D, a), (Letter::H, b), (Letter::U, c)]);
    let mut counts = vec![0i64; a * b + b * c + a * c + 1];
    for w in &words {
        counts[hexagon_area(w)] += 1;
    }
    QPolynomial::from_i64(&counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(
            q_binomial(4, 2).unwrap(),
            QPolynomial::from_i64(&[1, 1, 2, 1, 1])
        );
        assert_eq!(q_binomial(7, 0).unwrap(), QPolynomial::one());
        assert_eq!(q_binomial(0, 0).unwrap(), QPolynomial::one());
        assert!(q_binomial(2, 3).is_err());
        assert_eq!(q_binomial(9, 4).unwrap().eval_one(), 126.into());
    }

    #[test]
    fn multinomial_oracle_by_inversions() {
        let words = multiset_permutations(&[(Letter::D, 1), (Letter::H, 1), (Letter::U, 1)]);
        assert_eq!(words.len(), 6);
        let mut counts = vec![0i64; 4];
        for w in &words {
            counts[inversions(w)] += 1;
        }
        assert_eq!(QPolynomial::from_i64(&counts), q_multinomial(1, 1, 1));
        assert_eq!(q_multinomial(1, 1, 1), QPolynomial::from_i64(&[1, 2, 2, 1]));
    }

    #[test]
    fn hexagon_small() {
        assert_eq!(
            hexagon_shuffle_gf(1, 1, 1),
            QPolynomial::from_i64(&[1, 2, 2, 1])
        );
        assert_eq!(hexagon_shuffle_gf(3, 0, 0), QPolynomial::one());
        assert_eq!(hexagon_shuffle_gf(2, 1, 1), q_multinomial(2, 1, 1));
        let words = multiset_permutations(&[(Letter::D, 2), (Letter::H, 1), (Letter::U, 1)]);
        assert_eq!(words.len(), 12);
        for w in &words {
            assert_eq!(hexagon_area(w), inversions(w));
        }
    }
}
