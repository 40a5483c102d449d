//! Exact ranks. Over `Q` the engine uses fraction-free (Bareiss)
//! elimination on big integers; over `F_p` plain elimination mod `p`.
//! The [`Arith`] implementations are the field arithmetic shared with the
//! oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monomial::Field;

/// Field arithmetic over a runtime-chosen field.
pub trait Arith {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn embed(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RationalArith;

impl Arith for RationalArith {
    type Elem = BigRational;
    fn embed(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeArith {
    pub p: u64,
}

impl Arith for PrimeArith {
    type Elem = u64;
    fn embed(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2).
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

/// Rank of an integer matrix (given by rows) over `field`.
pub fn rank(rows: &[Vec<i64>], field: Field) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match field {
        Field::Rational => bareiss_rank(rows),
        Field::Prime(p) => modular_rank(rows, u64::from(p)),
    }
}

/// Nullity `cols − rank`.
pub fn nullity(rows: &[Vec<i64>], cols: usize, field: Field) -> usize {
    cols - rank(rows, field)
}

fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let (nrows, ncols) = (m.len(), m[0].len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = (&m[r][col] * &m[i][j] - &m[i][col] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
    }
    r
}

fn modular_rank(rows: &[Vec<i64>], p: u64) -> usize {
    let f = PrimeArith { p };
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&v| f.embed(v)).collect()).collect();
    let (nrows, ncols) = (m.len(), m[0].len());
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = f.inv(&m[r][col]);
        for i in r + 1..nrows {
            if m[i][col] == 0 {
                continue;
            }
            let factor = f.mul(&m[i][col], &inv);
            let (top, rest) = m.split_at_mut(i);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[r][col..]) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]];
        assert_eq!(rank(&m, Field::Rational), 2);
        // Boundary of a triangle: rank 2 over any field.
        let d = vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]];
        assert_eq!(rank(&d, Field::Prime(2)), 2);
        // det = 2: full rank over Q, rank 2 mod 2.
        let t = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(&t, Field::Rational), 3);
        assert_eq!(rank(&t, Field::Prime(2)), 2);
        assert_eq!(rank(&[], Field::Rational), 0);
    }

    #[test]
    fn inverse_mod_p() {
        let f = PrimeArith { p: 7 };
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }
}
