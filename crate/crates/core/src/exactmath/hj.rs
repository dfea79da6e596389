use alloc::vec::Vec;

use num_integer::Integer;

use super::{MathError, Rational};

/// Jung-Hirzebruch expansion `e/r = a_1 - 1/(a_2 - 1/(... - 1/a_l))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJExpansion {
    pub e: u64,
    pub r: u64,
    /// `a_1, ..., a_l`, each at least 2.
    pub terms: Vec<u64>,
    /// `r_0 = e > r_1 = r > ... > r_l = 1`, with `r_{i+1} = a_i r_i - r_{i-1}`.
    pub remainders: Vec<u64>,
}

impl HJExpansion {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reversed_terms(&self) -> Vec<u64> {
        self.terms.iter().rev().copied().collect()
    }
}

pub fn hj_expand(e: u64, r: u64) -> Result<HJExpansion, MathError> {
    if e < 2 {
        return Err(MathError::Precondition("e must be at least 2"));
    }
    if r == 0 || r >= e {
        return Err(MathError::Precondition("r must satisfy 0 < r < e"));
    }
    if e.gcd(&r) != 1 {
        return Err(MathError::Precondition("e and r must be coprime"));
    }

    let mut terms = Vec::new();
    let mut remainders = alloc::vec![e, r];
    let (mut prev, mut cur) = (e, r);
    while cur > 0 {
        let a = prev.div_ceil(cur);
        let next = a * cur - prev;
        terms.push(a);
        if next > 0 {
            remainders.push(next);
        }
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(remainders.len(), terms.len() + 1);
    debug_assert_eq!(remainders.last(), Some(&1));
    Ok(HJExpansion {
        e,
        r,
        terms,
        remainders,
    })
}

/// Value of the descending continued fraction `[a_1, ..., a_l]`.
pub fn hj_eval(terms: &[u64]) -> Result<Rational, MathError> {
    let (last, rest) = terms.split_last().ok_or(MathError::EmptyExpansion)?;
    if terms.iter().any(|&a| a < 2) {
        return Err(MathError::Precondition("every term must be at least 2"));
    }
    let mut acc = Rational::from(*last);
    for &a in rest.iter().rev() {
        // acc >= 1 for terms >= 2, so the reciprocal exists
        acc = Rational::from(a) - acc.recip().expect("nonzero tail");
    }
    Ok(acc)
}

/// Inverse of `r` modulo `e`, in `1..e`, if it exists.
pub fn inverse_mod(r: u64, e: u64) -> Option<u64> {
    let ext = (r as i128).extended_gcd(&(e as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(e as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn known_expansions() {
        assert_eq!(hj_expand(6, 1).unwrap().terms, vec![6]);
        assert_eq!(hj_expand(3, 2).unwrap().terms, vec![2, 2]);
        assert_eq!(hj_expand(7, 3).unwrap().terms, vec![3, 2, 2]);
        assert_eq!(hj_expand(7, 3).unwrap().remainders, vec![7, 3, 2, 1]);
        assert_eq!(hj_expand(5, 2).unwrap().remainders, vec![5, 2, 1]);
    }

    #[test]
    fn eval() {
        assert_eq!(hj_eval(&[6]).unwrap(), Rational::from(6));
        assert_eq!(hj_eval(&[2, 2]).unwrap(), Rational::new(3, 2));
        assert_eq!(hj_eval(&[3, 2]).unwrap(), Rational::new(5, 2));
        assert_eq!(hj_eval(&[3, 2, 2]).unwrap(), Rational::new(7, 3));
        assert_eq!(hj_eval(&[]), Err(MathError::EmptyExpansion));
        assert!(hj_eval(&[3, 1]).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hj_expand(6, 2).is_err());
        assert!(hj_expand(6, 6).is_err());
        assert!(hj_expand(6, 0).is_err());
        assert!(hj_expand(1, 1).is_err());
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(2, 4), None);
        assert_eq!(inverse_mod(1, 2), Some(1));
    }
}
