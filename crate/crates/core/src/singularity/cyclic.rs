use alloc::vec::Vec;

use num_integer::Integer;

use super::resolution::{milnor_nu, ResolutionDatum};
use super::SingularityError;
use crate::exactmath::{hj_eval, hj_expand, HJExpansion, Rational};

/// Tame cyclic quotient singularity `(e, r)`: `Z/e` acting with weights
/// `(1, r)`, resolved by the Hirzebruch-Jung chain of `e/r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicSingularity {
    e: u64,
    r: u64,
}

impl CyclicSingularity {
    pub fn new(e: u64, r: u64) -> Result<Self, SingularityError> {
        if e < 2 || r == 0 || r >= e || e.gcd(&r) != 1 {
            return Err(SingularityError::BadResidues { p: e });
        }
        Ok(CyclicSingularity { e, r })
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn expansion(&self) -> HJExpansion {
        hj_expand(self.e, self.r).expect("validated residues")
    }

    /// `(e, r')` with `r r' = 1 mod e`, whose chain is the reverse of this one.
    pub fn dual(&self) -> Self {
        let r = crate::exactmath::inverse_mod(self.r, self.e).expect("coprime");
        CyclicSingularity { e: self.e, r }
    }
}

/// Initial values of the recursion `P_{i+1} = a_i P_i - P_{i-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PConvention {
    /// `P_0 = P_1 = 1`. Disagrees with the solver on most chains.
    Shifted,
    /// `P_0 = 0, P_1 = 1`. Agrees with the adjunction solver.
    #[default]
    Standard,
}

/// `P_0, ..., P_l` for the chain `terms = [a_1, ..., a_l]`.
pub fn p_sequence(terms: &[u64], convention: PConvention) -> Vec<i64> {
    let p0 = match convention {
        PConvention::Shifted => 1,
        PConvention::Standard => 0,
    };
    let mut p = Vec::with_capacity(terms.len() + 1);
    p.push(p0);
    p.push(1);
    for i in 1..terms.len() {
        let next = terms[i - 1] as i64 * p[i] - p[i - 1];
        p.push(next);
    }
    p.truncate(terms.len() + 1);
    p
}

/// Discrepancy coefficients `k_i = (P_i + r_i)/e - 1` of `E_1, ..., E_l`.
pub fn closed_form_discrepancy(sing: &CyclicSingularity, convention: PConvention) -> Vec<Rational> {
    let hj = sing.expansion();
    let p = p_sequence(&hj.terms, convention);
    (1..=hj.terms.len())
        .map(|i| Rational::new(p[i] + hj.remainders[i] as i64, sing.e as i64) - 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameCyclic {
    pub chain: ResolutionDatum,
    pub mu_closed: Rational,
    pub mu_tilde: Rational,
    pub mu_solver: Rational,
}

/// Closed-form Milnor number
/// `3l - ([a_1..a_l]^{-1} + sum a_i + [a_l..a_1]^{-1}) + 2(1 - 1/e)`,
/// checked against the adjunction solver on the resolution chain.
pub fn tame_cyclic(sing: &CyclicSingularity) -> Result<TameCyclic, SingularityError> {
    let hj = sing.expansion();
    let forward = hj_eval(&hj.terms)?.recip().expect("e/r is non-zero");
    let backward = hj_eval(&hj.reversed_terms())?.recip().expect("e/r' is non-zero");
    let sum_a: i64 = hj.terms.iter().map(|&a| a as i64).sum();
    let mu_tilde = Rational::from(3 * hj.len() as i64) - (forward + sum_a + backward);
    let mu_closed = &mu_tilde + (Rational::one() - Rational::new(1, sing.e as i64)) * 2;

    let self_int: Vec<i64> = hj.terms.iter().map(|&a| -(a as i64)).collect();
    let chain = ResolutionDatum::rational_chain(&self_int)?;
    let mu_solver = milnor_nu(&chain)?.mu;
    assert_eq!(mu_closed, mu_solver, "closed form disagrees with the solver for {:?}", sing);
    Ok(TameCyclic {
        chain,
        mu_closed,
        mu_tilde,
        mu_solver,
    })
}
