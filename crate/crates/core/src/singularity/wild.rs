use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::cyclic::{p_sequence, PConvention};
use super::resolution::{discrepancy_solve, milnor_nu, ResolutionDatum};
use super::SingularityError;
use crate::exactmath::{hj_expand, HJExpansion, Rational, SymMatrix};
use crate::ramification::is_prime;

/// Quotient singularity of a weakly ramified wild extension with
/// ramification index `e_p` and Swan conductor `sw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeakWildSingularity {
    e_p: u64,
    sw: u64,
    p: u64,
}

impl WeakWildSingularity {
    pub fn new(e_p: u64, sw: u64) -> Result<Self, SingularityError> {
        let p = (2..=e_p)
            .find(|d| e_p.is_multiple_of(*d))
            .ok_or(SingularityError::NotPrimePower(e_p))?;
        let mut m = e_p;
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m != 1 {
            return Err(SingularityError::NotPrimePower(e_p));
        }
        Ok(WeakWildSingularity { e_p, sw, p })
    }

    pub fn e_p(&self) -> u64 {
        self.e_p
    }

    pub fn sw(&self) -> u64 {
        self.sw
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// `4(1 - 1/e_P + sw/e_P)`.
pub fn weak_wild_milnor(sing: &WeakWildSingularity) -> Rational {
    Rational::new(4 * (sing.e_p - 1 + sing.sw) as i64, sing.e_p as i64)
}

/// Discrepancy data of the `Z/p` chart with jump parameter `s`. The shape is
/// a node `E_0 = D_1` carrying three arms: the `(-2)`-chain `D_2, ..., D_alpha`
/// and the Hirzebruch-Jung chains of `p/r_1` and `p/r_{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCyclicWildChart {
    pub p: u64,
    pub s: u64,
    pub alpha: u64,
    pub lambda: i64,
    pub r1: u64,
    pub r_minus1: u64,
    pub convention: PConvention,
    pub arm_plus: HJExpansion,
    pub arm_minus: HJExpansion,
    /// Coefficient of `E_0`.
    pub k0: Rational,
    /// Coefficients of `D_2, ..., D_alpha`.
    pub y: Vec<Rational>,
    /// Coefficients along the `p/r_1` arm, starting next to the node.
    pub k_plus: Vec<Rational>,
    pub k_minus: Vec<Rational>,
    /// `4 s (1 - 1/p)`.
    pub mu_target: Rational,
}

fn arm_coeffs(p: u64, lambda: i64, hj: &HJExpansion, convention: PConvention) -> Vec<Rational> {
    let pp = p_sequence(&hj.terms, convention);
    let p2 = (p * p) as i64;
    (1..=hj.len())
        .map(|i| Rational::new(p as i64 * pp[i] + lambda * hj.remainders[i] as i64, p2) - 1)
        .collect()
}

pub fn p_cyclic_wild_chart(
    p: u64,
    s: u64,
    r1: u64,
    r_minus1: u64,
    convention: PConvention,
) -> Result<PCyclicWildChart, SingularityError> {
    if !is_prime(p) {
        return Err(SingularityError::NotPrime(p));
    }
    if s == 0 {
        return Err(SingularityError::BadDatum("s must be positive"));
    }
    for r in [r1, r_minus1] {
        if r == 0 || r >= p || r.gcd(&p) != 1 {
            return Err(SingularityError::BadResidues { p });
        }
    }
    let alpha = p * s;
    let lambda = p as i64 * (1 - alpha as i64) + 2 * alpha as i64;
    let arm_plus = hj_expand(p, r1)?;
    let arm_minus = hj_expand(p, r_minus1)?;
    // x_0 = (p P_0 + lambda r_0)/p^2 with r_0 = p
    let p0 = p_sequence(&arm_plus.terms, convention)[0];
    let k0 = Rational::new(p as i64 * p0 + lambda * p as i64, (p * p) as i64) - 1;
    let y = (2..=alpha)
        .map(|j| Rational::new((alpha - j + 1) as i64, alpha as i64) * &k0)
        .collect();
    let k_plus = arm_coeffs(p, lambda, &arm_plus, convention);
    let k_minus = arm_coeffs(p, lambda, &arm_minus, convention);
    Ok(PCyclicWildChart {
        p,
        s,
        alpha,
        lambda,
        r1,
        r_minus1,
        convention,
        arm_plus,
        arm_minus,
        k0,
        y,
        k_plus,
        k_minus,
        mu_target: Rational::new(4 * (s * (p - 1)) as i64, p as i64),
    })
}

impl PCyclicWildChart {
    /// Coefficients in the order `E_0, D_2..D_alpha`, plus arm, minus arm.
    pub fn gamma_coeffs(&self) -> Vec<Rational> {
        let mut out = vec![self.k0.clone()];
        out.extend(self.y.iter().cloned());
        out.extend(self.k_plus.iter().cloned());
        out.extend(self.k_minus.iter().cloned());
        out
    }

    /// The three-arm configuration with `E_0^2 = -node_self_intersection`,
    /// curves ordered as in [`Self::gamma_coeffs`]. The chart does not
    /// determine `E_0^2`; the caller supplies it.
    pub fn resolution_datum(&self, node_self_intersection: u64) -> Result<ResolutionDatum, SingularityError> {
        let d_len = (self.alpha - 1) as usize;
        let n = 1 + d_len + self.arm_plus.len() + self.arm_minus.len();
        let mut m = SymMatrix::zeros(n);
        m.set(0, 0, Rational::from(-(node_self_intersection as i64)));
        let mut idx = 1;
        let mut prev = 0;
        for _ in 0..d_len {
            m.set(idx, idx, Rational::from(-2));
            m.set(prev, idx, Rational::one());
            prev = idx;
            idx += 1;
        }
        for arm in [&self.arm_plus, &self.arm_minus] {
            prev = 0;
            for &a in &arm.terms {
                m.set(idx, idx, Rational::from(-(a as i64)));
                m.set(prev, idx, Rational::one());
                prev = idx;
                idx += 1;
            }
        }
        ResolutionDatum::new(vec![0; n], m, None, true)
    }

    /// Compares the chart against the adjunction solver for a given node.
    /// `None` when that configuration is not negative definite.
    pub fn check(&self, node_self_intersection: u64) -> Result<Option<ChartCandidate>, SingularityError> {
        let datum = match self.resolution_datum(node_self_intersection) {
            Ok(d) => d,
            Err(SingularityError::NotNegativeDefinite) => return Ok(None),
            Err(e) => return Err(e),
        };
        let solved = discrepancy_solve(&datum)?;
        let mu_solver = milnor_nu(&datum)?.mu;
        Ok(Some(ChartCandidate {
            r1: self.r1,
            r_minus1: self.r_minus1,
            node_self_intersection,
            coeffs_match: solved.coeffs == self.gamma_coeffs(),
            mu_matches_target: mu_solver == self.mu_target,
            mu_solver,
        }))
    }
}

/// One configuration tried by [`discover_wild_charts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartCandidate {
    pub r1: u64,
    pub r_minus1: u64,
    /// `-E_0^2`.
    pub node_self_intersection: u64,
    /// Solver coefficients equal the chart's `k_i, y_j`.
    pub coeffs_match: bool,
    pub mu_solver: Rational,
    pub mu_matches_target: bool,
}

/// Tries every residue pair and every `-E_0^2` in `1..=max_node`, keeping the
/// negative definite configurations. This is a search, not a claim about
/// which pair the chart is meant to use.
pub fn discover_wild_charts(
    p: u64,
    s: u64,
    max_node: u64,
    convention: PConvention,
) -> Result<Vec<ChartCandidate>, SingularityError> {
    let mut out = Vec::new();
    for r1 in 1..p {
        for rm in 1..p {
            let chart = p_cyclic_wild_chart(p, s, r1, rm, convention)?;
            for b in 1..=max_node {
                if let Some(c) = chart.check(b)? {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}
