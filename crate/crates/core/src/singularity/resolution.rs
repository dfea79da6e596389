use alloc::vec;
use alloc::vec::Vec;

use super::SingularityError;
use crate::exactmath::{solve_definite, Rational, SolveMode, SolveOutcome, SymMatrix};

/// Exceptional configuration of a resolution of a surface singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionDatum {
    genera: Vec<u64>,
    intersection: SymMatrix,
    p_g: u64,
    rational: bool,
}

impl ResolutionDatum {
    /// Checks integrality, sign pattern and negative definiteness. `p_g` may
    /// be omitted only for rational singularities, where it is 0.
    pub fn new(
        genera: Vec<u64>,
        intersection: SymMatrix,
        p_g: Option<u64>,
        rational: bool,
    ) -> Result<Self, SingularityError> {
        let n = intersection.dim();
        if n == 0 {
            return Err(SingularityError::BadDatum("no exceptional curves"));
        }
        if genera.len() != n {
            return Err(SingularityError::BadDatum("one genus per curve is required"));
        }
        for i in 0..n {
            for j in 0..n {
                let x = intersection.get(i, j);
                if !x.is_integer() {
                    return Err(SingularityError::BadDatum("intersection numbers must be integers"));
                }
                if i == j && *x > Rational::from(-1) {
                    return Err(SingularityError::BadDatum("self-intersections must be <= -1"));
                }
                if i != j && x.is_negative() {
                    return Err(SingularityError::BadDatum("distinct curves meet non-negatively"));
                }
            }
        }
        let p_g = match (p_g, rational) {
            (Some(0) | None, true) => 0,
            (Some(v), true) => return Err(SingularityError::RationalWithPg(v)),
            (Some(v), false) => v,
            (None, false) => return Err(SingularityError::MissingPg),
        };
        if !intersection.is_negative_definite() {
            return Err(SingularityError::NotNegativeDefinite);
        }
        Ok(ResolutionDatum {
            genera,
            intersection,
            p_g,
            rational,
        })
    }

    /// A chain of smooth rational curves with the given self-intersections;
    /// rational with `p_g = 0`.
    pub fn rational_chain(self_intersections: &[i64]) -> Result<Self, SingularityError> {
        let n = self_intersections.len();
        let mut m = SymMatrix::zeros(n);
        for (i, &s) in self_intersections.iter().enumerate() {
            m.set(i, i, Rational::from(s));
            if i + 1 < n {
                m.set(i, i + 1, Rational::one());
            }
        }
        ResolutionDatum::new(vec![0; n], m, None, true)
    }

    pub fn curve_count(&self) -> usize {
        self.genera.len()
    }

    pub fn genera(&self) -> &[u64] {
        &self.genera
    }

    pub fn intersection(&self) -> &SymMatrix {
        &self.intersection
    }

    pub fn p_g(&self) -> u64 {
        self.p_g
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    fn meet(&self, i: usize, j: usize) -> i64 {
        self.intersection.get(i, j).to_i64().expect("integral entry")
    }

    /// Number of intersection points between distinct curves.
    pub fn edge_count(&self) -> i64 {
        let n = self.curve_count();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| self.meet(i, j))
            .sum()
    }

    fn pieces(&self) -> i64 {
        let n = self.curve_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                for (j, done) in seen.iter_mut().enumerate() {
                    if !*done && i != j && self.meet(i, j) > 0 {
                        *done = true;
                        stack.push(j);
                    }
                }
            }
        }
        count
    }

    /// First Betti number of the dual graph of the exceptional locus.
    pub fn b1(&self) -> i64 {
        self.edge_count() - self.curve_count() as i64 + self.pieces()
    }

    /// Blow up a point of curve `i` lying on no other curve.
    pub fn blow_up_point(&self, i: usize) -> Self {
        self.blow_up(i, None)
    }

    /// Blow up one intersection point of curves `i` and `j`. Returns `None`
    /// when they do not meet.
    pub fn blow_up_intersection(&self, i: usize, j: usize) -> Option<Self> {
        if i == j || self.meet(i, j) == 0 {
            return None;
        }
        Some(self.blow_up(i, Some(j)))
    }

    fn blow_up(&self, i: usize, j: Option<usize>) -> Self {
        let n = self.curve_count();
        let mut m = SymMatrix::zeros(n + 1);
        for a in 0..n {
            for b in a..n {
                m.set(a, b, self.intersection.get(a, b).clone());
            }
        }
        m.set(n, n, Rational::from(-1));
        for k in core::iter::once(i).chain(j) {
            m.set(k, k, self.intersection.get(k, k) - 1);
            m.set(k, n, Rational::one());
        }
        if let Some(j) = j {
            m.set(i, j, self.intersection.get(i, j) - 1);
        }
        let mut genera = self.genera.clone();
        genera.push(0);
        ResolutionDatum {
            genera,
            intersection: m,
            p_g: self.p_g,
            rational: self.rational,
        }
    }
}

/// Discrepancy divisor `Gamma = sum k_i E_i` and its square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub coeffs: Vec<Rational>,
    pub gamma_sq: Rational,
}

/// Solves `M k = b` with `b_i = 2 g_i - 2 - E_i^2`.
pub fn discrepancy_solve(datum: &ResolutionDatum) -> Result<Discrepancy, SingularityError> {
    let m = &datum.intersection;
    let rhs: Vec<Rational> = (0..datum.curve_count())
        .map(|i| Rational::from(2 * datum.genera[i] as i64 - 2) - m.get(i, i))
        .collect();
    let coeffs = match solve_definite(m, &rhs, SolveMode::NegativeDefinite) {
        Ok(SolveOutcome::Solution(x)) => x,
        Ok(SolveOutcome::RankCheck(_)) => unreachable!("definite mode"),
        Err(crate::exactmath::MathError::SingularMatrix) => {
            return Err(SingularityError::NotNegativeDefinite)
        }
        Err(e) => return Err(e.into()),
    };
    let gamma_sq: Rational = coeffs.iter().zip(&rhs).map(|(k, b)| k * b).sum();
    debug_assert_eq!(m.bilinear(&coeffs, &coeffs).as_ref(), Ok(&gamma_sq));
    Ok(Discrepancy { coeffs, gamma_sq })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorNu {
    pub mu: Rational,
    pub nu: Rational,
}

/// `nu = Gamma^2 - sum 2 g_i - b_1 + V` and `mu = 12 p_g + nu`.
pub fn milnor_nu(datum: &ResolutionDatum) -> Result<MilnorNu, SingularityError> {
    let d = discrepancy_solve(datum)?;
    let genus_sum: i64 = datum.genera.iter().map(|&g| g as i64).sum();
    let v = datum.curve_count() as i64;
    let b1 = datum.b1();
    let nu = &d.gamma_sq - 2 * genus_sum - b1 + v;
    let mu = &nu + 12 * datum.p_g as i64;
    if datum.rational && genus_sum == 0 && b1 == 0 {
        let simple = &d.gamma_sq + v;
        assert!(mu == simple && nu == simple, "rational case must reduce to Gamma^2 + V");
    }
    Ok(MilnorNu { mu, nu })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn a1_is_crepant() {
        let d = discrepancy_solve(&ResolutionDatum::rational_chain(&[-2]).unwrap()).unwrap();
        assert_eq!(d.coeffs, vec![q(0, 1)]);
        assert_eq!(d.gamma_sq, q(0, 1));
    }

    #[test]
    fn single_minus_three() {
        let r = ResolutionDatum::rational_chain(&[-3]).unwrap();
        let d = discrepancy_solve(&r).unwrap();
        assert_eq!(d.coeffs, vec![q(-1, 3)]);
        assert_eq!(d.gamma_sq, q(-1, 3));
        assert_eq!(milnor_nu(&r).unwrap().mu, q(2, 3));
    }

    #[test]
    fn chain_three_two() {
        let r = ResolutionDatum::rational_chain(&[-3, -2]).unwrap();
        let d = discrepancy_solve(&r).unwrap();
        assert_eq!(d.coeffs, vec![q(-2, 5), q(-1, 5)]);
        assert_eq!(d.gamma_sq, q(-2, 5));
        assert_eq!(milnor_nu(&r).unwrap().mu, q(8, 5));
    }

    #[test]
    fn a_n_chains() {
        for n in 1..12 {
            let r = ResolutionDatum::rational_chain(&vec![-2; n]).unwrap();
            let m = milnor_nu(&r).unwrap();
            assert_eq!(m.mu, Rational::from(n as i64));
            assert_eq!(m.nu, m.mu);
        }
    }

    #[test]
    fn elliptic_curve_with_pg() {
        // simple elliptic singularity: one genus-1 curve of self-intersection -1
        let m = SymMatrix::from_i64_rows(&[&[-1]]).unwrap();
        let r = ResolutionDatum::new(vec![1], m, Some(1), false).unwrap();
        let d = discrepancy_solve(&r).unwrap();
        // -k = 0 + 1
        assert_eq!(d.coeffs, vec![q(-1, 1)]);
        let mn = milnor_nu(&r).unwrap();
        // Gamma^2 = -1, nu = -1 - 2 - 0 + 1
        assert_eq!(mn.nu, q(-2, 1));
        assert_eq!(mn.mu, q(10, 1));
    }

    #[test]
    fn datum_validation() {
        let m = SymMatrix::from_i64_rows(&[&[-1]]).unwrap();
        assert_eq!(
            ResolutionDatum::new(vec![0], m.clone(), None, false),
            Err(SingularityError::MissingPg)
        );
        assert_eq!(
            ResolutionDatum::new(vec![0], m.clone(), Some(2), true),
            Err(SingularityError::RationalWithPg(2))
        );
        assert!(matches!(
            ResolutionDatum::new(vec![0, 0], m, None, true),
            Err(SingularityError::BadDatum(_))
        ));
        let m = SymMatrix::from_i64_rows(&[&[-2, 2], &[2, -2]]).unwrap();
        assert_eq!(
            ResolutionDatum::new(vec![0, 0], m, None, true),
            Err(SingularityError::NotNegativeDefinite)
        );
        let m = SymMatrix::from_i64_rows(&[&[0]]).unwrap();
        assert!(ResolutionDatum::new(vec![0], m, None, true).is_err());
    }

    #[test]
    fn blowups_keep_milnor_number() {
        let r = ResolutionDatum::rational_chain(&[-3, -2, -4]).unwrap();
        let base = milnor_nu(&r).unwrap();
        let a = r.blow_up_point(1);
        let b = r.blow_up_intersection(0, 1).unwrap();
        assert!(r.blow_up_intersection(0, 2).is_none());
        for x in [a, b] {
            assert!(x.intersection().is_negative_definite());
            assert_eq!(x.b1(), 0);
            assert_eq!(milnor_nu(&x).unwrap(), base);
        }
    }

    #[test]
    fn cycle_has_betti_one() {
        let m = SymMatrix::from_i64_rows(&[&[-3, 1, 1], &[1, -3, 1], &[1, 1, -3]]).unwrap();
        let r = ResolutionDatum::new(vec![0, 0, 0], m, Some(1), false).unwrap();
        assert_eq!(r.b1(), 1);
        assert_eq!(r.edge_count(), 3);
    }
}
