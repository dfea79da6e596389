use core::str::FromStr;

use super::CoverError;
use crate::exactmath::Rational;

/// Which form of the base change formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaVariant {
    /// `-12c = (1/e)(Gamma^2 + 2 Gamma.omega - Art' + e Art)`
    One,
    /// `-12c = (2/e)(Gamma^2 + Gamma.omega - Art') + Art - nu`
    Two,
    /// `-12c = (2/e) Gamma.omega + Art - mu`
    Three,
}

impl TryFrom<u8> for FormulaVariant {
    type Error = CoverError;

    fn try_from(v: u8) -> Result<Self, CoverError> {
        match v {
            1 => Ok(FormulaVariant::One),
            2 => Ok(FormulaVariant::Two),
            3 => Ok(FormulaVariant::Three),
            _ => Err(CoverError::Invalid("variant must be 1, 2 or 3")),
        }
    }
}

impl FromStr for FormulaVariant {
    type Err = CoverError;

    fn from_str(s: &str) -> Result<Self, CoverError> {
        s.parse::<u8>()
            .map_err(|_| CoverError::Invalid("variant must be 1, 2 or 3"))?
            .try_into()
    }
}

/// Named inputs; each variant reads only the terms it needs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormulaTerms {
    pub e: Option<Rational>,
    pub gamma_sq: Option<Rational>,
    pub gamma_dot_omega: Option<Rational>,
    pub art_prime: Option<Rational>,
    pub art: Option<Rational>,
    pub mu: Option<Rational>,
    pub nu: Option<Rational>,
}

fn need<'a>(v: &'a Option<Rational>, name: &'static str) -> Result<&'a Rational, CoverError> {
    v.as_ref().ok_or(CoverError::MissingTerm(name))
}

/// Returns `c`.
pub fn bcc_formula_eval(variant: FormulaVariant, t: &FormulaTerms) -> Result<Rational, CoverError> {
    let e = need(&t.e, "e")?;
    let inv_e = e.recip().ok_or(CoverError::Invalid("e must be non-zero"))?;
    let art = need(&t.art, "art")?;
    let go = need(&t.gamma_dot_omega, "gamma_dot_omega")?;
    let minus_12c = match variant {
        FormulaVariant::One => {
            let g2 = need(&t.gamma_sq, "gamma_sq")?;
            let ap = need(&t.art_prime, "art_prime")?;
            inv_e * (g2 + go * 2 - ap + e * art)
        }
        FormulaVariant::Two => {
            let g2 = need(&t.gamma_sq, "gamma_sq")?;
            let ap = need(&t.art_prime, "art_prime")?;
            let nu = need(&t.nu, "nu")?;
            inv_e * 2 * (g2 + go - ap) + art - nu
        }
        FormulaVariant::Three => {
            let mu = need(&t.mu, "mu")?;
            inv_e * 2 * go + art - mu
        }
    };
    Ok(-minus_12c / 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Option<Rational> {
        Some(Rational::from(n))
    }

    #[test]
    fn iv_pipeline_terms() {
        for e in [1, 2, 6, 12] {
            let t = FormulaTerms {
                e: q(e),
                gamma_sq: q(0),
                gamma_dot_omega: q(0),
                art_prime: q(-e),
                art: q(-5),
                ..Default::default()
            };
            assert_eq!(bcc_formula_eval(FormulaVariant::One, &t), Ok(Rational::new(1, 3)));
        }
    }

    #[test]
    fn variant_three_weak_wild_vanishes() {
        // (2/e) Gamma.omega = mu = 4(1 - 1/e + sw/e) with e = 3, sw = 2
        let mu = Rational::new(16, 3);
        let t = FormulaTerms {
            e: q(3),
            gamma_dot_omega: Some(&mu * Rational::new(3, 2)),
            art: q(0),
            mu: Some(mu),
            ..Default::default()
        };
        assert_eq!(bcc_formula_eval(FormulaVariant::Three, &t), Ok(Rational::zero()));
        let zeros = FormulaTerms {
            e: q(1),
            gamma_dot_omega: q(0),
            art: q(0),
            mu: q(0),
            ..Default::default()
        };
        assert_eq!(bcc_formula_eval(FormulaVariant::Three, &zeros), Ok(Rational::zero()));
    }

    #[test]
    fn variant_two_and_missing() {
        let t = FormulaTerms {
            e: q(2),
            gamma_sq: q(-2),
            gamma_dot_omega: q(4),
            art_prime: q(-2),
            art: q(-3),
            nu: q(1),
            ..Default::default()
        };
        // (2/2)(-2 + 4 + 2) - 3 - 1 = 0
        assert_eq!(bcc_formula_eval(FormulaVariant::Two, &t), Ok(Rational::zero()));
        let mut partial = t.clone();
        partial.nu = None;
        assert_eq!(
            bcc_formula_eval(FormulaVariant::Two, &partial),
            Err(CoverError::MissingTerm("nu"))
        );
        assert_eq!(
            bcc_formula_eval(FormulaVariant::Three, &t),
            Err(CoverError::MissingTerm("mu"))
        );
        assert!("4".parse::<FormulaVariant>().is_err());
        assert_eq!("2".parse::<FormulaVariant>(), Ok(FormulaVariant::Two));
    }
}
