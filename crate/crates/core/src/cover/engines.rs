use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use super::data::{rh_validate, TameCoverData, WildCoverData};
use super::CoverError;
use crate::exactmath::Rational;
use crate::singularity::{tame_cyclic, weak_wild_milnor, WeakWildSingularity};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub value: Rational,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorReport {
    pub c_tame: Rational,
    pub c_wild: Rational,
    pub c_total: Rational,
    pub u: i64,
    pub terms: BTreeMap<String, Term>,
}

impl ConductorReport {
    fn new(c_tame: Rational, c_wild: Rational, u: i64) -> Result<Self, CoverError> {
        let c_total = &c_tame + &c_wild;
        if c_tame.is_negative() || c_wild.is_negative() {
            return Err(CoverError::NegativeConductor(c_total));
        }
        Ok(ConductorReport {
            c_tame,
            c_wild,
            c_total,
            u,
            terms: BTreeMap::new(),
        })
    }

    fn term(&mut self, name: &str, value: Rational, provenance: &str) {
        self.terms.insert(
            name.to_string(),
            Term {
                value,
                provenance: provenance.to_string(),
            },
        );
    }
}

fn unipotent_rank(g: u64, g_bar: u64) -> Result<i64, CoverError> {
    let u = g as i64 - g_bar as i64;
    if u < 0 {
        return Err(CoverError::NegativeUnipotentRank(u));
    }
    Ok(u)
}

const U_RULE: &str = "u = g - g_bar: abelian rank g_bar, toric rank 0 under potential good reduction";

/// `c = u/2 + (1/12) sum_Q (mu_Q - 2(1 - 1/e_Q))` for a tame cover whose
/// upstairs fiber is smooth.
pub fn bcc_tame_good(data: &TameCoverData) -> Result<ConductorReport, CoverError> {
    let diags = rh_validate(data);
    if !diags.is_empty() {
        return Err(CoverError::RhMismatch(diags));
    }
    let u = unipotent_rank(data.g(), data.g_bar())?;
    let mut mu_sum = Rational::zero();
    let mut mu_tilde_sum = Rational::zero();
    let mut correction = Rational::zero();
    for b in data.branch() {
        let t = tame_cyclic(&b.sing)?;
        let m = b.count as i64;
        let e_q = b.sing.e() as i64;
        mu_sum += &t.mu_closed * m;
        mu_tilde_sum += &t.mu_tilde * m;
        correction += (Rational::one() - Rational::new(1, e_q)) * (2 * m);
    }
    let half_u = Rational::new(u, 2);
    let c_mu = &half_u + (&mu_sum - &correction) / 12;
    let c_mu_tilde = &half_u + &mu_tilde_sum / 12;
    assert_eq!(c_mu, c_mu_tilde, "mu and mu-tilde forms disagree");

    // -12c = 2 chi (1 - 1/e) + (chi - chi_bar) - sum mu, with RH eliminating
    // the branch terms
    let e = data.e() as i64;
    let chi = Rational::from(2 - 2 * data.g() as i64);
    let chi_bar = Rational::from(2 - 2 * data.g_bar() as i64);
    let gamma_term = &chi * 2 * (Rational::one() - Rational::new(1, e));
    let art_term = &chi - &chi_bar;
    let assembled = -(&gamma_term + &art_term - &mu_sum) / 12;
    assert_eq!(assembled, c_mu, "assembly disagrees with the closed form");

    let mut rep = ConductorReport::new(c_mu.clone(), Rational::zero(), u)?;
    rep.term("u", Rational::from(u), U_RULE);
    rep.term("mu_sum", mu_sum, "sum of Milnor numbers of the quotient singularities");
    rep.term("mu_tilde_sum", mu_tilde_sum, "sum of mu_Q - 2(1 - 1/e_Q)");
    rep.term("gamma_term", gamma_term, "2 chi (1 - 1/e)");
    rep.term("artin_term", art_term, "chi - chi_bar");
    rep.term(
        "c_tame",
        c_mu,
        "u/2 + (1/12) sum (mu_Q - 2(1 - 1/e_Q)), equal to u/2 + (1/12) sum mu_tilde_Q",
    );
    Ok(rep)
}

/// `Sw(C) = 2 sum sw_Q / p^(r-i) - sw (chi_bar - 2 sum m_i (1 - 1/p^(r-i)))`.
pub fn swan_curve_keyiden(data: &WildCoverData) -> Result<Rational, CoverError> {
    let diags = rh_validate(data);
    if !diags.is_empty() {
        return Err(CoverError::RhMismatch(diags));
    }
    let sw = swan_curve_unchecked(data);
    if sw.is_negative() {
        return Err(CoverError::NegativeSwan(sw));
    }
    Ok(sw)
}

fn swan_curve_unchecked(data: &WildCoverData) -> Rational {
    let mut local = Rational::zero();
    let mut branch = Rational::zero();
    for b in data.branch() {
        let stab = data.stabilizer(b.i) as i64;
        let sw_q: u64 = b.sw_locals.iter().sum();
        local += Rational::new(sw_q as i64, stab);
        branch += (Rational::one() - Rational::new(1, stab)) * b.count as i64;
    }
    let bracket = Rational::from(data.chi_bar()) - branch * 2;
    local * 2 - bracket * data.sw_ext() as i64
}

/// `c_tame = u/2`, `c_wild = Sw(C)/4`, checked against the term-by-term
/// assembly of `-12c` from the discrepancy, Artin and Milnor contributions.
pub fn bcc_wild_weak(data: &WildCoverData) -> Result<ConductorReport, CoverError> {
    let swan = swan_curve_keyiden(data)?;
    let u = unipotent_rank(data.g(), data.g_bar())?;
    let c_tame = Rational::new(u, 2);
    let c_wild = &swan / 4;

    let e = data.degree() as i64;
    let chi = Rational::from(data.chi());
    let chi_bar = Rational::from(data.chi_bar());
    let sw = data.sw_ext() as i64;
    let gamma_term = &chi * 2 * (Rational::one() - Rational::new(1, e))
        + &chi * Rational::new(2 * sw, e);
    let art_term = &chi - &chi_bar - &swan;
    let mut mu_sum = Rational::zero();
    for b in data.branch() {
        let stab = data.stabilizer(b.i);
        for &sw_q in &b.sw_locals {
            let q = WeakWildSingularity::new(stab, sw_q)?;
            mu_sum += weak_wild_milnor(&q);
        }
    }
    let minus_12c = &gamma_term + &art_term - &mu_sum;
    assert_eq!(
        -&minus_12c / 12,
        &c_tame + &c_wild,
        "wild assembly disagrees with u/2 + Sw/4"
    );

    let mut rep = ConductorReport::new(c_tame.clone(), c_wild.clone(), u)?;
    rep.term("u", Rational::from(u), U_RULE);
    rep.term("swan_curve", swan.clone(), "Sw(C) from local Swan conductors and branch data");
    rep.term(
        "swan_integral",
        Rational::from(swan.is_integer() as i64),
        "1 when Sw(C) is an integer; a fractional value signals inconsistent data",
    );
    rep.term("gamma_term", gamma_term, "2 chi (1 - 1/e) + 2 (chi/e) sw");
    rep.term("artin_term", art_term, "chi - chi_bar - Sw(C)");
    rep.term("mu_sum", mu_sum, "sum over singular points of 4(1 - 1/e_P + sw_P/e_P)");
    rep.term("minus_12c", minus_12c, "gamma_term + artin_term - mu_sum");
    rep.term("c_tame", c_tame, "u/2");
    rep.term("c_wild", c_wild, "Sw(C)/4");
    Ok(rep)
}

/// `nu_Q = 12 c_tame - 2` for the wild quotient singularity attached to an
/// elliptic curve in residue characteristic 3.
pub fn elliptic_nu_p3(c_tame_value: &Rational) -> Rational {
    c_tame_value * 12 - 2
}
