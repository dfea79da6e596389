//! Swan and Artin conductors from lower-numbering ramification filtrations.
//!
//! Only group orders enter the formulas, so a filtration is a list
//! `[|G_0|, |G_1|, ..., |G_N|]` with `|G_{N+1}| = 1` implied. The residue
//! field is algebraically closed, hence `G = G_0`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::exactmath::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamError {
    #[error("filtration is empty")]
    Empty,
    #[error("group orders must be positive")]
    ZeroOrder,
    #[error("|G_{index}| does not divide |G_{}|", .index - 1)]
    NotDivisible { index: usize },
    #[error("|G_1| = {0} is not a power of the residue characteristic")]
    WildNotPPower(u64),
    #[error("|G_0/G_1| = {0} is not prime to the residue characteristic")]
    TameNotPrimeToP(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inconsistent fixed-space dimensions: {0}")]
    InconsistentDims(&'static str),
    #[error("jump parameter s must be at least 1")]
    BadJump,
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    (2..=n).find(|d| n.is_multiple_of(*d))
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamFiltration {
    sizes: Vec<u64>,
    p: Option<u64>,
}

impl RamFiltration {
    /// Validates divisibility and, for the wild part, that `|G_1|` is a
    /// `p`-group with `|G_0/G_1|` prime to `p`. When `p` is not given it is
    /// read off `|G_1|`.
    pub fn new(sizes: Vec<u64>, p: Option<u64>) -> Result<Self, RamError> {
        if sizes.is_empty() {
            return Err(RamError::Empty);
        }
        if sizes.contains(&0) {
            return Err(RamError::ZeroOrder);
        }
        if let Some(p) = p {
            if !is_prime(p) {
                return Err(RamError::NotPrime(p));
            }
        }
        for i in 1..sizes.len() {
            if !sizes[i - 1].is_multiple_of(sizes[i]) {
                return Err(RamError::NotDivisible { index: i });
            }
        }
        let wild = sizes.get(1).copied().unwrap_or(1);
        let p = match p {
            Some(p) => Some(p),
            None if wild > 1 => smallest_prime_factor(wild),
            None => None,
        };
        if let Some(p) = p {
            if !is_power_of(wild, p) {
                return Err(RamError::WildNotPPower(wild));
            }
            let tame = sizes[0] / wild;
            if tame.is_multiple_of(p) {
                return Err(RamError::TameNotPrimeToP(tame));
            }
        }
        Ok(RamFiltration { sizes, p })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn order(&self) -> u64 {
        self.sizes[0]
    }

    pub fn residue_characteristic(&self) -> Option<u64> {
        self.p
    }

    pub fn is_tame(&self) -> bool {
        self.sizes.get(1).copied().unwrap_or(1) == 1
    }
}

/// `dim V` together with `dim V^{G_i}` for each filtration step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepFixedDims {
    pub dim: u64,
    pub fixed_dims: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwanArtin {
    pub swan: Rational,
    pub artin: Rational,
}

/// `Sw(V) = sum_{i>=1} dim(V/V^{G_i}) / [G:G_i]` and
/// `Art(V) = dim V - dim V^G + Sw(V)`.
pub fn swan_artin_rep(filt: &RamFiltration, rep: &RepFixedDims) -> Result<SwanArtin, RamError> {
    if rep.fixed_dims.len() != filt.sizes.len() {
        return Err(RamError::InconsistentDims("length differs from the filtration"));
    }
    if rep.fixed_dims.iter().any(|&d| d > rep.dim) {
        return Err(RamError::InconsistentDims("fixed space larger than V"));
    }
    if rep.fixed_dims.windows(2).any(|w| w[0] > w[1]) {
        return Err(RamError::InconsistentDims("fixed dimensions must weakly increase"));
    }
    let g = filt.order() as i64;
    let swan: Rational = filt
        .sizes
        .iter()
        .zip(&rep.fixed_dims)
        .skip(1)
        .map(|(&gi, &fixed)| Rational::new(gi as i64, g) * (rep.dim - fixed) as i64)
        .sum();
    let artin = &swan + (rep.dim - rep.fixed_dims[0]) as i64;
    Ok(SwanArtin { swan, artin })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionSwan {
    /// `sw = sum_{i>=1} (|G_i| - 1)`.
    pub sw: u64,
    /// Exponent of the different, `e - 1 + sw`.
    pub different_exponent: u64,
}

pub fn swan_extension(filt: &RamFiltration) -> ExtensionSwan {
    let sw = filt.sizes.iter().skip(1).map(|&g| g - 1).sum();
    ExtensionSwan {
        sw,
        different_exponent: filt.order() - 1 + sw,
    }
}

/// The regular representation of `G`: `dim = |G|`, `dim V^{G_i} = [G:G_i]`.
pub fn regular_representation(filt: &RamFiltration) -> RepFixedDims {
    RepFixedDims {
        dim: filt.order(),
        fixed_dims: filt.sizes.iter().map(|&gi| filt.order() / gi).collect(),
    }
}

/// `(s - 1)(p - 1)`: Swan conductor of a `Z/p` extension whose jump is
/// normalized as in the type `(r, s)` description of weak wild quotient
/// singularities. Not a lower-numbering jump; see [`swan_extension`] for
/// that count.
pub fn p_cyclic_type_swan(p: u64, s: u64) -> Result<u64, RamError> {
    if !is_prime(p) {
        return Err(RamError::NotPrime(p));
    }
    if s == 0 {
        return Err(RamError::BadJump);
    }
    Ok((s - 1) * (p - 1))
}
