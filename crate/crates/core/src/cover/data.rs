use alloc::vec::Vec;
use core::fmt;

use super::CoverError;
use crate::ramification::is_prime;
use crate::singularity::CyclicSingularity;

/// `m_d` orbits of size `d`, each mapping to a quotient singularity `sing`
/// with `e_Q = e/d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameBranch {
    pub d: u64,
    pub count: u64,
    pub sing: CyclicSingularity,
}

/// Tame `Z/e` cover of special fibers with quotient of genus `g_bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameCoverData {
    e: u64,
    g: u64,
    g_bar: u64,
    branch: Vec<TameBranch>,
}

impl TameCoverData {
    pub fn new(e: u64, g: u64, g_bar: u64, branch: Vec<TameBranch>) -> Result<Self, CoverError> {
        if e < 2 {
            return Err(CoverError::Invalid("degree e must be at least 2"));
        }
        for b in &branch {
            if b.d == 0 || !e.is_multiple_of(b.d) || b.d == e {
                return Err(CoverError::Invalid("orbit size d must be a proper divisor of e"));
            }
            if b.sing.e() != e / b.d {
                return Err(CoverError::Invalid("singularity order must equal e/d"));
            }
        }
        Ok(TameCoverData { e, g, g_bar, branch })
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn g_bar(&self) -> u64 {
        self.g_bar
    }

    pub fn branch(&self) -> &[TameBranch] {
        &self.branch
    }

    pub(crate) fn rh_sides(&self) -> (i64, i64) {
        let e = self.e as i64;
        let lhs = 2 * self.g as i64 - 2;
        let ram: i64 = self
            .branch
            .iter()
            .map(|b| b.count as i64 * (e - b.d as i64))
            .sum();
        (lhs, e * (2 * self.g_bar as i64 - 2) + ram)
    }
}

/// `count` orbits of points of type `i`: stabilizer of order `p^(r-i)` and
/// orbit size `p^i`. `sw_locals` holds the local Swan conductor at each of
/// the `count` quotient singularities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WildBranch {
    pub i: u32,
    pub count: u64,
    pub sw_locals: Vec<u64>,
}

/// Hasse-Witt data of the curves upstairs and downstairs, for the
/// Deuring-Shafarevich check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryData {
    pub gamma: u64,
    pub gamma_bar: u64,
    /// Sizes of the orbits with non-trivial stabilizer. Defaults to the
    /// orbit sizes `p^i` implied by the branch data.
    pub small_orbits: Option<Vec<u64>>,
}

/// Weakly ramified `p`-elementary cover of degree `p^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WildCoverData {
    p: u64,
    r: u32,
    g: u64,
    g_bar: u64,
    sw_ext: u64,
    branch: Vec<WildBranch>,
    ordinary: Option<OrdinaryData>,
}

impl WildCoverData {
    pub fn new(
        p: u64,
        r: u32,
        g: u64,
        g_bar: u64,
        sw_ext: u64,
        branch: Vec<WildBranch>,
        ordinary: Option<OrdinaryData>,
    ) -> Result<Self, CoverError> {
        if !is_prime(p) {
            return Err(CoverError::Invalid("p must be prime"));
        }
        if r == 0 {
            return Err(CoverError::Invalid("r must be at least 1"));
        }
        p.checked_pow(r)
            .and_then(|e| e.checked_mul(e))
            .ok_or(CoverError::Invalid("p^r is too large"))?;
        for b in &branch {
            if b.i >= r {
                return Err(CoverError::Invalid("type i must lie in 0..r"));
            }
            if b.sw_locals.len() as u64 != b.count {
                return Err(CoverError::Invalid("sw_locals must have one entry per point"));
            }
        }
        if !branch.iter().any(|b| b.i == 0 && b.count > 0) {
            return Err(CoverError::NoFullStabilizerPoint);
        }
        if let Some(o) = &ordinary {
            if let Some(sizes) = &o.small_orbits {
                let e = p.pow(r);
                if sizes.iter().any(|&s| s == 0 || s >= e || !e.is_multiple_of(s)) {
                    return Err(CoverError::Invalid("small orbit sizes must be proper divisors of p^r"));
                }
            }
        }
        Ok(WildCoverData {
            p,
            r,
            g,
            g_bar,
            sw_ext,
            branch,
            ordinary,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `e = p^r`.
    pub fn degree(&self) -> u64 {
        self.p.pow(self.r)
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn g_bar(&self) -> u64 {
        self.g_bar
    }

    pub fn sw_ext(&self) -> u64 {
        self.sw_ext
    }

    pub fn branch(&self) -> &[WildBranch] {
        &self.branch
    }

    pub fn ordinary(&self) -> Option<&OrdinaryData> {
        self.ordinary.as_ref()
    }

    pub fn chi(&self) -> i64 {
        2 - 2 * self.g as i64
    }

    pub fn chi_bar(&self) -> i64 {
        2 - 2 * self.g_bar as i64
    }

    /// Order of the stabilizer of a type-`i` point.
    pub fn stabilizer(&self, i: u32) -> u64 {
        self.p.pow(self.r - i)
    }

    pub(crate) fn rh_sides(&self) -> (i64, i64) {
        let e = self.degree() as i64;
        let ram: i64 = self
            .branch
            .iter()
            .map(|b| 2 * b.count as i64 * (e - self.p.pow(b.i) as i64))
            .sum();
        (2 * self.g as i64 - 2, e * (2 * self.g_bar as i64 - 2) + ram)
    }

    pub(crate) fn small_orbit_sizes(&self) -> Vec<u64> {
        match self.ordinary.as_ref().and_then(|o| o.small_orbits.clone()) {
            Some(v) => v,
            None => self
                .branch
                .iter()
                .flat_map(|b| core::iter::repeat_n(self.p.pow(b.i), b.count as usize))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// `2g - 2` against the ramification side of Riemann-Hurwitz.
    RhMismatch { lhs: i64, rhs: i64 },
    /// `gamma - 1` against the Deuring-Shafarevich side.
    DsMismatch { lhs: i64, rhs: i64 },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::RhMismatch { lhs, rhs } => {
                write!(f, "Riemann-Hurwitz fails: 2g-2 = {lhs} but branch data give {rhs}")
            }
            Diagnostic::DsMismatch { lhs, rhs } => {
                write!(f, "Deuring-Shafarevich fails: gamma-1 = {lhs} but orbit data give {rhs}")
            }
        }
    }
}

/// Either kind of cover, for [`rh_validate`].
#[derive(Debug, Clone, Copy)]
pub enum CoverRef<'a> {
    Tame(&'a TameCoverData),
    Wild(&'a WildCoverData),
}

impl<'a> From<&'a TameCoverData> for CoverRef<'a> {
    fn from(d: &'a TameCoverData) -> Self {
        CoverRef::Tame(d)
    }
}

impl<'a> From<&'a WildCoverData> for CoverRef<'a> {
    fn from(d: &'a WildCoverData) -> Self {
        CoverRef::Wild(d)
    }
}

/// Empty iff Riemann-Hurwitz holds exactly. Tame:
/// `2g - 2 = e(2 g_bar - 2) + sum m_d (e - d)`. Weakly ramified wild:
/// `2g - 2 = p^r (2 g_bar - 2) + sum 2 m_i (p^r - p^i)`.
pub fn rh_validate<'a>(data: impl Into<CoverRef<'a>>) -> Vec<Diagnostic> {
    let (lhs, rhs) = match data.into() {
        CoverRef::Tame(t) => t.rh_sides(),
        CoverRef::Wild(w) => w.rh_sides(),
    };
    if lhs == rhs {
        Vec::new()
    } else {
        alloc::vec![Diagnostic::RhMismatch { lhs, rhs }]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsReport {
    /// Empty iff `gamma - 1 = |G|(gamma_bar - 1) + sum (|G| - |O_i|)`.
    pub diagnostics: Vec<Diagnostic>,
    /// The cover is ordinary (`gamma = g`), which forces weak ramification.
    pub ordinary_weakly_ramified: bool,
}

pub fn ds_validate(data: &WildCoverData) -> Result<DsReport, CoverError> {
    let o = data.ordinary.as_ref().ok_or(CoverError::MissingOrdinaryData)?;
    let e = data.degree() as i64;
    let lhs = o.gamma as i64 - 1;
    let rhs = e * (o.gamma_bar as i64 - 1)
        + data
            .small_orbit_sizes()
            .iter()
            .map(|&s| e - s as i64)
            .sum::<i64>();
    let mut diagnostics = Vec::new();
    if lhs != rhs {
        diagnostics.push(Diagnostic::DsMismatch { lhs, rhs });
    }
    Ok(DsReport {
        diagnostics,
        ordinary_weakly_ramified: o.gamma == data.g,
    })
}
