use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::graph::{star, Component, GraphFlags, SncdGraph};

/// Kodaira reduction types with an sncd minimal configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaLabel {
    /// Good reduction: one smooth genus-1 component.
    I0,
    /// `I_n`, `n >= 2`: a cycle of `n` rational curves.
    In(u32),
    II,
    III,
    IV,
    /// `I_n^*`, `n >= 0`.
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown or non-sncd Kodaira type {0:?}")]
pub struct UnknownType(pub String);

impl FromStr for KodairaLabel {
    type Err = UnknownType;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || UnknownType(s.to_string());
        let t: String = s.trim().chars().filter(|c| *c != '_').collect();
        let t = t.replace('^', "");
        Ok(match t.as_str() {
            "I0" => KodairaLabel::I0,
            "II" => KodairaLabel::II,
            "III" => KodairaLabel::III,
            "IV" => KodairaLabel::IV,
            "IV*" => KodairaLabel::IVStar,
            "III*" => KodairaLabel::IIIStar,
            "II*" => KodairaLabel::IIStar,
            _ => {
                let rest = t.strip_prefix('I').ok_or_else(err)?;
                if let Some(num) = rest.strip_suffix('*') {
                    KodairaLabel::InStar(num.parse().map_err(|_| err())?)
                } else {
                    let n: u32 = rest.parse().map_err(|_| err())?;
                    // I_1 needs a nodal component, which is not sncd
                    if n < 2 {
                        return Err(err());
                    }
                    KodairaLabel::In(n)
                }
            }
        })
    }
}

impl fmt::Display for KodairaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaLabel::I0 => write!(f, "I0"),
            KodairaLabel::In(n) => write!(f, "I{n}"),
            KodairaLabel::II => write!(f, "II"),
            KodairaLabel::III => write!(f, "III"),
            KodairaLabel::IV => write!(f, "IV"),
            KodairaLabel::InStar(n) => write!(f, "I{n}*"),
            KodairaLabel::IVStar => write!(f, "IV*"),
            KodairaLabel::IIIStar => write!(f, "III*"),
            KodairaLabel::IIStar => write!(f, "II*"),
        }
    }
}

/// Builds a graph from a center and arms given as multiplicities read
/// outward from the center; every component is rational.
fn arms(center: u64, arm_list: &[&[u64]]) -> SncdGraph {
    let mut comps = alloc::vec![Component::new("c", center, 0)];
    let mut edges = Vec::new();
    for (a, arm) in arm_list.iter().enumerate() {
        let mut prev = 0;
        for (k, &n) in arm.iter().enumerate() {
            let idx = comps.len();
            comps.push(Component::new(format!("a{}_{}", a + 1, k + 1), n, 0));
            edges.push((prev, idx));
            prev = idx;
        }
    }
    SncdGraph::from_indices(comps, edges, GraphFlags::default()).expect("catalog graph")
}

/// Standard sncd configuration of a Kodaira type.
pub fn kodaira_catalog(label: KodairaLabel) -> Result<SncdGraph, UnknownType> {
    let g = match label {
        KodairaLabel::I0 => SncdGraph::from_indices(
            alloc::vec![Component::new("c", 1, 1)],
            Vec::new(),
            GraphFlags::default(),
        )
        .expect("catalog graph"),
        KodairaLabel::In(n) => {
            if n < 2 {
                return Err(UnknownType(label.to_string()));
            }
            let n = n as usize;
            let comps = (0..n).map(|i| Component::new(format!("c{i}"), 1, 0)).collect();
            let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
            SncdGraph::from_indices(comps, edges, GraphFlags::default()).expect("catalog graph")
        }
        KodairaLabel::II => star((6, 0), &[(1, 0), (2, 0), (3, 0)]),
        KodairaLabel::III => star((4, 0), &[(1, 0), (1, 0), (2, 0)]),
        KodairaLabel::IV => star((3, 0), &[(1, 0), (1, 0), (1, 0)]),
        KodairaLabel::InStar(n) => {
            // chain c0..cn of multiplicity 2, two reduced leaves at each end
            let n = n as usize;
            let mut comps: Vec<Component> =
                (0..=n).map(|i| Component::new(format!("c{i}"), 2, 0)).collect();
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
            for (name, at) in [("l1", 0), ("l2", 0), ("l3", n), ("l4", n)] {
                comps.push(Component::new(name, 1, 0));
                edges.push((at, comps.len() - 1));
            }
            SncdGraph::from_indices(comps, edges, GraphFlags::default()).expect("catalog graph")
        }
        KodairaLabel::IVStar => arms(3, &[&[2, 1], &[2, 1], &[2, 1]]),
        KodairaLabel::IIIStar => arms(4, &[&[3, 2, 1], &[3, 2, 1], &[2]]),
        KodairaLabel::IIStar => arms(6, &[&[5, 4, 3, 2, 1], &[4, 2], &[3]]),
    };
    Ok(g.with_flags(GraphFlags {
        index_one: true,
        expected_genus: Some(1),
    }))
}

impl KodairaLabel {
    /// A representative list covering every shape in the catalog.
    pub fn representatives() -> Vec<KodairaLabel> {
        alloc::vec![
            KodairaLabel::I0,
            KodairaLabel::In(2),
            KodairaLabel::In(3),
            KodairaLabel::In(7),
            KodairaLabel::II,
            KodairaLabel::III,
            KodairaLabel::IV,
            KodairaLabel::InStar(0),
            KodairaLabel::InStar(1),
            KodairaLabel::InStar(4),
            KodairaLabel::IVStar,
            KodairaLabel::IIIStar,
            KodairaLabel::IIStar,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::{invariants, validate};
    use crate::Rational;

    #[test]
    fn parse_labels() {
        assert_eq!("IV".parse(), Ok(KodairaLabel::IV));
        assert_eq!("I_5".parse(), Ok(KodairaLabel::In(5)));
        assert_eq!("I0*".parse(), Ok(KodairaLabel::InStar(0)));
        assert_eq!("I_3^*".parse(), Ok(KodairaLabel::InStar(3)));
        assert_eq!("II*".parse(), Ok(KodairaLabel::IIStar));
        assert!("I1".parse::<KodairaLabel>().is_err());
        assert!("V".parse::<KodairaLabel>().is_err());
        for l in KodairaLabel::representatives() {
            assert_eq!(l.to_string().parse(), Ok(l));
        }
    }

    #[test]
    fn every_entry_validates() {
        for l in KodairaLabel::representatives() {
            let g = kodaira_catalog(l).unwrap();
            assert!(validate(&g).is_empty(), "{l}: {:?}", validate(&g));
            assert_eq!(invariants(&g).unwrap().g, 1, "{l}");
        }
    }

    #[test]
    fn r_minus_e_of_iv_and_iv_star() {
        let iv = invariants(&kodaira_catalog(KodairaLabel::IV).unwrap()).unwrap();
        assert_eq!(iv.r_minus_e(), Rational::new(2, 3));
        let ivs = invariants(&kodaira_catalog(KodairaLabel::IVStar).unwrap()).unwrap();
        assert_eq!(ivs.e, 6);
        assert_eq!(ivs.r, Rational::new(16, 3));
        assert_eq!(ivs.r_minus_e(), Rational::new(-2, 3));
    }

    #[test]
    fn shapes() {
        let ii = kodaira_catalog(KodairaLabel::II).unwrap();
        let mults: Vec<u64> = ii.components().iter().map(|c| c.multiplicity).collect();
        assert_eq!(mults, alloc::vec![6, 1, 2, 3]);
        let i0s = invariants(&kodaira_catalog(KodairaLabel::InStar(0)).unwrap()).unwrap();
        assert_eq!(i0s.r_minus_e(), Rational::zero());
        assert_eq!(i0s.u, 1);
    }
}
