use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::exactmath::{neg_semidefinite_rank, Rational, SymMatrix};

/// An irreducible component `E_i` of the special fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    /// Multiplicity `n_i` in the special fiber.
    pub multiplicity: u64,
    pub genus: u64,
}

impl Component {
    pub fn new(id: impl Into<String>, multiplicity: u64, genus: u64) -> Self {
        Component {
            id: id.into(),
            multiplicity,
            genus,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphFlags {
    /// Require `gcd(n_i) = 1`.
    pub index_one: bool,
    /// When set, a mismatch with the genus derived from the graph is reported.
    pub expected_genus: Option<u64>,
}

/// Labelled dual graph of an sncd model. Edges form a multiset: `k` parallel
/// edges between two components encode `E_i . E_j = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SncdGraph {
    components: Vec<Component>,
    edges: Vec<(usize, usize)>,
    flags: GraphFlags,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate component id {0:?}")]
    DuplicateId(String),
    #[error("edge refers to unknown component {0:?}")]
    UnknownComponent(String),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("graph fails validation: {}", join_diagnostics(.0))]
    InvalidGraph(Vec<Diagnostic>),
    #[error("negative unipotent rank u = {0}; the labels are inconsistent")]
    NegativeUnipotentRank(i64),
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    let parts: Vec<String> = d.iter().map(|x| format!("{x}")).collect();
    parts.join("; ")
}

/// A violated well-formedness rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    Empty,
    ZeroMultiplicity { id: String },
    Loop { id: String },
    NotConnected { pieces: usize },
    NonIntegralSelfIntersection { id: String, value: Rational },
    /// The kernel of the intersection form is not spanned by the multiplicity
    /// vector (or the form is not negative semidefinite).
    KernelNotMultiplicity,
    IndexNotOne { gcd: u64 },
    OddEulerCharacteristic { chi: i64 },
    GenusMismatch { expected: u64, computed: i64 },
}

impl Diagnostic {
    /// Short stable name of the violated rule.
    pub fn rule(&self) -> &'static str {
        match self {
            Diagnostic::Empty => "Empty",
            Diagnostic::ZeroMultiplicity { .. } => "ZeroMultiplicity",
            Diagnostic::Loop { .. } => "Loop",
            Diagnostic::NotConnected { .. } => "NotConnected",
            Diagnostic::NonIntegralSelfIntersection { .. } => "NonIntegralSelfIntersection",
            Diagnostic::KernelNotMultiplicity => "KernelNotMultiplicity",
            Diagnostic::IndexNotOne { .. } => "IndexNotOne",
            Diagnostic::OddEulerCharacteristic { .. } => "OddEulerCharacteristic",
            Diagnostic::GenusMismatch { .. } => "GenusMismatch",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Empty => write!(f, "graph has no components"),
            Diagnostic::ZeroMultiplicity { id } => write!(f, "component {id} has multiplicity 0"),
            Diagnostic::Loop { id } => write!(f, "component {id} meets itself"),
            Diagnostic::NotConnected { pieces } => {
                write!(f, "graph has {pieces} connected components")
            }
            Diagnostic::NonIntegralSelfIntersection { id, value } => {
                write!(f, "self-intersection of {id} would be {value}")
            }
            Diagnostic::KernelNotMultiplicity => write!(
                f,
                "intersection form kernel is not spanned by the multiplicity vector"
            ),
            Diagnostic::IndexNotOne { gcd } => write!(f, "gcd of multiplicities is {gcd}"),
            Diagnostic::OddEulerCharacteristic { chi } => {
                write!(f, "generic Euler characteristic {chi} is odd")
            }
            Diagnostic::GenusMismatch { expected, computed } => {
                write!(f, "expected genus {expected}, graph gives {computed}")
            }
        }
    }
}

impl SncdGraph {
    pub fn new<S: AsRef<str>>(
        components: Vec<Component>,
        edges: &[(S, S)],
        flags: GraphFlags,
    ) -> Result<Self, GraphError> {
        let mut index = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(GraphError::DuplicateId(c.id.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| GraphError::UnknownComponent(String::from(s)))
        };
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            idx_edges.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_indices(components, idx_edges, flags)
    }

    pub fn from_indices(
        components: Vec<Component>,
        edges: Vec<(usize, usize)>,
        flags: GraphFlags,
    ) -> Result<Self, GraphError> {
        let n = components.len();
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(GraphError::EdgeOutOfRange(k));
            }
        }
        let mut seen = BTreeMap::new();
        for c in &components {
            if seen.insert(c.id.clone(), ()).is_some() {
                return Err(GraphError::DuplicateId(c.id.clone()));
            }
        }
        Ok(SncdGraph {
            components,
            edges,
            flags,
        })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn flags(&self) -> &GraphFlags {
        &self.flags
    }

    pub fn with_flags(mut self, flags: GraphFlags) -> Self {
        self.flags = flags;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.components.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge ends at `i`, loops excluded.
    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a != b && (a == i || b == i))
            .count()
    }

    /// `E_i . E_j` for `i != j`.
    pub fn meeting_count(&self, i: usize, j: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a != b && ((a == i && b == j) || (a == j && b == i)))
            .count()
    }

    fn multiplicity(&self, i: usize) -> Rational {
        Rational::from(self.components[i].multiplicity)
    }

    /// `E_i^2 = -(1/n_i) sum_j n_j (E_i . E_j)`, possibly non-integral for
    /// malformed input. Panics on a zero multiplicity.
    pub fn self_intersection(&self, i: usize) -> Rational {
        let weighted: Rational = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != b)
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(self.multiplicity(b))
                } else if b == i {
                    Some(self.multiplicity(a))
                } else {
                    None
                }
            })
            .sum();
        -(weighted / self.multiplicity(i))
    }

    /// Intersection matrix of the special fiber components.
    pub fn intersection_matrix(&self) -> SymMatrix {
        let n = self.vertex_count();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, self.self_intersection(i));
        }
        for &(a, b) in &self.edges {
            if a != b {
                let v = m.get(a, b) + Rational::one();
                m.set(a, b, v);
            }
        }
        m
    }

    fn connected_pieces(&self) -> usize {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// `chi(E_i minus the nodes) = 2 - 2 g_i - deg(i)`.
    pub fn open_euler_characteristic(&self, i: usize) -> i64 {
        2 - 2 * self.components[i].genus as i64 - self.degree(i) as i64
    }

    /// `chi(C_{K^s}) = sum n_i chi(E_i^o)`.
    pub fn chi_generic(&self) -> i64 {
        (0..self.vertex_count())
            .map(|i| self.components[i].multiplicity as i64 * self.open_euler_characteristic(i))
            .sum()
    }

    /// `chi(C_k) = sum chi(E_i) - E`.
    pub fn chi_special(&self) -> i64 {
        self.components
            .iter()
            .map(|c| 2 - 2 * c.genus as i64)
            .sum::<i64>()
            - self.edge_count() as i64
    }

    /// `R = (1/3) sum over nodes (n^2 + n'^2 + gcd(n,n')^2) / (n n')`.
    pub fn virtual_nodes(&self) -> Rational {
        let s: Rational = self.edges.iter().map(|&(a, b)| self.edge_weight(a, b)).sum();
        s / 3
    }

    /// `(n^2 + n'^2 + gcd^2) / (n n')` for the node between `a` and `b`.
    pub fn edge_weight(&self, a: usize, b: usize) -> Rational {
        let n = self.components[a].multiplicity as i64;
        let m = self.components[b].multiplicity as i64;
        let d = n.gcd(&m);
        let num = Rational::from(n) * n + Rational::from(m) * m + Rational::from(d) * d;
        num / (Rational::from(n) * m)
    }

    /// Blow up the node carried by edge `k`: the edge `(a, b)` is replaced by
    /// a rational component of multiplicity `n_a + n_b` meeting both.
    pub fn blow_up_node(&self, k: usize) -> Result<SncdGraph, GraphError> {
        let &(a, b) = self.edges.get(k).ok_or(GraphError::EdgeOutOfRange(k))?;
        let mut g = self.clone();
        let new = g.components.len();
        let id = g.fresh_id();
        g.components.push(Component::new(
            id,
            self.components[a].multiplicity + self.components[b].multiplicity,
            0,
        ));
        g.edges.remove(k);
        g.edges.push((a, new));
        g.edges.push((new, b));
        Ok(g)
    }

    /// Blow up a smooth point of the special fiber lying on component `i`.
    pub fn blow_up_point(&self, i: usize) -> SncdGraph {
        let mut g = self.clone();
        let new = g.components.len();
        let id = g.fresh_id();
        g.components
            .push(Component::new(id, self.components[i].multiplicity, 0));
        g.edges.push((i, new));
        g
    }

    fn fresh_id(&self) -> String {
        let mut k = self.components.len();
        loop {
            let id = format!("x{k}");
            if self.components.iter().all(|c| c.id != id) {
                return id;
            }
            k += 1;
        }
    }
}

/// All well-formedness violations; empty iff the graph is usable.
pub fn validate(graph: &SncdGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if graph.components.is_empty() {
        out.push(Diagnostic::Empty);
        return out;
    }
    for c in &graph.components {
        if c.multiplicity == 0 {
            out.push(Diagnostic::ZeroMultiplicity { id: c.id.clone() });
        }
    }
    for &(a, b) in &graph.edges {
        if a == b {
            out.push(Diagnostic::Loop {
                id: graph.components[a].id.clone(),
            });
        }
    }
    let pieces = graph.connected_pieces();
    if pieces > 1 {
        out.push(Diagnostic::NotConnected { pieces });
    }
    if !out.is_empty() {
        // the remaining rules need positive multiplicities and no loops
        return out;
    }

    let mut integral = true;
    for i in 0..graph.vertex_count() {
        let s = graph.self_intersection(i);
        if !s.is_integer() {
            integral = false;
            out.push(Diagnostic::NonIntegralSelfIntersection {
                id: graph.components[i].id.clone(),
                value: s,
            });
        }
    }

    if integral {
        let m = graph.intersection_matrix();
        let mult: Vec<Rational> = (0..graph.vertex_count())
            .map(|i| graph.multiplicity(i))
            .collect();
        // semidefinite of corank one with the multiplicities in the kernel
        let kernel_ok = neg_semidefinite_rank(&m) == Some(graph.vertex_count() - 1)
            && m.mul_vec(&mult)
                .map(|v| v.iter().all(Rational::is_zero))
                .unwrap_or(false);
        if !kernel_ok {
            out.push(Diagnostic::KernelNotMultiplicity);
        }
    }

    if graph.flags.index_one {
        let g = graph
            .components
            .iter()
            .fold(0u64, |acc, c| acc.gcd(&c.multiplicity));
        if g != 1 {
            out.push(Diagnostic::IndexNotOne { gcd: g });
        }
    }

    let chi = graph.chi_generic();
    if chi % 2 != 0 {
        out.push(Diagnostic::OddEulerCharacteristic { chi });
    } else if let Some(expected) = graph.flags.expected_genus {
        let computed = 1 - chi / 2;
        if computed != expected as i64 {
            out.push(Diagnostic::GenusMismatch { expected, computed });
        }
    }
    out
}

/// Graph-level invariants of an sncd model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInvariants {
    /// Number of components `V`.
    pub v: i64,
    /// Number of nodes `E`.
    pub e: i64,
    pub b1: i64,
    /// Virtual number of nodes.
    pub r: Rational,
    pub chi_generic: i64,
    pub chi_special: i64,
    pub g: i64,
    pub a: i64,
    pub t: i64,
    pub u: i64,
    pub art_tame: i64,
    /// `(id, E_i^2)` in component order.
    pub self_intersections: Vec<(String, i64)>,
}

impl GraphInvariants {
    pub fn r_minus_e(&self) -> Rational {
        &self.r - self.e
    }
}

pub fn invariants(graph: &SncdGraph) -> Result<GraphInvariants, GraphError> {
    let diags = validate(graph);
    if !diags.is_empty() {
        return Err(GraphError::InvalidGraph(diags));
    }
    let v = graph.vertex_count() as i64;
    let e = graph.edge_count() as i64;
    let b1 = 1 - v + e;
    let chi_generic = graph.chi_generic();
    let chi_special = graph.chi_special();
    let g = 1 - chi_generic / 2;
    let a: i64 = graph.components.iter().map(|c| c.genus as i64).sum();
    let t = b1;
    let u = g - a - t;
    if u < 0 {
        return Err(GraphError::NegativeUnipotentRank(u));
    }
    let art_tame = chi_generic - chi_special;
    // rank formula and Euler characteristic difference must agree
    debug_assert_eq!(art_tame, -2 * u - e);
    let self_intersections = (0..graph.vertex_count())
        .map(|i| {
            let s = graph
                .self_intersection(i)
                .to_i64()
                .expect("validated integral");
            (graph.components[i].id.clone(), s)
        })
        .collect();
    Ok(GraphInvariants {
        v,
        e,
        b1,
        r: graph.virtual_nodes(),
        chi_generic,
        chi_special,
        g,
        a,
        t,
        u,
        art_tame,
        self_intersections,
    })
}

/// Euler characteristic after replacing points by exceptional curves:
/// `chi_base + sum (chi(E_i) - 1)`.
pub fn euler_after_resolution(chi_base: i64, exceptional_chis: &[i64]) -> i64 {
    chi_base + exceptional_chis.iter().map(|c| c - 1).sum::<i64>()
}

pub(crate) fn star(center: (u64, u64), leaves: &[(u64, u64)]) -> SncdGraph {
    let mut comps = vec![Component::new("c", center.0, center.1)];
    let mut edges = Vec::new();
    for (k, &(n, g)) in leaves.iter().enumerate() {
        comps.push(Component::new(format!("l{}", k + 1), n, g));
        edges.push((0, k + 1));
    }
    SncdGraph::from_indices(comps, edges, GraphFlags::default()).expect("well-formed star")
}
