//! Typed payloads, one per job kind. Parsing a payload checks its schema;
//! the mathematical preconditions are left to `conductor-core`.

use conductor_core::dualgraph::KodairaLabel;
use conductor_core::singularity::PConvention;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::exact::Exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Graph,
    Ctame,
    Pipeline,
    QuotsingTame,
    QuotsingWild,
    QuotsingResolve,
    Ramification,
    BccTameGood,
    BccWildWeak,
    BccEval,
    Kodaira,
    EllipticNu,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::Graph,
        Kind::Ctame,
        Kind::Pipeline,
        Kind::QuotsingTame,
        Kind::QuotsingWild,
        Kind::QuotsingResolve,
        Kind::Ramification,
        Kind::BccTameGood,
        Kind::BccWildWeak,
        Kind::BccEval,
        Kind::Kodaira,
        Kind::EllipticNu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Graph => "graph",
            Kind::Ctame => "ctame",
            Kind::Pipeline => "pipeline",
            Kind::QuotsingTame => "quotsing-tame",
            Kind::QuotsingWild => "quotsing-wild",
            Kind::QuotsingResolve => "quotsing-resolve",
            Kind::Ramification => "ramification",
            Kind::BccTameGood => "bcc-tame-good",
            Kind::BccWildWeak => "bcc-wild-weak",
            Kind::BccEval => "bcc-eval",
            Kind::Kodaira => "kodaira",
            Kind::EllipticNu => "elliptic-nu",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentIn {
    pub id: String,
    pub n: u64,
    #[serde(default)]
    pub g: u64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsIn {
    #[serde(default)]
    pub index_one: bool,
    #[serde(default)]
    pub expected_genus: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralIn {
    pub mu: Exact,
    #[serde(default = "one")]
    pub original_components: u64,
}

fn one() -> u64 {
    1
}

/// Either an explicit labelled graph or `{"type": "IV"}` for a catalog
/// fiber.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphIn {
    #[serde(rename = "type")]
    pub kodaira: Option<String>,
    pub components: Option<Vec<ComponentIn>>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    pub flags: Option<FlagsIn>,
    /// Only read by `ctame`.
    pub spectral: Option<SpectralIn>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionIn {
    Shifted,
    Standard,
}

impl From<ConventionIn> for PConvention {
    fn from(c: ConventionIn) -> Self {
        match c {
            ConventionIn::Shifted => PConvention::Shifted,
            ConventionIn::Standard => PConvention::Standard,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotTameIn {
    pub e: u64,
    pub r: u64,
    pub p_convention: Option<ConventionIn>,
}

/// Three modes: `{e_p, sw}` for the Milnor number, `{p, s, r1, r_minus1}`
/// for one chart, `{p, s, discover}` to search residue pairs.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotWildIn {
    pub e_p: Option<u64>,
    pub sw: Option<u64>,
    pub p: Option<u64>,
    pub s: Option<u64>,
    pub r1: Option<u64>,
    pub r_minus1: Option<u64>,
    pub p_convention: Option<ConventionIn>,
    pub node_self_intersection: Option<u64>,
    /// Largest `-E_0^2` to try.
    pub discover: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WildMode {
    Milnor,
    Chart,
    Discover,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolveIn {
    pub genera: Vec<u64>,
    pub matrix: Vec<Vec<Exact>>,
    pub p_g: Option<u64>,
    #[serde(default)]
    pub rational: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepIn {
    pub dim: u64,
    pub fixed_dims: Vec<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamIn {
    pub filtration: Vec<u64>,
    pub p: Option<u64>,
    pub representation: Option<RepIn>,
    #[serde(default)]
    pub regular: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TameBranchIn {
    pub d: u64,
    pub count: u64,
    pub r_q: u64,
    /// Defaults to `e/d`.
    pub e_q: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TameCoverIn {
    pub e: u64,
    pub g: u64,
    pub g_bar: u64,
    pub branch: Vec<TameBranchIn>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WildBranchIn {
    pub i: u32,
    /// Defaults to the length of `sw_locals`.
    pub count: Option<u64>,
    pub sw_locals: Vec<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrdinaryIn {
    pub gamma: u64,
    pub gamma_bar: u64,
    pub small_orbits: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WildCoverIn {
    pub p: u64,
    pub r: u32,
    pub g: u64,
    pub g_bar: u64,
    pub sw_ext: u64,
    pub branch: Vec<WildBranchIn>,
    pub ordinary: Option<OrdinaryIn>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermsIn {
    pub e: Option<Exact>,
    pub gamma_sq: Option<Exact>,
    pub gamma_dot_omega: Option<Exact>,
    pub art_prime: Option<Exact>,
    pub art: Option<Exact>,
    pub mu: Option<Exact>,
    pub nu: Option<Exact>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalIn {
    pub variant: u8,
    pub terms: TermsIn,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KodairaIn {
    #[serde(rename = "type")]
    pub label: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticNuIn {
    pub c_tame: Exact,
}

// short-lived and never stored in bulk, so the size spread is harmless
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum Payload {
    Graph(GraphIn),
    Ctame(GraphIn),
    Pipeline(GraphIn),
    QuotsingTame(QuotTameIn),
    QuotsingWild(QuotWildIn, WildMode),
    QuotsingResolve(ResolveIn),
    Ramification(RamIn),
    BccTameGood(TameCoverIn),
    BccWildWeak(WildCoverIn),
    BccEval(EvalIn),
    Kodaira(KodairaLabel),
    EllipticNu(EllipticNuIn),
}

fn typed<T: DeserializeOwned>(v: &Value) -> Result<T, String> {
    T::deserialize(v).map_err(|e| e.to_string())
}

fn check_graph(g: &GraphIn) -> Result<(), String> {
    match (&g.kodaira, &g.components) {
        (Some(t), None) => {
            if !g.edges.is_empty() {
                return Err("\"edges\" cannot be combined with \"type\"".into());
            }
            t.parse::<KodairaLabel>().map(|_| ()).map_err(|e| e.to_string())
        }
        (None, Some(_)) => Ok(()),
        (Some(_), Some(_)) => Err("give either \"type\" or \"components\", not both".into()),
        (None, None) => Err("missing \"components\" (or \"type\" for a catalog fiber)".into()),
    }
}

fn wild_mode(w: &QuotWildIn) -> Result<WildMode, String> {
    let milnor = w.e_p.is_some() || w.sw.is_some();
    let chart = w.p.is_some() || w.s.is_some() || w.r1.is_some() || w.r_minus1.is_some();
    match (milnor, chart) {
        (true, false) => {
            if w.e_p.is_none() || w.sw.is_none() {
                return Err("the Milnor form needs both \"e_p\" and \"sw\"".into());
            }
            if w.discover.is_some() || w.node_self_intersection.is_some() || w.p_convention.is_some() {
                return Err("chart options are not valid with \"e_p\"/\"sw\"".into());
            }
            Ok(WildMode::Milnor)
        }
        (false, true) => {
            if w.p.is_none() || w.s.is_none() {
                return Err("a chart needs \"p\" and \"s\"".into());
            }
            let residues = w.r1.is_some() as u8 + w.r_minus1.is_some() as u8;
            match (w.discover.is_some(), residues) {
                (true, 0) if w.node_self_intersection.is_none() => Ok(WildMode::Discover),
                (true, _) => Err("\"discover\" searches residues itself; drop \"r1\", \"r_minus1\" and \"node_self_intersection\"".into()),
                (false, 2) => Ok(WildMode::Chart),
                (false, _) => Err("a chart needs both \"r1\" and \"r_minus1\"".into()),
            }
        }
        (true, true) => Err("mix of Milnor (\"e_p\", \"sw\") and chart (\"p\", \"s\", ...) fields".into()),
        (false, false) => Err("expected \"e_p\" and \"sw\", or \"p\" and \"s\"".into()),
    }
}

/// Schema check for one payload.
pub fn parse_payload(kind: Kind, v: &Value) -> Result<Payload, String> {
    if !v.is_object() {
        return Err("payload must be a JSON object".into());
    }
    Ok(match kind {
        Kind::Graph | Kind::Ctame | Kind::Pipeline => {
            let g: GraphIn = typed(v)?;
            check_graph(&g)?;
            if g.spectral.is_some() && kind != Kind::Ctame {
                return Err("\"spectral\" is only read by ctame".into());
            }
            match kind {
                Kind::Graph => Payload::Graph(g),
                Kind::Ctame => Payload::Ctame(g),
                _ => Payload::Pipeline(g),
            }
        }
        Kind::QuotsingTame => Payload::QuotsingTame(typed(v)?),
        Kind::QuotsingWild => {
            let w: QuotWildIn = typed(v)?;
            let mode = wild_mode(&w)?;
            Payload::QuotsingWild(w, mode)
        }
        Kind::QuotsingResolve => {
            let r: ResolveIn = typed(v)?;
            if r.genera.is_empty() {
                return Err("\"genera\" must be non-empty".into());
            }
            if r.matrix.len() != r.genera.len() || r.matrix.iter().any(|row| row.len() != r.genera.len()) {
                return Err("\"matrix\" must be square with one row per genus".into());
            }
            Payload::QuotsingResolve(r)
        }
        Kind::Ramification => {
            let r: RamIn = typed(v)?;
            if r.representation.is_some() && r.regular {
                return Err("give \"representation\" or \"regular\", not both".into());
            }
            Payload::Ramification(r)
        }
        Kind::BccTameGood => Payload::BccTameGood(typed(v)?),
        Kind::BccWildWeak => Payload::BccWildWeak(typed(v)?),
        Kind::BccEval => {
            let e: EvalIn = typed(v)?;
            if !(1..=3).contains(&e.variant) {
                return Err("\"variant\" must be 1, 2 or 3".into());
            }
            Payload::BccEval(e)
        }
        Kind::Kodaira => {
            let k: KodairaIn = typed(v)?;
            Payload::Kodaira(k.label.parse().map_err(|e: conductor_core::dualgraph::UnknownType| e.to_string())?)
        }
        Kind::EllipticNu => Payload::EllipticNu(typed(v)?),
    })
}
