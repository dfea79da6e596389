//! Dispatch of validated payloads to `conductor-core`.

use conductor_core::cover::{
    bcc_formula_eval, bcc_tame_good, bcc_wild_weak, ds_validate, elliptic_nu_p3, rh_validate,
    ConductorReport, FormulaTerms, FormulaVariant, OrdinaryData, TameBranch, TameCoverData,
    WildBranch, WildCoverData,
};
use conductor_core::dualgraph::{
    invariants, kodaira_catalog, validate, Component, GraphFlags, GraphInvariants, KodairaLabel,
    SncdGraph,
};
use conductor_core::exactmath::SymMatrix;
use conductor_core::ramification::{
    regular_representation, swan_artin_rep, swan_extension, RamFiltration, RepFixedDims,
};
use conductor_core::singularity::{
    closed_form_discrepancy, discover_wild_charts, discrepancy_solve, milnor_nu,
    p_cyclic_wild_chart, tame_cyclic, weak_wild_milnor, CyclicSingularity, PConvention,
    ResolutionDatum, WeakWildSingularity,
};
use conductor_core::tame::{c_tame, diagnostics, pipeline_cor_main, SpectralInput};
use serde_json::{json, Map, Value};

use crate::exact::{q, qs};
use crate::payload::{
    EvalIn, GraphIn, Payload, QuotTameIn, QuotWildIn, RamIn, ResolveIn, TameCoverIn, WildCoverIn,
    WildMode,
};

pub struct Outcome {
    pub result: Value,
    pub provenance: Vec<String>,
}

type Run = Result<Outcome, String>;

fn done(result: Value, provenance: &[&str]) -> Run {
    Ok(Outcome {
        result,
        provenance: provenance.iter().map(|s| s.to_string()).collect(),
    })
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run_payload(p: &Payload) -> Run {
    match p {
        Payload::Graph(g) => run_graph(g),
        Payload::Ctame(g) => run_ctame(g),
        Payload::Pipeline(g) => run_pipeline(g),
        Payload::QuotsingTame(t) => run_quot_tame(t),
        Payload::QuotsingWild(w, mode) => run_quot_wild(w, *mode),
        Payload::QuotsingResolve(r) => run_resolve(r),
        Payload::Ramification(r) => run_ramification(r),
        Payload::BccTameGood(t) => run_bcc_tame(t),
        Payload::BccWildWeak(w) => run_bcc_wild(w),
        Payload::BccEval(e) => run_eval(e),
        Payload::Kodaira(l) => run_kodaira(*l),
        Payload::EllipticNu(e) => done(
            json!({ "nu": q(&elliptic_nu_p3(&e.c_tame.0)) }),
            &["nu_Q = 12 c_tame - 2"],
        ),
    }
}

pub fn build_graph(g: &GraphIn) -> Result<SncdGraph, String> {
    let flags = g.flags.clone().unwrap_or_default();
    let flags = GraphFlags {
        index_one: flags.index_one,
        expected_genus: flags.expected_genus,
    };
    match (&g.kodaira, &g.components) {
        (Some(t), _) => {
            let label: KodairaLabel = t.parse().map_err(err)?;
            let graph = kodaira_catalog(label).map_err(err)?;
            Ok(match &g.flags {
                Some(_) => graph.with_flags(flags),
                None => graph,
            })
        }
        (None, Some(comps)) => {
            let comps = comps
                .iter()
                .map(|c| Component::new(c.id.clone(), c.n, c.g))
                .collect();
            SncdGraph::new(comps, &g.edges, flags).map_err(err)
        }
        (None, None) => Err("graph payload has neither type nor components".into()),
    }
}

/// The graph in payload form, so that output can be fed back as input.
pub fn graph_json(g: &SncdGraph) -> Value {
    let comps = g.components();
    json!({
        "components": comps
            .iter()
            .map(|c| json!({ "id": c.id, "n": c.multiplicity, "g": c.genus }))
            .collect::<Vec<_>>(),
        "edges": g
            .edges()
            .iter()
            .map(|&(a, b)| json!([comps[a].id, comps[b].id]))
            .collect::<Vec<_>>(),
        "flags": {
            "index_one": g.flags().index_one,
            "expected_genus": g.flags().expected_genus,
        },
    })
}

fn invariants_json(inv: &GraphInvariants) -> Value {
    let self_int: Map<String, Value> = inv
        .self_intersections
        .iter()
        .map(|(id, s)| (id.clone(), json!(s)))
        .collect();
    json!({
        "V": inv.v,
        "E": inv.e,
        "b1": inv.b1,
        "R": q(&inv.r),
        "R_minus_E": q(&inv.r_minus_e()),
        "chi_generic": inv.chi_generic,
        "chi_special": inv.chi_special,
        "genus": inv.g,
        "a": inv.a,
        "t": inv.t,
        "u": inv.u,
        "art_tame": inv.art_tame,
        "self_intersections": self_int,
    })
}

const INVARIANT_RULES: &[&str] = &[
    "E_i^2 = -(1/n_i) sum_j n_j (E_i . E_j)",
    "R = (1/3) sum_nodes (n^2 + n'^2 + gcd(n,n')^2)/(n n')",
    "b1 = 1 - V + E; g = 1 - chi_generic/2; u = g - a - t",
    "Art_tame = chi_generic - chi_special = -2u - E",
];

fn run_graph(g: &GraphIn) -> Run {
    let graph = build_graph(g)?;
    let diags = validate(&graph);
    let diag_json: Vec<Value> = diags
        .iter()
        .map(|d| json!({ "rule": d.rule(), "message": d.to_string() }))
        .collect();
    let mut out = json!({ "valid": diags.is_empty(), "diagnostics": diag_json });
    if diags.is_empty() {
        out["invariants"] = invariants_json(&invariants(&graph).map_err(err)?);
    }
    done(out, INVARIANT_RULES)
}

fn run_ctame(g: &GraphIn) -> Run {
    let graph = build_graph(g)?;
    let c = c_tame(&graph).map_err(err)?;
    let spectral = g.spectral.as_ref().map(|s| SpectralInput {
        mu: s.mu.0.clone(),
        original_components: s.original_components,
    });
    let d = diagnostics(&graph, spectral.as_ref()).map_err(err)?;
    let mut out = json!({
        "c_tame": q(&c),
        "R_minus_E": q(&d.r_minus_e),
        "mult_reduction_possible": d.mult_reduction_possible,
        "negative_c_tame": d.negative_c_tame,
    });
    let mut prov = vec![
        "c_tame = -(Art_tame + R)/4",
        "c_tame = u/2 - (R - E)/4",
        "R = E is necessary for potential multiplicative reduction",
    ];
    if let Some(s) = &d.spectral {
        out["spectral"] = json!({ "mu": q(&s.mu), "bound": q(&s.bound), "holds": s.holds });
        prov.push("mu < sum_nodes (w - 3) + 3(t + n - 1), w the node weight, n the components before resolution");
    }
    done(out, &prov)
}

fn run_pipeline(g: &GraphIn) -> Run {
    let graph = build_graph(g)?;
    let t = pipeline_cor_main(&graph).map_err(err)?;
    done(
        json!({
            "gamma_sq_over_e": q(&t.gamma_sq_over_e),
            "art_prime_over_e": q(&t.art_prime_over_e),
            "art_base": t.art_base,
            "c": q(&t.c_result),
        }),
        &[
            "-12c = e^-1(Gamma^2 + 2 Gamma.omega) - e^-1 Art' + Art_tame",
            "e^-1(Gamma^2 + 2 Gamma.omega) = 2E - sum E_i^2 - 2 sum chi(E_i) + 2 chi_generic",
            "e^-1 Art' = -sum_nodes gcd(n,n')^2/(n n')",
            "agrees with c_tame = -(Art_tame + R)/4",
        ],
    )
}

fn run_quot_tame(t: &QuotTameIn) -> Run {
    let s = CyclicSingularity::new(t.e, t.r).map_err(err)?;
    let tc = tame_cyclic(&s).map_err(err)?;
    let conv: PConvention = t.p_convention.map(Into::into).unwrap_or_default();
    let solver = discrepancy_solve(&tc.chain).map_err(err)?;
    let closed = closed_form_discrepancy(&s, conv);
    let hj = s.expansion();
    done(
        json!({
            "e": t.e,
            "r": t.r,
            "chain": hj.terms,
            "remainders": hj.remainders,
            "mu": q(&tc.mu_closed),
            "mu_tilde": q(&tc.mu_tilde),
            "mu_solver": q(&tc.mu_solver),
            "discrepancy": qs(&solver.coeffs),
            "gamma_sq": q(&solver.gamma_sq),
            "p_convention": format!("{conv:?}").to_lowercase(),
            "discrepancy_closed_form": qs(&closed),
            "closed_form_matches_solver": closed == solver.coeffs,
        }),
        &[
            "e/r = a_1 - 1/(a_2 - ...), E_i^2 = -a_i",
            "mu = 3l - ([a_1..a_l]^-1 + sum a_i + [a_l..a_1]^-1) + 2(1 - 1/e)",
            "mu_tilde = mu - 2(1 - 1/e)",
            "mu = Gamma^2 + V from the adjunction system",
            "k_i = (P_i + r_i)/e - 1",
        ],
    )
}

fn run_quot_wild(w: &QuotWildIn, mode: WildMode) -> Run {
    let conv: PConvention = w.p_convention.map(Into::into).unwrap_or_default();
    match mode {
        WildMode::Milnor => {
            let s = WeakWildSingularity::new(w.e_p.unwrap(), w.sw.unwrap()).map_err(err)?;
            done(
                json!({ "p": s.p(), "e_p": s.e_p(), "sw": s.sw(), "mu": q(&weak_wild_milnor(&s)) }),
                &["mu = 4(1 - 1/e_P + sw/e_P)"],
            )
        }
        WildMode::Chart => {
            let c = p_cyclic_wild_chart(w.p.unwrap(), w.s.unwrap(), w.r1.unwrap(), w.r_minus1.unwrap(), conv)
                .map_err(err)?;
            let mut out = json!({
                "p": c.p,
                "s": c.s,
                "alpha": c.alpha,
                "lambda": c.lambda,
                "arm_r1": c.arm_plus.terms,
                "arm_r_minus1": c.arm_minus.terms,
                "k0": q(&c.k0),
                "y": qs(&c.y),
                "k_r1": qs(&c.k_plus),
                "k_r_minus1": qs(&c.k_minus),
                "mu_target": q(&c.mu_target),
                "p_convention": format!("{conv:?}").to_lowercase(),
            });
            if let Some(b) = w.node_self_intersection {
                match c.check(b).map_err(err)? {
                    Some(cand) => {
                        out["check"] = json!({
                            "node_self_intersection": -(b as i64),
                            "coeffs_match": cand.coeffs_match,
                            "mu_solver": q(&cand.mu_solver),
                            "mu_matches_target": cand.mu_matches_target,
                        })
                    }
                    None => return Err(format!("E_0^2 = -{b} gives a configuration that is not negative definite")),
                }
            }
            done(
                out,
                &[
                    "alpha = p s, lambda = p(1 - alpha) + 2 alpha",
                    "x_i = (p P_i + lambda r_i)/p^2, k_i = x_i - 1",
                    "y_j = ((alpha - j + 1)/alpha) k_0",
                    "mu_target = 4 s (1 - 1/p)",
                ],
            )
        }
        WildMode::Discover => {
            let found = discover_wild_charts(w.p.unwrap(), w.s.unwrap(), w.discover.unwrap(), conv)
                .map_err(err)?;
            let rows: Vec<Value> = found
                .iter()
                .map(|c| {
                    json!({
                        "r1": c.r1,
                        "r_minus1": c.r_minus1,
                        "node_self_intersection": -(c.node_self_intersection as i64),
                        "coeffs_match": c.coeffs_match,
                        "mu_solver": q(&c.mu_solver),
                        "mu_matches_target": c.mu_matches_target,
                    })
                })
                .collect();
            done(
                json!({ "candidates": rows }),
                &["search over residue pairs and node self-intersections, checked by the adjunction solver"],
            )
        }
    }
}

fn run_resolve(r: &ResolveIn) -> Run {
    let rows = r
        .matrix
        .iter()
        .map(|row| row.iter().map(|x| x.0.clone()).collect())
        .collect();
    let m = SymMatrix::from_rows(rows).map_err(err)?;
    let datum = ResolutionDatum::new(r.genera.clone(), m, r.p_g, r.rational).map_err(err)?;
    let d = discrepancy_solve(&datum).map_err(err)?;
    let mn = milnor_nu(&datum).map_err(err)?;
    done(
        json!({
            "discrepancy": qs(&d.coeffs),
            "gamma_sq": q(&d.gamma_sq),
            "b1": datum.b1(),
            "p_g": datum.p_g(),
            "mu": q(&mn.mu),
            "nu": q(&mn.nu),
        }),
        &[
            "Gamma . E_i = 2 g_i - 2 - E_i^2",
            "nu = Gamma^2 - sum 2 g_i - b1 + V",
            "mu = 12 p_g + nu",
        ],
    )
}

fn run_ramification(r: &RamIn) -> Run {
    let f = RamFiltration::new(r.filtration.clone(), r.p).map_err(err)?;
    let ext = swan_extension(&f);
    let mut out = json!({
        "order": f.order(),
        "p": f.residue_characteristic(),
        "tame": f.is_tame(),
        "sw": ext.sw,
        "different_exponent": ext.different_exponent,
    });
    let mut prov = vec!["sw = sum_{i>=1} (|G_i| - 1)", "different exponent = e - 1 + sw"];
    let rep = match (&r.representation, r.regular) {
        (Some(rep), _) => Some(RepFixedDims {
            dim: rep.dim,
            fixed_dims: rep.fixed_dims.clone(),
        }),
        (None, true) => Some(regular_representation(&f)),
        (None, false) => None,
    };
    if let Some(rep) = rep {
        let sa = swan_artin_rep(&f, &rep).map_err(err)?;
        out["representation"] = json!({ "swan": q(&sa.swan), "artin": q(&sa.artin) });
        prov.push("Sw(V) = sum_{i>=1} (|G_i|/|G_0|) dim(V/V^{G_i})");
        prov.push("Art(V) = dim V - dim V^G + Sw(V)");
    }
    done(out, &prov)
}

fn report_json(rep: &ConductorReport) -> Value {
    let terms: Map<String, Value> = rep
        .terms
        .iter()
        .map(|(k, t)| (k.clone(), json!({ "value": q(&t.value), "provenance": t.provenance })))
        .collect();
    json!({
        "c_tame": q(&rep.c_tame),
        "c_wild": q(&rep.c_wild),
        "c": q(&rep.c_total),
        "u": rep.u,
        "terms": terms,
    })
}

fn tame_cover(t: &TameCoverIn) -> Result<TameCoverData, String> {
    let mut branch = Vec::with_capacity(t.branch.len());
    for b in &t.branch {
        if b.d == 0 || !t.e.is_multiple_of(b.d) {
            return Err(format!("orbit size d = {} does not divide e = {}", b.d, t.e));
        }
        let e_q = b.e_q.unwrap_or(t.e / b.d);
        branch.push(TameBranch {
            d: b.d,
            count: b.count,
            sing: CyclicSingularity::new(e_q, b.r_q).map_err(err)?,
        });
    }
    TameCoverData::new(t.e, t.g, t.g_bar, branch).map_err(err)
}

fn run_bcc_tame(t: &TameCoverIn) -> Run {
    let data = tame_cover(t)?;
    let rh: Vec<String> = rh_validate(&data).iter().map(|d| d.to_string()).collect();
    if !rh.is_empty() {
        return Err(rh.join("; "));
    }
    let rep = bcc_tame_good(&data).map_err(err)?;
    done(
        report_json(&rep),
        &[
            "2g - 2 = e(2 g_bar - 2) + sum m_d (e - d)",
            "c = u/2 + (1/12) sum_Q (mu_Q - 2(1 - 1/e_Q))",
            "c = u/2 + (1/12) sum_Q mu_tilde_Q",
            "-12c = 2 chi (1 - 1/e) + chi - chi_bar - sum mu_Q",
        ],
    )
}

fn wild_cover(w: &WildCoverIn) -> Result<WildCoverData, String> {
    let branch = w
        .branch
        .iter()
        .map(|b| WildBranch {
            i: b.i,
            count: b.count.unwrap_or(b.sw_locals.len() as u64),
            sw_locals: b.sw_locals.clone(),
        })
        .collect();
    let ordinary = w.ordinary.as_ref().map(|o| OrdinaryData {
        gamma: o.gamma,
        gamma_bar: o.gamma_bar,
        small_orbits: o.small_orbits.clone(),
    });
    WildCoverData::new(w.p, w.r, w.g, w.g_bar, w.sw_ext, branch, ordinary).map_err(err)
}

fn run_bcc_wild(w: &WildCoverIn) -> Run {
    let data = wild_cover(w)?;
    let rh: Vec<String> = rh_validate(&data).iter().map(|d| d.to_string()).collect();
    if !rh.is_empty() {
        return Err(rh.join("; "));
    }
    let rep = bcc_wild_weak(&data).map_err(err)?;
    let mut out = report_json(&rep);
    let mut prov = vec![
        "2g - 2 = p^r (2 g_bar - 2) + sum 2 m_i (p^r - p^i)",
        "Sw(C) = 2 sum sw_Q/p^(r-i) - sw (chi_bar - 2 sum m_i (1 - 1/p^(r-i)))",
        "c_tame = u/2, c_wild = Sw(C)/4",
        "-12c = [2 chi (1 - 1/e) + 2 (chi/e) sw] + [chi - chi_bar - Sw(C)] - sum mu_Q",
    ];
    if data.ordinary().is_some() {
        let ds = ds_validate(&data).map_err(err)?;
        out["deuring_shafarevich"] = json!({
            "holds": ds.diagnostics.is_empty(),
            "diagnostics": ds.diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "ordinary_weakly_ramified": ds.ordinary_weakly_ramified,
        });
        prov.push("gamma - 1 = |G|(gamma_bar - 1) + sum (|G| - |O_i|)");
    }
    done(out, &prov)
}

fn run_eval(e: &EvalIn) -> Run {
    let variant = FormulaVariant::try_from(e.variant).map_err(err)?;
    let t = &e.terms;
    let get = |x: &Option<crate::exact::Exact>| x.as_ref().map(|v| v.0.clone());
    let terms = FormulaTerms {
        e: get(&t.e),
        gamma_sq: get(&t.gamma_sq),
        gamma_dot_omega: get(&t.gamma_dot_omega),
        art_prime: get(&t.art_prime),
        art: get(&t.art),
        mu: get(&t.mu),
        nu: get(&t.nu),
    };
    let c = bcc_formula_eval(variant, &terms).map_err(err)?;
    let rule = match variant {
        FormulaVariant::One => "-12c = (1/e)(Gamma^2 + 2 Gamma.omega - Art' + e Art)",
        FormulaVariant::Two => "-12c = (2/e)(Gamma^2 + Gamma.omega - Art') + Art - nu",
        FormulaVariant::Three => "-12c = (2/e) Gamma.omega + Art - mu",
    };
    done(json!({ "variant": e.variant, "c": q(&c) }), &[rule])
}

fn run_kodaira(label: KodairaLabel) -> Run {
    let graph = kodaira_catalog(label).map_err(err)?;
    let inv = invariants(&graph).map_err(err)?;
    let c = c_tame(&graph).map_err(err)?;
    let pipeline = pipeline_cor_main(&graph).map_err(err)?.c_result;
    assert_eq!(c, pipeline);
    let mut prov = vec!["Kodaira fiber drawn as an sncd graph (I_n as an n-cycle, n >= 2)"];
    prov.extend_from_slice(INVARIANT_RULES);
    prov.push("c_tame = u/2 - (R - E)/4, confirmed by the term pipeline");
    done(
        json!({
            "type": label.to_string(),
            "graph": graph_json(&graph),
            "invariants": invariants_json(&inv),
            "c_tame": q(&c),
        }),
        &prov,
    )
}
