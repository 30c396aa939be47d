//! JSON schemas for verdicts, certificates and search results.
//!
//! Rationals are written as `"p"` or `"p/q"` strings. Roots carry both their
//! simple-root coefficients and their ambient coordinates. Every document
//! echoes its context, so it can be re-checked on its own.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use ulrich_core::certificates::{verify_bad_pair, BadPairCertificate, SlopeCheck};
use ulrich_core::cohomology::{self, BwbOutcome};
use ulrich_core::rational::{self, Rational};
use ulrich_core::search::{SearchOptions, SearchOutcome};
use ulrich_core::ulrich::{self, Method, UlrichVerdict, Witness};
use ulrich_core::{LieType, NodeSet, ParabolicContext, RootSystem, Weight};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootJson {
    pub label: String,
    pub simple: Vec<i64>,
    pub ambient: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub label: usize,
    pub ambient: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub nodes: Vec<usize>,
    pub polarization: Vec<i64>,
    pub dim: usize,
    pub simple_roots: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntryJson {
    pub root: RootJson,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    NonInteger { root: RootJson, value: String },
    OutOfRange { root: RootJson, value: String },
    Collision { first: RootJson, second: RootJson, value: String },
    MissingValue { twist: i64, degree: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub context: ContextJson,
    pub weight: Vec<i64>,
    pub method: String,
    pub is_ulrich: bool,
    pub table: Vec<PhiEntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeJson {
    pub node: usize,
    pub at_alpha: String,
    pub at_beta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub context: ContextJson,
    pub alpha: RootJson,
    pub beta: RootJson,
    pub s: Vec<usize>,
    pub mu: Vec<i64>,
    pub slope_checks: Vec<SlopeJson>,
    pub gap: String,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneJson {
    pub integrality: u64,
    pub range: u64,
    pub collision: u64,
    pub sum_identity: u64,
    pub bad_pair: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionsJson {
    pub partial: bool,
    pub sum_identity: bool,
    pub bad_pair: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJson {
    pub context: ContextJson,
    pub options: OptionsJson,
    pub node_order: Vec<usize>,
    pub bounds: Vec<i64>,
    pub explored: u64,
    pub pruned_by: PruneJson,
    pub exhaustive: bool,
    /// `nonexistence`, `found` or `incomplete`.
    pub status: String,
    pub ulrich_weights: Vec<Vec<i64>>,
    pub oracle_disagreements: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BwbJson {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    /// The weight actually fed to Borel–Weil–Bott.
    pub effective_weight: Vec<i64>,
    pub singular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominant_rep: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoJson {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    pub ambient_dim: usize,
    pub num_positive_roots: usize,
    pub simple_roots: Vec<NodeJson>,
    pub fundamental_weights: Vec<NodeJson>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub highest_root: RootJson,
    pub positive_roots: Vec<RootJson>,
}

fn strings(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(rational::render).collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    rational::parse(s).ok_or_else(|| CliError::Usage(format!("invalid rational `{s}`")))
}

pub fn root_json(rs: &RootSystem, idx: usize) -> RootJson {
    let r = rs.root(idx);
    RootJson {
        label: rs.root_label(idx),
        simple: r.simple_coords.clone(),
        ambient: strings(r.ambient.coords()),
    }
}

/// Looks a root up by its simple coordinates and checks the ambient ones.
pub fn root_from_json(rs: &RootSystem, r: &RootJson) -> Result<usize> {
    let idx = rs
        .root_index(&r.simple)
        .ok_or_else(|| CliError::Usage(format!("{:?} is not a positive root of {}", r.simple, rs.lie_type())))?;
    if strings(rs.root(idx).ambient.coords()) != r.ambient {
        return Err(CliError::Usage(format!(
            "ambient coordinates of {:?} do not match {}",
            r.simple,
            rs.root(idx).ambient
        )));
    }
    Ok(idx)
}

pub fn node_map(rs: &RootSystem) -> Vec<NodeJson> {
    (1..=rs.rank())
        .map(|label| NodeJson {
            label,
            ambient: strings(rs.simple_root(label).ambient.coords()),
        })
        .collect()
}

pub fn context_json(ctx: &ParabolicContext) -> ContextJson {
    let rs = ctx.root_system();
    ContextJson {
        lie_type: rs.lie_type().to_string(),
        nodes: ctx.nodes().labels(),
        polarization: ctx.polarization().to_vec(),
        dim: ctx.dim(),
        simple_roots: node_map(rs),
    }
}

pub fn context_from_json(c: &ContextJson) -> Result<ParabolicContext> {
    let lt: LieType = c.lie_type.parse()?;
    let rs = Arc::new(RootSystem::build(lt));
    let mut nodes = NodeSet::empty();
    for &l in &c.nodes {
        nodes.insert(l);
    }
    let ctx = ParabolicContext::new(rs, nodes, &c.polarization)?;
    if ctx.nodes().labels() != c.nodes || ctx.dim() != c.dim {
        return Err(CliError::Usage("context echo is inconsistent".into()));
    }
    Ok(ctx)
}

fn witness_json(ctx: &ParabolicContext, lambda: &Weight, w: &Witness) -> WitnessJson {
    let rs = ctx.root_system();
    match w {
        Witness::NonInteger { root, value } => WitnessJson::NonInteger {
            root: root_json(rs, *root),
            value: rational::render(value),
        },
        Witness::OutOfRange { root, value } => WitnessJson::OutOfRange {
            root: root_json(rs, *root),
            value: rational::render(value),
        },
        Witness::Collision { first, second, value } => WitnessJson::Collision {
            first: root_json(rs, *first),
            second: root_json(rs, *second),
            value: rational::render(value),
        },
        Witness::MissingValue { twist } => WitnessJson::MissingValue {
            twist: *twist,
            degree: cohomology::cohomology_of_twist(ctx, lambda, *twist)
                .ok()
                .and_then(|r| r.nonzero_degree),
        },
    }
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Criterion => "criterion",
        Method::Bwb => "bwb",
    }
}

pub fn verdict_json(ctx: &ParabolicContext, lambda: &Weight, v: &UlrichVerdict) -> VerdictJson {
    let rs = ctx.root_system();
    VerdictJson {
        context: context_json(ctx),
        weight: lambda.coords().to_vec(),
        method: method_name(v.method).into(),
        is_ulrich: v.is_ulrich,
        table: v
            .table
            .entries
            .iter()
            .map(|(r, x)| PhiEntryJson {
                root: root_json(rs, *r),
                value: rational::render(x),
            })
            .collect(),
        witness: v.witness.as_ref().map(|w| witness_json(ctx, lambda, w)),
    }
}

/// Recomputes the verdict from the echoed context, weight and method.
/// `true` iff the recomputation reproduces the document exactly.
pub fn reverify_verdict(doc: &VerdictJson) -> Result<bool> {
    let ctx = context_from_json(&doc.context)?;
    let lambda = Weight::new(doc.weight.clone());
    let v = match doc.method.as_str() {
        "criterion" => ulrich::is_ulrich_criterion(&ctx, &lambda)?,
        "bwb" => ulrich::is_ulrich_bwb(&ctx, &lambda)?,
        m => return Err(CliError::Usage(format!("unknown method `{m}`"))),
    };
    Ok(verdict_json(&ctx, &lambda, &v) == *doc)
}

pub fn certificate_json(ctx: &ParabolicContext, cert: &BadPairCertificate, valid: bool) -> CertificateJson {
    let rs = ctx.root_system();
    CertificateJson {
        context: context_json(ctx),
        alpha: root_json(rs, cert.alpha),
        beta: root_json(rs, cert.beta),
        s: cert.s.labels(),
        mu: cert.mu.coords().to_vec(),
        slope_checks: cert
            .slope_checks
            .iter()
            .map(|c| SlopeJson {
                node: c.node,
                at_alpha: rational::render(&c.at_alpha),
                at_beta: rational::render(&c.at_beta),
            })
            .collect(),
        gap: rational::render(&cert.gap),
        valid,
    }
}

/// Parses a certificate without recomputing anything.
pub fn certificate_from_json(doc: &CertificateJson) -> Result<(ParabolicContext, BadPairCertificate)> {
    let ctx = context_from_json(&doc.context)?;
    let rs = ctx.root_system();
    let mut s = NodeSet::empty();
    for &l in &doc.s {
        s.insert(l);
    }
    let slope_checks = doc
        .slope_checks
        .iter()
        .map(|c| {
            Ok(SlopeCheck {
                node: c.node,
                at_alpha: parse_rational(&c.at_alpha)?,
                at_beta: parse_rational(&c.at_beta)?,
            })
        })
        .collect::<Result<_>>()?;
    let cert = BadPairCertificate {
        alpha: root_from_json(rs, &doc.alpha)?,
        beta: root_from_json(rs, &doc.beta)?,
        s,
        mu: Weight::new(doc.mu.clone()),
        slope_checks,
        gap: parse_rational(&doc.gap)?,
    };
    Ok((ctx, cert))
}

/// Re-verifies a certificate from scratch; the `valid` field is ignored.
pub fn reverify_certificate(doc: &CertificateJson) -> Result<bool> {
    let (ctx, cert) = certificate_from_json(doc)?;
    Ok(verify_bad_pair(&ctx, &cert)?)
}

pub fn status(out: &SearchOutcome) -> &'static str {
    if !out.exhaustive {
        "incomplete"
    } else if out.ulrich_weights.is_empty() && out.oracle_disagreements.is_empty() {
        "nonexistence"
    } else {
        "found"
    }
}

pub fn claim(ctx: &ParabolicContext) -> String {
    let b: Vec<String> = ctx.polarization().iter().map(i64::to_string).collect();
    format!(
        "{}/P_{} admits no initialized irreducible homogeneous Ulrich bundle with respect to O(1) with b = ({})",
        ctx.root_system().lie_type(),
        ctx.nodes(),
        b.join(",")
    )
}

pub fn search_json(
    ctx: &ParabolicContext,
    node_order: &[usize],
    options: SearchOptions,
    out: &SearchOutcome,
) -> SearchJson {
    let p = &out.pruned_by;
    let st = status(out);
    SearchJson {
        context: context_json(ctx),
        options: OptionsJson {
            partial: options.partial,
            sum_identity: options.sum_identity,
            bad_pair: options.bad_pair,
        },
        node_order: node_order.to_vec(),
        bounds: out.bounds.upper.clone(),
        explored: out.explored,
        pruned_by: PruneJson {
            integrality: p.integrality,
            range: p.range,
            collision: p.collision,
            sum_identity: p.sum_identity,
            bad_pair: p.bad_pair,
        },
        exhaustive: out.exhaustive,
        status: st.into(),
        ulrich_weights: out.ulrich_weights.iter().map(|w| w.coords().to_vec()).collect(),
        oracle_disagreements: out.oracle_disagreements.iter().map(|w| w.coords().to_vec()).collect(),
        claim: (st == "nonexistence").then(|| claim(ctx)),
    }
}

/// Re-checks every reported Ulrich weight with both decision procedures.
pub fn reverify_search_weights(doc: &SearchJson) -> Result<bool> {
    let ctx = context_from_json(&doc.context)?;
    for w in &doc.ulrich_weights {
        let l = Weight::new(w.clone());
        if !ulrich::is_ulrich_criterion(&ctx, &l)?.is_ulrich || !ulrich::is_ulrich_bwb(&ctx, &l)?.is_ulrich {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn bwb_json(rs: &RootSystem, weight: &Weight, twist: Option<i64>, effective: &Weight, outcome: &BwbOutcome) -> BwbJson {
    let (degree, dominant_rep) = match outcome {
        BwbOutcome::Singular => (None, None),
        BwbOutcome::Regular { index, dominant_rep } => (Some(*index), Some(dominant_rep.coords().to_vec())),
    };
    BwbJson {
        lie_type: rs.lie_type().to_string(),
        weight: weight.coords().to_vec(),
        twist,
        effective_weight: effective.coords().to_vec(),
        singular: outcome.is_singular(),
        degree,
        dominant_rep,
    }
}

pub fn info_json(rs: &RootSystem) -> InfoJson {
    InfoJson {
        lie_type: rs.lie_type().to_string(),
        rank: rs.rank(),
        ambient_dim: rs.ambient_dim(),
        num_positive_roots: rs.num_positive_roots(),
        simple_roots: node_map(rs),
        fundamental_weights: (1..=rs.rank())
            .map(|label| NodeJson {
                label,
                ambient: strings(rs.fundamental_weight(label).coords()),
            })
            .collect(),
        cartan_matrix: rs.cartan_matrix().to_vec(),
        highest_root: root_json(rs, rs.highest_root_index()),
        positive_roots: (0..rs.num_positive_roots()).map(|i| root_json(rs, i)).collect(),
    }
}
