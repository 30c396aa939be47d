//! The `ulrich` command line. [`run`] never touches the process: it returns
//! the exit code and the text for stdout and stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use ulrich_core::certificates::{make_certificate, rules_out_family, verify_bad_pair};
use ulrich_core::cohomology::{self, BwbOutcome};
use ulrich_core::rational::render;
use ulrich_core::search::{derive_bounds, SearchOptions, SearchOutcome};
use ulrich_core::ulrich::{self, UlrichVerdict, Witness};
use ulrich_core::{LieType, NodeSet, ParabolicContext, RootSystem, Weight};

use crate::error::{CliError, Result};
use crate::json::{self, CertificateJson};
use crate::parallel;
use crate::parse::{self, IntList};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ulrich",
    version,
    about = "Exact Ulrich checks and exhaustive searches for homogeneous bundles on G/P"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Criterion,
    Bwb,
    Both,
}

#[derive(Args, Debug)]
pub struct ContextArgs {
    /// Lie type, e.g. E6, F4, G2, A3
    #[arg(long = "type", value_parser = parse::lie_type)]
    pub lie_type: LieType,
    /// Node set J, e.g. 1,2
    #[arg(long, value_parser = parse::nodes)]
    pub nodes: NodeSet,
    /// Coefficients b_j of O(1), one per node of J in increasing order [default: all 1]
    #[arg(long, value_parser = parse::int_list, allow_hyphen_values = true)]
    pub polarization: Option<IntList>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root data of a simple Lie algebra
    Info {
        #[arg(long = "type", value_parser = parse::lie_type)]
        lie_type: LieType,
    },
    /// Decide whether E_λ is Ulrich
    Check {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Highest weight in fundamental-weight coordinates
        #[arg(long, value_parser = parse::int_list, allow_hyphen_values = true)]
        weight: IntList,
        #[arg(long, value_enum, default_value_t = MethodArg::Criterion)]
        method: MethodArg,
        /// Also write the JSON verdict to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Borel–Weil–Bott for a weight, or for the twist E_λ(-t) on G/P_J
    Bwb {
        #[arg(long = "type", value_parser = parse::lie_type)]
        lie_type: LieType,
        #[arg(long, value_parser = parse::int_list, allow_hyphen_values = true)]
        weight: IntList,
        #[arg(long, value_parser = parse::nodes, requires = "twist")]
        nodes: Option<NodeSet>,
        #[arg(long, value_parser = parse::int_list, requires = "nodes", allow_hyphen_values = true)]
        polarization: Option<IntList>,
        #[arg(long, requires = "nodes", allow_hyphen_values = true)]
        twist: Option<i64>,
    },
    /// Bad-pair certificates
    Badpair {
        #[command(subcommand)]
        action: BadpairAction,
    },
    /// Exhaustive search of the bounded weight box
    Search(SearchArgs),
}

#[derive(Subcommand, Debug)]
pub enum BadpairAction {
    /// Verify a certificate given on the command line or as a JSON file
    Verify(VerifyArgs),
    /// Look for a bad pair ruling out λ (and every λ' agreeing off --free)
    Find {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_parser = parse::int_list, allow_hyphen_values = true)]
        weight: IntList,
        /// Nodes whose coefficients may vary
        #[arg(long, value_parser = parse::nodes)]
        free: Option<NodeSet>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate JSON written by `badpair find --out` or `badpair verify --out`
    #[arg(long, conflicts_with_all = ["lie_type", "nodes", "alpha", "beta", "s", "mu"])]
    pub cert: Option<PathBuf>,
    #[arg(long = "type", value_parser = parse::lie_type, required_unless_present = "cert")]
    pub lie_type: Option<LieType>,
    #[arg(long, value_parser = parse::nodes, required_unless_present = "cert")]
    pub nodes: Option<NodeSet>,
    #[arg(long, value_parser = parse::int_list, allow_hyphen_values = true)]
    pub polarization: Option<IntList>,
    /// First root, in simple-root coordinates
    #[arg(long, value_parser = parse::int_list, required_unless_present = "cert")]
    pub alpha: Option<IntList>,
    /// Second root, in simple-root coordinates
    #[arg(long, value_parser = parse::int_list, required_unless_present = "cert")]
    pub beta: Option<IntList>,
    /// The node set S
    #[arg(long, value_parser = parse::nodes, required_unless_present = "cert")]
    pub s: Option<NodeSet>,
    /// μ, supported on S
    #[arg(long, value_parser = parse::int_list, required_unless_present = "cert")]
    pub mu: Option<IntList>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long = "type", value_parser = parse::lie_type)]
    pub lie_type: LieType,
    #[arg(long, value_parser = parse::nodes, required_unless_present = "min_size")]
    pub nodes: Option<NodeSet>,
    /// Search every J with |J| at least this size (minimal polarization)
    #[arg(long, conflicts_with_all = ["nodes", "polarization"])]
    pub min_size: Option<usize>,
    #[arg(long, value_parser = parse::int_list, allow_hyphen_values = true)]
    pub polarization: Option<IntList>,
    /// Visit the whole box and decide every point with the exact criterion
    #[arg(long)]
    pub no_prune: bool,
    /// Wall-clock budget per search, in seconds
    #[arg(long, env = "ULRICH_BUDGET_SECONDS")]
    pub budget_seconds: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(e) => Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let f = cli.format;
    match &cli.command {
        Command::Info { lie_type } => Ok((EXIT_OK, info(&RootSystem::build(*lie_type), f)?)),
        Command::Check { ctx, weight, method, out } => {
            let c = context(ctx.lie_type, ctx.nodes, ctx.polarization.as_ref())?;
            let lambda = weight_for(&c, weight)?;
            check(&c, &lambda, *method, out.as_deref(), f).map(|s| (EXIT_OK, s))
        }
        Command::Bwb { lie_type, weight, nodes, polarization, twist } => {
            bwb(*lie_type, weight, *nodes, polarization.as_ref(), *twist, f).map(|s| (EXIT_OK, s))
        }
        Command::Badpair { action: BadpairAction::Verify(args) } => {
            badpair_verify(args, f).map(|s| (EXIT_OK, s))
        }
        Command::Badpair { action: BadpairAction::Find { ctx, weight, free, out } } => {
            let c = context(ctx.lie_type, ctx.nodes, ctx.polarization.as_ref())?;
            let lambda = weight_for(&c, weight)?;
            badpair_find(&c, &lambda, free.unwrap_or_default(), out.as_deref(), f).map(|s| (EXIT_OK, s))
        }
        Command::Search(args) => search(args, f),
    }
}

pub fn context(lt: LieType, nodes: NodeSet, b: Option<&IntList>) -> Result<ParabolicContext> {
    let rs = Arc::new(RootSystem::build(lt));
    let c = match b {
        Some(b) => ParabolicContext::new(rs, nodes, &b.0)?,
        None => ParabolicContext::minimal(rs, nodes)?,
    };
    Ok(c)
}

fn weight_for(c: &ParabolicContext, w: &IntList) -> Result<Weight> {
    if w.0.len() != c.rank() {
        return Err(CliError::Usage(format!(
            "weight has {} coordinates but {} has rank {}",
            w.0.len(),
            c.root_system().lie_type(),
            c.rank()
        )));
    }
    Ok(Weight::new(w.0.clone()))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn write_file<T: Serialize>(path: &Path, v: &T) -> Result<()> {
    std::fs::write(path, to_json(v)?).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn header(c: &ParabolicContext) -> String {
    let b: Vec<String> = c.polarization().iter().map(i64::to_string).collect();
    format!(
        "{}/P_{}  b = ({})  dim {}\n",
        c.root_system().lie_type(),
        c.nodes(),
        b.join(","),
        c.dim()
    )
}

fn root_name(rs: &RootSystem, idx: usize) -> String {
    rs.root_label(idx)
}

fn info(rs: &RootSystem, f: Format) -> Result<String> {
    if f == Format::Json {
        return to_json(&json::info_json(rs));
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: rank {}, ambient dimension {}, {} positive roots",
        rs.lie_type(),
        rs.rank(),
        rs.ambient_dim(),
        rs.num_positive_roots()
    );
    let hr = rs.highest_root_index();
    let _ = writeln!(s, "highest root: {} = {}", root_name(rs, hr), rs.root(hr).ambient);
    let _ = writeln!(s, "node  simple root α_i");
    for i in 1..=rs.rank() {
        let _ = writeln!(s, "{i:>4}  {}", rs.simple_root(i).ambient);
    }
    let _ = writeln!(s, "node  fundamental weight ϖ_i");
    for i in 1..=rs.rank() {
        let _ = writeln!(s, "{i:>4}  {}", rs.fundamental_weight(i));
    }
    let _ = writeln!(s, "Cartan matrix <α_i, α_j^∨>:");
    for row in rs.cartan_matrix() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(s, "  {}", cells.join(""));
    }
    Ok(s)
}

fn witness_line(c: &ParabolicContext, lambda: &Weight, w: &Witness) -> String {
    let rs = c.root_system();
    match w {
        Witness::NonInteger { root, value } => {
            format!("not Ulrich: φ({})={} is not an integer", root_name(rs, *root), render(value))
        }
        Witness::OutOfRange { root, value } => format!(
            "not Ulrich: φ({})={} lies outside [1, {}]",
            root_name(rs, *root),
            render(value),
            c.dim()
        ),
        Witness::Collision { first, second, value } => format!(
            "not Ulrich: collision φ({})=φ({})={}",
            root_name(rs, *first),
            root_name(rs, *second),
            render(value)
        ),
        Witness::MissingValue { twist } => {
            let degree = cohomology::cohomology_of_twist(c, lambda, *twist)
                .ok()
                .and_then(|r| r.nonzero_degree);
            match degree {
                Some(d) => format!("not Ulrich: H^{d}(E_λ(-{twist})) ≠ 0"),
                None => format!("not Ulrich: E_λ(-{twist}) is not acyclic"),
            }
        }
    }
}

fn verdict_text(c: &ParabolicContext, lambda: &Weight, v: &UlrichVerdict) -> String {
    let rs = c.root_system();
    let mut s = String::new();
    let _ = writeln!(s, "method: {}", json::method_name(v.method));
    match &v.witness {
        None => {
            let _ = writeln!(s, "Ulrich: φ is a bijection onto {{1, …, {}}}", c.dim());
        }
        Some(w) => {
            let _ = writeln!(s, "{}", witness_line(c, lambda, w));
        }
    }
    let rows: Vec<(String, String, String)> = v
        .table
        .entries
        .iter()
        .map(|(r, x)| (root_name(rs, *r), rs.root(*r).ambient.to_string(), render(x)))
        .collect();
    let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0).max(4);
    let w1 = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0).max(7);
    let _ = writeln!(s, "  {:<w0$}  {:<w1$}  φ", "root", "ambient");
    for (a, b, x) in rows {
        let _ = writeln!(s, "  {a:<w0$}  {b:<w1$}  {x}");
    }
    s
}

fn check(c: &ParabolicContext, lambda: &Weight, method: MethodArg, out: Option<&Path>, f: Format) -> Result<String> {
    let verdicts: Vec<UlrichVerdict> = match method {
        MethodArg::Criterion => vec![ulrich::is_ulrich_criterion(c, lambda)?],
        MethodArg::Bwb => vec![ulrich::is_ulrich_bwb(c, lambda)?],
        MethodArg::Both => vec![
            ulrich::is_ulrich_criterion(c, lambda)?,
            ulrich::is_ulrich_bwb(c, lambda)?,
        ],
    };
    let docs: Vec<json::VerdictJson> = verdicts.iter().map(|v| json::verdict_json(c, lambda, v)).collect();
    #[derive(Serialize)]
    struct Both<'a> {
        agree: bool,
        criterion: &'a json::VerdictJson,
        bwb: &'a json::VerdictJson,
    }
    let agree = verdicts.iter().all(|v| v.is_ulrich == verdicts[0].is_ulrich);
    let doc = if docs.len() == 2 {
        serde_json::to_value(Both { agree, criterion: &docs[0], bwb: &docs[1] })?
    } else {
        serde_json::to_value(&docs[0])?
    };
    if let Some(p) = out {
        write_file(p, &doc)?;
    }
    if f == Format::Json {
        return to_json(&doc);
    }
    let mut s = header(c);
    let _ = writeln!(s, "λ = {lambda}");
    for v in &verdicts {
        s.push_str(&verdict_text(c, lambda, v));
    }
    if verdicts.len() == 2 {
        let _ = writeln!(
            s,
            "{}",
            if agree { "criterion and cohomology agree" } else { "WARNING: criterion and cohomology disagree" }
        );
    }
    Ok(s)
}

fn bwb(
    lt: LieType,
    weight: &IntList,
    nodes: Option<NodeSet>,
    b: Option<&IntList>,
    twist: Option<i64>,
    f: Format,
) -> Result<String> {
    let rs = Arc::new(RootSystem::build(lt));
    if weight.0.len() != rs.rank() {
        return Err(CliError::Usage(format!(
            "weight has {} coordinates but {lt} has rank {}",
            weight.0.len(),
            rs.rank()
        )));
    }
    let w = Weight::new(weight.0.clone());
    let (effective, outcome) = match (nodes, twist) {
        (Some(n), Some(t)) => {
            let c = context(lt, n, b)?;
            let report = cohomology::cohomology_of_twist(&c, &w, t)?;
            (w.sub(&c.pol_weight().scale(t)), report.outcome)
        }
        _ => (w.clone(), cohomology::bwb(&rs, &w)),
    };
    if f == Format::Json {
        return to_json(&json::bwb_json(&rs, &w, twist, &effective, &outcome));
    }
    let mut s = format!("{lt}  weight {effective}");
    if let Some(t) = twist {
        let _ = write!(s, "  (E_λ(-{t}) for λ = {w})");
    }
    s.push('\n');
    match outcome {
        BwbOutcome::Singular => s.push_str("singular: all cohomology vanishes\n"),
        BwbOutcome::Regular { index, dominant_rep } => {
            let _ = writeln!(s, "regular of index {index}: H^{index} = V{dominant_rep}, all other H^i = 0");
        }
    }
    Ok(s)
}

fn cert_text(c: &ParabolicContext, cert: &ulrich_core::certificates::BadPairCertificate, valid: bool) -> String {
    let rs = c.root_system();
    let mut s = header(c);
    let _ = writeln!(s, "α = {} = {}", root_name(rs, cert.alpha), rs.root(cert.alpha).ambient);
    let _ = writeln!(s, "β = {} = {}", root_name(rs, cert.beta), rs.root(cert.beta).ambient);
    let _ = writeln!(s, "S = {}  μ = {}", cert.s, cert.mu);
    for chk in &cert.slope_checks {
        let mark = if chk.at_alpha == chk.at_beta { "=" } else { "≠" };
        let _ = writeln!(
            s,
            "  node {}: slope {} {mark} {}",
            chk.node,
            render(&chk.at_alpha),
            render(&chk.at_beta)
        );
    }
    let _ = writeln!(s, "gap φ_μ(α) - φ_μ(β) = {}", render(&cert.gap));
    let _ = writeln!(s, "{}", if valid { "valid bad pair" } else { "NOT a bad pair" });
    s
}

fn root_by_simple(c: &ParabolicContext, coords: &IntList) -> Result<usize> {
    c.root_system().root_index(&coords.0).ok_or_else(|| {
        CliError::Usage(format!(
            "{:?} is not a positive root of {}",
            coords.0,
            c.root_system().lie_type()
        ))
    })
}

fn badpair_verify(args: &VerifyArgs, f: Format) -> Result<String> {
    let (c, cert, valid) = match &args.cert {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let doc: CertificateJson = serde_json::from_str(&text)?;
            let (c, cert) = json::certificate_from_json(&doc)?;
            let valid = verify_bad_pair(&c, &cert)?;
            (c, cert, valid)
        }
        None => {
            let missing = || CliError::Usage("missing certificate arguments".into());
            let c = context(
                args.lie_type.ok_or_else(missing)?,
                args.nodes.ok_or_else(missing)?,
                args.polarization.as_ref(),
            )?;
            let alpha = root_by_simple(&c, args.alpha.as_ref().ok_or_else(missing)?)?;
            let beta = root_by_simple(&c, args.beta.as_ref().ok_or_else(missing)?)?;
            let mu = weight_for(&c, args.mu.as_ref().ok_or_else(missing)?)?;
            let cert = make_certificate(&c, alpha, beta, args.s.ok_or_else(missing)?, &mu)?;
            let valid = verify_bad_pair(&c, &cert)?;
            (c, cert, valid)
        }
    };
    let doc = json::certificate_json(&c, &cert, valid);
    if let Some(p) = &args.out {
        write_file(p, &doc)?;
    }
    match f {
        Format::Json => to_json(&doc),
        Format::Human => Ok(cert_text(&c, &cert, valid)),
    }
}

fn badpair_find(c: &ParabolicContext, lambda: &Weight, free: NodeSet, out: Option<&Path>, f: Format) -> Result<String> {
    free.validate(c.rank())?;
    let found = rules_out_family(c, lambda, free)?;
    let doc = found.as_ref().map(|cert| json::certificate_json(c, cert, true));
    if let (Some(p), Some(d)) = (out, &doc) {
        write_file(p, d)?;
    }
    match (f, found) {
        (Format::Json, _) => to_json(&doc),
        (Format::Human, Some(cert)) => Ok(cert_text(c, &cert, true)),
        (Format::Human, None) => Ok(format!("{}λ = {lambda}\nno bad pair found\n", header(c))),
    }
}

fn search_text(c: &ParabolicContext, order: &[usize], out: &SearchOutcome) -> String {
    let mut s = header(c);
    let bounds: Vec<String> = out
        .bounds
        .upper
        .iter()
        .enumerate()
        .map(|(i, u)| format!("a_{} ≤ {u}", i + 1))
        .collect();
    let _ = writeln!(s, "box: {}  ({} points)", bounds.join(", "), out.bounds.volume());
    let order: Vec<String> = order.iter().map(usize::to_string).collect();
    let _ = writeln!(s, "node order: {}", order.join(","));
    let p = &out.pruned_by;
    let _ = writeln!(s, "explored: {}", out.explored);
    let _ = writeln!(
        s,
        "pruned: integrality {}, range {}, collision {}, sum identity {}, bad pair {}",
        p.integrality, p.range, p.collision, p.sum_identity, p.bad_pair
    );
    for w in &out.ulrich_weights {
        let _ = writeln!(s, "Ulrich: λ = {w}");
    }
    for w in &out.oracle_disagreements {
        let _ = writeln!(s, "ORACLE DISAGREEMENT at λ = {w}");
    }
    let _ = match json::status(out) {
        "nonexistence" => writeln!(s, "result: nonexistence. {}", json::claim(c)),
        "incomplete" => writeln!(s, "result: incomplete (budget exceeded)"),
        _ => writeln!(s, "result: {} Ulrich weight(s) found", out.ulrich_weights.len()),
    };
    s
}

fn search(args: &SearchArgs, f: Format) -> Result<(i32, String)> {
    let options = if args.no_prune { SearchOptions::NONE } else { SearchOptions::ALL };
    let budget = args.budget_seconds.map(Duration::from_secs);
    let contexts: Vec<ParabolicContext> = match (args.nodes, args.min_size) {
        (Some(n), _) => vec![context(args.lie_type, n, args.polarization.as_ref())?],
        (None, Some(k)) => {
            let rs = Arc::new(RootSystem::build(args.lie_type));
            NodeSet::all_subsets_by_decreasing_size(rs.rank())
                .into_iter()
                .filter(|s| s.len() >= k.max(1))
                .map(|s| ParabolicContext::minimal(rs.clone(), s))
                .collect::<ulrich_core::Result<_>>()?
        }
        (None, None) => return Err(CliError::Usage("either --nodes or --min-size is required".into())),
    };
    let mut docs = Vec::new();
    let mut text = String::new();
    let mut code = EXIT_OK;
    for c in &contexts {
        let (out, order) = parallel::search(c, derive_bounds(c), options, budget)?;
        if !out.exhaustive {
            code = EXIT_INCOMPLETE;
        }
        docs.push(json::search_json(c, &order, options, &out));
        if contexts.len() == 1 {
            text = search_text(c, &order, &out);
        } else {
            let _ = writeln!(
                text,
                "{:<15} dim {:>3}  explored {:>8}  {}",
                c.nodes().to_string(),
                c.dim(),
                out.explored,
                json::status(&out)
            );
        }
    }
    let doc = if docs.len() == 1 {
        serde_json::to_value(&docs[0])?
    } else {
        serde_json::to_value(&docs)?
    };
    if let Some(p) = &args.out {
        write_file(p, &doc)?;
    }
    match f {
        Format::Json => Ok((code, to_json(&doc)?)),
        Format::Human => Ok((code, text)),
    }
}
