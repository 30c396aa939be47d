//! Bounded exhaustive search for initialized Ulrich bundles on `G/P_J`.
//!
//! An Ulrich weight has every `φ_λ^J(α) ≤ dim`, and each `φ_λ^J(α)` is a
//! nondecreasing affine function of the coefficients `a_i ≥ 0`. Fixing all
//! other coefficients at zero therefore bounds each `a_i` by a finite
//! [`SearchBounds`] box. [`Searcher`] walks that box depth-first, assigning
//! the nodes of `J` first, and discards a partial assignment as soon as one
//! of the following fails:
//!
//! * a root whose support is fully assigned must get an integer value in
//!   `[1, dim]` not taken by another root (integrality, range, collision);
//! * no root may already exceed `dim` (range);
//! * `Σ φ = dim(dim+1)/2` must stay reachable inside the box (sum identity);
//! * no pair of roots may form a bad pair for `(S, λ_S)` with `S` the set of
//!   assigned nodes (bad pair).
//!
//! Every weight that survives to a leaf is re-checked with both exact
//! decision procedures of [`crate::ulrich`] before it is reported.
//!
//! The hot loop works on integers: for each root of `Φ_J^+` the rational
//! pairings `(ϖ_i, α)` and `(pol, α)` are multiplied by the least common
//! denominator, which leaves every `φ` value unchanged.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::parabolic::{NodeSet, ParabolicContext};
use crate::rational;
use crate::rootspace::Weight;
use crate::ulrich;

/// Inclusive upper bounds on each `a_i`, indexed by node label minus one.
/// A negative entry means the box is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub upper: Vec<i64>,
}

impl SearchBounds {
    pub fn get(&self, label: usize) -> i64 {
        self.upper[label - 1]
    }

    pub fn is_empty(&self) -> bool {
        self.upper.iter().any(|&u| u < 0)
    }

    /// Number of integral points of the box.
    pub fn volume(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        self.upper.iter().map(|&u| (u + 1) as u128).product()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        w.coords()
            .iter()
            .zip(&self.upper)
            .all(|(&a, &u)| 0 <= a && a <= u)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Integrality, range and collision checks on partial assignments.
    pub partial: bool,
    pub sum_identity: bool,
    pub bad_pair: bool,
}

impl SearchOptions {
    pub const ALL: SearchOptions = SearchOptions {
        partial: true,
        sum_identity: true,
        bad_pair: true,
    };

    /// Visit every point of the box and decide each one with the exact criterion.
    pub const NONE: SearchOptions = SearchOptions {
        partial: false,
        sum_identity: false,
        bad_pair: false,
    };
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions::ALL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneReason {
    Integrality,
    Range,
    Collision,
    SumIdentity,
    BadPair,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PruneCounters {
    pub integrality: u64,
    pub range: u64,
    pub collision: u64,
    pub sum_identity: u64,
    pub bad_pair: u64,
}

impl PruneCounters {
    fn bump(&mut self, reason: PruneReason) {
        match reason {
            PruneReason::Integrality => self.integrality += 1,
            PruneReason::Range => self.range += 1,
            PruneReason::Collision => self.collision += 1,
            PruneReason::SumIdentity => self.sum_identity += 1,
            PruneReason::BadPair => self.bad_pair += 1,
        }
    }

    fn merge(&mut self, o: &PruneCounters) {
        self.integrality += o.integrality;
        self.range += o.range;
        self.collision += o.collision;
        self.sum_identity += o.sum_identity;
        self.bad_pair += o.bad_pair;
    }

    pub fn total(&self) -> u64 {
        self.integrality + self.range + self.collision + self.sum_identity + self.bad_pair
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub ulrich_weights: Vec<Weight>,
    /// Partial and complete assignments visited.
    pub explored: u64,
    pub pruned_by: PruneCounters,
    pub bounds: SearchBounds,
    /// `false` if a [`Budget`] stopped the walk early.
    pub exhaustive: bool,
    /// Leaves on which the integer checks, the criterion and the
    /// cohomological definition did not all agree. Empty unless something is
    /// badly wrong.
    pub oracle_disagreements: Vec<Weight>,
}

impl SearchOutcome {
    /// Nothing explored yet.
    pub fn new(bounds: SearchBounds) -> Self {
        SearchOutcome {
            ulrich_weights: Vec::new(),
            explored: 0,
            pruned_by: PruneCounters::default(),
            bounds,
            exhaustive: true,
            oracle_disagreements: Vec::new(),
        }
    }

    /// Combines results of disjoint slices; `other` is appended after `self`.
    pub fn merge(mut self, other: SearchOutcome) -> SearchOutcome {
        self.ulrich_weights.extend(other.ulrich_weights);
        self.oracle_disagreements.extend(other.oracle_disagreements);
        self.explored += other.explored;
        self.pruned_by.merge(&other.pruned_by);
        self.exhaustive &= other.exhaustive;
        self
    }

    /// The box was searched completely and holds no Ulrich weight.
    pub fn proves_nonexistence(&self) -> bool {
        self.exhaustive && self.ulrich_weights.is_empty() && self.oracle_disagreements.is_empty()
    }
}

/// Cooperative cancellation, polled every few thousand visited nodes.
pub trait Budget {
    fn exhausted(&mut self) -> bool;
}

pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&mut self) -> bool {
        false
    }
}

/// `φ` on `Φ_J^+` lowered to integers: `φ(k) = (rho[k] + Σ_i coef[k][i]·a_i) / den[k]`.
#[derive(Clone, Debug)]
struct Lowered {
    dim: i64,
    den: Vec<i64>,
    rho: Vec<i64>,
    coef: Vec<Vec<i64>>,
}

impl Lowered {
    fn new(ctx: &ParabolicContext) -> Result<Self> {
        let rs = ctx.root_system();
        let n = ctx.rank();
        let mut den = Vec::new();
        let mut rho = Vec::new();
        let mut coef = Vec::new();
        for &r in ctx.phi_j_plus() {
            let mut vals: Vec<rational::Rational> =
                (1..=n).map(|i| rs.fundamental_pairing(i, r).clone()).collect();
            vals.push(ctx.pol_pairing(r)?.clone());
            let l = rational::common_denominator(&vals).ok_or(Error::Overflow)?;
            let ints = rational::scaled_integers(&vals, l).ok_or(Error::Overflow)?;
            let (c, d) = ints.split_at(n);
            rho.push(c.iter().try_fold(0i64, |s, &x| s.checked_add(x)).ok_or(Error::Overflow)?);
            coef.push(c.to_vec());
            den.push(d[0]);
        }
        Ok(Lowered {
            dim: ctx.dim() as i64,
            den,
            rho,
            coef,
        })
    }

    fn len(&self) -> usize {
        self.den.len()
    }

    /// `slope_i(k) == slope_i(l)`.
    fn same_slope(&self, k: usize, l: usize, i: usize) -> bool {
        self.coef[k][i] * self.den[l] == self.coef[l][i] * self.den[k]
    }
}

/// The smallest box containing every weight that can satisfy the criterion:
/// `upper[i] = max a_i` with `φ_{a_i ϖ_i}(α) ≤ dim` for every `α ∈ Φ_J^+`.
/// The binding roots are typically the highest root and, for `i ∈ J`, the
/// simple root `α_i` (which gives `a_i ≤ dim·b_i - 1`).
pub fn derive_bounds(ctx: &ParabolicContext) -> SearchBounds {
    let low = Lowered::new(ctx).expect("root data fits in i64");
    bounds_from(&low, ctx.rank())
}

fn bounds_from(low: &Lowered, rank: usize) -> SearchBounds {
    let upper = (0..rank)
        .map(|i| {
            (0..low.len())
                .filter(|&k| low.coef[k][i] > 0)
                .map(|k| Integer::div_floor(&(low.dim * low.den[k] - low.rho[k]), &low.coef[k][i]))
                .min()
                .expect("the highest root has full support")
        })
        .collect();
    SearchBounds { upper }
}

struct Prune {
    reason: PruneReason,
    /// Larger values at the current node fail as well.
    monotone: bool,
    pair: Option<(usize, usize)>,
}

impl Prune {
    fn new(reason: PruneReason, monotone: bool) -> Self {
        Prune { reason, monotone, pair: None }
    }
}

struct State {
    /// Coefficients by label minus one.
    a: Vec<i64>,
    num: Vec<i64>,
    used: u128,
}

/// A prepared depth-first search over one `(G, J, b)` and one box.
pub struct Searcher<'a> {
    ctx: &'a ParabolicContext,
    low: Lowered,
    bounds: SearchBounds,
    options: SearchOptions,
    /// Node labels minus one, in assignment order.
    order: Vec<usize>,
    /// Roots whose last support node is assigned at depth `d` (index `d`).
    fixed_at: Vec<Vec<usize>>,
    /// Roots still depending on an unassigned node after depth `d`.
    open_after: Vec<Vec<usize>>,
    /// Pairs whose slopes agree on the nodes unassigned after depth `d`,
    /// but did not agree on those unassigned after depth `d - 1`.
    pairs_at: Vec<Vec<(usize, usize)>>,
    sum_scale: Vec<i64>,
    sum_const: i64,
    sum_weight: Vec<i64>,
    sum_target: i64,
    /// `Σ_{t ≥ d} upper[order[t]]·sum_weight[order[t]]`.
    sum_tail: Vec<i64>,
}

const BUDGET_POLL: u64 = 1 << 12;

impl<'a> Searcher<'a> {
    pub fn new(
        ctx: &'a ParabolicContext,
        bounds: SearchBounds,
        options: SearchOptions,
    ) -> Result<Self> {
        let low = Lowered::new(ctx)?;
        let n = ctx.rank();
        if bounds.upper.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: bounds.upper.len() });
        }
        let j = ctx.nodes();
        let order: Vec<usize> = j
            .iter()
            .chain(j.complement(n).iter())
            .map(|l| l - 1)
            .collect();
        let mut depth_of = vec![0usize; n];
        for (d, &i) in order.iter().enumerate() {
            depth_of[i] = d + 1;
        }
        let m = low.len();
        let fixed_depth: Vec<usize> = (0..m)
            .map(|k| {
                (0..n)
                    .filter(|&i| low.coef[k][i] != 0)
                    .map(|i| depth_of[i])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let fixed_at = (0..=n)
            .map(|d| (0..m).filter(|&k| fixed_depth[k] == d).collect())
            .collect();
        let open_after = (0..=n)
            .map(|d| (0..m).filter(|&k| fixed_depth[k] > d).collect())
            .collect();

        // equal_from[k][l]: first depth after which the slopes agree on every
        // unassigned node.
        let mut pairs_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
        for k in 0..m {
            for l in k + 1..m {
                let from = (0..=n)
                    .find(|&d| order[d..].iter().all(|&i| low.same_slope(k, l, i)))
                    .unwrap_or(n);
                // once both values are fixed, the integrality checks subsume the pair
                if from < fixed_depth[k].max(fixed_depth[l]) {
                    pairs_at[from].push((k, l));
                }
            }
        }

        let lcm = low.den.iter().fold(1i64, |acc, &d| acc.lcm(&d));
        let sum_scale: Vec<i64> = low.den.iter().map(|&d| lcm / d).collect();
        let sum_const = (0..m).map(|k| low.rho[k] * sum_scale[k]).sum();
        let sum_weight: Vec<i64> = (0..n)
            .map(|i| (0..m).map(|k| low.coef[k][i] * sum_scale[k]).sum())
            .collect();
        let sum_target = low.dim * (low.dim + 1) / 2 * lcm;
        let mut sum_tail = vec![0i64; n + 1];
        for d in (0..n).rev() {
            let i = order[d];
            sum_tail[d] = sum_tail[d + 1] + bounds.upper[i].max(0) * sum_weight[i];
        }

        Ok(Searcher {
            ctx,
            low,
            bounds,
            options,
            order,
            fixed_at,
            open_after,
            pairs_at,
            sum_scale,
            sum_const,
            sum_weight,
            sum_target,
            sum_tail,
        })
    }

    pub fn bounds(&self) -> &SearchBounds {
        &self.bounds
    }

    /// Node labels in assignment order.
    pub fn node_order(&self) -> Vec<usize> {
        self.order.iter().map(|i| i + 1).collect()
    }

    fn fresh_state(&self) -> State {
        State {
            a: vec![0; self.ctx.rank()],
            num: self.low.rho.clone(),
            used: 0,
        }
    }

    fn assign(&self, st: &mut State, depth: usize, v: i64) {
        let i = self.order[depth - 1];
        let delta = v - st.a[i];
        st.a[i] = v;
        if delta != 0 {
            for (k, num) in st.num.iter_mut().enumerate() {
                *num += self.low.coef[k][i] * delta;
            }
        }
    }

    /// Checks after `order[..depth]` has been assigned. Returns the value
    /// bits claimed by the roots fixed at this depth.
    fn check(&self, st: &State, depth: usize) -> core::result::Result<u128, Prune> {
        let low = &self.low;
        let mut claimed = 0u128;
        if self.options.partial {
            for &k in &self.fixed_at[depth] {
                let (q, r) = st.num[k].div_rem(&low.den[k]);
                if r != 0 {
                    return Err(Prune::new(PruneReason::Integrality, false));
                }
                if q > low.dim {
                    return Err(Prune::new(PruneReason::Range, true));
                }
                if q < 1 {
                    return Err(Prune::new(PruneReason::Range, false));
                }
                let bit = 1u128 << (q - 1);
                if (st.used | claimed) & bit != 0 {
                    return Err(Prune::new(PruneReason::Collision, false));
                }
                claimed |= bit;
            }
            for &k in &self.open_after[depth] {
                if st.num[k] > low.dim * low.den[k] {
                    return Err(Prune::new(PruneReason::Range, true));
                }
            }
        }
        if self.options.sum_identity {
            let cur = self.sum_const
                + self
                    .order
                    .iter()
                    .take(depth)
                    .map(|&i| st.a[i] * self.sum_weight[i])
                    .sum::<i64>();
            if cur > self.sum_target {
                return Err(Prune::new(PruneReason::SumIdentity, true));
            }
            if cur + self.sum_tail[depth] < self.sum_target {
                return Err(Prune::new(PruneReason::SumIdentity, false));
            }
        }
        if self.options.bad_pair {
            for &(k, l) in &self.pairs_at[depth] {
                let (dk, dl) = (low.den[k], low.den[l]);
                if (st.num[k] * dl - st.num[l] * dk) % (dk * dl) != 0 {
                    return Err(Prune {
                        reason: PruneReason::BadPair,
                        monotone: false,
                        pair: Some((k, l)),
                    });
                }
            }
        }
        Ok(claimed)
    }

    /// Top-level values of the first node, or nothing if the box is empty or
    /// already ruled out before any assignment.
    pub fn slices(&self) -> Vec<i64> {
        if self.bounds.is_empty() || self.check(&self.fresh_state(), 0).is_err() {
            return Vec::new();
        }
        (0..=self.bounds.upper[self.order[0]]).collect()
    }

    /// Outcome contributed before any slice runs (the depth-0 checks).
    pub fn base_outcome(&self) -> SearchOutcome {
        let mut out = SearchOutcome::new(self.bounds.clone());
        if !self.bounds.is_empty() {
            if let Err(p) = self.check(&self.fresh_state(), 0) {
                out.pruned_by.bump(p.reason);
            }
        }
        out
    }

    /// Searches the part of the box with the first node set to `first`.
    pub fn run_slice(&self, first: i64, budget: &mut dyn Budget) -> SearchOutcome {
        let mut out = SearchOutcome::new(self.bounds.clone());
        let mut st = self.fresh_state();
        self.visit(&mut st, 1, first, &mut out, budget);
        out
    }

    pub fn run(&self, budget: &mut dyn Budget) -> SearchOutcome {
        let mut out = self.base_outcome();
        for v in self.slices() {
            let part = self.run_slice(v, budget);
            out = out.merge(part);
            if !out.exhaustive {
                break;
            }
        }
        out
    }

    /// Assigns `v` at `depth`; returns `false` when the caller should stop
    /// trying larger values at this depth.
    fn visit(
        &self,
        st: &mut State,
        depth: usize,
        v: i64,
        out: &mut SearchOutcome,
        budget: &mut dyn Budget,
    ) -> bool {
        if !out.exhaustive {
            return false;
        }
        out.explored += 1;
        if out.explored % BUDGET_POLL == 0 && budget.exhausted() {
            out.exhaustive = false;
            return false;
        }
        self.assign(st, depth, v);
        let claimed = match self.check(st, depth) {
            Ok(c) => c,
            Err(p) => {
                out.pruned_by.bump(p.reason);
                self.assign(st, depth, 0);
                return !p.monotone;
            }
        };
        st.used |= claimed;
        if depth == self.order.len() {
            self.leaf(st, out);
        } else {
            let next = self.order[depth];
            for w in 0..=self.bounds.upper[next] {
                if !self.visit(st, depth + 1, w, out, budget) {
                    break;
                }
            }
            self.assign(st, depth + 1, 0);
        }
        st.used &= !claimed;
        self.assign(st, depth, 0);
        out.exhaustive
    }

    fn leaf(&self, st: &State, out: &mut SearchOutcome) {
        let lambda = Weight::new(st.a.clone());
        let criterion = ulrich::is_ulrich_criterion(self.ctx, &lambda)
            .expect("box weights are eligible")
            .is_ulrich;
        if !self.options.partial && !criterion {
            return;
        }
        let bwb = ulrich::is_ulrich_bwb(self.ctx, &lambda)
            .expect("box weights are eligible")
            .is_ulrich;
        if criterion && bwb {
            out.ulrich_weights.push(lambda);
        } else {
            out.oracle_disagreements.push(lambda);
        }
    }

    /// Replays the checks along the path of a full weight in the box and
    /// reports the first one that fails: `(depth, reason, bad pair)`, with
    /// the pair given as root indices. `None` means `λ` reaches a leaf.
    pub fn first_prune(
        &self,
        lambda: &Weight,
    ) -> Option<(usize, PruneReason, Option<(usize, usize)>)> {
        let j = self.ctx.phi_j_plus();
        let mut st = self.fresh_state();
        for depth in 0..=self.order.len() {
            if depth > 0 {
                let v = lambda.coords()[self.order[depth - 1]];
                self.assign(&mut st, depth, v);
            }
            match self.check(&st, depth) {
                Ok(c) => st.used |= c,
                Err(p) => return Some((depth, p.reason, p.pair.map(|(k, l)| (j[k], j[l])))),
            }
        }
        None
    }

    /// Nodes assigned after `depth` steps.
    pub fn assigned_nodes(&self, depth: usize) -> NodeSet {
        NodeSet::from_labels(&self.order[..depth].iter().map(|i| i + 1).collect::<Vec<_>>())
    }

    #[doc(hidden)]
    pub fn sum_scale(&self) -> &[i64] {
        &self.sum_scale
    }
}

pub fn enumerate(
    ctx: &ParabolicContext,
    bounds: SearchBounds,
    options: SearchOptions,
) -> Result<SearchOutcome> {
    Ok(Searcher::new(ctx, bounds, options)?.run(&mut Unlimited))
}

/// Derives the box and searches it with every prune enabled.
pub fn prove_nonexistence(ctx: &ParabolicContext) -> Result<SearchOutcome> {
    enumerate(ctx, derive_bounds(ctx), SearchOptions::ALL)
}
