//! Work-stealing search over the first-node slices of the depth-first walk.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use ulrich_core::search::{Budget, SearchBounds, SearchOptions, SearchOutcome, Searcher};
use ulrich_core::{ParabolicContext, Result};

/// Wall-clock budget shared by all slices; once one slice sees the
/// deadline pass, the rest stop at their next poll.
pub struct Deadline<'a> {
    end: Option<Instant>,
    tripped: &'a AtomicBool,
}

impl<'a> Deadline<'a> {
    pub fn new(end: Option<Instant>, tripped: &'a AtomicBool) -> Self {
        Deadline { end, tripped }
    }
}

impl Budget for Deadline<'_> {
    fn exhausted(&mut self) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return true;
        }
        match self.end {
            Some(end) if Instant::now() >= end => {
                self.tripped.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }
}

/// Same result as `Searcher::run` (counters included) whenever the budget
/// is not hit. Slices are merged in slice order. Also returns the node
/// assignment order.
pub fn search(
    ctx: &ParabolicContext,
    bounds: SearchBounds,
    options: SearchOptions,
    budget: Option<Duration>,
) -> Result<(SearchOutcome, Vec<usize>)> {
    let searcher = Searcher::new(ctx, bounds, options)?;
    let end = budget.map(|d| Instant::now() + d);
    let tripped = AtomicBool::new(false);
    let parts: Vec<SearchOutcome> = searcher
        .slices()
        .into_par_iter()
        .map(|v| {
            let mut deadline = Deadline::new(end, &tripped);
            if deadline.exhausted() {
                let mut skipped = SearchOutcome::new(searcher.bounds().clone());
                skipped.exhaustive = false;
                return skipped;
            }
            searcher.run_slice(v, &mut deadline)
        })
        .collect();
    let outcome = parts.into_iter().fold(searcher.base_outcome(), SearchOutcome::merge);
    Ok((outcome, searcher.node_order()))
}
