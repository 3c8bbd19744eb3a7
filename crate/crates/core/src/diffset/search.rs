use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use super::{is_difference_set, right_translate, DifferenceSet};
use crate::group::{Elem, FiniteGroup};
use crate::params::Params;

/// Largest group the exhaustive search accepts.
pub const MAX_SEARCH_ORDER: usize = 64;
/// Default cap on visited search nodes.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

const FLUSH_EVERY: u64 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("group of order {0} is too large for exhaustive search (limit {MAX_SEARCH_ORDER})")]
    GroupTooLarge(usize),
    #[error("k = {k} exceeds the group order {n}")]
    InvalidK { k: usize, n: usize },
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("search produced {0}, which fails independent verification")]
    Unverified(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Emit only the lexicographically least set of each right-translate orbit.
    pub dedup_translates: bool,
    /// Stop after this many sets. Forces a sequential search.
    pub limit: Option<usize>,
    /// Maximum number of visited nodes.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { dedup_translates: false, limit: None, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Sets in ascending lexicographic order, each re-verified.
    pub sets: Vec<DifferenceSet>,
    pub nodes_visited: u64,
    /// False when `k(k-1) != (n-1)mu`; the search is then skipped.
    pub feasible: bool,
}

/// Shared between workers: visited-node total and the abort flag.
struct Budget {
    cap: u64,
    used: AtomicU64,
    exceeded: AtomicBool,
}

struct Worker<'a> {
    h: &'a FiniteGroup,
    k: usize,
    mu: usize,
    dedup: bool,
    limit: Option<usize>,
    budget: &'a Budget,
    chosen: Vec<Elem>,
    counts: Vec<usize>,
    touched: Vec<Elem>,
    found: Vec<Vec<Elem>>,
    pending: u64,
    visited: u64,
}

/// Why a depth-first search unwound early.
enum Stop {
    Budget,
    Limit,
}

impl<'a> Worker<'a> {
    fn new(h: &'a FiniteGroup, k: usize, mu: usize, options: &SearchOptions, budget: &'a Budget) -> Self {
        Self {
            h,
            k,
            mu,
            dedup: options.dedup_translates,
            limit: options.limit,
            budget,
            chosen: Vec::with_capacity(k),
            counts: vec![0; h.order()],
            touched: Vec::with_capacity(2 * k),
            found: Vec::new(),
            pending: 0,
            visited: 0,
        }
    }

    fn flush(&mut self) -> Result<(), Stop> {
        let total = self.budget.used.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if total > self.budget.cap {
            self.budget.exceeded.store(true, Ordering::Relaxed);
        }
        if self.budget.exceeded.load(Ordering::Relaxed) {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    fn visit(&mut self) -> Result<(), Stop> {
        self.visited += 1;
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    /// Adds `x` and its differences with the chosen elements. On overflow past
    /// `mu` the counts are restored and `false` is returned.
    fn try_add(&mut self, x: Elem) -> bool {
        let h = self.h;
        self.touched.clear();
        let xi = h.inverse(x);
        for &p in &self.chosen {
            for diff in [h.multiply(x, h.inverse(p)), h.multiply(p, xi)] {
                self.counts[diff] += 1;
                self.touched.push(diff);
                if self.counts[diff] > self.mu {
                    for &t in &self.touched {
                        self.counts[t] -= 1;
                    }
                    return false;
                }
            }
        }
        self.chosen.push(x);
        true
    }

    fn remove_last(&mut self) {
        let h = self.h;
        let x = self.chosen.pop().expect("nonempty");
        let xi = h.inverse(x);
        for &p in &self.chosen {
            self.counts[h.multiply(x, h.inverse(p))] -= 1;
            self.counts[h.multiply(p, xi)] -= 1;
        }
    }

    /// False if every completion of the chosen prefix `P` is beaten by one
    /// of its right translates.
    ///
    /// Completions only add elements above `m = max P`. For a translate `a`
    /// let `K = P·a ∩ [0, m]` and `z = min(K∖P)`. If no element of `P∖K` lies
    /// below `z`, the smallest element of the symmetric difference of `D` and
    /// `D·a` lies in `D·a`, so `D·a < D` for every completion `D`.
    fn prefix_may_be_minimal(&self) -> bool {
        let m = *self.chosen.last().expect("nonempty");
        let in_p = |x: Elem| self.chosen.binary_search(&x).is_ok();
        self.h.elements().filter(|&a| a != self.h.identity()).all(|a| {
            let k_set: Vec<Elem> = self.chosen.iter().map(|&p| self.h.multiply(p, a)).filter(|&y| y <= m).collect();
            let Some(z) = k_set.iter().copied().filter(|&y| !in_p(y)).min() else {
                return true;
            };
            self.chosen.iter().any(|&p| p < z && !k_set.contains(&p))
        })
    }

    fn is_orbit_minimum(&self, d: &[Elem]) -> bool {
        self.h.elements().all(|a| right_translate(self.h, d, a).as_slice() >= d)
    }

    fn dfs(&mut self, start: Elem) -> Result<(), Stop> {
        if self.chosen.len() == self.k {
            if !self.dedup || self.is_orbit_minimum(&self.chosen) {
                self.found.push(self.chosen.clone());
                if self.limit.is_some_and(|l| self.found.len() >= l) {
                    return Err(Stop::Limit);
                }
            }
            return Ok(());
        }
        let last = self.h.order() - (self.k - self.chosen.len());
        for x in start..=last {
            self.visit()?;
            if !self.try_add(x) {
                continue;
            }
            let descend = !self.dedup || self.prefix_may_be_minimal();
            let result = if descend { self.dfs(x + 1) } else { Ok(()) };
            self.remove_last();
            result?;
        }
        Ok(())
    }

    /// Searches the subtree whose smallest element is `first`.
    fn run_from(&mut self, first: Elem) -> Result<(), Stop> {
        self.visit()?;
        assert!(self.try_add(first));
        if !self.dedup || self.prefix_may_be_minimal() {
            self.dfs(first + 1)?;
        }
        self.remove_last();
        Ok(())
    }
}

/// Exhaustive backtracking search for `(|H|, k, mu)` difference sets in `h`.
///
/// Elements are added in ascending index order and a branch is cut as soon as
/// some difference occurs more than `mu` times. Without a limit the subtrees
/// for each smallest element run in parallel. The node count is the same
/// however the work is scheduled. Every emitted set is recounted from scratch
/// before it is returned.
pub fn search_difference_sets(
    h: &FiniteGroup,
    k: usize,
    mu: usize,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    let n = h.order();
    if n > MAX_SEARCH_ORDER {
        return Err(SearchError::GroupTooLarge(n));
    }
    if k > n {
        return Err(SearchError::InvalidK { k, n });
    }
    let params = Params::new(n, k, mu);
    if !params.satisfies_counting_identity() || (k <= 1 && mu != 0) {
        return Ok(SearchOutcome { sets: Vec::new(), nodes_visited: 0, feasible: false });
    }
    type Partial = (Vec<Vec<Elem>>, u64);
    let budget = Budget { cap: options.budget, used: AtomicU64::new(0), exceeded: AtomicBool::new(false) };
    let (mut raw, visited) = if k == 0 {
        (vec![Vec::new()], 1)
    } else if options.limit.is_some() {
        let mut w = Worker::new(h, k, mu, options, &budget);
        let result = (0..=n - k).try_for_each(|first| w.run_from(first));
        if let Err(Stop::Budget) = result {
            return Err(SearchError::BudgetExceeded { budget: options.budget });
        }
        (w.found, w.visited)
    } else {
        let parts: Vec<Result<Partial, Stop>> = (0..=n - k)
            .into_par_iter()
            .map(|first| {
                let mut w = Worker::new(h, k, mu, options, &budget);
                w.run_from(first)?;
                w.flush()?;
                Ok((w.found, w.visited))
            })
            .collect();
        let mut raw = Vec::new();
        let mut visited = 0;
        for part in parts {
            let (found, v) = part.map_err(|_| SearchError::BudgetExceeded { budget: options.budget })?;
            raw.extend(found);
            visited += v;
        }
        (raw, visited)
    };
    if visited > options.budget {
        return Err(SearchError::BudgetExceeded { budget: options.budget });
    }
    raw.sort();
    if let Some(l) = options.limit {
        raw.truncate(l);
    }
    let sets = raw
        .iter()
        .map(|d| match is_difference_set(h, d) {
            Some(p) if p == params => DifferenceSet::certify(h, d).map_err(|e| SearchError::Unverified(e.to_string())),
            _ => Err(SearchError::Unverified(format!("{:?}", h.names_of(d)))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SearchOutcome { sets, nodes_visited: visited, feasible: true })
}
