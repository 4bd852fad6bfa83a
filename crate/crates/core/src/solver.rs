//! Exact computation of the majority Roman domination number.
//!
//! [`brute_force`] walks all `3^n` labelings with incremental bookkeeping
//! and is the reference oracle. [`branch_and_bound`] is the workhorse: a
//! depth-first search over vertices in descending degree order, trying
//! labels `-1, +1, 2`, with three safe pruning rules:
//!
//! * optimistic completion: every unassigned vertex could still be `-1`;
//! * Roman guard death: an assigned `-1` vertex whose neighbors are all
//!   assigned and none is labeled 2;
//! * majority death: a vertex whose closed sum stays below 1 even if every
//!   unassigned vertex in its closed neighborhood became 2. Once more than
//!   `n - threshold` vertices are dead the majority condition is lost.

use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mrdf::{Label, Labeling, ThresholdMode};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    #[default]
    BranchAndBound,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "brute_force",
            Method::BranchAndBound => "branch_and_bound",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub method: Method,
    pub threads: usize,
    /// Known feasible weight (e.g. from a certificate) used to seed the
    /// incumbent. A seed below the true optimum is detected and ignored.
    pub initial_upper_bound: Option<i64>,
    pub node_limit: Option<u64>,
    pub threshold: ThresholdMode,
    pub brute_force_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: Method::BranchAndBound,
            threads: 1,
            initial_upper_bound: None,
            node_limit: None,
            threshold: ThresholdMode::Ceil,
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptResult {
    pub optimum: i64,
    pub witness: Labeling,
    pub nodes_explored: u64,
    pub method: Method,
    pub elapsed: Duration,
    /// False when the node limit stopped the search early; `optimum` is
    /// then only the best weight found.
    pub proven: bool,
}

pub fn solve(g: &Graph, opts: &SolveOptions) -> Result<OptResult> {
    match opts.method {
        Method::BruteForce => brute_force_with(g, opts.brute_force_cap, opts.threshold),
        Method::BranchAndBound => branch_and_bound(g, opts),
    }
}

/// Exhaustive minimum over all `3^n` labelings (default cap 16 vertices).
pub fn brute_force(g: &Graph) -> Result<OptResult> {
    brute_force_with(g, DEFAULT_BRUTE_FORCE_CAP, ThresholdMode::Ceil)
}

pub fn brute_force_with(g: &Graph, cap: usize, mode: ThresholdMode) -> Result<OptResult> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            method: "brute force",
            cap,
            order: n,
            hint: "use branch and bound instead",
        });
    }
    let start = Instant::now();
    let threshold = mode.threshold(n) as i64;
    let mut st = Odometer::new(g);
    let mut best: Option<(i64, Vec<u8>)> = None;
    let mut visited = 0u64;
    loop {
        visited += 1;
        if st.violations == 0 && st.satisfied >= threshold && best.as_ref().is_none_or(|b| st.weight < b.0) {
            best = Some((st.weight, st.digit.clone()));
        }
        if !st.advance() {
            break;
        }
    }
    let (optimum, digits) = best.expect("the all-2 labeling is always valid");
    Ok(OptResult {
        optimum,
        witness: digits
            .iter()
            .map(|&d| Label::ALL[d as usize])
            .collect::<Vec<_>>()
            .into(),
        nodes_explored: visited,
        method: Method::BruteForce,
        elapsed: start.elapsed(),
        proven: true,
    })
}

/// Base-3 counter over labelings that keeps closed sums, per-vertex counts
/// of 2-labeled neighbors and the guard violation count up to date.
struct Odometer<'a> {
    g: &'a Graph,
    digit: Vec<u8>,
    sum: Vec<i64>,
    twos: Vec<u32>,
    weight: i64,
    satisfied: i64,
    violations: i64,
}

impl<'a> Odometer<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        let sum: Vec<i64> = (0..n).map(|v| -(g.neighbors(v).len() as i64 + 1)).collect();
        Odometer {
            g,
            digit: vec![0; n],
            sum,
            twos: vec![0; n],
            weight: -(n as i64),
            satisfied: 0,
            violations: n as i64,
        }
    }

    fn relabel(&mut self, v: usize, from: u8, to: u8) {
        let (a, b) = (Label::ALL[from as usize], Label::ALL[to as usize]);
        let delta = b.value() - a.value();
        self.weight += delta;
        for u in std::iter::once(v).chain(self.g.neighbors(v).iter().copied()) {
            let was = self.sum[u] >= 1;
            self.sum[u] += delta;
            self.satisfied += (self.sum[u] >= 1) as i64 - was as i64;
        }
        if a == Label::Minus && self.twos[v] == 0 {
            self.violations -= 1;
        }
        self.digit[v] = to;
        if b == Label::Minus && self.twos[v] == 0 {
            self.violations += 1;
        }
        if a == Label::Two {
            for &u in self.g.neighbors(v) {
                self.twos[u] -= 1;
                if self.twos[u] == 0 && self.digit[u] == 0 {
                    self.violations += 1;
                }
            }
        }
        if b == Label::Two {
            for &u in self.g.neighbors(v) {
                if self.twos[u] == 0 && self.digit[u] == 0 {
                    self.violations -= 1;
                }
                self.twos[u] += 1;
            }
        }
    }

    fn advance(&mut self) -> bool {
        for v in 0..self.digit.len() {
            let d = self.digit[v];
            if d < 2 {
                self.relabel(v, d, d + 1);
                return true;
            }
            self.relabel(v, 2, 0);
        }
        false
    }
}

/// Partial-assignment bookkeeping for the depth-first search.
#[derive(Clone)]
struct Partial<'a> {
    closed: &'a [Vec<usize>],
    /// 0 = unassigned, else the label value.
    label: Vec<i8>,
    sum: Vec<i32>,
    /// Unassigned vertices in `N[v]`.
    open: Vec<i32>,
    twos: Vec<i32>,
    weight: i64,
    unassigned: i64,
    dead_major: usize,
    dead_guard: usize,
}

impl<'a> Partial<'a> {
    fn new(closed: &'a [Vec<usize>]) -> Self {
        let n = closed.len();
        Partial {
            closed,
            label: vec![0; n],
            sum: vec![0; n],
            open: closed.iter().map(|c| c.len() as i32).collect(),
            twos: vec![0; n],
            weight: 0,
            unassigned: n as i64,
            dead_major: 0,
            dead_guard: 0,
        }
    }

    #[inline]
    fn major_dead(&self, u: usize) -> bool {
        self.sum[u] + 2 * self.open[u] < 1
    }

    #[inline]
    fn guard_dead(&self, u: usize) -> bool {
        self.label[u] == -1 && self.twos[u] == 0 && self.open[u] == 0
    }

    #[inline]
    fn tally(&mut self, v: usize, sign: isize) {
        for i in 0..self.closed[v].len() {
            let u = self.closed[v][i];
            if self.major_dead(u) {
                self.dead_major = self.dead_major.wrapping_add_signed(sign);
            }
            if self.guard_dead(u) {
                self.dead_guard = self.dead_guard.wrapping_add_signed(sign);
            }
        }
    }

    fn assign(&mut self, v: usize, l: i8) {
        self.tally(v, -1);
        self.label[v] = l;
        self.weight += l as i64;
        self.unassigned -= 1;
        for &u in &self.closed[v] {
            self.sum[u] += l as i32;
            self.open[u] -= 1;
            if l == 2 && u != v {
                self.twos[u] += 1;
            }
        }
        self.tally(v, 1);
    }

    fn unassign(&mut self, v: usize) {
        self.tally(v, -1);
        let l = self.label[v];
        for &u in &self.closed[v] {
            self.sum[u] -= l as i32;
            self.open[u] += 1;
            if l == 2 && u != v {
                self.twos[u] -= 1;
            }
        }
        self.label[v] = 0;
        self.weight -= l as i64;
        self.unassigned += 1;
        self.tally(v, 1);
    }
}

struct Shared {
    incumbent: AtomicI64,
    nodes: AtomicU64,
    limit: Option<u64>,
    stopped: AtomicBool,
}

struct Search<'a> {
    order: &'a [usize],
    max_dead: usize,
    shared: &'a Shared,
    best: Option<(i64, Vec<i8>)>,
    local_nodes: u64,
}

const LABEL_ORDER: [i8; 3] = [-1, 1, 2];

impl Search<'_> {
    fn pruned(&self, p: &Partial) -> bool {
        p.dead_guard > 0
            || p.dead_major > self.max_dead
            || p.weight - p.unassigned >= self.shared.incumbent.load(Ordering::Relaxed)
    }

    fn count_node(&mut self) -> bool {
        self.local_nodes += 1;
        if let Some(limit) = self.shared.limit {
            let total = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if total > limit {
                self.shared.stopped.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.stopped.load(Ordering::Relaxed)
    }

    fn dfs(&mut self, p: &mut Partial, depth: usize) {
        if !self.count_node() {
            return;
        }
        if depth == self.order.len() {
            // all pruning checks passed, so the labeling is valid and better
            self.shared.incumbent.fetch_min(p.weight, Ordering::Relaxed);
            if self.best.as_ref().is_none_or(|b| p.weight < b.0) {
                self.best = Some((p.weight, p.label.clone()));
            }
            return;
        }
        let v = self.order[depth];
        for l in LABEL_ORDER {
            p.assign(v, l);
            if !self.pruned(p) {
                self.dfs(p, depth + 1);
            }
            p.unassign(v);
        }
    }
}

/// Vertices by descending degree, ties by index.
fn branching_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));
    order
}

pub fn branch_and_bound(g: &Graph, opts: &SolveOptions) -> Result<OptResult> {
    if opts.threads == 0 {
        return Err(Error::Precondition("thread count must be at least 1".into()));
    }
    let start = Instant::now();
    let n = g.order();
    let closed: Vec<Vec<usize>> = (0..n).map(|v| g.closed_neighborhood(v).expect("in range")).collect();
    let order = branching_order(g);
    let max_dead = n - opts.threshold.threshold(n);

    // (best weight and labels, nodes explored, search completed)
    type Run = (Option<(i64, Vec<i8>)>, u64, bool);
    let run = |incumbent: i64| -> Result<Run> {
        let shared = Shared {
            incumbent: AtomicI64::new(incumbent),
            nodes: AtomicU64::new(0),
            limit: opts.node_limit,
            stopped: AtomicBool::new(false),
        };
        let (best, nodes) = if opts.threads == 1 {
            let mut s = Search {
                order: &order,
                max_dead,
                shared: &shared,
                best: None,
                local_nodes: 0,
            };
            s.dfs(&mut Partial::new(&closed), 0);
            (s.best, s.local_nodes)
        } else {
            parallel_search(&closed, &order, max_dead, &shared, opts.threads)?
        };
        Ok((best, nodes, !shared.stopped.load(Ordering::Relaxed)))
    };

    // the all-2 labeling (weight 2n) is always feasible
    let unseeded = 2 * n as i64 + 1;
    let (mut best, mut nodes, mut complete) = run(opts.initial_upper_bound.map_or(unseeded, |u| u + 1))?;
    if best.is_none() && complete && opts.initial_upper_bound.is_some() {
        // the seed was below the optimum
        let (b, more, c) = run(unseeded)?;
        best = b;
        nodes += more;
        complete = c;
    }
    let (optimum, labels) = match best {
        Some(b) => b,
        None => {
            // node limit hit before any leaf: fall back to the trivial witness
            (2 * n as i64, vec![2; n])
        }
    };
    let witness: Vec<Label> = labels
        .iter()
        .map(|&l| Label::from_value(l as i64).expect("complete assignment"))
        .collect();
    Ok(OptResult {
        optimum,
        witness: witness.into(),
        nodes_explored: nodes,
        method: Method::BranchAndBound,
        elapsed: start.elapsed(),
        proven: complete,
    })
}

type SearchOutcome = (Option<(i64, Vec<i8>)>, u64);

fn parallel_search(
    closed: &[Vec<usize>],
    order: &[usize],
    max_dead: usize,
    shared: &Shared,
    threads: usize,
) -> Result<SearchOutcome> {
    // split on a prefix of the branching order into roughly 16 tasks per thread
    let mut depth = 0;
    while depth < order.len() && 3usize.pow(depth as u32) < 16 * threads {
        depth += 1;
    }
    let prefixes: Vec<Vec<i8>> = (0..3usize.pow(depth as u32))
        .map(|mut code| {
            let mut p = vec![0i8; depth];
            for slot in p.iter_mut().rev() {
                *slot = LABEL_ORDER[code % 3];
                code /= 3;
            }
            p
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let results = Mutex::new(Vec::new());
    pool.install(|| {
        prefixes.par_iter().enumerate().for_each(|(idx, prefix)| {
            let mut s = Search {
                order,
                max_dead,
                shared,
                best: None,
                local_nodes: 0,
            };
            let mut p = Partial::new(closed);
            for (d, &l) in prefix.iter().enumerate() {
                if !s.count_node() {
                    break;
                }
                p.assign(order[d], l);
                if s.pruned(&p) {
                    results.lock().unwrap().push((idx, None, s.local_nodes));
                    return;
                }
            }
            s.dfs(&mut p, depth);
            results.lock().unwrap().push((idx, s.best, s.local_nodes));
        })
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|r| r.0);
    let nodes = results.iter().map(|r| r.2).sum();
    let best = results.into_iter().filter_map(|r| r.1).min_by_key(|b| b.0);
    Ok((best, nodes))
}

/// `n(2 - Δ)/(Δ + 1)`, a lower bound on the optimum for `n >= 2`.
pub fn delta_lower_bound(g: &Graph) -> Result<Rational64> {
    let n = g.order() as i64;
    if n < 2 {
        return Err(Error::Precondition(format!("degree lower bound needs n >= 2, got {n}")));
    }
    let d = g.max_degree() as i64;
    Ok(Rational64::new(n * (2 - d), d + 1))
}
