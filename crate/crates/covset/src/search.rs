//! Exact and heuristic optimization over `Z_q`.
//!
//! `omega_exact` finds the minimum covering-set size by branch and bound
//! over the candidate family `{M·{s} : s in Z_q}`: always branch on the
//! uncovered residue with the fewest candidates, and prune with the
//! admissible bound `|chosen| + ceil(uncovered/(lambda+mu))`. `nu_exact`
//! and `theta_exact` run depth-first searches over ascending candidates on
//! small instances. All tie-breaking is smallest-residue-first, so results
//! and witnesses are reproducible.

use std::time::{Duration, Instant};

use crate::arith::{is_primitive_root, mod_pow};
use crate::bits::BitSet;
use crate::cover::{magnitude_set, CoveringSet, ErrorSpec, Method};
use crate::Error;

/// Caps for the exact searches. The defaults keep every instance at
/// desk scale; callers may raise them deliberately.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Largest modulus accepted by the exact searches.
    pub max_q: u64,
    /// Largest subset size accepted by `nu_exact`.
    pub max_r: u64,
    /// Maximum branch-and-bound nodes before the search degrades to
    /// reporting its incumbent.
    pub node_budget: u64,
    /// Optional wall-clock budget, checked alongside the node budget.
    pub time_budget: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_q: 64,
            max_r: 6,
            node_budget: 100_000_000,
            time_budget: None,
        }
    }
}

/// Result of a minimum covering-set search.
#[derive(Debug, Clone)]
pub struct OmegaResult {
    /// Minimum size found; the exact minimum when `exact` is true,
    /// otherwise an upper bound.
    pub value: u64,
    /// A covering set of size `value`.
    pub witness: CoveringSet,
    /// `ceil(q/(lambda+mu))` when `lambda + mu < q`, else 1.
    pub lower_bound: u64,
    pub nodes_explored: u64,
    /// False when the node or time budget ran out first.
    pub exact: bool,
}

/// Per-candidate product masks plus, for each residue, the ascending list
/// of candidates that cover it.
struct Instance {
    q: u64,
    k: u64,
    masks: Vec<BitSet>,
    coverers: Vec<Vec<u32>>,
}

fn build_instance(spec: &ErrorSpec) -> Instance {
    let q = spec.q();
    let mags: Vec<u64> = magnitude_set(spec)
        .into_iter()
        .map(|m| m.rem_euclid(q as i64) as u64)
        .collect();
    let mut masks = Vec::with_capacity(q as usize);
    let mut coverers = vec![Vec::new(); q as usize];
    for s in 0..q {
        let mut mask = BitSet::new(q);
        for &m in &mags {
            if mask.insert(m * s % q) {
                coverers[(m * s % q) as usize].push(s as u32);
            }
        }
        masks.push(mask);
    }
    Instance {
        q,
        k: spec.magnitude_count(),
        masks,
        coverers,
    }
}

fn lower_bound(spec: &ErrorSpec) -> u64 {
    if spec.magnitude_count() < spec.q() {
        spec.q().div_ceil(spec.magnitude_count())
    } else {
        1
    }
}

/// Classic greedy cover: repeatedly take the candidate covering the most
/// uncovered residues, smallest residue on ties.
fn greedy_witness(inst: &Instance) -> Vec<u64> {
    let mut covered = BitSet::new(inst.q);
    let mut covered_count = 0;
    let mut picked = Vec::new();
    while covered_count < inst.q {
        let mut best_s = 0;
        let mut best_gain = 0;
        for s in 0..inst.q {
            let gain = inst.masks[s as usize].count_not_in(&covered);
            if gain > best_gain {
                best_gain = gain;
                best_s = s;
            }
        }
        debug_assert!(best_gain > 0, "every residue has a coverer");
        covered.or_assign(&inst.masks[best_s as usize]);
        covered_count += best_gain;
        picked.push(best_s);
    }
    picked.sort_unstable();
    picked
}

struct CoverSearch<'a> {
    inst: &'a Instance,
    node_budget: u64,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
    best: Vec<u64>,
    chosen: Vec<u64>,
    covered: BitSet,
    covered_count: u64,
    /// Candidates already explored at an enclosing branch point; subtrees
    /// exclude them so no subset is visited twice.
    banned: Vec<bool>,
}

impl CoverSearch<'_> {
    fn dfs(&mut self) {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.aborted = true;
            return;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(1024) && Instant::now() >= deadline {
                self.aborted = true;
                return;
            }
        }
        let uncovered = self.inst.q - self.covered_count;
        if uncovered == 0 {
            if (self.chosen.len() as u64) < self.best.len() as u64 {
                let mut witness = self.chosen.clone();
                witness.sort_unstable();
                self.best = witness;
            }
            return;
        }
        if self.chosen.len() as u64 + uncovered.div_ceil(self.inst.k) >= self.best.len() as u64 {
            return;
        }
        // most-constrained residue: fewest available candidates, smallest
        // residue on ties
        let mut target = self.inst.q;
        let mut fewest = usize::MAX;
        for a in self.covered.zeros() {
            let available = self.inst.coverers[a as usize]
                .iter()
                .filter(|&&s| !self.banned[s as usize])
                .count();
            if available < fewest {
                fewest = available;
                target = a;
            }
        }
        if fewest == 0 {
            return; // some residue can no longer be covered in this subtree
        }
        let candidates: Vec<u32> = self.inst.coverers[target as usize]
            .iter()
            .copied()
            .filter(|&s| !self.banned[s as usize])
            .collect();
        for &s in &candidates {
            if self.aborted {
                break;
            }
            let mask = &self.inst.masks[s as usize];
            let delta: Vec<u64> = mask
                .ones()
                .filter(|&b| !self.covered.contains(b))
                .collect();
            for &b in &delta {
                self.covered.insert(b);
            }
            self.covered_count += delta.len() as u64;
            self.chosen.push(s as u64);
            self.dfs();
            self.chosen.pop();
            self.covered_count -= delta.len() as u64;
            for &b in &delta {
                self.covered.remove(b);
            }
            // explored: remaining sibling branches must not reuse it
            self.banned[s as usize] = true;
        }
        for &s in &candidates {
            self.banned[s as usize] = false;
        }
    }
}

/// Minimum covering-set size by branch and bound, seeded with the greedy
/// incumbent. When the budget runs out the incumbent is returned with
/// `exact = false`.
pub fn omega_exact(spec: &ErrorSpec, limits: &SearchLimits) -> Result<OmegaResult, Error> {
    if spec.q() > limits.max_q {
        return Err(Error::LimitExceeded {
            what: "q",
            value: spec.q(),
            limit: limits.max_q,
        });
    }
    let inst = build_instance(spec);
    let lower = lower_bound(spec);
    let greedy = greedy_witness(&inst);
    let mut search = CoverSearch {
        inst: &inst,
        node_budget: limits.node_budget,
        deadline: limits.time_budget.map(|d| Instant::now() + d),
        nodes: 0,
        aborted: false,
        best: greedy,
        chosen: Vec::new(),
        covered: BitSet::new(inst.q),
        covered_count: 0,
        banned: vec![false; inst.q as usize],
    };
    if search.best.len() as u64 > lower {
        search.dfs();
    }
    let witness = CoveringSet::new(spec.q(), search.best, Method::Explicit)?;
    debug_assert!(witness.len() as u64 >= lower);
    Ok(OmegaResult {
        value: witness.len() as u64,
        witness,
        lower_bound: lower,
        nodes_explored: search.nodes,
        exact: !search.aborted,
    })
}

/// Greedy upper bound with the same result shape; `exact` is always false.
pub fn omega_greedy(spec: &ErrorSpec) -> OmegaResult {
    let inst = build_instance(spec);
    let witness = CoveringSet::new(spec.q(), greedy_witness(&inst), Method::Explicit)
        .expect("greedy picks residues below q");
    OmegaResult {
        value: witness.len() as u64,
        lower_bound: lower_bound(spec),
        witness,
        nodes_explored: 0,
        exact: false,
    }
}

struct NuSearch<'a> {
    inst: &'a Instance,
    cap: u64,
    best: u64,
}

impl NuSearch<'_> {
    fn dfs(&mut self, start: u64, slots: u64, products: &BitSet, count: u64) {
        if slots == 0 {
            self.best = self.best.max(count);
            return;
        }
        if count + self.inst.k * slots <= self.best || self.best == self.cap {
            return;
        }
        for s in start..=self.inst.q - slots {
            let mut child = products.clone();
            child.or_assign(&self.inst.masks[s as usize]);
            self.dfs(s + 1, slots - 1, &child, child.count());
            if self.best == self.cap {
                return;
            }
        }
    }
}

/// Exact maximum of `#(M·S)` over all `r`-element subsets `S` of `Z_q`.
pub fn nu_exact(spec: &ErrorSpec, r: u64, limits: &SearchLimits) -> Result<u64, Error> {
    if spec.q() > limits.max_q {
        return Err(Error::LimitExceeded {
            what: "q",
            value: spec.q(),
            limit: limits.max_q,
        });
    }
    if r > limits.max_r {
        return Err(Error::LimitExceeded {
            what: "r",
            value: r,
            limit: limits.max_r,
        });
    }
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1"));
    }
    if r > spec.q() {
        return Err(Error::Precondition("r cannot exceed q"));
    }
    let inst = build_instance(spec);
    let mut search = NuSearch {
        inst: &inst,
        cap: (inst.k * r).min(spec.q()),
        best: 0,
    };
    search.dfs(0, r, &BitSet::new(spec.q()), 0);
    Ok(search.best)
}

/// Result of a maximum packing-set search.
#[derive(Debug, Clone)]
pub struct ThetaResult {
    /// Largest `N` for which a packing set of size `N` exists.
    pub value: u64,
    /// A packing set of that size (empty when none exists).
    pub witness: CoveringSet,
}

struct ThetaSearch<'a> {
    inst: &'a Instance,
    cap: u64,
    best: Vec<u64>,
    chosen: Vec<u64>,
}

impl ThetaSearch<'_> {
    fn dfs(&mut self, start: u64, products: &BitSet) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() as u64 == self.cap {
            return;
        }
        if self.chosen.len() as u64 + (self.inst.q - start) <= self.best.len() as u64 {
            return;
        }
        for s in start..self.inst.q {
            let mask = &self.inst.masks[s as usize];
            // a packing candidate must expand fully and avoid all prior
            // products
            if mask.count() != self.inst.k || mask.count_not_in(products) != self.inst.k {
                continue;
            }
            let mut child = products.clone();
            child.or_assign(mask);
            self.chosen.push(s);
            self.dfs(s + 1, &child);
            self.chosen.pop();
            if self.best.len() as u64 == self.cap {
                return;
            }
        }
    }
}

/// Largest packing set: all `(lambda+mu)·N` products pairwise distinct.
pub fn theta_exact(spec: &ErrorSpec, limits: &SearchLimits) -> Result<ThetaResult, Error> {
    if spec.q() > limits.max_q {
        return Err(Error::LimitExceeded {
            what: "q",
            value: spec.q(),
            limit: limits.max_q,
        });
    }
    let inst = build_instance(spec);
    let mut search = ThetaSearch {
        inst: &inst,
        cap: spec.q() / spec.magnitude_count(),
        best: Vec::new(),
        chosen: Vec::new(),
    };
    if search.cap > 0 {
        search.dfs(0, &BitSet::new(spec.q()));
    }
    let witness = CoveringSet::new(spec.q(), search.best, Method::Explicit)?;
    Ok(ThetaResult {
        value: witness.len() as u64,
        witness,
    })
}

/// Longest run of consecutive powers of a primitive root inside the
/// magnitude set, and the covering bound it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRun {
    /// Longest cyclic run of exponents `n` with `g^n mod p` in `M`.
    pub delta: u64,
    /// `ceil((p-1)/delta) + 1`; `None` when `delta = 0`.
    pub implied_bound: Option<u64>,
}

/// Scans the full period `g^1, ..., g^(p-1)` and finds the longest run of
/// consecutive exponents whose powers land in `M`. Runs may wrap around
/// the period, which is the generous reading of "consecutive"; the exact
/// search keeps the resulting bound honest either way.
pub fn delta_run(p: u64, g: u64, spec: &ErrorSpec) -> Result<DeltaRun, Error> {
    if spec.q() != p {
        return Err(Error::ModulusMismatch {
            set_q: spec.q(),
            spec_q: p,
        });
    }
    if !is_primitive_root(g, p)? {
        return Err(Error::NotPrimitiveRoot { g, p });
    }
    let (lambda, mu) = (spec.lambda(), spec.mu());
    let in_m = |x: u64| (x >= 1 && x <= lambda) || x >= p - mu;
    let mut hits = Vec::with_capacity((p - 1) as usize);
    let mut x = 1;
    for _ in 1..p {
        x = x * (g % p) % p;
        hits.push(in_m(x));
    }
    debug_assert_eq!(x, mod_pow(g, p - 1, p));

    let delta = if hits.iter().all(|&h| h) {
        p - 1
    } else {
        let mut best = 0u64;
        let mut run = 0u64;
        // wrap-around handled by scanning two periods; at least one miss
        // exists here, so no run is counted twice
        for i in 0..2 * hits.len() {
            if hits[i % hits.len()] {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        best
    };
    Ok(DeltaRun {
        delta,
        implied_bound: (delta > 0).then(|| (p - 1).div_ceil(delta) + 1),
    })
}
