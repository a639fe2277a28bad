//! Exact solvers: minimum set cover, enumeration of covers of a given size,
//! maximum and maximal independent sets, and line-blocking point sets.
//!
//! Searches are deterministic for a fixed input order. Every optimum comes
//! with a re-checked witness and a flag telling whether the search space was
//! exhausted or a node guard cut it short.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{Cover, Incidences};
use crate::kneser::{binom_u64, bits, Graph};

pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

/// Brute-force enumeration of k-subsets is used up to this many candidates.
const BRUTE_FORCE_MAX: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetOrigin {
    Point(usize),
    Plane(usize),
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSet {
    pub elements: Vec<usize>,
    pub origin: SetOrigin,
}

#[derive(Clone, Debug)]
pub struct SetCoverInstance {
    universe_size: usize,
    sets: Vec<CoverSet>,
    ambient: Option<(usize, u32)>,
}

impl SetCoverInstance {
    pub fn new(universe_size: usize, sets: Vec<CoverSet>) -> Result<SetCoverInstance> {
        if let Some(bad) = sets
            .iter()
            .flat_map(|s| &s.elements)
            .find(|&&e| e >= universe_size)
        {
            return Err(invalid(format!(
                "set element {bad} outside universe of size {universe_size}"
            )));
        }
        Ok(SetCoverInstance {
            universe_size,
            sets,
            ambient: None,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[CoverSet] {
        &self.sets
    }

    /// Reports the least element contained in no set.
    pub fn check_feasible(&self) -> Result<()> {
        let mut seen = vec![false; self.universe_size];
        for s in &self.sets {
            for &e in &s.elements {
                seen[e] = true;
            }
        }
        match seen.iter().position(|&x| !x) {
            Some(element) => Err(Error::Infeasible { element }),
            None => Ok(()),
        }
    }

    /// Same instance with the sets listed in `order`.
    pub fn permuted(&self, order: &[usize]) -> SetCoverInstance {
        SetCoverInstance {
            universe_size: self.universe_size,
            sets: order.iter().map(|&i| self.sets[i].clone()).collect(),
            ambient: self.ambient,
        }
    }

    /// The cover of PG(v-1,q) made of the chosen sets, for geometric instances.
    pub fn to_cover(&self, chosen: &[usize]) -> Option<Cover> {
        let (v, q) = self.ambient?;
        let mut points = Vec::new();
        let mut planes = Vec::new();
        for &i in chosen {
            match self.sets[i].origin {
                SetOrigin::Point(p) => points.push(p),
                SetOrigin::Plane(p) => planes.push(p),
                SetOrigin::Index(_) => return None,
            }
        }
        Some(Cover::new(v, q, points, planes))
    }

    fn bitsets(&self) -> Vec<Vec<u64>> {
        self.sets
            .iter()
            .map(|s| crate::kneser::bitset_from(self.universe_size, s.elements.iter().copied()))
            .collect()
    }

    fn covers(&self, chosen: &[usize]) -> bool {
        let mut seen = vec![false; self.universe_size];
        for &i in chosen {
            for &e in &self.sets[i].elements {
                seen[e] = true;
            }
        }
        seen.into_iter().all(|x| x)
    }
}

/// Universe: the lines of PG(v-1,q). Sets: the lines through each point,
/// then the lines in each plane.
pub fn cover_instance(inc: &Incidences) -> SetCoverInstance {
    let points = (0..inc.point_count()).map(|p| CoverSet {
        elements: inc.lines_through_point(p).to_vec(),
        origin: SetOrigin::Point(p),
    });
    let planes = (0..inc.plane_count()).map(|p| CoverSet {
        elements: inc.lines_in_plane(p).to_vec(),
        origin: SetOrigin::Plane(p),
    });
    SetCoverInstance {
        universe_size: inc.line_count(),
        sets: points.chain(planes).collect(),
        ambient: Some((inc.v(), inc.q())),
    }
}

/// What a lower bound may look at in a search node.
pub struct BoundInput<'a> {
    pub uncovered: &'a [u64],
    pub uncovered_count: usize,
    /// `|S ∩ uncovered|` per set; zero for sets excluded in this branch.
    pub coverage: &'a [usize],
    pub sets: &'a [Vec<u64>],
}

pub trait LowerBound: Send + Sync {
    fn name(&self) -> &'static str;
    /// A lower bound on the number of further sets needed.
    fn bound(&self, input: &BoundInput<'_>) -> usize;
}

/// `⌈uncovered / largest remaining coverage⌉`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CoverageBound;

impl LowerBound for CoverageBound {
    fn name(&self) -> &'static str {
        "coverage"
    }

    fn bound(&self, input: &BoundInput<'_>) -> usize {
        if input.uncovered_count == 0 {
            return 0;
        }
        match input.coverage.iter().copied().max().unwrap_or(0) {
            0 => usize::MAX / 2,
            m => input.uncovered_count.div_ceil(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityCertificate<W> {
    pub optimum: usize,
    pub witness: W,
    #[serde(with = "u64_string")]
    pub nodes: u64,
    #[serde(with = "u64_string")]
    pub cutoffs: u64,
    pub exhaustive: bool,
}

impl<W: Serialize> OptimalityCertificate<W> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

impl<W: for<'de> Deserialize<'de>> OptimalityCertificate<W> {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Counters are unbounded in principle, so they travel as decimal strings.
mod u64_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub sets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planes: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSetWitness {
    pub vertices: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub max_nodes: u64,
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_nodes: DEFAULT_MAX_NODES,
            threads: 1,
        }
    }
}

struct Shared {
    /// `(size << 32) | branch` of the incumbent; branch 0 is the greedy start.
    best: AtomicU64,
    nodes: AtomicU64,
    cutoffs: AtomicU64,
    aborted: AtomicBool,
    max_nodes: u64,
}

impl Shared {
    fn pack(size: usize, branch: usize) -> u64 {
        ((size as u64) << 32) | branch as u64
    }

    /// Whether a node of `branch` that needs at least `total` sets can still win.
    fn can_improve(&self, total: usize, branch: usize) -> bool {
        Shared::pack(total, branch) < self.best.load(Ordering::Relaxed)
    }

    fn offer(&self, size: usize, branch: usize) -> bool {
        let mine = Shared::pack(size, branch);
        self.best.fetch_min(mine, Ordering::Relaxed) > mine
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

struct CoverSearch<'a> {
    sets: &'a [Vec<u64>],
    containing: &'a [Vec<usize>],
    bound: &'a dyn LowerBound,
    shared: &'a Shared,
    branch: usize,
    best: Option<Vec<usize>>,
}

fn count_bits(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn intersect_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

#[inline]
fn has_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + words[i].trailing_zeros() as usize)
}

#[inline]
fn clear_bit(words: &mut [u64], i: usize) {
    words[i / 64] &= !(1 << (i % 64));
}

/// Per-node data shared by the optimisation and find-all searches.
struct NodeView {
    coverage: Vec<usize>,
    uncovered_count: usize,
}

fn node_view(sets: &[Vec<u64>], uncovered: &[u64], available: &[u64]) -> NodeView {
    let coverage = sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if has_bit(available, i) {
                intersect_count(s, uncovered)
            } else {
                0
            }
        })
        .collect();
    NodeView {
        coverage,
        uncovered_count: count_bits(uncovered),
    }
}

/// The uncovered element with fewest available covering sets (least index on
/// ties) and its covering sets by decreasing coverage, lowest index last.
fn branching_choice(
    containing: &[Vec<usize>],
    uncovered: &[u64],
    available: &[u64],
    coverage: &[usize],
) -> Option<Vec<usize>> {
    let mut best: Option<(usize, usize)> = None;
    for e in bits(uncovered) {
        let n = containing[e]
            .iter()
            .filter(|&&s| has_bit(available, s))
            .count();
        if best.is_none_or(|(_, m)| n < m) {
            best = Some((e, n));
            if n <= 1 {
                break;
            }
        }
    }
    let (e, _) = best?;
    let mut options: Vec<usize> = containing[e]
        .iter()
        .copied()
        .filter(|&s| has_bit(available, s))
        .collect();
    options.sort_by(|&a, &b| coverage[b].cmp(&coverage[a]).then(b.cmp(&a)));
    Some(options)
}

impl CoverSearch<'_> {
    fn run(&mut self, uncovered: &[u64], available: &mut Vec<u64>, chosen: &mut Vec<usize>) {
        if !self.shared.tick() {
            return;
        }
        if uncovered.iter().all(|&w| w == 0) {
            if self.shared.offer(chosen.len(), self.branch) {
                self.best = Some(chosen.clone());
            }
            return;
        }
        let view = node_view(self.sets, uncovered, available);
        let lb = self.bound.bound(&BoundInput {
            uncovered,
            uncovered_count: view.uncovered_count,
            coverage: &view.coverage,
            sets: self.sets,
        });
        if !self
            .shared
            .can_improve(chosen.len() + lb.max(1), self.branch)
        {
            self.shared.cutoffs.fetch_add(1, Ordering::Relaxed);
            return;
        }
        let Some(options) = branching_choice(self.containing, uncovered, available, &view.coverage)
        else {
            return;
        };
        let saved = available.clone();
        for s in options {
            clear_bit(available, s);
            let next: Vec<u64> = uncovered
                .iter()
                .zip(&self.sets[s])
                .map(|(u, x)| u & !x)
                .collect();
            chosen.push(s);
            let mut child_available = available.clone();
            self.run(&next, &mut child_available, chosen);
            chosen.pop();
            if self.shared.aborted.load(Ordering::Relaxed) {
                break;
            }
        }
        *available = saved;
    }
}

fn greedy_cover(sets: &[Vec<u64>], universe: &[u64]) -> Option<Vec<usize>> {
    let mut uncovered = universe.to_vec();
    let mut chosen = Vec::new();
    while uncovered.iter().any(|&w| w != 0) {
        let (best, cov) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, intersect_count(s, &uncovered)))
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if cov == 0 {
            return None;
        }
        chosen.push(best);
        for (u, x) in uncovered.iter_mut().zip(&sets[best]) {
            *u &= !x;
        }
    }
    Some(chosen)
}

fn full_bitset(n: usize) -> Vec<u64> {
    crate::kneser::bitset_from(n, 0..n)
}

pub fn min_set_cover(
    inst: &SetCoverInstance,
    cfg: &SolverConfig,
) -> Result<OptimalityCertificate<CoverWitness>> {
    min_set_cover_with(inst, cfg, &CoverageBound)
}

/// Branch and bound from a greedy incumbent. Branches on an uncovered element
/// with fewest covering sets; option `i` takes set `i` and excludes the
/// options tried before it, so the subtrees partition the covers.
pub fn min_set_cover_with(
    inst: &SetCoverInstance,
    cfg: &SolverConfig,
    bound: &dyn LowerBound,
) -> Result<OptimalityCertificate<CoverWitness>> {
    inst.check_feasible()?;
    let sets = inst.bitsets();
    let universe = full_bitset(inst.universe_size);
    let mut containing = vec![Vec::new(); inst.universe_size];
    for (i, s) in inst.sets.iter().enumerate() {
        for &e in &s.elements {
            containing[e].push(i);
        }
    }
    let greedy = greedy_cover(&sets, &universe).expect("feasible instance has a greedy cover");
    let shared = Shared {
        best: AtomicU64::new(Shared::pack(greedy.len(), 0)),
        nodes: AtomicU64::new(1),
        cutoffs: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        max_nodes: cfg.max_nodes,
    };

    // Root expansion is done here so its children can be searched in parallel.
    let mut results: Vec<(usize, Option<Vec<usize>>)> = Vec::new();
    if inst.universe_size > 0 {
        let all_sets = full_bitset(sets.len());
        let view = node_view(&sets, &universe, &all_sets);
        let lb = bound.bound(&BoundInput {
            uncovered: &universe,
            uncovered_count: view.uncovered_count,
            coverage: &view.coverage,
            sets: &sets,
        });
        if shared.can_improve(lb.max(1), 1) {
            let options = branching_choice(&containing, &universe, &all_sets, &view.coverage)
                .expect("feasible root has a branching element");
            let jobs: Vec<(usize, usize, Vec<u64>)> = options
                .iter()
                .enumerate()
                .map(|(i, &s)| {
                    let mut avail = all_sets.clone();
                    for &t in &options[..=i] {
                        clear_bit(&mut avail, t);
                    }
                    (i + 1, s, avail)
                })
                .collect();
            let run_job = |(branch, s, avail): &(usize, usize, Vec<u64>)| {
                let mut search = CoverSearch {
                    sets: &sets,
                    containing: &containing,
                    bound,
                    shared: &shared,
                    branch: *branch,
                    best: None,
                };
                let next: Vec<u64> = universe
                    .iter()
                    .zip(&sets[*s])
                    .map(|(u, x)| u & !x)
                    .collect();
                let mut chosen = vec![*s];
                search.run(&next, &mut avail.clone(), &mut chosen);
                (*branch, search.best)
            };
            results = if cfg.threads > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.threads)
                    .build()
                    .map_err(|e| invalid(e.to_string()))?;
                pool.install(|| jobs.par_iter().map(run_job).collect())
            } else {
                jobs.iter().map(run_job).collect()
            };
        } else {
            shared.cutoffs.fetch_add(1, Ordering::Relaxed);
        }
    }

    let best_packed = shared.best.load(Ordering::Relaxed);
    let best_branch = (best_packed & 0xffff_ffff) as usize;
    let mut witness = if best_branch == 0 {
        greedy
    } else {
        results
            .into_iter()
            .find(|(b, _)| *b == best_branch)
            .and_then(|(_, w)| w)
            .expect("the incumbent branch recorded its witness")
    };
    witness.sort_unstable();
    assert!(
        inst.covers(&witness),
        "set cover witness failed re-validation"
    );
    let (points, planes) = match inst.to_cover(&witness) {
        Some(c) => (Some(c.points), Some(c.planes)),
        None => (None, None),
    };
    Ok(OptimalityCertificate {
        optimum: witness.len(),
        witness: CoverWitness {
            sets: witness,
            points,
            planes,
        },
        nodes: shared
            .nodes
            .load(Ordering::Relaxed)
            .min(cfg.max_nodes.max(1)),
        cutoffs: shared.cutoffs.load(Ordering::Relaxed),
        exhaustive: !shared.aborted.load(Ordering::Relaxed),
    })
}

/// Calls `f` on every `size`-subset of `0..n` in lexicographic order, passing
/// the union of the chosen bitsets; `f` returns false to stop.
fn for_each_union(
    sets: &[Vec<u64>],
    size: usize,
    start: usize,
    acc: &[u64],
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize], &[u64]),
) {
    if chosen.len() == size {
        f(chosen, acc);
        return;
    }
    let need = size - chosen.len();
    for i in start..=sets.len().saturating_sub(need) {
        let next: Vec<u64> = acc.iter().zip(&sets[i]).map(|(a, b)| a | b).collect();
        chosen.push(i);
        for_each_union(sets, size, i + 1, &next, chosen, f);
        chosen.pop();
    }
}

/// All covers using exactly `size` sets, as sorted lists of set indices in
/// lexicographic order.
pub fn enumerate_min_covers(
    inst: &SetCoverInstance,
    size: usize,
    cfg: &SolverConfig,
) -> Result<Vec<Vec<usize>>> {
    if size > inst.sets.len() {
        return Ok(Vec::new());
    }
    let candidates = binom_u64(inst.sets.len() as u64, size as u64);
    if candidates <= BRUTE_FORCE_MAX {
        enumerate_covers_brute_force(inst, size)
    } else {
        enumerate_covers_search(inst, size, cfg)
    }
}

/// Checks every `size`-subset of the sets.
pub fn enumerate_covers_brute_force(
    inst: &SetCoverInstance,
    size: usize,
) -> Result<Vec<Vec<usize>>> {
    let sets = inst.bitsets();
    let universe = full_bitset(inst.universe_size);
    let mut found = Vec::new();
    let empty = vec![0u64; universe.len()];
    for_each_union(
        &sets,
        size,
        0,
        &empty,
        &mut Vec::new(),
        &mut |chosen, union| {
            if union == universe.as_slice() {
                found.push(chosen.to_vec());
            }
        },
    );
    Ok(found)
}

/// Find-all variant of the branch and bound: keeps every cover with at most
/// `size` sets and pads short ones with every choice of further available sets.
pub fn enumerate_covers_search(
    inst: &SetCoverInstance,
    size: usize,
    cfg: &SolverConfig,
) -> Result<Vec<Vec<usize>>> {
    let sets = inst.bitsets();
    let universe = full_bitset(inst.universe_size);
    let mut containing = vec![Vec::new(); inst.universe_size];
    for (i, s) in inst.sets.iter().enumerate() {
        for &e in &s.elements {
            containing[e].push(i);
        }
    }
    let mut found = Vec::new();
    let mut nodes = 0u64;
    let mut avail = full_bitset(sets.len());
    enumerate_rec(
        &sets,
        &containing,
        size,
        &universe,
        &mut avail,
        &mut Vec::new(),
        &mut found,
        &mut nodes,
        cfg.max_nodes,
    )?;
    for c in &mut found {
        c.sort_unstable();
    }
    found.sort();
    found.dedup();
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    sets: &[Vec<u64>],
    containing: &[Vec<usize>],
    size: usize,
    uncovered: &[u64],
    available: &mut Vec<u64>,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    nodes: &mut u64,
    max_nodes: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > max_nodes {
        return Err(Error::ResourceGuard(format!(
            "cover enumeration exceeded {max_nodes} nodes"
        )));
    }
    if uncovered.iter().all(|&w| w == 0) {
        let pool: Vec<usize> = bits(available).collect();
        pad_combinations(&pool, size - chosen.len(), 0, chosen, found);
        return Ok(());
    }
    let view = node_view(sets, uncovered, available);
    let lb = CoverageBound.bound(&BoundInput {
        uncovered,
        uncovered_count: view.uncovered_count,
        coverage: &view.coverage,
        sets,
    });
    if chosen.len() + lb > size {
        return Ok(());
    }
    let Some(options) = branching_choice(containing, uncovered, available, &view.coverage) else {
        return Ok(());
    };
    let saved = available.clone();
    for s in options {
        clear_bit(available, s);
        let next: Vec<u64> = uncovered
            .iter()
            .zip(&sets[s])
            .map(|(u, x)| u & !x)
            .collect();
        chosen.push(s);
        let mut child = available.clone();
        enumerate_rec(
            sets, containing, size, &next, &mut child, chosen, found, nodes, max_nodes,
        )?;
        chosen.pop();
    }
    *available = saved;
    Ok(())
}

fn pad_combinations(
    pool: &[usize],
    need: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if need == 0 {
        out.push(chosen.clone());
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < need {
            break;
        }
        chosen.push(pool[i]);
        pad_combinations(pool, need - 1, i + 1, chosen, out);
        chosen.pop();
    }
}

fn complement_rows(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.n();
    let full = full_bitset(n);
    (0..n)
        .map(|u| {
            let mut row: Vec<u64> = g.row(u).iter().zip(&full).map(|(a, f)| !a & f).collect();
            clear_bit(&mut row, u);
            row
        })
        .collect()
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !g.has_edge(a, b)))
}

struct CliqueSearch<'a> {
    comp: &'a [Vec<u64>],
    best: Vec<usize>,
    nodes: u64,
    cutoffs: u64,
    max_nodes: u64,
    aborted: bool,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of `p` in the complement: each class is independent
    /// there, so the class count bounds any clique inside `p`.
    fn colour_order(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut uncoloured = p.to_vec();
        let mut order = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_bit(&q) {
                clear_bit(&mut uncoloured, v);
                clear_bit(&mut q, v);
                for (x, y) in q.iter_mut().zip(&self.comp[v]) {
                    *x &= !y;
                }
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, clique: &mut Vec<usize>, p: &mut [u64]) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return;
        }
        let order = self.colour_order(p);
        for &(v, colour) in order.iter().rev() {
            if clique.len() + colour <= self.best.len() {
                self.cutoffs += 1;
                return;
            }
            clique.push(v);
            let mut next: Vec<u64> = p.iter().zip(&self.comp[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, &mut next);
            }
            clique.pop();
            clear_bit(p, v);
            if self.aborted {
                return;
            }
        }
    }
}

/// Maximum independent set by branch and bound with greedy colouring bounds
/// (maximum clique in the complement).
pub fn max_independent_set(
    g: &Graph,
    cfg: &SolverConfig,
) -> Result<OptimalityCertificate<IndependentSetWitness>> {
    let comp = complement_rows(g);
    let mut search = CliqueSearch {
        comp: &comp,
        best: Vec::new(),
        nodes: 0,
        cutoffs: 0,
        max_nodes: cfg.max_nodes,
        aborted: false,
    };
    if g.n() > 0 {
        let mut p = full_bitset(g.n());
        search.expand(&mut Vec::new(), &mut p);
    }
    let mut best = search.best;
    best.sort_unstable();
    assert!(
        is_independent(g, &best),
        "independent set witness failed re-validation"
    );
    Ok(OptimalityCertificate {
        optimum: best.len(),
        witness: IndependentSetWitness { vertices: best },
        nodes: search.nodes,
        cutoffs: search.cutoffs,
        exhaustive: !search.aborted,
    })
}

/// Every maximal independent set (Bron–Kerbosch with pivoting on the
/// complement), each sorted, in lexicographic order.
pub fn maximal_independent_sets(g: &Graph, max_nodes: u64) -> Result<Vec<Vec<usize>>> {
    maximal_sets_at_least(g, 0, max_nodes)
}

/// Maximal independent sets with at least `min_size` vertices; branches that
/// cannot reach that size are pruned.
pub fn maximal_sets_at_least(
    g: &Graph,
    min_size: usize,
    max_nodes: u64,
) -> Result<Vec<Vec<usize>>> {
    let comp = complement_rows(g);
    let mut bk = BronKerbosch {
        comp: &comp,
        min_size,
        out: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    let p = full_bitset(g.n());
    let x = vec![0u64; p.len()];
    bk.run(&mut Vec::new(), p, x)?;
    let mut out = bk.out;
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    Ok(out)
}

struct BronKerbosch<'a> {
    comp: &'a [Vec<u64>],
    min_size: usize,
    out: Vec<Vec<usize>>,
    nodes: u64,
    max_nodes: u64,
}

impl BronKerbosch<'_> {
    fn run(&mut self, r: &mut Vec<usize>, mut p: Vec<u64>, mut x: Vec<u64>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::ResourceGuard(format!(
                "maximal set enumeration exceeded {} nodes",
                self.max_nodes
            )));
        }
        if p.iter().all(|&w| w == 0) {
            if x.iter().all(|&w| w == 0) && r.len() >= self.min_size {
                self.out.push(r.clone());
            }
            return Ok(());
        }
        if r.len() + count_bits(&p) < self.min_size {
            return Ok(());
        }
        let comp = self.comp;
        let pivot = bits(&p)
            .chain(bits(&x))
            .max_by_key(|&u| (intersect_count(&p, &comp[u]), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        let candidates: Vec<usize> = bits(&p).filter(|&v| !has_bit(&comp[pivot], v)).collect();
        for v in candidates {
            let np: Vec<u64> = p.iter().zip(&comp[v]).map(|(a, b)| a & b).collect();
            let nx: Vec<u64> = x.iter().zip(&comp[v]).map(|(a, b)| a & b).collect();
            r.push(v);
            self.run(r, np, nx)?;
            r.pop();
            clear_bit(&mut p, v);
            x[v / 64] |= 1 << (v % 64);
        }
        Ok(())
    }
}

/// Every independent set of maximum size.
pub fn maximum_independent_sets(g: &Graph, cfg: &SolverConfig) -> Result<Vec<Vec<usize>>> {
    let cert = max_independent_set(g, cfg)?;
    if !cert.exhaustive {
        return Err(Error::ResourceGuard(format!(
            "independence search exceeded {} nodes",
            cfg.max_nodes
        )));
    }
    maximal_sets_at_least(g, cert.optimum, cfg.max_nodes)
}

/// All sets of exactly `size` points of PG(v-1,q) meeting every line, sorted,
/// in lexicographic order. Branches on an uncovered line with fewest available
/// points; option `i` takes its `i`-th point and excludes the earlier ones.
pub fn enumerate_blocking_sets(
    inc: &Incidences,
    size: usize,
    max_nodes: u64,
) -> Result<Vec<Vec<usize>>> {
    let lines = inc.line_count();
    let points = inc.point_count();
    let line_sets: Vec<Vec<u64>> = (0..points)
        .map(|p| crate::kneser::bitset_from(lines, inc.lines_through_point(p).iter().copied()))
        .collect();
    let per_point = inc.lines_through_point(0).len();
    let ctx = BlockingCtx {
        inc,
        line_sets: &line_sets,
        per_point,
        size,
        max_nodes,
    };
    let mut found = Vec::new();
    let mut nodes = 0;
    ctx.run(
        &full_bitset(lines),
        &mut full_bitset(points),
        &mut Vec::new(),
        &mut found,
        &mut nodes,
    )?;
    for s in &mut found {
        s.sort_unstable();
    }
    found.sort();
    found.dedup();
    Ok(found)
}

struct BlockingCtx<'a> {
    inc: &'a Incidences,
    line_sets: &'a [Vec<u64>],
    per_point: usize,
    size: usize,
    max_nodes: u64,
}

impl BlockingCtx<'_> {
    fn run(
        &self,
        uncovered: &[u64],
        available: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > self.max_nodes {
            return Err(Error::ResourceGuard(format!(
                "blocking set enumeration exceeded {} nodes",
                self.max_nodes
            )));
        }
        let remaining = count_bits(uncovered);
        if remaining == 0 {
            let pool: Vec<usize> = bits(available).collect();
            pad_combinations(&pool, self.size - chosen.len(), 0, chosen, found);
            return Ok(());
        }
        let budget = self.size - chosen.len();
        if budget == 0 || remaining > budget * self.per_point {
            return Ok(());
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for l in bits(uncovered) {
            let opts: Vec<usize> = self
                .inc
                .points_on_line(l)
                .iter()
                .copied()
                .filter(|&p| has_bit(available, p))
                .collect();
            if best.as_ref().is_none_or(|(_, b)| opts.len() < b.len()) {
                let done = opts.len() <= 1;
                best = Some((l, opts));
                if done {
                    break;
                }
            }
        }
        let (_, options) = best.expect("uncovered is nonempty");
        let saved = available.clone();
        for p in options {
            clear_bit(available, p);
            let next: Vec<u64> = uncovered
                .iter()
                .zip(&self.line_sets[p])
                .map(|(u, x)| u & !x)
                .collect();
            chosen.push(p);
            let mut child = available.clone();
            self.run(&next, &mut child, chosen, found, nodes)?;
            chosen.pop();
        }
        *available = saved;
        Ok(())
    }
}

/// Smallest size admitting a line-blocking set, with all sets of that size.
pub fn minimum_blocking_sets(inc: &Incidences, max_nodes: u64) -> Result<(usize, Vec<Vec<usize>>)> {
    for size in 1..=inc.point_count() {
        let sets = enumerate_blocking_sets(inc, size, max_nodes)?;
        if !sets.is_empty() {
            return Ok((size, sets));
        }
    }
    unreachable!("the set of all points blocks every line")
}

/// χ(qK_{v:k}) as the minimum size of a cover of PG(v-1,q). Only k = 2 is supported:
/// the cover correspondence is specific to lines.
pub fn chromatic_number_via_covers(
    v: usize,
    k: usize,
    q: u32,
    cfg: &SolverConfig,
) -> Result<(Incidences, OptimalityCertificate<CoverWitness>)> {
    if k != 2 {
        return Err(invalid(format!(
            "chromatic numbers via covers are only established for k = 2 (got k = {k})"
        )));
    }
    if v < 4 {
        return Err(invalid(format!(
            "qK_{{{v}:2}} needs v ≥ 4 for a non-trivial cover problem"
        )));
    }
    let inc = Incidences::new(v, q)?;
    let cert = min_set_cover(&cover_instance(&inc), cfg)?;
    Ok((inc, cert))
}
