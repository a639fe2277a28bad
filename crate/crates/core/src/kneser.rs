//! q-Kneser graphs qK_{v:k}, ordinary Kneser graphs K_{v:k}, colourings and
//! DIMACS export.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf::Field;
use crate::qcombin;
use crate::subspaces::{point_ranks, trivial_intersection, Grassmannian, Subspace};

pub const DEFAULT_MAX_VERTICES: u64 = 1_000_000;

/// Point sets are used for adjacency only while PG(v-1,q) has at most this many points.
const POINT_BITSET_MAX: u64 = 1 << 16;
/// Dense adjacency needs n²/8 bytes; 2^16 vertices is 512 MiB.
pub const MAX_DENSE_VERTICES: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GraphKind {
    QKneser { v: usize, k: usize, q: u32 },
    Kneser { v: usize, k: usize },
    Generic,
}

/// What a vertex stands for: vertex `i` is the subspace or subset of rank `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    Subspace(u64),
    Subset(u64),
    Plain(usize),
}

/// Constant-time adjacency queries; implemented by materialized graphs and by
/// lazily evaluated targets in homomorphism checks.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn adjacent(&self, u: usize, v: usize) -> bool;
}

/// Simple undirected graph stored as a dense bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    kind: GraphKind,
}

impl Graph {
    pub fn empty(n: usize, kind: GraphKind) -> Graph {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            kind,
        }
    }

    pub fn from_fn(
        n: usize,
        kind: GraphKind,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Graph {
        let mut g = Graph::empty(n, kind);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(invalid(format!(
                "cannot add edge {u}-{v} to a graph on {} vertices",
                self.n
            )));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Neighbourhood of `u` as a bitset of `words()` words.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbours(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    pub fn label(&self, u: usize) -> VertexLabel {
        match self.kind {
            GraphKind::QKneser { .. } => VertexLabel::Subspace(u as u64),
            GraphKind::Kneser { .. } => VertexLabel::Subset(u as u64),
            GraphKind::Generic => VertexLabel::Plain(u),
        }
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.n
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
}

/// Indices of the set bits of a bitset, ascending.
pub fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

pub(crate) fn bitset_from(n: usize, members: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut b = vec![0u64; n.div_ceil(64)];
    for m in members {
        b[m / 64] |= 1 << (m % 64);
    }
    b
}

pub(crate) fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn guard_vertices(count: u64, max_vertices: u64, what: &str) -> Result<usize> {
    if count > max_vertices {
        return Err(Error::ResourceGuard(format!(
            "{what} has {count} vertices, above the limit {max_vertices}"
        )));
    }
    if count > MAX_DENSE_VERTICES {
        return Err(Error::ResourceGuard(format!(
            "{what} has {count} vertices; dense adjacency is limited to {MAX_DENSE_VERTICES}"
        )));
    }
    Ok(count as usize)
}

pub fn build_q_kneser(v: usize, k: usize, q: u32) -> Result<Graph> {
    build_q_kneser_guarded(v, k, q, DEFAULT_MAX_VERTICES)
}

/// qK_{v:k}: vertices are the k-subspaces in enumeration order, adjacent when
/// they meet only in zero.
pub fn build_q_kneser_guarded(v: usize, k: usize, q: u32, max_vertices: u64) -> Result<Graph> {
    if k == 0 || k > v {
        return Err(invalid(format!("qK_{{{v}:{k}}} needs 1 ≤ k ≤ v")));
    }
    let field = Field::from_order(q as u64)?;
    let gr = Grassmannian::new(v, k, q)?;
    let n = guard_vertices(
        gr.len(),
        max_vertices,
        &format!("qK_{{{v}:{k}}} over GF({q})"),
    )?;
    let kind = GraphKind::QKneser { v, k, q };
    let spaces: Vec<Subspace> = gr.iter().collect();

    let point_count: u64 = qcombin::bracket(v as u32, q as u64)
        .try_into()
        .unwrap_or(u64::MAX);
    if point_count <= POINT_BITSET_MAX {
        let sets: Vec<Vec<u64>> = spaces
            .iter()
            .map(|s| {
                bitset_from(
                    point_count as usize,
                    point_ranks(&field, s).into_iter().map(|p| p as usize),
                )
            })
            .collect();
        Ok(Graph::from_fn(n, kind, |a, b| disjoint(&sets[a], &sets[b])))
    } else {
        Ok(Graph::from_fn(n, kind, |a, b| {
            trivial_intersection(&field, &spaces[a], &spaces[b]).expect("same ambient")
        }))
    }
}

/// Rank of a sorted k-subset of `{0, ..}` in colexicographic order.
pub fn subset_rank(set: &[usize]) -> u64 {
    set.iter()
        .enumerate()
        .map(|(i, &a)| binom_u64(a as u64, i as u64 + 1))
        .sum()
}

/// Inverse of [`subset_rank`] for k-subsets.
pub fn subset_unrank(mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        let mut a = i as u64;
        while binom_u64(a + 1, i as u64 + 1) <= rank {
            a += 1;
        }
        rank -= binom_u64(a, i as u64 + 1);
        out[i] = a as usize;
    }
    out
}

pub(crate) fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All k-subsets of `{0..v}` in colexicographic order.
pub fn k_subsets(v: usize, k: usize) -> Vec<Vec<usize>> {
    let total = binom_u64(v as u64, k as u64);
    (0..total).map(|r| subset_unrank(r, k)).collect()
}

pub fn build_kneser(v: usize, k: usize) -> Result<Graph> {
    build_kneser_guarded(v, k, DEFAULT_MAX_VERTICES)
}

/// K_{v:k}: k-subsets in colex order, adjacent when disjoint.
pub fn build_kneser_guarded(v: usize, k: usize, max_vertices: u64) -> Result<Graph> {
    if k == 0 || k > v || v > 64 {
        return Err(invalid(format!("K_{{{v}:{k}}} needs 1 ≤ k ≤ v ≤ 64")));
    }
    guard_vertices(
        binom_u64(v as u64, k as u64),
        max_vertices,
        &format!("K_{{{v}:{k}}}"),
    )?;
    let masks: Vec<u64> = k_subsets(v, k)
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &x| m | 1 << x))
        .collect();
    Ok(Graph::from_fn(
        masks.len(),
        GraphKind::Kneser { v, k },
        |a, b| masks[a] & masks[b] == 0,
    ))
}

/// A total vertex colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    colours: Vec<usize>,
    palette_size: usize,
}

impl Colouring {
    pub fn new(colours: Vec<usize>) -> Colouring {
        let mut palette = colours.clone();
        palette.sort_unstable();
        palette.dedup();
        Colouring {
            colours,
            palette_size: palette.len(),
        }
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn colour(&self, u: usize) -> usize {
        self.colours[u]
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }
}

/// Colour of a k-set is its largest element when that exceeds 2k; the sets
/// inside `{1..2k}` are split by whether they contain 1.
pub fn largest_element_colouring(v: usize, k: usize) -> Result<Colouring> {
    if k == 0 || v < 2 * k {
        return Err(invalid(format!(
            "largest-element colouring needs 1 ≤ k and v ≥ 2k (v={v}, k={k})"
        )));
    }
    let colours = k_subsets(v, k)
        .iter()
        .map(|s| {
            let largest = s[k - 1] + 1;
            if largest > 2 * k {
                largest
            } else if s[0] == 0 {
                0
            } else {
                1
            }
        })
        .collect();
    Ok(Colouring::new(colours))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColouringVerdict {
    Proper,
    /// An edge whose ends share a colour; the lexicographically first one.
    Improper {
        u: usize,
        v: usize,
    },
}

impl ColouringVerdict {
    pub fn is_proper(self) -> bool {
        self == ColouringVerdict::Proper
    }
}

pub fn verify_colouring(g: &Graph, c: &Colouring) -> Result<ColouringVerdict> {
    if c.len() != g.n() {
        return Err(Error::Partial(format!(
            "colouring covers {} of {} vertices",
            c.len(),
            g.n()
        )));
    }
    Ok(g.edges()
        .find(|&(u, v)| c.colour(u) == c.colour(v))
        .map_or(ColouringVerdict::Proper, |(u, v)| {
            ColouringVerdict::Improper { u, v }
        }))
}

/// DIMACS edge format: `p edge n m`, then `e u v` (1-based, `u < v`, sorted).
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_dimacs(g: &Graph, w: &mut impl Write) -> Result<()> {
    w.write_all(to_dimacs(g).as_bytes())?;
    Ok(())
}

pub fn export_dimacs(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    write_dimacs(g, &mut f)
}

/// Parses DIMACS edge format into a generic graph; `c` comment lines are skipped.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0;
    for (lineno, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: {line:?}", lineno + 1));
        match fields.as_slice() {
            [] | ["c", ..] => {}
            ["p", "edge", n, m] => {
                let n: usize = n.parse().map_err(|_| bad())?;
                declared_edges = m.parse().map_err(|_| bad())?;
                graph = Some(Graph::empty(n, GraphKind::Generic));
            }
            ["e", u, v] => {
                let g = graph.as_mut().ok_or_else(bad)?;
                let u: usize = u.parse().map_err(|_| bad())?;
                let v: usize = v.parse().map_err(|_| bad())?;
                if u == 0 || v == 0 {
                    return Err(bad());
                }
                g.add_edge(u - 1, v - 1).map_err(|_| bad())?;
            }
            _ => return Err(bad()),
        }
    }
    let g = graph.ok_or_else(|| Error::Parse("missing problem line".into()))?;
    if g.edge_count() != declared_edges {
        return Err(Error::Parse(format!(
            "header declares {declared_edges} edges, found {}",
            g.edge_count()
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_kneser_small() {
        let g = build_q_kneser(4, 2, 2).unwrap();
        assert_eq!(g.n(), 35);
        assert_eq!(g.regular_degree(), Some(16));
        for q in [2u32, 3, 4] {
            let g = build_q_kneser(3, 1, q).unwrap();
            let n = (q * q + q + 1) as usize;
            assert_eq!(g.n(), n);
            assert_eq!(g.edge_count(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn q_kneser_5_2_2() {
        let g = build_q_kneser(5, 2, 2).unwrap();
        assert_eq!(g.n(), 155);
        assert_eq!(g.regular_degree(), Some(112));
    }

    #[test]
    fn point_set_adjacency_agrees_with_rank_test() {
        let field = Field::from_order(3).unwrap();
        let g = build_q_kneser(4, 2, 3).unwrap();
        let spaces: Vec<_> = Grassmannian::new(4, 2, 3).unwrap().iter().collect();
        for (u, v) in [(0, 1), (0, 129), (5, 77), (100, 101)] {
            assert_eq!(
                g.has_edge(u, v),
                trivial_intersection(&field, &spaces[u], &spaces[v]).unwrap()
            );
        }
    }

    #[test]
    fn guard_trips() {
        assert!(matches!(
            build_q_kneser_guarded(5, 2, 2, 100),
            Err(Error::ResourceGuard(_))
        ));
        assert!(matches!(
            build_kneser_guarded(20, 10, 1000),
            Err(Error::ResourceGuard(_))
        ));
        assert!(build_q_kneser(2, 3, 2).is_err());
        // 925771 vertices pass the vertex limit but not the dense matrix limit
        assert!(matches!(
            build_q_kneser(7, 3, 3),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn kneser_graphs() {
        let petersen = build_kneser(5, 2).unwrap();
        assert_eq!(petersen.n(), 10);
        assert_eq!(petersen.regular_degree(), Some(3));
        assert_eq!(petersen.edge_count(), 15);
        let m = build_kneser(6, 3).unwrap();
        assert_eq!(m.regular_degree(), Some(1));
        let k4 = build_kneser(4, 1).unwrap();
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn colex_ranking() {
        let all = k_subsets(6, 3);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[1], vec![0, 1, 3]);
        assert_eq!(all[2], vec![0, 2, 3]);
        assert_eq!(all[3], vec![1, 2, 3]);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(subset_rank(s), i as u64);
        }
    }

    #[test]
    fn largest_element() {
        let c = largest_element_colouring(5, 2).unwrap();
        assert_eq!(c.palette_size(), 3);
        let g = build_kneser(5, 2).unwrap();
        assert!(verify_colouring(&g, &c).unwrap().is_proper());

        let c = largest_element_colouring(6, 3).unwrap();
        assert_eq!(c.palette_size(), 2);

        let c = largest_element_colouring(6, 2).unwrap();
        assert_eq!(c.palette_size(), 4);
        let g = build_kneser(6, 2).unwrap();
        assert!(g.edges().all(|(u, v)| c.colour(u) != c.colour(v)));

        assert!(largest_element_colouring(5, 3).is_err());
    }

    #[test]
    fn constant_colouring_is_improper() {
        let g = build_kneser(5, 2).unwrap();
        let c = Colouring::new(vec![0; 10]);
        let first = g.edges().next().unwrap();
        assert_eq!(
            verify_colouring(&g, &c).unwrap(),
            ColouringVerdict::Improper {
                u: first.0,
                v: first.1
            }
        );
        let empty = Graph::empty(4, GraphKind::Generic);
        assert!(verify_colouring(&empty, &Colouring::new(vec![0; 4]))
            .unwrap()
            .is_proper());
        assert!(matches!(
            verify_colouring(&g, &Colouring::new(vec![0; 3])),
            Err(Error::Partial(_))
        ));
    }

    #[test]
    fn dimacs() {
        let mut k2 = Graph::empty(2, GraphKind::Generic);
        k2.add_edge(0, 1).unwrap();
        assert_eq!(to_dimacs(&k2), "p edge 2 1\ne 1 2\n");
        assert_eq!(
            to_dimacs(&Graph::empty(3, GraphKind::Generic)),
            "p edge 3 0\n"
        );
        let petersen = build_kneser(5, 2).unwrap();
        let text = to_dimacs(&petersen);
        assert!(text.starts_with("p edge 10 15\n"));
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(to_dimacs(&back), text);
        assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
    }
}
