//! Homomorphisms between q-Kneser graphs and into ordinary Kneser graphs, an
//! exhaustive homomorphism verifier, and the certificate that qK_{5:2} has no
//! homomorphism to qK_{3:1}.
//!
//! Targets are never materialized: each image vertex carries the sorted ranks
//! of its projective points (or its subset), and two images are adjacent
//! exactly when those lists are disjoint.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf::{Field, FieldElement};
use crate::kneser::{binom_u64, subset_rank, Adjacency, Graph, GraphKind};
use crate::qcombin::{bracket, fractional_chromatic, gauss_binomial, independence_bound};
use crate::subspaces::{canonicalize, point_ranks, Grassmannian, Subspace};

/// Image of one source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageLabel {
    /// Sorted projective point ranks; for Kneser targets, the subset itself.
    pub points: Vec<u64>,
    pub subspace: Option<Subspace>,
}

#[derive(Clone, Debug)]
pub struct VertexMap {
    pub name: &'static str,
    pub source: GraphKind,
    pub target: GraphKind,
    pub images: Vec<usize>,
    pub labels: Vec<ImageLabel>,
    target_order: usize,
}

impl VertexMap {
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Adjacency among image vertices, read off their labels.
    pub fn image_adjacency(&self) -> ImageAdjacency<'_> {
        let mut by_id = HashMap::new();
        for (id, label) in self.images.iter().zip(&self.labels) {
            by_id.entry(*id).or_insert(label);
        }
        ImageAdjacency {
            order: self.target_order,
            by_id,
        }
    }

    /// A map given only by target ids, checked against an explicit target.
    pub fn from_images(
        source: GraphKind,
        target: GraphKind,
        target_order: usize,
        images: Vec<usize>,
    ) -> VertexMap {
        let labels = images
            .iter()
            .map(|&i| ImageLabel {
                points: vec![i as u64],
                subspace: None,
            })
            .collect();
        VertexMap {
            name: "explicit",
            source,
            target,
            images,
            labels,
            target_order,
        }
    }

    /// Distinct image vertices.
    pub fn image_count(&self) -> usize {
        let mut ids = self.images.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }
}

pub struct ImageAdjacency<'a> {
    order: usize,
    by_id: HashMap<usize, &'a ImageLabel>,
}

impl Adjacency for ImageAdjacency<'_> {
    fn order(&self) -> usize {
        self.order
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        let a = self.by_id[&u];
        let b = self.by_id[&v];
        sorted_disjoint(&a.points, &b.points)
    }
}

fn sorted_disjoint(a: &[u64], b: &[u64]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn q_kneser_target(
    name: &'static str,
    source: GraphKind,
    target: (usize, usize, u32),
    field: &Field,
    images: Vec<Subspace>,
) -> Result<VertexMap> {
    let (v, k, q) = target;
    let grass = Grassmannian::new(v, k, q)?;
    let ids = images
        .iter()
        .map(|s| grass.rank_of(s).map(|r| r as usize))
        .collect::<Result<Vec<_>>>()?;
    let labels = images
        .into_iter()
        .map(|s| ImageLabel {
            points: point_ranks(field, &s),
            subspace: Some(s),
        })
        .collect();
    Ok(VertexMap {
        name,
        source,
        target: GraphKind::QKneser { v, k, q },
        images: ids,
        labels,
        target_order: usize::try_from(grass.len()).unwrap_or(usize::MAX),
    })
}

fn source_subspaces(v: usize, k: usize, q: u32) -> Result<Vec<Subspace>> {
    if k == 0 || k > v {
        return Err(invalid(format!("need 1 ≤ k ≤ v (v={v}, k={k})")));
    }
    Ok(Grassmannian::new(v, k, q)?.iter().collect())
}

fn rows(s: &Subspace) -> Vec<Vec<FieldElement>> {
    s.basis().row_iter().map(<[FieldElement]>::to_vec).collect()
}

/// qK_{v:k} → qK_{v+1:k}: pad every basis row with a trailing zero.
pub fn extension_map(v: usize, k: usize, q: u32) -> Result<VertexMap> {
    let field = Field::from_order(q as u64)?;
    let images = source_subspaces(v, k, q)?
        .iter()
        .map(|s| {
            let padded: Vec<Vec<FieldElement>> = rows(s)
                .into_iter()
                .map(|mut r| {
                    r.push(FieldElement::ZERO);
                    r
                })
                .collect();
            canonicalize(&field, v + 1, &padded)
        })
        .collect::<Result<Vec<_>>>()?;
    q_kneser_target(
        "extension",
        GraphKind::QKneser { v, k, q },
        (v + 1, k, q),
        &field,
        images,
    )
}

/// The embedding GF(q) → GF(q^r) sending the generator of GF(q) over its
/// prime field to the least root (by index) of its defining polynomial.
pub struct SubfieldEmbedding {
    pub small: Field,
    pub big: Field,
    table: Vec<FieldElement>,
}

impl SubfieldEmbedding {
    pub fn new(q: u32, r: u32) -> Result<SubfieldEmbedding> {
        if r == 0 {
            return Err(Error::IncompatibleField(
                "extension degree must be at least 1".into(),
            ));
        }
        let small = Field::from_order(q as u64)?;
        let big_order = (q as u64)
            .checked_pow(r)
            .ok_or_else(|| Error::IncompatibleField(format!("{q}^{r} overflows")))?;
        let big = Field::from_order(big_order)?;
        let p = small.characteristic();
        let prime = |c: u32| {
            let mut x = FieldElement::ZERO;
            for _ in 0..c {
                x = big.add(x, FieldElement::ONE);
            }
            x
        };
        let eval = |poly: &[u32], x: FieldElement| {
            poly.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                big.add(big.mul(acc, x), prime(c))
            })
        };
        let root = if small.degree() == 1 {
            FieldElement::ZERO
        } else {
            big.elements()
                .find(|&x| eval(small.irreducible(), x).is_zero())
                .ok_or_else(|| {
                    Error::IncompatibleField(format!("GF({q}) has no image in GF({big_order})"))
                })?
        };
        let table: Vec<FieldElement> = small
            .elements()
            .map(|a| {
                let d = small.digits(a);
                if small.degree() == 1 {
                    prime(d[0])
                } else {
                    d.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                        big.add(big.mul(acc, root), prime(c))
                    })
                }
            })
            .collect();
        let emb = SubfieldEmbedding { small, big, table };
        for a in emb.small.elements() {
            for b in emb.small.elements() {
                let sum = emb.image(emb.small.add(a, b)) == emb.big.add(emb.image(a), emb.image(b));
                let prod =
                    emb.image(emb.small.mul(a, b)) == emb.big.mul(emb.image(a), emb.image(b));
                if !sum || !prod {
                    return Err(Error::IncompatibleField(format!(
                        "embedding of GF({q}) into GF({big_order}) failed"
                    )));
                }
            }
        }
        debug_assert_eq!(p, emb.big.characteristic());
        Ok(emb)
    }

    pub fn image(&self, a: FieldElement) -> FieldElement {
        self.table[a.index() as usize]
    }
}

/// qK_{v:k} → q^rK_{v:k}: read the basis over GF(q^r).
pub fn subfield_map(v: usize, k: usize, q: u32, r: u32) -> Result<VertexMap> {
    let emb = SubfieldEmbedding::new(q, r)?;
    let images = source_subspaces(v, k, q)?
        .iter()
        .map(|s| {
            let lifted: Vec<Vec<FieldElement>> = rows(s)
                .into_iter()
                .map(|row| row.into_iter().map(|x| emb.image(x)).collect())
                .collect();
            canonicalize(&emb.big, v, &lifted)
        })
        .collect::<Result<Vec<_>>>()?;
    q_kneser_target(
        "subfield",
        GraphKind::QKneser { v, k, q },
        (v, k, emb.big.order()),
        &emb.big,
        images,
    )
}

/// Coordinates of GF(q^r) over GF(q) in the power basis `1, ω, …, ω^{r-1}`
/// of the primitive element ω of GF(q^r).
pub struct FieldReduction {
    pub embedding: SubfieldEmbedding,
    pub basis: Vec<FieldElement>,
    coords: Vec<Vec<FieldElement>>,
}

impl FieldReduction {
    pub fn new(q: u32, r: u32) -> Result<FieldReduction> {
        let embedding = SubfieldEmbedding::new(q, r)?;
        let big = &embedding.big;
        let omega = big.primitive_element();
        let basis: Vec<FieldElement> = (0..r).map(|j| big.pow(omega, j as u64)).collect();
        let mut coords = vec![Vec::new(); big.order() as usize];
        let small: Vec<FieldElement> = embedding.small.elements().collect();
        let mut digits = vec![0usize; r as usize];
        loop {
            let c: Vec<FieldElement> = digits.iter().map(|&d| small[d]).collect();
            let y = c
                .iter()
                .zip(&basis)
                .fold(FieldElement::ZERO, |acc, (&ci, &b)| {
                    big.add(acc, big.mul(embedding.image(ci), b))
                });
            let slot = &mut coords[y.index() as usize];
            if !slot.is_empty() {
                return Err(Error::IncompatibleField(
                    "power basis is not a basis".into(),
                ));
            }
            *slot = c;
            let Some(pos) = digits.iter().position(|&d| d + 1 < small.len()) else {
                break;
            };
            digits[pos] += 1;
            digits[..pos].iter_mut().for_each(|d| *d = 0);
        }
        Ok(FieldReduction {
            embedding,
            basis,
            coords,
        })
    }

    pub fn coordinates(&self, y: FieldElement) -> &[FieldElement] {
        &self.coords[y.index() as usize]
    }

    /// Blockwise expansion of a vector over GF(q^r) to rv coordinates over GF(q).
    pub fn expand(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        x.iter()
            .flat_map(|&y| self.coordinates(y).iter().copied())
            .collect()
    }
}

/// q^rK_{v:k} → qK_{rv:rk}: each basis row b spawns the rows `β·b` for β in
/// the power basis, expanded over GF(q).
pub fn field_reduction_map(v: usize, k: usize, q: u32, r: u32) -> Result<VertexMap> {
    let red = FieldReduction::new(q, r)?;
    let big = &red.embedding.big;
    let r = r as usize;
    let images = source_subspaces(v, k, big.order())?
        .iter()
        .map(|s| {
            let mut spawned = Vec::with_capacity(r * k);
            for row in rows(s) {
                for &b in &red.basis {
                    let scaled: Vec<FieldElement> = row.iter().map(|&x| big.mul(b, x)).collect();
                    spawned.push(red.expand(&scaled));
                }
            }
            let image = canonicalize(&red.embedding.small, r * v, &spawned)?;
            assert_eq!(
                image.dim(),
                r * k,
                "field reduction must multiply dimension by r"
            );
            Ok(image)
        })
        .collect::<Result<Vec<_>>>()?;
    q_kneser_target(
        "field_reduction",
        GraphKind::QKneser {
            v,
            k,
            q: big.order(),
        },
        (r * v, r * k, q),
        &red.embedding.small,
        images,
    )
}

/// qK_{v:k} → qK_{v-1:k-1}: keep RREF rows 2..k and delete the first
/// coordinate. Those rows vanish there: either row 1 pivots in column 1 and
/// RREF clears the column below it, or no row has a pivot at or before it.
pub fn echelon_shadow_map(v: usize, k: usize, q: u32) -> Result<VertexMap> {
    if k < 2 {
        return Err(invalid(format!("echelon shadow needs k ≥ 2 (k={k})")));
    }
    let field = Field::from_order(q as u64)?;
    let images = source_subspaces(v, k, q)?
        .iter()
        .map(|s| {
            let kept: Vec<Vec<FieldElement>> = rows(s)
                .into_iter()
                .skip(1)
                .map(|row| {
                    assert!(
                        row[0].is_zero(),
                        "RREF rows below the first vanish in column 1"
                    );
                    row[1..].to_vec()
                })
                .collect();
            let image = canonicalize(&field, v - 1, &kept)?;
            assert_eq!(image.dim(), k - 1);
            Ok(image)
        })
        .collect::<Result<Vec<_>>>()?;
    q_kneser_target(
        "echelon_shadow",
        GraphKind::QKneser { v, k, q },
        (v - 1, k - 1, q),
        &field,
        images,
    )
}

/// qK_{v:k} → K_{[v]:[k]}: a subspace goes to the set of its projective points.
pub fn point_set_map(v: usize, k: usize, q: u32, max_vertices: u64) -> Result<VertexMap> {
    let field = Field::from_order(q as u64)?;
    let n = crate::qcombin::bracket(v as u32, q as u64);
    let points: u64 = u64::try_from(&n).unwrap_or(u64::MAX);
    if points > max_vertices || points > u32::MAX as u64 {
        return Err(Error::ResourceGuard(format!(
            "K_{{[v]:[k]}} has ground set {n} > {max_vertices}"
        )));
    }
    let m = bracket(k as u32, q as u64);
    let m = u64::try_from(&m).expect("[k] ≤ [v]");
    let target_order = binom_u64(points, m);
    let mut ids = Vec::new();
    let mut labels = Vec::new();
    for s in source_subspaces(v, k, q)? {
        let set = point_ranks(&field, &s);
        let as_usize: Vec<usize> = set.iter().map(|&x| x as usize).collect();
        ids.push(subset_rank(&as_usize) as usize);
        labels.push(ImageLabel {
            points: set,
            subspace: Some(s),
        });
    }
    Ok(VertexMap {
        name: "point_set",
        source: GraphKind::QKneser { v, k, q },
        target: GraphKind::Kneser {
            v: points as usize,
            k: m as usize,
        },
        images: ids,
        labels,
        target_order: usize::try_from(target_order).unwrap_or(usize::MAX),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HomVerdict {
    Hom,
    NotHom { u: usize, v: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InducedVerdict {
    Induced,
    NotInduced { u: usize, v: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomReport {
    pub map: String,
    pub source: GraphKind,
    pub target: GraphKind,
    pub verdict: HomVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced: Option<InducedVerdict>,
    pub edges_checked: u64,
    pub injective: bool,
}

impl HomReport {
    pub fn is_hom(&self) -> bool {
        self.verdict == HomVerdict::Hom
    }

    pub fn is_induced(&self) -> bool {
        self.induced == Some(InducedVerdict::Induced)
    }
}

/// First pair `(u, w)` with `u < w` in lexicographic order satisfying `bad`.
fn first_pair(
    n: usize,
    threads: usize,
    bad: impl Fn(usize, usize) -> bool + Sync,
) -> Option<(usize, usize)> {
    let row = |u: usize| (u + 1..n).find(|&w| bad(u, w)).map(|w| (u, w));
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| (0..n).into_par_iter().find_map_first(row))
    } else {
        (0..n).find_map(row)
    }
}

/// Checks every edge of `source`; in induced mode also every non-edge.
/// Witnesses are the first offending pair in edge-sorted order.
pub fn verify_homomorphism(
    source: &Graph,
    f: &VertexMap,
    target: &(dyn Adjacency + Sync),
    induced: bool,
    threads: usize,
) -> Result<HomReport> {
    if f.images.len() != source.n() {
        return Err(Error::Partial(format!(
            "map defined on {} of {} source vertices",
            f.images.len(),
            source.n()
        )));
    }
    if let Some(&bad) = f.images.iter().find(|&&i| i >= target.order()) {
        return Err(Error::IndexOutOfRange {
            index: bad as u64,
            size: target.order() as u64,
        });
    }
    let img = &f.images;
    let broken = first_pair(source.n(), threads, |u, w| {
        source.has_edge(u, w) && !target.adjacent(img[u], img[w])
    });
    let verdict = match broken {
        Some((u, v)) => HomVerdict::NotHom { u, v },
        None => HomVerdict::Hom,
    };
    let induced = induced.then(|| {
        match first_pair(source.n(), threads, |u, w| {
            !source.has_edge(u, w) && target.adjacent(img[u], img[w])
        }) {
            Some((u, v)) => InducedVerdict::NotInduced { u, v },
            None => InducedVerdict::Induced,
        }
    });
    Ok(HomReport {
        map: f.name.to_string(),
        source: f.source,
        target: f.target,
        verdict,
        induced,
        edges_checked: source.edge_count() as u64,
        injective: f.image_count() == f.len(),
    })
}

/// Exact rational written as `{"num": "…", "den": "…"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalString {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalString {
    fn from(r: &BigRational) -> Self {
        RationalString {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub left: RationalString,
    pub relation: String,
    pub right: RationalString,
    pub holds: bool,
}

/// Why qK_{5:2} has no homomorphism into qK_{3:1}: the fractional chromatic
/// number of the source exceeds the chromatic number of the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoHomCertificate {
    pub q: String,
    pub source_vertices: String,
    pub source_independence: String,
    pub fractional_lower_bound: RationalString,
    pub q_cubed_plus_q: String,
    pub target_chromatic: String,
    pub comparisons: Vec<Comparison>,
    pub no_hom: bool,
}

impl NoHomCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

pub fn no_hom_certificate(q: u64) -> Result<NoHomCertificate> {
    if q < 2 {
        return Err(invalid(format!("q must be at least 2 (q={q})")));
    }
    let vertices = gauss_binomial(5, 2, q);
    let alpha = independence_bound(5, 2, q)?;
    let ratio = BigRational::new(BigInt::from(vertices.clone()), BigInt::from(alpha.clone()));
    assert_eq!(
        ratio,
        fractional_chromatic(5, 2, q)?,
        "|V|/α must equal [5]/[2]"
    );
    let qb = BigInt::from(q);
    let middle = BigRational::from_integer(qb.pow(3) + &qb);
    let chi_target = BigRational::from_integer(BigInt::from(bracket(3, q)));
    let cmp = |l: &BigRational, rel: &str, r: &BigRational, holds: bool| Comparison {
        left: l.into(),
        relation: rel.to_string(),
        right: r.into(),
        holds,
    };
    let comparisons = vec![
        cmp(&ratio, ">", &middle, ratio > middle),
        cmp(&middle, ">=", &chi_target, middle >= chi_target),
        cmp(&ratio, ">", &chi_target, ratio > chi_target),
    ];
    let no_hom = comparisons.iter().all(|c| c.holds);
    Ok(NoHomCertificate {
        q: q.to_string(),
        source_vertices: vertices.to_string(),
        source_independence: alpha.to_string(),
        fractional_lower_bound: (&ratio).into(),
        q_cubed_plus_q: middle.numer().to_string(),
        target_chromatic: chi_target.numer().to_string(),
        comparisons,
        no_hom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::{build_kneser, build_q_kneser};
    use crate::subspaces::trivial_intersection;

    fn verify(source: (usize, usize, u32), f: &VertexMap, induced: bool) -> HomReport {
        let g = build_q_kneser(source.0, source.1, source.2).unwrap();
        verify_homomorphism(&g, f, &f.image_adjacency(), induced, 1).unwrap()
    }

    #[test]
    fn extension_examples() {
        let f = extension_map(4, 2, 2).unwrap();
        let e12 = Subspace::coordinate(5, 2, &[0, 1]);
        assert_eq!(f.labels[0].subspace.as_ref().unwrap(), &e12);
        let r = verify((4, 2, 2), &f, true);
        assert!(r.is_hom() && r.is_induced() && r.injective);
        // cross-check against the materialized target
        let target = build_q_kneser(5, 2, 2).unwrap();
        let g = build_q_kneser(4, 2, 2).unwrap();
        assert_eq!(verify_homomorphism(&g, &f, &target, true, 1).unwrap(), r);
        assert!(f
            .labels
            .iter()
            .all(|l| l.subspace.as_ref().unwrap().dim() == 2));
    }

    #[test]
    fn subfield_examples() {
        let f = subfield_map(2, 1, 2, 2).unwrap();
        assert_eq!(f.target_order(), 5);
        assert_eq!(f.image_count(), 3);
        let r = verify((4, 2, 2), &subfield_map(4, 2, 2, 2).unwrap(), false);
        assert!(r.is_hom());
        let id = subfield_map(4, 2, 3, 1).unwrap();
        assert_eq!(id.images, (0..130).collect::<Vec<_>>());
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        for (q, r) in [(2, 2), (2, 3), (2, 4), (4, 2), (3, 2), (2, 8), (4, 4)] {
            let emb = SubfieldEmbedding::new(q, r).unwrap();
            assert_eq!(emb.image(FieldElement::ONE), FieldElement::ONE);
            let mut seen: Vec<u32> = emb.small.elements().map(|a| emb.image(a).index()).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), q as usize);
        }
        assert!(SubfieldEmbedding::new(2, 0).is_err());
    }

    #[test]
    fn spread_from_field_reduction() {
        let f = field_reduction_map(2, 1, 2, 2).unwrap();
        let field = Field::from_order(2).unwrap();
        let spaces: Vec<&Subspace> = f
            .labels
            .iter()
            .map(|l| l.subspace.as_ref().unwrap())
            .collect();
        assert_eq!(spaces.len(), 5);
        for (i, a) in spaces.iter().enumerate() {
            assert_eq!((a.dim(), a.ambient_dim()), (2, 4));
            for b in &spaces[i + 1..] {
                assert!(trivial_intersection(&field, a, b).unwrap());
            }
        }
        let r = verify((2, 1, 4), &f, true);
        assert!(r.is_hom() && r.is_induced());
    }

    #[test]
    fn reduction_coordinates_round_trip() {
        let red = FieldReduction::new(2, 3).unwrap();
        let big = &red.embedding.big;
        for y in big.elements() {
            let back = red
                .coordinates(y)
                .iter()
                .zip(&red.basis)
                .fold(FieldElement::ZERO, |acc, (&c, &b)| {
                    big.add(acc, big.mul(red.embedding.image(c), b))
                });
            assert_eq!(back, y);
        }
    }

    #[test]
    fn echelon_shadow_examples() {
        let f = echelon_shadow_map(4, 2, 2).unwrap();
        assert_eq!(
            f.labels[0].subspace.as_ref().unwrap(),
            &Subspace::coordinate(3, 2, &[0])
        );
        assert!(verify((4, 2, 2), &f, false).is_hom());
        assert!(verify((5, 2, 2), &echelon_shadow_map(5, 2, 2).unwrap(), false).is_hom());
        assert!(echelon_shadow_map(4, 1, 2).is_err());
    }

    #[test]
    fn point_set_examples() {
        let f = point_set_map(3, 1, 2, 1_000_000).unwrap();
        assert_eq!(f.target, GraphKind::Kneser { v: 7, k: 1 });
        assert_eq!(f.image_count(), 7);
        let f = point_set_map(4, 2, 2, 1_000_000).unwrap();
        assert!(f.labels.iter().all(|l| l.points.len() == 3));
        let r = verify((4, 2, 2), &f, true);
        assert!(r.is_hom() && r.is_induced());
        let target = build_kneser(15, 3).unwrap();
        let g = build_q_kneser(4, 2, 2).unwrap();
        assert!(verify_homomorphism(&g, &f, &target, true, 1)
            .unwrap()
            .is_induced());
        assert!(matches!(
            point_set_map(5, 2, 3, 100),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn verifier_trivial_cases() {
        let g = build_kneser(5, 2).unwrap();
        let kind = g.kind();
        let constant = VertexMap::from_images(kind, kind, 10, vec![0; 10]);
        let r = verify_homomorphism(&g, &constant, &g, false, 1).unwrap();
        let first = g.edges().next().unwrap();
        assert_eq!(
            r.verdict,
            HomVerdict::NotHom {
                u: first.0,
                v: first.1
            }
        );
        let identity = VertexMap::from_images(kind, kind, 10, (0..10).collect());
        let r = verify_homomorphism(&g, &identity, &g, true, 2).unwrap();
        assert!(r.is_hom() && r.is_induced());
        let partial = VertexMap::from_images(kind, kind, 10, vec![0; 3]);
        assert!(matches!(
            verify_homomorphism(&g, &partial, &g, false, 1),
            Err(Error::Partial(_))
        ));
        let out = VertexMap::from_images(kind, kind, 10, vec![11; 10]);
        assert!(verify_homomorphism(&g, &out, &g, false, 1).is_err());
    }

    #[test]
    fn no_hom_values() {
        let c = no_hom_certificate(2).unwrap();
        assert_eq!(
            c.fractional_lower_bound,
            RationalString {
                num: "31".into(),
                den: "3".into()
            }
        );
        assert_eq!(
            (c.q_cubed_plus_q.as_str(), c.target_chromatic.as_str()),
            ("10", "7")
        );
        assert!(c.no_hom);
        let c = no_hom_certificate(3).unwrap();
        assert_eq!(
            c.fractional_lower_bound,
            RationalString {
                num: "121".into(),
                den: "4".into()
            }
        );
        assert_eq!(
            (c.q_cubed_plus_q.as_str(), c.target_chromatic.as_str()),
            ("30", "13")
        );
        for q in 2..=16 {
            assert!(no_hom_certificate(q).unwrap().no_hom, "q={q}");
        }
        assert!(no_hom_certificate(1).is_err());
        let json = no_hom_certificate(2).unwrap().to_json();
        assert!(json.contains("\"num\": \"31\"") && !json.contains('.'));
    }
}
