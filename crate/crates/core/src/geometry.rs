//! Points, lines and planes of PG(v-1,q), covers of the lines by points and
//! planes, the explicit colourings of qK_{v:k}, and standard covers of PG(3,q).
//!
//! Points, lines and planes are the 1-, 2- and 3-subspaces of F_q^v and are
//! referred to by their rank in the canonical enumeration.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf::{Field, FieldElement};
use crate::kneser::{
    bits, bitset_from, disjoint, Colouring, Graph, GraphKind, DEFAULT_MAX_VERTICES,
};
use crate::subspaces::{join, nullspace, point_ranks, Grassmannian, Matrix, Subspace};

/// Incidence structure of PG(v-1,q) restricted to points, lines and planes.
#[derive(Clone, Debug)]
pub struct Incidences {
    v: usize,
    q: u32,
    field: Field,
    points: Grassmannian,
    lines: Grassmannian,
    planes: Grassmannian,
    points_on_line: Vec<Vec<usize>>,
    lines_through_point: Vec<Vec<usize>>,
    points_in_plane: Vec<Vec<usize>>,
    lines_in_plane: Vec<Vec<usize>>,
    planes_through_line: Vec<Vec<usize>>,
    line_of_pair: HashMap<(usize, usize), usize>,
}

impl Incidences {
    pub fn new(v: usize, q: u32) -> Result<Incidences> {
        Incidences::guarded(v, q, DEFAULT_MAX_VERTICES)
    }

    pub fn guarded(v: usize, q: u32, max_elements: u64) -> Result<Incidences> {
        if v < 3 {
            return Err(invalid(format!("PG({}, {q}) has no planes", v as i64 - 1)));
        }
        let field = Field::from_order(q as u64)?;
        let points = Grassmannian::new(v, 1, q)?;
        let lines = Grassmannian::new(v, 2, q)?;
        let planes = Grassmannian::new(v, 3, q)?;
        if lines.len().max(planes.len()) > max_elements {
            return Err(Error::ResourceGuard(format!(
                "PG({}, {q}) has {} lines and {} planes, above the limit {max_elements}",
                v - 1,
                lines.len(),
                planes.len()
            )));
        }
        let ranks = |s: &Subspace| -> Vec<usize> {
            point_ranks(&field, s)
                .into_iter()
                .map(|p| p as usize)
                .collect()
        };
        let points_on_line: Vec<Vec<usize>> = lines.iter().map(|l| ranks(&l)).collect();
        let points_in_plane: Vec<Vec<usize>> = planes.iter().map(|p| ranks(&p)).collect();

        let mut lines_through_point = vec![Vec::new(); points.len() as usize];
        let mut line_of_pair = HashMap::new();
        for (l, pts) in points_on_line.iter().enumerate() {
            for (i, &a) in pts.iter().enumerate() {
                lines_through_point[a].push(l);
                for &b in &pts[i + 1..] {
                    line_of_pair.insert((a, b), l);
                }
            }
        }

        let mut planes_through_line = vec![Vec::new(); lines.len() as usize];
        let lines_in_plane: Vec<Vec<usize>> = points_in_plane
            .iter()
            .map(|pts| {
                let mut ls = BTreeSet::new();
                for (i, &a) in pts.iter().enumerate() {
                    for &b in &pts[i + 1..] {
                        ls.insert(line_of_pair[&(a, b)]);
                    }
                }
                ls.into_iter().collect()
            })
            .collect();
        for (p, ls) in lines_in_plane.iter().enumerate() {
            for &l in ls {
                planes_through_line[l].push(p);
            }
        }

        Ok(Incidences {
            v,
            q,
            field,
            points,
            lines,
            planes,
            points_on_line,
            lines_through_point,
            points_in_plane,
            lines_in_plane,
            planes_through_line,
            line_of_pair,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn point_count(&self) -> usize {
        self.points.len() as usize
    }

    pub fn line_count(&self) -> usize {
        self.lines.len() as usize
    }

    pub fn plane_count(&self) -> usize {
        self.planes.len() as usize
    }

    pub fn point(&self, p: usize) -> Subspace {
        self.points.unrank(p as u64).expect("point rank in range")
    }

    pub fn line(&self, l: usize) -> Subspace {
        self.lines.unrank(l as u64).expect("line rank in range")
    }

    pub fn plane(&self, p: usize) -> Subspace {
        self.planes.unrank(p as u64).expect("plane rank in range")
    }

    pub fn points_on_line(&self, l: usize) -> &[usize] {
        &self.points_on_line[l]
    }

    pub fn lines_through_point(&self, p: usize) -> &[usize] {
        &self.lines_through_point[p]
    }

    pub fn points_in_plane(&self, p: usize) -> &[usize] {
        &self.points_in_plane[p]
    }

    pub fn lines_in_plane(&self, p: usize) -> &[usize] {
        &self.lines_in_plane[p]
    }

    pub fn planes_through_line(&self, l: usize) -> &[usize] {
        &self.planes_through_line[l]
    }

    /// The line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        self.line_of_pair.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn point_on_line(&self, p: usize, l: usize) -> bool {
        self.points_on_line[l].binary_search(&p).is_ok()
    }

    pub fn line_in_plane(&self, l: usize, p: usize) -> bool {
        self.lines_in_plane[p].binary_search(&l).is_ok()
    }

    pub fn point_in_plane(&self, x: usize, p: usize) -> bool {
        self.points_in_plane[p].binary_search(&x).is_ok()
    }

    /// Common line of two distinct planes (only meaningful for v = 4, where it always exists).
    pub fn plane_meet(&self, a: usize, b: usize) -> Option<usize> {
        let common: Vec<usize> = self.lines_in_plane[a]
            .iter()
            .copied()
            .filter(|&l| self.line_in_plane(l, b))
            .collect();
        (common.len() == 1).then(|| common[0])
    }

    pub fn rank_of_plane(&self, s: &Subspace) -> Result<usize> {
        Ok(self.planes.rank_of(s)? as usize)
    }

    pub fn rank_of_line(&self, s: &Subspace) -> Result<usize> {
        Ok(self.lines.rank_of(s)? as usize)
    }

    pub fn rank_of_point(&self, s: &Subspace) -> Result<usize> {
        Ok(self.points.rank_of(s)? as usize)
    }

    /// Colour id for a cover element: points keep their rank, planes are
    /// shifted past all point ranks.
    pub fn element_colour(&self, e: CoverElement) -> usize {
        match e {
            CoverElement::Point(p) => p,
            CoverElement::Plane(p) => self.point_count() + p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverElement {
    Point(usize),
    Plane(usize),
}

/// A set of points and planes meant to be incident with every line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cover {
    pub v: usize,
    pub q: u32,
    pub points: Vec<usize>,
    pub planes: Vec<usize>,
}

impl Cover {
    pub fn new(v: usize, q: u32, mut points: Vec<usize>, mut planes: Vec<usize>) -> Cover {
        points.sort_unstable();
        points.dedup();
        planes.sort_unstable();
        planes.dedup();
        Cover {
            v,
            q,
            points,
            planes,
        }
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn s(&self) -> usize {
        self.planes.len()
    }

    pub fn size(&self) -> usize {
        self.r() + self.s()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cover serializes")
    }

    pub fn from_json(text: &str) -> Result<Cover> {
        let c: Cover = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Cover::new(c.v, c.q, c.points, c.planes))
    }

    fn check(&self, inc: &Incidences) -> Result<()> {
        if self.v != inc.v || self.q != inc.q {
            return Err(Error::DimensionMismatch(format!(
                "cover of PG({}, {}) used with PG({}, {})",
                self.v as i64 - 1,
                self.q,
                inc.v - 1,
                inc.q
            )));
        }
        if self.points.iter().any(|&p| p >= inc.point_count())
            || self.planes.iter().any(|&p| p >= inc.plane_count())
        {
            return Err(invalid(
                "cover refers to a point or plane rank out of range",
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Cover,
    /// The least-rank line incident with no element of the cover.
    NotCover {
        line: usize,
    },
}

impl CoverVerdict {
    pub fn is_cover(self) -> bool {
        self == CoverVerdict::Cover
    }
}

/// The least-rank cover element incident with `line`, points first.
fn covering_element(inc: &Incidences, c: &Cover, line: usize) -> Option<CoverElement> {
    let point = inc
        .points_on_line(line)
        .iter()
        .find(|p| c.points.binary_search(p).is_ok());
    if let Some(&p) = point {
        return Some(CoverElement::Point(p));
    }
    inc.planes_through_line(line)
        .iter()
        .find(|p| c.planes.binary_search(p).is_ok())
        .map(|&p| CoverElement::Plane(p))
}

pub fn is_cover(inc: &Incidences, c: &Cover) -> Result<CoverVerdict> {
    c.check(inc)?;
    Ok((0..inc.line_count())
        .find(|&l| covering_element(inc, c, l).is_none())
        .map_or(CoverVerdict::Cover, |line| CoverVerdict::NotCover { line }))
}

/// Each line is coloured by an incident cover element: least-rank point if
/// any, else least-rank plane.
pub fn cover_to_colouring(inc: &Incidences, c: &Cover, g: &Graph) -> Result<Colouring> {
    match g.kind() {
        GraphKind::QKneser { v, k: 2, q } if v == inc.v && q == inc.q => {}
        other => {
            return Err(Error::DimensionMismatch(format!(
                "cover of PG({}, {}) cannot colour {other:?}",
                inc.v - 1,
                inc.q
            )))
        }
    }
    c.check(inc)?;
    let colours = (0..inc.line_count())
        .map(|l| {
            covering_element(inc, c, l)
                .map(|e| inc.element_colour(e))
                .ok_or(Error::NotCover { line: l })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Colouring::new(colours))
}

/// Colours each k-space by the least-rank point it shares with the span of
/// the last v-k+1 coordinate vectors; uses `[v-k+1]` colours.
pub fn hyperplane_colouring(v: usize, k: usize, q: u32) -> Result<Colouring> {
    if k == 0 || v < 2 * k {
        return Err(invalid(format!(
            "hyperplane colouring needs 1 ≤ k and v ≥ 2k (v={v}, k={k})"
        )));
    }
    let field = Field::from_order(q as u64)?;
    let u = Subspace::coordinate(v, q, &(k - 1..v).collect::<Vec<_>>());
    let in_u: BTreeSet<u64> = point_ranks(&field, &u).into_iter().collect();
    let colours = Grassmannian::new(v, k, q)?
        .iter()
        .map(|s| {
            let p = point_ranks(&field, &s)
                .into_iter()
                .find(|p| in_u.contains(p))
                .expect("a (v-k+1)-space meets every k-space");
            p as usize
        })
        .collect();
    Ok(Colouring::new(colours))
}

/// The (q^k + q^{k-1})-colouring of qK_{2k:k}. With T = ⟨e_1..e_k⟩ inside
/// U = ⟨e_1..e_{k+1}⟩, a k-space S gets the least-rank point of S∩U outside T
/// if there is one; otherwise the least-rank hyperplane on T, not on U,
/// containing S. Hyperplane colours are shifted past all point ranks.
pub fn middle_colouring(k: usize, q: u32) -> Result<Colouring> {
    if k < 2 {
        return Err(invalid("middle colouring needs k ≥ 2"));
    }
    let v = 2 * k;
    let field = Field::from_order(q as u64)?;
    let point_total = Grassmannian::new(v, 1, q)?.len() as usize;
    let u = Subspace::coordinate(v, q, &(0..=k).collect::<Vec<_>>());
    let t = Subspace::coordinate(v, q, &(0..k).collect::<Vec<_>>());
    let t_points: BTreeSet<u64> = point_ranks(&field, &t).into_iter().collect();
    let u_minus_t = bitset_from(
        point_total,
        point_ranks(&field, &u)
            .into_iter()
            .filter(|p| !t_points.contains(p))
            .map(|p| p as usize),
    );

    // Hyperplanes on T not on U are the kernels of (0,..,0, 1, a_{k+2}, .., a_{2k}).
    let hyperplanes = Grassmannian::new(v, v - 1, q)?;
    let mut candidates: Vec<(u64, Vec<FieldElement>)> = Vec::new();
    for code in 0..(q as u64).pow(k as u32 - 1) {
        let mut normal = vec![FieldElement::ZERO; v];
        normal[k] = FieldElement::ONE;
        let mut c = code;
        for slot in normal[k + 1..].iter_mut().rev() {
            *slot = field.element((c % q as u64) as u32)?;
            c /= q as u64;
        }
        let kernel = nullspace(&field, &Matrix::from_rows(v, &[normal.clone()])?);
        let w = crate::subspaces::canonicalize(&field, v, &kernel)?;
        candidates.push((hyperplanes.rank_of(&w)?, normal));
    }
    candidates.sort();

    let annihilates = |normal: &[FieldElement], s: &Subspace| {
        s.basis().row_iter().all(|row| {
            row.iter()
                .zip(normal)
                .fold(FieldElement::ZERO, |acc, (&a, &b)| {
                    field.add(acc, field.mul(a, b))
                })
                .is_zero()
        })
    };

    let colours = Grassmannian::new(v, k, q)?
        .iter()
        .map(|s| {
            let pts = point_ranks(&field, &s);
            if let Some(p) = pts
                .iter()
                .find(|&&p| u_minus_t[p as usize / 64] >> (p % 64) & 1 == 1)
            {
                return *p as usize;
            }
            let (rank, _) = candidates
                .iter()
                .find(|(_, n)| annihilates(n, &s))
                .expect("S ∩ U ⊆ T forces a hyperplane on T, off U, containing S");
            point_total + *rank as usize
        })
        .collect();
    Ok(Colouring::new(colours))
}

/// Parameters of a standard cover of PG(3,q): a plane H, a point x on H and
/// 1 ≤ s ≤ q lines of H through x.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardCoverParams {
    pub q: u32,
    pub plane: usize,
    pub point: usize,
    pub lines: Vec<usize>,
}

fn require_pg3(inc: &Incidences) -> Result<()> {
    if inc.v != 4 {
        return Err(Error::DimensionMismatch(format!(
            "standard covers live in PG(3,q), not PG({}, {})",
            inc.v - 1,
            inc.q
        )));
    }
    Ok(())
}

/// The q(q+1-s) points of H off the chosen lines together with the sq planes
/// other than H through them.
pub fn standard_cover(inc: &Incidences, params: &StandardCoverParams) -> Result<Cover> {
    require_pg3(inc)?;
    let q = inc.q;
    let mut lines = params.lines.clone();
    lines.sort_unstable();
    lines.dedup();
    let (h, x) = (params.plane, params.point);
    let ok = params.q == q
        && h < inc.plane_count()
        && x < inc.point_count()
        && lines.len() == params.lines.len()
        && (1..=q as usize).contains(&lines.len())
        && inc.point_in_plane(x, h)
        && lines
            .iter()
            .all(|&l| l < inc.line_count() && inc.point_on_line(x, l) && inc.line_in_plane(l, h));
    if !ok {
        return Err(invalid(format!(
            "invalid standard cover parameters {params:?}"
        )));
    }
    let points = inc
        .points_in_plane(h)
        .iter()
        .copied()
        .filter(|&p| lines.iter().all(|&l| !inc.point_on_line(p, l)))
        .collect();
    let planes = lines
        .iter()
        .flat_map(|&l| {
            inc.planes_through_line(l)
                .iter()
                .copied()
                .filter(|&p| p != h)
        })
        .collect();
    Ok(Cover::new(4, q, points, planes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyStep {
    Size,
    Plane,
    Lines,
    Point,
    Planes,
    Points,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardVerdict {
    /// Parameters reproducing the cover. When s = 1 the point x and when
    /// s = q the plane H are not determined by the cover; the least rank is chosen.
    Standard(StandardCoverParams),
    NotStandard {
        step: ClassifyStep,
        reason: String,
    },
}

impl StandardVerdict {
    pub fn is_standard(&self) -> bool {
        matches!(self, StandardVerdict::Standard(_))
    }
}

/// Decides whether `c` is a standard cover of PG(3,q) by reconstructing its parameters.
pub fn classify_standard(inc: &Incidences, c: &Cover) -> Result<StandardVerdict> {
    require_pg3(inc)?;
    c.check(inc)?;
    let q = inc.q as usize;
    let fail = |step, reason: String| Ok(StandardVerdict::NotStandard { step, reason });

    // sizes: r = q(q+1-s), planes = sq
    let (r, planes) = (c.r(), c.s());
    if r + planes != q * q + q || planes % q != 0 || planes == 0 {
        return fail(
            ClassifyStep::Size,
            format!("r = {r}, s = {planes} is not (q(q+1-s), sq)"),
        );
    }
    let s = planes / q;

    // H is spanned by the points unless s = q, where the points span a line m
    // and every plane through m reproduces the cover.
    let field = inc.field();
    let span = c
        .points
        .iter()
        .try_fold(Subspace::zero(4, inc.q), |acc, &p| {
            join(field, &acc, &inc.point(p))
        })?;
    let h = match (s < q, span.dim()) {
        (true, 3) => inc.rank_of_plane(&span)?,
        (false, 2) => {
            let m = inc.rank_of_line(&span)?;
            inc.planes_through_line(m)[0]
        }
        (_, d) => {
            return fail(
                ClassifyStep::Plane,
                format!("cover points span dimension {d}"),
            )
        }
    };
    if c.planes.binary_search(&h).is_ok() {
        return fail(
            ClassifyStep::Plane,
            format!("plane {h} is both H and a cover plane"),
        );
    }

    let lines: BTreeSet<usize> = c
        .planes
        .iter()
        .map(|&p| {
            inc.plane_meet(p, h)
                .expect("distinct planes of PG(3,q) meet in a line")
        })
        .collect();
    if lines.len() != s {
        return fail(
            ClassifyStep::Lines,
            format!("cover planes meet H in {} lines, expected {s}", lines.len()),
        );
    }
    let lines: Vec<usize> = lines.into_iter().collect();

    let common: Vec<usize> = inc
        .points_on_line(lines[0])
        .iter()
        .copied()
        .filter(|&p| lines.iter().all(|&l| inc.point_on_line(p, l)))
        .collect();
    let x = match (s, common.as_slice()) {
        (1, _) => common[0],
        (_, [x]) => *x,
        _ => return fail(ClassifyStep::Point, "the lines are not concurrent".into()),
    };

    let expected_planes: BTreeSet<usize> = lines
        .iter()
        .flat_map(|&l| {
            inc.planes_through_line(l)
                .iter()
                .copied()
                .filter(|&p| p != h)
        })
        .collect();
    if expected_planes.iter().copied().ne(c.planes.iter().copied()) {
        return fail(
            ClassifyStep::Planes,
            "cover planes are not all planes ≠ H on the lines".into(),
        );
    }
    let expected_points: Vec<usize> = inc
        .points_in_plane(h)
        .iter()
        .copied()
        .filter(|&p| lines.iter().all(|&l| !inc.point_on_line(p, l)))
        .collect();
    if expected_points != c.points {
        return fail(
            ClassifyStep::Points,
            "cover points are not the points of H off the lines".into(),
        );
    }

    let params = StandardCoverParams {
        q: inc.q,
        plane: h,
        point: x,
        lines,
    };
    debug_assert_eq!(standard_cover(inc, &params).as_ref(), Ok(c));
    Ok(StandardVerdict::Standard(params))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineSetKind {
    /// All lines through a point.
    PointStar(usize),
    /// All lines in a plane.
    PlaneSet(usize),
    Other,
}

/// Recognises the two canonical independent sets of qK_{v:2}.
pub fn classify_line_set(inc: &Incidences, lines: &[usize]) -> LineSetKind {
    let mut sorted = lines.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(p) =
        (0..inc.point_count()).find(|&p| inc.lines_through_point(p) == sorted.as_slice())
    {
        return LineSetKind::PointStar(p);
    }
    if let Some(p) = (0..inc.plane_count()).find(|&p| inc.lines_in_plane(p) == sorted.as_slice()) {
        return LineSetKind::PlaneSet(p);
    }
    LineSetKind::Other
}

/// Whether the points listed in `set` meet every line (a line-blocking set).
pub fn blocks_all_lines(inc: &Incidences, set: &[usize]) -> bool {
    let b = bitset_from(inc.point_count(), set.iter().copied());
    (0..inc.line_count()).all(|l| {
        !disjoint(
            &b,
            &bitset_from(inc.point_count(), inc.points_on_line(l).iter().copied()),
        )
    })
}

/// Point ranks in a bitset, ascending.
pub fn bitset_members(b: &[u64]) -> Vec<usize> {
    bits(b).collect()
}
