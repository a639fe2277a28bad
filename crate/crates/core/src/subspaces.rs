//! Matrices over GF(q), reduced row echelon form, and the canonical
//! representation, enumeration and ranking of subspaces of F_q^v.
//!
//! A subspace is stored as its RREF basis, so two subspaces are equal exactly
//! when their bases are equal entry by entry. Enumeration order (and hence
//! every rank used elsewhere as a vertex id) is: pivot column sets in
//! lexicographic order, then the free entries of the basis read row-major as
//! a base-q counter whose last entry is least significant.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<FieldElement>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor from element indices, validated against `field`.
    pub fn from_indices(field: &Field, cols: usize, rows: &[&[u32]]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&i| field.element(i))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(cols, &rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.data[r * self.cols + c] = x;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix product shapes".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::ZERO;
                for l in 0..self.cols {
                    acc = field.add(acc, field.mul(self.get(i, l), other.get(l, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn truncate_rows(&mut self, rows: usize) {
        self.rows = rows;
        self.data.truncate(rows * self.cols);
    }
}

/// In-place Gauss-Jordan elimination; returns the pivot columns.
fn eliminate(field: &Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(src) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, src);
        let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..m.cols {
            let x = m.get(r, j);
            m.set(r, j, field.mul(x, inv));
        }
        for i in 0..m.rows {
            let f = m.get(i, c);
            if i == r || f.is_zero() {
                continue;
            }
            for j in c..m.cols {
                let x = field.sub(m.get(i, j), field.mul(f, m.get(r, j)));
                m.set(i, j, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate_rows(r);
    pivots
}

/// The reduced row echelon form of `m` with zero rows removed.
pub fn rref(field: &Field, m: &Matrix) -> Matrix {
    let mut out = m.clone();
    eliminate(field, &mut out);
    out
}

fn pack_gf2(m: &Matrix) -> Vec<u64> {
    m.row_iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(0u64, |acc, (c, x)| acc | ((x.index() as u64 & 1) << c))
        })
        .collect()
}

fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let Some(j) = (i..rows.len())
            .max_by_key(|&j| rows[j])
            .filter(|&j| rows[j] != 0)
        else {
            break;
        };
        rows.swap(i, j);
        let pivot = rows[i];
        let bit = 1u64 << (63 - pivot.leading_zeros());
        for r in rows.iter_mut().skip(i + 1) {
            if *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    if field.order() == 2 && m.cols <= 64 {
        return rank_gf2(&mut pack_gf2(m));
    }
    rref(field, m).rows()
}

/// A basis of the right nullspace `{x : m x = 0}`.
pub fn nullspace(field: &Field, m: &Matrix) -> Vec<Vec<FieldElement>> {
    let mut r = m.clone();
    let pivots = eliminate(field, &mut r);
    let free = (0..m.cols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut x = vec![FieldElement::ZERO; m.cols];
        x[f] = FieldElement::ONE;
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = field.neg(r.get(row, f));
        }
        x
    })
    .collect()
}

/// A subspace of F_q^v in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    v: usize,
    q: u32,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(v: usize, q: u32) -> Subspace {
        Subspace {
            v,
            q,
            basis: Matrix::zeros(0, v),
            pivots: Vec::new(),
        }
    }

    /// The whole space F_q^v.
    pub fn full(v: usize, q: u32) -> Subspace {
        Subspace {
            v,
            q,
            basis: Matrix::identity(v),
            pivots: (0..v).collect(),
        }
    }

    /// Span of the standard basis vectors `e_i` for `i` in `coords` (0-based).
    pub fn coordinate(v: usize, q: u32, coords: &[usize]) -> Subspace {
        let mut cs = coords.to_vec();
        cs.sort_unstable();
        cs.dedup();
        let mut basis = Matrix::zeros(cs.len(), v);
        for (r, &c) in cs.iter().enumerate() {
            basis.set(r, c, FieldElement::ONE);
        }
        Subspace {
            v,
            q,
            basis,
            pivots: cs,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn field_order(&self) -> u32 {
        self.q
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, field: &Field, other: &Subspace) -> Result<bool> {
        check_ambient(self, other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(join(field, self, other)?.dim() == self.dim())
    }
}

fn check_ambient(s: &Subspace, t: &Subspace) -> Result<()> {
    if s.v != t.v || s.q != t.q {
        return Err(Error::DimensionMismatch(format!(
            "ambient F_{}^{} vs F_{}^{}",
            s.q, s.v, t.q, t.v
        )));
    }
    Ok(())
}

fn check_field(field: &Field, s: &Subspace) -> Result<()> {
    if field.order() != s.q {
        return Err(Error::DimensionMismatch(format!(
            "subspace over GF({}) used with GF({})",
            s.q,
            field.order()
        )));
    }
    Ok(())
}

/// The row space of `m` as a canonical subspace.
pub fn row_space(field: &Field, m: &Matrix) -> Subspace {
    let mut basis = m.clone();
    let pivots = eliminate(field, &mut basis);
    Subspace {
        v: m.cols(),
        q: field.order(),
        basis,
        pivots,
    }
}

/// The span of `vectors` inside F_q^v.
pub fn canonicalize(field: &Field, v: usize, vectors: &[Vec<FieldElement>]) -> Result<Subspace> {
    Ok(row_space(field, &Matrix::from_rows(v, vectors)?))
}

pub fn join(field: &Field, s: &Subspace, t: &Subspace) -> Result<Subspace> {
    check_ambient(s, t)?;
    check_field(field, s)?;
    Ok(row_space(field, &s.basis.stack(&t.basis)?))
}

/// Intersection via the left nullspace of the stacked bases: coefficient
/// vectors `(a, b)` with `aS + bT = 0` give the common vectors `aS`.
pub fn meet(field: &Field, s: &Subspace, t: &Subspace) -> Result<Subspace> {
    check_ambient(s, t)?;
    check_field(field, s)?;
    let stacked = s.basis.stack(&t.basis)?;
    let k = s.dim();
    let vectors: Vec<Vec<FieldElement>> = nullspace(field, &stacked.transpose())
        .into_iter()
        .map(|coeffs| {
            let mut w = vec![FieldElement::ZERO; s.v];
            for (i, &c) in coeffs[..k].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, &x) in s.basis.row(i).iter().enumerate() {
                    w[j] = field.add(w[j], field.mul(c, x));
                }
            }
            w
        })
        .collect();
    let m = canonicalize(field, s.v, &vectors)?;
    debug_assert_eq!(m.dim() + rank(field, &stacked), s.dim() + t.dim());
    Ok(m)
}

pub fn trivial_intersection(field: &Field, s: &Subspace, t: &Subspace) -> Result<bool> {
    check_ambient(s, t)?;
    check_field(field, s)?;
    if s.dim() + t.dim() > s.v {
        return Ok(false);
    }
    Ok(rank(field, &s.basis.stack(&t.basis)?) == s.dim() + t.dim())
}

/// Image of `s` under `x ↦ x·m` for an invertible `v × v` matrix `m`.
pub fn apply_linear_map(field: &Field, s: &Subspace, m: &Matrix) -> Result<Subspace> {
    check_field(field, s)?;
    if m.rows() != s.v || m.cols() != s.v {
        return Err(Error::DimensionMismatch("linear map must be v × v".into()));
    }
    Ok(row_space(field, &s.basis.mul(field, m)?))
}

/// Rank of a projective point given by a vector whose first nonzero entry is 1.
fn normalized_point_rank(q: u64, v: usize, vector: &[FieldElement]) -> u64 {
    let lead = vector
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero vector");
    let mut offset = 0u64;
    for i in 0..lead {
        offset += q.pow((v - 1 - i) as u32);
    }
    let tail = vector[lead + 1..]
        .iter()
        .fold(0u64, |acc, x| acc * q + x.index() as u64);
    offset + tail
}

/// Ranks (in the enumeration of 1-subspaces) of the projective points of `s`, sorted.
pub fn point_ranks(field: &Field, s: &Subspace) -> Vec<u64> {
    let q = field.order() as u64;
    let k = s.dim();
    let mut out = Vec::new();
    let mut w = vec![FieldElement::ZERO; s.v];
    for lead in 0..k {
        let rest = k - 1 - lead;
        for code in 0..q.pow(rest as u32) {
            w.copy_from_slice(s.basis.row(lead));
            let mut c = code;
            for m in (lead + 1..k).rev() {
                let coeff = FieldElement::from_raw((c % q) as u32);
                c /= q;
                if coeff.is_zero() {
                    continue;
                }
                for (j, &x) in s.basis.row(m).iter().enumerate() {
                    w[j] = field.add(w[j], field.mul(coeff, x));
                }
            }
            out.push(normalized_point_rank(q, s.v, &w));
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug)]
struct PivotClass {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    offset: u64,
}

/// The k-subspaces of F_q^v in canonical enumeration order.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    v: usize,
    k: usize,
    q: u32,
    classes: Vec<PivotClass>,
    by_mask: HashMap<u64, usize>,
    len: u64,
}

impl Grassmannian {
    pub fn new(v: usize, k: usize, q: u32) -> Result<Grassmannian> {
        if k > v || v > 64 || q < 2 {
            return Err(Error::InvalidParameters(format!(
                "no Grassmannian for v={v}, k={k}, q={q}"
            )));
        }
        let mut classes = Vec::new();
        let mut by_mask = HashMap::new();
        let mut offset = 0u64;
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            let mut free = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..v {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let size = (q as u64)
                .checked_pow(free.len() as u32)
                .ok_or_else(|| Error::ResourceGuard("subspace count overflows u64".into()))?;
            let mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
            by_mask.insert(mask, classes.len());
            classes.push(PivotClass {
                pivots: pivots.clone(),
                free,
                offset,
            });
            offset = offset
                .checked_add(size)
                .ok_or_else(|| Error::ResourceGuard("subspace count overflows u64".into()))?;
            // next k-subset in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| pivots[i] < v - k + i) else {
                break;
            };
            pivots[i] += 1;
            for j in i + 1..k {
                pivots[j] = pivots[j - 1] + 1;
            }
        }
        Ok(Grassmannian {
            v,
            k,
            q,
            classes,
            by_mask,
            len: offset,
        })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ambient_dim(&self) -> usize {
        self.v
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn field_order(&self) -> u32 {
        self.q
    }

    pub fn unrank(&self, index: u64) -> Result<Subspace> {
        if index >= self.len {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.len,
            });
        }
        let ci = self.classes.partition_point(|c| c.offset <= index) - 1;
        let class = &self.classes[ci];
        let mut basis = Matrix::zeros(self.k, self.v);
        for (r, &p) in class.pivots.iter().enumerate() {
            basis.set(r, p, FieldElement::ONE);
        }
        let q = self.q as u64;
        let mut digits = index - class.offset;
        for &(r, c) in class.free.iter().rev() {
            basis.set(r, c, FieldElement::from_raw((digits % q) as u32));
            digits /= q;
        }
        Ok(Subspace {
            v: self.v,
            q: self.q,
            basis,
            pivots: class.pivots.clone(),
        })
    }

    pub fn rank_of(&self, s: &Subspace) -> Result<u64> {
        if s.v != self.v || s.q != self.q || s.dim() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "{}-subspace of F_{}^{} ranked in Gr({}, {}) over GF({})",
                s.dim(),
                s.q,
                s.v,
                self.k,
                self.v,
                self.q
            )));
        }
        let mask = s.pivots.iter().fold(0u64, |m, &p| m | 1 << p);
        let class = &self.classes[self.by_mask[&mask]];
        let q = self.q as u64;
        let digits = class.free.iter().fold(0u64, |acc, &(r, c)| {
            acc * q + s.basis.get(r, c).index() as u64
        });
        Ok(class.offset + digits)
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.len).map(move |i| self.unrank(i).expect("index in range"))
    }
}

/// All k-subspaces of F_q^v in canonical order.
pub fn enumerate_subspaces(v: usize, k: usize, q: u32) -> Result<Vec<Subspace>> {
    Ok(Grassmannian::new(v, k, q)?.iter().collect())
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::*;

    fn f(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    fn unit(v: usize, i: usize) -> Vec<FieldElement> {
        let mut e = vec![FieldElement::ZERO; v];
        e[i] = FieldElement::ONE;
        e
    }

    fn span(field: &Field, v: usize, idx: &[usize]) -> Subspace {
        let vs: Vec<_> = idx.iter().map(|&i| unit(v, i)).collect();
        canonicalize(field, v, &vs).unwrap()
    }

    #[test]
    fn rref_examples() {
        let g = f(2);
        let m = Matrix::from_indices(&g, 4, &[&[1, 1, 0, 0], &[0, 1, 0, 0]]).unwrap();
        let want = Matrix::from_indices(&g, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        assert_eq!(rref(&g, &m), want);
        assert_eq!(rref(&g, &Matrix::identity(3)), Matrix::identity(3));
        let z = Matrix::zeros(2, 2);
        assert_eq!(rref(&g, &z).rows(), 0);
    }

    #[test]
    fn canonicalize_examples() {
        let g2 = f(2);
        let e1e2 = vec![
            FieldElement::ONE,
            FieldElement::ONE,
            FieldElement::ZERO,
            FieldElement::ZERO,
        ];
        let s = canonicalize(&g2, 4, &[e1e2, unit(4, 1)]).unwrap();
        assert_eq!(s, span(&g2, 4, &[0, 1]));
        assert_eq!(canonicalize(&g2, 4, &[]).unwrap().dim(), 0);

        let g3 = f(3);
        let two_e1 = vec![
            FieldElement::from_raw(2),
            FieldElement::ZERO,
            FieldElement::ZERO,
        ];
        let s = canonicalize(&g3, 3, &[unit(3, 0), two_e1]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s, span(&g3, 3, &[0]));

        assert!(matches!(
            canonicalize(&g2, 4, &[unit(3, 0)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    // Brute force: all ordered pairs of vectors, canonicalized and deduplicated.
    #[test]
    fn enumeration_matches_brute_force() {
        let g = f(2);
        let vecs: Vec<Vec<FieldElement>> = (0u32..16)
            .map(|x| {
                (0..4)
                    .map(|i| FieldElement::from_raw((x >> i) & 1))
                    .collect()
            })
            .collect();
        let mut seen = HashSet::new();
        for a in &vecs {
            for b in &vecs {
                let s = canonicalize(&g, 4, &[a.clone(), b.clone()]).unwrap();
                if s.dim() == 2 {
                    seen.insert(s);
                }
            }
        }
        assert_eq!(seen.len(), 35);
        let listed = enumerate_subspaces(4, 2, 2).unwrap();
        assert_eq!(listed.len(), 35);
        assert_eq!(listed.iter().cloned().collect::<HashSet<_>>(), seen);

        assert_eq!(enumerate_subspaces(3, 1, 2).unwrap().len(), 7);
        assert_eq!(
            enumerate_subspaces(5, 0, 3).unwrap(),
            vec![Subspace::zero(5, 3)]
        );
    }

    #[test]
    fn enumeration_order_is_lex_by_pivots() {
        let all = enumerate_subspaces(4, 2, 2).unwrap();
        assert_eq!(all[0], span(&f(2), 4, &[0, 1]));
        // last pivot set {2,3} has no free entries
        assert_eq!(all[34], span(&f(2), 4, &[2, 3]));
        let gr = Grassmannian::new(4, 2, 2).unwrap();
        assert_eq!(gr.unrank(34).unwrap(), all[34]);
        assert!(matches!(gr.unrank(35), Err(Error::IndexOutOfRange { .. })));
        for (i, s) in all.iter().enumerate() {
            assert_eq!(gr.rank_of(s).unwrap(), i as u64);
        }
        // points: e1-led vectors come first, least significant entry last
        let pts = enumerate_subspaces(3, 1, 2).unwrap();
        let first: Vec<u32> = pts[1].basis().row(0).iter().map(|x| x.index()).collect();
        assert_eq!(first, vec![1, 0, 1]);
    }

    #[test]
    fn meet_and_join_examples() {
        let g = f(2);
        let a = span(&g, 4, &[0, 1]);
        let b = span(&g, 4, &[1, 2]);
        let c = span(&g, 4, &[2, 3]);
        assert_eq!(meet(&g, &a, &b).unwrap(), span(&g, 4, &[1]));
        assert!(meet(&g, &a, &c).unwrap().is_zero());
        assert_eq!(join(&g, &span(&g, 4, &[0]), &span(&g, 4, &[1])).unwrap(), a);
        assert!(trivial_intersection(&g, &a, &c).unwrap());
        assert!(!trivial_intersection(&g, &a, &b).unwrap());
        let other = Subspace::zero(5, 2);
        assert!(matches!(
            meet(&g, &a, &other),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            trivial_intersection(&g, &a, &other),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn skew_count_matches_valency() {
        let g = f(2);
        let a = span(&g, 4, &[0, 1]);
        let skew = enumerate_subspaces(4, 2, 2)
            .unwrap()
            .iter()
            .filter(|t| trivial_intersection(&g, &a, t).unwrap())
            .count();
        assert_eq!(skew, 16);
    }

    #[test]
    fn modular_law_on_lines_of_pg3_2() {
        let g = f(2);
        let all = enumerate_subspaces(4, 2, 2).unwrap();
        for s in &all {
            for t in &all {
                let m = meet(&g, s, t).unwrap();
                let j = join(&g, s, t).unwrap();
                assert_eq!(m.dim() + j.dim(), s.dim() + t.dim());
                assert!(s.contains(&g, &m).unwrap() && t.contains(&g, &m).unwrap());
                assert_eq!(m.is_zero(), trivial_intersection(&g, s, t).unwrap());
            }
        }
    }

    #[test]
    fn meet_over_gf3() {
        let g = f(3);
        for s in enumerate_subspaces(4, 2, 3).unwrap().iter().step_by(7) {
            for t in enumerate_subspaces(4, 3, 3).unwrap().iter().step_by(3) {
                let m = meet(&g, s, t).unwrap();
                let j = join(&g, s, t).unwrap();
                assert_eq!(m.dim() + j.dim(), 5);
            }
        }
    }

    #[test]
    fn counts_equal_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            for v in 0..=6usize {
                for k in 0..=v {
                    let want = crate::qcombin::gauss_binomial(v as u32, k as u32, q as u64);
                    let got = Grassmannian::new(v, k, q).unwrap().len();
                    assert_eq!(num_bigint::BigUint::from(got), want, "v={v} k={k} q={q}");
                }
            }
        }
        // full enumeration cross-check at a few sizes
        for (v, k, q) in [(4, 2, 3), (5, 2, 2), (4, 1, 4)] {
            let all = enumerate_subspaces(v, k, q).unwrap();
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn point_ranks_match_generic_ranking() {
        for q in [2u64, 3, 4] {
            let g = f(q);
            let points = Grassmannian::new(4, 1, q as u32).unwrap();
            for s in Grassmannian::new(4, 2, q as u32).unwrap().iter() {
                let got = point_ranks(&g, &s);
                let mut want: Vec<u64> = points
                    .iter()
                    .filter(|p| s.contains(&g, p).unwrap())
                    .map(|p| points.rank_of(&p).unwrap())
                    .collect();
                want.sort_unstable();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn gf2_rank_fast_path_agrees() {
        let g = f(2);
        let all = enumerate_subspaces(5, 2, 2).unwrap();
        for s in all.iter().take(40) {
            for t in &all {
                let stacked = s.basis().stack(t.basis()).unwrap();
                assert_eq!(rank(&g, &stacked), rref(&g, &stacked).rows());
            }
        }
    }

    fn arb_matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..q, rows * cols)
    }

    proptest! {
        #[test]
        fn rref_is_invariant_under_row_operations(
            entries in arb_matrix(3, 3, 5),
            ops in proptest::collection::vec((0usize..3, 0usize..3, 1u32..3), 0..8),
        ) {
            let g = f(3);
            let rows: Vec<Vec<FieldElement>> = entries
                .chunks(5)
                .map(|r| r.iter().map(|&x| FieldElement::from_raw(x)).collect())
                .collect();
            let m = Matrix::from_rows(5, &rows).unwrap();
            let canon = rref(&g, &m);
            prop_assert_eq!(rref(&g, &canon), canon.clone());

            let mut p = m.clone();
            for (a, b, c) in ops {
                let c = FieldElement::from_raw(c);
                if a == b {
                    for j in 0..5 {
                        let x = g.mul(p.get(a, j), c);
                        p.set(a, j, x);
                    }
                } else {
                    for j in 0..5 {
                        let x = g.add(p.get(a, j), g.mul(c, p.get(b, j)));
                        p.set(a, j, x);
                    }
                }
            }
            prop_assert_eq!(rref(&g, &p), canon);
        }

        #[test]
        fn unrank_rank_round_trip(idx in 0u64..1210) {
            let gr = Grassmannian::new(5, 2, 3).unwrap();
            let s = gr.unrank(idx).unwrap();
            prop_assert_eq!(gr.rank_of(&s).unwrap(), idx);
            prop_assert_eq!(row_space(&f(3), s.basis()), s);
        }
    }
}
