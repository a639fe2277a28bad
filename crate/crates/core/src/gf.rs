//! Finite fields GF(p^e) with value-indexed elements.
//!
//! An element is stored as the integer whose base-p digits are the
//! coefficients of its polynomial representative (constant term first), so
//! index 0 is zero and index 1 is one. Multiplication goes through log/exp
//! tables built from the least primitive element; addition uses XOR in
//! characteristic two, an addition table for small orders, and digit-wise
//! arithmetic otherwise.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};

/// Default bound on p^e.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 16;

/// Orders up to this size get a full addition table.
const ADD_TABLE_MAX: u32 = 256;

/// Orders up to this size have their axioms checked exhaustively on construction.
const EXHAUSTIVE_CHECK_MAX: u32 = 64;

/// Fixed defining polynomials, coefficients constant term first, monic.
const IRREDUCIBLES: &[(u64, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (7, 2, &[1, 0, 1]),
];

/// An element of some GF(q), identified by its index in `0..q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(i: u32) -> Self {
        FieldElement(i as u16)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field GF(p^e) together with its arithmetic tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    irreducible: Vec<u32>,
    generator: u32,
    exp: Vec<u16>,
    log: Vec<u32>,
    neg: Vec<u16>,
    add: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.e)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.irreducible == other.irreducible
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Polynomial helpers over GF(p); coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut n = p - 2;
    while n > 0 {
        if n & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        n >>= 1;
    }
    r as u32
}

fn digits_of(mut idx: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(idx % p);
        idx /= p;
    }
    d
}

fn index_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mulmod(a: u32, b: u32, p: u32, e: u32, m: &[u32]) -> u32 {
    let da = digits_of(a, p, e);
    let db = digits_of(b, p, e);
    let mut prod = vec![0u32; 2 * e as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(e as usize, 0);
    index_of(&r, p)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = digits_of(low as u32, p, d as u32);
            f.push(1);
            if poly_rem(poly, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn find_irreducible(p: u32, e: u32) -> Vec<u32> {
    if let Some((_, _, c)) = IRREDUCIBLES
        .iter()
        .find(|(pp, ee, _)| *pp == p as u64 && *ee == e)
    {
        return c.to_vec();
    }
    let count = (p as u64).pow(e);
    (0..count)
        .map(|low| {
            let mut f = digits_of(low as u32, p, e);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds GF(p^e) with the default table limit.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        Field::with_limit(p, e, DEFAULT_TABLE_LIMIT)
    }

    pub fn from_order(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        Field::new(p, e)
    }

    pub fn with_limit(p: u64, e: u32, limit: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidParameters(
                "extension degree must be ≥ 1".into(),
            ));
        }
        let limit = limit.min(DEFAULT_TABLE_LIMIT);
        let q = match p.checked_pow(e) {
            Some(q) if q <= limit => q as u32,
            _ => return Err(Error::TableLimit { p, e, limit }),
        };
        let p = p as u32;
        let irreducible = if e == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, e)
        };
        assert!(
            is_irreducible(&irreducible, p),
            "built-in polynomial is reducible"
        );

        let mul = |a: u32, b: u32| {
            if e == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                poly_mulmod(a, b, p, e, &irreducible)
            }
        };

        let order = q - 1;
        let factors = prime_factors(order);
        let pow_slow = |g: u32, mut n: u32| {
            let (mut r, mut b) = (1u32, g);
            while n > 0 {
                if n & 1 == 1 {
                    r = mul(r, b);
                }
                b = mul(b, b);
                n >>= 1;
            }
            r
        };
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&f| pow_slow(g, order / f) != 1))
            .expect("multiplicative group of a field is cyclic");

        let mut exp = vec![0u16; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u16;
            log[x as usize] = i as u32;
            x = mul(x, generator);
        }

        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits_of(a, p, e).iter().map(|&c| (p - c) % p).collect();
                index_of(&d, p) as u16
            })
            .collect();

        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = digits_of(a, p, e);
                for b in 0..q {
                    let db = digits_of(b, p, e);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = index_of(&s, p) as u16;
                }
            }
            t
        });

        let field = Field {
            p,
            e,
            q,
            irreducible,
            generator,
            exp,
            log,
            neg,
            add,
        };
        field.check_axioms();
        Ok(field)
    }

    /// Exhaustive for small orders, a fixed random sample otherwise.
    fn check_axioms(&self) {
        let q = self.q;
        let els = |i: u32| FieldElement::from_raw(i);
        let triple_ok = |a: FieldElement, b: FieldElement, c: FieldElement| {
            self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                && self.add(a, b) == self.add(b, a)
                && self.mul(a, b) == self.mul(b, a)
        };
        if q <= EXHAUSTIVE_CHECK_MAX {
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        assert!(
                            triple_ok(els(a), els(b), els(c)),
                            "field axioms fail in {self:?}"
                        );
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..4096 {
                let (a, b, c) = (
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                );
                assert!(
                    triple_ok(els(a), els(b), els(c)),
                    "field axioms fail in {self:?}"
                );
            }
        }
        for a in 0..q {
            let a = els(a);
            assert_eq!(
                self.pow(a, q as u64),
                a,
                "Frobenius check failed in {self:?}"
            );
            assert_eq!(self.add(a, self.neg(a)), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(self.mul(a, self.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, constant term first; `[0, 1]` (that is, x) for prime fields.
    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    /// Least-index primitive element.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement::from_raw(self.generator)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement::from_raw(index))
        } else {
            Err(Error::InvalidElement { index, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement::from_raw)
    }

    /// Base-p digits of `a`, constant term first.
    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        digits_of(a.index(), self.p, self.e)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement> {
        if digits.len() != self.e as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(Error::InvalidParameters(format!(
                "{digits:?} is not a digit vector for {self:?}"
            )));
        }
        Ok(FieldElement::from_raw(index_of(digits, self.p)))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &self.add {
            Some(t) => FieldElement(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None => {
                let (p, e) = (self.p, self.e);
                let s: Vec<u32> = digits_of(a.index(), p, e)
                    .into_iter()
                    .zip(digits_of(b.index(), p, e))
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                FieldElement::from_raw(index_of(&s, p))
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.q == 2 {
            return FieldElement(a.0 & b.0);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(if l >= order { l - order } else { l }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let mut result = FieldElement::ONE;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        result
    }

    /// Discrete log to the base of [`Field::primitive_element`].
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> FieldElement {
        FieldElement::from_raw(i)
    }

    // Schoolbook polynomial product reduced modulo x^2+x+1 over GF(2),
    // written out independently of the table path.
    fn gf4_oracle_mul(a: u32, b: u32) -> u32 {
        let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
        let c0 = a0 & b0;
        let c1 = (a0 & b1) ^ (a1 & b0);
        let c2 = a1 & b1;
        // x^2 = x + 1
        ((c1 ^ c2) << 1) | (c0 ^ c2)
    }

    #[test]
    fn gf2_one_plus_one() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.add(e(1), e(1)), e(0));
    }

    #[test]
    fn gf3_two_times_two() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.mul(e(2), e(2)), e(1));
        assert_eq!(f.pow(e(2), 2), e(1));
    }

    #[test]
    fn gf4_matches_polynomial_oracle() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.irreducible(), &[1, 1, 1]);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f.mul(e(a), e(b)).index(), gf4_oracle_mul(a, b));
            }
        }
        let a = e(2);
        let a1 = f.add(a, FieldElement::ONE);
        assert_eq!(f.mul(a, a1), FieldElement::ONE);
        // exhaustive inverse search
        let inv = (1..4)
            .map(e)
            .find(|&b| f.mul(a, b) == FieldElement::ONE)
            .unwrap();
        assert_eq!(inv, a1);
        assert_eq!(f.inv(a).unwrap(), a1);
    }

    #[test]
    fn built_in_polynomials() {
        assert_eq!(Field::new(2, 3).unwrap().irreducible(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().irreducible(), &[1, 0, 1]);
        for &(p, e, c) in IRREDUCIBLES {
            assert!(is_irreducible(c, p as u32), "{p}^{e}");
            assert_eq!(c.len(), e as usize + 1);
            assert_eq!(*c.last().unwrap(), 1);
        }
    }

    #[test]
    fn errors_are_distinct() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Field::new(2, 17), Err(Error::TableLimit { .. })));
        assert!(matches!(
            Field::with_limit(3, 3, 20),
            Err(Error::TableLimit { .. })
        ));
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse));
        assert_eq!(f.element(5), Err(Error::InvalidElement { index: 5, q: 5 }));
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::from_order(q).unwrap();
            assert_eq!(f.order() as u64, q);
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.pow(a, q), a);
                for &b in &els {
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in [2u64, 3, 4, 8, 9, 25, 27, 49, 81, 128] {
            let f = Field::from_order(q).unwrap();
            let g = f.primitive_element();
            let mut seen: Vec<_> = (0..q - 1).map(|i| f.pow(g, i).index()).collect();
            seen.sort_unstable();
            assert_eq!(seen, (1..q as u32).collect::<Vec<_>>());
        }
    }

    #[test]
    fn large_field_without_add_table() {
        let f = Field::new(3, 6).unwrap();
        assert_eq!(f.order(), 729);
        let a = f.element(500).unwrap();
        let b = f.element(77).unwrap();
        assert_eq!(f.sub(f.add(a, b), b), a);
        assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        let g = Field::new(2, 16).unwrap();
        assert_eq!(
            g.pow(g.element(12345).unwrap(), 1 << 16),
            g.element(12345).unwrap()
        );
    }

    #[test]
    fn digits_round_trip() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
        }
        assert_eq!(f.digits(e(5)), vec![2, 1]);
    }
}
