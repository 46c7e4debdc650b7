//! Arithmetic in GF(p^m) for odd primes p.
//!
//! Elements are little-endian coefficient vectors of length `m`, always fully
//! reduced modulo the field's defining polynomial.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted by [`make_field`] unless a caller overrides it.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    NotOdd,
    #[error("field order {p}^{m} exceeds the limit {limit}")]
    TooLarge { p: u64, m: u32, limit: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operand does not belong to GF({p}^{m})")]
    SpecMismatch { p: u32, m: u32 },
}

/// A finite field of odd order `q = p^m` together with its defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic, `m + 1` coefficients, little-endian.
    modulus: Vec<u32>,
}

/// An element of a [`FieldSpec`], stored as `m` residues mod `p` (coefficient
/// `i` multiplies `x^i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Operation selector for [`FieldSpec::field_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    Pow,
}

/// Second operand of [`FieldSpec::field_op`]: unary operations ignore it.
#[derive(Debug, Clone)]
pub enum Operand<'a> {
    None,
    Element(&'a FieldElement),
    Exponent(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Builds GF(p^m) using the lexicographically smallest monic irreducible
/// polynomial of degree `m` (coefficients compared from the constant term up).
pub fn make_field(p: u64, m: u32) -> Result<FieldSpec, GfError> {
    make_field_with_limit(p, m, DEFAULT_MAX_ORDER)
}

pub fn make_field_with_limit(p: u64, m: u32, limit: u64) -> Result<FieldSpec, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if p == 2 {
        return Err(GfError::NotOdd);
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    let q = p
        .checked_pow(m)
        .filter(|&q| q <= limit && q <= u32::MAX as u64)
        .ok_or(GfError::TooLarge { p, m, limit })?;
    let p32 = p as u32;
    let modulus = smallest_irreducible(p32, m as usize);
    Ok(FieldSpec {
        p: p32,
        m,
        q: q as u32,
        modulus,
    })
}

/// Convenience wrapper taking the field order instead of `(p, m)`.
pub fn make_field_of_order(q: u64) -> Result<FieldSpec, GfError> {
    match prime_power(q) {
        Some((p, m)) => make_field(p, m),
        None => Err(GfError::NotPrime(q)),
    }
}

fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    let mut low = vec![0u32; m];
    loop {
        let mut candidate = low.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
        // Odometer in which `low[0]` is the most significant digit.
        let mut pos = m;
        loop {
            assert!(pos > 0, "no monic irreducible of degree {m} over GF({p})");
            pos -= 1;
            low[pos] += 1;
            if low[pos] < p {
                break;
            }
            low[pos] = 0;
        }
    }
}

/// Irreducibility test for a monic polynomial over GF(p): root check, then
/// trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = degree(poly).expect("zero polynomial");
    if deg <= 1 {
        return deg == 1;
    }
    if (0..p).any(|r| eval(poly, r, p) == 0) {
        return false;
    }
    for d in 2..=deg / 2 {
        let mut low = vec![0u32; d];
        loop {
            let mut divisor = low.clone();
            divisor.push(1);
            if divrem(poly, &divisor, p).1.iter().all(|&c| c == 0) {
                return false;
            }
            let mut pos = 0;
            while pos < d {
                low[pos] += 1;
                if low[pos] < p {
                    break;
                }
                low[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
    }
    true
}

fn degree(poly: &[u32]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

fn eval(poly: &[u32], x: u32, p: u32) -> u32 {
    let (x, p) = (x as u64, p as u64);
    poly.iter()
        .rev()
        .fold(0u64, |acc, &c| (acc * x + c as u64) % p) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut base = a as u64 % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Polynomial long division over GF(p). The divisor must be nonzero.
fn divrem(num: &[u32], den: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let dd = degree(den).expect("division by zero polynomial");
    let lead_inv = inv_mod(den[dd], p) as u64;
    let pp = p as u64;
    let mut rem: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let Some(nd) = degree(num) else {
        return (vec![0], vec![0]);
    };
    if nd < dd {
        return (vec![0], trim(num.to_vec()));
    }
    let mut quot = vec![0u64; nd - dd + 1];
    for shift in (0..=nd - dd).rev() {
        let coef = rem[shift + dd] * lead_inv % pp;
        quot[shift] = coef;
        if coef == 0 {
            continue;
        }
        for (j, &dc) in den.iter().enumerate().take(dd + 1) {
            let sub = coef * dc as u64 % pp;
            rem[shift + j] = (rem[shift + j] + pp - sub) % pp;
        }
    }
    let to32 = |v: Vec<u64>| trim(v.into_iter().map(|c| c as u32).collect());
    (to32(quot), to32(rem))
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let pp = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % pp;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, v: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = (v % self.p as u64) as u32;
        e
    }

    /// Builds an element from coefficients, checking range and length.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        let e = FieldElement {
            coeffs: coeffs.to_vec(),
        };
        self.check(&e)?;
        Ok(e)
    }

    pub fn check(&self, e: &FieldElement) -> Result<(), GfError> {
        if e.coeffs.len() == self.m as usize && e.coeffs.iter().all(|&c| c < self.p) {
            Ok(())
        } else {
            Err(GfError::SpecMismatch {
                p: self.p,
                m: self.m,
            })
        }
    }

    /// Base-`p` integer encoding of an element, in `0..q`.
    pub fn index_of(&self, e: &FieldElement) -> u32 {
        e.coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c)
    }

    pub fn from_index(&self, mut idx: u32) -> FieldElement {
        debug_assert!(idx < self.q);
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        e
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.m == 1 {
            let v = a.coeffs[0] as u64 * b.coeffs[0] as u64 % self.p as u64;
            return FieldElement {
                coeffs: vec![v as u32],
            };
        }
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        self.reduce(&prod)
    }

    fn reduce(&self, poly: &[u32]) -> FieldElement {
        let (_, rem) = divrem(poly, &self.modulus, self.p);
        let mut coeffs = rem;
        coeffs.resize(self.m as usize, 0);
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        if self.m == 1 {
            return Ok(self.from_int(inv_mod(a.coeffs[0], self.p) as u64));
        }
        let p = self.p;
        // Invariant: s_i * a ≡ r_i (mod modulus).
        let (mut r0, mut r1) = (self.modulus.clone(), trim(a.coeffs.clone()));
        let (mut s0, mut s1) = (vec![0u32], vec![1u32]);
        while degree(&r1).is_some() {
            let (quot, rem) = divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let scale = inv_mod(r0[0], p);
        let scaled: Vec<u32> = s0
            .iter()
            .map(|&c| (c as u64 * scale as u64 % p as u64) as u32)
            .collect();
        Ok(self.reduce(&scaled))
    }

    /// Inverse via Fermat, `a^(q-2)`.
    pub fn inv_by_pow(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    /// Checked dispatcher over all field operations.
    pub fn field_op(
        &self,
        op: FieldOp,
        a: &FieldElement,
        b: Operand<'_>,
    ) -> Result<FieldElement, GfError> {
        self.check(a)?;
        let rhs = |b: &Operand<'_>| match b {
            Operand::Element(e) => self.check(e).map(|_| (*e).clone()),
            _ => Err(GfError::SpecMismatch {
                p: self.p,
                m: self.m,
            }),
        };
        match op {
            FieldOp::Add => Ok(self.add(a, &rhs(&b)?)),
            FieldOp::Sub => Ok(self.sub(a, &rhs(&b)?)),
            FieldOp::Mul => Ok(self.mul(a, &rhs(&b)?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow => match b {
                Operand::Exponent(e) => Ok(self.pow(a, e)),
                _ => Err(GfError::SpecMismatch {
                    p: self.p,
                    m: self.m,
                }),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Irreducibility by brute force: a degree-m monic polynomial is reducible
    /// iff it equals the product of two monic polynomials of lower degree.
    fn reducible_by_products(poly: &[u32], p: u32) -> bool {
        let m = poly.len() - 1;
        let monics = |d: usize| -> Vec<Vec<u32>> {
            let total = (p as usize).pow(d as u32);
            (0..total)
                .map(|mut idx| {
                    let mut v: Vec<u32> = (0..d)
                        .map(|_| {
                            let c = (idx % p as usize) as u32;
                            idx /= p as usize;
                            c
                        })
                        .collect();
                    v.push(1);
                    v
                })
                .collect()
        };
        (1..m).any(|d| {
            let left = monics(d);
            let right = monics(m - d);
            left.iter()
                .any(|l| right.iter().any(|r| poly_mul(l, r, p) == poly))
        })
    }

    #[test]
    fn prime_fields_use_x() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(f.q(), 7);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn gf27_modulus_is_smallest_irreducible_cubic() {
        let f = make_field(3, 3).unwrap();
        assert_eq!(f.q(), 27);
        // Scan all 27 monic cubics in the same order; the first irreducible
        // one by the product oracle must match.
        let mut expected = None;
        'scan: for c0 in 0..3 {
            for c1 in 0..3 {
                for c2 in 0..3 {
                    let cand = vec![c0, c1, c2, 1];
                    if !reducible_by_products(&cand, 3) {
                        expected = Some(cand);
                        break 'scan;
                    }
                }
            }
        }
        assert_eq!(f.modulus(), expected.unwrap().as_slice());
        // x^3 + 2x^2 + 1 has no root mod 3.
        assert_eq!(f.modulus(), &[1, 0, 2, 1]);
    }

    #[test]
    fn irreducibility_matches_product_oracle() {
        for p in [3u32, 5] {
            for m in 2..=4usize {
                let total = (p as usize).pow(m as u32);
                for idx in 0..total {
                    let mut t = idx;
                    let mut poly: Vec<u32> = (0..m)
                        .map(|_| {
                            let c = (t % p as usize) as u32;
                            t /= p as usize;
                            c
                        })
                        .collect();
                    poly.push(1);
                    assert_eq!(
                        is_irreducible(&poly, p),
                        !reducible_by_products(&poly, p),
                        "{poly:?} over GF({p})"
                    );
                }
            }
        }
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(make_field(9, 1), Err(GfError::NotPrime(9)));
        assert_eq!(make_field(2, 3), Err(GfError::NotOdd));
        assert!(matches!(make_field(3, 11), Err(GfError::TooLarge { .. })));
        assert_eq!(make_field(3, 0), Err(GfError::ZeroDegree));
        assert_eq!(make_field(3, 2), make_field(3, 2));
    }

    #[test]
    fn small_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.inv(&f7.from_int(3)).unwrap(), f7.from_int(5));
        let f9 = make_field(3, 2).unwrap();
        let x = f9.element(&[0, 1]).unwrap();
        assert_eq!(f9.mul(&x, &x), f9.from_int(2));
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.add(&f3.from_int(2), &f3.from_int(2)), f3.from_int(1));
        assert_eq!(f3.inv(&f3.zero()), Err(GfError::ZeroInverse));
    }

    #[test]
    fn field_op_dispatch_and_mismatch() {
        let f9 = make_field(3, 2).unwrap();
        let a = f9.from_index(5);
        let b = f9.from_index(7);
        assert_eq!(
            f9.field_op(FieldOp::Mul, &a, Operand::Element(&b)).unwrap(),
            f9.mul(&a, &b)
        );
        assert_eq!(
            f9.field_op(FieldOp::Pow, &a, Operand::Exponent(8)).unwrap(),
            f9.one()
        );
        let foreign = make_field(7, 1).unwrap().from_int(6);
        assert!(matches!(
            f9.field_op(FieldOp::Add, &foreign, Operand::Element(&a)),
            Err(GfError::SpecMismatch { .. })
        ));
        assert!(matches!(
            f9.field_op(FieldOp::Inv, &f9.zero(), Operand::None),
            Err(GfError::ZeroInverse)
        ));
    }

    fn axioms_on_triple(f: &FieldSpec, a: &FieldElement, b: &FieldElement, c: &FieldElement) {
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    }

    #[test]
    fn field_axioms_up_to_27() {
        let mut rng = seeded_rng();
        for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27] {
            let f = make_field_of_order(q).unwrap();
            let elems: Vec<_> = f.elements().collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(&f.sub(a, b), b), *a);
                }
                if !a.is_zero() {
                    let inv = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, &inv), f.one());
                    assert_eq!(inv, f.inv_by_pow(a).unwrap());
                    assert_eq!(f.pow(a, q - 1), f.one());
                }
            }
            if q <= 9 {
                for a in &elems {
                    for b in &elems {
                        for c in &elems {
                            axioms_on_triple(&f, a, b, c);
                        }
                    }
                }
            } else {
                for _ in 0..1000 {
                    let pick = |r: &mut rand::rngs::StdRng| elems[r.gen_range(0..elems.len())].clone();
                    let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                    axioms_on_triple(&f, &a, &b, &c);
                }
            }
        }
    }

    fn seeded_rng() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x6f66_7165)
    }

    #[test]
    fn index_round_trip() {
        let f = make_field(5, 2).unwrap();
        for i in 0..f.q() {
            assert_eq!(f.index_of(&f.from_index(i)), i);
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
