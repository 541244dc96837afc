//! Exact arithmetic in `Z_M` rings and finite fields `GF(p^K)`.
//!
//! Field elements are coefficient vectors over `Z_p` (lowest degree first)
//! reduced modulo a monic irreducible polynomial. The canonical enumeration
//! order is the integer value `Σ c_i p^i`, i.e. lexicographic on the
//! coefficient vector read from the highest degree down. Hilbert-space labels
//! `|x⟩` use this order.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

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

/// Splits `q = p^k` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    let m_i = m as i64;
    let (mut old_r, mut r) = (a.rem_euclid(m_i), m_i);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m_i) as u64)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// An integer reduced modulo `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingResidue {
    value: u64,
    modulus: u64,
}

impl RingResidue {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self { value: value.rem_euclid(modulus as i64) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::new((self.value + other.value) as i64, self.modulus)
    }

    pub fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self { value: (self.value * other.value) % self.modulus, modulus: self.modulus }
    }

    pub fn neg(self) -> Self {
        Self::new(-(self.value as i64), self.modulus)
    }

    /// `None` when the residue is a zero divisor, which happens for composite moduli.
    pub fn inv(self) -> Option<Self> {
        mod_inverse(self.value as i64, self.modulus).map(|v| Self { value: v, modulus: self.modulus })
    }
}

impl fmt::Display for RingResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Polynomials over Z_p, lowest degree first, trailing zeros trimmed.
mod zp_poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
            r = trim(r);
        }
        r
    }

    /// The `index`-th monic polynomial of degree `deg` in canonical order.
    pub fn monic_from_index(mut index: u64, deg: usize, p: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            out.push(index % p);
            index /= p;
        }
        out.push(1);
        out
    }

    /// Irreducibility by trial division with every monic polynomial of degree
    /// `1..=deg/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let g = monic_from_index(idx, d, p);
                if rem_monic(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// The finite field `GF(p^K)` with its defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    /// Monic irreducible of degree `k`, lowest degree first (length `k + 1`).
    poly: Vec<u64>,
}

pub type Field = Arc<FieldSpec>;

impl FieldSpec {
    /// Builds `GF(p^k)` with the smallest monic irreducible polynomial of
    /// degree `k` in canonical order. For `k = 1` the polynomial is `x`.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return Err(Error::FieldTooLarge { p, k }),
        }
        let deg = k as usize;
        let poly = if k == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(k))
                .map(|idx| zp_poly::monic_from_index(idx, deg, p))
                .find(|f| zp_poly::is_irreducible(f, p))
                .expect("an irreducible polynomial exists for every degree")
        };
        Ok(Arc::new(Self { p, k, poly }))
    }

    /// `GF(q)` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k)
    }

    /// Uses the given monic polynomial (lowest degree first), after checking
    /// that it is irreducible.
    pub fn with_polynomial(p: u64, poly: Vec<u64>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if poly.len() < 2 || *poly.last().unwrap() != 1 || poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument("polynomial must be monic over Z_p".into()));
        }
        let k = (poly.len() - 1) as u32;
        if p.checked_pow(k).is_none_or(|q| q > MAX_FIELD_ORDER) {
            return Err(Error::FieldTooLarge { p, k });
        }
        if !zp_poly::is_irreducible(&poly, p) {
            return Err(Error::InvalidArgument("polynomial is reducible".into()));
        }
        Ok(Arc::new(Self { p, k, poly }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn polynomial(&self) -> &[u64] {
        &self.poly
    }

    /// Human-readable defining polynomial, e.g. `x^3 + x + 1`.
    pub fn polynomial_string(&self) -> String {
        format_poly(&self.poly)
    }
}

pub(crate) fn format_poly(poly: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in poly.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        let term = match i {
            0 => c.to_string(),
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// An element of `GF(p^K)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    spec: Field,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({} in GF({}))", self, self.spec.order())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_poly(&self.coeffs).replace('x', "α");
        write!(f, "{s}")
    }
}

/// Field operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

/// Dispatches a binary or unary field operation. `b` is ignored by `Inv` and `Pow`.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    a.check_same(b)?;
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(e) => Ok(a.pow(e)),
    }
}

impl FieldElement {
    pub fn from_coeffs(spec: &Field, coeffs: &[u64]) -> Result<Self> {
        if coeffs.len() > spec.k as usize {
            return Err(Error::InvalidArgument(format!(
                "expected at most {} coefficients",
                spec.k
            )));
        }
        let mut c = vec![0; spec.k as usize];
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            *dst = src % spec.p;
        }
        Ok(Self { coeffs: c, spec: spec.clone() })
    }

    /// Element number `index` in canonical order.
    pub fn from_index(spec: &Field, mut index: u64) -> Self {
        assert!(index < spec.order(), "index out of range");
        let coeffs = (0..spec.k)
            .map(|_| {
                let c = index % spec.p;
                index /= spec.p;
                c
            })
            .collect();
        Self { coeffs, spec: spec.clone() }
    }

    pub fn from_integer(spec: &Field, n: i64) -> Self {
        let mut coeffs = vec![0; spec.k as usize];
        coeffs[0] = n.rem_euclid(spec.p as i64) as u64;
        Self { coeffs, spec: spec.clone() }
    }

    pub fn zero(spec: &Field) -> Self {
        Self::from_integer(spec, 0)
    }

    pub fn one(spec: &Field) -> Self {
        Self::from_integer(spec, 1)
    }

    /// The class of `x`; a root of the defining polynomial when `K > 1`.
    pub fn generator(spec: &Field) -> Self {
        if spec.k == 1 {
            // In Z_p the polynomial `x` has root 0; the useful generator is 1.
            return Self::one(spec);
        }
        let mut coeffs = vec![0; spec.k as usize];
        coeffs[1] = 1;
        Self { coeffs, spec: spec.clone() }
    }

    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * self.spec.p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn neg(&self) -> Self {
        let p = self.spec.p;
        let coeffs = self.coeffs.iter().map(|&c| (p - c) % p).collect();
        Self { coeffs, spec: self.spec.clone() }
    }

    /// Multiplication by an integer modulo `p`.
    pub fn scale(&self, a: i64) -> Self {
        let p = self.spec.p;
        let a = a.rem_euclid(p as i64) as u64;
        let coeffs = self.coeffs.iter().map(|&c| (c * a) % p).collect();
        Self { coeffs, spec: self.spec.clone() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let p = self.spec.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        Self { coeffs, spec: self.spec.clone() }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.spec.p;
        let k = self.spec.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let mut r = if k == 1 { prod } else { zp_poly::rem_monic(&prod, &self.spec.poly, p) };
        r.resize(k, 0);
        Self { coeffs: r, spec: self.spec.clone() }
    }

    /// Field trace `x + x^p + … + x^{p^{K-1}}`, an element of `Z_p`.
    pub fn trace(&self) -> RingResidue {
        let p = self.spec.p;
        let mut acc = Self::zero(&self.spec);
        let mut frob = self.clone();
        for _ in 0..self.spec.k {
            acc = acc.add_unchecked(&frob);
            frob = frob.pow(p);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace left Z_p");
        RingResidue::new(acc.coeffs[0] as i64, p)
    }

    /// Multiplicative order, or `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group = self.spec.order() - 1;
        divisors(group).into_iter().find(|&d| self.pow(d).is_one())
    }

    /// Minimal polynomial over `Z_p`, lowest degree first: the product of
    /// `(t − c)` over the distinct Frobenius conjugates `c` of the element.
    pub fn minimal_polynomial(&self) -> Vec<u64> {
        let p = self.spec.p;
        let mut conjugates = vec![self.clone()];
        loop {
            let next = conjugates.last().unwrap().pow(p);
            if next == *self {
                break;
            }
            conjugates.push(next);
        }
        // Polynomial with field coefficients, lowest degree first.
        let mut poly = vec![Self::one(&self.spec)];
        for c in &conjugates {
            let mut next = vec![Self::zero(&self.spec); poly.len() + 1];
            let minus_c = c.neg();
            for (i, a) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].add_unchecked(a);
                next[i] = next[i].add_unchecked(&a.mul_unchecked(&minus_c));
            }
            poly = next;
        }
        poly.iter()
            .map(|a| {
                debug_assert!(a.coeffs[1..].iter().all(|&c| c == 0));
                a.coeffs[0]
            })
            .collect()
    }
}

/// All elements in canonical order.
pub fn elements(spec: &Field) -> impl Iterator<Item = FieldElement> + '_ {
    (0..spec.order()).map(move |i| FieldElement::from_index(spec, i))
}

/// The smallest element (canonical order) of multiplicative order `p^K − 1`.
/// Order is established by checking `g^d ≠ 1` for every proper divisor `d`.
pub fn primitive_element(spec: &Field) -> FieldElement {
    let group = spec.order() - 1;
    let proper: Vec<u64> = divisors(group).into_iter().filter(|&d| d < group).collect();
    elements(spec)
        .skip(1)
        .find(|g| proper.iter().all(|&d| !g.pow(d).is_one()))
        .expect("finite fields have primitive elements")
}

fn same_field(elems: &[FieldElement]) -> Result<Field> {
    let first = elems.first().ok_or_else(|| Error::NotABasis("empty input".into()))?;
    for e in &elems[1..] {
        first.check_same(e)?;
    }
    Ok(first.spec.clone())
}

/// True when the `Z_p`-span of `elems` is the whole field, checked by
/// enumerating all `p^K` linear combinations.
pub fn spans_field(elems: &[FieldElement]) -> Result<bool> {
    let spec = same_field(elems)?;
    if elems.len() != spec.k as usize {
        return Ok(false);
    }
    let p = spec.p;
    let mut seen = HashSet::with_capacity(spec.order() as usize);
    for combo in 0..spec.order() {
        let mut rest = combo;
        let mut acc = FieldElement::zero(&spec);
        for e in elems {
            let a = rest % p;
            rest /= p;
            if a != 0 {
                acc = acc.add_unchecked(&e.scale(a as i64));
            }
        }
        seen.insert(acc.index());
    }
    Ok(seen.len() as u64 == spec.order())
}

// Solves `m x = rhs` over Z_p by Gauss-Jordan elimination; `m` must be invertible.
fn solve_mod_p(mut m: Vec<Vec<u64>>, mut rhs: Vec<u64>, p: u64) -> Option<Vec<u64>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = mod_inverse(m[col][col] as i64, p)?;
        for c in 0..n {
            m[col][c] = m[col][c] * inv % p;
        }
        rhs[col] = rhs[col] * inv % p;
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..n {
                    m[r][c] = (m[r][c] + p * p - f * m[col][c]) % p;
                }
                rhs[r] = (rhs[r] + p * p - f * rhs[col]) % p;
            }
        }
    }
    Some(rhs)
}

/// Dual basis `ẽ_j` with `tr(e_i ẽ_j) = δ_ij`.
pub fn dual_basis(basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let spec = same_field(basis)?;
    if !spans_field(basis)? {
        return Err(Error::NotABasis(format!(
            "{} elements do not span GF({})",
            basis.len(),
            spec.order()
        )));
    }
    let k = spec.k as usize;
    let p = spec.p;
    // ẽ_j = Σ_m c_{jm} x^m, so tr(e_i ẽ_j) = Σ_m tr(e_i x^m) c_{jm}.
    let monomials: Vec<FieldElement> = (0..k)
        .map(|m| {
            let mut c = vec![0; k];
            c[m] = 1;
            FieldElement { coeffs: c, spec: spec.clone() }
        })
        .collect();
    let gram: Vec<Vec<u64>> = basis
        .iter()
        .map(|e| monomials.iter().map(|x| e.mul_unchecked(x).trace().value()).collect())
        .collect();
    (0..k)
        .map(|j| {
            let mut rhs = vec![0; k];
            rhs[j] = 1;
            let c = solve_mod_p(gram.clone(), rhs, p)
                .ok_or_else(|| Error::NotABasis("trace form is singular".into()))?;
            Ok(FieldElement { coeffs: c, spec: spec.clone() })
        })
        .collect()
}

/// The polynomial basis `(1, x, …, x^{K−1})`.
pub fn polynomial_basis(spec: &Field) -> Vec<FieldElement> {
    (0..spec.k as usize)
        .map(|m| {
            let mut c = vec![0; spec.k as usize];
            c[m] = 1;
            FieldElement { coeffs: c, spec: spec.clone() }
        })
        .collect()
}

/// One row of a field table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTableRow {
    /// Exponent `k` with element `= g^k` for the primitive element `g`; `None` for zero.
    pub power: Option<u64>,
    pub coeffs: Vec<u64>,
    pub element: String,
    pub minimal_polynomial: String,
    pub trace: u64,
    pub trace_of_square: u64,
    pub order: Option<u64>,
}

/// Zero followed by `g^0, g^1, …, g^{q−2}` for the primitive element `g`.
pub fn field_table(spec: &Field) -> Vec<FieldTableRow> {
    let g = primitive_element(spec);
    let row = |power: Option<u64>, x: FieldElement| FieldTableRow {
        power,
        coeffs: x.coeffs.clone(),
        element: x.to_string(),
        minimal_polynomial: format_poly(&x.minimal_polynomial()),
        trace: x.trace().value(),
        trace_of_square: x.mul_unchecked(&x).trace().value(),
        order: x.multiplicative_order(),
    };
    let mut rows = vec![row(None, FieldElement::zero(spec))];
    let mut x = FieldElement::one(spec);
    for k in 0..spec.order() - 1 {
        rows.push(row(Some(k), x.clone()));
        x = x.mul_unchecked(&g);
    }
    rows
}
