//! The Weyl–Heisenberg group in dimension `N` and its finite-field version.
//!
//! Phases follow `ω = e^{2πi/N}`, `τ = −e^{iπ/N}` so that `τ² = ω` and every
//! displacement `D_{r,s} = τ^{rs} X^r Z^s` has order `N`. Indices live modulo
//! `N̄`, which is `N` for odd `N` and `2N` for even `N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, Field, FieldElement};
use crate::linalg::{root_of_unity, ComplexMatrix, StateVector, C64, EPS_MAT, ONE, ZERO};
use crate::report::Check;

/// Largest dimension accepted by [`weyl_check`] unless a larger cap is passed.
pub const DEFAULT_MAX_DIM: usize = 64;

pub fn nbar(n: usize) -> usize {
    if n.is_multiple_of(2) {
        2 * n
    } else {
        n
    }
}

/// `ω^k` with `ω = e^{2πi/N}`.
pub fn omega_power(k: i64, n: usize) -> C64 {
    root_of_unity(k, n as u64)
}

/// `τ^k` with `τ = −e^{iπ/N} = e^{iπ(N+1)/N}`.
pub fn tau_power(k: i64, n: usize) -> C64 {
    let two_n = 2 * n as i64;
    root_of_unity((k.rem_euclid(two_n) * (n as i64 + 1)).rem_euclid(two_n), 2 * n as u64)
}

/// `Ω(p, q) = p₂q₁ − p₁q₂`.
pub fn symplectic_form(p: (i64, i64), q: (i64, i64)) -> i64 {
    p.1 * q.0 - p.0 * q.1
}

/// A displacement label `(r, s)` reduced modulo `N̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DispIndex {
    pub r: i64,
    pub s: i64,
    pub n: usize,
}

impl DispIndex {
    pub fn new(r: i64, s: i64, n: usize) -> Self {
        let m = nbar(n) as i64;
        Self { r: r.rem_euclid(m), s: s.rem_euclid(m), n }
    }

    pub fn pair(self) -> (i64, i64) {
        (self.r, self.s)
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.r + other.r, self.s + other.s, self.n)
    }

    pub fn neg(self) -> Self {
        Self::new(-self.r, -self.s, self.n)
    }

    /// All `N²` labels with `0 ≤ r, s < N`, `r` major.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        (0..n as i64).flat_map(move |r| (0..n as i64).map(move |s| Self::new(r, s, n)))
    }
}

/// Returns `(Z, X)` with `Z|i⟩ = ω^i|i⟩` and `X|i⟩ = |i+1⟩`.
pub fn clock_shift(n: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if n < 2 {
        return Err(Error::InvalidDimension { dim: n, reason: "need N ≥ 2".into() });
    }
    let z = ComplexMatrix::from_fn(n, n, |i, j| if i == j { omega_power(i as i64, n) } else { ZERO });
    let x = ComplexMatrix::from_fn(n, n, |i, j| if i == (j + 1) % n { ONE } else { ZERO });
    Ok((z, x))
}

/// `D_{r,s}|j⟩ = τ^{rs} ω^{sj} |j + r⟩`.
pub fn displacement(idx: DispIndex) -> ComplexMatrix {
    let n = idx.n;
    let phase = tau_power(idx.r * idx.s, n);
    let shift = idx.r.rem_euclid(n as i64) as usize;
    let mut m = ComplexMatrix::zeros(n);
    for j in 0..n {
        m.set((j + shift) % n, j, phase * omega_power(idx.s * j as i64, n));
    }
    m
}

pub fn displacement_rs(n: usize, r: i64, s: i64) -> ComplexMatrix {
    displacement(DispIndex::new(r, s, n))
}

/// `D_{r,s}|ψ⟩` without forming the matrix.
pub fn apply_displacement(idx: DispIndex, psi: &StateVector) -> StateVector {
    let n = idx.n;
    let phase = tau_power(idx.r * idx.s, n);
    let shift = idx.r.rem_euclid(n as i64) as usize;
    let mut out = vec![ZERO; n];
    for (j, &c) in psi.components().iter().enumerate() {
        out[(j + shift) % n] = phase * omega_power(idx.s * j as i64, n) * c;
    }
    StateVector::new(out)
}

/// `⟨ψ|D_{r,s}|ψ⟩`.
pub fn displacement_expectation(idx: DispIndex, psi: &StateVector) -> C64 {
    psi.inner_product(&apply_displacement(idx, psi))
}

/// Max-entry deviation from both forms of the group law
/// `D_p D_q = τ^{Ω(p,q)} D_{p+q} = ω^{Ω(p,q)} D_q D_p`.
pub fn group_law_residual(p: DispIndex, q: DispIndex) -> Result<f64> {
    if p.n != q.n {
        return Err(Error::OrderMismatch(p.n, q.n));
    }
    let n = p.n;
    let omega_exp = symplectic_form(p.pair(), q.pair());
    let dp = displacement(p);
    let dq = displacement(q);
    let prod = &dp * &dq;
    let first = prod.max_abs_diff(&displacement(p.add(q)).scale(tau_power(omega_exp, n)));
    let second = prod.max_abs_diff(&(&dq * &dp).scale(omega_power(omega_exp, n)));
    Ok(first.max(second))
}

/// Coefficients `a_{rs} = Tr(D_{r,s}† A)/N` for `0 ≤ r, s < N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub n: usize,
    /// Indexed `[r][s]`.
    pub coeffs: Vec<Vec<C64>>,
}

impl Expansion {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.n);
        for (r, row) in self.coeffs.iter().enumerate() {
            for (s, &a) in row.iter().enumerate() {
                if a != ZERO {
                    acc = &acc + &displacement_rs(self.n, r as i64, s as i64).scale(a);
                }
            }
        }
        acc
    }
}

pub fn expand_operator(a: &ComplexMatrix) -> Result<Expansion> {
    if !a.is_square() {
        return Err(Error::InvalidDimension { dim: a.rows(), reason: "operator must be square".into() });
    }
    let n = a.rows();
    let coeffs = (0..n as i64)
        .map(|r| (0..n as i64).map(|s| displacement_rs(n, r, s).hs_inner(a) / n as f64).collect())
        .collect();
    Ok(Expansion { n, coeffs })
}

/// The invariant suite for dimension `n`: unitarity, order, trace and
/// Hilbert–Schmidt orthogonality, both group-law forms, index periodicity and
/// the generator determinants.
pub fn weyl_check(n: usize, max_dim: usize) -> Result<Vec<Check>> {
    if n > max_dim {
        return Err(Error::InvalidDimension { dim: n, reason: format!("exceeds cap {max_dim}") });
    }
    let (z, x) = clock_shift(n)?;
    let ds: Vec<ComplexMatrix> = DispIndex::all(n).map(displacement).collect();
    let id = ComplexMatrix::identity(n);

    let comm = (&z * &x).max_abs_diff(&(&x * &z).scale(omega_power(1, n)));
    let unitarity = ds.iter().map(|d| d.unitarity_residual()).fold(0.0, f64::max);
    let order = ds.iter().map(|d| d.pow(n as u32).max_abs_diff(&id)).fold(0.0, f64::max);
    let adjoint = DispIndex::all(n)
        .zip(&ds)
        .map(|(p, d)| d.adjoint().max_abs_diff(&displacement(p.neg())))
        .fold(0.0, f64::max);

    let mut hs: f64 = 0.0;
    for (i, a) in ds.iter().enumerate() {
        for (j, b) in ds.iter().enumerate() {
            let expected = if i == j { n as f64 } else { 0.0 };
            hs = hs.max((a.hs_inner(b) - C64::new(expected, 0.0)).norm());
        }
    }

    let mut law: f64 = 0.0;
    for p in DispIndex::all(n) {
        for q in DispIndex::all(n) {
            law = law.max(group_law_residual(p, q)?);
        }
    }

    // D_{r+N,s} = τ^{Ns} D_{r,s}; trivial for odd N where τ^N = 1.
    let mut wrap: f64 = 0.0;
    for p in DispIndex::all(n) {
        let shifted = displacement(DispIndex::new(p.r + n as i64, p.s, n));
        wrap = wrap.max(shifted.max_abs_diff(&displacement(p).scale(tau_power(n as i64 * p.s, n))));
    }

    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let det = (z.determinant() - sign).norm().max((x.determinant() - sign).norm());

    Ok(vec![
        Check::below(format!("ZX = ωXZ (N={n})"), comm, EPS_MAT),
        Check::below(format!("displacements unitary (N={n})"), unitarity, EPS_MAT),
        Check::below(format!("D^N = 1 (N={n})"), order, EPS_MAT),
        Check::below(format!("D† = D_(-p) (N={n})"), adjoint, EPS_MAT),
        Check::below(format!("Tr D_p† D_q = N δ (N={n})"), hs, EPS_MAT),
        Check::below(format!("group law (N={n})"), law, EPS_MAT),
        Check::below(format!("D_(r+N,s) = τ^(Ns) D_(r,s) (N={n})"), wrap, EPS_MAT),
        Check::below(format!("det Z = det X = (-1)^(N+1) (N={n})"), det, EPS_MAT),
    ])
}

/// A field displacement label `(u₁, u₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDispIndex {
    pub u1: FieldElement,
    pub u2: FieldElement,
}

impl FieldDispIndex {
    pub fn new(u1: FieldElement, u2: FieldElement) -> Result<Self> {
        if u1.spec() != u2.spec() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { u1, u2 })
    }

    pub fn spec(&self) -> &Field {
        self.u1.spec()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { u1: self.u1.add(&other.u1)?, u2: self.u2.add(&other.u2)? })
    }

    pub fn neg(&self) -> Self {
        Self { u1: self.u1.neg(), u2: self.u2.neg() }
    }

    /// All `q²` labels, `u₁` major, each in canonical field order.
    pub fn all(spec: &Field) -> Vec<Self> {
        let elems: Vec<_> = gf::elements(spec).collect();
        elems
            .iter()
            .flat_map(|a| elems.iter().map(move |b| Self { u1: a.clone(), u2: b.clone() }))
            .collect()
    }
}

// Phases for the field group use the characteristic: ω = e^{2πi/p}, τ = −e^{iπ/p}.
fn field_tau(k: i64, p: u64) -> C64 {
    tau_power(k, p as usize)
}

/// `D_u|x⟩ = τ^{tr u₁u₂} ω^{tr(x u₂)} |x + u₁⟩` on `C^{p^K}` with basis
/// labels in canonical field order. For `p = 2` this uses `τ = −i`.
pub fn field_displacement(idx: &FieldDispIndex) -> ComplexMatrix {
    let spec = idx.spec();
    let p = spec.characteristic();
    let q = spec.order() as usize;
    let phase = field_tau(idx.u1.mul(&idx.u2).expect("same field").trace().value() as i64, p);
    let mut m = ComplexMatrix::zeros(q);
    for x in gf::elements(spec) {
        let target = x.add(&idx.u1).expect("same field").index() as usize;
        let t = x.mul(&idx.u2).expect("same field").trace().value() as i64;
        m.set(target, x.index() as usize, phase * omega_power(t, p as usize));
    }
    m
}

/// `⟨u, v⟩ = tr(u₂v₁ − u₁v₂)` as a residue modulo `p`.
pub fn field_symplectic(u: &FieldDispIndex, v: &FieldDispIndex) -> Result<i64> {
    let a = u.u2.mul(&v.u1)?.sub(&u.u1.mul(&v.u2)?)?;
    Ok(a.trace().value() as i64)
}

/// Exact and phase-aligned deviation from `D_u D_v = τ^{⟨u,v⟩} D_{u+v}`.
/// For odd `p` both are at rounding level; for `p = 2` only the phase-aligned
/// one is, because the exponent is only defined modulo 2 while `τ` has order 4.
pub fn field_group_law_residual(u: &FieldDispIndex, v: &FieldDispIndex) -> Result<(f64, f64)> {
    let p = u.spec().characteristic();
    let lhs = &field_displacement(u) * &field_displacement(v);
    let rhs = field_displacement(&u.add(v)?).scale(field_tau(field_symplectic(u, v)?, p));
    Ok((lhs.max_abs_diff(&rhs), lhs.phase_aligned_distance(&rhs)))
}

#[derive(Clone, Debug)]
pub struct TensorFactorization {
    /// Permutation unitary with `S|x⟩ = |x_1⟩⊗…⊗|x_K⟩`.
    pub s: ComplexMatrix,
    pub dual: Vec<FieldElement>,
    /// Number of labels `u` compared.
    pub checked: usize,
    pub max_residual: f64,
    pub max_phase_aligned_residual: f64,
}

/// Coordinates `x_i = tr(x ẽ_i)` of `x` in the basis dual to `ẽ`.
fn coordinates(x: &FieldElement, dual: &[FieldElement]) -> Vec<i64> {
    dual.iter().map(|d| x.mul(d).expect("same field").trace().value() as i64).collect()
}

fn tensor_index(coords: &[i64], p: u64) -> usize {
    coords.iter().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Builds `S` for `basis` and compares `D_u` with
/// `S⁻¹(D^{(p)}_{u_{11},ũ_{21}} ⊗ … ⊗ D^{(p)}_{u_{1K},ũ_{2K}})S` where
/// `u_{1i} = tr(u₁ẽ_i)` and `ũ_{2i} = tr(u₂e_i)`. Every label is checked
/// when `q² ≤ limit`, otherwise a strided subset of `limit` labels.
pub fn tensor_isomorphism(basis: &[FieldElement], limit: usize) -> Result<TensorFactorization> {
    let dual = gf::dual_basis(basis)?;
    let spec = basis[0].spec().clone();
    let p = spec.characteristic();
    let q = spec.order() as usize;
    let mut s = ComplexMatrix::zeros(q);
    for x in gf::elements(&spec) {
        s.set(tensor_index(&coordinates(&x, &dual), p), x.index() as usize, ONE);
    }
    let labels = FieldDispIndex::all(&spec);
    let stride = labels.len().div_ceil(limit.max(1)).max(1);
    let s_inv = s.adjoint();
    let mut max_residual: f64 = 0.0;
    let mut max_aligned: f64 = 0.0;
    let mut checked = 0;
    for u in labels.iter().step_by(stride) {
        let u1 = coordinates(&u.u1, &dual);
        let u2 = coordinates(&u.u2, basis);
        let mut factor = displacement_rs(p as usize, u1[0], u2[0]);
        for i in 1..u1.len() {
            factor = factor.kron(&displacement_rs(p as usize, u1[i], u2[i]));
        }
        let rebuilt = &(&s_inv * &factor) * &s;
        let d = field_displacement(u);
        max_residual = max_residual.max(d.max_abs_diff(&rebuilt));
        max_aligned = max_aligned.max(d.phase_aligned_distance(&rebuilt));
        checked += 1;
    }
    Ok(TensorFactorization { s, dual, checked, max_residual, max_phase_aligned_residual: max_aligned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::linalg::{random_density_matrix, ginibre};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn qubit_generators_are_paulis() {
        let (z, x) = clock_shift(2).unwrap();
        let pz = ComplexMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]);
        let px = ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
        assert!(z.max_abs_diff(&pz) < 1e-15);
        assert!(x.max_abs_diff(&px) < 1e-15);
    }

    #[test]
    fn qutrit_generators() {
        let (z, x) = clock_shift(3).unwrap();
        let w = c(-0.5, 3f64.sqrt() / 2.0);
        let expect_z = ComplexMatrix::from_rows(&[
            vec![ONE, ZERO, ZERO],
            vec![ZERO, w, ZERO],
            vec![ZERO, ZERO, w * w],
        ]);
        let expect_x = ComplexMatrix::from_rows(&[
            vec![ZERO, ZERO, ONE],
            vec![ONE, ZERO, ZERO],
            vec![ZERO, ONE, ZERO],
        ]);
        assert!(z.max_abs_diff(&expect_z) < 1e-15);
        assert!(x.max_abs_diff(&expect_x) < 1e-15);
    }

    #[test]
    fn generators_have_order_n() {
        let (z, x) = clock_shift(5).unwrap();
        let id = ComplexMatrix::identity(5);
        assert!(z.pow(5).max_abs_diff(&id) < 1e-12);
        assert!(x.pow(5).max_abs_diff(&id) < 1e-12);
    }

    #[test]
    fn rejects_dimension_one() {
        assert!(clock_shift(1).is_err());
    }

    #[test]
    fn displacement_matches_word_in_generators() {
        for n in [2, 3, 4, 6] {
            let (z, x) = clock_shift(n).unwrap();
            for r in 0..nbar(n) as i64 {
                for s in 0..nbar(n) as i64 {
                    let word = (&x.pow(r as u32) * &z.pow(s as u32)).scale(tau_power(r * s, n));
                    assert!(displacement_rs(n, r, s).max_abs_diff(&word) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn traces_vanish_off_origin() {
        for p in DispIndex::all(4) {
            let expected = if p.r == 0 && p.s == 0 { 4.0 } else { 0.0 };
            assert!((displacement(p).trace() - c(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn qutrit_commutation_phase() {
        let a = displacement_rs(3, 1, 1);
        let b = displacement_rs(3, 1, 0);
        let ratio = (&a * &b).hs_inner(&(&b * &a).scale(omega_power(1, 3)));
        // (AB) = ω (BA) exactly when Tr((ωBA)†AB) = N.
        assert!((ratio - c(3.0, 0.0)).norm() < 1e-12);
        assert_eq!(symplectic_form((1, 1), (1, 0)), 1);
    }

    #[test]
    fn qubit_x_and_z_anticommute() {
        let p = DispIndex::new(1, 0, 2);
        let q = DispIndex::new(0, 1, 2);
        assert_eq!(symplectic_form(p.pair(), q.pair()).rem_euclid(2), 1);
        let (dp, dq) = (displacement(p), displacement(q));
        assert!((&dp * &dq).max_abs_diff(&(&dq * &dp).scale(-ONE)) < 1e-15);
        assert!(group_law_residual(p, q).unwrap() < 1e-12);
    }

    #[test]
    fn group_law_exhaustive_small() {
        for n in [2, 3, 4] {
            for p in DispIndex::all(n) {
                for q in DispIndex::all(n) {
                    assert!(group_law_residual(p, q).unwrap() < 1e-12, "N={n} {p:?} {q:?}");
                }
            }
        }
    }

    #[test]
    fn expansion_of_basis_elements() {
        let e = expand_operator(&ComplexMatrix::identity(3)).unwrap();
        assert!((e.coeffs[0][0] - ONE).norm() < 1e-14);
        let e = expand_operator(&displacement_rs(5, 2, 1)).unwrap();
        for r in 0..5 {
            for s in 0..5 {
                let want = if (r, s) == (2, 1) { ONE } else { ZERO };
                assert!((e.coeffs[r][s] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn expansion_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 4, 5] {
            let a = ginibre(n, &mut rng);
            let back = expand_operator(&a).unwrap().reconstruct();
            assert!(back.max_abs_diff(&a) < 1e-10);
            let rho = random_density_matrix(n, &mut rng);
            let e = expand_operator(&rho).unwrap();
            assert!((e.coeffs[0][0] - c(1.0 / n as f64, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn weyl_suite_passes() {
        for n in [2, 3, 4, 5, 6] {
            for check in weyl_check(n, DEFAULT_MAX_DIM).unwrap() {
                assert!(check.pass, "{check}");
            }
        }
        assert!(weyl_check(65, DEFAULT_MAX_DIM).is_err());
    }

    #[test]
    fn apply_matches_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = crate::linalg::haar_state(6, &mut rng);
        for p in DispIndex::all(6) {
            let direct = displacement(p).apply(&psi);
            assert!(apply_displacement(p, &psi).max_abs_diff(&direct) < 1e-14);
        }
    }

    #[test]
    fn field_origin_is_identity() {
        let f = FieldSpec::new(3, 2).unwrap();
        let z = gf::FieldElement::zero(&f);
        let d = field_displacement(&FieldDispIndex::new(z.clone(), z).unwrap());
        assert!(d.max_abs_diff(&ComplexMatrix::identity(9)) < 1e-15);
    }

    #[test]
    fn gf4_x1_and_z1_commute() {
        let f = FieldSpec::new(2, 2).unwrap();
        let one = gf::FieldElement::one(&f);
        let zero = gf::FieldElement::zero(&f);
        let x1 = field_displacement(&FieldDispIndex::new(one.clone(), zero.clone()).unwrap());
        let z1 = field_displacement(&FieldDispIndex::new(zero, one).unwrap());
        assert!((&x1 * &z1).max_abs_diff(&(&z1 * &x1)) < 1e-15);
    }

    #[test]
    fn gf9_group_law_exhaustive() {
        let f = FieldSpec::new(3, 2).unwrap();
        let labels = FieldDispIndex::all(&f);
        let mats: Vec<_> = labels.iter().map(field_displacement).collect();
        let index_of = |u: &FieldDispIndex| (u.u1.index() * 9 + u.u2.index()) as usize;
        let mut worst: f64 = 0.0;
        for (i, u) in labels.iter().enumerate() {
            assert!(mats[i].adjoint().max_abs_diff(&mats[index_of(&u.neg())]) < 1e-12);
            for (j, v) in labels.iter().enumerate() {
                let sum = u.add(v).unwrap();
                let rhs = mats[index_of(&sum)].scale(field_tau(field_symplectic(u, v).unwrap(), 3));
                worst = worst.max((&mats[i] * &mats[j]).max_abs_diff(&rhs));
            }
        }
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn gf4_group_law_holds_up_to_phase() {
        let f = FieldSpec::new(2, 2).unwrap();
        let labels = FieldDispIndex::all(&f);
        for u in &labels {
            for v in &labels {
                let (_, aligned) = field_group_law_residual(u, v).unwrap();
                assert!(aligned < 1e-12);
            }
        }
    }

    #[test]
    fn tensor_isomorphism_gf9() {
        let f = FieldSpec::new(3, 2).unwrap();
        let t = tensor_isomorphism(&gf::polynomial_basis(&f), usize::MAX).unwrap();
        assert_eq!(t.checked, 81);
        assert!(t.max_residual < 1e-10, "{}", t.max_residual);
        for i in 0..9 {
            let row: Vec<C64> = (0..9).map(|j| t.s.get(i, j)).collect();
            assert_eq!(row.iter().filter(|z| **z == ONE).count(), 1);
            assert_eq!(row.iter().filter(|z| **z == ZERO).count(), 8);
        }
    }

    #[test]
    fn tensor_isomorphism_prime_field_is_identity() {
        let f = FieldSpec::new(5, 1).unwrap();
        let t = tensor_isomorphism(&[gf::FieldElement::one(&f)], usize::MAX).unwrap();
        assert!(t.s.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-15);
        assert!(t.max_residual < 1e-12);
    }

    #[test]
    fn tensor_isomorphism_gf8_only_up_to_sign() {
        let f = FieldSpec::new(2, 3).unwrap();
        let t = tensor_isomorphism(&gf::polynomial_basis(&f), usize::MAX).unwrap();
        assert!(t.max_phase_aligned_residual < 1e-10);
    }
}
