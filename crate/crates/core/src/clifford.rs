//! `SL(2, Z_N)`, the metaplectic representation for odd primes, normalizer
//! checks, order-3 elements and Zauner-symmetry scans.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{is_prime, mod_inverse};
use crate::linalg::{root_of_unity, ComplexMatrix, StateVector, C64, ONE, ZERO};
use crate::weyl::{apply_displacement, displacement_rs, symplectic_form, DispIndex};

/// `[[α, β], [γ, δ]]` over `Z_N` with `αδ − βγ ≡ 1`. Acts on columns `(r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticMat {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub n: u64,
}

impl SymplecticMat {
    pub fn new(alpha: i64, beta: i64, gamma: i64, delta: i64, n: u64) -> Result<Self> {
        let m = n as i64;
        let g = Self {
            alpha: alpha.rem_euclid(m),
            beta: beta.rem_euclid(m),
            gamma: gamma.rem_euclid(m),
            delta: delta.rem_euclid(m),
            n,
        };
        if g.determinant() != 1 % m {
            return Err(Error::InvalidArgument(format!("determinant {} ≠ 1 mod {n}", g.determinant())));
        }
        Ok(g)
    }

    pub fn identity(n: u64) -> Self {
        Self { alpha: 1, beta: 0, gamma: 0, delta: 1, n }
    }

    pub fn minus_identity(n: u64) -> Self {
        Self::new(-1, 0, 0, -1, n).expect("det 1")
    }

    pub fn determinant(&self) -> i64 {
        (self.alpha * self.delta - self.beta * self.gamma).rem_euclid(self.n as i64)
    }

    pub fn trace(&self) -> i64 {
        (self.alpha + self.delta).rem_euclid(self.n as i64)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = self.n as i64;
        Self {
            alpha: (self.alpha * o.alpha + self.beta * o.gamma).rem_euclid(m),
            beta: (self.alpha * o.beta + self.beta * o.delta).rem_euclid(m),
            gamma: (self.gamma * o.alpha + self.delta * o.gamma).rem_euclid(m),
            delta: (self.gamma * o.beta + self.delta * o.delta).rem_euclid(m),
            n: self.n,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn apply(&self, (r, s): (i64, i64)) -> (i64, i64) {
        let m = self.n as i64;
        ((self.alpha * r + self.beta * s).rem_euclid(m), (self.gamma * r + self.delta * s).rem_euclid(m))
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidDimension { dim: p as usize, reason: "requires an odd prime".into() });
    }
    Ok(())
}

/// Every element of `SL(2, Z_p)`, in lexicographic order of `(α, β, γ, δ)`.
pub fn sl2_enumerate(p: u64) -> Result<Vec<SymplecticMat>> {
    require_odd_prime(p)?;
    if p > 13 {
        return Err(Error::InvalidArgument(format!("p = {p} exceeds 13")));
    }
    let m = p as i64;
    let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if (a * d - b * c).rem_euclid(m) == 1 {
                        out.push(SymplecticMat { alpha: a, beta: b, gamma: c, delta: d, n: p });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Unitary `U_G` with `U_G D_p U_G† ∝ D_{Gp}`. For `β ≠ 0` it is
/// `p^{-1/2} Σ ω^{(δi² − 2ij + αj²)/(2β)} |i⟩⟨j|`, for `β = 0` it is
/// `Σ ω^{αγj²/2} |αj⟩⟨j|`. Global phase fixed to 1 in both branches.
pub fn metaplectic(g: &SymplecticMat) -> Result<ComplexMatrix> {
    let p = g.n;
    require_odd_prime(p)?;
    let m = p as i64;
    let n = p as usize;
    if g.beta != 0 {
        let inv = mod_inverse(2 * g.beta, p).expect("p odd prime") as i64;
        let norm = 1.0 / (p as f64).sqrt();
        Ok(ComplexMatrix::from_fn(n, n, |i, j| {
            let (i, j) = (i as i64, j as i64);
            let e = (g.delta * i * i - 2 * i * j + g.alpha * j * j).rem_euclid(m) * inv;
            root_of_unity(e, p) * norm
        }))
    } else {
        let inv2 = mod_inverse(2, p).expect("p odd prime") as i64;
        let mut u = ComplexMatrix::zeros(n);
        for j in 0..m {
            let e = (g.alpha * g.gamma % m * j % m * j).rem_euclid(m) * inv2;
            u.set((g.alpha * j).rem_euclid(m) as usize, j as usize, root_of_unity(e, p));
        }
        Ok(u)
    }
}

/// Max over all `p` of `min_θ ‖U_G D_p U_G† − e^{iθ} D_{Gp}‖`.
pub fn normalizer_residual(g: &SymplecticMat) -> Result<f64> {
    let u = metaplectic(g)?;
    let ud = u.adjoint();
    let n = g.n as usize;
    let mut worst: f64 = 0.0;
    for p in DispIndex::all(n) {
        let lhs = &(&u * &displacement_rs(n, p.r, p.s)) * &ud;
        let (r, s) = g.apply(p.pair());
        worst = worst.max(lhs.phase_aligned_distance(&displacement_rs(n, r, s)));
    }
    Ok(worst)
}

/// Elements with `G³ = 1`, `G ≠ 1`.
pub fn order3_elements(p: u64) -> Result<Vec<SymplecticMat>> {
    require_odd_prime(p)?;
    Ok(sl2_enumerate(p)?.into_iter().filter(|g| !g.is_identity() && g.pow(3).is_identity()).collect())
}

/// Conjugacy classes of a subset of `SL(2, Z_p)` under conjugation by the
/// whole group, as lists of members.
pub fn conjugacy_classes(elements: &[SymplecticMat]) -> Result<Vec<Vec<SymplecticMat>>> {
    let p = match elements.first() {
        Some(g) => g.n,
        None => return Ok(Vec::new()),
    };
    let group = sl2_enumerate(p)?;
    let mut seen: HashSet<SymplecticMat> = HashSet::new();
    let mut classes = Vec::new();
    for g in elements {
        if seen.contains(g) {
            continue;
        }
        let mut class: Vec<SymplecticMat> = group
            .iter()
            .map(|h| {
                // h⁻¹ = [[δ, −β], [−γ, α]] for det 1.
                let inv = SymplecticMat::new(h.delta, -h.beta, -h.gamma, h.alpha, p).expect("det 1");
                h.mul(g).mul(&inv)
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        class.sort_by_key(|m| (m.alpha, m.beta, m.gamma, m.delta));
        seen.extend(class.iter().copied());
        classes.push(class);
    }
    Ok(classes)
}

/// `min_θ ‖U_G|ψ⟩ − e^{iθ}|ψ⟩‖` for a normalized `ψ`.
pub fn zauner_invariance(psi: &StateVector, g: &SymplecticMat) -> Result<f64> {
    let u = metaplectic(g)?;
    Ok(u.apply(psi).phase_aligned_distance(psi))
}

/// Best order-3 symmetry found by [`zauner_scan`]: the Clifford element
/// `D_{translation} U_G`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZaunerScan {
    pub residual: f64,
    pub g: SymplecticMat,
    pub translation: (i64, i64),
    pub elements_scanned: usize,
}

/// Scans `D_q U_G` over all translations `q` and all order-3 `G`; each such
/// element has order 3 up to phase because `1 + G + G² = 0`. Returns the
/// smallest invariance residual. Ties break on scan order.
pub fn zauner_scan(psi: &StateVector) -> Result<ZaunerScan> {
    let p = psi.dim() as u64;
    let gs = order3_elements(p)?;
    let n = p as usize;
    let per_g: Vec<(f64, usize, (i64, i64))> = gs
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let ug = metaplectic(g).expect("odd prime").apply(psi);
            let mut best = (f64::INFINITY, gi, (0, 0));
            for q in DispIndex::all(n) {
                let r = apply_displacement(q, &ug).phase_aligned_distance(psi);
                if r < best.0 {
                    best = (r, gi, q.pair());
                }
            }
            best
        })
        .collect();
    let (residual, gi, translation) =
        per_g.into_iter().fold((f64::INFINITY, 0, (0, 0)), |a, b| if b.0 < a.0 { b } else { a });
    Ok(ZaunerScan { residual, g: gs[gi], translation, elements_scanned: gs.len() * n * n })
}

/// Projection of `ψ` onto the `ω^k` eigenspace of `D_q U_G` for an order-3 `G`
/// (eigenvalues normalized so that the operator cubes to the identity).
pub fn order3_eigenspace_projection(
    psi: &StateVector,
    g: &SymplecticMat,
    translation: (i64, i64),
    k: i64,
) -> Result<StateVector> {
    let n = psi.dim();
    let u = &displacement_rs(n, translation.0, translation.1) * &metaplectic(g)?;
    let cube = u.pow(3);
    // U³ = c·1; rescale by a cube root of c so that the spectrum is {1, ω₃, ω₃²}.
    let c = cube.trace() / n as f64;
    let v = u.scale(C64::from_polar(1.0, -c.arg() / 3.0));
    let w = root_of_unity(-k, 3);
    let mut acc = psi.clone();
    let mut term = psi.clone();
    for _ in 1..3 {
        term = v.apply(&term).scale(w);
        acc = &acc + &term;
    }
    Ok(acc.scale(C64::new(1.0 / 3.0, 0.0)))
}

/// `Ω(Gp, Gq) − Ω(p, q)` modulo `N`; zero for symplectic `G`.
pub fn symplectic_form_defect(g: &SymplecticMat, p: (i64, i64), q: (i64, i64)) -> i64 {
    let m = g.n as i64;
    (symplectic_form(g.apply(p), g.apply(q)) - symplectic_form(p, q)).rem_euclid(m)
}

// Matrix key modulo global phase: divide by the phase of the first
// significant entry and round.
fn phase_key(m: &ComplexMatrix) -> Vec<(i64, i64)> {
    let first = m.as_inner().iter().copied().find(|z| z.norm() > 1e-9).unwrap_or(ONE);
    let ph = first / first.norm();
    m.as_inner().iter().map(|z| {
        let w = z / ph;
        ((w.re * 1e8).round() as i64, (w.im * 1e8).round() as i64)
    }).collect()
}

/// Representatives of the single-qubit Clifford group modulo phases,
/// generated from the Hadamard and phase gates. Has 24 elements.
pub fn qubit_clifford_group() -> Vec<ComplexMatrix> {
    let s = 1.0 / 2f64.sqrt();
    let h = ComplexMatrix::from_rows(&[vec![ONE * s, ONE * s], vec![ONE * s, -ONE * s]]);
    let ph = ComplexMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, crate::linalg::I]]);
    let mut seen: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    let mut group = vec![ComplexMatrix::identity(2)];
    seen.insert(phase_key(&group[0]), 0);
    let mut frontier = 0;
    while frontier < group.len() {
        let g = group[frontier].clone();
        frontier += 1;
        for gen in [&h, &ph] {
            let next = gen * &g;
            let key = phase_key(&next);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(group.len());
                group.push(next);
            }
        }
    }
    group
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_state;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_orders() {
        for p in [3, 5, 7] {
            let g = sl2_enumerate(p).unwrap();
            assert_eq!(g.len() as u64, p * (p * p - 1));
            assert!(g.contains(&SymplecticMat::identity(p)));
        }
        assert!(sl2_enumerate(4).is_err());
    }

    #[test]
    fn closure_under_multiplication() {
        let g = sl2_enumerate(5).unwrap();
        let set: HashSet<_> = g.iter().copied().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = g[rng.random_range(0..g.len())];
            let b = g[rng.random_range(0..g.len())];
            assert!(set.contains(&a.mul(&b)));
        }
    }

    #[test]
    fn identity_maps_to_identity() {
        let u = metaplectic(&SymplecticMat::identity(5)).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-15);
        assert_eq!(normalizer_residual(&SymplecticMat::identity(5)).unwrap(), 0.0);
    }

    #[test]
    fn minus_identity_is_parity() {
        let u = metaplectic(&SymplecticMat::minus_identity(5)).unwrap();
        let parity = ComplexMatrix::from_fn(5, 5, |i, j| if (i + j) % 5 == 0 { ONE } else { ZERO });
        assert!(u.max_abs_diff(&parity) < 1e-15);
    }

    #[test]
    fn fourier_like_element() {
        let g = SymplecticMat::new(0, -1, 1, 0, 3).unwrap();
        let u = metaplectic(&g).unwrap();
        assert!(u.unitarity_residual() < 1e-12);
        let flat = 1.0 / 3f64.sqrt();
        assert!(u.as_inner().iter().all(|z| (z.norm() - flat).abs() < 1e-14));
    }

    #[test]
    fn normalizer_exhaustive() {
        for p in [3, 5, 7] {
            for g in sl2_enumerate(p).unwrap() {
                let r = normalizer_residual(&g).unwrap();
                assert!(r < 1e-10, "p={p} {g:?} {r}");
            }
        }
    }

    #[test]
    fn hadamard_or_monomial() {
        for g in sl2_enumerate(5).unwrap() {
            let u = metaplectic(&g).unwrap();
            let nonzero = u.as_inner().iter().filter(|z| z.norm() > 1e-12).count();
            if g.beta != 0 {
                assert_eq!(nonzero, 25);
            } else {
                assert_eq!(nonzero, 5);
            }
        }
    }

    #[test]
    fn projective_representation() {
        let g = sl2_enumerate(3).unwrap();
        for a in &g {
            for b in &g {
                let lhs = &metaplectic(a).unwrap() * &metaplectic(b).unwrap();
                let rhs = metaplectic(&a.mul(b)).unwrap();
                assert!(lhs.phase_aligned_distance(&rhs) < 1e-10);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in [5, 7] {
            let g = sl2_enumerate(p).unwrap();
            for _ in 0..50 {
                let a = g[rng.random_range(0..g.len())];
                let b = g[rng.random_range(0..g.len())];
                let lhs = &metaplectic(&a).unwrap() * &metaplectic(&b).unwrap();
                assert!(lhs.phase_aligned_distance(&metaplectic(&a.mul(&b)).unwrap()) < 1e-10);
            }
        }
    }

    #[test]
    fn symplectic_form_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = sl2_enumerate(7).unwrap();
        for _ in 0..100 {
            let m = g[rng.random_range(0..g.len())];
            let p = (rng.random_range(0..7), rng.random_range(0..7));
            let q = (rng.random_range(0..7), rng.random_range(0..7));
            assert_eq!(symplectic_form_defect(&m, p, q), 0);
        }
    }

    #[test]
    fn order_three_elements() {
        for p in [3, 5, 7, 11] {
            let els = order3_elements(p).unwrap();
            assert!(!els.is_empty());
            for g in &els {
                assert!(!g.is_identity());
                assert!(g.pow(3).is_identity());
                assert_eq!(g.trace(), (p as i64 - 1));
            }
            let classes = conjugacy_classes(&els).unwrap();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(total, els.len());
        }
        let p3 = order3_elements(3).unwrap();
        assert!(p3.contains(&SymplecticMat::new(0, -1, 1, -1, 3).unwrap()));
    }

    #[test]
    fn zauner_residual_is_consistent_under_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = haar_state(5, &mut rng);
        let g = order3_elements(5).unwrap()[0];
        let rotated = metaplectic(&g).unwrap().apply(&psi);
        let a = zauner_invariance(&psi, &g).unwrap();
        let b = zauner_invariance(&rotated, &g).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(a > 1e-3);
    }

    #[test]
    fn eigenspace_projection_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let psi = haar_state(7, &mut rng);
        let g = order3_elements(7).unwrap()[3];
        let v = order3_eigenspace_projection(&psi, &g, (2, 5), 0).unwrap().normalized();
        let u = &displacement_rs(7, 2, 5) * &metaplectic(&g).unwrap();
        assert!(u.apply(&v).phase_aligned_distance(&v) < 1e-10);
    }

    #[test]
    fn qubit_clifford_has_24_elements() {
        let g = qubit_clifford_group();
        assert_eq!(g.len(), 24);
        for u in &g {
            assert!(u.unitarity_residual() < 1e-12);
        }
    }
}
