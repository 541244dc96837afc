//! Mutually unbiased bases: verification, prime and prime-power
//! constructions, flowers of commuting unitaries, the two-qubit petal
//! landscape and a phase-vector search in dimension six.

use std::collections::HashSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::fourier_matrix;
use crate::error::{Error, Result};
use crate::gf::{self, is_prime, mod_inverse, FieldElement, FieldSpec};
use crate::linalg::{root_of_unity, ComplexMatrix, StateVector, C64, EPS_MAT, ONE, ZERO};
use crate::weyl::{field_displacement, FieldDispIndex};

pub const EPS_MUB: f64 = 1e-9;

/// Seed used for the random Hermitian combinations in joint diagonalization.
pub const JOINT_EIGEN_SEED: u64 = 0x5eed_0b45;

/// An orthonormal basis, stored as its vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    vectors: Vec<StateVector>,
}

impl Basis {
    pub fn new(vectors: Vec<StateVector>) -> Self {
        Self { vectors }
    }

    pub fn computational(n: usize) -> Self {
        Self::new((0..n).map(|i| StateVector::basis(n, i)).collect())
    }

    /// Columns of the Fourier matrix.
    pub fn fourier(n: usize) -> Self {
        let f = fourier_matrix(n);
        Self::new((0..n).map(|j| f.matrix().column(j)).collect())
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, StateVector::dim)
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn orthonormality_deviation(&self) -> f64 {
        crate::combinat::gram_deviation(&self.vectors)
    }

    /// Each vector with its first significant component made real positive,
    /// then sorted lexicographically on rounded components.
    pub fn canonical(&self) -> Self {
        let key = |v: &StateVector| -> Vec<(i64, i64)> {
            v.components()
                .iter()
                .map(|z| ((z.re * 1e8).round() as i64, (z.im * 1e8).round() as i64))
                .collect()
        };
        let mut vs: Vec<StateVector> = self.vectors.iter().map(StateVector::canonical_phase).collect();
        vs.sort_by_cached_key(key);
        Self::new(vs)
    }

    /// True when every vector of `self` equals some vector of `other` up to phase.
    pub fn same_up_to_phases(&self, other: &Self, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .vectors
                .iter()
                .all(|v| other.vectors.iter().any(|w| v.phase_aligned_distance(w) < tol))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MubSet {
    pub bases: Vec<Basis>,
    /// Display labels, e.g. `0, 1, …, p−1, ∞` for the prime construction.
    pub labels: Vec<String>,
}

impl MubSet {
    pub fn new(bases: Vec<Basis>) -> Self {
        let labels = (0..bases.len()).map(|i| i.to_string()).collect();
        Self { bases, labels }
    }

    pub fn dim(&self) -> usize {
        self.bases.first().map_or(0, Basis::dim)
    }

    pub fn is_complete(&self) -> bool {
        self.bases.len() == self.dim() + 1
    }

    /// Every vector of every basis, basis-major.
    pub fn all_vectors(&self) -> Vec<StateVector> {
        self.bases.iter().flat_map(|b| b.vectors.iter().cloned()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnbiasednessReport {
    pub max_deviation: f64,
    pub max_orthonormality_deviation: f64,
    pub pairs_checked: usize,
    pub pass: bool,
}

/// Max over cross-basis pairs of `| |⟨e|f⟩|² − 1/n |`. Fails with the
/// index of the first basis that is not orthonormal within `EPS_MAT`.
pub fn unbiasedness_check(bases: &[Basis]) -> Result<UnbiasednessReport> {
    let n = bases.first().map_or(0, Basis::dim);
    let mut ortho: f64 = 0.0;
    for (i, b) in bases.iter().enumerate() {
        if b.len() != n || b.vectors.iter().any(|v| v.dim() != n) {
            return Err(Error::InvalidDimension { dim: b.dim(), reason: format!("basis {i} does not match dimension {n}") });
        }
        let dev = b.orthonormality_deviation();
        if dev > EPS_MAT {
            return Err(Error::NotOrthonormal { basis: i, deviation: dev });
        }
        ortho = ortho.max(dev);
    }
    let target = 1.0 / n as f64;
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for (a, b) in bases.iter().tuple_combinations() {
        for e in &a.vectors {
            for f in &b.vectors {
                worst = worst.max((e.inner_product(f).norm_sqr() - target).abs());
                pairs += 1;
            }
        }
    }
    Ok(UnbiasednessReport {
        max_deviation: worst,
        max_orthonormality_deviation: ortho,
        pairs_checked: pairs,
        pass: worst < EPS_MUB,
    })
}

/// Largest `|Tr[(P_e − 1/N)(P_f − 1/N)]|` over cross pairs of two bases.
pub fn bloch_orthogonality_deviation(a: &Basis, b: &Basis) -> f64 {
    let n = a.dim();
    let shift = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
    let centered = |v: &StateVector| &ComplexMatrix::projector(v) - &shift;
    let mut worst: f64 = 0.0;
    for e in &a.vectors {
        let pe = centered(e);
        for f in &b.vectors {
            worst = worst.max(pe.hs_inner(&centered(f)).norm());
        }
    }
    worst
}

/// The prime-dimension complete set, in the order `0, 1, …, p−1, ∞`:
/// `|0,a⟩ = e_a`, `|x,a⟩ = p^{-1/2} Σ_r ω^{(r−a)²/(2x)} e_r`, and the Fourier
/// columns for `∞`. Basis `x` is the eigenbasis of `D_{x,1}` with
/// `D_{x,1}|x,a⟩ = ω^a|x,a⟩`.
pub fn ivanovic_mubs(p: u64) -> Result<MubSet> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
    }
    if p > 31 {
        return Err(Error::InvalidArgument(format!("p = {p} exceeds 31")));
    }
    let n = p as usize;
    let pi = p as i64;
    let norm = 1.0 / (p as f64).sqrt();
    let mut bases = vec![Basis::computational(n)];
    for x in 1..pi {
        let inv_2x = mod_inverse(2 * x, p).expect("p odd prime") as i64;
        let vectors = (0..pi)
            .map(|a| {
                StateVector::new(
                    (0..pi)
                        .map(|r| root_of_unity(((r - a) * (r - a)).rem_euclid(pi) * inv_2x, p) * norm)
                        .collect(),
                )
            })
            .collect();
        bases.push(Basis::new(vectors));
    }
    bases.push(Basis::fourier(n));
    let mut labels: Vec<String> = (0..p).map(|x| x.to_string()).collect();
    labels.push("∞".into());
    Ok(MubSet { bases, labels })
}

/// Joint eigenbasis of commuting unitaries. Diagonalizes
/// `Σ_g (c_g U_g + c̄_g U_g†)` with seeded complex `c_g`, requires a
/// nondegenerate spectrum and checks every eigenvector against every `U_g`.
pub fn joint_eigenbasis(elements: &[ComplexMatrix], seed: u64) -> Result<Basis> {
    let n = elements.first().map(ComplexMatrix::rows).ok_or_else(|| {
        Error::DegenerateEigenbasis("no elements".into())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = ComplexMatrix::zeros(n);
    for u in elements {
        let c = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        h = &h + &(&u.scale(c) + &u.adjoint().scale(c.conj()));
    }
    let (values, vectors) = h.hermitian_eigen();
    let gap = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if gap < 1e-6 {
        return Err(Error::DegenerateEigenbasis(format!("minimum eigenvalue gap {gap:.3e}")));
    }
    for (k, v) in vectors.iter().enumerate() {
        for (g, u) in elements.iter().enumerate() {
            let uv = u.apply(v);
            let lambda = v.inner_product(&uv);
            let residual = (&uv - &v.scale(lambda)).norm();
            if residual > EPS_MUB {
                return Err(Error::DegenerateEigenbasis(format!(
                    "vector {k} is not an eigenvector of element {g} (residual {residual:.3e})"
                )));
            }
        }
    }
    Ok(Basis::new(vectors))
}

/// Directions of the `q + 1` lines through the origin of the field phase
/// space: `(0,1)`, then `(x,1)` for nonzero `x` in canonical order, then `(1,0)`.
fn line_directions(spec: &gf::Field) -> Vec<(FieldElement, FieldElement)> {
    let zero = FieldElement::zero(spec);
    let one = FieldElement::one(spec);
    let mut dirs = vec![(zero.clone(), one.clone())];
    dirs.extend(gf::elements(spec).skip(1).map(|x| (x, one.clone())));
    dirs.push((one, zero));
    dirs
}

/// Complete set in dimension `p^K` from the `p^K + 1` maximal abelian
/// subgroups of field displacements along lines through the origin. Each
/// basis is canonicalized; basis order follows [`ivanovic_mubs`].
pub fn subgroup_eigenbases(p: u64, k: u32) -> Result<MubSet> {
    let spec = FieldSpec::new(p, k)?;
    if spec.order() > 32 {
        return Err(Error::InvalidArgument(format!("p^K = {} exceeds 32", spec.order())));
    }
    let mut bases = Vec::new();
    let mut labels = Vec::new();
    for (i, (d1, d2)) in line_directions(&spec).into_iter().enumerate() {
        let elements: Vec<ComplexMatrix> = gf::elements(&spec)
            .map(|t| {
                let idx = FieldDispIndex::new(t.mul(&d1)?, t.mul(&d2)?)?;
                Ok(field_displacement(&idx))
            })
            .collect::<Result<_>>()?;
        bases.push(joint_eigenbasis(&elements, JOINT_EIGEN_SEED + i as u64)?.canonical());
        labels.push(format!("({d1},{d2})"));
    }
    Ok(MubSet { bases, labels })
}

/// `N` commuting unitaries `U_r = Σ_i ω^{ri}|b_i⟩⟨b_i|` built from one basis.
#[derive(Clone, Debug)]
pub struct Petal {
    pub elements: Vec<ComplexMatrix>,
}

#[derive(Clone, Debug)]
pub struct Flower {
    pub petals: Vec<Petal>,
    /// Max `|Tr U†V − N δ|` over the `N²` distinct elements.
    pub orthogonality_deviation: f64,
    /// Max `‖UV − VU‖` within petals.
    pub commutation_deviation: f64,
}

pub fn bbrv_flower(mubs: &MubSet) -> Result<Flower> {
    let n = mubs.dim();
    if !mubs.is_complete() {
        return Err(Error::IncompleteSet { found: mubs.bases.len(), needed: n + 1 });
    }
    let petals: Vec<Petal> = mubs
        .bases
        .iter()
        .map(|b| Petal {
            elements: (0..n as i64)
                .map(|r| {
                    b.vectors.iter().enumerate().fold(ComplexMatrix::zeros(n), |acc, (i, v)| {
                        &acc + &ComplexMatrix::projector(v).scale(root_of_unity(r * i as i64, n as u64))
                    })
                })
                .collect(),
        })
        .collect();
    let mut commutation: f64 = 0.0;
    for petal in &petals {
        for (a, b) in petal.elements.iter().tuple_combinations() {
            commutation = commutation.max((a * b).max_abs_diff(&(b * a)));
        }
    }
    // The identity (r = 0) is shared; keep it once.
    let mut all = vec![ComplexMatrix::identity(n)];
    for petal in &petals {
        all.extend(petal.elements[1..].iter().cloned());
    }
    let mut ortho: f64 = 0.0;
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate().skip(i) {
            let want = if i == j { n as f64 } else { 0.0 };
            ortho = ortho.max((a.hs_inner(b) - C64::new(want, 0.0)).norm());
        }
    }
    Ok(Flower { petals, orthogonality_deviation: ortho, commutation_deviation: commutation })
}

/// A two-qubit Pauli operator `(x₁, z₁, x₂, z₂)` packed as bits `x₁z₁x₂z₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoQubitPauli(pub u8);

impl TwoQubitPauli {
    fn bits(self) -> [u8; 4] {
        [(self.0 >> 3) & 1, (self.0 >> 2) & 1, (self.0 >> 1) & 1, self.0 & 1]
    }

    pub fn commutes(self, other: Self) -> bool {
        let [a, b, c, d] = self.bits();
        let [e, f, g, h] = other.bits();
        (a & f ^ b & e ^ c & h ^ d & g) == 0
    }

    pub fn product(self, other: Self) -> Self {
        Self(self.0 ^ other.0)
    }

    /// Name such as `XZ` or `1Y`, with `1` for the identity factor.
    pub fn name(self) -> String {
        let [x1, z1, x2, z2] = self.bits();
        let letter = |x, z| match (x, z) {
            (0, 0) => '1',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        };
        [letter(x1, z1), letter(x2, z2)].iter().collect()
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let code = |c| match c {
            '1' | 'I' => Some((0, 0)),
            'X' => Some((1, 0)),
            'Z' => Some((0, 1)),
            'Y' => Some((1, 1)),
            _ => None,
        };
        let cs: Vec<char> = name.chars().collect();
        if cs.len() != 2 {
            return None;
        }
        let (x1, z1) = code(cs[0])?;
        let (x2, z2) = code(cs[1])?;
        Some(Self((x1 << 3) | (z1 << 2) | (x2 << 1) | z2))
    }

    pub fn matrix(self) -> ComplexMatrix {
        let [x1, z1, x2, z2] = self.bits();
        let single = |x, z| {
            let (o, i) = (ONE, crate::linalg::I);
            match (x, z) {
                (0, 0) => ComplexMatrix::identity(2),
                (1, 0) => ComplexMatrix::from_rows(&[vec![ZERO, o], vec![o, ZERO]]),
                (0, 1) => ComplexMatrix::from_rows(&[vec![o, ZERO], vec![ZERO, -o]]),
                _ => ComplexMatrix::from_rows(&[vec![ZERO, -i], vec![i, ZERO]]),
            }
        };
        single(x1, z1).kron(&single(x2, z2))
    }
}

const MERMIN_SQUARE: [[&str; 3]; 6] = [
    ["1Z", "Z1", "ZZ"],
    ["X1", "1X", "XX"],
    ["XZ", "ZX", "YY"],
    ["1Z", "X1", "XZ"],
    ["Z1", "1X", "ZX"],
    ["ZZ", "XX", "YY"],
];

/// Three commuting non-identity Paulis `{a, b, ab}`, sorted.
pub type PauliPetal = [TwoQubitPauli; 3];

#[derive(Clone, Debug)]
pub struct MerminLandscape {
    pub petals: Vec<PauliPetal>,
    /// Partitions of the 15 non-identity Paulis into 5 petals, as sorted petal indices.
    pub flowers: Vec<Vec<usize>>,
    /// Joint eigenbasis of each petal (aligned with `petals`).
    pub bases: Vec<Basis>,
}

impl MerminLandscape {
    pub fn flower_mubs(&self, flower: usize) -> MubSet {
        MubSet::new(self.flowers[flower].iter().map(|&i| self.bases[i].clone()).collect())
    }

    pub fn stabilizer_states(&self) -> Vec<StateVector> {
        self.bases.iter().flat_map(|b| b.vectors().iter().cloned()).collect()
    }

    /// Indices of the six petals that form the rows and columns of the
    /// Mermin square `[1Z Z1 ZZ; X1 1X XX; XZ ZX YY]`.
    pub fn mermin_square_petals(&self) -> Vec<usize> {
        MERMIN_SQUARE
            .iter()
            .map(|names| self.petal_index(*names).expect("square lines commute"))
            .collect()
    }

    /// Number of Mermin-square petals in each flower.
    pub fn mermin_petals_per_flower(&self) -> Vec<usize> {
        let square = self.mermin_square_petals();
        self.flowers.iter().map(|f| f.iter().filter(|i| square.contains(i)).count()).collect()
    }

    pub fn petal_index(&self, names: [&str; 3]) -> Option<usize> {
        let mut want: Vec<TwoQubitPauli> = names.iter().map(|n| TwoQubitPauli::from_name(n)).collect::<Option<_>>()?;
        want.sort();
        self.petals.iter().position(|p| p.as_slice() == want.as_slice())
    }
}

/// Enumerates the maximal abelian subgroups of the two-qubit Pauli
/// collineation group, all partitions of the 15 non-identity elements into
/// disjoint petals, and the stabilizer bases.
pub fn mermin_landscape() -> Result<MerminLandscape> {
    let paulis: Vec<TwoQubitPauli> = (1..16).map(TwoQubitPauli).collect();
    let mut petals: Vec<PauliPetal> = Vec::new();
    for (&a, &b) in paulis.iter().tuple_combinations() {
        if a.commutes(b) {
            let mut p = [a, b, a.product(b)];
            p.sort();
            if !petals.contains(&p) {
                petals.push(p);
            }
        }
    }
    petals.sort();

    // Exact cover of the 15 elements; the petal containing the smallest
    // uncovered element is chosen at each step.
    fn cover(petals: &[PauliPetal], used: u16, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if used == 0xfffe {
            let mut c = chosen.clone();
            c.sort();
            out.push(c);
            return;
        }
        let first = (1..16u8).find(|&e| used & (1 << e) == 0).expect("uncovered element");
        for (i, p) in petals.iter().enumerate() {
            let mask: u16 = p.iter().map(|e| 1u16 << e.0).sum();
            if p.iter().any(|e| e.0 == first) && used & mask == 0 {
                chosen.push(i);
                cover(petals, used | mask, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut flowers = Vec::new();
    cover(&petals, 0, &mut Vec::new(), &mut flowers);
    flowers.sort();

    let bases = petals
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let elements: Vec<ComplexMatrix> = p.iter().map(|e| e.matrix()).collect();
            Ok(joint_eigenbasis(&elements, JOINT_EIGEN_SEED + i as u64)?.canonical())
        })
        .collect::<Result<_>>()?;
    Ok(MerminLandscape { petals, flowers, bases })
}

/// Number of stabilizer states in dimension `p^K`: `p^K Π_{i=1..K}(p^i + 1)`.
pub fn stabilizer_count(p: u64, k: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = p.checked_pow(k).filter(|&q| q <= 1 << 12).ok_or(Error::FieldTooLarge { p, k })?;
    Ok(q * (1..=k).map(|i| p.pow(i) + 1).product::<u64>())
}

/// Counts Lagrangian subspaces of `Z_p^{2K}` (with the standard symplectic
/// form) by enumerating spanning sets; each gives `p^K` stabilizer states.
/// Limited to `p^{2K²} ≤ 2^24` tuples.
pub fn lagrangian_subspaces_brute_force(p: u64, k: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let dim = 2 * k as usize;
    let space = p.pow(dim as u32);
    if (space as f64).powi(k as i32) > (1u64 << 24) as f64 {
        return Err(Error::InvalidArgument("too large for brute force".into()));
    }
    let vec_of = |mut idx: u64| -> Vec<u64> {
        (0..dim)
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect()
    };
    let index_of = |v: &[u64]| v.iter().rev().fold(0, |acc, &c| acc * p + c);
    // Coordinates (x_1..x_K, z_1..z_K); form Σ x_i z'_i − z_i x'_i.
    let form = |a: &[u64], b: &[u64]| -> u64 {
        let kk = k as usize;
        (0..kk).map(|i| a[i] * b[kk + i] + p * p - a[kk + i] * b[i]).sum::<u64>() % p
    };
    let span = |gens: &[Vec<u64>]| -> Vec<u64> {
        let mut set = HashSet::new();
        for combo in 0..p.pow(gens.len() as u32) {
            let mut rest = combo;
            let mut acc = vec![0u64; dim];
            for g in gens {
                let a = rest % p;
                rest /= p;
                for (x, y) in acc.iter_mut().zip(g) {
                    *x = (*x + a * y) % p;
                }
            }
            set.insert(index_of(&acc));
        }
        let mut v: Vec<u64> = set.into_iter().collect();
        v.sort();
        v
    };
    let mut found: HashSet<Vec<u64>> = HashSet::new();
    fn extend(
        gens: &mut Vec<Vec<u64>>,
        k: usize,
        space: u64,
        vec_of: &dyn Fn(u64) -> Vec<u64>,
        form: &dyn Fn(&[u64], &[u64]) -> u64,
        span: &dyn Fn(&[Vec<u64>]) -> Vec<u64>,
        found: &mut HashSet<Vec<u64>>,
    ) {
        if gens.len() == k {
            found.insert(span(gens));
            return;
        }
        let current = span(gens);
        for idx in 1..space {
            if current.binary_search(&idx).is_ok() {
                continue;
            }
            let v = vec_of(idx);
            if gens.iter().all(|g| form(g, &v) == 0) {
                gens.push(v);
                extend(gens, k, space, vec_of, form, span, found);
                gens.pop();
            }
        }
    }
    extend(&mut Vec::new(), k as usize, space, &vec_of, &form, &span, &mut found);
    Ok(found.len() as u64)
}

/// Outcome of the dimension-six search for vectors unbiased to both the
/// computational and Fourier bases.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Search6Report {
    pub restarts: usize,
    pub seed: u64,
    /// Restarts whose final objective fell below `tolerance`.
    pub converged: usize,
    /// Distinct converged vectors (first component fixed to `1/√6`).
    pub distinct: usize,
    pub tolerance: f64,
    pub best_objective: f64,
}

/// Local search over `v = (1, e^{iθ₁}, …, e^{iθ₅})/√6`, minimizing
/// `Σ_k (|⟨f_k|v⟩|² − 1/6)²` over the Fourier columns `f_k` by gradient
/// descent with backtracking. Restarts run in parallel; results are merged
/// in restart order.
pub fn search6(restarts: usize, seed: u64) -> Search6Report {
    const N: usize = 6;
    let f = Basis::fourier(N);
    let target = 1.0 / N as f64;
    let vector = |theta: &[f64]| -> Vec<C64> {
        let s = 1.0 / (N as f64).sqrt();
        std::iter::once(C64::new(s, 0.0)).chain(theta.iter().map(|&t| C64::from_polar(s, t))).collect()
    };
    let objective_and_grad = |theta: &[f64]| -> (f64, Vec<f64>) {
        let v = vector(theta);
        let mut value = 0.0;
        let mut grad = vec![0.0; N - 1];
        for fk in f.vectors() {
            let a: C64 = fk.components().iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            let d = a.norm_sqr() - target;
            value += d * d;
            for j in 1..N {
                // ∂|a|²/∂θ_j = 2 Re(ā · conj(f_kj) · i v_j)
                let da = fk.get(j).conj() * crate::linalg::I * v[j];
                grad[j - 1] += 2.0 * d * 2.0 * (a.conj() * da).re;
            }
        }
        (value, grad)
    };
    let tolerance = 1e-20;
    let finals: Vec<(f64, Vec<C64>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
            let mut theta: Vec<f64> = (0..N - 1).map(|_| rng.random::<f64>() * std::f64::consts::TAU).collect();
            let (mut value, mut grad) = objective_and_grad(&theta);
            let mut step = 1.0;
            for _ in 0..20_000 {
                if value < tolerance {
                    break;
                }
                let g2: f64 = grad.iter().map(|g| g * g).sum();
                loop {
                    let trial: Vec<f64> = theta.iter().zip(&grad).map(|(t, g)| t - step * g).collect();
                    let (tv, tg) = objective_and_grad(&trial);
                    if tv <= value - 1e-4 * step * g2 {
                        theta = trial;
                        value = tv;
                        grad = tg;
                        step *= 2.0;
                        break;
                    }
                    step *= 0.5;
                    if step < 1e-14 {
                        break;
                    }
                }
                if step < 1e-14 {
                    break;
                }
            }
            (value, vector(&theta))
        })
        .collect();
    let best = finals.iter().map(|(v, _)| *v).fold(f64::INFINITY, f64::min);
    let mut distinct: Vec<&Vec<C64>> = Vec::new();
    let mut converged = 0;
    for (value, v) in &finals {
        if *value < tolerance {
            converged += 1;
            let is_new = distinct
                .iter()
                .all(|w| w.iter().zip(v.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) > 1e-6);
            if is_new {
                distinct.push(v);
            }
        }
    }
    Search6Report { restarts, seed, converged, distinct: distinct.len(), tolerance, best_objective: best }
}
