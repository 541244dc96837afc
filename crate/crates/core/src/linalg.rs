//! Dense complex matrices and state vectors.
//!
//! Thin newtypes over `nalgebra` storage. Everything in the crate that acts on
//! the N-dimensional Hilbert space (displacements, Hadamards, phase-point
//! operators, frame operators) is a [`ComplexMatrix`]; kets are
//! [`StateVector`]s.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;

/// Entrywise tolerance for matrix identities.
pub const EPS_MAT: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `exp(2πi k/m)`, with `k` reduced modulo `m` before the trigonometry so that
/// large exponents keep full precision.
pub fn root_of_unity(k: i64, m: u64) -> C64 {
    let m_i = m as i64;
    let k = k.rem_euclid(m_i);
    if k == 0 {
        return ONE;
    }
    if 2 * k == m_i {
        return C64::new(-1.0, 0.0);
    }
    if 4 * k == m_i {
        return I;
    }
    if 4 * k == 3 * m_i {
        return -I;
    }
    C64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)
}

fn unit_phase(z: C64) -> C64 {
    let r = z.norm();
    if r < 1e-300 {
        ONE
    } else {
        z / r
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.inner[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { inner: DMatrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: DMatrix::identity(n, n) }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self { inner: DMatrix::from_fn(rows, cols, f) }
    }

    /// Builds a square matrix from row-major rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged matrix rows");
        Self::from_fn(n, m, |i, j| rows[i][j])
    }

    pub fn from_inner(inner: DMatrix<C64>) -> Self {
        Self { inner }
    }

    pub fn as_inner(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    /// Side length; meaningful for square matrices only.
    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.inner[(i, j)] = z;
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.inner[(i, j)]).collect())
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self { inner: self.inner.adjoint() }
    }

    pub fn transpose(&self) -> Self {
        Self { inner: self.inner.transpose() }
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { inner: &self.inner * c }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// Kronecker product `self ⊗ other`, with `self` as the most significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        Self { inner: self.inner.kronecker(&other.inner) }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Hilbert-Schmidt inner product `Tr(A† B)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        self.inner.iter().zip(other.inner.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-entry distance `‖A − B‖`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.inner.shape(), other.inner.shape(), "shape mismatch");
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-entry distance after removing the relative global phase, which is
    /// fixed by the Hilbert-Schmidt overlap `Tr(B† A)`.
    pub fn phase_aligned_distance(&self, other: &Self) -> f64 {
        let phase = unit_phase(other.hs_inner(self));
        self.max_abs_diff(&other.scale(phase))
    }

    /// `‖A A† − 1‖` in the max-entry norm.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let prod = self * &self.adjoint();
        prod.max_abs_diff(&Self::identity(self.dim()))
    }

    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn determinant(&self) -> C64 {
        self.inner.clone().determinant()
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        StateVector { inner: &self.inner * &v.inner }
    }

    /// Column `j` as a ket.
    pub fn column(&self, j: usize) -> StateVector {
        StateVector { inner: self.inner.column(j).into_owned() }
    }

    /// Matrix whose columns are the given kets.
    pub fn from_columns(columns: &[StateVector]) -> Self {
        let n = columns.first().map_or(0, StateVector::dim);
        Self::from_fn(n, columns.len(), |i, j| columns[j].get(i))
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &StateVector) -> Self {
        Self { inner: &v.inner * v.inner.adjoint() }
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &StateVector, b: &StateVector) -> Self {
        Self { inner: &a.inner * b.inner.adjoint() }
    }

    /// Eigen-decomposition of the Hermitian part `(A + A†)/2`. Eigenvalues are
    /// returned in ascending order together with orthonormal eigenvectors.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, Vec<StateVector>) {
        let h = (&self.inner + self.inner.adjoint()) * C64::new(0.5, 0.0);
        let eig = h.symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = order
            .iter()
            .map(|&k| StateVector { inner: eig.eigenvectors.column(k).into_owned() })
            .collect();
        (values, vectors)
    }

    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.hermitian_eigen().0
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner * &rhs.inner }
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner + &rhs.inner }
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner - &rhs.inner }
    }
}

#[derive(Clone, PartialEq)]
pub struct StateVector {
    inner: DVector<C64>,
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector[")?;
        for z in self.inner.iter() {
            write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
        }
        write!(f, " ]")
    }
}

impl StateVector {
    pub fn new(components: Vec<C64>) -> Self {
        Self { inner: DVector::from_vec(components) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { inner: DVector::zeros(n) }
    }

    /// Computational basis ket `|i⟩` in dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.inner[i] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.inner.len()
    }

    pub fn get(&self, i: usize) -> C64 {
        self.inner[i]
    }

    pub fn components(&self) -> &[C64] {
        self.inner.as_slice()
    }

    pub fn as_inner(&self) -> &DVector<C64> {
        &self.inner
    }

    pub fn norm(&self) -> f64 {
        self.inner.norm()
    }

    pub fn normalized(&self) -> Self {
        Self { inner: &self.inner / C64::new(self.norm(), 0.0) }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { inner: &self.inner * c }
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &Self) -> C64 {
        self.inner.dotc(&other.inner)
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self { inner: self.inner.kronecker(&other.inner) }
    }

    pub fn conj(&self) -> Self {
        Self { inner: self.inner.map(|z| z.conj()) }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean distance `min_θ ‖self − e^{iθ} other‖`.
    pub fn phase_aligned_distance(&self, other: &Self) -> f64 {
        let phase = unit_phase(other.inner_product(self));
        (&self.inner - &other.inner * phase).norm()
    }

    /// Multiplies by a phase so that the first component with modulus above
    /// `1e-9` is real and positive.
    pub fn canonical_phase(&self) -> Self {
        match self.inner.iter().find(|z| z.norm() > 1e-9) {
            Some(&z) => self.scale(unit_phase(z).conj()),
            None => self.clone(),
        }
    }
}

impl Add<&StateVector> for &StateVector {
    type Output = StateVector;
    fn add(self, rhs: &StateVector) -> StateVector {
        StateVector { inner: &self.inner + &rhs.inner }
    }
}

impl Sub<&StateVector> for &StateVector {
    type Output = StateVector;
    fn sub(self, rhs: &StateVector) -> StateVector {
        StateVector { inner: &self.inner - &rhs.inner }
    }
}

/// Haar-random pure state: normalized vector of independent standard complex
/// Gaussians.
pub fn haar_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector {
    let comps = (0..n)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::new(comps).normalized()
}

/// Matrix of independent standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random density matrix `G G† / Tr(G G†)` from a Ginibre matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rng);
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

/// Haar-random unitary via QR of a Ginibre matrix with the phases of `R`'s
/// diagonal divided out.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let qr = ginibre(n, rng).into_inner().qr();
    let (q, r) = qr.unpack();
    let phases = DMatrix::from_diagonal(&r.diagonal().map(unit_phase));
    ComplexMatrix::from_inner(q * phases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roots_of_unity_are_exact_at_quarter_turns() {
        assert_eq!(root_of_unity(2, 4), C64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(-1, 4), -I);
        assert_eq!(root_of_unity(12, 6), ONE);
        let w = root_of_unity(1, 7);
        assert!((w.powi(7) - ONE).norm() < 1e-13);
    }

    #[test]
    fn kron_orders_factors_most_significant_first() {
        let x = ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]);
        let id = ComplexMatrix::identity(2);
        let xi = x.kron(&id);
        // X ⊗ 1 maps |00⟩ to |10⟩, i.e. index 0 to index 2.
        assert_eq!(xi.get(2, 0), ONE);
        assert_eq!(xi.get(1, 0), ZERO);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..6 {
            assert!(haar_unitary(n, &mut rng).unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = random_density_matrix(4, &mut rng);
        let (vals, vecs) = rho.hermitian_eigen();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let mut acc = ComplexMatrix::zeros(4);
        for (l, v) in vals.iter().zip(&vecs) {
            acc = &acc + &ComplexMatrix::projector(v).scale_real(*l);
        }
        assert!(acc.max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn phase_aligned_distance_ignores_global_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = haar_unitary(3, &mut rng);
        let v = u.scale(C64::from_polar(1.0, 0.7));
        assert!(u.phase_aligned_distance(&v) < 1e-12);
        assert!(u.max_abs_diff(&v) > 0.1);
        let psi = haar_state(5, &mut rng);
        assert!(psi.phase_aligned_distance(&psi.scale(C64::from_polar(1.0, -2.0))) < 1e-12);
    }
}
