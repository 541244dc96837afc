//! Phase-point operators and the discrete Wigner function on the affine
//! plane over `Z_n`, `n` an odd prime.
//!
//! Lines are grouped into `n + 1` pencils labelled like the prime MUB set:
//! pencil `x < n` holds the lines `r − x·s ≡ a`, pencil `n` (∞) the lines
//! `s ≡ a`. Line `a` of pencil `x` carries the projector onto `|x, a⟩`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{metaplectic, SymplecticMat};
use crate::combinat::fourier_matrix;
use crate::error::{Error, Result};
use crate::gf::is_prime;
use crate::linalg::{ComplexMatrix, C64, EPS_MAT, ONE, ZERO};
use crate::mub::{ivanovic_mubs, MubSet};
use crate::report::Check;
use crate::weyl::displacement_rs;

fn require_odd_prime(n: usize) -> Result<()> {
    if n.is_multiple_of(2) || !is_prime(n as u64) {
        return Err(Error::InvalidDimension { dim: n, reason: "requires an odd prime".into() });
    }
    Ok(())
}

/// The parity operator `A₀₀ = Σ_i |−i⟩⟨i|`.
pub fn parity_operator(n: usize) -> Result<ComplexMatrix> {
    require_odd_prime(n)?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| if (i + j) % n == 0 { ONE } else { ZERO }))
}

/// Residuals of three relations between the parity operator `A` and the
/// Fourier matrix `F`: `(‖A² − F‖, ‖F² − A‖, ‖A² − 1‖)`. The first is
/// nonzero for every odd prime; `F² = A` and `A² = 1` hold.
pub fn parity_square_residuals(n: usize) -> Result<(f64, f64, f64)> {
    let a = parity_operator(n)?;
    let f = fourier_matrix(n).matrix().clone();
    let a2 = &a * &a;
    Ok((a2.max_abs_diff(&f), (&f * &f).max_abs_diff(&a), a2.max_abs_diff(&ComplexMatrix::identity(n))))
}

/// Label of the line of pencil `pencil` through the point `(r, s)`.
pub fn line_label(n: usize, pencil: usize, r: i64, s: i64) -> Result<usize> {
    let m = n as i64;
    if pencil > n {
        return Err(Error::InvalidPencil { pencil, n });
    }
    Ok(if pencil == n { s.rem_euclid(m) } else { (r - pencil as i64 * s).rem_euclid(m) } as usize)
}

/// `A_{r,s} = D_{r,s} A₀₀ D_{r,s}†` for all points.
#[derive(Clone, Debug)]
pub struct PhasePointSet {
    n: usize,
    /// Indexed `r·n + s`.
    ops: Vec<ComplexMatrix>,
}

impl PhasePointSet {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: i64, s: i64) -> &ComplexMatrix {
        let m = self.n as i64;
        &self.ops[(r.rem_euclid(m) * m + s.rem_euclid(m)) as usize]
    }

    /// Max `|Tr(A_f A_f') − n δ|` over all pairs of points.
    pub fn simplex_deviation(&self) -> f64 {
        let n = self.n as f64;
        (0..self.ops.len())
            .into_par_iter()
            .map(|i| {
                let mut worst: f64 = 0.0;
                for j in i..self.ops.len() {
                    let want = if i == j { n } else { 0.0 };
                    worst = worst.max((self.ops[i].hs_inner(&self.ops[j]) - C64::new(want, 0.0)).norm());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Number of `+1` and `−1` eigenvalues of each operator (all equal).
    pub fn eigen_multiplicities(&self) -> Vec<(usize, usize)> {
        self.ops
            .iter()
            .map(|a| {
                let ev = a.hermitian_eigenvalues();
                let plus = ev.iter().filter(|&&e| (e - 1.0).abs() < 1e-8).count();
                let minus = ev.iter().filter(|&&e| (e + 1.0).abs() < 1e-8).count();
                (plus, minus)
            })
            .collect()
    }
}

/// Builds the table and checks that every operator is Hermitian and unitary
/// with unit trace, which fixes its spectrum to `(n+1)/2` eigenvalues `+1`
/// and `(n−1)/2` eigenvalues `−1`.
pub fn phase_point_set(n: usize) -> Result<PhasePointSet> {
    require_odd_prime(n)?;
    if n > 31 {
        return Err(Error::InvalidDimension { dim: n, reason: "exceeds 31".into() });
    }
    let parity = parity_operator(n)?;
    let ops: Vec<ComplexMatrix> = (0..(n * n) as i64)
        .into_par_iter()
        .map(|k| {
            let d = displacement_rs(n, k / n as i64, k % n as i64);
            &(&d * &parity) * &d.adjoint()
        })
        .collect();
    for a in &ops {
        let h = a.hermiticity_residual();
        if h > EPS_MAT {
            return Err(Error::NotHermitian(h));
        }
        let u = a.unitarity_residual();
        if u > EPS_MAT {
            return Err(Error::NotUnitary(u));
        }
        let t = a.trace();
        if (t - ONE).norm() > EPS_MAT {
            return Err(Error::WrongTrace(t.re));
        }
    }
    Ok(PhasePointSet { n, ops })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WignerTable {
    pub n: usize,
    /// `w[r][s]`.
    pub w: Vec<Vec<f64>>,
}

impl WignerTable {
    pub fn total(&self) -> f64 {
        self.w.iter().flatten().sum()
    }

    /// `Σ W_rs A_rs`.
    pub fn reconstruct(&self, pps: &PhasePointSet) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.n);
        for (r, row) in self.w.iter().enumerate() {
            for (s, &w) in row.iter().enumerate() {
                acc = &acc + &pps.get(r as i64, s as i64).scale_real(w);
            }
        }
        acc
    }

    /// `n` rows of `n` comma-separated reals.
    pub fn to_csv(&self) -> String {
        self.w
            .iter()
            .map(|row| row.iter().map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `W_rs = Tr(A_rs ρ)/n` for a Hermitian unit-trace `ρ`.
pub fn wigner_function(rho: &ComplexMatrix, pps: &PhasePointSet) -> Result<WignerTable> {
    let n = pps.n;
    if rho.rows() != n || !rho.is_square() {
        return Err(Error::InvalidDimension { dim: rho.rows(), reason: format!("expected {n}×{n}") });
    }
    let h = rho.hermiticity_residual();
    if h > EPS_MAT {
        return Err(Error::NotHermitian(h));
    }
    let t = rho.trace();
    if (t - ONE).norm() > EPS_MAT {
        return Err(Error::WrongTrace(t.re));
    }
    let w = (0..n as i64)
        .map(|r| (0..n as i64).map(|s| pps.get(r, s).hs_inner(rho).re / n as f64).collect())
        .collect();
    Ok(WignerTable { n, w })
}

/// Sums of `W` over the `n` lines of one pencil, indexed by line label.
pub fn line_sums(w: &WignerTable, pencil: usize) -> Result<Vec<f64>> {
    let n = w.n;
    let mut sums = vec![0.0; n];
    for r in 0..n as i64 {
        for s in 0..n as i64 {
            sums[line_label(n, pencil, r, s)?] += w.w[r as usize][s as usize];
        }
    }
    Ok(sums)
}

/// `A_f = Σ_b P_{b, choice[b]} − 1` over a complete MUB set.
pub fn face_point_operator(mubs: &MubSet, choice: &[usize]) -> Result<ComplexMatrix> {
    let n = mubs.dim();
    if !mubs.is_complete() {
        return Err(Error::IncompleteSet { found: mubs.bases.len(), needed: n + 1 });
    }
    if choice.len() != mubs.bases.len() {
        return Err(Error::WrongChoiceLength { got: choice.len(), expected: mubs.bases.len() });
    }
    let mut acc = ComplexMatrix::identity(n).scale_real(-1.0);
    for (b, &c) in mubs.bases.iter().zip(choice) {
        let v = b.vectors().get(c).ok_or_else(|| Error::InvalidArgument(format!("vertex {c} out of range")))?;
        acc = &acc + &ComplexMatrix::projector(v);
    }
    Ok(acc)
}

/// Vertex choice of the lines through `(r, s)`, one per pencil.
pub fn choice_for_point(n: usize, r: i64, s: i64) -> Vec<usize> {
    (0..=n).map(|x| line_label(n, x, r, s).expect("valid pencil")).collect()
}

/// Max over points of `min_θ ‖U_G A_{r,s} U_G† − e^{iθ} A_{G(r,s)}‖`.
pub fn clifford_covariance_check(pps: &PhasePointSet, g: &SymplecticMat) -> Result<f64> {
    if g.n as usize != pps.n {
        return Err(Error::OrderMismatch(g.n as usize, pps.n));
    }
    let u = metaplectic(g)?;
    let ud = u.adjoint();
    let n = pps.n as i64;
    let mut worst: f64 = 0.0;
    for r in 0..n {
        for s in 0..n {
            let lhs = &(&u * pps.get(r, s)) * &ud;
            let (gr, gs) = g.apply((r, s));
            worst = worst.max(lhs.phase_aligned_distance(pps.get(gr, gs)));
        }
    }
    Ok(worst)
}

/// Max deviation in the two line identities: each MUB projector is the
/// average of the phase-point operators on its line, and each phase-point
/// operator is the sum of the projectors of the lines through it minus 1.
pub fn line_identity_residuals(pps: &PhasePointSet) -> Result<(f64, f64)> {
    let n = pps.n;
    let mubs = ivanovic_mubs(n as u64)?;
    let mut projector_side: f64 = 0.0;
    for (x, basis) in mubs.bases.iter().enumerate() {
        let mut sums = vec![ComplexMatrix::zeros(n); n];
        for r in 0..n as i64 {
            for s in 0..n as i64 {
                let a = line_label(n, x, r, s)?;
                sums[a] = &sums[a] + pps.get(r, s);
            }
        }
        for (a, v) in basis.vectors().iter().enumerate() {
            let avg = sums[a].scale_real(1.0 / n as f64);
            projector_side = projector_side.max(avg.max_abs_diff(&ComplexMatrix::projector(v)));
        }
    }
    let mut point_side: f64 = 0.0;
    for r in 0..n as i64 {
        for s in 0..n as i64 {
            let face = face_point_operator(&mubs, &choice_for_point(n, r, s))?;
            point_side = point_side.max(face.max_abs_diff(pps.get(r, s)));
        }
    }
    Ok((projector_side, point_side))
}

/// The invariant suite at dimension `n`: operator properties, the parity
/// relations, both line identities, reconstruction of a fixed mixed state,
/// and covariance under every element of `SL(2, Z_n)` when `n ≤ 7`.
pub fn wigner_check(n: usize) -> Result<Vec<Check>> {
    let pps = phase_point_set(n)?;
    let (_, f2, a2) = parity_square_residuals(n)?;
    let mubs = ivanovic_mubs(n as u64)?;
    let mub_sum = face_point_operator(&mubs, &vec![0; n + 1])?.max_abs_diff(&parity_operator(n)?);
    let m = n.div_ceil(2);
    let mult_ok = pps.eigen_multiplicities().iter().all(|&(p, q)| p == m && q == m - 1);
    let (lines_a, lines_b) = line_identity_residuals(&pps)?;

    // A fixed full-rank state: normalized diag(1..n) conjugated by the Fourier matrix plus a coherence.
    let f = fourier_matrix(n).matrix().clone();
    let diag = ComplexMatrix::from_fn(n, n, |i, j| if i == j { C64::new((i + 1) as f64, 0.0) } else { ZERO });
    let raw = &(&f * &diag) * &f.adjoint();
    let rho = raw.scale_real(1.0 / raw.trace().re);
    let table = wigner_function(&rho, &pps)?;
    let recon = table.reconstruct(&pps).max_abs_diff(&rho);

    let mut checks = vec![
        Check::below(format!("Tr A_f A_f' = n δ (n={n})"), pps.simplex_deviation(), EPS_MAT),
        Check::flag(format!("eigenvalue multiplicities ({m},{}) (n={n})", m - 1), mult_ok),
        Check::below(format!("F² = A₀₀ (n={n})"), f2, EPS_MAT),
        Check::below(format!("A₀₀² = 1 (n={n})"), a2, EPS_MAT),
        Check::below(format!("A₀₀ = Σ|z,0⟩⟨z,0| − 1 (n={n})"), mub_sum, EPS_MAT),
        Check::below(format!("projector = line average (n={n})"), lines_a, EPS_MAT),
        Check::below(format!("A_f = Σ line projectors − 1 (n={n})"), lines_b, EPS_MAT),
        Check::below(format!("Σ W = 1 (n={n})"), (table.total() - 1.0).abs(), EPS_MAT),
        Check::below(format!("reconstruction (n={n})"), recon, EPS_MAT),
    ];
    if n <= 7 {
        let worst = crate::clifford::sl2_enumerate(n as u64)?
            .par_iter()
            .map(|g| clifford_covariance_check(&pps, g).expect("odd prime"))
            .reduce(|| 0.0, f64::max);
        checks.push(Check::below(format!("Clifford covariance, all G (n={n})"), worst, EPS_MAT));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::sl2_enumerate;
    use crate::linalg::{haar_state, random_density_matrix, StateVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qutrit_parity() {
        let a = parity_operator(3).unwrap();
        let want = ComplexMatrix::from_rows(&[
            vec![ONE, ZERO, ZERO],
            vec![ZERO, ZERO, ONE],
            vec![ZERO, ONE, ZERO],
        ]);
        assert!(a.max_abs_diff(&want) < 1e-15);
        assert!(parity_operator(4).is_err());
        assert!(parity_operator(9).is_err());
    }

    #[test]
    fn parity_relations() {
        for n in [3, 5, 7, 11] {
            let (a2_f, f2_a, a2_1) = parity_square_residuals(n).unwrap();
            assert!(f2_a < 1e-12);
            assert!(a2_1 < 1e-15);
            // A² = 1 while F has eigenvalues ±1, ±i, so A² ≠ F.
            assert!(a2_f > 0.5);
            assert!((parity_operator(n).unwrap().trace() - ONE).norm() < 1e-15);
        }
    }

    #[test]
    fn simplex_and_multiplicities() {
        let pps = phase_point_set(3).unwrap();
        assert!(pps.simplex_deviation() < 1e-12);
        let pps5 = phase_point_set(5).unwrap();
        assert!(pps5.eigen_multiplicities().iter().all(|&m| m == (3, 2)));
        assert!(pps5.get(0, 0).max_abs_diff(&parity_operator(5).unwrap()) < 1e-15);
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        let pps = phase_point_set(5).unwrap();
        let rho = ComplexMatrix::identity(5).scale_real(0.2);
        let w = wigner_function(&rho, &pps).unwrap();
        assert!(w.w.iter().flatten().all(|&x| (x - 1.0 / 25.0).abs() < 1e-14));
        for pencil in 0..=5 {
            let sums = line_sums(&w, pencil).unwrap();
            assert!(sums.iter().all(|&x| (x - 0.2).abs() < 1e-14));
        }
    }

    #[test]
    fn mub_state_has_sharp_line_sums() {
        let n = 5;
        let pps = phase_point_set(n).unwrap();
        let mubs = ivanovic_mubs(n as u64).unwrap();
        for (x, basis) in mubs.bases.iter().enumerate() {
            for (a, v) in basis.vectors().iter().enumerate() {
                let w = wigner_function(&ComplexMatrix::projector(v), &pps).unwrap();
                let sums = line_sums(&w, x).unwrap();
                for (b, s) in sums.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((s - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn line_sums_are_mub_probabilities() {
        let n = 7;
        let pps = phase_point_set(n).unwrap();
        let mubs = ivanovic_mubs(n as u64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rho = random_density_matrix(n, &mut rng);
        let w = wigner_function(&rho, &pps).unwrap();
        assert!((w.total() - 1.0).abs() < 1e-12);
        assert!(w.reconstruct(&pps).max_abs_diff(&rho) < 1e-10);
        for (x, basis) in mubs.bases.iter().enumerate() {
            let sums = line_sums(&w, x).unwrap();
            assert!((sums.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for (a, v) in basis.vectors().iter().enumerate() {
                let prob = ComplexMatrix::projector(v).hs_inner(&rho).re;
                assert!((sums[a] - prob).abs() < 1e-12);
                assert!((-1e-12..=1.0 + 1e-12).contains(&sums[a]));
            }
        }
        assert!(matches!(line_sums(&w, 8), Err(Error::InvalidPencil { .. })));
    }

    #[test]
    fn rejects_bad_states() {
        let pps = phase_point_set(3).unwrap();
        assert!(matches!(wigner_function(&ComplexMatrix::identity(3), &pps), Err(Error::WrongTrace(_))));
        let mut m = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        m.set(0, 1, ONE);
        assert!(matches!(wigner_function(&m, &pps), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn line_identities() {
        for n in [3, 5] {
            let (a, b) = line_identity_residuals(&phase_point_set(n).unwrap()).unwrap();
            assert!(a < 1e-12 && b < 1e-12);
        }
    }

    #[test]
    fn face_operators() {
        let mubs = ivanovic_mubs(3).unwrap();
        let a = face_point_operator(&mubs, &[0, 0, 0, 0]).unwrap();
        assert!(a.max_abs_diff(&parity_operator(3).unwrap()) < 1e-12);
        assert!(matches!(face_point_operator(&mubs, &[0, 0]), Err(Error::WrongChoiceLength { got: 2, expected: 4 })));
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let choice: Vec<usize> = (0..4).map(|_| rng.random_range(0..3)).collect();
            let f = face_point_operator(&mubs, &choice).unwrap();
            assert!((f.trace() - ONE).norm() < 1e-12);
            // Mixtures of MUB projectors lie inside the polytope.
            let mut rho = ComplexMatrix::zeros(3);
            let mut weights: Vec<f64> = (0..12).map(|_| rng.random::<f64>()).collect();
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            for (w, v) in weights.iter().zip(mubs.all_vectors()) {
                rho = &rho + &ComplexMatrix::projector(&v).scale_real(*w);
            }
            let t = f.hs_inner(&rho).re;
            assert!((-1e-12..=1.0 + 1e-12).contains(&t), "{t}");
        }
    }

    #[test]
    fn covariance() {
        let pps = phase_point_set(3).unwrap();
        assert_eq!(clifford_covariance_check(&pps, &SymplecticMat::identity(3)).unwrap(), 0.0);
        assert!(clifford_covariance_check(&pps, &SymplecticMat::minus_identity(3)).unwrap() < 1e-10);
        let pps5 = phase_point_set(5).unwrap();
        let g = sl2_enumerate(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let m = g[rng.random_range(0..g.len())];
            assert!(clifford_covariance_check(&pps5, &m).unwrap() < 1e-10);
        }
    }

    #[test]
    fn pure_state_wigner_is_real_and_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v: StateVector = haar_state(5, &mut rng);
        let w = wigner_function(&ComplexMatrix::projector(&v), &phase_point_set(5).unwrap()).unwrap();
        assert!((w.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn suite_passes() {
        for n in [3, 5] {
            for c in wigner_check(n).unwrap() {
                assert!(c.pass, "{c}");
            }
        }
    }
}
