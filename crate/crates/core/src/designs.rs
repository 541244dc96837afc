//! Projective and unitary t-designs: overlap moments, the Welch bound,
//! frame operators on the t-fold tensor space and the tight-design bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::linalg::{haar_state, ComplexMatrix, StateVector, EPS_MAT};
use crate::mub::{ivanovic_mubs, subgroup_eigenbases, MubSet};
use crate::report::Check;

pub const EPS_DESIGN: f64 = 1e-9;

/// Largest tensor-space dimension `N^t` accepted by [`frame_operator`].
pub const MAX_TENSOR_DIM: usize = 4096;

/// `K` unit vectors in dimension `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFamily {
    n: usize,
    vectors: Vec<StateVector>,
}

impl VectorFamily {
    pub fn new(vectors: Vec<StateVector>) -> Result<Self> {
        let n = vectors.first().map(StateVector::dim).ok_or_else(|| Error::InvalidArgument("empty family".into()))?;
        for v in &vectors {
            if v.dim() != n {
                return Err(Error::InvalidDimension { dim: v.dim(), reason: format!("family has dimension {n}") });
            }
            if (v.norm() - 1.0).abs() > EPS_MAT {
                return Err(Error::NotNormalized(v.norm()));
            }
        }
        Ok(Self { n, vectors })
    }

    pub fn from_mubs(mubs: &MubSet) -> Result<Self> {
        Self::new(mubs.all_vectors())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// `Σ_{I,J} |⟨x_I|x_J⟩|^{2t}`, diagonal included. Rows are summed in
    /// parallel and then added in index order.
    pub fn overlap_power_sum(&self, t: u32) -> f64 {
        let rows: Vec<f64> = self
            .vectors
            .par_iter()
            .map(|a| self.vectors.iter().map(|b| a.inner_product(b).norm_sqr().powi(t as i32)).sum())
            .collect();
        rows.iter().sum()
    }
}

/// Complete MUB family in prime-power dimension `n`.
pub fn mub_family(n: usize) -> Result<VectorFamily> {
    let (p, k) = prime_power(n as u64).ok_or(Error::NotPrimePower(n as u64))?;
    let mubs = if k == 1 && p % 2 == 1 { ivanovic_mubs(p)? } else { subgroup_eigenbases(p, k)? };
    VectorFamily::from_mubs(&mubs)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `t!(N−1)!/(N−1+t)! = 1/C(N+t−1, t)`.
pub fn design_target(n: usize, t: u32) -> f64 {
    1.0 / binomial((n + t as usize - 1) as u64, t as u64) as f64
}

/// `(1/K²) Σ_{I,J} |⟨Ψ_I|Ψ_J⟩|^{2t}`.
pub fn design_moment(family: &VectorFamily, t: u32) -> f64 {
    let k = family.len() as f64;
    family.overlap_power_sum(t) / (k * k)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DesignVerdict {
    pub value: f64,
    pub target: f64,
    pub is_design: bool,
}

/// Compares the moment with the Fubini–Study average. A `t`-design verdict
/// is only returned when every lower order passes as well.
pub fn design_test(family: &VectorFamily, t: u32) -> DesignVerdict {
    let verdict = |t| {
        let value = design_moment(family, t);
        let target = design_target(family.dim(), t);
        (value, target, (value - target).abs() < EPS_DESIGN)
    };
    let (value, target, ok) = verdict(t);
    let lower_ok = (1..t).all(|s| verdict(s).2);
    assert!(!ok || lower_ok, "a {t}-design verdict must imply all lower orders");
    DesignVerdict { value, target, is_design: ok }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WelchReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// `C(N+t−1, t) Σ|⟨x_I|x_J⟩|^{2t} ≥ (Σ ⟨x_I|x_I⟩^t)²`.
pub fn welch_bound(family: &VectorFamily, t: u32) -> WelchReport {
    let c = binomial((family.dim() + t as usize - 1) as u64, t as u64) as f64;
    let lhs = c * family.overlap_power_sum(t);
    let diag: f64 = family.vectors.iter().map(|v| v.inner_product(v).re.powi(t as i32)).sum();
    let rhs = diag * diag;
    WelchReport { lhs, rhs, slack: lhs - rhs }
}

fn tensor_power(v: &StateVector, t: u32) -> StateVector {
    (1..t).fold(v.clone(), |acc, _| acc.kron(v))
}

/// `Σ_I |Ψ_I^{⊗t}⟩⟨Ψ_I^{⊗t}|`.
pub fn frame_operator(family: &VectorFamily, t: u32) -> Result<ComplexMatrix> {
    let d = family.dim().checked_pow(t).filter(|&d| d <= MAX_TENSOR_DIM);
    let d = d.ok_or(Error::TensorSpaceTooLarge(family.dim().saturating_pow(t)))?;
    let columns: Vec<StateVector> = family.vectors.par_iter().map(|v| tensor_power(v, t)).collect();
    let m = ComplexMatrix::from_columns(&columns);
    let f = &m * &m.adjoint();
    debug_assert_eq!(f.rows(), d);
    Ok(f)
}

/// Dimension of the symmetric subspace of the `t`-fold tensor power.
pub fn symmetric_dim(n: usize, t: u32) -> u128 {
    binomial((n + t as usize - 1) as u64, t as u64)
}

/// Max distance between the spectrum of the frame operator and that of
/// `(K/d_sym)·P_sym`: `d_sym` eigenvalues `K/d_sym`, the rest zero.
pub fn frame_flatness(family: &VectorFamily, t: u32) -> Result<f64> {
    let f = frame_operator(family, t)?;
    let mut ev = f.hermitian_eigenvalues();
    ev.sort_by(|a, b| b.total_cmp(a));
    let dsym = symmetric_dim(family.dim(), t) as usize;
    let level = family.len() as f64 / dsym as f64;
    Ok(ev
        .iter()
        .enumerate()
        .map(|(i, &e)| (e - if i < dsym { level } else { 0.0 }).abs())
        .fold(0.0, f64::max))
}

/// `C(N+⌈t/2⌉−1, ⌈t/2⌉)·C(N+⌊t/2⌋−1, ⌊t/2⌋)`.
pub fn tight_bound(n: usize, t: u32) -> u128 {
    let (hi, lo) = (t.div_ceil(2) as u64, (t / 2) as u64);
    let n = n as u64;
    binomial(n + hi - 1, hi) * binomial((n + lo).saturating_sub(1), lo)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryMoment {
    pub value: f64,
    pub target: f64,
}

impl UnitaryMoment {
    pub fn is_design(&self) -> bool {
        (self.value - self.target).abs() < EPS_DESIGN
    }
}

/// Haar average of `|Tr U|^{2t}`: `t!` for `t ≤ N`, the Catalan number
/// `(2t)!/(t!(t+1)!)` for `N = 2`.
pub fn unitary_target(n: usize, t: u32) -> Result<f64> {
    if t as usize <= n {
        Ok((1..=t as u64).product::<u64>() as f64)
    } else if n == 2 {
        Ok((binomial(2 * t as u64, t as u64) / (t as u128 + 1)) as f64)
    } else {
        Err(Error::MomentOutOfTable { t, n })
    }
}

/// `(1/K²) Σ_{I,J} |Tr U_I† U_J|^{2t}`.
pub fn unitary_design_moment(unitaries: &[ComplexMatrix], t: u32) -> Result<UnitaryMoment> {
    let n = unitaries.first().map(ComplexMatrix::rows).ok_or_else(|| Error::InvalidArgument("no unitaries".into()))?;
    for u in unitaries {
        if u.rows() != n || !u.is_square() {
            return Err(Error::InvalidDimension { dim: u.rows(), reason: format!("expected {n}×{n}") });
        }
        let r = u.unitarity_residual();
        if r > EPS_MAT {
            return Err(Error::NotUnitary(r));
        }
    }
    let target = unitary_target(n, t)?;
    let rows: Vec<f64> = unitaries
        .par_iter()
        .map(|a| unitaries.iter().map(|b| a.hs_inner(b).norm_sqr().powi(t as i32)).sum())
        .collect();
    let k = unitaries.len() as f64;
    Ok(UnitaryMoment { value: rows.iter().sum::<f64>() / (k * k), target })
}

/// Monte-Carlo mean and standard error of `|⟨Φ|Ψ⟩|^{2t}` over independent
/// Haar-random pairs.
pub fn haar_moment_estimate(n: usize, t: u32, samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<f64> = (0..samples)
        .map(|_| {
            let a = haar_state(n, &mut rng);
            let b = haar_state(n, &mut rng);
            a.inner_product(&b).norm_sqr().powi(t as i32)
        })
        .collect();
    let m = samples as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, (var / m).sqrt())
}

/// The invariant suite on the complete MUB family at prime-power `n`:
/// 1- and 2-design tests, Welch saturation, frame-operator flatness at
/// `t = 2`, and the `t = 3` verdict (a design only for `n = 2`).
pub fn design_check(n: usize) -> Result<Vec<Check>> {
    let fam = mub_family(n)?;
    let mut checks = Vec::new();
    for t in 1..=2 {
        let v = design_test(&fam, t);
        checks.push(Check::below(format!("MUB {t}-design moment (n={n})"), (v.value - v.target).abs(), EPS_DESIGN));
    }
    checks.push(Check::below(format!("Welch slack t=2 (n={n})"), welch_bound(&fam, 2).slack.abs(), EPS_DESIGN));
    if n * n <= MAX_TENSOR_DIM {
        checks.push(Check::below(format!("frame flatness t=2 (n={n})"), frame_flatness(&fam, 2)?, EPS_DESIGN));
    }
    checks.push(Check::flag(format!("3-design verdict is n=2 (n={n})"), design_test(&fam, 3).is_design == (n == 2)));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::qubit_clifford_group;
    use crate::linalg::{haar_unitary, C64};
    use crate::weyl::displacement_rs;
    use proptest::prelude::*;

    fn tetrahedron() -> VectorFamily {
        // Bloch vector (1,1,1)/√3 and its Pauli orbit.
        let c = (1.0 / 3f64.sqrt()).acos();
        let psi = StateVector::new(vec![
            C64::new((c / 2.0).cos(), 0.0),
            C64::from_polar((c / 2.0).sin(), std::f64::consts::FRAC_PI_4),
        ]);
        let orbit = (0..2).flat_map(|r| (0..2).map(move |s| (r, s))).map(|(r, s)| displacement_rs(2, r, s).apply(&psi));
        VectorFamily::new(orbit.collect()).unwrap()
    }

    fn random_family(n: usize, k: usize, seed: u64) -> VectorFamily {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        VectorFamily::new((0..k).map(|_| haar_state(n, &mut rng)).collect()).unwrap()
    }

    #[test]
    fn binomials_exact() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(60, 30), 118264581564861424);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn moments_of_simple_families() {
        let single = VectorFamily::new(vec![StateVector::basis(3, 1)]).unwrap();
        for t in 1..4 {
            assert!((design_moment(&single, t) - 1.0).abs() < 1e-15);
        }
        let onb = VectorFamily::new((0..4).map(|i| StateVector::basis(4, i)).collect()).unwrap();
        assert!((design_moment(&onb, 1) - 0.25).abs() < 1e-15);
        assert!(design_test(&onb, 1).is_design);
        assert!((design_moment(&tetrahedron(), 2) - 1.0 / 3.0).abs() < 1e-14);
        assert!(VectorFamily::new(vec![StateVector::new(vec![C64::new(2.0, 0.0)])]).is_err());
    }

    #[test]
    fn mub_families() {
        let fam = mub_family(3).unwrap();
        assert_eq!(fam.len(), 12);
        assert!(design_test(&fam, 2).is_design);
        let t3 = design_test(&fam, 3);
        assert!(!t3.is_design && t3.value > t3.target);
        let oct = mub_family(2).unwrap();
        assert_eq!(oct.len(), 6);
        assert!(design_test(&oct, 3).is_design);
        assert!(!design_test(&oct, 4).is_design);
        for n in [4, 5] {
            let fam = mub_family(n).unwrap();
            assert!(design_test(&fam, 2).is_design);
            assert!(!design_test(&fam, 3).is_design);
        }
        assert!(mub_family(6).is_err());
    }

    #[test]
    fn welch() {
        let single = VectorFamily::new(vec![StateVector::basis(3, 0)]).unwrap();
        let w = welch_bound(&single, 2);
        assert_eq!((w.lhs, w.rhs), (6.0, 1.0));
        assert!(welch_bound(&tetrahedron(), 2).slack.abs() < 1e-10);
        assert!(welch_bound(&random_family(3, 5, 4), 2).slack > 1e-3);
    }

    #[test]
    fn frame_operators() {
        let fam = mub_family(3).unwrap();
        let f = frame_operator(&fam, 2).unwrap();
        assert!((f.trace().re - 12.0).abs() < 1e-12);
        let ev = f.hermitian_eigenvalues();
        let nonzero: Vec<f64> = ev.into_iter().filter(|e| e.abs() > 1e-9).collect();
        assert_eq!(nonzero.len(), 6);
        assert!(nonzero.iter().all(|e| (e - 2.0).abs() < 1e-10));
        let onb = VectorFamily::new((0..3).map(|i| StateVector::basis(3, i)).collect()).unwrap();
        assert!(frame_operator(&onb, 1).unwrap().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let big = VectorFamily::new(vec![StateVector::basis(9, 0)]).unwrap();
        assert!(matches!(frame_operator(&big, 4), Err(Error::TensorSpaceTooLarge(6561))));
        // Tr F² equals the overlap power sum.
        let r = random_family(3, 7, 9);
        let f = frame_operator(&r, 2).unwrap();
        assert!(((&f * &f).trace().re - r.overlap_power_sum(2)).abs() < 1e-10);
    }

    #[test]
    fn flatness_matches_design_verdict() {
        for (fam, t) in [(mub_family(3).unwrap(), 2), (mub_family(3).unwrap(), 3), (mub_family(2).unwrap(), 3), (tetrahedron(), 2), (random_family(3, 9, 1), 2)] {
            let flat = frame_flatness(&fam, t).unwrap() < 1e-8;
            assert_eq!(flat, design_test(&fam, t).is_design);
        }
    }

    #[test]
    fn tight_bounds() {
        for n in 1..10 {
            assert_eq!(tight_bound(n, 1), n as u128);
            assert_eq!(tight_bound(n, 2), (n * n) as u128);
        }
        assert_eq!(tight_bound(2, 3), 6);
    }

    #[test]
    fn unitary_moments() {
        let weyl: Vec<ComplexMatrix> =
            (0..3).flat_map(|r| (0..3).map(move |s| displacement_rs(3, r, s))).collect();
        let m = unitary_design_moment(&weyl, 1).unwrap();
        assert!((m.value - 1.0).abs() < 1e-12 && m.is_design());
        assert!(!unitary_design_moment(&weyl, 2).unwrap().is_design());
        let id = unitary_design_moment(&[ComplexMatrix::identity(3)], 1).unwrap();
        assert!((id.value - 9.0).abs() < 1e-12 && !id.is_design());
        let cliff = qubit_clifford_group();
        let m = unitary_design_moment(&cliff, 2).unwrap();
        assert!((m.value - 2.0).abs() < 1e-10 && m.target == 2.0);
        // The qubit Clifford group is a 3-design but not a 4-design.
        assert!(unitary_design_moment(&cliff, 3).unwrap().is_design());
        assert!(!unitary_design_moment(&cliff, 4).unwrap().is_design());
        assert_eq!(unitary_target(2, 3).unwrap(), 5.0);
        assert!(matches!(unitary_target(3, 4), Err(Error::MomentOutOfTable { t: 4, n: 3 })));
    }

    #[test]
    fn haar_unitary_moment_is_near_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let us: Vec<ComplexMatrix> = (0..400).map(|_| haar_unitary(2, &mut rng)).collect();
        let m = unitary_design_moment(&us, 1).unwrap();
        assert!((m.value - 1.0).abs() < 0.2, "{}", m.value);
    }

    #[test]
    fn monte_carlo_anchor() {
        for (n, t) in [(2, 1), (3, 2), (4, 3), (5, 2)] {
            let (mean, se) = haar_moment_estimate(n, t, 200_000, 17 + n as u64);
            assert!((mean - design_target(n, t)).abs() < 3.0 * se, "n={n} t={t}: {mean} ± {se}");
        }
    }

    #[test]
    fn suite_passes() {
        for n in [2, 3, 4, 5] {
            for c in design_check(n).unwrap() {
                assert!(c.pass, "{c}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn welch_slack_nonnegative(n in 2usize..5, k in 1usize..12, t in 1u32..4, seed in any::<u64>()) {
            let fam = random_family(n, k, seed);
            prop_assert!(welch_bound(&fam, t).slack >= -1e-10);
        }

        #[test]
        fn design_verdict_monotone(n in 2usize..6, t in 1u32..4) {
            if let Ok(fam) = mub_family(n) {
                let v = design_test(&fam, t);
                if v.is_design {
                    for s in 1..t {
                        prop_assert!(design_test(&fam, s).is_design);
                    }
                }
            }
        }
    }
}
