//! SIC fiducials for the Weyl–Heisenberg group: the `f_SIC` objective and
//! its gradient, orbit verification, a seeded restart search, the exact
//! dimension-4 fiducial and its overlap-phase fingerprints.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{order3_eigenspace_projection, order3_elements};
use crate::error::{Error, Result};
use crate::gf::is_prime;
use crate::linalg::{haar_state, ComplexMatrix, StateVector, C64, EPS_MAT, ONE, ZERO};
use crate::mub::ivanovic_mubs;
use crate::weyl::{displacement_rs, omega_power, tau_power};

pub const EPS_SIC: f64 = 1e-8;

/// Search succeeds below this objective value.
pub const SIC_SUCCESS: f64 = 1e-12;

pub const MAX_SEARCH_DIM: usize = 16;

/// Descent stops below this value. Gram deviations scale like `√f`, so the
/// `1e−8` Gram tolerance needs `f` well below `1e−16`.
pub const F_STOP: f64 = 1e-20;

/// Phases `τ^{rs} ω^{sj}` so that `(D_{r,s}ψ)_{j+r} = phase[r][s][j]·ψ_j`.
struct PhaseTable {
    n: usize,
    phase: Vec<C64>,
}

impl PhaseTable {
    fn new(n: usize) -> Self {
        let mut phase = Vec::with_capacity(n * n * n);
        for r in 0..n as i64 {
            for s in 0..n as i64 {
                let t = tau_power(r * s, n);
                for j in 0..n as i64 {
                    phase.push(t * omega_power(s * j, n));
                }
            }
        }
        Self { n, phase }
    }

    fn at(&self, r: usize, s: usize, j: usize) -> C64 {
        self.phase[(r * self.n + s) * self.n + j]
    }

    /// `⟨ψ|D_{r,s}|ψ⟩` for all `(r, s)`, row-major.
    fn overlaps(&self, psi: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for r in 0..n {
            for s in 0..n {
                out.push((0..n).map(|j| psi[(j + r) % n].conj() * self.at(r, s, j) * psi[j]).sum());
            }
        }
        out
    }

    /// `f` and `∂f/∂ψ̄` without the unit-norm constraint.
    fn value_and_gradient(&self, psi: &[C64]) -> (f64, Vec<C64>) {
        let n = self.n;
        let a = 1.0 / (n as f64 + 1.0);
        let c = self.overlaps(psi);
        let mut f = 0.0;
        let mut g = vec![ZERO; n];
        for r in 0..n {
            for s in 0..n {
                if r == 0 && s == 0 {
                    continue;
                }
                let cp = c[r * n + s];
                let d = cp.norm_sqr() - a;
                f += d * d;
                let w = 2.0 * d;
                for j in 0..n {
                    let ph = self.at(r, s, j);
                    // (D ψ)_{j+r} and (D† ψ)_j
                    g[(j + r) % n] += w * cp.conj() * ph * psi[j];
                    g[j] += w * cp * ph.conj() * psi[(j + r) % n];
                }
            }
        }
        (f, g)
    }
}

fn require_unit(psi: &StateVector) -> Result<()> {
    if (psi.norm() - 1.0).abs() > EPS_MAT {
        return Err(Error::NotNormalized(psi.norm()));
    }
    Ok(())
}

/// `Σ_{(r,s)≠(0,0)} (|⟨ψ|D_{r,s}|ψ⟩|² − 1/(N+1))²`.
pub fn f_sic(psi: &StateVector) -> Result<f64> {
    require_unit(psi)?;
    Ok(PhaseTable::new(psi.dim()).value_and_gradient(psi.components()).0)
}

/// `f_SIC` and its Wirtinger gradient `∂f/∂ψ̄` at an arbitrary (not
/// necessarily normalized) point. The gradient with respect to `Re ψ` and
/// `Im ψ` is `2 Re g` and `2 Im g`.
pub fn f_sic_gradient(psi: &StateVector) -> (f64, StateVector) {
    let (f, g) = PhaseTable::new(psi.dim()).value_and_gradient(psi.components());
    (f, StateVector::new(g))
}

/// Relative error `‖∇_an − ∇_fd‖/‖∇_an‖` between the analytic real gradient
/// and central differences with step `h`.
pub fn gradient_check(psi: &StateVector, h: f64) -> f64 {
    let table = PhaseTable::new(psi.dim());
    let base: Vec<C64> = psi.components().to_vec();
    let (_, g) = table.value_and_gradient(&base);
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 0..base.len() {
        for (part, dir) in [(2.0 * g[k].re, ONE), (2.0 * g[k].im, C64::new(0.0, 1.0))] {
            let mut plus = base.clone();
            let mut minus = base.clone();
            plus[k] += dir * h;
            minus[k] -= dir * h;
            let fd = (table.value_and_gradient(&plus).0 - table.value_and_gradient(&minus).0) / (2.0 * h);
            num += (part - fd).powi(2);
            den += part * part;
        }
    }
    (num / den).sqrt()
}

/// `D_{r,s}ψ` for `r, s ∈ Z_N`, row-major.
pub fn orbit(psi: &StateVector) -> Vec<StateVector> {
    let n = psi.dim();
    (0..n as i64)
        .flat_map(|r| (0..n as i64).map(move |s| (r, s)))
        .map(|(r, s)| displacement_rs(n, r, s).apply(psi))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SicCandidate {
    pub n: usize,
    pub fiducial: StateVector,
    pub fsic: f64,
    pub seed: Option<u64>,
    pub restart: Option<usize>,
}

impl SicCandidate {
    pub fn new(fiducial: StateVector) -> Result<Self> {
        let fsic = f_sic(&fiducial)?;
        Ok(Self { n: fiducial.dim(), fiducial, fsic, seed: None, restart: None })
    }

    /// Checks that the cached objective matches the fiducial.
    pub fn validate(&self) -> Result<()> {
        let f = f_sic(&self.fiducial)?;
        if (f - self.fsic).abs() > EPS_MAT || self.fiducial.dim() != self.n {
            return Err(Error::InvalidArgument(format!("cached f_SIC {} does not match {}", self.fsic, f)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SicReport {
    /// `‖(1/N) Σ |ψ_I⟩⟨ψ_I| − 1‖_max`.
    pub identity_deviation: f64,
    /// Max over `I ≠ J` of `||⟨ψ_I|ψ_J⟩|² − 1/(N+1)|`.
    pub gram_deviation: f64,
    pub vectors: usize,
    pub pairs: usize,
    pub pass: bool,
}

pub fn sic_verify(cand: &SicCandidate) -> SicReport {
    let n = cand.n;
    let vs = orbit(&cand.fiducial);
    let mut frame = ComplexMatrix::zeros(n);
    for v in &vs {
        frame = &frame + &ComplexMatrix::projector(v);
    }
    let identity_deviation = frame.scale_real(1.0 / n as f64).max_abs_diff(&ComplexMatrix::identity(n));
    let a = 1.0 / (n as f64 + 1.0);
    let mut gram_deviation: f64 = 0.0;
    let mut pairs = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            gram_deviation = gram_deviation.max((vs[i].inner_product(&vs[j]).norm_sqr() - a).abs());
            pairs += 1;
        }
    }
    SicReport {
        identity_deviation,
        gram_deviation,
        vectors: vs.len(),
        pairs,
        pass: identity_deviation < EPS_MAT && gram_deviation < EPS_SIC,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Project each start onto an eigenspace of an order-3 Clifford element
    /// (odd prime dimensions only); eigenvalue index cycles with the restart.
    pub zauner_start: bool,
    pub max_iterations: usize,
}

impl SearchOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        Self { restarts, seed, zauner_start: false, max_iterations: 50_000 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: SicCandidate,
    /// Restarts whose final objective is below [`SIC_SUCCESS`].
    pub converged: usize,
    pub iterations: usize,
}

struct RestartResult {
    psi: StateVector,
    f: f64,
    iterations: usize,
}

fn real_dot(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

/// Projected gradient descent on the unit sphere with Barzilai–Borwein step
/// lengths and Armijo backtracking.
fn descend(table: &PhaseTable, start: StateVector, max_iterations: usize) -> RestartResult {
    let tangent = |psi: &[C64], g: &[C64]| -> Vec<C64> {
        let g2: Vec<C64> = g.iter().map(|z| z * 2.0).collect();
        let radial = real_dot(psi, &g2);
        g2.iter().zip(psi).map(|(g, p)| g - p * radial).collect()
    };
    let normalize = |v: Vec<C64>| -> Vec<C64> {
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|z| z / nrm).collect()
    };
    let mut psi: Vec<C64> = start.components().to_vec();
    let (mut f, g) = table.value_and_gradient(&psi);
    let mut grad = tangent(&psi, &g);
    let mut step = 0.1;
    let mut checkpoint = f;
    let mut it = 0;
    while it < max_iterations && f >= F_STOP {
        let gnorm2 = real_dot(&grad, &grad);
        if gnorm2 == 0.0 {
            break;
        }
        let mut alpha = step;
        let (next, f_next) = loop {
            let trial = normalize(psi.iter().zip(&grad).map(|(p, g)| p - g * alpha).collect());
            let f_trial = table.value_and_gradient(&trial).0;
            if f_trial <= f - 1e-4 * alpha * gnorm2 || alpha < 1e-14 {
                break (trial, f_trial);
            }
            alpha *= 0.5;
        };
        if f_next > f {
            break;
        }
        let g_next = tangent(&next, &table.value_and_gradient(&next).1);
        let s: Vec<C64> = next.iter().zip(&psi).map(|(a, b)| a - b).collect();
        let y: Vec<C64> = g_next.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = real_dot(&s, &y).abs();
        step = if sy > 0.0 { (real_dot(&s, &s) / sy).clamp(1e-8, 1e3) } else { alpha * 2.0 };
        psi = next;
        f = f_next;
        grad = g_next;
        it += 1;
        if it % 100 == 0 {
            if checkpoint > 0.0 && (checkpoint - f) / checkpoint < 1e-12 {
                break;
            }
            checkpoint = f;
        }
    }
    RestartResult { psi: StateVector::new(psi), f, iterations: it }
}

fn restart_start(n: usize, seed: u64, index: usize, zauner: bool) -> Result<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let start = haar_state(n, &mut rng);
    if !zauner {
        return Ok(start);
    }
    let g = order3_elements(n as u64)?[0];
    let k = (index % 3) as i64;
    let proj = order3_eigenspace_projection(&start, &g, (0, 0), k)?;
    if proj.norm() < 1e-8 {
        return Ok(start);
    }
    Ok(proj.normalized())
}

/// Runs `restarts` independent descents from Haar-random starts (each
/// drawn from its own stream of a ChaCha generator seeded with `seed`) and
/// returns the lowest objective, ties broken by restart index.
pub fn sic_search(n: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    if !(2..=MAX_SEARCH_DIM).contains(&n) {
        return Err(Error::InvalidDimension { dim: n, reason: format!("search supports 2..={MAX_SEARCH_DIM}") });
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    if opts.zauner_start && (n.is_multiple_of(2) || !is_prime(n as u64)) {
        return Err(Error::InvalidDimension { dim: n, reason: "Zauner starts need an odd prime".into() });
    }
    let table = PhaseTable::new(n);
    let results: Vec<RestartResult> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| restart_start(n, opts.seed, i, opts.zauner_start).map(|s| descend(&table, s, opts.max_iterations)))
        .collect::<Result<_>>()?;
    let converged = results.iter().filter(|r| r.f < SIC_SUCCESS).count();
    let iterations = results.iter().map(|r| r.iterations).sum();
    let (index, best) = results
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1.f.total_cmp(&b.1.f).then(a.0.cmp(&b.0)))
        .expect("at least one restart");
    let fiducial = best.psi.normalized();
    let fsic = f_sic(&fiducial)?;
    Ok(SearchOutcome {
        best: SicCandidate { n, fiducial, fsic, seed: Some(opts.seed), restart: Some(index) },
        converged,
        iterations,
    })
}

/// `(√5 − 1)/(2√2) + i·√(√5 + 1)/2`, a unit-modulus root of
/// `t⁸ − 2t⁶ − 2t⁴ − 2t² + 1`.
pub fn dim4_u() -> C64 {
    let r5 = 5f64.sqrt();
    C64::new((r5 - 1.0) / (2.0 * 2f64.sqrt()), (r5 + 1.0).sqrt() / 2.0)
}

/// `t⁸ − 2t⁶ − 2t⁴ − 2t² + 1`.
pub fn dim4_minimal_polynomial(t: C64) -> C64 {
    let t2 = t * t;
    let t4 = t2 * t2;
    t4 * t4 - 2.0 * t4 * t2 - 2.0 * t4 - 2.0 * t2 + 1.0
}

/// Overlap phases `√5·⟨ψ|D_{r,s}|ψ⟩` of the dimension-4 fiducial, with
/// `(0,0)` set to 1.
pub fn dim4_phase_pattern() -> [[C64; 4]; 4] {
    let u = dim4_u();
    let v = u.inv();
    let m = -ONE;
    [[ONE, u, m, v], [u, v, -v, v], [m, -u, m, v], [v, u, u, u]]
}

/// The SIC fiducial in dimension 4 (τ = −e^{iπ/4}) in closed form. Its
/// projector is `(1/4) Σ_{r,s} conj(c_{rs}) D_{r,s}` with
/// `c_{rs} = pattern[r][s]/√5` off the origin; the fiducial is the largest
/// column of that rank-one projector, normalized and phased so its first
/// component is real positive.
pub fn dim4_fiducial() -> StateVector {
    let pattern = dim4_phase_pattern();
    let mut proj = ComplexMatrix::zeros(4);
    for r in 0..4 {
        for s in 0..4 {
            let c = if r == 0 && s == 0 { ONE } else { pattern[r][s] / 5f64.sqrt() };
            proj = &proj + &displacement_rs(4, r as i64, s as i64).scale(c.conj() / 4.0);
        }
    }
    let k = (0..4).max_by(|&a, &b| proj.get(a, a).re.total_cmp(&proj.get(b, b).re)).expect("nonempty");
    proj.column(k).normalized().canonical_phase()
}

/// `√(N+1)·⟨ψ₀|D_{r,s}|ψ₀⟩` for `r, s ∈ Z_N`; `None` at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapPhases {
    pub n: usize,
    pub phases: Vec<Vec<Option<C64>>>,
}

impl OverlapPhases {
    pub fn get(&self, r: usize, s: usize) -> Option<C64> {
        self.phases[r][s]
    }

    /// Max `||phase| − 1|`.
    pub fn modulus_deviation(&self) -> f64 {
        self.phases.iter().flatten().flatten().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

pub fn overlap_phases(cand: &SicCandidate) -> Result<OverlapPhases> {
    let report = sic_verify(cand);
    if !report.pass {
        return Err(Error::UnverifiedSic(report.gram_deviation.max(report.identity_deviation)));
    }
    let n = cand.n;
    let scale = (n as f64 + 1.0).sqrt();
    let c = PhaseTable::new(n).overlaps(cand.fiducial.components());
    let phases = (0..n)
        .map(|r| (0..n).map(|s| if r == 0 && s == 0 { None } else { Some(c[r * n + s] * scale) }).collect())
        .collect();
    Ok(OverlapPhases { n, phases })
}

/// Max distance between a dimension-4 phase table and [`dim4_phase_pattern`].
pub fn dim4_pattern_residual(phases: &OverlapPhases) -> Result<f64> {
    if phases.n != 4 {
        return Err(Error::InvalidDimension { dim: phases.n, reason: "pattern is for dimension 4".into() });
    }
    let pattern = dim4_phase_pattern();
    let mut worst: f64 = 0.0;
    for r in 0..4 {
        for s in 0..4 {
            if let Some(z) = phases.get(r, s) {
                worst = worst.max((z - pattern[r][s]).norm());
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UFingerprint {
    pub u: C64,
    /// `|u − closed form|`.
    pub closed_form_residual: f64,
    /// `|p(u)|`.
    pub minpoly_residual: f64,
    /// `|p(1/u)|`.
    pub unit_residual: f64,
}

/// Reads `u` from entry `(0,1)` and evaluates the minimal polynomial at
/// `u` and `1/u`.
pub fn u_fingerprint(phases: &OverlapPhases) -> Result<UFingerprint> {
    if phases.n != 4 {
        return Err(Error::InvalidDimension { dim: phases.n, reason: "fingerprint is for dimension 4".into() });
    }
    let u = phases.get(0, 1).expect("off-origin entry");
    Ok(UFingerprint {
        u,
        closed_form_residual: (u - dim4_u()).norm(),
        minpoly_residual: dim4_minimal_polynomial(u).norm(),
        unit_residual: dim4_minimal_polynomial(u.inv()).norm(),
    })
}

/// Norms of the projections of the fiducial's Bloch vector onto the `N+1`
/// MUB simplices at odd prime `N`: `‖(|⟨x,a|ψ⟩|² − 1/N)_a‖` per basis `x`.
pub fn mub_simplex_norms(psi: &StateVector) -> Result<Vec<f64>> {
    let n = psi.dim();
    let mubs = ivanovic_mubs(n as u64)?;
    Ok(mubs
        .bases
        .iter()
        .map(|b| {
            b.vectors()
                .iter()
                .map(|v| (v.inner_product(psi).norm_sqr() - 1.0 / n as f64).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect())
}
