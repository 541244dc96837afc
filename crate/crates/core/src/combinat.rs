//! Latin squares, complex Hadamard matrices and maximally entangled bases
//! built from a Latin square together with a Hadamard matrix.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, FieldSpec};
use crate::linalg::{root_of_unity, ComplexMatrix, StateVector, C64, EPS_MAT, ONE, ZERO};

/// Largest order handled by [`hadamard_equivalent`].
pub const MAX_EQUIVALENCE_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<Vec<usize>>,
}

pub fn is_latin(cells: &[Vec<usize>]) -> bool {
    let n = cells.len();
    if cells.iter().any(|row| row.len() != n) {
        return false;
    }
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            for (seen, v) in [(&mut row_seen, cells[i][j]), (&mut col_seen, cells[j][i])] {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
    }
    true
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<Self> {
        if !is_latin(&cells) {
            return Err(Error::InvalidArgument("array is not a Latin square".into()));
        }
        Ok(Self { n: cells.len(), cells })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i][j]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Permutes columns so the first row reads `0..n`, then rows so the
    /// first column does.
    pub fn reduced(&self) -> Self {
        let n = self.n;
        let mut col_of = vec![0; n];
        for (j, &v) in self.cells[0].iter().enumerate() {
            col_of[v] = j;
        }
        let by_cols: Vec<Vec<usize>> =
            self.cells.iter().map(|row| (0..n).map(|v| row[col_of[v]]).collect()).collect();
        let mut rows = by_cols;
        rows.sort_by_key(|row| row[0]);
        Self { n, cells: rows }
    }

    pub fn is_reduced(&self) -> bool {
        (0..self.n).all(|i| self.cells[0][i] == i && self.cells[i][0] == i)
    }

    /// Applies the given row, column and symbol permutations.
    pub fn permuted(&self, rows: &[usize], cols: &[usize], symbols: &[usize]) -> Self {
        let cells = (0..self.n)
            .map(|i| (0..self.n).map(|j| symbols[self.cells[rows[i]][cols[j]]]).collect())
            .collect();
        Self { n: self.n, cells }
    }
}

/// Multiplication table of the cyclic group, `L(i, j) = i + j mod n`.
pub fn latin_from_group(n: usize) -> LatinSquare {
    let cells = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    LatinSquare { n, cells }
}

/// The cyclic square with rows, columns and symbols independently shuffled.
/// This is not uniform over all Latin squares.
pub fn random_latin<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LatinSquare {
    let mut perms = [(); 3].map(|_| (0..n).collect::<Vec<_>>());
    for p in &mut perms {
        p.shuffle(rng);
    }
    latin_from_group(n).permuted(&perms[0], &perms[1], &perms[2])
}

pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::OrderMismatch(a.n, b.n));
    }
    let n = a.n;
    let mut seen = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let k = a.cells[i][j] * n + b.cells[i][j];
            if seen[k] {
                return Ok(false);
            }
            seen[k] = true;
        }
    }
    Ok(true)
}

/// `q − 1` squares `L_a(x, y) = a·x + y` over `GF(q)`, one per nonzero `a`,
/// with symbols and indices in canonical field order.
pub fn mols_from_field(q: u64) -> Result<Vec<LatinSquare>> {
    if q > 64 {
        return Err(Error::InvalidArgument(format!("q = {q} exceeds 64")));
    }
    let spec = FieldSpec::of_order(q)?;
    let elems: Vec<_> = gf::elements(&spec).collect();
    let squares = elems[1..]
        .iter()
        .map(|a| {
            let cells = elems
                .iter()
                .map(|x| {
                    let ax = a.mul(x).expect("same field");
                    elems.iter().map(|y| ax.add(y).expect("same field").index() as usize).collect()
                })
                .collect();
            LatinSquare { n: q as usize, cells }
        })
        .collect();
    Ok(squares)
}

/// Number of reduced Latin squares of order `n`, by backtracking.
pub fn count_reduced_latin_squares(n: usize) -> u64 {
    if n <= 2 {
        return 1;
    }
    let mut grid = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        grid[0][i] = i;
        grid[i][0] = i;
    }
    fn fill(grid: &mut Vec<Vec<usize>>, cell: usize, n: usize) -> u64 {
        if cell == n * n {
            return 1;
        }
        let (i, j) = (cell / n, cell % n);
        if i == 0 || j == 0 {
            return fill(grid, cell + 1, n);
        }
        let mut total = 0;
        for v in 0..n {
            let clash = (0..j).any(|c| grid[i][c] == v) || (0..i).any(|r| grid[r][j] == v);
            if !clash {
                grid[i][j] = v;
                total += fill(grid, cell + 1, n);
            }
        }
        grid[i][j] = usize::MAX;
        total
    }
    fill(&mut grid, 0, n)
}

/// Largest order accepted by [`all_latin_squares`].
pub const MAX_ENUMERATED_ORDER: usize = 5;

/// Every Latin square of order `n ≤ 5` on symbols `0..n`, by backtracking
/// in row-major order.
pub fn all_latin_squares(n: usize) -> Result<Vec<LatinSquare>> {
    if n == 0 || n > MAX_ENUMERATED_ORDER {
        return Err(Error::InvalidDimension { dim: n, reason: format!("enumeration supports 1..={MAX_ENUMERATED_ORDER}") });
    }
    fn fill(grid: &mut Vec<Vec<usize>>, cell: usize, n: usize, out: &mut Vec<LatinSquare>) {
        if cell == n * n {
            out.push(LatinSquare { n, cells: grid.clone() });
            return;
        }
        let (i, j) = (cell / n, cell % n);
        for v in 0..n {
            let clash = (0..j).any(|c| grid[i][c] == v) || (0..i).any(|r| grid[r][j] == v);
            if !clash {
                grid[i][j] = v;
                fill(grid, cell + 1, n, out);
            }
        }
        grid[i][j] = usize::MAX;
    }
    let mut out = Vec::new();
    fill(&mut vec![vec![usize::MAX; n]; n], 0, n, &mut out);
    Ok(out)
}

/// Unitary with all entries of modulus `1/√n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HadamardCandidate {
    entries: ComplexMatrix,
}

pub fn is_complex_hadamard(m: &ComplexMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let flat = 1.0 / (m.rows() as f64).sqrt();
    let flatness = m.as_inner().iter().map(|z| (z.norm() - flat).abs()).fold(0.0, f64::max);
    flatness < EPS_MAT && m.unitarity_residual() < EPS_MAT
}

impl HadamardCandidate {
    pub fn new(entries: ComplexMatrix) -> Result<Self> {
        if !is_complex_hadamard(&entries) {
            return Err(Error::InvalidArgument("matrix is not a normalized complex Hadamard".into()));
        }
        Ok(Self { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.entries
    }
}

/// `F_jk = ω^{jk}/√n`.
pub fn fourier_matrix(n: usize) -> HadamardCandidate {
    let norm = 1.0 / (n as f64).sqrt();
    let entries =
        ComplexMatrix::from_fn(n, n, |j, k| root_of_unity((j * k) as i64, n as u64) * norm);
    HadamardCandidate { entries }
}

/// A one-parameter family of order-4 complex Hadamards,
/// `½[[1,1,1,1],[1,−1,e^{ia},−e^{ia}],[1,1,−1,−1],[1,−1,−e^{ia},e^{ia}]]`.
/// At `a = 0` it is the real matrix `F₂ ⊗ F₂`.
pub fn hadamard4_family(a: f64) -> HadamardCandidate {
    let e = C64::from_polar(1.0, a);
    let rows = [
        [ONE, ONE, ONE, ONE],
        [ONE, -ONE, e, -e],
        [ONE, ONE, -ONE, -ONE],
        [ONE, -ONE, -e, e],
    ];
    let entries = ComplexMatrix::from_fn(4, 4, |i, j| rows[i][j] * 0.5);
    HadamardCandidate { entries }
}

// Phases of m_ij m_00 / (m_i0 m_0j); invariant under left and right diagonal unitaries.
fn dephased(m: &ComplexMatrix, rows: &[usize], cols: &[usize], i: usize, j: usize) -> C64 {
    let z = m.get(rows[i], cols[j]) * m.get(rows[0], cols[0])
        / (m.get(rows[i], cols[0]) * m.get(rows[0], cols[j]));
    z / z.norm()
}

/// Decides `H₂ = P D H₁ D' P'` by dephasing and an exhaustive search over
/// row and column permutations of `H₁`.
pub fn hadamard_equivalent(h1: &HadamardCandidate, h2: &HadamardCandidate) -> Result<bool> {
    let n = h1.order();
    if n != h2.order() {
        return Err(Error::OrderMismatch(n, h2.order()));
    }
    if n > MAX_EQUIVALENCE_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let identity: Vec<usize> = (0..n).collect();
    let target: Vec<Vec<C64>> = (0..n)
        .map(|i| (0..n).map(|j| dephased(&h2.entries, &identity, &identity, i, j)).collect())
        .collect();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let tol = 1e-8;
    let found = perms.par_iter().any(|rows| {
        perms.iter().any(|cols| {
            (1..n).all(|i| {
                (1..n).all(|j| (dephased(&h1.entries, rows, cols, i, j) - target[i][j]).norm() < tol)
            })
        })
    });
    Ok(found)
}

/// `|U⟩ = (1/√N) Σ U_ij |i⟩|j⟩`.
pub fn vector_from_unitary(u: &ComplexMatrix) -> Result<StateVector> {
    let residual = u.unitarity_residual();
    if residual > EPS_MAT {
        return Err(Error::NotUnitary(residual));
    }
    let n = u.rows();
    let norm = 1.0 / (n as f64).sqrt();
    Ok(StateVector::new((0..n * n).map(|k| u.get(k / n, k % n) * norm).collect()))
}

/// Reduced density matrices `(ρ_A, ρ_B)` of a vector on `C^n ⊗ C^n`.
pub fn reduced_states(v: &StateVector, n: usize) -> (ComplexMatrix, ComplexMatrix) {
    // With M_ij = v_{in+j}: ρ_A = M M†, ρ_B = (M† M)ᵀ.
    let m = ComplexMatrix::from_fn(n, n, |i, j| v.get(i * n + j));
    let rho_a = &m * &m.adjoint();
    let rho_b = (&m.adjoint() * &m).transpose();
    (rho_a, rho_b)
}

/// Largest deviation of either reduced state from `1/n`.
pub fn entanglement_deviation(v: &StateVector, n: usize) -> f64 {
    let mixed = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
    let (a, b) = reduced_states(v, n);
    a.max_abs_diff(&mixed).max(b.max_abs_diff(&mixed))
}

/// `|Ω_ij⟩ = Σ_k H_jk |k⟩|L(i,k)⟩` with `H` normalized, in the order
/// `(i, j)` row-major.
pub fn werner_basis(latin: &LatinSquare, h: &HadamardCandidate) -> Result<Vec<StateVector>> {
    let n = latin.order();
    if n != h.order() {
        return Err(Error::OrderMismatch(n, h.order()));
    }
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut c = vec![ZERO; n * n];
            for k in 0..n {
                c[k * n + latin.get(i, k)] = h.matrix().get(j, k);
            }
            out.push(StateVector::new(c));
        }
    }
    Ok(out)
}

/// Largest deviation of the Gram matrix of `vectors` from the identity.
pub fn gram_deviation(vectors: &[StateVector]) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, u) in vectors.iter().enumerate() {
        for (b, v) in vectors.iter().enumerate().skip(a) {
            let want = if a == b { ONE } else { ZERO };
            worst = worst.max((u.inner_product(v) - want).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_unitary;
    use crate::weyl::displacement_rs;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graeco_latin_pair() -> (LatinSquare, LatinSquare) {
        // (A,α) (B,β) (C,γ) / (B,γ) (C,α) (A,β) / (C,β) (A,γ) (B,α)
        let latin = LatinSquare::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let greek = LatinSquare::new(vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        (latin, greek)
    }

    #[test]
    fn cyclic_squares() {
        assert_eq!(latin_from_group(3).cells(), &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(latin_from_group(1).cells(), &[vec![0]]);
        assert!(is_latin(latin_from_group(6).cells()));
        assert!(is_latin(latin_from_group(4).cells()));
        assert!(!is_latin(&[vec![0, 0], vec![1, 0]]));
    }

    #[test]
    fn graeco_latin_pairs_are_orthogonal() {
        let (a, b) = graeco_latin_pair();
        assert!(are_orthogonal(&a, &b).unwrap());
        assert!(!are_orthogonal(&a, &a).unwrap());
        assert!(are_orthogonal(&a, &latin_from_group(4)).is_err());
    }

    #[test]
    fn bridge_deck_square_splits_into_orthogonal_pair() {
        // Ranks A K Q J and suits ♠ ♥ ♦ ♣ as 0..3, read off the order-4 card square.
        let ranks = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let suits = vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1], vec![3, 2, 1, 0], vec![1, 0, 3, 2]];
        let r = LatinSquare::new(ranks).unwrap();
        let s = LatinSquare::new(suits).unwrap();
        assert!(are_orthogonal(&r, &s).unwrap());
    }

    #[test]
    fn field_mols() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let sq = mols_from_field(q).unwrap();
            assert_eq!(sq.len() as u64, q - 1);
            for a in &sq {
                assert!(is_latin(a.cells()));
            }
            for (a, b) in sq.iter().tuple_combinations() {
                assert!(are_orthogonal(a, b).unwrap());
            }
        }
        assert!(matches!(mols_from_field(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn reduced_counts() {
        let counts: Vec<u64> = (2..=5).map(count_reduced_latin_squares).collect();
        assert_eq!(counts, vec![1, 1, 4, 56]);
    }

    #[test]
    fn reduction_produces_reduced_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..7 {
            let l = random_latin(n, &mut rng);
            let r = l.reduced();
            assert!(is_latin(r.cells()) && r.is_reduced());
        }
    }

    #[test]
    fn fourier_matrices() {
        let f2 = fourier_matrix(2);
        let s = 1.0 / 2f64.sqrt();
        let want = ComplexMatrix::from_rows(&[vec![ONE * s, ONE * s], vec![ONE * s, -ONE * s]]);
        assert!(f2.matrix().max_abs_diff(&want) < 1e-15);
        let w = root_of_unity(1, 3);
        let t = 1.0 / 3f64.sqrt();
        let f3 = ComplexMatrix::from_rows(&[
            vec![ONE * t, ONE * t, ONE * t],
            vec![ONE * t, w * t, w * w * t],
            vec![ONE * t, w * w * t, w * t],
        ]);
        assert!(fourier_matrix(3).matrix().max_abs_diff(&f3) < 1e-15);
        for n in 2..=12 {
            assert!(is_complex_hadamard(fourier_matrix(n).matrix()));
        }
    }

    #[test]
    fn equivalence_positive_cases() {
        let f3 = fourier_matrix(3);
        let swapped = ComplexMatrix::from_fn(3, 3, |i, j| f3.matrix().get(i, [0, 2, 1][j]));
        assert!(hadamard_equivalent(&f3, &HadamardCandidate::new(swapped).unwrap()).unwrap());

        let s = 1.0 / 2f64.sqrt();
        let h = ComplexMatrix::from_rows(&[vec![ONE * s, ONE * s], vec![-ONE * s, ONE * s]]);
        assert!(hadamard_equivalent(&fourier_matrix(2), &HadamardCandidate::new(h).unwrap()).unwrap());
    }

    #[test]
    fn enumerates_all_latin_squares() {
        let counts: Vec<usize> = (1..=5).map(|n| all_latin_squares(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 12, 576, 161280]);
        let four = all_latin_squares(4).unwrap();
        assert_eq!(four.iter().filter(|l| l.is_reduced()).count() as u64, count_reduced_latin_squares(4));
        assert!(four.iter().all(|l| is_latin(l.cells())));
        assert!(all_latin_squares(6).is_err());
    }

    #[test]
    fn equivalence_under_random_diagonal_and_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f5 = fourier_matrix(5);
        let mut rows: Vec<usize> = (0..5).collect();
        let mut cols: Vec<usize> = (0..5).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let dl: Vec<C64> = (0..5).map(|_| C64::from_polar(1.0, rng.random::<f64>() * 6.0)).collect();
        let dr: Vec<C64> = (0..5).map(|_| C64::from_polar(1.0, rng.random::<f64>() * 6.0)).collect();
        let m = ComplexMatrix::from_fn(5, 5, |i, j| dl[i] * f5.matrix().get(rows[i], cols[j]) * dr[j]);
        assert!(hadamard_equivalent(&f5, &HadamardCandidate::new(m).unwrap()).unwrap());
    }

    #[test]
    fn order4_family() {
        let real = ComplexMatrix::from_fn(4, 4, |i, j| {
            let f2 = [[1.0, 1.0], [1.0, -1.0]];
            ONE * (f2[i / 2][j / 2] * f2[i % 2][j % 2] * 0.5)
        });
        assert!(hadamard4_family(0.0).matrix().max_abs_diff(&real) < 1e-15);
        let f4 = fourier_matrix(4);
        assert!(hadamard_equivalent(&hadamard4_family(std::f64::consts::FRAC_PI_2), &f4).unwrap());
        for a in [0.3, 0.7, 1.1] {
            assert!(is_complex_hadamard(hadamard4_family(a).matrix()));
            assert!(!hadamard_equivalent(&hadamard4_family(a), &f4).unwrap(), "a = {a}");
        }
        assert!(!hadamard_equivalent(&hadamard4_family(0.0), &f4).unwrap());
    }

    #[test]
    fn equivalence_rejects_large_orders() {
        let f = fourier_matrix(7);
        assert!(matches!(hadamard_equivalent(&f, &f), Err(Error::OrderTooLarge(7))));
    }

    #[test]
    fn vectorized_unitaries() {
        let s = 1.0 / 2f64.sqrt();
        let bell = vector_from_unitary(&ComplexMatrix::identity(2)).unwrap();
        assert!(bell.max_abs_diff(&StateVector::new(vec![ONE * s, ZERO, ZERO, ONE * s])) < 1e-15);

        let x = displacement_rs(3, 1, 0);
        let v = vector_from_unitary(&x).unwrap();
        // X|j⟩ = |j+1⟩, so X_{ij} = δ_{i,j+1}; |Ω_1⟩ lists |0⟩|1⟩, |1⟩|2⟩, |2⟩|0⟩.
        let t = 1.0 / 3f64.sqrt();
        let omega1 = latin_from_group(3);
        let mut want = vec![ZERO; 9];
        for k in 0..3 {
            want[k * 3 + omega1.get(1, k)] = ONE * t;
        }
        let want = StateVector::new(want);
        let xt = vector_from_unitary(&x.transpose()).unwrap();
        assert!(xt.max_abs_diff(&want) < 1e-15);
        assert!(entanglement_deviation(&v, 3) < 1e-15);

        assert!(matches!(vector_from_unitary(&ComplexMatrix::zeros(2)), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn overlap_of_vectorized_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let u = haar_unitary(3, &mut rng);
            let v = haar_unitary(3, &mut rng);
            let lhs = vector_from_unitary(&u).unwrap().inner_product(&vector_from_unitary(&v).unwrap());
            let rhs = u.hs_inner(&v) / 3.0;
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn werner_qutrit_first_row() {
        let basis = werner_basis(&latin_from_group(3), &fourier_matrix(3)).unwrap();
        let t = 1.0 / 3f64.sqrt();
        let w = root_of_unity(1, 3);
        let diag = |c: [C64; 3]| {
            let mut v = vec![ZERO; 9];
            for k in 0..3 {
                v[4 * k] = c[k] * t;
            }
            StateVector::new(v)
        };
        assert!(basis[0].max_abs_diff(&diag([ONE, ONE, ONE])) < 1e-15);
        assert!(basis[1].max_abs_diff(&diag([ONE, w, w * w])) < 1e-15);
        assert!(basis[2].max_abs_diff(&diag([ONE, w * w, w])) < 1e-15);
    }

    #[test]
    fn werner_qubit_is_bell_basis() {
        let basis = werner_basis(&latin_from_group(2), &fourier_matrix(2)).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let bell = [
            [ONE * s, ZERO, ZERO, ONE * s],
            [ONE * s, ZERO, ZERO, -ONE * s],
            [ZERO, ONE * s, ONE * s, ZERO],
            [ZERO, ONE * s, -ONE * s, ZERO],
        ];
        for v in &basis {
            let hit = bell.iter().any(|b| v.phase_aligned_distance(&StateVector::new(b.to_vec())) < 1e-12);
            assert!(hit);
        }
    }

    #[test]
    fn werner_qutrit_reproduces_displacement_basis() {
        let basis = werner_basis(&latin_from_group(3), &fourier_matrix(3)).unwrap();
        let vecs: Vec<StateVector> = (0..3)
            .flat_map(|r| (0..3).map(move |s| vector_from_unitary(&displacement_rs(3, r, s)).unwrap()))
            .collect();
        for v in &basis {
            assert!(vecs.iter().any(|d| v.phase_aligned_distance(d) < 1e-12));
        }
    }

    #[test]
    fn werner_order_four_gram() {
        let basis = werner_basis(&latin_from_group(4), &fourier_matrix(4)).unwrap();
        assert_eq!(basis.len(), 16);
        assert!(gram_deviation(&basis) < 1e-10);
    }

    proptest! {
        #[test]
        fn werner_bases_are_maximally_entangled(n in 2usize..=5, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = random_latin(n, &mut rng);
            prop_assert!(is_latin(l.cells()));
            let basis = werner_basis(&l, &fourier_matrix(n)).unwrap();
            prop_assert!(gram_deviation(&basis) < EPS_MAT);
            for v in &basis {
                prop_assert!(entanglement_deviation(v, n) < EPS_MAT);
            }
        }

        #[test]
        fn orthogonality_is_symmetric(seed in any::<u64>(), n in 2usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_latin(n, &mut rng);
            let b = random_latin(n, &mut rng);
            prop_assert_eq!(are_orthogonal(&a, &b).unwrap(), are_orthogonal(&b, &a).unwrap());
        }
    }
}
