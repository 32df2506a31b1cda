//! Dense complex-matrix kernel for the small (≤ 6×6) Hermitian problems the
//! rest of the crate needs: eigendecomposition, PSD square root, partial
//! transpose / partial trace in the 2 ⊗ 3 layout, tensor and Schur products.
//!
//! Everything here is pure and allocation-per-call; matrices are plain
//! row-major buffers of `Complex64`.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};
use thiserror::Error;

/// Symmetry tolerance: ‖A − A†‖_max above this is rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues in `[-PSD_CLAMP, 0]` are treated as exact zeros by the PSD
/// operations; anything below is an error, not noise.
pub const PSD_CLAMP: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |A - A^H| = {dev:.3e})")]
    NonHermitian { dev: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd { min_eig: f64 },
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    BadShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * c)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Kronecker (tensor) product, row-major index convention: the row index
    /// of `A ⊗ B` is `i_A · rows(B) + i_B`, matching the crate-wide basis
    /// ordering when `A` acts on the qubit and `B` on the qutrit.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            let (ia, ib) = (i / other.rows, i % other.rows);
            let (ja, jb) = (j / other.cols, j % other.cols);
            self[(ia, ja)] * other[(ib, jb)]
        })
    }

    /// Entrywise (Schur) product.
    pub fn schur(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * other[(i, j)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max-norm deviation from Hermiticity, ‖A − A†‖_max.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    fn check_square(&self) -> Result<(), MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn check_hermitian(&self) -> Result<(), MatError> {
        self.check_square()?;
        let dev = self.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(MatError::NonHermitian { dev });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a Hermitian eigendecomposition: eigenvalues ascending, the k-th
/// column of `eigenvectors` belonging to `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigenResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues are returned in ascending order. Each eigenvector is
/// phase-fixed so that its first component of modulus > 1e-12 is real and
/// positive, which makes the output deterministic.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigenResult, MatError> {
    a.check_hermitian()?;
    let (vals, vecs) = jacobi(a, true);
    let vecs = vecs.expect("eigenvectors requested");
    let n = a.rows();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap().then(i.cmp(&j)));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| vals[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        // Phase convention: first non-negligible component real positive.
        let mut phase = Complex64::new(1.0, 0.0);
        for i in 0..n {
            let z = vecs[(i, old)];
            if z.norm() > 1e-12 {
                phase = z.conj() / z.norm();
                break;
            }
        }
        for i in 0..n {
            eigenvectors[(i, new)] = vecs[(i, old)] * phase;
        }
    }
    Ok(HermitianEigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only (ascending), skipping eigenvector accumulation. This is
/// the hot path behind entropies and negativity.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>, MatError> {
    a.check_hermitian()?;
    let (mut vals, _) = jacobi(a, false);
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(vals)
}

/// Cyclic Jacobi for Hermitian matrices. Sweeps over all (p, q) pairs,
/// annihilating each off-diagonal entry with a unitary 2×2 rotation, until
/// the off-diagonal Frobenius norm drops below 1e-14·‖A‖_F. Convergence is
/// guaranteed for Hermitian input; the sweep cap is a safety stop only.
fn jacobi(a: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = a.rows();
    let mut m = a.clone();
    let mut vecs = want_vectors.then(|| ComplexMatrix::identity(n));
    let tol = 1e-14 * a.frobenius_norm();

    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                // Factor out the phase of a_pq, then rotate like the real
                // symmetric case: tan(2θ) from the classic Jacobi formula.
                let u = apq / r;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary V restricted to (p, q):
                //   V[p,p] = c, V[p,q] = s, V[q,p] = -s·u̅, V[q,q] = c·u̅
                let su = u.conj() * s;
                let cu = u.conj() * c;

                // Columns: M ← M·V
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = mip * c - miq * su;
                    m[(i, q)] = mip * s + miq * cu;
                }
                // Rows: M ← V†·M
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = mpj * c - mqj * u * s;
                    m[(q, j)] = mpj * s + mqj * u * c;
                }
                // Kill round-off where an exact zero/real is guaranteed.
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

                if let Some(e) = vecs.as_mut() {
                    for i in 0..n {
                        let eip = e[(i, p)];
                        let eiq = e[(i, q)];
                        e[(i, p)] = eip * c - eiq * su;
                        e[(i, q)] = eip * s + eiq * cu;
                    }
                }
            }
        }
    }

    let vals = (0..n).map(|i| m[(i, i)].re).collect();
    (vals, vecs)
}

/// Hermitian PSD square root: S with S·S = A, eigenvalues in
/// `[-PSD_CLAMP, 0]` clamped to zero first.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix, MatError> {
    let eig = hermitian_eigen(a)?;
    let min_eig = eig.eigenvalues[0];
    if min_eig < -PSD_CLAMP {
        return Err(MatError::NotPsd { min_eig });
    }
    let n = a.rows();
    let sqrt_vals: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    // S = V diag(√λ) V†
    let v = &eig.eigenvectors;
    let mut s = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += v[(i, k)] * sqrt_vals[k] * v[(j, k)].conj();
            }
            s[(i, j)] = acc;
        }
    }
    // Symmetrize away the last bits of round-off.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (s[(i, j)] + s[(j, i)].conj()) * 0.5;
            s[(i, j)] = avg;
            s[(j, i)] = avg.conj();
        }
        s[(i, i)] = Complex64::new(s[(i, i)].re, 0.0);
    }
    Ok(s)
}

/// Partial transpose on the qubit of a 6×6 matrix in the crate basis
/// ordering: viewing the matrix as 2×2 blocks of 3×3, the two off-diagonal
/// blocks are swapped.
pub fn partial_transpose_qubit(rho: &ComplexMatrix) -> Result<ComplexMatrix, MatError> {
    if rho.rows() != 6 || rho.cols() != 6 {
        return Err(MatError::BadShape {
            expected: 6,
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    Ok(ComplexMatrix::from_fn(6, 6, |i, j| {
        let (a, r) = (i / 3, i % 3);
        let (b, c) = (j / 3, j % 3);
        rho[(3 * b + r, 3 * a + c)]
    }))
}

/// Reduced qubit state: trace out the qutrit, yielding a 2×2 matrix.
pub fn trace_out_qutrit(rho: &ComplexMatrix) -> Result<ComplexMatrix, MatError> {
    if rho.rows() != 6 || rho.cols() != 6 {
        return Err(MatError::BadShape {
            expected: 6,
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    Ok(ComplexMatrix::from_fn(2, 2, |a, b| {
        (0..3).map(|k| rho[(3 * a + k, 3 * b + k)]).sum()
    }))
}

/// Reduced qutrit state: trace out the qubit, yielding a 3×3 matrix.
pub fn trace_out_qubit(rho: &ComplexMatrix) -> Result<ComplexMatrix, MatError> {
    if rho.rows() != 6 || rho.cols() != 6 {
        return Err(MatError::BadShape {
            expected: 6,
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    Ok(ComplexMatrix::from_fn(3, 3, |i, j| {
        (0..2).map(|a| rho[(3 * a + i, 3 * a + j)]).sum()
    }))
}
