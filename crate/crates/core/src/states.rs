//! Constructors for the state families under study and for Haar-random pure
//! states, each returning a validated [`DensityMatrix`].
//!
//! # Random-stream specification
//!
//! Haar sampling is pinned to a named generator so ensembles are reproducible
//! independent of scheduling: the stream for state `i` is `ChaCha12Rng`
//! (rand_chacha 0.3) seeded with `seed_from_u64(master_seed)` and
//! `set_stream(i)`. Gaussian draws use Box–Muller on consecutive `gen::<f64>()`
//! calls: `u1 = 1 - gen()`, `u2 = gen()`,
//! `(z0, z1) = sqrt(-2 ln u1) · (cos 2πu2, sin 2πu2)`. A state vector consumes
//! six such pairs (twelve normals: real and imaginary parts of six
//! amplitudes), then is normalized.

use crate::linalg::{self, ComplexMatrix, MatError};
use crate::DIM;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use thiserror::Error;

/// Raw 6-component state vector in the crate basis ordering.
pub type StateVector = [Complex64; DIM];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("{name} must lie in [{lo}, {hi}] (got {got})")]
    InvalidParams {
        name: &'static str,
        lo: f64,
        hi: f64,
        got: f64,
    },
    #[error("derived beta = (1 - 2*alpha - gamma)/3 must be >= 0 (got {beta:.3e})")]
    NegativeBeta { beta: f64 },
    #[error("psi index must be 1, 2, or 3 (got {got})")]
    BadIndex { got: usize },
    #[error("density matrix must be 6x6 (got {rows}x{cols})")]
    BadShape { rows: usize, cols: usize },
    #[error("Hermiticity violated: max |rho - rho^H| = {dev:.3e}")]
    NotHermitian { dev: f64 },
    #[error("trace violated: |tr(rho) - 1| = {dev:.3e}")]
    BadTrace { dev: f64 },
    #[error("positivity violated: min eigenvalue {min_eig:.3e}")]
    NotPositive { min_eig: f64 },
    #[error("JSON dim must be 6 (got {got})")]
    BadDim { got: usize },
    #[error("JSON field `{field}` must have 36 entries (got {got})")]
    BadFieldLength { field: &'static str, got: usize },
}

impl From<MatError> for StateError {
    fn from(e: MatError) -> Self {
        match e {
            MatError::NonHermitian { dev } => StateError::NotHermitian { dev },
            MatError::NotPsd { min_eig } => StateError::NotPositive { min_eig },
            MatError::NonSquare { rows, cols } | MatError::BadShape { rows, cols, .. } => {
                StateError::BadShape { rows, cols }
            }
        }
    }
}

/// Validated 6×6 density matrix: Hermitian within 1e-10, unit trace within
/// 1e-10, eigenvalues ≥ -1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self, StateError> {
        if mat.rows() != DIM || mat.cols() != DIM {
            return Err(StateError::BadShape {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let dev = mat.hermiticity_deviation();
        if dev > linalg::HERMITICITY_TOL {
            return Err(StateError::NotHermitian { dev });
        }
        let tr_dev = (mat.trace() - Complex64::new(1.0, 0.0)).norm();
        if tr_dev > 1e-10 {
            return Err(StateError::BadTrace { dev: tr_dev });
        }
        let min_eig = linalg::hermitian_eigenvalues(&mat)?[0];
        if min_eig < -linalg::PSD_CLAMP {
            return Err(StateError::NotPositive { min_eig });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        let mut p = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                p += (self.mat[(i, j)] * self.mat[(j, i)]).re;
            }
        }
        p
    }
}

/// Wire format for a density matrix: row-major real and imaginary parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&DensityMatrix> for DensityMatrixJson {
    fn from(rho: &DensityMatrix) -> Self {
        let mut re = Vec::with_capacity(DIM * DIM);
        let mut im = Vec::with_capacity(DIM * DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                re.push(rho.mat[(i, j)].re);
                im.push(rho.mat[(i, j)].im);
            }
        }
        Self { dim: DIM, re, im }
    }
}

impl TryFrom<&DensityMatrixJson> for DensityMatrix {
    type Error = StateError;

    fn try_from(j: &DensityMatrixJson) -> Result<Self, StateError> {
        if j.dim != DIM {
            return Err(StateError::BadDim { got: j.dim });
        }
        if j.re.len() != DIM * DIM {
            return Err(StateError::BadFieldLength {
                field: "re",
                got: j.re.len(),
            });
        }
        if j.im.len() != DIM * DIM {
            return Err(StateError::BadFieldLength {
                field: "im",
                got: j.im.len(),
            });
        }
        let mat = ComplexMatrix::from_fn(DIM, DIM, |i, k| {
            Complex64::new(j.re[i * DIM + k], j.im[i * DIM + k])
        });
        DensityMatrix::new(mat)
    }
}

fn check_range(name: &'static str, lo: f64, hi: f64, got: f64) -> Result<(), StateError> {
    if !(got >= lo && got <= hi) {
        return Err(StateError::InvalidParams { name, lo, hi, got });
    }
    Ok(())
}

/// Two-parameter family ρ_{α,γ}: α on the |02⟩/|12⟩ populations, β on the
/// triplet Bell projectors, γ on the singlet, with β fixed by the unit-trace
/// condition 2α + 3β + γ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParamFamily {
    alpha: f64,
    gamma: f64,
    beta: f64,
}

impl TwoParamFamily {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self, StateError> {
        check_range("alpha", 0.0, 0.5, alpha)?;
        check_range("gamma", 0.0, 1.0, gamma)?;
        let beta = (1.0 - 2.0 * alpha - gamma) / 3.0;
        if beta < -1e-12 {
            return Err(StateError::NegativeBeta { beta });
        }
        // Boundary inputs can land a hair below zero in f64; snap to exact 0.
        Ok(Self {
            alpha,
            gamma,
            beta: beta.max(0.0),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Mixture of |ψ₃⟩ (decoherence-free) with |ψ₂⟩ (decaying), weight `alpha`
/// on the decoherence-free component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfsMixFamily {
    alpha: f64,
}

impl DfsMixFamily {
    pub fn new(alpha: f64) -> Result<Self, StateError> {
        check_range("alpha", 0.0, 1.0, alpha)?;
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Mixture of |ψ₃⟩ (weight `beta`) with the isotropic state ρ̃_α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoMixFamily {
    alpha: f64,
    beta: f64,
}

impl IsoMixFamily {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, StateError> {
        check_range("alpha", 0.0, 1.0, alpha)?;
        check_range("beta", 0.0, 1.0, beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

fn zero_vector() -> StateVector {
    [Complex64::new(0.0, 0.0); DIM]
}

fn superposition(i: usize, j: usize, sign: f64) -> StateVector {
    let mut v = zero_vector();
    v[i] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    v[j] = Complex64::new(sign * FRAC_1_SQRT_2, 0.0);
    v
}

/// Rank-1 projector |v⟩⟨v| as a 6×6 matrix.
pub fn projector(v: &StateVector) -> ComplexMatrix {
    ComplexMatrix::outer(v, v)
}

/// The four Bell vectors of the qubit-qubit subspace {|00⟩,|01⟩,|10⟩,|11⟩}
/// embedded in 2 ⊗ 3, in the order (φ⁺, φ⁻, ψ⁺, ψ⁻):
/// φ± = (|00⟩ ± |11⟩)/√2, ψ± = (|01⟩ ± |10⟩)/√2.
pub fn bell_basis_vectors() -> [StateVector; 4] {
    [
        superposition(0, 4, 1.0),  // φ+
        superposition(0, 4, -1.0), // φ-
        superposition(1, 3, 1.0),  // ψ+
        superposition(1, 3, -1.0), // ψ-
    ]
}

/// Maximally entangled vectors |ψ₁⟩ = (|00⟩+|12⟩)/√2,
/// |ψ₂⟩ = (|01⟩+|12⟩)/√2, |ψ₃⟩ = (|02⟩+|10⟩)/√2.
pub fn psi_k_vector(k: usize) -> Result<StateVector, StateError> {
    match k {
        1 => Ok(superposition(0, 5, 1.0)),
        2 => Ok(superposition(1, 5, 1.0)),
        3 => Ok(superposition(2, 3, 1.0)),
        _ => Err(StateError::BadIndex { got: k }),
    }
}

/// Projector onto |ψ_k⟩, k ∈ {1, 2, 3}.
pub fn psi_k_state(k: usize) -> Result<DensityMatrix, StateError> {
    let v = psi_k_vector(k)?;
    Ok(DensityMatrix::new(projector(&v)).expect("rank-1 projector is a valid state"))
}

/// ρ_{α,γ} = α(|02⟩⟨02| + |12⟩⟨12|) + β(φ⁺ + φ⁻ + ψ⁺ projectors) + γ ψ⁻.
pub fn two_param_state(f: &TwoParamFamily) -> DensityMatrix {
    let [phi_p, phi_m, psi_p, psi_m] = bell_basis_vectors();
    let mut e02 = zero_vector();
    e02[2] = Complex64::new(1.0, 0.0);
    let mut e12 = zero_vector();
    e12[5] = Complex64::new(1.0, 0.0);

    let mat = projector(&e02)
        .add(&projector(&e12))
        .scale(f.alpha)
        .add(
            &projector(&phi_p)
                .add(&projector(&phi_m))
                .add(&projector(&psi_p))
                .scale(f.beta),
        )
        .add(&projector(&psi_m).scale(f.gamma));
    DensityMatrix::new(mat).expect("convex mixture of projectors is a valid state")
}

/// ρ_α = α |ψ₃⟩⟨ψ₃| + (1-α) |ψ₂⟩⟨ψ₂|.
pub fn dfs_mix_state(f: &DfsMixFamily) -> DensityMatrix {
    let p3 = projector(&psi_k_vector(3).unwrap());
    let p2 = projector(&psi_k_vector(2).unwrap());
    let mat = p3.scale(f.alpha).add(&p2.scale(1.0 - f.alpha));
    DensityMatrix::new(mat).expect("convex mixture of projectors is a valid state")
}

/// Isotropic state ρ̃_α = α |ψ₁⟩⟨ψ₁| + (1-α)/6 · I₆.
pub fn iso_state(alpha: f64) -> Result<DensityMatrix, StateError> {
    check_range("alpha", 0.0, 1.0, alpha)?;
    let mat = projector(&psi_k_vector(1).unwrap())
        .scale(alpha)
        .add(&ComplexMatrix::identity(DIM).scale((1.0 - alpha) / 6.0));
    Ok(DensityMatrix::new(mat).expect("isotropic mixture is a valid state"))
}

/// ρ_{α,β} = β |ψ₃⟩⟨ψ₃| + (1-β) ρ̃_α.
pub fn iso_mix_state(f: &IsoMixFamily) -> DensityMatrix {
    let iso = iso_state(f.alpha).expect("alpha validated by the family");
    let mat = projector(&psi_k_vector(3).unwrap())
        .scale(f.beta)
        .add(&iso.matrix().scale(1.0 - f.beta));
    DensityMatrix::new(mat).expect("convex mixture of states is a valid state")
}

/// The dedicated random stream for state `index` under `master_seed`; see the
/// module docs for the full stream specification.
pub fn substream(master_seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// One standard-normal pair via Box–Muller, as pinned in the module docs.
fn normal_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]: keeps ln finite
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * PI * u2;
    (r * t.cos(), r * t.sin())
}

/// Haar-random pure state: normalize a vector of i.i.d. complex Gaussians.
/// Resamples in the (measure-zero) event of a zero vector.
pub fn random_pure_state<R: Rng>(rng: &mut R) -> DensityMatrix {
    loop {
        let mut v = zero_vector();
        for a in v.iter_mut() {
            let (re, im) = normal_pair(rng);
            *a = Complex64::new(re, im);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        for a in v.iter_mut() {
            *a /= norm;
        }
        return DensityMatrix::new(projector(&v)).expect("normalized projector is a valid state");
    }
}
