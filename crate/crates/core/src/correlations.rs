//! The four correlation measures: entanglement negativity, classical
//! correlation, quantum discord, and local quantum uncertainty, each with a
//! generic numeric path, plus the closed-form evaluators known for the state
//! families in [`crate::states`]. The numeric and closed-form routes are
//! intentionally independent so they can cross-check one another.
//!
//! All entropic quantities use base-2 logarithms. The sudden-death time
//! formula uses the natural logarithm; the reference values it reproduces
//! (≈5.545 and ≈1.233) pin that choice down.

use crate::channel::{dephase, DephasingPoint};
use crate::linalg::{self, ComplexMatrix, MatError};
use crate::states::{DensityMatrix, DfsMixFamily, IsoMixFamily, StateError, TwoParamFamily};
use crate::DIM;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Measurement branches with probability below this cutoff are treated as
/// absent, avoiding 0/0 in the conditional state.
pub const BRANCH_CUTOFF: f64 = 1e-12;

/// Von Neumann measurement on the qubit, parameterized by the Bloch angles
/// of the projector axis: A₁ = |n(θ,φ)⟩⟨n|, A₂ = I − A₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMeasurement {
    theta: f64,
    phi: f64,
}

impl QubitMeasurement {
    pub fn new(theta: f64, phi: f64) -> Result<Self, StateError> {
        if !(0.0..=PI).contains(&theta) {
            return Err(StateError::InvalidParams {
                name: "theta",
                lo: 0.0,
                hi: PI,
                got: theta,
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(StateError::InvalidParams {
                name: "phi",
                lo: 0.0,
                hi: 2.0 * PI,
                got: phi,
            });
        }
        Ok(Self { theta, phi })
    }

    /// Fold arbitrary real angles back into θ ∈ [0, π], φ ∈ [0, 2π) via the
    /// Bloch vector they describe.
    fn canonical(theta: f64, phi: f64) -> Self {
        let (st, ct) = (theta.sin(), theta.cos());
        let (nx, ny, nz) = (st * phi.cos(), st * phi.sin(), ct);
        let theta = nz.clamp(-1.0, 1.0).acos();
        let mut phi = ny.atan2(nx);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The measured axis |n⟩ = (cos θ/2, e^{iφ} sin θ/2).
    pub fn axis(&self) -> [Complex64; 2] {
        let (c, s) = ((self.theta / 2.0).cos(), (self.theta / 2.0).sin());
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }

    /// The two rank-1 projectors (A₁, A₂) on the qubit.
    pub fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let n = self.axis();
        let a1 = ComplexMatrix::outer(&n, &n);
        let a2 = ComplexMatrix::identity(2).sub(&a1);
        (a1, a2)
    }
}

/// All four measures evaluated at one channel point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRecord {
    pub gamma_t: f64,
    pub negativity: f64,
    pub classical: f64,
    pub discord: f64,
    pub lqu: f64,
}

/// Negativity: twice the sum of |negative eigenvalues| of the qubit partial
/// transpose. Zero exactly on PPT states, 1 on the maximally entangled ones.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    let pt = linalg::partial_transpose_qubit(rho.matrix()).expect("density matrix is 6x6");
    let vals = linalg::hermitian_eigenvalues(&pt).expect("partial transpose stays Hermitian");
    // Fold from +0.0: an empty f64 Sum yields -0.0, which would leak a
    // negative zero into the PPT case.
    let neg_sum = vals
        .iter()
        .fold(0.0, |acc, &l| if l < 0.0 { acc - l } else { acc });
    2.0 * neg_sum
}

fn entropy_from_eigenvalues(vals: &[f64]) -> f64 {
    vals.iter().fold(0.0, |acc, &l| {
        let l = l.clamp(0.0, 1.0);
        if l > 0.0 {
            acc - l * l.log2()
        } else {
            acc
        }
    })
}

/// Von Neumann entropy S(ρ) = −tr(ρ log₂ ρ) of a density matrix of any
/// dimension, with 0·log 0 = 0. Eigenvalues in [-1e-10, 0] are clamped to
/// zero; anything lower is an error.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64, MatError> {
    let vals = linalg::hermitian_eigenvalues(rho)?;
    if vals[0] < -linalg::PSD_CLAMP {
        return Err(MatError::NotPsd { min_eig: vals[0] });
    }
    Ok(entropy_from_eigenvalues(&vals))
}

/// Quantum mutual information I(ρ) = S(ρ_A) + S(ρ_B) − S(ρ_AB).
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let a = linalg::trace_out_qutrit(rho.matrix()).expect("density matrix is 6x6");
    let b = linalg::trace_out_qubit(rho.matrix()).expect("density matrix is 6x6");
    let sa = von_neumann_entropy(&a).expect("reduced state of a valid density matrix");
    let sb = von_neumann_entropy(&b).expect("reduced state of a valid density matrix");
    let sab = entropy_from_eigenvalues(
        &linalg::hermitian_eigenvalues(rho.matrix()).expect("valid density matrix"),
    );
    sa + sb - sab
}

/// Eigenvalues of a 3×3 Hermitian matrix by the trigonometric solution of
/// the characteristic cubic, ascending. Fast path for the measurement
/// optimization; agrees with the Jacobi route to ~1e-12 (see tests).
fn eigvals3(m: &[[Complex64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1].norm_sqr() + m[0][2].norm_sqr() + m[1][2].norm_sqr();
    let d = [m[0][0].re, m[1][1].re, m[2][2].re];
    if p1 == 0.0 {
        let mut out = d;
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return out;
    }
    let q = (d[0] + d[1] + d[2]) / 3.0;
    let p2 = (d[0] - q).powi(2) + (d[1] - q).powi(2) + (d[2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    // B = (M - qI)/p, r = det(B)/2 ∈ [-1, 1] up to round-off.
    let b = |i: usize, j: usize| -> Complex64 {
        let shift = if i == j { q } else { 0.0 };
        (m[i][j] - shift) / p
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det.re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * (phi).cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    [lo, mid, hi]
}

/// Unnormalized steered qutrit operator σ(i,j) = ⟨n ⊗ i| ρ |n ⊗ j⟩ for a
/// qubit axis |n⟩. Its trace is the branch probability, and the branch's
/// conditional state (A⊗I)ρ(A⊗I)/p has exactly the spectrum of σ/p.
fn steered(rho: &ComplexMatrix, n: &[Complex64; 2]) -> [[Complex64; 3]; 3] {
    let mut sig = [[Complex64::new(0.0, 0.0); 3]; 3];
    for a in 0..2 {
        for bq in 0..2 {
            let w = n[a].conj() * n[bq];
            for i in 0..3 {
                for j in 0..3 {
                    sig[i][j] += w * rho[(3 * a + i, 3 * bq + j)];
                }
            }
        }
    }
    sig
}

/// p·S(σ/p) from the unnormalized eigenvalues: −Σ λ log₂ λ + p log₂ p.
fn weighted_branch_entropy(sig: &[[Complex64; 3]; 3]) -> f64 {
    let p = sig[0][0].re + sig[1][1].re + sig[2][2].re;
    if p < BRANCH_CUTOFF {
        return 0.0;
    }
    let vals = eigvals3(sig);
    let mut s = p * p.log2();
    for l in vals {
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    s
}

fn conditional_entropy_raw(
    rho: &ComplexMatrix,
    rho_b: &[[Complex64; 3]; 3],
    theta: f64,
    phi: f64,
) -> f64 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let n = [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)];
    let sig1 = steered(rho, &n);
    // The two branches sum to the reduced qutrit state.
    let mut sig2 = *rho_b;
    for i in 0..3 {
        for j in 0..3 {
            sig2[i][j] -= sig1[i][j];
        }
    }
    weighted_branch_entropy(&sig1) + weighted_branch_entropy(&sig2)
}

fn qutrit_reduction(rho: &ComplexMatrix) -> [[Complex64; 3]; 3] {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = rho[(i, j)] + rho[(3 + i, 3 + j)];
        }
    }
    out
}

/// Measurement-conditioned entropy S(ρ|{A_k}) = Σ_k p_k S(ρ_k) for the given
/// qubit measurement.
pub fn conditional_entropy(rho: &DensityMatrix, m: &QubitMeasurement) -> f64 {
    let rho_b = qutrit_reduction(rho.matrix());
    conditional_entropy_raw(rho.matrix(), &rho_b, m.theta, m.phi)
}

const GRID_THETA: usize = 64;
const GRID_PHI: usize = 128;

/// Classical correlation C(ρ) = sup over von Neumann qubit measurements of
/// S(ρ_B) − S(ρ|{A_k}), with the maximizing measurement.
///
/// The sup is located by a 64×128 (θ, φ) grid scan followed by Nelder–Mead
/// refinement seeded with the three best grid points (de-collinearized if
/// needed), stopping when the simplex diameter falls below 1e-9.
pub fn classical_correlation(rho: &DensityMatrix) -> (f64, QubitMeasurement) {
    let mat = rho.matrix();
    let rho_b = qutrit_reduction(mat);
    let sb = {
        let b = linalg::trace_out_qubit(mat).expect("density matrix is 6x6");
        von_neumann_entropy(&b).expect("reduced state of a valid density matrix")
    };

    // Minimizing the conditional entropy maximizes the objective.
    let f = |theta: f64, phi: f64| conditional_entropy_raw(mat, &rho_b, theta, phi);

    let mut best: Vec<(f64, [f64; 2])> = Vec::with_capacity(3);
    for it in 0..GRID_THETA {
        let theta = PI * it as f64 / (GRID_THETA - 1) as f64;
        for ip in 0..GRID_PHI {
            let phi = 2.0 * PI * ip as f64 / GRID_PHI as f64;
            let val = f(theta, phi);
            if best.len() < 3 {
                best.push((val, [theta, phi]));
                best.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            } else if val < best[2].0 {
                best[2] = (val, [theta, phi]);
                best.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            }
        }
    }

    let mut simplex: [(f64, [f64; 2]); 3] = [best[0], best[1], best[2]];
    // Adjacent grid optima are often collinear; a degenerate simplex would
    // trap Nelder–Mead on a line.
    let area = {
        let [a, b, c] = [simplex[0].1, simplex[1].1, simplex[2].1];
        ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).abs()
    };
    if area < 1e-9 {
        let a = simplex[0].1;
        let nudged = [
            a[0] + PI / (2.0 * (GRID_THETA - 1) as f64),
            a[1] + PI / GRID_PHI as f64,
        ];
        simplex[2] = (f(nudged[0], nudged[1]), nudged);
    }

    let refined = nelder_mead(f, simplex);
    let value = (sb - refined.0).max(0.0);
    (
        value,
        QubitMeasurement::canonical(refined.1[0], refined.1[1]),
    )
}

/// Plain 2-D Nelder–Mead minimization; terminates when the simplex diameter
/// drops below 1e-9 or after 500 iterations.
fn nelder_mead(f: impl Fn(f64, f64) -> f64, mut simplex: [(f64, [f64; 2]); 3]) -> (f64, [f64; 2]) {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let dist = |a: &[f64; 2], b: &[f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();

    for _ in 0..500 {
        simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let diameter = dist(&simplex[0].1, &simplex[1].1)
            .max(dist(&simplex[0].1, &simplex[2].1))
            .max(dist(&simplex[1].1, &simplex[2].1));
        if diameter < 1e-9 {
            break;
        }

        let centroid = [
            (simplex[0].1[0] + simplex[1].1[0]) / 2.0,
            (simplex[0].1[1] + simplex[1].1[1]) / 2.0,
        ];
        let worst = simplex[2];
        let point_at = |t: f64| {
            [
                centroid[0] + t * (centroid[0] - worst.1[0]),
                centroid[1] + t * (centroid[1] - worst.1[1]),
            ]
        };

        let xr = point_at(REFLECT);
        let fr = f(xr[0], xr[1]);
        if fr < simplex[0].0 {
            let xe = point_at(EXPAND);
            let fe = f(xe[0], xe[1]);
            simplex[2] = if fe < fr { (fe, xe) } else { (fr, xr) };
        } else if fr < simplex[1].0 {
            simplex[2] = (fr, xr);
        } else {
            let xc = point_at(-CONTRACT);
            let fc = f(xc[0], xc[1]);
            if fc < worst.0 {
                simplex[2] = (fc, xc);
            } else {
                for k in 1..3 {
                    let x = [
                        simplex[0].1[0] + SHRINK * (simplex[k].1[0] - simplex[0].1[0]),
                        simplex[0].1[1] + SHRINK * (simplex[k].1[1] - simplex[0].1[1]),
                    ];
                    simplex[k] = (f(x[0], x[1]), x);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    simplex[0]
}

/// Quantum discord Q(ρ) = I(ρ) − C(ρ), clamped at zero for reporting.
pub fn quantum_discord(rho: &DensityMatrix) -> f64 {
    quantum_discord_unclamped(rho).max(0.0)
}

/// The raw difference I(ρ) − C(ρ); may dip below zero by optimizer noise
/// (≳ -1e-8), which the clamped variant hides.
pub fn quantum_discord_unclamped(rho: &DensityMatrix) -> f64 {
    mutual_information(rho) - classical_correlation(rho).0
}

fn pauli(k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    match k {
        1 => {
            m[(0, 1)] = Complex64::new(1.0, 0.0);
            m[(1, 0)] = Complex64::new(1.0, 0.0);
        }
        2 => {
            m[(0, 1)] = Complex64::new(0.0, -1.0);
            m[(1, 0)] = Complex64::new(0.0, 1.0);
        }
        3 => {
            m[(0, 0)] = Complex64::new(1.0, 0.0);
            m[(1, 1)] = Complex64::new(-1.0, 0.0);
        }
        _ => unreachable!("pauli index is 1..=3"),
    }
    m
}

/// Local quantum uncertainty LQ(ρ) = 1 − λ_max(M), where
/// m_ij = Tr{√ρ (σ_i ⊗ I) √ρ (σ_j ⊗ I)} is real symmetric 3×3.
pub fn lqu(rho: &DensityMatrix) -> f64 {
    let s = linalg::psd_sqrt(rho.matrix()).expect("validated density matrix is PSD");
    let i3 = ComplexMatrix::identity(3);
    let t: Vec<ComplexMatrix> = (1..=3).map(|k| s.matmul(&pauli(k).kron(&i3))).collect();
    let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            // Tr(S σ_i S σ_j) is real for Hermitian factors.
            let mut tr = 0.0;
            for r in 0..DIM {
                for c in 0..DIM {
                    tr += (t[i][(r, c)] * t[j][(c, r)]).re;
                }
            }
            m[i][j] = Complex64::new(tr, 0.0);
            m[j][i] = Complex64::new(tr, 0.0);
        }
    }
    let lambda_max = eigvals3(&m)[2];
    (1.0 - lambda_max).max(0.0)
}

/// Evaluate all four measures for the initial state evolved to the channel
/// point, sharing one measurement optimization between the classical
/// correlation and the discord.
pub fn correlation_record(rho0: &DensityMatrix, p: DephasingPoint) -> CorrelationRecord {
    let rho_t = dephase(rho0, p);
    let (classical, _) = classical_correlation(&rho_t);
    CorrelationRecord {
        gamma_t: p.gamma_t(),
        negativity: negativity(&rho_t),
        classical,
        discord: (mutual_information(&rho_t) - classical).max(0.0),
        lqu: lqu(&rho_t),
    }
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// x·log₂(y) with the 0-argument limits sent to zero.
fn xlog2(x: f64, y: f64) -> f64 {
    if x <= 0.0 || y <= 0.0 {
        0.0
    } else {
        x * y.log2()
    }
}

/// Classical correlation of ρ_{α,γ}; independent of the decay parameter.
pub fn classical_closed_form(f: &TwoParamFamily) -> f64 {
    let (b, g) = (f.beta(), f.gamma());
    -xlog2(3.0 * b + g, (3.0 * b + g) / 2.0) + xlog2(2.0 * b, 2.0 * b) + xlog2(b + g, b + g)
}

/// Quantum discord of the evolved ρ_{α,γ}.
pub fn discord_closed_form(f: &TwoParamFamily, p: DephasingPoint) -> f64 {
    let (a, b, g) = (f.alpha(), f.beta(), f.gamma());
    let xi = p.xi();
    let u = (b + g + xi * (b - g)) / 2.0;
    let v = (b + g - xi * (b - g)) / 2.0;
    1.0 - 2.0 * a - 2.0 * b - xlog2(b + g, b + g) + xlog2(u, u) + xlog2(v, v)
}

/// Local quantum uncertainty of the evolved ρ_{α,γ}.
pub fn lqu_closed_form_two_param(f: &TwoParamFamily, p: DephasingPoint) -> f64 {
    let (a, b, g) = (f.alpha(), f.beta(), f.gamma());
    let xi = p.xi();
    1.0 - 2.0 * a
        - 2.0 * b
        - (b * (1.0 + xi) + g * (1.0 - xi)).sqrt() * (b * (1.0 - xi) + g * (1.0 + xi)).sqrt()
}

/// Negativity of the evolved ρ_{α,γ}: max[0, ξ(γ−β) − 2β].
pub fn negativity_closed_form_two_param(f: &TwoParamFamily, p: DephasingPoint) -> f64 {
    (p.xi() * (f.gamma() - f.beta()) - 2.0 * f.beta()).max(0.0)
}

/// Finite sudden-death time Γt = 8·ln((γ−β)/(2β)) of ρ_{α,γ}.
///
/// `None` when no finite death event exists: for β = 0 entanglement decays
/// only asymptotically, and for γ ≤ 3β the state is never entangled.
pub fn esd_time_two_param(f: &TwoParamFamily) -> Option<f64> {
    let (b, g) = (f.beta(), f.gamma());
    if b <= 0.0 || g <= 3.0 * b {
        return None;
    }
    Some(8.0 * ((g - b) / (2.0 * b)).ln())
}

fn dfs_negative_eigenvalues(alpha: f64, xi: f64) -> (f64, f64) {
    let v1 = ((1.0 - alpha) - ((1.0 - alpha).powi(2) + 4.0 * alpha * alpha).sqrt()) / 4.0;
    let v2 = (alpha - (alpha * alpha + 4.0 * xi.powi(18) * (1.0 - alpha).powi(2)).sqrt()) / 4.0;
    (v1, v2)
}

/// Negativity of the evolved ρ_α = α ψ₃ + (1−α) ψ₂ from its two candidate
/// negative partial-transpose eigenvalues v₁ (static) and v₂ (decaying).
pub fn negativity_closed_form_dfs_mix(f: &DfsMixFamily, p: DephasingPoint) -> f64 {
    let (v1, v2) = dfs_negative_eigenvalues(f.alpha(), p.xi());
    2.0 * ((-v1).max(0.0) + (-v2).max(0.0))
}

/// Local quantum uncertainty of the evolved ρ_α: 1 − max[w₁₁(t), w₃₃(t)].
pub fn lqu_closed_form_dfs_mix(f: &DfsMixFamily, p: DephasingPoint) -> f64 {
    let a = f.alpha();
    let xi = p.xi();
    let w11 = a.sqrt()
        * (((1.0 - a) * (1.0 - xi.powi(9))).sqrt() + ((1.0 - a) * (1.0 + xi.powi(9))).sqrt())
        / (2.0 * 2.0f64.sqrt());
    let w33 = (1.0 - a) * (1.0 - xi.powi(18)).sqrt();
    1.0 - w11.max(w33)
}

/// Stationary value LQ_α(∞) = 1 − max[(1−α), √(α(1−α)/2)].
pub fn lqu_dfs_mix_asymptote(f: &DfsMixFamily) -> f64 {
    let a = f.alpha();
    1.0 - (1.0 - a).max((a * (1.0 - a) / 2.0).sqrt())
}

/// The two candidate negative partial-transpose eigenvalues of the evolved
/// ρ_{α,β}; x₁ is time-independent, x₂ carries the ξ¹⁶ decay. They are never
/// negative simultaneously.
pub fn iso_mix_pt_eigenvalues(f: &IsoMixFamily, p: DephasingPoint) -> (f64, f64) {
    let (a, b) = (f.alpha(), f.beta());
    let xi16 = p.xi().powi(16);
    let x1 = (1.0 + 2.0 * a * (1.0 - b) - 4.0 * b) / 6.0;
    let x2 = (1.0 + 2.0 * b - a * (1.0 - b) * (1.0 + 3.0 * xi16)) / 6.0;
    (x1, x2)
}

/// Negativity of the evolved ρ_{α,β} = β ψ₃ + (1−β) ρ̃_α.
pub fn negativity_closed_form_iso_mix(f: &IsoMixFamily, p: DephasingPoint) -> f64 {
    let (x1, x2) = iso_mix_pt_eigenvalues(f, p);
    2.0 * ((-x1).max(0.0) + (-x2).max(0.0))
}
