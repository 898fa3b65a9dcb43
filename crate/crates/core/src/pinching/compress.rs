use serde::{Deserialize, Serialize};

use super::host::SynthesisHost;
use super::walsh::{check_contraction, choose_walsh_level, smallest_level, walsh_real, WalshPlan};
use crate::dilation::halmos_dilation;
use crate::error::{Error, Result};
use crate::linalg::matrix::{axpy, normalize, project_out};
use crate::linalg::{normal_eig, ComplexMatrix, Frame, Tolerances, C64, FRAME_TOL};

/// Host dimensions consumed by one contraction target in the dilation route.
pub fn fast_budget(dim: usize) -> usize {
    3 * 2 * dim
}

/// Host dimensions consumed by one target in the Walsh route at level `l`.
pub fn faithful_budget(dim: usize, l: usize) -> usize {
    3 * (dim + ((1 << l) - 1) * 2 * dim)
}

/// Frame `E` with `E*AE = diag(lambdas)`, for `|λ_i| < rho` and a host whose
/// numerical range contains the disc of radius `rho`.
pub fn realize_diagonal_compression(a: &ComplexMatrix, lambdas: &[C64], rho: f64) -> Result<Frame> {
    let n = a.require_square()?;
    check_contraction(0.0, rho)?;
    if let Some(l) = lambdas.iter().find(|l| l.norm() >= rho) {
        return Err(Error::ValueOutsideRange {
            re: l.re,
            im: l.im,
            margin: rho - l.norm(),
        });
    }
    if lambdas.is_empty() {
        return Ok(Frame::empty(n));
    }
    if 3 * lambdas.len() > n {
        return Err(Error::HostTooSmall {
            needed: 3 * lambdas.len(),
            available: n,
            target: None,
        });
    }
    let mut host = SynthesisHost::new(a, rho, Tolerances::default())?;
    let g = host.realize_diagonal(lambdas)?;
    Frame::new(g, FRAME_TOL)
}

/// Frame `E` with `E*AE = x` for `‖x‖ < rho`, through the normal dilation of `x`.
pub fn realize_contraction_compression(a: &ComplexMatrix, x: &ComplexMatrix, rho: f64) -> Result<Frame> {
    let n = a.require_square()?;
    let d = x.require_square()?;
    check_contraction(x.op_norm(), rho)?;
    if fast_budget(d) > n {
        return Err(Error::HostTooSmall {
            needed: fast_budget(d),
            available: n,
            target: None,
        });
    }
    let mut host = SynthesisHost::new(a, rho, Tolerances::default())?;
    let v = realize_contraction(&mut host, x)?;
    Frame::new(v, FRAME_TOL)
}

pub(crate) fn realize_contraction(host: &mut SynthesisHost<'_>, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = x.rows();
    let dil = halmos_dilation(x, host.rho())?;
    let eig = normal_eig(&dil.normal, host.tolerances())?;
    let g = host.realize_diagonal(&eig.values)?;
    // N = W diag(μ) W* and x is its top-left block, so V = G (W*)[:, :d]
    let w_top = eig.vectors.adjoint().columns_range(0, d);
    Ok(&g * &w_top)
}

/// Output of the Walsh-route realization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassRealization {
    pub frame: Frame,
    pub plan: WalshPlan,
    /// `‖E* h'‖` for the test vector `h'` actually used.
    pub mass: f64,
    /// The test vector after removing directions consumed earlier, normalized.
    pub test_vector: Vec<C64>,
}

/// Walsh level for the splitting `X = 2^{-l}(Z_0 + Σ_j X_j)`, where
/// `Z_0 = diag(z0, 0, …, 0)` is the compression to `F_0`: the level of
/// [`choose_walsh_level`], raised while `X_j = (2^l X - Z_0)/(2^l - 1)` fails
/// to be a strict contraction. The base level already suffices when `|z0| ≤ ρ`.
pub fn walsh_level_for(x: &ComplexMatrix, z0: C64, rho: f64) -> Result<WalshPlan> {
    let norm_x = x.op_norm();
    let base = choose_walsh_level(norm_x, rho)?;
    let min_size = base.block_count() as f64;
    smallest_level(|size| size >= min_size && split_block(x, z0, size).op_norm() < rho)
        .ok_or(Error::NotStrictContraction { norm: norm_x, rho })
}

fn split_block(x: &ComplexMatrix, z0: C64, size: f64) -> ComplexMatrix {
    let mut xj = x.scale_real(size);
    xj[(0, 0)] -= z0;
    xj.scale_real(1.0 / (size - 1.0))
}

/// Frame `E` with `E*AE = x` and `‖E* h'‖ ≥ 2^{-l/2}`, where `h'` is `h`
/// with previously consumed directions removed.
pub fn realize_with_mass(
    a: &ComplexMatrix,
    x: &ComplexMatrix,
    h: &[C64],
    rho: f64,
    gamma: f64,
) -> Result<MassRealization> {
    a.require_square()?;
    let norm_a = a.op_norm();
    if norm_a > gamma * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!("host norm {norm_a} exceeds gamma = {gamma}")));
    }
    let mut host = SynthesisHost::new(a, rho, Tolerances::default())?;
    realize_with_mass_in(&mut host, x, h)
}

pub(crate) fn realize_with_mass_in(
    host: &mut SynthesisHost<'_>,
    x: &ComplexMatrix,
    h: &[C64],
) -> Result<MassRealization> {
    let a = host.host();
    let n = a.rows();
    let d = x.require_square()?;
    if h.len() != n {
        return Err(Error::LengthMismatch { left: n, right: h.len() });
    }
    // cheapest level first; the exact level is fixed once ⟨h', Ah'⟩ is known
    let base = choose_walsh_level(x.op_norm(), host.rho())?;
    if faithful_budget(d, base.l) > host.available() {
        return Err(Error::HostTooSmall {
            needed: faithful_budget(d, base.l),
            available: host.available(),
            target: None,
        });
    }

    let mut h0 = h.to_vec();
    host.project_onto_available(&mut h0);
    if normalize(&mut h0) < 1e-8 {
        return Err(Error::InvalidArgument("test vector lies in the consumed subspace".into()));
    }
    let z0 = a.quadratic_form(&h0);
    let plan = walsh_level_for(x, z0, host.rho())?;
    let needed = faithful_budget(d, plan.l);
    if needed > host.available() {
        return Err(Error::HostTooSmall {
            needed,
            available: host.available(),
            target: None,
        });
    }
    host.consume(&h0);

    // F_0 = {h', zero-value vectors}, so A_{F_0} = diag(⟨h', Ah'⟩, 0, …, 0)
    let zeros = host.realize_diagonal(&vec![C64::new(0.0, 0.0); d - 1])?;
    let mut f0_cols = vec![h0.clone()];
    f0_cols.extend(zeros.columns());
    let f0 = ComplexMatrix::from_columns(n, &f0_cols);

    let blocks = plan.block_count();
    let xj = split_block(x, z0, blocks as f64);
    let mut parts = vec![f0];
    for _ in 1..blocks {
        parts.push(realize_contraction(host, &xj)?);
    }

    // E_k = Σ_i V_l[k, i] G_i; the first column of G_0 is h', so E_k* h' = V_l[k, 0] e_1
    let v = walsh_real(plan.l);
    let k = (0..blocks)
        .max_by(|&p, &q| v.get(p, 0).abs().total_cmp(&v.get(q, 0).abs()).then(q.cmp(&p)))
        .unwrap_or(0);
    let mut e = ComplexMatrix::zeros(n, d);
    for (i, g) in parts.iter().enumerate() {
        let coef = C64::new(v.get(k, i), 0.0);
        for c in 0..d {
            let mut col = e.column(c);
            axpy(coef, &g.column(c), &mut col);
            e.set_column(c, &col);
        }
    }
    let frame = Frame::new(e, FRAME_TOL)?;
    let mass = frame
        .coefficients(&h0)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(MassRealization {
        frame,
        plan,
        mass,
        test_vector: h0,
    })
}

impl SynthesisHost<'_> {
    pub(crate) fn project_onto_available(&self, v: &mut [C64]) {
        project_out(v, self.consumed());
    }
}
