use super::{CenteredFlux, Field, FluxScheme, Grid, GridError};

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise summation with a fixed split, so the result depends only on
/// the input order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Trapezoid-weighted inner product `Σ w_i x_i y_i`.
pub fn weighted_dot(weights: &[f64], x: &[f64], y: &[f64]) -> f64 {
    let terms: Vec<f64> = weights
        .iter()
        .zip(x)
        .zip(y)
        .map(|((w, a), b)| w * a * b)
        .collect();
    pairwise_sum(&terms)
}

/// Visits every interior face along `axis` as `(left node, right node)`.
fn for_each_face(grid: &Grid, axis: usize, mut visit: impl FnMut(usize, usize)) {
    let stride = grid.stride(axis);
    let n_axis = grid.counts[axis];
    let n_other = if grid.dim == 2 { grid.counts[1 - axis] } else { 1 };
    let other_stride = if grid.dim == 2 { grid.stride(1 - axis) } else { 0 };
    for line in 0..n_other {
        let base = line * other_stride;
        for i in 0..n_axis - 1 {
            let left = base + i * stride;
            visit(left, left + stride);
        }
    }
}

/// Accumulates `div_i += (F_{i+1/2} − F_{i−1/2}) / w_i` along every axis,
/// where `flux(left, right, h)` is the face flux and `w_i` the control-volume
/// length. Boundary faces carry no flux.
fn flux_divergence_into(
    grid: &Grid,
    out: &mut [f64],
    mut flux: impl FnMut(usize, usize, f64) -> f64,
) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for axis in 0..grid.dim {
        let h = grid.spacing(axis);
        let n_axis = grid.counts[axis];
        let stride = grid.stride(axis);
        let interior = 1.0 / h;
        let boundary = 2.0 / h;
        for_each_face(grid, axis, |left, right| {
            let f = flux(left, right, h);
            // position along the axis decides the control-volume length
            let i_left = (left / stride) % n_axis;
            let wl = if i_left == 0 { boundary } else { interior };
            let wr = if i_left + 2 == n_axis { boundary } else { interior };
            out[left] += f * wl;
            out[right] -= f * wr;
        });
    }
}

/// Writes `Δ_h φ` into `out`. Zero-flux boundary faces make boundary rows
/// equal to the mirrored-ghost stencil `2(φ₁ − φ₀)/h²`.
pub fn apply_laplacian(grid: &Grid, phi: &[f64], out: &mut [f64]) {
    flux_divergence_into(grid, out, |l, r, h| (phi[r] - phi[l]) / h);
}

/// Second-order Neumann Laplacian (3-point in 1D, 5-point in 2D).
pub fn laplacian_neumann(phi: &Field) -> Field {
    let mut out = vec![0.0; phi.grid.len()];
    apply_laplacian(&phi.grid, &phi.values, &mut out);
    Field {
        grid: phi.grid,
        values: out,
    }
}

/// Composite trapezoid rule (tensor product in 2D).
///
/// Sums with the dimensionless weights (1 inside, 1/2 on each boundary
/// layer) and scales by `|Ω| / Π(N_a − 1)` at the end, so constants
/// integrate to `c·|Ω|` without accumulated spacing round-off.
pub fn integrate(phi: &Field) -> f64 {
    let grid = &phi.grid;
    let terms: Vec<f64> = phi
        .values
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let m = grid.multi_index(idx);
            let unit: f64 = (0..grid.dim)
                .map(|a| if m[a] == 0 || m[a] + 1 == grid.counts[a] { 0.5 } else { 1.0 })
                .product();
            unit * v
        })
        .collect();
    let cells: f64 = grid.counts().iter().map(|&n| (n - 1) as f64).product();
    pairwise_sum(&terms) * grid.measure() / cells
}

/// `∫ φ^p`; a negative node is reported as loss of positivity.
pub fn integrate_power(phi: &Field, p: f64) -> Result<f64, GridError> {
    phi.check_nonnegative()?;
    Ok(integrate(&phi.map(|x| x.powf(p))))
}

/// `∇·(u ∇s)` in conservative flux-difference form with centered face
/// densities.
pub fn taxis_divergence(u: &Field, s: &Field) -> Result<Field, GridError> {
    taxis_divergence_with(&CenteredFlux, u, s)
}

/// `∇·(u ∇s)` with the face density chosen by `scheme`.
pub fn taxis_divergence_with(
    scheme: &dyn FluxScheme,
    u: &Field,
    s: &Field,
) -> Result<Field, GridError> {
    if !u.same_grid(s) {
        return Err(GridError::Mismatch);
    }
    let (uv, sv) = (&u.values, &s.values);
    let mut out = vec![0.0; u.grid.len()];
    flux_divergence_into(&u.grid, &mut out, |l, r, h| {
        let jump = sv[r] - sv[l];
        scheme.face_density(uv[l], uv[r], jump) * (jump / h)
    });
    Ok(Field {
        grid: u.grid,
        values: out,
    })
}

/// `∫ |∇ u^{k/2}|²` with face-centered differences; boundary faces carry no
/// gradient. Equals `−⟨Δ_h w, w⟩` for `w = u^{k/2}`.
pub fn grad_half_power_norm(u: &Field, k: f64) -> Result<f64, GridError> {
    u.check_nonnegative()?;
    let grid = u.grid;
    let w: Vec<f64> = u.values.iter().map(|x| x.powf(0.5 * k)).collect();
    let mut terms = Vec::with_capacity(grid.dim * grid.len());
    for axis in 0..grid.dim {
        let h = grid.spacing(axis);
        let other = 1 - axis;
        for_each_face(&grid, axis, |l, r| {
            let transverse = if grid.dim == 2 {
                grid.axis_weight(other, grid.multi_index(l)[other])
            } else {
                1.0
            };
            let g = (w[r] - w[l]) / h;
            terms.push(h * transverse * g * g);
        });
    }
    Ok(pairwise_sum(&terms))
}
