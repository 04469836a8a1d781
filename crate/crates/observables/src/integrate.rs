use spq_numerics::{frobenius, CMat, C64};

use crate::ObservableError;

/// Adaptive RK4 with step doubling and Richardson extrapolation. Returns the
/// state at every grid time.
pub(crate) fn integrate<F>(f: F, y0: &CMat, grid: &[f64], tol: f64) -> Result<Vec<CMat>, ObservableError>
where
    F: Fn(f64, &CMat) -> CMat,
{
    check_grid(grid)?;
    let mut out = vec![y0.clone()];
    let mut y = y0.clone();
    let span = grid[grid.len() - 1] - grid[0];
    let mut h = (grid[1] - grid[0]) / 4.0;
    for w in grid.windows(2) {
        let (mut t, end) = (w[0], w[1]);
        while t < end {
            h = h.min(end - t);
            let one = rk4(&f, t, h, &y);
            let half = rk4(&f, t, h / 2.0, &y);
            let two = rk4(&f, t + h / 2.0, h / 2.0, &half);
            let err = frobenius(&(&two - &one)) / 15.0;
            let scale = frobenius(&y).max(1.0);
            if err > tol * scale && h > 1e-9 * span {
                h /= 2.0;
                continue;
            }
            if err > 1e-6 * scale {
                return Err(ObservableError::StepRejected { t, error: err });
            }
            y = &two + (&two - &one) / C64::from(15.0);
            t = if end - t - h < 1e-14 * span.max(1.0) { end } else { t + h };
            if err < tol * scale / 64.0 {
                h *= 2.0;
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

fn rk4<F: Fn(f64, &CMat) -> CMat>(f: &F, t: f64, h: f64, y: &CMat) -> CMat {
    let hc = C64::from(h);
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, &(y + &k1 * (hc / 2.0)));
    let k3 = f(t + h / 2.0, &(y + &k2 * (hc / 2.0)));
    let k4 = f(t + h, &(y + &k3 * hc));
    y + (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * (hc / 6.0)
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<(), ObservableError> {
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(ObservableError::BadGrid);
    }
    Ok(())
}
