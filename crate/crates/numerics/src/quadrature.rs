use num_complex::Complex;

use crate::{real, NumericsError, Real};

/// Weighted nodes in the open unit disc.
#[derive(Debug, Clone)]
pub struct Quadrature1C<T> {
    pub nodes: Vec<Complex<T>>,
    pub weights: Vec<T>,
}

impl<T: Real> Quadrature1C<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F>(&self, mut f: F) -> Complex<T>
    where
        F: FnMut(Complex<T>) -> Complex<T>,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(Complex::new(T::zero(), T::zero()), |s, (z, w)| s + f(*z) * *w)
    }

    pub fn total_weight(&self) -> T {
        self.weights.iter().fold(T::zero(), |s, w| s + *w)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(m: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); m];
    let mut weights = vec![T::zero(); m];
    let pi = T::pi();
    let tol = T::default_epsilon() * real(4.0);
    for i in 0..m.div_ceil(2) {
        let mut x = (pi * real::<T>(i as f64 + 0.75) / real::<T>(m as f64 + 0.5)).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= tol {
                let (_, d) = legendre(m, x);
                dp = d;
                break;
            }
        }
        let w = real::<T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre<T: Real>(m: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if m == 0 {
        return (p0, T::zero());
    }
    for k in 2..=m {
        let kf: T = real(k as f64);
        let p2 = ((real::<T>(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let mf: T = real(m as f64);
    (p1, mf * (x * p1 - p0) / (x * x - T::one()))
}

/// Product rule on the unit disc: Gauss–Legendre in the radius with
/// `order + 1` points, `2·order + 1` equispaced angles. Exact for
/// polynomials in `z, z̄` of total degree ≤ `2·order`.
pub fn disc_quadrature<T: Real>(order: usize) -> Result<Quadrature1C<T>, NumericsError> {
    if order < 4 {
        return Err(NumericsError::OrderTooSmall(order));
    }
    let (r_nodes, r_weights) = gauss_legendre::<T>(order + 1);
    let n_ang = 2 * order + 1;
    let two_pi = T::two_pi();
    let dtheta = two_pi / real(n_ang as f64);
    let mut nodes = Vec::with_capacity(r_nodes.len() * n_ang);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (x, w) in r_nodes.iter().zip(&r_weights) {
        let r = (*x + T::one()) * real(0.5);
        let wr = *w * real::<T>(0.5) * r * dtheta;
        for k in 0..n_ang {
            let th = dtheta * real(k as f64);
            nodes.push(Complex::new(r * th.cos(), r * th.sin()));
            weights.push(wr);
        }
    }
    Ok(Quadrature1C { nodes, weights })
}
