use serde::Serialize;
use spq_numerics::{det, disc_quadrature, inverse, mat_exp, mat_log_principal, CMat, C64};
use spq_reps::InducedRepSpec;

use crate::{CoherentError, PolyWavefunction, SymCoord, VarIndex};

fn check_module(z: &SymCoord, spec: &InducedRepSpec) -> Result<(), CoherentError> {
    if z.n() != spec.n() {
        return Err(CoherentError::Shape { n: spec.n() });
    }
    Ok(())
}

/// `Σ_ab B_ab 𝕌_ba` for an `n × n` matrix `B`.
fn contract(b: &CMat, spec: &InducedRepSpec) -> CMat {
    let n = spec.n();
    let d = spec.module().dim();
    let mut x = CMat::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            if b[(i, j)] != C64::from(0.0) {
                x += spec.u_matrix(j, i) * b[(i, j)];
            }
        }
    }
    x
}

/// `𝕂⁻¹(Z′, Z*) = exp(Σ_ab B_ab 𝕌_ba)` with `B = −log(Id − Z′Z*)`.
/// `zstar` is the already conjugated coordinate.
pub fn overlap_kernel(zp: &SymCoord, zstar: &SymCoord, spec: &InducedRepSpec) -> Result<CMat, CoherentError> {
    check_module(zp, spec)?;
    zp.check_contraction(zstar)?;
    let n = spec.n();
    let m = CMat::identity(n, n) - zp.matrix() * zstar.matrix();
    let b = -mat_log_principal(&m)?;
    Ok(mat_exp(&contract(&b, spec))?)
}

/// Taylor polynomial of `𝕂⁻¹(·, Z*)` in the holomorphic variables up to
/// total degree `degree`.
pub fn kernel_series(zstar: &SymCoord, spec: &InducedRepSpec, degree: usize) -> Result<PolyWavefunction, CoherentError> {
    check_module(zstar, spec)?;
    let n = spec.n();
    let d = spec.module().dim();
    let scalar = |c: C64| CMat::from_element(1, 1, c);
    // W = Z′ Z*, entries linear in the variables.
    let w: Vec<PolyWavefunction> = (0..n * n)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut p = PolyWavefunction::zero(n, 1, 1);
            for k in 0..n {
                let c = zstar.matrix()[(k, j)];
                if c != C64::from(0.0) {
                    p = p.add(&PolyWavefunction::variable(n, i, k, scalar(c)));
                }
            }
            p
        })
        .collect();
    // B = Σ_k W^k / k
    let mut power = w.clone();
    let mut b: Vec<PolyWavefunction> = w.clone();
    for k in 2..=degree {
        let mut next = vec![PolyWavefunction::zero(n, 1, 1); n * n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let t = power[i * n + l].mul_truncated(&w[l * n + j], degree);
                    next[i * n + j] = next[i * n + j].add(&t);
                }
            }
        }
        power = next;
        for (bij, pij) in b.iter_mut().zip(&power) {
            *bij = bij.add(&pij.scale(C64::from(1.0 / k as f64)));
        }
    }
    let mut x = PolyWavefunction::zero(n, d, d);
    for i in 0..n {
        for j in 0..n {
            let u = spec.u_matrix(j, i);
            for (e, c) in b[i * n + j].terms() {
                x.add_term(e.clone(), &u * c[(0, 0)]);
            }
        }
    }
    let mut out = PolyWavefunction::constant(n, CMat::identity(d, d));
    let mut term = out.clone();
    for j in 1..=degree {
        term = term.mul_truncated(&x, degree).scale(C64::from(1.0 / j as f64));
        out = out.add(&term);
    }
    Ok(out)
}

/// Density `𝒩 𝕂(Z, Z*) / det(Id − ZZ*)^{n+1}` of the resolution of identity.
pub fn resolution_measure(z: &SymCoord, spec: &InducedRepSpec, normalization: f64) -> Result<CMat, CoherentError> {
    let zbar = z.conj();
    let kinv = overlap_kernel(z, &zbar, spec)?;
    let k = inverse(&kinv)?;
    let n = spec.n();
    let dt = det(&(CMat::identity(n, n) - z.matrix() * zbar.matrix()))?.re;
    Ok(k * C64::from(normalization / dt.powi(n as i32 + 1)))
}

fn rank_one(spec: &InducedRepSpec, what: &'static str) -> Result<(), CoherentError> {
    if spec.n() != 1 {
        return Err(CoherentError::RankOneOnly(what));
    }
    Ok(())
}

fn point(z: C64) -> SymCoord {
    SymCoord::from_vars(1, &[z])
}

/// `𝒩` from the degree-0 identity check `∫ ℙ(z) d²z = Id` on the unit disc
/// (rank 1), with a disc rule of the given order.
pub fn resolution_normalization(spec: &InducedRepSpec, order: usize) -> Result<f64, CoherentError> {
    rank_one(spec, "resolution normalization")?;
    let rule = disc_quadrature::<f64>(order)?;
    let d = spec.module().dim();
    let mut acc = CMat::zeros(d, d);
    for (p, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += resolution_measure(&point(*p), spec, 1.0)? * C64::from(*w);
    }
    Ok(d as f64 / acc.trace().re)
}

/// Matrix `R_jk = c_j ∫ z̄^j z^k ℙ(z) d²z` for `j, k ≤ max_degree`, where
/// `c_j` are the Taylor coefficients of the kernel (by a Cauchy integral
/// of [`overlap_kernel`]). The resolution of identity holds iff `R = Id`.
/// Rank 1, scalar module.
pub fn identity_reconstruction(spec: &InducedRepSpec, max_degree: usize, order: usize) -> Result<CMat, CoherentError> {
    rank_one(spec, "identity reconstruction")?;
    let norm = resolution_normalization(spec, order)?;
    let nodes = 64;
    let radius = 0.5;
    let one = point(C64::from(1.0));
    let mut coeff = vec![C64::from(0.0); max_degree + 1];
    for s in 0..nodes {
        let t = C64::from_polar(radius, 2.0 * std::f64::consts::PI * s as f64 / nodes as f64);
        let k = overlap_kernel(&point(t), &one, spec)?[(0, 0)];
        for (j, c) in coeff.iter_mut().enumerate() {
            *c += k * t.powi(-(j as i32)) / nodes as f64;
        }
    }
    let rule = disc_quadrature::<f64>(order)?;
    let mut r = CMat::zeros(max_degree + 1, max_degree + 1);
    for (p, w) in rule.nodes.iter().zip(&rule.weights) {
        let dens = resolution_measure(&point(*p), spec, norm)?[(0, 0)] * *w;
        for j in 0..=max_degree {
            let zj = p.conj().powu(j as u32);
            for k in 0..=max_degree {
                r[(j, k)] += coeff[j] * zj * p.powu(k as u32) * dens;
            }
        }
    }
    Ok(r)
}

/// One matrix entry of a kernel evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelRow {
    pub sample: usize,
    pub zp: String,
    pub zstar: String,
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

fn coords(z: &SymCoord) -> String {
    let idx = VarIndex::new(z.n());
    z.vars()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let (a, b) = idx.pair(k);
            format!("z{}{}={:.12e}{:+.12e}i", a + 1, b + 1, c.re, c.im)
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Flat table of kernel values at sample pairs `(Z′, Z*)`.
pub fn kernel_table(points: &[(SymCoord, SymCoord)], spec: &InducedRepSpec) -> Result<Vec<KernelRow>, CoherentError> {
    let mut rows = Vec::new();
    for (sample, (zp, zs)) in points.iter().enumerate() {
        let k = overlap_kernel(zp, zs, spec)?;
        for r in 0..k.nrows() {
            for c in 0..k.ncols() {
                rows.push(KernelRow {
                    sample,
                    zp: coords(zp),
                    zstar: coords(zs),
                    row: r,
                    col: c,
                    re: k[(r, c)].re,
                    im: k[(r, c)].im,
                });
            }
        }
    }
    Ok(rows)
}
