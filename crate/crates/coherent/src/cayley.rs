use spq_algebra::{Generator, Realization};
use spq_numerics::{mat_exp, CMat, CVec, C64};

use crate::{CoherentError, SymCoord};

/// `A = ¼ Σ_{a,b} z̄_ab ρ(e_ab)` over ordered pairs.
fn raising(z: &SymCoord, rep: &(impl Realization<f64> + ?Sized)) -> CMat {
    let n = z.n();
    let d = rep.dim();
    let mut a = CMat::zeros(d, d);
    for i in 0..n {
        for j in i..n {
            let mult = if i == j { 0.25 } else { 0.5 };
            let c = z.matrix()[(i, j)].conj() * mult;
            if c != C64::from(0.0) {
                a += rep.generator(Generator::e(i, j)) * c;
            }
        }
    }
    a
}

/// `(Id + A)(Id − A)⁻¹` with `A = ¼ Σ z̄_ab ρ(e_ab)`, the Cayley counterpart
/// of `exp(2A)`.
pub fn cayley_matrix(z: &SymCoord, rep: &(impl Realization<f64> + ?Sized)) -> Result<CMat, CoherentError> {
    let a = raising(z, rep);
    let id = CMat::identity(a.nrows(), a.ncols());
    let resolvent = (&id - &a).lu();
    // (Id + A) and (Id − A)⁻¹ commute.
    let solved = resolvent.solve(&(&id + &a)).ok_or(CoherentError::SingularResolvent)?;
    if solved.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(CoherentError::SingularResolvent);
    }
    Ok(solved)
}

/// Cayley coherent state built on `v`.
pub fn cayley_cs(z: &SymCoord, rep: &(impl Realization<f64> + ?Sized), v: &CVec) -> Result<CVec, CoherentError> {
    Ok(cayley_matrix(z, rep)? * v)
}

/// Exponential coherent state `exp(½ Σ z̄_ab ρ(e_ab)) v`.
///
/// The raising block is nilpotent in any finite realization, so the series
/// applied to `v` terminates; the dense exponential is used only if it has
/// not after `dim` terms.
pub fn exp_cs(z: &SymCoord, rep: &(impl Realization<f64> + ?Sized), v: &CVec) -> Result<CVec, CoherentError> {
    let a = raising(z, rep) * C64::from(2.0);
    let mut sum = v.clone();
    let mut term = v.clone();
    for k in 1..=a.nrows() {
        term = &a * term / C64::from(k as f64);
        let size = term.norm();
        sum += &term;
        if size == 0.0 || size < f64::EPSILON * 1e-3 * sum.norm() {
            return Ok(sum);
        }
    }
    Ok(mat_exp(&a)? * v)
}
