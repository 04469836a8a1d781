use crate::linalg::{ensure_finite, ensure_square, norm_1, CMatrix};
use crate::{NumericsError, Real};

/// Inputs with 1-norm above this are rejected; `e^700` is near the top of the
/// `f64` range.
pub const EXP_NORM_LIMIT: f64 = 700.0;

/// Matrix exponential by scaling and squaring around a degree-13 Padé core.
pub fn mat_exp<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>, NumericsError> {
    ensure_square(a)?;
    ensure_finite(a)?;
    let norm: f64 = nalgebra::try_convert(norm_1(a)).unwrap_or(f64::INFINITY);
    let limit = EXP_NORM_LIMIT.min(T::max_value().map_or(EXP_NORM_LIMIT, |m| {
        nalgebra::try_convert::<T, f64>(m).unwrap_or(f64::MAX).ln()
    }));
    if norm > limit {
        return Err(NumericsError::Overflow { norm, limit });
    }
    Ok(a.clone().exp())
}
