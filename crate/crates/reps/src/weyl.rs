use num_rational::Ratio;

use crate::RepError;

/// Dimension of the `C_n` irrep with the given Dynkin labels (coefficients
/// on the fundamental weights), by Weyl's product formula in exact
/// arithmetic.
pub fn weyl_dimension(labels: &[i64]) -> Result<u128, RepError> {
    if labels.iter().any(|&a| a < 0) || labels.is_empty() {
        return Err(RepError::NotDominant(labels.to_vec()));
    }
    let n = labels.len();
    // λ + ρ in the ε basis: ω_k = ε_1 + … + ε_k, ρ = (n, n−1, …, 1).
    let shifted = |lab: &[i64]| -> Vec<i128> {
        (0..n)
            .map(|i| lab[i..].iter().map(|&a| a as i128).sum::<i128>() + (n - i) as i128)
            .collect()
    };
    let top = shifted(labels);
    let rho = shifted(&vec![0; n]);
    let mut ratio = Ratio::from_integer(1i128);
    for i in 0..n {
        // long roots 2ε_i
        ratio *= Ratio::new(top[i], rho[i]);
        for j in i + 1..n {
            ratio *= Ratio::new(top[i] - top[j], rho[i] - rho[j]);
            ratio *= Ratio::new(top[i] + top[j], rho[i] + rho[j]);
        }
    }
    Ok(ratio.to_integer() as u128)
}

/// Dimension of the `u(n)` irrep with non-increasing labels `μ`.
pub fn weyl_dimension_gl(mu: &[i64]) -> Result<u128, RepError> {
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(RepError::NotDominant(mu.to_vec()));
    }
    let mut ratio = Ratio::from_integer(1i128);
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            ratio *= Ratio::new((mu[i] - mu[j]) as i128 + (j - i) as i128, (j - i) as i128);
        }
    }
    Ok(ratio.to_integer() as u128)
}
