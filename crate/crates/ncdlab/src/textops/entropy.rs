//! Shannon entropy of a discrete distribution, in bits.

use super::{Result, TextError};

/// −Σ p·log2(p). Zero-probability terms contribute nothing. The
/// probabilities must be non-negative and sum to 1 within 1e-9.
pub fn entropy(probs: &[f64]) -> Result<f64> {
    let sum: f64 = probs.iter().sum();
    if probs.iter().any(|&p| p < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(TextError::BadDistribution(sum));
    }
    Ok(probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fair_coin_is_one_bit() {
        assert!((entropy(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uniform_32_is_five_bits() {
        let probs = vec![1.0 / 32.0; 32];
        assert!((entropy(&probs).unwrap() - 5.0).abs() < 1e-9);
    }

    #[test]
    fn certain_event_is_zero_bits() {
        assert_eq!(entropy(&[1.0]).unwrap(), 0.0);
    }

    #[test]
    fn zero_terms_are_skipped() {
        assert!((entropy(&[0.5, 0.5, 0.0]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_distributions_rejected() {
        assert!(entropy(&[0.4, 0.4]).is_err());
        assert!(entropy(&[1.5, -0.5]).is_err());
    }
}
