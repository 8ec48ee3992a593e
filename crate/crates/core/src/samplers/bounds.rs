//! Closed-form distance bounds.

use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::overlap::Distance;

/// Bounds on the k-centre value of binary-or-larger fixed-length languages.
/// A field is `None` when its logarithm argument is at most one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoreticalBounds<F> {
    pub q: usize,
    pub length: usize,
    pub k: usize,
    /// `ℓ² / (L(L + 1))` with `L = log_q(ℓ²k)`.
    pub lower: Option<F>,
    /// `2ℓ² / log_q²(k)`.
    pub upper_prefix: Option<F>,
    /// `2ℓ² / log_q²(kℓ)`.
    pub upper_debruijn: Option<F>,
    pub ratio_prefix: Option<F>,
    /// `upper_debruijn` over `ℓ² / log_q²(kℓ²)`; never above `factor_claim`.
    pub ratio_debruijn: Option<F>,
    pub factor_claim: F,
}

fn log_base<F: Float>(x: F, base: F) -> Option<F> {
    (x > F::one()).then(|| x.ln() / base.ln())
}

pub fn theoretical_bounds<F: Float>(q: usize, length: usize, k: usize) -> Result<TheoreticalBounds<F>> {
    if q < 2 || length == 0 || k == 0 {
        return Err(Error::invalid("bounds need q ≥ 2, ℓ ≥ 1 and k ≥ 1"));
    }
    let cast = |v: usize| F::from(v).ok_or(Error::Overflow("float conversion"));
    let (qf, lf, kf) = (cast(q)?, cast(length)?, cast(k)?);
    let two = F::one() + F::one();
    let l2 = lf * lf;
    let lower = log_base(l2 * kf, qf).map(|x| l2 / (x * (x + F::one())));
    let upper_prefix = log_base(kf, qf).map(|x| two * l2 / (x * x));
    let upper_debruijn = log_base(kf * lf, qf).map(|x| two * l2 / (x * x));
    let ratio_prefix = upper_prefix.zip(lower).map(|(u, l)| u / l);
    let proof_lower = log_base(kf * l2, qf).map(|x| l2 / (x * x));
    let ratio_debruijn = upper_debruijn.zip(proof_lower).map(|(u, l)| u / l);
    Ok(TheoreticalBounds {
        q,
        length,
        k,
        lower,
        upper_prefix,
        upper_debruijn,
        ratio_prefix,
        ratio_debruijn,
        factor_claim: cast(8)?,
    })
}

/// Distance bounds implied by a shared subword of length `lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaBound {
    /// `2ℓ² / (λ(λ + 1))`, the proven bound.
    pub proven: Distance,
    /// `ℓ² / (λ(λ + 1))`, the sharper form quoted before the proof.
    pub sharp: Distance,
}

pub fn distance_bound_for_lambda(length: usize, lambda: usize) -> LambdaBound {
    if lambda == 0 {
        return LambdaBound {
            proven: Distance::Infinite,
            sharp: Distance::Infinite,
        };
    }
    let l2 = (length * length) as u64;
    let den = (lambda * (lambda + 1)) as u64;
    LambdaBound {
        proven: Distance::finite(2 * l2, den),
        sharp: Distance::finite(l2, den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_21_k_4() {
        let b = theoretical_bounds::<f64>(2, 21, 4).unwrap();
        let expected = 2.0 * 441.0 / 84f64.log2().powi(2);
        assert!((b.upper_debruijn.unwrap() - expected).abs() < 1e-9);
        assert!(b.ratio_debruijn.unwrap() <= 8.0);
    }

    #[test]
    fn not_applicable_cases() {
        let b = theoretical_bounds::<f64>(2, 1, 1).unwrap();
        assert!(b.lower.is_none() && b.upper_prefix.is_none() && b.upper_debruijn.is_none());
        assert!(theoretical_bounds::<f64>(1, 4, 2).is_err());
        let b = theoretical_bounds::<f32>(2, 4, 1).unwrap();
        assert!(b.upper_prefix.is_none() && b.lower.is_some());
    }

    #[test]
    fn debruijn_ratio_grid() {
        for q in 2..6 {
            for l in 2..80 {
                for k in 2..200 {
                    let r = theoretical_bounds::<f64>(q, l, k).unwrap().ratio_debruijn.unwrap();
                    assert!(r <= 8.0 + 1e-12, "q={q} l={l} k={k} ratio={r}");
                }
            }
        }
    }

    #[test]
    fn lambda_bound() {
        let b = distance_bound_for_lambda(4, 2);
        assert_eq!(b.proven, Distance::finite(32, 6));
        assert_eq!(b.sharp, Distance::finite(16, 6));
        assert!(distance_bound_for_lambda(4, 0).proven.is_infinite());
    }
}
