//! Closed-form generating functions the engine is checked against.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fixed_locus::SurfaceParams;
use crate::poly::IntPolynomial;
use crate::rational::{self, int, Rational};
use crate::series::BiSeries;

/// `θ_3(v/p | τ/p) = Σ_m q^{m^2/2p} z^{m/p}` on the lattice `(1/2p, 1/p)`.
/// In ordinary mode only `m ≡ 0 (mod p)` is kept, so `z`-exponents are integral.
pub fn theta3(params: &SurfaceParams, max_order: Rational) -> Result<BiSeries> {
    let p = params.p();
    let mut s = BiSeries::new(2 * p, p, max_order)?;
    let bound = rational::isqrt(s.max_q_numerator() as i128) as i64;
    for m in -bound..=bound {
        if !params.is_stacky() && m % p != 0 {
            continue;
        }
        s.add_raw(m * m, m, BigInt::one());
    }
    Ok(s)
}

type EtaCache = HashMap<(i64, i64, Rational), BiSeries>;

/// `η̂(τ)^{-2} = Π_{l>=1} (1 - q^l)^{-2}`, memoized per lattice and order.
pub fn inverse_eta_squared(dq: i64, dz: i64, max_order: Rational) -> Result<BiSeries> {
    static CACHE: OnceLock<Mutex<EtaCache>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(dq, dz, max_order)) {
        return Ok(s.clone());
    }
    let mut eta = BiSeries::one(dq, dz, max_order)?;
    for l in 1..=rational::floor(max_order) {
        let mut factor = BiSeries::one(dq, dz, max_order)?;
        factor.add_raw(l * dq, 0, BigInt::from(-1));
        eta = eta.mul(&factor)?;
    }
    let inv = eta.mul(&eta)?.inverse()?;
    cache.lock().unwrap().insert((dq, dz, max_order), inv.clone());
    Ok(inv)
}

/// `(θ_3(v/p | τ/p) / η̂(τ)^2)^r` truncated at `q`-order `max_order`.
pub fn theta_eta_series(params: &SurfaceParams, r: usize, max_order: Rational) -> Result<BiSeries> {
    if r == 0 {
        return Err(Error::InvalidParams("rank must be >= 1".into()));
    }
    let theta = theta3(params, max_order)?;
    let base = theta.mul(&inverse_eta_squared(theta.dq(), theta.dz(), max_order)?)?;
    base.pow(r as u32)
}

/// Coefficients of `q^0 .. q^max_n` in
/// `Π_{j>=1} 1 / ((1 - t^{2j-2} q^j)(1 - t^{2j} q^j))`.
pub fn hilbert_series_oracle(max_n: usize) -> Vec<IntPolynomial> {
    let mut coeffs = vec![IntPolynomial::zero(); max_n + 1];
    coeffs[0] = IntPolynomial::one();
    for j in 1..=max_n {
        for t_exp in [2 * j as u64 - 2, 2 * j as u64] {
            // multiply by 1 / (1 - t^{t_exp} q^j) in place
            for d in j..=max_n {
                let carried = coeffs[d - j].shift(t_exp);
                coeffs[d] += &carried;
            }
        }
    }
    coeffs
}

/// Gaussian binomial `(1 - q^{r-k+1}) ... (1 - q^r) / ((1 - q) ... (1 - q^k))`
/// by exact division.
pub fn q_binomial(r: i64, k: i64) -> Result<IntPolynomial> {
    if k < 0 || k > r {
        return Err(Error::QBinomialRange { r, k });
    }
    let one_minus = |e: i64| IntPolynomial::from_terms([(0u64, 1i64), (e as u64, -1)]);
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for i in 1..=k {
        num = &num * &one_minus(r - k + i);
        den = &den * &one_minus(i);
    }
    num.div_exact(&den)
}

/// Convenience: the series coefficient at `q^{n}` of the ordinary partition
/// generating function `Π (1 - q^j)^{-1}`, via series inversion.
pub fn partition_counts(max_n: i64) -> Result<Vec<BigInt>> {
    let order = int(max_n);
    let mut eta = BiSeries::one(1, 1, order)?;
    for l in 1..=max_n {
        let mut factor = BiSeries::one(1, 1, order)?;
        factor.add_raw(l, 0, BigInt::from(-1));
        eta = eta.mul(&factor)?;
    }
    let inv = eta.inverse()?;
    Ok((0..=max_n).map(|n| inv.coefficient(int(n), int(0))).collect())
}
