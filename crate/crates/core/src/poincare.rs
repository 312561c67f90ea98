//! Poincaré polynomials by Morse theory on the one-parameter-subgroup fixed
//! locus, Euler characteristics, and their generating function.
//!
//! Each fixed component `((k_1, Y_1), ..., (k_r, Y_r))` is a product of
//! symmetric powers of the exceptional curve and contributes
//!
//! ```text
//! t^{2 index} Π_α Π_i (1 + t^2 + ... + t^{2 m_i(Y_α)})
//! ```
//!
//! where `m_i(Y)` counts columns of length `i` and the index is
//! `Σ_α (|Y_α| - l(Y_α)) + Σ_{α<β} (l'_{αβ} + |Y_α| + |Y_β| - n'_{αβ})`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::fixed_locus::{enumerate_components, ChernData, FixedComponent, SurfaceParams};
use crate::partition::Partition;
use crate::poly::IntPolynomial;
use crate::rational::{self, int, Rational};
use crate::series::BiSeries;

fn line_bundle_count(p: i64, n: Rational) -> Rational {
    let whole = int(rational::floor(n));
    let fr = rational::frac(n);
    Rational::new(1, 2) * whole * (int(p) * whole + int(2 - p)) + int(p) * whole * fr
}

/// Number of negative weights contributed by `L_{α,β}` and `L_{β,α}` for
/// `α < β`, as a function of `n = k_α - k_β`:
/// `½[n](p[n] + 2 - p) + p[n]{n}` if `n >= 0`, otherwise the same in `-n`
/// minus one when `p{-n} = 0`.
pub fn l_prime(p: i64, k_alpha: Rational, k_beta: Rational) -> i64 {
    let n = k_alpha - k_beta;
    let value = if n >= int(0) {
        line_bundle_count(p, n)
    } else {
        let m = -n;
        let delta = if rational::frac(m) == int(0) { 1 } else { 0 };
        line_bundle_count(p, m) - int(delta)
    };
    assert!(value.is_integer() && value >= int(0), "l' = {value} for p={p}, n={n}");
    value.to_integer()
}

/// Number of cells in the pair `(Y_α, Y_β)`, `α < β`, whose two instanton
/// weights are both non-negative.
///
/// For `k_α - k_β >= 0` these are the columns of `Y_α` longer than
/// `k_α - k_β`. Otherwise they are the columns of `Y_β` longer than
/// `⌈k_β - k_α⌉ - 1`, which is `k_β - k_α - 1` for integral differences.
pub fn n_prime(y_alpha: &Partition, y_beta: &Partition, k_alpha: Rational, k_beta: Rational) -> usize {
    let n = k_alpha - k_beta;
    if n >= int(0) {
        y_alpha.columns_longer_than(n)
    } else {
        y_beta.columns_longer_than(int(rational::ceil(-n) - 1))
    }
}

/// `(diagonal, off-diagonal)` parts of the Morse index.
fn index_parts(params: &SurfaceParams, comp: &FixedComponent) -> (u64, u64) {
    let p = params.p();
    let diagonal: usize = comp.tableaux.iter().map(|y| y.size() - y.num_columns()).sum();
    let mut off = 0i64;
    for a in 0..comp.rank() {
        for b in a + 1..comp.rank() {
            let (ya, yb) = (&comp.tableaux[a], &comp.tableaux[b]);
            let (ka, kb) = (comp.kvec.get(a), comp.kvec.get(b));
            off += l_prime(p, ka, kb) + (ya.size() + yb.size()) as i64 - n_prime(ya, yb, ka, kb) as i64;
        }
    }
    (diagonal as u64, off as u64)
}

pub fn morse_index_closed_form(params: &SurfaceParams, comp: &FixedComponent) -> u64 {
    let (diag, off) = index_parts(params, comp);
    diag + off
}

/// Poincaré polynomial of the symmetric-product component itself.
pub fn component_poincare(comp: &FixedComponent) -> IntPolynomial {
    let mut acc = IntPolynomial::one();
    for y in &comp.tableaux {
        for &m in y.column_multiplicities().values() {
            acc = &acc * &IntPolynomial::geometric(2, m as u64);
        }
    }
    acc
}

pub fn component_term(params: &SurfaceParams, comp: &FixedComponent) -> IntPolynomial {
    component_poincare(comp).shift(2 * morse_index_closed_form(params, comp))
}

/// Sum of [`component_term`] over the fixed components; the zero polynomial
/// when there are none. Runs on the current rayon pool.
pub fn poincare_polynomial(params: &SurfaceParams, chern: &ChernData) -> Result<IntPolynomial> {
    let comps = enumerate_components(params, chern)?;
    Ok(comps
        .par_iter()
        .map(|c| component_term(params, c))
        .reduce(IntPolynomial::zero, |a, b| a + b))
}

/// `P_{-1}`.
pub fn euler_characteristic(params: &SurfaceParams, chern: &ChernData) -> Result<BigInt> {
    Ok(poincare_polynomial(params, chern)?.eval(&BigInt::from(-1)))
}

/// `Σ_{k,n} P_{-1}(r, k, n) q^{n + p k^2 / 2r} z^k` up to `q`-order `max_order`,
/// on the lattice `dq = 2p`, `dz = p`.
pub fn euler_generating_function(params: &SurfaceParams, r: usize, max_order: Rational) -> Result<BiSeries> {
    let p = params.p();
    let (dq, dz) = (2 * p, p);
    let mut out = BiSeries::new(dq, dz, max_order)?;
    if r == 0 {
        return Err(crate::error::Error::InvalidParams("rank must be >= 1".into()));
    }
    // p k^2 / 2r <= order with k = M / p  <=>  M^2 <= 2 r p order
    let m_bound = rational::isqrt(rational::floor(max_order * int(2 * r as i64 * p)) as i128) as i64;
    let step = if params.is_stacky() { 1 } else { p };
    let first = -(m_bound / step) * step;
    for zn in (first..=m_bound).step_by(step as usize) {
        let k = Rational::new(zn, dz);
        let offset = int(p) * k * k / int(2 * r as i64);
        for qn in 0..=out.max_q_numerator() {
            let n = Rational::new(qn, dq) - offset;
            if n < int(0) {
                continue;
            }
            let chi = euler_characteristic(params, &ChernData::new(r, k, n))?;
            out.add_raw(qn, zn, chi);
        }
    }
    Ok(out)
}
