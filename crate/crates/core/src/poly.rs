//! Univariate polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Sparse polynomial `Σ c_e x^e`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u64, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: u64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (u64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `1 + x^step + x^{2 step} + ... + x^{count step}`.
    pub fn geometric(step: u64, count: u64) -> Self {
        Self::from_terms((0..=count).map(|i| (i * step, 1)))
    }

    pub fn add_term(&mut self, exp: u64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: u64) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Substitutes `x -> x^factor`.
    pub fn scale_exponents(&self, factor: u64) -> Self {
        assert!(factor > 0);
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * factor, c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&e, c)| c * num_traits::pow(x.clone(), e as usize))
            .sum()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn has_only_even_exponents(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Exact quotient `self / divisor`; fails unless the remainder is zero.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InexactDivision);
        };
        let lead = divisor.coeff(dd);
        let mut rem = self.clone();
        let mut quot = IntPolynomial::zero();
        while let Some(rd) = rem.degree().filter(|&rd| rd >= dd) {
            let (c, r) = rem.coeff(rd).div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let step = IntPolynomial::monomial(rd - dd, c);
            rem += &(&step * divisor).negate();
            quot += &step;
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn negate(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    /// Human-readable form in the variable `var`, ascending, e.g. `1 + 2t^2`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let unit = magnitude.is_one();
            if e == 0 || !unit {
                out.push_str(&magnitude.to_string());
            }
            match e {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{e}")),
            }
        }
        out
    }

    /// JSON value `{"var": .., "terms": [{"exp": .., "coeff": ".."}]}`.
    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::to_value(PolynomialJson { var, poly: self }).expect("polynomial serializes")
    }
}

/// Serialization view pairing a polynomial with its variable name.
pub struct PolynomialJson<'a> {
    pub var: &'a str,
    pub poly: &'a IntPolynomial,
}

impl Serialize for PolynomialJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            exp: u64,
            coeff: String,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            var: &'a str,
            terms: Vec<Term>,
        }
        Repr {
            var: self.var,
            terms: self
                .poly
                .terms()
                .map(|(exp, c)| Term {
                    exp,
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl Add<&IntPolynomial> for IntPolynomial {
    type Output = IntPolynomial;

    fn add(mut self, rhs: &IntPolynomial) -> IntPolynomial {
        self += rhs;
        self
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        self + &rhs
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| acc + p)
    }
}
