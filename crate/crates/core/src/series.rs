//! Truncated formal series in `q` and `z` with rational exponents on a fixed
//! lattice `(1/dq) Z × (1/dz) Z`.
//!
//! Exponents are stored as integer numerators over the lattice denominators.
//! The series records the `q`-order up to which it is exact; every term with
//! `q`-exponent `<= order` is meaningful and nothing above it is stored.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    dq: i64,
    dz: i64,
    order: Rational,
    max_q: i64,
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiSeries {
    pub fn new(dq: i64, dz: i64, order: Rational) -> Result<Self> {
        if dq < 1 || dz < 1 {
            return Err(Error::Series(format!(
                "lattice denominators must be positive, got {dq}, {dz}"
            )));
        }
        if order < Rational::from_integer(0) {
            return Err(Error::Series(format!("truncation order {order} is negative")));
        }
        Ok(BiSeries {
            dq,
            dz,
            order,
            max_q: rational::floor(order * dq),
            terms: BTreeMap::new(),
        })
    }

    pub fn one(dq: i64, dz: i64, order: Rational) -> Result<Self> {
        let mut s = Self::new(dq, dz, order)?;
        s.add_raw(0, 0, BigInt::one());
        Ok(s)
    }

    pub fn dq(&self) -> i64 {
        self.dq
    }

    pub fn dz(&self) -> i64 {
        self.dz
    }

    pub fn order(&self) -> Rational {
        self.order
    }

    /// Largest stored `q` numerator.
    pub fn max_q_numerator(&self) -> i64 {
        self.max_q
    }

    /// Adds `c q^{qn/dq} z^{zn/dz}`; terms beyond the order are dropped.
    pub fn add_raw(&mut self, qn: i64, zn: i64, c: BigInt) {
        if qn > self.max_q || c.is_zero() {
            return;
        }
        let entry = self.terms.entry((qn, zn)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(qn, zn));
        }
    }

    fn numerators(&self, q: Rational, z: Rational) -> Result<(i64, i64)> {
        let (qn, zn) = (q * self.dq, z * self.dz);
        if !qn.is_integer() || !zn.is_integer() {
            return Err(Error::Series(format!(
                "exponent (q^{q}, z^{z}) is off the lattice (1/{}, 1/{})",
                self.dq, self.dz
            )));
        }
        Ok((qn.to_integer(), zn.to_integer()))
    }

    pub fn add_term(&mut self, q: Rational, z: Rational, c: BigInt) -> Result<()> {
        let (qn, zn) = self.numerators(q, z)?;
        self.add_raw(qn, zn, c);
        Ok(())
    }

    pub fn coefficient(&self, q: Rational, z: Rational) -> BigInt {
        match self.numerators(q, z) {
            Ok(key) => self.terms.get(&key).cloned().unwrap_or_default(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Nonzero terms as `(q-exponent, z-exponent, coefficient)`, ascending in `q` then `z`.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, Rational, &BigInt)> {
        self.terms
            .iter()
            .map(move |(&(qn, zn), c)| (Rational::new(qn, self.dq), Rational::new(zn, self.dz), c))
    }

    pub fn raw_terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_lattice(&self, other: &BiSeries) -> Result<()> {
        if self.dq != other.dq || self.dz != other.dz {
            return Err(Error::Series(format!(
                "lattice mismatch: (1/{}, 1/{}) vs (1/{}, 1/{})",
                self.dq, self.dz, other.dq, other.dz
            )));
        }
        Ok(())
    }

    /// Drops every term above `order` (which may only lower the order).
    pub fn truncate(&self, order: Rational) -> BiSeries {
        let order = order.min(self.order);
        let max_q = rational::floor(order * self.dq);
        BiSeries {
            order,
            max_q,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.0 <= max_q)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            ..*self
        }
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_lattice(other)?;
        let mut out = BiSeries::new(self.dq, self.dz, self.order.min(other.order))?;
        for (&(qn, zn), c) in self.terms.iter().chain(&other.terms) {
            out.add_raw(qn, zn, c.clone());
        }
        Ok(out)
    }

    /// Product, exact up to the smaller of the two orders. Both factors must
    /// have nonnegative `q`-exponents.
    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check_lattice(other)?;
        let mut out = BiSeries::new(self.dq, self.dz, self.order.min(other.order))?;
        for (&(qa, za), ca) in &self.terms {
            if qa > out.max_q {
                break;
            }
            for (&(qb, zb), cb) in &other.terms {
                if qa + qb > out.max_q {
                    break;
                }
                out.add_raw(qa + qb, za + zb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<BiSeries> {
        let mut acc = BiSeries::one(self.dq, self.dz, self.order)?;
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse. The `q^0` part must be the constant `±1`
    /// and every other term must have positive `q`-exponent.
    pub fn inverse(&self) -> Result<BiSeries> {
        let mut lead = None;
        for (&(qn, zn), c) in &self.terms {
            if qn < 0 || (qn == 0 && zn != 0) {
                return Err(Error::Series(
                    "inverse needs a series in positive powers of q over a unit".into(),
                ));
            }
            if qn == 0 {
                lead = Some(c.clone());
            }
        }
        let lead = lead
            .filter(|c| c.abs().is_one())
            .ok_or_else(|| Error::Series("constant term must be +1 or -1 to invert".into()))?;
        let max_q = self.max_q as usize;
        let mut by_q: Vec<BTreeMap<i64, BigInt>> = vec![BTreeMap::new(); max_q + 1];
        by_q[0].insert(0, lead.clone());
        let tail: Vec<((i64, i64), &BigInt)> = self.raw_terms().filter(|((qn, _), _)| *qn > 0).collect();
        for qn in 1..=max_q {
            let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
            for &((gq, gz), gc) in &tail {
                let gq = gq as usize;
                if gq > qn {
                    break;
                }
                for (hz, hc) in &by_q[qn - gq] {
                    *acc.entry(gz + hz).or_insert_with(BigInt::zero) += gc * hc;
                }
            }
            by_q[qn] = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(z, c)| (z, -(&lead * c)))
                .collect();
        }
        let mut out = BiSeries::new(self.dq, self.dz, self.order)?;
        for (qn, row) in by_q.into_iter().enumerate() {
            for (zn, c) in row {
                out.add_raw(qn as i64, zn, c);
            }
        }
        Ok(out)
    }

    /// Terms whose `z`-exponent equals `z`, as `(q-exponent, coefficient)`.
    pub fn z_slice(&self, z: Rational) -> Vec<(Rational, BigInt)> {
        self.terms()
            .filter(|(_, zz, _)| *zz == z)
            .map(|(q, _, c)| (q, c.clone()))
            .collect()
    }

    /// Rows `(q_num, q_den, z_num, z_den, coeff)` with reduced fractions.
    pub fn csv_rows(&self) -> Vec<[String; 5]> {
        self.terms()
            .map(|(q, z, c)| {
                [
                    q.numer().to_string(),
                    q.denom().to_string(),
                    z.numer().to_string(),
                    z.denom().to_string(),
                    c.to_string(),
                ]
            })
            .collect()
    }
}

impl Serialize for BiSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            q: String,
            z: String,
            coeff: String,
        }
        #[derive(Serialize)]
        struct Repr {
            dq: i64,
            dz: i64,
            order: String,
            terms: Vec<Term>,
        }
        Repr {
            dq: self.dq,
            dz: self.dz,
            order: rational::render(self.order),
            terms: self
                .terms()
                .map(|(q, z, c)| Term {
                    q: rational::render(q),
                    z: rational::render(z),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}
