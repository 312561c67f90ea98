//! Equivariant characters of the tangent space at torus-fixed points.
//!
//! A character is a multiset of weights `e_β e_α^{-1} t_1^a t_2^b`. Keeping
//! multiplicities (instead of collecting into a polynomial) keeps term
//! counts exact when different `(α, β)` pairs share exponents.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::fixed_locus::{FixedComponent, FullFixedPoint, SurfaceParams};
use crate::partition::{Cell, Partition};
use crate::rational::{self, Rational};

/// One weight `e_β e_α^{-1} t_1^{t1} t_2^{t2}`; `alpha` and `beta` are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightTerm {
    pub alpha: usize,
    pub beta: usize,
    pub t1: i64,
    pub t2: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    terms: BTreeMap<WeightTerm, u64>,
}

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, term: WeightTerm, mult: u64) {
        if mult > 0 {
            *self.terms.entry(term).or_insert(0) += mult;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightTerm, u64)> {
        self.terms.iter().map(|(t, &m)| (t, m))
    }

    pub fn multiplicity(&self, term: &WeightTerm) -> u64 {
        self.terms.get(term).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct weights.
    pub fn distinct(&self) -> usize {
        self.terms.len()
    }

    /// Restriction to the diagonal `t_2 = t_1`.
    pub fn specialize_diagonal(&self) -> Character {
        let mut out = Character::new();
        for (t, m) in self.terms() {
            out.insert(
                WeightTerm {
                    t1: t.t1 + t.t2,
                    t2: 0,
                    ..*t
                },
                m,
            );
        }
        out
    }
}

#[derive(Serialize)]
struct TermJson {
    alpha: usize,
    beta: usize,
    t1: i64,
    t2: i64,
    mult: u64,
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct CharacterJson {
            terms: Vec<TermJson>,
        }
        CharacterJson {
            terms: self
                .terms()
                .map(|(t, mult)| TermJson {
                    alpha: t.alpha,
                    beta: t.beta,
                    t1: t.t1,
                    t2: t.t2,
                    mult,
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Index data at a fixed component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub negative_count: u64,
    pub zero_diagonal_count: u64,
    pub positive_count: u64,
}

impl IndexReport {
    pub fn total(&self) -> u64 {
        self.negative_count + self.zero_diagonal_count + self.positive_count
    }
}

fn integral(x: Rational, what: &str) -> i64 {
    assert!(x.is_integer(), "{what} = {x} is not an integer");
    x.to_integer()
}

/// `t`-exponents of the line-bundle part `L_{α,β}`, which depends only on
/// `n = k_α - k_β`:
///
/// * `n >= 1`: `(-i, -j)` with `i + j ≡ p n (mod p)` and `i + j <= p (n - 1)`;
/// * `0 <= n < 1`: nothing;
/// * `n < 0`: `(i + 1, j + 1)` with `i + j + 2 + p n ≡ 0 (mod p)` and
///   `i + j <= -p n - 2`.
pub fn l_weights(p: i64, k_alpha: Rational, k_beta: Rational) -> Vec<(i64, i64)> {
    let n = k_alpha - k_beta;
    let pn = integral(n * p, "p (k_α - k_β)");
    let mut out = Vec::new();
    let mut push_diagonals = |residue: i64, max_sum: i64, map: &dyn Fn(i64, i64) -> (i64, i64)| {
        let mut s = residue.rem_euclid(p);
        while s <= max_sum {
            for i in 0..=s {
                out.push(map(i, s - i));
            }
            s += p;
        }
    };
    if rational::floor(n) >= 1 {
        push_diagonals(pn, pn - p, &|i, j| (-i, -j));
    } else if n < Rational::from_integer(0) {
        push_diagonals(-2 - pn, -pn - 2, &|i, j| (i + 1, j + 1));
    }
    out
}

/// `t`-exponents of the instanton part `N_{α,β}` for a pair of diagrams:
/// `(-l_{Y_β}(s), 1 + a_{Y_α}(s))` for `s ∈ Y_α` and
/// `(1 + l_{Y_α}(s), -a_{Y_β}(s))` for `s ∈ Y_β`.
pub fn n_weights(y_alpha: &Partition, y_beta: &Partition) -> Vec<(i64, i64)> {
    let arm = |y: &Partition, s: Cell| (y.column_length(s.column) - s.row) as i64;
    let mut out = Vec::with_capacity(y_alpha.size() + y_beta.size());
    out.extend(y_alpha.cells().map(|s| (-y_beta.leg(s), 1 + arm(y_alpha, s))));
    out.extend(y_beta.cells().map(|s| (1 + y_alpha.leg(s), -arm(y_beta, s))));
    out
}

/// Full `(C^*)^{r+2}` character of the tangent space at `point`.
pub fn full_character(params: &SurfaceParams, point: &FullFixedPoint) -> Character {
    let p = params.p();
    let r = point.rank();
    let mut ch = Character::new();
    for a in 0..r {
        for b in 0..r {
            let (ka, kb) = (point.kvec.get(a), point.kvec.get(b));
            let shift = integral((kb - ka) * p, "p (k_β - k_α)");
            let term = |t1, t2| WeightTerm {
                alpha: a + 1,
                beta: b + 1,
                t1,
                t2,
            };
            for (x, y) in l_weights(p, ka, kb) {
                ch.insert(term(x, y), 1);
            }
            // t1^{p(kβ-kα)} N(t1^p, t2/t1)
            for (x, y) in n_weights(&point.tableaux_p1[a], &point.tableaux_p1[b]) {
                ch.insert(term(shift + p * x - y, y), 1);
            }
            // t2^{p(kβ-kα)} N(t1/t2, t2^p)
            for (x, y) in n_weights(&point.tableaux_p2[a], &point.tableaux_p2[b]) {
                ch.insert(term(x, shift + p * y - x), 1);
            }
        }
    }
    ch
}

/// Character for the one-parameter subgroup at a fixed component: the full
/// character at `(k_α, ∅, Y_α)` restricted to `t_2 = t_1`.
pub fn reduced_character(params: &SurfaceParams, comp: &FixedComponent) -> Character {
    full_character(params, &comp.representative()).specialize_diagonal()
}

/// The same character evaluated straight from
/// `Σ L_{α,β}(t, t) + t^{p(k_β - k_α)} (Σ_{s∈Y_α} t^{p(1+a_{Y_α}(s))} + Σ_{s∈Y_β} t^{-p a_{Y_β}(s)})`.
pub fn reduced_character_direct(params: &SurfaceParams, comp: &FixedComponent) -> Character {
    let p = params.p();
    let r = comp.rank();
    let arms = |y: &Partition| -> Vec<i64> { y.columns().iter().flat_map(|&len| (0..len as i64).rev()).collect() };
    let mut ch = Character::new();
    for a in 0..r {
        for b in 0..r {
            let (ka, kb) = (comp.kvec.get(a), comp.kvec.get(b));
            let shift = integral((kb - ka) * p, "p (k_β - k_α)");
            let mut add = |e: i64| {
                ch.insert(
                    WeightTerm {
                        alpha: a + 1,
                        beta: b + 1,
                        t1: e,
                        t2: 0,
                    },
                    1,
                )
            };
            for (x, y) in l_weights(p, ka, kb) {
                add(x + y);
            }
            for arm in arms(&comp.tableaux[a]) {
                add(shift + p * (1 + arm));
            }
            for arm in arms(&comp.tableaux[b]) {
                add(shift - p * arm);
            }
        }
    }
    ch
}

/// Counts weights by sign under `t_1 = t_2 = t^m`, `e_α = t^{n_α}` with
/// `m >> n_1 > ... > n_r > 0`. A weight is negative when its `t`-degree
/// `a + b` is negative, or zero with `β > α`; it is tangent to the fixed
/// component when `a + b = 0` and `α = β`.
pub fn morse_index_direct(ch: &Character) -> IndexReport {
    let mut report = IndexReport::default();
    for (t, m) in ch.terms() {
        let degree = t.t1 + t.t2;
        let slot = match degree.cmp(&0) {
            std::cmp::Ordering::Less => &mut report.negative_count,
            std::cmp::Ordering::Greater => &mut report.positive_count,
            std::cmp::Ordering::Equal => match t.beta.cmp(&t.alpha) {
                std::cmp::Ordering::Greater => &mut report.negative_count,
                std::cmp::Ordering::Less => &mut report.positive_count,
                std::cmp::Ordering::Equal => &mut report.zero_diagonal_count,
            },
        };
        *slot += m;
    }
    report
}

/// Total multiplicity.
pub fn dimension(ch: &Character) -> u64 {
    ch.terms().map(|(_, m)| m).sum()
}
