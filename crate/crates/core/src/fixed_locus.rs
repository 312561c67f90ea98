//! Torus-fixed data of the framed moduli space on the Hirzebruch surface `F_p`.
//!
//! A fixed point is a splitting `E = ⊕ I_α(k_α C)` indexed by a Chern vector
//! `(k_1, ..., k_r)` with `Σ k_α = k` and, for every `α`, a pair of Young
//! diagrams at the two fixed points of the exceptional curve. Components of
//! the fixed locus for the one-parameter subgroup carry a single diagram per
//! `α`. In stacky mode the `k_α` live in `(1/p)Z`.

use std::collections::BTreeSet;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{partition_tuples, Partition};
use crate::rational::{self, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceParams {
    p: i64,
    stacky: bool,
}

impl SurfaceParams {
    pub fn new(p: i64, stacky: bool) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidParams(format!("p must be >= 1, got {p}")));
        }
        if stacky && p < 2 {
            return Err(Error::InvalidParams("stacky mode requires p >= 2".into()));
        }
        Ok(SurfaceParams { p, stacky })
    }

    pub fn ordinary(p: i64) -> Result<Self> {
        Self::new(p, false)
    }

    pub fn stacky(p: i64) -> Result<Self> {
        Self::new(p, true)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn is_stacky(&self) -> bool {
        self.stacky
    }

    /// Common denominator allowed for Chern coefficients: `p` if stacky, else 1.
    pub fn denominator(&self) -> i64 {
        if self.stacky {
            self.p
        } else {
            1
        }
    }

    /// Whether `x` lies on the mode's lattice `(1/d)Z`.
    pub fn allows(&self, x: Rational) -> bool {
        self.denominator() % x.denom() == 0
    }
}

/// Rank, first Chern coefficient along `C`, and discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChernData {
    pub r: usize,
    pub k: Rational,
    pub n: Rational,
}

impl ChernData {
    pub fn new(r: usize, k: Rational, n: Rational) -> Self {
        ChernData { r, k, n }
    }

    pub fn validate(&self, params: &SurfaceParams) -> Result<()> {
        if self.r < 1 {
            return Err(Error::InvalidParams("rank must be >= 1".into()));
        }
        if !params.allows(self.k) {
            return Err(Error::InvalidChern(format!(
                "c1 = {} needs denominator dividing {}{}",
                self.k,
                params.denominator(),
                if params.is_stacky() {
                    ""
                } else {
                    " (use stacky mode for fractional c1)"
                }
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernVector(pub Vec<Rational>);

impl ChernVector {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn get(&self, alpha: usize) -> Rational {
        self.0[alpha]
    }

    pub fn iter(&self) -> impl Iterator<Item = Rational> + '_ {
        self.0.iter().copied()
    }
}

impl Serialize for ChernVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for k in &self.0 {
            seq.serialize_element(&rational::render(*k))?;
        }
        seq.end()
    }
}

/// `(p / 2r) Σ_{α<β} (k_α - k_β)^2`.
pub fn quadratic_term(p: i64, kvec: &ChernVector) -> Rational {
    let r = kvec.rank() as i64;
    let mut sum = int(0);
    for (a, &ka) in kvec.0.iter().enumerate() {
        for &kb in &kvec.0[a + 1..] {
            let d = ka - kb;
            sum += d * d;
        }
    }
    sum * Rational::new(p, 2 * r)
}

/// Component of the fixed locus of the one-parameter subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedComponent {
    pub kvec: ChernVector,
    pub tableaux: Vec<Partition>,
}

impl FixedComponent {
    pub fn new(kvec: ChernVector, tableaux: Vec<Partition>) -> Result<Self> {
        if kvec.rank() != tableaux.len() || kvec.rank() == 0 {
            return Err(Error::InvalidDatum(format!(
                "{} Chern coefficients but {} tableaux",
                kvec.rank(),
                tableaux.len()
            )));
        }
        Ok(FixedComponent { kvec, tableaux })
    }

    pub fn rank(&self) -> usize {
        self.kvec.rank()
    }

    pub fn boxes(&self) -> usize {
        self.tableaux.iter().map(Partition::size).sum()
    }

    pub fn discriminant(&self, p: i64) -> Rational {
        int(self.boxes() as i64) + quadratic_term(p, &self.kvec)
    }

    /// The torus-fixed point `(k_α, ∅, Y_α)` lying in this component.
    pub fn representative(&self) -> FullFixedPoint {
        FullFixedPoint {
            kvec: self.kvec.clone(),
            tableaux_p1: vec![Partition::empty(); self.rank()],
            tableaux_p2: self.tableaux.clone(),
        }
    }
}

impl Serialize for FixedComponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FixedComponent", 2)?;
        st.serialize_field("kvec", &self.kvec)?;
        st.serialize_field("tableaux", &self.tableaux)?;
        st.end()
    }
}

/// Fixed point of the full torus: one pair of diagrams per `α`,
/// at `p_1` and at `p_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FullFixedPoint {
    pub kvec: ChernVector,
    pub tableaux_p1: Vec<Partition>,
    pub tableaux_p2: Vec<Partition>,
}

impl FullFixedPoint {
    pub fn new(kvec: ChernVector, tableaux_p1: Vec<Partition>, tableaux_p2: Vec<Partition>) -> Result<Self> {
        let r = kvec.rank();
        if r == 0 || tableaux_p1.len() != r || tableaux_p2.len() != r {
            return Err(Error::InvalidDatum(format!(
                "{r} Chern coefficients but {} and {} tableaux",
                tableaux_p1.len(),
                tableaux_p2.len()
            )));
        }
        Ok(FullFixedPoint {
            kvec,
            tableaux_p1,
            tableaux_p2,
        })
    }

    pub fn rank(&self) -> usize {
        self.kvec.rank()
    }

    pub fn boxes(&self) -> usize {
        self.tableaux_p1
            .iter()
            .chain(&self.tableaux_p2)
            .map(Partition::size)
            .sum()
    }

    pub fn discriminant(&self, p: i64) -> Rational {
        int(self.boxes() as i64) + quadratic_term(p, &self.kvec)
    }
}

impl Serialize for FullFixedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FullFixedPoint", 3)?;
        st.serialize_field("kvec", &self.kvec)?;
        st.serialize_field("tableaux_p1", &self.tableaux_p1)?;
        st.serialize_field("tableaux_p2", &self.tableaux_p2)?;
        st.end()
    }
}

/// Chern vectors `(k_α)` with `Σ k_α = k`, coefficients on the mode's
/// lattice, and quadratic term at most `max_n`, each paired with that term.
/// Lexicographically decreasing.
///
/// With numerators `m_α` over denominator `d` and `M = Σ m_α = d k`, the
/// quadratic term equals `p / (2 r^2 d^2) Σ_α (r m_α - M)^2`, so the search
/// runs over integer deviations bounded by `2 r^2 d^2 max_n / p`.
pub fn chern_vectors(params: &SurfaceParams, r: usize, k: Rational, max_n: Rational) -> Vec<(ChernVector, Rational)> {
    let d = params.denominator();
    if r == 0 || !params.allows(k) || max_n < int(0) {
        return Vec::new();
    }
    let total = (k * d).to_integer() as i128;
    let (r_i, d_i, p_i) = (r as i128, d as i128, params.p() as i128);
    let (a, b) = (*max_n.numer() as i128, *max_n.denom() as i128);
    // Σ (r m_α - M)^2 · p · b <= 2 a d^2 r^2
    let budget = 2 * a * d_i * d_i * r_i * r_i;

    #[allow(clippy::too_many_arguments)]
    fn go(
        slot: usize,
        r: i128,
        total: i128,
        pb: i128,
        budget_left: i128,
        sum_so_far: i128,
        prefix: &mut Vec<i128>,
        out: &mut Vec<Vec<i128>>,
    ) {
        if slot as i128 == r - 1 {
            let last = total - sum_so_far;
            let dev = r * last - total;
            if dev * dev * pb <= budget_left {
                prefix.push(last);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let radius = rational::isqrt(budget_left / pb);
        let hi = (total + radius).div_euclid(r);
        let lo = -((radius - total).div_euclid(r));
        for m in (lo..=hi).rev() {
            let dev = r * m - total;
            let cost = dev * dev * pb;
            if cost > budget_left {
                continue;
            }
            prefix.push(m);
            go(slot + 1, r, total, pb, budget_left - cost, sum_so_far + m, prefix, out);
            prefix.pop();
        }
    }

    let mut numerators = Vec::new();
    go(
        0,
        r_i,
        total,
        p_i * b,
        budget,
        0,
        &mut Vec::with_capacity(r),
        &mut numerators,
    );
    numerators
        .into_iter()
        .map(|ms| {
            let kvec = ChernVector(ms.into_iter().map(|m| Rational::new(m as i64, d)).collect());
            let q = quadratic_term(params.p(), &kvec);
            (kvec, q)
        })
        .collect()
}

fn box_budget(n: Rational, quadratic: Rational) -> Option<usize> {
    let rest = n - quadratic;
    (rest.is_integer() && rest >= int(0)).then(|| rest.to_integer() as usize)
}

pub fn enumerate_components(params: &SurfaceParams, chern: &ChernData) -> Result<Vec<FixedComponent>> {
    chern.validate(params)?;
    let mut out = Vec::new();
    for (kvec, q) in chern_vectors(params, chern.r, chern.k, chern.n) {
        let Some(boxes) = box_budget(chern.n, q) else { continue };
        for tableaux in partition_tuples(boxes, chern.r) {
            out.push(FixedComponent {
                kvec: kvec.clone(),
                tableaux,
            });
        }
    }
    Ok(out)
}

pub fn enumerate_full_fixed_points(params: &SurfaceParams, chern: &ChernData) -> Result<Vec<FullFixedPoint>> {
    chern.validate(params)?;
    let r = chern.r;
    let mut out = Vec::new();
    for (kvec, q) in chern_vectors(params, r, chern.k, chern.n) {
        let Some(boxes) = box_budget(chern.n, q) else { continue };
        for mut tableaux in partition_tuples(boxes, 2 * r) {
            let tableaux_p2 = tableaux.split_off(r);
            out.push(FullFixedPoint {
                kvec: kvec.clone(),
                tableaux_p1: tableaux,
                tableaux_p2,
            });
        }
    }
    Ok(out)
}

/// `N = p k (r - k) / 2r`, the smallest discriminant for normalized `k`.
pub fn minimal_discriminant(p: i64, r: usize, k: Rational) -> Rational {
    let r = int(r as i64);
    int(p) * k * (r - k) / (int(2) * r)
}

/// Twists by `O(C)` so that `k` lands in `[0, r)`; returns `(k', twist)`
/// with `k = k' + twist · r`.
pub fn normalize_c1(r: usize, k: Rational) -> (Rational, i64) {
    let twist = rational::floor(k / int(r as i64));
    (k - int(twist * r as i64), twist)
}

pub fn is_admissible(params: &SurfaceParams, chern: &ChernData) -> bool {
    if chern.validate(params).is_err() || chern.n < int(0) {
        return false;
    }
    if params.is_stacky() {
        return chern_vectors(params, chern.r, chern.k, chern.n)
            .iter()
            .any(|(_, q)| box_budget(chern.n, *q).is_some());
    }
    let r = chern.r as i64;
    let (k, _) = normalize_c1(chern.r, chern.k);
    let shifted = chern.n - Rational::new((r - 1) * params.p(), 2 * r) * k * k;
    shifted.is_integer() && chern.n >= minimal_discriminant(params.p(), chern.r, k)
}

/// Every discriminant `n <= max_n` for which `(r, k, n)` has fixed points,
/// ascending.
pub fn admissible_discriminants(params: &SurfaceParams, r: usize, k: Rational, max_n: Rational) -> Vec<Rational> {
    let mut values = BTreeSet::new();
    for (_, q) in chern_vectors(params, r, k, max_n) {
        let mut n = q;
        while n <= max_n {
            values.insert(n);
            n += int(1);
        }
    }
    values.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn kv(ks: &[Rational]) -> ChernVector {
        ChernVector(ks.to_vec())
    }

    fn part(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    /// Exhaustive search over a box of numerators, independent of the
    /// pruned recursion.
    fn brute_force_kvecs(params: &SurfaceParams, r: usize, k: Rational, n: Rational, bound: i64) -> Vec<ChernVector> {
        let d = params.denominator();
        let mut out = Vec::new();
        let mut idx = vec![-bound; r];
        loop {
            let kvec = ChernVector(idx.iter().map(|&m| q(m, d)).collect());
            let qt = quadratic_term(params.p(), &kvec);
            if kvec.total() == k && box_budget(n, qt).is_some() {
                out.push(kvec);
            }
            let mut pos = 0;
            while pos < r {
                idx[pos] += 1;
                if idx[pos] <= bound {
                    break;
                }
                idx[pos] = -bound;
                pos += 1;
            }
            if pos == r {
                break;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn quadratic_term_examples() {
        assert_eq!(quadratic_term(2, &kv(&[int(1), int(0)])), q(1, 2));
        assert_eq!(quadratic_term(1, &kv(&[int(1), int(-1)])), int(1));
        assert_eq!(quadratic_term(3, &kv(&[int(2), int(2), int(2)])), int(0));
    }

    #[test]
    fn components_minimal_rank_two() {
        let params = SurfaceParams::ordinary(2).unwrap();
        let comps = enumerate_components(&params, &ChernData::new(2, int(1), q(1, 2))).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].kvec, kv(&[int(1), int(0)]));
        assert_eq!(comps[1].kvec, kv(&[int(0), int(1)]));
        assert!(comps.iter().all(|c| c.boxes() == 0));
    }

    #[test]
    fn components_rank_one() {
        let params = SurfaceParams::ordinary(1).unwrap();
        let comps = enumerate_components(&params, &ChernData::new(1, int(0), int(2))).unwrap();
        let tabs: Vec<_> = comps.iter().map(|c| c.tableaux[0].clone()).collect();
        assert_eq!(tabs, vec![part(&[2]), part(&[1, 1])]);
    }

    #[test]
    fn components_rank_two_p1() {
        let params = SurfaceParams::ordinary(1).unwrap();
        let comps = enumerate_components(&params, &ChernData::new(2, int(0), int(1))).unwrap();
        assert_eq!(comps.len(), 4);
        let mut kvecs: Vec<_> = comps.iter().map(|c| c.kvec.clone()).collect();
        kvecs.dedup();
        assert_eq!(
            kvecs,
            vec![kv(&[int(1), int(-1)]), kv(&[int(0), int(0)]), kv(&[int(-1), int(1)])]
        );
        let zero: Vec<_> = comps.iter().filter(|c| c.kvec == kv(&[int(0), int(0)])).collect();
        assert_eq!(zero.len(), 2);
        assert!(comps
            .iter()
            .filter(|c| c.kvec != kv(&[int(0), int(0)]))
            .all(|c| c.boxes() == 0));
    }

    #[test]
    fn full_fixed_points() {
        let params = SurfaceParams::ordinary(2).unwrap();
        let pts = enumerate_full_fixed_points(&params, &ChernData::new(1, int(0), int(1))).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].tableaux_p1, vec![part(&[1])]);
        assert_eq!(pts[0].tableaux_p2, vec![Partition::empty()]);
        assert_eq!(pts[1].tableaux_p2, vec![part(&[1])]);

        let pts = enumerate_full_fixed_points(&params, &ChernData::new(2, int(1), q(1, 2))).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p.boxes() == 0));

        assert!(
            enumerate_full_fixed_points(&params, &ChernData::new(2, int(0), int(-1)))
                .unwrap()
                .is_empty()
        );
        assert!(enumerate_components(&params, &ChernData::new(1, int(0), q(-1, 2)))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        for (p, stacky) in [(1, false), (2, false), (3, false), (2, true), (3, true)] {
            let params = SurfaceParams::new(p, stacky).unwrap();
            let d = params.denominator();
            for r in 1..=3 {
                for m in -(d * 2)..=(d * 2) {
                    let k = q(m, d);
                    for n in admissible_discriminants(&params, r, k, int(3)) {
                        let mut fast: Vec<_> = chern_vectors(&params, r, k, n)
                            .into_iter()
                            .filter(|(_, qt)| box_budget(n, *qt).is_some())
                            .map(|(v, _)| v)
                            .collect();
                        fast.sort();
                        let slow = brute_force_kvecs(&params, r, k, n, 4 * d);
                        assert_eq!(fast, slow, "p={p} stacky={stacky} r={r} k={k} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn search_order_is_decreasing() {
        let params = SurfaceParams::stacky(2).unwrap();
        let kvecs: Vec<_> = chern_vectors(&params, 3, q(1, 2), int(3))
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        let mut sorted = kvecs.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(kvecs, sorted);
    }

    #[test]
    fn components_satisfy_identity() {
        let params = SurfaceParams::stacky(3).unwrap();
        for m in 0..6 {
            let k = q(m, 3);
            for n in admissible_discriminants(&params, 2, k, int(3)) {
                let chern = ChernData::new(2, k, n);
                for c in enumerate_components(&params, &chern).unwrap() {
                    assert_eq!(c.discriminant(3), n);
                    assert_eq!(c.kvec.total(), k);
                }
            }
        }
    }

    #[test]
    fn minimal_discriminant_values() {
        assert_eq!(minimal_discriminant(2, 2, int(1)), q(1, 2));
        assert_eq!(minimal_discriminant(5, 4, int(0)), int(0));
        assert_eq!(minimal_discriminant(1, 3, int(1)), q(1, 3));
    }

    #[test]
    fn admissibility() {
        let p2 = SurfaceParams::ordinary(2).unwrap();
        assert!(is_admissible(&p2, &ChernData::new(2, int(1), q(1, 2))));
        assert!(!is_admissible(&p2, &ChernData::new(2, int(1), int(1))));
        let p1 = SurfaceParams::ordinary(1).unwrap();
        assert!(is_admissible(&p1, &ChernData::new(1, int(0), int(3))));
        assert!(!is_admissible(&p1, &ChernData::new(1, q(1, 2), int(3))));
        // twisting does not change admissibility
        assert!(is_admissible(&p2, &ChernData::new(2, int(3), q(1, 2))));
    }

    #[test]
    fn ordinary_admissibility_matches_enumeration() {
        for p in 1..=3 {
            let params = SurfaceParams::ordinary(p).unwrap();
            for r in 1..=3 {
                for k in -3..=4 {
                    for num in 0..=(4 * 2 * r as i64 * p) {
                        let n = q(num, 2 * r as i64 * p);
                        let chern = ChernData::new(r, int(k), n);
                        let nonempty = !enumerate_components(&params, &chern).unwrap().is_empty();
                        assert_eq!(is_admissible(&params, &chern), nonempty, "p={p} r={r} k={k} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_c1(2, int(3)), (int(1), 1));
        assert_eq!(normalize_c1(2, int(0)), (int(0), 0));
        assert_eq!(normalize_c1(2, q(-1, 2)), (q(3, 2), -1));
        let (k, _) = normalize_c1(3, q(-7, 2));
        assert_eq!(normalize_c1(3, k), (k, 0));
    }

    #[test]
    fn invalid_inputs() {
        assert!(SurfaceParams::new(0, false).is_err());
        assert!(SurfaceParams::new(1, true).is_err());
        let params = SurfaceParams::ordinary(2).unwrap();
        assert!(enumerate_components(&params, &ChernData::new(0, int(0), int(1))).is_err());
        assert!(enumerate_components(&params, &ChernData::new(2, q(1, 2), int(1))).is_err());
        let stacky = SurfaceParams::stacky(2).unwrap();
        assert!(enumerate_components(&stacky, &ChernData::new(2, q(1, 3), int(1))).is_err());
    }

    #[test]
    fn json_shape() {
        let c = FixedComponent::new(kv(&[q(1, 2), int(0)]), vec![part(&[1]), Partition::empty()]).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kvec":["1/2","0"],"tableaux":[[1],[]]}"#
        );
        let f = c.representative();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"kvec":["1/2","0"],"tableaux_p1":[[],[]],"tableaux_p2":[[1],[]]}"#
        );
    }
}
