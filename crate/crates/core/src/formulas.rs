//! Betti numbers of `K(Ω)` and `K0(Ω)` for `Ω = R_1 x ... x R_k` from the unit
//! counts `u_i = |U(R_i)|` of the local factors alone.
//!
//! The recursion reads as follows. With `R_k` the last factor, for `n >= 1`
//!
//! ```text
//! b_n(K(Ω)) = Σ_{∅ ≠ J ⊆ {1..k-1}} b_{n-1}(K0(R_J)) · Π_{t ∉ J} u_t
//! ```
//!
//! where `R_J = Π_{j ∈ J} R_j` and the product runs over every factor outside
//! `J`, `u_k` included. In the term with `J = {1..k-1}` the product is just
//! `u_k`, and it becomes `u_k - 1` when `R_k` is a field. For `K0` the degree
//! zero rank is `Π u_i`, or `u - 1` for a single field; every higher degree
//! agrees with `K`. A single local factor has acyclic `K`. This reading was
//! checked against direct homology of `K(Z_12)`, `K(Z_30)`, `K(Z_36)` and
//! `K(Z_60)` before being adopted, and the result does not depend on the order
//! of the factors.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homology::HomologyProfile;
use crate::rings::{decompose_local, FiniteRing};

/// Unit count and field flag of one local factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalSummary {
    pub u: u64,
    pub is_field: bool,
}

impl LocalSummary {
    pub fn new(u: u64, is_field: bool) -> Result<Self> {
        if u == 0 {
            return Err(Error::invalid("a local ring has at least one unit"));
        }
        Ok(LocalSummary { u, is_field })
    }

    pub fn field(u: u64) -> Self {
        LocalSummary { u, is_field: true }
    }

    pub fn non_field(u: u64) -> Self {
        LocalSummary { u, is_field: false }
    }

    /// Summary of a local ring, `None` if the ring is not local.
    pub fn of_local_ring(ring: &FiniteRing) -> Option<Self> {
        ring.is_local().map(|p| LocalSummary {
            u: p.unit_count as u64,
            is_field: p.is_field,
        })
    }
}

/// Summaries of the local factors of `ring`, in decomposition order.
pub fn local_summaries(ring: &FiniteRing) -> Result<Vec<LocalSummary>> {
    Ok(decompose_local(ring)?
        .iter()
        .map(|f| LocalSummary::of_local_ring(f).expect("decomposition factors are local"))
        .collect())
}

/// Free ranks by dimension; absent dimensions are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankVector(BTreeMap<usize, BigUint>);

impl RankVector {
    pub fn get(&self, n: usize) -> BigUint {
        self.0.get(&n).cloned().unwrap_or_default()
    }

    fn add(&mut self, n: usize, v: BigUint) {
        if !v.is_zero() {
            *self.0.entry(n).or_default() += v;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.0.iter().map(|(&n, v)| (n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    /// As machine integers, `None` if some rank does not fit.
    pub fn to_usize_map(&self) -> Option<BTreeMap<isize, usize>> {
        self.0.iter().map(|(&n, v)| Some((n as isize, v.to_usize()?))).collect()
    }

    /// Whether these are exactly the free ranks of `profile`.
    pub fn matches_ranks(&self, profile: &HomologyProfile) -> bool {
        self.to_usize_map().is_some_and(|m| m == profile.ranks())
    }
}

impl<const N: usize> From<[(usize, u64); N]> for RankVector {
    fn from(entries: [(usize, u64); N]) -> Self {
        let mut r = RankVector::default();
        for (n, v) in entries {
            r.add(n, BigUint::from(v));
        }
        r
    }
}

impl Serialize for RankVector {
    /// `[{"dim": n, "rank": r}, ...]` over the nonzero ranks.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        #[derive(Serialize)]
        struct Entry {
            dim: usize,
            rank: serde_json::Value,
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (&dim, v) in &self.0 {
            let rank = match v.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(v.to_string()),
            };
            seq.serialize_element(&Entry { dim, rank })?;
        }
        seq.end()
    }
}

/// Memoized evaluator. The memo is keyed on sorted factor lists, which is
/// sound because the ranks do not depend on factor order.
#[derive(Debug, Default)]
pub struct FormulaEngine {
    memo: Mutex<HashMap<Vec<LocalSummary>, RankVector>>,
}

impl FormulaEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduced ranks of `K(Π factors)`.
    pub fn k_ranks(&self, factors: &[LocalSummary]) -> RankVector {
        let mut key = factors.to_vec();
        key.sort_unstable();
        if let Some(r) = self.memo.lock().expect("memo lock").get(&key) {
            return r.clone();
        }
        let r = self.k_ranks_sorted(&key);
        self.memo.lock().expect("memo lock").insert(key, r.clone());
        r
    }

    fn k_ranks_sorted(&self, fs: &[LocalSummary]) -> RankVector {
        let mut out = RankVector::default();
        let k = fs.len();
        if k <= 1 {
            return out;
        }
        let (head, last) = (&fs[..k - 1], fs[k - 1]);
        let full = (1u64 << (k - 1)) - 1;
        for mask in 1..=full {
            let mut subset = Vec::new();
            let mut weight = BigUint::one();
            for (i, f) in head.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    subset.push(*f);
                } else {
                    weight *= f.u;
                }
            }
            weight *= if mask == full && last.is_field { last.u - 1 } else { last.u };
            if weight.is_zero() {
                continue;
            }
            for (n, r) in self.k0_ranks(&subset).iter() {
                out.add(n + 1, r * &weight);
            }
        }
        out
    }

    /// Reduced ranks of `K0(Π factors)`.
    pub fn k0_ranks(&self, factors: &[LocalSummary]) -> RankVector {
        let mut r = self.k_ranks(factors);
        let units: BigUint = factors.iter().map(|f| BigUint::from(f.u)).product();
        let zero_rank = match factors {
            [f] if f.is_field => units - 1u32,
            _ => units,
        };
        r.0.remove(&0);
        r.add(0, zero_rank);
        r
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }
}

fn engine() -> &'static FormulaEngine {
    static ENGINE: OnceLock<FormulaEngine> = OnceLock::new();
    ENGINE.get_or_init(FormulaEngine::new)
}

/// Reduced ranks of `K(Π factors)`, using a shared memo.
pub fn k_ranks(factors: &[LocalSummary]) -> RankVector {
    engine().k_ranks(factors)
}

/// Reduced ranks of `K0(Π factors)`, using a shared memo.
pub fn k0_ranks(factors: &[LocalSummary]) -> RankVector {
    engine().k0_ranks(factors)
}

/// The claim that `K(Π factors)` has free integral homology, to be checked
/// against a computed profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFreeClaim {
    pub factors: Vec<LocalSummary>,
}

pub fn torsion_free_assertion(factors: &[LocalSummary]) -> TorsionFreeClaim {
    TorsionFreeClaim {
        factors: factors.to_vec(),
    }
}

impl TorsionFreeClaim {
    /// First dimension carrying torsion, or `Ok` if there is none.
    pub fn check(&self, profile: &HomologyProfile) -> std::result::Result<(), isize> {
        match profile.groups.iter().find(|(_, g)| !g.torsion.is_empty()) {
            Some((&n, _)) => Err(n),
            None => Ok(()),
        }
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `a_{n,k}`: `a_{0,k} = 1`, `a_{n,k} = Σ_{j=1}^{k-1} C(k-1, j) a_{n-1,j}`,
/// and zero for `n < 0` or `n >= k` with `n > 0`.
pub fn a_coefficient(n: i64, k: i64) -> BigUint {
    fn go(n: i64, k: i64, memo: &mut HashMap<(i64, i64), BigUint>) -> BigUint {
        if n < 0 || k < 1 {
            return BigUint::zero();
        }
        if n == 0 {
            return BigUint::one();
        }
        if n >= k {
            return BigUint::zero();
        }
        if let Some(v) = memo.get(&(n, k)) {
            return v.clone();
        }
        let v = (1..k)
            .map(|j| binomial((k - 1) as u64, j as u64) * go(n - 1, j, memo))
            .sum();
        memo.insert((n, k), v);
        memo[&(n, k)].clone()
    }
    go(n, k, &mut HashMap::new())
}

/// `b_n(K(Ω))` when every factor is a non-field: `a_{n,k} Π u_i` for
/// `1 <= n < k`, zero otherwise (`K(Ω)` is connected).
pub fn betti_nonfields(n: i64, us: &[u64]) -> BigUint {
    let k = us.len() as i64;
    if n < 1 || n >= k {
        return BigUint::zero();
    }
    a_coefficient(n, k) * us.iter().map(|&u| BigUint::from(u)).product::<BigUint>()
}

/// `σ_j(u_1..u_k) = Σ_{|S| = j} Π_{i ∈ S} (u_i - 1) Π_{i ∉ S} u_i`.
pub fn sigma(j: i64, us: &[u64]) -> BigUint {
    let k = us.len();
    if j < 0 || j as usize > k {
        return BigUint::zero();
    }
    // σ_j is the coefficient of t^j in Π (u_i + (u_i - 1) t)
    let mut dp = vec![BigUint::zero(); k + 1];
    dp[0] = BigUint::one();
    for (i, &u) in us.iter().enumerate() {
        for s in (0..=i + 1).rev() {
            let keep = &dp[s] * u;
            let take = if s > 0 { &dp[s - 1] * u.saturating_sub(1) } else { BigUint::zero() };
            dp[s] = keep + take;
        }
    }
    dp[j as usize].clone()
}

/// `A_{j,t}` with `A_{j,1} = 1` and
/// `A_{j-1,t} = Σ_{m=1}^{j-t} A_{j-m-1,t-1} C(j+t-2, m)`.
pub fn a_table(j: i64, t: i64) -> BigUint {
    fn go(a: i64, t: i64, memo: &mut HashMap<(i64, i64), BigUint>) -> BigUint {
        if t < 1 || a < 0 {
            return BigUint::zero();
        }
        if t == 1 {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&(a, t)) {
            return v.clone();
        }
        let j = a + 1;
        let v = (1..=j - t)
            .map(|m| go(j - m - 1, t - 1, memo) * binomial((j + t - 2) as u64, m as u64))
            .sum();
        memo.insert((a, t), v);
        memo[&(a, t)].clone()
    }
    go(j, t, &mut HashMap::new())
}

/// `b_n(K(Ω))` when every factor is a field. With `j = k - n`:
/// `b_{k-1} = σ_k` and `b_{k-j} = Σ_{t=1}^{j-1} A_{j-1,t} σ_{k-j-t+1}`;
/// zero outside `1 <= n < k`.
pub fn betti_allfields(n: i64, us: &[u64]) -> BigUint {
    let k = us.len() as i64;
    if n < 1 || n >= k {
        return BigUint::zero();
    }
    let j = k - n;
    if j == 1 {
        return sigma(k, us);
    }
    (1..j).map(|t| a_table(j - 1, t) * sigma(k - j - t + 1, us)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(u: u64) -> LocalSummary {
        LocalSummary::field(u)
    }

    fn nf(u: u64) -> LocalSummary {
        LocalSummary::non_field(u)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn k0_base_cases() {
        assert_eq!(k0_ranks(&[f(2)]), RankVector::from([(0, 1)]));
        assert_eq!(k0_ranks(&[nf(2)]), RankVector::from([(0, 2)]));
        assert_eq!(k0_ranks(&[f(2), f(4)]), RankVector::from([(0, 8), (1, 3)]));
        assert!(k_ranks(&[nf(8)]).is_zero());
    }

    #[test]
    fn k_examples() {
        assert_eq!(k_ranks(&[nf(2), nf(6)]), RankVector::from([(1, 12)]));
        assert_eq!(k_ranks(&[nf(2), f(2)]), RankVector::from([(1, 2)]));
        assert_eq!(k_ranks(&[f(2), nf(2)]), RankVector::from([(1, 2)]));
        assert_eq!(k_ranks(&[f(2), f(4), f(6)]), RankVector::from([(1, 100), (2, 15)]));
        assert_eq!(k_ranks(&[f(2), f(2), f(2)]), RankVector::from([(1, 12), (2, 1)]));
        assert_eq!(k_ranks(&[f(1), f(2)]), RankVector::default());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(a_coefficient(1, 2), big(1));
        assert_eq!(a_coefficient(1, 3), big(3));
        assert_eq!(a_coefficient(0, 5), big(1));
        assert_eq!(a_coefficient(3, 3), big(0));
        assert_eq!(a_table(2, 2), big(3));
        assert_eq!(a_table(3, 2), big(10));
        assert_eq!(a_table(3, 3), big(15));
        assert_eq!(sigma(0, &[2, 3]), big(6));
        assert_eq!(sigma(2, &[2, 3]), big(2));
        assert_eq!(sigma(1, &[2, 2, 2]), big(12));
        assert_eq!(sigma(4, &[2, 2, 2]), big(0));
        assert_eq!(sigma(-1, &[2]), big(0));
        assert_eq!(betti_allfields(1, &[2, 4]), big(3));
        assert_eq!(betti_allfields(2, &[2, 2, 2]), big(1));
        assert_eq!(betti_allfields(1, &[2, 2, 2]), big(12));
        assert_eq!(betti_allfields(0, &[2, 2, 2]), big(0));
        assert_eq!(betti_nonfields(1, &[2, 6]), big(12));
        assert_eq!(betti_nonfields(0, &[2, 6]), big(0));
        assert_eq!(betti_nonfields(2, &[2, 6]), big(0));
    }

    #[test]
    fn closed_forms_match_recursion() {
        fn tuples(k: usize, max: u64) -> Vec<Vec<u64>> {
            (0..k).fold(vec![vec![]], |acc, _| {
                acc.into_iter()
                    .flat_map(|t| (1..=max).map(move |u| [t.clone(), vec![u]].concat()))
                    .collect()
            })
        }
        for k in 1..=4 {
            for us in tuples(k, 6) {
                let fields: Vec<_> = us.iter().map(|&u| f(u)).collect();
                let rf = k_ranks(&fields);
                for n in 0..=k as i64 {
                    assert_eq!(rf.get(n as usize), betti_allfields(n, &us), "fields {us:?} n={n}");
                }
                if us.iter().all(|&u| u >= 2) {
                    let nonfields: Vec<_> = us.iter().map(|&u| nf(u)).collect();
                    let rn = k_ranks(&nonfields);
                    for n in 0..=k as i64 {
                        assert_eq!(rn.get(n as usize), betti_nonfields(n, &us), "non-fields {us:?} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn engine_memoizes_sorted_keys() {
        let e = FormulaEngine::new();
        e.k_ranks(&[f(4), nf(2)]);
        let before = e.memo_len();
        e.k_ranks(&[nf(2), f(4)]);
        assert_eq!(e.memo_len(), before);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(RankVector::from([(1, 12)])).unwrap();
        assert_eq!(v, serde_json::json!([{"dim": 1, "rank": 12}]));
    }
}
