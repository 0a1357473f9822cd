//! Integer Smith normal form by sparse elimination.
//!
//! Pivots are always entries of least absolute value. Unit pivots clear their
//! column by row operations and then drop out together with their row; other
//! pivots alternate Euclidean row and column reductions until they are
//! isolated. The collected diagonal is finally normalized into a divisibility
//! chain. Arithmetic starts in checked `i64` and restarts in `BigInt` on
//! overflow, so results are always exact.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Rank and invariant factors `d1 | d2 | ... | d_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_factors: Vec<BigUint>,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let diagonal = match m.to_i64_rows() {
        Some(rows) => eliminate(m.cols(), rows).unwrap_or_else(|| eliminate_big(m)),
        None => eliminate_big(m),
    };
    normalize(diagonal)
}

fn eliminate_big(m: &IntMatrix) -> Vec<BigUint> {
    let rows = (0..m.rows()).map(|r| m.row_entries(r)).collect();
    eliminate(m.cols(), rows).expect("bigint arithmetic cannot overflow")
}

/// Scalar operations needed by the elimination.
trait Entry: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    type Size: Ord + Clone;
    fn size(&self) -> Self::Size;
    /// `self - q * b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// Truncated quotient `self / b`, or `None` on overflow.
    fn quot(&self, b: &Self) -> Option<Self>;
    fn to_biguint_abs(&self) -> BigUint;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    type Size = u64;
    fn size(&self) -> u64 {
        self.unsigned_abs()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn quot(&self, b: &Self) -> Option<Self> {
        self.checked_div(*b)
    }
    fn to_biguint_abs(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    type Size = BigUint;
    fn size(&self) -> BigUint {
        self.magnitude().clone()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn quot(&self, b: &Self) -> Option<Self> {
        Some(self / b)
    }
    fn to_biguint_abs(&self) -> BigUint {
        Signed::abs(self).to_biguint().expect("absolute value is nonnegative")
    }
}

struct Work<T> {
    rows: Vec<Vec<(usize, T)>>,
    cols: Vec<BTreeSet<usize>>,
}

impl<T: Entry> Work<T> {
    fn entry(&self, r: usize, c: usize) -> Option<&T> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|i| &row[i].1)
    }

    /// `row[i] -= q * row[p]`, keeping the column index current.
    fn row_sub(&mut self, i: usize, q: &T, p: usize) -> Option<()> {
        let (a, b) = (std::mem::take(&mut self.rows[i]), &self.rows[p]);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let ca = a.get(x).map_or(usize::MAX, |e| e.0);
            let cb = b.get(y).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                out.push(a[x].clone());
                x += 1;
            } else if cb < ca {
                let v = T::zero().sub_mul(q, &b[y].1)?;
                self.cols[cb].insert(i);
                out.push((cb, v));
                y += 1;
            } else {
                let v = a[x].1.sub_mul(q, &b[y].1)?;
                if v.is_zero() {
                    self.cols[ca].remove(&i);
                } else {
                    out.push((ca, v));
                }
                x += 1;
                y += 1;
            }
        }
        self.rows[i] = out;
        Some(())
    }

    fn drop_row(&mut self, r: usize) {
        for (c, _) in std::mem::take(&mut self.rows[r]) {
            self.cols[c].remove(&r);
        }
    }

    /// Clears column `c` below/above a unit pivot at `(r, c)` and removes row `r`.
    fn unit_pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.entry(r, c)?.clone();
        let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let a = self.entry(i, c).expect("indexed entry").clone();
            // p is ±1, so a / p is exact
            let q = a.quot(&p)?;
            self.row_sub(i, &q, r)?;
        }
        self.drop_row(r);
        Some(())
    }

    fn best_unit_in_column(&self, c: usize) -> Option<usize> {
        self.cols[c]
            .iter()
            .copied()
            .filter(|&r| self.entry(r, c).is_some_and(Entry::is_unit))
            .min_by_key(|&r| self.rows[r].len())
    }

    fn least_entry(&self) -> Option<(usize, usize)> {
        let mut best: Option<(T::Size, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let key = (v.size(), row.len(), r, *c);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }
}

/// Returns the absolute values of the diagonal left after elimination, or
/// `None` on overflow.
fn eliminate<T: Entry>(ncols: usize, rows: Vec<Vec<(usize, T)>>) -> Option<Vec<BigUint>> {
    let mut cols = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            cols[*c].insert(r);
        }
    }
    let mut w = Work { rows, cols };
    let mut diagonal = Vec::new();

    // Sweep for unit pivots, which never need Euclidean steps.
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..ncols {
            if let Some(r) = w.best_unit_in_column(c) {
                w.unit_pivot(r, c)?;
                diagonal.push(BigUint::one());
                progress = true;
            }
        }
    }

    while let Some((r, c)) = w.least_entry() {
        let p = w.entry(r, c).expect("pivot exists").clone();
        if p.is_unit() {
            w.unit_pivot(r, c)?;
            diagonal.push(BigUint::one());
            continue;
        }
        let mut reduced = false;
        let others: Vec<usize> = w.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let a = w.entry(i, c).expect("indexed entry").clone();
            let q = a.quot(&p)?;
            if !q.is_zero() {
                w.row_sub(i, &q, r)?;
            }
            if w.entry(i, c).is_some() {
                reduced = true;
            }
        }
        if reduced {
            continue;
        }
        // Column c now holds only the pivot, so column operations touch row r alone.
        let mut row = std::mem::take(&mut w.rows[r]);
        for (j, v) in row.iter_mut() {
            if *j != c {
                let q = v.quot(&p)?;
                *v = v.sub_mul(&q, &p)?;
                if !v.is_zero() {
                    reduced = true;
                }
            }
        }
        for (j, v) in &row {
            if v.is_zero() {
                w.cols[*j].remove(&r);
            }
        }
        row.retain(|e| !e.1.is_zero());
        w.rows[r] = row;
        if reduced {
            continue;
        }
        diagonal.push(p.to_biguint_abs());
        w.drop_row(r);
    }
    Some(diagonal)
}

/// Invariant factors, without ones, of `⊕ Z/d` over the given orders.
pub(crate) fn torsion_invariants(orders: Vec<BigUint>) -> Vec<BigUint> {
    normalize(orders.into_iter().filter(|d| !d.is_zero()).collect()).torsion()
}

/// Turns a diagonal into invariant-factor form by pairwise gcd/lcm.
fn normalize(diagonal: Vec<BigUint>) -> SmithForm {
    let rank = diagonal.len();
    let ones = diagonal.iter().filter(|d| d.is_one()).count();
    let mut rest: Vec<BigUint> = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if !(&rest[j] % &rest[i]).is_zero() {
                let g = rest[i].gcd(&rest[j]);
                let l = rest[i].lcm(&rest[j]);
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut invariant_factors = vec![BigUint::one(); ones];
    invariant_factors.extend(rest);
    invariant_factors.sort();
    SmithForm { rank, invariant_factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> (usize, Vec<u64>) {
        let s = smith_normal_form(&IntMatrix::from_i64_rows(rows));
        let f = s.invariant_factors.iter().map(|d| u64::try_from(d).unwrap()).collect();
        (s.rank, f)
    }

    #[test]
    fn small_cases() {
        assert_eq!(snf(&[vec![1, 2], vec![2, 4]]), (1, vec![1]));
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), (2, vec![1, 6]));
        assert_eq!(snf(&[vec![0, 0], vec![0, 0]]), (0, vec![]));
        assert_eq!(snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), (3, vec![2, 6, 12]));
        assert_eq!(snf(&[vec![6, 4], vec![4, 6]]), (2, vec![2, 10]));
        assert_eq!(snf(&[]), (0, vec![]));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        // eliminating with the unit pivot computes 1 - big^2
        let s = smith_normal_form(&IntMatrix::from_i64_rows(&[vec![1, big], vec![big, 1]]));
        assert_eq!(s.rank, 2);
        let b = BigUint::from(big as u64);
        assert_eq!(s.invariant_factors, vec![BigUint::one(), &b * &b - 1u32]);
    }

    #[test]
    fn diagonal_normalization() {
        let s = normalize(vec![4u32, 6, 1, 9].into_iter().map(BigUint::from).collect());
        let f: Vec<u32> = s.invariant_factors.iter().map(|d| u32::try_from(d).unwrap()).collect();
        assert_eq!(f, vec![1, 1, 6, 36]);
        assert_eq!(s.torsion().len(), 2);
    }
}
