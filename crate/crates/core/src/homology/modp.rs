use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// `row -= f * pivot` over F_p, both sorted sparse rows.
fn axpy(row: &[(usize, u64)], f: u64, pivot: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i]);
            i += 1;
        } else if cj < ci {
            out.push((cj, (p - mul_mod(f, pivot[j].1, p)) % p));
            j += 1;
        } else {
            let v = (row[i].1 + p - mul_mod(f, pivot[j].1, p)) % p;
            if v != 0 {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of `m` over `F_p`, for a prime `p < 2^63`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let modulus = BigInt::from(p);
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for r in 0..m.rows() {
        let mut row: Vec<(usize, u64)> = m
            .row_entries(r)
            .into_iter()
            .filter_map(|(c, v)| {
                let x = v.mod_floor(&modulus).to_u64().expect("residue fits");
                (x != 0).then_some((c, x))
            })
            .collect();
        while let Some(&(lead, a)) = row.first() {
            match pivots.get(&lead) {
                Some(piv) => row = axpy(&row, a, piv, p),
                None => {
                    let inv = inv_mod(a, p);
                    for e in &mut row {
                        e.1 = mul_mod(e.1, inv, p);
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_depend_on_characteristic() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
        let m = IntMatrix::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]);
        assert_eq!(rank_mod_p(&m, 2), 2);
        assert_eq!(rank_mod_p(&m, 7), 2);
        assert_eq!(rank_mod_p(&IntMatrix::zeros(3, 0), 2), 0);
    }
}
