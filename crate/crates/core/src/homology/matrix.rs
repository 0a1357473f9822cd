use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complexes::SimplicialComplex;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Dense(Vec<BigInt>),
    /// Sorted `(column, value)` lists, one per row, without zeros.
    Sparse(Vec<Vec<(usize, BigInt)>>),
}

/// Integer matrix, stored densely or as sparse rows depending on density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

/// Matrices with at least this fraction of nonzero entries are kept dense.
const DENSE_THRESHOLD: f64 = 0.25;

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            storage: Storage::Sparse(vec![Vec::new(); rows]),
        }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions
    /// are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, BigInt)>) -> Self {
        let mut by_row: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            by_row[r].push((c, v));
        }
        for row in &mut by_row {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Self::from_sparse_rows(rows, cols, by_row)
    }

    pub fn from_dense(rows: usize, cols: usize, values: Vec<BigInt>) -> Self {
        assert_eq!(values.len(), rows * cols);
        let sparse = (0..rows)
            .map(|r| {
                (0..cols)
                    .filter(|&c| !values[r * cols + c].is_zero())
                    .map(|c| (c, values[r * cols + c].clone()))
                    .collect()
            })
            .collect();
        Self::from_sparse_rows(rows, cols, sparse)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let values = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&v| BigInt::from(v))
            })
            .collect();
        Self::from_dense(rows.len(), cols, values)
    }

    fn from_sparse_rows(rows: usize, cols: usize, sparse: Vec<Vec<(usize, BigInt)>>) -> Self {
        let nnz: usize = sparse.iter().map(Vec::len).sum();
        let cells = rows * cols;
        let storage = if cells > 0 && nnz as f64 >= DENSE_THRESHOLD * cells as f64 {
            let mut values = vec![BigInt::zero(); cells];
            for (r, row) in sparse.into_iter().enumerate() {
                for (c, v) in row {
                    values[r * cols + c] = v;
                }
            }
            Storage::Dense(values)
        } else {
            Storage::Sparse(sparse)
        };
        IntMatrix { rows, cols, storage }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match &self.storage {
            Storage::Dense(v) => v[r * self.cols + c].clone(),
            Storage::Sparse(rows) => rows[r]
                .binary_search_by_key(&c, |e| e.0)
                .map_or_else(|_| BigInt::zero(), |i| rows[r][i].1.clone()),
        }
    }

    /// Nonzero entries of row `r` in column order.
    pub fn row_entries(&self, r: usize) -> Vec<(usize, BigInt)> {
        match &self.storage {
            Storage::Dense(v) => (0..self.cols)
                .filter(|&c| !v[r * self.cols + c].is_zero())
                .map(|c| (c, v[r * self.cols + c].clone()))
                .collect(),
            Storage::Sparse(rows) => rows[r].clone(),
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(v) => v.iter().filter(|x| !x.is_zero()).count(),
            Storage::Sparse(rows) => rows.iter().map(Vec::len).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn transpose(&self) -> Self {
        let mut t = Vec::with_capacity(self.nnz());
        for r in 0..self.rows {
            for (c, v) in self.row_entries(r) {
                t.push((c, r, v));
            }
        }
        Self::from_triplets(self.cols, self.rows, t)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let other_rows: Vec<Vec<(usize, BigInt)>> = (0..other.rows).map(|r| other.row_entries(r)).collect();
        let mut out = Vec::new();
        for r in 0..self.rows {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (k, a) in self.row_entries(r) {
                for (c, b) in &other_rows[k] {
                    *acc.entry(*c).or_default() += &a * b;
                }
            }
            out.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        Self::from_triplets(self.rows, other.cols, out)
    }

    /// Reorders rows and columns: row `i` of the result is row `row_perm[i]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut col_inv = vec![0; self.cols];
        for (new, &old) in col_perm.iter().enumerate() {
            col_inv[old] = new;
        }
        let mut t = Vec::with_capacity(self.nnz());
        for (new_r, &old_r) in row_perm.iter().enumerate() {
            for (c, v) in self.row_entries(old_r) {
                t.push((new_r, col_inv[c], v));
            }
        }
        Self::from_triplets(self.rows, self.cols, t)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut t = Vec::with_capacity(self.nnz() + other.nnz());
        for r in 0..self.rows {
            t.extend(self.row_entries(r).into_iter().map(|(c, v)| (r, c, v)));
            t.extend(other.row_entries(r).into_iter().map(|(c, v)| (r, c + self.cols, v)));
        }
        Self::from_triplets(self.rows, self.cols + other.cols, t)
    }

    /// Entries as `i64` rows-of-columns, or `None` if some entry does not fit.
    pub(crate) fn to_i64_rows(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        (0..self.rows)
            .map(|r| {
                self.row_entries(r)
                    .into_iter()
                    .map(|(c, v)| i64::try_from(&v).ok().map(|x| (c, x)))
                    .collect()
            })
            .collect()
    }
}

/// Matrix of `∂_n` from `n`-faces (columns) to `(n-1)`-faces (rows), both in
/// lexicographic order, with `∂[v0..vn] = Σ (-1)^i [v0..^vi..vn]`. In reduced
/// mode the empty face is a `(-1)`-cell, so `∂_0` is the augmentation row of
/// ones and `∂_{-1}` is `0 x 1`.
pub fn boundary_matrix(k: &SimplicialComplex, n: isize, reduced: bool) -> Result<IntMatrix> {
    boundary_matrix_with_budget(k, n, reduced, crate::DEFAULT_FACE_BUDGET)
}

pub fn boundary_matrix_with_budget(
    k: &SimplicialComplex,
    n: isize,
    reduced: bool,
    budget: usize,
) -> Result<IntMatrix> {
    let faces = k.faces_with_budget(budget)?;
    let chain_rank = |d: isize| -> usize {
        if d < 0 && !(reduced && d == -1) {
            0
        } else {
            faces.count(d)
        }
    };
    let (rows, cols) = (chain_rank(n - 1), chain_rank(n));
    if rows == 0 || cols == 0 {
        return Ok(IntMatrix::zeros(rows, cols));
    }
    let lower = faces.of_dim(n - 1);
    let index: HashMap<&[usize], usize> = lower.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut triplets = Vec::with_capacity(cols * (n as usize + 1));
    let mut buf = Vec::with_capacity(n as usize + 1);
    for (j, face) in faces.of_dim(n).iter().enumerate() {
        for i in 0..face.len() {
            buf.clear();
            buf.extend(face.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &v)| v));
            let row = index[buf.as_slice()];
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            triplets.push((row, j, sign));
        }
    }
    Ok(IntMatrix::from_triplets(rows, cols, triplets))
}
