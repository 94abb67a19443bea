//! Exact linear algebra over F_p: rank, null space, span dimension.
//!
//! Storage is dense row-major by default; construction from triplets picks a
//! sparse row representation when the fill is under 5% and the matrix is big
//! enough for it to matter. Both elimination paths use the leftmost-pivot
//! scan, and kernel bases are returned in reduced-echelon normal form so the
//! output for a given subspace is unique regardless of path.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use std::collections::HashMap;

const SPARSE_THRESHOLD_CELLS: usize = 1 << 16;
const SPARSE_MAX_DENSITY: f64 = 0.05;

/// Sorted (index, value) pairs; values canonical and nonzero.
#[derive(Clone, Debug, Default)]
pub struct SparseVec(pub Vec<(u32, u32)>);

impl SparseVec {
    fn leading(&self) -> Option<(u32, u32)> {
        self.0.first().copied()
    }

    fn scale(&mut self, c: u32, f: PrimeField) {
        for (_, v) in &mut self.0 {
            *v = f.mul(*v, c);
        }
    }

    /// self := self - c * other
    fn axpy_sub(&mut self, c: u32, other: &SparseVec, f: PrimeField) {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 < b[j].0 {
                out.push(a[i]);
                i += 1;
            } else if a[i].0 > b[j].0 {
                out.push((b[j].0, f.neg(f.mul(c, b[j].1))));
                j += 1;
            } else {
                let v = f.sub(a[i].1, f.mul(c, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        for &(idx, v) in &b[j..] {
            out.push((idx, f.neg(f.mul(c, v))));
        }
        self.0 = out;
    }
}

/// Online row reducer: feed vectors one at a time, tracks an independent
/// monic set keyed by leading index. Used for sparse rank and for
/// incremental span accumulation during point enumeration.
pub struct OnlineReducer {
    field: PrimeField,
    by_lead: HashMap<u32, usize>,
    rows: Vec<SparseVec>,
}

impl OnlineReducer {
    pub fn new(field: PrimeField) -> Self {
        OnlineReducer {
            field,
            by_lead: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns true when the vector was independent of everything seen so far.
    pub fn offer(&mut self, mut v: SparseVec) -> bool {
        let f = self.field;
        loop {
            let Some((lead, lc)) = v.leading() else {
                return false;
            };
            match self.by_lead.get(&lead) {
                Some(&i) => {
                    v.axpy_sub(lc, &self.rows[i], f);
                }
                None => {
                    let inv = f.inv(lc).expect("leading coefficient nonzero");
                    v.scale(inv, f);
                    self.by_lead.insert(lead, self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
    }

    pub fn offer_dense(&mut self, v: &[u32]) -> bool {
        let sv = SparseVec(
            v.iter()
                .enumerate()
                .filter(|&(_, &x)| x != 0)
                .map(|(i, &x)| (i as u32, x))
                .collect(),
        );
        self.offer(sv)
    }

    /// Fully back-reduced rows as dense vectors: the unique reduced-echelon
    /// basis of the row space, ordered by pivot column.
    pub fn reduced_rows(&self, width: usize) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].leading().unwrap().0);
        let mut rows: Vec<SparseVec> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivot_pos: HashMap<u32, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.leading().unwrap().0, i))
            .collect();
        // Back-substitute from the bottom up. Once a row is final its support
        // is its own pivot plus free columns, so clearing one pivot entry from
        // an earlier row never introduces another and a single sweep settles it.
        for i in (0..rows.len()).rev() {
            loop {
                let hit = rows[i].0[1..]
                    .iter()
                    .find_map(|&(idx, c)| pivot_pos.get(&idx).map(|&j| (j, c)));
                match hit {
                    Some((j, c)) => {
                        let (head, tail) = rows.split_at_mut(j);
                        head[i].axpy_sub(c, &tail[0], f);
                    }
                    None => break,
                }
            }
        }
        rows.iter()
            .map(|r| {
                let mut d = vec![0u32; width];
                for &(idx, v) in &r.0 {
                    d[idx as usize] = v;
                }
                d
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<u32>),
    Sparse(Vec<SparseVec>),
}

#[derive(Clone, Debug)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Storage,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: Storage::Dense(vec![0; rows * cols]),
        }
    }

    pub fn from_dense_rows(field: PrimeField, rows: Vec<Vec<u32>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let p = field.modulus();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::Shape("ragged rows".into()));
            }
            for &v in r {
                data.push(v % p);
            }
        }
        Ok(FpMatrix {
            field,
            rows: nrows,
            cols: ncols,
            data: Storage::Dense(data),
        })
    }

    /// Build from (row, col, value) triplets, summing duplicates; selects
    /// sparse storage when the matrix is large and fill is below 5%.
    pub fn from_entries(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: &[(u32, u32, u32)],
    ) -> Result<Self> {
        for &(r, c, _) in entries {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
        }
        let cells = rows.saturating_mul(cols);
        let sparse = cells >= SPARSE_THRESHOLD_CELLS
            && (entries.len() as f64) < SPARSE_MAX_DENSITY * cells as f64;
        if sparse {
            let mut buckets: Vec<Vec<(u32, u32)>> = vec![Vec::new(); rows];
            for &(r, c, v) in entries {
                buckets[r as usize].push((c, v % field.modulus()));
            }
            let rows_sp = buckets
                .into_iter()
                .map(|mut b| {
                    b.sort_by_key(|&(c, _)| c);
                    let mut merged: Vec<(u32, u32)> = Vec::with_capacity(b.len());
                    for (c, v) in b {
                        match merged.last_mut() {
                            Some((lc, lv)) if *lc == c => *lv = field.add(*lv, v),
                            _ => merged.push((c, v)),
                        }
                    }
                    merged.retain(|&(_, v)| v != 0);
                    SparseVec(merged)
                })
                .collect();
            Ok(FpMatrix {
                field,
                rows,
                cols,
                data: Storage::Sparse(rows_sp),
            })
        } else {
            let mut data = vec![0u32; cells];
            for &(r, c, v) in entries {
                let slot = &mut data[r as usize * cols + c as usize];
                *slot = field.add(*slot, v % field.modulus());
            }
            Ok(FpMatrix {
                field,
                rows,
                cols,
                data: Storage::Dense(data),
            })
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.data, Storage::Sparse(_))
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        match &self.data {
            Storage::Dense(d) => d[r * self.cols + c],
            Storage::Sparse(rows) => rows[r]
                .0
                .iter()
                .find(|&&(idx, _)| idx as usize == c)
                .map(|&(_, v)| v)
                .unwrap_or(0),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        match &mut self.data {
            Storage::Dense(d) => d[r * self.cols + c] = v % self.field.modulus(),
            Storage::Sparse(_) => panic!("set on sparse storage"),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.data {
            Storage::Dense(_) => {
                let mut rows = self.dense_rows();
                rref(self.field, &mut rows).len()
            }
            Storage::Sparse(rows) => {
                let mut red = OnlineReducer::new(self.field);
                for r in rows {
                    red.offer(r.clone());
                }
                red.rank()
            }
        }
    }

    /// Null-space basis in the canonical free-column normal form: one basis
    /// vector per non-pivot column, carrying 1 there and 0 at every other
    /// non-pivot column. Unique for a given kernel, whatever the storage.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        match &self.data {
            Storage::Dense(_) => {
                let mut rows = self.dense_rows();
                let pivots = rref(self.field, &mut rows);
                kernel_from_rref(self.field, &rows, &pivots, self.cols)
            }
            Storage::Sparse(rows) => self.kernel_sparse(rows),
        }
    }

    fn dense_rows(&self) -> Vec<Vec<u32>> {
        match &self.data {
            Storage::Dense(d) => d.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect(),
            Storage::Sparse(rows) => rows
                .iter()
                .map(|r| {
                    let mut d = vec![0u32; self.cols];
                    for &(idx, v) in &r.0 {
                        d[idx as usize] = v;
                    }
                    d
                })
                .collect(),
        }
    }

    /// Column-history elimination: reduce each column against the stored
    /// echelon set while tracking the combination; a column that dies yields
    /// a kernel vector.
    fn kernel_sparse(&self, rows: &[SparseVec]) -> Vec<Vec<u32>> {
        let f = self.field;
        // transpose to columns
        let mut cols: Vec<SparseVec> = vec![SparseVec::default(); self.cols];
        for (r, row) in rows.iter().enumerate() {
            for &(c, v) in &row.0 {
                cols[c as usize].0.push((r as u32, v));
            }
        }
        let mut by_lead: HashMap<u32, usize> = HashMap::new();
        let mut store: Vec<(SparseVec, SparseVec)> = Vec::new(); // (column, history)
        let mut kernel = Vec::new();
        for (j, col) in cols.into_iter().enumerate() {
            let mut v = col;
            let mut h = SparseVec(vec![(j as u32, 1)]);
            loop {
                match v.leading() {
                    None => {
                        let mut dense = vec![0u32; self.cols];
                        for &(idx, val) in &h.0 {
                            dense[idx as usize] = val;
                        }
                        kernel.push(dense);
                        break;
                    }
                    Some((lead, lc)) => match by_lead.get(&lead) {
                        Some(&i) => {
                            let (pv, ph) = &store[i];
                            v.axpy_sub(lc, pv, f);
                            h.axpy_sub(lc, ph, f);
                        }
                        None => {
                            let inv = f.inv(lc).expect("nonzero");
                            v.scale(inv, f);
                            h.scale(inv, f);
                            by_lead.insert(lead, store.len());
                            store.push((v, h));
                            break;
                        }
                    },
                }
            }
        }
        kernel
    }
}

/// In-place reduced row echelon form; returns pivot column indices in order.
pub fn rref(field: PrimeField, rows: &mut [Vec<u32>]) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(src) = (next_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next_row, src);
        let inv = field.inv(rows[next_row][col]).expect("pivot nonzero");
        if inv != 1 {
            for v in rows[next_row].iter_mut() {
                *v = field.mul(*v, inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[next_row]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row || row.is_empty() {
                continue;
            }
            let c = row[col];
            if c != 0 {
                for (dst, &src_v) in row.iter_mut().zip(&pivot_row) {
                    *dst = field.sub(*dst, field.mul(c, src_v));
                }
            }
        }
        rows[next_row] = pivot_row;
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}

fn kernel_from_rref(
    field: PrimeField,
    rows: &[Vec<u32>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<u32>> {
    let pivot_set: HashMap<usize, usize> =
        pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains_key(&free) {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(rows[i][free]);
        }
        out.push(v);
    }
    out
}

/// Dimension of the span of a list of vectors.
pub fn span_dim(field: PrimeField, vectors: &[Vec<u32>]) -> usize {
    let mut red = OnlineReducer::new(field);
    for v in vectors {
        red.offer_dense(v);
    }
    red.rank()
}

/// Unique reduced-echelon basis of the span.
pub fn reduced_span(field: PrimeField, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let width = vectors.first().map(|v| v.len()).unwrap_or(0);
    let mut red = OnlineReducer::new(field);
    for v in vectors {
        red.offer_dense(v);
    }
    red.reduced_rows(width)
}

/// Solve `A x = rhs` where `a_rows` are the rows of A. Returns the solution
/// with free coordinates set to zero, or None when inconsistent.
pub fn solve_linear(field: PrimeField, a_rows: &[Vec<u32>], rhs: &[u32]) -> Option<Vec<u32>> {
    if a_rows.len() != rhs.len() {
        return None;
    }
    let cols = a_rows.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Vec<Vec<u32>> = a_rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.clone();
            row.push(b % field.modulus());
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&cols) {
        return None; // pivot in the constant column: inconsistent
    }
    let mut x = vec![0u32; cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f31() -> PrimeField {
        PrimeField::new(31).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, f: PrimeField, r: usize, c: usize) -> Vec<Vec<u32>> {
        (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(0..f.modulus())).collect())
            .collect()
    }

    #[test]
    fn rank_basics() {
        let f = f31();
        assert_eq!(FpMatrix::zeros(f, 5, 5).rank(), 0);
        let id = FpMatrix::from_dense_rows(
            f,
            (0..7)
                .map(|i| (0..7).map(|j| u32::from(i == j)).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(id.rank(), 7);
    }

    #[test]
    fn kernel_of_identity_is_empty_and_textbook_case() {
        let f5 = PrimeField::new(5).unwrap();
        let id = FpMatrix::from_dense_rows(f5, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(id.kernel_basis().is_empty());
        let m = FpMatrix::from_dense_rows(f5, vec![vec![1, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![4, 1]]);
    }

    #[test]
    fn rank_nullity_random_dense() {
        let f = f31();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let r = rng.gen_range(1..9);
            let c = rng.gen_range(1..9);
            let m = FpMatrix::from_dense_rows(f, random_matrix(&mut rng, f, r, c)).unwrap();
            let rank = m.rank();
            let kernel = m.kernel_basis();
            assert_eq!(rank + kernel.len(), c, "rank-nullity");
            // every kernel vector really is in the null space
            for v in &kernel {
                for row in 0..r {
                    let dot = (0..c).fold(0u32, |acc, j| {
                        f.add(acc, f.mul(m.get(row, j), v[j]))
                    });
                    assert_eq!(dot, 0);
                }
            }
        }
    }

    #[test]
    fn sparse_and_dense_agree() {
        let f = f31();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // band matrix with low density, large enough to trip sparse storage
        let (r, c) = (400, 300);
        let mut entries = Vec::new();
        for i in 0..r {
            for _ in 0..3 {
                let j = rng.gen_range(0..c);
                entries.push((i as u32, j as u32, rng.gen_range(1..31)));
            }
        }
        let sp = FpMatrix::from_entries(f, r, c, &entries).unwrap();
        assert!(sp.is_sparse());
        let dn = FpMatrix::from_dense_rows(f, sp_to_dense(&sp)).unwrap();
        assert!(!dn.is_sparse());
        assert_eq!(sp.rank(), dn.rank());
        assert_eq!(sp.kernel_basis(), dn.kernel_basis());
    }

    fn sp_to_dense(m: &FpMatrix) -> Vec<Vec<u32>> {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m.get(i, j)).collect())
            .collect()
    }

    #[test]
    fn rank_vs_minor_expansion_oracle() {
        // Independent oracle: rank of a small matrix = size of the largest
        // nonvanishing minor, minors computed by Laplace expansion.
        fn det_laplace(f: PrimeField, m: &[Vec<u32>]) -> u32 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            let mut acc = 0u32;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let sub: Vec<Vec<u32>> = (1..n)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[r][c])
                            .collect()
                    })
                    .collect();
                let cof = f.mul(m[0][j], det_laplace(f, &sub));
                acc = if j % 2 == 0 { f.add(acc, cof) } else { f.sub(acc, cof) };
            }
            acc
        }
        fn brute_rank(f: PrimeField, m: &[Vec<u32>]) -> usize {
            let n = m.len();
            let c = m[0].len();
            for k in (1..=n.min(c)).rev() {
                for rows in crate::monomial::combinations(n, k) {
                    for cols in crate::monomial::combinations(c, k) {
                        let sub: Vec<Vec<u32>> = rows
                            .iter()
                            .map(|&r| cols.iter().map(|&cc| m[r as usize][cc as usize]).collect())
                            .collect();
                        if det_laplace(f, &sub) != 0 {
                            return k;
                        }
                    }
                }
            }
            0
        }
        let f = f31();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..5);
            // bias toward singular matrices: sometimes duplicate a row
            let mut rows = random_matrix(&mut rng, f, r, c);
            if r > 1 && rng.gen_bool(0.5) {
                rows[r - 1] = rows[0].clone();
            }
            let m = FpMatrix::from_dense_rows(f, rows.clone()).unwrap();
            assert_eq!(m.rank(), brute_rank(f, &rows));
        }
        // and on 4x4 leading blocks of larger random matrices
        for _ in 0..20 {
            let rows = random_matrix(&mut rng, f, 10, 10);
            let lead: Vec<Vec<u32>> = rows[..4].iter().map(|r| r[..4].to_vec()).collect();
            let m = FpMatrix::from_dense_rows(f, rows.clone()).unwrap();
            assert!(m.rank() >= brute_rank(f, &lead));
        }
    }

    #[test]
    fn span_is_order_independent() {
        let f = f31();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vecs: Vec<Vec<u32>> = (0..8).map(|_| (0..5).map(|_| rng.gen_range(0..31)).collect()).collect();
        let base = reduced_span(f, &vecs);
        let mut shuffled = vecs.clone();
        shuffled.reverse();
        shuffled.swap(0, 3);
        assert_eq!(reduced_span(f, &shuffled), base);
        assert_eq!(span_dim(f, &vecs), base.len());
    }

    #[test]
    fn solve_linear_examples() {
        let f = f31();
        // 2x + 3y = 8, x + y = 3  ->  x = 1, y = 2
        let a = vec![vec![2, 3], vec![1, 1]];
        assert_eq!(solve_linear(f, &a, &[8, 3]), Some(vec![1, 2]));
        // inconsistent
        let b = vec![vec![1, 1], vec![2, 2]];
        assert_eq!(solve_linear(f, &b, &[1, 3]), None);
    }
}
