use std::fmt::Write as _;

use super::{LinError, PrimeField};

/// A sparse column vector: `(row, value)` pairs sorted by row, no zero values.
pub type SparseVec = Vec<(usize, u32)>;

/// `a + c * b` for sorted sparse vectors.
pub fn axpy(field: &PrimeField, a: &[(usize, u32)], c: u32, b: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse matrix over a prime field, stored by columns.
///
/// Column `c` holds the image of the `c`-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, 1 % field.ell())]).collect();
        SparseMatrix {
            field,
            rows: n,
            cols: n,
            columns,
        }
    }

    /// Build from `(row, col, value)` triplets; duplicate positions are summed.
    pub fn from_triplets(
        field: PrimeField,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self, LinError> {
        let mut buckets: Vec<Vec<(usize, u32)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinError::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            buckets[c].push((r, v % field.ell()));
        }
        let columns = buckets
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by_key(|e| e.0);
                let mut col: SparseVec = Vec::with_capacity(b.len());
                for (r, v) in b {
                    match col.last_mut() {
                        Some(last) if last.0 == r => last.1 = field.add(last.1, v),
                        _ => col.push((r, v)),
                    }
                }
                col.retain(|e| e.1 != 0);
                col
            })
            .collect();
        Ok(SparseMatrix {
            field,
            rows,
            cols,
            columns,
        })
    }

    /// Build from already-normalized columns. Panics if a column is unsorted,
    /// holds a zero, or points outside `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: Vec<SparseVec>) -> Self {
        for col in &columns {
            assert!(col.windows(2).all(|w| w[0].0 < w[1].0), "unsorted column");
            assert!(col
                .iter()
                .all(|e| e.1 != 0 && e.1 < field.ell() && e.0 < rows));
        }
        let cols = columns.len();
        SparseMatrix {
            field,
            rows,
            cols,
            columns,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, u32)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.columns[c][k].1,
            Err(_) => 0,
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c, v));
        }
        SparseMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// Apply the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, u32)]) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for &(c, x) in v {
            acc = axpy(&self.field, &acc, x, &self.columns[c]);
        }
        acc
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinError> {
        if self.cols != rhs.rows {
            return Err(LinError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let columns = rhs.columns.iter().map(|col| self.apply(col)).collect();
        Ok(SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }

    /// `self + c * rhs`.
    pub fn add_scaled(&self, c: u32, rhs: &SparseMatrix) -> Result<SparseMatrix, LinError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(LinError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| axpy(&self.field, a, c, b))
            .collect();
        Ok(SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            columns,
        })
    }

    /// Columns of `self` followed by columns of `rhs`.
    pub fn hstack(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinError> {
        if self.rows != rhs.rows {
            return Err(LinError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Ok(SparseMatrix {
            field: self.field,
            rows: self.rows,
            cols: columns.len(),
            columns,
        })
    }

    /// Keep only the given rows, renumbered in the order listed.
    pub fn select_rows(&self, keep: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.rows];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let mut out: SparseVec = col
                    .iter()
                    .filter(|e| map[e.0] != usize::MAX)
                    .map(|&(r, v)| (map[r], v))
                    .collect();
                out.sort_unstable_by_key(|e| e.0);
                out
            })
            .collect();
        SparseMatrix {
            field: self.field,
            rows: keep.len(),
            cols: self.cols,
            columns,
        }
    }

    /// Permute rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let triplets = self
            .triplets()
            .map(|(r, c, v)| (row_perm[r], col_perm[c], v));
        SparseMatrix::from_triplets(
            self.field,
            self.rows,
            self.cols,
            triplets.collect::<Vec<_>>(),
        )
        .expect("permutation stays in range")
    }

    /// Column-reduce; returns the pivot count and, when `track` is set, the
    /// column combinations that reduce to zero (a kernel basis).
    fn reduce(&self, track: bool) -> (usize, Vec<SparseVec>) {
        let f = &self.field;
        let mut pivots: Vec<Option<(SparseVec, SparseVec)>> = vec![None; self.rows];
        let mut rank = 0;
        let mut kernel = Vec::new();
        for (c, col) in self.columns.iter().enumerate() {
            if !track && rank == self.rows {
                break;
            }
            let mut v = col.clone();
            let mut combo: SparseVec = if track {
                vec![(c, 1 % f.ell())]
            } else {
                Vec::new()
            };
            while let Some(&(low, val)) = v.last() {
                match &pivots[low] {
                    Some((pv, pcombo)) => {
                        let pval = pv.last().expect("pivot column nonempty").1;
                        let factor = f.neg(f.mul(val, f.inv(pval)));
                        v = axpy(f, &v, factor, pv);
                        if track {
                            combo = axpy(f, &combo, factor, pcombo);
                        }
                    }
                    None => break,
                }
            }
            match v.last() {
                Some(&(low, _)) => {
                    pivots[low] = Some((v, combo));
                    rank += 1;
                }
                None => {
                    if track {
                        kernel.push(combo);
                    }
                }
            }
        }
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        if self.cols > self.rows {
            self.transpose().reduce(false).0
        } else {
            self.reduce(false).0
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the kernel, as the columns of a `cols x k` matrix.
    pub fn kernel_basis(&self) -> SparseMatrix {
        let (_, kernel) = self.reduce(true);
        SparseMatrix::from_columns(self.field, self.cols, kernel)
    }

    /// Sparse-triplet text: a header line `shape <rows> <cols> modulus <ell>`
    /// followed by one `row col value` line per nonzero entry, column-major.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!(
            "shape {} {} modulus {}\n",
            self.rows,
            self.cols,
            self.field.ell()
        );
        for (r, c, v) in self.triplets() {
            writeln!(out, "{r} {c} {v}").expect("writing to a String");
        }
        out
    }

    pub fn from_triplet_text(text: &str) -> Result<SparseMatrix, LinError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| LinError::Parse("empty input".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 5 || h[0] != "shape" || h[3] != "modulus" {
            return Err(LinError::Parse(format!("bad header `{header}`")));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| LinError::Parse(format!("`{s}`: {e}")))
        };
        let (rows, cols) = (num(h[1])?, num(h[2])?);
        let field = PrimeField::new(num(h[4])? as u32)?;
        let mut triplets = Vec::new();
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(LinError::Parse(format!("bad entry `{line}`")));
            }
            let v = num(t[2])?;
            if v == 0 || v >= field.ell() as usize {
                return Err(LinError::Parse(format!("value out of range in `{line}`")));
            }
            triplets.push((num(t[0])?, num(t[1])?, v as u32));
        }
        SparseMatrix::from_triplets(field, rows, cols, triplets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn zero_and_identity_ranks() {
        assert_eq!(SparseMatrix::zero(f2(), 4, 4).rank(), 0);
        assert_eq!(SparseMatrix::identity(f2(), 3).rank(), 3);
        assert_eq!(SparseMatrix::identity(f2(), 3).kernel_dim(), 0);
        assert_eq!(SparseMatrix::zero(f2(), 2, 5).kernel_dim(), 5);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2.
        let entries = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 2)];
        let m3 = SparseMatrix::from_triplets(PrimeField::new(3).unwrap(), 2, 2, entries).unwrap();
        assert_eq!(m3.rank(), 2);
        let m2 =
            SparseMatrix::from_triplets(f2(), 2, 2, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
                .unwrap();
        assert_eq!(m2.rank(), 1);
    }

    #[test]
    fn kernel_basis_is_annihilated() {
        let f = PrimeField::new(5).unwrap();
        let m = SparseMatrix::from_triplets(
            f,
            2,
            4,
            [(0, 0, 1), (0, 1, 2), (1, 1, 3), (1, 2, 1), (0, 3, 4)],
        )
        .unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.cols(), m.kernel_dim());
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn duplicate_triplets_are_summed() {
        let m = SparseMatrix::from_triplets(f2(), 1, 1, [(0, 0, 1), (0, 0, 1)]).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn out_of_range_triplet_rejected() {
        assert!(SparseMatrix::from_triplets(f2(), 1, 1, [(1, 0, 1)]).is_err());
    }

    #[test]
    fn triplet_text_round_trip() {
        let f = PrimeField::new(3).unwrap();
        let m = SparseMatrix::from_triplets(f, 3, 2, [(0, 0, 1), (2, 0, 2), (1, 1, 1)]).unwrap();
        let text = m.to_triplet_text();
        assert!(text.starts_with("shape 3 2 modulus 3\n"));
        assert_eq!(SparseMatrix::from_triplet_text(&text).unwrap(), m);
    }
}
