//! Exact dense linear algebra over a [`Field`]: reduced row echelon form,
//! rank, nullspace and solving.
//!
//! Pivot rows are chosen by sparsity (fewest nonzeros, lowest index on ties),
//! so results are deterministic for a given input.

use crate::field::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// A matrix in reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    pub matrix: Matrix<K>,
    /// `pivots[r]` is the pivot column of row `r`, for `r < rank`.
    pub pivots: Vec<usize>,
}

impl<K: Field> Echelon<K> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.matrix.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// One kernel vector per free column `f`, with a `1` at `f` and zeros at
    /// the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<K::Elem>> {
        let field = self.matrix.field;
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![field.zero(); self.matrix.cols];
                v[f] = field.one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = field.neg(self.matrix.get(r, f));
                }
                v
            })
            .collect()
    }
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Self {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: K, rows: usize, columns: &[Vec<K::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> K {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(self.get(r, c), &v[c])))
            })
            .collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !self.field.is_zero(v)).count()
    }

    fn row_nonzeros(&self, r: usize) -> usize {
        self.data[r * self.cols..(r + 1) * self.cols]
            .iter()
            .filter(|v| !self.field.is_zero(v))
            .count()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form, eliminating only within the first
    /// `pivot_limit` columns.
    fn echelon_limited(mut self, pivot_limit: usize) -> Echelon<K> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_limit.min(self.cols) {
            if row == self.rows {
                break;
            }
            let candidate = (row..self.rows)
                .filter(|&r| !f.is_zero(self.get(r, col)))
                .min_by_key(|&r| (self.row_nonzeros(r), r));
            let Some(p) = candidate else { continue };
            self.swap_rows(row, p);
            let inv = f.inv(self.get(row, col)).expect("nonzero pivot");
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            let pivot_row: Vec<K::Elem> = self.data[row * self.cols..(row + 1) * self.cols].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..self.cols {
                    if f.is_zero(&pivot_row[c]) {
                        continue;
                    }
                    let v = f.sub(self.get(r, c), &f.mul(&factor, &pivot_row[c]));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon {
            matrix: self,
            pivots,
        }
    }

    pub fn echelon(self) -> Echelon<K> {
        let cols = self.cols;
        self.echelon_limited(cols)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().rank()
    }

    /// A basis of `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<K::Elem>> {
        self.clone().echelon().nullspace()
    }

    /// Some solution of `A x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let ech = aug.echelon_limited(self.cols);
        let rank = ech.rank();
        if (rank..self.rows).any(|r| !f.is_zero(ech.matrix.get(r, self.cols))) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.matrix.get(r, self.cols).clone();
        }
        Some(x)
    }
}

impl<K: Field> std::fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.format(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qmat(rows: &[&[i64]]) -> Matrix<Rationals> {
        let cols = rows[0].len();
        Matrix::from_rows(
            Rationals,
            rows.iter().map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let m = qmat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|v| Rationals.is_zero(v)));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = qmat(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b: Vec<_> = [3, 1, 4].iter().map(|&v| Rationals.from_i64(v)).collect();
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let bad: Vec<_> = [3, 1, 5].iter().map(|&v| Rationals.from_i64(v)).collect();
        assert!(m.solve(&bad).is_none());
    }

    #[test]
    fn prime_field_rank_can_drop() {
        let f = PrimeField::new(5).unwrap();
        // det = 5 over the integers
        let m = Matrix::from_rows(f, vec![vec![1, 2], vec![3, 11 % 5]], 2);
        assert_eq!(m.rank(), 1);
        let q = qmat(&[&[1, 2], &[3, 11]]);
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn empty_shapes() {
        let m: Matrix<Rationals> = Matrix::zeros(Rationals, 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().len(), 3);
        let m: Matrix<Rationals> = Matrix::zeros(Rationals, 4, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.nullspace().is_empty());
        assert_eq!(m.solve(&vec![Rationals.from_i64(0); 4]), Some(vec![]));
    }

    #[test]
    fn transpose_preserves_rank() {
        let m = qmat(&[&[1, 2, 3, 4], &[0, 1, 1, 0]]);
        assert_eq!(m.transpose().rank(), m.rank());
        assert_eq!(m.transpose().column(0), vec![1, 2, 3, 4].into_iter().map(|v| Rationals.from_i64(v)).collect::<Vec<_>>());
    }
}
