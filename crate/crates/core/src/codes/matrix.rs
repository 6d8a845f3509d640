use std::fmt;

use crate::gf::{Fe, Field};

use super::CodeError;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        write!(f, "{}", self.to_text())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    /// Build from rows of canonical integers; every entry must lie in the field.
    pub fn from_ints(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<Self, CodeError> {
        let fe_rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Fe(v)).collect())
            .collect();
        Matrix::from_rows(field, cols, fe_rows)
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Fe>>) -> Result<Self, CodeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(CodeError::Shape {
                    expected: cols,
                    found: row.len(),
                });
            }
            for x in row {
                field.check(x)?;
                data.push(x);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Fe]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_ints(&self) -> Vec<Vec<u32>> {
        self.rows()
            .map(|r| r.iter().map(|x| x.0).collect())
            .collect()
    }

    /// One row per line, entries as space separated canonical integers.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(|x| x.0.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn push_row(&mut self, row: &[Fe]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, CodeError> {
        self.field.same_field(&other.field)?;
        if self.cols != other.rows {
            return Err(CodeError::Shape {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Restrict to the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)];
            }
        }
        out
    }

    /// Multiply column `j` by `scale[j]`.
    pub fn scale_columns(&self, scale: &[Fe]) -> Matrix {
        assert_eq!(scale.len(), self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for (x, &s) in out.row_mut(i).iter_mut().zip(scale) {
                *x = self.field.mul(*x, s);
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the rank. Pivots are taken
    /// column by column from the left, using the topmost available row.
    pub fn rref(&mut self) -> usize {
        let f = self.field.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            let inv = f.inv(self[(rank, col)]).expect("pivot is nonzero");
            for x in self.row_mut(rank) {
                *x = f.mul(*x, inv);
            }
            let pivot_row = self.row(rank).to_vec();
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self[(r, col)];
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for (x, &p) in self.row_mut(r).iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = f.add(*x, f.mul(neg, p));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.clone().rref()
    }

    /// Pivot column of each nonzero row of a matrix already in RREF.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows()
            .filter_map(|r| r.iter().position(|x| !x.is_zero()))
            .collect()
    }

    /// Drop all-zero rows.
    pub fn drop_zero_rows(&mut self) {
        let keep: Vec<Fe> = self
            .rows()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .flat_map(|r| r.iter().copied())
            .collect();
        self.rows = keep.len() / self.cols.max(1);
        if self.cols == 0 {
            self.rows = 0;
        }
        self.data = keep;
    }

    /// Basis of the right nullspace `{x : M x = 0}` in the standard form read
    /// off the RREF: one vector per free column, ordered by that column.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let mut r = self.clone();
        let rank = r.rref();
        let pivots: Vec<usize> = r.pivots();
        debug_assert_eq!(pivots.len(), rank);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Matrix::zeros(f, 0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r[(i, free)]);
            }
            out.push_row(&v);
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}
