//! Exact linear algebra over a [`Field`].
//!
//! Dense elimination for the small per-bidegree matrices of the cochain
//! complex, sparse elimination for the bar-complex oracle.

use std::collections::BTreeMap;

use crate::coefficients::Field;

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: F) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].clone() + x;
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let x = self.get(r, j).clone() * inv.clone();
                self.set(r, j, x);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let x = self.get(i, j).clone() - f.clone() * self.get(r, j).clone();
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Some `x` with `self · x = rhs`, if one exists.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(F::zero(), |acc, j| {
                    acc + self.get(i, j).clone() * x[j].clone()
                })
            })
            .collect()
    }
}

/// A sparse matrix stored by rows; only used for its rank.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix<F> {
    cols: usize,
    rows: Vec<BTreeMap<usize, F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn push_row(&mut self, row: BTreeMap<usize, F>) {
        debug_assert!(row.keys().all(|&j| j < self.cols));
        let row: BTreeMap<usize, F> = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Rank by elimination; rows are consumed shortest-first to limit fill-in.
    pub fn rank(&self) -> usize {
        let mut pending: Vec<BTreeMap<usize, F>> = self.rows.clone();
        // pivot column -> normalized row with leading entry 1 at that column
        let mut basis: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
        pending.sort_by_key(|r| std::cmp::Reverse(r.len()));
        while let Some(mut row) = pending.pop() {
            loop {
                let Some((&lead, c)) = row.iter().next() else { break };
                let c = c.clone();
                match basis.get(&lead) {
                    Some(p) => {
                        for (&j, x) in p {
                            let slot = row.entry(j).or_insert_with(F::zero);
                            *slot = slot.clone() - c.clone() * x.clone();
                            if slot.is_zero() {
                                row.remove(&j);
                            }
                        }
                    }
                    None => {
                        let inv = c.inv().expect("nonzero lead");
                        for x in row.values_mut() {
                            *x = x.clone() * inv.clone();
                        }
                        basis.insert(lead, row);
                        break;
                    }
                }
            }
        }
        basis.len()
    }
}
