use alloc::vec::Vec;

use crate::field::PrimeField;

/// Dense matrix over a prime field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMatrix {
            rows,
            cols,
            data: alloc::vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        FMatrix { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, f: PrimeField, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        out[(i, j)] = f.add(out[(i, j)], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: PrimeField, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self[(i, j)], v[j]));
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let factor = self[(i, c)];
                    for j in c..self.cols {
                        let sub = f.mul(factor, self[(r, j)]);
                        self[(i, j)] = f.sub(self[(i, j)], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: PrimeField) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the right nullspace (solutions of `A x = 0`).
    pub fn nullspace(&self, f: PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = alloc::vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = alloc::vec![0u32; self.cols];
            v[free] = 1;
            for (ri, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m[(ri, free)]);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, if consistent.
    pub fn solve(&self, f: PrimeField, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = alloc::vec![0u32; self.cols];
        for (ri, &p) in pivots.iter().enumerate() {
            x[p] = aug[(ri, self.cols)];
        }
        Some(x)
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

impl core::ops::Index<(usize, usize)> for FMatrix {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for FMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        &mut self.data[i * self.cols + j]
    }
}
