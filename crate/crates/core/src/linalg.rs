//! Small dense matrices over a [`FieldCtx`], acting on row vectors from the right.

use crate::field::FieldCtx;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix { n, data }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Places `block` with its top-left corner at `(offset, offset)`.
    pub fn with_block(mut self, offset: usize, block: &Matrix) -> Self {
        for i in 0..block.n {
            for j in 0..block.n {
                self.set(offset + i, offset + j, block.get(i, j));
            }
        }
        self
    }

    pub fn mul(&self, other: &Matrix, f: &FieldCtx) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(a, other.get(k, j));
                    data[i * n + j] = f.add(data[i * n + j], t);
                }
            }
        }
        Matrix { n, data }
    }

    /// Row vector times matrix, written into `out`.
    #[inline]
    pub fn apply_into(&self, x: &[u32], out: &mut [u32], f: &FieldCtx) {
        let n = self.n;
        out[..n].fill(0);
        for (i, &xi) in x.iter().enumerate().take(n) {
            if xi == 0 {
                continue;
            }
            let row = self.row(i);
            for j in 0..n {
                if row[j] != 0 {
                    out[j] = f.add(out[j], f.mul(xi, row[j]));
                }
            }
        }
    }

    pub fn apply(&self, x: &[u32], f: &FieldCtx) -> Vec<u32> {
        let mut out = vec![0; self.n];
        self.apply_into(x, &mut out, f);
        out
    }

    pub fn inverse(&self, f: &FieldCtx) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let s = f.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), s));
                inv.set(col, j, f.mul(inv.get(col, j), s));
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(a.get(r, j), f.mul(c, a.get(col, j)));
                    a.set(r, j, v);
                    let w = f.sub(inv.get(r, j), f.mul(c, inv.get(col, j)));
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<u32>], f: &FieldCtx) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let s = f.inv(m[rank][col]).unwrap();
        let pivot_row: Vec<u32> = m[rank].iter().map(|&v| f.mul(v, s)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = f.sub(*v, f.mul(c, pv));
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}
