//! Dense exact linear algebra over the coefficient field: rank, nullspace,
//! solving, and quotient-space bookkeeping for homology classes.

use crate::field::{Field, Scalar};

/// Row-major dense matrix over a fixed field.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        debug_assert!(rows.iter().all(|row| row.len() == c));
        Mat { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.at(k, j));
                    *out.at_mut(i, j) = f.add(out.at(i, j), &prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let prod = f.mul(self.at(i, j), &v[j]);
                out[i] = f.add(&out[i], &prod);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Paste columns side by side; all blocks must share the row count.
    pub fn hstack(field: Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for i in 0..rows {
                for j in 0..b.cols {
                    *out.at_mut(i, off + j) = b.at(i, j).clone();
                }
            }
            off += b.cols;
        }
        out
    }

    /// Stack on top of each other; all blocks must share the column count.
    pub fn vstack(field: Field, blocks: &[&Mat]) -> Mat {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            for i in 0..b.rows {
                for j in 0..cols {
                    *out.at_mut(off + i, j) = b.at(i, j).clone();
                }
            }
            off += b.rows;
        }
        out
    }
}

/// Result of row reduction: the reduced matrix plus pivot column indices.
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form by exact Gauss-Jordan.
pub fn rref(m: &Mat) -> Rref {
    let f = m.field;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !f.is_zero(a.at(i, col))) else {
            continue;
        };
        for j in 0..a.cols {
            let (lo, hi) = (row.min(p), row.max(p));
            if lo != hi {
                let idx_a = lo * a.cols + j;
                let idx_b = hi * a.cols + j;
                a.data.swap(idx_a, idx_b);
            }
        }
        let inv = f.inv(a.at(row, col)).expect("pivot nonzero");
        for j in 0..a.cols {
            *a.at_mut(row, j) = f.mul(a.at(row, j), &inv);
        }
        for i in 0..a.rows {
            if i == row || f.is_zero(a.at(i, col)) {
                continue;
            }
            let factor = a.at(i, col).clone();
            for j in 0..a.cols {
                let sub = f.mul(&factor, a.at(row, j));
                *a.at_mut(i, j) = f.sub(a.at(i, j), &sub);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { mat: a, pivots }
}

pub fn rank(m: &Mat) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right nullspace, as columns of a matrix. Free variables are
/// taken in ascending column order, so a column of zeros always contributes
/// its own unit vector.
pub fn nullspace(m: &Mat) -> Mat {
    let f = m.field;
    let r = rref(m);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols];
        for (ri, &c) in r.pivots.iter().enumerate() {
            v[c] = Some(ri);
        }
        v
    };
    let free: Vec<usize> = (0..m.cols).filter(|j| pivot_set[*j].is_none()).collect();
    let mut basis = Mat::zeros(f, m.cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        *basis.at_mut(fc, k) = f.one();
        for (ri, &pc) in r.pivots.iter().enumerate() {
            let coeff = r.mat.at(ri, fc);
            if !f.is_zero(coeff) {
                *basis.at_mut(pc, k) = f.neg(coeff);
            }
        }
    }
    basis
}

/// Solve `A x = b`; `None` when inconsistent.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let f = a.field;
    let mut aug = Mat::zeros(f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            *aug.at_mut(i, j) = a.at(i, j).clone();
        }
        *aug.at_mut(i, a.cols) = b[i].clone();
    }
    let r = rref(&aug);
    if r.pivots.contains(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (ri, &c) in r.pivots.iter().enumerate() {
        x[c] = r.mat.at(ri, a.cols).clone();
    }
    Some(x)
}

/// Left inverse of a full-column-rank matrix: `L . m = I`. `None` when the
/// columns are dependent.
pub fn left_inverse(m: &Mat) -> Option<Mat> {
    let f = m.field;
    let aug = Mat::hstack(f, &[m, &Mat::identity(f, m.rows)]);
    let r = rref(&aug);
    // Full column rank: the first `cols` pivots sit inside the m-block.
    if r.pivots.len() < m.cols || r.pivots[..m.cols].iter().enumerate().any(|(k, &c)| c != k) {
        return None;
    }
    let mut l = Mat::zeros(f, m.cols, m.rows);
    for i in 0..m.cols {
        for j in 0..m.rows {
            *l.at_mut(i, j) = r.mat.at(i, m.cols + j).clone();
        }
    }
    Some(l)
}

/// Solve `A X = B` column by column; `None` when any column is inconsistent.
pub fn solve_mat(a: &Mat, b: &Mat) -> Option<Mat> {
    let f = a.field;
    let mut out = Mat::zeros(f, a.cols, b.cols);
    for j in 0..b.cols {
        let x = solve(a, &b.col(j))?;
        for i in 0..a.cols {
            *out.at_mut(i, j) = x[i].clone();
        }
    }
    Some(out)
}

/// Homology of a pair of composable matrices `d_in: C_{n+1} -> C_n`,
/// `d_out: C_n -> C_{n-1}` in a fixed basis of `C_n`: cycle basis, boundary
/// basis, and chosen complement representatives for the quotient.
pub struct HomologySpace {
    pub field: Field,
    pub dim_ambient: usize,
    /// Columns span the cycles ker(d_out).
    pub cycles: Mat,
    /// Columns span the boundaries im(d_in), a subspace of the cycles.
    pub boundaries: Mat,
    /// Columns are cycle representatives of a homology basis.
    pub reps: Mat,
}

impl HomologySpace {
    pub fn dim(&self) -> usize {
        self.reps.cols
    }

    /// Coordinates of a cycle `v` in the homology basis; `None` if `v` is
    /// not a cycle.
    pub fn class_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let stacked = Mat::hstack(f, &[&self.boundaries, &self.reps]);
        if stacked.cols == 0 {
            return if v.iter().all(|x| f.is_zero(x)) {
                Some(vec![])
            } else {
                None
            };
        }
        let x = solve(&stacked, v)?;
        Some(x[self.boundaries.cols..].to_vec())
    }
}

/// Compute the homology data at a node with incoming matrix `d_in`
/// (boundaries) and outgoing matrix `d_out` (cycles = its kernel).
/// Either may be `None` to mean the zero map.
pub fn homology_space(
    field: Field,
    dim_ambient: usize,
    d_out: Option<&Mat>,
    d_in: Option<&Mat>,
) -> HomologySpace {
    let cycles = match d_out {
        Some(m) => {
            assert_eq!(m.cols, dim_ambient);
            nullspace(m)
        }
        None => Mat::identity(field, dim_ambient),
    };
    // Independent columns of d_in give a boundary basis.
    let boundaries = match d_in {
        Some(m) => {
            assert_eq!(m.rows, dim_ambient);
            let r = rref(&m.transpose());
            let mut out = Mat::zeros(field, dim_ambient, r.pivots.len());
            for (ri, _) in r.pivots.iter().enumerate() {
                for j in 0..dim_ambient {
                    *out.at_mut(j, ri) = r.mat.at(ri, j).clone();
                }
            }
            out
        }
        None => Mat::zeros(field, dim_ambient, 0),
    };
    // Extend the boundary basis to the cycle space: greedily keep cycle
    // columns that grow the rank.
    let mut reps_cols: Vec<Vec<Scalar>> = Vec::new();
    let mut current = boundaries.clone();
    let mut cur_rank = rank(&current);
    for j in 0..cycles.cols {
        let cand = cycles.col(j);
        let cand_mat = Mat::from_rows(field, vec![cand.clone()]).transpose();
        let grown = Mat::hstack(field, &[&current, &cand_mat]);
        let r = rank(&grown);
        if r > cur_rank {
            cur_rank = r;
            current = grown;
            reps_cols.push(cand);
        }
    }
    let mut reps = Mat::zeros(field, dim_ambient, reps_cols.len());
    for (k, c) in reps_cols.iter().enumerate() {
        for i in 0..dim_ambient {
            *reps.at_mut(i, k) = c[i].clone();
        }
    }
    HomologySpace { field, dim_ambient, cycles, boundaries, reps }
}

/// `rank f + rank g == dim(middle)` together with `g . f == 0` characterizes
/// exactness of `U -f-> V -g-> W` at `V`.
pub fn exact_at(f: &Mat, g: &Mat) -> bool {
    debug_assert_eq!(f.rows, g.cols);
    let comp = g.mul(f);
    comp.is_zero() && rank(f) + rank(g) == f.rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn mat(rows: &[&[i64]]) -> Mat {
        let f = q();
        Mat::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.cols, 1);
        assert!(m.mul(&ns).is_zero());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        let f = q();
        let b = vec![f.from_i64(2), f.from_i64(3), f.from_i64(5)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let bad = vec![f.from_i64(2), f.from_i64(3), f.from_i64(4)];
        assert!(solve(&m, &bad).is_none());
    }

    #[test]
    fn zero_column_gets_unit_nullvector() {
        let m = mat(&[&[0, 1], &[0, 0]]);
        let ns = nullspace(&m);
        assert_eq!(ns.cols, 1);
        assert_eq!(*ns.at(0, 0), q().one());
        assert!(q().is_zero(ns.at(1, 0)));
    }

    #[test]
    fn homology_of_exact_pair_vanishes() {
        // R^1 --(1,0)^T--> R^2 --(0,1)--> R^1 is exact in the middle.
        let d_in = mat(&[&[1], &[0]]);
        let d_out = mat(&[&[0, 1]]);
        let h = homology_space(q(), 2, Some(&d_out), Some(&d_in));
        assert_eq!(h.dim(), 0);
        assert!(exact_at(&d_in, &d_out));
    }

    #[test]
    fn class_coords_mod_boundaries() {
        // Zero outgoing map, boundary = span{(1,1)}.
        let d_in = mat(&[&[1], &[1]]);
        let h = homology_space(q(), 2, None, Some(&d_in));
        assert_eq!(h.dim(), 1);
        let f = q();
        // (1,1) is a boundary: class zero.
        let c = h.class_coords(&[f.one(), f.one()]).unwrap();
        assert!(c.iter().all(|x| f.is_zero(x)));
    }
}
