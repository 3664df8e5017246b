//! Graded free modules and homogeneous polynomial maps between them.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{Polynomial, RingCtx};
use std::sync::Arc;

/// Free module with one integer (internal) degree per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFreeModule {
    pub ctx: Arc<RingCtx>,
    pub degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(ctx: &Arc<RingCtx>, degrees: Vec<i64>) -> GradedFreeModule {
        GradedFreeModule { ctx: ctx.clone(), degrees }
    }

    pub fn free(ctx: &Arc<RingCtx>, rank: usize, degree: i64) -> GradedFreeModule {
        GradedFreeModule { ctx: ctx.clone(), degrees: vec![degree; rank] }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Shift every generator degree by `e`.
    pub fn twist(&self, e: i64) -> GradedFreeModule {
        GradedFreeModule {
            ctx: self.ctx.clone(),
            degrees: self.degrees.iter().map(|d| d + e).collect(),
        }
    }

    pub fn dual(&self) -> GradedFreeModule {
        GradedFreeModule {
            ctx: self.ctx.clone(),
            degrees: self.degrees.iter().map(|d| -d).collect(),
        }
    }

    pub fn direct_sum(&self, other: &GradedFreeModule) -> GradedFreeModule {
        debug_assert_eq!(self.ctx, other.ctx);
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedFreeModule { ctx: self.ctx.clone(), degrees }
    }

    /// Monomial basis of the degree-`e` piece: pairs (generator, monomial).
    pub fn basis_of_degree(&self, e: i64) -> Vec<(usize, Monomial)> {
        let nv = self.ctx.nvars();
        let mut out = Vec::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            let rem = e - d;
            if rem < 0 {
                continue;
            }
            for m in monomials_of_degree(nv, rem as u32) {
                out.push((i, m));
            }
        }
        out
    }

    pub fn dim_in_degree(&self, e: i64) -> usize {
        self.basis_of_degree(e).len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().min().copied()
    }
}

/// Matrix of polynomials: columns indexed by source generators, rows by
/// target generators, entry (i, j) homogeneous of degree
/// `deg_source(j) - deg_target(i)` when the map is homogeneous.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    /// `entries[i][j]` is the coefficient of target generator `i` in the
    /// image of source generator `j`.
    pub entries: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<GradedMap> {
        if source.ctx != target.ctx {
            return Err(Error::ContextMismatch(
                "map source and target in different ring contexts".into(),
            ));
        }
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Precondition(format!(
                "entry matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        Ok(GradedMap { source, target, entries })
    }

    pub fn zero(source: GradedFreeModule, target: GradedFreeModule) -> GradedMap {
        let z = Polynomial::zero(&source.ctx);
        let entries = vec![vec![z; source.rank()]; target.rank()];
        GradedMap { source, target, entries }
    }

    pub fn identity(module: &GradedFreeModule) -> GradedMap {
        let mut entries =
            vec![vec![Polynomial::zero(&module.ctx); module.rank()]; module.rank()];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Polynomial::one(&module.ctx);
        }
        GradedMap { source: module.clone(), target: module.clone(), entries }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.source.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    /// Every entry zero or homogeneous of the degree its position demands.
    pub fn is_homogeneous(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, p)| {
                p.is_zero()
                    || p.homogeneous_degree().map(|d| d as i64)
                        == Some(self.source.degrees[j] - self.target.degrees[i])
            })
        })
    }

    /// Matrix product `self . g` (apply `g` first).
    pub fn compose(&self, g: &GradedMap) -> Result<GradedMap> {
        if g.target.degrees != self.source.degrees || g.target.ctx != self.source.ctx {
            return Err(Error::Precondition(
                "composition shape mismatch".into(),
            ));
        }
        let ctx = self.ctx();
        let mut entries =
            vec![vec![Polynomial::zero(ctx); g.source.rank()]; self.target.rank()];
        for i in 0..self.target.rank() {
            for j in 0..g.source.rank() {
                let mut acc = Polynomial::zero(ctx);
                for k in 0..self.source.rank() {
                    if self.entries[i][k].is_zero() || g.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entries[i][k].mul(&g.entries[k][j])?)?;
                }
                entries[i][j] = acc;
            }
        }
        GradedMap::new(g.source.clone(), self.target.clone(), entries)
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source.degrees != other.source.degrees
            || self.target.degrees != other.target.degrees
        {
            return Err(Error::Precondition("sum shape mismatch".into()));
        }
        let mut entries = self.entries.clone();
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, p) in row.iter_mut().enumerate() {
                *p = p.add(&other.entries[i][j])?;
            }
        }
        GradedMap::new(self.source.clone(), self.target.clone(), entries)
    }

    pub fn negate(&self) -> GradedMap {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.neg()).collect())
            .collect();
        GradedMap { source: self.source.clone(), target: self.target.clone(), entries }
    }

    /// The dual map between dual modules: transposed entries.
    pub fn transpose_dual(&self) -> GradedMap {
        let mut entries =
            vec![vec![Polynomial::zero(self.ctx()); self.target.rank()]; self.source.rank()];
        for i in 0..self.target.rank() {
            for j in 0..self.source.rank() {
                entries[j][i] = self.entries[i][j].clone();
            }
        }
        GradedMap { source: self.target.dual(), target: self.source.dual(), entries }
    }

    /// The matrix of the degree-`e` piece, in the monomial bases of the
    /// degree-`e` pieces of source and target.
    pub fn graded_piece(&self, e: i64) -> Mat {
        let field = self.ctx().field;
        let src = self.source.basis_of_degree(e);
        let tgt = self.target.basis_of_degree(e);
        let mut m = Mat::zeros(field, tgt.len(), src.len());
        for (col, (j, mu)) in src.iter().enumerate() {
            for (row, (i, nu)) in tgt.iter().enumerate() {
                let p = &self.entries[*i][*j];
                if p.is_zero() {
                    continue;
                }
                if mu.divides(nu) {
                    let q = mu.quotient(nu);
                    let c = p.coeff(&q);
                    if !field.is_zero(&c) {
                        *m.at_mut(row, col) = c;
                    }
                }
            }
        }
        m
    }

    /// Tensor with a free module on the right: blocks `entries . id_E`.
    pub fn tensor_module(&self, e_mod: &GradedFreeModule) -> GradedMap {
        let src = tensor_modules(&self.source, e_mod);
        let tgt = tensor_modules(&self.target, e_mod);
        let ctx = self.ctx();
        let mut entries = vec![vec![Polynomial::zero(ctx); src.rank()]; tgt.rank()];
        let r = e_mod.rank();
        for i in 0..self.target.rank() {
            for j in 0..self.source.rank() {
                for k in 0..r {
                    entries[i * r + k][j * r + k] = self.entries[i][j].clone();
                }
            }
        }
        GradedMap { source: src, target: tgt, entries }
    }

    /// Twist source and target degrees without touching the matrix.
    pub fn twist(&self, e: i64) -> GradedMap {
        GradedMap {
            source: self.source.twist(e),
            target: self.target.twist(e),
            entries: self.entries.clone(),
        }
    }

    /// Specialize all ring variables to field values; the result lives over
    /// the zero-variable ring context.
    pub fn evaluate(&self, point: &[Scalar], zero_var_ctx: &Arc<RingCtx>) -> GradedMap {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| Polynomial::constant(zero_var_ctx, p.evaluate(point)))
                    .collect()
            })
            .collect();
        GradedMap {
            source: GradedFreeModule::new(zero_var_ctx, self.source.degrees.clone()),
            target: GradedFreeModule::new(zero_var_ctx, self.target.degrees.clone()),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }
}

/// Tensor product of free modules: generator (i, k) has the sum degree;
/// enumeration is row-major in the left factor.
pub fn tensor_modules(a: &GradedFreeModule, b: &GradedFreeModule) -> GradedFreeModule {
    let mut degrees = Vec::with_capacity(a.rank() * b.rank());
    for da in &a.degrees {
        for db in &b.degrees {
            degrees.push(da + db);
        }
    }
    GradedFreeModule { ctx: a.ctx.clone(), degrees }
}

/// Exact determinant of a square polynomial matrix by cofactor expansion
/// along the first remaining row.
pub fn poly_det(ctx: &Arc<RingCtx>, rows: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("determinant of a non-square matrix".into()));
    }
    fn rec(
        ctx: &Arc<RingCtx>,
        rows: &[Vec<Polynomial>],
        row: usize,
        cols: &mut Vec<usize>,
    ) -> Result<Polynomial> {
        if cols.is_empty() {
            return Ok(Polynomial::one(ctx));
        }
        let mut acc = Polynomial::zero(ctx);
        for k in 0..cols.len() {
            let j = cols[k];
            let e = &rows[row][j];
            if e.is_zero() {
                continue;
            }
            let removed = cols.remove(k);
            let sub = rec(ctx, rows, row + 1, cols)?;
            cols.insert(k, removed);
            let term = e.mul(&sub)?;
            acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(acc)
    }
    let mut cols: Vec<usize> = (0..n).collect();
    rec(ctx, rows, 0, &mut cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ctx() -> Arc<RingCtx> {
        RingCtx::new(Field::rationals(), vec!["x".into(), "y".into()])
    }

    fn p(c: &Arc<RingCtx>, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    #[test]
    fn homogeneity_detects_degrees() {
        let c = ctx();
        // x : R(-1)-style source gen of degree 1 to target gen of degree 0.
        let src = GradedFreeModule::new(&c, vec![1]);
        let tgt = GradedFreeModule::new(&c, vec![0]);
        let f = GradedMap::new(src, tgt, vec![vec![p(&c, "x")]]).unwrap();
        assert!(f.is_homogeneous());
        let bad = GradedMap::new(
            GradedFreeModule::new(&c, vec![0]),
            GradedFreeModule::new(&c, vec![0]),
            vec![vec![p(&c, "x")]],
        )
        .unwrap();
        assert!(!bad.is_homogeneous());
    }

    #[test]
    fn graded_piece_of_multiplication_by_x() {
        let c = RingCtx::new(Field::rationals(), vec!["x".into()]);
        // k[x] --x--> k[x] as R(-1)-twisted source.
        let src = GradedFreeModule::new(&c, vec![1]);
        let tgt = GradedFreeModule::new(&c, vec![0]);
        let f = GradedMap::new(src, tgt, vec![vec![p(&c, "x")]]).unwrap();
        let m = f.graded_piece(2);
        assert_eq!((m.rows, m.cols), (1, 1));
        assert_eq!(*m.at(0, 0), Field::rationals().one());
    }

    #[test]
    fn s2_presentation_piece_has_full_column_rank() {
        // d1 of the degree-2 strand of the Koszul complex on (x,y)^T: the
        // polynomial matrix is 3x2, and its internal degree-2 piece is 9x4
        // of full column rank because (x,y) is a regular sequence.
        let c = ctx();
        let src = GradedFreeModule::new(&c, vec![1, 1]);
        let tgt = GradedFreeModule::new(&c, vec![0, 0, 0]);
        // d1(w ; v1) = x v1^2 + y v1 v2, d1(w ; v2) = x v1 v2 + y v2^2
        let rows = vec![
            vec![p(&c, "x"), p(&c, "0")],
            vec![p(&c, "y"), p(&c, "x")],
            vec![p(&c, "0"), p(&c, "y")],
        ];
        let f = GradedMap::new(src, tgt, rows).unwrap();
        assert!(f.is_homogeneous());
        let piece = f.graded_piece(2);
        assert_eq!((piece.rows, piece.cols), (9, 4));
        assert_eq!(crate::linalg::rank(&piece), 4);
    }

    #[test]
    fn zero_map_zero_piece() {
        let c = ctx();
        let src = GradedFreeModule::new(&c, vec![0, 0]);
        let tgt = GradedFreeModule::new(&c, vec![0]);
        let f = GradedMap::zero(src, tgt);
        let m = f.graded_piece(1);
        assert_eq!((m.rows, m.cols), (2, 4));
        assert!(m.is_zero());
    }

    #[test]
    fn determinant_of_diag() {
        let c = ctx();
        let rows = vec![
            vec![p(&c, "x"), p(&c, "0")],
            vec![p(&c, "0"), p(&c, "y")],
        ];
        assert_eq!(poly_det(&c, &rows).unwrap(), p(&c, "x*y"));
        let id3: Vec<Vec<Polynomial>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { Polynomial::one(&c) } else { Polynomial::zero(&c) })
                    .collect()
            })
            .collect();
        assert_eq!(poly_det(&c, &id3).unwrap(), Polynomial::one(&c));
    }

    #[test]
    fn a4_matrix_determinant() {
        let c = RingCtx::new(
            Field::rationals(),
            vec!["x".into(), "y".into(), "z".into(), "w".into()],
        );
        let rows = vec![
            vec![p(&c, "x"), p(&c, "y"), p(&c, "w")],
            vec![p(&c, "z"), p(&c, "x"), p(&c, "y")],
            vec![p(&c, "w"), p(&c, "z"), p(&c, "0")],
        ];
        let det = poly_det(&c, &rows).unwrap();
        let want = p(&c, "-x*w^2 + y^2*w + z^2*w - x*y*z");
        assert!(det == want || det == want.neg());
    }

    #[test]
    fn dual_transpose_twice_is_identity() {
        let c = ctx();
        let src = GradedFreeModule::new(&c, vec![1, 2]);
        let tgt = GradedFreeModule::new(&c, vec![0]);
        let f = GradedMap::new(src, tgt, vec![vec![p(&c, "x"), p(&c, "x*y")]]).unwrap();
        let dd = f.transpose_dual().transpose_dual();
        assert_eq!(dd, f);
    }
}
