//! Integer-indexed chain complexes of graded free modules with degree -1
//! differentials, per-internal-degree homology by exact elimination, and the
//! long exact sequence of a brutal truncation.

use crate::error::{Error, Result};
use crate::linalg::{self, homology_space, rank, Mat};
use crate::module::{tensor_modules, GradedFreeModule, GradedMap};
use crate::poly::{Polynomial, RingCtx};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    pub ctx: Arc<RingCtx>,
    terms: BTreeMap<i64, GradedFreeModule>,
    /// `diffs[n]` maps term `n` to term `n-1`.
    diffs: BTreeMap<i64, GradedMap>,
}

/// Outcome of the symbolic d.d = 0 check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexCheck {
    pub ok: bool,
    /// Degree n and entry (row, col) of the first nonzero entry of
    /// d_{n-1} . d_n, when the check fails.
    pub first_failure: Option<(i64, usize, usize)>,
}

impl ChainComplex {
    pub fn new(ctx: &Arc<RingCtx>) -> ChainComplex {
        ChainComplex { ctx: ctx.clone(), terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// A complex with a single term in degree `n`.
    pub fn single(n: i64, module: GradedFreeModule) -> ChainComplex {
        let ctx = module.ctx.clone();
        let mut c = ChainComplex::new(&ctx);
        c.set_term(n, module);
        c
    }

    /// A two-term complex `[source -> target]` with the source in degree
    /// `top` and the target in degree `top - 1`.
    pub fn two_term(map: GradedMap, top: i64) -> ChainComplex {
        let ctx = map.ctx().clone();
        let mut c = ChainComplex::new(&ctx);
        c.set_term(top, map.source.clone());
        c.set_term(top - 1, map.target.clone());
        c.set_diff(top, map);
        c
    }

    pub fn set_term(&mut self, n: i64, module: GradedFreeModule) {
        if module.rank() > 0 {
            self.terms.insert(n, module);
        }
    }

    pub fn set_diff(&mut self, n: i64, map: GradedMap) {
        debug_assert_eq!(
            map.source.degrees,
            self.terms.get(&n).map(|t| t.degrees.clone()).unwrap_or_default()
        );
        debug_assert_eq!(
            map.target.degrees,
            self.terms.get(&(n - 1)).map(|t| t.degrees.clone()).unwrap_or_default()
        );
        self.diffs.insert(n, map);
    }

    pub fn term(&self, n: i64) -> Option<&GradedFreeModule> {
        self.terms.get(&n)
    }

    pub fn diff(&self, n: i64) -> Option<&GradedMap> {
        self.diffs.get(&n)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Inclusive homological degree range of the support.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?;
        let hi = self.terms.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn terms_iter(&self) -> impl Iterator<Item = (&i64, &GradedFreeModule)> {
        self.terms.iter()
    }

    pub fn diffs_iter(&self) -> impl Iterator<Item = (&i64, &GradedMap)> {
        self.diffs.iter()
    }

    pub fn rank_of_term(&self, n: i64) -> usize {
        self.terms.get(&n).map_or(0, |t| t.rank())
    }

    pub fn dim_in_degree(&self, n: i64, e: i64) -> usize {
        self.terms.get(&n).map_or(0, |t| t.dim_in_degree(e))
    }

    /// Degree-`e` piece of d_n as a matrix (rows: term n-1, cols: term n);
    /// missing differentials and missing terms give zero blocks of the right
    /// shape.
    pub fn piece(&self, n: i64, e: i64) -> Mat {
        let field = self.ctx.field;
        match self.diffs.get(&n) {
            Some(d) => d.graded_piece(e),
            None => {
                let rows = self.dim_in_degree(n - 1, e);
                let cols = self.dim_in_degree(n, e);
                Mat::zeros(field, rows, cols)
            }
        }
    }

    /// Symbolic verification that consecutive differentials compose to zero.
    pub fn check(&self) -> ComplexCheck {
        for (&n, d_n) in &self.diffs {
            let Some(d_prev) = self.diffs.get(&(n - 1)) else { continue };
            let comp = match d_prev.compose(d_n) {
                Ok(c) => c,
                Err(_) => {
                    return ComplexCheck { ok: false, first_failure: Some((n, 0, 0)) };
                }
            };
            for (i, row) in comp.entries.iter().enumerate() {
                for (j, p) in row.iter().enumerate() {
                    if !p.is_zero() {
                        return ComplexCheck { ok: false, first_failure: Some((n, i, j)) };
                    }
                }
            }
        }
        ComplexCheck { ok: true, first_failure: None }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.diffs.values().all(|d| d.is_homogeneous())
    }

    /// Termwise dual: term n of the dual is the dual of term -n, with
    /// transposed differentials and no extra sign.
    pub fn dual(&self) -> ChainComplex {
        let mut out = ChainComplex::new(&self.ctx);
        for (&n, t) in &self.terms {
            out.set_term(-n, t.dual());
        }
        for (&n, d) in &self.diffs {
            // d_n : C_n -> C_{n-1} dualizes to (C^v)_{-n+1} -> (C^v)_{-n}.
            out.set_diff(-n + 1, d.transpose_dual());
        }
        out
    }

    /// Shift degrees up by `k`, with sign (-1)^k on every differential.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let mut out = ChainComplex::new(&self.ctx);
        for (&n, t) in &self.terms {
            out.set_term(n + k, t.clone());
        }
        for (&n, d) in &self.diffs {
            let d2 = if k.rem_euclid(2) == 1 { d.negate() } else { d.clone() };
            out.set_diff(n + k, d2);
        }
        out
    }

    /// Twist all internal degrees by `e`.
    pub fn twist(&self, e: i64) -> ChainComplex {
        let mut out = ChainComplex::new(&self.ctx);
        for (&n, t) in &self.terms {
            out.set_term(n, t.twist(e));
        }
        for (&n, d) in &self.diffs {
            out.set_diff(n, d.twist(e));
        }
        out
    }

    /// Tensor with a single free module (rank may exceed 1).
    pub fn tensor_module(&self, e_mod: &GradedFreeModule) -> ChainComplex {
        let mut out = ChainComplex::new(&self.ctx);
        for (&n, t) in &self.terms {
            out.set_term(n, tensor_modules(t, e_mod));
        }
        for (&n, d) in &self.diffs {
            out.set_diff(n, d.tensor_module(e_mod));
        }
        out
    }

    /// Tensor product of complexes with the Koszul sign (-1)^p on the second
    /// differential. Term n is the direct sum over p + q = n of C_p x D_q,
    /// blocks ordered by ascending p.
    pub fn tensor(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("tensor of complexes over different rings".into()));
        }
        let mut out = ChainComplex::new(&self.ctx);
        let Some((alo, ahi)) = self.support() else { return Ok(out) };
        let Some((blo, bhi)) = other.support() else { return Ok(out) };

        // Block layout per total degree.
        let blocks = |n: i64| -> Vec<(i64, i64)> {
            let mut v = Vec::new();
            for p in alo..=ahi {
                let q = n - p;
                if q < blo || q > bhi {
                    continue;
                }
                if self.rank_of_term(p) > 0 && other.rank_of_term(q) > 0 {
                    v.push((p, q));
                }
            }
            v
        };
        let module_of = |v: &[(i64, i64)]| -> GradedFreeModule {
            let mut degrees = Vec::new();
            for &(p, q) in v {
                let tp = self.term(p).unwrap();
                let tq = other.term(q).unwrap();
                for dp in &tp.degrees {
                    for dq in &tq.degrees {
                        degrees.push(dp + dq);
                    }
                }
            }
            GradedFreeModule::new(&self.ctx, degrees)
        };

        for n in (alo + blo)..=(ahi + bhi) {
            let bl = blocks(n);
            if !bl.is_empty() {
                out.set_term(n, module_of(&bl));
            }
        }
        for n in (alo + blo + 1)..=(ahi + bhi) {
            let src_blocks = blocks(n);
            let tgt_blocks = blocks(n - 1);
            if src_blocks.is_empty() || tgt_blocks.is_empty() {
                continue;
            }
            let src = module_of(&src_blocks);
            let tgt = module_of(&tgt_blocks);
            let mut entries =
                vec![vec![Polynomial::zero(&self.ctx); src.rank()]; tgt.rank()];
            // Offsets of each block in the concatenated bases.
            let offsets = |list: &[(i64, i64)]| -> Vec<usize> {
                let mut off = vec![0usize; list.len()];
                let mut acc = 0;
                for (k, &(p, q)) in list.iter().enumerate() {
                    off[k] = acc;
                    acc += self.rank_of_term(p) * other.rank_of_term(q);
                }
                off
            };
            let so = offsets(&src_blocks);
            let to = offsets(&tgt_blocks);
            for (sk, &(p, q)) in src_blocks.iter().enumerate() {
                let rp = self.rank_of_term(p);
                let rq = other.rank_of_term(q);
                // d_C x id : block (p,q) -> (p-1,q)
                if let Some(dc) = self.diffs.get(&p) {
                    if let Some(tk) = tgt_blocks.iter().position(|&b| b == (p - 1, q)) {
                        let rp1 = self.rank_of_term(p - 1);
                        for i in 0..rp1 {
                            for j in 0..rp {
                                if dc.entries[i][j].is_zero() {
                                    continue;
                                }
                                for k in 0..rq {
                                    entries[to[tk] + i * rq + k][so[sk] + j * rq + k] =
                                        dc.entries[i][j].clone();
                                }
                            }
                        }
                    }
                }
                // (-1)^p id x d_D : block (p,q) -> (p,q-1)
                if let Some(dd) = other.diffs.get(&q) {
                    if let Some(tk) = tgt_blocks.iter().position(|&b| b == (p, q - 1)) {
                        let rq1 = other.rank_of_term(q - 1);
                        let negate = p.rem_euclid(2) == 1;
                        for i in 0..rq1 {
                            for j in 0..rq {
                                if dd.entries[i][j].is_zero() {
                                    continue;
                                }
                                let val = if negate {
                                    dd.entries[i][j].neg()
                                } else {
                                    dd.entries[i][j].clone()
                                };
                                for a in 0..rp {
                                    entries[to[tk] + a * rq1 + i][so[sk] + a * rq + j] = val.clone();
                                }
                            }
                        }
                    }
                }
            }
            out.set_diff(n, GradedMap::new(src, tgt, entries)?);
        }
        Ok(out)
    }

    /// Split into the subcomplex in degrees <= cut and the quotient in
    /// degrees > cut; the connecting differential d_{cut+1} is dropped from
    /// both pieces.
    pub fn brutal_truncation(&self, cut: i64) -> BrutalTruncation {
        let mut sub = ChainComplex::new(&self.ctx);
        let mut quot = ChainComplex::new(&self.ctx);
        for (&n, t) in &self.terms {
            if n <= cut {
                sub.set_term(n, t.clone());
            } else {
                quot.set_term(n, t.clone());
            }
        }
        for (&n, d) in &self.diffs {
            if n <= cut {
                sub.set_diff(n, d.clone());
            } else if n > cut + 1 {
                quot.set_diff(n, d.clone());
            }
        }
        BrutalTruncation { total: self.clone(), sub, quot, cut }
    }

    /// Lowest internal degree in which any term has a generator.
    pub fn min_internal_degree(&self) -> Option<i64> {
        self.terms.values().filter_map(|t| t.min_degree()).min()
    }
}

/// The short exact sequence of complexes attached to a brutal truncation.
#[derive(Clone, Debug)]
pub struct BrutalTruncation {
    pub total: ChainComplex,
    pub sub: ChainComplex,
    pub quot: ChainComplex,
    pub cut: i64,
}

/// Graded dimension table of homology: nonzero entries only, keyed by
/// (homological degree, internal degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub entries: BTreeMap<(i64, i64), usize>,
    pub e_max: i64,
}

impl HomologyTable {
    pub fn get(&self, n: i64, e: i64) -> usize {
        self.entries.get(&(n, e)).copied().unwrap_or(0)
    }

    /// Homological degrees with a nonzero entry.
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.entries.keys().map(|(n, _)| *n).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rows of dims for one homological degree over 0..=e_max.
    pub fn row(&self, n: i64) -> Vec<usize> {
        (0..=self.e_max).map(|e| self.get(n, e)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut h = serde_json::Map::new();
        for (&(n, e), &d) in &self.entries {
            h.insert(format!("{n},{e}"), serde_json::Value::from(d));
        }
        serde_json::json!({ "H": h, "e_max": self.e_max })
    }

    pub fn to_markdown(&self) -> String {
        if self.entries.is_empty() {
            return format!("(all homology vanishes up to internal degree {})\n", self.e_max);
        }
        let degrees = self.nonzero_degrees();
        let e_min = self.entries.keys().map(|(_, e)| *e).min().unwrap().min(0);
        let mut s = String::from("| n \\ e |");
        for e in e_min..=self.e_max {
            s += &format!(" {e} |");
        }
        s += "\n|---|";
        for _ in e_min..=self.e_max {
            s += "---|";
        }
        s += "\n";
        for &n in degrees.iter().rev() {
            s += &format!("| H_{n} |");
            for e in e_min..=self.e_max {
                s += &format!(" {} |", self.get(n, e));
            }
            s += "\n";
        }
        s
    }
}

/// Per-internal-degree homology dimensions up to `e_max` by exact
/// elimination; requires a verified, homogeneous complex.
pub fn homology_dims(c: &ChainComplex, e_max: i64) -> Result<HomologyTable> {
    let check = c.check();
    if !check.ok {
        return Err(Error::Precondition(format!(
            "not a complex: d.d != 0 first fails at {:?}",
            check.first_failure
        )));
    }
    if !c.is_homogeneous() {
        return Err(Error::Precondition(
            "homology requires homogeneous differentials".into(),
        ));
    }
    let mut entries = BTreeMap::new();
    if let Some((lo, hi)) = c.support() {
        let e_min = c.min_internal_degree().unwrap_or(0);
        for n in lo..=hi {
            for e in e_min..=e_max {
                let dim = c.dim_in_degree(n, e);
                if dim == 0 {
                    continue;
                }
                let r_out = rank(&c.piece(n, e));
                let r_in = rank(&c.piece(n + 1, e));
                let h = dim - r_out - r_in;
                if h > 0 {
                    entries.insert((n, e), h);
                }
            }
        }
    }
    Ok(HomologyTable { entries, e_max })
}

/// Euler characteristic identity in one internal degree: the alternating sum
/// of term dimensions equals the alternating sum of homology dimensions.
pub fn euler_identity_holds(c: &ChainComplex, table: &HomologyTable, e: i64) -> bool {
    let Some((lo, hi)) = c.support() else { return table.is_zero() };
    let mut chi_terms: i64 = 0;
    let mut chi_h: i64 = 0;
    for n in lo..=hi {
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        chi_terms += sign * c.dim_in_degree(n, e) as i64;
        chi_h += sign * table.get(n, e) as i64;
    }
    chi_terms == chi_h
}

/// Module given by the cokernel of a homogeneous presentation matrix.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub presentation: GradedMap,
}

impl PresentedModule {
    pub fn graded_dim(&self, e: i64) -> usize {
        let tgt = self.presentation.target.dim_in_degree(e);
        tgt - rank(&self.presentation.graded_piece(e))
    }

    pub fn graded_dims(&self, e_max: i64) -> Vec<usize> {
        let e_min = self.presentation.target.min_degree().unwrap_or(0).min(0);
        (e_min..=e_max).map(|e| self.graded_dim(e)).collect()
    }
}

/// Presentation of H_0: the first differential, or a free presentation with
/// no relations when the complex has no degree-1 term.
pub fn h0_presentation(c: &ChainComplex) -> Result<PresentedModule> {
    if let Some((lo, _)) = c.support() {
        if lo < 0 {
            return Err(Error::Precondition(
                "H0 presentation requires support in degrees >= 0".into(),
            ));
        }
    }
    let term0 = c
        .term(0)
        .cloned()
        .unwrap_or_else(|| GradedFreeModule::new(&c.ctx, vec![]));
    let presentation = match c.diff(1) {
        Some(d) => d.clone(),
        None => {
            let src = GradedFreeModule::new(&c.ctx, vec![]);
            GradedMap::zero(src, term0)
        }
    };
    Ok(PresentedModule { presentation })
}

/// One node of the long exact homology sequence check.
#[derive(Clone, Debug, Serialize)]
pub struct LesNodeReport {
    pub internal_degree: i64,
    pub homological_degree: i64,
    /// Position in the repeating pattern sub -> total -> quot.
    pub node: String,
    pub exact: bool,
}

/// Verify exactness of the long exact homology sequence of a brutal
/// truncation in every internal degree `e <= e_max`. All three complexes are
/// termwise coordinate sub/quotients, which the map construction uses.
pub fn les_exactness(tr: &BrutalTruncation, e_max: i64) -> Result<Vec<LesNodeReport>> {
    let c = &tr.total;
    let field = c.ctx.field;
    if !c.is_homogeneous() {
        return Err(Error::Precondition("LES check requires homogeneous differentials".into()));
    }
    let Some((lo, hi)) = c.support() else { return Ok(vec![]) };
    let e_min = c.min_internal_degree().unwrap_or(0);
    let mut reports = Vec::new();

    for e in e_min..=e_max {
        // Homology spaces of the three complexes at this internal degree.
        let spaces = |x: &ChainComplex, n: i64| {
            let dim = x.dim_in_degree(n, e);
            let d_out = x.piece(n, e);
            let d_in = x.piece(n + 1, e);
            homology_space(field, dim, Some(&d_out), Some(&d_in))
        };

        // Chain-level block maps at degree n: sub_n -> total_n (inclusion
        // into the low block) and total_n -> quot_n (projection onto the
        // high block). Blocks: total term n is entirely sub (n <= cut) or
        // entirely quot (n > cut).
        let incl = |n: i64| -> Mat {
            let dim_t = c.dim_in_degree(n, e);
            let dim_s = tr.sub.dim_in_degree(n, e);
            if n <= tr.cut {
                Mat::identity(field, dim_s)
            } else {
                Mat::zeros(field, dim_t, dim_s)
            }
        };
        let proj = |n: i64| -> Mat {
            let dim_t = c.dim_in_degree(n, e);
            let dim_q = tr.quot.dim_in_degree(n, e);
            if n > tr.cut {
                Mat::identity(field, dim_q)
            } else {
                Mat::zeros(field, dim_q, dim_t)
            }
        };

        // Induced maps on homology, as matrices between class bases.
        let induced = |f: &Mat, src: &linalg::HomologySpace, tgt: &linalg::HomologySpace| -> Mat {
            let mut m = Mat::zeros(field, tgt.dim(), src.dim());
            for j in 0..src.dim() {
                let v = src.reps.col(j);
                let w = f.mul_vec(&v);
                let coords = tgt
                    .class_coords(&w)
                    .expect("chain map must send cycles to cycles");
                for i in 0..tgt.dim() {
                    *m.at_mut(i, j) = coords[i].clone();
                }
            }
            m
        };

        // Connecting map H_n(quot) -> H_{n-1}(sub): lift a quotient cycle to
        // the total complex (same coordinates), apply d, read off in sub.
        let connecting = |n: i64,
                          src: &linalg::HomologySpace,
                          tgt: &linalg::HomologySpace|
         -> Mat {
            let mut m = Mat::zeros(field, tgt.dim(), src.dim());
            if src.dim() == 0 {
                return m;
            }
            let d = c.piece(n, e);
            for j in 0..src.dim() {
                let v = src.reps.col(j); // quot_n coordinates = total_n coordinates (n > cut)
                debug_assert!(n > tr.cut);
                let w = d.mul_vec(&v); // lands in total_{n-1}
                // total_{n-1} = sub_{n-1} exactly when n-1 <= cut.
                let w_sub = if n - 1 <= tr.cut { w } else { vec![field.zero(); 0] };
                let coords = tgt
                    .class_coords(&w_sub)
                    .expect("connecting image must be a cycle");
                for i in 0..tgt.dim() {
                    *m.at_mut(i, j) = coords[i].clone();
                }
            }
            m
        };

        // Assemble the sequence ... -> Hn(sub) -> Hn(total) -> Hn(quot) -> H_{n-1}(sub) -> ...
        // as a list of (space, incoming map) and check exactness at each
        // interior node.
        let mut chain: Vec<(String, i64, linalg::HomologySpace)> = Vec::new();
        for n in (lo..=hi).rev() {
            chain.push(("sub".into(), n, spaces(&tr.sub, n)));
            chain.push(("total".into(), n, spaces(c, n)));
            chain.push(("quot".into(), n, spaces(&tr.quot, n)));
        }
        let map_between = |k: usize| -> Mat {
            // Map from chain[k] to chain[k+1].
            let (ref kind, n, ref src_h) = chain[k];
            let (_, n2, ref tgt_h) = chain[k + 1];
            match kind.as_str() {
                "sub" => induced(&incl(n), src_h, tgt_h),
                "total" => induced(&proj(n), src_h, tgt_h),
                "quot" => {
                    debug_assert_eq!(n2, n - 1);
                    connecting(n, src_h, tgt_h)
                }
                _ => unreachable!(),
            }
        };
        for k in 1..chain.len().saturating_sub(1) {
            let f_in = map_between(k - 1);
            let f_out = map_between(k);
            let ok = linalg::exact_at(&f_in, &f_out)
                // Ends of the sequence: exactness against zero outside.
                || (chain[k].2.dim() == 0 && f_in.is_zero() && f_out.is_zero());
            reports.push(LesNodeReport {
                internal_degree: e,
                homological_degree: chain[k].1,
                node: chain[k].0.clone(),
                exact: ok,
            });
        }
        // Boundary nodes: first and last entries must have no incoming /
        // outgoing homology beyond the listed range; brutal truncation
        // guarantees this because supports are finite, but verify the top
        // and bottom nodes directly.
        if let Some(first) = chain.first() {
            let f_out = map_between(0);
            reports.push(LesNodeReport {
                internal_degree: e,
                homological_degree: first.1,
                node: first.0.clone(),
                exact: rank(&f_out) == first.2.dim(),
            });
        }
        if chain.len() >= 2 {
            let last = chain.last().unwrap();
            let f_in = map_between(chain.len() - 2);
            reports.push(LesNodeReport {
                internal_degree: e,
                homological_degree: last.1,
                node: last.0.clone(),
                exact: rank(&f_in) == last.2.dim(),
            });
        }
    }
    Ok(reports)
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

    /// Koszul complex on (x, y): R(-2) -> R(-1)^2 -> R.
    fn koszul_xy(c: &Arc<RingCtx>) -> ChainComplex {
        let t0 = GradedFreeModule::new(c, vec![0]);
        let t1 = GradedFreeModule::new(c, vec![1, 1]);
        let t2 = GradedFreeModule::new(c, vec![2]);
        let d1 = GradedMap::new(t1.clone(), t0.clone(), vec![vec![p(c, "x"), p(c, "y")]]).unwrap();
        let d2 = GradedMap::new(
            t2.clone(),
            t1.clone(),
            vec![vec![p(c, "-y")], vec![p(c, "x")]],
        )
        .unwrap();
        let mut cx = ChainComplex::new(c);
        cx.set_term(0, t0);
        cx.set_term(1, t1);
        cx.set_term(2, t2);
        cx.set_diff(1, d1);
        cx.set_diff(2, d2);
        cx
    }

    #[test]
    fn zero_complex_passes_check() {
        let c = ctx();
        assert!(ChainComplex::new(&c).check().ok);
    }

    #[test]
    fn x_squared_fails_check() {
        let c = ctx();
        let r1 = GradedFreeModule::new(&c, vec![2]);
        let r2 = GradedFreeModule::new(&c, vec![1]);
        let r3 = GradedFreeModule::new(&c, vec![0]);
        let mut cx = ChainComplex::new(&c);
        cx.set_term(2, r1.clone());
        cx.set_term(1, r2.clone());
        cx.set_term(0, r3.clone());
        cx.set_diff(2, GradedMap::new(r1, r2.clone(), vec![vec![p(&c, "x")]]).unwrap());
        cx.set_diff(1, GradedMap::new(r2, r3, vec![vec![p(&c, "x")]]).unwrap());
        let check = cx.check();
        assert!(!check.ok);
        assert_eq!(check.first_failure, Some((2, 0, 0)));
    }

    #[test]
    fn koszul_homology_of_regular_sequence() {
        let c = ctx();
        let cx = koszul_xy(&c);
        assert!(cx.check().ok);
        let h = homology_dims(&cx, 8).unwrap();
        // H0 = k in degree 0 only, higher homology zero.
        assert_eq!(h.get(0, 0), 1);
        for e in 1..=8 {
            assert_eq!(h.get(0, e), 0);
        }
        for n in 1..=2 {
            for e in 0..=8 {
                assert_eq!(h.get(n, e), 0, "H_{n} at degree {e}");
            }
        }
        for e in 0..=8 {
            assert!(euler_identity_holds(&cx, &h, e));
        }
    }

    #[test]
    fn two_term_with_repeated_entry_has_kernel() {
        // R(-1)^2 --(x,x)--> R over k[x]: H1 is the line (f, -f).
        let c = RingCtx::new(Field::rationals(), vec!["x".into()]);
        let src = GradedFreeModule::new(&c, vec![1, 1]);
        let tgt = GradedFreeModule::new(&c, vec![0]);
        let d = GradedMap::new(src, tgt, vec![vec![p(&c, "x"), p(&c, "x")]]).unwrap();
        let cx = ChainComplex::two_term(d, 1);
        let h = homology_dims(&cx, 6).unwrap();
        assert_eq!(h.row(0), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(h.row(1), vec![0, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn single_term_homology_is_its_dims() {
        let c = ctx();
        let cx = ChainComplex::single(3, GradedFreeModule::new(&c, vec![0, 1]));
        let h = homology_dims(&cx, 3).unwrap();
        for e in 0..=3 {
            assert_eq!(h.get(3, e), cx.dim_in_degree(3, e));
        }
    }

    #[test]
    fn dual_of_dual_is_identity_and_shift_zero() {
        let c = ctx();
        let cx = koszul_xy(&c);
        assert_eq!(cx.dual().dual(), cx);
        assert_eq!(cx.shift(0), cx);
        assert!(cx.dual().check().ok);
        assert!(cx.shift(3).check().ok);
    }

    #[test]
    fn dual_homology_mirror_over_field_pieces() {
        // Zero-variable context: graded duality holds on the nose.
        let c = RingCtx::new(Field::rationals(), vec![]);
        let t1 = GradedFreeModule::new(&c, vec![0, 2]);
        let t0 = GradedFreeModule::new(&c, vec![0]);
        let d = GradedMap::new(
            t1.clone(),
            t0.clone(),
            vec![vec![Polynomial::one(&c), Polynomial::zero(&c)]],
        )
        .unwrap();
        let cx = ChainComplex::two_term(d, 1);
        let h = homology_dims(&cx, 4).unwrap();
        let hd = homology_dims(&cx.dual(), 4).unwrap();
        for n in -2..=2 {
            for e in -4..=4i64 {
                if e <= 4 && -e <= 4 {
                    assert_eq!(h.get(n, e), hd.get(-n, -e), "n={n} e={e}");
                }
            }
        }
    }

    #[test]
    fn tensor_of_two_term_complexes_has_kuenneth_shape() {
        let c = ctx();
        let two = |v: &str| {
            let src = GradedFreeModule::new(&c, vec![1]);
            let tgt = GradedFreeModule::new(&c, vec![0]);
            ChainComplex::two_term(
                GradedMap::new(src, tgt, vec![vec![p(&c, v)]]).unwrap(),
                1,
            )
        };
        let t = two("x").tensor(&two("y")).unwrap();
        assert_eq!(t.rank_of_term(0), 1);
        assert_eq!(t.rank_of_term(1), 2);
        assert_eq!(t.rank_of_term(2), 1);
        assert!(t.check().ok);
        // The tensor of [x] and [y] is the Koszul complex of (x, y).
        let h = homology_dims(&t, 6).unwrap();
        assert_eq!(h.get(0, 0), 1);
        assert!(h.entries.iter().all(|((n, _), _)| *n == 0));
    }

    #[test]
    fn truncation_trivial_cases() {
        let c = ctx();
        let cx = koszul_xy(&c);
        let below = cx.brutal_truncation(-5);
        assert!(below.sub.is_empty());
        assert_eq!(below.quot, cx);
        let above = cx.brutal_truncation(5);
        assert_eq!(above.sub, cx);
        assert!(above.quot.is_empty());
    }

    #[test]
    fn les_exact_for_koszul_truncations() {
        let c = ctx();
        let cx = koszul_xy(&c);
        for cut in 0..=1 {
            let tr = cx.brutal_truncation(cut);
            let rep = les_exactness(&tr, 6).unwrap();
            assert!(rep.iter().all(|r| r.exact), "cut {cut}: {rep:?}");
        }
    }

    #[test]
    fn h0_presentation_of_two_term() {
        let c = ctx();
        let src = GradedFreeModule::new(&c, vec![1]);
        let tgt = GradedFreeModule::new(&c, vec![0, 0]);
        let d = GradedMap::new(src, tgt, vec![vec![p(&c, "x")], vec![p(&c, "y")]]).unwrap();
        let cx = ChainComplex::two_term(d, 1);
        let m = h0_presentation(&cx).unwrap();
        // coker of (x,y)^T: dims 2, 4, 6, ... minus the relation ranks.
        let h = homology_dims(&cx, 5).unwrap();
        for e in 0..=5 {
            assert_eq!(m.graded_dim(e), h.get(0, e));
        }
    }

    #[test]
    fn single_term_h0_is_free() {
        let c = ctx();
        let cx = ChainComplex::single(0, GradedFreeModule::new(&c, vec![0, 1]));
        let m = h0_presentation(&cx).unwrap();
        assert_eq!(m.graded_dim(0), 1);
        assert_eq!(m.graded_dim(1), 3);
    }
}
