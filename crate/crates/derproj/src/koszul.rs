//! The named complexes attached to a two-term map of graded free modules:
//! the degree-n symmetric strand, its exterior variant with divided-power
//! terms, Eagon-Northcott complexes with their det-twisted duality, and
//! cosection Koszul resolutions.

use crate::complex::{homology_dims, ChainComplex, HomologyTable};
use crate::error::{Error, Result};
use crate::module::{poly_det, GradedFreeModule, GradedMap};
use crate::multilinear::{contraction_sign, multiset_indices, subset_indices};
use crate::poly::Polynomial;
use std::collections::HashMap;

/// A map `sigma` between graded free modules of ranks `m` (source) and `n`
/// (target); its cofiber has rank `r = n - m`.
#[derive(Clone, Debug)]
pub struct TwoTermData {
    pub sigma: GradedMap,
}

impl TwoTermData {
    pub fn new(sigma: GradedMap) -> TwoTermData {
        TwoTermData { sigma }
    }

    pub fn source_rank(&self) -> usize {
        self.sigma.source.rank()
    }

    pub fn target_rank(&self) -> usize {
        self.sigma.target.rank()
    }

    pub fn rank(&self) -> i64 {
        self.target_rank() as i64 - self.source_rank() as i64
    }

    /// Data of the dual map, presenting the shifted dual of the cofiber.
    pub fn dual(&self) -> TwoTermData {
        TwoTermData { sigma: self.sigma.transpose_dual() }
    }

    /// Internal degree of the determinant line in the free presentation:
    /// sum of target generator degrees minus sum of source generator degrees.
    pub fn det_degree(&self) -> i64 {
        let s: i64 = self.sigma.source.degrees.iter().sum();
        let t: i64 = self.sigma.target.degrees.iter().sum();
        t - s
    }

    /// Determinant of the full square matrix; requires m = n.
    pub fn full_determinant(&self) -> Result<Polynomial> {
        poly_det(self.sigma.ctx(), &self.sigma.entries)
    }

    /// Maximal minor test for generic injectivity of sigma.
    pub fn generically_injective(&self) -> bool {
        let m = self.source_rank();
        let n = self.target_rank();
        let k = m.min(n);
        if k == 0 {
            return true;
        }
        let rows = subset_indices(n, k);
        let cols = subset_indices(m, k);
        for rs in &rows {
            for cs in &cols {
                let sub: Vec<Vec<Polynomial>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| self.sigma.entries[i][j].clone()).collect())
                    .collect();
                if let Ok(d) = poly_det(self.sigma.ctx(), &sub) {
                    if !d.is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Basis bookkeeping for one term of the symmetric-strand complex:
/// (subset of source generators, multiset exponent over target generators),
/// enumerated subset-major.
fn strand_term(
    data: &TwoTermData,
    i: usize,
    n: usize,
) -> (GradedFreeModule, Vec<(Vec<usize>, Vec<u16>)>) {
    let w = &data.sigma.source;
    let v = &data.sigma.target;
    let mut degrees = Vec::new();
    let mut basis = Vec::new();
    for s in subset_indices(w.rank(), i) {
        let ds: i64 = s.iter().map(|&k| w.degrees[k]).sum();
        for mu in multiset_indices(v.rank(), n - i) {
            let dmu: i64 = mu
                .iter()
                .enumerate()
                .map(|(k, &e)| v.degrees[k] * e as i64)
                .sum();
            degrees.push(ds + dmu);
            basis.push((s.clone(), mu));
        }
    }
    (GradedFreeModule::new(&w.ctx, degrees), basis)
}

/// The degree-n strand of the Koszul complex of `sigma`: term i is the i-th
/// exterior power of the source tensored with the (n-i)-th symmetric power
/// of the target, placed in homological degree i, with the contraction
/// differential `x_1^...^x_i (x) y  |->  sum_j (-1)^(j-1)
/// x_1^...x_j-hat...^x_i (x) sigma(x_j).y`.
pub fn koszul_s(data: &TwoTermData, n: usize) -> Result<ChainComplex> {
    let ctx = data.sigma.ctx().clone();
    let m = data.source_rank();
    let top = m.min(n);
    let mut cx = ChainComplex::new(&ctx);
    let mut terms = Vec::new();
    for i in 0..=top {
        let (module, basis) = strand_term(data, i, n);
        cx.set_term(i as i64, module.clone());
        terms.push((module, basis));
    }
    for i in 1..=top {
        let (src_mod, src_basis) = &terms[i];
        let (tgt_mod, tgt_basis) = &terms[i - 1];
        if src_mod.rank() == 0 || tgt_mod.rank() == 0 {
            continue;
        }
        let tgt_pos: HashMap<(Vec<usize>, Vec<u16>), usize> = tgt_basis
            .iter()
            .enumerate()
            .map(|(k, b)| (b.clone(), k))
            .collect();
        let mut entries =
            vec![vec![Polynomial::zero(&ctx); src_mod.rank()]; tgt_mod.rank()];
        for (col, (s, mu)) in src_basis.iter().enumerate() {
            for (j, &wj) in s.iter().enumerate() {
                let mut s2 = s.clone();
                s2.remove(j);
                let sign_neg = j % 2 == 1;
                for (a, row_entry) in data.sigma.entries.iter().enumerate() {
                    let coeff = &row_entry[wj];
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut mu2 = mu.clone();
                    mu2[a] += 1;
                    let row = tgt_pos[&(s2.clone(), mu2)];
                    let term = if sign_neg { coeff.neg() } else { coeff.clone() };
                    entries[row][col] = entries[row][col].add(&term)?;
                }
            }
        }
        cx.set_diff(i as i64, GradedMap::new(src_mod.clone(), tgt_mod.clone(), entries)?);
    }
    Ok(cx)
}

/// Basis for one term of the exterior-type strand: (subset of target
/// generators, divided-power multiset over source generators), enumerated
/// subset-major so it aligns index-for-index with the dual-shift route.
fn wedge_term(
    data: &TwoTermData,
    j: usize,
    n: usize,
) -> (GradedFreeModule, Vec<(Vec<usize>, Vec<u16>)>) {
    let w = &data.sigma.source;
    let v = &data.sigma.target;
    let mut degrees = Vec::new();
    let mut basis = Vec::new();
    for s in subset_indices(v.rank(), n - j) {
        let ds: i64 = s.iter().map(|&k| v.degrees[k]).sum();
        for nu in multiset_indices(w.rank(), j) {
            let dnu: i64 = nu
                .iter()
                .enumerate()
                .map(|(k, &e)| w.degrees[k] * e as i64)
                .sum();
            degrees.push(ds + dnu);
            basis.push((s.clone(), nu));
        }
    }
    (GradedFreeModule::new(&w.ctx, degrees), basis)
}

/// The exterior-type strand: term j is the j-th divided power of the source
/// tensored with the (n-j)-th exterior power of the target, with the
/// differential `g (x) eps^(nu)  |->  sum_b (sigma(eps_b) ^ g) (x)
/// eps^(nu - delta_b)`. Also built a second way, as the n-fold shift of the
/// dual of the symmetric strand of the dual map; the two must agree up to
/// the global sign (-1)^n on differentials, and a mismatch is fatal.
pub fn koszul_wedge(data: &TwoTermData, n: usize) -> Result<ChainComplex> {
    let ctx = data.sigma.ctx().clone();
    let nv = data.target_rank();
    let lo = n.saturating_sub(nv);
    let mut cx = ChainComplex::new(&ctx);
    let mut terms = Vec::new();
    for j in 0..=n {
        let (module, basis) = wedge_term(data, j, n);
        if j >= lo {
            cx.set_term(j as i64, module.clone());
        }
        terms.push((module, basis));
    }
    for j in (lo + 1).max(1)..=n {
        let (src_mod, src_basis) = &terms[j];
        let (tgt_mod, tgt_basis) = &terms[j - 1];
        if src_mod.rank() == 0 || tgt_mod.rank() == 0 {
            continue;
        }
        let tgt_pos: HashMap<(Vec<usize>, Vec<u16>), usize> = tgt_basis
            .iter()
            .enumerate()
            .map(|(k, b)| (b.clone(), k))
            .collect();
        let mut entries =
            vec![vec![Polynomial::zero(&ctx); src_mod.rank()]; tgt_mod.rank()];
        for (col, (s, nu)) in src_basis.iter().enumerate() {
            for (b, &mult) in nu.iter().enumerate() {
                if mult == 0 {
                    continue;
                }
                let mut nu2 = nu.clone();
                nu2[b] -= 1;
                for (a, row_entry) in data.sigma.entries.iter().enumerate() {
                    let coeff = &row_entry[b];
                    if coeff.is_zero() || s.contains(&a) {
                        continue;
                    }
                    let mut s2 = s.clone();
                    let pos = s2.iter().position(|&x| x > a).unwrap_or(s2.len());
                    s2.insert(pos, a);
                    // Wedging sigma(eps_b) on the left of e_S.
                    let sign_neg = pos % 2 == 1;
                    let row = tgt_pos[&(s2, nu2.clone())];
                    let term = if sign_neg { coeff.neg() } else { coeff.clone() };
                    entries[row][col] = entries[row][col].add(&term)?;
                }
            }
        }
        cx.set_diff(j as i64, GradedMap::new(src_mod.clone(), tgt_mod.clone(), entries)?);
    }

    // Cross-check against the dual-shift construction.
    let via_dual = koszul_s(&data.dual(), n)?.dual().shift(n as i64);
    let flip = n % 2 == 1;
    let same_terms = via_dual
        .terms_iter()
        .all(|(k, t)| cx.term(*k).map(|u| u.degrees == t.degrees).unwrap_or(false))
        && cx
            .terms_iter()
            .all(|(k, t)| via_dual.term(*k).map(|u| u.degrees == t.degrees).unwrap_or(false));
    if !same_terms {
        return Err(Error::Internal(
            "exterior strand: dual-shift terms disagree with the explicit formula".into(),
        ));
    }
    for (k, d) in cx.diffs_iter() {
        let other = via_dual
            .diff(*k)
            .map(|o| if flip { o.negate() } else { o.clone() });
        if other.as_ref().map(|o| o.entries == d.entries) != Some(true) {
            return Err(Error::Internal(format!(
                "exterior strand: dual-shift differential at degree {k} disagrees with the explicit formula"
            )));
        }
    }
    Ok(cx)
}

/// The det-twisted shifted dual `(S^e)^v (x) (det F)^v [1-r]`; empty when
/// e < 0.
fn en_dual_part(data: &TwoTermData, e: i64) -> Result<ChainComplex> {
    if e < 0 {
        return Ok(ChainComplex::new(data.sigma.ctx()));
    }
    let r = data.rank();
    let cx = koszul_s(data, e as usize)?;
    Ok(cx.dual().shift(1 - r).twist(-data.det_degree()))
}

/// Eagon-Northcott complex for twist `d`, per the case split on
/// `r = n - m`: the symmetric strand for large `d`, the det-twisted shifted
/// dual for `d <= -1`, and for `0 <= d <= -r` the concatenation of the two
/// glued by the contraction map out of the top exterior power.
pub fn eagon_northcott(data: &TwoTermData, d: i64) -> Result<ChainComplex> {
    let r = data.rank();
    if (r >= 1 && d >= 0) || (r <= 0 && d >= -r + 1) {
        return koszul_s(data, d as usize);
    }
    if d <= -1 {
        return en_dual_part(data, -r - d);
    }
    // r <= 0 and 0 <= d <= -r: concatenate.
    let e = -r - d;
    let lower = koszul_s(data, d as usize)?;
    let upper = en_dual_part(data, e)?;
    let mut cx = ChainComplex::new(data.sigma.ctx());
    for (&k, t) in lower.terms_iter() {
        cx.set_term(k, t.clone());
    }
    for (&k, t) in upper.terms_iter() {
        debug_assert!(k > d, "dual part must sit above the strand part");
        cx.set_term(k, t.clone());
    }
    for (&k, dm) in lower.diffs_iter() {
        cx.set_diff(k, dm.clone());
    }
    for (&k, dm) in upper.diffs_iter() {
        cx.set_diff(k, dm.clone());
    }
    if let (Some(src), Some(tgt)) = (cx.term(d + 1).cloned(), cx.term(d).cloned()) {
        cx.set_diff(d + 1, en_glue(data, d, &src, &tgt)?);
    }
    Ok(cx)
}

/// The gluing differential of the concatenated Eagon-Northcott complex: on
/// basis elements it contracts the complementary top exterior monomial by
/// the maximal minors of sigma,
/// `xi_S (x) det  |->  sum_D sign(S, D) minor_{c(S) minus D}(sigma) e_D`.
fn en_glue(
    data: &TwoTermData,
    d: i64,
    src: &GradedFreeModule,
    tgt: &GradedFreeModule,
) -> Result<GradedMap> {
    let ctx = data.sigma.ctx().clone();
    let m = data.source_rank();
    let n = data.target_rank();
    let e = (-data.rank() - d) as usize;
    let d = d as usize;
    let src_sets = subset_indices(m, e);
    let tgt_sets = subset_indices(m, d);
    debug_assert_eq!(src.rank(), src_sets.len());
    debug_assert_eq!(tgt.rank(), tgt_sets.len());
    let full: Vec<usize> = (0..m).collect();
    let mut entries = vec![vec![Polynomial::zero(&ctx); src.rank()]; tgt.rank()];
    for (col, s) in src_sets.iter().enumerate() {
        let comp: Vec<usize> = full.iter().copied().filter(|k| !s.contains(k)).collect();
        let lambda = contraction_sign(&full, s);
        for (row, dd) in tgt_sets.iter().enumerate() {
            if !dd.iter().all(|k| comp.contains(k)) {
                continue;
            }
            let t: Vec<usize> = comp.iter().copied().filter(|k| !dd.contains(k)).collect();
            debug_assert_eq!(t.len(), n);
            let sub: Vec<Vec<Polynomial>> = (0..n)
                .map(|i| t.iter().map(|&j| data.sigma.entries[i][j].clone()).collect())
                .collect();
            let minor = poly_det(&ctx, &sub)?;
            if minor.is_zero() {
                continue;
            }
            let sign = lambda * contraction_sign(&comp, &t);
            entries[row][col] = if sign < 0 { minor.neg() } else { minor };
        }
    }
    GradedMap::new(src.clone(), tgt.clone(), entries)
}

/// Termwise isomorphism data for the duality `EN_d (x) det F =
/// (EN_{-r-d})^v [1-r]`: per-degree diagonal signs intertwining the two
/// differentials.
#[derive(Debug)]
pub struct EnDuality {
    pub holds: bool,
    pub detail: String,
}

pub fn check_en_duality(data: &TwoTermData, d: i64) -> Result<EnDuality> {
    let r = data.rank();
    let lhs = eagon_northcott(data, d)?.twist(data.det_degree());
    let rhs = eagon_northcott(data, -r - d)?.dual().shift(1 - r);
    // Termwise ranks and internal degrees.
    let degrees_match = |a: &ChainComplex, b: &ChainComplex| {
        a.terms_iter()
            .all(|(k, t)| b.term(*k).map(|u| u.degrees == t.degrees).unwrap_or(false))
            && b.terms_iter()
                .all(|(k, t)| a.term(*k).map(|u| u.degrees == t.degrees).unwrap_or(false))
    };
    if !degrees_match(&lhs, &rhs) {
        return Ok(EnDuality {
            holds: false,
            detail: "termwise ranks or internal degrees disagree".into(),
        });
    }
    // Solve for diagonal +-1 isomorphisms via union-find with parity:
    // D_{k-1} lhs_k = rhs_k D_k.
    let mut nodes: HashMap<(i64, usize), usize> = HashMap::new();
    let mut id = 0usize;
    for (&k, t) in lhs.terms_iter() {
        for i in 0..t.rank() {
            nodes.insert((k, i), id);
            id += 1;
        }
    }
    let mut parent: Vec<usize> = (0..id).collect();
    let mut parity: Vec<u8> = vec![0; id];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (root, p) = find(parent, parity, parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        (root, parity[x])
    }
    let union = |parent: &mut Vec<usize>, parity: &mut Vec<u8>, a: usize, b: usize, rel: u8| -> bool {
        let (ra, pa) = find(parent, parity, a);
        let (rb, pb) = find(parent, parity, b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        parent[ra] = rb;
        parity[ra] = pa ^ pb ^ rel;
        true
    };
    let all_degrees: Vec<i64> = lhs.diffs_iter().chain(rhs.diffs_iter()).map(|(k, _)| *k).collect();
    for k in all_degrees {
        let a = lhs.diff(k).cloned();
        let b = rhs.diff(k).cloned();
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            (None, None) => continue,
            (Some(a), None) => {
                if a.is_zero() {
                    continue;
                }
                return Ok(EnDuality { holds: false, detail: format!("missing differential at {k}") });
            }
            (None, Some(b)) => {
                if b.is_zero() {
                    continue;
                }
                return Ok(EnDuality { holds: false, detail: format!("missing differential at {k}") });
            }
        };
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let p = &a.entries[i][j];
                let q = &b.entries[i][j];
                let rel = if p.is_zero() && q.is_zero() {
                    continue;
                } else if p == q {
                    0u8
                } else if *p == q.neg() {
                    1u8
                } else {
                    return Ok(EnDuality {
                        holds: false,
                        detail: format!("entries at degree {k} position ({i},{j}) differ beyond sign"),
                    });
                };
                let na = nodes[&(k, j)];
                let nb = nodes[&(k - 1, i)];
                if !union(&mut parent, &mut parity, na, nb, rel) {
                    return Ok(EnDuality {
                        holds: false,
                        detail: format!("inconsistent sign system at degree {k} position ({i},{j})"),
                    });
                }
            }
        }
    }
    Ok(EnDuality { holds: true, detail: "termwise isomorphism with diagonal signs".into() })
}

/// Full-length Koszul complex of a cosection of a free module, optionally
/// tensored with a coefficient module; homology in degree zero is the
/// quotient by the image ideal.
pub fn cosection_koszul(
    cosection: &GradedMap,
    coefficients: Option<&GradedFreeModule>,
) -> Result<ChainComplex> {
    if cosection.target.rank() != 1 {
        return Err(Error::Precondition("cosection must target a rank-1 module".into()));
    }
    let m = cosection.source.rank();
    if m == 0 {
        return Err(Error::Precondition("cosection source must have positive rank".into()));
    }
    let data = TwoTermData::new(cosection.clone());
    let cx = koszul_s(&data, m)?;
    Ok(match coefficients {
        Some(e) => cx.tensor_module(e),
        None => cx,
    })
}

/// Assemble composable maps with vanishing consecutive composites into a
/// chain complex; index k of the input maps term k+1 to term k.
pub fn convolve(maps: &[GradedMap]) -> Result<ChainComplex> {
    let Some(first) = maps.first() else {
        return Err(Error::Precondition("convolution needs at least one map".into()));
    };
    let ctx = first.ctx().clone();
    for (k, pair) in maps.windows(2).enumerate() {
        if pair[1].target.degrees != pair[0].source.degrees {
            return Err(Error::Precondition(format!(
                "maps {} and {} are not composable",
                k,
                k + 1
            )));
        }
        let comp = pair[0].compose(&pair[1])?;
        if !comp.is_zero() {
            return Err(Error::Precondition(format!(
                "composite of maps {} and {} is nonzero",
                k,
                k + 1
            )));
        }
    }
    let mut cx = ChainComplex::new(&ctx);
    cx.set_term(0, first.target.clone());
    for (k, f) in maps.iter().enumerate() {
        cx.set_term(k as i64 + 1, f.source.clone());
        cx.set_diff(k as i64 + 1, f.clone());
    }
    Ok(cx)
}

/// Homology table of the symmetric strand: the graded model of the derived
/// symmetric power of the cofiber.
pub fn derived_sym(data: &TwoTermData, n: usize, e_max: i64) -> Result<HomologyTable> {
    homology_dims(&koszul_s(data, n)?, e_max)
}

/// Homology table of the exterior strand.
pub fn derived_ext(data: &TwoTermData, n: usize, e_max: i64) -> Result<HomologyTable> {
    homology_dims(&koszul_wedge(data, n)?, e_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::multilinear::binom;
    use crate::poly::RingCtx;
    use std::sync::Arc;

    fn ctx(vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(Field::rationals(), vars.iter().map(|s| s.to_string()).collect())
    }

    fn p(c: &Arc<RingCtx>, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    fn map(
        c: &Arc<RingCtx>,
        src_deg: Vec<i64>,
        tgt_deg: Vec<i64>,
        rows: Vec<Vec<&str>>,
    ) -> GradedMap {
        GradedMap::new(
            GradedFreeModule::new(c, src_deg),
            GradedFreeModule::new(c, tgt_deg),
            rows.into_iter()
                .map(|r| r.into_iter().map(|s| p(c, s)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn xy_column(c: &Arc<RingCtx>) -> TwoTermData {
        TwoTermData::new(map(c, vec![1], vec![0, 0], vec![vec!["x"], vec!["y"]]))
    }

    #[test]
    fn strand_n0_is_the_unit() {
        let c = ctx(&["x", "y"]);
        let cx = koszul_s(&xy_column(&c), 0).unwrap();
        assert_eq!(cx.support(), Some((0, 0)));
        assert_eq!(cx.rank_of_term(0), 1);
    }

    #[test]
    fn strand_of_identity_is_acyclic() {
        let c = ctx(&["x"]);
        let id2 = TwoTermData::new(map(
            &c,
            vec![0, 0],
            vec![0, 0],
            vec![vec!["1", "0"], vec!["0", "1"]],
        ));
        for n in 1..=3 {
            let cx = koszul_s(&id2, n).unwrap();
            assert!(cx.check().ok);
            let h = homology_dims(&cx, 4).unwrap();
            assert!(h.is_zero(), "n={n}: {:?}", h.entries);
        }
    }

    #[test]
    fn strand_term_ranks_are_binomials() {
        let c = ctx(&["x", "y", "z"]);
        for m in 0..=4usize {
            for nv in 1..=4usize {
                let sigma = GradedMap::zero(
                    GradedFreeModule::new(&c, vec![1; m]),
                    GradedFreeModule::new(&c, vec![0; nv]),
                );
                let data = TwoTermData::new(sigma);
                for n in 0..=4usize {
                    let cx = koszul_s(&data, n).unwrap();
                    for i in 0..=m.min(n) {
                        let want = binom(m as u64, i as u64)
                            * binom((n - i + nv - 1) as u64, (n - i) as u64);
                        assert_eq!(
                            cx.rank_of_term(i as i64) as u64,
                            want,
                            "m={m} nv={nv} n={n} i={i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn strand_s2_of_xy_resolves_the_classical_square() {
        let c = ctx(&["x", "y"]);
        let cx = koszul_s(&xy_column(&c), 2).unwrap();
        assert!(cx.check().ok);
        assert_eq!(cx.rank_of_term(0), 3);
        assert_eq!(cx.rank_of_term(1), 2);
        let h = homology_dims(&cx, 8).unwrap();
        for e in 0..=8 {
            assert_eq!(h.get(1, e), 0);
        }
        let pres = crate::complex::h0_presentation(&cx).unwrap();
        for e in 0..=8 {
            assert_eq!(h.get(0, e), pres.graded_dim(e));
        }
    }

    #[test]
    fn illusie_suspension_for_sym() {
        // sigma : W -> 0. The strand is concentrated in degree n with the
        // exterior-power rank.
        let c = ctx(&["x"]);
        for m in 1..=4usize {
            for n in 0..=4usize {
                let sigma = GradedMap::zero(
                    GradedFreeModule::new(&c, vec![0; m]),
                    GradedFreeModule::new(&c, vec![]),
                );
                let data = TwoTermData::new(sigma);
                let cx = koszul_s(&data, n).unwrap();
                let h = homology_dims(&cx, 2).unwrap();
                let expected = binom(m as u64, n as u64);
                for (k, t) in cx.terms_iter() {
                    assert_eq!(*k, n as i64);
                    assert_eq!(t.rank() as u64, expected);
                }
                if expected > 0 {
                    assert_eq!(h.get(n as i64, 0) as u64, expected);
                }
            }
        }
    }

    #[test]
    fn wedge_matches_dual_shift_and_computes_exterior_cofiber() {
        let c = ctx(&["x", "y"]);
        let data = xy_column(&c);
        for n in 0..=3usize {
            let cx = koszul_wedge(&data, n).unwrap();
            assert!(cx.check().ok, "n={n}");
        }
        let cx = koszul_wedge(&data, 2).unwrap();
        let h = homology_dims(&cx, 8).unwrap();
        let pres = crate::complex::h0_presentation(&cx).unwrap();
        for e in 0..=8 {
            assert_eq!(h.get(0, e), pres.graded_dim(e));
        }
    }

    #[test]
    fn wedge_illusie_divided_power_ranks() {
        let c = ctx(&["x"]);
        for m in 1..=4usize {
            for n in 0..=4usize {
                let sigma = GradedMap::zero(
                    GradedFreeModule::new(&c, vec![0; m]),
                    GradedFreeModule::new(&c, vec![]),
                );
                let data = TwoTermData::new(sigma);
                let cx = koszul_wedge(&data, n).unwrap();
                let expected = if n == 0 {
                    1
                } else {
                    binom((n + m - 1) as u64, n as u64)
                };
                for (k, t) in cx.terms_iter() {
                    assert_eq!(*k, n as i64);
                    assert_eq!(t.rank() as u64, expected);
                }
            }
        }
    }

    #[test]
    fn cosection_koszul_regular_and_irregular() {
        let c = ctx(&["x", "y"]);
        // Regular sequence (x, y): acyclic above degree zero.
        let r = map(&c, vec![1, 1], vec![0], vec![vec!["x", "y"]]);
        let cx = cosection_koszul(&r, None).unwrap();
        assert!(cx.check().ok);
        let h = homology_dims(&cx, 8).unwrap();
        assert_eq!(h.get(0, 0), 1);
        assert!(h.entries.keys().all(|(n, _)| *n == 0));
        assert_eq!(h.row(0), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);

        // Non-regular (x, x): H_1 nonzero.
        let cx1 = RingCtx::new(Field::rationals(), vec!["x".into()]);
        let r = map(&cx1, vec![1, 1], vec![0], vec![vec!["x", "x"]]);
        let k = cosection_koszul(&r, None).unwrap();
        let h = homology_dims(&k, 6).unwrap();
        assert!((0..=6).any(|e| h.get(1, e) > 0));

        // Single element: [R -x-> R].
        let r = map(&cx1, vec![1], vec![0], vec![vec!["x"]]);
        let k = cosection_koszul(&r, None).unwrap();
        let h = homology_dims(&k, 6).unwrap();
        assert_eq!(h.row(0), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn convolve_roundtrip_and_rejection() {
        let c = ctx(&["x", "y"]);
        let cx = koszul_s(&xy_column(&c), 2).unwrap();
        let maps: Vec<GradedMap> = (1..=1).map(|k| cx.diff(k).unwrap().clone()).collect();
        let rebuilt = convolve(&maps).unwrap();
        assert_eq!(rebuilt.rank_of_term(0), cx.rank_of_term(0));
        assert_eq!(rebuilt.rank_of_term(1), cx.rank_of_term(1));

        // A pair with nonzero composite is rejected with the failing pair.
        let f = map(&c, vec![1], vec![0], vec![vec!["x"]]);
        let g = map(&c, vec![2], vec![1], vec![vec!["x"]]);
        let err = convolve(&[f, g]).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("0 and 1")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn en_positive_rank_positive_twist_is_the_strand() {
        let c = ctx(&["x", "y"]);
        let data = xy_column(&c);
        for d in 0..=3i64 {
            let en = eagon_northcott(&data, d).unwrap();
            let s = koszul_s(&data, d as usize).unwrap();
            assert_eq!(en, s, "d={d}");
        }
    }

    #[test]
    fn en_middle_range_vanishes_for_positive_rank() {
        let c = ctx(&["x", "y", "z"]);
        // (x,y,0)^T : rank 2, middle range is d = -1.
        let data = TwoTermData::new(map(
            &c,
            vec![1],
            vec![0, 0, 0],
            vec![vec!["x"], vec!["y"], vec!["0"]],
        ));
        let en = eagon_northcott(&data, -1).unwrap();
        assert!(en.is_empty());
    }

    #[test]
    fn en_concatenated_diag_xy() {
        let c = ctx(&["x", "y"]);
        let data = TwoTermData::new(map(
            &c,
            vec![1, 1],
            vec![0, 0],
            vec![vec!["x", "0"], vec!["0", "y"]],
        ));
        let en = eagon_northcott(&data, 0).unwrap();
        assert!(en.check().ok, "{:?}", en.check());
        assert_eq!(en.support(), Some((0, 1)));
        assert_eq!(en.rank_of_term(0), 1);
        assert_eq!(en.rank_of_term(1), 1);
        // H_0 is the coordinate ring of the union of axes: dims 1,2,2,2,...
        let h = homology_dims(&en, 8).unwrap();
        assert_eq!(h.row(0), vec![1, 2, 2, 2, 2, 2, 2, 2, 2]);
        for e in 0..=8 {
            assert_eq!(h.get(1, e), 0);
        }
    }

    #[test]
    fn en_concatenated_complexes_close_up() {
        let c = ctx(&["x", "y", "z", "w"]);
        let m22 = TwoTermData::new(map(
            &c,
            vec![1, 1],
            vec![0, 0],
            vec![vec!["x", "y"], vec!["z", "w"]],
        ));
        let en = eagon_northcott(&m22, 0).unwrap();
        assert!(en.check().ok, "2x2 d=0: {:?}", en.check());

        let m33 = TwoTermData::new(map(
            &c,
            vec![1, 1, 1],
            vec![0, 0, 0],
            vec![
                vec!["x", "y", "w"],
                vec!["z", "x", "y"],
                vec!["w", "z", "0"],
            ],
        ));
        let en = eagon_northcott(&m33, 0).unwrap();
        assert!(en.check().ok, "3x3 d=0: {:?}", en.check());

        // r = -1: W rank 2, V rank 1; concatenated for d = 0 and 1.
        let m21 = TwoTermData::new(map(&c, vec![1, 1], vec![0], vec![vec!["x", "y"]]));
        for d in 0..=1 {
            let en = eagon_northcott(&m21, d).unwrap();
            assert!(en.check().ok, "2x1 d={d}: {:?}", en.check());
        }

        // r = -2: W rank 3, V rank 1.
        let m31 = TwoTermData::new(map(&c, vec![1, 1, 1], vec![0], vec![vec!["x", "y", "z"]]));
        for d in 0..=2 {
            let en = eagon_northcott(&m31, d).unwrap();
            assert!(en.check().ok, "3x1 d={d}: {:?}", en.check());
        }
    }

    #[test]
    fn en_duality_small_cases() {
        let c2 = ctx(&["x", "y"]);
        let c = ctx(&["x", "y", "z", "w"]);
        let cases: Vec<TwoTermData> = vec![
            xy_column(&c2),
            TwoTermData::new(map(
                &c,
                vec![1, 1],
                vec![0, 0],
                vec![vec!["x", "0"], vec!["0", "y"]],
            )),
            TwoTermData::new(map(&c, vec![1, 1], vec![0], vec![vec!["x", "y"]])),
            TwoTermData::new(map(
                &c,
                vec![1],
                vec![0, 0, 0],
                vec![vec!["x"], vec!["y"], vec!["0"]],
            )),
        ];
        for data in &cases {
            let r = data.rank();
            for d in (-r - 3)..=3 {
                let dual = check_en_duality(data, d).unwrap();
                assert!(
                    dual.holds,
                    "m={} n={} d={d}: {}",
                    data.source_rank(),
                    data.target_rank(),
                    dual.detail
                );
            }
        }
    }

    #[test]
    fn derived_sym_of_suspension_is_exterior() {
        // Zero-variable coefficients so graded dimensions see only ranks.
        let c = ctx(&[]);
        let sigma = GradedMap::zero(
            GradedFreeModule::new(&c, vec![0, 0, 0]),
            GradedFreeModule::new(&c, vec![]),
        );
        let data = TwoTermData::new(sigma);
        let h = derived_sym(&data, 2, 2).unwrap();
        assert_eq!(h.get(2, 0), 3); // C(3,2)
        assert_eq!(h.entries.len(), 1);
    }

    #[test]
    fn base_change_commutes_with_strand() {
        let c = ctx(&["x", "y"]);
        let zero_ctx = RingCtx::new(Field::rationals(), vec![]);
        let f = Field::rationals();
        let data = xy_column(&c);
        let point = vec![f.from_i64(2), f.from_i64(-3)];
        for n in 0..=3usize {
            let cx = koszul_s(&data, n).unwrap();
            let specialized = TwoTermData::new(data.sigma.evaluate(&point, &zero_ctx));
            let cx_spec = koszul_s(&specialized, n).unwrap();
            for (k, dm) in cx.diffs_iter() {
                let lhs = dm.evaluate(&point, &zero_ctx);
                let rhs = cx_spec.diff(*k).unwrap();
                assert_eq!(lhs.entries, rhs.entries, "n={n} k={k}");
            }
        }
    }
}
