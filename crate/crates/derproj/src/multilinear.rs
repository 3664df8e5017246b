//! Functorial symmetric, exterior, and divided powers of free modules and
//! maps, exterior contraction, and the split-case filtrations of powers.

use crate::error::{Error, Result};
use crate::groebner::subsets;
use crate::module::{poly_det, GradedFreeModule, GradedMap};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use std::collections::HashMap;

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multiset indices of size `n` over `rank` positions, as exponent vectors in
/// the canonical enumeration (ascending sorted-tuple order). These index the
/// bases of both symmetric and divided powers.
pub fn multiset_indices(rank: usize, n: usize) -> Vec<Vec<u16>> {
    monomials_of_degree(rank, n as u32)
        .into_iter()
        .map(|m| m.0)
        .collect()
}

/// Strictly increasing index tuples of size `n`, lexicographic; the basis of
/// an exterior power.
pub fn subset_indices(rank: usize, n: usize) -> Vec<Vec<usize>> {
    subsets(rank, n)
}

fn multiset_degree(module: &GradedFreeModule, exps: &[u16]) -> i64 {
    exps.iter()
        .enumerate()
        .map(|(i, &e)| module.degrees[i] * e as i64)
        .sum()
}

fn subset_degree(module: &GradedFreeModule, set: &[usize]) -> i64 {
    set.iter().map(|&i| module.degrees[i]).sum()
}

pub fn sym_power_module(m: &GradedFreeModule, n: usize) -> GradedFreeModule {
    let degrees = multiset_indices(m.rank(), n)
        .iter()
        .map(|mu| multiset_degree(m, mu))
        .collect();
    GradedFreeModule::new(&m.ctx, degrees)
}

pub fn ext_power_module(m: &GradedFreeModule, n: usize) -> GradedFreeModule {
    let degrees = subset_indices(m.rank(), n)
        .iter()
        .map(|s| subset_degree(m, s))
        .collect();
    GradedFreeModule::new(&m.ctx, degrees)
}

pub fn div_power_module(m: &GradedFreeModule, n: usize) -> GradedFreeModule {
    sym_power_module(m, n)
}

/// Induced map on n-th symmetric powers in the canonical multiset bases.
pub fn sym_power(f: &GradedMap, n: usize) -> GradedMap {
    let ctx = f.ctx().clone();
    let src_basis = multiset_indices(f.source.rank(), n);
    let tgt_basis = multiset_indices(f.target.rank(), n);
    let tgt_pos: HashMap<Vec<u16>, usize> = tgt_basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    let mut entries =
        vec![vec![Polynomial::zero(&ctx); src_basis.len()]; tgt_basis.len()];
    for (col, mu) in src_basis.iter().enumerate() {
        // Expand the product of f(e_j)^(mu_j) over the target monomial basis.
        let mut acc: HashMap<Vec<u16>, Polynomial> = HashMap::new();
        acc.insert(vec![0u16; f.target.rank()], Polynomial::one(&ctx));
        for (j, &mult) in mu.iter().enumerate() {
            for _ in 0..mult {
                let mut next: HashMap<Vec<u16>, Polynomial> = HashMap::new();
                for (nu, coeff) in &acc {
                    for i in 0..f.target.rank() {
                        let ent = &f.entries[i][j];
                        if ent.is_zero() {
                            continue;
                        }
                        let mut nu2 = nu.clone();
                        nu2[i] += 1;
                        let add = coeff.mul(ent).expect("same context");
                        match next.entry(nu2) {
                            std::collections::hash_map::Entry::Occupied(mut e) => {
                                let s = e.get().add(&add).expect("same context");
                                e.insert(s);
                            }
                            std::collections::hash_map::Entry::Vacant(e) => {
                                e.insert(add);
                            }
                        }
                    }
                }
                acc = next;
            }
        }
        for (nu, coeff) in acc {
            if coeff.is_zero() {
                continue;
            }
            let row = tgt_pos[&nu];
            entries[row][col] = coeff;
        }
    }
    GradedMap {
        source: sym_power_module(&f.source, n),
        target: sym_power_module(&f.target, n),
        entries,
    }
}

/// Induced map on n-th exterior powers: entries are the n x n minors.
pub fn ext_power(f: &GradedMap, n: usize) -> GradedMap {
    let ctx = f.ctx().clone();
    let src_basis = subset_indices(f.source.rank(), n);
    let tgt_basis = subset_indices(f.target.rank(), n);
    let mut entries =
        vec![vec![Polynomial::zero(&ctx); src_basis.len()]; tgt_basis.len()];
    for (col, s) in src_basis.iter().enumerate() {
        for (row, t) in tgt_basis.iter().enumerate() {
            let sub: Vec<Vec<Polynomial>> = t
                .iter()
                .map(|&i| s.iter().map(|&j| f.entries[i][j].clone()).collect())
                .collect();
            entries[row][col] = poly_det(&ctx, &sub).expect("square minor");
        }
    }
    GradedMap {
        source: ext_power_module(&f.source, n),
        target: ext_power_module(&f.target, n),
        entries,
    }
}

/// Induced map on n-th divided powers, via the pairing that makes the
/// divided power of a free module the dual of the symmetric power of the
/// dual: the matrix is the transpose of `sym_power` of the transpose.
pub fn div_power(f: &GradedMap, n: usize) -> GradedMap {
    let s = sym_power(&f.transpose_dual(), n);
    let mut entries =
        vec![vec![Polynomial::zero(f.ctx()); s.target.rank()]; s.source.rank()];
    for i in 0..s.target.rank() {
        for j in 0..s.source.rank() {
            entries[j][i] = s.entries[i][j].clone();
        }
    }
    GradedMap {
        source: div_power_module(&f.source, n),
        target: div_power_module(&f.target, n),
        entries,
    }
}

/// Exact determinant of a square graded map.
pub fn determinant(f: &GradedMap) -> Result<Polynomial> {
    if f.rows() != f.cols() {
        return Err(Error::Precondition("determinant of a non-square map".into()));
    }
    poly_det(f.ctx(), &f.entries)
}

/// Sign that sorts the concatenation of two disjoint ascending index lists.
pub fn shuffle_sign(left: &[usize], right: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for &l in left {
        for &r in right {
            if l > r {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Contraction sign: `e_{S minus T} ^ e_T = sign(S, T) e_S` for `T` a subset
/// of the ascending index set `S`. This is the convention used throughout;
/// it makes the Eagon-Northcott gluing and duality checks close up.
pub fn contraction_sign(s: &[usize], t: &[usize]) -> i32 {
    let s_minus_t: Vec<usize> = s.iter().copied().filter(|i| !t.contains(i)).collect();
    shuffle_sign(&s_minus_t, t)
}

/// Interior product of an element of the s-th exterior power against an
/// element of the t-th exterior power of the dual, in the canonical subset
/// bases: basis pairs contract by `xi_T . e_S = sign(S, T) e_{S minus T}`.
/// Coefficient vectors are indexed by `subset_indices`.
pub fn interior_product(
    module: &GradedFreeModule,
    s: usize,
    a: &[Polynomial],
    t: usize,
    phi: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    if t > s {
        return Err(Error::Precondition(
            "interior product needs contraction degree at most the element degree".into(),
        ));
    }
    let ctx = &module.ctx;
    let r = module.rank();
    let s_basis = subset_indices(r, s);
    let t_basis = subset_indices(r, t);
    let out_basis = subset_indices(r, s - t);
    if a.len() != s_basis.len() || phi.len() != t_basis.len() {
        return Err(Error::Precondition("coefficient vector length mismatch".into()));
    }
    let out_pos: HashMap<Vec<usize>, usize> = out_basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    let mut out = vec![Polynomial::zero(ctx); out_basis.len()];
    for (ia, set_s) in s_basis.iter().enumerate() {
        if a[ia].is_zero() {
            continue;
        }
        for (ip, set_t) in t_basis.iter().enumerate() {
            if phi[ip].is_zero() {
                continue;
            }
            if !set_t.iter().all(|x| set_s.contains(x)) {
                continue;
            }
            let rest: Vec<usize> =
                set_s.iter().copied().filter(|x| !set_t.contains(x)).collect();
            let sign = contraction_sign(set_s, set_t);
            let term = a[ia].mul(&phi[ip])?;
            let term = if sign < 0 { term.neg() } else { term };
            let k = out_pos[&rest];
            out[k] = out[k].add(&term)?;
        }
    }
    Ok(out)
}

/// One stratum of a power filtration in the split case: the stratum is the
/// span of the listed canonical basis indices, and the successive quotient
/// is identified with a product of powers by an explicit basis bijection.
#[derive(Clone, Debug)]
pub struct FiltrationStratum {
    pub level: usize,
    /// Indices (into the canonical basis of the total power) spanning this
    /// stratum.
    pub basis_indices: Vec<usize>,
    /// For each quotient basis element: (index in the product basis of
    /// powers of the two summands, index in the total power basis).
    pub quotient_iso: Vec<(usize, usize)>,
    pub quotient_rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    Sym,
    Ext,
    Div,
}

/// Filtration of the n-th power of a split direct sum `M = M1 + M2` by the
/// content of the second summand: stratum i is spanned by basis elements
/// with at most i factors from `M2`, and its quotient by stratum i-1 is the
/// product of the (n-i)-th power of `M1` with the i-th power of `M2`.
pub fn power_filtration(
    kind: PowerKind,
    m1: &GradedFreeModule,
    m2: &GradedFreeModule,
    n: usize,
) -> Vec<FiltrationStratum> {
    let r1 = m1.rank();
    let total = m1.direct_sum(m2);
    let mut strata = Vec::new();
    // Content of M2 in a basis index of the total power.
    let contents: Vec<usize> = match kind {
        PowerKind::Sym | PowerKind::Div => multiset_indices(total.rank(), n)
            .iter()
            .map(|mu| mu[r1..].iter().map(|&e| e as usize).sum())
            .collect(),
        PowerKind::Ext => subset_indices(total.rank(), n)
            .iter()
            .map(|s| s.iter().filter(|&&i| i >= r1).count())
            .collect(),
    };
    for i in 0..=n {
        let basis_indices: Vec<usize> = contents
            .iter()
            .enumerate()
            .filter(|(_, &c)| c <= i)
            .map(|(k, _)| k)
            .collect();
        // Quotient basis: total-power indices with content exactly i,
        // matched with the product basis of the two factor powers.
        let exact: Vec<usize> = contents
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == i)
            .map(|(k, _)| k)
            .collect();
        let quotient_iso: Vec<(usize, usize)> = match kind {
            PowerKind::Sym | PowerKind::Div => {
                let b1 = multiset_indices(r1, n - i);
                let b2 = multiset_indices(m2.rank(), i);
                let all = multiset_indices(total.rank(), n);
                let mut iso = Vec::new();
                for (p1, mu1) in b1.iter().enumerate() {
                    for (p2, mu2) in b2.iter().enumerate() {
                        let mut mu = mu1.clone();
                        mu.extend_from_slice(mu2);
                        let k = all.iter().position(|x| *x == mu).unwrap();
                        iso.push((p1 * b2.len() + p2, k));
                    }
                }
                iso
            }
            PowerKind::Ext => {
                let b1 = subset_indices(r1, n - i);
                let b2 = subset_indices(m2.rank(), i);
                let all = subset_indices(total.rank(), n);
                let mut iso = Vec::new();
                for (p1, s1) in b1.iter().enumerate() {
                    for (p2, s2) in b2.iter().enumerate() {
                        let mut set = s1.clone();
                        set.extend(s2.iter().map(|&j| j + r1));
                        let k = all.iter().position(|x| *x == set).unwrap();
                        iso.push((p1 * b2.len() + p2, k));
                    }
                }
                iso
            }
        };
        debug_assert_eq!(quotient_iso.len(), exact.len());
        strata.push(FiltrationStratum {
            level: i,
            basis_indices,
            quotient_rank: exact.len(),
            quotient_iso,
        });
    }
    strata
}
