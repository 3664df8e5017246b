//! Truncated simplicial modules: the Dold-Kan construction, Moore
//! normalization, simplicial symmetric algebras of a two-term map, and
//! simplicial Koszul algebras of a sequence, with homotopy read off the
//! normalized chains per internal degree.

use crate::complex::{homology_dims, ChainComplex, HomologyTable};
use crate::error::{Error, Result};
use crate::koszul::TwoTermData;
use crate::linalg::{left_inverse, nullspace, Mat};
use crate::module::{GradedFreeModule, GradedMap};
use crate::monomial::monomials_of_degree;
use crate::multilinear::multiset_indices;
use crate::poly::{Polynomial, RingCtx};
use std::collections::HashMap;
use std::sync::Arc;

/// Levels 0..=N of a simplicial module with faces and degeneracies.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialModule {
    pub level_bound: usize,
    pub levels: Vec<GradedFreeModule>,
    /// `faces[n]` holds d_0..d_n from level n to level n-1 (empty at n = 0).
    pub faces: Vec<Vec<GradedMap>>,
    /// `degens[n]` holds s_0..s_n from level n to level n+1 (absent at n = N).
    pub degens: Vec<Vec<GradedMap>>,
}

/// Bounds that finitize the simplicial constructions: total symmetric
/// degree, internal degree, and level.
#[derive(Clone, Copy, Debug)]
pub struct SimplicialWindow {
    pub sym_degree_bound: usize,
    pub internal_bound: i64,
    pub level_bound: usize,
}

impl TruncatedSimplicialModule {
    pub fn level_rank(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, |l| l.rank())
    }

    /// All simplicial identities that involve only levels within the
    /// truncation, verified symbolically.
    pub fn verify_identities(&self) -> Result<()> {
        let nn = self.level_bound;
        let face = |n: usize, i: usize| -> &GradedMap { &self.faces[n][i] };
        let degen = |n: usize, i: usize| -> &GradedMap { &self.degens[n][i] };
        // d_i d_j = d_{j-1} d_i for i < j, on levels n >= 2.
        for n in 2..=nn {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = face(n - 1, i).compose(face(n, j))?;
                    let rhs = face(n - 1, j - 1).compose(face(n, i))?;
                    if lhs.entries != rhs.entries {
                        return Err(Error::Internal(format!(
                            "simplicial identity d_{i} d_{j} failed at level {n}"
                        )));
                    }
                }
            }
        }
        // d_i s_j identities on levels n with n + 1 <= N.
        for n in 0..nn {
            for j in 0..=n {
                for i in 0..=(n + 1) {
                    let lhs = face(n + 1, i).compose(degen(n, j))?;
                    let ok = if i == j || i == j + 1 {
                        lhs.entries == GradedMap::identity(&self.levels[n]).entries
                    } else if i < j {
                        let rhs = degen(n - 1, j - 1).compose(face(n, i))?;
                        lhs.entries == rhs.entries
                    } else {
                        let rhs = degen(n - 1, j).compose(face(n, i - 1))?;
                        lhs.entries == rhs.entries
                    };
                    if !ok {
                        return Err(Error::Internal(format!(
                            "simplicial identity d_{i} s_{j} failed at level {n}"
                        )));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j, when level n + 2 <= N.
        for n in 0..nn.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = degen(n + 1, i).compose(degen(n, j))?;
                    let rhs = degen(n + 1, j + 1).compose(degen(n, i))?;
                    if lhs.entries != rhs.entries {
                        return Err(Error::Internal(format!(
                            "simplicial identity s_{i} s_{j} failed at level {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, elide_matrices_above: usize) -> serde_json::Value {
        let ranks: Vec<usize> = (0..=self.level_bound).map(|n| self.level_rank(n)).collect();
        let matrices = |maps: &[GradedMap]| -> serde_json::Value {
            serde_json::Value::Array(
                maps.iter()
                    .map(|m| {
                        if m.rows() * m.cols() > elide_matrices_above {
                            serde_json::json!({
                                "rows": m.rows(),
                                "cols": m.cols(),
                                "elided": true
                            })
                        } else {
                            serde_json::Value::Array(
                                m.entries
                                    .iter()
                                    .map(|row| {
                                        serde_json::Value::Array(
                                            row.iter()
                                                .map(|p| serde_json::Value::from(p.to_string()))
                                                .collect(),
                                        )
                                    })
                                    .collect(),
                            )
                        }
                    })
                    .collect(),
            )
        };
        serde_json::json!({
            "level_bound": self.level_bound,
            "level_ranks": ranks,
            "faces": self.faces.iter().map(|f| matrices(f)).collect::<Vec<_>>(),
            "degeneracies": self.degens.iter().map(|f| matrices(f)).collect::<Vec<_>>(),
        })
    }
}

// ---------------------------------------------------------------------------
// Dold-Kan
// ---------------------------------------------------------------------------

/// Monotone surjection [n] ->> [k], stored by its value list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Surjection(Vec<usize>);

/// Surjections [n] ->> [k], enumerated by the lex-ordered jump sets.
fn surjections(n: usize, k: usize) -> Vec<Surjection> {
    if k > n {
        return vec![];
    }
    // The value rises by one exactly after the positions in a k-subset of
    // {0..n-1}.
    crate::groebner::subsets(n, k)
        .into_iter()
        .map(|jumps| {
            let mut vals = Vec::with_capacity(n + 1);
            let mut v = 0usize;
            for t in 0..=n {
                if t > 0 && jumps.contains(&(t - 1)) {
                    v += 1;
                }
                vals.push(v);
            }
            Surjection(vals)
        })
        .collect()
}

/// The Dold-Kan simplicial module of a complex supported in [0, N]: level n
/// is the sum of one copy of P_k per surjection [n] ->> [k], with the
/// structure maps determined by epi-mono factorization; the mono missing 0
/// acts by the differential.
pub fn dold_kan(p: &ChainComplex, level_bound: usize) -> Result<TruncatedSimplicialModule> {
    if let Some((lo, hi)) = p.support() {
        if lo < 0 || hi > level_bound as i64 {
            return Err(Error::Precondition(format!(
                "complex must be supported in [0, {level_bound}], found [{lo}, {hi}]"
            )));
        }
    }
    let ctx = p.ctx.clone();
    let mut comps: Vec<Vec<(Surjection, usize)>> = Vec::new();
    let mut levels: Vec<GradedFreeModule> = Vec::new();
    for n in 0..=level_bound {
        let mut list = Vec::new();
        let mut degrees = Vec::new();
        for k in 0..=n {
            let Some(term) = p.term(k as i64) else { continue };
            for a in surjections(n, k) {
                list.push((a, k));
                degrees.extend_from_slice(&term.degrees);
            }
        }
        comps.push(list);
        levels.push(GradedFreeModule::new(&ctx, degrees));
    }
    let offsets = |list: &[(Surjection, usize)]| -> Vec<usize> {
        let mut off = Vec::with_capacity(list.len());
        let mut acc = 0usize;
        for (_, k) in list {
            off.push(acc);
            acc += p.rank_of_term(*k as i64);
        }
        off
    };

    let act = |theta: &[usize], src_level: usize, tgt_level: usize| -> Result<GradedMap> {
        let src_comps = &comps[src_level];
        let tgt_comps = &comps[tgt_level];
        let so = offsets(src_comps);
        let to = offsets(tgt_comps);
        let tgt_pos: HashMap<&Surjection, usize> = tgt_comps
            .iter()
            .enumerate()
            .map(|(i, (a, _))| (a, i))
            .collect();
        let mut entries = vec![
            vec![Polynomial::zero(&ctx); levels[src_level].rank()];
            levels[tgt_level].rank()
        ];
        for (ci, (alpha, k)) in src_comps.iter().enumerate() {
            // beta = alpha . theta, then epi-mono factorization.
            let beta: Vec<usize> = theta.iter().map(|&t| alpha.0[t]).collect();
            let mut image: Vec<usize> = beta.clone();
            image.dedup();
            let j = image.len() - 1;
            let epi: Vec<usize> = beta
                .iter()
                .map(|v| image.iter().position(|x| x == v).unwrap())
                .collect();
            let epi = Surjection(epi);
            let Some(&cj) = tgt_pos.get(&epi) else { continue };
            let rk = p.rank_of_term(*k as i64);
            if j == *k {
                for t in 0..rk {
                    entries[to[cj] + t][so[ci] + t] = Polynomial::one(&ctx);
                }
            } else if j + 1 == *k && image == (1..=*k).collect::<Vec<_>>() {
                // The mono misses 0: act by the differential.
                if let Some(d) = p.diff(*k as i64) {
                    let rj = p.rank_of_term(j as i64);
                    for a in 0..rj {
                        for b in 0..rk {
                            if !d.entries[a][b].is_zero() {
                                entries[to[cj] + a][so[ci] + b] = d.entries[a][b].clone();
                            }
                        }
                    }
                }
            }
        }
        GradedMap::new(levels[src_level].clone(), levels[tgt_level].clone(), entries)
    };

    let mut faces = Vec::new();
    let mut degens = Vec::new();
    for n in 0..=level_bound {
        let mut fs = Vec::new();
        if n > 0 {
            for i in 0..=n {
                // delta^i : [n-1] -> [n] misses i.
                let theta: Vec<usize> = (0..n).map(|t| if t < i { t } else { t + 1 }).collect();
                fs.push(act(&theta, n, n - 1)?);
            }
        }
        faces.push(fs);
        if n < level_bound {
            let mut ss = Vec::new();
            for i in 0..=n {
                // sigma^i : [n+1] -> [n] repeats i.
                let theta: Vec<usize> =
                    (0..=(n + 1)).map(|t| if t <= i { t } else { t - 1 }).collect();
                ss.push(act(&theta, n, n + 1)?);
            }
            degens.push(ss);
        }
    }
    Ok(TruncatedSimplicialModule { level_bound, levels, faces, degens })
}

// ---------------------------------------------------------------------------
// Moore normalization
// ---------------------------------------------------------------------------

fn constant_matrix(map: &GradedMap) -> Result<Mat> {
    let field = map.ctx().field;
    let mut m = Mat::zeros(field, map.rows(), map.cols());
    for i in 0..map.rows() {
        for j in 0..map.cols() {
            let p = &map.entries[i][j];
            if p.is_zero() {
                continue;
            }
            if !p.is_constant() {
                return Err(Error::Precondition(
                    "normalization requires faces d_1..d_n with constant entries".into(),
                ));
            }
            *m.at_mut(i, j) = p.terms()[0].1.clone();
        }
    }
    Ok(m)
}

/// The Moore complex: term n is the intersection of the kernels of d_1..d_n
/// inside level n, with differential d_0. Valid for homology up to level
/// N-1.
pub fn normalize(s: &TruncatedSimplicialModule) -> Result<ChainComplex> {
    let ctx = s.levels[0].ctx.clone();
    let field = ctx.field;
    let mut cx = ChainComplex::new(&ctx);
    let mut bases: Vec<Mat> = Vec::new();
    let mut moore_terms: Vec<GradedFreeModule> = Vec::new();
    for n in 0..=s.level_bound {
        let rank = s.level_rank(n);
        let basis = if n == 0 {
            Mat::identity(field, rank)
        } else {
            let stacked: Vec<Mat> = (1..=n)
                .map(|i| constant_matrix(&s.faces[n][i]))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Mat> = stacked.iter().collect();
            nullspace(&Mat::vstack(field, &refs))
        };
        // Degrees: each basis column must be degree-pure, which holds
        // because constant entries only relate generators of equal degree.
        let mut degrees = Vec::with_capacity(basis.cols);
        for c in 0..basis.cols {
            let mut deg: Option<i64> = None;
            for row in 0..basis.rows {
                if !field.is_zero(basis.at(row, c)) {
                    let d = s.levels[n].degrees[row];
                    if deg.is_some() && deg != Some(d) {
                        return Err(Error::Internal(
                            "Moore basis vector mixes internal degrees".into(),
                        ));
                    }
                    deg = Some(d);
                }
            }
            degrees.push(deg.unwrap_or(0));
        }
        let term = GradedFreeModule::new(&ctx, degrees);
        cx.set_term(n as i64, term.clone());
        moore_terms.push(term);
        bases.push(basis);
    }
    for n in 1..=s.level_bound {
        if moore_terms[n].rank() == 0 || s.level_rank(n - 1) == 0 {
            continue;
        }
        let d0 = &s.faces[n][0];
        let bn = &bases[n];
        // Polynomial matrix H = d0 . basis_n.
        let mut h = vec![vec![Polynomial::zero(&ctx); bn.cols]; d0.rows()];
        for i in 0..d0.rows() {
            for c in 0..bn.cols {
                let mut acc = Polynomial::zero(&ctx);
                for j in 0..d0.cols() {
                    let coef = bn.at(j, c);
                    if field.is_zero(coef) || d0.entries[i][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&d0.entries[i][j].scale(coef))?;
                }
                h[i][c] = acc;
            }
        }
        let l = left_inverse(&bases[n - 1])
            .ok_or_else(|| Error::Internal("Moore basis not independent".into()))?;
        // X = L . H, then verify basis_{n-1} . X = H exactly.
        let mut x = vec![vec![Polynomial::zero(&ctx); bn.cols]; moore_terms[n - 1].rank()];
        for (i, x_row) in x.iter_mut().enumerate() {
            for c in 0..bn.cols {
                let mut acc = Polynomial::zero(&ctx);
                for (j, h_row) in h.iter().enumerate() {
                    let coef = l.at(i, j);
                    if field.is_zero(coef) || h_row[c].is_zero() {
                        continue;
                    }
                    acc = acc.add(&h_row[c].scale(coef))?;
                }
                x_row[c] = acc;
            }
        }
        for (i, h_row) in h.iter().enumerate() {
            for c in 0..bn.cols {
                let mut acc = Polynomial::zero(&ctx);
                for (k, x_row) in x.iter().enumerate() {
                    let coef = bases[n - 1].at(i, k);
                    if field.is_zero(coef) || x_row[c].is_zero() {
                        continue;
                    }
                    acc = acc.add(&x_row[c].scale(coef))?;
                }
                if acc != h_row[c] {
                    return Err(Error::Internal(
                        "Moore differential does not land in the normalized part".into(),
                    ));
                }
            }
        }
        cx.set_diff(
            n as i64,
            GradedMap::new(moore_terms[n].clone(), moore_terms[n - 1].clone(), x)?,
        );
    }
    Ok(cx)
}

/// Homotopy dimensions with the validity bound N-1 attached.
#[derive(Clone, Debug)]
pub struct HomotopyTable {
    pub table: HomologyTable,
    /// Homological degrees above this bound are artifacts of the truncation.
    pub valid_up_to: i64,
}

pub fn homotopy_dims(s: &TruncatedSimplicialModule, e_max: i64) -> Result<HomotopyTable> {
    let cx = normalize(s)?;
    let table = homology_dims(&cx, e_max)?;
    Ok(HomotopyTable { table, valid_up_to: s.level_bound as i64 - 1 })
}

// ---------------------------------------------------------------------------
// Simplicial symmetric algebra of a two-term map
// ---------------------------------------------------------------------------

/// Basis element of one level of the degree-d piece: slot 0 is a multiset
/// over the target generators, slots 1..=n multisets over the source
/// generators, sizes summing to d.
type SlotBasis = Vec<Vec<Vec<u16>>>;

fn product_basis(slot_choices: &[Vec<Vec<u16>>]) -> Vec<Vec<Vec<u16>>> {
    let mut stack: Vec<Vec<Vec<u16>>> = vec![vec![]];
    for choices in slot_choices {
        let mut next = Vec::new();
        for partial in &stack {
            for c in choices {
                let mut t = partial.clone();
                t.push(c.clone());
                next.push(t);
            }
        }
        stack = next;
    }
    stack
}

fn sym_level_basis(nv: usize, nw: usize, n: usize, d: usize) -> SlotBasis {
    let mut out = Vec::new();
    for comp in monomials_of_degree(n + 1, d as u32) {
        let mut slot_choices: Vec<Vec<Vec<u16>>> = Vec::with_capacity(n + 1);
        slot_choices.push(multiset_indices(nv, comp.0[0] as usize));
        for s in 1..=n {
            slot_choices.push(multiset_indices(nw, comp.0[s] as usize));
        }
        if slot_choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        out.extend(product_basis(&slot_choices));
    }
    out
}

/// The degree-d graded piece of the simplicial symmetric algebra of sigma,
/// truncated at the window's level bound: the zeroth face pushes the first
/// source slot through sigma, inner faces multiply adjacent slots, the last
/// face kills positive degrees, and degeneracies insert empty slots.
pub fn simplicial_sym(
    data: &TwoTermData,
    d: usize,
    window: &SimplicialWindow,
) -> Result<TruncatedSimplicialModule> {
    let ctx = data.sigma.ctx().clone();
    let v = &data.sigma.target;
    let w = &data.sigma.source;
    let (nv, nw) = (v.rank(), w.rank());
    let nn = window.level_bound;
    let bases: Vec<SlotBasis> = (0..=nn).map(|n| sym_level_basis(nv, nw, n, d)).collect();
    let levels: Vec<GradedFreeModule> = bases
        .iter()
        .map(|b| {
            let degrees = b
                .iter()
                .map(|slots| {
                    let mut deg: i64 = slots[0]
                        .iter()
                        .enumerate()
                        .map(|(a, &e)| v.degrees[a] * e as i64)
                        .sum();
                    for slot in &slots[1..] {
                        deg += slot
                            .iter()
                            .enumerate()
                            .map(|(b, &e)| w.degrees[b] * e as i64)
                            .sum::<i64>();
                    }
                    deg
                })
                .collect();
            GradedFreeModule::new(&ctx, degrees)
        })
        .collect();
    let pos: Vec<HashMap<&Vec<Vec<u16>>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, x)| (x, i)).collect())
        .collect();

    let mut faces: Vec<Vec<GradedMap>> = Vec::new();
    let mut degens: Vec<Vec<GradedMap>> = Vec::new();
    for n in 0..=nn {
        let mut fs = Vec::new();
        if n > 0 {
            for i in 0..=n {
                let mut entries =
                    vec![vec![Polynomial::zero(&ctx); levels[n].rank()]; levels[n - 1].rank()];
                for (col, slots) in bases[n].iter().enumerate() {
                    if i == 0 {
                        // Push slot 1 through the symmetric algebra of sigma
                        // and multiply the result into slot 0.
                        let mut acc: HashMap<Vec<u16>, Polynomial> = HashMap::new();
                        acc.insert(slots[0].clone(), Polynomial::one(&ctx));
                        for (b, &mult) in slots[1].iter().enumerate() {
                            for _ in 0..mult {
                                let mut next: HashMap<Vec<u16>, Polynomial> = HashMap::new();
                                for (mu, coeff) in &acc {
                                    for (a, row) in data.sigma.entries.iter().enumerate() {
                                        let ent = &row[b];
                                        if ent.is_zero() {
                                            continue;
                                        }
                                        let mut mu2 = mu.clone();
                                        mu2[a] += 1;
                                        let add = coeff.mul(ent)?;
                                        match next.entry(mu2) {
                                            std::collections::hash_map::Entry::Occupied(mut e) => {
                                                let sum = e.get().add(&add)?;
                                                e.insert(sum);
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
                        for (mu, coeff) in acc {
                            if coeff.is_zero() {
                                continue;
                            }
                            let mut tgt = vec![mu];
                            tgt.extend_from_slice(&slots[2..]);
                            let row = *pos[n - 1]
                                .get(&tgt)
                                .ok_or_else(|| Error::Internal("window not closed".into()))?;
                            entries[row][col] = entries[row][col].add(&coeff)?;
                        }
                    } else if i < n {
                        let mut tgt = slots.clone();
                        let merged: Vec<u16> =
                            tgt[i].iter().zip(&tgt[i + 1]).map(|(x, y)| x + y).collect();
                        tgt[i] = merged;
                        tgt.remove(i + 1);
                        let row = *pos[n - 1]
                            .get(&tgt)
                            .ok_or_else(|| Error::Internal("window not closed".into()))?;
                        entries[row][col] = Polynomial::one(&ctx);
                    } else if slots[n].iter().all(|&e| e == 0) {
                        // Last face: evaluate the final slot at the zero map.
                        let mut tgt = slots.clone();
                        tgt.pop();
                        let row = *pos[n - 1]
                            .get(&tgt)
                            .ok_or_else(|| Error::Internal("window not closed".into()))?;
                        entries[row][col] = Polynomial::one(&ctx);
                    }
                }
                fs.push(GradedMap::new(levels[n].clone(), levels[n - 1].clone(), entries)?);
            }
        }
        faces.push(fs);
        if n < nn {
            let mut ss = Vec::new();
            for i in 0..=n {
                let mut entries =
                    vec![vec![Polynomial::zero(&ctx); levels[n].rank()]; levels[n + 1].rank()];
                for (col, slots) in bases[n].iter().enumerate() {
                    let mut tgt = slots.clone();
                    tgt.insert(i + 1, vec![0u16; nw]);
                    let row = *pos[n + 1]
                        .get(&tgt)
                        .ok_or_else(|| Error::Internal("window not closed".into()))?;
                    entries[row][col] = Polynomial::one(&ctx);
                }
                ss.push(GradedMap::new(levels[n].clone(), levels[n + 1].clone(), entries)?);
            }
            degens.push(ss);
        }
    }
    Ok(TruncatedSimplicialModule { level_bound: nn, levels, faces, degens })
}

// ---------------------------------------------------------------------------
// Simplicial Koszul algebra of a sequence
// ---------------------------------------------------------------------------

fn kos_level_basis(m: usize, n: usize, d_bound: usize) -> SlotBasis {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for total in 0..=d_bound {
        for comp in monomials_of_degree(n, total as u32) {
            let slot_choices: Vec<Vec<Vec<u16>>> = (0..n)
                .map(|s| multiset_indices(m, comp.0[s] as usize))
                .collect();
            if slot_choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            out.extend(product_basis(&slot_choices));
        }
    }
    out
}

/// The simplicial Koszul algebra of a homogeneous sequence in bar form,
/// cut to total symmetric degree at most the window bound (a cut that is
/// closed under all faces and degeneracies): the zeroth face evaluates the
/// first slot at the sequence, inner faces multiply adjacent slots, the
/// last face evaluates the final slot at zero.
pub fn simplicial_koszul(
    ctx: &Arc<RingCtx>,
    sequence: &[Polynomial],
    window: &SimplicialWindow,
) -> Result<TruncatedSimplicialModule> {
    let m = sequence.len();
    let mut seq_degrees = Vec::with_capacity(m);
    for r in sequence {
        if r.ctx != *ctx {
            return Err(Error::ContextMismatch("sequence element in wrong ring".into()));
        }
        if r.is_zero() {
            seq_degrees.push(0);
        } else {
            let Some(d) = r.homogeneous_degree() else {
                return Err(Error::Precondition(
                    "simplicial Koszul algebra requires homogeneous sequence entries".into(),
                ));
            };
            seq_degrees.push(d as i64);
        }
    }
    let nn = window.level_bound;
    let dmax = window.sym_degree_bound;
    let bases: Vec<SlotBasis> = (0..=nn).map(|n| kos_level_basis(m, n, dmax)).collect();
    let levels: Vec<GradedFreeModule> = bases
        .iter()
        .map(|b| {
            let degrees = b
                .iter()
                .map(|slots| {
                    slots
                        .iter()
                        .flat_map(|slot| {
                            slot.iter().enumerate().map(|(j, &e)| seq_degrees[j] * e as i64)
                        })
                        .sum()
                })
                .collect();
            GradedFreeModule::new(ctx, degrees)
        })
        .collect();
    let pos: Vec<HashMap<&Vec<Vec<u16>>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, x)| (x, i)).collect())
        .collect();

    let mut faces: Vec<Vec<GradedMap>> = Vec::new();
    let mut degens: Vec<Vec<GradedMap>> = Vec::new();
    for n in 0..=nn {
        let mut fs = Vec::new();
        if n > 0 {
            for i in 0..=n {
                let mut entries =
                    vec![vec![Polynomial::zero(ctx); levels[n].rank()]; levels[n - 1].rank()];
                for (col, slots) in bases[n].iter().enumerate() {
                    if i == 0 {
                        // Evaluate slot 1 at the sequence; the coefficient is
                        // a ring element, so the result stays in the window.
                        let mut coeff = Polynomial::one(ctx);
                        for (j, &e) in slots[0].iter().enumerate() {
                            for _ in 0..e {
                                coeff = coeff.mul(&sequence[j])?;
                            }
                        }
                        let tgt: Vec<Vec<u16>> = slots[1..].to_vec();
                        let row = *pos[n - 1]
                            .get(&tgt)
                            .ok_or_else(|| Error::Internal("window not closed".into()))?;
                        if !coeff.is_zero() {
                            entries[row][col] = entries[row][col].add(&coeff)?;
                        }
                    } else if i < n {
                        let mut tgt = slots.clone();
                        let merged: Vec<u16> =
                            tgt[i - 1].iter().zip(&tgt[i]).map(|(x, y)| x + y).collect();
                        tgt[i - 1] = merged;
                        tgt.remove(i);
                        let row = *pos[n - 1]
                            .get(&tgt)
                            .ok_or_else(|| Error::Internal("window not closed".into()))?;
                        entries[row][col] = Polynomial::one(ctx);
                    } else if slots[n - 1].iter().all(|&e| e == 0) {
                        let tgt: Vec<Vec<u16>> = slots[..n - 1].to_vec();
                        let row = *pos[n - 1]
                            .get(&tgt)
                            .ok_or_else(|| Error::Internal("window not closed".into()))?;
                        entries[row][col] = Polynomial::one(ctx);
                    }
                }
                fs.push(GradedMap::new(levels[n].clone(), levels[n - 1].clone(), entries)?);
            }
        }
        faces.push(fs);
        if n < nn {
            let mut ss = Vec::new();
            for i in 0..=n {
                let mut entries =
                    vec![vec![Polynomial::zero(ctx); levels[n].rank()]; levels[n + 1].rank()];
                for (col, slots) in bases[n].iter().enumerate() {
                    let mut tgt = slots.clone();
                    tgt.insert(i, vec![0u16; m]);
                    let row = *pos[n + 1]
                        .get(&tgt)
                        .ok_or_else(|| Error::Internal("window not closed".into()))?;
                    entries[row][col] = Polynomial::one(ctx);
                }
                ss.push(GradedMap::new(levels[n].clone(), levels[n + 1].clone(), entries)?);
            }
            degens.push(ss);
        }
    }
    Ok(TruncatedSimplicialModule { level_bound: nn, levels, faces, degens })
}

/// Constant simplicial module on one graded free module.
pub fn constant_simplicial(
    module: &GradedFreeModule,
    level_bound: usize,
) -> TruncatedSimplicialModule {
    let id = GradedMap::identity(module);
    let levels = vec![module.clone(); level_bound + 1];
    let faces = (0..=level_bound)
        .map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] })
        .collect();
    let degens = (0..level_bound).map(|n| vec![id.clone(); n + 1]).collect();
    TruncatedSimplicialModule { level_bound, levels, faces, degens }
}
