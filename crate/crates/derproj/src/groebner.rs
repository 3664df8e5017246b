//! Buchberger-style Groebner engine: normal forms, reduced bases, dimension
//! and codimension through the initial ideal, Hilbert series, minor ideals.

use crate::error::{Error, Result};
use crate::module::{poly_det, GradedMap};
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{Polynomial, RingCtx};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Ideal {
    pub ctx: Arc<RingCtx>,
    pub generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(ctx: &Arc<RingCtx>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ctx != *ctx {
                return Err(Error::ContextMismatch("ideal generator in wrong ring".into()));
            }
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            generators: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub basis: Vec<Polynomial>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(self.order).expect("basis elements nonzero").0.clone())
            .collect()
    }
}

/// Codimension of a vanishing locus; `Infinite` means the locus is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Codim {
    Finite(u32),
    Infinite,
}

impl Codim {
    pub fn at_least(&self, bound: i64) -> bool {
        match self {
            Codim::Infinite => true,
            Codim::Finite(c) => *c as i64 >= bound,
        }
    }

    /// Equality against a finite value, vacuously true on the empty locus.
    pub fn equals_or_empty(&self, value: i64) -> bool {
        match self {
            Codim::Infinite => true,
            Codim::Finite(c) => *c as i64 == value,
        }
    }
}

impl Serialize for Codim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Codim::Finite(c) => s.serialize_u32(*c),
            Codim::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl std::fmt::Display for Codim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Infinite => write!(f, "infinity"),
        }
    }
}

/// Full multivariate division: the remainder has no term divisible by any
/// leading term of the basis.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    reduce_full(p, &gb.basis, gb.order)
}

fn reduce_full(p: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let ctx = p.ctx.clone();
    let field = ctx.field;
    let lts: Vec<(Monomial, crate::field::Scalar)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("nonzero basis element");
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = p.clone();
    let mut rem = Polynomial::zero(&ctx);
    while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (k, (gm, gc)) in lts.iter().enumerate() {
            if gm.divides(&lm) {
                let q = gm.quotient(&lm);
                let coeff = field.div(&lc, gc).expect("leading coefficient nonzero");
                work = work
                    .sub(&basis[k].mul_monomial(&q, &coeff))
                    .expect("same context");
                reduced = true;
                break;
            }
        }
        if !reduced {
            let t = Polynomial::monomial(&ctx, lm.clone(), lc);
            rem = rem.add(&t).expect("same context");
            work = work.sub(&t).expect("same context");
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let field = f.ctx.field;
    let (mf, cf) = f.leading_term(order).unwrap();
    let (mg, cg) = g.leading_term(order).unwrap();
    let lcm = mf.lcm(mg);
    let qf = mf.quotient(&lcm);
    let qg = mg.quotient(&lcm);
    let inv_f = field.inv(cf).unwrap();
    let inv_g = field.inv(cg).unwrap();
    f.mul_monomial(&qf, &inv_f)
        .sub(&g.mul_monomial(&qg, &inv_g))
        .expect("same context")
}

/// Buchberger with the product and chain criteria, followed by
/// inter-reduction to the unique reduced basis. Each input generator is
/// verified to reduce to zero against the result.
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    if ideal.generators.is_empty() {
        return Err(Error::Precondition("Groebner basis of an empty generator list".into()));
    }
    let field = ideal.ctx.field;
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in &ideal.generators {
        let r = reduce_full(g, &basis, order);
        if !r.is_zero() {
            basis.push(make_monic(&r, order));
        }
    }

    let mut treated: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let lm = |basis: &[Polynomial], i: usize| -> Monomial {
        basis[i].leading_term(order).unwrap().0.clone()
    };
    let mut push_pairs = |basis: &[Polynomial], queue: &mut BTreeSet<(u32, usize, usize)>, j: usize| {
        for i in 0..j {
            let l = lm(basis, i).lcm(&lm(basis, j));
            queue.insert((l.degree(), i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut queue, j);
    }

    while let Some(&(deg, i, j)) = queue.iter().next() {
        queue.remove(&(deg, i, j));
        treated.insert((i, j));
        let lmi = lm(&basis, i);
        let lmj = lm(&basis, j);
        let lcm = lmi.lcm(&lmj);
        // Product criterion.
        if lmi.gcd(&lmj).is_one() {
            continue;
        }
        // Chain criterion: some k with lm_k | lcm and both pairs treated.
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let pik = (i.min(k), i.max(k));
            let pjk = (j.min(k), j.max(k));
            lm(&basis, k).divides(&lcm) && treated.contains(&pik) && treated.contains(&pjk)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_full(&s, &basis, order);
        if !r.is_zero() {
            basis.push(make_monic(&r, order));
            push_pairs(&basis, &mut queue, basis.len() - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial another element divides.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if lm(&basis, j).divides(&lm(&basis, i)) && (lm(&basis, j) != lm(&basis, i) || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Polynomial> = basis
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(g, _)| g.clone())
        .collect();

    // Tail-reduce each element against the others until stable.
    loop {
        let mut changed = false;
        for idx in 0..minimal.len() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_full(&minimal[idx], &others, order);
            let r = make_monic(&r, order);
            if r != minimal[idx] {
                minimal[idx] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(minimal.iter().all(|g| !g.is_zero()));

    minimal.sort_by(|a, b| {
        let (ma, _) = a.leading_term(order).unwrap();
        let (mb, _) = b.leading_term(order).unwrap();
        order.cmp_unchecked(ma, mb)
    });

    let gb = GroebnerBasis { order, basis: minimal, reduced: true };
    for g in &ideal.generators {
        if !normal_form(g, &gb).is_zero() {
            return Err(Error::Internal(
                "input generator does not reduce to zero against its own basis".into(),
            ));
        }
    }
    let _ = field;
    Ok(gb)
}

fn make_monic(p: &Polynomial, order: MonomialOrder) -> Polynomial {
    let field = p.ctx.field;
    match p.leading_term(order) {
        None => p.clone(),
        Some((_, c)) => {
            let inv = field.inv(c).expect("leading coefficient nonzero");
            p.scale(&inv)
        }
    }
}

/// All S-polynomials of the basis reduce to zero.
pub fn buchberger_criterion_holds(gb: &GroebnerBasis) -> bool {
    for i in 0..gb.basis.len() {
        for j in (i + 1)..gb.basis.len() {
            let s = s_polynomial(&gb.basis[i], &gb.basis[j], gb.order);
            if !normal_form(&s, gb).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Number of variables minus the Krull dimension of R/I, computed from the
/// initial monomial ideal; the empty locus (1 in I) reports `Infinite`.
pub fn ideal_codim(ideal: &Ideal) -> Result<Codim> {
    let nvars = ideal.ctx.nvars();
    if ideal.generators.is_empty() {
        return Ok(Codim::Finite(0));
    }
    let gb = groebner_basis(ideal, MonomialOrder::Grevlex)?;
    let lts = gb.leading_monomials();
    if lts.iter().any(|m| m.is_one()) {
        return Ok(Codim::Infinite);
    }
    let dim = monomial_ideal_dimension(nvars, &lts);
    Ok(Codim::Finite((nvars - dim) as u32))
}

/// Maximal cardinality of a variable set not containing the support of any
/// generator of the monomial ideal.
fn monomial_ideal_dimension(nvars: usize, gens: &[Monomial]) -> usize {
    let supports: Vec<Vec<usize>> = gens.iter().map(|m| m.support()).collect();
    let mut best = 0usize;
    for mask in 0u32..(1 << nvars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = supports
            .iter()
            .all(|supp| supp.iter().any(|v| mask & (1 << v) == 0));
        if independent {
            best = size;
        }
    }
    best
}

/// Hilbert series of R/I for homogeneous I, as `numerator / (1-t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Integer coefficients of the numerator, index = power of t.
    pub numerator: Vec<i64>,
    pub nvars: usize,
}

impl HilbertSeries {
    /// Power-series coefficients of `numerator / (1-t)^nvars` up to degree `d`.
    pub fn coefficients(&self, d: usize) -> Vec<i64> {
        // 1/(1-t)^v has coefficients C(v-1+k, k).
        let mut base = vec![0i64; d + 1];
        for (k, b) in base.iter_mut().enumerate() {
            *b = binom_i64(self.nvars as i64 - 1 + k as i64, k as i64);
        }
        let mut out = vec![0i64; d + 1];
        for (i, &c) in self.numerator.iter().enumerate() {
            if c == 0 || i > d {
                continue;
            }
            for k in 0..=(d - i) {
                out[i + k] += c * base[k];
            }
        }
        out
    }
}

fn binom_i64(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn hilbert_series(ideal: &Ideal) -> Result<HilbertSeries> {
    for g in &ideal.generators {
        if !g.is_homogeneous() {
            return Err(Error::Precondition(
                "Hilbert series requires homogeneous generators".into(),
            ));
        }
    }
    let nvars = ideal.ctx.nvars();
    if ideal.generators.is_empty() {
        return Ok(HilbertSeries { numerator: vec![1], nvars });
    }
    let gb = groebner_basis(ideal, MonomialOrder::Grevlex)?;
    let lts = minimalize_monomials(gb.leading_monomials());
    let mut num = vec![0i64; 1];
    numerator_rec(&lts, &mut num);
    while num.len() > 1 && *num.last().unwrap() == 0 {
        num.pop();
    }
    Ok(HilbertSeries { numerator: num, nvars })
}

fn minimalize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// numerator(I + (m)) = numerator(I) - t^deg(m) * numerator(I : m).
fn numerator_rec(gens: &[Monomial], acc: &mut Vec<i64>) {
    if gens.iter().any(|m| m.is_one()) {
        return; // numerator 0
    }
    match gens.split_last() {
        None => {
            acc[0] += 1;
        }
        Some((m, rest)) => {
            let rest = minimalize_monomials(rest.to_vec());
            // numerator(rest)
            numerator_rec(&rest, acc);
            // - t^deg(m) * numerator(rest : m)
            let colon: Vec<Monomial> =
                rest.iter().map(|g| g.gcd(m).quotient(g)).collect();
            let colon = minimalize_monomials(colon);
            let mut sub = vec![0i64; 1];
            numerator_rec(&colon, &mut sub);
            let off = m.degree() as usize;
            if acc.len() < off + sub.len() {
                acc.resize(off + sub.len(), 0);
            }
            for (k, c) in sub.iter().enumerate() {
                acc[off + k] -= c;
            }
        }
    }
}

/// Count of monomials of each degree not divisible by any of `lts`; the
/// brute-force Hilbert function used to cross-check the series.
pub fn standard_monomial_counts(nvars: usize, lts: &[Monomial], d_max: u32) -> Vec<i64> {
    (0..=d_max)
        .map(|d| {
            monomials_of_degree(nvars, d)
                .into_iter()
                .filter(|m| !lts.iter().any(|g| g.divides(m)))
                .count() as i64
        })
        .collect()
}

/// Ideal generated by all k x k minors of the matrix of a graded map.
/// Zero minors are dropped.
pub fn minors_ideal(map: &GradedMap, k: usize) -> Result<Ideal> {
    let rows = map.rows();
    let cols = map.cols();
    if k == 0 || k > rows.min(cols) {
        return Err(Error::Precondition(format!(
            "minor size {k} out of range for a {rows}x{cols} matrix"
        )));
    }
    let ctx = map.ctx().clone();
    let row_sets = subsets(rows, k);
    let col_sets = subsets(cols, k);
    let mut gens = Vec::new();
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Vec<Vec<Polynomial>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| map.entries[i][j].clone()).collect())
                .collect();
            let det = poly_det(&ctx, &sub)?;
            if !det.is_zero() {
                gens.push(det);
            }
        }
    }
    Ideal::new(&ctx, gens)
}

/// Strictly increasing index tuples of size k from 0..n, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::module::GradedFreeModule;

    fn ctx(vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(Field::rationals(), vars.iter().map(|s| s.to_string()).collect())
    }

    fn p(c: &Arc<RingCtx>, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    fn ideal(c: &Arc<RingCtx>, gens: &[&str]) -> Ideal {
        Ideal::new(c, gens.iter().map(|s| p(c, s)).collect()).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let c = ctx(&["x", "y"]);
        let gb = groebner_basis(&ideal(&c, &["x", "y"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.basis, vec![p(&c, "y"), p(&c, "x")]);
        assert!(buchberger_criterion_holds(&gb));
    }

    #[test]
    fn twisted_cubic_lex_basis() {
        // Variables ordered z > y > x so lex eliminates z first.
        let c = ctx(&["z", "y", "x"]);
        let gb = groebner_basis(
            &ideal(&c, &["y - x^2", "z - x^3"]),
            MonomialOrder::Lex,
        )
        .unwrap();
        assert_eq!(gb.basis.len(), 2);
        assert!(gb.basis.contains(&p(&c, "y - x^2")));
        assert!(gb.basis.contains(&p(&c, "z - x^3")));
        assert!(buchberger_criterion_holds(&gb));
    }

    #[test]
    fn containment_collapse() {
        let c = ctx(&["x"]);
        let gb = groebner_basis(&ideal(&c, &["x^2 - 1", "x - 1"]), MonomialOrder::Grevlex)
            .unwrap();
        assert_eq!(gb.basis, vec![p(&c, "x - 1")]);
    }

    #[test]
    fn normal_form_basics() {
        let c = ctx(&["x", "y"]);
        let gb = groebner_basis(&ideal(&c, &["x"]), MonomialOrder::Grevlex).unwrap();
        assert!(normal_form(&p(&c, "x^2"), &gb).is_zero());
        assert_eq!(normal_form(&p(&c, "x^2 + y"), &gb), p(&c, "y"));
    }

    #[test]
    fn remainder_untouched_when_no_leading_term_divides() {
        let c = ctx(&["x", "y"]);
        let gb = groebner_basis(&ideal(&c, &["x^2 + y^2", "y^3"]), MonomialOrder::Grevlex)
            .unwrap();
        let r = normal_form(&p(&c, "x*y - 1"), &gb);
        assert_eq!(r, p(&c, "x*y - 1"));
        assert!(!r.is_zero());
    }

    #[test]
    fn normal_form_idempotent_and_linear() {
        let c = ctx(&["x", "y"]);
        let gb = groebner_basis(&ideal(&c, &["x^2 + y^2", "y^3"]), MonomialOrder::Grevlex)
            .unwrap();
        let a = p(&c, "x^3*y + x*y^2 - 2");
        let b = p(&c, "y^4 + x");
        let ra = normal_form(&a, &gb);
        assert_eq!(normal_form(&ra, &gb), ra);
        let sum_then = normal_form(&a.add(&b).unwrap(), &gb);
        let then_sum = ra.add(&normal_form(&b, &gb)).unwrap();
        assert_eq!(sum_then, then_sum);
    }

    #[test]
    fn codim_of_coordinate_subspace() {
        let c = ctx(&["x", "y", "z"]);
        assert_eq!(ideal_codim(&ideal(&c, &["x", "y"])).unwrap(), Codim::Finite(2));
    }

    #[test]
    fn codim_of_unit_ideal_is_infinite() {
        let c = ctx(&["x", "y"]);
        assert_eq!(
            ideal_codim(&ideal(&c, &["x", "x - 1"])).unwrap(),
            Codim::Infinite
        );
    }

    #[test]
    fn codim_generic_2x3_minors() {
        let c = ctx(&["a", "b", "c", "d", "e", "f"]);
        let src = GradedFreeModule::new(&c, vec![1, 1, 1]);
        let tgt = GradedFreeModule::new(&c, vec![0, 0]);
        let m = GradedMap::new(
            src,
            tgt,
            vec![
                vec![p(&c, "a"), p(&c, "b"), p(&c, "c")],
                vec![p(&c, "d"), p(&c, "e"), p(&c, "f")],
            ],
        )
        .unwrap();
        let minors = minors_ideal(&m, 2).unwrap();
        assert_eq!(minors.generators.len(), 3);
        assert_eq!(ideal_codim(&minors).unwrap(), Codim::Finite(2));
    }

    #[test]
    fn minors_of_diag() {
        let c = ctx(&["x", "y"]);
        let src = GradedFreeModule::new(&c, vec![1, 1]);
        let tgt = GradedFreeModule::new(&c, vec![0, 0]);
        let m = GradedMap::new(
            src,
            tgt,
            vec![vec![p(&c, "x"), p(&c, "0")], vec![p(&c, "0"), p(&c, "y")]],
        )
        .unwrap();
        let ones = minors_ideal(&m, 1).unwrap();
        assert_eq!(ideal_codim(&ones).unwrap(), Codim::Finite(2));
        let twos = minors_ideal(&m, 2).unwrap();
        assert_eq!(twos.generators, vec![p(&c, "x*y")]);
        assert!(minors_ideal(&m, 3).is_err());
    }

    #[test]
    fn hilbert_series_examples() {
        let c = ctx(&["x", "y"]);
        let zero = Ideal::new(&c, vec![]).unwrap();
        assert_eq!(hilbert_series(&zero).unwrap().numerator, vec![1]);

        let hx = hilbert_series(&ideal(&c, &["x"])).unwrap();
        assert_eq!(hx.numerator, vec![1, -1]);
        assert_eq!(hx.coefficients(4), vec![1, 1, 1, 1, 1]);

        let hxy = hilbert_series(&ideal(&c, &["x*y"])).unwrap();
        assert_eq!(hxy.numerator, vec![1, 0, -1]);
        assert_eq!(hxy.coefficients(4), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn hilbert_rejects_inhomogeneous() {
        let c = ctx(&["x", "y"]);
        assert!(hilbert_series(&ideal(&c, &["x^2 - y"])).is_err());
    }

    #[test]
    fn hilbert_matches_standard_monomials() {
        let c = ctx(&["x", "y", "z"]);
        for gens in [
            vec!["x^2", "y^3"],
            vec!["x*y", "y*z", "x*z"],
            vec!["x^2 - y*z", "z^3"],
        ] {
            let i = ideal(&c, &gens);
            let hs = hilbert_series(&i).unwrap();
            let gb = groebner_basis(&i, MonomialOrder::Grevlex).unwrap();
            let counts = standard_monomial_counts(3, &gb.leading_monomials(), 8);
            assert_eq!(hs.coefficients(8), counts, "gens {gens:?}");
        }
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
