//! Monomials as exponent vectors, with the three standard term orders.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Exponent vector; the length is the number of variables of the ring context.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Grlex,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Variable indices with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

impl MonomialOrder {
    /// Total-order comparison per the named order's standard definition.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.0.len() != b.0.len() {
            return Err(Error::ContextMismatch(format!(
                "monomials have {} and {} variables",
                a.0.len(),
                b.0.len()
            )));
        }
        Ok(self.cmp_unchecked(a, b))
    }

    pub fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::Grlex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| lex_cmp(a, b)),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                // Equal degrees: the one whose rightmost differing exponent
                // is smaller wins.
                for i in (0..a.0.len()).rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for i in 0..a.0.len() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `d` in `nvars` variables, in a fixed
/// deterministic (lexicographic) order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(cur: &mut Vec<u16>, pos: usize, rem: u32, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = rem as u16;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e as u16;
            rec(cur, pos + 1, rem - e, out);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(&mut cur, 0, d, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_tiebreak() {
        // x^2 y > x y^2 in grevlex
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.cmp(&m(&[2, 1]), &m(&[1, 2])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_degree() {
        // y^5 < x under lex with x > y
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[0, 5]), &m(&[1, 0])).unwrap(), Ordering::Less);
    }

    #[test]
    fn reflexive() {
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Grlex] {
            assert_eq!(o.cmp(&m(&[1, 2, 3]), &m(&[1, 2, 3])).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn length_mismatch_is_error() {
        assert!(MonomialOrder::Grevlex.cmp(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15); // C(6,2)
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert_eq!(monomials_of_degree(0, 2).len(), 0);
    }
}
