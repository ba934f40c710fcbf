//! Buchberger's algorithm over ℚ in degrevlex order.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Ring, Scalar};

/// Size limits past which membership is reported as undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_vars: usize,
    pub max_degree: u32,
    pub max_pairs: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_vars: 18, max_degree: 4, max_pairs: 20_000 }
    }
}

type Poly = MultiPoly<Rational>;

fn monic(p: Poly) -> Poly {
    match p.leading_term() {
        Some((_, c)) => {
            let inv = c.inv().expect("nonzero leading coefficient");
            p.scale(&inv)
        }
        None => p,
    }
}

fn lm(p: &Poly) -> &Monomial {
    p.leading_term().expect("nonzero").0
}

/// Full normal form of `p` modulo `basis` (no term of the result is
/// divisible by a leading monomial of the basis).
pub fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let mut work = p.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = work.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        let divisor = basis.iter().find(|g| !g.is_zero() && lm(g).divides(&m));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.leading_term().expect("nonzero");
                let q = m.div(gm).expect("divides");
                let k = c * gc.inv().expect("nonzero");
                work = work - g.mul_monomial(&q, &k);
            }
            None => {
                rem = rem + Poly::term(m.clone(), c.clone());
                work = work - Poly::term(m, c);
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&l.div(fm).expect("lcm"), &fc.inv().expect("nonzero"));
    let b = g.mul_monomial(&l.div(gm).expect("lcm"), &gc.inv().expect("nonzero"));
    a - b
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Poly], limits: GroebnerLimits) -> Result<Vec<Poly>> {
    let mut vars: Vec<_> = gens.iter().flat_map(|p| p.variables()).collect();
    vars.sort();
    vars.dedup();
    if vars.len() > limits.max_vars
        || gens.iter().any(|p| p.degree().unwrap_or(0) > limits.max_degree)
    {
        return Err(Error::ResourceCap);
    }

    let mut basis: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).cloned().map(monic).collect();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut processed = 0usize;
    while !pending.is_empty() {
        // normal selection: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lm(&basis[a.0]).lcm(lm(&basis[a.1]));
                let lb = lm(&basis[b.0]).lcm(lm(&basis[b.1]));
                la.cmp(&lb)
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceCap);
        }
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(monic(r));
            for k in 0..n {
                pending.insert((k, n));
            }
        }
    }
    Ok(interreduce(basis))
}

fn interreduce(basis: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let m = lm(p);
        let redundant = basis.iter().enumerate().any(|(l, q)| {
            l != k && lm(q).divides(m) && (lm(q) != m || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> =
            minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, q)| q.clone()).collect();
        out.push(monic(reduce(&minimal[k], &others)));
    }
    out.sort_by(|a, b| lm(a).cmp(lm(b)));
    out
}

/// Remainder of `p` modulo a Gröbner basis of `gens`, and whether it is 0.
pub fn buchberger_reduce(p: &Poly, gens: &[Poly], limits: GroebnerLimits) -> Result<(Poly, bool)> {
    let basis = groebner_basis(gens, limits)?;
    let r = reduce(p, &basis);
    let member = r.is_zero();
    Ok((r, member))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;

    fn v(i: usize) -> Poly {
        Poly::var(VarId::x(1, i))
    }
    fn c(n: i64) -> Poly {
        Poly::constant(Rational::from(n))
    }

    #[test]
    fn principal_ideal_membership() {
        let f = v(1) * v(2) - v(3) * v(3);
        let lim = GroebnerLimits::default();
        let (r, inside) = buchberger_reduce(&(f.clone() * (v(1) + c(5))), std::slice::from_ref(&f), lim).unwrap();
        assert!(inside && r.is_zero());
        let (r, inside) = buchberger_reduce(&v(1), &[f], lim).unwrap();
        assert!(!inside);
        assert_eq!(r, v(1));
    }

    #[test]
    fn twisted_cubic_basis() {
        // ideal of the twisted cubic: 2×2 minors of [[x0,x1,x2],[x1,x2,x3]]
        let (x0, x1, x2, x3) = (v(1), v(2), v(3), v(4));
        let gens = [
            x0.clone() * &x2 - x1.clone() * &x1,
            x0.clone() * &x3 - x1.clone() * &x2,
            x1.clone() * &x3 - x2.clone() * &x2,
        ];
        let gb = groebner_basis(&gens, GroebnerLimits::default()).unwrap();
        assert!(gb.len() >= 3);
        for g in &gens {
            assert!(reduce(g, &gb).is_zero());
        }
        // x0·x3² − x2³ = x3·(x0x3 − x1x2) + x2·(x1x3 − x2²)
        let member = x0.clone() * &x3 * &x3 - x2.clone() * &x2 * &x2;
        assert!(reduce(&member, &gb).is_zero());
        assert!(!reduce(&(x0 * &x3), &gb).is_zero());
    }

    #[test]
    fn caps_are_enforced() {
        let deep = v(1).pow(5);
        assert_eq!(groebner_basis(&[deep], GroebnerLimits::default()), Err(Error::ResourceCap));
        let wide: Poly = (1..=20).map(v).fold(Poly::zero(), |a, b| a + b);
        assert_eq!(groebner_basis(&[wide], GroebnerLimits::default()), Err(Error::ResourceCap));
        let tiny = GroebnerLimits { max_pairs: 0, ..Default::default() };
        let gens = [v(1) * v(2) - c(1), v(2) * v(3) - c(1)];
        assert_eq!(groebner_basis(&gens, tiny), Err(Error::ResourceCap));
    }

    #[test]
    fn unit_ideal_collapses() {
        let gens = [v(1) * v(2) - c(1), v(1).clone()];
        let gb = groebner_basis(&gens, GroebnerLimits::default()).unwrap();
        assert_eq!(gb, [c(1)]);
    }
}
