//! Span membership over ℚ and ℤ with re-multiplied certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linear::{Element, SparseVec};
use crate::error::Result;
use crate::scalars::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
}

/// Outcome of a membership query; a certificate always satisfies
/// `Σ certificate[j]·pool[j] = target` in the normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member { certificate: Vec<Rational> },
    NonMember { residual_terms: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

type Comb<T> = BTreeMap<usize, T>;

fn axpy<K: Ord + Clone, T>(y: &mut BTreeMap<K, T>, a: &T, x: &BTreeMap<K, T>)
where
    T: Clone + Zero + for<'a> std::ops::AddAssign<&'a T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    for (k, v) in x {
        let add = a * v;
        let e = y.entry(k.clone()).or_insert_with(T::zero);
        *e += &add;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Row echelon basis of a pool over ℚ, reusable for many targets.
pub struct SpanSolver<K: Ord + Clone> {
    pivots: BTreeMap<K, (SparseVec<K>, Comb<Rational>)>,
    pool_size: usize,
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new(pool: &[SparseVec<K>]) -> Self {
        let mut s = SpanSolver {
            pivots: BTreeMap::new(),
            pool_size: pool.len(),
        };
        for (j, v) in pool.iter().enumerate() {
            let mut comb = Comb::new();
            comb.insert(j, Rational::one());
            let (r, comb) = s.reduce(v.clone(), comb);
            if let Some(k) = r.keys().next().cloned() {
                s.pivots.insert(k, (r, comb));
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `r` until no pivot key remains; `comb` tracks `r` as a pool
    /// combination plus the original vector.
    fn reduce(
        &self,
        mut r: SparseVec<K>,
        mut comb: Comb<Rational>,
    ) -> (SparseVec<K>, Comb<Rational>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => r.keys().next().cloned(),
                Some(c) => r
                    .range((std::ops::Bound::Excluded(c), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some((row, rc)) = self.pivots.get(&k) {
                let f = -(&r[&k] / &row[&k]);
                axpy(&mut r, &f, row);
                axpy(&mut comb, &f, rc);
            }
            cursor = Some(k);
        }
        (r, comb)
    }

    /// Coefficients `c` with `Σ c_j pool_j = target`, if any.
    pub fn solve(&self, target: &SparseVec<K>) -> Option<Vec<Rational>> {
        let (r, comb) = self.reduce(target.clone(), Comb::new());
        if !r.is_empty() {
            return None;
        }
        let mut cert = vec![Rational::zero(); self.pool_size];
        for (j, c) in comb {
            cert[j] = -c;
        }
        Some(cert)
    }

    /// Size of the part of `target` outside the span.
    pub fn residual(&self, target: &SparseVec<K>) -> usize {
        self.reduce(target.clone(), Comb::new()).0.len()
    }
}

fn combine<K: Ord + Clone>(pool: &[SparseVec<K>], cert: &[Rational]) -> SparseVec<K> {
    let mut acc = SparseVec::new();
    for (v, c) in pool.iter().zip(cert) {
        if !c.is_zero() {
            axpy(&mut acc, c, v);
        }
    }
    acc
}

/// Integer row echelon form via Bezout row operations.
struct IntSolver<K: Ord + Clone> {
    pivots: BTreeMap<K, (BTreeMap<K, BigInt>, Comb<BigInt>)>,
    pool_size: usize,
}

impl<K: Ord + Clone> IntSolver<K> {
    fn new(pool: &[BTreeMap<K, BigInt>]) -> Self {
        let mut s = IntSolver {
            pivots: BTreeMap::new(),
            pool_size: pool.len(),
        };
        for (j, v) in pool.iter().enumerate() {
            let mut comb = Comb::new();
            comb.insert(j, BigInt::one());
            s.insert(v.clone(), comb);
        }
        s
    }

    fn insert(&mut self, mut v: BTreeMap<K, BigInt>, mut comb: Comb<BigInt>) {
        loop {
            let Some(k) = v.keys().next().cloned() else { return };
            let Some((row, rc)) = self.pivots.remove(&k) else {
                self.pivots.insert(k, (v, comb));
                return;
            };
            let p = row[&k].clone();
            let q = v[&k].clone();
            let e = p.extended_gcd(&q);
            let g = e.gcd;
            // new pivot row = x·row + y·v, leading g
            let mut nrow = BTreeMap::new();
            let mut ncomb = Comb::new();
            axpy(&mut nrow, &e.x, &row);
            axpy(&mut nrow, &e.y, &v);
            axpy(&mut ncomb, &e.x, &rc);
            axpy(&mut ncomb, &e.y, &comb);
            // remainder = (p/g)·v − (q/g)·row, leading 0
            let pg = &p / &g;
            let qg = -(&q / &g);
            let mut rem = BTreeMap::new();
            let mut rcomb = Comb::new();
            axpy(&mut rem, &pg, &v);
            axpy(&mut rem, &qg, &row);
            axpy(&mut rcomb, &pg, &comb);
            axpy(&mut rcomb, &qg, &rc);
            self.pivots.insert(k, (nrow, ncomb));
            v = rem;
            comb = rcomb;
        }
    }

    fn solve(&self, target: &BTreeMap<K, BigInt>) -> Option<Vec<BigInt>> {
        let mut r = target.clone();
        let mut comb: Comb<BigInt> = Comb::new();
        while let Some(k) = r.keys().next().cloned() {
            let (row, rc) = self.pivots.get(&k)?;
            let (f, rem) = r[&k].div_rem(&row[&k]);
            if !rem.is_zero() {
                return None;
            }
            let nf = -f.clone();
            axpy(&mut r, &nf, row);
            axpy(&mut comb, &f, rc);
        }
        let mut cert = vec![BigInt::zero(); self.pool_size];
        for (j, c) in comb {
            cert[j] = c;
        }
        Some(cert)
    }
}

fn common_denominator<K>(vs: &[SparseVec<K>]) -> BigInt {
    let mut d = BigInt::one();
    for v in vs {
        for q in v.values() {
            d = d.lcm(q.denom());
        }
    }
    d
}

fn scaled_integers<K: Ord + Clone>(v: &SparseVec<K>, d: &BigInt) -> BTreeMap<K, BigInt> {
    v.iter()
        .map(|(k, q)| (k.clone(), (q * Rational::from_integer(d.clone())).to_integer()))
        .collect()
}

/// Decides membership of vectors, certificate verified before returning.
pub fn vector_membership<K: Ord + Clone>(
    target: &SparseVec<K>,
    pool: &[SparseVec<K>],
    ring: Ring,
) -> Membership {
    let solver = SpanSolver::new(pool);
    let Some(qcert) = solver.solve(target) else {
        return Membership::NonMember {
            residual_terms: solver.residual(target),
        };
    };
    let cert = match ring {
        Ring::Rationals => qcert,
        Ring::Integers => {
            let mut all = pool.to_vec();
            all.push(target.clone());
            let d = common_denominator(&all);
            let ipool: Vec<_> = pool.iter().map(|v| scaled_integers(v, &d)).collect();
            match IntSolver::new(&ipool).solve(&scaled_integers(target, &d)) {
                Some(c) => c.into_iter().map(Rational::from_integer).collect(),
                None => return Membership::NonMember { residual_terms: 0 },
            }
        }
    };
    assert!(
        combine(pool, &cert) == *target,
        "span certificate failed to re-multiply"
    );
    Membership::Member { certificate: cert }
}

/// Decides whether `target` lies in the `ring`-span of `pool`.
pub fn span_membership<E: Element>(target: &E, pool: &[E], ring: Ring) -> Result<Membership> {
    let mut all: Vec<&E> = vec![target];
    all.extend(pool.iter());
    let mut vs = E::vectorize(&all)?;
    let t = vs.remove(0);
    Ok(vector_membership(&t, &vs, ring))
}

/// Rounds a certificate to a display-friendly list.
pub fn certificate_strings(cert: &[Rational]) -> Vec<String> {
    cert.iter()
        .map(|c| {
            if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        })
        .collect()
}

/// Whether any certificate entry is negative; used only in reports.
pub fn has_negative(cert: &[Rational]) -> bool {
    cert.iter().any(|c| c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, rat};

    fn v(e: &[(u32, Rational)]) -> SparseVec<u32> {
        e.iter().cloned().filter(|(_, q)| !q.is_zero()).collect()
    }

    #[test]
    fn rational_span() {
        let pool = vec![v(&[(0, int(2)), (1, int(4))]), v(&[(1, int(1)), (2, int(1))])];
        let t = v(&[(0, int(1)), (1, int(3)), (2, int(1))]);
        match vector_membership(&t, &pool, Ring::Rationals) {
            Membership::Member { certificate } => {
                assert_eq!(certificate, vec![rat(1, 2), int(1)])
            }
            _ => panic!(),
        }
        assert!(!vector_membership(&t, &pool, Ring::Integers).is_member());
        let t2 = v(&[(2, int(1))]);
        assert!(!vector_membership(&t2, &pool, Ring::Rationals).is_member());
    }

    #[test]
    fn integer_span_needs_bezout() {
        let pool = vec![v(&[(0, int(4))]), v(&[(0, int(6))])];
        let t = v(&[(0, int(2))]);
        assert!(vector_membership(&t, &pool, Ring::Integers).is_member());
        let t3 = v(&[(0, int(3))]);
        assert!(!vector_membership(&t3, &pool, Ring::Integers).is_member());
    }

    #[test]
    fn zero_and_self() {
        let pool = vec![v(&[(0, int(1)), (3, int(2))]), v(&[(1, int(1))])];
        match vector_membership(&SparseVec::new(), &pool, Ring::Integers) {
            Membership::Member { certificate } => assert!(certificate.iter().all(|c| c.is_zero())),
            _ => panic!(),
        }
        match vector_membership(&pool[0], &pool, Ring::Integers) {
            Membership::Member { certificate } => assert_eq!(certificate, vec![int(1), int(0)]),
            _ => panic!(),
        }
    }
}
