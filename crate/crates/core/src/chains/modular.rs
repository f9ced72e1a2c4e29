//! Span membership over ℚ by elimination modulo word-sized primes.
//!
//! Certificates are recovered by Chinese remaindering and rational
//! reconstruction, then re-multiplied exactly; a certificate is returned only
//! if it reproduces the target. A target outside the span modulo a prime
//! dividing no denominator is outside the span over ℚ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linear::SparseVec;
use super::span::{Membership, SpanSolver};
use crate::scalars::Rational;

/// Primes tried before falling back to exact elimination.
const MAX_PRIMES: usize = 16;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The largest `count` primes below `2^62`, descending.
fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

fn reduce_q(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(n, inv_mod(d, p), p))
}

type Row = BTreeMap<usize, u64>;

fn axpy_mod(y: &mut Row, a: u64, x: &Row, p: u64) {
    for (&k, &v) in x {
        let add = mul_mod(a, v, p);
        let e = y.entry(k).or_insert(0);
        *e = (*e + add) % p;
        if *e == 0 {
            y.remove(&k);
        }
    }
}

/// Echelon basis modulo `p`; pivot rows are monic.
struct ModSolver {
    p: u64,
    pivots: BTreeMap<usize, (Row, Row)>,
    /// `(pivot key, pool index)` in insertion order.
    shape: Vec<(usize, usize)>,
}

impl ModSolver {
    fn new(pool: &[Row], p: u64) -> Self {
        let mut s = ModSolver {
            p,
            pivots: BTreeMap::new(),
            shape: Vec::new(),
        };
        for (j, v) in pool.iter().enumerate() {
            let mut comb = Row::new();
            comb.insert(j, 1);
            let (mut r, mut comb) = s.reduce(v.clone(), comb);
            if let Some((&k, &lead)) = r.iter().next() {
                let inv = inv_mod(lead, p);
                for x in r.values_mut().chain(comb.values_mut()) {
                    *x = mul_mod(*x, inv, p);
                }
                s.pivots.insert(k, (r, comb));
                s.shape.push((k, j));
            }
        }
        s
    }

    fn reduce(&self, mut r: Row, mut comb: Row) -> (Row, Row) {
        let mut cursor = None;
        loop {
            let next = match cursor {
                None => r.keys().next().copied(),
                Some(c) => r.range(c + 1..).next().map(|(k, _)| *k),
            };
            let Some(k) = next else { break };
            if let Some((row, rc)) = self.pivots.get(&k) {
                let f = self.p - r[&k];
                axpy_mod(&mut r, f, row, self.p);
                axpy_mod(&mut comb, f, rc, self.p);
            }
            cursor = Some(k);
        }
        (r, comb)
    }

    /// Solution supported on the basis, or the size of the residual.
    fn solve(&self, target: &Row) -> std::result::Result<Row, usize> {
        let (r, comb) = self.reduce(target.clone(), Row::new());
        if !r.is_empty() {
            return Err(r.len());
        }
        Ok(comb.into_iter().map(|(j, c)| (j, (self.p - c) % self.p)).filter(|(_, c)| *c != 0).collect())
    }
}

/// `n/d` with `n ≡ a·d (mod m)` and `|n|, d ≤ √(m/2)`, if one exists.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let q = Rational::new(r1, t1);
    (q.numer().mod_floor(m) == (q.denom() * a).mod_floor(m)).then_some(q)
}

fn combine<K: Ord + Clone>(pool: &[SparseVec<K>], cert: &[Rational]) -> SparseVec<K> {
    let mut acc: SparseVec<K> = SparseVec::new();
    for (v, c) in pool.iter().zip(cert) {
        if c.is_zero() {
            continue;
        }
        for (k, q) in v {
            let e = acc.entry(k.clone()).or_insert_with(Rational::zero);
            *e += c * q;
            if e.is_zero() {
                acc.remove(k);
            }
        }
    }
    acc
}

fn to_rows<K: Ord + Clone>(
    vs: &[SparseVec<K>],
    index: &BTreeMap<K, usize>,
    p: u64,
) -> Option<Vec<Row>> {
    vs.iter()
        .map(|v| {
            v.iter()
                .map(|(k, q)| Some((index[k], reduce_q(q, p)?)))
                .filter(|e| !matches!(e, Some((_, 0))))
                .collect::<Option<Row>>()
        })
        .collect()
}

/// Membership of every target in the ℚ-span of `pool`. Certificates are
/// exact; residual sizes of non-members are counted modulo a prime.
pub fn rational_memberships<K: Ord + Clone>(
    pool: &[SparseVec<K>],
    targets: &[SparseVec<K>],
) -> Vec<Membership> {
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    for v in pool.iter().chain(targets) {
        for k in v.keys() {
            let n = index.len();
            index.entry(k.clone()).or_insert(n);
        }
    }
    let mut out: Vec<Option<Membership>> = vec![None; targets.len()];
    let mut residues: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); targets.len()];
    let mut modulus = BigInt::one();
    let mut shape: Option<Vec<(usize, usize)>> = None;
    for p in primes(MAX_PRIMES) {
        if out.iter().all(|o| o.is_some()) {
            break;
        }
        let (Some(prows), Some(trows)) = (to_rows(pool, &index, p), to_rows(targets, &index, p))
        else {
            continue;
        };
        let solver = ModSolver::new(&prows, p);
        match &shape {
            None => shape = Some(solver.shape.clone()),
            Some(s) if *s != solver.shape => continue,
            Some(_) => {}
        }
        let pb = BigInt::from(p);
        let minv = inv_mod(
            modulus.mod_floor(&pb).to_u64().expect("reduced below p"),
            p,
        );
        for (t, row) in trows.iter().enumerate() {
            if out[t].is_some() {
                continue;
            }
            let sol = match solver.solve(row) {
                Ok(s) => s,
                Err(residual_terms) => {
                    out[t] = Some(Membership::NonMember { residual_terms });
                    continue;
                }
            };
            // x ≡ a (mod M), x ≡ b (mod p)  ⇒  x = a + M·((b − a)·M⁻¹ mod p)
            let basis: Vec<usize> = solver.shape.iter().map(|&(_, j)| j).collect();
            for j in basis {
                let b = sol.get(&j).copied().unwrap_or(0);
                let a = residues[t].get(&j).cloned().unwrap_or_else(BigInt::zero);
                let am = a.mod_floor(&pb).to_u64().expect("reduced below p");
                let k = mul_mod((b + p - am) % p, minv, p);
                residues[t].insert(j, a + &modulus * BigInt::from(k));
            }
        }
        modulus *= &pb;
        for t in 0..targets.len() {
            if out[t].is_some() {
                continue;
            }
            let mut cert = vec![Rational::zero(); pool.len()];
            let ok = residues[t].iter().all(|(&j, a)| match rational_reconstruct(a, &modulus) {
                Some(q) => {
                    cert[j] = q;
                    true
                }
                None => false,
            });
            if ok && combine(pool, &cert) == targets[t] {
                out[t] = Some(Membership::Member { certificate: cert });
            }
        }
    }
    let mut exact: Option<SpanSolver<K>> = None;
    out.into_iter()
        .zip(targets)
        .map(|(o, t)| {
            o.unwrap_or_else(|| {
                let s = exact.get_or_insert_with(|| SpanSolver::new(pool));
                match s.solve(t) {
                    Some(certificate) => Membership::Member { certificate },
                    None => Membership::NonMember {
                        residual_terms: s.residual(t),
                    },
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, rat};

    fn v(e: &[(u32, Rational)]) -> SparseVec<u32> {
        e.iter().cloned().filter(|(_, q)| !q.is_zero()).collect()
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes(3);
        assert_eq!(ps[0], (1u64 << 62) - 57);
        assert!(ps.iter().all(|&p| is_prime(p)));
        assert!(!is_prime(561) && !is_prime(1 << 40) && is_prime(97));
    }

    #[test]
    fn reconstruction_round_trip() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        for q in [rat(-22, 7), rat(355, 113), int(0), int(-1)] {
            let a = (q.numer() * q.denom().modinv(&m).unwrap()).mod_floor(&m);
            assert_eq!(rational_reconstruct(&a, &m), Some(q));
        }
    }

    #[test]
    fn agrees_with_exact_solver() {
        let pool = vec![
            v(&[(0, int(2)), (1, int(4))]),
            v(&[(1, int(1)), (2, int(1))]),
            v(&[(0, int(1)), (2, rat(1, 3))]),
        ];
        let t1 = v(&[(0, int(1)), (1, int(3)), (2, int(1))]);
        let t2 = v(&[(0, rat(5, 7)), (1, rat(-1, 2)), (2, int(9))]);
        let t3 = v(&[(5, int(1))]);
        let got = rational_memberships(&pool, &[t1.clone(), t2.clone(), t3]);
        for (m, t) in got.iter().zip([&t1, &t2]) {
            match m {
                Membership::Member { certificate } => assert_eq!(combine(&pool, certificate), *t),
                _ => panic!("expected a member"),
            }
        }
        assert_eq!(got[2], Membership::NonMember { residual_terms: 1 });
    }
}
