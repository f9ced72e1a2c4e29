//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted by graded-lexicographic order (leading term first),
//! with variables ordered by their registration index. Variable names live in
//! a process-wide, append-only registry so that constants need no context.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Maximum number of distinct variable names per process.
pub const MAX_VARS: usize = 24;

static REGISTRY: RwLock<Vec<String>> = RwLock::new(Vec::new());

/// Index of a registered variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u16);

impl Var {
    /// Returns the variable with this name, registering it on first use.
    pub fn named(name: &str) -> Option<Var> {
        {
            let reg = REGISTRY.read().expect("variable registry poisoned");
            if let Some(i) = reg.iter().position(|n| n == name) {
                return Some(Var(i as u16));
            }
        }
        let mut reg = REGISTRY.write().expect("variable registry poisoned");
        if let Some(i) = reg.iter().position(|n| n == name) {
            return Some(Var(i as u16));
        }
        if reg.len() >= MAX_VARS {
            return None;
        }
        reg.push(name.to_string());
        Some(Var((reg.len() - 1) as u16))
    }

    pub fn name(self) -> String {
        let reg = REGISTRY.read().expect("variable registry poisoned");
        reg.get(self.0 as usize)
            .cloned()
            .unwrap_or_else(|| format!("x{}", self.0))
    }
}

/// Declares a variable set up front, in the given order.
pub fn declare_vars(names: &[&str]) -> Option<Vec<Var>> {
    names.iter().map(|n| Var::named(n)).collect()
}

/// Exponent vector. Ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(v: Var, e: u16) -> Mono {
        let mut m = Mono::ONE;
        m.0[v.0 as usize] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        r
    }

    /// `self / o`, if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(r)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.0 as usize]
    }

    fn with_exp(&self, v: Var, e: u16) -> Mono {
        let mut r = *self;
        r.0[v.0 as usize] = e;
        r
    }

    fn gcd(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", MonoDisplay(self))
    }
}

struct MonoDisplay<'a>(&'a Mono);

impl fmt::Display for MonoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0 .0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = Var(i as u16).name();
            if e == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial; `terms` sorted by descending monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Rational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::ONE, c)],
            }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly {
            terms: vec![(Mono::var(v, 1), Rational::one())],
        }
    }

    pub fn monomial(m: Mono, c: Rational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rational)>) -> Poly {
        let mut acc: HashMap<Mono, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Rational)> {
        self.terms.first()
    }

    pub fn lc(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, -k)).collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return other.scale(&self.terms[0].1);
        }
        if other.terms.len() == 1 && other.terms[0].0.is_one() {
            return self.scale(&other.terms[0].1);
        }
        let mut acc: HashMap<Mono, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rational) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.terms[0].clone();
        if d.terms.len() == 1 {
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(&dm)?, c * &inv));
            }
            return Some(Poly { terms });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = rem.sub(&d.mul_mono(&qm, &qc));
            quot.push((qm, qc));
        }
        // quotient terms come out in descending order
        Some(Poly { terms: quot })
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut seen = [false; MAX_VARS];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Var(i as u16))
            .collect()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`: `self = Σ coeffs[k] v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Rational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            buckets[e].push((m.with_exp(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    fn lead_coeff_in(&self, v: Var) -> (u16, Poly) {
        let d = self.degree_in(v);
        let mut t: Vec<(Mono, Rational)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == d)
            .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
            .collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        (d, Poly { terms: t })
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) > 0)
            .map(|(m, c)| {
                let e = m.exp(v);
                (
                    m.with_exp(v, e - 1),
                    c * Rational::from_integer(BigInt::from(e)),
                )
            });
        Poly::from_terms(terms)
    }

    /// Splits off the rational content: `self = content * pp`, where `pp` has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::zero(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&v);
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Leading-coefficient-one normalization.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.terms[0].1.recip();
        self.scale(&inv)
    }

    fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0,
            None => return Mono::ONE,
        };
        it.fold(first, |acc, (m, _)| acc.gcd(m))
    }

    /// Content with respect to `v` (gcd of the coefficients in `v`),
    /// normalized primitive with positive leading coefficient.
    pub fn content_in(&self, v: Var) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Pseudo-remainder of `self` by `d` in variable `v`.
    fn prem(&self, d: &Poly, v: Var) -> Poly {
        let (dd, dlc) = d.lead_coeff_in(v);
        let mut r = self.clone();
        loop {
            if r.is_zero() {
                return r;
            }
            let (rd, rlc) = r.lead_coeff_in(v);
            if rd < dd {
                return r;
            }
            let shift = Poly::monomial(Mono::var(v, rd - dd), Rational::one());
            r = r.mul(&dlc).sub(&d.mul(&rlc).mul(&shift));
        }
    }

    /// Primitive part with respect to `v`, normalized.
    fn pp_in(&self, v: Var) -> Poly {
        let c = self.content_in(v);
        let q = if c.is_constant() {
            self.clone()
        } else {
            self.div_exact(&c).expect("content divides")
        };
        q.primitive().1
    }

    pub fn eval_var(&self, v: Var, value: &Rational) -> Poly {
        let mut pows: Vec<Rational> = vec![Rational::one()];
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exp(v) as usize;
            while pows.len() <= e {
                let next = pows.last().unwrap() * value;
                pows.push(next);
            }
            (m.with_exp(v, 0), c * &pows[e])
        });
        Poly::from_terms(terms.collect::<Vec<_>>())
    }
}

/// Greatest common divisor, normalized primitive with positive leading
/// coefficient (so `gcd(0, 0) = 0` and constants give `1`).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (_, pa) = a.primitive();
    let (_, pb) = b.primitive();
    if pa == pb {
        return pa;
    }
    // monomial factors
    let mg = pa.mono_content().gcd(&pb.mono_content());
    let (pa, pb) = if mg.is_one() {
        (pa, pb)
    } else {
        let d = Poly::monomial(mg, Rational::one());
        (pa.div_exact(&d).unwrap(), pb.div_exact(&d).unwrap())
    };
    let mono = Poly::monomial(mg, Rational::one());
    mono.mul(&gcd_nomono(&pa, &pb)).primitive().1
}

fn gcd_nomono(pa: &Poly, pb: &Poly) -> Poly {
    if pa.is_constant() || pb.is_constant() {
        return Poly::one();
    }
    // cheap divisibility checks
    if pa.terms.len() <= pb.terms.len() {
        if pb.div_exact(pa).is_some() {
            return pa.clone();
        }
    } else if pa.div_exact(pb).is_some() {
        return pb.clone();
    }
    let va = pa.vars();
    let vb = pb.vars();
    let common: Vec<Var> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if common.is_empty() {
        return Poly::one();
    }
    // variables occurring in only one argument: the gcd divides that
    // argument's content with respect to them
    for &v in &va {
        if !vb.contains(&v) {
            return gcd(&pa.content_in(v), pb);
        }
    }
    for &v in &vb {
        if !va.contains(&v) {
            return gcd(pa, &pb.content_in(v));
        }
    }
    let v = *common
        .iter()
        .min_by_key(|v| pa.degree_in(**v).max(pb.degree_in(**v)))
        .unwrap();
    let ca = pa.content_in(v);
    let cb = pb.content_in(v);
    let gc = gcd(&ca, &cb);
    let ppa = if ca.is_constant() {
        pa.clone()
    } else {
        pa.div_exact(&ca).unwrap()
    };
    let ppb = if cb.is_constant() {
        pb.clone()
    } else {
        pb.div_exact(&cb).unwrap()
    };
    let (mut f, mut g) = if ppa.degree_in(v) >= ppb.degree_in(v) {
        (ppa, ppb)
    } else {
        (ppb, ppa)
    };
    loop {
        let r = f.prem(&g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            g = Poly::one();
            break;
        }
        f = g;
        g = r.pp_in(v);
    }
    let g = if g.is_constant() {
        Poly::one()
    } else {
        g.pp_in(v)
    };
    gc.mul(&g).primitive().1
}

/// Coprime, squarefree splitting of a primitive polynomial into normalized
/// factors with multiplicities. Factors are pairwise coprime but are not
/// guaranteed irreducible.
pub fn squarefree_split(p: &Poly) -> Vec<(Poly, i64)> {
    let mut out = Vec::new();
    split_into(&p.primitive().1, 1, &mut out);
    // merge equal factors
    out.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Poly, i64)> = Vec::new();
    for (f, e) in out {
        match merged.last_mut() {
            Some(last) if last.0 == f => last.1 += e,
            _ => merged.push((f, e)),
        }
    }
    merged
}

fn split_into(p: &Poly, mult: i64, out: &mut Vec<(Poly, i64)>) {
    if p.is_constant() {
        return;
    }
    let mc = p.mono_content();
    let p = if mc.is_one() {
        p.clone()
    } else {
        for (i, &e) in mc.0.iter().enumerate() {
            if e > 0 {
                out.push((Poly::var(Var(i as u16)), mult * e as i64));
            }
        }
        p.div_exact(&Poly::monomial(mc, Rational::one()))
            .unwrap()
            .primitive()
            .1
    };
    if p.is_constant() {
        return;
    }
    let vars = p.vars();
    for &v in &vars {
        let c = p.content_in(v);
        if !c.is_constant() {
            let q = p.div_exact(&c).unwrap().primitive().1;
            split_into(&c, mult, out);
            split_into(&q, mult, out);
            return;
        }
    }
    // primitive in every variable: Yun's algorithm in the first variable
    let v = vars[0];
    let dp = p.derivative(v);
    let a0 = gcd(&p, &dp);
    if a0.is_one() {
        out.push((p.primitive().1, mult));
        return;
    }
    let mut b = p.div_exact(&a0).unwrap();
    let mut c = dp.div_exact(&a0).unwrap();
    let mut d = c.sub(&b.derivative(v));
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.primitive().1, mult * i));
        }
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = c.sub(&b.derivative(v));
        i += 1;
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.terms.len().min(other.terms.len());
        for k in 0..n {
            let (ma, ca) = &self.terms[k];
            let (mb, cb) = &other.terms[k];
            let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", MonoDisplay(m))?;
            } else {
                write!(f, "{}*{}", abs, MonoDisplay(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn setup() -> (Poly, Poly, Poly) {
        let v = declare_vars(&["a", "b", "c"]).unwrap();
        (Poly::var(v[0]), Poly::var(v[1]), Poly::var(v[2]))
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let (a, b, _) = setup();
        let p = a.mul(&a).sub(&b.mul(&b));
        let g = gcd(&p, &a.sub(&b));
        assert_eq!(g, a.sub(&b));
        assert_eq!(p.div_exact(&g).unwrap(), a.add(&b));
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let (a, b, c) = setup();
        let f = a.mul(&b).add(&c).add(&Poly::one());
        let x = f.mul(&a.sub(&c)).mul(&b.add(&Poly::constant(q(3))));
        let y = f.mul(&f).mul(&a.add(&b));
        assert_eq!(gcd(&x, &y), f.primitive().1);
        let one = gcd(&a.add(&Poly::one()), &b.add(&Poly::one()));
        assert!(one.is_one());
    }

    #[test]
    fn monomial_content_in_gcd() {
        let (a, b, _) = setup();
        let x = a.mul(&a).mul(&b);
        let y = a.mul(&b).mul(&b).add(&a.mul(&b));
        assert_eq!(gcd(&x, &y), a.mul(&b));
    }

    #[test]
    fn split_recovers_powers() {
        let (a, b, _) = setup();
        let one = Poly::one();
        let p = a.mul(&a).mul(&one.sub(&a)).mul(&a.sub(&b).pow(3));
        let parts = squarefree_split(&p);
        let mut back = Poly::one();
        for (f, e) in &parts {
            back = back.mul(&f.pow(*e as u32));
        }
        let (c, pp) = p.primitive();
        assert_eq!(back, pp);
        assert!(c == q(-1) || c == q(1));
        assert!(parts.contains(&(a.clone(), 2)));
        assert!(parts.contains(&(a.sub(&b), 3)));
    }

    #[test]
    fn exact_division_rejects_non_divisor() {
        let (a, b, _) = setup();
        assert!(a.mul(&b).add(&Poly::one()).div_exact(&a).is_none());
    }
}
