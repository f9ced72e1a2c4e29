//! Rational functions in canonical form: coprime numerator and monic
//! denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, squarefree_split, Mono, Poly, Var};
use super::rational::factor_rational;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Multiplicative atom of a rational function field: a rational prime or a
/// normalized polynomial (primitive, positive leading coefficient).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FuncAtom {
    Prime(BigUint),
    Poly(Poly),
}

impl fmt::Display for FuncAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuncAtom::Prime(p) => write!(f, "{}", p),
            FuncAtom::Poly(p) => write!(f, "({})", p),
        }
    }
}

impl RatFunc {
    /// Builds `num/den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        if den.is_constant() {
            let inv = den.lc().recip();
            return Ok(RatFunc {
                num: num.scale(&inv),
                den: Poly::one(),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Ok(RatFunc::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatFunc {
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(Poly::var(v))
    }

    /// The variable with the given name, registering it if new.
    pub fn named(name: &str) -> Result<RatFunc> {
        Var::named(name)
            .map(RatFunc::var)
            .ok_or(Error::TooManyVariables(super::poly::MAX_VARS))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul_ref(&o.inv()?))
    }

    fn add_ref(&self, o: &RatFunc, negate: bool) -> RatFunc {
        let on = if negate { o.num.neg() } else { o.num.clone() };
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.add(&on));
        }
        if self.den == o.den {
            let n = self.num.add(&on);
            return RatFunc::new(n, self.den.clone()).unwrap();
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&on.mul(&self.den));
            let d = self.den.mul(&o.den);
            // coprime denominators: any common factor of n and d is impossible
            return RatFunc::normalized(n, d);
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let n = self.num.mul(&d2).add(&on.mul(&d1));
        if n.is_zero() {
            return RatFunc::zero();
        }
        let g2 = gcd(&n, &g);
        let (n, gg) = if g2.is_one() {
            (n, g)
        } else {
            (n.div_exact(&g2).unwrap(), g.div_exact(&g2).unwrap())
        };
        RatFunc::normalized(n, d1.mul(&d2).mul(&gg))
    }

    fn mul_ref(&self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.div_exact(&g1).unwrap()
        };
        let d = if g1.is_one() {
            o.den.clone()
        } else {
            o.den.div_exact(&g1).unwrap()
        };
        let c = if g2.is_one() {
            o.num.clone()
        } else {
            o.num.div_exact(&g2).unwrap()
        };
        let b = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.div_exact(&g2).unwrap()
        };
        RatFunc::normalized(a.mul(&c), b.mul(&d))
    }

    /// Sign, rational content and polynomial factors with multiplicities.
    pub fn factor(&self) -> Result<(i8, BTreeMap<FuncAtom, i64>)> {
        if self.num.is_zero() {
            return Err(Error::FactorZero);
        }
        let (cn, pn) = self.num.primitive();
        let (cd, pd) = self.den.primitive();
        let content = cn / cd;
        let (sign, primes) = factor_rational(&content);
        let mut exps: BTreeMap<FuncAtom, i64> = BTreeMap::new();
        for (p, e) in primes {
            *exps.entry(FuncAtom::Prime(p)).or_insert(0) += e;
        }
        for (f, e) in squarefree_split(&pn) {
            *exps.entry(FuncAtom::Poly(f)).or_insert(0) += e;
        }
        for (f, e) in squarefree_split(&pd) {
            *exps.entry(FuncAtom::Poly(f)).or_insert(0) -= e;
        }
        exps.retain(|_, e| *e != 0);
        Ok((sign, exps))
    }

    /// Substitutes rational values for variables.
    pub fn eval(&self, vals: &[(Var, Rational)]) -> Result<RatFunc> {
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        for (v, x) in vals {
            n = n.eval_var(*v, x);
            d = d.eval_var(*v, x);
        }
        RatFunc::new(n, d)
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> RatFunc {
        let n = self
            .num
            .derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(v)));
        RatFunc::new(n, self.den.mul(&self.den)).unwrap()
    }
}

/// Rewrites polynomial atoms over a pairwise-coprime base. Returns, for each
/// input, its exponent vector over the base.
pub fn coprime_refine(atoms: &[Poly]) -> Vec<Vec<(Poly, i64)>> {
    let mut basis: Vec<Poly> = Vec::new();
    for a in atoms {
        let mut work = vec![a.clone()];
        while let Some(x) = work.pop() {
            if x.is_constant() {
                continue;
            }
            let mut split = None;
            for (i, b) in basis.iter().enumerate() {
                let g = gcd(&x, b);
                if !g.is_constant() {
                    split = Some((i, g));
                    break;
                }
            }
            match split {
                None => basis.push(x.primitive().1),
                Some((i, g)) => {
                    let b = basis.swap_remove(i);
                    work.push(b.div_exact(&g).unwrap().primitive().1);
                    work.push(x.div_exact(&g).unwrap().primitive().1);
                    work.push(g);
                }
            }
        }
    }
    basis.sort();
    atoms
        .iter()
        .map(|a| {
            let mut rest = a.clone();
            let mut out = Vec::new();
            for b in &basis {
                let mut e = 0;
                while let Some(q) = rest.div_exact(b) {
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((b.clone(), e));
                }
            }
            debug_assert!(rest.is_constant());
            out
        })
        .collect()
}

/// Coordinates of each element in a common ℚ-vector space: numerators over
/// the least common denominator, as monomial-coefficient maps.
pub fn qlinear_coords(elems: &[RatFunc]) -> Vec<BTreeMap<Mono, Rational>> {
    let mut l = Poly::one();
    for e in elems {
        if e.is_zero() || e.den.is_one() {
            continue;
        }
        let g = gcd(&l, &e.den);
        l = l.mul(&e.den.div_exact(&g).unwrap());
    }
    elems
        .iter()
        .map(|e| {
            if e.is_zero() {
                return BTreeMap::new();
            }
            let scaled = e.num.mul(&l.div_exact(&e.den).expect("lcm divisible"));
            scaled.terms().iter().cloned().collect()
        })
        .collect()
}

impl Zero for RatFunc {
    fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        self.add_ref(&o, false)
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, o: &'a RatFunc) -> RatFunc {
        self.add_ref(o, false)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self.add_ref(&o, true)
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &'a RatFunc) -> RatFunc {
        self.add_ref(o, true)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &'a RatFunc) -> RatFunc {
        self.mul_ref(o)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Ord for RatFunc {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.num.cmp(&o.num).then_with(|| self.den.cmp(&o.den))
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.terms().len() > 1
        || p.terms()
            .first()
            .map(|(m, c)| !m.is_one() && !c.abs().is_one())
            .unwrap_or(false)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, rat};

    fn v(name: &str) -> RatFunc {
        RatFunc::named(name).unwrap()
    }

    #[test]
    fn quotient_reduces() {
        let a = v("a");
        let b = v("b");
        let n = a.clone() * &a - b.clone() * &b;
        let d = a.clone() - &b;
        let q = n.div(&d).unwrap();
        assert_eq!(q, a + &b);
    }

    #[test]
    fn inverse_pair_is_one() {
        let a = v("a");
        let one = RatFunc::one();
        let x = a.div(&(one.clone() - &a)).unwrap();
        let y = (one - &a).div(&a).unwrap();
        assert_eq!(x * &y, RatFunc::one());
    }

    #[test]
    fn denominator_is_monic() {
        let a = v("a");
        let x = RatFunc::one()
            .div(&(RatFunc::constant(int(3)) - a.clone() * &RatFunc::constant(int(2))))
            .unwrap();
        assert!(x.den().lc().is_one());
        assert_eq!(x.num().constant_value(), Some(rat(-1, 2)));
    }

    #[test]
    fn coprime_refinement_splits_shared_factors() {
        let a = Poly::var(Var::named("a").unwrap());
        let b = Poly::var(Var::named("b").unwrap());
        let p = a.add(&b);
        let q = a.sub(&b);
        let x = p.mul(&p).mul(&q);
        let y = p.mul(&q.add(&Poly::one()));
        let r = coprime_refine(&[x, y]);
        assert_eq!(r[0].iter().map(|t| t.1).sum::<i64>(), 3);
        assert_eq!(r[1].len(), 2);
    }
}
