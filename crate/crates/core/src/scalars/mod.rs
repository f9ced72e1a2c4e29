//! Exact base-field arithmetic: rationals and multivariate rational functions.

pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
pub use poly::{Mono, Poly, Var};
pub use ratfunc::{FuncAtom, RatFunc};

pub type Rational = num_rational::BigRational;

/// A multiplicative atom: a basis element of `F^× / torsion` that may still
/// share factors with other atoms until refined.
pub trait Atom: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync {
    /// Expresses every atom over one pairwise-coprime base, so that exponent
    /// maps over the base are unique.
    fn refine(atoms: &[Self]) -> Vec<Vec<(Self, i64)>>;
}

impl Atom for BigUint {
    fn refine(atoms: &[Self]) -> Vec<Vec<(Self, i64)>> {
        atoms.iter().map(|a| vec![(a.clone(), 1)]).collect()
    }
}

impl Atom for FuncAtom {
    fn refine(atoms: &[Self]) -> Vec<Vec<(Self, i64)>> {
        let polys: Vec<Poly> = atoms
            .iter()
            .filter_map(|a| match a {
                FuncAtom::Poly(p) => Some(p.clone()),
                FuncAtom::Prime(_) => None,
            })
            .collect();
        let mut refined = ratfunc::coprime_refine(&polys).into_iter();
        atoms
            .iter()
            .map(|a| match a {
                FuncAtom::Prime(_) => vec![(a.clone(), 1)],
                FuncAtom::Poly(_) => refined
                    .next()
                    .unwrap()
                    .into_iter()
                    .map(|(p, e)| (FuncAtom::Poly(p), e))
                    .collect(),
            })
            .collect()
    }
}

/// `sign · Π atom^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<A: Ord> {
    pub sign: i8,
    pub exps: BTreeMap<A, i64>,
}

/// An exact field element in canonical form.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + 'static
{
    type Atom: Atom;

    fn from_rational(q: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    /// The value as a rational number, if it is constant.
    fn to_rational(&self) -> Option<Rational>;

    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, d: &Self) -> Result<Self> {
        Ok(self.clone() * &d.try_inv()?)
    }

    fn factor(&self) -> Result<Factorization<Self::Atom>>;

    fn atom_value(a: &Self::Atom) -> Self;

    /// Coordinates of the elements in one common ℚ-vector space; a rational
    /// combination of the elements vanishes iff the same combination of the
    /// coordinate maps does.
    fn qlinear_coords(elems: &[Self]) -> Vec<BTreeMap<Mono, Rational>>;

    fn parse(s: &str) -> Result<Self>;
}

impl Scalar for Rational {
    type Atom = BigUint;

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn factor(&self) -> Result<Factorization<BigUint>> {
        if self.is_zero() {
            return Err(Error::FactorZero);
        }
        let (sign, exps) = rational::factor_rational(self);
        Ok(Factorization {
            sign,
            exps: exps.into_iter().collect(),
        })
    }

    fn atom_value(a: &BigUint) -> Self {
        Rational::from_integer(a.clone().into())
    }

    fn qlinear_coords(elems: &[Self]) -> Vec<BTreeMap<Mono, Rational>> {
        elems
            .iter()
            .map(|q| {
                let mut m = BTreeMap::new();
                if !q.is_zero() {
                    m.insert(Mono::ONE, q.clone());
                }
                m
            })
            .collect()
    }

    fn parse(s: &str) -> Result<Self> {
        parse::parse_rational(s)
    }
}

impl Scalar for RatFunc {
    type Atom = FuncAtom;

    fn from_rational(q: Rational) -> Self {
        RatFunc::constant(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.constant_value()
    }

    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }

    fn try_div(&self, d: &Self) -> Result<Self> {
        self.div(d)
    }

    fn factor(&self) -> Result<Factorization<FuncAtom>> {
        let (sign, exps) = RatFunc::factor(self)?;
        Ok(Factorization { sign, exps })
    }

    fn atom_value(a: &FuncAtom) -> Self {
        match a {
            FuncAtom::Prime(p) => RatFunc::constant(Rational::from_integer(p.clone().into())),
            FuncAtom::Poly(p) => RatFunc::from_poly(p.clone()),
        }
    }

    fn qlinear_coords(elems: &[Self]) -> Vec<BTreeMap<Mono, Rational>> {
        ratfunc::qlinear_coords(elems)
    }

    fn parse(s: &str) -> Result<Self> {
        parse::parse_expr(s)
    }
}

/// Whether `Σ coeffs[i]·elems[i] = 0` in the field.
pub fn qlinear_zero_test<S: Scalar>(coeffs: &[Rational], elems: &[S]) -> bool {
    let coords = S::qlinear_coords(elems);
    let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
    for (c, v) in coeffs.iter().zip(coords) {
        for (m, x) in v {
            *acc.entry(m).or_insert_with(Rational::zero) += c * x;
        }
    }
    acc.values().all(|x| x.is_zero())
}

/// Exact arithmetic with an explicit error for division by zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith<S: Scalar>(x: &S, y: &S, op: ArithOp) -> Result<S> {
    match op {
        ArithOp::Add => Ok(x.clone() + y),
        ArithOp::Sub => Ok(x.clone() - y),
        ArithOp::Mul => Ok(x.clone() * y),
        ArithOp::Div => x.try_div(y),
    }
}

/// Rebuilds a value from its factorization.
pub fn expand_factorization<S: Scalar>(f: &Factorization<S::Atom>) -> S {
    let mut acc = S::from_i64(f.sign as i64);
    for (a, &e) in &f.exps {
        let v = S::atom_value(a);
        let v = if e < 0 {
            v.try_inv().expect("atoms are nonzero")
        } else {
            v
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc * &v;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rational::{int, rat};

    #[test]
    fn rational_sum() {
        let x = scalar_arith(&rat(1, 2), &rat(1, 3), ArithOp::Add).unwrap();
        assert_eq!(x, rat(5, 6));
        assert_eq!(
            scalar_arith(&rat(1, 2), &int(0), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn factor_twelve_and_minus_one() {
        let f = int(12).factor().unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.exps.get(&BigUint::from(2u32)), Some(&2));
        assert_eq!(f.exps.get(&BigUint::from(3u32)), Some(&1));
        let m = int(-1).factor().unwrap();
        assert_eq!(m.sign, -1);
        assert!(m.exps.is_empty());
        assert_eq!(int(0).factor(), Err(Error::FactorZero));
    }

    #[test]
    fn factor_symbolic_round_trip() {
        let x = RatFunc::parse("a^2*(1-a)/b").unwrap();
        let f = Scalar::factor(&x).unwrap();
        assert_eq!(f.sign, -1);
        let a = FuncAtom::Poly(RatFunc::parse("a").unwrap().num().clone());
        let am1 = FuncAtom::Poly(RatFunc::parse("a-1").unwrap().num().clone());
        let b = FuncAtom::Poly(RatFunc::parse("b").unwrap().num().clone());
        assert_eq!(f.exps.get(&a), Some(&2));
        assert_eq!(f.exps.get(&am1), Some(&1));
        assert_eq!(f.exps.get(&b), Some(&-1));
        assert_eq!(expand_factorization::<RatFunc>(&f), x);
    }

    #[test]
    fn qlinear_examples() {
        let a = RatFunc::parse("a").unwrap();
        let two_a = RatFunc::parse("2*a").unwrap();
        assert!(qlinear_zero_test(&[int(2), int(-1)], &[a.clone(), two_a]));
        let one_minus = RatFunc::parse("1-a").unwrap();
        assert!(!qlinear_zero_test(&[int(1), int(1)], &[a, one_minus]));
        let elems = [
            RatFunc::parse("(a+b)/(a*b)").unwrap(),
            RatFunc::parse("1/a").unwrap(),
            RatFunc::parse("1/b").unwrap(),
        ];
        assert!(qlinear_zero_test(&[int(1), int(-1), int(-1)], &elems));
    }
}
