//! Finite ℚ-linear combinations of generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::scalars::Rational;

/// `Σ coeff·generator`, zero coefficients never stored. The generator type
/// fixes the grade, so sums of different grades cannot be combined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum<G: Ord> {
    terms: BTreeMap<G, Rational>,
}

impl<G: Ord> Default for FormalSum<G> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<G: Ord + Clone> FormalSum<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: G) -> Self {
        Self::term(g, Rational::one())
    }

    pub fn term(g: G, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(g, c);
        s
    }

    pub fn from_terms(it: impl IntoIterator<Item = (G, Rational)>) -> Self {
        let mut s = Self::zero();
        for (g, c) in it {
            s.add_term(g, c);
        }
        s
    }

    pub fn add_term(&mut self, g: G, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (g, k) in &other.terms {
            self.add_term(g.clone(), k * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &Rational::one());
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &-Rational::one());
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(g, k)| (g.clone(), k * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&G, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &G) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Linear extension of `f` on generators.
    pub fn map_linear<H: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&G) -> Result<FormalSum<H>, E>,
    ) -> Result<FormalSum<H>, E> {
        let mut out = FormalSum::zero();
        for (g, c) in &self.terms {
            out.add_scaled(&f(g)?, c);
        }
        Ok(out)
    }
}

impl<G: Ord + Clone> FromIterator<(G, Rational)> for FormalSum<G> {
    fn from_iter<I: IntoIterator<Item = (G, Rational)>>(it: I) -> Self {
        Self::from_terms(it)
    }
}

impl<G: Ord + fmt::Display> fmt::Display for FormalSum<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{}", g)?;
            } else {
                write!(f, "{}·{}", abs, g)?;
            }
        }
        Ok(())
    }
}

impl<G: Ord + fmt::Debug> fmt::Debug for FormalSum<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Elements that form a ℚ-vector space under formal addition.
pub trait Combination: Clone + Send {
    fn zero() -> Self;
    fn add_scaled(&mut self, other: &Self, c: &Rational);
}

impl<G: Ord + Clone + Send> Combination for FormalSum<G> {
    fn zero() -> Self {
        FormalSum::zero()
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        FormalSum::add_scaled(self, other, c)
    }
}

impl<A: Ord + Clone + Send, B: Ord + Clone + Send> Combination for DirectSum<A, B> {
    fn zero() -> Self {
        DirectSum::zero()
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        DirectSum::add_scaled(self, other, c)
    }
}

/// An element of `A ⊕ B`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectSum<A: Ord, B: Ord> {
    pub first: FormalSum<A>,
    pub second: FormalSum<B>,
}

impl<A: Ord, B: Ord> Default for DirectSum<A, B> {
    fn default() -> Self {
        DirectSum {
            first: FormalSum::default(),
            second: FormalSum::default(),
        }
    }
}

impl<A: Ord + Clone, B: Ord + Clone> DirectSum<A, B> {
    pub fn new(first: FormalSum<A>, second: FormalSum<B>) -> Self {
        DirectSum { first, second }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        self.first.add_scaled(&other.first, c);
        self.second.add_scaled(&other.second, c);
    }

    pub fn add(&self, other: &Self) -> Self {
        DirectSum::new(self.first.add(&other.first), self.second.add(&other.second))
    }

    pub fn sub(&self, other: &Self) -> Self {
        DirectSum::new(self.first.sub(&other.first), self.second.sub(&other.second))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DirectSum::new(self.first.scale(c), self.second.scale(c))
    }

    /// Literal emptiness; use the normal forms for equality in the group.
    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    pub fn len(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }
}

impl<A: Ord + fmt::Display, B: Ord + fmt::Display> fmt::Display for DirectSum<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ⊕ ({})", self.first, self.second)
    }
}

impl<A: Ord + fmt::Debug, B: Ord + fmt::Debug> fmt::Debug for DirectSum<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊕ {:?}", self.first, self.second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, rat};

    #[test]
    fn cancellation_and_scaling() {
        let x = FormalSum::from_terms([("a", int(1)), ("b", int(2))]);
        assert!(x.sub(&x).is_zero());
        let many = FormalSum::from_terms((0..45).map(|i| (i, int(1))));
        let s = many.scale(&rat(2, 45));
        assert!(s.iter().all(|(_, c)| *c == rat(2, 45)));
        let y = FormalSum::single("c");
        assert_eq!(x.add(&y).len(), 3);
    }
}
