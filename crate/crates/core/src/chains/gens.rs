//! Generators of the target groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

fn check_domain<S: Scalar>(a: &S, what: &str) -> Result<()> {
    if a.is_zero() || a.is_one() {
        Err(Error::Domain(format!("{} argument {} is 0 or 1", what, a)))
    } else {
        Ok(())
    }
}

/// `⟨a;b]₂ = [a + bε] − [a]`, with `a ∉ {0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tb2<S> {
    pub a: S,
    pub b: S,
}

impl<S: Scalar> Tb2<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        check_domain(&a, "⟨a;b]₂")?;
        Ok(Tb2 { a, b })
    }
}

/// `[a]₂` in the Bloch group, with `a ∉ {0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct B2<S> {
    pub a: S,
}

impl<S: Scalar> B2<S> {
    pub fn new(a: S) -> Result<Self> {
        check_domain(&a, "[a]₂")?;
        Ok(B2 { a })
    }
}

/// `⟨a;b]₃`, with `a ∉ {0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tb3<S> {
    pub a: S,
    pub b: S,
}

impl<S: Scalar> Tb3<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        check_domain(&a, "⟨a;b]₃")?;
        Ok(Tb3 { a, b })
    }
}

/// `x ⊗ (u₁ ∧ … ∧ u_k)` in `F ⊗ ∧^k F^×`; every `u_i ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tensor<S> {
    pub x: S,
    pub units: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn new(x: S, units: Vec<S>) -> Result<Self> {
        if units.iter().any(|u| u.is_zero()) {
            return Err(Error::Domain("zero in a multiplicative slot".into()));
        }
        Ok(Tensor { x, units })
    }

    pub fn weight(&self) -> usize {
        self.units.len()
    }
}

/// `x₁ ∧ … ∧ x_k` in `∧^k F`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Wedge<S>(pub Vec<S>);

/// Generators of `T𝔅₂ ⊗ F^× ⊕ F ⊗ 𝔅₂`.
///
/// A `Bundle` is `⟨a;b]₂ ⊗ c + x ⊗ [a]₂` kept together, because the
/// differential out of this group has a `∧³F` part `b/(1−a) ∧ b/a ∧ x`
/// that pairs the two summands.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Mid<S> {
    /// `⟨a;b]₂ ⊗ c`
    Tensor { gen: Tb2<S>, c: S },
    /// `x ⊗ [y]₂`
    Scalar { x: S, gen: B2<S> },
    /// `⟨a;b]₂ ⊗ c + x ⊗ [a]₂`
    Bundle { gen: Tb2<S>, c: S, x: S },
}

impl<S: Scalar> Mid<S> {
    pub fn tensor(gen: Tb2<S>, c: S) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("zero in a multiplicative slot".into()));
        }
        Ok(Mid::Tensor { gen, c })
    }

    pub fn scalar(x: S, gen: B2<S>) -> Self {
        Mid::Scalar { x, gen }
    }

    pub fn bundle(gen: Tb2<S>, c: S, x: S) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("zero in a multiplicative slot".into()));
        }
        Ok(Mid::Bundle { gen, c, x })
    }

    /// The two plain summands of the generator.
    pub fn split(&self) -> (Option<(Tb2<S>, S)>, Option<(S, B2<S>)>) {
        match self {
            Mid::Tensor { gen, c } => (Some((gen.clone(), c.clone())), None),
            Mid::Scalar { x, gen } => (None, Some((x.clone(), gen.clone()))),
            Mid::Bundle { gen, c, x } => (
                Some((gen.clone(), c.clone())),
                Some((x.clone(), B2 { a: gen.a.clone() })),
            ),
        }
    }
}

fn paren<S: fmt::Display>(s: &S) -> String {
    let t = s.to_string();
    if t.contains(' ') {
        format!("({})", t)
    } else {
        t
    }
}

impl<S: fmt::Display> fmt::Display for Tb2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}; {}]₂", self.a, self.b)
    }
}

impl<S: fmt::Display> fmt::Display for B2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]₂", self.a)
    }
}

impl<S: fmt::Display> fmt::Display for Tb3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}; {}]₃", self.a, self.b)
    }
}

impl<S: fmt::Display> fmt::Display for Tensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let us: Vec<String> = self.units.iter().map(paren).collect();
        write!(f, "{} ⊗ {}", paren(&self.x), us.join(" ∧ "))
    }
}

impl<S: fmt::Display> fmt::Display for Wedge<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.0.iter().map(paren).collect();
        write!(f, "{}", xs.join(" ∧ "))
    }
}

impl<S: fmt::Display> fmt::Display for Mid<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mid::Tensor { gen, c } => write!(f, "{} ⊗ {}", gen, paren(c)),
            Mid::Scalar { x, gen } => write!(f, "{} ⊗ {}", paren(x), gen),
            Mid::Bundle { gen, c, x } => write!(
                f,
                "({} ⊗ {} + {} ⊗ [{}]₂)",
                gen,
                paren(c),
                paren(x),
                gen.a
            ),
        }
    }
}

/// Whether a scalar is a legal first argument of a Bloch-type generator.
pub fn in_domain<S: Scalar>(a: &S) -> bool {
    !(a.is_zero() || a.is_one())
}

/// `1 − a`.
pub fn one_minus<S: Scalar>(a: &S) -> S {
    S::one() - a
}
