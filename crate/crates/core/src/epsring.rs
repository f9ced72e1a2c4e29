//! The truncated polynomial ring `F[ε]/ε^ν`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// `c₀ + c₁ε + … + c_{ν−1}ε^{ν−1}`; the order ν is `coeffs.len() ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncPoly<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("truncation order must be at least 1".into()));
        }
        Ok(TruncPoly { coeffs })
    }

    /// The constant `c` in order `nu`.
    pub fn constant(c: S, nu: usize) -> Self {
        let mut coeffs = vec![S::zero(); nu.max(1)];
        coeffs[0] = c;
        TruncPoly { coeffs }
    }

    pub fn zero(nu: usize) -> Self {
        TruncPoly {
            coeffs: vec![S::zero(); nu.max(1)],
        }
    }

    pub fn one(nu: usize) -> Self {
        Self::constant(S::one(), nu)
    }

    /// `a + a′ε` in order 2.
    pub fn dual(a: S, a_eps: S) -> Self {
        TruncPoly {
            coeffs: vec![a, a_eps],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// The ε⁰ part.
    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn eps_coeff(&self, k: usize) -> Result<&S> {
        self.coeffs.get(k).ok_or(Error::OutOfRange {
            index: k,
            order: self.order(),
        })
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.order() != o.order() {
            return Err(Error::OrderMismatch(self.order(), o.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(TruncPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(TruncPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at ε^ν.
    pub fn trunc_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let nu = self.order();
        let coeffs = (0..nu).map(|k| convolve_unchecked(self, o, k)).collect();
        Ok(TruncPoly { coeffs })
    }

    /// Inverse via `inv₀ = 1/p₀`, `inv_k = −(Σ_{j=1..k} p_j inv_{k−j})/p₀`.
    pub fn trunc_inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotUnit);
        }
        let p0_inv = self.coeffs[0].try_inv()?;
        let mut inv: Vec<S> = Vec::with_capacity(self.order());
        inv.push(p0_inv.clone());
        for k in 1..self.order() {
            let mut acc = S::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc + &(self.coeffs[j].clone() * &inv[k - j]);
            }
            inv.push(-(acc * &p0_inv));
        }
        Ok(TruncPoly { coeffs: inv })
    }

    pub fn try_div(&self, d: &Self) -> Result<Self> {
        self.trunc_mul(&d.trunc_inv()?)
    }

    /// `(pq)_{ε^n} = Σ_{k=0..n} p_k q_{n−k}`.
    pub fn convolve_coeff(&self, o: &Self, n: usize) -> Result<S> {
        self.check(o)?;
        if n >= self.order() {
            return Err(Error::OutOfRange {
                index: n,
                order: self.order(),
            });
        }
        Ok(convolve_unchecked(self, o, n))
    }

    /// `λ⋆(a + a′ε) = a + λa′ε`, defined on dual numbers only.
    pub fn star_action(&self, lambda: &S) -> Result<Self> {
        if self.order() != 2 {
            return Err(Error::Unsupported(format!(
                "the star action is defined only for order 2, not {}",
                self.order()
            )));
        }
        if lambda.is_zero() {
            return Err(Error::Domain("star action by zero".into()));
        }
        Ok(TruncPoly::dual(
            self.coeffs[0].clone(),
            lambda.clone() * &self.coeffs[1],
        ))
    }

    pub fn scale(&self, c: &S) -> Self {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect(),
        }
    }

    /// Restriction to a lower order.
    pub fn truncate(&self, nu: usize) -> Self {
        TruncPoly {
            coeffs: self.coeffs.iter().take(nu.max(1)).cloned().collect(),
        }
    }
}

fn convolve_unchecked<S: Scalar>(p: &TruncPoly<S>, q: &TruncPoly<S>, n: usize) -> S {
    let mut acc = S::zero();
    for k in 0..=n {
        let a = &p.coeffs[k];
        let b = &q.coeffs[n - k];
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc + &(a.clone() * b);
    }
    acc
}

impl<S: Scalar> Add for &TruncPoly<S> {
    type Output = TruncPoly<S>;
    fn add(self, o: &TruncPoly<S>) -> TruncPoly<S> {
        self.try_add(o).expect("orders agree")
    }
}

impl<S: Scalar> Sub for &TruncPoly<S> {
    type Output = TruncPoly<S>;
    fn sub(self, o: &TruncPoly<S>) -> TruncPoly<S> {
        self.try_sub(o).expect("orders agree")
    }
}

impl<S: Scalar> Mul for &TruncPoly<S> {
    type Output = TruncPoly<S>;
    fn mul(self, o: &TruncPoly<S>) -> TruncPoly<S> {
        self.trunc_mul(o).expect("orders agree")
    }
}

impl<S: Scalar> Neg for &TruncPoly<S> {
    type Output = TruncPoly<S>;
    fn neg(self) -> TruncPoly<S> {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for TruncPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(k + 1 == self.coeffs.len() && first) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let s = c.to_string();
            let s = if k > 0 && (s.contains(' ') || s.contains('/')) {
                format!("({})", s)
            } else {
                s
            };
            match k {
                0 => write!(f, "{}", s)?,
                1 => write!(f, "{}·ε", s)?,
                _ => write!(f, "{}·ε^{}", s, k)?,
            }
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for TruncPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncPoly({:?})", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, rat};
    use crate::scalars::{RatFunc, Rational};

    fn tp(c: &[Rational]) -> TruncPoly<Rational> {
        TruncPoly::new(c.to_vec()).unwrap()
    }

    #[test]
    fn dual_product() {
        let p = tp(&[int(2), int(3)]);
        let q = tp(&[int(5), int(7)]);
        assert_eq!(p.trunc_mul(&q).unwrap(), tp(&[int(10), int(29)]));
        assert_eq!(p.convolve_coeff(&q, 1).unwrap(), int(29));
        assert_eq!(p.convolve_coeff(&q, 0).unwrap(), int(10));
        let e = tp(&[int(1), int(2)])
            .trunc_mul(&tp(&[int(0), int(3)]))
            .unwrap();
        assert_eq!(e, tp(&[int(0), int(3)]));
        assert!(p.convolve_coeff(&q, 2).is_err());
    }

    #[test]
    fn inverse_order_three() {
        let p = tp(&[int(2), int(3), int(1)]);
        let inv = p.trunc_inv().unwrap();
        assert_eq!(inv, tp(&[rat(1, 2), rat(-3, 4), rat(7, 8)]));
        assert_eq!(p.trunc_mul(&inv).unwrap(), TruncPoly::one(3));
        assert_eq!(tp(&[int(0), int(1)]).trunc_inv(), Err(Error::NotUnit));
    }

    #[test]
    fn symbolic_dual_inverse() {
        let a = RatFunc::named("a").unwrap();
        let b = RatFunc::named("b").unwrap();
        let inv = TruncPoly::dual(a.clone(), b.clone()).trunc_inv().unwrap();
        assert_eq!(inv.coeffs()[0], a.inv().unwrap());
        assert_eq!(inv.coeffs()[1], -(b.div(&(a.clone() * &a)).unwrap()));
    }

    #[test]
    fn star_action_rules() {
        let p = tp(&[int(2), int(5)]);
        assert_eq!(p.star_action(&int(3)).unwrap(), tp(&[int(2), int(15)]));
        assert_eq!(p.star_action(&int(1)).unwrap(), p);
        assert!(tp(&[int(1), int(1), int(1)]).star_action(&int(2)).is_err());
    }

    #[test]
    fn mismatched_orders_fail() {
        let p = tp(&[int(1), int(1)]);
        let q = tp(&[int(1), int(1), int(1)]);
        assert_eq!(p.trunc_mul(&q), Err(Error::OrderMismatch(2, 3)));
        assert!(p.eps_coeff(2).is_err());
    }
}
