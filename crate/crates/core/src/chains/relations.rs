//! Relation instances of `T𝔅₂`, `𝔅₂` and `T𝔅₃`.
//!
//! Derivative arguments are computed by evaluating the argument expression
//! on dual numbers, so `(f(a,b))′` is the ε-part of `f(a + a′ε, b + b′ε)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::gens::{one_minus, Tb2, Tb3, B2};
use super::sum::FormalSum;
use crate::epsring::TruncPoly;
use crate::error::{Error, Result};
use crate::scalars::rational::int;
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    FiveTerm,
    TwoTerm,
    Inversion2,
    FourTerm,
    ThreeTerm3,
    Inversion3,
    TwentyTwo,
    B2FiveTerm,
    B2TwoTerm,
    B2Inversion,
}

impl RelationKind {
    pub const ALL: [RelationKind; 10] = [
        RelationKind::FiveTerm,
        RelationKind::TwoTerm,
        RelationKind::Inversion2,
        RelationKind::FourTerm,
        RelationKind::ThreeTerm3,
        RelationKind::Inversion3,
        RelationKind::TwentyTwo,
        RelationKind::B2FiveTerm,
        RelationKind::B2TwoTerm,
        RelationKind::B2Inversion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::FiveTerm => "five_term",
            RelationKind::TwoTerm => "two_term",
            RelationKind::Inversion2 => "inversion2",
            RelationKind::FourTerm => "four_term",
            RelationKind::ThreeTerm3 => "three_term3",
            RelationKind::Inversion3 => "inversion3",
            RelationKind::TwentyTwo => "twenty_two",
            RelationKind::B2FiveTerm => "b2_five_term",
            RelationKind::B2TwoTerm => "b2_two_term",
            RelationKind::B2Inversion => "b2_inversion",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown relation kind `{}`", s)))
    }

    /// Accepted parameter counts.
    pub fn arity(self) -> &'static [usize] {
        match self {
            RelationKind::FiveTerm => &[4],
            RelationKind::TwentyTwo => &[3, 6],
            RelationKind::B2TwoTerm | RelationKind::B2Inversion => &[1],
            _ => &[2],
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The formal sum of a relation, in its own group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelElement<S: Ord> {
    Tb2(FormalSum<Tb2<S>>),
    B2(FormalSum<B2<S>>),
    Tb3(FormalSum<Tb3<S>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance<S: Ord> {
    pub kind: RelationKind,
    pub params: Vec<S>,
    pub element: RelElement<S>,
}

impl<S: Scalar> RelationInstance<S> {
    pub fn tb2(&self) -> Option<&FormalSum<Tb2<S>>> {
        match &self.element {
            RelElement::Tb2(x) => Some(x),
            _ => None,
        }
    }

    pub fn b2(&self) -> Option<&FormalSum<B2<S>>> {
        match &self.element {
            RelElement::B2(x) => Some(x),
            _ => None,
        }
    }

    pub fn tb3(&self) -> Option<&FormalSum<Tb3<S>>> {
        match &self.element {
            RelElement::Tb3(x) => Some(x),
            _ => None,
        }
    }

    pub fn to_spec(&self) -> RelationSpec {
        RelationSpec {
            kind: self.kind,
            params: self.params.iter().map(|p| p.to_string()).collect(),
        }
    }
}

/// Serialized form of an instance: the kind and its parameters as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub kind: RelationKind,
    pub params: Vec<String>,
}

impl RelationSpec {
    pub fn instantiate<S: Scalar>(&self) -> Result<RelationInstance<S>> {
        let params: Vec<S> = self
            .params
            .iter()
            .map(|p| S::parse(p))
            .collect::<Result<_>>()?;
        relation_instance(self.kind, &params)
    }
}

type D<S> = TruncPoly<S>;

fn dual<S: Scalar>(x: &S, dx: &S) -> D<S> {
    TruncPoly::dual(x.clone(), dx.clone())
}

fn dconst<S: Scalar>(c: i64) -> D<S> {
    TruncPoly::constant(S::from_i64(c), 2)
}

fn ddiv<S: Scalar>(n: &D<S>, d: &D<S>) -> Result<D<S>> {
    n.try_div(d)
}

fn parts<S: Scalar>(x: &D<S>) -> (S, S) {
    (x.coeffs()[0].clone(), x.coeffs()[1].clone())
}

/// `[x] ↦ ⟨x₀; x₁·m]₂` with sign.
fn push2<S: Scalar>(acc: &mut FormalSum<Tb2<S>>, sign: i64, x: &D<S>, m: &S) -> Result<()> {
    let (a, b) = parts(x);
    acc.add_term(Tb2::new(a, b * m)?, int(sign));
    Ok(())
}

fn push3<S: Scalar>(acc: &mut FormalSum<Tb3<S>>, sign: i64, x: &D<S>, m: &S) -> Result<()> {
    let (a, b) = parts(x);
    acc.add_term(Tb3::new(a, b * m)?, int(sign));
    Ok(())
}

/// The five arguments `a, b, b/a, (1−b)/(1−a), a(1−b)/(b(1−a))` on duals.
fn five_args<S: Scalar>(a: &D<S>, b: &D<S>) -> Result<[D<S>; 5]> {
    let one = dconst::<S>(1);
    let oma = &one - a;
    let omb = &one - b;
    Ok([
        a.clone(),
        b.clone(),
        ddiv(b, a)?,
        ddiv(&omb, &oma)?,
        ddiv(&(a * &omb), &(b * &oma))?,
    ])
}

const FIVE_SIGNS: [i64; 5] = [1, -1, 1, -1, 1];

fn check_five_domain<S: Scalar>(a: &S, b: &S) -> Result<()> {
    if a.is_zero() || a.is_one() || b.is_zero() || b.is_one() || a == b {
        return Err(Error::Domain(format!(
            "five-term parameters a = {}, b = {} need a, b ∉ {{0, 1}} and a ≠ b",
            a, b
        )));
    }
    Ok(())
}

/// `⟨a;a′] − ⟨b;b′] + ⟨b/a;·] − ⟨(1−b)/(1−a);·] + ⟨a(1−b)/(b(1−a));·]`.
pub fn five_term<S: Scalar>(a: &S, b: &S, da: &S, db: &S) -> Result<FormalSum<Tb2<S>>> {
    check_five_domain(a, b)?;
    let mut acc = FormalSum::zero();
    for (x, s) in five_args(&dual(a, da), &dual(b, db))?.iter().zip(FIVE_SIGNS) {
        push2(&mut acc, s, x, &S::one())?;
    }
    Ok(acc)
}

/// `⟨a;b]₂ + ⟨1−a;−b]₂`.
pub fn two_term<S: Scalar>(a: &S, b: &S) -> Result<FormalSum<Tb2<S>>> {
    let mut acc = FormalSum::single(Tb2::new(a.clone(), b.clone())?);
    acc.add_term(Tb2::new(one_minus(a), -b.clone())?, int(1));
    Ok(acc)
}

/// `⟨a;b]₂ + ⟨1/a;−b/a²]₂`; both summands have opposite `∂_ε`-images.
pub fn inversion2<S: Scalar>(a: &S, b: &S) -> Result<FormalSum<Tb2<S>>> {
    let mut acc = FormalSum::single(Tb2::new(a.clone(), b.clone())?);
    let (x, y) = parts(&dual(a, b).trunc_inv()?);
    acc.add_term(Tb2::new(x, y)?, int(1));
    Ok(acc)
}

/// The five-term relation at `a′ = a(1−a)`, `b′ = b(1−b)` with the third and
/// fourth terms written through the `⋆`-action:
/// `⟨a;a(1−a)] − ⟨b;b(1−b)] + a⋆⟨x;x(1−x)] − (a−1)⋆⟨z;z(1−z)]`,
/// `x = b/a`, `z = (1−b)/(1−a)`. The fifth term has zero ε-part and drops.
pub fn four_term<S: Scalar>(a: &S, b: &S) -> Result<FormalSum<Tb2<S>>> {
    check_five_domain(a, b)?;
    let log = |x: &S| x.clone() * &one_minus(x);
    let x = b.try_div(a)?;
    let z = one_minus(b).try_div(&one_minus(a))?;
    let star = |lambda: &S, g: S| TruncPoly::dual(g.clone(), log(&g)).star_action(lambda);
    let mut acc = FormalSum::zero();
    let terms = [
        (1, TruncPoly::dual(a.clone(), log(a))),
        (-1, TruncPoly::dual(b.clone(), log(b))),
        (1, star(a, x)?),
        (-1, star(&(a.clone() - &S::one()), z)?),
    ];
    for (s, p) in terms {
        push2(&mut acc, s, &p, &S::one())?;
    }
    Ok(acc)
}

/// `[a] − [b] + [b/a] − [(1−b)/(1−a)] + [a(1−b)/(b(1−a))]`.
pub fn b2_five_term<S: Scalar>(a: &S, b: &S) -> Result<FormalSum<B2<S>>> {
    check_five_domain(a, b)?;
    let z = S::zero();
    let mut acc = FormalSum::zero();
    for (x, s) in five_args(&dual(a, &z), &dual(b, &z))?.iter().zip(FIVE_SIGNS) {
        acc.add_term(B2::new(x.coeffs()[0].clone())?, int(s));
    }
    Ok(acc)
}

/// `[a] + [1−a]`.
pub fn b2_two_term<S: Scalar>(a: &S) -> Result<FormalSum<B2<S>>> {
    let mut acc = FormalSum::single(B2::new(a.clone())?);
    acc.add_term(B2::new(one_minus(a))?, int(1));
    Ok(acc)
}

/// `[a] + [1/a]`.
pub fn b2_inversion<S: Scalar>(a: &S) -> Result<FormalSum<B2<S>>> {
    let mut acc = FormalSum::single(B2::new(a.clone())?);
    acc.add_term(B2::new(a.try_inv()?)?, int(1));
    Ok(acc)
}

/// `⟨1−a;(1−a)_ε]₃ − ⟨a;a_ε]₃ − ⟨1−1/a;(1−1/a)_ε]₃`.
pub fn three_term3<S: Scalar>(a: &S, da: &S) -> Result<FormalSum<Tb3<S>>> {
    let x = dual(a, da);
    let one = dconst::<S>(1);
    let mut acc = FormalSum::zero();
    let terms = [
        (1, &one - &x),
        (-1, x.clone()),
        (-1, &one - &x.trunc_inv()?),
    ];
    for (s, p) in terms {
        push3(&mut acc, s, &p, &S::one())?;
    }
    Ok(acc)
}

/// `⟨a;a_ε]₃ − ⟨1/a;(1/a)_ε]₃`.
pub fn inversion3<S: Scalar>(a: &S, da: &S) -> Result<FormalSum<Tb3<S>>> {
    let x = dual(a, da);
    let mut acc = FormalSum::zero();
    push3(&mut acc, 1, &x, &S::one())?;
    push3(&mut acc, -1, &x.trunc_inv()?, &S::one())?;
    Ok(acc)
}

/// The 22-term sum `J(a,b,c)` in `T𝔅₃`, term by term.
pub fn twenty_two<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    da: &S,
    db: &S,
    dc: &S,
) -> Result<FormalSum<Tb3<S>>> {
    let (ad, bd, cd) = (dual(a, da), dual(b, db), dual(c, dc));
    let one = dconst::<S>(1);
    let (oma, omb, omc) = (&one - &ad, &one - &bd, &one - &cd);
    let amb = &ad - &bd;
    let bma = &bd - &ad;
    let s1 = S::one();
    let c_ = c.clone();
    let omc_ = one_minus(c);
    let terms: Vec<(i64, D<S>, S)> = vec![
        (1, ad.clone(), c_.clone()),
        (-1, bd.clone(), c_.clone()),
        (1, cd.clone(), a.clone() - b + &s1),
        (1, oma.clone(), omc_.clone()),
        (-1, omb.clone(), omc_.clone()),
        (1, omc.clone(), b.clone() - a),
        (-1, ddiv(&cd, &ad)?, s1.clone()),
        (1, ddiv(&cd, &bd)?, s1.clone()),
        (1, ddiv(&bd, &ad)?, c_.clone()),
        (-1, ddiv(&omc, &oma)?, s1.clone()),
        (1, ddiv(&omc, &omb)?, s1.clone()),
        (1, ddiv(&omb, &oma)?, c_.clone()),
        (1, ddiv(&(&ad * &omc), &(&cd * &oma))?, s1.clone()),
        (-1, ddiv(&(&cd * &ad), &bd)?, s1.clone()),
        (-1, ddiv(&(&bd * &omc), &(&cd * &omb))?, s1.clone()),
        (1, ddiv(&amb, &ad)?, omc_.clone()),
        (1, ddiv(&bma, &oma)?, omc_.clone()),
        (1, ddiv(&(&cd * &oma), &omb)?, s1.clone()),
        (-1, ddiv(&(&omc * &ad), &amb)?, s1.clone()),
        (-1, ddiv(&(&omc * &oma), &bma)?, s1.clone()),
        (1, ddiv(&(&omc * &bd), &(&cd * &amb))?, s1.clone()),
        (1, ddiv(&(&omc * &omb), &(&cd * &bma))?, s1.clone()),
    ];
    let mut acc = FormalSum::zero();
    for (s, x, m) in &terms {
        push3(&mut acc, *s, x, m)?;
    }
    Ok(acc)
}

/// `J(a,b,c)` at `a_ε = a(1−a)`, `b_ε = b(1−b)`, `c_ε = c(1−c)`.
pub fn twenty_two_special<S: Scalar>(a: &S, b: &S, c: &S) -> Result<FormalSum<Tb3<S>>> {
    let log = |x: &S| x.clone() * &one_minus(x);
    twenty_two(a, b, c, &log(a), &log(b), &log(c))
}

/// Builds the instance of `kind` at `params`.
pub fn relation_instance<S: Scalar>(
    kind: RelationKind,
    params: &[S],
) -> Result<RelationInstance<S>> {
    if !kind.arity().contains(&params.len()) {
        return Err(Error::Invalid(format!(
            "{} takes {:?} parameters, got {}",
            kind,
            kind.arity(),
            params.len()
        )));
    }
    let p = params;
    let element = match kind {
        RelationKind::FiveTerm => RelElement::Tb2(five_term(&p[0], &p[1], &p[2], &p[3])?),
        RelationKind::TwoTerm => RelElement::Tb2(two_term(&p[0], &p[1])?),
        RelationKind::Inversion2 => RelElement::Tb2(inversion2(&p[0], &p[1])?),
        RelationKind::FourTerm => RelElement::Tb2(four_term(&p[0], &p[1])?),
        RelationKind::ThreeTerm3 => RelElement::Tb3(three_term3(&p[0], &p[1])?),
        RelationKind::Inversion3 => RelElement::Tb3(inversion3(&p[0], &p[1])?),
        RelationKind::TwentyTwo if p.len() == 3 => {
            RelElement::Tb3(twenty_two_special(&p[0], &p[1], &p[2])?)
        }
        RelationKind::TwentyTwo => {
            RelElement::Tb3(twenty_two(&p[0], &p[1], &p[2], &p[3], &p[4], &p[5])?)
        }
        RelationKind::B2FiveTerm => RelElement::B2(b2_five_term(&p[0], &p[1])?),
        RelationKind::B2TwoTerm => RelElement::B2(b2_two_term(&p[0])?),
        RelationKind::B2Inversion => RelElement::B2(b2_inversion(&p[0])?),
    };
    Ok(RelationInstance {
        kind,
        params: params.to_vec(),
        element,
    })
}

/// Serializes a pool as a JSON array of `{kind, params}`.
pub fn pool_to_json<S: Scalar>(pool: &[RelationInstance<S>]) -> String {
    let specs: Vec<RelationSpec> = pool.iter().map(|r| r.to_spec()).collect();
    serde_json::to_string(&specs).expect("relation specs serialize")
}

pub fn pool_from_json<S: Scalar>(s: &str) -> Result<Vec<RelationInstance<S>>> {
    let specs: Vec<RelationSpec> =
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("relation pool: {}", e)))?;
    specs.iter().map(|r| r.instantiate()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::rat;
    use crate::scalars::{RatFunc, Rational};

    fn g(a: Rational, b: Rational) -> Tb2<Rational> {
        Tb2::new(a, b).unwrap()
    }

    #[test]
    fn five_term_at_two_three() {
        let x = five_term(&int(2), &int(3), &int(1), &int(1)).unwrap();
        let mut want = FormalSum::zero();
        want.add_term(g(int(2), int(1)), int(1));
        want.add_term(g(int(3), int(1)), int(-1));
        want.add_term(g(rat(3, 2), rat(-1, 4)), int(1));
        want.add_term(g(int(2), int(-1)), int(-1));
        want.add_term(g(rat(4, 3), rat(-4, 9)), int(1));
        assert_eq!(x, want);
    }

    #[test]
    fn quotient_rule_derivatives() {
        let v = |s: &str| RatFunc::parse(s).unwrap();
        let (a, b, da, db) = (v("a"), v("b"), v("c"), v("d"));
        let x = five_term(&a, &b, &da, &db).unwrap();
        let want = v("(a*d-c*b)/a^2");
        let third = Tb2::new(v("b/a"), want).unwrap();
        assert_eq!(x.coeff(&third), int(1));
        let fifth = Tb2::new(
            v("a*(1-b)/(b*(1-a))"),
            v("(b*(1-b)*c-a*(1-a)*d)/(b*(1-a))^2"),
        )
        .unwrap();
        assert_eq!(x.coeff(&fifth), int(1));
    }

    #[test]
    fn domains_enforced() {
        assert!(five_term(&int(2), &int(2), &int(1), &int(1)).is_err());
        assert!(five_term(&int(1), &int(2), &int(1), &int(1)).is_err());
        assert!(two_term(&int(0), &int(2)).is_err());
        assert!(relation_instance(RelationKind::TwoTerm, &[int(3)]).is_err());
    }

    #[test]
    fn twenty_two_has_twenty_two_terms() {
        let v = |s: &str| RatFunc::parse(s).unwrap();
        let j = twenty_two_special(&v("a"), &v("b"), &v("c")).unwrap();
        assert_eq!(j.len(), 22);
        let merged = twenty_two_special(&int(2), &int(3), &int(5)).unwrap();
        assert!(merged.len() < 22);
    }

    #[test]
    fn pool_json_round_trip() {
        let pool = vec![
            relation_instance(RelationKind::FiveTerm, &[int(2), int(3), int(1), int(1)]).unwrap(),
            relation_instance(RelationKind::B2Inversion, &[rat(2, 7)]).unwrap(),
            relation_instance(RelationKind::TwentyTwo, &[int(2), int(3), int(5)]).unwrap(),
        ];
        let s = pool_to_json(&pool);
        let back: Vec<RelationInstance<Rational>> = pool_from_json(&s).unwrap();
        assert_eq!(back, pool);
    }
}
