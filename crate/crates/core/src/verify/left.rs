//! The left square in weight three: `∂_ε ∘ τ³₂` against `τ³₁ ∘ d` on six
//! points in space, modulo the relations of `T𝔅₂` and `𝔅₂`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::pools::{certify_mid, label, MidCertificate, MidPool};
use super::{Check, Ctx, Outcome};
use crate::chains::linear::{is_zero_nf, residual_size};
use crate::chains::relations::{b2_five_term, five_term};
use crate::chains::{FormalSum, Mid, B2};
use crate::configs::{boundary_d, Configuration, DetTable};
use crate::error::{Error, Result};
use crate::maps::{
    del_eps3_gen, del_eps_w3_mid, extend, projected_five_term, projected_ratio_at,
    signed_permutations, tau3_1, tau3_1_alt, tau3_2, MidSum,
};
use crate::random::draw_with;
use crate::scalars::rational::int;
use crate::scalars::{Rational, Scalar};

/// Trials on which certified membership is attempted.
pub const CERTIFIED_TRIALS: usize = 5;

/// Which side `τ³₁ ∘ d` is compared against `∂_ε ∘ τ³₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftVariant {
    /// `∂_ε τ³₂ − τ³₁ ∘ d`, the statement as printed.
    Printed,
    /// `∂_ε τ³₂ + 4 τ³₁ ∘ d`.
    Rescaled,
    /// `∂_ε τ³₂ + τ³₁_alt ∘ d` with the alternation form of `τ³₁`.
    Alternation,
}

/// The difference of the two sides for `variant`.
pub fn left_square_difference<S: Scalar>(c: &Configuration<S>, variant: LeftVariant) -> Result<MidSum<S>> {
    let lhs = del_eps3_gen(&tau3_2(c)?)?;
    let dc = boundary_d(c)?;
    let rhs = match variant {
        LeftVariant::Printed => extend(&dc, tau3_1)?,
        LeftVariant::Rescaled => extend(&dc, tau3_1)?.scale(&int(-4)),
        LeftVariant::Alternation => extend(&dc, tau3_1_alt)?.scale(&int(-1)),
    };
    Ok(lhs.sub(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolSizes {
    pub tb2: usize,
    pub b2: usize,
}

/// The five-term relations between `r(σ₁|σ₀σ₂σ₃σ₄)` and `r(σ₂|σ₁σ₀σ₅σ₃)`
/// over all orderings `σ` of six points, the projected five-term sums of the
/// 5-point subsets, and the two-term and inversion closure.
pub fn left_pool<S: Scalar>(c: &Configuration<S>, target: &MidSum<S>) -> Result<MidPool<S>> {
    let t = DetTable::new(c)?;
    let mut pool = MidPool::new();
    for (s, _) in signed_permutations(6) {
        let a = projected_ratio_at(&t, [s[1], s[0], s[2], s[3], s[4]]);
        let b = projected_ratio_at(&t, [s[2], s[1], s[0], s[5], s[3]]);
        let (Ok(a), Ok(b)) = (a, b) else { continue };
        for (x, y) in [(&a, &b), (&b, &a)] {
            if let Ok(r) = five_term(&x.0, &y.0, &x.1, &y.1) {
                pool.push_tb2(label("five_term", &[&x.0, &y.0, &x.1, &y.1]), r);
            }
            if let Ok(r) = b2_five_term(&x.0, &y.0) {
                pool.push_b2(label("b2_five_term", &[&x.0, &y.0]), r);
            }
        }
    }
    for k in 0..6 {
        let sub = c.omit(k);
        let Ok(p) = projected_five_term(&sub) else { continue };
        let classical: FormalSum<B2<S>> = p
            .iter()
            .filter_map(|(g, q)| B2::new(g.a.clone()).ok().map(|b| (b, q.clone())))
            .collect();
        let omitted = S::from_i64(k as i64);
        pool.push_tb2(label("projected_five_term", &[&omitted]), p);
        pool.push_b2(label("b2_projected_five_term", &[&omitted]), classical);
    }
    pool.close(target)?;
    Ok(pool)
}

/// `∂_ε` applied to the tensor and field parts of `x` separately; a
/// member of the relation span has both parts killed.
pub fn split_residual<S: Scalar>(x: &MidSum<S>) -> Result<usize> {
    let mut t = MidSum::zero();
    let mut f = MidSum::zero();
    for (g, c) in x.iter() {
        let (a, b) = g.split();
        if let Some((gen, u)) = a {
            t.add_term(Mid::tensor(gen, u)?, c.clone());
        }
        if let Some((y, gen)) = b {
            f.add_term(Mid::scalar(y, gen), c.clone());
        }
    }
    let z = Default::default();
    Ok(residual_size(&del_eps_w3_mid(&t)?, &z)? + residual_size(&del_eps_w3_mid(&f)?, &z)?)
}

/// Everything computed for one configuration.
#[derive(Clone, Debug)]
pub struct LeftSquare {
    pub necessary: bool,
    pub split_residual: usize,
    pub membership: Option<(PoolSizes, MidCertificate)>,
}

pub fn check_left_square<S: Scalar>(
    c: &Configuration<S>,
    variant: LeftVariant,
    certify: bool,
) -> Result<LeftSquare> {
    let d = left_square_difference(c, variant)?;
    let necessary = is_zero_nf(&del_eps_w3_mid(&d)?)?;
    let split = split_residual(&d)?;
    let membership = if certify {
        let pool = left_pool(c, &d)?;
        let (tb2, b2) = pool.sizes();
        Some((PoolSizes { tb2, b2 }, certify_mid(&d, &pool)?))
    } else {
        None
    };
    Ok(LeftSquare {
        necessary,
        split_residual: split,
        membership,
    })
}

fn domain(c: &Configuration<Rational>) -> Result<()> {
    tau3_2(c)?;
    extend(&boundary_d(c)?, tau3_1)?;
    extend(&boundary_d(c)?, tau3_1_alt)?;
    Ok(())
}

fn certified(x: &LeftSquare) -> Option<bool> {
    x.membership.as_ref().map(|(_, m)| m.member && m.verified)
}

/// The printed statement decides the report; the two corrected variants
/// are recorded alongside.
pub(super) fn left_square(ctx: &Ctx) -> Result<Outcome> {
    use LeftVariant::*;
    if ctx.nu != 2 {
        return Err(Error::Unsupported("the weight-three maps need ν = 2".into()));
    }
    let rows = ctx.par_trials(ctx.trials, |t| {
        let (c, ()) = draw_with(&mut ctx.rng(0, t), 6, 3, 2, domain)?;
        let certify = t < CERTIFIED_TRIALS;
        Ok([
            check_left_square(&c, Printed, certify)?,
            check_left_square(&c, Rescaled, certify)?,
            check_left_square(&c, Alternation, certify)?,
        ])
    })?;
    let mut out = Outcome::default();
    let nec: Vec<usize> = rows.iter().map(|r| usize::from(!r[0].necessary)).collect();
    out.push(
        Check::residuals("necessary condition: ∂_ε of the difference vanishes", &nec),
        0,
    );
    let member: Vec<usize> = rows
        .iter()
        .filter_map(|r| {
            r[0].membership
                .as_ref()
                .map(|(_, m)| if m.member && m.verified { 0 } else { m.residual_terms.max(1) })
        })
        .collect();
    out.push(
        Check::residuals("certified membership", &member),
        member.iter().sum(),
    );
    let necessary_level = nec.iter().all(|&r| r == 0);
    let member_level = !member.is_empty() && member.iter().all(|&r| r == 0);
    let level = match (necessary_level, member_level) {
        (true, true) => "certified-membership",
        (true, false) => "necessary-condition",
        _ => "none",
    };
    let certs: Vec<_> = rows
        .iter()
        .enumerate()
        .filter_map(|(t, r)| {
            let (sizes, p) = r[0].membership.as_ref()?;
            Some(json!({
                "trial": t,
                "pool": sizes,
                "printed": p,
                "rescaled": r[1].membership.as_ref().map(|m| &m.1),
                "alternation": r[2].membership.as_ref().map(|m| &m.1),
            }))
        })
        .collect();
    let count = |k: usize, f: &dyn Fn(&LeftSquare) -> bool| rows.iter().filter(|r| f(&r[k])).count();
    out.certificate = Some(json!({
        "level": level,
        "certified_trials": certs,
        "variants": {
            "printed": {
                "split_zero": count(0, &|x| x.split_residual == 0),
                "certified": count(0, &|x| certified(x) == Some(true)),
            },
            "rescaled": {
                "split_zero": count(1, &|x| x.split_residual == 0),
                "certified": count(1, &|x| certified(x) == Some(true)),
            },
            "alternation": {
                "split_zero": count(2, &|x| x.split_residual == 0),
                "certified": count(2, &|x| certified(x) == Some(true)),
            },
        },
    }));
    Ok(out)
}
