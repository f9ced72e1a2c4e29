//! `T𝔅₃`: the complex property `∂_ε ∘ ∂_ε,3 = 0` and the 22-term element
//! under the special ε-arguments.

use rand::Rng;
use serde_json::json;

use super::basic::symbols;
use super::pools::{certify_mid, label, MidCertificate, MidPool};
use super::{Check, Ctx, Mode, Outcome};
use crate::chains::linear::is_zero_nf;
use crate::chains::relations::{b2_five_term, five_term, three_term3, twenty_two_special};
use crate::chains::{FormalSum, Tb3};
use crate::error::{Error, Result};
use crate::maps::{del_eps3_gen, del_eps_w3_mid, MidSum};
use crate::random::small_nonzero;
use crate::scalars::{RatFunc, Rational, Scalar};

/// Trials on which membership of `∂_ε,3 J` is attempted.
pub const MEMBERSHIP_TRIALS: usize = 10;

/// Whether `∂_ε ∂_ε,3 x` vanishes.
pub fn necessary<S: Scalar>(x: &FormalSum<Tb3<S>>) -> Result<bool> {
    is_zero_nf(&del_eps_w3_mid(&del_eps3_gen(x)?)?)
}

/// Five-term relations between every ordered pair of arguments of `x`, in
/// `T𝔅₂` and in `𝔅₂`, with the two-term and inversion closure.
pub fn argument_pool<S: Scalar>(x: &FormalSum<Tb3<S>>, image: &MidSum<S>) -> Result<MidPool<S>> {
    let args: Vec<&Tb3<S>> = x.iter().map(|(g, _)| g).collect();
    let mut pool = MidPool::new();
    for a in &args {
        for b in &args {
            if a == b {
                continue;
            }
            if let Ok(r) = five_term(&a.a, &b.a, &a.b, &b.b) {
                pool.push_tb2(label("five_term", &[&a.a, &b.a, &a.b, &b.b]), r);
            }
            if let Ok(r) = b2_five_term(&a.a, &b.a) {
                pool.push_b2(label("b2_five_term", &[&a.a, &b.a]), r);
            }
        }
    }
    pool.close(image)?;
    Ok(pool)
}

/// Membership of `∂_ε,3 x` in the span of [`argument_pool`].
pub fn certify_tb3<S: Scalar>(x: &FormalSum<Tb3<S>>) -> Result<MidCertificate> {
    let image = del_eps3_gen(x)?;
    let pool = argument_pool(x, &image)?;
    certify_mid(&image, &pool)
}

fn symbolic_generators() -> Result<Vec<FormalSum<Tb3<RatFunc>>>> {
    let v = symbols()?;
    let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
    let one = RatFunc::from_i64(1);
    let pairs = [
        (a.clone(), b.clone()),
        (a.div(&(one.clone() - b))?, c.clone()),
        ((a.clone() - b).div(&(a.clone() * c))?, d.clone()),
    ];
    pairs
        .into_iter()
        .map(|(x, y)| Ok(FormalSum::single(Tb3::new(x, y)?)))
        .collect()
}

fn draw_abc<R: Rng>(rng: &mut R) -> Result<(Rational, Rational, Rational, FormalSum<Tb3<Rational>>)> {
    for _ in 0..10_000 {
        let (a, b, c) = (small_nonzero(rng), small_nonzero(rng), small_nonzero(rng));
        if let Ok(j) = twenty_two_special(&a, &b, &c) {
            if del_eps3_gen(&j).is_ok() {
                return Ok((a, b, c, j));
            }
        }
    }
    Err(Error::Degenerate("no admissible (a, b, c) after 10000 draws".into()))
}

pub(super) fn relations(ctx: &Ctx) -> Result<Outcome> {
    let mut out = Outcome::default();
    if ctx.mode == Mode::Symbolic {
        let gens = symbolic_generators()?;
        let bad: Vec<usize> = gens
            .iter()
            .map(|g| Ok(usize::from(!necessary(g)?)))
            .collect::<Result<_>>()?;
        out.push(Check::residuals("∂_ε ∘ ∂_ε,3 = 0 over ℚ(a, b, c, d)", &bad), bad.iter().sum());
        return Ok(out);
    }
    let rows = ctx.par_trials(ctx.trials, |t| {
        let mut rng = ctx.rng(0, t);
        let (a, b, c, j) = draw_abc(&mut rng)?;
        let nec = necessary(&j)?;
        let a3 = small_nonzero(&mut rng);
        let three = match three_term3(&a3, &(a3.clone() * (Rational::from_integer(1.into()) - &a3))) {
            Ok(x) => necessary(&x)?,
            Err(_) => true,
        };
        let cert = if t < MEMBERSHIP_TRIALS {
            Some(certify_tb3(&j)?)
        } else {
            None
        };
        Ok((format!("({}, {}, {})", a, b, c), nec, three, cert))
    })?;
    let nec: Vec<usize> = rows.iter().map(|r| usize::from(!r.1)).collect();
    let three: Vec<usize> = rows.iter().map(|r| usize::from(!r.2)).collect();
    out.push(Check::residuals("necessary condition for the 22-term element", &nec), 0);
    out.push(Check::residuals("necessary condition for the three-term relation", &three), 0);
    let attempted: Vec<_> = rows
        .iter()
        .filter_map(|r| r.3.as_ref().map(|m| (r.0.clone(), m)))
        .collect();
    let members = attempted.iter().filter(|(_, m)| m.member && m.verified).count();
    let level = if members == attempted.len() && !attempted.is_empty() {
        "certified-membership"
    } else {
        "necessary-condition"
    };
    out.certificate = Some(json!({
        "level": level,
        "membership_attempts": attempted.len(),
        "members": members,
        "attempts": attempted
            .iter()
            .map(|(abc, m)| json!({
                "abc": abc,
                "member": m.member,
                "residual_terms": m.residual_terms,
                "terms": m.entries.len(),
            }))
            .collect::<Vec<_>>(),
    }));
    Ok(out)
}

