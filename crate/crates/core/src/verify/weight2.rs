//! Weight two: the square `τ²₀ ∘ d = ∂_ε ∘ τ²₁`, the compositions with `d′`,
//! and the projected five-term relation.

use serde_json::json;

use super::basic::{lifted_trials, symbols};
use super::{Check, Ctx, Mode, Outcome};
use crate::chains::linear::{residual_size, Linear};
use crate::chains::modular::rational_memberships;
use crate::chains::relations::{five_term, inversion2};
use crate::chains::span::{certificate_strings, Membership};
use crate::chains::{FormalSum, Tb2};
use crate::configs::{boundary_d, pgl_normalize, project_d_prime, Configuration, DetTable};
use crate::epsring::TruncPoly;
use crate::error::Result;
use crate::maps::{del_eps_w2, extend, projected_five_term as five_sum, projected_ratio_at, tau2_0, tau2_1, TensorWedge};
use crate::random::draw_with;
use crate::scalars::{RatFunc, Rational, Scalar};

fn square_residual<S: Scalar>(c: &Configuration<S>) -> Result<usize> {
    let lhs = extend(&boundary_d(c)?, tau2_0)?;
    let rhs = del_eps_w2(&tau2_1(c)?)?;
    residual_size(&lhs, &rhs)
}

/// Four points of the plane over dual numbers in the shared symbols.
fn symbolic_plane() -> Result<Configuration<RatFunc>> {
    let v = symbols()?;
    let k = |n: i64| RatFunc::from_i64(n);
    let p = |x: RatFunc, y: RatFunc, ex: RatFunc, ey: RatFunc| vec![TruncPoly::dual(x, ex), TruncPoly::dual(y, ey)];
    Configuration::new(vec![
        p(k(1), k(0), k(0), v[4].clone()),
        p(k(0), k(1), v[5].clone(), k(0)),
        p(k(1), k(1), v[6].clone(), v[3].clone()),
        p(v[0].clone(), v[1].clone(), v[2].clone(), v[7].clone()),
    ])
}

pub(super) fn commutes(ctx: &Ctx) -> Result<Outcome> {
    let mut out = Outcome::default();
    if ctx.mode == Mode::Symbolic {
        let r = square_residual(&symbolic_plane()?)?;
        out.push(Check::new("square", r == 0, format!("8 symbols, residual {}", r)), r);
        return Ok(out);
    }
    let rs = ctx.par_trials(ctx.trials, |t| {
        Ok(draw_with(&mut ctx.rng(0, t), 4, 2, 2, square_residual)?.1)
    })?;
    out.push(Check::residuals("square", &rs), rs.iter().sum());
    Ok(out)
}

/// Residuals of `x` in the tensor and the wedge component.
fn components<S: Scalar>(x: &TensorWedge<S>) -> Result<(usize, usize)> {
    Ok((
        residual_size(&x.first, &FormalSum::zero())?,
        residual_size(&x.second, &FormalSum::zero())?,
    ))
}

fn push_components(out: &mut Outcome, name: &str, rows: &[(usize, usize)]) {
    let tensor: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let wedge: Vec<usize> = rows.iter().map(|r| r.1).collect();
    out.push(
        Check::residuals(&format!("{} in F ⊗ F^×", name), &tensor),
        tensor.iter().sum(),
    );
    out.push(Check::residuals(&format!("{} in ∧²F", name), &wedge), wedge.iter().sum());
}

fn zero2_residual<S: Scalar>(c: &Configuration<S>) -> Result<(usize, usize)> {
    components(&extend(&project_d_prime(c)?, tau2_0)?)
}

pub(super) fn zero_composition(ctx: &Ctx) -> Result<Outcome> {
    let rows = if ctx.mode == Mode::Symbolic {
        lifted_trials(ctx, 4, 3, zero2_residual, zero2_residual)?
    } else {
        ctx.par_trials(ctx.trials, |t| {
            Ok(draw_with(&mut ctx.rng(0, t), 4, 3, 2, zero2_residual)?.1)
        })?
    };
    let mut out = Outcome::default();
    push_components(&mut out, "τ²₀ ∘ d′ = 0", &rows);
    Ok(out)
}

/// `five_term` at every ordered pair of distinct projected ratios of the
/// five points and their inverses, then `inversion2` at every generator.
pub fn five_point_pool<S: Scalar>(c: &Configuration<S>) -> Result<Vec<(String, FormalSum<Tb2<S>>)>> {
    let t = DetTable::new(c)?;
    let mut vals: Vec<(S, S)> = Vec::new();
    for i in 0..5 {
        let rest: Vec<usize> = (0..5).filter(|&k| k != i).collect();
        let (r, re) = projected_ratio_at(&t, [i, rest[0], rest[1], rest[2], rest[3]])?;
        let inv = TruncPoly::dual(r.clone(), re.clone()).trunc_inv()?;
        vals.push((r, re));
        vals.push((inv.coeffs()[0].clone(), inv.coeffs()[1].clone()));
    }
    vals.sort();
    vals.dedup();
    let mut pool = Vec::new();
    for a in &vals {
        for b in &vals {
            if a == b {
                continue;
            }
            if let Ok(r) = five_term(&a.0, &b.0, &a.1, &b.1) {
                pool.push((format!("five_term({}, {}, {}, {})", a.0, b.0, a.1, b.1), r));
            }
        }
    }
    let mut gens: Vec<Tb2<S>> = pool.iter().flat_map(|(_, x)| x.iter().map(|(g, _)| g.clone())).collect();
    gens.extend(five_sum(c)?.iter().map(|(g, _)| g.clone()));
    gens.sort();
    gens.dedup();
    for g in gens {
        pool.push((format!("inversion2({}, {})", g.a, g.b), inversion2(&g.a, &g.b)?));
    }
    Ok(pool)
}

/// Certifies the projected five-term sum of `c` on its normal frame.
pub fn certify_five_point<S: Scalar>(c: &Configuration<S>) -> Result<(bool, usize, Vec<(String, String)>)> {
    let frame = pgl_normalize(c)?.config;
    let target = five_sum(&frame)?;
    let invariant = residual_size(&target, &five_sum(c)?)? == 0;
    let pool = five_point_pool(&frame)?;
    let mut sums: Vec<&FormalSum<Tb2<S>>> = vec![&target];
    sums.extend(pool.iter().map(|(_, x)| x));
    let mut vs = Tb2::linearize(&sums)?;
    let tv = vs.remove(0);
    match rational_memberships(&vs, &[tv]).remove(0) {
        Membership::Member { certificate } => {
            let strs = certificate_strings(&certificate);
            let used = pool
                .iter()
                .zip(strs)
                .zip(&certificate)
                .filter(|(_, c)| **c != Rational::from_integer(0.into()))
                .map(|(((name, _), s), _)| (name.clone(), s))
                .collect();
            Ok((invariant, 0, used))
        }
        Membership::NonMember { residual_terms } => Ok((false, residual_terms.max(1), Vec::new())),
    }
}

fn symbolic_five() -> Result<Configuration<RatFunc>> {
    let v = symbols()?;
    let k = |n: i64| RatFunc::from_i64(n);
    let p = |xs: [RatFunc; 3], es: [RatFunc; 3]| {
        xs.into_iter().zip(es).map(|(x, e)| TruncPoly::dual(x, e)).collect::<Vec<_>>()
    };
    Configuration::new(vec![
        p([k(1), k(0), k(0)], [k(0), v[4].clone(), k(0)]),
        p([k(0), k(1), k(0)], [k(0), k(0), v[5].clone()]),
        p([k(0), k(0), k(1)], [v[6].clone(), k(0), k(0)]),
        p([k(1), k(1), k(1)], [k(0), k(0), k(0)]),
        p([v[0].clone(), v[1].clone(), k(1)], [v[7].clone(), v[2].clone(), k(0)]),
    ])
}

pub(super) fn projected_five_term(ctx: &Ctx) -> Result<Outcome> {
    let mut out = Outcome::default();
    if ctx.mode == Mode::Symbolic {
        let c = symbolic_five()?;
        let r = residual_size(&del_eps_w2(&five_sum(&c)?)?, &TensorWedge::zero())?;
        out.push(Check::new("∂_ε image", r == 0, format!("8 symbols, residual {}", r)), r);
        let (inv, res, cert) = certify_five_point(&c)?;
        out.push(
            Check::new(
                "certified",
                inv && res == 0,
                format!("{} relations in the certificate, residual {}", cert.len(), res),
            ),
            res,
        );
        out.certificate = Some(json!(cert));
        return Ok(out);
    }
    let rows = ctx.par_trials(ctx.trials, |t| {
        let f = |c: &Configuration<Rational>| -> Result<usize> {
            residual_size(&del_eps_w2(&five_sum(c)?)?, &TensorWedge::zero())
        };
        let (c, dr) = draw_with(&mut ctx.rng(0, t), 5, 3, 2, f)?;
        let (inv, res, cert) = certify_five_point(&c)?;
        Ok((dr, usize::from(!inv) + res, cert))
    })?;
    let d: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let m: Vec<usize> = rows.iter().map(|r| r.1).collect();
    out.push(Check::residuals("∂_ε image", &d), d.iter().sum());
    out.push(Check::residuals("certified on the normal frame", &m), m.iter().sum());
    out.certificate = rows.first().map(|r| json!({ "trial": 0, "relations": r.2 }));
    Ok(out)
}

fn one2_residual<S: Scalar>(c: &Configuration<S>) -> Result<(usize, usize)> {
    components(&del_eps_w2(&extend(&project_d_prime(c)?, tau2_1)?)?)
}

pub(super) fn one_composition(ctx: &Ctx) -> Result<Outcome> {
    let rows = if ctx.mode == Mode::Symbolic {
        lifted_trials(ctx, 5, 3, one2_residual, one2_residual)?
    } else {
        ctx.par_trials(ctx.trials, |t| {
            Ok(draw_with(&mut ctx.rng(0, t), 5, 3, 2, one2_residual)?.1)
        })?
    };
    let mut out = Outcome::default();
    push_components(&mut out, "∂_ε ∘ τ²₁ ∘ d′ = 0", &rows);
    Ok(out)
}
