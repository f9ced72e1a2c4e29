//! Weight three: the right square `τ³₀ ∘ d = ∂_ε ∘ τ³₁` and the vanishing of
//! `τⁿ₀ ∘ d′`.
//!
//! Over ℚ the `∧ⁿF` components vanish identically; symbolic runs lift the
//! ε-entries to linear forms in free symbols to exercise them.

use serde_json::json;

use super::basic::{lift_symbolic, lifted_trials, symbols};
use super::{Check, Ctx, Mode, Outcome};
use crate::chains::linear::residual_size;
use crate::chains::FormalSum;
use crate::configs::{boundary_d, project_d_prime, Configuration};
use crate::epsring::TruncPoly;
use crate::error::{Error, Result};
use crate::maps::{
    del_eps_w3_mid, extend, tau3_0, tau3_1, tau3_1_alt, tau_n_0, tau_n_0_cyclic, TensorWedge,
};
use crate::random::draw_with;
use crate::scalars::rational::int;
use crate::scalars::{RatFunc, Rational, Scalar};

/// Residuals of one right-square evaluation, by component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RightResiduals {
    pub tensor: usize,
    pub wedge: usize,
    /// `∧³F` residual after negating the right-hand side.
    pub wedge_negated: usize,
    /// Residual of `∂_ε τ³₁,alt − 4 ∂_ε τ³₁` over both components.
    pub alternation: usize,
}

pub fn right_residuals<S: Scalar>(c: &Configuration<S>) -> Result<RightResiduals> {
    let lhs = extend(&boundary_d(c)?, tau3_0)?;
    let flag = del_eps_w3_mid(&tau3_1(c)?)?;
    let alt = del_eps_w3_mid(&tau3_1_alt(c)?)?;
    Ok(RightResiduals {
        tensor: residual_size(&lhs.first, &flag.first)?,
        wedge: residual_size(&lhs.second, &flag.second)?,
        wedge_negated: residual_size(&lhs.second, &flag.second.scale(&int(-1)))?,
        alternation: residual_size(&alt, &flag.scale(&int(4)))?,
    })
}

/// Five points of space in general position, over dual numbers in the
/// shared symbols.
fn symbolic_space() -> Result<Configuration<RatFunc>> {
    let v = symbols()?;
    let k = |n: i64| RatFunc::from_i64(n);
    let p = |xs: [RatFunc; 3], es: [RatFunc; 3]| {
        xs.into_iter().zip(es).map(|(x, e)| TruncPoly::dual(x, e)).collect::<Vec<_>>()
    };
    Configuration::new(vec![
        p([k(1), k(0), k(0)], [k(0), v[4].clone(), k(0)]),
        p([k(0), k(1), k(0)], [k(0), k(0), v[5].clone()]),
        p([k(0), k(0), k(1)], [v[6].clone(), k(0), k(0)]),
        p([k(1), k(1), k(1)], [v[3].clone(), k(0), k(0)]),
        p([v[0].clone(), v[1].clone(), v[2].clone()], [k(0), v[7].clone(), k(0)]),
    ])
}

pub(super) fn right_square(ctx: &Ctx) -> Result<Outcome> {
    if ctx.nu != 2 {
        return Err(Error::Unsupported("the weight-three maps need ν = 2".into()));
    }
    let rows = if ctx.mode == Mode::Symbolic {
        let mut rows = vec![right_residuals(&symbolic_space()?)?];
        rows.extend(lifted_trials(ctx, 5, 3, right_residuals, right_residuals)?);
        rows
    } else {
        ctx.par_trials(ctx.trials, |t| {
            Ok(draw_with(&mut ctx.rng(0, t), 5, 3, 2, right_residuals)?.1)
        })?
    };
    let col = |f: fn(&RightResiduals) -> usize| rows.iter().map(f).collect::<Vec<_>>();
    let (tensor, wedge, alt) = (col(|r| r.tensor), col(|r| r.wedge), col(|r| r.alternation));
    let mut out = Outcome::default();
    out.push(
        Check::residuals("τ³₀ ∘ d = ∂_ε ∘ τ³₁ in F ⊗ ∧²F^×", &tensor),
        tensor.iter().sum(),
    );
    out.push(Check::residuals("τ³₀ ∘ d = ∂_ε ∘ τ³₁ in ∧³F", &wedge), wedge.iter().sum());
    out.push(
        Check::residuals("alternation form has four times the ∂_ε image", &alt),
        alt.iter().sum(),
    );
    out.certificate = Some(json!({
        "wedge_component_zero_trials": wedge.iter().filter(|&&r| r == 0).count(),
        "wedge_component_negated_zero_trials":
            rows.iter().filter(|r| r.wedge_negated == 0).count(),
        "trials": rows.len(),
    }));
    Ok(out)
}

/// Residuals of `f ∘ d′` in the tensor and the wedge component.
fn zero_residual<S: Scalar>(
    c: &Configuration<S>,
    f: fn(&Configuration<S>) -> Result<TensorWedge<S>>,
) -> Result<(usize, usize)> {
    let x = extend(&project_d_prime(c)?, f)?;
    Ok((
        residual_size(&x.first, &FormalSum::zero())?,
        residual_size(&x.second, &FormalSum::zero())?,
    ))
}

fn push_zero(out: &mut Outcome, name: &str, rows: &[(usize, usize)]) {
    let tensor: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let wedge: Vec<usize> = rows.iter().map(|r| r.1).collect();
    out.push(
        Check::residuals(&format!("{} in F ⊗ ∧F^×", name), &tensor),
        tensor.iter().sum(),
    );
    out.push(Check::residuals(&format!("{} in ∧F", name), &wedge), wedge.iter().sum());
}

fn zero3_residual<S: Scalar>(c: &Configuration<S>) -> Result<(usize, usize)> {
    zero_residual(c, tau3_0)
}

pub(super) fn zero3(ctx: &Ctx) -> Result<Outcome> {
    let rows = if ctx.mode == Mode::Symbolic {
        lifted_trials(ctx, 5, 4, zero3_residual, zero3_residual)?
    } else {
        ctx.par_trials(ctx.trials, |t| {
            Ok(draw_with(&mut ctx.rng(0, t), 5, 4, 2, zero3_residual)?.1)
        })?
    };
    let mut out = Outcome::default();
    push_zero(&mut out, "τ³₀ ∘ d′ = 0", &rows);
    Ok(out)
}

pub(super) fn zeron(ctx: &Ctx) -> Result<Outcome> {
    let n = ctx.n;
    if n < 2 {
        return Err(Error::Invalid("n must be at least 2".into()));
    }
    let rows: Vec<[(usize, usize); 2]> = if ctx.mode == Mode::Symbolic {
        ctx.par_trials(ctx.trials, |t| {
            let f = |c: &Configuration<Rational>| zero_residual(c, tau_n_0);
            let (c, _) = draw_with(&mut ctx.rng(0, t), n + 2, n + 1, 2, f)?;
            let c = lift_symbolic(&c)?;
            Ok([zero_residual(&c, tau_n_0)?, zero_residual(&c, tau_n_0_cyclic)?])
        })?
    } else {
        ctx.par_trials(ctx.trials, |t| {
            let f = |c: &Configuration<Rational>| zero_residual(c, tau_n_0);
            let (c, r) = draw_with(&mut ctx.rng(0, t), n + 2, n + 1, 2, f)?;
            Ok([r, zero_residual(&c, tau_n_0_cyclic)?])
        })?
    };
    let sorted: Vec<(usize, usize)> = rows.iter().map(|r| r[0]).collect();
    let mut out = Outcome::default();
    push_zero(&mut out, &format!("τⁿ₀ ∘ d′ = 0 at n = {}", n), &sorted);
    out.certificate = Some(json!({
        "cyclic_order_zero_trials": rows.iter().filter(|r| r[1] == (0, 0)).count(),
        "trials": rows.len(),
    }));
    Ok(out)
}
