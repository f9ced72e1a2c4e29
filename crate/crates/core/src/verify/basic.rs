//! Determinant identities and ratio expansions.

use super::{Check, Ctx, Mode, Outcome};
use crate::configs::{det_plain, Configuration};
use crate::epsring::TruncPoly;
use crate::error::Result;
use crate::random::{draw_with, generic_config};
use crate::ratios::{
    cross_ratio_via, one_minus_cross_ratio_y, projected_cross_ratio_u, triple_ratio,
    triple_ratio_factored, triple_ratio_via, Route,
};
use crate::scalars::{RatFunc, Rational, Scalar};

/// Number of coefficients where `a` and `b` differ.
pub(super) fn poly_residual<S: Scalar>(a: &TruncPoly<S>, b: &TruncPoly<S>) -> usize {
    if a.order() != b.order() {
        return a.order().max(b.order());
    }
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .filter(|(x, y)| x != y)
        .count()
}

fn siegel_residual<S: Scalar>(c: &Configuration<S>) -> Result<usize> {
    let d = |i: usize, j: usize| c.det(&[i, j]);
    let lhs = d(0, 1)?.trunc_mul(&d(2, 3)?)?;
    let rhs = &d(0, 2)?.trunc_mul(&d(1, 3)?)? - &d(0, 3)?.trunc_mul(&d(1, 2)?)?;
    Ok(poly_residual(&lhs, &rhs))
}

/// The ε¹ layer, from plain determinants of the layers.
fn eps_layer_residual<S: Scalar>(c: &Configuration<S>) -> usize {
    let p = c.points();
    let layer = |i: usize, k: usize| -> Vec<S> { p[i].iter().map(|x| x.coeffs()[k].clone()).collect() };
    let d = |i: usize, j: usize| det_plain(&[layer(i, 0), layer(j, 0)]);
    let e = |i: usize, j: usize| {
        det_plain(&[layer(i, 1), layer(j, 0)]) + &det_plain(&[layer(i, 0), layer(j, 1)])
    };
    let lhs = d(0, 1) * &e(2, 3) + &(d(2, 3) * &e(0, 1));
    let rhs = (d(0, 2) * &e(1, 3) + &(d(1, 3) * &e(0, 2)))
        - &(d(0, 3) * &e(1, 2) + &(d(1, 2) * &e(0, 3)));
    usize::from(lhs != rhs)
}

/// Four points in the plane over dual numbers with 8 independent symbols.
pub(super) fn symbolic_plane_quadruple() -> Result<Configuration<RatFunc>> {
    let v = symbols()?;
    let pt = |i: usize| -> Result<Vec<TruncPoly<RatFunc>>> {
        let x = v[i].clone();
        let y = v[4 + i].clone();
        let ex = v[4 + (i + 1) % 4].clone();
        let ey = v[(i + 2) % 4].clone();
        Ok(vec![TruncPoly::dual(x, ex), TruncPoly::dual(y, ey)])
    };
    Configuration::new((0..4).map(pt).collect::<Result<_>>()?)
}

/// `c` with the first coordinate of the last point moved by `a` and the
/// ε-layer replaced by one primed symbol per point, at coordinate `i mod dim` of
/// point `i`. The ε-ratios are then ℚ-independent, so `∧ⁿF` components that
/// vanish over ℚ become visible.
pub(super) fn lift_symbolic(c: &Configuration<Rational>) -> Result<Configuration<RatFunc>> {
    let v = symbols()?;
    let (last, dim) = (c.len() - 1, c.ambient_dim());
    let points = c
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.iter()
                .enumerate()
                .map(|(j, x)| {
                    let mut base = RatFunc::from_rational(x.coeffs()[0].clone());
                    if i == last && j == 0 {
                        base = base + &v[0];
                    }
                    let e = if j == i % dim { v[4 + i % 4].clone() } else { RatFunc::from_i64(0) };
                    TruncPoly::dual(base, e)
                })
                .collect()
        })
        .collect();
    Configuration::new(points)
}

/// Symbolic trials: each draws a configuration on which `rational` is
/// defined, lifts it with [`lift_symbolic`] and evaluates `symbolic`.
pub(super) fn lifted_trials<T: Send, U>(
    ctx: &Ctx,
    n: usize,
    dim: usize,
    rational: fn(&Configuration<Rational>) -> Result<U>,
    symbolic: fn(&Configuration<RatFunc>) -> Result<T>,
) -> Result<Vec<T>> {
    ctx.par_trials(ctx.trials, |t| {
        let (c, _) = draw_with(&mut ctx.rng(0, t), n, dim, 2, rational)?;
        symbolic(&lift_symbolic(&c)?)
    })
}

/// The shared symbolic alphabet; at most eight variables per check.
pub(super) fn symbols() -> Result<Vec<RatFunc>> {
    ["a", "b", "c", "d", "a'", "b'", "c'", "d'"]
        .iter()
        .map(|n| RatFunc::named(n))
        .collect()
}

pub(super) fn siegel(ctx: &Ctx) -> Result<Outcome> {
    let mut out = Outcome::default();
    match ctx.mode {
        Mode::Symbolic => {
            let c = symbolic_plane_quadruple()?;
            let r = siegel_residual(&c)?;
            out.push(Check::new("siegel", r == 0, format!("8 symbols, ν = 2, residual {}", r)), r);
            let r = eps_layer_residual(&c);
            out.push(Check::new("eps-layer", r == 0, format!("residual {}", r)), r);
        }
        Mode::Random => {
            let rs = ctx.par_trials(ctx.trials, |t| {
                let c = generic_config(&mut ctx.rng(0, t), 4, 2, ctx.nu, |_| true)?;
                let layer = if ctx.nu >= 2 { eps_layer_residual(&c) } else { 0 };
                Ok((siegel_residual(&c)?, layer))
            })?;
            let s: Vec<usize> = rs.iter().map(|r| r.0).collect();
            let l: Vec<usize> = rs.iter().map(|r| r.1).collect();
            out.push(Check::residuals("siegel", &s), s.iter().sum());
            if ctx.nu >= 2 {
                out.push(Check::residuals("eps-layer", &l), l.iter().sum());
            }
        }
    }
    Ok(out)
}

/// `(a, a′, a″, …)` on the frame `(1,0), (0,1), (1,1), (1/x, 1)` with
/// `x = a + a′ε + a″ε² + …`.
pub(super) fn symbolic_frame(nu: usize) -> Result<(Configuration<RatFunc>, Vec<RatFunc>)> {
    let v = symbols()?;
    let coeffs: Vec<RatFunc> = (0..nu).map(|k| if k == 0 { v[0].clone() } else { v[3 + k].clone() }).collect();
    let x = TruncPoly::new(coeffs.clone())?;
    let k = |n: i64| TruncPoly::constant(RatFunc::from_i64(n), nu);
    let c = Configuration::new(vec![
        vec![k(1), k(0)],
        vec![k(0), k(1)],
        vec![k(1), k(1)],
        vec![x.trunc_inv()?, k(1)],
    ])?;
    Ok((c, coeffs))
}

pub(super) fn ratio_formulas(ctx: &Ctx) -> Result<Outcome> {
    let mut out = Outcome::default();
    if ctx.mode == Mode::Symbolic {
        for nu in 2..=3 {
            let (c, want) = symbolic_frame(nu)?;
            let want = TruncPoly::new(want)?;
            for route in [Route::ClosedForm, Route::Recurrence, Route::Division] {
                let r = poly_residual(&cross_ratio_via(&c, route)?, &want);
                out.push(
                    Check::new(
                        &format!("frame-{:?}-nu{}", route, nu).to_lowercase(),
                        r == 0,
                        format!("standard frame gives the parameter expansion, residual {}", r),
                    ),
                    r,
                );
            }
        }
        return Ok(out);
    }
    let nu = ctx.nu;
    let cr = ctx.par_trials(ctx.trials, |t| {
        let c = generic_config(&mut ctx.rng(0, t), 4, 2, nu, |_| true)?;
        let oracle = cross_ratio_via(&c, Route::Division)?;
        let closed = if nu <= 3 {
            poly_residual(&cross_ratio_via(&c, Route::ClosedForm)?, &oracle)
        } else {
            0
        };
        let rec = poly_residual(&cross_ratio_via(&c, Route::Recurrence)?, &oracle);
        let om = if nu == 2 {
            let one = TruncPoly::one(2);
            poly_residual(&one_minus_cross_ratio_y(&c)?, &(&one - &oracle))
        } else {
            0
        };
        Ok([closed, rec, om])
    })?;
    let col = |k: usize| cr.iter().map(|r| r[k]).collect::<Vec<_>>();
    if nu <= 3 {
        out.push(Check::residuals("cross-ratio closed form", &col(0)), col(0).iter().sum());
    }
    out.push(Check::residuals("cross-ratio recurrence", &col(1)), col(1).iter().sum());
    if nu == 2 {
        out.push(Check::residuals("one minus cross-ratio", &col(2)), col(2).iter().sum());
        let pr = ctx.par_trials(ctx.trials, |t| {
            let c = generic_config(&mut ctx.rng(1, t), 5, 3, 2, |_| true)?;
            let oracle = cross_ratio_via(&c.project_from(0), Route::Division)?;
            Ok(poly_residual(&projected_cross_ratio_u(&c)?, &oracle))
        })?;
        out.push(Check::residuals("projected cross-ratio", &pr), pr.iter().sum());
    }
    if nu <= 3 {
        let tr = ctx.par_trials(ctx.trials, |t| {
            let (c, r) = draw_with(&mut ctx.rng(2, t), 6, 3, nu, triple_ratio)?;
            let oracle = triple_ratio_via(&c, Route::Division)?;
            let cyc = triple_ratio(&c.permuted(&[1, 2, 0, 4, 5, 3]))?;
            Ok([
                poly_residual(&r, &oracle),
                poly_residual(&cyc, &r),
                poly_residual(&triple_ratio_factored(&c)?, &r),
            ])
        })?;
        let col = |k: usize| tr.iter().map(|r| r[k]).collect::<Vec<_>>();
        for (k, name) in ["triple ratio closed form", "triple ratio cycle", "triple ratio factored"]
            .iter()
            .enumerate()
        {
            out.push(Check::residuals(name, &col(k)), col(k).iter().sum());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::point_from_layers;
    use crate::scalars::rational::int;

    #[test]
    fn siegel_on_a_small_example() {
        let p = |x: i64, y: i64| point_from_layers(&[vec![int(x), int(y)]]).unwrap();
        let c: Configuration<Rational> =
            Configuration::new(vec![p(1, 0), p(0, 1), p(1, 1), p(1, 2)]).unwrap();
        let d = |i, j| c.det(&[i, j]).unwrap().value().clone();
        assert_eq!(d(0, 1) * &d(2, 3), int(1));
        assert_eq!(d(0, 2) * &d(1, 3), int(-1));
        assert_eq!(d(0, 3) * &d(1, 2), int(-2));
        assert_eq!(siegel_residual(&c).unwrap(), 0);
    }

    #[test]
    fn symbolic_frame_recovers_parameters() {
        let (c, want) = symbolic_frame(3).unwrap();
        let r = cross_ratio_via(&c, Route::ClosedForm).unwrap();
        assert_eq!(r.coeffs(), &want[..]);
    }
}
