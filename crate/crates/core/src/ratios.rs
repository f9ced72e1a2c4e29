//! Cross-ratios, projected cross-ratios and triple ratios over `F[ε]_ν`,
//! with their ε-coefficients computed by independent routes.

use crate::configs::{Configuration, DetTable};
use crate::epsring::TruncPoly;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// The ε-expansion `(r_{ε⁰}, …, r_{ε^{ν−1}})` of a ratio.
pub type RatioExpansion<S> = TruncPoly<S>;

/// How a quotient `N/D` of ε-expansions is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Explicit formulas for the first three coefficients.
    ClosedForm,
    /// Solving `Σ_k D_{ε^k} r_{ε^{n−k}} = N_{ε^n}` term by term.
    Recurrence,
    /// `N · D⁻¹` in the truncated ring.
    Division,
}

impl Route {
    pub fn default_for(nu: usize) -> Route {
        if nu <= 3 {
            Route::ClosedForm
        } else {
            Route::Recurrence
        }
    }
}

/// `N/D` in `F[ε]_ν`; `D` must be a unit.
pub fn quotient<S: Scalar>(
    num: &TruncPoly<S>,
    den: &TruncPoly<S>,
    route: Route,
) -> Result<TruncPoly<S>> {
    if num.order() != den.order() {
        return Err(Error::OrderMismatch(num.order(), den.order()));
    }
    if !den.is_unit() {
        return Err(Error::Degenerate("denominator vanishes at ε⁰".into()));
    }
    match route {
        Route::ClosedForm => closed_form(num, den),
        Route::Recurrence => recurrence(num, den),
        Route::Division => num.try_div(den),
    }
}

fn closed_form<S: Scalar>(num: &TruncPoly<S>, den: &TruncPoly<S>) -> Result<TruncPoly<S>> {
    let nu = num.order();
    if nu > 3 {
        return Err(Error::Unsupported(format!(
            "closed forms cover orders up to 3, not {}",
            nu
        )));
    }
    let n = num.coeffs();
    let d = den.coeffs();
    let d0 = d[0].try_inv()?;
    let r0 = n[0].clone() * &d0;
    let mut out = vec![r0.clone()];
    if nu >= 2 {
        // r_ε = N_ε/D₀ − r·D_ε/D₀
        let r1 = (n[1].clone() - &(r0.clone() * &d[1])) * &d0;
        out.push(r1.clone());
        if nu == 3 {
            // r_{ε²} = N_{ε²}/D₀ − r_ε·D_ε/D₀ − r·D_{ε²}/D₀
            let r2 = (n[2].clone() - &(r1 * &d[1]) - &(r0 * &d[2])) * &d0;
            out.push(r2);
        }
    }
    TruncPoly::new(out)
}

fn recurrence<S: Scalar>(num: &TruncPoly<S>, den: &TruncPoly<S>) -> Result<TruncPoly<S>> {
    let d = den.coeffs();
    let d0 = d[0].try_inv()?;
    let mut r: Vec<S> = Vec::with_capacity(num.order());
    for n in 0..num.order() {
        let mut acc = num.coeffs()[n].clone();
        for k in 1..=n {
            if !d[k].is_zero() {
                acc = acc - &(d[k].clone() * &r[n - k]);
            }
        }
        r.push(acc * &d0);
    }
    TruncPoly::new(r)
}

fn product<S: Scalar>(factors: &[TruncPoly<S>]) -> Result<TruncPoly<S>> {
    let mut acc = TruncPoly::one(factors[0].order());
    for f in factors {
        acc = acc.trunc_mul(f)?;
    }
    Ok(acc)
}

fn require_shape<S: Scalar>(c: &Configuration<S>, points: usize, dim: usize) -> Result<()> {
    if c.len() != points || c.dim() != dim {
        return Err(Error::Dimension(format!(
            "expected {} points in dimension {}, got {} in {}",
            points,
            dim,
            c.len(),
            c.dim()
        )));
    }
    Ok(())
}

/// Numerator `Δ03·Δ12` and denominator `Δ02·Δ13` of the cross-ratio.
pub fn cross_ratio_parts<S: Scalar>(c: &Configuration<S>) -> Result<(TruncPoly<S>, TruncPoly<S>)> {
    require_shape(c, 4, 2)?;
    let num = c.det(&[0, 3])?.trunc_mul(&c.det(&[1, 2])?)?;
    let den = c.det(&[0, 2])?.trunc_mul(&c.det(&[1, 3])?)?;
    Ok((num, den))
}

/// `r = Δ03Δ12 / (Δ02Δ13)` for four points in a plane (or a projected plane).
pub fn cross_ratio<S: Scalar>(c: &Configuration<S>) -> Result<RatioExpansion<S>> {
    cross_ratio_via(c, Route::default_for(c.order()))
}

pub fn cross_ratio_via<S: Scalar>(c: &Configuration<S>, route: Route) -> Result<RatioExpansion<S>> {
    let (num, den) = cross_ratio_parts(c)?;
    quotient(&num, &den, route)
}

/// Cross-ratio of points `idx` of a table of 2-dimensional determinants.
pub fn cross_ratio_table<S: Scalar>(t: &DetTable<S>, idx: [usize; 4]) -> Result<RatioExpansion<S>> {
    let [a, b, c, d] = idx;
    let num = t.get(&[a, d]).trunc_mul(&t.get(&[b, c]))?;
    let den = t.get(&[a, c]).trunc_mul(&t.get(&[b, d]))?;
    quotient(&num, &den, Route::default_for(num.order()))
}

/// `1 − r = Δ01Δ23 / (Δ02Δ13)`, computed as a quotient in the ring.
pub fn one_minus_cross_ratio<S: Scalar>(c: &Configuration<S>) -> Result<RatioExpansion<S>> {
    require_shape(c, 4, 2)?;
    let num = c.det(&[0, 1])?.trunc_mul(&c.det(&[2, 3])?)?;
    let den = c.det(&[0, 2])?.trunc_mul(&c.det(&[1, 3])?)?;
    quotient(&num, &den, Route::default_for(c.order()))
}

/// The eight-term numerator `y` of `(1 − r)_ε = y / (Δ02² Δ13²)`, in order 2.
pub fn one_minus_y<S: Scalar>(c: &Configuration<S>) -> Result<S> {
    require_shape(c, 4, 2)?;
    if c.order() != 2 {
        return Err(Error::Unsupported(
            "the y expression is stated for order 2".into(),
        ));
    }
    let p = c.points();
    let layer =
        |i: usize, k: usize| -> Vec<S> { p[i].iter().map(|x| x.coeffs()[k].clone()).collect() };
    let d2 = |u: &[S], v: &[S]| u[0].clone() * &v[1] - &(u[1].clone() * &v[0]);
    let l: Vec<Vec<S>> = (0..4).map(|i| layer(i, 0)).collect();
    let e: Vec<Vec<S>> = (0..4).map(|i| layer(i, 1)).collect();
    let b = |i: usize, j: usize| d2(&l[i], &l[j]);
    let m02_13 = b(0, 2) * &b(1, 3);
    let m01_23 = b(0, 1) * &b(2, 3);
    let y = m02_13.clone() * &b(0, 1) * &d2(&l[2], &e[3])
        + &(m02_13.clone() * &b(0, 1) * &d2(&e[2], &l[3]))
        + &(m02_13.clone() * &b(2, 3) * &d2(&l[0], &e[1]))
        + &(m02_13 * &b(2, 3) * &d2(&e[0], &l[1]))
        - &(m01_23.clone() * &b(0, 2) * &d2(&l[1], &e[3]))
        - &(m01_23.clone() * &b(0, 2) * &d2(&e[1], &l[3]))
        - &(m01_23.clone() * &b(1, 3) * &d2(&l[0], &e[2]))
        - &(m01_23 * &b(1, 3) * &d2(&e[0], &l[2]));
    Ok(y)
}

/// `1 − r` assembled from the displayed formulas: `Δ01Δ23/(Δ02Δ13) + y/(Δ02Δ13)²·ε`.
pub fn one_minus_cross_ratio_y<S: Scalar>(c: &Configuration<S>) -> Result<RatioExpansion<S>> {
    let y = one_minus_y(c)?;
    let d = |i, j| c.det(&[i, j]).map(|x| x.value().clone());
    let den = d(0, 2)? * &d(1, 3)?;
    let den_inv = den.try_inv()?;
    let v0 = d(0, 1)? * &d(2, 3)? * &den_inv;
    Ok(TruncPoly::dual(v0, y * &den_inv * &den_inv))
}

/// `(l₀ | l₁,…,l₄)` with the first point as center.
pub fn projection<S: Scalar>(c: &Configuration<S>) -> Result<Configuration<S>> {
    require_shape(c, 5, 3)?;
    Ok(c.project_from(0))
}

/// `r(l₀|l₁,l₂,l₃,l₄) = Δ014Δ023 / (Δ013Δ024)` for five points in space.
pub fn projected_cross_ratio<S: Scalar>(c: &Configuration<S>) -> Result<RatioExpansion<S>> {
    cross_ratio(&projection(c)?)
}

/// The ε-part of the projected cross-ratio via `u / (Δ013² Δ024²)`, order 2.
pub fn projected_cross_ratio_u<S: Scalar>(c: &Configuration<S>) -> Result<RatioExpansion<S>> {
    require_shape(c, 5, 3)?;
    if c.order() != 2 {
        return Err(Error::Unsupported(
            "the u expression is stated for order 2".into(),
        ));
    }
    let d = |i: [usize; 3]| -> Result<(S, S)> {
        let t = c.det(&i)?;
        Ok((t.coeffs()[0].clone(), t.coeffs()[1].clone()))
    };
    let (d014, e014) = d([0, 1, 4])?;
    let (d023, e023) = d([0, 2, 3])?;
    let (d013, e013) = d([0, 1, 3])?;
    let (d024, e024) = d([0, 2, 4])?;
    let u = -(d014.clone() * &d023 * &(d013.clone() * &e024 + &(d024.clone() * &e013)))
        + &(d013.clone() * &d024 * &(d014.clone() * &e023 + &(d023.clone() * &e014)));
    let den = d013.clone() * &d024;
    let den_inv = den
        .try_inv()
        .map_err(|_| Error::Degenerate("projected denominator vanishes".into()))?;
    let r0 = d014 * &d023 * &den_inv;
    Ok(TruncPoly::dual(r0, u * &den_inv * &den_inv))
}

/// Index triples of the triple-ratio numerator `(013)(124)(205)`.
pub const TRIPLE_NUM: [[usize; 3]; 3] = [[0, 1, 3], [1, 2, 4], [2, 0, 5]];
/// Index triples of the triple-ratio denominator `(014)(125)(203)`.
pub const TRIPLE_DEN: [[usize; 3]; 3] = [[0, 1, 4], [1, 2, 5], [2, 0, 3]];

/// The bare triple ratio `(013)(124)(205) / ((014)(125)(203))` of six
/// points in space, for orders up to 3. No alternation is applied.
pub fn triple_ratio<S: Scalar>(c: &Configuration<S>) -> Result<RatioExpansion<S>> {
    triple_ratio_via(c, Route::ClosedForm)
}

pub fn triple_ratio_via<S: Scalar>(
    c: &Configuration<S>,
    route: Route,
) -> Result<RatioExpansion<S>> {
    require_shape(c, 6, 3)?;
    if c.order() > 3 {
        return Err(Error::Unsupported(format!(
            "triple-ratio coefficients are defined for orders up to 3, not {}",
            c.order()
        )));
    }
    let t = DetTable::new(c)?;
    triple_ratio_table(&t, [0, 1, 2, 3, 4, 5], route)
}

/// Triple ratio of points `idx` of a table of 3-dimensional determinants.
pub fn triple_ratio_table<S: Scalar>(
    t: &DetTable<S>,
    idx: [usize; 6],
    route: Route,
) -> Result<RatioExpansion<S>> {
    let pick = |tr: &[usize; 3]| t.get(&[idx[tr[0]], idx[tr[1]], idx[tr[2]]]);
    let num = product(&TRIPLE_NUM.iter().map(pick).collect::<Vec<_>>())?;
    let den = product(&TRIPLE_DEN.iter().map(pick).collect::<Vec<_>>())?;
    quotient(&num, &den, route)
}

/// The triple ratio as `r(l₂|l₁,l₀,l₅,l₃) / r(l₁|l₀,l₂,l₃,l₄)`.
pub fn triple_ratio_factored<S: Scalar>(c: &Configuration<S>) -> Result<RatioExpansion<S>> {
    require_shape(c, 6, 3)?;
    let a = projected_cross_ratio(&c.permuted(&[2, 1, 0, 5, 3]))?;
    let b = projected_cross_ratio(&c.permuted(&[1, 0, 2, 3, 4]))?;
    a.try_div(&b)
}

/// Whether every coefficient of an expansion is a constant equal to one.
pub fn is_one<S: Scalar>(r: &RatioExpansion<S>) -> bool {
    r.coeffs()[0].is_one() && r.coeffs()[1..].iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{pgl_normalize, point_from_layers, Point};
    use crate::scalars::rational::int;
    use crate::scalars::{RatFunc, Rational};
    use num_traits::{One, Zero};

    fn qp(layers: &[&[i64]]) -> Point<Rational> {
        point_from_layers(
            &layers
                .iter()
                .map(|l| l.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn lemma_frame() -> (Configuration<RatFunc>, RatFunc, RatFunc) {
        let a = RatFunc::named("a").unwrap();
        let ap = RatFunc::named("a'").unwrap();
        let k = |x: i64| TruncPoly::constant(RatFunc::from_i64(x), 2);
        let x = TruncPoly::dual(a.inv().unwrap(), -(ap.div(&(a.clone() * &a)).unwrap()));
        let c = Configuration::new(vec![
            vec![k(1), k(0)],
            vec![k(0), k(1)],
            vec![k(1), k(1)],
            vec![x, k(1)],
        ])
        .unwrap();
        (c, a, ap)
    }

    #[test]
    fn standard_frame_cross_ratio() {
        let (c, a, ap) = lemma_frame();
        for route in [Route::ClosedForm, Route::Recurrence, Route::Division] {
            let r = cross_ratio_via(&c, route).unwrap();
            assert_eq!(r.coeffs(), &[a.clone(), ap.clone()]);
        }
        let om = one_minus_cross_ratio(&c).unwrap();
        assert_eq!(om.coeffs()[0], RatFunc::one() - a.clone());
        assert_eq!(om, one_minus_cross_ratio_y(&c).unwrap());
    }

    #[test]
    fn routes_agree_order_three() {
        let c = Configuration::new(vec![
            qp(&[&[1, 2], &[3, -1], &[0, 5]]),
            qp(&[&[2, 1], &[1, 1], &[-2, 1]]),
            qp(&[&[1, -1], &[0, 4], &[1, 1]]),
            qp(&[&[3, 1], &[2, 0], &[7, -3]]),
        ])
        .unwrap();
        let a = cross_ratio_via(&c, Route::ClosedForm).unwrap();
        assert_eq!(a, cross_ratio_via(&c, Route::Recurrence).unwrap());
        assert_eq!(a, cross_ratio_via(&c, Route::Division).unwrap());
    }

    #[test]
    fn classical_points_have_no_eps_part() {
        let c = Configuration::new(vec![
            qp(&[&[1, 2], &[0, 0]]),
            qp(&[&[2, 1], &[0, 0]]),
            qp(&[&[1, -1], &[0, 0]]),
            qp(&[&[3, 1], &[0, 0]]),
        ])
        .unwrap();
        assert!(cross_ratio(&c).unwrap().coeffs()[1].is_zero());
    }

    #[test]
    fn normalization_preserves_cross_ratio() {
        let c = Configuration::new(vec![
            qp(&[&[2, 1], &[1, 0]]),
            qp(&[&[3, 1], &[0, 2]]),
            qp(&[&[4, 1], &[1, 1]]),
            qp(&[&[5, 1], &[-1, 3]]),
        ])
        .unwrap();
        let n = pgl_normalize(&c).unwrap();
        assert_eq!(cross_ratio(&n.config).unwrap(), cross_ratio(&c).unwrap());
        let (frame, _, _) = lemma_frame();
        let m = pgl_normalize(&frame).unwrap();
        assert_eq!(m.config, frame);
    }

    #[test]
    fn triple_ratio_routes() {
        let pts = [
            [[1, 0, 2], [1, 1, 0]],
            [[0, 1, 1], [2, 0, 1]],
            [[1, 1, 0], [0, 3, 1]],
            [[2, -1, 1], [1, 0, 0]],
            [[1, 3, -2], [0, 1, 5]],
            [[3, 1, 1], [-1, 2, 1]],
        ];
        let c = Configuration::new(pts.iter().map(|p| qp(&[&p[0], &p[1]])).collect()).unwrap();
        let r = triple_ratio(&c).unwrap();
        assert_eq!(r, triple_ratio_via(&c, Route::Division).unwrap());
        assert_eq!(r, triple_ratio_factored(&c).unwrap());
        assert_eq!(r, triple_ratio(&c.permuted(&[1, 2, 0, 4, 5, 3])).unwrap());
        let p = projected_cross_ratio(&c.omit(5)).unwrap();
        assert_eq!(p, projected_cross_ratio_u(&c.omit(5)).unwrap());
    }
}
