//! Configurations of points in affine space over `F[ε]_ν`: determinants,
//! genericity, the boundary map `d`, the projection `d′`, and normal frames.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::chains::FormalSum;
use crate::epsring::TruncPoly;
use crate::error::{Error, Result};
use crate::scalars::rational::int;
use crate::scalars::{Rational, Scalar};

/// A vector of `n` coordinates in `F[ε]_ν`.
pub type Point<S> = Vec<TruncPoly<S>>;

/// Builds a point from its ε-layers: `layers[k]` is the coefficient vector
/// of `ε^k`.
pub fn point_from_layers<S: Scalar>(layers: &[Vec<S>]) -> Result<Point<S>> {
    let nu = layers.len();
    if nu == 0 {
        return Err(Error::Invalid("a point needs at least one layer".into()));
    }
    let n = layers[0].len();
    if layers.iter().any(|l| l.len() != n) {
        return Err(Error::Dimension("layers of unequal length".into()));
    }
    (0..n)
        .map(|i| TruncPoly::new(layers.iter().map(|l| l[i].clone()).collect()))
        .collect()
}

/// The ε-layers of a point.
pub fn point_layers<S: Scalar>(p: &Point<S>) -> Vec<Vec<S>> {
    let nu = p.first().map(|c| c.order()).unwrap_or(1);
    (0..nu)
        .map(|k| p.iter().map(|c| c.coeffs()[k].clone()).collect())
        .collect()
}

/// Determinant of the matrix whose columns are `cols`, over `F[ε]_ν`.
///
/// Expansion along rows with memoized column subsets; no division.
pub fn det_eps<S: Scalar>(cols: &[&Point<S>]) -> Result<TruncPoly<S>> {
    let n = cols.len();
    if n == 0 {
        return Err(Error::Dimension("empty determinant".into()));
    }
    if cols.iter().any(|c| c.len() != n) {
        return Err(Error::Dimension(format!(
            "{} vectors do not all have dimension {}",
            n, n
        )));
    }
    let nu = cols[0][0].order();
    if cols.iter().flat_map(|c| c.iter()).any(|x| x.order() != nu) {
        return Err(Error::OrderMismatch(nu, 0));
    }
    if n > 16 {
        return Err(Error::Unsupported("dimension above 16".into()));
    }
    // minors[mask]: determinant of rows 0..|mask| restricted to columns in mask
    let mut minors: HashMap<u32, TruncPoly<S>> = HashMap::new();
    minors.insert(0, TruncPoly::one(nu));
    let mut layer: Vec<u32> = vec![0];
    for row in 0..n {
        let mut next: HashMap<u32, TruncPoly<S>> = HashMap::new();
        for &mask in &layer {
            let base = minors[&mask].clone();
            if base.is_zero() {
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                // sign: number of chosen columns after `col`
                let after = (mask >> (col + 1)).count_ones();
                let entry = &cols[col][row];
                if entry.is_zero() {
                    next.entry(mask | (1 << col))
                        .or_insert_with(|| TruncPoly::zero(nu));
                    continue;
                }
                let mut t = entry.trunc_mul(&base)?;
                if after % 2 == 1 {
                    t = -&t;
                }
                let slot = next
                    .entry(mask | (1 << col))
                    .or_insert_with(|| TruncPoly::zero(nu));
                *slot = &*slot + &t;
            }
        }
        layer = next.keys().copied().collect();
        layer.sort_unstable();
        minors = next;
    }
    Ok(minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| TruncPoly::zero(nu)))
}

/// Plain determinant of the ε⁰-parts.
pub fn det_plain<S: Scalar>(cols: &[Vec<S>]) -> S {
    let n = cols.len();
    // Bareiss-free Laplace on small sizes
    if n == 1 {
        return cols[0][0].clone();
    }
    let mut acc = S::zero();
    for (j, col) in cols.iter().enumerate() {
        let minor: Vec<Vec<S>> = cols
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, c)| c[1..].to_vec())
            .collect();
        let t = col[0].clone() * &det_plain(&minor);
        acc = if j % 2 == 0 { acc + &t } else { acc - &t };
    }
    acc
}

/// A configuration of points, possibly projected from a list of centers.
///
/// Every determinant taken in it prepends the centers: for a projected
/// configuration `(c | p₁,…,p_k)` in `A^{n−1}`, `Δ(p_i,…) = Δ(c, p_i, …)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration<S> {
    centers: Vec<Point<S>>,
    points: Vec<Point<S>>,
}

pub type ConfigSum<S> = FormalSum<Configuration<S>>;

impl<S: Scalar> Configuration<S> {
    pub fn new(points: Vec<Point<S>>) -> Result<Self> {
        Self::projected(Vec::new(), points)
    }

    pub fn projected(centers: Vec<Point<S>>, points: Vec<Point<S>>) -> Result<Self> {
        let all = centers.iter().chain(points.iter());
        let mut dim = None;
        let mut nu = None;
        for p in all {
            if p.is_empty() {
                return Err(Error::Dimension("zero-dimensional point".into()));
            }
            if *dim.get_or_insert(p.len()) != p.len() {
                return Err(Error::Dimension("points of different dimension".into()));
            }
            for c in p {
                if *nu.get_or_insert(c.order()) != c.order() {
                    return Err(Error::OrderMismatch(nu.unwrap(), c.order()));
                }
            }
            if p.iter().all(|c| c.value().is_zero()) {
                return Err(Error::Degenerate("a point has zero ε⁰-part".into()));
            }
        }
        if let Some(d) = dim {
            if centers.len() >= d {
                return Err(Error::Dimension("too many projection centers".into()));
            }
        }
        Ok(Configuration { centers, points })
    }

    /// Builds from ε-layer data: `points[i][k]` is the ε^k layer of point i.
    pub fn from_layers(points: &[Vec<Vec<S>>]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|l| point_from_layers(l))
                .collect::<Result<_>>()?,
        )
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn centers(&self) -> &[Point<S>] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.centers
            .first()
            .or(self.points.first())
            .map(|p| p.len())
            .unwrap_or(0)
    }

    /// Dimension of the (projected) space the points live in.
    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.centers.len()
    }

    pub fn order(&self) -> usize {
        self.points
            .first()
            .or(self.centers.first())
            .map(|p| p[0].order())
            .unwrap_or(1)
    }

    /// `Δ(centers…, p_{idx₀}, …)`; `idx.len()` must equal `dim()`.
    pub fn det(&self, idx: &[usize]) -> Result<TruncPoly<S>> {
        if idx.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "need {} points for a determinant, got {}",
                self.dim(),
                idx.len()
            )));
        }
        let mut cols: Vec<&Point<S>> = self.centers.iter().collect();
        for &i in idx {
            cols.push(self.points.get(i).ok_or(Error::OutOfRange {
                index: i,
                order: self.points.len(),
            })?);
        }
        det_eps(&cols)
    }

    /// True iff every maximal minor of the ε⁰-parts is nonzero.
    pub fn generic_check(&self) -> bool {
        let k = self.dim();
        if self.points.len() < k {
            return false;
        }
        subsets(self.points.len(), k)
            .iter()
            .all(|s| self.det(s).map(|d| !d.value().is_zero()).unwrap_or(false))
    }

    pub fn require_generic(&self) -> Result<()> {
        if self.generic_check() {
            Ok(())
        } else {
            Err(Error::Degenerate(format!(
                "some maximal minor of {} points in dimension {} vanishes",
                self.points.len(),
                self.dim()
            )))
        }
    }

    /// Permutes points: slot `k` of the result holds point `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Configuration {
            centers: self.centers.clone(),
            points: perm.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn omit(&self, i: usize) -> Self {
        Configuration {
            centers: self.centers.clone(),
            points: self
                .points
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect(),
        }
    }

    /// `(p_i | p₀,…,p̂_i,…)`.
    pub fn project_from(&self, i: usize) -> Self {
        let mut centers = self.centers.clone();
        centers.push(self.points[i].clone());
        Configuration {
            centers,
            points: self.omit(i).points,
        }
    }

    /// The ε⁰-parts as a configuration of order 1.
    pub fn classical(&self) -> Self {
        let strip = |p: &Point<S>| p.iter().map(|c| c.truncate(1)).collect();
        Configuration {
            centers: self.centers.iter().map(strip).collect(),
            points: self.points.iter().map(strip).collect(),
        }
    }

    /// Applies a matrix over `F[ε]_ν` (given by rows) to every point and
    /// center.
    pub fn transformed(&self, m: &[Vec<TruncPoly<S>>]) -> Result<Self> {
        let app = |p: &Point<S>| mat_vec(m, p);
        Ok(Configuration {
            centers: self.centers.iter().map(app).collect::<Result<_>>()?,
            points: self.points.iter().map(app).collect::<Result<_>>()?,
        })
    }

    /// Multiplies point `i` by the unit `u`.
    pub fn rescaled(&self, i: usize, u: &TruncPoly<S>) -> Result<Self> {
        let mut c = self.clone();
        c.points[i] = c.points[i]
            .iter()
            .map(|x| x.trunc_mul(u))
            .collect::<Result<_>>()?;
        Ok(c)
    }
}

pub fn mat_vec<S: Scalar>(m: &[Vec<TruncPoly<S>>], p: &Point<S>) -> Result<Point<S>> {
    m.iter()
        .map(|row| {
            if row.len() != p.len() {
                return Err(Error::Dimension("matrix and vector sizes differ".into()));
            }
            let mut acc = TruncPoly::zero(p[0].order());
            for (a, x) in row.iter().zip(p) {
                acc = &acc + &a.trunc_mul(x)?;
            }
            Ok(acc)
        })
        .collect()
}

/// All increasing `k`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `d(l₀,…,l_m) = Σ (−1)^i (l₀,…,l̂_i,…,l_m)`.
pub fn boundary_d<S: Scalar>(c: &Configuration<S>) -> Result<ConfigSum<S>> {
    if c.len() < 2 {
        return Err(Error::Invalid(
            "the boundary needs at least two points".into(),
        ));
    }
    Ok(FormalSum::from_terms((0..c.len()).map(|i| {
        (c.omit(i), int(if i % 2 == 0 { 1 } else { -1 }))
    })))
}

/// `d′(l₀,…,l_m) = Σ (−1)^i (l_i | l₀,…,l̂_i,…,l_m)`.
pub fn project_d_prime<S: Scalar>(c: &Configuration<S>) -> Result<ConfigSum<S>> {
    if c.dim() < 2 || c.len() < c.dim() {
        return Err(Error::Invalid(
            "projection needs dimension ≥ 2 and at least as many points".into(),
        ));
    }
    c.require_generic()?;
    Ok(FormalSum::from_terms((0..c.len()).map(|i| {
        (c.project_from(i), int(if i % 2 == 0 { 1 } else { -1 }))
    })))
}

/// Adjugate-based inverse of a square matrix (given by rows) over `F[ε]_ν`.
pub fn mat_inverse<S: Scalar>(m: &[Vec<TruncPoly<S>>]) -> Result<Vec<Vec<TruncPoly<S>>>> {
    let n = m.len();
    let cols: Vec<Point<S>> = (0..n)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect();
    let refs: Vec<&Point<S>> = cols.iter().collect();
    let det = det_eps(&refs)?;
    let det_inv = det
        .trunc_inv()
        .map_err(|_| Error::Degenerate("singular matrix".into()))?;
    let nu = det.order();
    let mut inv = vec![vec![TruncPoly::zero(nu); n]; n];
    for i in 0..n {
        for j in 0..n {
            // inv[i][j] = (−1)^{i+j} M_{ji} / det, M_{ji}: delete row j, column i
            let minor_cols: Vec<Point<S>> = (0..n)
                .filter(|&c| c != i)
                .map(|c| {
                    (0..n)
                        .filter(|&r| r != j)
                        .map(|r| m[r][c].clone())
                        .collect()
                })
                .collect();
            let minor = if n == 1 {
                TruncPoly::one(nu)
            } else {
                det_eps(&minor_cols.iter().collect::<Vec<_>>())?
            };
            let mut v = minor.trunc_mul(&det_inv)?;
            if (i + j) % 2 == 1 {
                v = -&v;
            }
            inv[i][j] = v;
        }
    }
    Ok(inv)
}

/// Output of [`pgl_normalize`].
#[derive(Clone)]
pub struct Normalized<S> {
    pub config: Configuration<S>,
    /// Rows of the matrix carrying the input lines to the output lines.
    pub transform: Vec<Vec<TruncPoly<S>>>,
}

/// Moves `n+2` generic points of `P^n` (n = 1, 2) to the standard frame
/// `e₁,…,e_n, e₀+…, (x*, …, 1)`, representatives rescaled accordingly.
pub fn pgl_normalize<S: Scalar>(c: &Configuration<S>) -> Result<Normalized<S>> {
    if !c.centers().is_empty() {
        return Err(Error::Unsupported(
            "normalizing a projected configuration".into(),
        ));
    }
    let n = c.dim();
    if !(n == 2 || n == 3) || c.len() != n + 2 {
        return Err(Error::Unsupported(format!(
            "normal frames exist for 4 points in dimension 2 or 5 in dimension 3, got {} in {}",
            c.len(),
            n
        )));
    }
    c.require_generic()?;
    let nu = c.order();
    let pts = c.points();
    // A has columns p_0..p_{n-1}; solve A λ = p_n by Cramer's rule
    let basis: Vec<&Point<S>> = pts[..n].iter().collect();
    let det_a = det_eps(&basis)?;
    let det_inv = det_a.trunc_inv()?;
    let mut lambda = Vec::with_capacity(n);
    for k in 0..n {
        let mut cols = basis.clone();
        cols[k] = &pts[n];
        lambda.push(det_eps(&cols)?.trunc_mul(&det_inv)?);
    }
    // B = A·diag(λ), transform = B⁻¹
    let b: Vec<Vec<TruncPoly<S>>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|k| pts[k][r].trunc_mul(&lambda[k]))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let transform = mat_inverse(&b)?;
    let mut out: Vec<Point<S>> = Vec::with_capacity(n + 2);
    for k in 0..n {
        let mut e = vec![TruncPoly::zero(nu); n];
        e[k] = TruncPoly::one(nu);
        out.push(e);
    }
    out.push(vec![TruncPoly::one(nu); n]);
    let last = mat_vec(&transform, &pts[n + 1])?;
    let scale = last[n - 1]
        .trunc_inv()
        .map_err(|_| Error::Degenerate("last point lies on the line at infinity".into()))?;
    out.push(
        last.iter()
            .map(|x| x.trunc_mul(&scale))
            .collect::<Result<_>>()?,
    );
    Ok(Normalized {
        config: Configuration::new(out)?,
        transform,
    })
}

impl<S: Scalar> fmt::Display for Configuration<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Point<S>| {
            let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(", "))
        };
        write!(f, "(")?;
        if !self.centers.is_empty() {
            let cs: Vec<String> = self.centers.iter().map(show).collect();
            write!(f, "{} | ", cs.join(" "))?;
        }
        let ps: Vec<String> = self.points.iter().map(show).collect();
        write!(f, "{})", ps.join(", "))
    }
}

impl<S: Scalar> fmt::Debug for Normalized<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Normalized({:?}, {:?})", self.config, self.transform)
    }
}

impl<S: Scalar> fmt::Debug for Configuration<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Table of all maximal determinants of a configuration, indexed by sorted
/// index tuples.
#[derive(Clone, Debug)]
pub struct DetTable<S> {
    dim: usize,
    dets: HashMap<Vec<usize>, TruncPoly<S>>,
}

impl<S: Scalar> DetTable<S> {
    pub fn new(c: &Configuration<S>) -> Result<Self> {
        let dim = c.dim();
        let mut dets = HashMap::new();
        for s in subsets(c.len(), dim) {
            let d = c.det(&s)?;
            dets.insert(s, d);
        }
        Ok(DetTable { dim, dets })
    }

    /// `Δ(idx)` for any ordering of distinct indices; zero if repeated.
    pub fn get(&self, idx: &[usize]) -> TruncPoly<S> {
        assert_eq!(idx.len(), self.dim, "determinant arity");
        let mut sorted = idx.to_vec();
        let sign = sort_sign(&mut sorted);
        match sign {
            0 => {
                let nu = self.dets.values().next().map(|d| d.order()).unwrap_or(1);
                TruncPoly::zero(nu)
            }
            1 => self.dets[&sorted].clone(),
            _ => -&self.dets[&sorted],
        }
    }

    /// `(Δ_{ε⁰}, Δ_{ε¹})` of `Δ(idx)`.
    pub fn pair(&self, idx: &[usize]) -> (S, S) {
        let d = self.get(idx);
        let c = d.coeffs();
        (c[0].clone(), c.get(1).cloned().unwrap_or_else(S::zero))
    }
}

/// Sorts in place and returns the permutation sign (0 on a repeated entry).
pub fn sort_sign(v: &mut [usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return 0;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return 0;
    }
    sign
}

/// The ±1 sign as a rational.
pub fn sign_q(i: usize) -> Rational {
    if i % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::rat;
    use crate::scalars::RatFunc;
    use num_traits::Zero;

    fn q(layers: &[&[i64]]) -> Point<Rational> {
        point_from_layers(
            &layers
                .iter()
                .map(|l| l.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn truncation_kills_eps_squared() {
        let l0 = q(&[&[1, 0], &[0, 2]]);
        let l1 = q(&[&[0, 1], &[3, 0]]);
        let d = det_eps(&[&l0, &l1]).unwrap();
        assert_eq!(d.coeffs(), &[int(1), int(0)]);
    }

    #[test]
    fn standard_frame_determinant() {
        let a = RatFunc::named("a").unwrap();
        let ap = RatFunc::named("a'").unwrap();
        let y1: Point<RatFunc> = vec![
            TruncPoly::constant(RatFunc::zero(), 2),
            TruncPoly::constant(RatFunc::one(), 2),
        ];
        let x = TruncPoly::dual(a.inv().unwrap(), -(ap.div(&(a.clone() * &a)).unwrap()));
        let y3: Point<RatFunc> = vec![x, TruncPoly::constant(RatFunc::one(), 2)];
        let d = det_eps(&[&y1, &y3]).unwrap();
        assert_eq!(d.coeffs()[0], -a.inv().unwrap());
        assert_eq!(d.coeffs()[1], ap.div(&(a.clone() * &a)).unwrap());
    }

    #[test]
    fn genericity_examples() {
        let c = Configuration::new(vec![q(&[&[1, 0]]), q(&[&[0, 1]]), q(&[&[1, 1]])]).unwrap();
        assert!(c.generic_check());
        let c = Configuration::new(vec![q(&[&[1, 0]]), q(&[&[2, 0]]), q(&[&[0, 1]])]).unwrap();
        assert!(!c.generic_check());
    }

    #[test]
    fn boundary_signs() {
        let c = Configuration::new((0..5).map(|i| q(&[&[1, i]])).collect()).unwrap();
        let d = boundary_d(&c).unwrap();
        assert_eq!(d.coeff(&c.omit(2)), int(1));
        assert_eq!(d.coeff(&c.omit(3)), int(-1));
        let dd = d.map_linear(|g| boundary_d(g)).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn sort_sign_counts_transpositions() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_sign(&mut v), 1);
        let mut v = vec![1, 0, 2];
        assert_eq!(sort_sign(&mut v), -1);
        let mut v = vec![1, 1, 2];
        assert_eq!(sort_sign(&mut v), 0);
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = vec![
            vec![
                TruncPoly::dual(int(2), int(1)),
                TruncPoly::dual(int(1), int(0)),
            ],
            vec![
                TruncPoly::dual(int(1), int(3)),
                TruncPoly::dual(int(1), rat(1, 2)),
            ],
        ];
        let inv = mat_inverse(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = TruncPoly::zero(2);
                for k in 0..2 {
                    acc = &acc + &(&m[i][k] * &inv[k][j]);
                }
                let want = if i == j {
                    TruncPoly::one(2)
                } else {
                    TruncPoly::zero(2)
                };
                assert_eq!(acc, want);
            }
        }
    }
}
