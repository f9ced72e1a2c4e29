//! Maps from configurations into the tangential complexes, the tangential
//! differentials, and alternation over permutation groups.

use rayon::prelude::*;

use crate::chains::gens::{one_minus, Mid, Tb2, Tb3, Tensor, Wedge, B2};
use crate::chains::{Combination, DirectSum, FormalSum};
use crate::configs::{sign_q, sort_sign, subsets, ConfigSum, Configuration, DetTable};
use crate::epsring::TruncPoly;
use crate::error::{Error, Result};
use crate::ratios::{quotient, triple_ratio_table, Route};
use crate::scalars::rational::{int, rat};
use crate::scalars::{Rational, Scalar};

/// `F ⊗ ∧^k F^× ⊕ ∧^{k+1} F`.
pub type TensorWedge<S> = DirectSum<Tensor<S>, Wedge<S>>;

/// `T𝔅₂ ⊗ F^× ⊕ F ⊗ 𝔅₂`.
pub type MidSum<S> = FormalSum<Mid<S>>;

fn tensor<S: Scalar>(x: S, units: Vec<S>) -> Result<FormalSum<Tensor<S>>> {
    if x.is_zero() {
        return Ok(FormalSum::zero());
    }
    Ok(FormalSum::single(Tensor::new(x, units)?))
}

fn wedge<S: Scalar>(xs: Vec<S>) -> FormalSum<Wedge<S>> {
    if xs.iter().any(|x| x.is_zero()) {
        return FormalSum::zero();
    }
    FormalSum::single(Wedge(xs))
}

/// `∂_ε⟨a;b]₂ = (b/a ⊗ (1−a) + b/(1−a) ⊗ a) + (b/(1−a) ∧ b/a)`.
pub fn del_eps_w2<S: Scalar>(x: &FormalSum<Tb2<S>>) -> Result<TensorWedge<S>> {
    let mut out = TensorWedge::zero();
    for (g, c) in x.iter() {
        let oma = one_minus(&g.a);
        let ba = g.b.try_div(&g.a)?;
        let bo = g.b.try_div(&oma)?;
        let mut t = tensor(ba.clone(), vec![oma])?;
        t.add_scaled(&tensor(bo.clone(), vec![g.a.clone()])?, &int(1));
        let term = DirectSum::new(t, wedge(vec![bo, ba]));
        out.add_scaled(&term, c);
    }
    Ok(out)
}

/// `⟨a;b]₃ ↦ ⟨a;b]₂ ⊗ a + b/a ⊗ [a]₂`, kept as one bundle.
pub fn del_eps3_gen<S: Scalar>(x: &FormalSum<Tb3<S>>) -> Result<MidSum<S>> {
    let mut out = MidSum::zero();
    for (g, c) in x.iter() {
        let gen = Tb2::new(g.a.clone(), g.b.clone())?;
        let m = Mid::bundle(gen, g.a.clone(), g.b.try_div(&g.a)?)?;
        out.add_term(m, c.clone());
    }
    Ok(out)
}

/// The differential out of `T𝔅₂ ⊗ F^× ⊕ F ⊗ 𝔅₂`:
/// `⟨a;b]₂ ⊗ c ↦ −b/(1−a) ⊗ a∧c − b/a ⊗ (1−a)∧c`,
/// `x ⊗ [y]₂ ↦ x ⊗ (1−y)∧y`, and a bundle adds `b/(1−a) ∧ b/a ∧ x`.
pub fn del_eps_w3_mid<S: Scalar>(x: &MidSum<S>) -> Result<TensorWedge<S>> {
    let mut out = TensorWedge::zero();
    for (g, k) in x.iter() {
        let (t, f) = g.split();
        let mut term = TensorWedge::zero();
        let mut pair = None;
        if let Some((gen, c)) = t {
            let oma = one_minus(&gen.a);
            let bo = gen.b.try_div(&oma)?;
            let ba = gen.b.try_div(&gen.a)?;
            term.first
                .add_scaled(&tensor(bo.clone(), vec![gen.a.clone(), c.clone()])?, &int(-1));
            term.first
                .add_scaled(&tensor(ba.clone(), vec![oma, c])?, &int(-1));
            pair = Some((bo, ba));
        }
        if let Some((xv, y)) = f {
            term.first
                .add_scaled(&tensor(xv.clone(), vec![one_minus(&y.a), y.a])?, &int(1));
            if let (Mid::Bundle { .. }, Some((bo, ba))) = (g, pair) {
                term.second = wedge(vec![bo, ba, xv]);
            }
        }
        out.add_scaled(&term, k);
    }
    Ok(out)
}

/// Extends a map on configurations linearly to formal sums.
pub fn extend<S, E, F>(x: &ConfigSum<S>, f: F) -> Result<E>
where
    S: Scalar,
    E: Combination,
    F: Fn(&Configuration<S>) -> Result<E>,
{
    let mut out = E::zero();
    for (c, k) in x.iter() {
        out.add_scaled(&f(c)?, k);
    }
    Ok(out)
}

fn check_shape<S: Scalar>(c: &Configuration<S>, n: usize, dim: usize) -> Result<()> {
    if c.len() != n || c.dim() != dim {
        return Err(Error::Dimension(format!(
            "expected {} points in dimension {}, got {} in dimension {}",
            n,
            dim,
            c.len(),
            c.dim()
        )));
    }
    if c.order() != 2 {
        return Err(Error::Unsupported(format!(
            "the tangential maps are defined over dual numbers, not order {}",
            c.order()
        )));
    }
    c.require_generic()
}

/// `Δ_ε / Δ` for the determinant of `idx`.
fn eps_ratio<S: Scalar>(t: &DetTable<S>, idx: &[usize]) -> Result<S> {
    let (d, e) = t.pair(idx);
    e.try_div(&d)
}

fn val<S: Scalar>(t: &DetTable<S>, idx: &[usize]) -> S {
    t.pair(idx).0
}

fn omit(n: usize, skip: &[usize]) -> Vec<usize> {
    (0..n).filter(|k| !skip.contains(k)).collect()
}

/// `τ⁽¹⁾ + τ⁽²⁾` on three points in a plane, with `e_ij = Δ(l*_i,l*_j)_ε/Δ(l_i,l_j)`:
/// `e₁₂ ⊗ Δ₀₂/Δ₀₁ − e₀₂ ⊗ Δ₁₂/Δ₁₀ + e₀₁ ⊗ Δ₂₁/Δ₂₀` and
/// `e₀₁∧e₁₂ − e₀₁∧e₀₂ + e₁₂∧e₀₂`.
pub fn tau2_0<S: Scalar>(c: &Configuration<S>) -> Result<TensorWedge<S>> {
    check_shape(c, 3, 2)?;
    let t = DetTable::new(c)?;
    let e = |i: usize, j: usize| eps_ratio(&t, &[i, j]);
    let q = |a: [usize; 2], b: [usize; 2]| val(&t, &a).try_div(&val(&t, &b));
    let (e01, e02, e12) = (e(0, 1)?, e(0, 2)?, e(1, 2)?);
    let mut first = tensor(e12.clone(), vec![q([0, 2], [0, 1])?])?;
    first.add_scaled(&tensor(e02.clone(), vec![q([1, 2], [1, 0])?])?, &int(-1));
    first.add_scaled(&tensor(e01.clone(), vec![q([2, 1], [2, 0])?])?, &int(1));
    let mut second = wedge(vec![e01.clone(), e12.clone()]);
    second.add_scaled(&wedge(vec![e01, e02.clone()]), &int(-1));
    second.add_scaled(&wedge(vec![e12, e02]), &int(1));
    Ok(DirectSum::new(first, second))
}

/// `(r, r_ε)` of the cross-ratio of points `idx` of a plane table.
fn cross_pair<S: Scalar>(t: &DetTable<S>, idx: [usize; 4]) -> Result<(S, S)> {
    let [a, b, c, d] = idx;
    let num = t.get(&[a, d]).trunc_mul(&t.get(&[b, c]))?;
    let den = t.get(&[a, c]).trunc_mul(&t.get(&[b, d]))?;
    let r = quotient(&num, &den, Route::ClosedForm)?;
    Ok((r.coeffs()[0].clone(), r.coeffs()[1].clone()))
}

/// `(r, r_ε)` of `r(p₀|p₁,p₂,p₃,p₄) = (p₀p₁p₄)(p₀p₂p₃)/((p₀p₁p₃)(p₀p₂p₄))`.
fn projected_pair<S: Scalar>(t: &DetTable<S>, p: [usize; 5]) -> Result<(S, S)> {
    let d = |i: usize, j: usize| t.get(&[p[0], p[i], p[j]]);
    let num = d(1, 4).trunc_mul(&d(2, 3))?;
    let den = d(1, 3).trunc_mul(&d(2, 4))?;
    let r = quotient(&num, &den, Route::ClosedForm)?;
    Ok((r.coeffs()[0].clone(), r.coeffs()[1].clone()))
}

/// `⟨r(l₀,…,l₃); r_ε(l*₀,…,l*₃)]₂`.
pub fn tau2_1<S: Scalar>(c: &Configuration<S>) -> Result<FormalSum<Tb2<S>>> {
    check_shape(c, 4, 2)?;
    let t = DetTable::new(c)?;
    let (r, re) = cross_pair(&t, [0, 1, 2, 3])?;
    Ok(FormalSum::single(Tb2::new(r, re)?))
}

/// `τ³₀` on four points in space: with `D_k = Δ(omit k)` and `e_k = D_{k,ε}/D_k`,
/// `Σ_i (−1)^i (e_i ⊗ D_{i+1}/D_{i+2} ∧ D_{i+3}/D_{i+2} + ∧_{j≠i} e_j)`, indices mod 4.
pub fn tau3_0<S: Scalar>(c: &Configuration<S>) -> Result<TensorWedge<S>> {
    check_shape(c, 4, 3)?;
    let t = DetTable::new(c)?;
    let dk = |k: usize| val(&t, &omit(4, &[k % 4]));
    let ek: Vec<S> = (0..4)
        .map(|k| eps_ratio(&t, &omit(4, &[k])))
        .collect::<Result<_>>()?;
    let mut out = TensorWedge::zero();
    for i in 0..4 {
        let u = dk(i + 1).try_div(&dk(i + 2))?;
        let v = dk(i + 3).try_div(&dk(i + 2))?;
        out.first
            .add_scaled(&tensor(ek[i].clone(), vec![u, v])?, &sign_q(i));
    }
    out.second = wedge_part(&ek);
    Ok(out)
}

/// `Σ_i (−1)^i ∧_{j≠i} e_j`.
fn wedge_part<S: Scalar>(ek: &[S]) -> FormalSum<Wedge<S>> {
    let mut w = FormalSum::zero();
    for i in 0..ek.len() {
        let xs = (0..ek.len()).filter(|&j| j != i).map(|j| ek[j].clone());
        w.add_scaled(&wedge(xs.collect()), &sign_q(i));
    }
    w
}

/// `τⁿ₀` on `n+1` points in `Aⁿ`:
/// `Σ_i (−1)^i (e_i ⊗ D_{j₁}/D_{j₂} ∧ … ∧ D_{j_{n−1}}/D_{j_n} + ∧_{j≠i} e_j)`,
/// where `j₁ < … < j_n` are the indices other than `i`.
pub fn tau_n_0<S: Scalar>(c: &Configuration<S>) -> Result<TensorWedge<S>> {
    tau_n_0_with(c, |i, m| omit(m, &[i]))
}

/// `τⁿ₀` with the remaining indices read cyclically, `j_k = i + k mod n+1`.
/// Unlike [`tau_n_0`], `τⁿ₀ ∘ d′` does not vanish for `n = 2, 4`.
pub fn tau_n_0_cyclic<S: Scalar>(c: &Configuration<S>) -> Result<TensorWedge<S>> {
    tau_n_0_with(c, |i, m| (1..m).map(|k| (i + k) % m).collect())
}

fn tau_n_0_with<S: Scalar>(
    c: &Configuration<S>,
    order: impl Fn(usize, usize) -> Vec<usize>,
) -> Result<TensorWedge<S>> {
    let n = c.dim();
    if n < 2 {
        return Err(Error::Dimension("τⁿ₀ needs n ≥ 2".into()));
    }
    check_shape(c, n + 1, n)?;
    let t = DetTable::new(c)?;
    let m = n + 1;
    let dk = |k: usize| val(&t, &omit(m, &[k]));
    let ek: Vec<S> = (0..m)
        .map(|k| eps_ratio(&t, &omit(m, &[k])))
        .collect::<Result<_>>()?;
    let mut out = TensorWedge::zero();
    for i in 0..m {
        let js = order(i, m);
        let units = js
            .windows(2)
            .map(|w| dk(w[0]).try_div(&dk(w[1])))
            .collect::<Result<Vec<S>>>()?;
        out.first
            .add_scaled(&tensor(ek[i].clone(), units)?, &sign_q(i));
    }
    out.second = wedge_part(&ek);
    Ok(out)
}

/// The generator of `τ³₁` at one ordering `p` of five points in space:
/// `⟨r(p₀|p₁p₂p₃p₄); r_ε]₂ ⊗ (p₀p₁p₂) + (p₀p₁p₂)_ε/(p₀p₁p₂) ⊗ [r(p₀|…)]₂`.
fn tau3_1_generator<S: Scalar>(t: &DetTable<S>, p: [usize; 5]) -> Result<Mid<S>> {
    let (r, re) = projected_pair(t, p)?;
    let tri = [p[0], p[1], p[2]];
    Mid::bundle(Tb2::new(r, re)?, val(t, &tri), eps_ratio(t, &tri)?)
}

/// `(1/3) Alt₅` of the generator above. Its `∂_ε`-image is four times that
/// of [`tau3_1`].
pub fn tau3_1_alt<S: Scalar>(c: &Configuration<S>) -> Result<MidSum<S>> {
    check_shape(c, 5, 3)?;
    let t = DetTable::new(c)?;
    let sum = alt_apply(&AltGroup::Symmetric(5), |p| {
        let g = tau3_1_generator(&t, [p[0], p[1], p[2], p[3], p[4]])?;
        Ok(FormalSum::single(g))
    })?;
    Ok(sum.scale(&rat(1, 3)))
}

/// `τ³₁`:
/// `−(1/3) Σ_i (−1)^i (⟨r_i; r_{i,ε}]₂ ⊗ Π_{j≠i} Δ_{ij} + Σ_{j≠i} Δ_{ij,ε}/Δ_{ij} ⊗ [r_i]₂)`,
/// where `r_i = r(l_i|l₀,…,l̂_i,…,l₄)` and `Δ_{ij}` is the determinant of the
/// three points other than `l_i, l_j`.
pub fn tau3_1<S: Scalar>(c: &Configuration<S>) -> Result<MidSum<S>> {
    check_shape(c, 5, 3)?;
    let t = DetTable::new(c)?;
    let mut out = MidSum::zero();
    for i in 0..5 {
        let rest = omit(5, &[i]);
        let (r, re) = projected_pair(&t, [i, rest[0], rest[1], rest[2], rest[3]])?;
        let mut prod = S::one();
        let mut x = S::zero();
        for j in (0..5).filter(|&j| j != i) {
            let tri = omit(5, &[i, j]);
            prod = prod * &val(&t, &tri);
            x = x + &eps_ratio(&t, &tri)?;
        }
        let g = Mid::bundle(Tb2::new(r, re)?, prod, x)?;
        out.add_term(g, -sign_q(i) * rat(1, 3));
    }
    Ok(out)
}

/// `(2/45) Alt₆ ⟨r₃; r_{3,ε}]₃` on six points in space.
pub fn tau3_2<S: Scalar>(c: &Configuration<S>) -> Result<FormalSum<Tb3<S>>> {
    check_shape(c, 6, 3)?;
    let t = DetTable::new(c)?;
    let sum = alt_apply(&AltGroup::Symmetric(6), |p| {
        let idx = [p[0], p[1], p[2], p[3], p[4], p[5]];
        let r = triple_ratio_table(&t, idx, Route::ClosedForm)?;
        let g = Tb3::new(r.coeffs()[0].clone(), r.coeffs()[1].clone())?;
        Ok(FormalSum::single(g))
    })?;
    Ok(sum.scale(&rat(2, 45)))
}

/// A permutation group acting on numbered slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AltGroup {
    /// All permutations of `0..n`.
    Symmetric(usize),
    /// Independent permutations of each block; other slots of `0..n` fixed.
    Product { n: usize, blocks: Vec<Vec<usize>> },
}

/// All permutations of `0..k` with signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i8)>) {
        if prefix.len() == used.len() {
            let sign = sort_sign(&mut prefix.clone());
            out.push((prefix.clone(), sign));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

impl AltGroup {
    pub fn slots(&self) -> usize {
        match self {
            AltGroup::Symmetric(n) => *n,
            AltGroup::Product { n, .. } => *n,
        }
    }

    /// Elements as slot maps (`p[k]` is the point placed in slot `k`) with signs.
    pub fn elements(&self) -> Vec<(Vec<usize>, i8)> {
        match self {
            AltGroup::Symmetric(n) => signed_permutations(*n),
            AltGroup::Product { n, blocks } => {
                let mut acc: Vec<(Vec<usize>, i8)> = vec![((0..*n).collect(), 1)];
                for b in blocks {
                    let perms = signed_permutations(b.len());
                    let mut next = Vec::with_capacity(acc.len() * perms.len());
                    for (p, s) in &acc {
                        for (q, t) in &perms {
                            let mut np = p.clone();
                            for (i, &slot) in b.iter().enumerate() {
                                np[slot] = p[b[q[i]]];
                            }
                            next.push((np, s * t));
                        }
                    }
                    acc = next;
                }
                acc
            }
        }
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }
}

/// `Σ_{σ∈G} sgn(σ) f(σ)` without normalization. Terms are evaluated in
/// parallel and summed exactly, so the result does not depend on scheduling.
pub fn alt_apply<E, F>(group: &AltGroup, f: F) -> Result<E>
where
    E: Combination,
    F: Fn(&[usize]) -> Result<E> + Sync,
{
    let elems = group.elements();
    let parts: Vec<E> = elems
        .par_chunks(24)
        .map(|chunk| {
            let mut acc = E::zero();
            for (p, s) in chunk {
                acc.add_scaled(&f(p)?, &int(*s as i64));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut out = E::zero();
    for p in &parts {
        out.add_scaled(p, &int(1));
    }
    Ok(out)
}

/// `Alt_G` applied to a configuration map: `Σ sgn(σ) f(σ·c)`.
pub fn alt_config<S, E, F>(group: &AltGroup, c: &Configuration<S>, f: F) -> Result<E>
where
    S: Scalar,
    E: Combination,
    F: Fn(&Configuration<S>) -> Result<E> + Sync,
{
    if group.slots() != c.len() {
        return Err(Error::Dimension(format!(
            "group acts on {} slots, configuration has {} points",
            group.slots(),
            c.len()
        )));
    }
    alt_apply(group, |p| f(&c.permuted(p)))
}

/// `Σ_i (−1)^i τ²₁(l_i | …)`: the projected five-term sum of five points in space.
pub fn projected_five_term<S: Scalar>(c: &Configuration<S>) -> Result<FormalSum<Tb2<S>>> {
    check_shape(c, 5, 3)?;
    let t = DetTable::new(c)?;
    let mut out = FormalSum::zero();
    for i in 0..5 {
        let rest = omit(5, &[i]);
        let (r, re) = projected_pair(&t, [i, rest[0], rest[1], rest[2], rest[3]])?;
        out.add_term(Tb2::new(r, re)?, sign_q(i));
    }
    Ok(out)
}

/// `(r, r_ε)` of `r(p₀|p₁,…,p₄)` for five points in space.
pub fn projected_ratio_at<S: Scalar>(
    t: &DetTable<S>,
    p: [usize; 5],
) -> Result<(S, S)> {
    projected_pair(t, p)
}

/// `[r(p₀|p₁,…,p₄)]₂`, the classical part.
pub fn projected_b2<S: Scalar>(t: &DetTable<S>, p: [usize; 5]) -> Result<B2<S>> {
    B2::new(projected_pair(t, p)?.0)
}

/// `x ⊗ [y]₂` terms of a `Mid` sum, flattened to `(x, y)` with coefficients.
pub fn scalar_parts<S: Scalar>(x: &MidSum<S>) -> Vec<(S, B2<S>, Rational)> {
    x.iter()
        .filter_map(|(g, c)| g.split().1.map(|(x, y)| (x, y, c.clone())))
        .collect()
}

/// Every `k`-subset of `0..n`; re-exported for campaign code.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// The unit of `F[ε]₂` scaling every coordinate of a point.
pub fn scale_point<S: Scalar>(c: &Configuration<S>, i: usize, u: (S, S)) -> Result<Configuration<S>> {
    c.rescaled(i, &TruncPoly::dual(u.0, u.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::linear::{is_zero_nf, nf_equal};
    use crate::configs::boundary_d;
    use crate::scalars::RatFunc;

    fn q(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn del_eps_w2_at_two_one() {
        let x = FormalSum::single(Tb2::new(q(2), q(1)).unwrap());
        let d = del_eps_w2(&x).unwrap();
        let want_first = FormalSum::single(Tensor::new(q(-1), vec![q(2)]).unwrap());
        let want = DirectSum::new(want_first, FormalSum::zero());
        assert!(nf_equal(&d, &want).unwrap());
        let zero = FormalSum::single(Tb2::new(q(5), q(0)).unwrap());
        assert!(del_eps_w2(&zero).unwrap().is_zero());
    }

    #[test]
    fn del_eps3_gen_at_two_three() {
        let x = FormalSum::single(Tb3::new(q(2), q(3)).unwrap());
        let d = del_eps3_gen(&x).unwrap();
        let want = FormalSum::single(Mid::tensor(Tb2::new(q(2), q(3)).unwrap(), q(2)).unwrap())
            .add(&FormalSum::single(Mid::scalar(rat(3, 2), B2::new(q(2)).unwrap())));
        assert!(nf_equal(&d, &want).unwrap());
    }

    #[test]
    fn weight_three_complex_symbolic() {
        let a = RatFunc::parse("a").unwrap();
        let b = RatFunc::parse("b").unwrap();
        let x = FormalSum::single(Tb3::new(a, b).unwrap());
        let dd = del_eps_w3_mid(&del_eps3_gen(&x).unwrap()).unwrap();
        assert!(is_zero_nf(&dd).unwrap());
    }

    #[test]
    fn unit_slot_kills_tensor_part() {
        let g = Mid::tensor(Tb2::new(q(3), q(2)).unwrap(), q(1)).unwrap();
        let d = del_eps_w3_mid(&FormalSum::single(g)).unwrap();
        assert!(is_zero_nf(&d).unwrap());
        let s = Mid::scalar(q(5), B2::new(q(3)).unwrap());
        let d = del_eps_w3_mid(&FormalSum::single(s)).unwrap();
        let want = FormalSum::single(Tensor::new(q(5), vec![q(-2), q(3)]).unwrap());
        assert!(nf_equal(&d, &DirectSum::new(want, FormalSum::zero())).unwrap());
    }

    #[test]
    fn alternation_conventions() {
        let g = AltGroup::Symmetric(3);
        assert_eq!(g.order(), 6);
        let sym: FormalSum<Vec<usize>> = alt_apply(&AltGroup::Symmetric(2), |p| {
            let mut v = p.to_vec();
            v.sort();
            Ok(FormalSum::single(v))
        })
        .unwrap();
        assert!(sym.is_zero());
        let prod = AltGroup::Product {
            n: 6,
            blocks: vec![vec![0, 1, 3], vec![2, 4, 5]],
        };
        let els = prod.elements();
        assert_eq!(els.len(), 36);
        for (p, _) in &els {
            assert!([0, 1, 3].contains(&p[0]) && [2, 4, 5].contains(&p[2]));
        }
        let once: FormalSum<Vec<usize>> =
            alt_apply(&g, |p| Ok(FormalSum::single(p.to_vec()))).unwrap();
        let twice: FormalSum<Vec<usize>> = alt_apply(&g, |p| {
            once.map_linear(|v| {
                Ok::<_, Error>(FormalSum::single(p.iter().map(|&i| v[i]).collect::<Vec<_>>()))
            })
        })
        .unwrap();
        assert_eq!(twice, once.scale(&q(6)));
    }

    #[test]
    fn weight_two_square_on_a_frame() {
        let c = Configuration::from_layers(&[
            vec![vec![q(1), q(0)], vec![q(2), q(1)]],
            vec![vec![q(0), q(1)], vec![q(-1), q(3)]],
            vec![vec![q(1), q(1)], vec![q(0), q(5)]],
            vec![vec![q(3), q(2)], vec![q(1), q(-2)]],
        ])
        .unwrap();
        let lhs = extend(&boundary_d(&c).unwrap(), tau2_0).unwrap();
        let rhs = del_eps_w2(&tau2_1(&c).unwrap()).unwrap();
        assert!(nf_equal(&lhs, &rhs).unwrap());
    }
}
