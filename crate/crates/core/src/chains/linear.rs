//! Normal forms: every element of a target group maps to a sparse ℚ-vector,
//! and two elements are equal in the group iff their vectors agree.
//!
//! Tensor slots in `F^×` are expanded over a jointly refined coprime base, so
//! vectors of several elements are comparable only when built in one call.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_traits::Zero;

use super::gens::{Mid, Tb2, Tb3, Tensor, Wedge, B2};
use super::sum::{DirectSum, FormalSum};
use super::span::SpanSolver;
use crate::configs::{sort_sign, Configuration};
use crate::error::{Error, Result};
use crate::scalars::{Atom, Mono, Rational, Scalar};

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn add_into<K: Ord>(v: &mut SparseVec<K>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match v.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Generators whose formal sums have a vector normal form.
pub trait Linear: Ord + Clone {
    type Key: Ord + Clone + Debug + Send + Sync;

    fn linearize(sums: &[&FormalSum<Self>]) -> Result<Vec<SparseVec<Self::Key>>>;
}

macro_rules! free_generator {
    ($t:ident) => {
        impl<S: Scalar> Linear for $t<S> {
            type Key = $t<S>;

            fn linearize(sums: &[&FormalSum<Self>]) -> Result<Vec<SparseVec<Self::Key>>> {
                Ok(sums
                    .iter()
                    .map(|s| s.iter().map(|(g, c)| (g.clone(), c.clone())).collect())
                    .collect())
            }
        }
    };
}

free_generator!(B2);
free_generator!(Configuration);

/// `⟨a;0] = [a] − [a]` is zero, so those generators carry no coordinate.
macro_rules! tangent_generator {
    ($t:ident) => {
        impl<S: Scalar> Linear for $t<S> {
            type Key = $t<S>;

            fn linearize(sums: &[&FormalSum<Self>]) -> Result<Vec<SparseVec<Self::Key>>> {
                Ok(sums
                    .iter()
                    .map(|s| {
                        s.iter()
                            .filter(|(g, _)| !g.b.is_zero())
                            .map(|(g, c)| (g.clone(), c.clone()))
                            .collect()
                    })
                    .collect())
            }
        }
    };
}

tangent_generator!(Tb2);
tangent_generator!(Tb3);

/// Exponent maps of nonzero scalars over one pairwise-coprime base; signs
/// are dropped since ℚ-coefficients kill torsion.
pub fn unit_exponents<S: Scalar>(units: &[S]) -> Result<Vec<BTreeMap<S::Atom, i64>>> {
    let mut index: HashMap<&S, usize> = HashMap::new();
    let mut distinct: Vec<&S> = Vec::new();
    for u in units {
        if !index.contains_key(u) {
            index.insert(u, distinct.len());
            distinct.push(u);
        }
    }
    let facts: Vec<BTreeMap<S::Atom, i64>> = distinct
        .iter()
        .map(|u| u.factor().map(|f| f.exps))
        .collect::<Result<_>>()?;
    let mut atoms: Vec<S::Atom> = facts.iter().flat_map(|f| f.keys().cloned()).collect();
    atoms.sort();
    atoms.dedup();
    let refined = S::Atom::refine(&atoms);
    let table: HashMap<&S::Atom, &Vec<(S::Atom, i64)>> = atoms.iter().zip(&refined).collect();
    let per_distinct: Vec<BTreeMap<S::Atom, i64>> = facts
        .iter()
        .map(|f| {
            let mut out: BTreeMap<S::Atom, i64> = BTreeMap::new();
            for (a, e) in f {
                for (b, k) in table[a] {
                    *out.entry(b.clone()).or_insert(0) += e * k;
                }
            }
            out.retain(|_, e| *e != 0);
            out
        })
        .collect();
    Ok(units
        .iter()
        .map(|u| per_distinct[index[u]].clone())
        .collect())
}

/// Expands `u₁ ∧ … ∧ u_k` with given exponent maps into sorted base monomials.
fn wedge_expand<A: Ord + Clone>(exps: &[&BTreeMap<A, i64>]) -> Vec<(Vec<A>, i64)> {
    let mut acc: BTreeMap<Vec<A>, i64> = BTreeMap::new();
    let mut partial: Vec<(Vec<A>, i64)> = vec![(Vec::new(), 1)];
    for e in exps {
        let mut next = Vec::new();
        for (bases, c) in &partial {
            for (b, k) in e.iter() {
                if bases.contains(b) {
                    continue;
                }
                let mut nb = bases.clone();
                nb.push(b.clone());
                next.push((nb, c * k));
            }
        }
        partial = next;
    }
    for (bases, c) in partial {
        let mut idx: Vec<usize> = (0..bases.len()).collect();
        idx.sort_by(|&i, &j| bases[i].cmp(&bases[j]));
        let sign = sort_sign(&mut idx.clone()) as i64;
        let sorted: Vec<A> = idx.iter().map(|&i| bases[i].clone()).collect();
        *acc.entry(sorted).or_insert(0) += sign * c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Finishes an expansion whose values are still field elements: rewrites
/// every value in joint ℚ-coordinates.
fn finish_scalar_values<K: Ord + Clone, S: Scalar>(
    vals: Vec<BTreeMap<K, S>>,
) -> Vec<SparseVec<(K, Mono)>> {
    let flat: Vec<S> = vals.iter().flat_map(|m| m.values().cloned()).collect();
    let mut coords = S::qlinear_coords(&flat).into_iter();
    vals.into_iter()
        .map(|m| {
            let mut v = SparseVec::new();
            for (k, _) in m {
                for (mono, q) in coords.next().expect("one coordinate map per value") {
                    add_into(&mut v, (k.clone(), mono), q);
                }
            }
            v
        })
        .collect()
}

impl<S: Scalar> Linear for Tensor<S> {
    type Key = (Vec<S::Atom>, Mono);

    fn linearize(sums: &[&FormalSum<Self>]) -> Result<Vec<SparseVec<Self::Key>>> {
        let mut weight = None;
        let mut units = Vec::new();
        for s in sums {
            for (t, _) in s.iter() {
                if *weight.get_or_insert(t.weight()) != t.weight() {
                    return Err(Error::Invalid("tensor weights differ".into()));
                }
                units.extend(t.units.iter().cloned());
            }
        }
        let exps = unit_exponents(&units)?;
        let table: HashMap<&S, &BTreeMap<S::Atom, i64>> = units.iter().zip(&exps).collect();
        let vals: Vec<BTreeMap<Vec<S::Atom>, S>> = sums
            .iter()
            .map(|s| {
                let mut m: BTreeMap<Vec<S::Atom>, S> = BTreeMap::new();
                for (t, c) in s.iter() {
                    if t.x.is_zero() {
                        continue;
                    }
                    let es: Vec<&BTreeMap<S::Atom, i64>> =
                        t.units.iter().map(|u| table[u]).collect();
                    for (bases, k) in wedge_expand(&es) {
                        let f = S::from_rational(c * Rational::from_integer(k.into()));
                        let add = t.x.clone() * &f;
                        let e = m.entry(bases).or_insert_with(S::zero);
                        *e = e.clone() + &add;
                    }
                }
                m.retain(|_, v| !v.is_zero());
                m
            })
            .collect();
        Ok(finish_scalar_values(vals))
    }
}

/// Coordinates of every slot in a basis of their joint ℚ-span, chosen
/// greedily among the distinct slots in order of first appearance.
fn slot_coordinates<S: Scalar>(slots: &[S]) -> Vec<BTreeMap<usize, Rational>> {
    let mut index: HashMap<&S, usize> = HashMap::new();
    let mut distinct: Vec<S> = Vec::new();
    for x in slots {
        if !index.contains_key(x) {
            index.insert(x, distinct.len());
            distinct.push(x.clone());
        }
    }
    let coords: Vec<SparseVec<Mono>> = S::qlinear_coords(&distinct)
        .into_iter()
        .map(|m| m.into_iter().filter(|(_, q)| !q.is_zero()).collect())
        .collect();
    let solver = SpanSolver::new(&coords);
    let local: Vec<BTreeMap<usize, Rational>> = coords
        .iter()
        .map(|v| {
            solver
                .solve(v)
                .expect("a slot lies in the span of all slots")
                .into_iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .collect()
        })
        .collect();
    slots.iter().map(|x| local[index[x]].clone()).collect()
}

impl<S: Scalar> Linear for Wedge<S> {
    type Key = Vec<usize>;

    fn linearize(sums: &[&FormalSum<Self>]) -> Result<Vec<SparseVec<Self::Key>>> {
        let slots: Vec<S> = sums
            .iter()
            .flat_map(|s| s.iter().flat_map(|(w, _)| w.0.iter().cloned()))
            .collect();
        let mut coords = slot_coordinates(&slots).into_iter();
        Ok(sums
            .iter()
            .map(|s| {
                let mut v = SparseVec::new();
                for (w, c) in s.iter() {
                    let cs: Vec<BTreeMap<usize, Rational>> =
                        w.0.iter().map(|_| coords.next().expect("slot")).collect();
                    let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), c.clone())];
                    for m in &cs {
                        let mut next = Vec::new();
                        for (ms, q) in &partial {
                            for (&b, r) in m {
                                if ms.contains(&b) {
                                    continue;
                                }
                                let mut nm = ms.clone();
                                nm.push(b);
                                next.push((nm, q * r));
                            }
                        }
                        partial = next;
                    }
                    for (ms, q) in partial {
                        let mut idx: Vec<usize> = (0..ms.len()).collect();
                        idx.sort_by(|&i, &j| ms[i].cmp(&ms[j]));
                        let sign = sort_sign(&mut idx.clone());
                        let sorted: Vec<usize> = idx.iter().map(|&i| ms[i]).collect();
                        add_into(&mut v, sorted, if sign < 0 { -q } else { q });
                    }
                }
                v
            })
            .collect())
    }
}

/// Keys of `T𝔅₂ ⊗ F^× ⊕ F ⊗ 𝔅₂`: a `T𝔅₂` generator against a base atom, or
/// a `𝔅₂` generator against a ℚ-coordinate of `F`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum MidKey<S: Scalar> {
    T(Tb2<S>, S::Atom),
    F(B2<S>, Mono),
}

impl<S: Scalar> Linear for Mid<S> {
    type Key = MidKey<S>;

    fn linearize(sums: &[&FormalSum<Self>]) -> Result<Vec<SparseVec<Self::Key>>> {
        let units: Vec<S> = sums
            .iter()
            .flat_map(|s| s.iter().filter_map(|(g, _)| g.split().0.map(|(_, c)| c)))
            .collect();
        let exps = unit_exponents(&units)?;
        let table: HashMap<&S, &BTreeMap<S::Atom, i64>> = units.iter().zip(&exps).collect();
        let mut tensor_parts = Vec::new();
        let mut vals = Vec::new();
        for s in sums {
            let mut tv: SparseVec<MidKey<S>> = SparseVec::new();
            let mut fv: BTreeMap<B2<S>, S> = BTreeMap::new();
            for (g, c) in s.iter() {
                let (t, f) = g.split();
                if let Some((gen, u)) = t.filter(|(g, _)| !g.b.is_zero()) {
                    for (p, k) in table[&u] {
                        add_into(
                            &mut tv,
                            MidKey::T(gen.clone(), p.clone()),
                            c * Rational::from_integer((*k).into()),
                        );
                    }
                }
                if let Some((x, gen)) = f {
                    let add = x * &S::from_rational(c.clone());
                    let e = fv.entry(gen).or_insert_with(S::zero);
                    *e = e.clone() + &add;
                }
            }
            fv.retain(|_, v| !v.is_zero());
            tensor_parts.push(tv);
            vals.push(fv);
        }
        Ok(finish_scalar_values(vals)
            .into_iter()
            .zip(tensor_parts)
            .map(|(fv, mut tv)| {
                for ((gen, mono), q) in fv {
                    add_into(&mut tv, MidKey::F(gen, mono), q);
                }
                tv
            })
            .collect())
    }
}

/// Key of a direct summand.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum PairKey<K1, K2> {
    First(K1),
    Second(K2),
}

/// Elements with a vector normal form.
pub trait Element: Clone {
    type Key: Ord + Clone + Debug + Send + Sync;

    fn vectorize(xs: &[&Self]) -> Result<Vec<SparseVec<Self::Key>>>;
}

impl<G: Linear> Element for FormalSum<G> {
    type Key = G::Key;

    fn vectorize(xs: &[&Self]) -> Result<Vec<SparseVec<Self::Key>>> {
        G::linearize(xs)
    }
}

impl<A: Linear, B: Linear> Element for DirectSum<A, B> {
    type Key = PairKey<A::Key, B::Key>;

    fn vectorize(xs: &[&Self]) -> Result<Vec<SparseVec<Self::Key>>> {
        let firsts: Vec<&FormalSum<A>> = xs.iter().map(|x| &x.first).collect();
        let seconds: Vec<&FormalSum<B>> = xs.iter().map(|x| &x.second).collect();
        Ok(A::linearize(&firsts)?
            .into_iter()
            .zip(B::linearize(&seconds)?)
            .map(|(f, s)| {
                f.into_iter()
                    .map(|(k, q)| (PairKey::First(k), q))
                    .chain(s.into_iter().map(|(k, q)| (PairKey::Second(k), q)))
                    .collect()
            })
            .collect())
    }
}

/// Whether `x` is zero in its group.
pub fn is_zero_nf<E: Element>(x: &E) -> Result<bool> {
    Ok(E::vectorize(&[x])?[0].is_empty())
}

/// Number of nonzero coordinates of `x − y` in the joint normal form.
pub fn residual_size<E: Element>(x: &E, y: &E) -> Result<usize> {
    let v = E::vectorize(&[x, y])?;
    let mut d = v[0].clone();
    for (k, q) in &v[1] {
        add_into(&mut d, k.clone(), -q.clone());
    }
    Ok(d.len())
}

pub fn nf_equal<E: Element>(x: &E, y: &E) -> Result<bool> {
    Ok(residual_size(x, y)? == 0)
}

/// Canonical `F ⊗ ∧^k F^×` sum `Σ x_P ⊗ (p₁ ∧ … ∧ p_k)` over base atoms
/// `p₁ < … < p_k`, with the field parts merged.
pub fn normalize_tensor<S: Scalar>(x: &FormalSum<Tensor<S>>) -> Result<FormalSum<Tensor<S>>> {
    let units: Vec<S> = x.iter().flat_map(|(t, _)| t.units.iter().cloned()).collect();
    let exps = unit_exponents(&units)?;
    let table: HashMap<&S, &BTreeMap<S::Atom, i64>> = units.iter().zip(&exps).collect();
    let mut m: BTreeMap<Vec<S::Atom>, S> = BTreeMap::new();
    for (t, c) in x.iter() {
        let es: Vec<&BTreeMap<S::Atom, i64>> = t.units.iter().map(|u| table[u]).collect();
        for (bases, k) in wedge_expand(&es) {
            let f = S::from_rational(c * Rational::from_integer(k.into()));
            let e = m.entry(bases).or_insert_with(S::zero);
            *e = e.clone() + &(t.x.clone() * &f);
        }
    }
    let mut out = FormalSum::zero();
    for (bases, v) in m {
        if v.is_zero() {
            continue;
        }
        let units = bases.iter().map(S::atom_value).collect();
        out.add_term(Tensor { x: v, units }, Rational::from_integer(1.into()));
    }
    Ok(out)
}

/// `normalize_tensor` specialised to `F ⊗ F^×`.
pub fn normalize_f_tensor_fx<S: Scalar>(x: &FormalSum<Tensor<S>>) -> Result<FormalSum<Tensor<S>>> {
    normalize_tensor(x)
}

/// `normalize_tensor` specialised to `F ⊗ ∧²F^×`.
pub fn normalize_f_tensor_wedge2fx<S: Scalar>(
    x: &FormalSum<Tensor<S>>,
) -> Result<FormalSum<Tensor<S>>> {
    normalize_tensor(x)
}

/// Whether a sum in `∧^k F` vanishes.
pub fn wedge_zero_test<S: Scalar>(x: &FormalSum<Wedge<S>>) -> bool {
    Wedge::linearize(&[x]).map(|v| v[0].is_empty()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, rat};
    use crate::scalars::RatFunc;

    fn t(x: Rational, us: &[Rational]) -> Tensor<Rational> {
        Tensor::new(x, us.to_vec()).unwrap()
    }

    #[test]
    fn f_tensor_fx_examples() {
        let one = FormalSum::single(t(int(5), &[int(1)]));
        assert!(normalize_f_tensor_fx(&one).unwrap().is_zero());
        let n = normalize_f_tensor_fx(&FormalSum::single(t(int(3), &[int(4)]))).unwrap();
        assert_eq!(n, FormalSum::single(t(int(6), &[int(2)])));
        let m = FormalSum::single(t(rat(7, 3), &[int(-1)]));
        assert!(is_zero_nf(&m).unwrap());
    }

    #[test]
    fn f_tensor_wedge_examples() {
        let bb = FormalSum::single(t(int(2), &[int(5), int(5)]));
        assert!(is_zero_nf(&bb).unwrap());
        let flip = FormalSum::single(t(int(2), &[int(2), int(3)]))
            .add(&FormalSum::single(t(int(2), &[int(3), int(2)])));
        assert!(is_zero_nf(&flip).unwrap());
        let n = normalize_f_tensor_wedge2fx(&FormalSum::single(t(int(5), &[int(4), int(3)])))
            .unwrap();
        assert_eq!(n, FormalSum::single(t(int(10), &[int(2), int(3)])));
    }

    #[test]
    fn wedge_examples() {
        let a = RatFunc::parse("a").unwrap();
        let oma = RatFunc::parse("1-a").unwrap();
        let aa = FormalSum::single(Wedge(vec![a.clone(), a.clone()]));
        assert!(wedge_zero_test(&aa));
        let x = FormalSum::term(Wedge(vec![a.clone(), oma.clone()]), int(2))
            .add(&FormalSum::term(Wedge(vec![oma.clone(), a.clone()]), int(2)));
        assert!(wedge_zero_test(&x));
        let y = FormalSum::single(Wedge(vec![a, oma]));
        assert!(!wedge_zero_test(&y));
    }

    #[test]
    fn symbolic_bilinearity() {
        let x = RatFunc::parse("a+b").unwrap();
        let u = RatFunc::parse("a*(1-b)").unwrap();
        let v = RatFunc::parse("(a+b)/a").unwrap();
        let s = FormalSum::single(Tensor::new(x.clone(), vec![u.clone() * &v]).unwrap())
            .sub(&FormalSum::single(Tensor::new(x.clone(), vec![u]).unwrap()))
            .sub(&FormalSum::single(Tensor::new(x, vec![v]).unwrap()));
        assert!(is_zero_nf(&s).unwrap());
    }

    #[test]
    fn mid_bundle_splits() {
        let g = Tb2::new(int(2), int(3)).unwrap();
        let bundle = FormalSum::single(Mid::bundle(g.clone(), int(5), int(7)).unwrap());
        let parts = FormalSum::single(Mid::tensor(g, int(5)).unwrap())
            .add(&FormalSum::single(Mid::scalar(int(7), B2::new(int(2)).unwrap())));
        assert!(nf_equal(&bundle, &parts).unwrap());
    }
}
