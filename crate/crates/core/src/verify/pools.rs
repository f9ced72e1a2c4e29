//! Span membership in `T𝔅₂ ⊗ F^× ⊕ F ⊗ 𝔅₂` modulo relations.
//!
//! The group is graded by base atom on the tensor side and by ℚ-coordinate
//! on the field side, and a relation `R ⊗ p` or `x ⊗ R′` lives in a single
//! slice. Membership is therefore decided one slice at a time against the
//! same relation pool.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use num_traits::Zero;
use serde_json::Value;

use crate::chains::linear::{Linear, MidKey, SparseVec};
use crate::chains::relations::{b2_inversion, b2_two_term, inversion2, two_term};
use crate::chains::modular::rational_memberships;
use crate::chains::span::{certificate_strings, Membership};
use crate::chains::{FormalSum, Mid, Tb2, B2};
use crate::error::Result;
use crate::scalars::{Mono, Rational, Scalar};

/// A relation of the pool: its name and parameters as strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PoolEntry {
    pub relation: String,
    pub params: Vec<String>,
}

/// Relations of `T𝔅₂` and `𝔅₂`, deduplicated by label.
#[derive(Clone, Debug, Default)]
pub struct MidPool<S: Scalar> {
    pub tb2: Vec<(PoolEntry, FormalSum<Tb2<S>>)>,
    pub b2: Vec<(PoolEntry, FormalSum<B2<S>>)>,
    seen: BTreeSet<PoolEntry>,
}

fn entry<S: Scalar>(relation: &str, params: &[&S]) -> PoolEntry {
    PoolEntry {
        relation: relation.to_string(),
        params: params.iter().map(|p| p.to_string()).collect(),
    }
}

impl<S: Scalar> MidPool<S> {
    pub fn new() -> Self {
        MidPool {
            tb2: Vec::new(),
            b2: Vec::new(),
            seen: BTreeSet::new(),
        }
    }

    pub fn push_tb2(&mut self, e: PoolEntry, x: FormalSum<Tb2<S>>) {
        if !x.is_zero() && self.seen.insert(e.clone()) {
            self.tb2.push((e, x));
        }
    }

    pub fn push_b2(&mut self, e: PoolEntry, x: FormalSum<B2<S>>) {
        if !x.is_zero() && self.seen.insert(e.clone()) {
            self.b2.push((e, x));
        }
    }

    /// Adds the two-term and inversion relations at every generator that
    /// occurs in the pool or in `extra`.
    pub fn close(&mut self, extra: &FormalSum<Mid<S>>) -> Result<()> {
        let mut gens: BTreeSet<Tb2<S>> = BTreeSet::new();
        let mut classical: BTreeSet<S> = BTreeSet::new();
        for (_, x) in &self.tb2 {
            gens.extend(x.iter().map(|(g, _)| g.clone()));
        }
        for (_, x) in &self.b2 {
            classical.extend(x.iter().map(|(g, _)| g.a.clone()));
        }
        for (g, _) in extra.iter() {
            let (t, f) = g.split();
            if let Some((gen, _)) = t {
                gens.insert(gen);
            }
            if let Some((_, y)) = f {
                classical.insert(y.a);
            }
        }
        for g in &gens {
            self.push_tb2(entry("two_term", &[&g.a, &g.b]), two_term(&g.a, &g.b)?);
            self.push_tb2(entry("inversion2", &[&g.a, &g.b]), inversion2(&g.a, &g.b)?);
            classical.insert(g.a.clone());
        }
        for a in &classical {
            self.push_b2(entry("b2_two_term", &[a]), b2_two_term(a)?);
            self.push_b2(entry("b2_inversion", &[a]), b2_inversion(a)?);
        }
        Ok(())
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.tb2.len(), self.b2.len())
    }
}

pub(super) fn label<S: Scalar>(relation: &str, params: &[&S]) -> PoolEntry {
    entry(relation, params)
}

/// One certificate term: `coeff · (relation ⊗ slot)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertEntry {
    pub relation: PoolEntry,
    pub slot: String,
    pub coeff: String,
}

/// The result of a slice-wise membership query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidCertificate {
    pub member: bool,
    /// Coordinates of the target left outside the span, over all slices.
    pub residual_terms: usize,
    pub entries: Vec<CertEntry>,
    /// Whether the entries re-multiply to the target's normal form.
    pub verified: bool,
}

impl MidCertificate {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("certificates serialize")
    }
}

/// Dense indices for keys, so the solver never compares field elements.
struct Interner<K> {
    index: HashMap<K, usize>,
}

impl<K> Default for Interner<K> {
    fn default() -> Self {
        Interner {
            index: HashMap::new(),
        }
    }
}

impl<K: Hash + Eq + Clone> Interner<K> {
    fn vector(&mut self, v: &SparseVec<K>) -> SparseVec<usize> {
        v.iter()
            .map(|(k, q)| {
                let n = self.index.len();
                (*self.index.entry(k.clone()).or_insert(n), q.clone())
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slot<A> {
    T(A),
    F(Mono),
}

fn slot_name<A: std::fmt::Display>(s: &Slot<A>) -> String {
    match s {
        Slot::T(a) => format!("⊗ {}", a),
        Slot::F(m) if m.is_one() => "1 ⊗".to_string(),
        Slot::F(m) => format!("{:?} ⊗", m),
    }
}

/// Decides whether `target` is a ℚ-combination of `R ⊗ p` (`R` a `T𝔅₂`
/// relation, `p` a base atom) and `m ⊗ R′` (`R′` a `𝔅₂` relation, `m` a
/// ℚ-coordinate of `F`).
pub fn certify_mid<S: Scalar>(target: &FormalSum<Mid<S>>, pool: &MidPool<S>) -> Result<MidCertificate> {
    let tv = Mid::linearize(&[target])?.remove(0);
    let tsums: Vec<&FormalSum<Tb2<S>>> = pool.tb2.iter().map(|(_, x)| x).collect();
    let bsums: Vec<&FormalSum<B2<S>>> = pool.b2.iter().map(|(_, x)| x).collect();
    let tvecs = Tb2::linearize(&tsums)?;
    let bvecs = B2::linearize(&bsums)?;
    let mut tkeys = Interner::default();
    let mut bkeys = Interner::default();
    let tint: Vec<SparseVec<usize>> = tvecs.iter().map(|v| tkeys.vector(v)).collect();
    let bint: Vec<SparseVec<usize>> = bvecs.iter().map(|v| bkeys.vector(v)).collect();
    let mut tslices: BTreeMap<S::Atom, SparseVec<Tb2<S>>> = BTreeMap::new();
    let mut fslices: BTreeMap<Mono, SparseVec<B2<S>>> = BTreeMap::new();
    for (k, q) in &tv {
        match k {
            MidKey::T(g, p) => {
                tslices.entry(p.clone()).or_default().insert(g.clone(), q.clone());
            }
            MidKey::F(g, m) => {
                fslices.entry(*m).or_default().insert(g.clone(), q.clone());
            }
        }
    }
    let tkeyed: Vec<SparseVec<usize>> = tslices.values().map(|v| tkeys.vector(v)).collect();
    let fkeyed: Vec<SparseVec<usize>> = fslices.values().map(|v| bkeys.vector(v)).collect();
    let tres = rational_memberships(&tint, &tkeyed);
    let fres = rational_memberships(&bint, &fkeyed);
    let zero = Rational::from_integer(0.into());
    let mut member = true;
    let mut residual = 0;
    let mut entries = Vec::new();
    let mut rebuilt: SparseVec<MidKey<S>> = SparseVec::new();
    let mut add = |k: MidKey<S>, q: Rational| {
        let e = rebuilt.entry(k).or_insert_with(|| zero.clone());
        *e += q;
    };
    let mut take = |m: &Membership| match m {
        Membership::Member { certificate } => certificate
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect(),
        Membership::NonMember { residual_terms } => {
            member = false;
            residual += residual_terms;
            Vec::new()
        }
    };
    for ((p, _), m) in tslices.iter().zip(&tres) {
        for (j, c) in take(m) {
            entries.push(CertEntry {
                relation: pool.tb2[j].0.clone(),
                slot: slot_name::<S::Atom>(&Slot::T(p.clone())),
                coeff: coeff_string(&c),
            });
            for (g, q) in &tvecs[j] {
                add(MidKey::T(g.clone(), p.clone()), &c * q);
            }
        }
    }
    for ((mono, _), m) in fslices.iter().zip(&fres) {
        for (j, c) in take(m) {
            entries.push(CertEntry {
                relation: pool.b2[j].0.clone(),
                slot: slot_name::<S::Atom>(&Slot::F(*mono)),
                coeff: coeff_string(&c),
            });
            for (g, q) in &bvecs[j] {
                add(MidKey::F(g.clone(), *mono), &c * q);
            }
        }
    }
    rebuilt.retain(|_, q| !q.is_zero());
    let verified = member && rebuilt == tv;
    if !member {
        entries.clear();
    }
    Ok(MidCertificate {
        member,
        residual_terms: residual,
        entries,
        verified,
    })
}

fn coeff_string(c: &Rational) -> String {
    certificate_strings(std::slice::from_ref(c)).remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::{int, rat};

    #[test]
    fn relation_tensor_an_atom_is_certified() {
        let mut pool = MidPool::new();
        let r = two_term(&int(3), &int(2)).unwrap();
        pool.push_tb2(label::<Rational>("two_term", &[&int(3), &int(2)]), r.clone());
        let mut target = FormalSum::zero();
        for (g, c) in r.iter() {
            target.add_term(Mid::tensor(g.clone(), int(12)).unwrap(), c.clone());
        }
        let cert = certify_mid(&target, &pool).unwrap();
        assert!(cert.member && cert.verified);
        assert_eq!(cert.entries.len(), 2);
        let lone = FormalSum::single(Mid::tensor(Tb2::new(int(3), int(2)).unwrap(), int(2)).unwrap());
        let miss = certify_mid(&lone, &pool).unwrap();
        assert!(!miss.member);
        assert_eq!(miss.residual_terms, 1);
    }

    #[test]
    fn scalar_slice_uses_classical_relations() {
        let mut pool = MidPool::new();
        let x = FormalSum::single(Mid::scalar(rat(5, 2), B2::new(int(3)).unwrap()))
            .add(&FormalSum::single(Mid::scalar(rat(5, 2), B2::new(int(-2)).unwrap())));
        pool.close(&x).unwrap();
        let cert = certify_mid(&x, &pool).unwrap();
        assert!(cert.member && cert.verified);
    }
}
