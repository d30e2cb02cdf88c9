//! The surjection category, the functors `M_n(X) = C̃_n(X^{∧-})` and
//! morphisms between them.
//!
//! A morphism `M_p(X) -> M_q(Y)` is determined by its values on the basis
//! elements `e_i = [x_1 ... x_s]`, `x_1 < ... < x_s` in `X_p^×`; every other
//! value is `C_q(h^♯)(T(i))` where `(i, h)` is the support decomposition.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::chains::{boundary_chain, Basis, Chain};
use crate::exactlin::{PrimeField, SparseMatrix, SparseVec};
use crate::simplicial::{SmashPower, Space};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurjError {
    #[error("values {values:?} do not define a surjection onto {s} points")]
    NotSurjective { values: Vec<usize>, s: usize },
    #[error("cannot compose {left} after {right}")]
    Composable { left: String, right: String },
}

/// A surjection `h: {1..t} -> {1..s}`, stored 0-based as `values[k] = h(k+1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Surjection {
    values: Vec<usize>,
    s: usize,
}

impl Surjection {
    pub fn new(values: Vec<usize>, s: usize) -> Result<Self, SurjError> {
        let mut hit = vec![false; s];
        for &v in &values {
            if v >= s {
                return Err(SurjError::NotSurjective { values, s });
            }
            hit[v] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(SurjError::NotSurjective { values, s });
        }
        Ok(Surjection { values, s })
    }

    pub fn identity(s: usize) -> Self {
        Surjection {
            values: (0..s).collect(),
            s,
        }
    }

    /// Codomain size.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Domain size.
    pub fn t(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.len() == self.s && self.values.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Surjection) -> Result<Surjection, SurjError> {
        if other.s != self.t() {
            return Err(SurjError::Composable {
                left: format!("{self}"),
                right: format!("{other}"),
            });
        }
        Ok(Surjection {
            values: other.values.iter().map(|&k| self.values[k]).collect(),
            s: self.s,
        })
    }

    /// Every surjection `{1..t} -> {1..s}` in lexicographic order.
    pub fn all(t: usize, s: usize) -> Vec<Surjection> {
        if t == 0 {
            return if s == 0 {
                vec![Surjection::identity(0)]
            } else {
                Vec::new()
            };
        }
        (0..t)
            .map(|_| 0..s)
            .multi_cartesian_product()
            .filter_map(|values| Surjection::new(values, s).ok())
            .collect()
    }
}

impl std::fmt::Display for Surjection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals = self.values.iter().map(|v| (v + 1).to_string()).join(",");
        write!(f, "[{vals}]->{}", self.s)
    }
}

/// Which linear order on `X_p^×` indexes the basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Order {
    #[default]
    Canonical,
    Reversed,
}

impl Order {
    fn sort<S: Ord>(self, v: &mut [S]) {
        v.sort();
        if self == Order::Reversed {
            v.reverse();
        }
    }
}

/// `I(X, p)`: every nonempty increasing tuple over `X_p^×`, shortest first.
pub fn enumerate_basis<X: Space>(x: &X, p: usize) -> Vec<Vec<X::Simplex>> {
    let elems = x.nonbase_simplices(p);
    (1..=elems.len())
        .flat_map(|s| elems.iter().cloned().combinations(s))
        .collect()
}

/// `(x_1, ..., x_s) = h^♯(e_i)` with `i` the sorted support.
pub fn support_decompose<S: Ord + Clone>(tuple: &[S], order: Order) -> (Vec<S>, Surjection) {
    let mut support: Vec<S> = tuple.to_vec();
    order.sort(&mut support);
    support.dedup();
    let values = tuple
        .iter()
        .map(|x| {
            support
                .iter()
                .position(|y| y == x)
                .expect("support contains every coordinate")
        })
        .collect();
    let s = support.len();
    (support, Surjection { values, s })
}

/// `C(h^♯)` on chains of tuples.
pub fn push_h<S: Ord + Clone>(
    field: &PrimeField,
    h: &Surjection,
    chain: &Chain<Vec<S>>,
) -> Chain<Vec<S>> {
    chain.map_terms(field, chain.degree(), |w| {
        Some(h.values().iter().map(|&k| w[k].clone()).collect())
    })
}

/// Anything that can report the basis values of a morphism `M_p(X) -> M_q(Y)`.
pub trait MorphismValues<XS, YS: Ord> {
    fn source_degree(&self) -> usize;
    fn target_degree(&self) -> usize;
    fn value(&self, i: &[XS]) -> Chain<Vec<YS>>;
}

/// A morphism `M_p(X) -> M_q(Y)` stored by its basis values; absent
/// indices have value zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorMorphism<XS: Ord, YS: Ord> {
    p: usize,
    q: usize,
    values: BTreeMap<Vec<XS>, Chain<Vec<YS>>>,
}

impl<XS: Ord + Clone, YS: Ord + Clone> FunctorMorphism<XS, YS> {
    pub fn zero(p: usize, q: usize) -> Self {
        FunctorMorphism {
            p,
            q,
            values: BTreeMap::new(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Sets `T(e_i)`. `i` must be sorted canonically.
    pub fn set(&mut self, i: Vec<XS>, value: Chain<Vec<YS>>) {
        assert_eq!(value.degree(), self.q, "basis value has the wrong degree");
        if value.is_zero() {
            self.values.remove(&i);
        } else {
            self.values.insert(i, value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<XS>, &Chain<Vec<YS>>)> {
        self.values.iter()
    }
}

impl<XS: Ord + Clone, YS: Ord + Clone> MorphismValues<XS, YS> for FunctorMorphism<XS, YS> {
    fn source_degree(&self) -> usize {
        self.p
    }

    fn target_degree(&self) -> usize {
        self.q
    }

    fn value(&self, i: &[XS]) -> Chain<Vec<YS>> {
        self.values
            .get(i)
            .cloned()
            .unwrap_or_else(|| Chain::zero(self.q))
    }
}

/// The morphism `e_i ↦ [κ_i]` of `M_p(X)`.
pub fn identity_morphism<X: Space>(x: &X, p: usize) -> FunctorMorphism<X::Simplex, X::Simplex> {
    let mut t = FunctorMorphism::zero(p, p);
    let field = PrimeField::default();
    for i in enumerate_basis(x, p) {
        let mut c = Chain::zero(p);
        c.add_term(&field, i.clone(), 1);
        t.set(i, c);
    }
    t
}

/// `^sT([x_1 ... x_s])`: zero on basepoint classes, otherwise
/// `C_q(h^♯)(T(i))` for the support decomposition `(i, h)`.
pub fn evaluate<X: Space, YS: Ord + Clone, T: MorphismValues<X::Simplex, YS>>(
    x: &X,
    field: &PrimeField,
    t: &T,
    tuple: &[X::Simplex],
) -> Chain<Vec<YS>> {
    assert!(
        tuple.iter().all(|c| x.degree(c) == t.source_degree()),
        "evaluation at a tuple of the wrong degree"
    );
    if tuple.iter().any(|c| x.is_basepoint(c)) {
        return Chain::zero(t.target_degree());
    }
    let (i, h) = support_decompose(tuple, Order::Canonical);
    push_h(field, &h, &t.value(&i))
}

/// `T` applied to a chain of `M_p(X)(s)`.
pub fn evaluate_chain<X: Space, YS: Ord + Clone, T: MorphismValues<X::Simplex, YS>>(
    x: &X,
    field: &PrimeField,
    t: &T,
    chain: &Chain<Vec<X::Simplex>>,
) -> Chain<Vec<YS>> {
    let mut out = Chain::zero(t.target_degree());
    for (w, c) in chain.terms() {
        out.add_scaled(field, c, &evaluate(x, field, t, w));
    }
    out
}

/// `∂[κ_i]` in `C̃(X^{∧|i|})`.
fn boundary_of_tuple<X: Space>(
    x: &X,
    field: &PrimeField,
    tuple: &[X::Simplex],
) -> Chain<Vec<X::Simplex>> {
    let sp = SmashPower::new(x, tuple.len());
    let mut c = Chain::zero(x.degree(&tuple[0]));
    c.add_term(field, tuple.to_vec(), 1);
    boundary_chain(&sp, field, &c)
}

/// `d′T = T ∘ ∂`.
pub fn d_prime<X: Space, YS: Ord + Clone>(
    x: &X,
    field: &PrimeField,
    t: &FunctorMorphism<X::Simplex, YS>,
) -> FunctorMorphism<X::Simplex, YS> {
    let mut out = FunctorMorphism::zero(t.p + 1, t.q);
    for i in enumerate_basis(x, t.p + 1) {
        let v = evaluate_chain(x, field, t, &boundary_of_tuple(x, field, &i));
        out.set(i, v);
    }
    out
}

/// `d″T = ∂ ∘ T`.
pub fn d_second<Y: Space, XS: Ord + Clone>(
    y: &Y,
    field: &PrimeField,
    t: &FunctorMorphism<XS, Y::Simplex>,
) -> FunctorMorphism<XS, Y::Simplex> {
    assert!(t.q > 0, "d″ lowers q");
    let mut out = FunctorMorphism::zero(t.p, t.q - 1);
    for (i, v) in t.entries() {
        let sp = SmashPower::new(y, i.len());
        out.set(i.clone(), boundary_chain(&sp, field, v));
    }
    out
}

/// `T′ ∘ T`, unsigned and componentwise.
pub fn compose_morphisms<
    X: Space,
    Y: Space,
    ZS: Ord + Clone,
    T2: MorphismValues<Y::Simplex, ZS>,
>(
    x: &X,
    y: &Y,
    field: &PrimeField,
    outer: &T2,
    inner: &FunctorMorphism<X::Simplex, Y::Simplex>,
) -> FunctorMorphism<X::Simplex, ZS> {
    assert_eq!(outer.source_degree(), inner.q, "middle degrees differ");
    let mut out = FunctorMorphism::zero(inner.p, outer.target_degree());
    for i in enumerate_basis(x, inner.p) {
        let v = evaluate_chain(y, field, outer, &inner.value(&i));
        out.set(i, v);
    }
    out
}

/// The bidegree `(p, q)` piece of `Hom(M_*(X), M_*(Y))` with basis pairs
/// `(i, w)`, `w` a non-basepoint `q`-simplex of `Y^{∧|i|}`.
#[derive(Clone, Debug)]
pub struct HomModule<XS, YS> {
    p: usize,
    q: usize,
    indices: Vec<Vec<XS>>,
    basis: Basis<(Vec<XS>, Vec<YS>)>,
}

impl<XS, YS> HomModule<XS, YS>
where
    XS: Clone + Ord + std::hash::Hash + std::fmt::Debug,
    YS: Clone + Ord + std::hash::Hash + std::fmt::Debug,
{
    pub fn new<X: Space<Simplex = XS>, Y: Space<Simplex = YS>>(
        x: &X,
        y: &Y,
        p: usize,
        q: usize,
    ) -> Self {
        let indices = enumerate_basis(x, p);
        let mut powers: HashMap<usize, Vec<Vec<YS>>> = HashMap::new();
        let mut elems = Vec::new();
        for i in &indices {
            let ws = powers
                .entry(i.len())
                .or_insert_with(|| SmashPower::new(y, i.len()).nonbase_simplices(q));
            elems.extend(ws.iter().map(|w| (i.clone(), w.clone())));
        }
        HomModule {
            p,
            q,
            indices,
            basis: Basis::new(elems),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn indices(&self) -> &[Vec<XS>] {
        &self.indices
    }

    pub fn basis(&self) -> &Basis<(Vec<XS>, Vec<YS>)> {
        &self.basis
    }

    pub fn to_vector(&self, t: &FunctorMorphism<XS, YS>) -> SparseVec {
        let mut v: SparseVec = t
            .entries()
            .flat_map(|(i, chain)| {
                chain.terms().map(move |(w, c)| {
                    (
                        self.basis
                            .position(&(i.clone(), w.clone()))
                            .expect("value lies in the hom module"),
                        c,
                    )
                })
            })
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }

    pub fn to_morphism(&self, field: &PrimeField, v: &[(usize, u32)]) -> FunctorMorphism<XS, YS> {
        let mut values: BTreeMap<Vec<XS>, Chain<Vec<YS>>> = BTreeMap::new();
        for &(k, c) in v {
            let (i, w) = self.basis.get(k);
            values
                .entry(i.clone())
                .or_insert_with(|| Chain::zero(self.q))
                .add_term(field, w.clone(), c);
        }
        let mut t = FunctorMorphism::zero(self.p, self.q);
        for (i, c) in values {
            t.set(i, c);
        }
        t
    }
}

/// Matrix of `d′: Hom(M_p, M_q) -> Hom(M_{p+1}, M_q)`.
pub fn d_prime_matrix<X: Space, YS>(
    x: &X,
    field: &PrimeField,
    source: &HomModule<X::Simplex, YS>,
    target: &HomModule<X::Simplex, YS>,
) -> SparseMatrix
where
    YS: Clone + Ord + std::hash::Hash + std::fmt::Debug,
{
    assert!(target.p == source.p + 1 && target.q == source.q);
    let mut by_index: HashMap<&Vec<X::Simplex>, Vec<usize>> = HashMap::new();
    for (k, (i, _)) in source.basis.elems().iter().enumerate() {
        by_index.entry(i).or_default().push(k);
    }
    let mut triplets = Vec::new();
    for j in &target.indices {
        for (tuple, c) in boundary_of_tuple(x, field, j).terms() {
            let (i, h) = support_decompose(tuple, Order::Canonical);
            let Some(cols) = by_index.get(&i) else {
                continue;
            };
            for &col in cols {
                let w = &source.basis.get(col).1;
                let hw: Vec<YS> = h.values().iter().map(|&k| w[k].clone()).collect();
                let row = target
                    .basis
                    .position(&(j.clone(), hw))
                    .expect("h^♯ keeps non-basepoint classes");
                triplets.push((row, col, c));
            }
        }
    }
    SparseMatrix::from_triplets(*field, target.rank(), source.rank(), triplets)
        .expect("indices in range")
}

/// Matrix of `d″: Hom(M_p, M_q) -> Hom(M_p, M_{q-1})`.
pub fn d_second_matrix<Y: Space, XS>(
    y: &Y,
    field: &PrimeField,
    source: &HomModule<XS, Y::Simplex>,
    target: &HomModule<XS, Y::Simplex>,
) -> SparseMatrix
where
    XS: Clone + Ord + std::hash::Hash + std::fmt::Debug,
{
    assert!(target.p == source.p && target.q + 1 == source.q);
    let columns = source
        .basis
        .elems()
        .iter()
        .map(|(i, w)| {
            let sp = SmashPower::new(y, i.len());
            let mut c = Chain::zero(source.q);
            c.add_term(field, w.clone(), 1);
            let mut col: SparseVec = boundary_chain(&sp, field, &c)
                .terms()
                .map(|(w2, v)| {
                    (
                        target
                            .basis
                            .position(&(i.clone(), w2.clone()))
                            .expect("faces stay in the module"),
                        v,
                    )
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    SparseMatrix::from_columns(*field, target.rank(), columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{Group, Nerve, Presentation, Simplex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f2() -> PrimeField {
        PrimeField::default()
    }

    fn random_morphism<X: Space, Y: Space>(
        x: &X,
        y: &Y,
        field: &PrimeField,
        p: usize,
        q: usize,
        rng: &mut ChaCha8Rng,
    ) -> FunctorMorphism<X::Simplex, Y::Simplex> {
        let mut t = FunctorMorphism::zero(p, q);
        for i in enumerate_basis(x, p) {
            let mut c = Chain::zero(q);
            for w in SmashPower::new(y, i.len()).nonbase_simplices(q) {
                c.add_term(field, w, rng.gen_range(0..field.ell()));
            }
            t.set(i, c);
        }
        t
    }

    fn tuples<S: Clone>(elems: &[S], s: usize) -> Vec<Vec<S>> {
        (0..s)
            .map(|_| elems.iter().cloned())
            .multi_cartesian_product()
            .collect()
    }

    #[test]
    fn surjection_basics() {
        assert!(Surjection::new(vec![0, 0], 2).is_err());
        assert!(Surjection::new(vec![0, 2], 2).is_err());
        assert_eq!(Surjection::all(3, 2).len(), 6);
        assert_eq!(Surjection::all(3, 3).len(), 6);
        assert_eq!(Surjection::all(2, 1).len(), 1);
        let h = Surjection::new(vec![1, 0, 1], 2).unwrap();
        let g = Surjection::new(vec![0, 1, 1, 2], 3).unwrap();
        assert_eq!(h.compose(&g).unwrap().values(), &[1, 0, 0, 1]);
        assert!(g.compose(&h).is_err());
        assert!(h.compose(&Surjection::identity(3)).unwrap() == h);
        assert_eq!(h.to_string(), "[2,1,2]->2");
    }

    #[test]
    fn basis_census() {
        let s1 = Presentation::sphere_min(1);
        assert!(enumerate_basis(&s1, 0).is_empty());
        assert_eq!(enumerate_basis(&s1, 1).len(), 1);
        let b2 = enumerate_basis(&s1, 2);
        assert_eq!(b2.len(), 3);
        assert_eq!(b2.iter().filter(|i| i.len() == 2).count(), 1);
    }

    #[test]
    fn support_decomposition_examples() {
        let (i, h) = support_decompose(&[1, 4], Order::Canonical);
        assert_eq!((i, h.is_identity()), (vec![1, 4], true));
        let (i, h) = support_decompose(&[7, 7], Order::Canonical);
        assert_eq!((i, h.values().to_vec()), (vec![7], vec![0, 0]));
        let (i, h) = support_decompose(&[2, 1, 2], Order::Canonical);
        assert_eq!((i, h.values().to_vec()), (vec![1, 2], vec![1, 0, 1]));
        let (i, h) = support_decompose(&[2, 1, 2], Order::Reversed);
        assert_eq!((i, h.values().to_vec()), (vec![2, 1], vec![0, 1, 0]));
    }

    #[test]
    fn hom_module_ranks() {
        let s1 = Presentation::sphere_min(1);
        let s0 = Presentation::s0();
        let b = Nerve::new(Group::cyclic(2));
        for p in 0..=3 {
            for q in 0..=3 {
                let n = s1.nonbase_simplices(p).len() as u32;
                let m = b.simplices(q).len();
                assert_eq!(HomModule::new(&s1, &b, p, q).rank(), m.pow(n) - 1);
                let m = s1.simplices(q).len();
                assert_eq!(HomModule::new(&s1, &s1, p, q).rank(), m.pow(n) - 1);
                let n = s0.nonbase_simplices(p).len() as u32;
                assert_eq!(
                    HomModule::new(&s0, &b, p, q).rank(),
                    b.simplices(q).len().pow(n) - 1
                );
            }
        }
        assert_eq!(HomModule::new(&s1, &s1, 1, 1).rank(), 1);
        assert_eq!(HomModule::new(&s1, &s1, 2, 1).rank(), 3);
    }

    #[test]
    fn universal_property_and_naturality() {
        let s1 = Presentation::sphere_min(1);
        let b = Nerve::new(Group::cyclic(2));
        let f3 = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let t = random_morphism(&s1, &b, &f3, p, q, &mut rng);
            for i in enumerate_basis(&s1, p) {
                assert_eq!(evaluate(&s1, &f3, &t, &i), t.value(&i));
            }
            let elems = s1.nonbase_simplices(p);
            for s in 1..=3 {
                for gen in tuples(&elems, s) {
                    let base = evaluate(&s1, &f3, &t, &gen);
                    for tt in 1..=3 {
                        for h in Surjection::all(tt, s) {
                            let hg: Vec<_> = h.values().iter().map(|&k| gen[k].clone()).collect();
                            assert_eq!(
                                evaluate(&s1, &f3, &t, &hg),
                                push_h(&f3, &h, &base),
                                "h = {h}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_vanishes_on_basepoint_classes() {
        let s1 = Presentation::sphere_min(1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_morphism(&s1, &s1, &f2(), 1, 1, &mut rng);
        let gen = vec![
            Presentation::sphere_min(1).nonbase_simplices(1)[0].clone(),
            s1.basepoint(1),
        ];
        assert!(evaluate(&s1, &f2(), &t, &gen).is_zero());
    }

    #[test]
    fn boundary_is_natural() {
        let s1 = Presentation::sphere_min(1);
        let f3 = PrimeField::new(3).unwrap();
        let elems = s1.nonbase_simplices(3);
        for s in 1..=3 {
            for gen in tuples(&elems, s) {
                let d = boundary_of_tuple(&s1, &f3, &gen);
                for tt in 1..=3 {
                    for h in Surjection::all(tt, s) {
                        let hg: Vec<_> = h.values().iter().map(|&k| gen[k].clone()).collect();
                        assert_eq!(boundary_of_tuple(&s1, &f3, &hg), push_h(&f3, &h, &d));
                    }
                }
            }
        }
    }

    #[test]
    fn differentials_commute() {
        let s1 = Presentation::sphere_min(1);
        let f3 = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = random_morphism(&s1, &s1, &f3, 1, 2, &mut rng);
        let a = d_second(&s1, &f3, &d_prime(&s1, &f3, &t));
        let b = d_prime(&s1, &f3, &d_second(&s1, &f3, &t));
        assert_eq!(a, b);
        assert!(d_prime(&s1, &f3, &d_prime(&s1, &f3, &t)).is_zero());
        assert!(d_second(&s1, &f3, &d_second(&s1, &f3, &t)).is_zero());
        let zero = FunctorMorphism::zero(1, 2);
        assert!(d_prime(&s1, &f3, &zero).is_zero() && d_second(&s1, &f3, &zero).is_zero());
    }

    #[test]
    fn matrices_agree_with_morphism_differentials() {
        let s1 = Presentation::sphere_min(1);
        let b = Nerve::new(Group::cyclic(2));
        let f3 = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (p, q) = (2, 2);
        let src = HomModule::new(&s1, &b, p, q);
        let right = HomModule::new(&s1, &b, p + 1, q);
        let down = HomModule::new(&s1, &b, p, q - 1);
        let dp = d_prime_matrix(&s1, &f3, &src, &right);
        let ds = d_second_matrix(&b, &f3, &src, &down);
        for _ in 0..5 {
            let t = random_morphism(&s1, &b, &f3, p, q, &mut rng);
            let v = src.to_vector(&t);
            assert_eq!(src.to_morphism(&f3, &v), t);
            assert_eq!(dp.apply(&v), right.to_vector(&d_prime(&s1, &f3, &t)));
            assert_eq!(ds.apply(&v), down.to_vector(&d_second(&b, &f3, &t)));
        }
    }

    #[test]
    fn composition_laws() {
        let s1 = Presentation::sphere_min(1);
        let f3 = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_morphism(&s1, &s1, &f3, 1, 1, &mut rng);
        let id = identity_morphism(&s1, 1);
        assert_eq!(compose_morphisms(&s1, &s1, &f3, &id, &t), t);
        assert_eq!(compose_morphisms(&s1, &s1, &f3, &t, &id), t);
        let zero = FunctorMorphism::<Simplex, Simplex>::zero(1, 1);
        assert!(compose_morphisms(&s1, &s1, &f3, &zero, &t).is_zero());
        let u = random_morphism(&s1, &s1, &f3, 1, 1, &mut rng);
        let w = random_morphism(&s1, &s1, &f3, 1, 1, &mut rng);
        let left = compose_morphisms(&s1, &s1, &f3, &compose_morphisms(&s1, &s1, &f3, &w, &u), &t);
        let right = compose_morphisms(&s1, &s1, &f3, &w, &compose_morphisms(&s1, &s1, &f3, &u, &t));
        assert_eq!(left, right);
    }
}
