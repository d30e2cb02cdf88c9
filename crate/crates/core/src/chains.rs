//! Reduced, unnormalized chains over `F_ell`.
//!
//! The basis of `C̃_n(Z)` is every degree-`n` simplex except the basepoint,
//! degenerate simplices included. Terms landing on the basepoint are dropped.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use itertools::Itertools;
use serde::Serialize;

use crate::exactlin::{ComplexSegment, PrimeField, SparseMatrix, SparseVec};
use crate::simplicial::{SimplicialMap, Smash2, Space};

pub use crate::exactlin::ChainMapSegment as ChainMapWindow;

/// A finitely supported linear combination of simplices of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain<S: Ord> {
    degree: usize,
    terms: BTreeMap<S, u32>,
}

impl<S: Ord + Clone> Chain<S> {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&S, u32)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coeff(&self, s: &S) -> u32 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    /// Adds `c * s` with no basepoint check.
    pub fn add_term(&mut self, field: &PrimeField, s: S, c: u32) {
        let c = c % field.ell();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(s);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = field.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, field: &PrimeField, c: u32, other: &Chain<S>) {
        for (s, v) in other.terms() {
            self.add_term(field, s.clone(), field.mul(c, v));
        }
    }

    pub fn scaled(&self, field: &PrimeField, c: u32) -> Chain<S> {
        let mut out = Chain::zero(self.degree);
        out.add_scaled(field, c, self);
        out
    }

    /// Push forward along `f`; `None` images are dropped.
    pub fn map_terms<T: Ord + Clone>(
        &self,
        field: &PrimeField,
        degree: usize,
        f: impl Fn(&S) -> Option<T>,
    ) -> Chain<T> {
        let mut out = Chain::zero(degree);
        for (s, c) in self.terms() {
            if let Some(t) = f(s) {
                out.add_term(field, t, c);
            }
        }
        out
    }
}

/// Adds `c [x]` unless `x` is the basepoint.
pub fn add_simplex<X: Space>(
    chain: &mut Chain<X::Simplex>,
    space: &X,
    field: &PrimeField,
    x: X::Simplex,
    c: u32,
) {
    if !space.is_basepoint(&x) {
        chain.add_term(field, x, c);
    }
}

/// The chain `[x]`.
pub fn simplex_chain<X: Space>(space: &X, field: &PrimeField, x: X::Simplex) -> Chain<X::Simplex> {
    let mut c = Chain::zero(space.degree(&x));
    add_simplex(&mut c, space, field, x, 1);
    c
}

/// An indexed basis.
#[derive(Clone, Debug)]
pub struct Basis<S> {
    elems: Vec<S>,
    index: HashMap<S, usize>,
}

impl<S: Clone + Eq + Hash + Ord + std::fmt::Debug> Basis<S> {
    pub fn new(elems: Vec<S>) -> Self {
        let index = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Basis { elems, index }
    }

    /// Basis of `C̃_n(space)`.
    pub fn reduced<X: Space<Simplex = S>>(space: &X, n: usize) -> Self {
        Basis::new(space.nonbase_simplices(n))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[S] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &S {
        &self.elems[i]
    }

    pub fn position(&self, s: &S) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Coordinates of a chain. Panics on a term outside the basis.
    pub fn to_vector(&self, chain: &Chain<S>) -> SparseVec {
        let mut v: SparseVec = chain
            .terms()
            .map(|(s, c)| {
                (
                    self.position(s)
                        .unwrap_or_else(|| panic!("{s:?} not in basis")),
                    c,
                )
            })
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }

    pub fn to_chain(&self, field: &PrimeField, degree: usize, v: &[(usize, u32)]) -> Chain<S> {
        let mut c = Chain::zero(degree);
        for &(i, x) in v {
            c.add_term(field, self.elems[i].clone(), x);
        }
        c
    }
}

/// `∂[x] = Σ (-1)^i [d_i x]` extended linearly.
pub fn boundary_chain<X: Space>(
    space: &X,
    field: &PrimeField,
    chain: &Chain<X::Simplex>,
) -> Chain<X::Simplex> {
    let n = chain.degree();
    let mut out = Chain::zero(n.saturating_sub(1));
    if n == 0 {
        return out;
    }
    for (x, c) in chain.terms() {
        for i in 0..=n {
            add_simplex(
                &mut out,
                space,
                field,
                space.face(x, i),
                field.mul(c, field.sign(i)),
            );
        }
    }
    out
}

/// Matrix of `∂: C̃_n -> C̃_{n-1}` in the reduced bases.
pub fn boundary<X: Space>(space: &X, field: &PrimeField, n: usize) -> SparseMatrix {
    let source = Basis::reduced(space, n);
    if n == 0 {
        return SparseMatrix::zero(*field, 0, source.len());
    }
    let target = Basis::reduced(space, n - 1);
    boundary_between(space, field, &source, &target, n)
}

fn boundary_between<X: Space>(
    space: &X,
    field: &PrimeField,
    source: &Basis<X::Simplex>,
    target: &Basis<X::Simplex>,
    n: usize,
) -> SparseMatrix {
    let columns = source
        .elems()
        .iter()
        .map(|x| {
            target.to_vector(&boundary_chain(
                space,
                field,
                &simplex_chain(space, field, x.clone()),
            ))
        })
        .collect();
    let _ = n;
    SparseMatrix::from_columns(*field, target.len(), columns)
}

/// Reduced chains of `space` in degrees `-1..=max_degree + 1`; homology is
/// available in degrees `0..=max_degree`.
pub fn chain_complex<X: Space>(space: &X, field: &PrimeField, max_degree: usize) -> ComplexSegment {
    let bases: Vec<Basis<X::Simplex>> = (0..=max_degree + 1)
        .map(|n| Basis::reduced(space, n))
        .collect();
    let mut ranks = vec![0];
    ranks.extend(bases.iter().map(Basis::len));
    let mut boundaries = vec![SparseMatrix::zero(*field, 0, bases[0].len())];
    for n in 1..=max_degree + 1 {
        boundaries.push(boundary_between(space, field, &bases[n], &bases[n - 1], n));
    }
    ComplexSegment::new(*field, -1, ranks, boundaries).expect("shapes agree")
}

/// Matrix of `C̃_n(f)`.
pub fn induced<A: Space, B: Space, M: SimplicialMap<A, B>>(
    map: &M,
    source: &A,
    target: &B,
    field: &PrimeField,
    n: usize,
) -> SparseMatrix {
    let sb = Basis::reduced(source, n);
    let tb = Basis::reduced(target, n);
    let columns = sb
        .elems()
        .iter()
        .map(|x| {
            let y = map.apply(x);
            if target.is_basepoint(&y) {
                Vec::new()
            } else {
                vec![(
                    tb.position(&y).expect("image in target basis"),
                    1 % field.ell(),
                )]
            }
        })
        .collect();
    SparseMatrix::from_columns(*field, tb.len(), columns)
}

/// An `(m, n)`-shuffle `(μ, ν)` with its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub odd: bool,
}

/// All `(m, n)`-shuffles of `{0, ..., m+n-1}`.
pub fn shuffles(m: usize, n: usize) -> Vec<Shuffle> {
    (0..m + n)
        .combinations(m)
        .map(|mu| {
            let nu: Vec<usize> = (0..m + n).filter(|k| !mu.contains(k)).collect();
            let inversions: usize = mu.iter().enumerate().map(|(k, &v)| v - k).sum();
            Shuffle {
                mu,
                nu,
                odd: inversions % 2 == 1,
            }
        })
        .collect()
}

/// Degeneracies indexed by an increasing list, applied lowest first.
pub fn degenerate_by<X: Space>(space: &X, x: &X::Simplex, word_increasing: &[usize]) -> X::Simplex {
    word_increasing
        .iter()
        .fold(x.clone(), |acc, &j| space.degeneracy(&acc, j))
}

/// Eilenberg-Zilber cross product `C̃_m(A) ⊗ C̃_n(B) -> C̃_{m+n}(A ∧ B)`:
/// `a × b = Σ sgn(μ, ν) (s_ν a, s_μ b)`.
pub fn cross_with<A: Space, B: Space, T: Ord + Clone>(
    a_space: &A,
    b_space: &B,
    field: &PrimeField,
    z: &Chain<A::Simplex>,
    u: &Chain<B::Simplex>,
    mut project: impl FnMut(A::Simplex, B::Simplex) -> Option<T>,
) -> Chain<T> {
    let (m, n) = (z.degree(), u.degree());
    let mut out = Chain::zero(m + n);
    let shuffles = shuffles(m, n);
    for (a, ca) in z.terms() {
        for (b, cb) in u.terms() {
            let c = field.mul(ca, cb);
            for sh in &shuffles {
                let sa = degenerate_by(a_space, a, &sh.nu);
                let sb = degenerate_by(b_space, b, &sh.mu);
                if a_space.is_basepoint(&sa) || b_space.is_basepoint(&sb) {
                    continue;
                }
                if let Some(t) = project(sa, sb) {
                    let coeff = if sh.odd { field.neg(c) } else { c };
                    out.add_term(field, t, coeff);
                }
            }
        }
    }
    out
}

pub fn cross<A: Space, B: Space>(
    smash: &Smash2<'_, A, B>,
    field: &PrimeField,
    z: &Chain<A::Simplex>,
    u: &Chain<B::Simplex>,
) -> Chain<(A::Simplex, B::Simplex)> {
    cross_with(smash.left(), smash.right(), field, z, u, |a, b| {
        Some((a, b))
    })
}
