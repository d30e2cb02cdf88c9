//! Pointed simplicial sets.
//!
//! Every space implements [`Space`]: finitely many simplices per degree,
//! face and degeneracy operators, and a canonical basepoint in each degree.
//! Simplex values are canonical, so `==` is equality of simplices.

mod function_space;
mod mapspace;
mod nerve;
mod presentation;
mod smash;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use function_space::{FunctionSimplex, FunctionSpace, PointedFiniteSet};
pub use mapspace::{DiscreteMaps, Evaluation, MapSimplex, MapSpace, DEFAULT_BUDGET};
pub use nerve::{Group, Nerve, NerveHom};
pub use presentation::{
    characteristic_map, Generator, PointedMap, Presentation, Simplex, StandardSimplex,
};
pub use smash::{h_sharp, HSharp, Smash2, SmashPower};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("face index {index} out of range for a simplex of degree {degree}")]
    FaceIndex { index: usize, degree: usize },
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("simplicial identity d_{i} d_{j} = d_{} d_{i} fails on generator `{generator}`", j - 1)]
    Identity {
        generator: String,
        i: usize,
        j: usize,
    },
    #[error("invalid group table: {0}")]
    Group(String),
    #[error("invalid map: {0}")]
    Map(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("enumeration budget of {budget} search nodes exceeded")]
    Budget { budget: u64 },
}

/// A pointed simplicial set with finitely many simplices in each degree.
pub trait Space {
    type Simplex: Clone + Eq + Ord + Hash + Debug;

    fn degree(&self, x: &Self::Simplex) -> usize;

    /// The basepoint's (degenerate) simplex in degree `n`.
    fn basepoint(&self, n: usize) -> Self::Simplex;

    fn is_basepoint(&self, x: &Self::Simplex) -> bool {
        *x == self.basepoint(self.degree(x))
    }

    /// `d_i x`. Panics if `i > degree(x)` or `degree(x) == 0`.
    fn face(&self, x: &Self::Simplex, i: usize) -> Self::Simplex;

    /// `s_j x`. Panics if `j > degree(x)`.
    fn degeneracy(&self, x: &Self::Simplex, j: usize) -> Self::Simplex;

    /// All degree-`n` simplices, basepoint included, in canonical order.
    fn simplices(&self, n: usize) -> Vec<Self::Simplex>;

    /// Degree-`n` simplices other than the basepoint, in canonical order.
    fn nonbase_simplices(&self, n: usize) -> Vec<Self::Simplex> {
        let mut v = self.simplices(n);
        v.retain(|x| !self.is_basepoint(x));
        v
    }

    fn checked_face(&self, x: &Self::Simplex, i: usize) -> Result<Self::Simplex, SimplicialError> {
        let degree = self.degree(x);
        if degree == 0 || i > degree {
            return Err(SimplicialError::FaceIndex { index: i, degree });
        }
        Ok(self.face(x, i))
    }
}

/// A basepoint-preserving simplicial map `A -> B`.
pub trait SimplicialMap<A: Space, B: Space> {
    fn apply(&self, x: &A::Simplex) -> B::Simplex;
}

/// Indices `j` with `x` in the image of `s_j`.
pub fn degeneracy_set<S: Space + ?Sized>(space: &S, x: &S::Simplex) -> Vec<usize> {
    let n = space.degree(x);
    (0..n)
        .filter(|&j| space.degeneracy(&space.face(x, j), j) == *x)
        .collect()
}

pub fn is_degenerate<S: Space + ?Sized>(space: &S, x: &S::Simplex) -> bool {
    let n = space.degree(x);
    (0..n).any(|j| space.degeneracy(&space.face(x, j), j) == *x)
}

/// Eilenberg-Zilber decomposition `x = s_{j_k} ... s_{j_1} y` with `y`
/// nondegenerate. The word is returned outermost first (strictly decreasing).
pub fn decompose<S: Space + ?Sized>(space: &S, x: &S::Simplex) -> (Vec<usize>, S::Simplex) {
    let mut word = Vec::new();
    let mut y = x.clone();
    while let Some(&j) = degeneracy_set(space, &y).last() {
        word.push(j);
        y = space.face(&y, j);
    }
    (word, y)
}

/// Apply a word of degeneracies given outermost first.
pub fn apply_degeneracies<S: Space + ?Sized>(
    space: &S,
    x: &S::Simplex,
    outer_first: &[usize],
) -> S::Simplex {
    outer_first
        .iter()
        .rev()
        .fold(x.clone(), |acc, &j| space.degeneracy(&acc, j))
}

/// `a^* x` for a monotone map `a: [k] -> [n]` given by its values, `x` of
/// degree `n`.
pub fn apply_operator<S: Space + ?Sized>(space: &S, x: &S::Simplex, a: &[usize]) -> S::Simplex {
    let n = space.degree(x);
    assert!(!a.is_empty() && a.windows(2).all(|w| w[0] <= w[1]) && a[a.len() - 1] <= n);
    // Injective part: drop the vertices missed by `a`, highest first.
    let mut y = x.clone();
    for v in (0..=n).rev() {
        if !a.contains(&v) {
            y = space.face(&y, v);
        }
    }
    // Surjective part: repeat vertices, innermost (lowest) first.
    for j in 0..a.len() - 1 {
        if a[j] == a[j + 1] {
            y = space.degeneracy(&y, j);
        }
    }
    y
}

/// Checks the simplicial identities on every simplex of degree `<= max_degree`.
/// Returns a description of the first failure.
pub fn check_simplicial_identities<S: Space + ?Sized>(
    space: &S,
    max_degree: usize,
) -> Result<(), String> {
    for n in 0..=max_degree {
        for x in space.simplices(n) {
            if space.degree(&x) != n {
                return Err(format!("{x:?} listed in degree {n}"));
            }
            for j in 0..=n {
                let sx = space.degeneracy(&x, j);
                for i in 0..=n + 1 {
                    let lhs = space.face(&sx, i);
                    let rhs = if i < j {
                        space.degeneracy(&space.face(&x, i), j - 1)
                    } else if i == j || i == j + 1 {
                        x.clone()
                    } else {
                        space.degeneracy(&space.face(&x, i - 1), j)
                    };
                    if lhs != rhs {
                        return Err(format!("d_{i} s_{j} fails on {x:?}"));
                    }
                }
                for i in 0..=j {
                    if space.degeneracy(&sx, i) != space.degeneracy(&space.degeneracy(&x, i), j + 1)
                    {
                        return Err(format!("s_{i} s_{j} fails on {x:?}"));
                    }
                }
            }
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        if space.face(&space.face(&x, j), i)
                            != space.face(&space.face(&x, i), j - 1)
                        {
                            return Err(format!("d_{i} d_{j} fails on {x:?}"));
                        }
                    }
                }
            }
            if space.is_basepoint(&x) {
                for i in (0..=n).filter(|_| n > 0) {
                    if !space.is_basepoint(&space.face(&x, i)) {
                        return Err(format!("face of basepoint not basepoint in degree {n}"));
                    }
                }
            }
        }
    }
    Ok(())
}
