use itertools::Itertools;

use super::Space;

/// A finite pointed set. Non-basepoint elements are labelled `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedFiniteSet {
    labels: Vec<String>,
}

impl PointedFiniteSet {
    pub fn new(labels: Vec<String>) -> Self {
        PointedFiniteSet { labels }
    }

    pub fn of_size(n: usize) -> Self {
        PointedFiniteSet {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// `|S^×|`
    pub fn nonbase_len(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// `Y^S`: a degree-`q` simplex is a pointed function `S -> Y_q`, stored as
/// its values on `S^×` in label order.
#[derive(Clone, Debug)]
pub struct FunctionSpace<'a, Y: Space> {
    target: &'a Y,
    arity: usize,
}

impl<'a, Y: Space> FunctionSpace<'a, Y> {
    pub fn new(target: &'a Y, set: &PointedFiniteSet) -> Self {
        FunctionSpace {
            target,
            arity: set.nonbase_len(),
        }
    }

    pub fn with_arity(target: &'a Y, arity: usize) -> Self {
        FunctionSpace { target, arity }
    }

    pub fn target(&self) -> &'a Y {
        self.target
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl<'a, Y: Space> Space for FunctionSpace<'a, Y> {
    type Simplex = FunctionSimplex<Y::Simplex>;

    fn degree(&self, v: &Self::Simplex) -> usize {
        v.degree
    }

    fn basepoint(&self, n: usize) -> Self::Simplex {
        FunctionSimplex {
            degree: n,
            values: vec![self.target.basepoint(n); self.arity],
        }
    }

    fn is_basepoint(&self, v: &Self::Simplex) -> bool {
        v.values.iter().all(|y| self.target.is_basepoint(y))
    }

    fn face(&self, v: &Self::Simplex, i: usize) -> Self::Simplex {
        FunctionSimplex {
            degree: v.degree - 1,
            values: v.values.iter().map(|y| self.target.face(y, i)).collect(),
        }
    }

    fn degeneracy(&self, v: &Self::Simplex, j: usize) -> Self::Simplex {
        FunctionSimplex {
            degree: v.degree + 1,
            values: v
                .values
                .iter()
                .map(|y| self.target.degeneracy(y, j))
                .collect(),
        }
    }

    fn simplices(&self, n: usize) -> Vec<Self::Simplex> {
        if self.arity == 0 {
            return vec![self.basepoint(n)];
        }
        let all = self.target.simplices(n);
        let mut out: Vec<Self::Simplex> = (0..self.arity)
            .map(|_| all.iter().cloned())
            .multi_cartesian_product()
            .map(|values| FunctionSimplex { degree: n, values })
            .collect();
        out.sort();
        out
    }
}

/// Values of a pointed function on `S^×`; the degree is kept so that the
/// empty function (for `S = {*}`) still knows its degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionSimplex<T> {
    pub degree: usize,
    pub values: Vec<T>,
}
