use itertools::Itertools;

use super::{SimplicialMap, Space};
use crate::surj::Surjection;

/// `X^{∧s}`. A simplex is the class `x_1 ... x_s` of a tuple; tuples with a
/// basepoint coordinate are all stored as the all-basepoint tuple.
#[derive(Clone, Copy, Debug)]
pub struct SmashPower<'a, X: Space> {
    base: &'a X,
    s: usize,
}

impl<'a, X: Space> SmashPower<'a, X> {
    pub fn new(base: &'a X, s: usize) -> Self {
        assert!(s >= 1, "smash powers start at s = 1");
        SmashPower { base, s }
    }

    pub fn base(&self) -> &'a X {
        self.base
    }

    pub fn power(&self) -> usize {
        self.s
    }

    /// The class of a tuple of equal-degree simplices.
    pub fn class(&self, coords: Vec<X::Simplex>) -> Vec<X::Simplex> {
        assert_eq!(coords.len(), self.s);
        normalize(self.base, coords)
    }
}

fn normalize<X: Space>(space: &X, coords: Vec<X::Simplex>) -> Vec<X::Simplex> {
    if coords.iter().any(|x| space.is_basepoint(x)) {
        let n = space.degree(&coords[0]);
        vec![space.basepoint(n); coords.len()]
    } else {
        coords
    }
}

impl<'a, X: Space> Space for SmashPower<'a, X> {
    type Simplex = Vec<X::Simplex>;

    fn degree(&self, x: &Self::Simplex) -> usize {
        self.base.degree(&x[0])
    }

    fn basepoint(&self, n: usize) -> Self::Simplex {
        vec![self.base.basepoint(n); self.s]
    }

    fn is_basepoint(&self, x: &Self::Simplex) -> bool {
        self.base.is_basepoint(&x[0])
    }

    fn face(&self, x: &Self::Simplex, i: usize) -> Self::Simplex {
        normalize(self.base, x.iter().map(|c| self.base.face(c, i)).collect())
    }

    fn degeneracy(&self, x: &Self::Simplex, j: usize) -> Self::Simplex {
        x.iter().map(|c| self.base.degeneracy(c, j)).collect()
    }

    fn simplices(&self, n: usize) -> Vec<Self::Simplex> {
        let nonbase = self.base.nonbase_simplices(n);
        let mut out: Vec<Self::Simplex> = (0..self.s)
            .map(|_| nonbase.iter().cloned())
            .multi_cartesian_product()
            .collect();
        out.push(self.basepoint(n));
        out.sort();
        out
    }

    fn nonbase_simplices(&self, n: usize) -> Vec<Self::Simplex> {
        let nonbase = self.base.nonbase_simplices(n);
        (0..self.s)
            .map(|_| nonbase.iter().cloned())
            .multi_cartesian_product()
            .collect()
    }
}

/// `A ∧ B`, simplices are normalized pairs.
#[derive(Clone, Copy, Debug)]
pub struct Smash2<'a, A: Space, B: Space> {
    left: &'a A,
    right: &'a B,
}

impl<'a, A: Space, B: Space> Smash2<'a, A, B> {
    pub fn new(left: &'a A, right: &'a B) -> Self {
        Smash2 { left, right }
    }

    pub fn left(&self) -> &'a A {
        self.left
    }

    pub fn right(&self) -> &'a B {
        self.right
    }

    pub fn class(&self, a: A::Simplex, b: B::Simplex) -> (A::Simplex, B::Simplex) {
        if self.left.is_basepoint(&a) || self.right.is_basepoint(&b) {
            let n = self.left.degree(&a);
            (self.left.basepoint(n), self.right.basepoint(n))
        } else {
            (a, b)
        }
    }
}

impl<'a, A: Space, B: Space> Space for Smash2<'a, A, B> {
    type Simplex = (A::Simplex, B::Simplex);

    fn degree(&self, x: &Self::Simplex) -> usize {
        self.left.degree(&x.0)
    }

    fn basepoint(&self, n: usize) -> Self::Simplex {
        (self.left.basepoint(n), self.right.basepoint(n))
    }

    fn is_basepoint(&self, x: &Self::Simplex) -> bool {
        self.left.is_basepoint(&x.0)
    }

    fn face(&self, x: &Self::Simplex, i: usize) -> Self::Simplex {
        self.class(self.left.face(&x.0, i), self.right.face(&x.1, i))
    }

    fn degeneracy(&self, x: &Self::Simplex, j: usize) -> Self::Simplex {
        (
            self.left.degeneracy(&x.0, j),
            self.right.degeneracy(&x.1, j),
        )
    }

    fn simplices(&self, n: usize) -> Vec<Self::Simplex> {
        let mut out = self.nonbase_simplices(n);
        out.push(self.basepoint(n));
        out.sort();
        out
    }

    fn nonbase_simplices(&self, n: usize) -> Vec<Self::Simplex> {
        self.left
            .nonbase_simplices(n)
            .into_iter()
            .cartesian_product(self.right.nonbase_simplices(n))
            .collect()
    }
}

/// `h^♯: X^{∧s} -> X^{∧t}`, `x_1 ... x_s ↦ x_{h(1)} ... x_{h(t)}`.
#[derive(Clone, Debug)]
pub struct HSharp {
    h: Surjection,
}

pub fn h_sharp(h: &Surjection) -> HSharp {
    HSharp { h: h.clone() }
}

impl HSharp {
    pub fn surjection(&self) -> &Surjection {
        &self.h
    }

    /// Works on raw tuples; basepoint classes go to basepoint classes.
    pub fn apply_tuple<T: Clone>(&self, x: &[T]) -> Vec<T> {
        assert_eq!(
            x.len(),
            self.h.s(),
            "tuple length must match the codomain of h"
        );
        self.h.values().iter().map(|&k| x[k].clone()).collect()
    }
}

impl<'a, X: Space> SimplicialMap<SmashPower<'a, X>, SmashPower<'a, X>> for HSharp {
    fn apply(&self, x: &Vec<X::Simplex>) -> Vec<X::Simplex> {
        self.apply_tuple(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{
        check_simplicial_identities, is_degenerate, Group, Nerve, Presentation,
    };

    #[test]
    fn smash_identities_hold() {
        let s1 = Presentation::sphere_min(1);
        check_simplicial_identities(&SmashPower::new(&s1, 2), 3).unwrap();
        let b = Nerve::new(Group::cyclic(2));
        check_simplicial_identities(&Smash2::new(&s1, &b), 3).unwrap();
    }

    #[test]
    fn torus_smash_has_two_nondegenerate_2_simplices() {
        let s1 = Presentation::sphere_min(1);
        let sm = SmashPower::new(&s1, 2);
        let nd = sm
            .nonbase_simplices(2)
            .into_iter()
            .filter(|x| !is_degenerate(&sm, x))
            .count();
        assert_eq!(nd, 2);
    }

    #[test]
    fn smash_with_point_is_trivial() {
        let pt = Presentation::point();
        let s1 = Presentation::sphere_min(1);
        let sm = Smash2::new(&s1, &pt);
        for n in 0..4 {
            assert_eq!(sm.simplices(n), vec![sm.basepoint(n)]);
        }
    }

    #[test]
    fn first_smash_power_is_the_space() {
        let s2 = Presentation::sphere_min(2);
        let sm = SmashPower::new(&s2, 1);
        for n in 0..4 {
            let direct: Vec<_> = s2.simplices(n).into_iter().map(|x| vec![x]).collect();
            assert_eq!(sm.simplices(n), direct);
        }
    }

    #[test]
    fn diagonal_from_constant_surjection() {
        let s1 = Presentation::sphere_min(1);
        let h = Surjection::new(vec![0, 0], 1).unwrap();
        let x = crate::simplicial::Simplex::generator(1);
        let hs = h_sharp(&h);
        let image = SimplicialMap::<SmashPower<Presentation>, SmashPower<Presentation>>::apply(
            &hs,
            &vec![x.clone()],
        );
        assert_eq!(image, vec![x.clone(), x]);
        assert_eq!(SmashPower::new(&s1, 2).degree(&image), 1);
    }
}
