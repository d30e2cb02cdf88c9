use proptest::prelude::*;

use mapspace::chains::{boundary_chain, cross, Chain};
use mapspace::exactlin::{PrimeField, SparseMatrix};
use mapspace::simplicial::{Group, Nerve, Presentation, Smash2, Space};

fn matrix(ell: u32, rows: usize, cols: usize, entries: &[u32]) -> SparseMatrix {
    let field = PrimeField::new(ell).unwrap();
    let triplets = entries
        .iter()
        .enumerate()
        .map(|(k, &v)| (k / cols, k % cols, v % ell));
    SparseMatrix::from_triplets(field, rows, cols, triplets.collect::<Vec<_>>()).unwrap()
}

fn permutation(seed: &[usize], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for (i, &s) in seed.iter().enumerate().take(n) {
        p.swap(i, s % n);
    }
    p
}

fn random_chain<X: Space>(
    x: &X,
    field: &PrimeField,
    degree: usize,
    coeffs: &[u32],
) -> Chain<X::Simplex> {
    let mut c = Chain::zero(degree);
    for (s, &v) in x
        .nonbase_simplices(degree)
        .into_iter()
        .zip(coeffs.iter().cycle())
    {
        c.add_term(field, s, v % field.ell());
    }
    c
}

proptest! {
    #[test]
    fn rank_ignores_permutations(
        ell in prop::sample::select(vec![2u32, 3, 5]),
        rows in 1usize..7,
        cols in 1usize..7,
        entries in prop::collection::vec(0u32..5, 49),
        rseed in prop::collection::vec(0usize..7, 7),
        cseed in prop::collection::vec(0usize..7, 7),
    ) {
        let m = matrix(ell, rows, cols, &entries[..rows * cols]);
        let p = m.permute(&permutation(&rseed, rows), &permutation(&cseed, cols));
        prop_assert_eq!(m.rank(), p.rank());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.kernel_dim(), cols);
        prop_assert!(m.mul(&m.kernel_basis()).unwrap().is_zero());
    }

    #[test]
    fn field_inverses(ell in prop::sample::select(vec![2u32, 3, 5, 7, 11]), a in 1u32..1000) {
        let f = PrimeField::new(ell).unwrap();
        let a = a % ell;
        prop_assume!(a != 0);
        prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
    }

    #[test]
    fn cross_product_is_bilinear_and_leibniz(
        m in 0usize..3,
        n in 0usize..3,
        ell in prop::sample::select(vec![2u32, 3]),
        a in prop::collection::vec(0u32..3, 1..6),
        b in prop::collection::vec(0u32..3, 1..6),
        c in prop::collection::vec(0u32..3, 1..6),
    ) {
        let field = PrimeField::new(ell).unwrap();
        let s1 = Presentation::sphere_min(1);
        let bz = Nerve::new(Group::cyclic(2));
        let smash = Smash2::new(&s1, &bz);
        let reduce = |ch: &Chain<(_, _)>, degree| ch.map_terms(&field, degree, |(x, y)| {
            let cl = smash.class(Clone::clone(x), Clone::clone(y));
            (!smash.is_basepoint(&cl)).then_some(cl)
        });
        let norm = |ch: &Chain<(_, _)>| reduce(ch, m + n);
        let z = random_chain(&s1, &field, m, &a);
        let z2 = random_chain(&s1, &field, m, &c);
        let u = random_chain(&bz, &field, n, &b);
        let mut sum = z.clone();
        sum.add_scaled(&field, 1, &z2);
        let mut split = norm(&cross(&smash, &field, &z, &u));
        split.add_scaled(&field, 1, &norm(&cross(&smash, &field, &z2, &u)));
        prop_assert_eq!(norm(&cross(&smash, &field, &sum, &u)), split);
        if m + n > 0 {
            let lhs = boundary_chain(&smash, &field, &norm(&cross(&smash, &field, &z, &u)));
            let mut rhs = Chain::zero(m + n - 1);
            if m > 0 {
                let t = cross(&smash, &field, &boundary_chain(&s1, &field, &z), &u);
                rhs.add_scaled(&field, 1, &reduce(&t, m + n - 1));
            }
            if n > 0 {
                let t = cross(&smash, &field, &z, &boundary_chain(&bz, &field, &u));
                rhs.add_scaled(&field, field.sign(m), &reduce(&t, m + n - 1));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }
}
