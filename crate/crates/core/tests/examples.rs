use mapspace::chains::{chain_complex, induced};
use mapspace::exactlin::{quasi_iso_check, ChainMapSegment, PrimeField, SparseMatrix};
use mapspace::models::{
    diagonal_homology, BicomplexSegment, DModel, DiagSegment, GModel, ModelError,
};
use mapspace::simplicial::{
    characteristic_map, check_simplicial_identities, Group, MapSpace, Nerve, PointedMap,
    Presentation, Space, StandardSimplex, DEFAULT_BUDGET,
};
use mapspace::surj::{support_decompose, HomModule, Order, Surjection};

#[test]
fn gaussian_elimination_over_f5() {
    let f5 = PrimeField::new(5).unwrap();
    let m = SparseMatrix::from_triplets(
        f5,
        2,
        3,
        [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4), (1, 2, 1)],
    )
    .unwrap();
    assert_eq!(m.rank(), 2);
    assert_eq!(m.kernel_dim(), 1);
    assert!(m.mul(&m.kernel_basis()).unwrap().is_zero());
    assert_eq!(
        SparseMatrix::from_triplet_text(&m.to_triplet_text()).unwrap(),
        m
    );
}

#[test]
fn presentations_round_trip_and_satisfy_identities() {
    for x in [
        Presentation::s0(),
        Presentation::sphere_min(2),
        Presentation::circle3(),
        Presentation::delta_plus(3),
    ] {
        let back = Presentation::from_file(&x.to_file()).unwrap();
        assert_eq!(back.to_file(), x.to_file());
        assert!(check_simplicial_identities(&x, 3).is_ok());
    }
    assert!(check_simplicial_identities(&Nerve::new(Group::cyclic(3)), 3).is_ok());
}

#[test]
fn characteristic_map_hits_the_simplex() {
    let s2 = Presentation::sphere_min(2);
    let delta = StandardSimplex::new(2);
    let top = s2.nonbase_simplices(2)[0].clone();
    let chi = characteristic_map(&delta, &s2, &top);
    assert_eq!(chi.apply(&delta.fundamental()), top);
}

#[test]
fn circle_models_agree_in_homology() {
    let c3 = Presentation::circle3();
    let s1 = Presentation::sphere_min(1);
    let f2 = PrimeField::default();
    let e = PointedMap::new(
        &c3,
        &s1,
        vec![
            mapspace::simplicial::Simplex::generator(0),
            s1.basepoint(0),
            s1.basepoint(0),
            mapspace::simplicial::Simplex::generator(1),
            s1.basepoint(1),
            s1.basepoint(1),
        ],
    )
    .unwrap();
    let a = chain_complex(&c3, &f2, 2);
    let b = chain_complex(&s1, &f2, 2);
    let f = ChainMapSegment {
        lo: -1,
        maps: std::iter::once(SparseMatrix::zero(f2, 0, 0))
            .chain((0..=3).map(|n| induced(&e, &c3, &s1, &f2, n)))
            .collect(),
    };
    assert!(quasi_iso_check(&f, &a, &b, 0, 2)
        .unwrap()
        .iter()
        .all(|d| d.iso));
}

#[test]
fn surjections_and_support() {
    let h = Surjection::new(vec![0, 1, 0], 2).unwrap();
    assert_eq!(h.to_string(), "[1,2,1]->2");
    let (i, g) = support_decompose(&['b', 'a', 'b'], Order::Canonical);
    assert_eq!(i, vec!['a', 'b']);
    assert_eq!(g.values(), &[1, 0, 1]);
}

#[test]
fn hom_module_of_circle_into_itself() {
    let s1 = Presentation::sphere_min(1);
    assert_eq!(HomModule::new(&s1, &s1, 2, 1).rank(), 3);
    assert_eq!(HomModule::new(&s1, &s1, 0, 2).rank(), 0);
}

#[test]
fn models_of_points_are_trivial() {
    let pt = Presentation::point();
    let s1 = Presentation::sphere_min(1);
    let f2 = PrimeField::default();
    let g = GModel::new(&s1, &pt, f2, 2, 2, usize::MAX);
    assert!(diagonal_homology(&g, 0, 1)
        .unwrap()
        .iter()
        .all(|&(_, r)| r == 0));
    let d = DModel::new(&pt, &s1, f2, 2, 2, usize::MAX);
    let seg = BicomplexSegment::build(&d).unwrap();
    assert_eq!(
        DiagSegment::new(&seg).complex().first_square_failure(),
        None
    );
}

#[test]
fn enumeration_budget_and_module_limit() {
    let s1 = Presentation::sphere_min(1);
    let b = Nerve::new(Group::cyclic(2));
    assert!(MapSpace::new(&s1, &b, 2, 1).is_err());
    assert!(MapSpace::new(&s1, &b, 2, DEFAULT_BUDGET).is_ok());
    let d = DModel::new(&s1, &b, PrimeField::default(), 3, 3, 10);
    assert!(matches!(
        diagonal_homology(&d, 0, 0),
        Err(ModelError::TooLarge { .. })
    ));
}
