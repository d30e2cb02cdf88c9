use serde::Serialize;

use crate::chains::{Basis, Chain};
use crate::exactlin::{ChainMapSegment, ComplexSegment, PrimeField, SparseMatrix};
use crate::simplicial::{Evaluation, SimplicialError, SimplicialMap, Space};
use crate::surj::{
    compose_morphisms, enumerate_basis, support_decompose, FunctorMorphism, HomModule, Order,
};

use super::comparison::{epsilon, epsilon_matrix, lambda, mu, xi_matrix, LazyLambda};
use super::{
    BicomplexModel, BicomplexSegment, DModel, DiagSegment, GModel, IdentityFailure, ModelError,
};

type SrcS<E> = <<E as Evaluation>::Source as Space>::Simplex;
type TgtS<E> = <<E as Evaluation>::Target as Space>::Simplex;

/// Rank of one bidegree in both models next to `|Y_q|^{|X_p^×|} - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub p: usize,
    pub q: usize,
    pub d_rank: usize,
    pub g_rank: usize,
    pub formula: u128,
}

impl CensusRow {
    pub fn ok(&self) -> bool {
        self.d_rank as u128 == self.formula && self.g_rank as u128 == self.formula
    }
}

pub fn rank_census<X: Space, Y: Space>(
    d: &DModel<'_, X, Y>,
    g: &GModel<'_, X, Y>,
    pmax: usize,
    qmax: usize,
) -> Result<Vec<CensusRow>, ModelError> {
    let (x, y) = (g.source(), g.target());
    let mut out = Vec::new();
    for p in 0..=pmax {
        let n = x.nonbase_simplices(p).len() as u32;
        for q in 0..=qmax {
            let m = y.simplices(q).len() as u128;
            out.push(CensusRow {
                p,
                q,
                d_rank: d.rank(p, q)?,
                g_rank: g.rank(p, q)?,
                formula: m.pow(n) - 1,
            });
        }
    }
    Ok(out)
}

/// Whether `ξ ∘ ε` and `ε ∘ ξ` are identities at one bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseCheck {
    pub p: usize,
    pub q: usize,
    pub xi_epsilon_identity: bool,
    pub epsilon_xi_identity: bool,
}

pub fn check_inverse<X: Space, Y: Space>(
    d: &DModel<'_, X, Y>,
    g: &GModel<'_, X, Y>,
    p: usize,
    q: usize,
    order: Order,
) -> Result<InverseCheck, ModelError> {
    let eps = epsilon_matrix(d, g, p, q)?;
    let xi = xi_matrix(d, g, p, q, order)?;
    let field = d.field();
    Ok(InverseCheck {
        p,
        q,
        xi_epsilon_identity: xi.mul(&eps)? == SparseMatrix::identity(field, eps.cols()),
        epsilon_xi_identity: eps.mul(&xi)? == SparseMatrix::identity(field, xi.cols()),
    })
}

/// `ε d′ = d′ ε` and `ε d″ = d″ ε` on every bidegree of both segments.
pub fn check_epsilon_commutes<X: Space, Y: Space>(
    d: &DModel<'_, X, Y>,
    g: &GModel<'_, X, Y>,
    d_seg: &BicomplexSegment,
    g_seg: &BicomplexSegment,
) -> Result<Vec<IdentityFailure>, ModelError> {
    let mut eps = std::collections::BTreeMap::new();
    for &(p, q) in d_seg.ranks().keys() {
        eps.insert((p, q), epsilon_matrix(d, g, p, q)?);
    }
    let mut out = Vec::new();
    for &(p, q) in d_seg.ranks().keys() {
        if p >= 1 {
            if let (Some(dd), Some(dg), Some(e0), Some(e1)) = (
                d_seg.d_prime(p, q),
                g_seg.d_prime(p, q),
                eps.get(&(p - 1, q)),
                eps.get(&(p, q)),
            ) {
                if e1.mul(dd)? != dg.mul(e0)? {
                    out.push(IdentityFailure {
                        identity: "epsilon d' = d' epsilon",
                        p,
                        q,
                    });
                }
            }
        }
        if q >= 1 {
            if let (Some(dd), Some(dg), Some(e0), Some(e1)) = (
                d_seg.d_second(p, q),
                g_seg.d_second(p, q),
                eps.get(&(p, q)),
                eps.get(&(p, q - 1)),
            ) {
                if e1.mul(dd)? != dg.mul(e0)? {
                    out.push(IdentityFailure {
                        identity: "epsilon d'' = d'' epsilon",
                        p,
                        q,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMapFailure {
    pub degree: i64,
    pub p: usize,
    pub q: usize,
}

/// `∂ f_n = f_{n-1} ∂` for `n` in `lo..=hi`, compared on target blocks with
/// `q < qmax` (the only ones the truncated diagonal differential sees in
/// full).
pub fn check_chain_map(
    source: &ComplexSegment,
    target: &DiagSegment,
    f: &ChainMapSegment,
    lo: i64,
    hi: i64,
    qmax: usize,
) -> Result<Vec<ChainMapFailure>, ModelError> {
    let field = source.field();
    let mut out = Vec::new();
    for n in lo..=hi {
        let (Some(fn_), Some(fm)) = (f.at(n), f.at(n - 1)) else {
            return Err(ModelError::Lin(crate::exactlin::LinError::OutOfWindow {
                degree: n,
                lo: f.lo + 1,
                hi: f.hi(),
            }));
        };
        let left = target.complex().boundary(n)?.mul(fn_)?;
        let right = fm.mul(source.boundary(n)?)?;
        let diff = left.add_scaled(field.neg(1), &right)?;
        for b in target.blocks(n - 1) {
            if b.q >= qmax {
                continue;
            }
            if diff
                .triplets()
                .any(|(r, _, _)| r >= b.offset && r < b.offset + b.rank)
            {
                out.push(ChainMapFailure {
                    degree: n,
                    p: b.p,
                    q: b.q,
                });
            }
        }
    }
    Ok(out)
}

/// A disagreement between `λ(z)` and `ε(μ(z))` at one basis index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleFailure {
    pub p: usize,
    pub q: usize,
    pub generator: String,
    pub index: String,
    pub lambda: String,
    pub epsilon_mu: String,
}

/// Compares two morphisms on every basis index with `|i| <= smax`.
pub fn triangle_failures<XS: Ord + Clone + std::fmt::Debug, YS: Ord + Clone + std::fmt::Debug>(
    indices: &[Vec<XS>],
    generator: &str,
    lam: &FunctorMorphism<XS, YS>,
    eps_mu: &FunctorMorphism<XS, YS>,
    smax: usize,
) -> Vec<TriangleFailure> {
    use crate::surj::MorphismValues;
    indices
        .iter()
        .filter(|i| i.len() <= smax)
        .filter_map(|i| {
            let (a, b) = (lam.value(i), eps_mu.value(i));
            (a != b).then(|| TriangleFailure {
                p: lam.p(),
                q: lam.q(),
                generator: generator.to_string(),
                index: format!("{i:?}"),
                lambda: format!("{:?}", a.terms().collect::<Vec<_>>()),
                epsilon_mu: format!("{:?}", b.terms().collect::<Vec<_>>()),
            })
        })
        .collect()
}

/// `ε ∘ μ = λ` on every generator of `C̃_n(Y^X)` and every `(p, n + p)` in
/// the window.
pub fn check_triangle<E: Evaluation>(
    maps: &E,
    d: &DModel<'_, E::Source, E::Target>,
    n: usize,
    pmax: usize,
    qmax: usize,
    smax: usize,
) -> Vec<TriangleFailure> {
    let field = d.field();
    let mut out = Vec::new();
    for z in Basis::reduced(maps, n).elems() {
        let mut zc = Chain::zero(n);
        zc.add_term(&field, z.clone(), 1);
        for p in 0..=pmax.min(qmax.saturating_sub(n)) {
            if n + p > qmax {
                break;
            }
            let lam = lambda(maps, &field, &zc, p, smax);
            let em = epsilon(d, p, &mu(maps, &field, &zc, p));
            let indices = enumerate_basis(maps.source_space(), p);
            out.extend(triangle_failures(
                &indices,
                &format!("{z:?}"),
                &lam,
                &em,
                smax,
            ));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityFailure {
    pub p: usize,
    pub generator: String,
    pub tuple: String,
}

/// `^sλ(z)([x_1 ... x_s])` computed directly equals the value derived from
/// the basis values of `λ(z)`, for all tuples with `s <= smax`.
pub fn check_lambda_naturality<E: Evaluation>(
    maps: &E,
    field: &PrimeField,
    n: usize,
    pmax: usize,
    smax: usize,
) -> Vec<NaturalityFailure> {
    use itertools::Itertools;
    let x = maps.source_space();
    let mut out = Vec::new();
    for z in Basis::reduced(maps, n).elems() {
        let mut zc = Chain::zero(n);
        zc.add_term(field, z.clone(), 1);
        for p in 0..=pmax {
            let lam = lambda(maps, field, &zc, p, smax);
            let elems = x.simplices(p);
            for s in 1..=smax {
                for tuple in (0..s)
                    .map(|_| elems.iter().cloned())
                    .multi_cartesian_product()
                {
                    let direct = if tuple.iter().any(|t| x.is_basepoint(t)) {
                        Chain::zero(n + p)
                    } else {
                        super::comparison::lambda_value(maps, field, &zc, &tuple)
                    };
                    if direct != crate::surj::evaluate(x, field, &lam, &tuple) {
                        out.push(NaturalityFailure {
                            p,
                            generator: format!("{z:?}"),
                            tuple: format!("{tuple:?}"),
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionFailure {
    pub p: usize,
    pub outer: String,
    pub inner: String,
}

/// The square `λ(X,Z)(γ(a ∧ b)) = λ(Y,Z)(a) ∘ λ(X,Y)(b)` on degree-0
/// generators `a` of `Z^Y` and `b` of `Y^X`, for bidegrees `(p, p)`,
/// `p <= pmax`. On degree 0 the cross product `[a] × [b]` is `[a ∧ b]`.
pub fn check_composition_square<A, B, C>(
    zy: &A,
    yx: &B,
    zx: &C,
    field: &PrimeField,
    pmax: usize,
    gamma: impl Fn(&A::Simplex, &B::Simplex) -> Option<C::Simplex>,
) -> Result<Vec<CompositionFailure>, ModelError>
where
    A: Evaluation,
    B: Evaluation<Target = A::Source>,
    C: Evaluation<Source = B::Source, Target = A::Target>,
{
    let mut out = Vec::new();
    for a in zy.nonbase_simplices(0) {
        for b in yx.nonbase_simplices(0) {
            let Some(c) = gamma(&a, &b) else {
                return Err(ModelError::Simplicial(SimplicialError::Map(format!(
                    "composite of {a:?} and {b:?} is not an enumerated map"
                ))));
            };
            let mut ca = Chain::zero(0);
            ca.add_term(field, a.clone(), 1);
            let mut cb = Chain::zero(0);
            cb.add_term(field, b.clone(), 1);
            let mut cc = Chain::zero(0);
            if !zx.is_basepoint(&c) {
                cc.add_term(field, c, 1);
            }
            for p in 0..=pmax {
                let lhs: FunctorMorphism<SrcS<C>, TgtS<C>> = lambda(zx, field, &cc, p, usize::MAX);
                let inner = lambda(yx, field, &cb, p, usize::MAX);
                let outer = LazyLambda::new(zy, *field, ca.clone(), p);
                let rhs =
                    compose_morphisms(yx.source_space(), zy.source_space(), field, &outer, &inner);
                if lhs != rhs {
                    out.push(CompositionFailure {
                        p,
                        outer: format!("{a:?}"),
                        inner: format!("{b:?}"),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of `T ↦ M(f) ∘ T ∘ M(e)` between hom modules of one bidegree.
#[allow(clippy::too_many_arguments)]
pub fn induced_g_matrix<X2, X, Y, Y2, Me, Mf>(
    e: &Me,
    f: &Mf,
    x: &X,
    y2: &Y2,
    field: &PrimeField,
    source: &HomModule<X::Simplex, Y::Simplex>,
    target: &HomModule<X2::Simplex, Y2::Simplex>,
) -> SparseMatrix
where
    X2: Space,
    X: Space,
    Y: Space,
    Y2: Space,
    Me: SimplicialMap<X2, X>,
    Mf: SimplicialMap<Y, Y2>,
{
    let mut by_index: std::collections::HashMap<&Vec<X::Simplex>, Vec<usize>> =
        std::collections::HashMap::new();
    for (k, (i, _)) in source.basis().elems().iter().enumerate() {
        by_index.entry(i).or_default().push(k);
    }
    let mut triplets = Vec::new();
    for j in target.indices() {
        let image: Vec<X::Simplex> = j.iter().map(|xj| e.apply(xj)).collect();
        if image.iter().any(|s| x.is_basepoint(s)) {
            continue;
        }
        let (i, h) = support_decompose(&image, Order::Canonical);
        let Some(cols) = by_index.get(&i) else {
            continue;
        };
        for &col in cols {
            let w = &source.basis().get(col).1;
            let fw: Vec<Y2::Simplex> = h.values().iter().map(|&k| f.apply(&w[k])).collect();
            if fw.iter().any(|s| y2.is_basepoint(s)) {
                continue;
            }
            let row = target
                .basis()
                .position(&(j.clone(), fw))
                .expect("image lies in the target module");
            triplets.push((row, col, 1));
        }
    }
    SparseMatrix::from_triplets(*field, target.rank(), source.rank(), triplets)
        .expect("indices in range")
}

/// `G(e, f): G(X, Y) -> G(X′, Y′)` on diagonal degrees `lo..=hi`.
#[allow(clippy::too_many_arguments)]
pub fn induced_g<X2, X, Y, Y2, Me, Mf>(
    e: &Me,
    f: &Mf,
    source: &GModel<'_, X, Y>,
    target: &GModel<'_, X2, Y2>,
    source_diag: &DiagSegment,
    target_diag: &DiagSegment,
    lo: i64,
    hi: i64,
) -> Result<ChainMapSegment, ModelError>
where
    X2: Space,
    X: Space,
    Y: Space,
    Y2: Space,
    Me: SimplicialMap<X2, X>,
    Mf: SimplicialMap<Y, Y2>,
{
    let field = source.field();
    let mut maps = Vec::new();
    for n in lo..=hi {
        let rows = target_diag.complex().rank(n)?;
        let cols = source_diag.complex().rank(n)?;
        let mut triplets = Vec::new();
        for sb in source_diag.blocks(n) {
            let Some(tb) = target_diag.block(sb.p, sb.q) else {
                continue;
            };
            let m = induced_g_matrix(
                e,
                f,
                source.source(),
                target.target(),
                &field,
                source.module(sb.p, sb.q)?,
                target.module(tb.p, tb.q)?,
            );
            triplets.extend(
                m.triplets()
                    .map(|(r, c, v)| (tb.offset + r, sb.offset + c, v)),
            );
        }
        maps.push(SparseMatrix::from_triplets(field, rows, cols, triplets)?);
    }
    Ok(ChainMapSegment { lo, maps })
}

/// The projection from a larger truncation onto a smaller one: identity on
/// every bidegree block both diagonals share, zero elsewhere.
pub fn truncation_projection(
    big: &DiagSegment,
    small: &DiagSegment,
    lo: i64,
    hi: i64,
) -> Result<ChainMapSegment, ModelError> {
    let field = big.complex().field();
    let mut maps = Vec::new();
    for n in lo..=hi {
        let rows = small.complex().rank(n)?;
        let cols = big.complex().rank(n)?;
        let mut triplets = Vec::new();
        for b in big.blocks(n) {
            if let Some(s) = small.block(b.p, b.q) {
                triplets.extend((0..s.rank).map(|k| (s.offset + k, b.offset + k, 1)));
            }
        }
        maps.push(SparseMatrix::from_triplets(field, rows, cols, triplets)?);
    }
    Ok(ChainMapSegment { lo, maps })
}

/// Homology of the diagonal of a model in degrees `lo..=hi`, building only
/// the diagonals `lo-1..=hi+1`.
pub fn diagonal_homology<M: BicomplexModel>(
    model: &M,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, usize)>, ModelError> {
    let seg = BicomplexSegment::build_degrees(model, lo - 1, hi + 1)?;
    let diag = DiagSegment::new(&seg);
    (lo..=hi)
        .map(|n| Ok((n, diag.complex().homology_rank(n)?)))
        .collect()
}
