use itertools::Itertools;

use crate::chains::{cross_with, Basis, Chain};
use crate::exactlin::{ChainMapSegment, PrimeField, SparseMatrix, SparseVec};
use crate::simplicial::{
    apply_operator, Evaluation, FunctionSimplex, SmashPower, Space, StandardSimplex,
};
use crate::surj::{enumerate_basis, evaluate, FunctorMorphism, MorphismValues, Order};

use super::{BicomplexModel, DModel, DiagSegment, GModel, ModelError};

type SrcS<E> = <<E as Evaluation>::Source as Space>::Simplex;
type TgtS<E> = <<E as Evaluation>::Target as Space>::Simplex;

/// `^sε([v])(e_i) = [v(x_1) ... v(x_s)]`, extended linearly over a chain of
/// `C̃_q(Y^{X_p})`.
pub fn epsilon<X: Space, Y: Space>(
    d: &DModel<'_, X, Y>,
    p: usize,
    v: &Chain<FunctionSimplex<Y::Simplex>>,
) -> FunctorMorphism<X::Simplex, Y::Simplex> {
    let hom = d.hom();
    let field = d.field();
    let y = hom.target();
    let q = v.degree();
    let mut t = FunctorMorphism::zero(p, q);
    for i in enumerate_basis(hom.source(), p) {
        let positions: Vec<usize> = i
            .iter()
            .map(|x| hom.label_position(p, x).expect("label"))
            .collect();
        let mut value = Chain::zero(q);
        for (f, c) in v.terms() {
            let tuple: Vec<Y::Simplex> = positions.iter().map(|&k| f.values[k].clone()).collect();
            if !tuple.iter().any(|w| y.is_basepoint(w)) {
                value.add_term(&field, tuple, c);
            }
        }
        t.set(i, value);
    }
    t
}

/// Matrix of `ε^p_q: C̃_q(Y^{X_p}) -> Hom(M_p(X), M_q(Y))`.
pub fn epsilon_matrix<X: Space, Y: Space>(
    d: &DModel<'_, X, Y>,
    g: &GModel<'_, X, Y>,
    p: usize,
    q: usize,
) -> Result<SparseMatrix, ModelError> {
    let field = d.field();
    let module = g.module(p, q)?;
    let cols = d.rank(p, q)?;
    let columns = (0..cols)
        .map(|c| {
            let mut chain = Chain::zero(q);
            chain.add_term(&field, d.hom().decode(p, q, c), 1);
            module.to_vector(&epsilon(d, p, &chain))
        })
        .collect();
    Ok(SparseMatrix::from_columns(field, module.rank(), columns))
}

/// `ξ(T) = Σ_{E ⊇ F ≠ ∅} (-1)^{|E|-|F|} Φ_E^F(^{|E|}T(κ_E))`, with `κ_E`
/// listed in the given order on `X_p^×`.
pub fn xi<X: Space, Y: Space, T: MorphismValues<X::Simplex, Y::Simplex>>(
    d: &DModel<'_, X, Y>,
    t: &T,
    order: Order,
) -> Chain<FunctionSimplex<Y::Simplex>> {
    let hom = d.hom();
    let field = d.field();
    let (p, q) = (t.source_degree(), t.target_degree());
    let y = hom.target();
    let mut labels: Vec<X::Simplex> = hom.labels(p).to_vec();
    if order == Order::Reversed {
        labels.reverse();
    }
    let mut out = Chain::zero(q);
    for size in 1..=labels.len() {
        for kappa in labels.iter().cloned().combinations(size) {
            let value = evaluate(hom.source(), &field, t, &kappa);
            if value.is_zero() {
                continue;
            }
            let positions: Vec<usize> = kappa
                .iter()
                .map(|x| hom.label_position(p, x).expect("label"))
                .collect();
            for f_size in 1..=size {
                let sign = field.sign(size - f_size);
                for f in (0..size).combinations(f_size) {
                    for (w, c) in value.terms() {
                        let mut values = vec![y.basepoint(q); hom.labels(p).len()];
                        for &t_ in &f {
                            values[positions[t_]] = w[t_].clone();
                        }
                        out.add_term(
                            &field,
                            FunctionSimplex { degree: q, values },
                            field.mul(sign, c),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Matrix of `ξ^p_q: Hom(M_p(X), M_q(Y)) -> C̃_q(Y^{X_p})`.
pub fn xi_matrix<X: Space, Y: Space>(
    d: &DModel<'_, X, Y>,
    g: &GModel<'_, X, Y>,
    p: usize,
    q: usize,
    order: Order,
) -> Result<SparseMatrix, ModelError> {
    let field = d.field();
    let module = g.module(p, q)?;
    let rows = d.rank(p, q)?;
    let columns = (0..module.rank())
        .map(|c| {
            let t = module.to_morphism(&field, &[(c, 1)]);
            function_chain_vector(d, p, &xi(d, &t, order))
        })
        .collect();
    Ok(SparseMatrix::from_columns(field, rows, columns))
}

/// Coordinates of a chain of `C̃_q(Y^{X_p})` in the encoded basis.
pub fn function_chain_vector<X: Space, Y: Space>(
    d: &DModel<'_, X, Y>,
    p: usize,
    chain: &Chain<FunctionSimplex<Y::Simplex>>,
) -> SparseVec {
    let mut v: SparseVec = chain
        .terms()
        .filter_map(|(f, c)| d.hom().encode(p, f).map(|k| (k, c)))
        .collect();
    v.sort_unstable_by_key(|e| e.0);
    v
}

/// `^sλ(z)(e_i) = C_q(^sη)(z × [κ_i])`.
pub fn lambda_value<E: Evaluation>(
    maps: &E,
    field: &PrimeField,
    z: &Chain<E::Simplex>,
    i: &[SrcS<E>],
) -> Chain<Vec<TgtS<E>>> {
    let x = maps.source_space();
    let y = maps.target_space();
    let sp = SmashPower::new(x, i.len());
    let mut kappa = Chain::zero(x.degree(&i[0]));
    kappa.add_term(field, i.to_vec(), 1);
    cross_with(maps, &sp, field, z, &kappa, |f, a| {
        let ys: Vec<TgtS<E>> = a.iter().map(|xa| maps.evaluate_at(&f, xa)).collect();
        if ys.iter().any(|w| y.is_basepoint(w)) {
            None
        } else {
            Some(ys)
        }
    })
}

/// `λ^p_{n+p}(z)` on every basis index with `|i| <= smax`.
pub fn lambda<E: Evaluation>(
    maps: &E,
    field: &PrimeField,
    z: &Chain<E::Simplex>,
    p: usize,
    smax: usize,
) -> FunctorMorphism<SrcS<E>, TgtS<E>> {
    let mut t = FunctorMorphism::zero(p, z.degree() + p);
    for i in enumerate_basis(maps.source_space(), p) {
        if i.len() <= smax {
            let v = lambda_value(maps, field, z, &i);
            t.set(i, v);
        }
    }
    t
}

/// `λ(z)` with values computed on demand.
pub struct LazyLambda<'e, E: Evaluation> {
    maps: &'e E,
    field: PrimeField,
    z: Chain<E::Simplex>,
    p: usize,
}

impl<'e, E: Evaluation> LazyLambda<'e, E> {
    pub fn new(maps: &'e E, field: PrimeField, z: Chain<E::Simplex>, p: usize) -> Self {
        LazyLambda { maps, field, z, p }
    }
}

impl<'e, E: Evaluation> MorphismValues<SrcS<E>, TgtS<E>> for LazyLambda<'e, E> {
    fn source_degree(&self) -> usize {
        self.p
    }

    fn target_degree(&self) -> usize {
        self.p + self.z.degree()
    }

    fn value(&self, i: &[SrcS<E>]) -> Chain<Vec<TgtS<E>>> {
        lambda_value(self.maps, &self.field, &self.z, i)
    }
}

/// `μ^p_q(z) = C_q(θ^p)(z × [ι_p])` with `θ^p(f, a)(x) = η(f, x̄(a))`.
pub fn mu<E: Evaluation>(
    maps: &E,
    field: &PrimeField,
    z: &Chain<E::Simplex>,
    p: usize,
) -> Chain<FunctionSimplex<TgtS<E>>> {
    let x = maps.source_space();
    let y = maps.target_space();
    let labels = x.nonbase_simplices(p);
    let delta = StandardSimplex::new(p);
    let mut iota = Chain::zero(p);
    iota.add_term(field, delta.fundamental(), 1);
    cross_with(maps, delta.presentation(), field, z, &iota, |f, a| {
        let op = delta.as_operator(&a);
        let values: Vec<TgtS<E>> = labels
            .iter()
            .map(|xp| maps.evaluate_at(&f, &apply_operator(x, xp, &op)))
            .collect();
        if values.iter().all(|w| y.is_basepoint(w)) {
            None
        } else {
            Some(FunctionSimplex {
                degree: op.len() - 1,
                values,
            })
        }
    })
}

/// Degreewise matrices of a map `C̃_*(Y^X) -> diagonal` on `lo..=hi`, each
/// generator `z` of degree `n` sent to its blocks `(p, n + p)`.
fn diagonal_map<E: Evaluation>(
    maps: &E,
    diag: &DiagSegment,
    lo: i64,
    hi: i64,
    mut block_vector: impl FnMut(&Chain<E::Simplex>, usize, usize) -> Result<SparseVec, ModelError>,
) -> Result<ChainMapSegment, ModelError> {
    let field = diag.complex().field();
    let mut out = Vec::new();
    for n in lo..=hi {
        let rows = diag.complex().rank(n)?;
        if n < 0 {
            out.push(SparseMatrix::zero(field, rows, 0));
            continue;
        }
        let basis = Basis::reduced(maps, n as usize);
        let mut columns = Vec::with_capacity(basis.len());
        for z in basis.elems() {
            let mut zc = Chain::zero(n as usize);
            zc.add_term(&field, z.clone(), 1);
            let mut col: SparseVec = Vec::new();
            for b in diag.blocks(n) {
                col.extend(
                    block_vector(&zc, b.p, b.q)?
                        .into_iter()
                        .map(|(r, v)| (b.offset + r, v)),
                );
            }
            columns.push(col);
        }
        out.push(SparseMatrix::from_columns(field, rows, columns));
    }
    Ok(ChainMapSegment { lo, maps: out })
}

/// `λ` as matrices into the diagonal of `G`, degrees `lo..=hi`.
pub fn lambda_map<E: Evaluation>(
    maps: &E,
    g: &GModel<'_, E::Source, E::Target>,
    diag: &DiagSegment,
    lo: i64,
    hi: i64,
) -> Result<ChainMapSegment, ModelError> {
    let field = g.field();
    diagonal_map(maps, diag, lo, hi, |z, p, q| {
        let t = lambda(maps, &field, z, p, usize::MAX);
        Ok(g.module(p, q)?.to_vector(&t))
    })
}

/// `μ` as matrices into the diagonal of `D`, degrees `lo..=hi`.
pub fn mu_map<E: Evaluation>(
    maps: &E,
    d: &DModel<'_, E::Source, E::Target>,
    diag: &DiagSegment,
    lo: i64,
    hi: i64,
) -> Result<ChainMapSegment, ModelError> {
    let field = d.field();
    diagonal_map(maps, diag, lo, hi, |z, p, _q| {
        Ok(function_chain_vector(d, p, &mu(maps, &field, z, p)))
    })
}
