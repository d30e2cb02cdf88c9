use std::cell::OnceCell;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactlin::{ComplexSegment, PrimeField, SparseMatrix};
use crate::simplicial::Space;
use crate::surj::{d_prime_matrix, d_second_matrix, HomModule};

use super::{CosimplicialHom, ModelError};

/// A bicomplex with `d′: (p-1, q) -> (p, q)` and `d″: (p, q) -> (p, q-1)`,
/// built on demand inside the box `p <= pmax`, `q <= qmax`.
pub trait BicomplexModel {
    fn field(&self) -> PrimeField;
    fn pmax(&self) -> usize;
    fn qmax(&self) -> usize;
    fn rank(&self, p: usize, q: usize) -> Result<usize, ModelError>;
    fn d_prime(&self, p: usize, q: usize) -> Result<SparseMatrix, ModelError>;
    fn d_second(&self, p: usize, q: usize) -> Result<SparseMatrix, ModelError>;
}

/// Anderson's bicomplex `D^p_q = C̃_q(Y^{X_p})`.
#[derive(Debug)]
pub struct DModel<'a, X: Space, Y: Space> {
    hom: CosimplicialHom<'a, X, Y>,
    field: PrimeField,
    limit: usize,
}

impl<'a, X: Space, Y: Space> DModel<'a, X, Y> {
    pub fn new(
        x: &'a X,
        y: &'a Y,
        field: PrimeField,
        pmax: usize,
        qmax: usize,
        limit: usize,
    ) -> Self {
        DModel {
            hom: CosimplicialHom::new(x, y, pmax, qmax),
            field,
            limit,
        }
    }

    pub fn hom(&self) -> &CosimplicialHom<'a, X, Y> {
        &self.hom
    }

    pub fn limit(&self) -> usize {
        self.limit
    }
}

impl<'a, X: Space, Y: Space> BicomplexModel for DModel<'a, X, Y> {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn pmax(&self) -> usize {
        self.hom.pmax()
    }

    fn qmax(&self) -> usize {
        self.hom.qmax()
    }

    fn rank(&self, p: usize, q: usize) -> Result<usize, ModelError> {
        self.hom.checked_rank(p, q, self.limit)
    }

    fn d_prime(&self, p: usize, q: usize) -> Result<SparseMatrix, ModelError> {
        self.hom.d_prime_matrix(&self.field, p, q, self.limit)
    }

    fn d_second(&self, p: usize, q: usize) -> Result<SparseMatrix, ModelError> {
        self.hom.d_second_matrix(&self.field, p, q, self.limit)
    }
}

/// Arone's bicomplex `G^p_q = Hom(M_p(X), M_q(Y))`.
#[derive(Debug)]
pub struct GModel<'a, X: Space, Y: Space> {
    x: &'a X,
    y: &'a Y,
    field: PrimeField,
    pmax: usize,
    qmax: usize,
    limit: usize,
    modules: Vec<Vec<OnceCell<HomModule<X::Simplex, Y::Simplex>>>>,
}

impl<'a, X: Space, Y: Space> GModel<'a, X, Y> {
    pub fn new(
        x: &'a X,
        y: &'a Y,
        field: PrimeField,
        pmax: usize,
        qmax: usize,
        limit: usize,
    ) -> Self {
        let modules = (0..=pmax)
            .map(|_| (0..=qmax).map(|_| OnceCell::new()).collect())
            .collect();
        GModel {
            x,
            y,
            field,
            pmax,
            qmax,
            limit,
            modules,
        }
    }

    pub fn source(&self) -> &'a X {
        self.x
    }

    pub fn target(&self) -> &'a Y {
        self.y
    }

    /// The bidegree `(p, q)` hom module, built on first use.
    pub fn module(
        &self,
        p: usize,
        q: usize,
    ) -> Result<&HomModule<X::Simplex, Y::Simplex>, ModelError> {
        let cell = &self.modules[p][q];
        if let Some(m) = cell.get() {
            return Ok(m);
        }
        let n = self.x.nonbase_simplices(p).len();
        let m = self.y.simplices(q).len();
        let rank = (m as u128).checked_pow(n as u32).map(|r| r - 1);
        if rank.is_none_or(|r| r > self.limit as u128) {
            return Err(ModelError::TooLarge {
                p,
                q,
                size: format!("{m}^{n} - 1"),
                limit: self.limit,
            });
        }
        Ok(cell.get_or_init(|| HomModule::new(self.x, self.y, p, q)))
    }
}

impl<'a, X: Space, Y: Space> BicomplexModel for GModel<'a, X, Y> {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn pmax(&self) -> usize {
        self.pmax
    }

    fn qmax(&self) -> usize {
        self.qmax
    }

    fn rank(&self, p: usize, q: usize) -> Result<usize, ModelError> {
        Ok(self.module(p, q)?.rank())
    }

    fn d_prime(&self, p: usize, q: usize) -> Result<SparseMatrix, ModelError> {
        Ok(d_prime_matrix(
            self.x,
            &self.field,
            self.module(p - 1, q)?,
            self.module(p, q)?,
        ))
    }

    fn d_second(&self, p: usize, q: usize) -> Result<SparseMatrix, ModelError> {
        Ok(d_second_matrix(
            self.y,
            &self.field,
            self.module(p, q)?,
            self.module(p, q - 1)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub p: usize,
    pub q: usize,
}

/// The part of a bicomplex with `p <= pmax`, `q <= qmax` and `q - p` in a
/// degree range. Keeping `p <= pmax` is a quotient and `q <= qmax` a
/// subcomplex, so the result is again a bicomplex.
#[derive(Clone, Debug)]
pub struct BicomplexSegment {
    field: PrimeField,
    pmax: usize,
    qmax: usize,
    lo: i64,
    hi: i64,
    ranks: BTreeMap<(usize, usize), usize>,
    d_prime: BTreeMap<(usize, usize), SparseMatrix>,
    d_second: BTreeMap<(usize, usize), SparseMatrix>,
}

impl BicomplexSegment {
    /// Every bidegree of the model's box.
    pub fn build<M: BicomplexModel>(model: &M) -> Result<Self, ModelError> {
        let (p, q) = (model.pmax() as i64, model.qmax() as i64);
        Self::build_degrees(model, -p - 1, q + 1)
    }

    /// Only bidegrees with `lo <= q - p <= hi`.
    pub fn build_degrees<M: BicomplexModel>(
        model: &M,
        lo: i64,
        hi: i64,
    ) -> Result<Self, ModelError> {
        let (pmax, qmax) = (model.pmax(), model.qmax());
        let inside = |p: usize, q: usize| {
            let n = q as i64 - p as i64;
            n >= lo && n <= hi
        };
        let mut ranks = BTreeMap::new();
        for p in 0..=pmax {
            for q in 0..=qmax {
                if inside(p, q) {
                    ranks.insert((p, q), model.rank(p, q)?);
                }
            }
        }
        let mut d_prime = BTreeMap::new();
        let mut d_second = BTreeMap::new();
        for &(p, q) in ranks.keys() {
            if p >= 1 && ranks.contains_key(&(p - 1, q)) {
                d_prime.insert((p, q), model.d_prime(p, q)?);
            }
            if q >= 1 && ranks.contains_key(&(p, q - 1)) {
                d_second.insert((p, q), model.d_second(p, q)?);
            }
        }
        Ok(BicomplexSegment {
            field: model.field(),
            pmax,
            qmax,
            lo,
            hi,
            ranks,
            d_prime,
            d_second,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn pmax(&self) -> usize {
        self.pmax
    }

    pub fn qmax(&self) -> usize {
        self.qmax
    }

    pub fn degree_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn rank(&self, p: usize, q: usize) -> Option<usize> {
        self.ranks.get(&(p, q)).copied()
    }

    pub fn ranks(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.ranks
    }

    /// `d′: (p-1, q) -> (p, q)`.
    pub fn d_prime(&self, p: usize, q: usize) -> Option<&SparseMatrix> {
        self.d_prime.get(&(p, q))
    }

    /// `d″: (p, q) -> (p, q-1)`.
    pub fn d_second(&self, p: usize, q: usize) -> Option<&SparseMatrix> {
        self.d_second.get(&(p, q))
    }

    /// `d′d′ = 0`, `d″d″ = 0` and `d″d′ = d′d″` wherever all maps are present.
    pub fn check_identities(&self) -> Vec<IdentityFailure> {
        let mut out = Vec::new();
        let prod = |a: &SparseMatrix, b: &SparseMatrix| a.mul(b).expect("bidegree shapes agree");
        for &(p, q) in self.ranks.keys() {
            if let (Some(a), Some(b)) = (self.d_prime(p + 1, q), self.d_prime(p, q)) {
                if !prod(a, b).is_zero() {
                    out.push(IdentityFailure {
                        identity: "d'd' = 0",
                        p,
                        q,
                    });
                }
            }
            if let (Some(a), Some(b)) = (
                q.checked_sub(1).and_then(|q1| self.d_second(p, q1)),
                self.d_second(p, q),
            ) {
                if !prod(a, b).is_zero() {
                    out.push(IdentityFailure {
                        identity: "d''d'' = 0",
                        p,
                        q,
                    });
                }
            }
            if p >= 1 && q >= 1 {
                let left = self.d_second(p, q).zip(self.d_prime(p, q));
                let right = self.d_prime(p, q - 1).zip(self.d_second(p - 1, q));
                if let (Some((a, b)), Some((c, d))) = (left, right) {
                    if prod(a, b) != prod(c, d) {
                        out.push(IdentityFailure {
                            identity: "d''d' = d'd''",
                            p,
                            q,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Where the bidegree `(p, q)` block sits inside diagonal degree `q - p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub p: usize,
    pub q: usize,
    pub offset: usize,
    pub rank: usize,
}

/// The diagonal complex `W_n = ⊕_{q-p=n} W^p_q` of a segment with
/// `(∂w)^p_q = d″(w^p_{q+1}) - (-1)^n d′(w^{p-1}_q)`.
#[derive(Clone, Debug)]
pub struct DiagSegment {
    complex: ComplexSegment,
    layout: BTreeMap<i64, Vec<Block>>,
}

impl DiagSegment {
    pub fn new(seg: &BicomplexSegment) -> Self {
        let field = seg.field;
        let (lo, hi) = seg.degree_range();
        let mut layout: BTreeMap<i64, Vec<Block>> = (lo..=hi).map(|n| (n, Vec::new())).collect();
        for (&(p, q), &rank) in &seg.ranks {
            let blocks = layout
                .get_mut(&(q as i64 - p as i64))
                .expect("degree in range");
            let offset = blocks.last().map_or(0, |b: &Block| b.offset + b.rank);
            blocks.push(Block { p, q, offset, rank });
        }
        let size = |blocks: &Vec<Block>| blocks.last().map_or(0, |b| b.offset + b.rank);
        let ranks: Vec<usize> = layout.values().map(size).collect();
        let mut boundaries = Vec::new();
        for n in lo + 1..=hi {
            let source = &layout[&n];
            let target = &layout[&(n - 1)];
            let find = |blocks: &Vec<Block>, p: usize, q: usize| {
                blocks.iter().find(|b| b.p == p && b.q == q).copied()
            };
            let mut triplets = Vec::new();
            let d_prime_coeff = field.neg(field.sign(n.rem_euclid(2) as usize));
            for t in target {
                if let (Some(s), Some(m)) = (find(source, t.p, t.q + 1), seg.d_second(t.p, t.q + 1))
                {
                    triplets.extend(
                        m.triplets()
                            .map(|(r, c, v)| (t.offset + r, s.offset + c, v)),
                    );
                }
                if t.p >= 1 {
                    if let (Some(s), Some(m)) = (find(source, t.p - 1, t.q), seg.d_prime(t.p, t.q))
                    {
                        triplets.extend(m.triplets().map(|(r, c, v)| {
                            (t.offset + r, s.offset + c, field.mul(v, d_prime_coeff))
                        }));
                    }
                }
            }
            boundaries.push(
                SparseMatrix::from_triplets(field, size(target), size(source), triplets)
                    .expect("blocks fit"),
            );
        }
        let complex = ComplexSegment::new(field, lo, ranks, boundaries)
            .expect("shapes agree by construction");
        DiagSegment { complex, layout }
    }

    pub fn complex(&self) -> &ComplexSegment {
        &self.complex
    }

    pub fn blocks(&self, n: i64) -> &[Block] {
        self.layout.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn block(&self, p: usize, q: usize) -> Option<Block> {
        self.blocks(q as i64 - p as i64)
            .iter()
            .find(|b| b.p == p && b.q == q)
            .copied()
    }
}
