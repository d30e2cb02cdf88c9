//! Brute-force model of the pointed mapping space `Y^X` for compact `X`.
//!
//! An `m`-simplex of `Y^X` is a pointed map `X ∧ Δ^m_+ -> Y`. Such a map is
//! stored as a table of values on the nondegenerate simplices `(x, α)` of
//! `X × Δ^m` with `x` off the basepoint; every other simplex is a
//! degeneracy of one of those. Simplices of every degree are kept in
//! Eilenberg-Zilber normal form: a nondegenerate enumerated map together with
//! a monotone surjection `[n] -> [m]`.

use std::collections::HashMap;

use itertools::Itertools;

use super::{
    apply_degeneracies, PointedMap, Presentation, Simplex, SimplicialError, SimplicialMap, Space,
};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// A nondegenerate simplex of `Δ^m × X` away from the basepoint: `x ∈ X_k`
/// and a monotone map `α: [k] -> [m]`.
type Pair = (Simplex, Vec<usize>);

/// Normal form of a simplex of `Y^X`: `level` and `index` name a
/// nondegenerate enumerated map of degree `level`; `op` is a monotone
/// surjection `[n] -> [level]` (so the simplex is `z ∘ (id ∧ op)`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MapSimplex {
    pub level: usize,
    pub index: usize,
    pub op: Vec<usize>,
}

struct Level<T> {
    pairs: Vec<Pair>,
    pair_index: HashMap<Pair, usize>,
    maps: Vec<Vec<T>>,
    map_index: HashMap<Vec<T>, usize>,
    canonical: Vec<MapSimplex>,
    nondeg: Vec<usize>,
    faces: Vec<Vec<MapSimplex>>,
}

/// The mapping space `Y^X`, materialized up to a degree bound.
pub struct MapSpace<'a, Y: Space> {
    source: &'a Presentation,
    target: &'a Y,
    levels: Vec<Level<Y::Simplex>>,
    base_index: usize,
}

fn degeneracies_of_op(alpha: &[usize]) -> Vec<usize> {
    (0..alpha.len().saturating_sub(1))
        .filter(|&j| alpha[j] == alpha[j + 1])
        .collect()
}

fn drop_index(v: &[usize], i: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    w.remove(i);
    w
}

/// Monotone surjections `[n] -> [m]`.
fn surjections(n: usize, m: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .combinations(m)
        .map(|jumps| {
            (0..=n)
                .map(|t| jumps.iter().filter(|&&j| j <= t).count())
                .collect()
        })
        .collect()
}

impl<'a, Y: Space> MapSpace<'a, Y> {
    /// Enumerates `(Y^X)_m` for `m <= max_degree`. The search visits at most
    /// `budget` candidate assignments in total.
    pub fn new(
        source: &'a Presentation,
        target: &'a Y,
        max_degree: usize,
        budget: u64,
    ) -> Result<Self, SimplicialError> {
        let mut space = MapSpace {
            source,
            target,
            levels: Vec::new(),
            base_index: 0,
        };
        let top = source.dim() + max_degree;
        let mut by_faces: Vec<HashMap<Vec<Y::Simplex>, Vec<Y::Simplex>>> = Vec::new();
        for k in 0..=top {
            let mut index: HashMap<Vec<Y::Simplex>, Vec<Y::Simplex>> = HashMap::new();
            for y in target.simplices(k) {
                let key = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k).map(|i| target.face(&y, i)).collect()
                };
                index.entry(key).or_default().push(y);
            }
            by_faces.push(index);
        }
        let mut nodes = 0u64;
        for m in 0..=max_degree {
            let level = space.enumerate_level(m, &by_faces, &mut nodes, budget)?;
            space.levels.push(level);
            space.classify_level(m)?;
        }
        let level0 = &space.levels[0];
        let constant: Vec<Y::Simplex> = level0
            .pairs
            .iter()
            .map(|(x, _)| target.basepoint(source.degree(x)))
            .collect();
        space.base_index = level0.map_index[&constant];
        Ok(space)
    }

    pub fn source(&self) -> &'a Presentation {
        self.source
    }

    pub fn target(&self) -> &'a Y {
        self.target
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    /// Number of enumerated maps `X ∧ Δ^m_+ -> Y`, i.e. `|(Y^X)_m|`.
    pub fn count(&self, m: usize) -> usize {
        self.levels[m].maps.len()
    }

    fn pairs_for(&self, m: usize) -> Vec<Pair> {
        let mut pairs = Vec::new();
        for k in 0..=self.source.dim() + m {
            for x in self.source.nonbase_simplices(k) {
                for alpha in (0..=m).combinations_with_replacement(k + 1) {
                    let dx = &x.degens;
                    if degeneracies_of_op(&alpha).iter().all(|j| !dx.contains(j)) {
                        pairs.push((x.clone(), alpha));
                    }
                }
            }
        }
        pairs
    }

    /// Value of a level-`m` table at an arbitrary simplex `(x, α)`.
    /// `lookup` returns the table entry for a nondegenerate pair.
    fn eval_with<'t>(
        &self,
        pair_index: &HashMap<Pair, usize>,
        lookup: impl Fn(usize) -> Option<&'t Y::Simplex>,
        x: &Simplex,
        alpha: &[usize],
    ) -> Option<Y::Simplex>
    where
        Y::Simplex: 't,
    {
        let k = self.source.degree(x);
        if self.source.is_basepoint(x) {
            return Some(self.target.basepoint(k));
        }
        let mut word = Vec::new();
        let mut x = x.clone();
        let mut alpha = alpha.to_vec();
        loop {
            let da = degeneracies_of_op(&alpha);
            let common = x.degens.iter().copied().filter(|j| da.contains(j)).max();
            match common {
                Some(j) => {
                    word.push(j);
                    x = self.source.face(&x, j);
                    alpha = drop_index(&alpha, j);
                }
                None => break,
            }
        }
        let idx = pair_index[&(x, alpha)];
        let value = lookup(idx)?;
        Some(apply_degeneracies(self.target, value, &word))
    }

    fn eval_table(
        &self,
        m: usize,
        table: &[Y::Simplex],
        x: &Simplex,
        alpha: &[usize],
    ) -> Y::Simplex {
        self.eval_with(&self.levels[m].pair_index, |i| table.get(i), x, alpha)
            .expect("complete table")
    }

    fn enumerate_level(
        &self,
        m: usize,
        by_faces: &[HashMap<Vec<Y::Simplex>, Vec<Y::Simplex>>],
        nodes: &mut u64,
        budget: u64,
    ) -> Result<Level<Y::Simplex>, SimplicialError> {
        let pairs = self.pairs_for(m);
        let pair_index: HashMap<Pair, usize> = pairs
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut assign: Vec<Option<Y::Simplex>> = vec![None; pairs.len()];
        let mut maps = Vec::new();
        self.search(
            0,
            &pairs,
            &pair_index,
            by_faces,
            &mut assign,
            &mut maps,
            nodes,
            budget,
        )?;
        maps.sort();
        let map_index = maps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        Ok(Level {
            pairs,
            pair_index,
            maps,
            map_index,
            canonical: Vec::new(),
            nondeg: Vec::new(),
            faces: Vec::new(),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        idx: usize,
        pairs: &[Pair],
        pair_index: &HashMap<Pair, usize>,
        by_faces: &[HashMap<Vec<Y::Simplex>, Vec<Y::Simplex>>],
        assign: &mut Vec<Option<Y::Simplex>>,
        out: &mut Vec<Vec<Y::Simplex>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<(), SimplicialError> {
        if idx == pairs.len() {
            out.push(
                assign
                    .iter()
                    .map(|v| v.clone().expect("assigned"))
                    .collect(),
            );
            return Ok(());
        }
        let (x, alpha) = &pairs[idx];
        let k = self.source.degree(x);
        let key: Vec<Y::Simplex> = if k == 0 {
            Vec::new()
        } else {
            (0..=k)
                .map(|i| {
                    let fx = self.source.face(x, i);
                    let fa = drop_index(alpha, i);
                    self.eval_with(pair_index, |j| assign[j].as_ref(), &fx, &fa)
                        .expect("faces come first")
                })
                .collect()
        };
        let Some(candidates) = by_faces[k].get(&key) else {
            return Ok(());
        };
        for c in candidates {
            *nodes += 1;
            if *nodes > budget {
                return Err(SimplicialError::Budget { budget });
            }
            assign[idx] = Some(c.clone());
            self.search(
                idx + 1,
                pairs,
                pair_index,
                by_faces,
                assign,
                out,
                nodes,
                budget,
            )?;
        }
        assign[idx] = None;
        Ok(())
    }

    /// Table of `d_i z` for a level-`m` table `z`.
    fn face_table(&self, m: usize, z: &[Y::Simplex], i: usize) -> Vec<Y::Simplex> {
        self.levels[m - 1]
            .pairs
            .iter()
            .map(|(x, beta)| {
                let shifted: Vec<usize> = beta
                    .iter()
                    .map(|&v| if v >= i { v + 1 } else { v })
                    .collect();
                self.eval_table(m, z, x, &shifted)
            })
            .collect()
    }

    /// Table of `s_j w` for a level-`(m-1)` table `w`.
    fn degeneracy_table(&self, m: usize, w: &[Y::Simplex], j: usize) -> Vec<Y::Simplex> {
        self.levels[m]
            .pairs
            .iter()
            .map(|(x, alpha)| {
                let squeezed: Vec<usize> = alpha
                    .iter()
                    .map(|&v| if v > j { v - 1 } else { v })
                    .collect();
                self.eval_table(m - 1, w, x, &squeezed)
            })
            .collect()
    }

    fn classify_level(&mut self, m: usize) -> Result<(), SimplicialError> {
        let count = self.levels[m].maps.len();
        let mut canonical = Vec::with_capacity(count);
        let mut nondeg = Vec::new();
        let mut faces = Vec::with_capacity(count);
        for idx in 0..count {
            let z = self.levels[m].maps[idx].clone();
            let mut face_forms = Vec::new();
            let mut canon = None;
            if m > 0 {
                for i in 0..=m {
                    let t = self.face_table(m, &z, i);
                    let Some(&fi) = self.levels[m - 1].map_index.get(&t) else {
                        return Err(SimplicialError::Map(format!(
                            "face d_{i} of an enumerated {m}-simplex is missing"
                        )));
                    };
                    face_forms.push(self.levels[m - 1].canonical[fi].clone());
                }
                for j in 0..m {
                    if canon.is_some() {
                        break;
                    }
                    let w = self.face_table(m, &z, j);
                    if self.degeneracy_table(m, &w, j) == z {
                        let inner = &face_forms[j];
                        let op = (0..=m)
                            .map(|t| inner.op[if t > j { t - 1 } else { t }])
                            .collect();
                        canon = Some(MapSimplex {
                            level: inner.level,
                            index: inner.index,
                            op,
                        });
                    }
                }
            }
            let canon = canon.unwrap_or_else(|| {
                nondeg.push(idx);
                MapSimplex {
                    level: m,
                    index: idx,
                    op: (0..=m).collect(),
                }
            });
            canonical.push(canon);
            faces.push(face_forms);
        }
        let level = &mut self.levels[m];
        level.canonical = canonical;
        level.nondeg = nondeg;
        level.faces = faces;
        Ok(())
    }

    /// `f(x ∧ ι_n)` for `f ∈ (Y^X)_n` and `x ∈ X_n`.
    pub fn evaluate(&self, f: &MapSimplex, x: &Simplex) -> Y::Simplex {
        assert_eq!(
            self.source.degree(x),
            f.op.len() - 1,
            "evaluation needs equal degrees"
        );
        self.eval_table(f.level, &self.levels[f.level].maps[f.index], x, &f.op)
    }

    /// The pointed map `X -> Y` of a 0-simplex.
    pub fn as_pointed_map(&self, f: &MapSimplex) -> PointedMap<'a, Y> {
        assert_eq!(f.op.len(), 1, "only 0-simplices are maps X -> Y");
        let images = self
            .source
            .generators()
            .iter()
            .enumerate()
            .map(|(g, gen)| {
                let fd = MapSimplex {
                    level: f.level,
                    index: f.index,
                    op: vec![f.op[0]; gen.dim + 1],
                };
                self.evaluate(&fd, &Simplex::generator(g))
            })
            .collect();
        PointedMap::new(self.source, self.target, images).expect("enumerated maps are simplicial")
    }

    /// The 0-simplex given by generator images, if it is an enumerated map.
    pub fn find_degree0(&self, images: &[Y::Simplex]) -> Option<MapSimplex> {
        let level = &self.levels[0];
        let table: Vec<Y::Simplex> = level
            .pairs
            .iter()
            .map(|(x, _)| images[x.gen].clone())
            .collect();
        level
            .map_index
            .get(&table)
            .map(|&i| level.canonical[i].clone())
    }
}

impl<'a, Y: Space> Space for MapSpace<'a, Y> {
    type Simplex = MapSimplex;

    fn degree(&self, f: &MapSimplex) -> usize {
        f.op.len() - 1
    }

    fn basepoint(&self, n: usize) -> MapSimplex {
        MapSimplex {
            level: 0,
            index: self.base_index,
            op: vec![0; n + 1],
        }
    }

    fn is_basepoint(&self, f: &MapSimplex) -> bool {
        f.level == 0 && f.index == self.base_index
    }

    fn face(&self, f: &MapSimplex, i: usize) -> MapSimplex {
        let n = f.op.len() - 1;
        assert!(n > 0 && i <= n);
        let op = drop_index(&f.op, i);
        match (0..=f.level).find(|v| !op.contains(v)) {
            None => MapSimplex {
                level: f.level,
                index: f.index,
                op,
            },
            Some(c) => {
                let squeezed: Vec<usize> =
                    op.iter().map(|&v| if v > c { v - 1 } else { v }).collect();
                let inner = &self.levels[f.level].faces[f.index][c];
                MapSimplex {
                    level: inner.level,
                    index: inner.index,
                    op: squeezed.iter().map(|&t| inner.op[t]).collect(),
                }
            }
        }
    }

    fn degeneracy(&self, f: &MapSimplex, j: usize) -> MapSimplex {
        let mut op = f.op.clone();
        op.insert(j, op[j]);
        MapSimplex {
            level: f.level,
            index: f.index,
            op,
        }
    }

    fn simplices(&self, n: usize) -> Vec<MapSimplex> {
        assert!(n <= self.max_degree(), "(Y^X)_{n} was not enumerated");
        let mut out = Vec::new();
        for (level, data) in self.levels.iter().enumerate().take(n + 1) {
            for op in surjections(n, level) {
                for &index in &data.nondeg {
                    out.push(MapSimplex {
                        level,
                        index,
                        op: op.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }
}

/// Spaces whose simplices evaluate on simplices of a source space:
/// `η(f, x) = f(x ∧ ι_n)` for `f` and `x` of degree `n`.
pub trait Evaluation: Space {
    type Source: Space;
    type Target: Space;

    fn source_space(&self) -> &Self::Source;
    fn target_space(&self) -> &Self::Target;
    fn evaluate_at(
        &self,
        f: &Self::Simplex,
        x: &<Self::Source as Space>::Simplex,
    ) -> <Self::Target as Space>::Simplex;
}

impl<'a, Y: Space> Evaluation for MapSpace<'a, Y> {
    type Source = Presentation;
    type Target = Y;

    fn source_space(&self) -> &Presentation {
        self.source
    }

    fn target_space(&self) -> &Y {
        self.target
    }

    fn evaluate_at(&self, f: &MapSimplex, x: &Simplex) -> Y::Simplex {
        self.evaluate(f, x)
    }
}

/// The discrete subspace of `B^A` spanned by a finite list of pointed maps
/// (all simplices constant in the `Δ` direction). The first map must be the
/// constant map.
pub struct DiscreteMaps<'a, A: Space, B: Space, M: SimplicialMap<A, B>> {
    source: &'a A,
    target: &'a B,
    maps: Vec<M>,
}

impl<'a, A: Space, B: Space, M: SimplicialMap<A, B>> DiscreteMaps<'a, A, B, M> {
    pub fn new(source: &'a A, target: &'a B, maps: Vec<M>) -> Self {
        assert!(!maps.is_empty());
        DiscreteMaps {
            source,
            target,
            maps,
        }
    }

    pub fn maps(&self) -> &[M] {
        &self.maps
    }
}

impl<'a, A: Space, B: Space, M: SimplicialMap<A, B>> Space for DiscreteMaps<'a, A, B, M> {
    /// `(map index, degree)`
    type Simplex = (usize, usize);

    fn degree(&self, x: &(usize, usize)) -> usize {
        x.1
    }

    fn basepoint(&self, n: usize) -> (usize, usize) {
        (0, n)
    }

    fn face(&self, x: &(usize, usize), _i: usize) -> (usize, usize) {
        (x.0, x.1 - 1)
    }

    fn degeneracy(&self, x: &(usize, usize), _j: usize) -> (usize, usize) {
        (x.0, x.1 + 1)
    }

    fn simplices(&self, n: usize) -> Vec<(usize, usize)> {
        (0..self.maps.len()).map(|i| (i, n)).collect()
    }
}

impl<'a, A: Space, B: Space, M: SimplicialMap<A, B>> Evaluation for DiscreteMaps<'a, A, B, M> {
    type Source = A;
    type Target = B;

    fn source_space(&self) -> &A {
        self.source
    }

    fn target_space(&self) -> &B {
        self.target
    }

    fn evaluate_at(&self, f: &(usize, usize), x: &A::Simplex) -> B::Simplex {
        self.maps[f.0].apply(x)
    }
}
