use std::collections::HashMap;
use std::fmt::Write as _;

use itertools::Itertools;

use super::{apply_degeneracies, apply_operator, SimplicialError, SimplicialMap, Space};

/// A simplex of a presented space: a generator with a degeneracy word in
/// normal form. `degens` is strictly decreasing and is applied as
/// `s_{degens[0]} ... s_{degens[k-1]} gen`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub gen: usize,
    pub degens: Vec<usize>,
}

impl Simplex {
    pub fn generator(gen: usize) -> Self {
        Simplex {
            gen,
            degens: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub dim: usize,
    /// `dim + 1` faces for `dim >= 1`, none for vertices.
    pub faces: Vec<Simplex>,
}

/// A finite pointed simplicial set given by nondegenerate generators and
/// their faces. Generator ids are positions in `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    generators: Vec<Generator>,
    basepoint: usize,
}

/// Insert `s_j` into a normal-form word (`s_j s_i = s_{i+1} s_j` for `j <= i`).
fn push_degeneracy(word: &[usize], j: usize) -> Vec<usize> {
    let mut out: Vec<usize> = word
        .iter()
        .map(|&i| if i >= j { i + 1 } else { i })
        .collect();
    let pos = out.iter().position(|&i| i < j).unwrap_or(out.len());
    out.insert(pos, j);
    out
}

fn word_is_normal(word: &[usize], base_dim: usize) -> bool {
    // Innermost s_{j_1} acts on degree base_dim, so j_t <= base_dim + t - 1.
    word.windows(2).all(|w| w[0] > w[1])
        && word
            .iter()
            .rev()
            .enumerate()
            .all(|(t, &j)| j <= base_dim + t)
}

impl Presentation {
    /// Validates face references, degrees, normal forms and the identities
    /// `d_i d_j = d_{j-1} d_i` (`i < j`) on every generator.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        basepoint: usize,
    ) -> Result<Self, SimplicialError> {
        let name = name.into();
        let bad = |m: String| Err(SimplicialError::Malformed(m));
        match generators.get(basepoint) {
            Some(g) if g.dim == 0 => {}
            _ => return bad(format!("basepoint {basepoint} is not a vertex generator")),
        }
        for (id, g) in generators.iter().enumerate() {
            let expected = if g.dim == 0 { 0 } else { g.dim + 1 };
            if g.faces.len() != expected {
                return bad(format!(
                    "generator {id} of dim {} has {} faces",
                    g.dim,
                    g.faces.len()
                ));
            }
            for f in &g.faces {
                let Some(target) = generators.get(f.gen) else {
                    return bad(format!(
                        "generator {id} refers to missing generator {}",
                        f.gen
                    ));
                };
                if target.dim + f.degens.len() + 1 != g.dim {
                    return bad(format!("face {f:?} of generator {id} has the wrong degree"));
                }
                if !word_is_normal(&f.degens, target.dim) {
                    return bad(format!(
                        "face {f:?} of generator {id} is not in normal form"
                    ));
                }
            }
        }
        let p = Presentation {
            name,
            generators,
            basepoint,
        };
        for (id, g) in p.generators.iter().enumerate() {
            for j in 1..g.faces.len() {
                for i in 0..j {
                    if g.dim >= 2 && p.face(&g.faces[j], i) != p.face(&g.faces[i], j - 1) {
                        return Err(SimplicialError::Identity {
                            generator: id.to_string(),
                            i,
                            j,
                        });
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn basepoint_generator(&self) -> usize {
        self.basepoint
    }

    pub fn dim(&self) -> usize {
        self.generators.iter().map(|g| g.dim).max().unwrap_or(0)
    }

    /// Non-basepoint generators, each as a simplex.
    pub fn nondegenerate(&self, n: usize) -> Vec<Simplex> {
        (0..self.generators.len())
            .filter(|&g| g != self.basepoint && self.generators[g].dim == n)
            .map(Simplex::generator)
            .collect()
    }

    /// The trivial space: the basepoint alone.
    pub fn point() -> Self {
        Presentation::new(
            "point",
            vec![Generator {
                dim: 0,
                faces: vec![],
            }],
            0,
        )
        .expect("valid")
    }

    /// `S^0`: basepoint plus one vertex.
    pub fn s0() -> Self {
        Presentation::new(
            "S0",
            vec![
                Generator {
                    dim: 0,
                    faces: vec![]
                };
                2
            ],
            0,
        )
        .expect("valid")
    }

    /// `Delta^n / boundary`, one generator in dimensions 0 and `n`.
    pub fn sphere_min(n: usize) -> Self {
        if n == 0 {
            return Presentation::s0();
        }
        let base_face = Simplex {
            gen: 0,
            degens: (0..n - 1).rev().collect(),
        };
        let gens = vec![
            Generator {
                dim: 0,
                faces: vec![],
            },
            Generator {
                dim: n,
                faces: vec![base_face; n + 1],
            },
        ];
        Presentation::new(format!("S{n}"), gens, 0).expect("valid")
    }

    /// Boundary of a triangle: vertices `v0` (basepoint), `v1`, `v2` and
    /// edges `v0v1`, `v1v2`, `v0v2`.
    pub fn circle3() -> Self {
        let v = |g| Simplex::generator(g);
        let gens = vec![
            Generator {
                dim: 0,
                faces: vec![],
            },
            Generator {
                dim: 0,
                faces: vec![],
            },
            Generator {
                dim: 0,
                faces: vec![],
            },
            Generator {
                dim: 1,
                faces: vec![v(1), v(0)],
            },
            Generator {
                dim: 1,
                faces: vec![v(2), v(1)],
            },
            Generator {
                dim: 1,
                faces: vec![v(2), v(0)],
            },
        ];
        Presentation::new("circle3", gens, 0).expect("valid")
    }

    pub fn delta_plus(p: usize) -> Self {
        StandardSimplex::new(p).presentation
    }

    /// Text interchange format:
    ///
    /// ```text
    /// simplicial-set v1
    /// name S1
    /// basepoint 0
    /// gen 0 0
    /// gen 1 1 0:- 0:-
    /// ```
    ///
    /// Each `gen` line is `gen <id> <dim> <faces...>`; a face is
    /// `<generator>:<word>` with the degeneracy word comma-separated,
    /// outermost first, or `-` when empty.
    pub fn to_file(&self) -> String {
        let mut out = String::from("simplicial-set v1\n");
        writeln!(out, "name {}", self.name).unwrap();
        writeln!(out, "basepoint {}", self.basepoint).unwrap();
        for (id, g) in self.generators.iter().enumerate() {
            write!(out, "gen {id} {}", g.dim).unwrap();
            for f in &g.faces {
                let word = if f.degens.is_empty() {
                    "-".to_string()
                } else {
                    f.degens.iter().join(",")
                };
                write!(out, " {}:{word}", f.gen).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_file(text: &str) -> Result<Self, SimplicialError> {
        let perr = |line: usize, message: String| SimplicialError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| perr(0, format!("missing {what}")))
        };
        let (ln, header) = next("header")?;
        if header.trim() != "simplicial-set v1" {
            return Err(perr(ln + 1, format!("unknown header `{header}`")));
        }
        let (ln, name_line) = next("name")?;
        let name = name_line
            .strip_prefix("name ")
            .ok_or_else(|| perr(ln + 1, "expected `name`".into()))?;
        let (ln, bp_line) = next("basepoint")?;
        let basepoint = bp_line
            .strip_prefix("basepoint ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| perr(ln + 1, "expected `basepoint <id>`".into()))?;
        let mut generators = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| perr(ln + 1, format!("`{s}`: {e}")))
            };
            if toks.len() < 3 || toks[0] != "gen" {
                return Err(perr(
                    ln + 1,
                    format!("expected `gen <id> <dim> ...`, got `{line}`"),
                ));
            }
            if num(toks[1])? != generators.len() {
                return Err(perr(
                    ln + 1,
                    "generator ids must be consecutive from 0".into(),
                ));
            }
            let dim = num(toks[2])?;
            let mut faces = Vec::new();
            for tok in &toks[3..] {
                let (g, w) = tok
                    .split_once(':')
                    .ok_or_else(|| perr(ln + 1, format!("bad face `{tok}`")))?;
                let degens = if w == "-" {
                    Vec::new()
                } else {
                    w.split(',').map(num).collect::<Result<_, _>>()?
                };
                faces.push(Simplex {
                    gen: num(g)?,
                    degens,
                });
            }
            generators.push(Generator { dim, faces });
        }
        Presentation::new(name, generators, basepoint)
    }
}

impl Space for Presentation {
    type Simplex = Simplex;

    fn degree(&self, x: &Simplex) -> usize {
        self.generators[x.gen].dim + x.degens.len()
    }

    fn basepoint(&self, n: usize) -> Simplex {
        Simplex {
            gen: self.basepoint,
            degens: (0..n).rev().collect(),
        }
    }

    fn is_basepoint(&self, x: &Simplex) -> bool {
        x.gen == self.basepoint
    }

    fn face(&self, x: &Simplex, i: usize) -> Simplex {
        let n = self.degree(x);
        assert!(n > 0 && i <= n, "face d_{i} of a degree-{n} simplex");
        let mut i = i;
        let mut outer = Vec::new();
        for (pos, &j) in x.degens.iter().enumerate() {
            if i < j {
                outer.push(j - 1);
            } else if i == j || i == j + 1 {
                let inner = Simplex {
                    gen: x.gen,
                    degens: x.degens[pos + 1..].to_vec(),
                };
                return apply_degeneracies(self, &inner, &outer);
            } else {
                outer.push(j);
                i -= 1;
            }
        }
        let inner = self.generators[x.gen].faces[i].clone();
        apply_degeneracies(self, &inner, &outer)
    }

    fn degeneracy(&self, x: &Simplex, j: usize) -> Simplex {
        assert!(j <= self.degree(x));
        Simplex {
            gen: x.gen,
            degens: push_degeneracy(&x.degens, j),
        }
    }

    fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (gen, g) in self.generators.iter().enumerate() {
            if g.dim > n {
                continue;
            }
            for word in (0..n).combinations(n - g.dim) {
                out.push(Simplex {
                    gen,
                    degens: word.into_iter().rev().collect(),
                });
            }
        }
        out.sort();
        out
    }
}

/// `Delta^p_+` together with the vertex set of each generator.
#[derive(Clone, Debug)]
pub struct StandardSimplex {
    p: usize,
    presentation: Presentation,
    vertices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl StandardSimplex {
    pub fn new(p: usize) -> Self {
        // Generator 0 is the added basepoint; then faces of Delta^p by (dim, lex).
        let mut vertices: Vec<Vec<usize>> = vec![Vec::new()];
        for k in 0..=p {
            vertices.extend((0..=p).combinations(k + 1));
        }
        let index: HashMap<Vec<usize>, usize> = vertices
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let generators = vertices
            .iter()
            .enumerate()
            .map(|(id, v)| {
                if id == 0 || v.len() == 1 {
                    return Generator {
                        dim: 0,
                        faces: vec![],
                    };
                }
                let faces = (0..v.len())
                    .map(|i| {
                        let mut w = v.clone();
                        w.remove(i);
                        Simplex::generator(index[&w])
                    })
                    .collect();
                Generator {
                    dim: v.len() - 1,
                    faces,
                }
            })
            .collect();
        let presentation = Presentation::new(format!("Delta{p}+"), generators, 0).expect("valid");
        StandardSimplex {
            p,
            presentation,
            vertices,
            index,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// The fundamental simplex `iota_p`.
    pub fn fundamental(&self) -> Simplex {
        Simplex::generator(self.index[&(0..=self.p).collect::<Vec<_>>()])
    }

    /// The monotone map `[k] -> [p]` of a non-basepoint simplex.
    pub fn as_operator(&self, x: &Simplex) -> Vec<usize> {
        assert!(x.gen != 0, "basepoint has no vertices");
        let verts = &self.vertices[x.gen];
        let mut op: Vec<usize> = verts.clone();
        for &j in x.degens.iter().rev() {
            op.insert(j, op[j]);
        }
        op
    }
}

/// A pointed map out of a presentation, given on generators.
#[derive(Clone, Debug)]
pub struct PointedMap<'a, Y: Space> {
    source: &'a Presentation,
    target: &'a Y,
    images: Vec<Y::Simplex>,
}

impl<'a, Y: Space> PointedMap<'a, Y> {
    /// Checks degrees, face compatibility on every generator and that the
    /// basepoint goes to the basepoint.
    pub fn new(
        source: &'a Presentation,
        target: &'a Y,
        images: Vec<Y::Simplex>,
    ) -> Result<Self, SimplicialError> {
        if images.len() != source.generators.len() {
            return Err(SimplicialError::Map(format!(
                "{} images for {} generators",
                images.len(),
                source.generators.len()
            )));
        }
        if !target.is_basepoint(&images[source.basepoint]) {
            return Err(SimplicialError::Map("basepoint not preserved".into()));
        }
        let m = PointedMap {
            source,
            target,
            images,
        };
        for (id, g) in source.generators.iter().enumerate() {
            if target.degree(&m.images[id]) != g.dim {
                return Err(SimplicialError::Map(format!(
                    "generator {id} sent to wrong degree"
                )));
            }
            for (i, f) in g.faces.iter().enumerate() {
                if target.face(&m.images[id], i) != m.apply(f) {
                    return Err(SimplicialError::Map(format!(
                        "d_{i} not preserved on generator {id}"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(space: &'a Presentation) -> PointedMap<'a, Presentation> {
        let images = (0..space.generators.len())
            .map(Simplex::generator)
            .collect();
        PointedMap {
            source: space,
            target: space,
            images,
        }
    }

    pub fn source(&self) -> &'a Presentation {
        self.source
    }

    pub fn target(&self) -> &'a Y {
        self.target
    }

    pub fn images(&self) -> &[Y::Simplex] {
        &self.images
    }

    pub fn apply(&self, x: &Simplex) -> Y::Simplex {
        apply_degeneracies(self.target, &self.images[x.gen], &x.degens)
    }
}

impl<'a, Y: Space> SimplicialMap<Presentation, Y> for PointedMap<'a, Y> {
    fn apply(&self, x: &Simplex) -> Y::Simplex {
        PointedMap::apply(self, x)
    }
}

/// The characteristic map `Delta^p_+ -> X` of a degree-`p` simplex `x`.
pub fn characteristic_map<'a, X: Space>(
    delta: &'a StandardSimplex,
    target: &'a X,
    x: &X::Simplex,
) -> PointedMap<'a, X> {
    assert_eq!(
        target.degree(x),
        delta.p,
        "simplex degree must match Delta^p"
    );
    let images = delta
        .vertices
        .iter()
        .enumerate()
        .map(|(id, verts)| {
            if id == 0 {
                target.basepoint(0)
            } else {
                apply_operator(target, x, verts)
            }
        })
        .collect();
    PointedMap {
        source: &delta.presentation,
        target,
        images,
    }
}
