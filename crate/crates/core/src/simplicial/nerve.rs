use itertools::Itertools;

use super::{SimplicialError, SimplicialMap, Space};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl Group {
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, SimplicialError> {
        let n = table.len();
        let err = |m: &str| Err(SimplicialError::Group(m.to_string()));
        if n == 0 {
            return err("empty table");
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&v| v >= n))
        {
            return err("table is not closed");
        }
        for (a, b, c) in (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .map(|((a, b), c)| (a, b, c))
        {
            if table[table[a][b]][c] != table[a][table[b][c]] {
                return Err(SimplicialError::Group(format!(
                    "not associative at ({a}, {b}, {c})"
                )));
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        else {
            return err("no identity element");
        };
        if (0..n).any(|a| !(0..n).any(|b| table[a][b] == identity)) {
            return err("missing inverses");
        }
        Ok(Group {
            name: name.into(),
            table,
            identity,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Group::new(format!("Z/{n}"), table).expect("cyclic groups are groups")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// All group homomorphisms into `other`, as value tables.
    pub fn homomorphisms(&self, other: &Group) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|_| 0..other.order())
            .multi_cartesian_product()
            .filter(|phi| {
                (0..self.order())
                    .cartesian_product(0..self.order())
                    .all(|(a, b)| phi[self.mul(a, b)] == other.mul(phi[a], phi[b]))
            })
            .collect()
    }
}

/// The nerve `BG`: an `n`-simplex is a word `(g_1, ..., g_n)`.
///
/// `d_0` drops `g_1`, `d_n` drops `g_n`, inner faces multiply neighbours,
/// `s_j` inserts the identity. Nerves of groups are Kan complexes.
#[derive(Clone, Debug)]
pub struct Nerve {
    group: Group,
}

impl Nerve {
    pub fn new(group: Group) -> Self {
        Nerve { group }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
}

impl Space for Nerve {
    type Simplex = Vec<usize>;

    fn degree(&self, x: &Vec<usize>) -> usize {
        x.len()
    }

    fn basepoint(&self, n: usize) -> Vec<usize> {
        vec![self.group.identity; n]
    }

    fn face(&self, x: &Vec<usize>, i: usize) -> Vec<usize> {
        let n = x.len();
        assert!(n > 0 && i <= n);
        let mut y = x.clone();
        if i == 0 {
            y.remove(0);
        } else if i == n {
            y.pop();
        } else {
            let prod = self.group.mul(y[i - 1], y[i]);
            y[i - 1] = prod;
            y.remove(i);
        }
        y
    }

    fn degeneracy(&self, x: &Vec<usize>, j: usize) -> Vec<usize> {
        assert!(j <= x.len());
        let mut y = x.clone();
        y.insert(j, self.group.identity);
        y
    }

    fn simplices(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut all: Vec<Vec<usize>> = (0..n)
            .map(|_| 0..self.group.order())
            .multi_cartesian_product()
            .collect();
        all.sort();
        all
    }
}

/// The nerve of a homomorphism: applied letterwise.
#[derive(Clone, Debug)]
pub struct NerveHom {
    values: Vec<usize>,
}

impl NerveHom {
    pub fn new(
        source: &Group,
        target: &Group,
        values: Vec<usize>,
    ) -> Result<Self, SimplicialError> {
        if values.len() != source.order() || values.iter().any(|&v| v >= target.order()) {
            return Err(SimplicialError::Map(
                "homomorphism table has the wrong shape".into(),
            ));
        }
        let ok = (0..source.order())
            .cartesian_product(0..source.order())
            .all(|(a, b)| values[source.mul(a, b)] == target.mul(values[a], values[b]));
        if !ok {
            return Err(SimplicialError::Map("not a homomorphism".into()));
        }
        Ok(NerveHom { values })
    }

    /// Every pointed map `BG -> BH` (they are exactly nerves of homomorphisms).
    pub fn all(source: &Group, target: &Group) -> Vec<NerveHom> {
        source
            .homomorphisms(target)
            .into_iter()
            .map(|values| NerveHom { values })
            .collect()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

impl SimplicialMap<Nerve, Nerve> for NerveHom {
    fn apply(&self, x: &Vec<usize>) -> Vec<usize> {
        x.iter().map(|&g| self.values[g]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::check_simplicial_identities;

    #[test]
    fn nerve_counts() {
        let b = Nerve::new(Group::cyclic(2));
        for n in 0..5 {
            assert_eq!(b.simplices(n).len(), 1 << n);
        }
        check_simplicial_identities(&b, 4).unwrap();
        check_simplicial_identities(&Nerve::new(Group::cyclic(3)), 3).unwrap();
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(Group::new("x", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(Group::new("x", vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(Group::new("x", vec![]).is_err());
    }

    #[test]
    fn homomorphisms_of_small_cyclic_groups() {
        assert_eq!(Group::cyclic(2).homomorphisms(&Group::cyclic(2)).len(), 2);
        assert_eq!(Group::cyclic(2).homomorphisms(&Group::cyclic(3)).len(), 1);
        assert!(NerveHom::new(&Group::cyclic(2), &Group::cyclic(2), vec![1, 1]).is_err());
    }
}
