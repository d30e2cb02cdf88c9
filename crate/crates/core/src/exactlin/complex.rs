use serde::Serialize;

use super::{LinError, PrimeField, SparseMatrix};

/// A finite window `[n_min, n_max]` of a chain complex.
///
/// `boundary(n)` maps degree `n` to degree `n - 1` and exists for
/// `n_min < n <= n_max`.
#[derive(Clone, Debug)]
pub struct ComplexSegment {
    field: PrimeField,
    n_min: i64,
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ComplexSegment {
    /// `ranks[k]` is the basis size in degree `n_min + k`; `boundaries[k]`
    /// is the boundary out of degree `n_min + k + 1`.
    pub fn new(
        field: PrimeField,
        n_min: i64,
        ranks: Vec<usize>,
        boundaries: Vec<SparseMatrix>,
    ) -> Result<Self, LinError> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(LinError::Malformed(format!(
                "{} ranks need {} boundaries, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.cols() != ranks[k + 1] || b.rows() != ranks[k] {
                return Err(LinError::Malformed(format!(
                    "boundary out of degree {} has shape {}x{}, expected {}x{}",
                    n_min + k as i64 + 1,
                    b.rows(),
                    b.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        Ok(ComplexSegment {
            field,
            n_min,
            ranks,
            boundaries,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.ranks.len() as i64 - 1
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.n_min && n <= self.n_max()
    }

    pub fn rank(&self, n: i64) -> Result<usize, LinError> {
        self.check(n)?;
        Ok(self.ranks[(n - self.n_min) as usize])
    }

    pub fn boundary(&self, n: i64) -> Result<&SparseMatrix, LinError> {
        if n <= self.n_min || n > self.n_max() {
            return Err(LinError::OutOfWindow {
                degree: n,
                lo: self.n_min + 1,
                hi: self.n_max(),
            });
        }
        Ok(&self.boundaries[(n - self.n_min - 1) as usize])
    }

    fn check(&self, n: i64) -> Result<(), LinError> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(LinError::OutOfWindow {
                degree: n,
                lo: self.n_min,
                hi: self.n_max(),
            })
        }
    }

    /// Degrees whose homology is computable: both neighbours inside the window.
    pub fn interior(&self) -> impl Iterator<Item = i64> {
        (self.n_min + 1)..self.n_max()
    }

    /// The first degree `n` with `boundary(n - 1) * boundary(n) != 0`.
    pub fn first_square_failure(&self) -> Option<i64> {
        ((self.n_min + 2)..=self.n_max()).find(|&n| {
            let outer = &self.boundaries[(n - self.n_min - 2) as usize];
            let inner = &self.boundaries[(n - self.n_min - 1) as usize];
            !outer
                .mul(inner)
                .expect("shapes checked at construction")
                .is_zero()
        })
    }

    pub fn homology_rank(&self, n: i64) -> Result<usize, LinError> {
        if n <= self.n_min || n >= self.n_max() {
            return Err(LinError::OutOfWindow {
                degree: n,
                lo: self.n_min + 1,
                hi: self.n_max() - 1,
            });
        }
        Ok(self.boundary(n)?.kernel_dim() - self.boundary(n + 1)?.rank())
    }

    pub fn homology_ranks(&self) -> Vec<(i64, usize)> {
        self.interior()
            .map(|n| (n, self.homology_rank(n).expect("interior degree")))
            .collect()
    }
}

/// A degreewise family of matrices `f_n` for `n` in `[lo, lo + maps.len())`.
#[derive(Clone, Debug)]
pub struct ChainMapSegment {
    pub lo: i64,
    pub maps: Vec<SparseMatrix>,
}

impl ChainMapSegment {
    pub fn at(&self, n: i64) -> Option<&SparseMatrix> {
        if n < self.lo {
            return None;
        }
        self.maps.get((n - self.lo) as usize)
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.maps.len() as i64 - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub degree: i64,
    pub source_rank: usize,
    pub target_rank: usize,
    pub image_rank: usize,
    pub iso: bool,
}

/// Whether `f: a -> b` induces isomorphisms on homology in degrees
/// `lo..=hi`.
///
/// The chain-map identity `d f = f d` is checked first wherever both sides
/// are defined; the map must be given on `lo - 1 ..= hi + 1`.
pub fn quasi_iso_check(
    f: &ChainMapSegment,
    a: &ComplexSegment,
    b: &ComplexSegment,
    lo: i64,
    hi: i64,
) -> Result<Vec<DegreeVerdict>, LinError> {
    for n in [lo - 1, hi + 1] {
        if !a.contains(n) || !b.contains(n) {
            return Err(LinError::OutOfWindow {
                degree: n,
                lo: a.n_min().max(b.n_min()),
                hi: a.n_max().min(b.n_max()),
            });
        }
        if f.at(n).is_none() {
            return Err(LinError::OutOfWindow {
                degree: n,
                lo: f.lo,
                hi: f.hi(),
            });
        }
    }
    for n in lo..=hi + 1 {
        let fn_ = f.at(n).expect("checked above");
        let fm = f.at(n - 1).expect("checked above");
        let left = b.boundary(n)?.mul(fn_)?;
        let right = fm.mul(a.boundary(n)?)?;
        if left != right {
            return Err(LinError::NotAChainMap { degree: n });
        }
    }
    let mut out = Vec::new();
    for n in lo..=hi {
        let fn_ = f.at(n).expect("checked above");
        let ha = a.homology_rank(n)?;
        let hb = b.homology_rank(n)?;
        let cycles = a.boundary(n)?.kernel_basis();
        let boundaries_b = b.boundary(n + 1)?;
        let stacked = fn_.mul(&cycles)?.hstack(boundaries_b)?;
        let image_rank = stacked.rank() - boundaries_b.rank();
        out.push(DegreeVerdict {
            degree: n,
            source_rank: ha,
            target_rank: hb,
            image_rank,
            iso: image_rank == ha && image_rank == hb,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::default()
    }

    /// 0 -> R --0--> R -> 0 in degrees 0..1, padded by zeros at -1 and 2.
    fn circle_like() -> ComplexSegment {
        let f = f2();
        ComplexSegment::new(
            f,
            -1,
            vec![0, 1, 1, 0],
            vec![
                SparseMatrix::zero(f, 0, 1),
                SparseMatrix::zero(f, 1, 1),
                SparseMatrix::zero(f, 1, 0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn homology_of_zero_differential() {
        let c = circle_like();
        assert_eq!(c.homology_rank(0).unwrap(), 1);
        assert_eq!(c.homology_rank(1).unwrap(), 1);
        assert!(matches!(
            c.homology_rank(2),
            Err(LinError::OutOfWindow { .. })
        ));
        assert!(c.first_square_failure().is_none());
    }

    #[test]
    fn shape_mismatch_rejected() {
        let f = f2();
        let err = ComplexSegment::new(f, 0, vec![1, 2], vec![SparseMatrix::zero(f, 1, 1)]);
        assert!(err.is_err());
    }

    fn identity_map(c: &ComplexSegment) -> ChainMapSegment {
        ChainMapSegment {
            lo: c.n_min(),
            maps: (c.n_min()..=c.n_max())
                .map(|n| SparseMatrix::identity(f2(), c.rank(n).unwrap()))
                .collect(),
        }
    }

    #[test]
    fn identity_is_quasi_iso() {
        let c = circle_like();
        let v = quasi_iso_check(&identity_map(&c), &c, &c, 0, 1).unwrap();
        assert!(v.iter().all(|d| d.iso));
    }

    #[test]
    fn zero_map_is_not_quasi_iso() {
        let c = circle_like();
        let zero = ChainMapSegment {
            lo: -1,
            maps: (-1..=2)
                .map(|n| SparseMatrix::zero(f2(), c.rank(n).unwrap(), c.rank(n).unwrap()))
                .collect(),
        };
        let v = quasi_iso_check(&zero, &c, &c, 0, 1).unwrap();
        assert!(v.iter().all(|d| !d.iso));
    }

    #[test]
    fn non_chain_map_reports_degree() {
        let f = f2();
        // Degrees 0..1 with d = identity: acyclic.
        let a = ComplexSegment::new(
            f,
            -1,
            vec![0, 1, 1, 0],
            vec![
                SparseMatrix::zero(f, 0, 1),
                SparseMatrix::identity(f, 1),
                SparseMatrix::zero(f, 1, 0),
            ],
        )
        .unwrap();
        // Only degree 1 is hit.
        let m = ChainMapSegment {
            lo: -1,
            maps: vec![
                SparseMatrix::zero(f, 0, 0),
                SparseMatrix::zero(f, 1, 1),
                SparseMatrix::identity(f, 1),
                SparseMatrix::zero(f, 0, 0),
            ],
        };
        assert_eq!(
            quasi_iso_check(&m, &a, &a, 0, 1),
            Err(LinError::NotAChainMap { degree: 1 })
        );
    }
}
