use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::Space;
use crate::error::Error;
use crate::exactalg::{Scalar, SparseMatrix};
use crate::patterns::DegreeVector;

/// A degree-homogeneous operator on `V`, known on a finite window of
/// source degrees. Blocks outside the window are unknown, not zero.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator<S> {
    space: Space,
    n: usize,
    shift: Vec<i64>,
    blocks: BTreeMap<DegreeVector, SparseMatrix<S>>,
}

impl<S: Scalar> GradedOperator<S> {
    pub fn new(n: usize, shift: Vec<i64>) -> Self {
        Self::new_in(Space::Local, n, shift)
    }

    pub fn new_in(space: Space, n: usize, shift: Vec<i64>) -> Self {
        assert_eq!(shift.len(), n - 1, "shift has the wrong length");
        GradedOperator {
            space,
            n,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn insert_block(&mut self, d: DegreeVector, m: SparseMatrix<S>) {
        self.blocks.insert(d, m);
    }

    pub fn block(&self, d: &DegreeVector) -> Result<&SparseMatrix<S>, Error> {
        self.blocks.get(d).ok_or_else(|| Error::Unmaterialized {
            degree: format!("{d}"),
        })
    }

    pub fn has_block(&self, d: &DegreeVector) -> bool {
        self.blocks.contains_key(d)
    }

    pub fn window(&self) -> impl Iterator<Item = &DegreeVector> {
        self.blocks.keys()
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&DegreeVector, &SparseMatrix<S>)> {
        self.blocks.iter()
    }

    /// The operator restricted to the source degrees satisfying `keep`.
    pub fn restricted(&self, keep: impl Fn(&DegreeVector) -> bool) -> Self {
        GradedOperator {
            space: self.space,
            n: self.n,
            shift: self.shift.clone(),
            blocks: self
                .blocks
                .iter()
                .filter(|(d, _)| keep(d))
                .map(|(d, m)| (d.clone(), m.clone()))
                .collect(),
        }
    }

    /// `self ∘ rhs`, on every source degree where both factors are known.
    /// A factor landing in a degree with a negative component gives a zero block.
    pub fn compose(&self, rhs: &GradedOperator<S>) -> GradedOperator<S> {
        assert_eq!((self.space, self.n), (rhs.space, rhs.n), "operators on different spaces");
        let shift: Vec<i64> = self.shift.iter().zip(&rhs.shift).map(|(a, b)| a + b).collect();
        let mut out = GradedOperator::new_in(self.space, self.n, shift.clone());
        for (d, b) in &rhs.blocks {
            match d.shifted(&rhs.shift) {
                Some(mid) => {
                    if let Some(a) = self.blocks.get(&mid) {
                        out.blocks.insert(d.clone(), a.mul(b));
                    }
                }
                None => {
                    let rows = self.space.shifted_dim(self.n, d, &shift);
                    out.blocks.insert(d.clone(), SparseMatrix::new(rows, b.cols()));
                }
            }
        }
        out
    }

    fn zip_with(
        &self,
        other: &GradedOperator<S>,
        f: impl Fn(&SparseMatrix<S>, &SparseMatrix<S>) -> SparseMatrix<S>,
    ) -> GradedOperator<S> {
        assert_eq!(self.shift, other.shift, "adding operators of different shift");
        assert_eq!(self.space, other.space, "adding operators on different spaces");
        let mut out = GradedOperator::new_in(self.space, self.n, self.shift.clone());
        for (d, a) in &self.blocks {
            if let Some(b) = other.blocks.get(d) {
                out.blocks.insert(d.clone(), f(a, b));
            }
        }
        out
    }

    /// Sum on the common window.
    pub fn add(&self, other: &GradedOperator<S>) -> GradedOperator<S> {
        self.zip_with(other, SparseMatrix::add)
    }

    pub fn sub(&self, other: &GradedOperator<S>) -> GradedOperator<S> {
        self.zip_with(other, SparseMatrix::sub)
    }

    pub fn scale(&self, s: &S) -> GradedOperator<S> {
        GradedOperator {
            space: self.space,
            n: self.n,
            shift: self.shift.clone(),
            blocks: self.blocks.iter().map(|(d, m)| (d.clone(), m.scale(s))).collect(),
        }
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &GradedOperator<S>) -> GradedOperator<S> {
        self.compose(other).sub(&other.compose(self))
    }

    /// A degree-preserving operator acting on `V_d` by the scalar `c(d)`.
    pub fn scalar_on(
        n: usize,
        window: &[DegreeVector],
        c: impl Fn(&DegreeVector) -> S,
    ) -> GradedOperator<S> {
        Self::scalar_on_in(Space::Local, n, window, c)
    }

    /// As [`GradedOperator::scalar_on`] on the given space.
    pub fn scalar_on_in(
        space: Space,
        n: usize,
        window: &[DegreeVector],
        c: impl Fn(&DegreeVector) -> S,
    ) -> GradedOperator<S> {
        let mut out = GradedOperator::new_in(space, n, alloc::vec![0; n - 1]);
        for d in window {
            let dim = space.dim(n, d);
            let mut m = SparseMatrix::identity(dim);
            if dim > 0 {
                m = m.scale(&c(d));
            }
            out.blocks.insert(d.clone(), m);
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedOperator<T> {
        GradedOperator {
            space: self.space,
            n: self.n,
            shift: self.shift.clone(),
            blocks: self.blocks.iter().map(|(d, m)| (d.clone(), m.map(&f))).collect(),
        }
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T, Error>) -> Result<GradedOperator<T>, Error> {
        let mut blocks = BTreeMap::new();
        for (d, m) in &self.blocks {
            blocks.insert(d.clone(), m.try_map(&f)?);
        }
        Ok(GradedOperator {
            space: self.space,
            n: self.n,
            shift: self.shift.clone(),
            blocks,
        })
    }

    /// First source degree whose block differs from `other`'s, among degrees
    /// known to both and accepted by `keep`; also returns how many were compared.
    pub fn first_difference(
        &self,
        other: &GradedOperator<S>,
        keep: impl Fn(&DegreeVector) -> bool,
    ) -> (usize, Option<(DegreeVector, usize, usize, S)>) {
        let mut compared = 0;
        for (d, a) in &self.blocks {
            if !keep(d) {
                continue;
            }
            let Some(b) = other.blocks.get(d) else { continue };
            compared += 1;
            if a != b {
                let diff = a.sub(b);
                let (r, c, v) = diff.entries().next().expect("blocks differ");
                return (compared, Some((d.clone(), r, c, v.clone())));
            }
        }
        (compared, None)
    }
}
