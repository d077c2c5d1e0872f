//! Sparse matrices over a [`Scalar`] field and an exact linear solver.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::scalar::Scalar;
use crate::error::Error;

/// A `rows x cols` matrix storing only nonzero entries, iterated in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.entries.insert((i, i), S::one());
        }
        m
    }

    pub fn diagonal(values: Vec<S>) -> Self {
        let mut m = SparseMatrix::new(values.len(), values.len());
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&S> {
        self.entries.get(&(r, c))
    }

    /// The entry at `(r, c)`, zero if absent.
    pub fn at(&self, r: usize, c: usize) -> S {
        self.get(r, c).cloned().unwrap_or_else(S::zero)
    }

    /// Stores `v` at `(r, c)`; a zero removes the entry.
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `v` to the entry at `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, v: &S) {
        let cur = self.at(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    fn rows_of(&self) -> Vec<Vec<(usize, &S)>> {
        let mut out: Vec<Vec<(usize, &S)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            out[r].push((c, v));
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let other_rows = other.rows_of();
        let mut acc: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (r, k, a) in self.entries() {
            for &(c, b) in &other_rows[k] {
                let p = a.mul(b);
                match acc.get_mut(&(r, c)) {
                    Some(cur) => *cur = cur.add(&p),
                    None => {
                        acc.insert((r, c), p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        }
    }

    fn combine(&self, other: &SparseMatrix<S>, subtract: bool) -> SparseMatrix<S> {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "dimension mismatch in sum"
        );
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            let v = if subtract { v.neg() } else { v.clone() };
            out.add_at(r, c, &v);
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        self.combine(other, true)
    }

    pub fn scale(&self, s: &S) -> SparseMatrix<S> {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, c, v) in self.entries() {
            out.set(r, c, v.mul(s));
        }
        out
    }

    pub fn neg(&self) -> SparseMatrix<S> {
        self.map(|v| v.neg())
    }

    pub fn transpose(&self) -> SparseMatrix<S> {
        let mut out = SparseMatrix::new(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    /// `self * v`.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        let mut out = vec![S::zero(); self.rows];
        for (r, c, a) in self.entries() {
            out[r] = out[r].add(&a.mul(&v[c]));
        }
        out
    }

    /// Applies `f` entrywise, dropping entries that become zero.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    pub fn try_map<T: Scalar>(
        &self,
        f: impl Fn(&S) -> Result<T, Error>,
    ) -> Result<SparseMatrix<T>, Error> {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v)?);
        }
        Ok(out)
    }

    /// First nonzero entry off the main diagonal, if any.
    pub fn first_off_diagonal(&self) -> Option<(usize, usize, &S)> {
        self.entries().find(|(r, c, _)| r != c)
    }

    pub fn is_diagonal(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    pub fn diagonal_entries(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i)).collect()
    }
}

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome<S> {
    Unique(Vec<S>),
    Inconsistent,
    /// A particular solution together with a kernel basis. Each kernel vector
    /// is scaled so its first nonzero entry is one.
    Underdetermined {
        particular: Vec<S>,
        kernel: Vec<Vec<S>>,
    },
}

/// Solves `a * x = rhs` exactly.
///
/// Forward elimination is fraction-free (Bareiss): every division is by the
/// previous pivot and is exact, which keeps intermediate rational functions
/// small. Back substitution then divides by the final pivots once.
pub fn solve_linear<S: Scalar>(a: &SparseMatrix<S>, rhs: &[S]) -> SolveOutcome<S> {
    assert_eq!(a.rows(), rhs.len(), "right-hand side length must match rows");
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.to_dense();
    for (row, b) in w.iter_mut().zip(rhs) {
        row.push(b.clone());
    }

    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = S::one();
    let mut r = 0;
    for c in 0..=n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        w.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..=n {
                let t = w[r][c].mul(&w[i][j]).sub(&w[i][c].mul(&w[r][j]));
                w[i][j] = t.div(&prev).expect("previous pivot is nonzero");
            }
            w[i][c] = S::zero();
        }
        // rows above the pivot row keep their scale; columns left of c in
        // rows below are already zero
        prev = w[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    if pivots.last() == Some(&n) {
        return SolveOutcome::Inconsistent;
    }

    // back substitution on the echelon form, with the free variables at zero
    let rank = pivots.len();
    let back = |rhs_col: &dyn Fn(usize) -> S, free: Option<usize>| -> Vec<S> {
        let mut x = vec![S::zero(); n];
        if let Some(f) = free {
            x[f] = S::one();
        }
        for k in (0..rank).rev() {
            let pc = pivots[k];
            let mut acc = rhs_col(k);
            for j in pc + 1..n {
                if !x[j].is_zero() && !w[k][j].is_zero() {
                    acc = acc.sub(&w[k][j].mul(&x[j]));
                }
            }
            x[pc] = acc.div(&w[k][pc]).expect("pivot is nonzero");
        }
        x
    };

    let particular = back(&|k| w[k][n].clone(), None);
    if rank == n {
        return SolveOutcome::Unique(particular);
    }
    let mut kernel = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = back(&|_| S::zero(), Some(f));
        let lead = v
            .iter()
            .find(|e| !e.is_zero())
            .cloned()
            .expect("kernel vector has a unit entry");
        let inv = lead.inv().expect("nonzero");
        for e in &mut v {
            *e = e.mul(&inv);
        }
        kernel.push(v);
    }
    SolveOutcome::Underdetermined { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::FieldElem;
    use crate::exactalg::parse::parse_field_elem;

    fn p(s: &str) -> FieldElem {
        parse_field_elem(s).unwrap()
    }

    #[test]
    fn one_by_one() {
        let a = SparseMatrix::from_dense(&[vec![p("1")]]);
        assert_eq!(solve_linear(&a, &[p("1/h")]), SolveOutcome::Unique(vec![p("1/h")]));
    }

    #[test]
    fn zero_matrix_is_inconsistent() {
        let a: SparseMatrix<FieldElem> = SparseMatrix::new(1, 1);
        assert_eq!(solve_linear(&a, &[p("1")]), SolveOutcome::Inconsistent);
    }

    #[test]
    fn kernel_is_normalized() {
        let a = SparseMatrix::from_dense(&[vec![p("x1"), p("x1")]]);
        match solve_linear(&a, &[p("x1")]) {
            SolveOutcome::Underdetermined { particular, kernel } => {
                assert_eq!(kernel, vec![vec![p("1"), p("-1")]]);
                assert_eq!(a.apply(&particular), vec![p("x1")]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn symbolic_three_by_three() {
        let a = SparseMatrix::from_dense(&[
            vec![p("x1"), p("h"), p("0")],
            vec![p("1"), p("x2"), p("q2")],
            vec![p("0"), p("1"), p("x1 - h")],
        ]);
        let rhs = [p("1"), p("1/h"), p("x2")];
        match solve_linear(&a, &rhs) {
            SolveOutcome::Unique(x) => assert_eq!(a.apply(&x), rhs.to_vec()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pivoting_past_zero_columns() {
        let a = SparseMatrix::from_dense(&[
            vec![p("0"), p("1"), p("2")],
            vec![p("0"), p("2"), p("4")],
        ]);
        match solve_linear(&a, &[p("3"), p("6")]) {
            SolveOutcome::Underdetermined { particular, kernel } => {
                assert_eq!(kernel.len(), 2);
                assert_eq!(a.apply(&particular), vec![p("3"), p("6")]);
                for k in &kernel {
                    assert!(a.apply(k).iter().all(|e| e.is_zero()));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(solve_linear(&a, &[p("3"), p("5")]), SolveOutcome::Inconsistent);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![p("x1"), p("1")], vec![p("0"), p("h")]]);
        let b = a.transpose();
        let ab = a.mul(&b);
        assert_eq!(ab.at(0, 0), p("x1^2 + 1"));
        assert_eq!(ab.at(0, 1), p("h"));
        assert_eq!(ab.at(1, 1), p("h^2"));
        assert!(a.sub(&a).is_zero());
    }
}
