//! Index sets: degree vectors, fixed-point patterns, Gelfand-Tsetlin
//! patterns and global fixed points.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactalg::FieldElem;

/// `d = (d1, .., d(n-1))`, with `d0 = dn = 0` at the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector(pub Vec<u32>);

impl DegreeVector {
    pub fn zero(n: usize) -> Self {
        DegreeVector(vec![0; n - 1])
    }

    /// Rank `n` this vector belongs to.
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    /// `d_i` for `0 <= i <= n`, zero on the boundary.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 || i > self.0.len() {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `self + shift`, or `None` if a component turns negative.
    pub fn shifted(&self, shift: &[i64]) -> Option<DegreeVector> {
        assert_eq!(shift.len(), self.0.len(), "shift length mismatch");
        self.0
            .iter()
            .zip(shift)
            .map(|(&a, &s)| u32::try_from(a as i64 + s).ok())
            .collect::<Option<Vec<_>>>()
            .map(DegreeVector)
    }

    /// All degree vectors of rank `n` with `|d| <= max_total`, ordered by
    /// total degree and then lexicographically.
    pub fn all_up_to(n: usize, max_total: u32) -> Vec<DegreeVector> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            compositions(n - 1, total, &mut Vec::new(), &mut out);
        }
        out
    }
}

fn compositions(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<DegreeVector>) {
    if prefix.len() + 1 == parts {
        prefix.push(total);
        out.push(DegreeVector(prefix.clone()));
        prefix.pop();
        return;
    }
    if parts == 0 {
        if total == 0 {
            out.push(DegreeVector(Vec::new()));
        }
        return;
    }
    for a in 0..=total {
        prefix.push(a);
        compositions(parts, total - a, prefix, out);
        prefix.pop();
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Offset of `d_ij` in the row-major flat storage.
fn flat(i: usize, j: usize) -> usize {
    i * (i - 1) / 2 + j - 1
}

/// Entries `d_ij` for `n-1 >= i >= j >= 1`, stored row by row.
///
/// Columns weakly decrease downwards: `d_kj >= d_ij` whenever `i >= k >= j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    n: usize,
    entries: Vec<u32>,
}

impl Pattern {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "rank must be at least 2");
        Pattern {
            n,
            entries: vec![0; n * (n - 1) / 2],
        }
    }

    /// Builds a pattern from rows `[[d11], [d21, d22], ..]`; `None` if the
    /// shape or the column condition is wrong.
    pub fn from_rows(rows: &[Vec<u32>]) -> Option<Pattern> {
        let n = rows.len() + 1;
        if n < 2 {
            return None;
        }
        let mut p = Pattern::zero(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return None;
            }
            for (c, &v) in row.iter().enumerate() {
                p.entries[flat(r + 1, c + 1)] = v;
            }
        }
        p.is_valid().then_some(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `d_ij`, with the boundary rows `i = 0` and `i = n` reading as zero.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == 0 || i >= self.n {
            return 0;
        }
        assert!(j >= 1 && j <= i, "entry ({i}, {j}) outside the pattern");
        self.entries[flat(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (1..self.n)
            .map(|i| (1..=i).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn degree(&self) -> DegreeVector {
        DegreeVector((1..self.n).map(|i| (1..=i).map(|j| self.get(i, j)).sum()).collect())
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn is_valid(&self) -> bool {
        (2..self.n).all(|i| (1..i).all(|j| self.get(i - 1, j) >= self.get(i, j)))
    }

    /// The pattern with `d_ij` moved by `delta`, if that is still a pattern.
    pub fn shifted(&self, i: usize, j: usize, delta: i64) -> Option<Pattern> {
        let v = u32::try_from(self.get(i, j) as i64 + delta).ok()?;
        let mut p = self.clone();
        p.entries[flat(i, j)] = v;
        let ok = (j == i || p.get(i - 1, j) >= v) && (i + 1 >= self.n || p.get(i + 1, j) <= v);
        ok.then_some(p)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.rows().iter().enumerate() {
            if r > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// All patterns of rank `n` and degree `d`, in lexicographic order of the
/// flattened entries. This order is the basis order of `V_d` everywhere.
pub fn enumerate_patterns(n: usize, d: &DegreeVector) -> Vec<Pattern> {
    assert!(n >= 2, "rank must be at least 2");
    assert_eq!(d.n(), n, "degree vector has the wrong length");
    let mut out = Vec::new();
    let mut cur = Pattern::zero(n);
    fill(&mut cur, d, 1, 1, d.get(1), &mut out);
    out
}

fn fill(cur: &mut Pattern, d: &DegreeVector, i: usize, j: usize, left: u32, out: &mut Vec<Pattern>) {
    let n = cur.n;
    if i == n {
        out.push(cur.clone());
        return;
    }
    let cap = if j < i { left.min(cur.get(i - 1, j)) } else { left };
    let range = if j == i { left..=left } else { 0..=cap };
    for v in range {
        cur.entries[flat(i, j)] = v;
        if j == i {
            fill(cur, d, i + 1, 1, d.get(i + 1), out);
        } else {
            fill(cur, d, i, j + 1, left - v, out);
        }
    }
    cur.entries[flat(i, j)] = 0;
}

/// `λ_ij` for `n >= i >= j >= 1`:
/// `λ_nj = x_j/h + j - 1` and `λ_ij = x_j/h + j - 1 - d_ij` below the top row.
#[derive(Clone, Debug, PartialEq)]
pub struct GTPattern {
    n: usize,
    lambda: Vec<FieldElem>,
}

impl GTPattern {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= i, "λ index ({i}, {j}) out of range");
        &self.lambda[flat(i, j)]
    }
}

pub fn gt_pattern(p: &Pattern) -> GTPattern {
    let n = p.n();
    let hinv = FieldElem::hbar().inv().expect("h is nonzero");
    let mut lambda = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        for j in 1..=i {
            let shift = j as i64 - 1 - p.get(i, j) as i64;
            lambda.push(FieldElem::x(j).mul(&hinv).add(&FieldElem::from_i64(shift)));
        }
    }
    GTPattern { n, lambda }
}

/// Permutations of `1..=n` in one-line notation, lexicographically ordered.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            return out;
        };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).expect("successor exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Composition `a ∘ b` of permutations in one-line notation.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&j| a[j - 1]).collect()
}

pub fn inverse(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j - 1] = i + 1;
    }
    out
}

/// A fixed point `(σ, d⁰, d^∞)` of the global space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobalFixedPoint {
    pub sigma: Vec<usize>,
    pub p0: Pattern,
    pub pinf: Pattern,
}

impl GlobalFixedPoint {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Componentwise sum of the two pattern degrees.
    pub fn degree(&self) -> DegreeVector {
        let a = self.p0.degree();
        let b = self.pinf.degree();
        DegreeVector(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
}

impl fmt::Display for GlobalFixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {}, {})", self.sigma, self.p0, self.pinf)
    }
}

/// Pairs `(d⁰, d^∞)` of patterns whose degrees add up to `d`, sorted.
pub fn pattern_pairs(n: usize, d: &DegreeVector) -> Vec<(Pattern, Pattern)> {
    let mut out = Vec::new();
    for d0 in splits(d) {
        let dinf = DegreeVector(d.0.iter().zip(&d0.0).map(|(a, b)| a - b).collect());
        let left = enumerate_patterns(n, &d0);
        let right = enumerate_patterns(n, &dinf);
        for a in &left {
            for b in &right {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out.sort_by(|a, b| (a.0.entries(), a.1.entries()).cmp(&(b.0.entries(), b.1.entries())));
    out
}

fn splits(d: &DegreeVector) -> Vec<DegreeVector> {
    let mut out = vec![Vec::new()];
    for &a in &d.0 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=a).map(move |b| {
                    let mut p = prefix.clone();
                    p.push(b);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(DegreeVector).collect()
}

/// All global fixed points of degree `d`: σ in lexicographic one-line
/// order, then `(d⁰, d^∞)` lexicographic.
pub fn enumerate_global_fixed_points(n: usize, d: &DegreeVector) -> Vec<GlobalFixedPoint> {
    let pairs = pattern_pairs(n, d);
    let mut out = Vec::new();
    for sigma in permutations(n) {
        for (p0, pinf) in &pairs {
            out.push(GlobalFixedPoint {
                sigma: sigma.clone(),
                p0: p0.clone(),
                pinf: pinf.clone(),
            });
        }
    }
    out
}
