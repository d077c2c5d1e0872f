use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{GradedOperator, WeightSpace, Weights};
use crate::error::Error;
use crate::exactalg::{FieldElem, Scalar, SparseMatrix};
use crate::patterns::{DegreeVector, Pattern};

fn int<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

/// `x_a - x_b + c h`.
fn linear<S: Scalar>(w: &Weights<S>, a: usize, b: usize, c: i64) -> S {
    w.x(a).sub(w.x(b)).add(&int::<S>(c).mul(&w.hbar))
}

/// Coefficient of the raising operator `e_i` from `[p]` to `[p + δ_ij]`.
pub fn e_coefficient<S: Scalar>(w: &Weights<S>, p: &Pattern, i: usize, j: usize) -> Result<S, Error> {
    let dij = p.get(i, j) as i64;
    let mut num = w.hbar_inv()?.neg();
    let mut den = S::one();
    for k in 1..=i {
        if k != j {
            den = den.mul(&linear(w, j, k, p.get(i, k) as i64 - dij));
        }
    }
    for k in 1..i {
        num = num.mul(&linear(w, j, k, p.get(i - 1, k) as i64 - dij));
    }
    num.div(&den)
}

/// Coefficient of the lowering operator `f_i` from `[p]` to `[p - δ_ij]`.
pub fn f_coefficient<S: Scalar>(w: &Weights<S>, p: &Pattern, i: usize, j: usize) -> Result<S, Error> {
    let dij = p.get(i, j) as i64;
    let mut num = w.hbar_inv()?;
    let mut den = S::one();
    for k in 1..=i {
        if k != j {
            den = den.mul(&linear(w, k, j, dij - p.get(i, k) as i64));
        }
    }
    for k in 1..=i + 1 {
        num = num.mul(&linear(w, k, j, dij - p.get(i + 1, k) as i64));
    }
    num.div(&den)
}

/// Eigenvalue of `E_ii` on `V_d`: `x_i/h + d_{i-1} - d_i + i - 1`.
pub fn cartan_scalar<S: Scalar>(w: &Weights<S>, d: &DegreeVector, i: usize) -> Result<S, Error> {
    let c = d.get(i - 1) as i64 - d.get(i) as i64 + i as i64 - 1;
    Ok(w.x(i).mul(&w.hbar_inv()?).add(&int(c)))
}

/// The scalar `(-h)^{-|d|}` relating fixed-point classes and GT vectors of
/// degree `d`. Recorded for reference; no operator applies it.
pub fn gt_conversion_scalar(d: &DegreeVector) -> FieldElem {
    FieldElem::hbar()
        .neg()
        .pow(-(d.total() as i32))
        .expect("h is nonzero")
}

fn unit_shift(n: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut s = vec![0; n - 1];
    s[i - 1] = sign;
    s
}

/// The block of `e_i` (`raise = true`) or `f_i` with source `V_d`.
pub fn ladder_block<S: Scalar>(
    w: &Weights<S>,
    d: &DegreeVector,
    i: usize,
    raise: bool,
) -> Result<SparseMatrix<S>, Error> {
    let n = w.n();
    let sign = if raise { 1 } else { -1 };
    let shift = unit_shift(n, i, sign);
    let src = WeightSpace::new(n, d.clone());
    let tgt = d.shifted(&shift).map(|t| WeightSpace::new(n, t));
    let rows = tgt.as_ref().map_or(0, WeightSpace::dim);
    let mut m = SparseMatrix::new(rows, src.dim());
    if let Some(tgt) = &tgt {
        for (c, p) in src.basis.iter().enumerate() {
            for j in 1..=i {
                let Some(q) = p.shifted(i, j, sign) else { continue };
                let r = tgt.index_of(&q).expect("shifted pattern has the target degree");
                let v = if raise {
                    e_coefficient(w, p, i, j)?
                } else {
                    f_coefficient(w, p, i, j)?
                };
                m.set(r, c, v);
            }
        }
    }
    Ok(m)
}

/// Builds `e_i` (`raise = true`) or `f_i` on every source degree of `window`.
pub fn ladder<S: Scalar>(
    w: &Weights<S>,
    window: &[DegreeVector],
    i: usize,
    raise: bool,
) -> Result<GradedOperator<S>, Error> {
    let n = w.n();
    let mut op = GradedOperator::new(n, unit_shift(n, i, if raise { 1 } else { -1 }));
    for d in window {
        op.insert_block(d.clone(), ladder_block(w, d, i, raise)?);
    }
    Ok(op)
}

/// All `E_ij` of `gl(n)` on a window, seeded by `e_i = E_{i+1,i}`,
/// `f_i = E_{i,i+1}` and the diagonal `E_ii`, with the rest obtained from
/// `E_ij = [E_{i,j-1}, E_{j-1,j}]` and `E_ji = [E_{j,j-1}, E_{j-1,i}]`.
#[derive(Clone, Debug)]
pub struct GlFamily<S> {
    n: usize,
    ops: BTreeMap<(usize, usize), GradedOperator<S>>,
}

impl<S: Scalar> GlFamily<S> {
    pub fn build(w: &Weights<S>, window: &[DegreeVector]) -> Result<Self, Error> {
        let n = w.n();
        let mut cartan = Vec::with_capacity(n);
        for i in 1..=n {
            let mut diag = GradedOperator::new(n, vec![0; n - 1]);
            for d in window {
                let dim = WeightSpace::new(n, d.clone()).dim();
                let m = SparseMatrix::identity(dim).scale(&cartan_scalar(w, d, i)?);
                diag.insert_block(d.clone(), m);
            }
            cartan.push(diag);
        }
        let mut e = Vec::with_capacity(n - 1);
        let mut f = Vec::with_capacity(n - 1);
        for i in 1..n {
            e.push(ladder(w, window, i, true)?);
            f.push(ladder(w, window, i, false)?);
        }
        Ok(GlFamily::from_seeds(n, e, f, cartan))
    }

    /// Assembles a family from externally built seeds (`e_i`, `f_i`, `E_ii`).
    pub fn from_seeds(
        n: usize,
        e: Vec<GradedOperator<S>>,
        f: Vec<GradedOperator<S>>,
        cartan: Vec<GradedOperator<S>>,
    ) -> Self {
        let mut ops = BTreeMap::new();
        for (k, op) in cartan.into_iter().enumerate() {
            ops.insert((k + 1, k + 1), op);
        }
        for (k, (ei, fi)) in e.into_iter().zip(f).enumerate() {
            ops.insert((k + 2, k + 1), ei);
            ops.insert((k + 1, k + 2), fi);
        }
        for h in 2..n {
            for i in 1..=n - h {
                let j = i + h;
                let upper = ops[&(i, j - 1)].commutator(&ops[&(j - 1, j)]);
                let lower = ops[&(j, j - 1)].commutator(&ops[&(j - 1, i)]);
                ops.insert((i, j), upper);
                ops.insert((j, i), lower);
            }
        }
        GlFamily { n, ops }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `E_ij`, one-based.
    pub fn get(&self, i: usize, j: usize) -> &GradedOperator<S> {
        &self.ops[&(i, j)]
    }

    /// `e_i = E_{i+1,i}`.
    pub fn e(&self, i: usize) -> &GradedOperator<S> {
        self.get(i + 1, i)
    }

    /// `f_i = E_{i,i+1}`.
    pub fn f(&self, i: usize) -> &GradedOperator<S> {
        self.get(i, i + 1)
    }

    /// `Cas_k = Σ_{i,j<=k} E_ij E_ji`, summed in lexicographic `(i, j)` order.
    pub fn casimir(&self, k: usize) -> GradedOperator<S> {
        let mut acc: Option<GradedOperator<S>> = None;
        for i in 1..=k {
            for j in 1..=k {
                let t = self.get(i, j).compose(self.get(j, i));
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t),
                });
            }
        }
        acc.expect("k >= 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_field_elem;
    use crate::verma::padded_window;

    fn p(s: &str) -> FieldElem {
        parse_field_elem(s).unwrap()
    }

    #[test]
    fn rank_two_coefficients() {
        let w = Weights::symbolic(2);
        for m in 0..4u32 {
            let pat = Pattern::from_rows(&[vec![m]]).unwrap();
            assert_eq!(e_coefficient(&w, &pat, 1, 1).unwrap(), p("-1/h"));
            let expect = FieldElem::from_i64(m as i64).mul(&p("x2 - x1").add(&p("h").scale_i64(m as i64)));
            assert_eq!(f_coefficient(&w, &pat, 1, 1).unwrap(), expect);
        }
    }

    #[test]
    fn cartan_values() {
        let w = Weights::symbolic(3);
        let d = DegreeVector(vec![1, 1]);
        assert_eq!(cartan_scalar(&w, &d, 2).unwrap(), p("x2/h + 1"));
        let d = DegreeVector(vec![5]);
        let w2 = Weights::symbolic(2);
        assert_eq!(cartan_scalar(&w2, &d, 1).unwrap(), p("x1/h - 5"));
        assert_eq!(cartan_scalar(&w2, &d, 2).unwrap(), p("x2/h + 6"));
    }

    #[test]
    fn h1_eigenvalue_rank_two() {
        let w = Weights::symbolic(2);
        let win = padded_window(2, 5);
        let fam = GlFamily::build(&w, &win).unwrap();
        let h = fam.e(1).commutator(fam.f(1));
        for m in 0..=5u32 {
            let b = h.block(&DegreeVector(vec![m])).unwrap();
            let expect = p("(x2 - x1)/h").add(&FieldElem::from_i64(2 * m as i64 + 1));
            assert_eq!(b.at(0, 0), expect, "m = {m}");
        }
    }

    #[test]
    fn e13_is_composed_from_lowering_blocks() {
        let w = Weights::symbolic(3);
        let win = padded_window(3, 2);
        let fam = GlFamily::build(&w, &win).unwrap();
        let d = DegreeVector(vec![1, 1]);
        let mid = DegreeVector(vec![1, 0]);
        let zero = DegreeVector(vec![0, 0]);
        let f1 = fam.f(1);
        let f2 = fam.f(2);
        let expect = f1
            .block(&mid)
            .unwrap()
            .mul(f2.block(&d).unwrap())
            .sub(&f2.block(&DegreeVector(vec![0, 1])).unwrap().mul(f1.block(&d).unwrap()));
        assert_eq!(fam.get(1, 3).block(&d).unwrap(), &expect);
        assert_eq!(fam.get(1, 3).block(&d).unwrap().rows(), WeightSpace::new(3, zero).dim());
        let b = fam.get(1, 3).block(&DegreeVector(vec![0, 1])).unwrap();
        assert_eq!(b.rows(), 0);
    }

    #[test]
    fn support_is_one_entry_of_row_i() {
        let w = Weights::symbolic(4);
        let win = DegreeVector::all_up_to(4, 3);
        for i in 1..4 {
            for op in [ladder(&w, &win, i, true).unwrap(), ladder(&w, &win, i, false).unwrap()] {
                for (d, m) in op.blocks() {
                    let Some(t) = d.shifted(op.shift()) else { continue };
                    let src = WeightSpace::new(4, d.clone());
                    let tgt = WeightSpace::new(4, t);
                    for (r, c, _) in m.entries() {
                        let (a, b) = (&src.basis[c], &tgt.basis[r]);
                        let diffs: Vec<_> = a
                            .entries()
                            .iter()
                            .zip(b.entries())
                            .enumerate()
                            .filter(|(_, (x, y))| x != y)
                            .collect();
                        assert_eq!(diffs.len(), 1);
                        let (at, (x, y)) = diffs[0];
                        assert_eq!((*x as i64 - *y as i64).abs(), 1);
                        assert!(at >= i * (i - 1) / 2 && at < i * (i + 1) / 2);
                    }
                }
            }
        }
    }

    #[test]
    fn conversion_scalar() {
        assert_eq!(gt_conversion_scalar(&DegreeVector(vec![1, 2])), p("-1/h^3"));
    }
}
