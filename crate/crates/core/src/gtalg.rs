//! Gelfand-Tsetlin calculus: Casimirs, corrected Casimirs, determinant
//! bundles, tautological Chern classes and joint-spectrum separation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactalg::{FieldElem, Scalar, SparseMatrix};
use crate::patterns::{enumerate_patterns, DegreeVector, Pattern};
use crate::report::VerificationReport;
use crate::verma::{cartan_scalar, GlFamily, GradedOperator, Weights};

fn int<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

/// `λ_kj = x_j/h + j - 1 - d_kj`, with `d_nj = 0`.
pub fn lambda<S: Scalar>(w: &Weights<S>, p: &Pattern, k: usize, j: usize) -> Result<S, Error> {
    let c = j as i64 - 1 - p.get(k, j) as i64;
    Ok(w.x(j).mul(&w.hbar_inv()?).add(&int(c)))
}

/// GT eigenvalue of `Cas_k`: `Σ_{j<=k} λ_kj (λ_kj + k - 2j + 1)`.
pub fn eig_casimir<S: Scalar>(w: &Weights<S>, p: &Pattern, k: usize) -> Result<S, Error> {
    let mut acc = S::zero();
    for j in 1..=k {
        let l = lambda(w, p, k, j)?;
        let c = k as i64 - 2 * j as i64 + 1;
        acc = acc.add(&l.mul(&l.add(&int(c))));
    }
    Ok(acc)
}

/// Closed-form eigenvalue of the corrected Casimir:
/// `Σ_{j<=k} 2(1 - d_kj) x_j/h + d_kj (d_kj - 1)`.
pub fn eig_tilde_casimir<S: Scalar>(w: &Weights<S>, p: &Pattern, k: usize) -> Result<S, Error> {
    let hinv = w.hbar_inv()?;
    let mut acc = S::zero();
    for j in 1..=k {
        let d = p.get(k, j) as i64;
        acc = acc
            .add(&int::<S>(2 * (1 - d)).mul(w.x(j)).mul(&hinv))
            .add(&int(d * (d - 1)));
    }
    Ok(acc)
}

/// First Chern class of `D_k` at `[p]`: `Σ_{j<=k} (1 - d_kj) x_j + d_kj (d_kj - 1) h/2`.
pub fn eig_det_bundle<S: Scalar>(w: &Weights<S>, p: &Pattern, k: usize) -> S {
    let half = S::one().div(&int(2)).expect("2 is invertible");
    let mut acc = S::zero();
    for j in 1..=k {
        let d = p.get(k, j) as i64;
        acc = acc
            .add(&int::<S>(1 - d).mul(w.x(j)))
            .add(&int::<S>(d * (d - 1)).mul(&w.hbar).mul(&half));
    }
    acc
}

/// Elementary symmetric polynomial `e_j` of `values`.
pub fn elementary_symmetric<S: Scalar>(values: &[S], j: usize) -> S {
    // e[k] after processing a prefix = e_k of that prefix
    let mut e = vec![S::zero(); j + 1];
    e[0] = S::one();
    for v in values {
        for k in (1..=j).rev() {
            e[k] = e[k].add(&e[k - 1].mul(v));
        }
    }
    e[j].clone()
}

/// `e^∞_ji = e_j(-x_1, .., -x_i)`.
pub fn e_infinity<S: Scalar>(w: &Weights<S>, i: usize, j: usize) -> S {
    let vals: Vec<S> = (1..=i).map(|a| w.x(a).neg()).collect();
    elementary_symmetric(&vals, j)
}

/// `e⁰_ji(p) = e_j(-x_1 + d_i1 h, .., -x_i + d_ii h)`.
pub fn e_zero<S: Scalar>(w: &Weights<S>, p: &Pattern, i: usize, j: usize) -> S {
    let vals: Vec<S> = (1..=i)
        .map(|a| w.x(a).neg().add(&int::<S>(p.get(i, a) as i64).mul(&w.hbar)))
        .collect();
    elementary_symmetric(&vals, j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChernPart {
    /// `½(e^∞ + e⁰)`
    Diag,
    /// `(1/2h)(e^∞ - e⁰)`
    Kunneth,
}

/// Eigenvalue of the diagonal or Künneth part of `c_j(W_i)` at `[p]`.
pub fn eig_chern<S: Scalar>(w: &Weights<S>, p: &Pattern, i: usize, j: usize, part: ChernPart) -> Result<S, Error> {
    let einf = e_infinity(w, i, j);
    let ezero = e_zero(w, p, i, j);
    let two = int::<S>(2);
    match part {
        ChernPart::Diag => einf.add(&ezero).div(&two),
        ChernPart::Kunneth => einf.sub(&ezero).div(&two.mul(&w.hbar)),
    }
}

/// `Cas_k + (2 - k) Σ_{j<=k} E_jj - Σ_{j<=k} (x_j/h)(x_j/h - 1) + k(k-1)(k-2)/3`,
/// assembled from the operators of `fam`.
pub fn op_tilde_casimir<S: Scalar>(
    fam: &GlFamily<S>,
    w: &Weights<S>,
    k: usize,
) -> Result<GradedOperator<S>, Error> {
    let mut op = fam.casimir(k);
    let two_minus_k = int::<S>(2 - k as i64);
    for j in 1..=k {
        op = op.add(&fam.get(j, j).scale(&two_minus_k));
    }
    let hinv = w.hbar_inv()?;
    let mut c = int::<S>((k * (k - 1) * (k.saturating_sub(2))) as i64 / 3);
    for j in 1..=k {
        let y = w.x(j).mul(&hinv);
        c = c.sub(&y.mul(&y.sub(&S::one())));
    }
    let window: Vec<DegreeVector> = op.window().cloned().collect();
    let shift = GradedOperator::scalar_on(w.n(), &window, |_| c.clone());
    Ok(op.add(&shift))
}

/// A diagonal operator on one weight space.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalOperator<S> {
    pub degree: DegreeVector,
    pub eigenvalues: BTreeMap<Pattern, S>,
}

/// Joint eigenvalues of several diagonal generators on `V_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointSpectrum<S> {
    pub degree: DegreeVector,
    pub labels: Vec<String>,
    /// Rows in basis order.
    pub table: Vec<(Pattern, Vec<S>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generators {
    /// `W̃Cas_k` for `2 <= k <= n - 1`.
    TildeCasimirs,
    /// `Cas_k` for `2 <= k <= n - 1`.
    Casimirs,
    /// `c1(D_k)`; `basis_only` keeps the `k >= 2` with `d_k != 0 != d_{k-1}`.
    DetBundles { basis_only: bool },
    /// Every `c_j(W_i)`, both parts.
    Chern,
}

/// `k` with `2 <= k <= n-1`, `d_k != 0` and `d_{k-1} != 0`.
pub fn det_bundle_basis(d: &DegreeVector) -> Vec<usize> {
    (2..d.n()).filter(|&k| d.get(k) != 0 && d.get(k - 1) != 0).collect()
}

pub fn joint_spectrum(w: &Weights<FieldElem>, d: &DegreeVector, gens: Generators) -> Result<JointSpectrum<FieldElem>, Error> {
    let n = w.n();
    let basis = enumerate_patterns(n, d);
    type Eig = dyn Fn(&Pattern) -> Result<FieldElem, Error>;
    let mut cols: Vec<(String, alloc::boxed::Box<Eig>)> = Vec::new();
    match gens {
        Generators::TildeCasimirs => {
            for k in 2..n {
                let w = w.clone();
                cols.push((format!("tildeCas{k}"), alloc::boxed::Box::new(move |p| eig_tilde_casimir(&w, p, k))));
            }
        }
        Generators::Casimirs => {
            for k in 2..n {
                let w = w.clone();
                cols.push((format!("Cas{k}"), alloc::boxed::Box::new(move |p| eig_casimir(&w, p, k))));
            }
        }
        Generators::DetBundles { basis_only } => {
            let ks: Vec<usize> = if basis_only { det_bundle_basis(d) } else { (1..n).collect() };
            for k in ks {
                let w = w.clone();
                cols.push((format!("c1(D{k})"), alloc::boxed::Box::new(move |p| Ok(eig_det_bundle(&w, p, k)))));
            }
        }
        Generators::Chern => {
            for i in 1..n {
                for j in 1..=i {
                    for part in [ChernPart::Diag, ChernPart::Kunneth] {
                        let w = w.clone();
                        let tag = if part == ChernPart::Diag { "diag" } else { "kunneth" };
                        cols.push((
                            format!("c{j}(W{i}).{tag}"),
                            alloc::boxed::Box::new(move |p| eig_chern(&w, p, i, j, part)),
                        ));
                    }
                }
            }
        }
    }
    let mut table = Vec::with_capacity(basis.len());
    for p in basis {
        let row = cols.iter().map(|(_, f)| f(&p)).collect::<Result<Vec<_>, _>>()?;
        table.push((p, row));
    }
    Ok(JointSpectrum {
        degree: d.clone(),
        labels: cols.into_iter().map(|(l, _)| l).collect(),
        table,
    })
}

/// First pair of basis vectors with identical joint eigenvalues.
pub fn first_collision<S: Scalar>(spec: &JointSpectrum<S>) -> Option<(usize, usize)> {
    for a in 0..spec.table.len() {
        for b in a + 1..spec.table.len() {
            if spec.table[a].1 == spec.table[b].1 {
                return Some((a, b));
            }
        }
    }
    None
}

/// Whether the joint spectrum of `gens` separates the basis of `V_d`.
pub fn check_spectrum_separation(n: usize, d: &DegreeVector, gens: Generators) -> Result<VerificationReport, Error> {
    let w = Weights::<FieldElem>::symbolic(n);
    let spec = joint_spectrum(&w, d, gens)?;
    let mut report = VerificationReport::new("gt-spectrum");
    let label = format!("separation of V{d} by {:?}", gens);
    let anchor = "distinct joint eigenvalues on the fixed-point basis";
    if spec.table.len() <= 1 {
        report.vacuous(label, anchor);
    } else if spec.labels.is_empty() {
        report.check(label, anchor, false, || String::from("no generators but dim > 1"));
    } else {
        let hit = first_collision(&spec);
        report.check(label, anchor, hit.is_none(), || {
            let (a, b) = hit.expect("collision");
            format!("{} and {} share eigenvalues", spec.table[a].0, spec.table[b].0)
        });
    }
    Ok(report)
}

fn eigen_mismatch<S: Scalar>(
    op: &GradedOperator<S>,
    n: usize,
    dmax: u32,
    eig: impl Fn(&Pattern) -> Result<S, Error>,
) -> Result<(usize, Option<String>), Error> {
    let mut compared = 0;
    for (d, m) in op.blocks() {
        if d.total() > dmax {
            continue;
        }
        compared += 1;
        if let Some((r, c, v)) = m.first_off_diagonal() {
            return Ok((compared, Some(format!("degree {d}: off-diagonal ({r},{c}) = {v}"))));
        }
        for (k, p) in enumerate_patterns(n, d).iter().enumerate() {
            let want = eig(p)?;
            let got = m.at(k, k);
            if got != want {
                return Ok((compared, Some(format!("pattern {p}: assembled {got}, closed form {want}"))));
            }
        }
    }
    Ok((compared, None))
}

/// Diagonality and eigenvalues of `Cas_k`, `W̃Cas_k`; the `c1(D_k)` identity;
/// commutativity of the Casimirs; `h`-divisibility of `e^∞ - e⁰`.
pub fn check_casimirs_with<S: Scalar>(
    fam: &GlFamily<S>,
    w: &Weights<S>,
    dmax: u32,
) -> Result<VerificationReport, Error> {
    let n = w.n();
    let mut report = VerificationReport::new("gt-casimir");
    let mut cas = Vec::new();
    for k in 1..=n {
        let op = fam.casimir(k);
        let (c, bad) = eigen_mismatch(&op, n, dmax, |p| eig_casimir(w, p, k))?;
        report.check(
            format!("Cas{k} diagonal with GT eigenvalue on {c} blocks"),
            "Casimir eigenvalue on the GT basis",
            bad.is_none(),
            || bad.clone().unwrap_or_default(),
        );
        cas.push(op);
    }
    for k in 1..=n {
        let op = op_tilde_casimir(fam, w, k)?;
        let (c, bad) = eigen_mismatch(&op, n, dmax, |p| eig_tilde_casimir(w, p, k))?;
        report.check(
            format!("tildeCas{k} diagonal with closed-form eigenvalue on {c} blocks"),
            "corrected Casimir eigenvalue",
            bad.is_none(),
            || bad.clone().unwrap_or_default(),
        );
    }
    for k in 1..=n {
        for l in k + 1..=n {
            let comm = cas[k - 1].commutator(&cas[l - 1]);
            let bad = comm
                .blocks()
                .filter(|(d, _)| d.total() <= dmax)
                .find(|(_, m)| !m.is_zero())
                .map(|(d, m)| {
                    let (r, c, v) = m.entries().next().expect("nonzero");
                    format!("degree {d}, entry ({r},{c}): {v}")
                });
            report.check(
                format!("[Cas{k},Cas{l}] = 0"),
                "commutativity of the GT subalgebra",
                bad.is_none(),
                || bad.clone().unwrap_or_default(),
            );
        }
    }
    let half_h = w.hbar.div(&int(2))?;
    let degrees = crate::patterns::DegreeVector::all_up_to(n, dmax);
    for k in 1..n {
        let mut bad = None;
        'outer: for d in &degrees {
            for p in enumerate_patterns(n, d) {
                let lhs = eig_det_bundle(w, &p, k);
                let rhs = half_h.mul(&eig_tilde_casimir(w, &p, k)?);
                if lhs != rhs {
                    bad = Some(format!("pattern {p}: {lhs} vs {rhs}"));
                    break 'outer;
                }
            }
        }
        report.check(
            format!("c1(D{k}) = (h/2) tildeCas{k}"),
            "determinant bundle as corrected Casimir",
            bad.is_none(),
            || bad.clone().unwrap_or_default(),
        );
    }
    Ok(report)
}

/// `e^∞_ji - e⁰_ji(p)` is divisible by `h` for every `(i, j, p)` with `|d| <= dmax`.
pub fn check_hbar_divisibility(n: usize, dmax: u32) -> VerificationReport {
    let w = Weights::<FieldElem>::symbolic(n);
    let mut report = VerificationReport::new("gt-divisibility");
    for i in 1..n {
        for j in 1..=i {
            let mut bad = None;
            'outer: for d in DegreeVector::all_up_to(n, dmax) {
                for p in enumerate_patterns(n, &d) {
                    let diff = e_infinity(&w, i, j).sub(&e_zero(&w, &p, i, j));
                    let q = diff.div(&FieldElem::hbar()).expect("h is nonzero");
                    if !q.is_polynomial() {
                        bad = Some(format!("pattern {p}: {diff}"));
                        break 'outer;
                    }
                }
            }
            report.check(
                format!("h divides e_inf - e_0 for c{j}(W{i})"),
                "integral form of the GT centre",
                bad.is_none(),
                || bad.clone().unwrap_or_default(),
            );
        }
    }
    report
}

/// The eigenvalues of a degree-preserving operator on `V_d`, if diagonal there.
pub fn diagonal_of<S: Scalar>(op: &GradedOperator<S>, n: usize, d: &DegreeVector) -> Result<Option<DiagonalOperator<S>>, Error> {
    let m: &SparseMatrix<S> = op.block(d)?;
    if !m.is_diagonal() {
        return Ok(None);
    }
    let eigenvalues = enumerate_patterns(n, d)
        .into_iter()
        .enumerate()
        .map(|(k, p)| (p, m.at(k, k)))
        .collect();
    Ok(Some(DiagonalOperator {
        degree: d.clone(),
        eigenvalues,
    }))
}

/// Cartan eigenvalue re-exported for convenience.
pub fn eig_cartan<S: Scalar>(w: &Weights<S>, d: &DegreeVector, i: usize) -> Result<S, Error> {
    cartan_scalar(w, d, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_field_elem;
    use crate::verma::padded_window;

    fn p(s: &str) -> FieldElem {
        parse_field_elem(s).unwrap()
    }

    fn pat(rows: &[&[u32]]) -> Pattern {
        Pattern::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_two_casimir_one() {
        let w = Weights::symbolic(2);
        let fam = GlFamily::build(&w, &padded_window(2, 3)).unwrap();
        let cas1 = fam.casimir(1);
        for m in 0..=3u32 {
            let got = cas1.block(&DegreeVector(vec![m])).unwrap().at(0, 0);
            let e = p("x1/h").sub(&FieldElem::from_i64(m as i64));
            assert_eq!(got, e.mul(&e));
        }
    }

    #[test]
    fn tilde_casimir_closed_forms() {
        let w = Weights::symbolic(3);
        assert_eq!(eig_tilde_casimir(&w, &Pattern::zero(3), 2).unwrap(), p("2*(x1 + x2)/h"));
        assert_eq!(eig_tilde_casimir(&w, &pat(&[&[1], &[1, 0]]), 2).unwrap(), p("2*x2/h"));
        assert_eq!(eig_det_bundle(&w, &pat(&[&[1], &[1, 0]]), 2), p("x2"));
        assert_eq!(eig_det_bundle(&w, &Pattern::zero(3), 2), p("x1 + x2"));
    }

    #[test]
    fn chern_parts_rank_two() {
        let w = Weights::symbolic(2);
        let q = pat(&[&[3]]);
        assert_eq!(eig_chern(&w, &q, 1, 1, ChernPart::Diag).unwrap(), p("-x1 + 3*h/2"));
        assert_eq!(eig_chern(&w, &q, 1, 1, ChernPart::Kunneth).unwrap(), p("-3/2"));
        let z = Pattern::zero(2);
        assert!(eig_chern(&w, &z, 1, 1, ChernPart::Kunneth).unwrap().is_zero());
    }

    #[test]
    fn elementary_symmetric_small() {
        let v = [p("x1"), p("x2"), p("x3")];
        assert_eq!(elementary_symmetric(&v, 2), p("x1*x2 + x1*x3 + x2*x3"));
        assert_eq!(elementary_symmetric(&v, 0), p("1"));
    }

    #[test]
    fn rank_three_checks() {
        let w = Weights::symbolic(3);
        let fam = GlFamily::build(&w, &padded_window(3, 2)).unwrap();
        let r = check_casimirs_with(&fam, &w, 2).unwrap();
        assert!(!r.has_failures(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(!check_hbar_divisibility(3, 3).has_failures());
    }

    #[test]
    fn separation_examples() {
        let r = check_spectrum_separation(3, &DegreeVector(vec![1, 1]), Generators::TildeCasimirs).unwrap();
        assert!(!r.has_failures());
        let r = check_spectrum_separation(3, &DegreeVector(vec![2, 1]), Generators::Casimirs).unwrap();
        assert!(!r.has_failures());
        let r = check_spectrum_separation(2, &DegreeVector(vec![4]), Generators::TildeCasimirs).unwrap();
        assert_eq!(r.items[0].status, crate::report::Status::Vacuous);
    }

    #[test]
    fn off_diagonal_of_cas2_vanishes() {
        let w = Weights::symbolic(3);
        let fam = GlFamily::build(&w, &padded_window(3, 2)).unwrap();
        let m = fam.casimir(2);
        let b = m.block(&DegreeVector(vec![1, 1])).unwrap();
        assert_eq!(b.rows(), 2);
        assert!(b.is_diagonal());
    }
}
