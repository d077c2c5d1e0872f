//! Diagonal eigenvalue calculus on the K-theoretic module: `t_ii`,
//! quantum Casimirs with formal `τ` exponents (`t_j = v^{τ_j}`), the
//! classes `[D_k]`, and the normalization constants of fixed-point classes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactalg::{ExponentQuadratic, LaurentMonomial};
use crate::patterns::{enumerate_patterns, DegreeVector, Pattern};
use crate::report::VerificationReport;

/// A `v`-power eigenvalue: a genuine Laurent monomial, or an exponent with
/// a quadratic `τ`-part that has not cancelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QEigenvalue {
    Monomial(LaurentMonomial),
    Symbolic(ExponentQuadratic),
}

impl QEigenvalue {
    pub fn from_exponent(e: ExponentQuadratic) -> Self {
        match e.to_monomial() {
            Some(m) => QEigenvalue::Monomial(m),
            None => QEigenvalue::Symbolic(e),
        }
    }

    pub fn exponent(&self) -> ExponentQuadratic {
        match self {
            QEigenvalue::Monomial(m) => ExponentQuadratic::from_monomial(m),
            QEigenvalue::Symbolic(e) => e.clone(),
        }
    }
}

impl fmt::Display for QEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QEigenvalue::Monomial(m) => write!(f, "{m}"),
            QEigenvalue::Symbolic(e) => write!(f, "v^({e})"),
        }
    }
}

/// `t_ii = t_i v^{d_{i-1} - d_i + i - 1}` on `[p]`.
pub fn eig_quantum_cartan(p: &Pattern, i: usize) -> LaurentMonomial {
    let d = p.degree();
    let e = d.get(i - 1) as i64 - d.get(i) as i64 + i as i64 - 1;
    LaurentMonomial::t(p.n(), i).mul(&LaurentMonomial::v_power(p.n(), e))
}

/// `λ_kj` as an exponent of `v`: `τ_j + j - 1 - d_kj`, with `d_nj = 0`.
fn lambda(p: &Pattern, k: usize, j: usize) -> ExponentQuadratic {
    ExponentQuadratic::tau_plus(p.n(), j, j as i64 - 1 - p.get(k, j) as i64)
}

/// Exponent of the eigenvalue of `Cas^v_k`: `-Σ_{j<=k} λ_kj (λ_kj + k - 2j + 1)`.
pub fn quantum_casimir_exponent(p: &Pattern, k: usize) -> ExponentQuadratic {
    let n = p.n();
    let mut acc = ExponentQuadratic::zero(n);
    for j in 1..=k {
        let l = lambda(p, k, j);
        let shifted = l.add(&ExponentQuadratic::constant(n, k as i64 - 2 * j as i64 + 1));
        acc = acc.sub(&l.mul_linear(&shifted));
    }
    acc
}

pub fn eig_quantum_casimir(p: &Pattern, k: usize) -> QEigenvalue {
    QEigenvalue::from_exponent(quantum_casimir_exponent(p, k))
}

/// Exponent of the corrected Casimir: the raw exponent plus that of
/// `Π_{j<=k} t_jj^{k-2} v^{Σ_{j<=k} (λ_nj - j)(λ_nj - j + 1) - k(k-1)(k-2)/3}`.
pub fn corrected_quantum_casimir_exponent(p: &Pattern, k: usize) -> ExponentQuadratic {
    let n = p.n();
    let mut acc = quantum_casimir_exponent(p, k);
    for j in 1..=k {
        let tjj = ExponentQuadratic::from_monomial(&eig_quantum_cartan(p, j));
        acc = acc.add(&tjj.scale(k as i64 - 2));
        let top = lambda(p, n, j).add(&ExponentQuadratic::constant(n, -(j as i64)));
        acc = acc.add(&top.mul_linear(&top.add(&ExponentQuadratic::constant(n, 1))));
    }
    let k = k as i64;
    acc.add(&ExponentQuadratic::constant(n, -(k * (k - 1) * (k - 2) / 3)))
}

/// The corrected eigenvalue, `None` if the quadratic `τ`-part survives.
pub fn eig_corrected_quantum_casimir(p: &Pattern, k: usize) -> Option<LaurentMonomial> {
    corrected_quantum_casimir_exponent(p, k).to_monomial()
}

/// Eigenvalue of `[D_k]` on `[p]`: `Π_{j<=k} t_j^{2 - 2d_kj} v^{d_kj(d_kj - 1)}`.
pub fn eig_det_class_k(p: &Pattern, k: usize) -> LaurentMonomial {
    let n = p.n();
    let mut t = vec![0i64; n];
    let mut v = 0i64;
    for j in 1..=k {
        let d = p.get(k, j) as i64;
        t[j - 1] = 2 - 2 * d;
        v += d * (d - 1);
    }
    LaurentMonomial::new(t, v)
}

/// `c = (v² - 1)^{-|d|} v^E Π_i t_i^{i(d_i - d_{i-1})} Π_j t_j^{Σ_{k>=j} d_kj}`,
/// with `i` running over `1..n-1`. The exponent `E` is kept doubled so a
/// half-integer can be seen rather than rounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationConstant {
    /// `|d|`, the power of `(v² - 1)^{-1}`.
    pub denominator_power: u32,
    /// `2E`.
    pub v_exponent_twice: i64,
    pub t: Vec<i64>,
}

impl NormalizationConstant {
    pub fn v_exponent_is_integral(&self) -> bool {
        self.v_exponent_twice % 2 == 0
    }

    /// `v^E Π t^..`, when `E` is an integer.
    pub fn monomial(&self) -> Option<LaurentMonomial> {
        self.v_exponent_is_integral()
            .then(|| LaurentMonomial::new(self.t.clone(), self.v_exponent_twice / 2))
    }
}

impl fmt::Display for NormalizationConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator_power > 0 {
            write!(f, "(v^2-1)^-{} ", self.denominator_power)?;
        }
        match self.monomial() {
            Some(m) => write!(f, "{m}"),
            None => write!(f, "v^({}/2) t{:?}", self.v_exponent_twice, self.t),
        }
    }
}

pub fn normalization_constant(p: &Pattern) -> NormalizationConstant {
    let n = p.n();
    let d = p.degree();
    let dd = |i: usize| d.get(i) as i64;
    let mut twice = 2 * d.total() as i64;
    let mut t = vec![0i64; n];
    for i in 1..n {
        let ii = i as i64;
        twice += 2 * ii * dd(i - 1) * dd(i);
        twice -= (2 * ii + 1) * dd(i) * dd(i);
        t[i - 1] += ii * (dd(i) - dd(i - 1));
        for j in 1..=i {
            let dij = p.get(i, j) as i64;
            twice -= dij * dij;
            t[j - 1] += dij;
        }
    }
    NormalizationConstant {
        denominator_power: d.total(),
        v_exponent_twice: twice,
        t,
    }
}

/// Integrality of every normalization exponent for `|d| <= dmax`.
pub fn check_normalization_integrality(n: usize, dmax: u32) -> VerificationReport {
    let anchor = "normalization of fixed-point classes";
    let mut report = VerificationReport::new("ktheory-normalization");
    for d in DegreeVector::all_up_to(n, dmax) {
        let mut bad = None;
        for p in enumerate_patterns(n, &d) {
            let c = normalization_constant(&p);
            if !c.v_exponent_is_integral() {
                bad = Some(format!("{p}: v-exponent {}/2", c.v_exponent_twice));
                break;
            }
        }
        match bad {
            None => report.check(format!("v-exponent integral on V{d}"), anchor, true, String::new),
            Some(w) => report.finding(format!("v-exponent integral on V{d}"), anchor, w),
        }
    }
    report
}

/// On every pattern with `|d| <= dmax`: the corrected Casimir is a Laurent
/// monomial for `k <= n`, and `[D_k]² · W̃Cas^v_k = 1` for `k <= n-1`.
/// When the squared identity fails, whether `[D_k] · W̃Cas^v_k = 1` holds is
/// recorded as a finding.
pub fn check_quantum_identities(n: usize, dmax: u32) -> VerificationReport {
    let anchor = "[D_k] as the inverse square root of the corrected quantum Casimir";
    let mut report = VerificationReport::new("ktheory-identities");
    for d in DegreeVector::all_up_to(n, dmax) {
        let patterns = enumerate_patterns(n, &d);
        let mut cancel = None;
        for p in &patterns {
            for k in 1..=n {
                let e = corrected_quantum_casimir_exponent(p, k);
                if cancel.is_none() && !e.quadratic_is_zero() {
                    cancel = Some(format!("{p}, k={k}: exponent {e}"));
                }
            }
        }
        report.check(format!("tau-quadratic cancellation on V{d}"), anchor, cancel.is_none(), || {
            cancel.clone().unwrap_or_default()
        });
        for k in 1..n {
            let mut squared = None;
            let mut first_power = None;
            for p in &patterns {
                let Some(cas) = eig_corrected_quantum_casimir(p, k) else { continue };
                let dk = eig_det_class_k(p, k);
                let sq = dk.pow(2).mul(&cas);
                if squared.is_none() && !sq.is_one() {
                    squared = Some(format!("{p}: [D{k}]^2 * corrected Cas = {sq}"));
                }
                let once = dk.mul(&cas);
                if first_power.is_none() && !once.is_one() {
                    first_power = Some(format!("{p}: [D{k}] * corrected Cas = {once}"));
                }
            }
            report.check(format!("[D{k}]^2 * corrected Cas{k} = 1 on V{d}"), anchor, squared.is_none(), || {
                squared.clone().unwrap_or_default()
            });
            if squared.is_some() {
                report.finding(
                    format!("[D{k}] * corrected Cas{k} on V{d}"),
                    anchor,
                    match &first_power {
                        None => String::from("equals 1 on every pattern: [D_k] is the inverse, not the inverse square root"),
                        Some(w) => w.clone(),
                    },
                );
            }
        }
    }
    report
}

/// The `k >= 2` with `d_k != 0 != d_{k-1}`.
pub fn k_generators(d: &DegreeVector) -> Vec<usize> {
    (2..d.n()).filter(|&k| d.get(k) != 0 && d.get(k - 1) != 0).collect()
}

/// The `[D_k]` eigenvalues over [`k_generators`] separate the patterns of `V_d`.
pub fn check_k_separation(n: usize, d: &DegreeVector) -> VerificationReport {
    let anchor = "generators of the localized K-ring";
    let mut report = VerificationReport::new("ktheory-separation");
    let gens = k_generators(d);
    let patterns = enumerate_patterns(n, d);
    let label = format!("[D_k], k in {gens:?}, separate V{d} (dim {})", patterns.len());
    if patterns.len() <= 1 {
        report.vacuous(label, anchor);
        return report;
    }
    let mut seen = BTreeSet::new();
    let mut collision = None;
    for p in &patterns {
        let key: Vec<String> = gens.iter().map(|&k| format!("{}", eig_det_class_k(p, k))).collect();
        if !seen.insert(key.clone()) {
            collision = Some(format!("{p} repeats {key:?}"));
            break;
        }
    }
    report.check(label, anchor, collision.is_none(), || collision.clone().unwrap_or_default());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn pat(rows: &[Vec<u32>]) -> Pattern {
        Pattern::from_rows(rows).unwrap()
    }

    #[test]
    fn cartan_values() {
        let p = pat(&[vec![3]]);
        assert_eq!(eig_quantum_cartan(&p, 1), LaurentMonomial::new(vec![1, 0], -3));
        assert_eq!(eig_quantum_cartan(&p, 2), LaurentMonomial::new(vec![0, 1], 4));
        let z = Pattern::zero(3);
        assert_eq!(eig_quantum_cartan(&z, 3), LaurentMonomial::new(vec![0, 0, 1], 2));
    }

    #[test]
    fn det_class_values() {
        assert_eq!(eig_det_class_k(&Pattern::zero(3), 2), LaurentMonomial::new(vec![2, 2, 0], 0));
        let p = pat(&[vec![1], vec![1, 0]]);
        assert_eq!(eig_det_class_k(&p, 2), LaurentMonomial::new(vec![0, 2, 0], 0));
    }

    #[test]
    fn raw_casimir_is_not_monomial() {
        assert!(matches!(eig_quantum_casimir(&Pattern::zero(3), 2), QEigenvalue::Symbolic(_)));
    }

    #[test]
    fn corrected_zero_pattern() {
        // linear τ-part: Σ_j (2 d_kj - 2) τ_j
        let m = eig_corrected_quantum_casimir(&Pattern::zero(3), 2).unwrap();
        assert_eq!(m.t_exponents(), &[-2, -2, 0]);
    }

    #[test]
    fn normalization_values() {
        let c = normalization_constant(&Pattern::zero(3));
        assert_eq!(c.monomial().unwrap(), LaurentMonomial::one(3));
        assert_eq!(c.denominator_power, 0);
        let c = normalization_constant(&pat(&[vec![1]]));
        assert_eq!(c.denominator_power, 1);
        assert_eq!(c.monomial().unwrap(), LaurentMonomial::new(vec![2, 0], -1));
        assert_eq!(format!("{c}"), "(v^2-1)^-1 t1^2 t2^0 v^-1");
    }

    #[test]
    fn separation_examples() {
        let r = check_k_separation(3, &DegreeVector(vec![1, 1]));
        assert_eq!(r.items[0].status, Status::Pass);
        let r = check_k_separation(2, &DegreeVector(vec![3]));
        assert_eq!(r.items[0].status, Status::Vacuous);
        let r = check_k_separation(4, &DegreeVector(vec![1, 1, 1]));
        assert_eq!(r.items[0].status, Status::Pass);
    }
}
