use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{padded_window, symbols, GlFamily, GradedOperator, Weights};
use crate::error::Error;
use crate::exactalg::identity::random_point;
use crate::exactalg::{CheckMode, FieldElem, Scalar};
use crate::patterns::DegreeVector;
use crate::report::{ReportItem, Status, VerificationReport};

/// The relation `[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl RelationSpec {
    pub fn label(&self) -> String {
        let (a, b) = self.left;
        let (c, d) = self.right;
        format!("[E{a}{b},E{c}{d}]")
    }
}

/// Every unordered pair of distinct `E_ij`, in lexicographic order.
pub fn gl_relation_specs(n: usize) -> Vec<RelationSpec> {
    let gens: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for (k, &l) in gens.iter().enumerate() {
        for &r in &gens[k + 1..] {
            out.push(RelationSpec { left: l, right: r });
        }
    }
    out
}

/// Right-hand side of a relation, `None` when it is zero.
fn expected<S: Scalar>(fam: &GlFamily<S>, spec: RelationSpec) -> Option<GradedOperator<S>> {
    let (a, b) = spec.left;
    let (c, d) = spec.right;
    let first = (b == c).then(|| fam.get(a, d).clone());
    let second = (d == a).then(|| fam.get(c, b).clone());
    match (first, second) {
        (Some(x), Some(y)) => Some(x.sub(&y)),
        (Some(x), None) => Some(x),
        (None, Some(y)) => Some(y.scale(&S::from_i64(-1))),
        (None, None) => None,
    }
}

/// Checks one relation on the blocks with `|d| <= dmax`. Returns the number of
/// blocks compared and the first failing entry, if any.
pub fn check_relation<S: Scalar>(
    fam: &GlFamily<S>,
    spec: RelationSpec,
    dmax: u32,
) -> (usize, Option<String>) {
    let lhs = fam.get(spec.left.0, spec.left.1).commutator(fam.get(spec.right.0, spec.right.1));
    let keep = |d: &DegreeVector| d.total() <= dmax;
    match expected(fam, spec) {
        Some(rhs) => {
            let (k, diff) = lhs.first_difference(&rhs, keep);
            (k, diff.map(|(d, r, c, v)| format!("degree {d}, entry ({r},{c}): {v}")))
        }
        None => {
            let mut compared = 0;
            for (d, m) in lhs.blocks() {
                if !keep(d) {
                    continue;
                }
                compared += 1;
                if let Some((r, c, v)) = m.entries().next() {
                    return (compared, Some(format!("degree {d}, entry ({r},{c}): {v}")));
                }
            }
            (compared, None)
        }
    }
}

pub(crate) fn relation_item(spec: RelationSpec, compared: usize, witness: Option<String>, anchor: &str) -> ReportItem {
    let label = format!("{} on {compared} blocks", spec.label());
    let status = match (&witness, compared) {
        (Some(_), _) => Status::Fail,
        (None, 0) => Status::Vacuous,
        (None, _) => Status::Pass,
    };
    ReportItem {
        label,
        anchor: anchor.into(),
        status,
        witness,
    }
}

const ANCHOR: &str = "gl(n) action on the fixed-point basis";

/// Checks every commutation relation of `gl(n)` with the given family.
pub fn check_gl_relations_with<S: Scalar>(fam: &GlFamily<S>, dmax: u32) -> VerificationReport {
    let mut report = VerificationReport::new("verify-gl");
    for spec in gl_relation_specs(fam.n()) {
        let (k, w) = check_relation(fam, spec, dmax);
        report.push(relation_item(spec, k, w, ANCHOR));
    }
    report
}

/// Exact or randomized check of the `gl(n)` relations on all `|d| <= dmax`.
///
/// In random-evaluation mode the whole construction is repeated at `trials`
/// random rational points; an item passes only if it vanishes at every one.
pub fn check_gl_relations(n: usize, dmax: u32, mode: CheckMode) -> Result<VerificationReport, Error> {
    let window = padded_window(n, dmax);
    match mode {
        CheckMode::Exact => {
            let fam = GlFamily::build(&Weights::<FieldElem>::symbolic(n), &window)?;
            Ok(check_gl_relations_with(&fam, dmax))
        }
        CheckMode::RandomEval { trials, seed } => {
            if trials == 0 {
                return Err(Error::InvalidArgument("random-eval needs at least one trial".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut merged: Option<VerificationReport> = None;
            for _ in 0..trials {
                let fam = random_family(n, &window, &mut rng)?;
                let r = check_gl_relations_with(&fam, dmax);
                merged = Some(match merged {
                    None => r,
                    Some(mut acc) => {
                        for (a, b) in acc.items.iter_mut().zip(r.items) {
                            if a.status != Status::Fail && b.status == Status::Fail {
                                *a = b;
                            }
                        }
                        acc
                    }
                });
            }
            Ok(merged.expect("at least one trial"))
        }
    }
}

/// Builds the family at a random point, redrawing when a coefficient has a pole there.
pub(crate) fn random_family(
    n: usize,
    window: &[DegreeVector],
    rng: &mut ChaCha8Rng,
) -> Result<GlFamily<num_rational::BigRational>, Error> {
    let vars = symbols(n);
    let mut last = Error::DivisionByZero;
    for _ in 0..16 {
        let w = Weights::at_point(n, &random_point(&vars, rng))?;
        match GlFamily::build(&w, window) {
            Ok(f) => return Ok(f),
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_exact() {
        let r = check_gl_relations(2, 3, CheckMode::Exact).unwrap();
        assert!(!r.has_failures(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.items.len(), 6);
    }

    #[test]
    fn rank_three_random() {
        let r = check_gl_relations(3, 1, CheckMode::RandomEval { trials: 2, seed: 5 }).unwrap();
        assert!(!r.has_failures(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn a_wrong_seed_is_caught() {
        let w = Weights::<FieldElem>::symbolic(2);
        let win = padded_window(2, 2);
        let fam = GlFamily::build(&w, &win).unwrap();
        let bad_f = fam.f(1).scale(&FieldElem::from_i64(2));
        let broken = GlFamily::from_seeds(
            2,
            alloc::vec![fam.e(1).clone()],
            alloc::vec![bad_f],
            alloc::vec![fam.get(1, 1).clone(), fam.get(2, 2).clone()],
        );
        let r = check_gl_relations_with(&broken, 2);
        assert!(r.has_failures());
    }
}
