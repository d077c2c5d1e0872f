//! Generator matrices, Casimir eigenvalues, Whittaker components and the
//! ring table, checked against hand-derived values.

use num_rational::BigRational;
use vermalab_core::exactalg::{FieldElem, Var};
use vermalab_core::gtalg::{eig_det_bundle, eig_tilde_casimir};
use vermalab_core::patterns::{enumerate_patterns, DegreeVector};
use vermalab_core::verma::{padded_window, GlFamily, Weights};
use vermalab_core::whittaker::{ring_structure, whittaker_component};

fn deg(d: &[u32]) -> DegreeVector {
    DegreeVector(d.to_vec())
}

fn h() -> FieldElem {
    FieldElem::hbar()
}

#[test]
fn rank_two_ladder_and_cartan_commutator() {
    let w = Weights::symbolic(2);
    let fam = GlFamily::build(&w, &padded_window(2, 6)).unwrap();
    let hinv = h().inv().unwrap();
    let gap = FieldElem::x(2).sub(&FieldElem::x(1));
    for m in 0..=5i64 {
        let d = deg(&[m as u32]);
        assert_eq!(fam.e(1).block(&d).unwrap().at(0, 0), hinv.neg());
        if m > 0 {
            let want = FieldElem::from_i64(m).mul(&gap.add(&h().scale_i64(m)));
            assert_eq!(fam.f(1).block(&d).unwrap().at(0, 0), want);
        }
        let c = fam.e(1).commutator(fam.f(1));
        let want = gap.mul(&hinv).add(&FieldElem::from_i64(2 * m + 1));
        assert_eq!(c.block(&d).unwrap().at(0, 0), want, "m={m}");
    }
}

#[test]
fn e13_is_the_block_product_of_lowering_blocks() {
    let fam = GlFamily::build(&Weights::symbolic(3), &padded_window(3, 2)).unwrap();
    let d = deg(&[1, 1]);
    let f1 = fam.get(1, 2);
    let f2 = fam.get(2, 3);
    // E13 = E12 E23 - E23 E12, composed through V(1,0) and V(0,1)
    let via_10 = f1.block(&deg(&[1, 0])).unwrap().mul(f2.block(&d).unwrap());
    let via_01 = f2.block(&deg(&[0, 1])).unwrap().mul(f1.block(&d).unwrap());
    assert_eq!(fam.get(1, 3).block(&d).unwrap(), &via_10.sub(&via_01));
    // no target of degree (-1, 0)
    let empty = fam.get(1, 3).block(&deg(&[0, 1])).unwrap();
    assert_eq!(empty.rows(), 0);
}

#[test]
fn commutator_of_root_vectors_is_cartan() {
    for n in 2..=3 {
        let fam = GlFamily::build(&Weights::symbolic(n), &padded_window(n, 3)).unwrap();
        let c = fam.get(1, 2).commutator(fam.get(2, 1));
        let want = fam.get(1, 1).sub(fam.get(2, 2));
        for d in DegreeVector::all_up_to(n, 3) {
            assert_eq!(c.block(&d).unwrap(), want.block(&d).unwrap(), "n={n} {d:?}");
            let diag = fam.get(1, 1).commutator(fam.get(2, 2));
            assert!(diag.block(&d).unwrap().is_zero());
        }
    }
}

#[test]
fn det_bundle_is_half_h_times_corrected_casimir() {
    let half_h = h().div(&FieldElem::from_i64(2)).unwrap();
    for n in 2..=4 {
        let w = Weights::symbolic(n);
        for d in DegreeVector::all_up_to(n, 4) {
            for p in enumerate_patterns(n, &d) {
                for k in 1..=n {
                    let lhs = eig_det_bundle(&w, &p, k);
                    assert_eq!(lhs, half_h.mul(&eig_tilde_casimir(&w, &p, k).unwrap()), "{p} k={k}");
                }
            }
        }
    }
    let w = Weights::symbolic(3);
    let p = &enumerate_patterns(3, &deg(&[1, 1]))[1];
    assert_eq!(p.get(2, 1), 1);
    assert_eq!(eig_det_bundle(&w, p, 2), FieldElem::x(2));
    assert_eq!(eig_tilde_casimir(&w, p, 2).unwrap(), FieldElem::x(2).scale_i64(2).div(&h()).unwrap());
}

/// From `f_1 v_m = v_(m-1)/h` with the rank-two `f_1` entry `m(x2 - x1 + m h)`.
#[test]
fn rank_two_whittaker_recursion() {
    let gap = FieldElem::x(2).sub(&FieldElem::x(1));
    let mut expected = FieldElem::one();
    for m in 0..=4i64 {
        if m > 0 {
            let entry = FieldElem::from_i64(m).mul(&gap.add(&h().scale_i64(m)));
            expected = expected.div(&h()).unwrap().div(&entry).unwrap();
        }
        let comp = whittaker_component(2, &deg(&[m as u32])).unwrap();
        assert_eq!(comp.values(), vec![expected.clone()], "m={m}");
    }
    let one = whittaker_component(2, &deg(&[1])).unwrap().values();
    assert_eq!(one[0], h().mul(&gap.add(&h())).inv().unwrap());
}

#[test]
fn rank_three_whittaker_components_are_nonzero() {
    for d in DegreeVector::all_up_to(3, 3) {
        let comp = whittaker_component(3, &d).unwrap();
        assert!(comp.values().iter().all(|v| !v.is_zero()), "{d:?}");
    }
}

/// At `x = (0,1,2)`, `h = 1` the two patterns of `V(1,1)` give `c1(D2)`
/// values 1 and 0, so `c1(D2)^2 = c1(D2)` in the basis `{1, c1(D2)}`.
#[test]
fn ring_of_rank_three_degree_11() {
    let r = |v: i64| BigRational::from_integer(v.into());
    let point: Vec<(Var, BigRational)> =
        vec![(Var::X(1), r(0)), (Var::X(2), r(1)), (Var::X(3), r(2)), (Var::Hbar, r(1))];
    let table = ring_structure(3, &deg(&[1, 1]), &point).unwrap();
    assert_eq!(table.generators, vec!["c1(D2)".to_string()]);
    assert_eq!(table.basis, vec![vec![0], vec![1]]);
    assert_eq!(table.generator_products, vec![(0, 0, vec![r(0), r(1)])]);
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(table.product(a, b), table.product(b, a));
        }
    }
    let single = ring_structure(2, &deg(&[2]), &point[..3].iter().filter(|(v, _)| *v != Var::X(3)).cloned().collect::<Vec<_>>());
    assert_eq!(single.unwrap().basis, vec![Vec::<u32>::new()]);
}
