//! Multivariate gcd over the integers.
//!
//! The workhorse is the heuristic gcd of Char, Geddes and Gonnet: evaluate one
//! symbol at a large integer, recurse, and lift the result back by reading its
//! coefficients as digits in a balanced base. Every candidate is confirmed by
//! exact division, so a wrong guess can only cost time. After a few failed
//! evaluation points we fall back to a primitive pseudo-remainder sequence,
//! which always terminates with the right answer.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::{Monomial, MultiPoly, NSLOTS};

const HEU_GCD_ATTEMPTS: usize = 6;

/// Greatest common divisor with positive leading coefficient (zero iff both inputs are zero).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_cofactors(a, b).0
}

/// Returns `(g, a / g, b / g)` with `g = gcd(a, b)` normalized to a positive leading coefficient.
pub fn gcd_cofactors(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly, MultiPoly) {
    if a.is_zero() && b.is_zero() {
        return (MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero());
    }
    if a.is_zero() {
        let g = b.clone().with_positive_lead();
        let cb = if g == *b { MultiPoly::one() } else { MultiPoly::one().neg() };
        return (g, MultiPoly::zero(), cb);
    }
    if b.is_zero() {
        let g = a.clone().with_positive_lead();
        let ca = if g == *a { MultiPoly::one() } else { MultiPoly::one().neg() };
        return (g, ca, MultiPoly::zero());
    }
    if a.is_one() || b.is_one() {
        return (MultiPoly::one(), a.clone(), b.clone());
    }
    let g = if a.is_constant() || b.is_constant() {
        MultiPoly::constant(a.content().gcd(&b.content()))
    } else if a.is_monomial() || b.is_monomial() {
        let c = a.content().gcd(&b.content());
        MultiPoly::term(a.monomial_content().gcd(&b.monomial_content()), c)
    } else if a == b {
        a.clone().with_positive_lead()
    } else {
        match heu_gcd(a, b) {
            Some((g, ca, cb)) => {
                if g.leading_coeff().is_negative() {
                    return (g.neg(), ca.neg(), cb.neg());
                }
                return (g, ca, cb);
            }
            None => prs_gcd(a, b),
        }
    };
    let g = g.with_positive_lead();
    let ca = a.div_exact(&g).expect("gcd divides its first argument");
    let cb = b.div_exact(&g).expect("gcd divides its second argument");
    (g, ca, cb)
}

fn first_active_slot(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    let mask = a.support_mask() | b.support_mask();
    (0..NSLOTS).find(|s| mask & (1 << s) != 0)
}

fn heu_gcd(f: &MultiPoly, g: &MultiPoly) -> Option<(MultiPoly, MultiPoly, MultiPoly)> {
    let Some(slot) = first_active_slot(f, g) else {
        let (a, b) = (f.constant_term(), g.constant_term());
        let h = a.gcd(&b);
        return Some((
            MultiPoly::constant(h.clone()),
            MultiPoly::constant(&a / &h),
            MultiPoly::constant(&b / &h),
        ));
    };
    let cont = f.content().gcd(&g.content());
    let f = f.div_scalar(&cont).expect("content divides");
    let g = g.div_scalar(&cont).expect("content divides");

    let f_norm = f.max_norm();
    let g_norm = g.max_norm();
    let bound = BigInt::from(2) * (&f_norm).min(&g_norm) + BigInt::from(29);
    let lead_bound = (&f_norm / f.leading_coeff().abs()).min(&g_norm / g.leading_coeff().abs());
    let mut x = core::cmp::max(
        core::cmp::min(bound.clone(), BigInt::from(99) * bound.sqrt()),
        BigInt::from(2) * lead_bound + BigInt::from(4),
    );

    for _ in 0..HEU_GCD_ATTEMPTS {
        let ff = f.eval_slot(slot, &x);
        let gg = g.eval_slot(slot, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let (h, cff, cfg) = heu_gcd(&ff, &gg)?;

            let h = interpolate(&h, &x, slot);
            let h_cont = h.content();
            let h = h.div_scalar(&h_cont).expect("content divides");
            if let Some(cff_) = f.div_exact(&h) {
                if let Some(cfg_) = g.div_exact(&h) {
                    return Some((h.scale(&cont), cff_, cfg_));
                }
            }

            let cff = interpolate(&cff, &x, slot);
            if let Some(h) = f.div_exact(&cff) {
                if let Some(cfg_) = g.div_exact(&h) {
                    return Some((h.scale(&cont), cff, cfg_));
                }
            }

            let cfg = interpolate(&cfg, &x, slot);
            if let Some(h) = g.div_exact(&cfg) {
                if let Some(cff_) = f.div_exact(&h) {
                    return Some((h.scale(&cont), cff_, cfg));
                }
            }
        }
        x = BigInt::from(73794) * &x * x.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Reads the integer coefficients of `h` as balanced base-`x` digits in the symbol `slot`.
fn interpolate(h: &MultiPoly, x: &BigInt, slot: usize) -> MultiPoly {
    let half = x / BigInt::from(2);
    let mut rest = h.clone();
    let mut digits: Vec<(u16, MultiPoly)> = Vec::new();
    let mut power = 0u16;
    while !rest.is_zero() {
        let digit = MultiPoly::from_terms(rest.terms().iter().map(|(m, c)| {
            let mut r = c.mod_floor(x);
            if r > half {
                r -= x;
            }
            (*m, r)
        }));
        rest = rest
            .sub(&digit)
            .div_scalar(x)
            .expect("balanced residue leaves a multiple of x");
        if !digit.is_zero() {
            digits.push((power, digit));
        }
        power += 1;
    }
    let out = MultiPoly::from_coefficients_in(slot, &digits);
    out.with_positive_lead()
}

/// Gcd via contents and primitive pseudo-remainder sequences. Slow but unconditional.
pub(crate) fn prs_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone().with_positive_lead();
    }
    if b.is_zero() {
        return a.clone().with_positive_lead();
    }
    let Some(slot) = first_active_slot(a, b) else {
        return MultiPoly::constant(a.constant_term().gcd(&b.constant_term()));
    };
    let ca = content_in(a, slot);
    let cb = content_in(b, slot);
    let c = prs_gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(slot) < q.degree_in(slot) {
        core::mem::swap(&mut p, &mut q);
    }
    while q.degree_in(slot) > 0 {
        let r = pseudo_rem(&p, &q, slot);
        if r.is_zero() {
            break;
        }
        let cr = content_in(&r, slot);
        p = q;
        q = r.div_exact(&cr).expect("content divides");
    }
    let g = if q.degree_in(slot) == 0 { MultiPoly::one() } else { q };
    c.mul(&g).with_positive_lead()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in the symbol `slot`.
fn content_in(p: &MultiPoly, slot: usize) -> MultiPoly {
    let coeffs = p.coefficients_in(slot);
    let mut g = MultiPoly::zero();
    for (_, c) in &coeffs {
        g = prs_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        MultiPoly::one()
    } else {
        g
    }
}

fn pseudo_rem(p: &MultiPoly, q: &MultiPoly, slot: usize) -> MultiPoly {
    let dq = q.degree_in(slot);
    let q_coeffs = q.coefficients_in(slot);
    let lead_q = q_coeffs[0].1.clone();
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(slot) >= dq {
        let dr = r.degree_in(slot);
        let lead_r = r.coefficients_in(slot)[0].1.clone();
        let shift = Monomial::ONE.with_exp(slot, dr - dq);
        r = r
            .mul(&lead_q)
            .sub(&q.mul(&lead_r).mul_term(&shift, &BigInt::one()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::Var;

    fn x(i: u8) -> MultiPoly {
        MultiPoly::var(Var::X(i))
    }
    fn h() -> MultiPoly {
        MultiPoly::var(Var::Hbar)
    }
    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(BigInt::from(v))
    }

    #[test]
    fn linear_factors() {
        let a = x(1).sub(&x(2)).add(&h());
        let b = x(2).sub(&x(3)).add(&h().scale(&BigInt::from(2)));
        let cf = x(3).add(&h());
        let p = a.mul(&b).mul(&cf).scale(&BigInt::from(6));
        let q = a.mul(&cf).mul(&cf).scale(&BigInt::from(-4));
        let (g, ca, cb) = gcd_cofactors(&p, &q);
        assert_eq!(g, a.mul(&cf).scale(&BigInt::from(2)).with_positive_lead());
        assert_eq!(g.mul(&ca), p);
        assert_eq!(g.mul(&cb), q);
    }

    #[test]
    fn coprime_inputs() {
        let p = x(1).mul(&x(1)).add(&c(1));
        let q = x(1).add(&h());
        assert_eq!(gcd(&p, &q), MultiPoly::one());
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let a = x(1).mul(&x(2)).sub(&h().pow(2)).add(&c(3));
        let b = x(1).sub(&c(7));
        let d = x(2).add(&x(1)).sub(&h());
        let p = a.mul(&b).mul(&b);
        let q = a.mul(&d).scale(&BigInt::from(3));
        let g1 = gcd(&p, &q);
        let g2 = prs_gcd(&p, &q);
        assert_eq!(g1, g2);
        assert_eq!(g1, a.with_positive_lead());
    }

    #[test]
    fn monomial_and_constant_shortcuts() {
        let p = x(1).mul(&h()).scale(&BigInt::from(4)).add(&h().pow(2).scale(&BigInt::from(6)));
        assert_eq!(gcd(&p, &h().pow(3).scale(&BigInt::from(10))), h().scale(&BigInt::from(2)));
        assert_eq!(gcd(&p, &c(9)), c(1));
        assert_eq!(gcd(&p, &c(4)), c(2));
    }
}
