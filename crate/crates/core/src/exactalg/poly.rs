//! Sparse multivariate polynomials with integer coefficients.
//!
//! Every polynomial lives in one fixed symbol universe: `x1..x8`, `h` (for ħ),
//! `q2..q7`. Unused symbols simply carry exponent zero, so polynomials built
//! for different `n` mix freely. Terms are kept sorted in *descending*
//! graded-lexicographic order (total degree first, then the exponent of the
//! largest symbol, with `x1 < … < x8 < h < q2 < … < q7`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest supported rank.
pub const MAX_N: usize = 8;
const HBAR_SLOT: usize = MAX_N;
const Q_BASE: usize = MAX_N + 1;
/// Number of exponent slots in a [`Monomial`].
pub const NSLOTS: usize = MAX_N + 1 + (MAX_N - 2);

/// A symbol of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Equivariant parameter `x_i`, `1 <= i <= MAX_N`.
    X(u8),
    /// The loop-rotation parameter ħ.
    Hbar,
    /// Quantum parameter `q_l`, `2 <= l <= MAX_N - 1`.
    Q(u8),
}

impl Var {
    pub fn slot(self) -> usize {
        match self {
            Var::X(i) => {
                assert!(i >= 1 && (i as usize) <= MAX_N, "x index {i} out of range");
                i as usize - 1
            }
            Var::Hbar => HBAR_SLOT,
            Var::Q(l) => {
                assert!(l >= 2 && (l as usize) < MAX_N, "q index {l} out of range");
                Q_BASE + l as usize - 2
            }
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        match slot {
            s if s < MAX_N => Var::X(s as u8 + 1),
            HBAR_SLOT => Var::Hbar,
            s => Var::Q((s - Q_BASE) as u8 + 2),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Hbar => f.write_str("h"),
            Var::Q(l) => write!(f, "q{l}"),
        }
    }
}

/// Exponent vector over the fixed symbol universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; NSLOTS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NSLOTS]);

    pub fn var(v: Var) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[v.slot()] = 1;
        m
    }

    pub fn exp(&self, slot: usize) -> u16 {
        self.0[slot]
    }

    pub fn exponents(&self) -> &[u16; NSLOTS] {
        &self.0
    }

    pub fn with_exp(mut self, slot: usize, e: u16) -> Monomial {
        self.0[slot] = e;
        self
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = o.checked_add(*e).expect("exponent overflow");
        }
        out
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = o.checked_sub(*e)?;
        }
        Some(out)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = (*o).min(*e);
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (slot, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", Var::from_slot(slot))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over the integers; canonical (sorted, no zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> MultiPoly {
        if c.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly {
                terms: alloc::vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::term(Monomial::var(v), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> MultiPoly {
        if c.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        MultiPoly::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, BigInt>) -> MultiPoly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> BigInt {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, slot: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(slot)).max().unwrap_or(0)
    }

    /// Bitmask of the symbol slots that occur.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for (slot, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << slot;
                }
            }
        }
        mask
    }

    pub fn vars(&self) -> Vec<Var> {
        let mask = self.support_mask();
        (0..NSLOTS)
            .filter(|s| mask & (1 << s) != 0)
            .map(Var::from_slot)
            .collect()
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        MultiPoly { terms: out }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    alloc::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        MultiPoly::from_map(acc)
    }

    /// Multiplication by a single term; order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division of every coefficient by `c`; `None` if some coefficient is not divisible.
    pub fn div_scalar(&self, c: &BigInt) -> Option<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((*m, q));
        }
        Some(MultiPoly { terms })
    }

    /// Nonnegative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn max_norm(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Gcd of all monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |g, (m, _)| g.gcd(m))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if divisor.is_monomial() {
            let (dm, dc) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((m.div(dm)?, q));
            }
            return Some(MultiPoly { terms });
        }
        let (lm, lc) = divisor.terms[0].clone();
        // the quotient's support is bounded by degree, which lets us bail out early
        if self.total_degree() < divisor.total_degree() {
            return None;
        }
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &divisor.terms[1..] {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.entry(key) {
                    alloc::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(MultiPoly { terms: quot })
    }

    /// Substitutes the integer `value` for the symbol in `slot`.
    pub fn eval_slot(&self, slot: usize, value: &BigInt) -> MultiPoly {
        let mut powers: Vec<BigInt> = alloc::vec![BigInt::one()];
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(slot) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            (m.with_exp(slot, 0), c * &powers[e])
        }))
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> MultiPoly {
        let slot = v.slot();
        MultiPoly::from_terms(self.terms.iter().filter(|(m, _)| m.exp(slot) > 0).map(
            |(m, c)| {
                let e = m.exp(slot);
                (m.with_exp(slot, e - 1), c * BigInt::from(e))
            },
        ))
    }

    /// Renames the `x` symbols: `x_j` becomes `x_{perm[j-1]}` (one-based images).
    pub fn permute_x(&self, perm: &[usize]) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut out = *m;
            for slot in out.0.iter_mut().take(perm.len()) {
                *slot = 0;
            }
            for (j, &target) in perm.iter().enumerate() {
                out.0[target - 1] = m.0[j];
            }
            (out, c.clone())
        }))
    }

    /// Applies `ħ ↦ -ħ`.
    pub fn negate_hbar(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    if m.exp(HBAR_SLOT) % 2 == 1 {
                        (*m, -c)
                    } else {
                        (*m, c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Substitutes rationals for some symbols. Returns an integer polynomial
    /// `p` and a positive integer `s` with `self|_{subs} = p / s`.
    pub fn specialize(&self, subs: &[(Var, BigRational)]) -> (MultiPoly, BigInt) {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = BigRational::from_integer(c.clone());
            let mut rest = *m;
            for (v, val) in subs {
                let slot = v.slot();
                let e = m.exp(slot);
                if e > 0 {
                    coeff *= num_traits::pow(val.clone(), e as usize);
                    rest = rest.with_exp(slot, 0);
                }
            }
            *acc.entry(rest).or_insert_with(BigRational::zero) += coeff;
        }
        let mut lcm = BigInt::one();
        for c in acc.values() {
            lcm = lcm.lcm(c.denom());
        }
        let poly = MultiPoly::from_terms(
            acc.into_iter()
                .map(|(m, c)| (m, (c * BigRational::from_integer(lcm.clone())).to_integer())),
        );
        (poly, lcm)
    }

    /// Full evaluation; `None` if a symbol that occurs has no value.
    pub fn eval(&self, values: &[(Var, BigRational)]) -> Option<BigRational> {
        let (p, s) = self.specialize(values);
        if !p.is_constant() {
            return None;
        }
        Some(BigRational::new(p.constant_term(), s))
    }

    /// Splits into coefficients with respect to one symbol: `(exponent, coefficient)`, descending.
    pub fn coefficients_in(&self, slot: usize) -> Vec<(u16, MultiPoly)> {
        let mut by_exp: BTreeMap<u16, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_exp
                .entry(m.exp(slot))
                .or_default()
                .push((m.with_exp(slot, 0), c.clone()));
        }
        by_exp
            .into_iter()
            .rev()
            .map(|(e, ts)| (e, MultiPoly::from_terms(ts)))
            .collect()
    }

    /// Inverse of [`MultiPoly::coefficients_in`].
    pub fn from_coefficients_in(slot: usize, coeffs: &[(u16, MultiPoly)]) -> MultiPoly {
        MultiPoly::from_terms(coeffs.iter().flat_map(|(e, p)| {
            p.terms
                .iter()
                .map(move |(m, c)| (m.with_exp(slot, *e), c.clone()))
        }))
    }

    /// Normalizes the sign so that the leading coefficient is positive.
    pub fn with_positive_lead(self) -> MultiPoly {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.cmp(&other.terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u8) -> MultiPoly {
        MultiPoly::var(Var::X(i))
    }

    fn h() -> MultiPoly {
        MultiPoly::var(Var::Hbar)
    }

    #[test]
    fn graded_order_puts_hbar_above_x() {
        assert!(Monomial::var(Var::Hbar) > Monomial::var(Var::X(8)));
        assert!(Monomial::var(Var::Q(2)) > Monomial::var(Var::Hbar));
        assert!(Monomial::var(Var::X(2)) > Monomial::var(Var::X(1)));
        let x1sq = Monomial::var(Var::X(1)).mul(&Monomial::var(Var::X(1)));
        assert!(x1sq > Monomial::var(Var::Q(3)));
    }

    #[test]
    fn display_is_sorted() {
        let p = x(1).add(&h()).sub(&MultiPoly::constant(BigInt::from(3)));
        assert_eq!(alloc::format!("{p}"), "h + x1 - 3");
        let sq = p.mul(&p);
        assert_eq!(
            alloc::format!("{sq}"),
            "h^2 + 2*x1*h + x1^2 - 6*h - 6*x1 + 9"
        );
    }

    #[test]
    fn exact_division() {
        let a = x(1).sub(&x(2));
        let b = x(1).add(&x(2));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(prod.div_exact(&h()), None);
        assert_eq!(x(1).div_exact(&b), None);
    }

    #[test]
    fn permute_and_bar() {
        let p = x(1).mul(&h()).add(&x(2));
        // sigma = (2,1): x1 -> x2, x2 -> x1
        let q = p.permute_x(&[2, 1]);
        assert_eq!(q, x(2).mul(&h()).add(&x(1)));
        assert_eq!(p.negate_hbar(), x(2).sub(&x(1).mul(&h())));
    }

    #[test]
    fn specialize_clears_denominators() {
        let p = x(1).add(&h());
        let (s, den) = p.specialize(&[(Var::Hbar, BigRational::new(1.into(), 2.into()))]);
        assert_eq!(den, BigInt::from(2));
        assert_eq!(s, x(1).scale(&BigInt::from(2)).add(&MultiPoly::one()));
    }

    #[test]
    fn derivative_of_power() {
        let p = x(1).pow(3).mul(&h());
        assert_eq!(
            p.derivative(Var::X(1)),
            x(1).pow(2).mul(&h()).scale(&BigInt::from(3))
        );
        assert!(p.derivative(Var::Q(2)).is_zero());
    }
}
