//! The rational-function field `Q(x1..xn, h, q2..)` in canonical form.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::gcd::gcd_cofactors;
use super::poly::{MultiPoly, Var};
use crate::error::Error;

/// A reduced fraction of integer polynomials.
///
/// Canonical form: `gcd(num, den) = 1` over `Z[...]` (integer content
/// included) and the leading coefficient of `den` is positive. Two elements
/// are equal as functions iff their representations are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    num: MultiPoly,
    den: MultiPoly,
}

impl FieldElem {
    pub fn zero() -> FieldElem {
        FieldElem {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> FieldElem {
        FieldElem::from_poly(MultiPoly::one())
    }

    pub fn var(v: Var) -> FieldElem {
        FieldElem::from_poly(MultiPoly::var(v))
    }

    pub fn x(i: usize) -> FieldElem {
        FieldElem::var(Var::X(i as u8))
    }

    pub fn hbar() -> FieldElem {
        FieldElem::var(Var::Hbar)
    }

    pub fn q(l: usize) -> FieldElem {
        FieldElem::var(Var::Q(l as u8))
    }

    pub fn from_i64(v: i64) -> FieldElem {
        FieldElem::from_poly(MultiPoly::constant(BigInt::from(v)))
    }

    pub fn from_rational(r: &BigRational) -> FieldElem {
        FieldElem {
            num: MultiPoly::constant(r.numer().clone()),
            den: MultiPoly::constant(r.denom().clone()),
        }
    }

    pub fn from_poly(num: MultiPoly) -> FieldElem {
        FieldElem {
            num,
            den: MultiPoly::one(),
        }
    }

    /// Reduces `num / den` to canonical form.
    pub fn from_parts(num: MultiPoly, den: MultiPoly) -> Result<FieldElem, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElem::zero());
        }
        let (_, n, d) = gcd_cofactors(&num, &den);
        Ok(FieldElem::signed(n, d))
    }

    fn signed(num: MultiPoly, den: MultiPoly) -> FieldElem {
        if den.leading_coeff().is_negative() {
            FieldElem {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            FieldElem { num, den }
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if this element is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(BigRational::new(
                self.num.constant_term(),
                self.den.constant_term(),
            ))
        } else {
            None
        }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &FieldElem, negate: bool) -> FieldElem {
        let c = if negate { other.num.neg() } else { other.num.clone() };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return FieldElem {
                num: c,
                den: other.den.clone(),
            };
        }
        if self.den == other.den {
            let num = self.num.add(&c);
            if self.den.is_one() || num.is_zero() {
                return FieldElem::from_parts(num, self.den.clone()).expect("nonzero denominator");
            }
            let (_, n, d) = gcd_cofactors(&num, &self.den);
            return FieldElem::signed(n, d);
        }
        // a/b + c/d with g = gcd(b, d): every common factor of the new
        // numerator and denominator already divides g
        let (g, b1, d1) = gcd_cofactors(&self.den, &other.den);
        let num = self.num.mul(&d1).add(&c.mul(&b1));
        if num.is_zero() {
            return FieldElem::zero();
        }
        let den = b1.mul(&other.den);
        if g.is_one() {
            return FieldElem::signed(num, den);
        }
        let (h, _, _) = gcd_cofactors(&num, &g);
        if h.is_one() {
            return FieldElem::signed(num, den);
        }
        FieldElem::signed(
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        if self.is_zero() || other.is_zero() {
            return FieldElem::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return FieldElem::from_poly(self.num.mul(&other.num));
        }
        let (_, a1, d1) = gcd_cofactors(&self.num, &other.den);
        let (_, c1, b1) = gcd_cofactors(&other.num, &self.den);
        FieldElem::signed(a1.mul(&c1), b1.mul(&d1))
    }

    pub fn inv(&self) -> Result<FieldElem, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem::signed(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, Error> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<FieldElem, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(FieldElem {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Scales by an integer.
    pub fn scale_i64(&self, c: i64) -> FieldElem {
        self.mul(&FieldElem::from_i64(c))
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> FieldElem {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        FieldElem::from_parts(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// `f^σ`: substitutes `x_j ↦ x_{σ(j)}` (one-line notation, one-based).
    pub fn permute_x(&self, sigma: &[usize]) -> FieldElem {
        FieldElem::signed(self.num.permute_x(sigma), self.den.permute_x(sigma))
    }

    /// The bar involution `ħ ↦ -ħ`.
    pub fn bar(&self) -> FieldElem {
        FieldElem::signed(self.num.negate_hbar(), self.den.negate_hbar())
    }

    /// Substitutes rationals for some of the symbols.
    pub fn specialize(&self, subs: &[(Var, BigRational)]) -> Result<FieldElem, Error> {
        let (n, sn) = self.num.specialize(subs);
        let (d, sd) = self.den.specialize(subs);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: alloc::format!("{}", self.den),
            });
        }
        FieldElem::from_parts(n.scale(&sd), d.scale(&sn))
    }

    /// Exact value at a point covering every symbol that occurs.
    pub fn eval(&self, values: &[(Var, BigRational)]) -> Result<BigRational, Error> {
        let s = self.specialize(values)?;
        s.as_rational().ok_or_else(|| Error::UnassignedSymbol {
            expr: alloc::format!("{s}"),
        })
    }

    /// Symbols occurring in numerator or denominator.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
        vs.sort();
        vs
    }

    pub fn to_canonical_string(&self) -> String {
        alloc::format!("{self}")
    }

    /// Sum of the numerator and denominator term counts; a rough size measure.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn from_integer(v: BigInt) -> FieldElem {
        FieldElem::from_poly(MultiPoly::constant(v))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn one_half() -> FieldElem {
        FieldElem {
            num: MultiPoly::one(),
            den: MultiPoly::constant(BigInt::from(2)),
        }
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for FieldElem {
    fn from(v: i64) -> Self {
        FieldElem::from_i64(v)
    }
}
