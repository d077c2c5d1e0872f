//! Laurent monomials in `t1..tn, v` and quadratic exponents of `v`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// `t1^a1 ... tn^an v^b` with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentMonomial {
    t: Vec<i64>,
    v: i64,
}

impl LaurentMonomial {
    pub fn one(n: usize) -> Self {
        LaurentMonomial { t: vec![0; n], v: 0 }
    }

    pub fn new(t: Vec<i64>, v: i64) -> Self {
        LaurentMonomial { t, v }
    }

    /// `t_i` (one-based) in `n` variables.
    pub fn t(n: usize, i: usize) -> Self {
        let mut m = LaurentMonomial::one(n);
        m.t[i - 1] = 1;
        m
    }

    pub fn v_power(n: usize, b: i64) -> Self {
        LaurentMonomial { t: vec![0; n], v: b }
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn t_exponents(&self) -> &[i64] {
        &self.t
    }

    pub fn v_exponent(&self) -> i64 {
        self.v
    }

    pub fn is_one(&self) -> bool {
        self.v == 0 && self.t.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "monomials over different tori");
        LaurentMonomial {
            t: self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect(),
            v: self.v + other.v,
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, e: i64) -> Self {
        LaurentMonomial {
            t: self.t.iter().map(|a| a * e).collect(),
            v: self.v * e,
        }
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.t.iter().enumerate() {
            write!(f, "t{}^{} ", i + 1, a)?;
        }
        write!(f, "v^{}", self.v)
    }
}

/// An integer quadratic polynomial in formal symbols `τ1..τn`, standing for
/// `v` raised to it under `t_j = v^{τ_j}`.
///
/// The quadratic part is stored upper-triangular: `quad[i][j]` for `i <= j`
/// is the coefficient of `τ_i τ_j`, entries below the diagonal stay zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentQuadratic {
    constant: i64,
    linear: Vec<i64>,
    quad: Vec<Vec<i64>>,
}

impl ExponentQuadratic {
    pub fn zero(n: usize) -> Self {
        ExponentQuadratic {
            constant: 0,
            linear: vec![0; n],
            quad: vec![vec![0; n]; n],
        }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        let mut e = ExponentQuadratic::zero(n);
        e.constant = c;
        e
    }

    /// `τ_j + c` (one-based `j`).
    pub fn tau_plus(n: usize, j: usize, c: i64) -> Self {
        let mut e = ExponentQuadratic::constant(n, c);
        e.linear[j - 1] = 1;
        e
    }

    /// The exponent of a Laurent monomial: `Σ a_j τ_j + b`.
    pub fn from_monomial(m: &LaurentMonomial) -> Self {
        let mut e = ExponentQuadratic::constant(m.n(), m.v_exponent());
        e.linear.copy_from_slice(m.t_exponents());
        e
    }

    pub fn n(&self) -> usize {
        self.linear.len()
    }

    pub fn constant_part(&self) -> i64 {
        self.constant
    }

    pub fn linear_part(&self) -> &[i64] {
        &self.linear
    }

    /// Coefficient of `τ_i τ_j` (one-based, either order).
    pub fn quadratic_coeff(&self, i: usize, j: usize) -> i64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.quad[a - 1][b - 1]
    }

    pub fn quadratic_is_zero(&self) -> bool {
        self.quad.iter().flatten().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        let mut out = self.clone();
        out.constant += other.constant;
        for (a, b) in out.linear.iter_mut().zip(&other.linear) {
            *a += b;
        }
        for (ra, rb) in out.quad.iter_mut().zip(&other.quad) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        ExponentQuadratic {
            constant: self.constant * c,
            linear: self.linear.iter().map(|a| a * c).collect(),
            quad: self.quad.iter().map(|r| r.iter().map(|a| a * c).collect()).collect(),
        }
    }

    /// Product of two polynomials of degree at most one.
    pub fn mul_linear(&self, other: &Self) -> Self {
        assert!(self.quadratic_is_zero() && other.quadratic_is_zero());
        let n = self.n();
        let mut out = ExponentQuadratic::constant(n, self.constant * other.constant);
        for j in 0..n {
            out.linear[j] = self.constant * other.linear[j] + other.constant * self.linear[j];
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.linear[i] * other.linear[j];
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                out.quad[a][b] += c;
            }
        }
        out
    }

    /// The monomial `v^{self}` once the quadratic part has cancelled.
    pub fn to_monomial(&self) -> Option<LaurentMonomial> {
        self.quadratic_is_zero()
            .then(|| LaurentMonomial::new(self.linear.clone(), self.constant))
    }
}

impl fmt::Display for ExponentQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, c: i64, name: &dyn fmt::Display| -> fmt::Result {
            if c == 0 {
                return Ok(());
            }
            let sep = match (first, c < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            write!(f, "{sep}{}{name}", c.abs())
        };
        let n = self.n();
        for i in 0..n {
            for j in i..n {
                let name = if i == j {
                    alloc::format!("*tau{}^2", i + 1)
                } else {
                    alloc::format!("*tau{}*tau{}", i + 1, j + 1)
                };
                emit(f, self.quad[i][j], &name)?;
            }
        }
        for j in 0..n {
            emit(f, self.linear[j], &alloc::format!("*tau{}", j + 1))?;
        }
        emit(f, self.constant, &"")?;
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_text() {
        let m = LaurentMonomial::new(vec![2, 0], -1);
        assert_eq!(alloc::format!("{m}"), "t1^2 t2^0 v^-1");
        assert!(m.mul(&m.inv()).is_one());
    }

    #[test]
    fn square_of_shifted_tau() {
        // (τ1 + 2)(τ1 + 2) = τ1² + 4τ1 + 4
        let a = ExponentQuadratic::tau_plus(2, 1, 2);
        let sq = a.mul_linear(&a);
        assert_eq!(sq.quadratic_coeff(1, 1), 1);
        assert_eq!(sq.linear_part(), &[4, 0]);
        assert_eq!(sq.constant_part(), 4);
        assert_eq!(alloc::format!("{sq}"), "1*tau1^2 + 4*tau1 + 4");
        assert!(sq.sub(&sq).to_monomial().unwrap().is_one());
    }

    #[test]
    fn cross_terms_are_symmetric() {
        let a = ExponentQuadratic::tau_plus(3, 1, 0);
        let b = ExponentQuadratic::tau_plus(3, 3, 0);
        let ab = a.mul_linear(&b);
        let ba = b.mul_linear(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.quadratic_coeff(3, 1), 1);
    }
}
