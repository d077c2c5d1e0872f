//! The universal Verma module `V = ⊕ V_d` in the fixed-point basis.
//!
//! Operators are stored as families of sparse blocks `V_d -> V_{d+shift}`
//! over any [`Scalar`]. The same construction runs symbolically over
//! [`FieldElem`] or at a rational point over `BigRational`; the latter is
//! what random-evaluation mode uses.

mod generators;
mod operator;
mod relations;

pub use generators::{
    cartan_scalar, e_coefficient, f_coefficient, gt_conversion_scalar, ladder, ladder_block, GlFamily,
};
pub use operator::GradedOperator;
pub use relations::{check_gl_relations, check_gl_relations_with, gl_relation_specs, RelationSpec};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::Error;
use crate::exactalg::{FieldElem, Scalar, Var, MAX_N};
use crate::patterns::{enumerate_patterns, pattern_pairs, DegreeVector, Pattern};

/// `V_d` with its canonical basis.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub degree: DegreeVector,
    pub basis: Vec<Pattern>,
    index: BTreeMap<Pattern, usize>,
}

impl WeightSpace {
    pub fn new(n: usize, degree: DegreeVector) -> Self {
        let basis = enumerate_patterns(n, &degree);
        let index = basis.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        WeightSpace { degree, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &Pattern) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// Which graded space an operator acts on: the local module, indexed by
/// patterns, or the global one, indexed by triples `(σ, d⁰, d^∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Local,
    Global,
}

impl Space {
    pub fn dim(self, n: usize, d: &DegreeVector) -> usize {
        match self {
            Space::Local => enumerate_patterns(n, d).len(),
            Space::Global => (1..=n).product::<usize>() * pattern_pairs(n, d).len(),
        }
    }

    /// Dimension of the `d + shift` component, zero when a part would be negative.
    pub fn shifted_dim(self, n: usize, d: &DegreeVector, shift: &[i64]) -> usize {
        d.shifted(shift).map_or(0, |t| self.dim(n, &t))
    }
}

/// Dimension of `V_{d+shift}`, zero when a component would be negative.
pub fn shifted_dim(n: usize, d: &DegreeVector, shift: &[i64]) -> usize {
    Space::Local.shifted_dim(n, d, shift)
}

/// The values substituted for `x1..xn`, `h` and `q2..q(n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights<S> {
    pub x: Vec<S>,
    pub hbar: S,
    /// `q[l - 2]` holds `q_l`.
    pub q: Vec<S>,
}

impl<S: Scalar> Weights<S> {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `x_i`, one-based.
    pub fn x(&self, i: usize) -> &S {
        &self.x[i - 1]
    }

    /// `q_l` with the normalization `q_n = 1`.
    pub fn q(&self, l: usize) -> S {
        if l == self.n() {
            S::one()
        } else {
            self.q[l - 2].clone()
        }
    }

    pub fn hbar_inv(&self) -> Result<S, Error> {
        self.hbar.inv()
    }

    /// The weights of `f^σ`: `x_j` replaced by `x_{σ(j)}`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        Weights {
            x: sigma.iter().map(|&s| self.x[s - 1].clone()).collect(),
            hbar: self.hbar.clone(),
            q: self.q.clone(),
        }
    }

    /// The weights of the bar image `h -> -h`.
    pub fn barred(&self) -> Self {
        Weights {
            x: self.x.clone(),
            hbar: self.hbar.neg(),
            q: self.q.clone(),
        }
    }
}

impl Weights<FieldElem> {
    /// Every weight a free symbol.
    pub fn symbolic(n: usize) -> Self {
        assert!((2..=MAX_N).contains(&n), "rank {n} outside 2..={MAX_N}");
        Weights {
            x: (1..=n).map(FieldElem::x).collect(),
            hbar: FieldElem::hbar(),
            q: (2..n).map(FieldElem::q).collect(),
        }
    }

    /// Symbolic weights with the listed symbols replaced by rationals.
    pub fn specialized(n: usize, subs: &[(Var, BigRational)]) -> Self {
        let pick = |v: Var, default: FieldElem| {
            subs.iter()
                .find(|(w, _)| *w == v)
                .map_or(default, |(_, r)| FieldElem::from_rational(r))
        };
        Weights {
            x: (1..=n).map(|i| pick(Var::X(i as u8), FieldElem::x(i))).collect(),
            hbar: pick(Var::Hbar, FieldElem::hbar()),
            q: (2..n).map(|l| pick(Var::Q(l as u8), FieldElem::q(l))).collect(),
        }
    }
}

impl Weights<BigRational> {
    /// Rational weights at a point covering every symbol of rank `n`.
    pub fn at_point(n: usize, point: &[(Var, BigRational)]) -> Result<Self, Error> {
        let get = |v: Var| {
            point
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, r)| r.clone())
                .ok_or_else(|| Error::InvalidArgument(alloc::format!("no value for {v}")))
        };
        Ok(Weights {
            x: (1..=n).map(|i| get(Var::X(i as u8))).collect::<Result<_, _>>()?,
            hbar: get(Var::Hbar)?,
            q: (2..n).map(|l| get(Var::Q(l as u8))).collect::<Result<_, _>>()?,
        })
    }
}

/// Every symbol used at rank `n`, in field order.
pub fn symbols(n: usize) -> Vec<Var> {
    let mut v: Vec<Var> = (1..=n).map(|i| Var::X(i as u8)).collect();
    v.push(Var::Hbar);
    v.extend((2..n).map(|l| Var::Q(l as u8)));
    v
}

/// Source degrees materialized for checks up to `|d| <= dmax`: every `d`
/// with `|d| <= dmax + (n - 1)`, so compositions through the highest root fit.
pub fn padded_window(n: usize, dmax: u32) -> Vec<DegreeVector> {
    DegreeVector::all_up_to(n, dmax + (n as u32 - 1))
}
