//! The Whittaker vector `v = Σ v_d` with `f_i v = v/h`, `v_0 = 1`, its
//! cyclicity, and the cohomology ring realized by diagonal operators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::Error;
use crate::exactalg::{solve_linear, FieldElem, Scalar, SolveOutcome, SparseMatrix, Var};
use crate::gtalg::{self, det_bundle_basis, Generators};
use crate::patterns::{enumerate_patterns, DegreeVector, Pattern};
use crate::report::VerificationReport;
use crate::verma::{ladder_block, Weights};

/// `v_d` in the fixed-point basis of `V_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerComponent<S> {
    pub degree: DegreeVector,
    pub coefficients: Vec<(Pattern, S)>,
}

impl<S: Scalar> WhittakerComponent<S> {
    pub fn values(&self) -> Vec<S> {
        self.coefficients.iter().map(|(_, v)| v.clone()).collect()
    }
}

/// Solves for Whittaker components degree by degree, memoizing lower degrees.
#[derive(Clone, Debug)]
pub struct WhittakerSolver<S> {
    weights: Weights<S>,
    memo: BTreeMap<DegreeVector, Vec<S>>,
}

impl<S: Scalar> WhittakerSolver<S> {
    pub fn new(weights: Weights<S>) -> Self {
        WhittakerSolver {
            weights,
            memo: BTreeMap::new(),
        }
    }

    pub fn weights(&self) -> &Weights<S> {
        &self.weights
    }

    /// The `i` with `d - e_i >= 0`, ascending: the stacked conditions.
    fn lowering_directions(d: &DegreeVector) -> Vec<usize> {
        (1..d.n()).filter(|&i| d.get(i) > 0).collect()
    }

    /// `v_d` as the unique solution of `f_i v_d = v_{d - e_i}/h` for all `i`.
    pub fn component(&mut self, d: &DegreeVector) -> Result<WhittakerComponent<S>, Error> {
        let values = self.values(d)?;
        let basis = enumerate_patterns(self.weights.n(), d);
        Ok(WhittakerComponent {
            degree: d.clone(),
            coefficients: basis.into_iter().zip(values).collect(),
        })
    }

    fn values(&mut self, d: &DegreeVector) -> Result<Vec<S>, Error> {
        if let Some(v) = self.memo.get(d) {
            return Ok(v.clone());
        }
        let n = self.weights.n();
        let dim = enumerate_patterns(n, d).len();
        let v = if d.total() == 0 {
            vec![S::one()]
        } else {
            let hinv = self.weights.hbar_inv()?;
            let mut rows: Vec<Vec<S>> = Vec::new();
            let mut rhs: Vec<S> = Vec::new();
            for i in Self::lowering_directions(d) {
                let lower = lower_degree(d, i);
                let prev = self.values(&lower)?;
                let f = ladder_block(&self.weights, d, i, false)?;
                for (r, row) in f.to_dense().into_iter().enumerate() {
                    rows.push(row);
                    rhs.push(prev[r].mul(&hinv));
                }
            }
            let mut a = SparseMatrix::new(rows.len(), dim);
            for (r, row) in rows.into_iter().enumerate() {
                for (c, x) in row.into_iter().enumerate() {
                    a.set(r, c, x);
                }
            }
            match solve_linear(&a, &rhs) {
                SolveOutcome::Unique(x) => x,
                SolveOutcome::Inconsistent => {
                    return Err(Error::Solver(format!("inconsistent at degree {d}")))
                }
                SolveOutcome::Underdetermined { kernel, .. } => {
                    return Err(Error::Solver(format!(
                        "underdetermined at degree {d}: kernel of dimension {}",
                        kernel.len()
                    )))
                }
            }
        };
        self.memo.insert(d.clone(), v.clone());
        Ok(v)
    }

    /// Re-applies every `f_i` to the solved `v_d` and compares with `v_{d-e_i}/h`.
    pub fn verify_recursion(&mut self, d: &DegreeVector) -> Result<Option<String>, Error> {
        let v = self.values(d)?;
        let hinv = self.weights.hbar_inv()?;
        for i in Self::lowering_directions(d) {
            let lower = lower_degree(d, i);
            let prev = self.values(&lower)?;
            let got = ladder_block(&self.weights, d, i, false)?.apply(&v);
            for (r, g) in got.iter().enumerate() {
                if *g != prev[r].mul(&hinv) {
                    return Ok(Some(format!("f{i} v{d} differs at row {r}: {g}")));
                }
            }
        }
        Ok(None)
    }
}

fn lower_degree(d: &DegreeVector, i: usize) -> DegreeVector {
    let mut s = vec![0i64; d.0.len()];
    s[i - 1] = -1;
    d.shifted(&s).expect("d_i > 0")
}

/// `v_d` over the symbolic field.
pub fn whittaker_component(n: usize, d: &DegreeVector) -> Result<WhittakerComponent<FieldElem>, Error> {
    WhittakerSolver::new(Weights::symbolic(n)).component(d)
}

/// Conversion to the integral normalization `f_i v = v`: the degree-`d`
/// component is multiplied by `h^{|d|}`.
pub fn integral_normalization_factor(d: &DegreeVector) -> FieldElem {
    FieldElem::hbar().pow(d.total() as i32).expect("nonnegative power")
}

/// Uniqueness, recursion, nonvanishing coefficients and separation of the
/// corrected-Casimir spectrum on `V_d`; together these make `v_d` cyclic
/// for the diagonal algebra.
pub fn check_cyclicity_with(solver: &mut WhittakerSolver<FieldElem>, d: &DegreeVector) -> Result<VerificationReport, Error> {
    let n = solver.weights().n();
    let mut report = VerificationReport::new("whittaker");
    let anchor = "Whittaker vector generates V_d";
    let comp = match solver.component(d) {
        Ok(c) => c,
        Err(e) => {
            report.check(format!("v{d} unique"), anchor, false, || format!("{e}"));
            return Ok(report);
        }
    };
    report.check(format!("v{d} unique"), anchor, true, String::new);
    let bad = solver.verify_recursion(d)?;
    report.check(format!("f_i v{d} = v/h"), anchor, bad.is_none(), || bad.clone().unwrap_or_default());
    let zero = comp.coefficients.iter().find(|(_, v)| v.is_zero());
    report.check(
        format!("v{d} coefficients nonzero"),
        anchor,
        zero.is_none(),
        || format!("zero coefficient at {}", zero.expect("found").0),
    );
    let sep = gtalg::check_spectrum_separation(n, d, Generators::TildeCasimirs)?;
    report.extend(sep);
    Ok(report)
}

pub fn check_cyclicity(n: usize, d: &DegreeVector) -> Result<VerificationReport, Error> {
    check_cyclicity_with(&mut WhittakerSolver::new(Weights::symbolic(n)), d)
}

/// The diagonal algebra generated by `c1(D_k)` on `V_d`, at a rational point.
#[derive(Clone, Debug, PartialEq)]
pub struct RingTable {
    pub degree: DegreeVector,
    /// Generator labels, e.g. `c1(D2)`.
    pub generators: Vec<String>,
    /// Monomial basis as exponent vectors over the generators.
    pub basis: Vec<Vec<u32>>,
    /// `(a, b, coefficients)`: basis_a * basis_b expanded over the basis.
    pub products: Vec<(usize, usize, Vec<BigRational>)>,
    /// `(j, k, coefficients)`: generator_j * generator_k over the basis.
    pub generator_products: Vec<(usize, usize, Vec<BigRational>)>,
}

impl RingTable {
    pub fn product(&self, a: usize, b: usize) -> &[BigRational] {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        &self
            .products
            .iter()
            .find(|(x, y, _)| *x == a && *y == b)
            .expect("product recorded")
            .2
    }
}

/// Ring structure of `H*(Q_d)` from the joint spectrum of `c1(D_k)`,
/// evaluated at `point` (which must fix every `x_i` and `h`).
pub fn ring_structure(n: usize, d: &DegreeVector, point: &[(Var, BigRational)]) -> Result<RingTable, Error> {
    let w = Weights::<FieldElem>::symbolic(n);
    let ks = det_bundle_basis(d);
    let spec = gtalg::joint_spectrum(&w, d, Generators::DetBundles { basis_only: true })?;
    let dim = spec.table.len();
    let eval = |f: &FieldElem| f.eval(point);
    let mut gens: Vec<Vec<BigRational>> = vec![Vec::new(); ks.len()];
    for (_, row) in &spec.table {
        for (g, v) in row.iter().enumerate() {
            gens[g].push(eval(v)?);
        }
    }
    let points: Vec<Vec<BigRational>> = (0..dim).map(|r| gens.iter().map(|g| g[r].clone()).collect()).collect();
    for a in 0..dim {
        for b in a + 1..dim {
            if points[a] == points[b] {
                return Err(Error::SpectrumCollapse(format!(
                    "{} and {} coincide",
                    spec.table[a].0, spec.table[b].0
                )));
            }
        }
    }

    let value = |m: &[u32]| -> Vec<BigRational> {
        (0..dim)
            .map(|r| {
                let mut acc = BigRational::from_i64(1);
                for (g, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        acc = &acc * &gens[g][r];
                    }
                }
                acc
            })
            .collect()
    };

    // greedy monomial basis by total degree, lexicographic within a degree
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut basis_vals: Vec<Vec<BigRational>> = Vec::new();
    let mut deg = 0u32;
    while basis.len() < dim {
        if deg as usize > dim {
            return Err(Error::SpectrumCollapse(format!("generators do not span V{d}")));
        }
        for m in monomials(ks.len(), deg) {
            let v = value(&m);
            if independent(&basis_vals, &v) {
                basis.push(m);
                basis_vals.push(v);
                if basis.len() == dim {
                    break;
                }
            }
        }
        deg += 1;
    }

    let columns = SparseMatrix::from_dense(
        &(0..dim)
            .map(|r| basis_vals.iter().map(|b| b[r].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    let expand = |target: &[BigRational]| -> Result<Vec<BigRational>, Error> {
        match solve_linear(&columns, target) {
            SolveOutcome::Unique(x) => Ok(x),
            other => Err(Error::Solver(format!("basis expansion failed: {other:?}"))),
        }
    };
    let mut products = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            let prod: Vec<BigRational> = basis_vals[a].iter().zip(&basis_vals[b]).map(|(x, y)| x * y).collect();
            products.push((a, b, expand(&prod)?));
        }
    }
    let mut generator_products = Vec::new();
    for j in 0..ks.len() {
        for k in j..ks.len() {
            let prod: Vec<BigRational> = gens[j].iter().zip(&gens[k]).map(|(x, y)| x * y).collect();
            generator_products.push((j, k, expand(&prod)?));
        }
    }
    Ok(RingTable {
        degree: d.clone(),
        generators: spec.labels,
        basis,
        products,
        generator_products,
    })
}

/// Exponent vectors in `g` variables of total degree `deg`, lexicographically descending.
fn monomials(g: usize, deg: u32) -> Vec<Vec<u32>> {
    if g == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials(g - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn independent(basis: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    if basis.is_empty() {
        return v.iter().any(|x| !Scalar::is_zero(x));
    }
    let cols = SparseMatrix::from_dense(
        &(0..v.len())
            .map(|r| basis.iter().map(|b| b[r].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    matches!(solve_linear(&cols, v), SolveOutcome::Inconsistent)
}
