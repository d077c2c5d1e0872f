//! Numerical parallel transport for `∇ = d + κ Σ_k QC_k dq_k/q_k`.
//!
//! Each `QC_k` block on `V_d` is specialized at rational `x`, `h`, leaving
//! rational functions of `q`, then compiled to floating-point coefficient
//! lists. The path is a chain of segments that are linear in `log q`.
//! The ODE `Y' = -κ Σ_k L_k QC_k(q(s)) Y` is integrated by classical RK4
//! with step-halving error control and local extrapolation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};

use super::{op_qc, qc_family};
use crate::error::Error;
use crate::exactalg::{FieldElem, MultiPoly, Var};
use crate::patterns::DegreeVector;
use crate::verma::Weights;

/// What to transport: the block `V_d` at specialized `x`, `h`, `κ`.
#[derive(Clone, Debug)]
pub struct ConnectionSpec {
    pub n: usize,
    pub degree: DegreeVector,
    pub x: Vec<BigRational>,
    pub hbar: BigRational,
    pub kappa: f64,
}

/// A segment from `from` to `to` in `(q_2, .., q_{n-1})`, linear in the
/// principal logarithm of `to/from`; `steps` sets the initial step count.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub from: Vec<Complex64>,
    pub to: Vec<Complex64>,
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl {
    /// Local error tolerance per step.
    pub tolerance: f64,
    /// Total accepted plus rejected steps before giving up.
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            tolerance: 1e-10,
            max_steps: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Monodromy {
    /// Row-major transport matrix.
    pub matrix: Vec<Vec<Complex64>>,
    /// Sum of the per-step error estimates.
    pub error_estimate: f64,
    pub steps: usize,
}

impl Monodromy {
    /// Largest entrywise distance to `other`.
    pub fn distance(&self, other: &Monodromy) -> f64 {
        max_dist(&self.matrix, &other.matrix)
    }

    /// Largest entrywise distance to the identity.
    pub fn distance_to_identity(&self) -> f64 {
        max_dist(&self.matrix, &identity(self.matrix.len()))
    }
}

fn max_dist(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(u, v)| (u - v).norm()))
        .fold(0.0, f64::max)
}

type Dense = Vec<Vec<Complex64>>;

fn identity(m: usize) -> Dense {
    (0..m)
        .map(|r| (0..m).map(|c| if r == c { Complex64::new(1.0, 0.0) } else { Complex64::zero() }).collect())
        .collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let m = a.len();
    let mut out = vec![vec![Complex64::zero(); m]; m];
    for (r, row) in a.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (c, o) in out[r].iter_mut().enumerate() {
                *o += v * b[k][c];
            }
        }
    }
    out
}

fn axpy(y: &Dense, a: Complex64, x: &Dense) -> Dense {
    y.iter()
        .zip(x)
        .map(|(ry, rx)| ry.iter().zip(rx).map(|(u, v)| u + a * v).collect())
        .collect()
}

/// A polynomial in `q_2..q_{n-1}` with float coefficients.
#[derive(Clone, Debug)]
struct QPoly {
    terms: Vec<(f64, Vec<i32>)>,
}

impl QPoly {
    fn compile(p: &MultiPoly, n: usize, scale: &BigRational) -> Result<QPoly, Error> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            for slot in 0..Var::Hbar.slot() + 1 {
                if m.exp(slot) != 0 {
                    return Err(Error::UnassignedSymbol {
                        expr: format!("{}", Var::from_slot(slot)),
                    });
                }
            }
            let coeff = (BigRational::from_integer(c.clone()) / scale)
                .to_f64()
                .ok_or_else(|| Error::Integration("coefficient outside f64 range".into()))?;
            let exps = (2..n).map(|l| m.exp(Var::Q(l as u8).slot()) as i32).collect();
            terms.push((coeff, exps));
        }
        Ok(QPoly { terms })
    }

    fn eval(&self, q: &[Complex64]) -> Complex64 {
        self.terms.iter().fold(Complex64::zero(), |acc, (c, e)| {
            acc + e.iter().zip(q).fold(Complex64::new(*c, 0.0), |t, (&k, &z)| t * z.powi(k))
        })
    }

    fn magnitude(&self, q: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| e.iter().zip(q).fold(c.abs(), |t, (&k, z)| t * Float::powi(z.norm(), k)))
            .sum()
    }
}

/// One matrix entry `num/den` of a `QC_k` block.
#[derive(Clone, Debug)]
struct QEntry {
    row: usize,
    col: usize,
    num: QPoly,
    den: QPoly,
}

/// The `QC_k` blocks on `V_d`, compiled for evaluation at complex `q`.
#[derive(Clone, Debug)]
pub struct CompiledConnection {
    dim: usize,
    kappa: f64,
    blocks: Vec<Vec<QEntry>>,
}

/// Below this ratio of `|den(q)|` to its term magnitude the point counts as a pole.
const POLE_RATIO: f64 = 1e-12;

impl CompiledConnection {
    pub fn new(spec: &ConnectionSpec) -> Result<Self, Error> {
        let n = spec.n;
        if spec.x.len() != n {
            return Err(Error::InvalidArgument(format!("need {n} x values, got {}", spec.x.len())));
        }
        let mut subs: Vec<(Var, BigRational)> =
            spec.x.iter().enumerate().map(|(i, v)| (Var::X(i as u8 + 1), v.clone())).collect();
        subs.push((Var::Hbar, spec.hbar.clone()));
        // Individual E_ij can have poles at integral weights where QC_k has
        // none, so specialize only the finished block.
        let w = Weights::<FieldElem>::symbolic(n);
        let fam = qc_family(n, &spec.degree, &w)?;
        let mut blocks = Vec::new();
        let mut dim = 0;
        for k in 2..n {
            let block = op_qc(&fam, &w, k)?
                .block(&spec.degree)?
                .try_map(|v| v.specialize(&subs))?;
            dim = block.rows();
            let mut entries = Vec::new();
            for (row, col, v) in block.entries() {
                // one shared scale keeps large integer coefficients in range
                let scale = BigRational::from_integer(v.denom().max_norm());
                entries.push(QEntry {
                    row,
                    col,
                    num: QPoly::compile(v.numer(), n, &scale)?,
                    den: QPoly::compile(v.denom(), n, &scale)?,
                });
            }
            blocks.push(entries);
        }
        Ok(CompiledConnection {
            dim,
            kappa: spec.kappa,
            blocks,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dense `QC_k(q)`, `k >= 2`.
    pub fn qc_at(&self, k: usize, q: &[Complex64]) -> Result<Vec<Vec<Complex64>>, Error> {
        let mut out = vec![vec![Complex64::zero(); self.dim]; self.dim];
        for e in &self.blocks[k - 2] {
            let den = e.den.eval(q);
            if den.norm() <= POLE_RATIO * e.den.magnitude(q) {
                return Err(Error::Pole {
                    denominator: format!("QC{k} entry ({},{}) at q = {q:?}", e.row, e.col),
                });
            }
            out[e.row][e.col] = e.num.eval(q) / den;
        }
        Ok(out)
    }

    /// `-κ Σ_k L_k QC_k(q)`.
    fn generator(&self, q: &[Complex64], dlog: &[Complex64]) -> Result<Dense, Error> {
        let mut a = vec![vec![Complex64::zero(); self.dim]; self.dim];
        for (idx, &l) in dlog.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            a = axpy(&a, -l * self.kappa, &self.qc_at(idx + 2, q)?);
        }
        Ok(a)
    }
}

struct LogLine {
    start: Vec<Complex64>,
    dlog: Vec<Complex64>,
}

impl LogLine {
    fn new(seg: &Segment) -> Result<Self, Error> {
        if seg.from.len() != seg.to.len() {
            return Err(Error::InvalidArgument("segment endpoints differ in length".into()));
        }
        if seg.from.iter().chain(&seg.to).any(|z| z.is_zero()) {
            return Err(Error::Pole {
                denominator: String::from("q = 0 on a segment endpoint"),
            });
        }
        let dlog = seg.from.iter().zip(&seg.to).map(|(a, b)| (b / a).ln()).collect();
        Ok(LogLine {
            start: seg.from.clone(),
            dlog,
        })
    }

    fn at(&self, s: f64) -> Vec<Complex64> {
        self.start.iter().zip(&self.dlog).map(|(a, l)| a * (l * s).exp()).collect()
    }
}

fn rk4(conn: &CompiledConnection, line: &LogLine, s: f64, h: f64, y: &Dense) -> Result<Dense, Error> {
    let a = |t: f64| conn.generator(&line.at(t), &line.dlog);
    let hc = Complex64::new(h, 0.0);
    let half = Complex64::new(h / 2.0, 0.0);
    let k1 = matmul(&a(s)?, y);
    let am = a(s + h / 2.0)?;
    let k2 = matmul(&am, &axpy(y, half, &k1));
    let k3 = matmul(&am, &axpy(y, half, &k2));
    let k4 = matmul(&a(s + h)?, &axpy(y, hc, &k3));
    let sixth = Complex64::new(h / 6.0, 0.0);
    let third = Complex64::new(h / 3.0, 0.0);
    Ok(axpy(&axpy(&axpy(&axpy(y, sixth, &k1), third, &k2), third, &k3), sixth, &k4))
}

/// Transports the identity along the chain of segments.
pub fn monodromy_transport(
    spec: &ConnectionSpec,
    path: &[Segment],
    control: StepControl,
) -> Result<Monodromy, Error> {
    let conn = CompiledConnection::new(spec)?;
    transport_compiled(&conn, path, control)
}

/// As [`monodromy_transport`], reusing a compiled connection.
pub fn transport_compiled(
    conn: &CompiledConnection,
    path: &[Segment],
    control: StepControl,
) -> Result<Monodromy, Error> {
    let nq = conn.blocks.len();
    let mut y = identity(conn.dim);
    let mut error_estimate = 0.0;
    let mut steps = 0usize;
    for seg in path {
        if seg.from.len() != nq {
            return Err(Error::InvalidArgument(format!(
                "segment has {} coordinates, the connection has {nq}",
                seg.from.len()
            )));
        }
        let line = LogLine::new(seg)?;
        let mut s = 0.0;
        let mut h = 1.0 / seg.steps.max(1) as f64;
        while s < 1.0 {
            if steps >= control.max_steps {
                return Err(Error::Integration(format!(
                    "tolerance {:e} not met within {} steps",
                    control.tolerance, control.max_steps
                )));
            }
            steps += 1;
            h = h.min(1.0 - s);
            let full = rk4(conn, &line, s, h, &y)?;
            let mid = rk4(conn, &line, s, h / 2.0, &y)?;
            let two = rk4(conn, &line, s + h / 2.0, h / 2.0, &mid)?;
            let err = max_dist(&two, &full) / 15.0;
            if err <= control.tolerance || h < 1e-14 {
                // Richardson extrapolation of the two half steps
                y = axpy(&two, Complex64::new(1.0 / 15.0, 0.0), &axpy(&two, Complex64::new(-1.0, 0.0), &full));
                error_estimate += err;
                s += h;
                let grow: f64 = if err == 0.0 { 2.0 } else { 0.9 * Float::powf(control.tolerance / err, 0.2) };
                h *= grow.clamp(0.2, 2.0);
            } else {
                h *= (0.9 * Float::powf(control.tolerance / err, 0.2)).clamp(0.1f64, 0.5);
            }
        }
    }
    Ok(Monodromy {
        matrix: y,
        error_estimate,
        steps,
    })
}

/// A closed loop of `pieces` log-linear arcs on `|q_k| = radius` around `q_k = 0`,
/// starting and ending at the real point `radius`, other coordinates fixed at `base`.
pub fn circle_loop(base: &[Complex64], k: usize, radius: f64, pieces: usize, steps: usize) -> Vec<Segment> {
    let pt = |t: f64| {
        let mut q = base.to_vec();
        q[k - 2] = Complex64::from_polar(radius, t);
        q
    };
    (0..pieces)
        .map(|p| {
            let a = core::f64::consts::TAU * p as f64 / pieces as f64;
            let b = core::f64::consts::TAU * (p + 1) as f64 / pieces as f64;
            Segment {
                from: pt(a),
                to: pt(b),
                steps,
            }
        })
        .collect()
}

/// The segments traversed in the opposite direction.
pub fn reversed(path: &[Segment]) -> Vec<Segment> {
    path.iter()
        .rev()
        .map(|s| Segment {
            from: s.to.clone(),
            to: s.from.clone(),
            steps: s.steps,
        })
        .collect()
}
