use std::fs;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use vermalab_core::exactalg::parse::symbol;
use vermalab_core::exactalg::{parse_field_elem, CheckMode, FieldElem, Var};
use vermalab_core::globalverma::{
    check_cartan_from_chern, check_double_gt_separation, check_double_relations, check_global_whittaker,
    check_symmetrization,
};
use vermalab_core::gtalg::{self, Generators};
use vermalab_core::ktheory::{
    check_k_separation, check_normalization_integrality, check_quantum_identities, eig_corrected_quantum_casimir,
    eig_det_class_k, normalization_constant,
};
use vermalab_core::patterns::{enumerate_global_fixed_points, enumerate_patterns, DegreeVector, Pattern};
use vermalab_core::report::VerificationReport;
use vermalab_core::shiftarg::monodromy::{monodromy_transport, ConnectionSpec, Segment, StepControl};
use vermalab_core::shiftarg::{check_flatness, check_qc_commutativity, check_qc_degeneration, check_quadratic_space_cross};
use vermalab_core::verma::{check_gl_relations, padded_window, GlFamily, Weights};
use vermalab_core::whittaker::{check_cyclicity_with, integral_normalization_factor, ring_structure, WhittakerSolver};
use vermalab_core::Error;

use crate::args::{Command, DegreeChoice, GeneratorSet, Mode};

/// A failure that stops the run before a report exists.
#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit code 2.
    Usage(String),
    /// Anything else; exit code 1.
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::UnassignedSymbol { .. }
            | Error::Parse { .. }
            | Error::Pole { .. }
            | Error::NonRegular { .. }
            | Error::SpectrumCollapse(_) => CliError::Usage(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Plain table for CSV output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Everything a command produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub reports: Vec<VerificationReport>,
    pub data: Option<(Value, Table)>,
}

impl Outcome {
    fn new(command: &'static str, config: Map<String, Value>) -> Self {
        Outcome { command, config, reports: Vec::new(), data: None }
    }

    pub fn has_failures(&self) -> bool {
        self.reports.iter().any(VerificationReport::has_failures)
    }
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var("VERMALAB_THREADS").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
    })
}

/// Maps over degrees in parallel, keeping input order.
fn par_map<T: Send>(
    degrees: &[DegreeVector],
    f: impl Fn(&DegreeVector) -> Result<T, CliError> + Sync + Send,
) -> Result<Vec<T>, CliError> {
    pool().install(|| degrees.par_iter().map(f).collect())
}

/// Concatenates per-degree reports suite by suite, first-seen order.
fn merge(parts: Vec<Vec<VerificationReport>>) -> Vec<VerificationReport> {
    let mut out: Vec<VerificationReport> = Vec::new();
    for r in parts.into_iter().flatten() {
        match out.iter_mut().find(|o| o.suite == r.suite) {
            Some(o) => o.extend(r),
            None => out.push(r),
        }
    }
    out
}

fn check_degree(n: usize, d: &DegreeVector) -> Result<(), CliError> {
    if d.n() != n {
        return Err(CliError::Usage(format!("degree {d} needs {} components for n = {n}", n - 1)));
    }
    Ok(())
}

fn base_config(n: usize) -> Map<String, Value> {
    let mut c = Map::new();
    c.insert("n".into(), json!(n));
    c
}

fn degree_string(d: &DegreeVector) -> String {
    d.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Resolves a degree choice to the list of degrees and echoes it.
fn resolve(n: usize, choice: &DegreeChoice, config: &mut Map<String, Value>) -> Result<(Vec<DegreeVector>, bool), CliError> {
    match (&choice.degree, choice.max_degree) {
        (Some(d), _) => {
            check_degree(n, d)?;
            config.insert("degree".into(), json!(degree_string(d)));
            Ok((vec![d.clone()], true))
        }
        (None, Some(m)) => {
            config.insert("max_degree".into(), json!(m));
            Ok((DegreeVector::all_up_to(n, m), false))
        }
        (None, None) => Err(CliError::Usage("one of --degree or --max-degree is required".into())),
    }
}

fn pattern_json(p: &Pattern) -> Value {
    json!(p.rows())
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(T::to_string).collect()
}

/// Parses `x1=0,x2=1,h=1` into rational assignments, echoing the canonical form.
fn parse_spec(s: &str) -> Result<Vec<(Var, BigRational)>, CliError> {
    let mut out: Vec<(Var, BigRational)> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value, got {part:?}")))?;
        let var = symbol(name.trim()).ok_or_else(|| CliError::Usage(format!("unknown symbol {name:?}")))?;
        let value = parse_field_elem(value.trim())
            .ok()
            .and_then(|v| v.as_rational())
            .ok_or_else(|| CliError::Usage(format!("value of {name} is not a rational number")))?;
        if out.iter().any(|(v, _)| *v == var) {
            return Err(CliError::Usage(format!("{name} assigned twice")));
        }
        out.push((var, value));
    }
    out.sort_by_key(|(v, _)| v.slot());
    Ok(out)
}

fn spec_string(point: &[(Var, BigRational)]) -> String {
    point.iter().map(|(v, r)| format!("{v}={r}")).collect::<Vec<_>>().join(",")
}

fn lookup(point: &[(Var, BigRational)], var: Var) -> Result<BigRational, CliError> {
    point
        .iter()
        .find(|(v, _)| *v == var)
        .map(|(_, r)| r.clone())
        .ok_or_else(|| CliError::Usage(format!("--spec must assign {var}")))
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Patterns { rank, degree, global } => patterns(rank.n, degree, *global),
        Command::VerifyGl { rank, max_degree, mode, seed, trials } => verify_gl(rank.n, *max_degree, *mode, *seed, *trials),
        Command::GtSpectrum { rank, degrees, generators } => gt_spectrum(rank.n, degrees, *generators),
        Command::Whittaker { rank, degrees, integral } => whittaker(rank.n, degrees, *integral),
        Command::Ring { rank, degree, point } => ring(rank.n, degree, &point.spec),
        Command::QcCheck { rank, degrees } => qc_check(rank.n, degrees),
        Command::Flatness { rank, degrees } => flatness(rank.n, degrees),
        Command::Monodromy { rank, degree, point, kappa, path, tolerance, max_steps } => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            monodromy(rank.n, degree, &point.spec, *kappa, &text, StepControl { tolerance: *tolerance, max_steps: *max_steps })
        }
        Command::GlobalVerify { rank, max_degree } => global_verify(rank.n, *max_degree),
        Command::Ktheory { rank, degrees } => ktheory(rank.n, degrees),
    }
}

fn patterns(n: usize, d: &DegreeVector, global: bool) -> Result<Outcome, CliError> {
    check_degree(n, d)?;
    let mut config = base_config(n);
    config.insert("degree".into(), json!(degree_string(d)));
    config.insert("global".into(), json!(global));
    let mut out = Outcome::new("patterns", config);
    let mut table = Table::default();
    let value = if global {
        table.header = strings(&["index", "sigma", "p0", "pinf"]);
        let points = enumerate_global_fixed_points(n, d);
        for (i, fp) in points.iter().enumerate() {
            table.rows.push(vec![i.to_string(), format!("{:?}", fp.sigma), fp.p0.to_string(), fp.pinf.to_string()]);
        }
        Value::Array(
            points
                .iter()
                .map(|fp| json!({"sigma": fp.sigma, "p0": pattern_json(&fp.p0), "pinf": pattern_json(&fp.pinf)}))
                .collect(),
        )
    } else {
        table.header = strings(&["index", "pattern"]);
        let ps = enumerate_patterns(n, d);
        for (i, p) in ps.iter().enumerate() {
            table.rows.push(vec![i.to_string(), p.to_string()]);
        }
        Value::Array(ps.iter().map(pattern_json).collect())
    };
    out.data = Some((json!({"count": table.rows.len(), "points": value}), table));
    Ok(out)
}

fn verify_gl(n: usize, dmax: u32, mode: Mode, seed: u64, trials: u32) -> Result<Outcome, CliError> {
    let mut config = base_config(n);
    config.insert("max_degree".into(), json!(dmax));
    let check = match mode {
        Mode::Exact => {
            config.insert("mode".into(), json!("exact"));
            CheckMode::Exact
        }
        Mode::RandomEval => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            config.insert("mode".into(), json!("random-eval"));
            config.insert("seed".into(), json!(seed));
            config.insert("trials".into(), json!(trials));
            CheckMode::RandomEval { trials, seed }
        }
    };
    let mut out = Outcome::new("verify-gl", config);
    out.reports.push(check_gl_relations(n, dmax, check)?);
    Ok(out)
}

fn generators(set: GeneratorSet) -> (Generators, &'static str) {
    match set {
        GeneratorSet::TildeCasimirs => (Generators::TildeCasimirs, "tilde-casimirs"),
        GeneratorSet::Casimirs => (Generators::Casimirs, "casimirs"),
        GeneratorSet::DetBundles => (Generators::DetBundles { basis_only: false }, "det-bundles"),
        GeneratorSet::DetBundleBasis => (Generators::DetBundles { basis_only: true }, "det-bundle-basis"),
        GeneratorSet::Chern => (Generators::Chern, "chern"),
    }
}

fn gt_spectrum(n: usize, choice: &DegreeChoice, set: GeneratorSet) -> Result<Outcome, CliError> {
    let mut config = base_config(n);
    let (degrees, single) = resolve(n, choice, &mut config)?;
    let (gens, name) = generators(set);
    config.insert("generators".into(), json!(name));
    let mut out = Outcome::new("gt-spectrum", config);
    let w = Weights::<FieldElem>::symbolic(n);
    if single {
        let d = &degrees[0];
        let spec = gtalg::joint_spectrum(&w, d, gens)?;
        let mut table = Table { header: std::iter::once("pattern".to_string()).chain(spec.labels.clone()).collect(), rows: Vec::new() };
        let mut rows = Vec::new();
        for (p, vals) in &spec.table {
            table.rows.push(std::iter::once(p.to_string()).chain(strings(vals)).collect());
            rows.push(json!({"pattern": pattern_json(p), "values": strings(vals)}));
        }
        out.data = Some((json!({"labels": spec.labels, "rows": rows}), table));
        out.reports.push(gtalg::check_spectrum_separation(n, d, gens)?);
        return Ok(out);
    }
    let dmax = choice.max_degree.unwrap_or(0);
    let fam = GlFamily::build(&w, &padded_window(n, dmax))?;
    out.reports.push(gtalg::check_casimirs_with(&fam, &w, dmax)?);
    out.reports.push(gtalg::check_hbar_divisibility(n, dmax));
    let sep = par_map(&degrees, |d| Ok(vec![gtalg::check_spectrum_separation(n, d, gens)?]))?;
    out.reports.extend(merge(sep));
    Ok(out)
}

fn whittaker(n: usize, choice: &DegreeChoice, integral: bool) -> Result<Outcome, CliError> {
    let mut config = base_config(n);
    let (degrees, single) = resolve(n, choice, &mut config)?;
    config.insert("integral".into(), json!(integral));
    let mut out = Outcome::new("whittaker", config);
    // lower degrees are memoized, so the solver runs in degree order
    let mut solver = WhittakerSolver::new(Weights::<FieldElem>::symbolic(n));
    let mut parts = Vec::new();
    for d in &degrees {
        parts.push(vec![check_cyclicity_with(&mut solver, d)?]);
    }
    out.reports = merge(parts);
    if single {
        let d = &degrees[0];
        let comp = solver.component(d)?;
        let factor = if integral { integral_normalization_factor(d) } else { FieldElem::one() };
        let mut table = Table { header: strings(&["pattern", "coefficient"]), rows: Vec::new() };
        let mut rows = Vec::new();
        for (p, v) in &comp.coefficients {
            let v = v.mul(&factor).to_string();
            table.rows.push(vec![p.to_string(), v.clone()]);
            rows.push(json!({"pattern": pattern_json(p), "coefficient": v}));
        }
        out.data = Some((Value::Array(rows), table));
    }
    Ok(out)
}

fn ring(n: usize, d: &DegreeVector, spec: &str) -> Result<Outcome, CliError> {
    check_degree(n, d)?;
    let point = parse_spec(spec)?;
    for v in (1..=n).map(|i| Var::X(i as u8)).chain([Var::Hbar]) {
        lookup(&point, v)?;
    }
    let mut config = base_config(n);
    config.insert("degree".into(), json!(degree_string(d)));
    config.insert("spec".into(), json!(spec_string(&point)));
    let mut out = Outcome::new("ring", config);
    let t = ring_structure(n, d, &point)?;
    let mut table = Table { header: strings(&["kind", "left", "right", "coefficients"]), rows: Vec::new() };
    let entries = |kind: &str, list: &[(usize, usize, Vec<BigRational>)], table: &mut Table| -> Vec<Value> {
        list.iter()
            .map(|(a, b, c)| {
                let c = strings(c);
                table.rows.push(vec![kind.to_string(), a.to_string(), b.to_string(), c.join(";")]);
                json!({"left": a, "right": b, "coefficients": c})
            })
            .collect()
    };
    let products = entries("basis", &t.products, &mut table);
    let generator_products = entries("generator", &t.generator_products, &mut table);
    out.data = Some((
        json!({
            "generators": t.generators,
            "basis": t.basis,
            "products": products,
            "generator_products": generator_products,
        }),
        table,
    ));
    Ok(out)
}

fn qc_check(n: usize, choice: &DegreeChoice) -> Result<Outcome, CliError> {
    let mut config = base_config(n);
    let (degrees, _) = resolve(n, choice, &mut config)?;
    let mut out = Outcome::new("qc-check", config);
    let parts = par_map(&degrees, |d| {
        let mut rs = vec![check_qc_commutativity(n, d)?, check_qc_degeneration(n, d)?];
        if n >= 3 {
            rs.push(check_quadratic_space_cross(n, d)?);
        }
        Ok(rs)
    })?;
    out.reports = merge(parts);
    Ok(out)
}

fn flatness(n: usize, choice: &DegreeChoice) -> Result<Outcome, CliError> {
    let mut config = base_config(n);
    let (degrees, _) = resolve(n, choice, &mut config)?;
    let mut out = Outcome::new("flatness", config);
    out.reports = merge(par_map(&degrees, |d| Ok(vec![check_flatness(n, d)?]))?);
    Ok(out)
}

fn complex_of(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(x) => Some(Complex64::new(x.as_f64()?, 0.0)),
        Value::Array(a) if a.len() == 2 => Some(Complex64::new(a[0].as_f64()?, a[1].as_f64()?)),
        _ => None,
    }
}

/// Reads a list of `{"from": [..], "to": [..], "steps": k}`, where a point
/// coordinate is a number or a `[re, im]` pair.
pub fn parse_path(text: &str, nq: usize) -> Result<Vec<Segment>, CliError> {
    let bad = |m: String| CliError::Usage(format!("path: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let list = v.as_array().ok_or_else(|| bad("expected a list of segments".into()))?;
    let point = |p: Option<&Value>, k: usize| -> Result<Vec<Complex64>, CliError> {
        let arr = p.and_then(Value::as_array).ok_or_else(|| bad(format!("segment {k}: missing point")))?;
        if arr.len() != nq {
            return Err(bad(format!("segment {k}: point needs {nq} coordinates")));
        }
        arr.iter()
            .map(|c| complex_of(c).ok_or_else(|| bad(format!("segment {k}: not a complex number: {c}"))))
            .collect()
    };
    list.iter()
        .enumerate()
        .map(|(k, s)| {
            let steps = s.get("steps").and_then(Value::as_u64).unwrap_or(16) as usize;
            Ok(Segment { from: point(s.get("from"), k)?, to: point(s.get("to"), k)?, steps: steps.max(1) })
        })
        .collect()
}

fn monodromy(n: usize, d: &DegreeVector, spec: &str, kappa: f64, path_text: &str, control: StepControl) -> Result<Outcome, CliError> {
    check_degree(n, d)?;
    if n < 3 {
        return Err(CliError::Usage("the connection needs n >= 3".into()));
    }
    let point = parse_spec(spec)?;
    let x = (1..=n).map(|i| lookup(&point, Var::X(i as u8))).collect::<Result<Vec<_>, _>>()?;
    let hbar = lookup(&point, Var::Hbar)?;
    let path = parse_path(path_text, n - 2)?;
    let mut config = base_config(n);
    config.insert("degree".into(), json!(degree_string(d)));
    config.insert("spec".into(), json!(spec_string(&point)));
    config.insert("kappa".into(), json!(kappa));
    config.insert("tolerance".into(), json!(control.tolerance));
    config.insert("max_steps".into(), json!(control.max_steps));
    config.insert("segments".into(), json!(path.len()));
    let mut out = Outcome::new("monodromy", config);
    let m = monodromy_transport(&ConnectionSpec { n, degree: d.clone(), x, hbar, kappa }, &path, control)?;
    let mut table = Table { header: strings(&["row", "col", "re", "im"]), rows: Vec::new() };
    for (r, row) in m.matrix.iter().enumerate() {
        for (c, z) in row.iter().enumerate() {
            table.rows.push(vec![r.to_string(), c.to_string(), z.re.to_string(), z.im.to_string()]);
        }
    }
    let matrix: Vec<Vec<[f64; 2]>> = m.matrix.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect();
    out.data = Some((json!({"matrix": matrix, "error_estimate": m.error_estimate, "steps": m.steps}), table));
    Ok(out)
}

fn global_verify(n: usize, dmax: u32) -> Result<Outcome, CliError> {
    let mut config = base_config(n);
    config.insert("max_degree".into(), json!(dmax));
    let mut out = Outcome::new("global-verify", config);
    out.reports.push(check_double_relations(n, dmax)?);
    out.reports.push(check_symmetrization(n, dmax)?);
    out.reports.push(check_global_whittaker(n, dmax)?);
    let degrees = DegreeVector::all_up_to(n, dmax);
    let parts = par_map(&degrees, |d| Ok(vec![check_double_gt_separation(n, d)?, check_cartan_from_chern(n, d)?]))?;
    out.reports.extend(merge(parts));
    Ok(out)
}

fn ktheory(n: usize, choice: &DegreeChoice) -> Result<Outcome, CliError> {
    let mut config = base_config(n);
    let (degrees, single) = resolve(n, choice, &mut config)?;
    let mut out = Outcome::new("ktheory", config);
    let dmax = degrees.iter().map(DegreeVector::total).max().unwrap_or(0);
    let keep = |r: VerificationReport| -> VerificationReport {
        if !single {
            return r;
        }
        let tag = format!("on V{}", degrees[0]);
        VerificationReport { suite: r.suite, items: r.items.into_iter().filter(|i| i.label.ends_with(&tag)).collect() }
    };
    out.reports.push(keep(check_quantum_identities(n, dmax)));
    out.reports.push(keep(check_normalization_integrality(n, dmax)));
    out.reports.extend(merge(par_map(&degrees, |d| Ok(vec![check_k_separation(n, d)]))?));
    if single {
        let d = &degrees[0];
        let mut header = vec!["pattern".to_string()];
        for k in 1..n {
            header.push(format!("D{k}"));
            header.push(format!("corrected Cas{k}"));
        }
        header.push("normalization".into());
        let mut table = Table { header, rows: Vec::new() };
        let mut rows = Vec::new();
        for p in enumerate_patterns(n, d) {
            let mut cells = vec![p.to_string()];
            let mut det = Vec::new();
            let mut cas = Vec::new();
            for k in 1..n {
                let dk = eig_det_class_k(&p, k).to_string();
                let ck = eig_corrected_quantum_casimir(&p, k).map(|m| m.to_string()).unwrap_or_else(|| "not a monomial".into());
                cells.push(dk.clone());
                cells.push(ck.clone());
                det.push(dk);
                cas.push(ck);
            }
            let c = normalization_constant(&p).to_string();
            cells.push(c.clone());
            table.rows.push(cells);
            rows.push(json!({"pattern": pattern_json(&p), "det_classes": det, "corrected_casimirs": cas, "normalization": c}));
        }
        out.data = Some((Value::Array(rows), table));
    }
    Ok(out)
}
