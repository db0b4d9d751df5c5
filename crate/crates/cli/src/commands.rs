use std::fmt::Write as _;

use gradslice::algebra::{parse_rational, OrderedField};
use gradslice::gradation::{classify_alternative, wronskian_uniqueness_flag};
use gradslice::models::{juddian_points, juddian_points_numeric, kus_polynomial, sweep_system, ModelKind, ModelSpec, SweepSystem};
use gradslice::recurrence::{downward_recurrence, power_sums, raw_constraints, solve_baseline};
use gradslice::verification::{
    certify_sweep, certify_values, cfrm_defect, degeneracy_lemma_check, sl2_certificate, sl2_decompose, Sl2Outcome, Tolerances,
};
use gradslice::{Field, OdeOperator, UniPoly, Q};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{ModelConfig, Sweep};
use crate::exit::Exit;
use crate::report::{poly_strings, records, CertificateRecord, PointRecord, RootsReport, Sl2Record};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exact,
    Numeric,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Text written to the output plus the verdict that decides the exit code.
pub struct Output {
    pub text: String,
    pub failure: Option<Exit>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failure: None }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- slice

pub fn slice(cfg: &ModelConfig) -> Result<Output, Exit> {
    let spec = cfg.spec()?;
    let text = if spec.g.is_some() || spec.g1.is_some() {
        slice_report(&spec, &spec.build(&spec.fixed_params()?))
    } else {
        slice_report(&spec, &spec.build(&spec.sweep_params()))
    };
    Ok(Output::ok(text))
}

fn slice_report<F: Field>(spec: &ModelSpec, op: &OdeOperator<UniPoly<F>>) -> String {
    let op = op.normalized();
    let mut s = String::new();
    let _ = writeln!(s, "model: {}", spec.kind.name());
    let _ = writeln!(s, "order: {}", op.order());
    let Some(sig) = op.signature() else {
        s.push_str("operator is zero\n");
        return s;
    };
    let _ = writeln!(s, "signature: gamma={} gamma_star={} width={}", sig.gamma, sig.gamma_star, sig.width);
    let _ = writeln!(s, "alternative: {:?}", classify_alternative(&op));
    let _ = writeln!(s, "two_polynomial_solutions_possible: {}", wronskian_uniqueness_flag(&op));
    for slice in op.slices() {
        let _ = writeln!(s, "\nslice {} ({} terms):", slice.grade, slice.terms.len());
        s.push_str(&OdeOperator::new(slice.terms.clone()).dump());
    }
    s
}

// ------------------------------------------------------------- baseline

pub fn baseline(cfg: &ModelConfig) -> Result<Output, Exit> {
    let spec = cfg.spec()?;
    let n = cfg.n()?;
    let report = if spec.g.is_some() || spec.g1.is_some() {
        baseline_report(&spec, &spec.build(&spec.fixed_params()?), n)?
    } else {
        baseline_report(&spec, &spec.build(&spec.sweep_params()), n)?
    };
    Ok(Output::ok(to_json(&report)))
}

fn baseline_report<F: Field>(spec: &ModelSpec, op: &OdeOperator<UniPoly<F>>, n: usize) -> Result<Value, Exit> {
    let b = solve_baseline(op, n)?;
    let gamma = b.gamma();
    let multiplicators: Vec<String> = (0..n).map(|k| b.multiplicator(gamma, k).to_string()).collect();
    let sol = downward_recurrence(&b)?;
    let constraints: Vec<String> = raw_constraints(&b, &sol).iter().map(ToString::to_string).collect();
    Ok(json!({
        "model": spec.kind.name(),
        "n": n,
        "gamma": gamma,
        "gamma_star": b.signature.gamma_star,
        "energy": b.energy.as_ref().map(ToString::to_string),
        "multiplicators": multiplicators,
        "coefficients": sol.poly.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "constraints": constraints,
        "polynomial_solution": sol.residual.is_zero() && constraints.iter().all(|c| c == "0"),
    }))
}

// ----------------------------------------------------------- constraint

pub fn constraint(cfg: &ModelConfig) -> Result<Output, Exit> {
    let spec = cfg.spec()?;
    let n = cfg.n()?;
    let sys = sweep_system(&spec, n)?;
    let constraints: Vec<Value> = sys
        .constraints
        .iter()
        .map(|c| {
            json!({
                "g": c.g,
                "degree": c.normalized.degree(),
                "coefficients": poly_strings(&c.normalized),
                "cleared": poly_strings(&c.cleared),
            })
        })
        .collect();
    let clearing = sys.constraints.first().map(|c| poly_strings(&c.clearing_factor)).unwrap_or_else(|| vec!["1".into()]);
    let report = json!({
        "model": spec.kind.name(),
        "n": n,
        "parameter": spec.kind.coupling_name(),
        "gamma": sys.gamma(),
        "energy": sys.energy.to_string(),
        "scale": poly_strings(&sys.scale),
        "clearing_factor": clearing,
        "constraints": constraints,
    });
    Ok(Output::ok(to_json(&report)))
}

// ---------------------------------------------------------------- roots

fn sl2_section(sys: &SweepSystem, param: &Q) -> Option<Sl2Record> {
    let op = sys.operator_at(param)?;
    if op.order() != 2 {
        return None;
    }
    let n = sys.n;
    let Sl2Outcome::Valid(d) = sl2_decompose(&op, n) else { return None };
    let s = sys.solution_at(param)?;
    let (p1, _, _) = power_sums(&s);
    let defect = cfrm_defect(&d, &op, &p1);
    let ctx = |c: gradslice::verification::Certificate| c.with_context(sys.spec.kind.name(), n, param);
    let certs = vec![ctx(sl2_certificate(&op, n)), ctx(degeneracy_lemma_check(&d))];
    let mut coefficients = Map::new();
    for (k, v) in [
        ("C++", &d.c_pp),
        ("C+0", &d.c_p0),
        ("C00", &d.c_00),
        ("C0-", &d.c_0m),
        ("C--", &d.c_mm),
        ("C+", &d.c_p),
        ("C0", &d.c_0),
        ("C-", &d.c_m),
        ("C*", &d.c_star),
    ] {
        coefficients.insert(k.into(), Value::String(v.to_string()));
    }
    Some(Sl2Record { two_j: d.two_j, coefficients, cfrm_defect: defect.to_string(), certificates: records(&certs) })
}

fn point_record(
    sys: &SweepSystem,
    index: usize,
    param: Q,
    interval: Option<[String; 2]>,
    value: f64,
    coefficients: Vec<f64>,
    roots: Vec<Complex64>,
    residual_rel: f64,
    tol: &Tolerances,
) -> PointRecord {
    let certs = certify_values(sys, &param, value, &coefficients, &roots, tol);
    let energy = sys.energy_at(&param).map_or(f64::NAN, |e| e.to_f64());
    PointRecord {
        index,
        coupling: sys.spec.physical_coupling(value),
        energy,
        interval,
        coefficients,
        roots: roots.iter().map(|z| [z.re, z.im]).collect(),
        residual_rel,
        certificates: records(&certs),
        sl2: sl2_section(sys, &param),
        param: param.to_string(),
        value,
    }
}

pub fn roots(cfg: &ModelConfig, mode: Mode, tol: &Tolerances) -> Result<RootsReport, Exit> {
    let spec = cfg.spec()?;
    let n = cfg.n()?;
    let Sweep { lo, hi, grid } = cfg.sweep(&spec)?;
    let (sys, defining, excluded, sweep_certs, points) = match mode {
        Mode::Exact => {
            let set = juddian_points(&spec, n, &lo, &hi)?;
            // With a constant defining polynomial there are no points and
            // nothing to certify.
            let sweep_certs = if set.defining.is_constant() { Vec::new() } else { records(&certify_sweep(&set)) };
            let points: Vec<PointRecord> = set
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let iv = Some([p.interval.lo.to_string(), p.interval.hi.to_string()]);
                    point_record(&set.system, i, p.param.clone(), iv, p.value, p.coefficients.clone(), p.roots.clone(), p.residual_rel, tol)
                })
                .collect();
            (set.system, Some(poly_strings(&set.defining)), set.excluded.len(), sweep_certs, points)
        }
        Mode::Numeric => {
            let found = juddian_points_numeric(&spec, n, lo.to_f64(), hi.to_f64(), grid)?;
            let sys = sweep_system(&spec, n)?;
            let points = found
                .into_iter()
                .enumerate()
                .map(|(i, p)| point_record(&sys, i, p.param, None, p.value, p.coefficients, p.roots, p.residual_rel, tol))
                .collect();
            (sys, None, 0, Vec::new(), points)
        }
    };
    let all_passed = sweep_certs.iter().all(CertificateRecord::passed) && points.iter().all(PointRecord::passed);
    Ok(RootsReport {
        model: spec.kind.name().into(),
        n: sys.n,
        mode: mode.name().into(),
        parameter: spec.kind.coupling_name().into(),
        config: cfg.clone(),
        interval: [lo.to_string(), hi.to_string()],
        defining,
        excluded,
        sweep_certificates: sweep_certs,
        points,
        all_passed,
    })
}

pub fn roots_output(cfg: &ModelConfig, mode: Mode, tol: &Tolerances, format: Format) -> Result<Output, Exit> {
    let report = roots(cfg, mode, tol)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = format!("index,{},coupling,energy,residual_rel,passed\n", report.parameter);
            for p in &report.points {
                let _ = writeln!(s, "{},{:.16e},{:.16e},{:.16e},{:.3e},{}", p.index, p.value, p.coupling, p.energy, p.residual_rel, p.passed());
            }
            s
        }
    };
    let failure = (!report.all_passed).then(|| {
        let bad: Vec<String> = report.points.iter().filter(|p| !p.passed()).map(|p| p.index.to_string()).collect();
        Exit::verification(format!("certificate failure (points: [{}])", bad.join(", ")))
    });
    Ok(Output { text, failure })
}

// ---------------------------------------------------------------- sweep

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

pub fn sweep(cfg: &ModelConfig, mode: Mode) -> Result<Output, Exit> {
    let spec = cfg.spec()?;
    let n = cfg.n()?;
    if cfg.sweep.is_none() {
        return Err(Exit::config("`sweep` needs a `sweep: {param, min, max}` block"));
    }
    let Sweep { lo, hi, grid } = cfg.sweep(&spec)?;
    let sys = sweep_system(&spec, n)?;
    let polys: Vec<&UniPoly<Q>> = sys.constraints.iter().map(|c| &c.normalized).collect();
    let floats: Vec<Vec<f64>> = polys.iter().map(|p| p.coeffs().iter().map(|c| c.to_f64()).collect()).collect();
    let kus = spec.kind == ModelKind::Rabi;
    let (inv_omega, mu) = (Q::from_integer(1.into()) / &spec.omega, &spec.delta / &spec.omega);

    let mut header = String::from("param");
    for c in &sys.constraints {
        let _ = write!(header, ",P{}", c.g);
    }
    if kus {
        header.push_str(",kus");
    }
    let width = &hi - &lo;
    let rows: Vec<String> = (1..=grid)
        .into_par_iter()
        .map(|i| {
            // Open at the lower end, closed at the upper: (lo, hi].
            let t = &lo + &width * Q::new(i.into(), grid.into());
            let tf = t.to_f64();
            let mut row = format!("{tf:.16e}");
            for (p, f) in polys.iter().zip(&floats) {
                let v = match mode {
                    Mode::Exact => p.eval(&t).to_f64(),
                    Mode::Numeric => horner(f, tf),
                };
                let _ = write!(row, ",{v:.16e}");
            }
            if kus {
                let v = match mode {
                    Mode::Exact => kus_polynomial(n, &(&t * &inv_omega), &mu).to_f64(),
                    Mode::Numeric => {
                        let k = gradslice::Approx::new(tf * inv_omega.to_f64());
                        kus_polynomial(n, &k, &gradslice::Approx::new(mu.to_f64())).value
                    }
                };
                let _ = write!(row, ",{v:.16e}");
            }
            row
        })
        .collect();
    let mut text = header;
    text.push('\n');
    for r in rows {
        text.push_str(&r);
        text.push('\n');
    }
    Ok(Output::ok(text))
}

// --------------------------------------------------------------- verify

/// Relative shift applied to the coupling for the negative control.
const CONTROL_SHIFT: (f64, f64) = (1e-3, 2e-3);

pub fn verify(input: &str, tol: &Tolerances, seed: u64) -> Result<Output, Exit> {
    let report: RootsReport = serde_json::from_str(input).map_err(|e| Exit::config(format!("not a roots report: {e}")))?;
    let spec = report.config.spec()?;
    let sys = sweep_system(&spec, report.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all_passed = true;
    let mut points = Vec::new();
    for p in &report.points {
        let param = parse_rational(&p.param).ok_or_else(|| Exit::verification(format!("point {}: bad parameter {:?}", p.index, p.param)))?;
        let mut issues = Vec::new();
        let exact_value = param.to_f64();
        if (exact_value - p.value).abs() > 1e-12 * exact_value.abs().max(1.0) {
            issues.push(format!("value {} does not match param {}", p.value, exact_value));
        }
        if p.coefficients.len() != report.n + 1 {
            issues.push(format!("expected {} coefficients, found {}", report.n + 1, p.coefficients.len()));
        }
        let roots: Vec<Complex64> = p.roots.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        if roots.len() != report.n {
            issues.push(format!("expected {} zeros, found {}", report.n, roots.len()));
        }
        let certs = certify_values(&sys, &param, p.value, &p.coefficients, &roots, tol);
        let sl2 = sl2_section(&sys, &param);
        // Negative control: the same data at a slightly shifted coupling must
        // be rejected, or the residual check is not discriminating.
        let shift = rng.gen_range(CONTROL_SHIFT.0..CONTROL_SHIFT.1);
        let shifted = &param * Q::from_float(1.0 + shift).expect("finite shift");
        let control = certify_values(&sys, &shifted, p.value, &p.coefficients, &roots, tol);
        let rejected = !control[0].passed();
        if !rejected {
            issues.push(format!("residual check accepted the coupling shifted by {shift:.3e}"));
        }
        let cert_records = records(&certs);
        let passed = issues.is_empty() && cert_records.iter().all(CertificateRecord::passed) && sl2.as_ref().map_or(true, Sl2Record::passed);
        all_passed &= passed;
        points.push(json!({
            "index": p.index,
            "param": p.param,
            "passed": passed,
            "issues": issues,
            "certificates": cert_records,
            "sl2": sl2,
            "negative_control": { "relative_shift": shift, "rejected": rejected },
        }));
    }
    let bundle = json!({
        "model": report.model,
        "n": report.n,
        "seed": seed,
        "points": points,
        "all_passed": all_passed,
    });
    let failure = (!all_passed).then(|| Exit::verification("re-verification failed"));
    Ok(Output { text: to_json(&bundle), failure })
}
