//! Acceptance criteria 1–10, one PASS/FAIL line each (run with
//! `--nocapture` to see them). Tolerances and time budgets are pinned below.
//!
//! A criterion listed in `KNOWN_RED` is expected to fail for the stated
//! reason; the test fails if any other criterion is red, or if a known-red
//! one turns green (so the list cannot go stale).

use std::process::Command;
use std::time::Instant;

use gradslice::algebra::roots::{cauchy_bound, sturm_count};
use gradslice::algebra::{q, qi, real_roots, refine_root, OrderedField, Ring, UniPoly, Var, Q};
use gradslice::gradation::OdeOperator;
use gradslice::models::{
    juddian_points, juddian_points_numeric, kus_polynomial, root_count_expectation, sweep_system, Branch, ModelKind, ModelSpec,
};
use gradslice::recurrence::{downward_recurrence, raw_constraints, solve_baseline, theorem4_coefficients};
use gradslice::verification::*;
use gradslice::{Field, RatFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const KUS_REL_TOL: f64 = 1e-9;
const NUMERIC_RESIDUAL_REL: f64 = 1e-10;
const SUM_RULE_ABS: f64 = 1e-9;
const BETHE_ABS: f64 = 1e-8;
const DRIVEN_CONTINUITY: f64 = 1e-6;
const DRIVEN_SMALL_DRIVE: &str = "1e-8";
const GRID_AGREEMENT: f64 = 1e-8;
const PLANTED_CASES: usize = 120;
const SEED: u64 = 0x5eed_2026;

/// Criterion 1 fails for the Schweber and Koc forms only: their A(z) has no
/// constant term, so the lowest grade actually present is −1 and the
/// signature is (1, −1, 3), not (1, −2, 4).
const KNOWN_RED: &[(u32, &str)] = &[(1, "Schweber and Koc forms slice to (1, -1, 3): A(z) has no constant term")];

type Verdict = Result<String, String>;

fn tolerances() -> Tolerances {
    Tolerances { residual_rel: NUMERIC_RESIDUAL_REL, bethe_abs: BETHE_ABS, sum_rule_abs: SUM_RULE_ABS, ..Tolerances::default() }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rabi(w: Q, d: Q) -> ModelSpec {
    ModelSpec::new(ModelKind::Rabi, w, d)
}

fn driven(drive: Q, branch: Branch) -> ModelSpec {
    ModelSpec::new(ModelKind::DrivenRabi, q(2, 5), q(1, 10)).with_drive(drive).with_branch(branch)
}

fn generalized(mu: Q, g1: Q, g2: Q) -> ModelSpec {
    ModelSpec::new(ModelKind::GeneralizedRabi, qi(1), mu).with_couplings(g1, g2)
}

/// Every model variant the library builds, with a label.
fn all_models() -> Vec<(String, ModelSpec)> {
    let (w, d) = (q(2, 5), q(1, 10));
    vec![
        ("rabi".into(), rabi(w.clone(), d.clone())),
        ("driven+".into(), driven(q(1, 50), Branch::Plus)),
        ("driven-".into(), driven(q(1, 50), Branch::Minus)),
        ("two-photon q=1/4".into(), ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(3, 10)).with_q(q(1, 4))),
        ("two-photon q=3/4".into(), ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(3, 10)).with_q(q(3, 4))),
        ("two-mode q=1/2".into(), ModelSpec::new(ModelKind::TwoMode, qi(1), q(3, 10)).with_q(q(1, 2))),
        ("two-mode q=1".into(), ModelSpec::new(ModelKind::TwoMode, qi(1), q(3, 10)).with_q(qi(1))),
        ("schweber".into(), ModelSpec::new(ModelKind::SchweberForm, w.clone(), d.clone())),
        ("koc".into(), ModelSpec::new(ModelKind::KocForm, w, d)),
        ("generalized".into(), generalized(q(3, 10), qi(2), qi(1))),
        ("generalized ν=−κ".into(), generalized(qi(0), qi(1), qi(2)).with_branch(Branch::Degenerate)),
    ]
}

/// Cleared constraints at a fixed coupling, computed from scratch with the
/// coupling substituted before the recurrence (no symbolic sweep system).
fn cleared_at(spec: &ModelSpec, n: usize, t: &Q) -> Option<Vec<Q>> {
    let b = solve_baseline(&spec.build(&spec.params_with(t.clone())), n).ok()?;
    let sol = downward_recurrence(&b).ok()?;
    let clearing = b.clearing_factor();
    Some(raw_constraints(&b, &sol).iter().map(|c| c.mul(&clearing)).collect())
}

/// Zeros of `f` in `(lo, hi]` from sign changes on a uniform grid, each
/// bisected in exact arithmetic to width `eps`.
fn grid_zeros(f: &dyn Fn(&Q) -> Option<Q>, lo: &Q, hi: &Q, cells: usize, eps: f64) -> Vec<f64> {
    let at = |i: usize| lo + (hi - lo) * Q::new(i.into(), cells.into());
    let sign = |x: &Q| f(x).map(|v| v.to_f64().signum());
    let mut out = Vec::new();
    let mut prev = (at(1), sign(&at(1)));
    for i in 2..=cells {
        let x = at(i);
        let s = sign(&x);
        if let (Some(a), Some(b)) = (prev.1, s) {
            if a * b < 0.0 {
                let (mut l, mut r, sl) = (prev.0.clone(), x.clone(), a);
                while (&r - &l).to_f64() > eps {
                    let m = (&l + &r) / qi(2);
                    match sign(&m) {
                        Some(sm) if sm == sl => l = m,
                        Some(0.0) => {
                            l = m.clone();
                            r = m;
                        }
                        _ => r = m,
                    }
                }
                out.push(((&l + &r) / qi(2)).to_f64());
            }
        }
        prev = (x, s);
    }
    out
}

fn positive_roots(p: &UniPoly<Q>) -> Vec<f64> {
    let hi = cauchy_bound(p) + qi(1);
    let sq = p.squarefree_part();
    let eps = Q::from_float(2f64.powi(-80)).unwrap();
    real_roots(p, &qi(0), &hi)
        .unwrap()
        .iter()
        .map(|iv| refine_root(&sq, iv, &eps).unwrap().to_f64())
        .filter(|&x| x > 0.0)
        .collect()
}

// 1 ---------------------------------------------------------------------

fn signatures() -> Verdict {
    let mut wrong = Vec::new();
    let mut right = 0;
    for (label, spec) in all_models() {
        let op = spec.build(&spec.sweep_params()).normalized();
        let sig = op.signature().unwrap();
        let expected = if label == "generalized" { (2, None) } else { (1, Some((-2, 4))) };
        let ok = sig.gamma == expected.0 && expected.1.map_or(true, |(gs, w)| sig.gamma_star == gs && sig.width == w);
        if ok {
            right += 1;
        } else {
            wrong.push(format!("{label}: ({}, {}, {})", sig.gamma, sig.gamma_star, sig.width));
        }
    }
    if wrong.is_empty() {
        Ok(format!("{right} operators"))
    } else {
        Err(format!("{right} match; mismatched: {}", wrong.join("; ")))
    }
}

// 2 ---------------------------------------------------------------------

fn rabi_n1_closed_form() -> Verdict {
    let pairs = [(q(2, 5), q(1, 10)), (qi(1), q(1, 2)), (qi(3), qi(2)), (q(7, 4), q(1, 3)), (qi(5), qi(3))];
    for (w, d) in pairs {
        let sys = sweep_system(&rabi(w.clone(), d.clone()), 1).map_err(|e| e.to_string())?;
        // 4g²/ω² + Δ²/ω² = 1, monic in g: g² + (Δ² − ω²)/4.
        let expected = UniPoly::new(vec![(&d * &d - &w * &w) / qi(4), qi(0), qi(1)], Var::T);
        check(sys.constraints[0].normalized == expected, || format!("ω={w} Δ={d}: P1 = {}", sys.constraints[0].normalized))?;
        // a₁₀ = (Δ² + 2g²)/(2gω), compared as rational functions.
        let t = RatFunc::param(Var::T);
        let two = RatFunc::constant(qi(2), Var::T);
        let num = RatFunc::constant(&d * &d, Var::T).add(&two.mul(&t).mul(&t));
        let closed = num.div(&two.mul(&t).mul(&RatFunc::constant(w.clone(), Var::T))).unwrap();
        let a10 = sys.solution.poly.coeff(0);
        check(a10.sub(&closed).is_zero(), || format!("ω={w} Δ={d}: a10 = {a10}"))?;
        // Zero set in g > 0 is the single closed-form point.
        let (lo, hi) = (qi(0), cauchy_bound(&expected) + qi(1));
        let set = juddian_points(&rabi(w.clone(), d.clone()), 1, &lo, &hi).map_err(|e| e.to_string())?;
        let g = w.to_f64() * (1.0 - (d.to_f64() / w.to_f64()).powi(2)).sqrt() / 2.0;
        check(set.points.len() == 1 && (set.points[0].value - g).abs() <= 1e-14 * g, || format!("ω={w} Δ={d}: points {:?}", set.points.len()))?;
    }
    Ok("5 (ω, Δ) pairs".into())
}

// 3 ---------------------------------------------------------------------

fn kus_equivalence() -> Verdict {
    let w = q(2, 5);
    let mut worst = 0.0f64;
    for n in 2..=8 {
        for mu in [q(1, 4), q(1, 2), q(3, 4)] {
            let sys = sweep_system(&rabi(w.clone(), &mu * &w), n).map_err(|e| e.to_string())?;
            let ours = positive_roots(&sys.constraints[0].normalized);
            // K_nn(g/ω, μ) as a polynomial in g, from its own recurrence.
            let kappa = UniPoly::new(vec![qi(0), qi(1) / &w], Var::T);
            let kus = kus_polynomial(n, &kappa, &UniPoly::constant(mu.clone(), Var::T));
            let theirs = positive_roots(&kus);
            check(ours.len() == n && theirs.len() == n, || format!("n={n} μ={mu}: {} vs {} roots", ours.len(), theirs.len()))?;
            for (a, b) in ours.iter().zip(&theirs) {
                let rel = (a - b).abs() / b.abs();
                worst = worst.max(rel);
                check(rel <= KUS_REL_TOL, || format!("n={n} μ={mu}: {a} vs {b}"))?;
            }
        }
    }
    Ok(format!("21 cases, worst relative gap {worst:.1e}"))
}

// 4 ---------------------------------------------------------------------

fn root_count_law() -> Verdict {
    let w = q(2, 5);
    let mut counts = Vec::new();
    for (mu, expected) in [("0.25", 5), ("1.5", 4), ("2.5", 3), ("3.5", 2), ("4.5", 1)] {
        let mu = gradslice::algebra::parse_rational(mu).unwrap();
        let sys = sweep_system(&rabi(w.clone(), &mu * &w), 5).map_err(|e| e.to_string())?;
        let p = sys.constraints[0].normalized.squarefree_part();
        let hi = cauchy_bound(&p) + qi(1);
        let count = sturm_count(&p, &qi(0), &hi) - usize::from(p.eval(&qi(0)).is_zero());
        let law = root_count_expectation(5, mu.to_f64()).map_err(|e| e.to_string())?;
        check(count == expected && law == expected, || format!("μ={mu}: {count} roots, law {law}, expected {expected}"))?;
        counts.push(count);
    }
    Ok(format!("counts {counts:?}"))
}

// 5 ---------------------------------------------------------------------

fn residual_soundness() -> Verdict {
    let tol = tolerances();
    let (mut exact_points, mut numeric_points, mut worst) = (0, 0, 0.0f64);
    for (label, spec) in all_models() {
        for n in 1..=6 {
            let (lo, hi) = spec.default_domain();
            let set = juddian_points(&spec, n, &lo, &hi).map_err(|e| format!("{label} n={n}: {e}"))?;
            check(set.certified, || format!("{label} n={n}: exact residual does not vanish on the defining polynomial"))?;
            if !set.points.is_empty() {
                check(sweep_residual_certificate(&set).passed(), || format!("{label} n={n}: sweep residual certificate"))?;
            }
            exact_points += set.points.len();
            let num = juddian_points_numeric(&spec, n, lo.to_f64(), hi.to_f64(), 1000).map_err(|e| format!("{label} n={n}: {e}"))?;
            for p in &num {
                worst = worst.max(p.residual_rel);
                check(p.residual_rel < tol.residual_rel, || format!("{label} n={n} t={}: numeric residual {:.2e}", p.value, p.residual_rel))?;
            }
            numeric_points += num.len();
        }
    }
    Ok(format!("{exact_points} exact points certified; {numeric_points} numeric points, worst residual {worst:.1e}"))
}

// 6 ---------------------------------------------------------------------

fn sum_rule_and_bethe() -> Verdict {
    let tol = tolerances();
    let (w, d) = (q(2, 5), q(1, 10));
    let specs = [
        rabi(w.clone(), d.clone()),
        driven(q(1, 50), Branch::Plus),
        driven(q(1, 50), Branch::Minus),
        ModelSpec::new(ModelKind::SchweberForm, w.clone(), d.clone()),
        ModelSpec::new(ModelKind::KocForm, w, d),
    ];
    let (mut points, mut worst_sum, mut worst_bethe) = (0, 0.0f64, 0.0f64);
    for spec in &specs {
        for n in 1..=6 {
            let (lo, hi) = spec.default_domain();
            let set = juddian_points(spec, n, &lo, &hi).map_err(|e| e.to_string())?;
            check(sweep_sum_rule_certificate(&set).map_err(|e| e.to_string())?.passed(), || format!("{:?} n={n}: exact sum rule", spec.kind))?;
            for p in &set.points {
                let op = set.system.operator_at(&p.param).unwrap();
                let s = sum_rule_certificate(spec, n, p.value, &p.roots, &tol).map_err(|e| e.to_string())?;
                let (b, _) = bethe_residuals(&op, &p.roots, &tol).map_err(|e| e.to_string())?;
                let m = |c: &Certificate| match c.witness("measured") {
                    Some(Witness::Float(x)) => *x,
                    _ => f64::NAN,
                };
                worst_sum = worst_sum.max(m(&s));
                worst_bethe = worst_bethe.max(m(&b));
                check(s.passed() && b.passed(), || format!("{:?} n={n} g={}: sum {:.1e}, Bethe {:.1e}", spec.kind, p.value, m(&s), m(&b)))?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} points; worst sum rule {worst_sum:.1e}, worst Bethe {worst_bethe:.1e}"))
}

// 7 ---------------------------------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly<Q> {
    let d = rng.gen_range(0..=max_deg);
    let mut c: Vec<Q> = (0..=d).map(|_| qi(rng.gen_range(-6..=6))).collect();
    if c[d].is_zero() {
        c[d] = qi(1);
    }
    UniPoly::new(c, Var::Z)
}

fn inverse_mod(a: &UniPoly<Q>, m: &UniPoly<Q>) -> UniPoly<Q> {
    let (mut r0, mut r1) = (m.clone(), a.rem(m).unwrap());
    let (mut s0, mut s1) = (UniPoly::zero_in(Var::Z), UniPoly::constant(qi(1), Var::Z));
    while !r1.is_zero() {
        let (qq, r) = r0.divrem(&r1).unwrap();
        let s = s0.sub(&qq.mul(&s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    s0.scale(&r0.coeff(0).inv().unwrap()).rem(m).unwrap()
}

fn theorem4_planted() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut checked = 0;
    let mut tampered_rejected = 0;
    while checked < PLANTED_CASES {
        let n = rng.gen_range(1..=6usize);
        let mut roots: Vec<Q> = Vec::new();
        while roots.len() < n {
            let r = q(rng.gen_range(-12..=12), rng.gen_range(1..=3));
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let s = UniPoly::from_roots(&roots, Var::Z);
        let gamma = rng.gen_range(n - 1..=n + 1);
        let a = random_poly(&mut rng, gamma + 2);
        let v = if gamma + 1 >= n { random_poly(&mut rng, gamma + 1 - n) } else { UniPoly::zero_in(Var::Z) };
        let (s1, s2) = (s.derivative(), s.derivative().derivative());
        let b = a.mul(&s2).neg().mul(&inverse_mod(&s1, &s)).rem(&s).unwrap().add(&s.mul(&v));
        let c = a.mul(&s2).add(&b.mul(&s1)).neg().exact_quo(&s).unwrap();
        let op = OdeOperator::from_abc(&a, &b, &c);
        check(op.apply(&s).is_zero(), || format!("planting failed: {op:?}"))?;
        let Some(sig) = op.signature() else { continue };
        if sig.gamma < 0 {
            continue;
        }
        let pred = theorem4_coefficients(&op, n, &roots).map_err(|e| e.to_string())?;
        check(pred.holds(), || format!("n={n} γ={}: predicted {:?} actual {:?}", sig.gamma, pred.predicted, pred.actual))?;
        // The identity is sharp: perturbing c_{γ−1} must be detected.
        if sig.gamma >= 1 {
            let bump = OdeOperator::new([gradslice::OdeTerm::new(q(1, 3), (sig.gamma - 1) as usize, 0)]);
            let bumped = theorem4_coefficients(&op.add(&bump), n, &roots).map_err(|e| e.to_string())?;
            check(!bumped.holds(), || "perturbed c_{γ−1} still matched".into())?;
            tampered_rejected += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} planted solutions exact; {tampered_rejected} perturbations rejected"))
}

// 8 ---------------------------------------------------------------------

fn driven_consistency() -> Verdict {
    let small = gradslice::algebra::parse_rational(DRIVEN_SMALL_DRIVE).unwrap();
    let mut worst = 0.0f64;
    for branch in [Branch::Plus, Branch::Minus] {
        for n in 1..=6 {
            let r = rabi(q(2, 5), q(1, 10));
            let (lo, hi) = r.default_domain();
            let a = juddian_points(&r, n, &lo, &hi).map_err(|e| e.to_string())?;
            let b = juddian_points(&driven(small.clone(), branch), n, &lo, &hi).map_err(|e| e.to_string())?;
            check(a.points.len() == b.points.len(), || format!("{branch:?} n={n}: {} vs {} points", a.points.len(), b.points.len()))?;
            for (x, y) in a.points.iter().zip(&b.points) {
                worst = worst.max((x.value - y.value).abs());
                check((x.value - y.value).abs() < DRIVEN_CONTINUITY, || format!("{branch:?} n={n}: {} vs {}", x.value, y.value))?;
            }
        }
    }
    // n = 9, δ = 0.02: the CLI against a grid oracle on the cleared P₁.
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("driven.json");
    let config = r#"{"model":"driven-rabi","omega":"0.4","delta":"0.1","delta_drive":"0.02","n":9,"sweep":{"param":"g","min":"0","max":"2"}}"#;
    std::fs::write(&cfg, config).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_gradslice")).args(["roots", "--config", cfg.to_str().unwrap()]).output().map_err(|e| e.to_string())?;
    check(out.status.success(), || format!("roots exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)))?;
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let cli: Vec<f64> = report["points"].as_array().unwrap().iter().map(|p| p["value"].as_f64().unwrap()).collect();
    let spec = ModelSpec::new(ModelKind::DrivenRabi, q(2, 5), q(1, 10)).with_drive(q(1, 50));
    let oracle = grid_zeros(&|t| cleared_at(&spec, 9, t).map(|c| c[0].clone()), &qi(0), &qi(2), 4000, 1e-13);
    check(cli.len() == oracle.len(), || format!("n=9: roots gives {} points, grid oracle {}", cli.len(), oracle.len()))?;
    let mut gap = 0.0f64;
    for (a, b) in cli.iter().zip(&oracle) {
        gap = gap.max((a - b).abs());
    }
    check(gap < GRID_AGREEMENT, || format!("n=9: max gap {gap:.1e}"))?;
    Ok(format!("δ→0 max shift {worst:.1e}; n=9: {} points, max gap to grid oracle {gap:.1e}", cli.len()))
}

// 9 ---------------------------------------------------------------------

fn generalized_rabi() -> Verdict {
    let sets = [(q(3, 10), qi(2), qi(1)), (q(1, 2), qi(3), qi(1)), (q(1, 5), qi(1), qi(3))];
    let mut summary = Vec::new();
    for (mu, g1, g2) in sets {
        let spec = generalized(mu.clone(), g1.clone(), g2.clone());
        let n = 2;
        let (lo, hi) = (qi(0), qi(6));
        let set = juddian_points(&spec, n, &lo, &hi).map_err(|e| e.to_string())?;
        let ours: Vec<f64> = set.points.iter().map(|p| p.value).collect();
        // Independent scan along κ at μ = μ₀ in the (κ, μ) plane: a point is
        // a cell where both constraints change sign and their bisected zeros
        // coincide.
        let z1 = grid_zeros(&|t| cleared_at(&spec, n, t).map(|c| c[0].clone()), &lo, &hi, 3000, 1e-13);
        let z2 = grid_zeros(&|t| cleared_at(&spec, n, t).map(|c| c[1].clone()), &lo, &hi, 3000, 1e-13);
        let scan: Vec<f64> = z1.iter().copied().filter(|a| z2.iter().any(|b| (a - b).abs() < GRID_AGREEMENT)).collect();
        check(scan.len() == ours.len(), || format!("μ={mu} g1={g1} g2={g2}: resultant/gcd gives {ours:?}, scan {scan:?}"))?;
        for (a, b) in ours.iter().zip(&scan) {
            check((a - b).abs() < GRID_AGREEMENT, || format!("μ={mu}: {a} vs {b}"))?;
        }
        let res = set.resultant.as_ref().map_or("none".to_string(), |r| if r.is_zero() { "0".into() } else { "≠0".into() });
        check(set.certified && (ours.is_empty() || sweep_residual_certificate(&set).passed()), || format!("μ={mu}: residual certification"))?;
        for pt in &set.points {
            check(certify_point(&set, pt, &tolerances()).iter().all(Certificate::passed), || format!("μ={mu} κ={}: point certificates", pt.value))?;
        }
        let op = set.system.operator_at(&q(1, 2)).unwrap();
        check(matches!(sl2_decompose(&op, n), Sl2Outcome::NotRepresentable(_)), || format!("μ={mu}: generic operator reported as sl2"))?;
        summary.push(format!("{} pts (res {res})", ours.len()));
    }
    Ok(summary.join(", "))
}

// 10 --------------------------------------------------------------------

fn sl2_suite() -> Verdict {
    let (w, d, g) = (q(2, 5), q(1, 10), q(1, 3));
    let spec = rabi(w.clone(), d);
    for n in 0..=6usize {
        let b = solve_baseline(&spec.build(&spec.params_with(g.clone())), n).map_err(|e| e.to_string())?;
        let out = sl2_decompose(&b.op, n);
        let dec = out.valid().ok_or_else(|| format!("n={n}: not sl2: {out:?}"))?;
        let j = q(n as i64, 2);
        check(dec.c_00 == &w * &w && dec.c_0 == -(qi(2) * &j * &w * &w), || format!("n={n}: C00={} C0={}", dec.c_00, dec.c_0))?;
        let (a, bb, c) = b.op.abc();
        check(dec.reconstruct() == (a, bb, c), || format!("n={n}: round trip"))?;
        check(degeneracy_lemma_check(dec).passed(), || format!("n={n}: nondegeneracy not guaranteed"))?;
    }
    let mut points = 0;
    for n in 1..=5 {
        let (lo, hi) = spec.default_domain();
        let set = juddian_points(&spec, n, &lo, &hi).map_err(|e| e.to_string())?;
        for p in &set.points {
            let op = set.system.operator_at(&p.param).unwrap();
            let s = set.system.solution_at(&p.param).unwrap();
            let dec = sl2_decompose(&op, n);
            let dec = dec.valid().ok_or("Juddian operator not sl2")?;
            let p1 = s.coeff(n - 1).neg();
            check(cfrm_defect(dec, &op, &p1).is_zero(), || format!("n={n} g={}: Cfrm defect", p.value))?;
            points += 1;
        }
    }
    Ok(format!("baselines n=0..6 exact; Cfrm identity exact at {points} Juddian points"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, f64, fn() -> Verdict); 10] = [
        (1, "grade signatures", 1.0, signatures),
        (2, "n=1 Rabi closed form", 1.0, rabi_n1_closed_form),
        (3, "Kus oracle equivalence", 30.0, kus_equivalence),
        (4, "root-count law", 10.0, root_count_law),
        (5, "residual soundness", 60.0, residual_soundness),
        (6, "sum rule and Bethe", 30.0, sum_rule_and_bethe),
        (7, "coefficient identity on planted solutions", 20.0, theorem4_planted),
        (8, "driven-model consistency", 60.0, driven_consistency),
        (9, "generalized Rabi", 120.0, generalized_rabi),
        (10, "sl2 suite", 5.0, sl2_suite),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        let verdict = match verdict {
            Ok(detail) if secs > budget => Err(format!("{detail}; took {secs:.2} s, budget {budget} s")),
            v => v,
        };
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        match (&verdict, known) {
            (Ok(detail), None) => println!("criterion {id:>2} PASS  {name}: {detail} ({secs:.2} s)"),
            (Err(why), Some((_, reason))) => println!("criterion {id:>2} FAIL  {name}: {why} [known: {reason}] ({secs:.2} s)"),
            (Err(why), None) => {
                println!("criterion {id:>2} FAIL  {name}: {why} ({secs:.2} s)");
                unexpected.push(id);
            }
            (Ok(detail), Some(_)) => {
                println!("criterion {id:>2} PASS  {name}: {detail} ({secs:.2} s) [listed as known red]");
                unexpected.push(id);
            }
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected status: {unexpected:?}");
}
