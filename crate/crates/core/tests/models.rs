use gradslice::algebra::{q, qi, ParamScalar, RatFunc, Ring, UniPoly, Var, Q};
use gradslice::gradation::{classify_alternative, Alternative};
use gradslice::models::*;
use gradslice::recurrence::solve_baseline;

fn rabi_like(kind: ModelKind) -> ModelSpec {
    ModelSpec::new(kind, q(2, 5), q(1, 10)).with_drive(q(1, 50))
}

fn all_specs() -> Vec<ModelSpec> {
    vec![
        rabi_like(ModelKind::Rabi),
        rabi_like(ModelKind::DrivenRabi),
        rabi_like(ModelKind::DrivenRabi).with_branch(Branch::Minus),
        ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(1, 2)),
        ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(1, 2)).with_q(q(3, 4)),
        ModelSpec::new(ModelKind::TwoMode, qi(1), q(1, 2)),
        ModelSpec::new(ModelKind::TwoMode, qi(1), q(1, 2)).with_q(qi(1)),
        ModelSpec::new(ModelKind::GeneralizedRabi, qi(1), q(3, 10)).with_couplings(qi(2), qi(1)),
        ModelSpec::new(ModelKind::GeneralizedRabi, qi(1), qi(0)).with_couplings(qi(1), qi(2)).with_branch(Branch::Degenerate),
        rabi_like(ModelKind::SchweberForm),
        rabi_like(ModelKind::KocForm),
    ]
}

#[test]
fn tables_match_operators() {
    for spec in all_specs() {
        for n in 0..5usize {
            // Two rational couplings; the tables are independent formulas.
            for c in [q(1, 3), q(3, 7)] {
                let p = spec.params_with(c.clone());
                let op = spec.build(&p);
                let b = solve_baseline(&op, n).unwrap();
                let table = coefficient_table(&spec, &p, n);
                let sig = b.op.signature().unwrap();
                assert_eq!((sig.gamma, sig.gamma_star), (table.gamma, table.gamma_star), "{:?}", spec.kind);
                for grade in table.gamma_star - 1..=table.gamma + 1 {
                    for k in 0..=n + 2 {
                        assert_eq!(b.op.multiplicator(grade, k), table.value(grade, k), "{:?} n={n} grade={grade} k={k}", spec.kind);
                    }
                }
            }
        }
    }
}

#[test]
fn baseline_energies() {
    let (w, g) = (q(2, 5), q(1, 3));
    for n in 0..6i64 {
        let spec = rabi_like(ModelKind::Rabi);
        let b = solve_baseline(&spec.build(&spec.params_with(g.clone())), n as usize).unwrap();
        assert_eq!(b.energy.unwrap(), qi(n) * &w - &g * &g / &w);
        for (branch, s) in [(Branch::Plus, 1), (Branch::Minus, -1)] {
            let spec = rabi_like(ModelKind::DrivenRabi).with_branch(branch);
            let b = solve_baseline(&spec.build(&spec.params_with(g.clone())), n as usize).unwrap();
            assert_eq!(b.energy.unwrap(), qi(n) * &w - &g * &g / &w + qi(s) * q(1, 50));
        }
        // Two-photon: E_n(Ω) at g = 0 (Ω = 1) is −ω/2 + 2(n + q)ω. At Ω = 1
        // itself the grade-1 slice vanishes, so evaluate the symbolic energy.
        let spec = ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(1, 2));
        let e = sweep_system(&spec, n as usize).unwrap().energy;
        assert_eq!(e.eval(&qi(1)).unwrap(), q(-1, 2) + qi(2) * (qi(n) + q(1, 4)));
    }
}

#[test]
fn signatures_and_alternatives() {
    for spec in all_specs() {
        let op = spec.build(&spec.params_with(q(1, 3)));
        let sig = op.signature().unwrap();
        match spec.kind {
            ModelKind::GeneralizedRabi if spec.branch != Branch::Degenerate => assert_eq!(sig.gamma, 2),
            _ => assert_eq!(sig.gamma, 1),
        }
        assert_eq!(classify_alternative(&op.second_order_part()), Alternative::A2, "{:?}", spec.kind);
    }
}

#[test]
fn driven_branches_are_mirror_images() {
    let g = q(1, 3);
    let plus = rabi_like(ModelKind::DrivenRabi);
    let minus = rabi_like(ModelKind::DrivenRabi).with_branch(Branch::Minus).with_drive(q(-1, 50));
    let a = plus.build(&plus.params_with(g.clone())).reflect();
    let b = minus.build(&minus.params_with(g));
    assert_eq!(a.dump(), b.dump());
}

#[test]
fn driven_at_zero_drive_is_rabi() {
    let spec = rabi_like(ModelKind::Rabi);
    let driven = rabi_like(ModelKind::DrivenRabi).with_drive(qi(0));
    for n in 0..5 {
        let a = coefficient_table(&spec, &spec.params_with(q(2, 9)), n);
        let b = coefficient_table(&driven, &driven.params_with(q(2, 9)), n);
        for g in -2..=1 {
            for k in 0..=n {
                assert_eq!(a.value(g, k), b.value(g, k));
            }
        }
    }
}

#[test]
fn rescaled_forms_agree_with_original_variable() {
    // g = 3/10, ω = 1: Ω = 4/5 for two-photon; g = 3/5: Λ = 4/5 for two-mode.
    let (w, d, qq) = (qi(1), q(1, 2), q(1, 4));
    let z = two_photon_z(&w, &d, &q(3, 10), &q(4, 5), &qq);
    let u = two_photon(&w, &d, &q(4, 5), &qq);
    let at = |op: &gradslice::OdeOperator<UniPoly<Q>>| op.map(|c| c.eval(&q(7, 3)));
    assert_eq!(at(&z).rescale(&q(3, 10)).dump(), at(&u).dump());
    let z = two_mode_z(&w, &d, &q(3, 5), &q(4, 5), &q(1, 2));
    let u = two_mode(&w, &d, &q(4, 5), &q(1, 2));
    assert_eq!(at(&z).rescale(&q(3, 5)).dump(), at(&u).dump());
}

#[test]
fn generalized_factorizes_on_degenerate_line() {
    // ρ = 1/2 and μ = −λ₋ give ν = −κ; the generic operator is (z + κ) times
    // the reduced one.
    let (kappa, rho) = (q(2, 3), q(1, 2));
    let (reduced, mu) = generalized_rabi_degenerate(&kappa, &rho);
    let full = generalized_rabi(&kappa, &mu, &rho);
    let (_, _, nu) = generalized_couplings(&kappa, &mu, &rho);
    assert_eq!(nu, -kappa.clone());
    let factor = UniPoly::new(vec![UniPoly::constant(kappa.clone(), Var::E), UniPoly::constant(qi(1), Var::E)], Var::Z);
    let (a, b, c) = full.abc();
    let (ra, rb, rc) = reduced.abc();
    assert_eq!(a, ra.mul(&factor));
    assert_eq!(b, rb.mul(&factor));
    assert_eq!(c, rc.mul(&factor));
}

#[test]
fn exact_coupling_in_quadratic_extension() {
    // g = 1/4, ω = 1: Ω = √(3/4) = √3/2.
    let spec = ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(1, 2)).with_g(q(1, 4));
    let p = spec.fixed_params().unwrap();
    assert_eq!(p.coupling.mul(&p.coupling), ParamScalar::rational(q(3, 4)));
    let b = solve_baseline(&spec.build(&p), 2).unwrap();
    assert!(!b.energy.unwrap().is_rational());
}

#[test]
fn sweep_energy_is_polynomial() {
    for spec in all_specs() {
        let sys = sweep_system(&spec, 2).unwrap();
        assert!(sys.energy.is_polynomial(), "{:?}", spec.kind);
        for c in &sys.constraints {
            assert!(c.raw.mul(&RatFunc::from_poly(c.clearing_factor.clone())).is_polynomial());
        }
    }
}

#[test]
fn every_model_has_certified_points() {
    for spec in all_specs() {
        for n in 1..4 {
            let (lo, hi) = spec.default_domain();
            let set = juddian_points(&spec, n, &lo, &hi).unwrap();
            assert!(set.certified, "{:?} n={n}", spec.kind);
            eprintln!("{:?} {:?} n={n}: {} points, defining degree {:?}", spec.kind, spec.branch, set.points.len(), set.defining.degree());
            for p in &set.points {
                assert!(p.residual_rel < 1e-20, "{:?} n={n} residual {}", spec.kind, p.residual_rel);
            }
        }
    }
}

#[test]
fn invalid_specs_rejected() {
    let bad = ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(1, 2)).with_q(q(1, 2));
    assert!(bad.validate().is_err());
    let bad = ModelSpec::new(ModelKind::TwoPhoton, qi(1), q(1, 2)).with_g(q(1, 2));
    assert!(bad.validate().is_err());
    let bad = ModelSpec::new(ModelKind::GeneralizedRabi, qi(1), q(1, 2)).with_couplings(qi(1), qi(1));
    assert!(bad.validate().is_err());
    let bad = ModelSpec::new(ModelKind::Rabi, qi(0), q(1, 2));
    assert!(bad.validate().is_err());
}

#[test]
fn appendix_forms_share_rabi_points() {
    let base = rabi_like(ModelKind::Rabi);
    let (lo, hi) = base.default_domain();
    for n in 1..=5 {
        let rabi: Vec<f64> = juddian_points(&base, n, &lo, &hi).unwrap().points.iter().map(|p| p.coupling).collect();
        for kind in [ModelKind::SchweberForm, ModelKind::KocForm] {
            let other: Vec<f64> = juddian_points(&rabi_like(kind), n, &lo, &hi).unwrap().points.iter().map(|p| p.coupling).collect();
            assert_eq!(rabi.len(), other.len(), "{kind:?} n={n}");
            for (a, b) in rabi.iter().zip(&other) {
                assert!((a - b).abs() <= 1e-9 * a.abs(), "{kind:?} n={n}: {a} vs {b}");
            }
        }
    }
}
