//! Acceptance suite: one criterion per stage, run sequentially so the timing
//! budgets are honest. Prints one PASS/FAIL line per criterion; the test
//! fails if any criterion fails.
//!
//! Run with `cargo test -p axtight-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axtight_cli::commands::{self, Context, Overrides};
use axtight_cli::corpus;
use axtight_cli::problem::parse_problem;
use axtight_core::axes::{
    axes_closure_test, canonicalize, is_axes_presentation, valuative_membership, AxesDecision,
    AxesRing, ValuativeOutcome,
};
use axtight_core::field::FieldSpec;
use axtight_core::frobenius::{
    bracket_power, frobenius_power_of_element, special_tight_membership, tight_membership,
    PrimePower, SpecialTightQuery, TightParams, TightVerdict,
};
use axtight_core::parse;
use axtight_core::poly::Ambient;
use axtight_core::reduction::{clear_denominators, fiber_sweep, SweepAggregate};
use axtight_core::ring::RingPresentation;
use axtight_core::{GroebnerConfig, Ideal, MonomialOrder, Polynomial};
use axtight_testkit::{random_nonzero_poly, random_poly, span_membership};
use rand::rngs::StdRng;
use rand::SeedableRng;

struct Criterion {
    number: usize,
    description: &'static str,
    budget: Option<Duration>,
}

struct Outcome {
    line: String,
    passed: bool,
}

fn check(
    criterion: Criterion,
    body: impl FnOnce() -> Result<String, String> + std::panic::UnwindSafe,
) -> Outcome {
    let start = Instant::now();
    let result = std::panic::catch_unwind(body);
    let elapsed = start.elapsed();
    let (passed, note) = match result {
        Ok(Ok(note)) => {
            let in_budget = criterion
                .budget
                .map(|b| elapsed <= b)
                .unwrap_or(true);
            if in_budget {
                (true, note)
            } else {
                (
                    false,
                    format!("over time budget {:?}: {note}", criterion.budget.unwrap()),
                )
            }
        }
        Ok(Err(message)) => (false, message),
        Err(payload) => {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, message)
        }
    };
    let line = format!(
        "criterion {:2} {}: {} ({:.2}s) {}",
        criterion.number,
        if passed { "PASS" } else { "FAIL" },
        criterion.description,
        elapsed.as_secs_f64(),
        note,
    );
    Outcome { line, passed }
}

fn ambient(vars: &[&str], field: FieldSpec) -> Arc<Ambient> {
    Ambient::new(vars.iter().map(|s| s.to_string()).collect(), field)
}

fn poly(src: &str, a: &Arc<Ambient>) -> Polynomial {
    parse::polynomial(src, a).unwrap()
}

fn quotient(a: &Arc<Ambient>, relations: &[&str], cfg: &GroebnerConfig) -> RingPresentation {
    let gens = relations.iter().map(|r| poly(r, a)).collect();
    RingPresentation::new(a, Ideal::new(a, gens).unwrap(), cfg).unwrap()
}

/// Oracle comparison with an adaptive span cap: a Gröbner "member" answer is
/// re-checked at the degree implied by its own witness before it may count
/// as a disagreement.
fn oracle_agrees(
    ring: &RingPresentation,
    gens_with_relations: &[Polynomial],
    ideal: &Ideal,
    f: &Polynomial,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> bool {
    let groebner_says = ring.ideal_membership(f, ideal, order, cfg).unwrap();
    let base_cap = f.total_degree().unwrap_or(0).max(6) + 4;
    let oracle_says = span_membership(f, gens_with_relations, base_cap);
    if groebner_says == oracle_says {
        return true;
    }
    if groebner_says && !oracle_says {
        let witnessed = ring
            .ideal_membership_witnessed(f, ideal, order, cfg)
            .unwrap();
        let witness_cap = witnessed
            .witness
            .unwrap()
            .iter()
            .zip(ideal.gens())
            .filter_map(|(w, g)| Some(w.total_degree()? + g.total_degree().unwrap_or(0)))
            .max()
            .unwrap_or(0)
            .max(base_cap);
        return span_membership(f, gens_with_relations, witness_cap);
    }
    false
}

fn criterion_1() -> Result<String, String> {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let mut rng = StdRng::seed_from_u64(101);
    let mut instances = 0usize;
    for field in [
        FieldSpec::prime(5).unwrap(),
        FieldSpec::prime(7).unwrap(),
        FieldSpec::Rationals,
    ] {
        let a = ambient(&["X", "Y", "Z"], field);
        for round in 0..70 {
            // half the instances run in a quotient ring
            let relations: Vec<Polynomial> = if round % 2 == 0 {
                vec![]
            } else {
                vec![random_nonzero_poly(&mut rng, &a, 3, 2)]
            };
            let ring = if relations.is_empty() {
                RingPresentation::polynomial_ring(&a)
            } else {
                match RingPresentation::new(
                    &a,
                    Ideal::new(&a, relations.clone()).unwrap(),
                    &cfg,
                ) {
                    Ok(r) => r,
                    Err(_) => RingPresentation::polynomial_ring(&a), // constant relation
                }
            };
            let g1 = random_nonzero_poly(&mut rng, &a, 3, 3);
            let g2 = random_nonzero_poly(&mut rng, &a, 2, 2);
            let ideal = Ideal::new(&a, vec![g1.clone(), g2.clone()]).unwrap();
            let f = if round % 3 == 0 {
                let h = random_poly(&mut rng, &a, 2, 2);
                h.mul(&g1).unwrap()
            } else {
                random_poly(&mut rng, &a, 4, 3)
            };
            let mut span_gens = vec![g1.clone(), g2.clone()];
            span_gens.extend(ring.relations().gens().iter().cloned());
            if !oracle_agrees(&ring, &span_gens, &ideal, &f, &order, &cfg) {
                return Err(format!("oracle disagreement on f={f}, I=({g1}, {g2})"));
            }
            instances += 1;
        }
    }
    Ok(format!("{instances} instances, 0 disagreements"))
}

fn criterion_2() -> Result<String, String> {
    let order = MonomialOrder::default();
    let cfg = GroebnerConfig::default();
    let mut rng = StdRng::seed_from_u64(202);
    // additivity of the Frobenius power
    let mut additive = 0usize;
    for (p, e) in [(5u64, 2u32), (7, 1), (3, 3)] {
        let a = ambient(&["X", "Y", "Z"], FieldSpec::prime(p).unwrap());
        let q = PrimePower::new(p, e).unwrap();
        for _ in 0..34 {
            let f = random_poly(&mut rng, &a, 3, 3);
            let g = random_poly(&mut rng, &a, 3, 3);
            let lhs = frobenius_power_of_element(&f.add(&g).unwrap(), q).unwrap();
            let rhs = frobenius_power_of_element(&f, q)
                .unwrap()
                .add(&frobenius_power_of_element(&g, q).unwrap())
                .unwrap();
            if lhs != rhs {
                return Err(format!("additivity failed at p={p}, e={e}"));
            }
            additive += 1;
        }
    }
    // generating-set independence of bracket powers
    let mut independent = 0usize;
    let a = ambient(&["X", "Y"], FieldSpec::prime(5).unwrap());
    let q = PrimePower::new(5, 1).unwrap();
    for _ in 0..100 {
        let g1 = random_nonzero_poly(&mut rng, &a, 2, 2);
        let g2 = random_nonzero_poly(&mut rng, &a, 2, 2);
        let h = random_poly(&mut rng, &a, 1, 2);
        let first = Ideal::new(&a, vec![g1.clone(), g2.clone()]).unwrap();
        let second = Ideal::new(
            &a,
            vec![g1.add(&h.mul(&g2).unwrap()).unwrap(), g2.clone(), g1.clone()],
        )
        .unwrap();
        let b1 = bracket_power(&first, q).unwrap();
        let b2 = bracket_power(&second, q).unwrap();
        if !b1.equals(&b2, &order, &cfg).unwrap() {
            return Err("bracket power depended on the generating set".into());
        }
        independent += 1;
    }
    Ok(format!(
        "{additive} additivity + {independent} independence instances"
    ))
}

fn criterion_3() -> Result<String, String> {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    for p in [5u64, 7] {
        let per_prime = Instant::now();
        let problem_text = if p == 5 {
            include_str!("../problems/intro_cusp_f5.prob")
        } else {
            include_str!("../problems/intro_cusp_f7.prob")
        };
        let ctx = Context::new(
            parse_problem(problem_text).unwrap(),
            &Overrides::default(),
        )
        .unwrap();
        let ring = ctx.ring().unwrap();
        let ideal = ctx.ideal("I").unwrap();
        let f = ctx.element("f").unwrap();
        // oracle: direct membership of X^(q+1) in (Z^q) for e = 1..4
        for e in 1..=4u32 {
            let q = PrimePower::new(p, e).unwrap();
            let bracket = bracket_power(&ideal, q).unwrap();
            if !ring
                .ideal_membership(&f.pow(q.q + 1), &bracket, &order, &cfg)
                .unwrap()
            {
                return Err(format!("oracle membership failed at p={p}, e={e}"));
            }
        }
        let report = commands::cmd_tight(&ctx, "I", "f").map_err(|e| e.to_string())?;
        if report.verdict != "BoundedCertified(c=X, e=1..4)" {
            return Err(format!("p={p}: unexpected tight verdict {}", report.verdict));
        }
        let report = commands::cmd_axes_test(&ctx, "I", "f", None).map_err(|e| e.to_string())?;
        if report.verdict != "Refuted(hom=two_lines)" {
            return Err(format!("p={p}: unexpected axes verdict {}", report.verdict));
        }
        if per_prime.elapsed() > Duration::from_secs(10) {
            return Err(format!("p={p} exceeded its 10 s budget"));
        }
    }
    Ok("certified with c=X and axes-refuted over F_5 and F_7".into())
}

fn criterion_4() -> Result<String, String> {
    let ctx = Context::new(
        parse_problem(include_str!("../problems/fermat_f7.prob")).unwrap(),
        &Overrides::default(),
    )
    .unwrap();
    let report = commands::cmd_tight(&ctx, "I", "z2").map_err(|e| e.to_string())?;
    // frozen regression snapshot of the certificate found by the search
    if report.verdict != "BoundedCertified(c=X, e=1..3)" {
        return Err(format!("unexpected Z^2 verdict {}", report.verdict));
    }
    // replay the certificate from scratch
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let ring = ctx.ring().unwrap();
    let ideal = ctx.ideal("I").unwrap();
    let f = ctx.element("z2").unwrap();
    let verdict =
        tight_membership(&ring, &ideal, &f, &ctx.tight_params(), &order, &cfg).unwrap();
    match verdict {
        TightVerdict::BoundedCertified(cert) => {
            if !cert.replay(&ring, &ideal, &f, &order, &cfg).unwrap() {
                return Err("certificate failed to replay".into());
            }
        }
        other => return Err(format!("expected a certificate, got {other:?}")),
    }
    let report = commands::cmd_axes_test(&ctx, "I", "z", None).map_err(|e| e.to_string())?;
    if report.verdict != "Refuted(hom=xi)" {
        return Err(format!("unexpected axes verdict {}", report.verdict));
    }
    let report = commands::cmd_tight(&ctx, "I", "z").map_err(|e| e.to_string())?;
    if report.verdict != "InconclusiveNegative(e_max=3, c_deg=4, candidates=35)" {
        return Err(format!("unexpected Z verdict {}", report.verdict));
    }
    Ok("Z^2 certified (c=X), Z refuted from axes closure, Z search inconclusive".into())
}

fn criterion_5() -> Result<String, String> {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let mut rng = StdRng::seed_from_u64(505);
    let mut counts = [0usize; 3];
    for round in 0..520 {
        let n = 2 + (round % 2);
        let vars: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
        let ring = AxesRing::new(FieldSpec::prime(5).unwrap(), vars).unwrap();
        let a = ring.ambient().clone();
        let n_gens = 1 + (round % 2);
        let gens: Vec<_> = (0..n_gens)
            .map(|_| canonicalize(&random_nonzero_poly(&mut rng, &a, 5, 4), &ring).unwrap())
            .collect();
        let f = canonicalize(&random_poly(&mut rng, &a, 5, 4), &ring).unwrap();
        let outcome = valuative_membership(&f, &gens, &ring, &order, &cfg).unwrap();
        let presentation = ring.presentation(&cfg).unwrap();
        let ideal = Ideal::new(
            ring.ambient(),
            gens.iter().map(|g| g.to_polynomial(&ring)).collect(),
        )
        .unwrap();
        let exact = presentation
            .ideal_membership(&f.to_polynomial(&ring), &ideal, &order, &cfg)
            .unwrap();
        match &outcome {
            ValuativeOutcome::MemberWithWitness { cofactors } => {
                counts[0] += 1;
                if !exact {
                    return Err("witness issued for a non-member".into());
                }
                let mut recomposed = canonicalize(&Polynomial::zero(&a), &ring).unwrap();
                for (g, u) in gens.iter().zip(cofactors) {
                    recomposed = recomposed.add(&g.mul(u, &ring), &ring);
                }
                if recomposed != f {
                    return Err("witness did not recompose".into());
                }
            }
            ValuativeOutcome::NonMemberAtBranch { .. } => {
                counts[1] += 1;
                if exact {
                    return Err("branch refutation of an exact member".into());
                }
            }
            ValuativeOutcome::BoundaryFallback { member, .. } => {
                counts[2] += 1;
                if *member != exact {
                    return Err("fallback disagreed with exact membership".into());
                }
            }
        }
    }
    if counts.iter().any(|&c| c == 0) {
        return Err(format!("an outcome kind never occurred: {counts:?}"));
    }
    Ok(format!(
        "520 instances: {} witnesses, {} branch refusals, {} fallbacks",
        counts[0], counts[1], counts[2]
    ))
}

fn criterion_6() -> Result<String, String> {
    let order = MonomialOrder::default();
    let mut triples = 0usize;
    for case in corpus::cases() {
        let corpus::Invocation::Tight { ideal, element } = &case.invocation else {
            continue;
        };
        if !case.ring_is_normal {
            continue;
        }
        let ctx = Context::new(
            parse_problem(case.file).unwrap(),
            &Overrides::default(),
        )
        .map_err(|e| e.to_string())?;
        let ring = ctx.ring().map_err(|e| e.to_string())?;
        let ideal_obj = ctx.ideal(ideal).map_err(|e| e.to_string())?;
        let f = ctx.element(element).map_err(|e| e.to_string())?;
        let verdict = tight_membership(
            &ring,
            &ideal_obj,
            &f,
            &ctx.tight_params(),
            &order,
            &ctx.cfg,
        )
        .map_err(|e| e.to_string())?;
        if !verdict.is_membership() {
            continue;
        }
        // every validated corpus hom out of this ring must keep the image in
        // the extended ideal
        let hom_names: Vec<String> = ctx
            .problem
            .homs
            .iter()
            .map(|(n, _)| n.clone())
            .collect();
        for name in hom_names {
            let test = ctx.axes_test_hom(&name).map_err(|e| e.to_string())?;
            let report = axes_closure_test(&ring, &ideal_obj, &f, &[test], &order, &ctx.cfg)
                .map_err(|e| e.to_string())?;
            if !report.per_hom[0].member {
                return Err(format!(
                    "case {}: image of {element} left the extended ideal through hom {name}",
                    case.id
                ));
            }
            triples += 1;
        }
    }
    if triples == 0 {
        return Err("no membership-kind triples with homs found".into());
    }
    Ok(format!("{triples} (ring, ideal, element) x hom checks held"))
}

fn criterion_7() -> Result<String, String> {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    for field in [
        FieldSpec::prime(5).unwrap(),
        FieldSpec::prime(7).unwrap(),
        FieldSpec::Rationals,
    ] {
        let a = ambient(&["X", "Y"], field.clone());
        let ring = RingPresentation::polynomial_ring(&a);
        let ideal = Ideal::new(&a, vec![poly("X^3", &a), poly("Y^3", &a)]).unwrap();
        let f = poly("X^2*Y^2", &a);
        let verdict = tight_membership(&ring, &ideal, &f, &TightParams::default(), &order, &cfg)
            .map_err(|e| e.to_string())?;
        if !matches!(verdict, TightVerdict::ExactNonMember) {
            return Err(format!("expected ExactNonMember over {field:?}"));
        }
    }
    Ok("X^2*Y^2 outside (X^3, Y^3)* exactly over F_5, F_7, Q".into())
}

fn criterion_8() -> Result<String, String> {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let a = ambient(&["X", "Z"], FieldSpec::prime(7).unwrap());
    let ring = quotient(&a, &["X^3 - Z^3"], &cfg);
    match is_axes_presentation(&ring, None, &order, &cfg).unwrap() {
        AxesDecision::Rejected { .. } => {}
        AxesDecision::Accepted { .. } => {
            return Err("three concurrent lines were accepted as axes".into())
        }
    }
    let ideal = Ideal::new(&a, vec![poly("X", &a)]).unwrap();
    if ring
        .ideal_membership(&poly("Z^2", &a), &ideal, &order, &cfg)
        .unwrap()
    {
        return Err("Z^2 claimed inside (X)".into());
    }
    Ok("rejected as axes ring; Z^2 outside (X) exactly".into())
}

fn criterion_9() -> Result<String, String> {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let a = ambient(&["X", "Y"], FieldSpec::prime(5).unwrap());
    let ring = RingPresentation::polynomial_ring(&a);
    let ideal = Ideal::new(&a, vec![poly("X", &a)]).unwrap();
    let maximal = Ideal::new(&a, vec![poly("X", &a), poly("Y", &a)]).unwrap();
    let query = SpecialTightQuery {
        maximal_ideal: maximal,
        q0_e_max: 1,
        inner: TightParams::default(),
    };
    let verdict =
        special_tight_membership(&ring, &query, &ideal, &poly("X*Y", &a), &order, &cfg)
            .map_err(|e| e.to_string())?;
    if verdict.q0.map(|q| q.q) != Some(1) {
        return Err(format!("expected success at q0 = 1, got {:?}", verdict.q0));
    }
    if !matches!(verdict.verdict, TightVerdict::ExactMember) {
        return Err("expected the exact regular fast path".into());
    }
    Ok("X*Y enters m*(X) exactly at q0 = 1".into())
}

fn criterion_10() -> Result<String, String> {
    let order = MonomialOrder::default();
    let cfg = GroebnerConfig::default();
    let a = ambient(&["X", "Y", "Z"], FieldSpec::Rationals);
    let model = clear_denominators(
        &[poly("X^3 + Y^3 + Z^3", &a)],
        &[poly("X", &a), poly("Y", &a)],
        &poly("Z^2", &a),
        &order,
    )
    .unwrap();
    let params = TightParams {
        e_max: 1,
        c_degree: 2,
        ..TightParams::default()
    };
    let report = fiber_sweep(&model, &[7, 13, 31], &params, &order, &cfg)
        .map_err(|e| e.to_string())?;
    if report.aggregate != SweepAggregate::CertifiedInAllLuckyFibers {
        return Err(format!("Fermat sweep aggregated {:?}", report.aggregate));
    }
    let b = ambient(&["X", "Y"], FieldSpec::Rationals);
    let model = clear_denominators(
        &[],
        &[poly("X^3", &b), poly("Y^3", &b)],
        &poly("X^2*Y^2", &b),
        &order,
    )
    .unwrap();
    let report = fiber_sweep(&model, &[5, 7, 11], &TightParams::default(), &order, &cfg)
        .map_err(|e| e.to_string())?;
    if report.aggregate != SweepAggregate::ExactNegative {
        return Err(format!("regular sweep aggregated {:?}", report.aggregate));
    }
    Ok("Fermat certified in all lucky fibers; regular control exactly negative".into())
}

fn criterion_11() -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_axtight"))
            .arg("corpus")
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    if !first.status.success() || !second.status.success() {
        return Err("corpus run failed".into());
    }
    if first.stdout != second.stdout {
        return Err("corpus reports differ between runs".into());
    }
    let text = String::from_utf8_lossy(&first.stdout);
    let last = text.lines().last().unwrap_or("");
    if !last.starts_with("corpus:") || !last.contains("passed") {
        return Err(format!("unexpected corpus footer: {last}"));
    }
    let all_pass = text
        .lines()
        .filter(|l| l.starts_with("CASE"))
        .all(|l| l.ends_with("PASS"));
    if !all_pass {
        return Err("a corpus case failed".into());
    }
    Ok(format!("byte-identical runs; {last}"))
}

#[test]
fn acceptance() {
    let outcomes = vec![
        check(
            Criterion {
                number: 1,
                description: "membership agrees with the span oracle",
                budget: Some(Duration::from_secs(60)),
            },
            || criterion_1(),
        ),
        check(
            Criterion {
                number: 2,
                description: "Frobenius additivity and bracket-power invariance",
                budget: Some(Duration::from_secs(30)),
            },
            || criterion_2(),
        ),
        check(
            Criterion {
                number: 3,
                description: "nonnormal counterexample: certified tight, refuted axes",
                budget: Some(Duration::from_secs(20)),
            },
            || criterion_3(),
        ),
        check(
            Criterion {
                number: 4,
                description: "Fermat cubic: Z^2 certified, Z refuted",
                budget: Some(Duration::from_secs(60)),
            },
            || criterion_4(),
        ),
        check(
            Criterion {
                number: 5,
                description: "valuative criterion agrees with exact membership",
                budget: Some(Duration::from_secs(60)),
            },
            || criterion_5(),
        ),
        check(
            Criterion {
                number: 6,
                description: "certified tight members stay inside extended ideals",
                budget: None,
            },
            || criterion_6(),
        ),
        check(
            Criterion {
                number: 7,
                description: "regular-ring negative control",
                budget: Some(Duration::from_secs(5)),
            },
            || criterion_7(),
        ),
        check(
            Criterion {
                number: 8,
                description: "non-transversal lines rejected",
                budget: Some(Duration::from_secs(5)),
            },
            || criterion_8(),
        ),
        check(
            Criterion {
                number: 9,
                description: "special tight closure at q0 = 1",
                budget: Some(Duration::from_secs(5)),
            },
            || criterion_9(),
        ),
        check(
            Criterion {
                number: 10,
                description: "reduction sweeps aggregate correctly",
                budget: Some(Duration::from_secs(120)),
            },
            || criterion_10(),
        ),
        check(
            Criterion {
                number: 11,
                description: "corpus determinism",
                budget: None,
            },
            || criterion_11(),
        ),
    ];
    let mut failed = Vec::new();
    for outcome in &outcomes {
        println!("{}", outcome.line);
        if !outcome.passed {
            failed.push(outcome.line.clone());
        }
    }
    assert!(
        failed.is_empty(),
        "failing criteria:\n{}",
        failed.join("\n")
    );
}
