//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use argcl_core::expressibility::{express, verify_expresses, GadgetTarget};
use argcl_core::reductions::sweep::sweep;
use argcl_core::reductions::ReductionKind;
use argcl_core::relations::catalog;
use argcl_core::{
    classify_complexity, ComplexityClass, Constraint, ConstraintLanguage, Engine, GammaFormula,
    Limits, Relation, Solver, Var,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(pass: bool, elapsed: Duration, limit: Duration, detail: String) -> Outcome {
    let in_time = elapsed < limit;
    outcome(
        pass && in_time,
        format!("{detail}; {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()),
    )
}

fn solver(lang: &ConstraintLanguage, engine: Engine) -> Solver {
    Solver::new(lang.clone(), engine, Limits::default())
}

fn criterion_1_classification() -> Outcome {
    use ComplexityClass::*;
    let start = Instant::now();
    let single = |r: Relation| classify_complexity(&language([r]));
    let checks: Vec<(&str, ComplexityClass, ComplexityClass)> = vec![
        ("OR2 argrel", single(catalog::or2()).argrel, P),
        ("OR2_EQ argrel", single(catalog::or2_with_copy()).argrel, NpComplete),
        ("NEQ arg", single(catalog::neq()).arg, NpComplete),
        ("NEQ argcheck", single(catalog::neq()).argcheck, P),
        ("IMPL arg", single(catalog::implies()).arg, P),
        ("IMPL argrel", single(catalog::implies()).argrel, NpComplete),
        ("NAE3 arg", single(catalog::nae3()).arg, SigmaP2Complete),
        ("NAE3 argcheck", single(catalog::nae3()).argcheck, DpComplete),
        ("NAE3 argrel", single(catalog::nae3()).argrel, SigmaP2Complete),
        ("ONE_IN_THREE arg", single(catalog::one_in_three()).arg, SigmaP2Complete),
        ("ONE_IN_THREE argcheck", single(catalog::one_in_three()).argcheck, DpComplete),
        ("ONE_IN_THREE argrel", single(catalog::one_in_three()).argrel, SigmaP2Complete),
    ];
    let wrong: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name}: got {got}, want {want}"))
        .collect();
    let detail = if wrong.is_empty() {
        format!("{} classifications match", checks.len())
    } else {
        wrong.join("; ")
    };
    within(wrong.is_empty(), start.elapsed(), Duration::from_secs(1), detail)
}

fn criterion_2_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut g = ChaCha8Rng::seed_from_u64(2);
    let instances = 1000;
    let mut mismatches = 0;
    let mut yes = 0;
    for _ in 0..instances {
        let lang = random_language(&mut g, 2, 3);
        let inst = random_instance(&mut g, lang, 6, 6);
        let auto = solver(&inst.lang, Engine::Auto);
        let generic = solver(&inst.lang, Engine::Generic);
        let a = auto.arg_exists(&inst.delta, &inst.alpha).unwrap();
        yes += usize::from(a);
        mismatches += usize::from(a != generic.arg_exists(&inst.delta, &inst.alpha).unwrap());
        let mask: u32 = g.gen_range(0..1u32 << inst.delta.len());
        let phi: Vec<&GammaFormula> = (0..inst.delta.len())
            .filter(|i| (mask >> i) & 1 == 1)
            .map(|i| &inst.delta[i])
            .collect();
        mismatches += usize::from(
            auto.argcheck(&phi, &inst.alpha).unwrap() != generic.argcheck(&phi, &inst.alpha).unwrap(),
        );
        for psi in 0..inst.delta.len() {
            mismatches += usize::from(
                auto.argrel(&inst.delta, &inst.alpha, psi).unwrap()
                    != generic.argrel(&inst.delta, &inst.alpha, psi).unwrap(),
            );
        }
    }
    within(
        mismatches == 0,
        start.elapsed(),
        Duration::from_secs(60),
        format!("{instances} instances ({yes} with an argument), {mismatches} mismatches"),
    )
}

/// A positive instance with 40 formulas over 30 variables; the last formula
/// `T(v0)` is the queried one and the claim mentions `v0`.
fn large_positive_instance() -> (Vec<GammaFormula>, GammaFormula) {
    let mut g = ChaCha8Rng::seed_from_u64(33);
    let lang = positive_language();
    let pool = var_pool(30);
    let mut delta: Vec<GammaFormula> =
        (0..39).map(|_| random_formula(&mut g, &lang, &pool[1..], 2)).collect();
    let t = Arc::new(catalog::t());
    delta.push(GammaFormula::single(Constraint::new(t, vec![pool[0].clone()]).unwrap()));
    let or2 = Arc::new(catalog::or2());
    let alpha = GammaFormula::new(vec![
        Constraint::new(or2.clone(), vec![pool[0].clone(), pool[29].clone()]).unwrap(),
        Constraint::new(or2, vec![pool[0].clone(), Var::new("fresh")]).unwrap(),
    ])
    .unwrap();
    (delta, alpha)
}

fn criterion_3_positive_relevance() -> Outcome {
    let start = Instant::now();
    let mut g = ChaCha8Rng::seed_from_u64(3);
    let lang = positive_language();
    let auto = solver(&lang, Engine::Auto);
    let instances = 500;
    let (mut mismatches, mut queries, mut relevant) = (0, 0, 0);
    for _ in 0..instances {
        let inst = random_instance(&mut g, lang.clone(), 6, 6);
        let supports = naive_supports(&inst.delta, &inst.alpha);
        for psi in 0..inst.delta.len() {
            let expected = supports.iter().any(|m| (m >> psi) & 1 == 1);
            let got = auto.argrel_positive(&inst.delta, &inst.alpha, psi).unwrap();
            queries += 1;
            relevant += usize::from(expected);
            mismatches += usize::from(got != expected);
        }
    }
    let small = start.elapsed();

    let (delta, alpha) = large_positive_instance();
    let t = Instant::now();
    let answer = auto.argrel(&delta, &alpha, delta.len() - 1);
    let large = t.elapsed();
    let generic = solver(&lang, Engine::Generic).argrel(&delta, &alpha, delta.len() - 1);
    let refused = matches!(&generic, Err(e) if e.is_budget());
    let pass = mismatches == 0 && answer == Ok(true) && large < Duration::from_secs(1) && refused;
    outcome(
        pass,
        format!(
            "{instances} instances, {queries} queries ({relevant} relevant), {mismatches} mismatches in {:.2}s; \
             |Δ|=40 over 30 variables answered {:?} in {:.3}s (limit 1s), exhaustive search {}",
            small.as_secs_f64(),
            answer,
            large.as_secs_f64(),
            if refused { "refused by budget" } else { "did not refuse" },
        ),
    )
}

fn criterion_4_gadgets() -> Outcome {
    let start = Instant::now();
    let (mut relations, mut built, mut failures) = (0, 0, Vec::new());
    for k in 1..=3usize {
        let size = 1u32 << k;
        for mask in 1u64..(1u64 << size) - 1 {
            let r = Relation::from_fn(format!("R{k}_{mask}"), k, |t| (mask >> t) & 1 == 1).unwrap();
            relations += 1;
            let lang = language([r]);
            let p = lang.properties();
            for target in GadgetTarget::ALL.into_iter().filter(|t| t.applies_to(&p)) {
                let ok = express(target, &lang)
                    .and_then(|e| verify_expresses(&e.formula, &target.reference(), &Limits::default()))
                    .unwrap_or(false);
                built += 1;
                if !ok {
                    failures.push(format!("{target} over R{k}_{mask}"));
                }
            }
        }
    }
    within(
        failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(120),
        format!(
            "{relations} relations, {built} gadgets, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn criterion_5_sweep() -> Outcome {
    let start = Instant::now();
    let (mut cases, mut mismatches, mut errors) = (0, 0, Vec::new());
    for kind in ReductionKind::ALL {
        match sweep(kind, Engine::Auto, Limits::default()) {
            Ok(r) => {
                cases += r.cases;
                mismatches += r.mismatches.len();
            }
            Err(e) => errors.push(format!("{kind}: {e}")),
        }
    }
    within(
        mismatches == 0 && errors.is_empty(),
        start.elapsed(),
        Duration::from_secs(120),
        format!(
            "{} kinds, {cases} source instances, {mismatches} mismatches, {} errors{}",
            ReductionKind::ALL.len(),
            errors.len(),
            errors.first().map(|e| format!(" (first: {e})")).unwrap_or_default()
        ),
    )
}

fn criterion_6_eps_valid() -> Outcome {
    let mut g = ChaCha8Rng::seed_from_u64(6);
    let instances = 200;
    let (mut mismatches, mut yes) = (0, 0);
    for i in 0..instances {
        let zero = i % 2 == 0;
        let n = g.gen_range(1..=2);
        let lang = language((0..n).map(|j| loop {
            let k = g.gen_range(1..=3);
            let r = random_relation(&mut g, &format!("R{j}"), k);
            if r.contains(if zero { 0 } else { r.full_tuple() }) {
                break r;
            }
        }));
        assert!(lang.properties().eps_valid);
        let inst = random_instance(&mut g, lang, 6, 6);
        let got = solver(&inst.lang, Engine::Auto).arg_exists(&inst.delta, &inst.alpha).unwrap();
        let phi: Vec<&GammaFormula> = inst.delta.iter().collect();
        let entailed = naive_entails(&phi, &inst.alpha);
        yes += usize::from(entailed);
        mismatches += usize::from(got != entailed);
    }
    outcome(
        mismatches == 0,
        format!("{instances} instances ({yes} entailed), {mismatches} mismatches"),
    )
}

fn criterion_7_observation_one() -> Outcome {
    let mut g = ChaCha8Rng::seed_from_u64(7);
    let lang = positive_language();
    let auto = solver(&lang, Engine::Auto);
    let pool = var_pool(5);
    let triples = 500;
    let (mut applicable, mut violations) = (0, 0);
    for _ in 0..triples {
        let a = random_formula(&mut g, &lang, &pool, 3);
        let b = random_formula(&mut g, &lang, &pool, 3);
        let width = g.gen_range(1..=3);
        let rel = Arc::new(match width {
            1 => catalog::t(),
            2 => catalog::or2(),
            _ => catalog::or3(),
        });
        let args = (0..width).map(|_| pool[g.gen_range(0..pool.len())].clone()).collect();
        let gamma = GammaFormula::single(Constraint::new(rel, args).unwrap());
        if !naive_entails(&[&a], &gamma) && !naive_entails(&[&b], &gamma) {
            applicable += 1;
            let both = auto.entails([&a, &b], &gamma).unwrap();
            violations += usize::from(both || naive_entails(&[&a, &b], &gamma));
        }
    }
    outcome(
        violations == 0,
        format!("{triples} triples ({applicable} with neither entailing), {violations} violations"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 classification catalog", criterion_1_classification),
        ("2 oracle equivalence", criterion_2_oracle_equivalence),
        ("3 positive relevance", criterion_3_positive_relevance),
        ("4 gadget verification", criterion_4_gadgets),
        ("5 reduction soundness sweep", criterion_5_sweep),
        ("6 eps-valid shortcut", criterion_6_eps_valid),
        ("7 positive clause splitting", criterion_7_observation_one),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        failed += usize::from(!o.pass);
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
