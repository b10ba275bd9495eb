//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every criterion reports even when an
//! earlier one fails. Exits nonzero if any criterion fails.

mod readme;
#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use lps_core::classical::{
    classical_eval, classical_satisfies, consistency_schema, find_classical_model,
    schema_forces_consistency, translate_to_classical,
};
use lps_core::definability::{
    closure, default_atoms, fixed_points, function_of, synthesize, ConnectiveBasis, TruthFunction,
};
use lps_core::fo::{
    entails_bounded, enumerate_models, true_fo, Assignment, BoundedVerdict, Model, ModelBudget,
};
use lps_core::prop::{entails_prop, is_tautology};
use lps_core::syntax::{parse_formula, parse_formula_inferring, Formula, Term};
use lps_core::{Entailment, Signature, StatusOp, Tautology, TruthValue};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use support::{all_maps, arb_classical, arb_fo, next_layer, oracle_classical, oracle_prop};

const CLOSURE_LIMIT: Duration = Duration::from_secs(1);
const COMPLETENESS_LIMIT: Duration = Duration::from_secs(60);
const RECOVERY_LIMIT: Duration = Duration::from_secs(120);

/// Columns of the published table of LP-definable unary functions, each
/// written as the values at `T`, `P`, `F`.
const PUBLISHED_LP_UNARY: [&str; 10] = [
    "TPF", "TPT", "FPT", "FPF", "PPF", "FPP", "TTT", "PPP", "FFF", "PPT",
];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn lps(args: &[&str]) -> lps_cli::CommandResult {
    std::env::set_current_dir(readme::workspace_root()).unwrap();
    lps_cli::run(std::iter::once("lps").chain(args.iter().copied()))
}

fn parse(text: &str) -> Formula {
    parse_formula_inferring(text, &mut Signature::new()).unwrap()
}

fn runner(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config::default(),
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn sample<S: Strategy>(strategy: &S, n: usize, seed: u8) -> Vec<S::Value> {
    let mut r = runner(seed);
    (0..n)
        .map(|_| strategy.new_tree(&mut r).unwrap().current())
        .collect()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let r = lps(&["closure", "--basis", "lp", "--arity", "1"]);
    let elapsed = start.elapsed();
    let got: BTreeSet<String> = r
        .stdout
        .lines()
        .map(|l| l.split_whitespace().next().unwrap_or("").to_string())
        .collect();
    let published: BTreeSet<String> = PUBLISHED_LP_UNARY.iter().map(|s| s.to_string()).collect();
    let extra: Vec<&String> = got.difference(&published).collect();
    let missing: Vec<&String> = published.difference(&got).collect();
    let detail = format!(
        "{} lines, {} published columns, extra {:?}, missing {:?}, {:.3}s",
        r.stdout.lines().count(),
        published.len(),
        extra,
        missing,
        elapsed.as_secs_f64()
    );
    if r.exit_code == 0
        && r.stdout.lines().count() == 10
        && got == published
        && elapsed < CLOSURE_LIMIT
    {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let lps_basis = ConnectiveBasis::lps();
    let unary = closure(&lps_basis, 1).map_err(|e| e.to_string())?;
    let binary = closure(&lps_basis, 2).map_err(|e| e.to_string())?;
    if unary.members.len() != 27 || !unary.is_complete() {
        return Err(format!("unary closure has {} members", unary.members.len()));
    }
    if binary.members.len() != 19683 || !binary.is_complete() {
        return Err(format!(
            "binary closure has {} members",
            binary.members.len()
        ));
    }
    let mut round_trips = 0;
    for (arity, c) in [(1, &unary), (2, &binary)] {
        for f in c.functions() {
            let back =
                function_of(&synthesize(f), &default_atoms(arity)).map_err(|e| e.to_string())?;
            if &back != f {
                return Err(format!("synthesis of {f} computes {back}"));
            }
            round_trips += 1;
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(2);
    for _ in 0..200 {
        let table = (0..27)
            .map(|_| TruthValue::ALL[rng.gen_range(0..3)])
            .collect();
        let f = TruthFunction::new(table).unwrap();
        if function_of(&synthesize(&f), &default_atoms(3)).unwrap() != f {
            return Err(format!("synthesis of ternary {f} fails"));
        }
        round_trips += 1;
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "27 unary, 19683 binary, {round_trips} synthesis round trips, {:.2}s",
        elapsed.as_secs_f64()
    );
    if elapsed < COMPLETENESS_LIMIT {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_3() -> Verdict {
    let mp = entails_prop(&[parse("p => q"), parse("p")], &parse("q")).unwrap();
    if mp != Entailment::Entailed {
        return Err(format!("modus ponens: {mp:?}"));
    }
    let schemata = [
        "(p => q) => ((p => (q => r)) => (p => r))",
        "p^t => (q => p)",
        "(p => q) <=> (~q => ~p)",
        "((p^t => q) & (p^p => q) & (p^f => q)) => q",
        "(p => (q & q^f)) => p^f",
    ];
    let atoms: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
    for s in schemata {
        let f = parse(s);
        let verdict = is_tautology(&f).unwrap();
        let oracle = all_maps(&atoms, 3).iter().all(|v| oracle_prop(&f, v) >= 1);
        if verdict != Tautology::Valid || !oracle {
            return Err(format!("{s}: {verdict:?}, oracle valid = {oracle}"));
        }
    }
    Ok("modus ponens and 5 schemata valid, 0 countermodels".into())
}

fn criterion_4() -> Verdict {
    let weak = lps(&["entail", "p -> q; p |- q"]);
    let strong = lps(&["entail", "p => q; p |- q"]);
    let detail = format!(
        "weak: exit {} `{}`, strong: exit {} `{}`",
        weak.exit_code,
        weak.stdout.trim(),
        strong.exit_code,
        strong.stdout.trim()
    );
    if weak.exit_code == 1
        && weak.stdout == "countermodel: p=P, q=F\n"
        && strong.exit_code == 0
        && strong.stdout == "entailed\n"
    {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_5() -> Verdict {
    let formulas = sample(&arb_classical(5), 1000, 5);
    let atoms: Vec<String> = ["p", "q", "r", "s"].iter().map(|s| s.to_string()).collect();
    let mut valid = 0;
    let mut violations = Vec::new();
    for f in &formulas {
        assert!(f.depth() <= 6);
        let classical = all_maps(&atoms, 2).iter().all(|v| {
            let bools = v.iter().map(|(a, &n)| (a.clone(), n == 1)).collect();
            oracle_classical(f, &bools)
        });
        if classical {
            valid += 1;
            if is_tautology(f).unwrap() != Tautology::Valid {
                violations.push(f.to_string());
            }
        }
    }
    let detail = format!(
        "1000 formulas, {valid} classically valid, {} violations",
        violations.len()
    );
    if violations.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {violations:?}"))
    }
}

/// Models of one unary relation `R` with domain sizes `sizes`.
fn unary_models(sizes: std::ops::RangeInclusive<usize>) -> Vec<Model> {
    let sig = Signature::new().with_relation("R", 1).unwrap();
    sizes
        .flat_map(|k| enumerate_models(&sig, k, &ModelBudget::default()).unwrap())
        .collect()
}

fn assignments(vars: &[&str], k: usize) -> Vec<Assignment> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    Assignment::all(&vars, k).collect()
}

fn x() -> Term {
    Term::var("x")
}

fn y() -> Term {
    Term::var("y")
}

fn criterion_6() -> Verdict {
    let models = unary_models(1..=3);
    let mut evaluations = 0u64;

    // Equality atoms and every formula of the pure equality fragment.
    let eq_atoms = [Formula::eq(x(), y())];
    let unary: [fn(Formula) -> Formula; 4] = [
        Formula::not,
        |f| Formula::status(f, StatusOp::Consistent),
        |f| Formula::forall("x", f),
        |f| Formula::exists("y", f),
    ];
    let binary: [fn(Formula, Formula) -> Formula; 2] = [Formula::and, Formula::strong_imp];
    let mut layers = vec![eq_atoms.to_vec()];
    while layers.len() < 4 {
        let next = next_layer(&layers, &unary, &binary, |f| f);
        layers.push(next);
    }
    for m in &models {
        let assigns = assignments(&["x", "y"], m.size());
        for f in layers.iter().flatten() {
            for a in &assigns {
                evaluations += 1;
                if true_fo(f, m, a).unwrap() == TruthValue::Both {
                    return Err(format!("{f} evaluates to P"));
                }
            }
        }
    }
    let equality_formulas: usize = layers.iter().map(Vec::len).sum();

    // Quantifiers against explicit expansion over named elements.
    let atoms = [
        Formula::rel("R", vec![x()]),
        Formula::rel("R", vec![y()]),
        Formula::eq(x(), y()),
    ];
    let unary: [fn(Formula) -> Formula; 3] = [
        Formula::not,
        |f| Formula::forall("y", f),
        |f| Formula::status(f, StatusOp::Consistent),
    ];
    let mut layers = vec![atoms.to_vec()];
    while layers.len() < 3 {
        let next = next_layer(&layers, &unary, &binary, |f| f);
        layers.push(next);
    }
    let mut expansions = 0u64;
    for base in &models {
        let mut m = base.clone();
        let names: Vec<String> = (1..=m.size()).map(|i| format!("n{i}")).collect();
        for (i, n) in names.iter().enumerate() {
            m.set_constant(n, &format!("e{}", i + 1)).unwrap();
        }
        let assigns = assignments(&["y"], m.size());
        for body in layers.iter().flatten() {
            let instances: Vec<Formula> = names
                .iter()
                .map(|n| body.substitute(&BTreeMap::from([("x".to_string(), Term::constant(n))])))
                .collect();
            let conj = instances.iter().cloned().reduce(Formula::and).unwrap();
            let disj = instances.iter().cloned().reduce(Formula::or).unwrap();
            let all = Formula::forall("x", body.clone());
            let some = Formula::exists("x", body.clone());
            for a in &assigns {
                expansions += 1;
                if true_fo(&all, &m, a) != true_fo(&conj, &m, a) {
                    return Err(format!(
                        "{all} differs from its expansion in a size-{} model",
                        m.size()
                    ));
                }
                if true_fo(&some, &m, a) != true_fo(&disj, &m, a) {
                    return Err(format!(
                        "{some} differs from its expansion in a size-{} model",
                        m.size()
                    ));
                }
            }
        }
    }
    let bodies: usize = layers.iter().map(Vec::len).sum();
    Ok(format!(
        "{} models; {equality_formulas} equality formulas, {evaluations} evaluations, none P; \
         {bodies} bodies, {expansions} quantifier expansions agree",
        models.len()
    ))
}

fn criterion_7() -> Verdict {
    let start = Instant::now();
    let sig = Signature::new().with_relation("R", 1).unwrap();
    let report =
        schema_forces_consistency(&sig, 2, &ModelBudget::default()).map_err(|e| e.to_string())?;
    if !report.holds() {
        return Err(format!("{} schema violations", report.violations.len()));
    }
    for u in consistency_schema(&sig) {
        let t = translate_to_classical(&u).unwrap();
        for m in unary_models(1..=3).iter().filter(|m| m.is_consistent()) {
            if !classical_satisfies(m, &t).unwrap() {
                return Err(format!("translated schema {t} fails classically"));
            }
        }
    }

    let consistent: Vec<(Model, Vec<Assignment>)> = unary_models(1..=2)
        .into_iter()
        .filter(|m| m.is_consistent())
        .map(|m| {
            let a = assignments(&["x", "y"], m.size());
            (m, a)
        })
        .collect();
    let atoms = [Formula::rel("R", vec![x()]), Formula::eq(x(), y())];
    let unary: [fn(Formula) -> Formula; 4] = [
        Formula::not,
        |f| Formula::status(f, StatusOp::Consistent),
        |f| Formula::forall("x", f),
        |f| Formula::exists("y", f),
    ];
    let binary: [fn(Formula, Formula) -> Formula; 2] = [Formula::and, Formula::strong_imp];
    let mut violations: Vec<String> = Vec::new();
    let mut checked = 0u64;
    let mut check = |f: &Formula| {
        checked += 1;
        let t = translate_to_classical(f).expect("BOTH-free");
        for (m, assigns) in &consistent {
            for a in assigns {
                let lps = true_fo(f, m, a).unwrap().is_designated();
                if lps != classical_eval(&t, m, a).unwrap() && violations.len() < 5 {
                    violations.push(f.to_string());
                }
            }
        }
    };
    let mut layers = vec![atoms.to_vec()];
    layers[0].iter().for_each(&mut check);
    while layers.len() < 3 {
        let next = next_layer(&layers, &unary, &binary, |f| f);
        next.iter().for_each(&mut check);
        layers.push(next);
    }
    next_layer(&layers, &unary, &binary, |f| check(&f));
    let elapsed = start.elapsed();
    let detail = format!(
        "{} models, {} consistent, schema exact; {checked} formulas of depth <= 4, {} violations, {:.1}s",
        report.models_checked,
        report.consistent_models,
        violations.len(),
        elapsed.as_secs_f64()
    );
    if violations.is_empty() && elapsed < RECOVERY_LIMIT {
        Ok(detail)
    } else {
        Err(format!("{detail}: {violations:?}"))
    }
}

fn criterion_8() -> Verdict {
    let neg = TruthFunction::from_fn(1, |a| a[0].neg());
    let is_false = TruthFunction::from_fn(1, |a| a[0].status(StatusOp::IsBot));
    let liar = fixed_points(&neg).unwrap();
    let russell = fixed_points(&is_false).unwrap();
    let cli_liar = lps(&["paradox", "~p"]);
    let cli_russell = lps(&["paradox", "p^f"]);
    let ok = liar == BTreeSet::from([TruthValue::Both])
        && russell.is_empty()
        && cli_liar.exit_code == 0
        && cli_russell.exit_code == 1
        && cli_russell.stdout.contains("vicious");
    let detail = format!("fixed points of ~: {liar:?}; of ^f: {russell:?}");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_9() -> Verdict {
    let sig = Signature::new()
        .with_constant("c")
        .unwrap()
        .with_relation("R", 1)
        .unwrap()
        .with_relation("S", 1)
        .unwrap();
    let f = |t: &str| parse_formula(t, &sig).unwrap();
    let premises = [f("R(c)"), f("~R(c)")];
    let verdict = entails_bounded(&premises, &f("S(c)"), &sig, 3, &ModelBudget::default())
        .map_err(|e| e.to_string())?;
    let BoundedVerdict::Countermodel { model } = verdict else {
        return Err(format!("no countermodel: {verdict:?}"));
    };
    if model.size() != 1 {
        return Err(format!("countermodel has size {}", model.size()));
    }
    let classical = find_classical_model(&premises, &sig, 3, &ModelBudget::default())
        .map_err(|e| e.to_string())?;
    match classical {
        None => Ok(
            "countermodel of size 1 with R(c) = P; premises classically unsatisfiable up to size 3"
                .into(),
        ),
        Some(m) => Err(format!("classical model found: {}", m.to_json())),
    }
}

fn criterion_10() -> Verdict {
    let formulas = sample(&arb_fo(7, &TruthValue::ALL), 1000, 10);
    for f in &formulas {
        if f.depth() > 8 {
            return Err(format!("generated depth {}", f.depth()));
        }
        let sig = f.signature().unwrap();
        if parse_formula(&f.to_string(), &sig).as_ref() != Ok(f) {
            return Err(format!("round trip fails for {f}"));
        }
    }
    let examples = readme::examples();
    let failures = readme::mismatches();
    let detail = format!(
        "1000 ASTs round-trip; {} README examples, {} mismatches",
        examples.len(),
        failures.len()
    );
    if failures.is_empty() && !examples.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}\n{}", failures.join("\n")))
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("LP unary closure equals the published table", criterion_1),
        (
            "strong LP is functionally complete; synthesis round-trips",
            criterion_2,
        ),
        ("strong implication schemata", criterion_3),
        ("LP modus ponens failure", criterion_4),
        ("classical tautologies are LP-valid", criterion_5),
        (
            "equality is two-valued; quantifiers are min and max",
            criterion_6,
        ),
        ("classical recovery", criterion_7),
        ("paradox fixed points", criterion_8),
        ("explosion fails in LP and holds classically", criterion_9),
        ("parser round-trip and README golden examples", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match verdict {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
