use std::collections::BTreeSet;

use htc_core::checker::gen::{corpus_domain, delta_domain};
use htc_core::checker::*;
use htc_core::parser::{parse_theory, print_theory};
use htc_core::semantics::Solver;
use htc_core::syntax::*;
use htc_core::Error;

fn theory(src: &str) -> Theory {
    parse_theory(src).unwrap()
}

fn vars(names: &[&str]) -> BTreeSet<Var> {
    names.iter().map(|n| Var::new(n)).collect()
}

#[test]
fn different_facts_have_a_reverifiable_witness() {
    let (a, b) = (theory("#bool p, q. p."), theory("#bool p, q. q."));
    let s = Solver::default();
    let r = equivalent(&a, &b, &s).unwrap();
    assert_eq!(r.verdict, Verdict::Different);
    assert_eq!(r.mode, Mode::Ht);
    assert!(matches!(r.witness, Some(Witness::Interpretation { .. })));
    assert!(r.reverify(&a, &b, &s).unwrap());
    assert!(!r.reverify(&a, &a, &s).unwrap());
}

#[test]
fn theory_equals_itself() {
    let a = theory("#int x 0..2. #bool p. x := 1 :- not p.");
    let r = equivalent(&a, &a, &Solver::default()).unwrap();
    assert!(r.is_equal());
    assert!(r.witness.is_none());
}

#[test]
fn adding_falsity_changes_ht_models() {
    let a = theory("#bool p. p :- not p.");
    let b = theory("#bool p. p :- not p. #false.");
    assert!(!equivalent(&a, &b, &Solver::default()).unwrap().is_equal());
    // Both have no stable models.
    assert!(stable_equivalent(&a, &b, None, &Solver::default()).unwrap().is_equal());
}

#[test]
fn stable_but_not_strongly_equivalent() {
    let a = theory("#bool p, q. p.");
    let b = theory("#bool p, q. p :- not q.");
    let s = Solver::default();
    assert!(stable_equivalent(&a, &b, None, &s).unwrap().is_equal());
    assert!(!equivalent(&a, &b, &s).unwrap().is_equal());
    let x = vars(&["p", "q"]);
    let ctx = context_family(&a.domain, &x, DEFAULT_CONTEXT_CAP);
    let r = strong_equiv_sampled(&a, &b, &x, &ctx, &s).unwrap();
    assert_eq!(r.verdict, Verdict::Different);
    assert_eq!(r.mode, Mode::Strong);
    let Some(Witness::StableModel { context: Some(c), .. }) = &r.witness else {
        panic!("{:?}", r.witness)
    };
    assert!(c.contains("q."), "{c}");
    assert!(r.reverify(&a, &b, &s).unwrap());
}

#[test]
fn projection_hides_auxiliary_variables() {
    let a = theory("#bool p. p.");
    let b = theory("#bool p, aux. aux. p :- aux.");
    let s = Solver::default();
    assert!(!stable_equivalent(&a, &b, None, &s).unwrap().is_equal());
    let r = stable_equivalent(&a, &b, Some(&vars(&["p"])), &s).unwrap();
    assert!(r.is_equal());
    assert_eq!(r.projection, Some(vec!["p".to_string()]));
}

#[test]
fn context_family_members() {
    let d = delta_domain();
    let all = d.vars();
    // x = 0..2 and y = 0..2 give six facts, p and q two more, p <- q and q <- p two rules.
    let n = 6 + 2 + 2;
    let family = context_family(&d, &all, DEFAULT_CONTEXT_CAP);
    assert_eq!(family.len(), 1 + n + n * (n - 1) / 2);
    assert!(family[0].statements.is_empty());
    assert_eq!(context_family(&d, &all, 5).len(), 5);
    let only_p = context_family(&d, &vars(&["p"]), DEFAULT_CONTEXT_CAP);
    assert_eq!(only_p.len(), 2);
    assert_eq!(print_theory(&only_p[1]), "#bool p.\np.\n");
}

#[test]
fn report_serialises() {
    let (a, b) = (theory("#bool p, q. p."), theory("#bool p, q. q."));
    let r = equivalent(&a, &b, &Solver::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["mode"], "ht");
    assert_eq!(v["verdict"], "different");
    assert_eq!(v["witness"]["kind"], "interpretation");
    assert!(v.get("context").is_none());
}

#[test]
fn budget_is_enforced() {
    let a = theory("#int x, y, z 0..99. x = y.");
    let err = equivalent(&a, &a, &Solver::new(1000, 1)).unwrap_err();
    assert!(err.is_budget(), "{err}");
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        assert_eq!(serde_json::to_value(s).unwrap(), s.name());
    }
    assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
}

#[test]
fn suite_items_are_deterministic() {
    for s in Suite::ALL {
        for item in 0..5 {
            assert_eq!(suite_item(s, 7, item), suite_item(s, 7, item), "{s} {item}");
        }
    }
    let differs = (0..5).any(|i| suite_item(Suite::Persistence, 7, i) != suite_item(Suite::Persistence, 8, i));
    assert!(differs);
}

#[test]
fn reports_do_not_depend_on_jobs() {
    for s in [Suite::Persistence, Suite::Unfolding, Suite::MinMax] {
        let one = run_property_suite(s, 3, 20, &Solver::new(1_000_000, 1)).unwrap();
        let four = run_property_suite(s, 3, 20, &Solver::new(1_000_000, 4)).unwrap();
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&four).unwrap()
        );
    }
}

#[test]
fn every_suite_passes_on_a_small_corpus() {
    let s = Solver::default();
    for suite in Suite::ALL {
        let r = run_property_suite(suite, 11, 10, &s).unwrap();
        assert!(r.passed(), "{suite}: {:?}", r.counterexample);
        assert_eq!(r.count, 10);
        assert!(r.checks > 0, "{suite}");
    }
}

#[test]
fn brute_force_extremum_matches_definition() {
    let d = corpus_domain();
    let t = theory("#int x, y 0..2. #bool p.");
    let e = htc_core::parser::parse_expr("min{x : p; y; 2}", &d).unwrap();
    let Summand::Aggregate { aggregate, .. } = &e.0[0] else { panic!() };
    let sig = htc_core::semantics::Signature::new(&t.domain);
    use htc_core::semantics::{Valuation, Value};
    let v = Valuation::from_pairs(&sig, [("x", Value::Int(0)), ("y", Value::Int(1))]).unwrap();
    assert_eq!(brute_force_extremum(aggregate, &v), Some(1));
    let v = Valuation::from_pairs(&sig, [("x", Value::Int(0)), ("p", Value::True)]).unwrap();
    assert_eq!(brute_force_extremum(aggregate, &v), Some(0));
}

#[test]
fn shrinking_reaches_a_local_minimum() {
    let t = theory("#int x, y 0..2. #bool p, q, r. p | q. q -> r. x = 1 & p. y := 2 :- r, not q.");
    // Fails while some statement mentions both p and x.
    let fails = |t: &Theory| {
        t.statements.iter().any(|s| {
            let v = s.free_vars();
            v.contains(&Var::new("p")) && v.contains(&Var::new("x"))
        })
    };
    assert!(fails(&t));
    let small = shrink(&t, &fails);
    assert!(fails(&small));
    assert_eq!(small.statements.len(), 1);
    assert_eq!(small.domain.vars(), vars(&["p", "x"]));
    assert_eq!(print_theory(&small), "#int x 0..2.\n#bool p.\nx = 1 & p.\n");
}
