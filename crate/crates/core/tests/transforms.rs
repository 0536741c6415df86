use htc_core::checker::equivalent;
use htc_core::checker::gen::{corpus_domain, Gen, MAX_CONDITIONALS};
use htc_core::parser::{parse_expr, parse_formula, parse_theory, print_theory};
use htc_core::semantics::*;
use htc_core::syntax::*;
use htc_core::transforms::*;
use htc_core::Error;
use proptest::prelude::*;

fn domain() -> DomainSpec {
    DomainSpec::new()
        .with_int("x", 0, 9)
        .with_int("y", 0, 9)
        .with_bool("p")
        .with_bool("q")
}

fn first_rule(src: &str) -> (Theory, Rule) {
    let t = parse_theory(src).unwrap();
    let r = t.rules().next().unwrap().clone();
    (t, r)
}

fn texts(fs: &[Formula]) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}

#[test]
fn assignment_formulas() {
    let (_, r) = first_rule("#int x, y 0..9. x := y + 1.");
    let a = r.assignments().next().unwrap();
    assert_eq!(phi(a).to_string(), "y + 1 <= x & x <= y + 1");
    assert_eq!(def_of(a).to_string(), "def(y + 1)");
    assert_eq!(
        assignment_formula(a).to_string(),
        "not not def(y + 1) & (def(y + 1) -> y + 1 <= x & x <= y + 1)"
    );
    let (_, r) = first_rule("#int x, y 0..9. x := 1..y.");
    let a = r.assignments().next().unwrap();
    assert_eq!(def_of(a).to_string(), "def(1) & def(y)");
}

#[test]
fn single_assignment_gives_two_implications() {
    let (_, r) = first_rule("#int total, a, b 0..9. #bool region. total := a + b :- region.");
    let got = texts(&unfolding_implications(&r, DEFAULT_MAX_HEAD_ASSIGNMENTS).unwrap());
    assert_eq!(
        got,
        vec![
            "region & def(a + b) -> a + b <= total & total <= a + b",
            "not (region & not (a + b <= total & total <= a + b))",
        ]
    );
}

#[test]
fn unfolded_rules_are_htc_rules() {
    let (_, r) = first_rule("#int total, a, b 0..9. #bool region. total := a + b :- region.");
    let rules = unfold_rule(&r).unwrap();
    let printed: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
    assert_eq!(
        printed,
        vec![
            "a + b <= total :- region, def(a + b).",
            "total <= a + b :- region, def(a + b).",
            ":- region, not a + b <= total.",
            ":- region, not total <= a + b.",
        ]
    );
    assert!(rules.iter().all(Rule::is_htc));
}

#[test]
fn two_assignments_give_four_subsets() {
    let (_, r) = first_rule("#int x, y 0..2. #bool p. x := 1 ; y := 0..1 :- p.");
    assert_eq!(unfolding_implications(&r, 10).unwrap().len(), 4);
    // Each subset yields 2*2 clauses: head choices for kept assignments, negated-body
    // choices for dropped ones.
    let rules = unfold_rule(&r).unwrap();
    assert_eq!(rules.len(), 16);
    assert_eq!(rules.iter().filter(|r| r.head.is_empty()).count(), 4);
}

#[test]
fn head_atoms_stay_in_every_head() {
    let (_, r) = first_rule("#int x 0..2. #bool p, q. x := 1 ; q :- p.");
    for f in unfolding_implications(&r, 10).unwrap() {
        let Formula::Implies(_, head) = &f else { panic!() };
        let mut has_q = false;
        head.visit_atoms(&mut |a| has_q |= matches!(a, Atom::Bool(v) if v.as_str() == "q"));
        assert!(has_q, "{f}");
    }
}

#[test]
fn rules_without_assignments_are_unchanged() {
    let (_, r) = first_rule("#bool p, q. p :- not q.");
    assert_eq!(unfold_rule(&r).unwrap(), vec![r]);
}

#[test]
fn head_size_is_limited() {
    let (_, r) = first_rule("#int x, y 0..2. x := 1 ; y := 1.");
    assert!(matches!(
        unfold_rule_with(&r, 1),
        Err(Error::TooManyHeadAssignments { count: 2, max: 1 })
    ));
}

#[test]
fn unfolding_preserves_ht_models() {
    let (t, _) = first_rule("#int x, y 0..2. #bool p. x := y + 1 ; y := 0..1 :- not p.");
    let u = unfold_theory(&t).unwrap();
    assert!(equivalent(&t, &u, &Solver::default()).unwrap().is_equal());
}

#[test]
fn delta_formulas() {
    let d = domain();
    let e = parse_expr("(y|3:p)", &d).unwrap();
    let Summand::Conditional(tau) = &e.0[0] else { panic!() };
    let got: Vec<String> = delta(tau, &Var::new("__c0")).iter().map(|f| f.to_string()).collect();
    assert_eq!(
        got,
        vec![
            "p & def(y) -> __c0 = y",
            "not p & def(3) -> __c0 = 3",
            "p & def(__c0) -> __c0 = y",
            "not p & def(__c0) -> __c0 = 3",
            "def(__c0) -> p | not p",
        ]
    );
    let range = fresh_interval(tau, &d);
    assert_eq!(range, Interval { lo: 0, hi: 9 });
}

#[test]
fn eliminate_conditionals_replaces_every_term() {
    let src = "#int x, y 0..9. #bool p, q. x - (y|3:p) <= 4. (y|3:p) >= 1 | (x|0:q) = 2. (y|3:p) != 0.";
    let t = parse_theory(src).unwrap();
    let dr = eliminate_conditionals(&t).unwrap();
    assert!(!dr.rewritten.has_conditionals());
    // The negated occurrence is a distinct term; the two equal ones share a variable.
    assert_eq!(dr.fresh_vars(), vec![Var::new("__c0"), Var::new("__c1"), Var::new("__c2")]);
    assert_eq!(dr.side.len(), 15);
    assert_eq!(dr.rewritten.domain.interval("__c0"), Some(Interval { lo: -9, hi: 0 }));
    assert_eq!(dr.rewritten.domain.interval("__c1"), Some(Interval { lo: 0, hi: 9 }));
    let printed = print_theory(&dr.rewritten);
    assert!(printed.contains("x + __c0 <= 4.\n__c1 >= 1 | __c2 = 2.\n__c1 != 0.\n"), "{printed}");
}

#[test]
fn eliminate_conditionals_requires_desugared_input() {
    let t = parse_theory("#int x, y 0..9. x = sum{y}.").unwrap();
    assert!(matches!(eliminate_conditionals(&t), Err(Error::NotDesugared(_))));
}

#[test]
fn fresh_names_skip_existing_ones() {
    let t = parse_theory("#int __c0, __c4, y 0..3. #bool p. __c0 = (y|1:p).").unwrap();
    let dr = eliminate_conditionals(&t).unwrap();
    assert_eq!(dr.fresh_vars(), vec![Var::new("__c5")]);
    let mut strict = FreshNames::strict(&t.domain);
    assert!(matches!(strict.next(FreshKind::Conditional), Err(Error::NameCollision(n)) if n == "__c0"));
    assert_eq!(strict.next(FreshKind::Conditional).unwrap().as_str(), "__c1");
}

#[test]
fn sum_desugaring() {
    let d = domain();
    let e = parse_expr("sum{x : p; y} - count{q}", &d).unwrap();
    let t = Theory::from_formulas(d.clone(), vec![Formula::Atom(Atom::Def(e))]);
    let out = desugar_aggregates(&t).unwrap();
    assert_eq!(
        print_theory(&out).lines().last().unwrap(),
        "def((x | 0 : p & def(x)) + (y | 0 : def(y)) + (-1 | 0 : q & def(1)))."
    );
}

#[test]
fn empty_sum_is_zero() {
    let d = domain();
    let Summand::Aggregate { aggregate, .. } = &parse_expr("sum{}", &d).unwrap().0[0] else {
        panic!()
    };
    assert_eq!(desugar_sum(aggregate, false), vec![Summand::Linear(LinearTerm::Const(0))]);
}

#[test]
fn minmax_declares_a_fresh_variable() {
    let t = parse_theory("#int a 0..3. #int b -2..1. #int m -5..5. m = min{a; b}. m >= max{a}.").unwrap();
    let out = desugar_aggregates(&t).unwrap();
    assert_eq!(out.domain.interval("__min0"), Some(Interval { lo: -2, hi: 3 }));
    assert_eq!(out.domain.interval("__max0"), Some(Interval { lo: 0, hi: 3 }));
    assert!(!out.has_aggregates());
    // Two side formulas per aggregate.
    assert_eq!(out.statements.len(), 2 + 4);
}

#[test]
fn desugaring_is_idempotent() {
    let t = parse_theory("#int a, b, m 0..3. #bool p. m = min{a : p; b}. sum{a; b} > 1 -> p. a != b.").unwrap();
    let once = desugar(&t).unwrap();
    assert_eq!(desugar(&once).unwrap(), once);
}

#[test]
fn sum_matches_brute_force() {
    let t = parse_theory("#int a, b 0..2. #int s 0..5. #bool p. s = sum{a : p; b; 1 : not p}.").unwrap();
    let t = desugar(&t).unwrap();
    let Statement::Formula(f) = &t.statements[0] else { panic!() };
    let c = Compiled::new(&t).unwrap();
    for v in enumerate_valuations(&c.signature) {
        let p = v.is_true("p");
        let terms = [(v.int("a"), p), (v.int("b"), true), (Some(1), !p)];
        let brute: i64 = terms.iter().filter(|(x, c)| *c && x.is_some()).map(|(x, _)| x.unwrap()).sum();
        let holds = satisfies(&Interpretation::total(v.clone()), f);
        assert_eq!(holds, v.int("s") == Some(brute), "{v}");
        assert_eq!(holds, c.holds(&v, &v), "{v}");
    }
}

#[test]
fn normal_form_examples() {
    let d = domain();
    let c = normalize_leq(&parse_expr("x + 3", &d).unwrap(), &parse_expr("2*y - 1", &d).unwrap());
    assert_eq!(Atom::Compare(c).to_string(), "x - 2*y <= -4");
    let c = normalize_leq(&parse_expr("x", &d).unwrap(), &parse_expr("5", &d).unwrap());
    assert_eq!(Atom::Compare(c).to_string(), "x <= 5");
    let c = normalize_leq(&parse_expr("3", &d).unwrap(), &parse_expr("1", &d).unwrap());
    assert_eq!(Atom::Compare(c).to_string(), "3 <= 1");
    let c = normalize_leq(&parse_expr("3", &d).unwrap(), &parse_expr("y", &d).unwrap());
    assert_eq!(Atom::Compare(c).to_string(), "-y <= -3");
    let eq = Comparison::new(parse_expr("x", &d).unwrap(), Relation::Eq, parse_expr("y", &d).unwrap());
    assert_eq!(normalize_constraint(&eq).unwrap().len(), 2);
    let lt = Comparison::new(parse_expr("x", &d).unwrap(), Relation::Lt, parse_expr("y", &d).unwrap());
    assert!(normalize_constraint(&lt).is_none());
}

proptest! {
    #[test]
    fn normalization_preserves_denotation(seed in any::<u64>()) {
        let d = corpus_domain();
        let mut g = Gen::new(seed, 0, &d);
        let mut budget = 0;
        let lhs = g.expr(&mut budget);
        let rhs = g.expr(&mut budget);
        let original = Atom::le(lhs.clone(), rhs.clone());
        let normal = Atom::Compare(normalize_leq(&lhs, &rhs));
        let sig = Signature::new(&d);
        for v in enumerate_valuations(&sig) {
            prop_assert_eq!(denotes(&v, &original), denotes(&v, &normal), "{} vs {} at {}", original, normal, v);
        }
    }

    #[test]
    fn comparison_desugaring_preserves_satisfaction(seed in any::<u64>()) {
        let d = corpus_domain();
        let mut budget = MAX_CONDITIONALS;
        let f = Gen::new(seed, 0, &d).formula(&mut budget);
        let g = desugar_comparisons(&f);
        let sig = Signature::new(&d);
        for t in enumerate_valuations(&sig) {
            for h in t.subvaluations() {
                let i = Interpretation::new(h, t.clone()).unwrap();
                prop_assert_eq!(satisfies(&i, &f), satisfies(&i, &g), "{} at {}", f, i);
            }
        }
    }

    #[test]
    fn generated_rules_unfold_equivalently(seed in any::<u64>()) {
        let d = corpus_domain();
        let mut budget = MAX_CONDITIONALS;
        let r = Gen::new(seed, 0, &d).lc_rule(2, 2, &mut budget);
        let t = Theory::new(d.clone(), vec![Statement::Rule(r)]);
        let u = unfold_theory(&t).unwrap();
        prop_assert!(equivalent(&t, &u, &Solver::default()).unwrap().is_equal());
    }

    #[test]
    fn delta_result_has_no_conditionals(seed in any::<u64>()) {
        let d = corpus_domain();
        let t = Gen::new(seed, 0, &d).theory(&d);
        let dr = eliminate_conditionals(&t).unwrap();
        prop_assert!(!dr.clone().into_theory().has_conditionals());
        prop_assert_eq!(dr.side.len(), 5 * dr.mapping.len());
    }

    #[test]
    fn formula_desugaring_is_idempotent(seed in any::<u64>()) {
        let d = corpus_domain();
        let t = Gen::new(seed, 0, &d).theory(&d);
        let once = desugar(&t).unwrap();
        prop_assert_eq!(desugar(&once).unwrap(), once);
    }
}

#[test]
fn parse_formula_helper_is_available() {
    assert!(parse_formula("x <= 1", &domain()).is_ok());
}
