use htc_core::checker::gen::{corpus_domain, delta_domain, Gen};
use htc_core::parser::*;
use htc_core::syntax::*;
use htc_core::Error;
use proptest::prelude::*;

fn domain() -> DomainSpec {
    DomainSpec::new()
        .with_int("x", 0, 9)
        .with_int("y", 0, 9)
        .with_bool("p")
        .with_bool("q")
}

#[test]
fn declarations_build_the_domain() {
    let t = parse_theory("#int x, y 0..3. #int z. #bool p, q.").unwrap();
    assert_eq!(t.domain.interval("x"), Some(Interval { lo: 0, hi: 3 }));
    assert_eq!(t.domain.interval("z"), Some(DEFAULT_INTERVAL));
    assert!(t.domain.is_bool("q"));
    assert!(t.statements.is_empty());
}

#[test]
fn negative_interval_bounds() {
    let t = parse_theory("#int e -3..3.").unwrap();
    assert_eq!(t.domain.interval("e"), Some(Interval { lo: -3, hi: 3 }));
}

#[test]
fn declarations_apply_to_the_whole_file() {
    let t = parse_theory("x = 1. #int x 0..2.").unwrap();
    assert_eq!(t.statements.len(), 1);
}

#[test]
fn empty_interval_is_rejected() {
    assert!(matches!(parse_theory("#int x 3..1."), Err(Error::Syntax { .. })));
}

#[test]
fn conflicting_declarations_are_rejected() {
    assert!(parse_theory("#int x 0..1. #bool x.").is_err());
}

#[test]
fn undeclared_variable_reports_position() {
    match parse_theory("#int x 0..2.\nx <= z.") {
        Err(Error::Undeclared { name, line, column }) => {
            assert_eq!(name, "z");
            assert_eq!((line, column), (2, 6));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn nested_conditional_is_rejected() {
    let src = "#int x, y 0..2. #bool p.\n(x | y : (x|y:p) = 1) <= 2.";
    match parse_theory(src) {
        Err(Error::NestedConditional { line, column }) => assert_eq!((line, column), (2, 10)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn aggregate_inside_a_condition_is_rejected() {
    let src = "#int x 0..2. #bool p.\n(x | 0 : sum{x} = 1) <= 2.";
    assert!(matches!(parse_theory(src), Err(Error::NestedConditional { .. })));
}

#[test]
fn syntax_error_reports_position() {
    match parse_theory("#int x 0..2.\nx <= .") {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 6)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn comments_are_skipped() {
    let t = parse_theory("% header\n#bool p. % trailing\np.").unwrap();
    assert_eq!(t.statements.len(), 1);
}

#[test]
fn lc_rules_make_a_program() {
    let src = "#int x, y 0..2. #bool p.\nx := y + 1 :- p.\ny := 0..1 :- not p.";
    match parse(src).unwrap() {
        Source::Program(p) => {
            assert_eq!(p.rules.len(), 2);
            assert!(p.rules[0].assignments().next().unwrap().is_single());
            assert!(!p.rules[1].assignments().next().unwrap().is_single());
            assert!(p.rules[1].body[0].negated);
        }
        other => panic!("expected a program, got {other:?}"),
    }
}

#[test]
fn formulas_make_a_theory() {
    match parse("#bool p, q. p | q.").unwrap() {
        Source::Theory(t) => assert!(matches!(t.statements[0], Statement::Formula(Formula::Or(..)))),
        other => panic!("expected a theory, got {other:?}"),
    }
}

#[test]
fn empty_input_is_an_empty_program() {
    assert!(matches!(parse("").unwrap(), Source::Program(p) if p.rules.is_empty()));
}

#[test]
fn atom_heads_make_htc_rules() {
    let t = parse_theory("#int x 0..2. #bool p, q. p ; x >= 1 :- q.").unwrap();
    let Statement::Rule(r) = &t.statements[0] else {
        panic!("expected a rule")
    };
    assert!(r.is_htc());
    assert_eq!(r.head.len(), 2);
}

#[test]
fn complex_bodies_become_implications() {
    let t = parse_theory("#bool p, q, r. p :- q | r.").unwrap();
    assert!(matches!(&t.statements[0], Statement::Formula(Formula::Implies(..))));
}

#[test]
fn constraints_and_facts() {
    let t = parse_theory("#bool p. :- not p. p :- .").unwrap();
    let rules: Vec<&Rule> = t.rules().collect();
    assert_eq!(rules.len(), 2);
    assert!(rules[0].head.is_empty());
    assert!(rules[1].body.is_empty());
}

#[test]
fn operator_precedence() {
    let f = parse_formula("p | q & not p -> q", &domain()).unwrap();
    let Formula::Implies(lhs, _) = &f else {
        panic!("implication is loosest")
    };
    let Formula::Or(_, rhs) = lhs.as_ref() else {
        panic!("`|` binds looser than `&`")
    };
    assert!(matches!(rhs.as_ref(), Formula::And(..)));
}

#[test]
fn implication_is_right_associative() {
    let f = parse_formula("p -> q -> p", &domain()).unwrap();
    let Formula::Implies(_, rhs) = &f else { panic!() };
    assert!(matches!(rhs.as_ref(), Formula::Implies(..)));
}

#[test]
fn grouped_formulas_and_parenthesised_atoms() {
    let d = domain();
    assert!(parse_formula("(p | q) & (x <= 3)", &d).is_ok());
    assert!(parse_formula("((x <= 3))", &d).is_ok());
    assert!(parse_formula("(x <= 3", &d).is_err());
}

#[test]
fn conditional_terms_and_negation() {
    let d = domain();
    let e = parse_expr("x - (y|3:p)", &d).unwrap();
    assert_eq!(e.0.len(), 2);
    let Summand::Conditional(c) = &e.0[1] else {
        panic!("expected a conditional")
    };
    assert_eq!(c.then_term, LinearTerm::Scaled(-1, Var::new("y")));
    assert_eq!(c.else_term, LinearTerm::Const(-3));
}

#[test]
fn aggregates_parse() {
    let d = domain();
    let e = parse_expr("sum{x : p; 2*y; 3} + count{p; not q} - min{x; y} + max{x : q}", &d).unwrap();
    let kinds: Vec<(AggregateFunction, bool, usize)> = e
        .0
        .iter()
        .map(|s| match s {
            Summand::Aggregate { negated, aggregate } => {
                (aggregate.function, *negated, aggregate.elements.len())
            }
            other => panic!("unexpected {other:?}"),
        })
        .collect();
    assert_eq!(
        kinds,
        vec![
            (AggregateFunction::Sum, false, 3),
            (AggregateFunction::Count, false, 2),
            (AggregateFunction::Min, true, 2),
            (AggregateFunction::Max, false, 1),
        ]
    );
}

#[test]
fn undefined_constant() {
    let e = parse_expr("x + #u", &domain()).unwrap();
    assert_eq!(e.0[1], Summand::Undefined);
}

#[test]
fn literal_too_large() {
    assert!(parse_expr("10000000000", &domain()).is_err());
}

#[test]
fn keywords_cannot_be_declared() {
    assert!(parse_theory("#bool not.").is_err());
}

#[test]
fn printing_examples() {
    let d = domain();
    let cases = [
        ("x - (y|3:p) <= 4", "x + (-y | -3 : p) <= 4"),
        ("-2*y + x >= -1", "-2*y + x >= -1"),
        ("x - 1*y + 0 = 3", "x - y + 0 = 3"),
        ("not p | q & p", "not p | q & p"),
        ("(p | q) & p", "(p | q) & p"),
        ("p -> q -> p", "p -> q -> p"),
        ("(p -> q) -> p", "(p -> q) -> p"),
        ("def(x + 1)", "def(x + 1)"),
        ("sum{x : p; y} > 1", "sum{x : p; y} > 1"),
        ("#true", "#true"),
        ("#false", "#false"),
    ];
    for (src, want) in cases {
        assert_eq!(parse_formula(src, &d).unwrap().to_string(), want, "{src}");
    }
}

#[test]
fn printing_rules_and_domains() {
    let src = "#int x, y 0..2. #int z 0..9. #bool p.\nx := y + 1 :- p.\ny := 0..1 :- not p.\n:- not p.\np :- .\np ; x = 1.";
    let printed = print_theory(&parse_theory(src).unwrap());
    assert_eq!(
        printed,
        "#int x, y 0..2.\n#int z 0..9.\n#bool p.\nx := y + 1 :- p.\ny := 0..1 :- not p.\n:- not p.\np :- .\np ; x = 1.\n"
    );
}

#[test]
fn generated_names_round_trip() {
    let t = parse_theory("#int __c0 0..2. __c0 = 1.").unwrap();
    assert_eq!(parse_theory(&print_theory(&t)).unwrap(), t);
}

fn round_trips(t: &Theory) {
    let printed = print_theory(t);
    let back = parse_theory(&printed).unwrap_or_else(|e| panic!("{e}\n{printed}"));
    assert_eq!(&back, t, "{printed}");
}

proptest! {
    #[test]
    fn generated_theories_round_trip(seed in any::<u64>(), item in 0u64..1000) {
        let d = delta_domain();
        let mut g = Gen::new(seed, item, &d);
        round_trips(&g.theory(&d));
        round_trips(&g.one_conditional_theory(&d));
    }

    #[test]
    fn generated_programs_round_trip(seed in any::<u64>(), item in 0u64..1000) {
        let d = corpus_domain();
        let mut g = Gen::new(seed, item, &d);
        let p = g.lc_program(&d);
        let t = p.to_theory();
        round_trips(&t);
        prop_assert!(matches!(parse(&print_theory(&t)).unwrap(), Source::Program(_)));
    }

    #[test]
    fn printing_is_a_fixpoint(seed in any::<u64>()) {
        let d = delta_domain();
        let t = Gen::new(seed, 0, &d).theory(&d);
        let once = print_theory(&t);
        let twice = print_theory(&parse_theory(&once).unwrap());
        prop_assert_eq!(once, twice);
    }
}
