use std::collections::BTreeMap;
use std::fmt::Write;

use crate::syntax::*;

pub fn print_term(t: &LinearTerm) -> String {
    match t {
        LinearTerm::Const(d) => d.to_string(),
        LinearTerm::Scaled(1, x) => x.to_string(),
        LinearTerm::Scaled(-1, x) => format!("-{x}"),
        LinearTerm::Scaled(k, x) => format!("{k}*{x}"),
    }
}

fn print_conditional(c: &ConditionalTerm) -> String {
    format!(
        "({} | {} : {})",
        print_term(&c.then_term),
        print_term(&c.else_term),
        print_formula(&c.condition)
    )
}

fn print_aggregate(a: &Aggregate) -> String {
    let elems: Vec<String> = a
        .elements
        .iter()
        .map(|e| match a.function {
            AggregateFunction::Count => print_formula(&e.condition),
            _ if e.condition.is_top() => print_term(&e.term),
            _ => format!("{} : {}", print_term(&e.term), print_formula(&e.condition)),
        })
        .collect();
    format!("{}{{{}}}", a.function.keyword(), elems.join("; "))
}

/// Prints a summand as `(sign, body)` where a negative sign is written as `-`.
fn signed(s: &Summand) -> (bool, String) {
    match s {
        Summand::Linear(LinearTerm::Const(d)) if *d < 0 => (true, d.unsigned_abs().to_string()),
        Summand::Linear(LinearTerm::Scaled(k, x)) if *k < 0 => {
            (true, print_term(&LinearTerm::Scaled(-k, x.clone())))
        }
        Summand::Linear(t) => (false, print_term(t)),
        Summand::Conditional(c) => (false, print_conditional(c)),
        Summand::Aggregate { negated, aggregate } => (*negated, print_aggregate(aggregate)),
        Summand::Undefined => (false, "#u".into()),
    }
}

pub fn print_expr(e: &LinearExpr) -> String {
    let mut out = String::new();
    for (i, s) in e.0.iter().enumerate() {
        let (neg, body) = signed(s);
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

pub fn print_atom(a: &Atom) -> String {
    match a {
        Atom::Bool(p) => p.to_string(),
        Atom::Def(e) => format!("def({})", print_expr(e)),
        Atom::Compare(c) => format!(
            "{} {} {}",
            print_expr(&c.lhs),
            c.rel.symbol(),
            print_expr(&c.rhs)
        ),
    }
}

const P_IMPL: u8 = 1;
const P_OR: u8 = 2;
const P_AND: u8 = 3;
const P_NOT: u8 = 4;
const P_ATOM: u8 = 5;

fn formula_prec(f: &Formula, ctx: u8, out: &mut String) {
    let (own, text) = match f {
        Formula::Bot => (P_ATOM, "#false".to_string()),
        _ if f.is_top() => (P_ATOM, "#true".to_string()),
        Formula::Atom(a) => (P_ATOM, print_atom(a)),
        Formula::And(a, b) => {
            let mut s = String::new();
            formula_prec(a, P_AND, &mut s);
            s.push_str(" & ");
            formula_prec(b, P_NOT, &mut s);
            (P_AND, s)
        }
        Formula::Or(a, b) => {
            let mut s = String::new();
            formula_prec(a, P_OR, &mut s);
            s.push_str(" | ");
            formula_prec(b, P_AND, &mut s);
            (P_OR, s)
        }
        Formula::Implies(a, b) => match f.as_negation() {
            Some(g) => {
                let mut s = "not ".to_string();
                formula_prec(g, P_NOT, &mut s);
                (P_NOT, s)
            }
            None => {
                let mut s = String::new();
                formula_prec(a, P_OR, &mut s);
                s.push_str(" -> ");
                formula_prec(b, P_IMPL, &mut s);
                (P_IMPL, s)
            }
        },
    };
    if own < ctx {
        let _ = write!(out, "({text})");
    } else {
        out.push_str(&text);
    }
}

pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    formula_prec(f, P_IMPL, &mut s);
    s
}

pub fn print_assignment(a: &Assignment) -> String {
    if a.is_single() {
        format!("{} := {}", a.target, print_expr(&a.lower))
    } else {
        format!(
            "{} := {}..{}",
            a.target,
            print_expr(&a.lower),
            print_expr(&a.upper)
        )
    }
}

fn print_literal(l: &Literal) -> String {
    if l.negated {
        format!("not {}", print_atom(&l.atom))
    } else {
        print_atom(&l.atom)
    }
}

pub fn print_rule(r: &Rule) -> String {
    let head: Vec<String> = r
        .head
        .iter()
        .map(|h| match h {
            HeadItem::Assign(a) => print_assignment(a),
            HeadItem::Atom(c) => print_atom(c),
        })
        .collect();
    let head = head.join(" ; ");
    if !r.body.is_empty() {
        let body: Vec<String> = r.body.iter().map(print_literal).collect();
        if head.is_empty() {
            return format!(":- {}.", body.join(", "));
        }
        return format!("{head} :- {}.", body.join(", "));
    }
    // A lone atom followed by `.` reads back as a formula; keep the rule marker.
    if r.head.len() == 1 && r.is_htc() || r.head.is_empty() {
        return format!("{head} :- .").trim_start().to_string();
    }
    format!("{head}.")
}

pub fn print_statement(s: &Statement) -> String {
    match s {
        Statement::Formula(f) => format!("{}.", print_formula(f)),
        Statement::Rule(r) => print_rule(r),
    }
}

pub fn print_domain(d: &DomainSpec) -> String {
    let mut groups: BTreeMap<Interval, Vec<&Var>> = BTreeMap::new();
    for (x, iv) in &d.int_vars {
        groups.entry(*iv).or_default().push(x);
    }
    let mut groups: Vec<(Interval, Vec<&Var>)> = groups.into_iter().collect();
    groups.sort_by(|a, b| a.1[0].cmp(b.1[0]));
    let mut out = String::new();
    for (iv, xs) in groups {
        let names: Vec<&str> = xs.iter().map(|x| x.as_str()).collect();
        let _ = writeln!(out, "#int {} {}..{}.", names.join(", "), iv.lo, iv.hi);
    }
    if !d.bool_vars.is_empty() {
        let names: Vec<&str> = d.bool_vars.iter().map(|x| x.as_str()).collect();
        let _ = writeln!(out, "#bool {}.", names.join(", "));
    }
    out
}

pub fn print_theory(t: &Theory) -> String {
    let mut out = print_domain(&t.domain);
    for s in &t.statements {
        out.push_str(&print_statement(s));
        out.push('\n');
    }
    out
}

pub fn print_program(p: &LcProgram) -> String {
    print_theory(&p.to_theory())
}
