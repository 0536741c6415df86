use super::*;
use crate::Result;

/// Range of values a linear term can take under the domain, if it can be defined.
pub fn term_range(t: &LinearTerm, domain: &DomainSpec) -> Option<Interval> {
    match t {
        LinearTerm::Const(d) => Some(Interval { lo: *d, hi: *d }),
        LinearTerm::Scaled(k, x) => domain.interval(x.as_str()).map(|iv| {
            let (a, b) = (k * iv.lo, k * iv.hi);
            Interval {
                lo: a.min(b),
                hi: a.max(b),
            }
        }),
    }
}

fn and_unless_top(phi: &Formula, psi: Formula) -> Formula {
    if phi.is_top() {
        psi
    } else {
        Formula::and(phi.clone(), psi)
    }
}

fn def_term(t: &LinearTerm) -> Formula {
    Formula::Atom(Atom::Def(LinearExpr::term(t.clone())))
}

/// `sum{λ1:φ1; ...}` becomes `(λ1|0: φ1 ∧ def(λ1)) + ...`; the empty sum is `0`.
pub fn desugar_sum(agg: &Aggregate, negated: bool) -> Vec<Summand> {
    debug_assert!(matches!(
        agg.function,
        AggregateFunction::Sum | AggregateFunction::Count
    ));
    if agg.elements.is_empty() {
        return vec![Summand::Linear(LinearTerm::Const(0))];
    }
    agg.elements
        .iter()
        .map(|e| {
            let then_term = if negated { e.term.negated() } else { e.term.clone() };
            Summand::Conditional(ConditionalTerm {
                then_term,
                else_term: LinearTerm::Const(0),
                condition: and_unless_top(&e.condition, def_term(&e.term)),
            })
        })
        .collect()
}

/// `count{φ1; ...}` becomes `sum{1:φ1; ...}`.
pub fn desugar_count(agg: &Aggregate) -> Aggregate {
    Aggregate {
        function: AggregateFunction::Sum,
        elements: agg
            .elements
            .iter()
            .map(|e| AggregateElement {
                term: LinearTerm::Const(1),
                condition: e.condition.clone(),
            })
            .collect(),
    }
}

fn count_atom(conditions: Vec<Formula>, rel: Relation, bound: i64) -> Formula {
    let agg = Aggregate {
        function: AggregateFunction::Count,
        elements: conditions
            .into_iter()
            .map(|condition| AggregateElement {
                term: LinearTerm::Const(1),
                condition,
            })
            .collect(),
    };
    Formula::Atom(Atom::cmp(
        LinearExpr(vec![Summand::Aggregate {
            negated: false,
            aggregate: agg,
        }]),
        rel,
        LinearExpr::constant(bound),
    ))
}

/// Replaces a `min`/`max` aggregate by a fresh variable `m` constrained by
///
/// * `def(m) ↔ count{φi ∧ def(si)} ≥ 1`
/// * `def(m) → count{φi ∧ si < m} ≤ 0 ∧ count{φi ∧ si ≤ m} ≥ 1` (min)
/// * `def(m) → count{φi ∧ si > m} ≤ 0 ∧ count{φi ∧ si ≥ m} ≥ 1` (max)
///
/// The fresh variable is declared in `domain` over the hull of the element ranges.
pub fn desugar_minmax(
    agg: &Aggregate,
    fresh: &mut FreshNames,
    domain: &mut DomainSpec,
) -> Result<(Var, Vec<Formula>)> {
    let (kind, strict, weak) = match agg.function {
        AggregateFunction::Min => (FreshKind::Min, Relation::Lt, Relation::Le),
        AggregateFunction::Max => (FreshKind::Max, Relation::Gt, Relation::Ge),
        _ => panic!("desugar_minmax on a {} aggregate", agg.function.keyword()),
    };
    let m = fresh.next(kind)?;
    let range = agg
        .elements
        .iter()
        .filter_map(|e| term_range(&e.term, domain))
        .reduce(|a, b| a.hull(&b))
        .unwrap_or(Interval { lo: 0, hi: 0 });
    domain.declare_int(m.clone(), range)?;

    let mv = LinearExpr::var(&m);
    let def_m = Formula::Atom(Atom::Def(mv.clone()));
    let some_defined = count_atom(
        agg.elements
            .iter()
            .map(|e| and_unless_top(&e.condition, def_term(&e.term)))
            .collect(),
        Relation::Ge,
        1,
    );
    let bound = |rel: Relation| -> Vec<Formula> {
        agg.elements
            .iter()
            .map(|e| {
                let c = Formula::Atom(Atom::cmp(LinearExpr::term(e.term.clone()), rel, mv.clone()));
                and_unless_top(&e.condition, c)
            })
            .collect()
    };
    let alpha = count_atom(bound(strict), Relation::Le, 0);
    let beta = count_atom(bound(weak), Relation::Ge, 1);
    Ok((
        m,
        vec![
            Formula::iff(def_m.clone(), some_defined),
            Formula::implies(def_m, Formula::and(alpha, beta)),
        ],
    ))
}

fn replace_minmax(
    e: &mut LinearExpr,
    fresh: &mut FreshNames,
    domain: &mut DomainSpec,
    side: &mut Vec<Formula>,
    err: &mut Option<crate::Error>,
) {
    for s in &mut e.0 {
        if let Summand::Aggregate { negated, aggregate } = s {
            if matches!(
                aggregate.function,
                AggregateFunction::Min | AggregateFunction::Max
            ) {
                match desugar_minmax(aggregate, fresh, domain) {
                    Ok((m, fs)) => {
                        side.extend(fs);
                        let k = if *negated { -1 } else { 1 };
                        *s = Summand::Linear(LinearTerm::Scaled(k, m));
                    }
                    Err(e) => {
                        err.get_or_insert(e);
                    }
                }
            }
        }
    }
}

fn replace_sums(e: &mut LinearExpr) {
    if !e.has_aggregates() {
        return;
    }
    let mut out = Vec::with_capacity(e.0.len());
    for s in e.0.drain(..) {
        match s {
            Summand::Aggregate { negated, aggregate } => {
                let agg = match aggregate.function {
                    AggregateFunction::Count => desugar_count(&aggregate),
                    AggregateFunction::Sum => aggregate,
                    f => panic!("{} aggregate left after min/max elimination", f.keyword()),
                };
                out.extend(desugar_sum(&agg, negated));
            }
            other => out.push(other),
        }
    }
    e.0 = out;
}

/// Removes every aggregate: min/max first, then count, then sum.
/// Fresh variables and their side formulas are added to the result.
pub fn desugar_aggregates(theory: &Theory) -> Result<Theory> {
    if !theory.has_aggregates() {
        return Ok(theory.clone());
    }
    let mut out = theory.clone();
    let mut fresh = FreshNames::for_domain(&theory.domain);
    let mut side = Vec::new();
    let mut err = None;
    for s in &mut out.statements {
        s.visit_exprs_mut(&mut |e| {
            replace_minmax(e, &mut fresh, &mut out.domain, &mut side, &mut err)
        });
    }
    if let Some(e) = err {
        return Err(e);
    }
    out.statements
        .extend(side.into_iter().map(Statement::Formula));
    for s in &mut out.statements {
        s.visit_exprs_mut(&mut replace_sums);
    }
    Ok(out)
}

fn le(a: &LinearExpr, b: &LinearExpr) -> Formula {
    Formula::Atom(Atom::le(a.clone(), b.clone()))
}

fn lt(a: &LinearExpr, b: &LinearExpr) -> Formula {
    Formula::and(le(a, b), Formula::negation(le(b, a)))
}

fn desugar_expr_conditions(e: &LinearExpr) -> LinearExpr {
    LinearExpr(
        e.0.iter()
            .map(|s| match s {
                Summand::Conditional(c) => Summand::Conditional(ConditionalTerm {
                    then_term: c.then_term.clone(),
                    else_term: c.else_term.clone(),
                    condition: desugar_comparisons(&c.condition),
                }),
                other => other.clone(),
            })
            .collect(),
    )
}

/// Rewrites `<`, `=`, `!=`, `>=`, `>` and `def` into `≤`, `∧`, `∨` and `¬`.
pub fn desugar_comparisons(f: &Formula) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Atom(a) => match a {
            Atom::Bool(_) => f.clone(),
            Atom::Def(e) => {
                let e = desugar_expr_conditions(e);
                le(&e, &e)
            }
            Atom::Compare(c) => {
                let l = desugar_expr_conditions(&c.lhs);
                let r = desugar_expr_conditions(&c.rhs);
                match c.rel {
                    Relation::Le => le(&l, &r),
                    Relation::Ge => le(&r, &l),
                    Relation::Lt => lt(&l, &r),
                    Relation::Gt => lt(&r, &l),
                    Relation::Eq => Formula::and(le(&l, &r), le(&r, &l)),
                    Relation::Ne => Formula::or(lt(&l, &r), lt(&r, &l)),
                }
            }
        },
        Formula::And(a, b) => Formula::and(desugar_comparisons(a), desugar_comparisons(b)),
        Formula::Or(a, b) => Formula::or(desugar_comparisons(a), desugar_comparisons(b)),
        Formula::Implies(a, b) => {
            Formula::implies(desugar_comparisons(a), desugar_comparisons(b))
        }
    }
}

/// Aggregates removed, formula comparisons reduced to `≤`.
/// Rule atoms keep their relation so that rules stay rules.
pub fn desugar(theory: &Theory) -> Result<Theory> {
    let mut out = desugar_aggregates(theory)?;
    for s in &mut out.statements {
        match s {
            Statement::Formula(f) => *f = desugar_comparisons(f),
            Statement::Rule(r) => r.visit_exprs_mut(&mut |e| *e = desugar_expr_conditions(e)),
        }
    }
    Ok(out)
}
