use crate::syntax::*;

fn negate(s: &Summand) -> Summand {
    match s {
        Summand::Linear(t) => Summand::Linear(t.negated()),
        Summand::Conditional(c) => Summand::Conditional(ConditionalTerm {
            then_term: c.then_term.negated(),
            else_term: c.else_term.negated(),
            condition: c.condition.clone(),
        }),
        Summand::Aggregate { negated, aggregate } => Summand::Aggregate {
            negated: !negated,
            aggregate: aggregate.clone(),
        },
        Summand::Undefined => Summand::Undefined,
    }
}

fn split(e: &LinearExpr) -> (Vec<Summand>, i64) {
    let mut rest = Vec::new();
    let mut c = 0i64;
    for s in &e.0 {
        match s {
            Summand::Linear(LinearTerm::Const(d)) => c += d,
            other => rest.push(other.clone()),
        }
    }
    (rest, c)
}

/// `lhs ≤ rhs` in normal form: non-constant summands on the left, one constant on the right.
/// Coefficients are kept as written, zero ones included.
pub fn normalize_leq(lhs: &LinearExpr, rhs: &LinearExpr) -> Comparison {
    if let [Summand::Linear(LinearTerm::Const(_))] = rhs.0.as_slice() {
        return Comparison::new(lhs.clone(), Relation::Le, rhs.clone());
    }
    let (mut left, lc) = split(lhs);
    let (right, rc) = split(rhs);
    left.extend(right.iter().map(negate));
    if left.is_empty() {
        left.push(Summand::Linear(LinearTerm::Const(0)));
    }
    Comparison::new(LinearExpr(left), Relation::Le, LinearExpr::constant(rc - lc))
}

/// Normal form of a comparison that is a conjunction of `≤` constraints:
/// `≤` and `≥` give one constraint, `=` gives two. Other relations give `None`.
pub fn normalize_constraint(c: &Comparison) -> Option<Vec<Comparison>> {
    match c.rel {
        Relation::Le => Some(vec![normalize_leq(&c.lhs, &c.rhs)]),
        Relation::Ge => Some(vec![normalize_leq(&c.rhs, &c.lhs)]),
        Relation::Eq => Some(normalize_equality(&c.lhs, &c.rhs).to_vec()),
        Relation::Lt | Relation::Gt | Relation::Ne => None,
    }
}

/// `α = β` as the pair `α ≤ β`, `β ≤ α`, both in normal form.
pub fn normalize_equality(lhs: &LinearExpr, rhs: &LinearExpr) -> [Comparison; 2] {
    [normalize_leq(lhs, rhs), normalize_leq(rhs, lhs)]
}
