use super::{Interpretation, Valuation, Value};
use crate::syntax::*;

fn term_value(v: &Valuation, t: &LinearTerm) -> Option<i128> {
    match t {
        LinearTerm::Const(d) => Some(*d as i128),
        LinearTerm::Scaled(k, x) => match v.get(x.as_str()) {
            Some(Value::Int(n)) => Some(*k as i128 * n as i128),
            _ => None,
        },
    }
}

/// `eval⟨h,t⟩(τ)` for a conditional term: `None` stands for `u`.
fn select<'a>(h: &Valuation, t: &Valuation, c: &'a ConditionalTerm) -> Option<&'a LinearTerm> {
    if sat(h, t, &c.condition) {
        Some(&c.then_term)
    } else if !sat(t, t, &c.condition) {
        Some(&c.else_term)
    } else {
        None
    }
}

/// `h(eval⟨h,t⟩(α))`
fn expr_value(h: &Valuation, t: &Valuation, e: &LinearExpr) -> Option<i128> {
    let mut total: i128 = 0;
    for s in &e.0 {
        total += match s {
            Summand::Linear(l) => term_value(h, l)?,
            Summand::Conditional(c) => term_value(h, select(h, t, c)?)?,
            Summand::Undefined => return None,
            Summand::Aggregate { aggregate, .. } => panic!(
                "{} aggregate reached evaluation; desugar first",
                aggregate.function.keyword()
            ),
        };
    }
    Some(total)
}

fn le(h: &Valuation, t: &Valuation, l: &LinearExpr, r: &LinearExpr) -> bool {
    match (expr_value(h, t, l), expr_value(h, t, r)) {
        (Some(a), Some(b)) => a <= b,
        _ => false,
    }
}

/// `l ≤ r ∧ ¬(r ≤ l)`
fn lt(h: &Valuation, t: &Valuation, l: &LinearExpr, r: &LinearExpr) -> bool {
    le(h, t, l, r) && !le(h, t, r, l) && !le(t, t, r, l)
}

fn atom_holds(h: &Valuation, t: &Valuation, a: &Atom) -> bool {
    match a {
        Atom::Bool(p) => h.get(p.as_str()) == Some(Value::True),
        Atom::Def(e) => le(h, t, e, e),
        Atom::Compare(c) => {
            let (l, r) = (&c.lhs, &c.rhs);
            match c.rel {
                Relation::Le => le(h, t, l, r),
                Relation::Ge => le(h, t, r, l),
                Relation::Lt => lt(h, t, l, r),
                Relation::Gt => lt(h, t, r, l),
                Relation::Eq => le(h, t, l, r) && le(h, t, r, l),
                Relation::Ne => lt(h, t, l, r) || lt(h, t, r, l),
            }
        }
    }
}

/// `⟨h,t⟩ ⊨ φ`, assuming `h ⊆ t`.
pub(crate) fn sat(h: &Valuation, t: &Valuation, f: &Formula) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Atom(a) => atom_holds(h, t, a),
        Formula::And(a, b) => sat(h, t, a) && sat(h, t, b),
        Formula::Or(a, b) => sat(h, t, a) || sat(h, t, b),
        Formula::Implies(a, b) => {
            let at_t = !sat(t, t, a) || sat(t, t, b);
            at_t && (std::ptr::eq(h, t) || !sat(h, t, a) || sat(h, t, b))
        }
    }
}

pub(crate) fn sat_all(h: &Valuation, t: &Valuation, fs: &[Formula]) -> bool {
    fs.iter().all(|f| sat(h, t, f))
}

/// `⟨h,t⟩ ⊨ φ`
pub fn satisfies(i: &Interpretation, f: &Formula) -> bool {
    if i.is_total() {
        sat(i.t(), i.t(), f)
    } else {
        sat(i.h(), i.t(), f)
    }
}

/// `eval⟨h,t⟩(τ)`: the selected branch, or `None` for `u`.
pub fn eval_term(i: &Interpretation, c: &ConditionalTerm) -> Option<LinearTerm> {
    select(i.h(), i.t(), c).cloned()
}

/// `eval⟨h,t⟩` on a single summand. Linear terms and `u` are returned unchanged.
pub fn eval_summand(i: &Interpretation, s: &Summand) -> Summand {
    match s {
        Summand::Conditional(c) => match eval_term(i, c) {
            Some(l) => Summand::Linear(l),
            None => Summand::Undefined,
        },
        Summand::Aggregate { .. } => panic!("aggregate reached evaluation; desugar first"),
        other => other.clone(),
    }
}

pub fn eval_expr(i: &Interpretation, e: &LinearExpr) -> LinearExpr {
    LinearExpr(e.0.iter().map(|s| eval_summand(i, s)).collect())
}

/// `eval⟨h,t⟩(c)`: the condition-free atom obtained by evaluating every conditional term.
pub fn eval_atom(i: &Interpretation, a: &Atom) -> Atom {
    match a {
        Atom::Bool(_) => a.clone(),
        Atom::Def(e) => Atom::Def(eval_expr(i, e)),
        Atom::Compare(c) => Atom::Compare(Comparison::new(
            eval_expr(i, &c.lhs),
            c.rel,
            eval_expr(i, &c.rhs),
        )),
    }
}

/// `v(α)`. Conditional terms are first evaluated at `⟨v,v⟩`.
/// `None` is `u`; so is a value outside the 64-bit range.
pub fn eval_linear_expr(v: &Valuation, e: &LinearExpr) -> Option<i64> {
    expr_value(v, v, e).and_then(|n| i64::try_from(n).ok())
}

/// `v ∈ ⟦c⟧`. Conditional terms are first evaluated at `⟨v,v⟩`.
pub fn denotes(v: &Valuation, a: &Atom) -> bool {
    atom_holds(v, v, a)
}
