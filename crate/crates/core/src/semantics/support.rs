use super::eval::{denotes, eval_linear_expr, sat};
use super::{Valuation, Value};
use crate::syntax::*;
use crate::transforms::assignment_formula;

fn body_holds(t: &Valuation, r: &Rule) -> bool {
    sat(t, t, &r.body_formula())
}

fn without_sums(rules: &[Rule]) -> Vec<Rule> {
    let theory = Theory::new(
        DomainSpec::new(),
        rules.iter().cloned().map(Statement::Rule).collect(),
    );
    if !theory.has_aggregates() {
        return rules.to_vec();
    }
    let d = desugar_aggregates(&theory).expect("sum and count need no fresh variables");
    assert_eq!(
        d.statements.len(),
        rules.len(),
        "min/max aggregates must be eliminated before checking support"
    );
    d.rules().cloned().collect()
}

fn value_supported(t: &Valuation, x: &Var, d: i64, rule: &Rule, a: &Assignment) -> bool {
    if &a.target != x {
        return false;
    }
    let (Some(lo), Some(hi)) = (eval_linear_expr(t, &a.lower), eval_linear_expr(t, &a.upper)) else {
        return false;
    };
    lo <= d
        && d <= hi
        && rule
            .assignments()
            .filter(|b| &b.target != x)
            .all(|b| !sat(t, t, &assignment_formula(b)))
        && body_holds(t, rule)
}

/// Every defined variable of `t` has a value supported by some rule of the LC program:
/// an assignment `x := α..β` with `t(α) ≤ t(x) ≤ t(β)`, no head assignment to another
/// variable satisfied, and the body satisfied.
pub fn is_supported(t: &Valuation, program: &LcProgram) -> bool {
    let rules = without_sums(&program.rules);
    t.pairs().all(|(x, v)| match v {
        Value::True => false,
        Value::Int(d) => rules
            .iter()
            .any(|r| r.assignments().any(|a| value_supported(t, x, d, r, a))),
    })
}

/// Support for rules with constraint-atom heads: some head atom `c` mentions `x`,
/// every head atom not mentioning `x` is false, and the body holds.
pub fn is_supported_htc(t: &Valuation, rules: &[Rule]) -> bool {
    let rules = without_sums(rules);
    t.pairs().all(|(x, _)| {
        rules.iter().any(|r| {
            let mut atoms = r.head_atoms();
            atoms.any(|c| c.free_vars().contains(x))
                && r
                    .head_atoms()
                    .filter(|c| !c.free_vars().contains(x))
                    .all(|c| !denotes(t, c))
                && body_holds(t, r)
        })
    })
}
