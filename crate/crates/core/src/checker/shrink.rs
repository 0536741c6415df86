use crate::syntax::*;

/// Formulas obtained by replacing one binary connective with one of its children.
fn formula_shrinks(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    match f {
        Formula::Bot | Formula::Atom(_) => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            if !f.is_top() {
                out.push((**a).clone());
                if **b != Formula::Bot {
                    out.push((**b).clone());
                }
            }
            let rebuild = |x: Formula, y: Formula| match f {
                Formula::And(..) => Formula::and(x, y),
                Formula::Or(..) => Formula::or(x, y),
                _ => Formula::implies(x, y),
            };
            for a2 in formula_shrinks(a) {
                out.push(rebuild(a2, (**b).clone()));
            }
            for b2 in formula_shrinks(b) {
                out.push(rebuild((**a).clone(), b2));
            }
        }
    }
    out
}

fn rule_shrinks(r: &Rule) -> Vec<Rule> {
    let mut out = Vec::new();
    for i in 0..r.body.len() {
        let mut s = r.clone();
        s.body.remove(i);
        out.push(s);
    }
    for i in 0..r.head.len() {
        let mut s = r.clone();
        s.head.remove(i);
        out.push(s);
    }
    out
}

fn candidates(t: &Theory) -> Vec<Theory> {
    let mut out = Vec::new();
    if t.statements.len() > 1 {
        for i in 0..t.statements.len() {
            let mut s = t.clone();
            s.statements.remove(i);
            out.push(s);
        }
    }
    for (i, st) in t.statements.iter().enumerate() {
        let variants: Vec<Statement> = match st {
            Statement::Formula(f) => formula_shrinks(f).into_iter().map(Statement::Formula).collect(),
            Statement::Rule(r) => rule_shrinks(r).into_iter().map(Statement::Rule).collect(),
        };
        for v in variants {
            let mut s = t.clone();
            s.statements[i] = v;
            out.push(s);
        }
    }
    out
}

fn drop_unused_vars(t: &Theory) -> Theory {
    let used = t.free_vars();
    Theory::new(t.domain.restrict(&used), t.statements.clone())
}

/// Greedy shrinking: repeatedly take the first smaller theory that still fails,
/// then drop undeclared-but-unused variables if the failure survives.
pub fn shrink(theory: &Theory, fails: &dyn Fn(&Theory) -> bool) -> Theory {
    let mut current = theory.clone();
    'outer: loop {
        for c in candidates(&current) {
            if fails(&c) {
                current = c;
                continue 'outer;
            }
        }
        break;
    }
    let trimmed = drop_unused_vars(&current);
    if trimmed != current && fails(&trimmed) {
        trimmed
    } else {
        current
    }
}
