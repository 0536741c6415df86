use std::collections::BTreeSet;

use super::*;

/// Variables occurring in a syntactic object, including inside conditions.
pub trait FreeVars {
    fn collect_vars(&self, out: &mut BTreeSet<Var>);

    fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

impl FreeVars for LinearTerm {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        if let LinearTerm::Scaled(_, x) = self {
            out.insert(x.clone());
        }
    }
}

impl FreeVars for Summand {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Summand::Linear(t) => t.collect_vars(out),
            Summand::Conditional(c) => {
                c.then_term.collect_vars(out);
                c.else_term.collect_vars(out);
                c.condition.collect_vars(out);
            }
            Summand::Aggregate { aggregate, .. } => {
                for e in &aggregate.elements {
                    e.term.collect_vars(out);
                    e.condition.collect_vars(out);
                }
            }
            Summand::Undefined => {}
        }
    }
}

impl FreeVars for LinearExpr {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.0.iter().for_each(|s| s.collect_vars(out));
    }
}

impl FreeVars for Atom {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Atom::Bool(p) => {
                out.insert(p.clone());
            }
            _ => self.exprs().into_iter().for_each(|e| e.collect_vars(out)),
        }
    }
}

impl FreeVars for Formula {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl FreeVars for Assignment {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        out.insert(self.target.clone());
        self.lower.collect_vars(out);
        self.upper.collect_vars(out);
    }
}

impl FreeVars for Rule {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        for h in &self.head {
            match h {
                HeadItem::Assign(a) => a.collect_vars(out),
                HeadItem::Atom(a) => a.collect_vars(out),
            }
        }
        for l in &self.body {
            l.atom.collect_vars(out);
        }
    }
}

impl FreeVars for Statement {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Statement::Formula(f) => f.collect_vars(out),
            Statement::Rule(r) => r.collect_vars(out),
        }
    }
}

impl FreeVars for Theory {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.statements.iter().for_each(|s| s.collect_vars(out));
    }
}

impl FreeVars for LcProgram {
    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.rules.iter().for_each(|r| r.collect_vars(out));
    }
}
