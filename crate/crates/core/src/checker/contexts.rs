use std::collections::BTreeSet;

use crate::syntax::*;

pub const DEFAULT_CONTEXT_CAP: usize = 64;

/// A finite family of context theories over `x`: the empty theory, every fact `v = d`
/// and `p`, every rule `a ← b` between distinct Booleans, and pairwise unions of these,
/// truncated to `cap` members.
pub fn context_family(domain: &DomainSpec, x: &BTreeSet<Var>, cap: usize) -> Vec<Theory> {
    let d = domain.restrict(x);
    let mut singles: Vec<Formula> = Vec::new();
    for (v, iv) in &d.int_vars {
        for k in iv.values() {
            singles.push(Formula::Atom(Atom::cmp(
                LinearExpr::var(v),
                Relation::Eq,
                LinearExpr::constant(k),
            )));
        }
    }
    for p in &d.bool_vars {
        singles.push(Formula::boolean(p));
    }
    for a in &d.bool_vars {
        for b in &d.bool_vars {
            if a != b {
                singles.push(Formula::implies(Formula::boolean(b), Formula::boolean(a)));
            }
        }
    }
    let mut out = vec![Theory::new(d.clone(), Vec::new())];
    out.extend(
        singles
            .iter()
            .map(|f| Theory::from_formulas(d.clone(), vec![f.clone()])),
    );
    'pairs: for i in 0..singles.len() {
        for j in i + 1..singles.len() {
            if out.len() >= cap {
                break 'pairs;
            }
            out.push(Theory::from_formulas(
                d.clone(),
                vec![singles[i].clone(), singles[j].clone()],
            ));
        }
    }
    out.truncate(cap);
    out
}
