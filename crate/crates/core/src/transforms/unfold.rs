use super::assign::{def_atoms, def_of, phi, phi_atoms};
use crate::syntax::*;
use crate::{Error, Result};

pub const DEFAULT_MAX_HEAD_ASSIGNMENTS: usize = 10;

fn check_size(rule: &Rule, max: usize) -> Result<Vec<&Assignment>> {
    let assigns: Vec<&Assignment> = rule.assignments().collect();
    if assigns.len() > max {
        return Err(Error::TooManyHeadAssignments {
            count: assigns.len(),
            max,
        });
    }
    Ok(assigns)
}

/// Subsets of `0..n` as bit masks, from the full set down to the empty one.
fn subsets(n: usize) -> impl Iterator<Item = u32> {
    (0..(1u32 << n)).rev()
}

/// The implications `Ψ_Δ`, one per `Δ ⊆ H(r)`:
/// `⋁_{A∈Δ} Φ(A) ← B(r) ∧ ⋀_{A∈Δ} def(A) ∧ ⋀_{A'∉Δ} ¬Φ(A')`.
/// Head atoms of the rule, if any, stay in every head.
pub fn unfolding_implications(rule: &Rule, max_head: usize) -> Result<Vec<Formula>> {
    let assigns = check_size(rule, max_head)?;
    let atoms: Vec<Formula> = rule.head_atoms().cloned().map(Formula::Atom).collect();
    let mut out = Vec::with_capacity(1 << assigns.len());
    for mask in subsets(assigns.len()) {
        let inside = |i: usize| mask >> i & 1 == 1;
        let head = Formula::disj(
            (0..assigns.len())
                .filter(|&i| inside(i))
                .map(|i| phi(assigns[i]))
                .chain(atoms.iter().cloned()),
        );
        let body = Formula::conj(
            rule.body
                .iter()
                .map(Literal::to_formula)
                .chain((0..assigns.len()).filter(|&i| inside(i)).map(|i| def_of(assigns[i])))
                .chain(
                    (0..assigns.len())
                        .filter(|&i| !inside(i))
                        .map(|i| Formula::negation(phi(assigns[i]))),
                ),
        );
        out.push(Formula::implies(body, head));
    }
    Ok(out)
}

/// Cartesian product of choice lists.
fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

/// Unfolds an LC rule into rules whose heads are disjunctions of atoms and whose bodies
/// are conjunctions of literals. Conjunctive heads are distributed into separate rules,
/// and each negated conjunction `¬(a ∧ b)` in a body becomes `¬a ∨ ¬b`, split the same way.
pub fn unfold_rule_with(rule: &Rule, max_head: usize) -> Result<Vec<Rule>> {
    let assigns = check_size(rule, max_head)?;
    if assigns.is_empty() {
        return Ok(vec![rule.clone()]);
    }
    let atoms: Vec<HeadItem> = rule.head_atoms().cloned().map(HeadItem::Atom).collect();
    let pairs: Vec<(Atom, Atom)> = assigns.iter().map(|a| phi_atoms(a)).collect();
    let mut out = Vec::new();
    for mask in subsets(assigns.len()) {
        let inside = |i: usize| mask >> i & 1 == 1;
        let head_choices: Vec<Vec<Atom>> = (0..assigns.len())
            .filter(|&i| inside(i))
            .map(|i| vec![pairs[i].0.clone(), pairs[i].1.clone()])
            .collect();
        let body_choices: Vec<Vec<Atom>> = (0..assigns.len())
            .filter(|&i| !inside(i))
            .map(|i| vec![pairs[i].0.clone(), pairs[i].1.clone()])
            .collect();
        let mut fixed_body = rule.body.clone();
        for i in (0..assigns.len()).filter(|&i| inside(i)) {
            fixed_body.extend(def_atoms(assigns[i]).into_iter().map(Literal::pos));
        }
        let bodies = product(&body_choices);
        let heads = product(&head_choices);
        for b in &bodies {
            let mut body = fixed_body.clone();
            body.extend(b.iter().cloned().map(Literal::neg));
            for h in &heads {
                let mut head: Vec<HeadItem> = h.iter().cloned().map(HeadItem::Atom).collect();
                head.extend(atoms.iter().cloned());
                out.push(Rule::new(head, body.clone()));
            }
        }
    }
    Ok(out)
}

/// [`unfold_rule_with`] under the default head-size bound.
pub fn unfold_rule(rule: &Rule) -> Result<Vec<Rule>> {
    unfold_rule_with(rule, DEFAULT_MAX_HEAD_ASSIGNMENTS)
}

/// Unfolds every rule of a theory; formulas are kept.
pub fn unfold_theory(theory: &Theory) -> Result<Theory> {
    let mut statements = Vec::new();
    for s in &theory.statements {
        match s {
            Statement::Rule(r) => statements.extend(unfold_rule(r)?.into_iter().map(Statement::Rule)),
            other => statements.push(other.clone()),
        }
    }
    Ok(Theory::new(theory.domain.clone(), statements))
}
