use crate::syntax::*;

/// `Φ(x := α..β) = α ≤ x ∧ x ≤ β`
pub fn phi(a: &Assignment) -> Formula {
    let (lo, hi) = phi_atoms(a);
    Formula::and(Formula::Atom(lo), Formula::Atom(hi))
}

pub(crate) fn phi_atoms(a: &Assignment) -> (Atom, Atom) {
    let x = LinearExpr::var(&a.target);
    (
        Atom::le(a.lower.clone(), x.clone()),
        Atom::le(x, a.upper.clone()),
    )
}

/// The atoms of `def(A)`: `def(α)`, plus `def(β)` when the bounds differ.
pub(crate) fn def_atoms(a: &Assignment) -> Vec<Atom> {
    if a.is_single() {
        vec![Atom::Def(a.lower.clone())]
    } else {
        vec![Atom::Def(a.lower.clone()), Atom::Def(a.upper.clone())]
    }
}

/// `def(x := α..β) = def(α) ∧ def(β)`
pub fn def_of(a: &Assignment) -> Formula {
    Formula::conj(def_atoms(a).into_iter().map(Formula::Atom))
}

/// `¬¬def(A) ∧ (def(A) → Φ(A))`
pub fn assignment_formula(a: &Assignment) -> Formula {
    let d = def_of(a);
    Formula::and(
        Formula::negation(Formula::negation(d.clone())),
        Formula::implies(d, phi(a)),
    )
}
