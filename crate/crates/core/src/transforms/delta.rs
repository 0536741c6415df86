use crate::syntax::*;
use crate::{Error, Result};

fn eq(a: LinearExpr, b: LinearExpr) -> Formula {
    Formula::Atom(Atom::cmp(a, Relation::Eq, b))
}

fn def(e: LinearExpr) -> Formula {
    Formula::Atom(Atom::Def(e))
}

/// The five implications tying a fresh `x` to `τ = (s|s':φ)`:
///
/// 1. `φ ∧ def(s) → x = s`
/// 2. `¬φ ∧ def(s') → x = s'`
/// 3. `φ ∧ def(x) → x = s`
/// 4. `¬φ ∧ def(x) → x = s'`
/// 5. `def(x) → φ ∨ ¬φ`
pub fn delta(tau: &ConditionalTerm, x: &Var) -> [Formula; 5] {
    let phi = tau.condition.clone();
    let not_phi = Formula::negation(phi.clone());
    let xv = LinearExpr::var(x);
    let s = LinearExpr::term(tau.then_term.clone());
    let s2 = LinearExpr::term(tau.else_term.clone());
    [
        Formula::implies(Formula::and(phi.clone(), def(s.clone())), eq(xv.clone(), s.clone())),
        Formula::implies(
            Formula::and(not_phi.clone(), def(s2.clone())),
            eq(xv.clone(), s2.clone()),
        ),
        Formula::implies(Formula::and(phi.clone(), def(xv.clone())), eq(xv.clone(), s)),
        Formula::implies(Formula::and(not_phi.clone(), def(xv.clone())), eq(xv.clone(), s2)),
        Formula::implies(def(xv), Formula::or(phi, not_phi)),
    ]
}

/// Result of replacing conditional terms by fresh variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaResult {
    /// The input with each conditional term replaced; its domain declares the fresh variables.
    pub rewritten: Theory,
    /// `δ(τ)` for every distinct conditional term.
    pub side: Vec<Formula>,
    /// Each distinct term with its fresh variable, in order of first occurrence.
    pub mapping: Vec<(ConditionalTerm, Var)>,
}

impl DeltaResult {
    /// `Γ[τ/x_τ] ∪ δ(τ)` as a single theory.
    pub fn into_theory(self) -> Theory {
        let mut t = self.rewritten;
        t.statements
            .extend(self.side.into_iter().map(Statement::Formula));
        t
    }

    pub fn fresh_vars(&self) -> Vec<Var> {
        self.mapping.iter().map(|(_, x)| x.clone()).collect()
    }
}

/// Range of `x_τ`: the hull of the ranges of both branches, `0..0` if neither can be defined.
pub fn fresh_interval(tau: &ConditionalTerm, domain: &DomainSpec) -> Interval {
    [&tau.then_term, &tau.else_term]
        .into_iter()
        .filter_map(|t| term_range(t, domain))
        .reduce(|a, b| a.hull(&b))
        .unwrap_or(Interval { lo: 0, hi: 0 })
}

/// Replaces every conditional term by a fresh variable and collects the matching `δ(τ)`.
/// Terms are numbered left to right; repeated occurrences of the same term share one
/// variable. Aggregates must already be desugared.
pub fn eliminate_conditionals(theory: &Theory) -> Result<DeltaResult> {
    if theory.has_aggregates() {
        return Err(Error::NotDesugared(
            "aggregates must be desugared before eliminating conditional terms".into(),
        ));
    }
    let mut rewritten = theory.clone();
    let mut fresh = FreshNames::for_domain(&theory.domain);
    let mut side = Vec::new();
    let mut mapping = Vec::new();
    let mut err = None;
    let domain = &mut rewritten.domain;
    for s in &mut rewritten.statements {
        s.visit_exprs_mut(&mut |e| {
            for summand in &mut e.0 {
                if let Summand::Conditional(tau) = summand {
                    if let Some((_, x)) = mapping.iter().find(|(t, _)| t == tau) {
                        *summand = Summand::Linear(LinearTerm::var(x));
                        continue;
                    }
                    let x = match fresh.next(FreshKind::Conditional) {
                        Ok(x) => x,
                        Err(e) => {
                            err.get_or_insert(e);
                            return;
                        }
                    };
                    let iv = fresh_interval(tau, domain);
                    if let Err(e) = domain.declare_int(x.clone(), iv) {
                        err.get_or_insert(e);
                        return;
                    }
                    side.extend(delta(tau, &x));
                    mapping.push((tau.clone(), x.clone()));
                    *summand = Summand::Linear(LinearTerm::var(&x));
                }
            }
        });
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(DeltaResult {
        rewritten,
        side,
        mapping,
    })
}
