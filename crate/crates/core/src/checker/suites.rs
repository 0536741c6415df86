use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::contexts::{context_family, DEFAULT_CONTEXT_CAP};
use super::equiv::{equivalent, strong_equiv_sampled, EquivReport};
use super::gen::{corpus_domain, delta_domain, Gen, MAX_CONDITIONALS};
use super::shrink::shrink;
use crate::parser::{print_formula, print_theory};
use crate::semantics::{
    denotes, enumerate_valuations, eval_linear_expr, eval_term, sat, Compiled, Interpretation,
    Signature, Solver, Valuation, Value,
};
use crate::syntax::*;
use crate::transforms::{
    assignment_formula, def_of, eliminate_conditionals, phi, unfold_rule, unfolding_implications,
    DEFAULT_MAX_HEAD_ASSIGNMENTS,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Persistence,
    Negation,
    TermPersistence,
    DenotationLaws,
    Supportedness,
    Unfolding,
    DeltaFaithfulness,
    MinMax,
    Assignment,
    Tautology,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Persistence,
        Suite::Negation,
        Suite::TermPersistence,
        Suite::DenotationLaws,
        Suite::Supportedness,
        Suite::Unfolding,
        Suite::DeltaFaithfulness,
        Suite::MinMax,
        Suite::Assignment,
        Suite::Tautology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Persistence => "persistence",
            Suite::Negation => "negation",
            Suite::TermPersistence => "term-persistence",
            Suite::DenotationLaws => "denotation-laws",
            Suite::Supportedness => "supportedness",
            Suite::Unfolding => "unfolding",
            Suite::DeltaFaithfulness => "delta-faithfulness",
            Suite::MinMax => "min-max",
            Suite::Assignment => "assignment",
            Suite::Tautology => "tautology",
        }
    }

    /// Whether counterexamples are shrunk. Tautology instances lose their shape when shrunk.
    fn shrinks(self) -> bool {
        self != Suite::Tautology
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub item: u64,
    pub theory: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: u64,
    /// Individual checks performed across all items.
    pub checks: u64,
    /// Items with at least one violation.
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Default)]
struct Outcome {
    checks: u64,
    violation: Option<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.violation.is_none() {
            self.violation = Some(detail());
        }
        ok
    }

    fn failed(&self) -> bool {
        self.violation.is_some()
    }
}

/// Generates item `item` of a suite corpus.
pub fn suite_item(suite: Suite, seed: u64, item: u64) -> Theory {
    let corpus = corpus_domain();
    let mut g = Gen::new(seed, item, &corpus);
    match suite {
        Suite::Persistence | Suite::Negation => g.theory(&corpus),
        Suite::TermPersistence => g.one_conditional_theory(&corpus),
        Suite::DenotationLaws => {
            let formulas = vec![
                Formula::Atom(g.cf_atom()),
                Formula::Atom(g.cf_atom()),
                Formula::Atom(g.one_conditional_atom()),
            ];
            Theory::from_formulas(corpus, formulas)
        }
        Suite::Supportedness => g.lc_program(&corpus).to_theory(),
        Suite::Unfolding => {
            let mut budget = MAX_CONDITIONALS;
            let mut r = g.lc_rule(2, 2, &mut budget);
            if r.head.is_empty() {
                r.head.push(HeadItem::Assign(g.assignment(&mut budget)));
            }
            Theory::new(corpus, vec![Statement::Rule(r)])
        }
        Suite::DeltaFaithfulness => {
            let domain = delta_domain();
            let mut g = Gen::new(seed, item, &domain);
            g.one_conditional_theory(&domain)
        }
        Suite::MinMax => minmax_item(&mut g),
        Suite::Assignment => {
            let mut budget = MAX_CONDITIONALS;
            let a = g.assignment(&mut budget);
            Theory::new(
                corpus,
                vec![Statement::Rule(Rule::new(vec![HeadItem::Assign(a)], Vec::new()))],
            )
        }
        Suite::Tautology => {
            let mut budget = MAX_CONDITIONALS;
            let phi = g.formula(&mut budget);
            let psi = g.formula(&mut budget);
            let gamma = g.formula(&mut budget);
            let schema = g.rng().gen_range(0..TAUTOLOGY_SCHEMATA);
            Theory::from_formulas(corpus, vec![tautology(schema, phi, psi, gamma)])
        }
    }
}

const TAUTOLOGY_SCHEMATA: usize = 6;

/// HT-valid schemata instantiated with `φ, ψ, γ`.
fn tautology(k: usize, phi: Formula, psi: Formula, gamma: Formula) -> Formula {
    use Formula as F;
    let (lhs, rhs) = match k {
        0 => return F::implies(phi.clone(), F::negation(F::negation(phi))),
        1 => (
            F::or(gamma.clone(), F::implies(phi.clone(), psi.clone())),
            F::and(
                F::implies(phi.clone(), F::or(psi.clone(), gamma.clone())),
                F::implies(F::negation(psi), F::or(F::negation(phi), gamma)),
            ),
        ),
        2 => (
            F::implies(phi.clone(), F::implies(psi.clone(), gamma.clone())),
            F::implies(F::and(phi, psi), gamma),
        ),
        3 => (
            F::implies(phi.clone(), F::and(psi.clone(), gamma.clone())),
            F::and(F::implies(phi.clone(), psi), F::implies(phi, gamma)),
        ),
        4 => (
            F::or(gamma.clone(), F::negation(F::negation(phi.clone()))),
            F::implies(F::negation(phi), gamma),
        ),
        _ => (
            F::or(
                gamma.clone(),
                F::and(F::negation(F::negation(phi.clone())), F::implies(phi.clone(), psi.clone())),
            ),
            F::conj([
                F::implies(phi.clone(), F::or(psi.clone(), gamma.clone())),
                F::implies(F::negation(psi), gamma.clone()),
                F::implies(F::negation(phi), gamma),
            ]),
        ),
    };
    F::iff(lhs, rhs)
}

fn minmax_item(g: &mut Gen) -> Theory {
    let rng = g.rng();
    let function = if rng.gen_bool(0.5) {
        AggregateFunction::Min
    } else {
        AggregateFunction::Max
    };
    let n = rng.gen_range(2..=3);
    let mut domain = DomainSpec::new();
    let mut elements = Vec::new();
    for i in 1..=n {
        let e = format!("e{i}");
        let p = format!("p{i}");
        domain = domain.with_int(&e, -3, 3).with_bool(&p);
        let term = if rng.gen_bool(0.2) {
            LinearTerm::Const(rng.gen_range(-3..=3))
        } else {
            LinearTerm::var(&Var::new(&e))
        };
        let condition = match rng.gen_range(0..4) {
            0 | 1 => Formula::top(),
            2 => Formula::boolean(&Var::new(&p)),
            _ => Formula::negation(Formula::boolean(&Var::new(&p))),
        };
        elements.push(AggregateElement { term, condition });
    }
    let agg = Summand::Aggregate {
        negated: false,
        aggregate: Aggregate { function, elements },
    };
    Theory::from_formulas(domain, vec![Formula::Atom(Atom::Def(LinearExpr(vec![agg])))])
}

fn term_value(v: &Valuation, t: &LinearTerm) -> Option<i64> {
    eval_linear_expr(v, &LinearExpr::term(t.clone()))
}

fn show(v: &Valuation) -> String {
    v.to_string()
}

fn show_pair(h: &Valuation, t: &Valuation) -> String {
    format!("<{}, {}>", show(h), show(t))
}

fn interpretations(sig: &std::sync::Arc<Signature>) -> impl Iterator<Item = (Valuation, Valuation)> + '_ {
    enumerate_valuations(sig).flat_map(|t| {
        t.subvaluations()
            .map(|h| (h, t.clone()))
            .collect::<Vec<_>>()
    })
}

fn check_budget(theory: &Theory, solver: &Solver) -> Result<std::sync::Arc<Signature>> {
    let sig = Signature::new(&theory.domain);
    solver.check_budget(&sig)?;
    Ok(sig)
}

fn persistence(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    let sig = check_budget(theory, solver)?;
    let formulas = theory.formulas();
    for (h, t) in interpretations(&sig) {
        for f in &formulas {
            let ok = !sat(&h, &t, f) || sat(&t, &t, f);
            if !out.check(ok, || {
                format!("{} holds at {} but not at <t, t>", print_formula(f), show_pair(&h, &t))
            }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn negation(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    let sig = check_budget(theory, solver)?;
    let formulas = theory.formulas();
    for (h, t) in interpretations(&sig) {
        for f in &formulas {
            let ok = sat(&h, &t, &Formula::negation(f.clone())) == !sat(&t, &t, f);
            if !out.check(ok, || {
                format!("negation of {} misbehaves at {}", print_formula(f), show_pair(&h, &t))
            }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn conditionals(theory: &Theory) -> Vec<ConditionalTerm> {
    let mut out = Vec::new();
    for f in theory.formulas() {
        f.visit_atoms(&mut |a| {
            for e in a.exprs() {
                for s in &e.0 {
                    if let Summand::Conditional(c) = s {
                        out.push(c.clone());
                    }
                }
            }
        });
    }
    out
}

fn term_persistence(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    let sig = check_budget(theory, solver)?;
    let taus = conditionals(theory);
    for (h, t) in interpretations(&sig) {
        let here = Interpretation::new(h.clone(), t.clone())?;
        let there = Interpretation::total(t.clone());
        for tau in &taus {
            let s_ht = eval_term(&here, tau);
            let Some(hv) = s_ht.as_ref().and_then(|s| term_value(&h, s)) else {
                continue;
            };
            let s_tt = eval_term(&there, tau);
            // h(eval⟨h,t⟩(τ)) = t(eval⟨t,t⟩(τ))
            let proof_form = s_tt.as_ref().and_then(|s| term_value(&t, s)) == Some(hv);
            // h(eval⟨t,t⟩(τ)) = t(eval⟨h,t⟩(τ))
            let literal_form = s_tt.as_ref().and_then(|s| term_value(&h, s))
                == s_ht.as_ref().and_then(|s| term_value(&t, s));
            if !out.check(proof_form && literal_form, || {
                format!("term persistence fails for {} at {}", tau_text(tau), show_pair(&h, &t))
            }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn tau_text(tau: &ConditionalTerm) -> String {
    LinearExpr(vec![Summand::Conditional(tau.clone())]).to_string()
}

fn subst_var(a: &Atom, x: &Var, d: i64) -> Atom {
    let mut a = a.clone();
    for e in a.exprs_mut() {
        for s in e.0.iter_mut() {
            if let Summand::Linear(LinearTerm::Scaled(k, y)) = s {
                if y == x {
                    *s = Summand::Linear(LinearTerm::Const(*k * d));
                }
            }
        }
    }
    a
}

fn replace_summand(a: &Atom, pos: (usize, usize), by: Summand) -> Atom {
    let mut a = a.clone();
    a.exprs_mut()[pos.0].0[pos.1] = by;
    a
}

fn summand_positions(a: &Atom) -> Vec<((usize, usize), Summand)> {
    a.exprs()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.0.iter().enumerate().map(move |(j, s)| ((i, j), s.clone())))
        .collect()
}

fn denotation_laws(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    let sig = check_budget(theory, solver)?;
    let totals: Vec<Valuation> = enumerate_valuations(&sig).collect();
    let mut atoms = Vec::new();
    for f in theory.formulas() {
        f.visit_atoms(&mut |a| atoms.push(a.clone()));
    }
    let mut replacements: Vec<LinearTerm> = vec![LinearTerm::Const(0), LinearTerm::Const(1)];
    for x in theory.domain.int_vars.keys() {
        replacements.push(LinearTerm::var(x));
        replacements.push(LinearTerm::Scaled(2, x.clone()));
    }
    for a in &atoms {
        let text = a.to_string();
        if a.is_condition_free() {
            // 1: monotonicity
            for t in &totals {
                for v in t.subvaluations() {
                    if !out.check(!denotes(&v, a) || denotes(t, a), || {
                        format!("1: {text} holds at {} but not at {}", show(&v), show(t))
                    }) {
                        return Ok(());
                    }
                }
            }
            // 2: substituting a variable by its value
            let vars = a.free_vars();
            for v in &totals {
                if !denotes(v, a) {
                    continue;
                }
                for x in &vars {
                    if let Some(d) = v.int(x.as_str()) {
                        let b = subst_var(a, x, d);
                        if !out.check(denotes(v, &b), || {
                            format!("2: {text} holds at {} but {b} does not", show(v))
                        }) {
                            return Ok(());
                        }
                    }
                }
            }
            // 3: only the atom's variables matter
            let mut seen: BTreeMap<BTreeMap<Var, Value>, (bool, Valuation)> = BTreeMap::new();
            for v in &totals {
                let key = v.project(&vars);
                let here = denotes(v, a);
                let agrees = match seen.get(&key) {
                    Some((b, w)) => {
                        let w = w.clone();
                        let b = *b;
                        out.check(b == here, || {
                            format!("3: {text} differs at {} and {}", show(&w), show(v))
                        })
                    }
                    None => {
                        seen.insert(key, (here, v.clone()));
                        true
                    }
                };
                if !agrees {
                    return Ok(());
                }
            }
            // 5: replacing a subterm by an equal one
            for (pos, s) in summand_positions(a) {
                let Summand::Linear(s) = s else { continue };
                for r in &replacements {
                    let eq = Atom::cmp(LinearExpr::term(s.clone()), Relation::Eq, LinearExpr::term(r.clone()));
                    let b = replace_summand(a, pos, Summand::Linear(r.clone()));
                    for v in &totals {
                        if denotes(v, &eq)
                            && !out.check(denotes(v, a) == denotes(v, &b), || {
                                format!("5: {text} and {b} differ at {}", show(v))
                            })
                        {
                            return Ok(());
                        }
                    }
                }
            }
        } else {
            // 4: an undefined conditional cannot make the atom true
            for (pos, s) in summand_positions(a) {
                let Summand::Conditional(tau) = s else { continue };
                let undef = replace_summand(a, pos, Summand::Undefined);
                let with_s = replace_summand(a, pos, Summand::Linear(tau.then_term.clone()));
                let with_s2 = replace_summand(a, pos, Summand::Linear(tau.else_term.clone()));
                for v in &totals {
                    let ok = !denotes(v, &undef) || (denotes(v, &with_s) && denotes(v, &with_s2));
                    if !out.check(ok, || format!("4: {undef} holds at {} but a branch fails", show(v))) {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

fn supportedness(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    let Some(program) = LcProgram::from_theory(theory) else {
        return Ok(());
    };
    let mut unfolded = Vec::new();
    for r in &program.rules {
        unfolded.extend(unfold_rule(r)?);
    }
    for t in solver.stable_models(theory)? {
        if !out.check(crate::semantics::is_supported(&t, &program), || {
            format!("stable model {} is not supported", show(&t))
        }) {
            return Ok(());
        }
        if !out.check(crate::semantics::is_supported_htc(&t, &unfolded), || {
            format!("stable model {} is not supported by the unfolded rules", show(&t))
        }) {
            return Ok(());
        }
    }
    Ok(())
}

fn differ(report: &EquivReport, what: &str) -> String {
    format!(
        "{what}: {}",
        report
            .witness
            .as_ref()
            .map(|w| format!("{w:?}"))
            .unwrap_or_default()
    )
}

fn unfolding(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    for r in theory.rules() {
        let original = Theory::new(theory.domain.clone(), vec![Statement::Rule(r.clone())]);
        let rules = unfold_rule(r)?;
        let unfolded = Theory::new(
            theory.domain.clone(),
            rules.into_iter().map(Statement::Rule).collect(),
        );
        let rep = equivalent(&original, &unfolded, solver)?;
        if !out.check(rep.is_equal(), || differ(&rep, "rule and unfolding differ")) {
            return Ok(());
        }
        let implications = Theory::from_formulas(
            theory.domain.clone(),
            unfolding_implications(r, DEFAULT_MAX_HEAD_ASSIGNMENTS)?,
        );
        let rep = equivalent(&original, &implications, solver)?;
        if !out.check(rep.is_equal(), || differ(&rep, "rule and unfolding implications differ")) {
            return Ok(());
        }
    }
    Ok(())
}

fn delta_faithfulness(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    if theory.has_aggregates() {
        return Ok(());
    }
    let dr = eliminate_conditionals(theory)?;
    let mut with_side = Theory::new(dr.rewritten.domain.clone(), theory.statements.clone());
    with_side
        .statements
        .extend(dr.side.iter().cloned().map(Statement::Formula));
    let replaced = dr.clone().into_theory();

    // Γ ∪ δ and Γ[τ/x] ∪ δ have the same HT models.
    let rep = equivalent(&with_side, &replaced, solver)?;
    if !out.check(rep.is_equal(), || differ(&rep, "Γ ∪ δ and Γ[τ/x] ∪ δ differ")) {
        return Ok(());
    }

    // Every HT model of δ alone fixes x to the value of τ in both worlds.
    let side_only = Theory::from_formulas(dr.rewritten.domain.clone(), dr.side.clone());
    for i in solver.ht_models(&side_only)? {
        let there = Interpretation::total(i.t().clone());
        for (tau, x) in &dr.mapping {
            let h_val = eval_term(&i, tau).and_then(|s| term_value(i.h(), &s));
            let t_val = eval_term(&there, tau).and_then(|s| term_value(i.t(), &s));
            let ok = i.h().int(x.as_str()) == h_val && i.t().int(x.as_str()) == t_val;
            if !out.check(ok, || format!("δ model {i} does not fix {x} to {}", tau_text(tau))) {
                return Ok(());
            }
        }
    }

    let x: BTreeSet<Var> = theory.domain.vars();
    let contexts = context_family(&theory.domain, &x, DEFAULT_CONTEXT_CAP);
    let rep = strong_equiv_sampled(theory, &with_side, &x, &contexts, solver)?;
    if !out.check(rep.is_equal(), || differ(&rep, "Γ and Γ ∪ δ differ under a context")) {
        return Ok(());
    }
    let rep = strong_equiv_sampled(theory, &replaced, &x, &contexts, solver)?;
    out.check(rep.is_equal(), || differ(&rep, "Γ and Γ[τ/x] ∪ δ differ under a context"));
    Ok(())
}

fn find_aggregate(theory: &Theory) -> Option<Aggregate> {
    let mut found = None;
    for f in theory.formulas() {
        f.visit_atoms(&mut |a| {
            for e in a.exprs() {
                for s in &e.0 {
                    if let Summand::Aggregate { aggregate, .. } = s {
                        if found.is_none()
                            && matches!(
                                aggregate.function,
                                AggregateFunction::Min | AggregateFunction::Max
                            )
                        {
                            found = Some(aggregate.clone());
                        }
                    }
                }
            }
        });
    }
    found
}

/// The multiset minimum or maximum of the elements whose condition holds and whose term is defined.
pub fn brute_force_extremum(agg: &Aggregate, t: &Valuation) -> Option<i64> {
    let values = agg
        .elements
        .iter()
        .filter(|e| sat(t, t, &e.condition))
        .filter_map(|e| term_value(t, &e.term));
    match agg.function {
        AggregateFunction::Min => values.min(),
        _ => values.max(),
    }
}

fn minmax(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    let Some(agg) = find_aggregate(theory) else {
        return Ok(());
    };
    let mut domain = theory.domain.clone();
    let mut fresh = FreshNames::for_domain(&domain);
    let (m, side) = desugar_minmax(&agg, &mut fresh, &mut domain)?;
    let compiled = Compiled::new(&Theory::from_formulas(domain.clone(), side.clone()))?;
    let sig = compiled.signature.clone();
    solver.check_budget(&sig)?;
    for t in enumerate_valuations(&sig) {
        let expected = brute_force_extremum(&agg, &t);
        let holds = compiled.holds(&t, &t);
        if !out.check(holds == (t.int(m.as_str()) == expected), || {
            format!(
                "encoding at {} is {holds}, expected {m} = {expected:?}",
                show(&t)
            )
        }) {
            return Ok(());
        }
        if let (None, Some(d)) = (t.get(m.as_str()), expected) {
            // With the base values as facts, the only proper here-world is `t` itself.
            let mut model = t.clone();
            model.set(m.as_str(), Some(Value::Int(d)))?;
            let stable = compiled.holds(&model, &model) && !compiled.holds(&t, &model);
            if !out.check(stable, || {
                format!("{} is not stable with the facts of {}", show(&model), show(&t))
            }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn assignment(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    for r in theory.rules() {
        for a in r.assignments() {
            let lhs = Theory::from_formulas(
                theory.domain.clone(),
                vec![Formula::and(assignment_formula(a), def_of(a))],
            );
            let rhs = Theory::from_formulas(theory.domain.clone(), vec![phi(a)]);
            let rep = equivalent(&lhs, &rhs, solver)?;
            if !out.check(rep.is_equal(), || differ(&rep, &format!("{a} ∧ def differs from Φ"))) {
                return Ok(());
            }
            let lhs = Theory::from_formulas(
                theory.domain.clone(),
                vec![Formula::negation(assignment_formula(a))],
            );
            let rhs = Theory::from_formulas(theory.domain.clone(), vec![Formula::negation(phi(a))]);
            let rep = equivalent(&lhs, &rhs, solver)?;
            if !out.check(rep.is_equal(), || differ(&rep, &format!("¬({a}) differs from ¬Φ"))) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn tautology_check(theory: &Theory, solver: &Solver, out: &mut Outcome) -> Result<()> {
    let sig = check_budget(theory, solver)?;
    let formulas = desugar(theory)?.formulas();
    for (h, t) in interpretations(&sig) {
        if !out.check(formulas.iter().all(|f| sat(&h, &t, f)), || {
            format!("not satisfied at {}", show_pair(&h, &t))
        }) {
            return Ok(());
        }
    }
    Ok(())
}

fn run_check(suite: Suite, theory: &Theory, solver: &Solver) -> Outcome {
    let mut out = Outcome::default();
    let r = match suite {
        Suite::Persistence => persistence(theory, solver, &mut out),
        Suite::Negation => negation(theory, solver, &mut out),
        Suite::TermPersistence => term_persistence(theory, solver, &mut out),
        Suite::DenotationLaws => denotation_laws(theory, solver, &mut out),
        Suite::Supportedness => supportedness(theory, solver, &mut out),
        Suite::Unfolding => unfolding(theory, solver, &mut out),
        Suite::DeltaFaithfulness => delta_faithfulness(theory, solver, &mut out),
        Suite::MinMax => minmax(theory, solver, &mut out),
        Suite::Assignment => assignment(theory, solver, &mut out),
        Suite::Tautology => tautology_check(theory, solver, &mut out),
    };
    if let Err(e) = r {
        if out.violation.is_none() {
            out.violation = Some(format!("error: {e}"));
        }
    }
    out
}

/// Runs `count` generated items of `suite`. Items are checked in parallel and merged by
/// index; the lowest failing item is reported, shrunk where the suite allows it.
pub fn run_property_suite(suite: Suite, seed: u64, count: u64, solver: &Solver) -> Result<PropertyReport> {
    let inner = Solver::new(solver.max_interpretations, 1);
    let work = || {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let theory = suite_item(suite, seed, i);
                let out = run_check(suite, &theory, &inner);
                (i, theory, out)
            })
            .collect::<Vec<_>>()
    };
    let results = if solver.jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(solver.jobs).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    } else {
        (0..count)
            .map(|i| {
                let theory = suite_item(suite, seed, i);
                let out = run_check(suite, &theory, &inner);
                (i, theory, out)
            })
            .collect()
    };
    let checks = results.iter().map(|(_, _, o)| o.checks).sum();
    let violations = results.iter().filter(|(_, _, o)| o.failed()).count() as u64;
    let counterexample = results
        .into_iter()
        .find(|(_, _, o)| o.failed())
        .map(|(item, theory, out)| {
            let shrunk = suite.shrinks().then(|| {
                let small = shrink(&theory, &|c| run_check(suite, c, &inner).failed());
                print_theory(&small)
            });
            Counterexample {
                item,
                theory: print_theory(&theory),
                detail: out.violation.unwrap_or_default(),
                shrunk,
            }
        });
    Ok(PropertyReport {
        suite,
        seed,
        count,
        checks,
        violations,
        counterexample,
    })
}
