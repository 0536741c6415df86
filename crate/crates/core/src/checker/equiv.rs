use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::parser::print_theory;
use crate::semantics::{Compiled, Signature, Solver, Valuation, Value};
use crate::syntax::{Theory, Var};
use crate::Result;

pub type ModelMap = BTreeMap<String, Value>;

fn to_assignment(m: &BTreeMap<Var, Value>) -> ModelMap {
    m.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Different,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Ht,
    Stable,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An interpretation that is a model of exactly one side.
    Interpretation {
        h: ModelMap,
        t: ModelMap,
        model_of: Side,
    },
    /// A projected stable model of exactly one side, possibly under an added context.
    StableModel {
        model: ModelMap,
        model_of: Side,
        #[serde(skip_serializing_if = "Option::is_none")]
        context: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivReport {
    pub mode: Mode,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<Vec<String>>,
    pub contexts_checked: usize,
    #[serde(skip)]
    pub context: Option<Theory>,
}

impl EquivReport {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    /// Re-evaluates the witness against the two theories; true if it still separates them.
    /// An `Equal` report has nothing to re-check and yields true.
    pub fn reverify(&self, a: &Theory, b: &Theory, solver: &Solver) -> Result<bool> {
        match &self.witness {
            None => Ok(self.is_equal()),
            Some(Witness::Interpretation { h, t, model_of }) => {
                let (ca, cb, sig) = compile_pair(a, b)?;
                let hv = Valuation::from_pairs(&sig, h.iter().map(|(k, v)| (k.as_str(), *v)))?;
                let tv = Valuation::from_pairs(&sig, t.iter().map(|(k, v)| (k.as_str(), *v)))?;
                let (ma, mb) = (ca.holds(&hv, &tv), cb.holds(&hv, &tv));
                Ok(ma != mb && (*model_of == Side::Left) == ma)
            }
            Some(Witness::StableModel {
                model, model_of, ..
            }) => {
                let (a, b) = match &self.context {
                    Some(ctx) => (a.union(ctx)?, b.union(ctx)?),
                    None => (a.clone(), b.clone()),
                };
                let x = self
                    .projection
                    .as_ref()
                    .map(|p| p.iter().map(|s| Var::new(s)).collect::<BTreeSet<_>>());
                let sa = projected_models(&a, x.as_ref(), solver)?;
                let sb = projected_models(&b, x.as_ref(), solver)?;
                let (ina, inb) = (sa.contains(model), sb.contains(model));
                Ok(ina != inb && (*model_of == Side::Left) == ina)
            }
        }
    }
}

fn compile_pair(a: &Theory, b: &Theory) -> Result<(Compiled, Compiled, Arc<Signature>)> {
    let domain = a.domain.merge(&b.domain)?;
    let ca = Compiled::new(&Theory::new(domain.clone(), a.statements.clone()))?;
    let cb = Compiled::new(&Theory::new(domain, b.statements.clone()))?;
    let sig = Signature::new(&ca.signature.domain().merge(&cb.signature.domain())?);
    Ok((ca, cb, sig))
}

/// Compares HT models over the union of both domains.
pub fn equivalent(a: &Theory, b: &Theory, solver: &Solver) -> Result<EquivReport> {
    let (ca, cb, sig) = compile_pair(a, b)?;
    solver.check_budget(&sig)?;
    let found = solver.find_first(&sig, |t| {
        let (ta, tb) = (ca.holds(&t, &t), cb.holds(&t, &t));
        if ta != tb {
            return Some((t.clone(), t, ta));
        }
        if !ta {
            return None;
        }
        t.subvaluations().filter(|h| *h != t).find_map(|h| {
            let (ha, hb) = (ca.holds(&h, &t), cb.holds(&h, &t));
            (ha != hb).then(|| (h, t.clone(), ha))
        })
    });
    Ok(EquivReport {
        mode: Mode::Ht,
        verdict: if found.is_some() {
            Verdict::Different
        } else {
            Verdict::Equal
        },
        witness: found.map(|(h, t, in_a)| Witness::Interpretation {
            h: to_assignment(&h.to_map()),
            t: to_assignment(&t.to_map()),
            model_of: if in_a { Side::Left } else { Side::Right },
        }),
        projection: None,
        contexts_checked: 0,
        context: None,
    })
}

fn projected_models(
    theory: &Theory,
    x: Option<&BTreeSet<Var>>,
    solver: &Solver,
) -> Result<BTreeSet<ModelMap>> {
    Ok(solver
        .stable_models(theory)?
        .iter()
        .map(|t| {
            to_assignment(&match x {
                Some(x) => t.project(x),
                None => t.to_map(),
            })
        })
        .collect())
}

fn compare_stable(
    a: &Theory,
    b: &Theory,
    x: Option<&BTreeSet<Var>>,
    solver: &Solver,
) -> Result<Option<(ModelMap, Side)>> {
    let sa = projected_models(a, x, solver)?;
    let sb = projected_models(b, x, solver)?;
    let only_a = sa.difference(&sb).next().map(|m| (m.clone(), Side::Left));
    let only_b = sb.difference(&sa).next().map(|m| (m.clone(), Side::Right));
    Ok(match (only_a, only_b) {
        (Some(l), Some(r)) => Some(if l.0 <= r.0 { l } else { r }),
        (l, r) => l.or(r),
    })
}

fn projection_names(x: Option<&BTreeSet<Var>>) -> Option<Vec<String>> {
    x.map(|x| x.iter().map(|v| v.to_string()).collect())
}

/// Compares stable models, each side over its own domain, optionally projected onto `x`.
pub fn stable_equivalent(
    a: &Theory,
    b: &Theory,
    x: Option<&BTreeSet<Var>>,
    solver: &Solver,
) -> Result<EquivReport> {
    let diff = compare_stable(a, b, x, solver)?;
    Ok(EquivReport {
        mode: Mode::Stable,
        verdict: if diff.is_some() {
            Verdict::Different
        } else {
            Verdict::Equal
        },
        witness: diff.map(|(model, side)| Witness::StableModel {
            model,
            model_of: side,
            context: None,
        }),
        projection: projection_names(x),
        contexts_checked: 0,
        context: None,
    })
}

/// Projected strong equivalence tested over a finite family of contexts.
/// `Equal` means no context in the family separates the theories.
pub fn strong_equiv_sampled(
    a: &Theory,
    b: &Theory,
    x: &BTreeSet<Var>,
    contexts: &[Theory],
    solver: &Solver,
) -> Result<EquivReport> {
    for (i, ctx) in contexts.iter().enumerate() {
        let (ua, ub) = (a.union(ctx)?, b.union(ctx)?);
        if let Some((model, side)) = compare_stable(&ua, &ub, Some(x), solver)? {
            return Ok(EquivReport {
                mode: Mode::Strong,
                verdict: Verdict::Different,
                witness: Some(Witness::StableModel {
                    model,
                    model_of: side,
                    context: Some(print_theory(ctx)),
                }),
                projection: projection_names(Some(x)),
                contexts_checked: i + 1,
                context: Some(ctx.clone()),
            });
        }
    }
    Ok(EquivReport {
        mode: Mode::Strong,
        verdict: Verdict::Equal,
        witness: None,
        projection: projection_names(Some(x)),
        contexts_checked: contexts.len(),
        context: None,
    })
}
