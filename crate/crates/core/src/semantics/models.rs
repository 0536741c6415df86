use std::sync::Arc;

use rayon::prelude::*;

use super::eval::{sat, sat_all};
use super::valuation::valuation_at;
use super::{Interpretation, Signature, Valuation};
use crate::syntax::{desugar, Formula, Theory};
use crate::{Error, Result};

pub const DEFAULT_MAX_INTERPRETATIONS: u64 = 10_000_000;

/// A theory reduced to plain formulas over a fixed signature.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub signature: Arc<Signature>,
    pub formulas: Vec<Formula>,
}

impl Compiled {
    pub fn new(theory: &Theory) -> Result<Self> {
        let d = desugar(theory)?;
        Ok(Compiled {
            signature: Signature::new(&d.domain),
            formulas: d.formulas(),
        })
    }

    pub fn holds(&self, h: &Valuation, t: &Valuation) -> bool {
        sat_all(h, t, &self.formulas)
    }
}

/// Enumeration limits shared by model computations.
#[derive(Clone, Copy, Debug)]
pub struct Solver {
    pub max_interpretations: u64,
    pub jobs: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            max_interpretations: DEFAULT_MAX_INTERPRETATIONS,
            jobs: 1,
        }
    }
}

impl Solver {
    pub fn new(max_interpretations: u64, jobs: usize) -> Self {
        Solver {
            max_interpretations,
            jobs: jobs.max(1),
        }
    }

    pub fn check_budget(&self, sig: &Signature) -> Result<()> {
        let required = sig.interpretation_count();
        if required > self.max_interpretations as u128 {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.max_interpretations,
            });
        }
        Ok(())
    }

    fn over_totals<T, F>(&self, sig: &Arc<Signature>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Valuation) -> Vec<T> + Sync + Send,
    {
        let n = sig.valuation_count();
        if self.jobs <= 1 || n < 64 {
            return (0..n).flat_map(|i| f(valuation_at(sig, i))).collect();
        }
        let work = || {
            (0..n as u64)
                .into_par_iter()
                .map(|i| f(valuation_at(sig, i as u128)))
                .collect::<Vec<Vec<T>>>()
                .into_iter()
                .flatten()
                .collect()
        };
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    }

    /// The first `f(t)` that is `Some`, in enumeration order of `t`.
    pub fn find_first<T, F>(&self, sig: &Arc<Signature>, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(Valuation) -> Option<T> + Sync + Send,
    {
        let n = sig.valuation_count();
        if self.jobs <= 1 || n < 64 {
            return (0..n).find_map(|i| f(valuation_at(sig, i)));
        }
        let work = || {
            (0..n as u64)
                .into_par_iter()
                .find_map_first(|i| f(valuation_at(sig, i as u128)))
        };
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    }

    /// All `⟨h,t⟩` satisfying every formula, sorted.
    pub fn ht_models_compiled(&self, c: &Compiled) -> Result<Vec<Interpretation>> {
        self.check_budget(&c.signature)?;
        let mut out = self.over_totals(&c.signature, |t| {
            if !c.holds(&t, &t) {
                return Vec::new();
            }
            t.subvaluations()
                .filter(|h| c.holds(h, &t))
                .map(|h| Interpretation::new(h, t.clone()).expect("subvaluation"))
                .collect()
        });
        out.sort();
        Ok(out)
    }

    /// All `t` such that `⟨t,t⟩` is an equilibrium model, sorted.
    pub fn stable_models_compiled(&self, c: &Compiled) -> Result<Vec<Valuation>> {
        self.check_budget(&c.signature)?;
        let mut out = self.over_totals(&c.signature, |t| {
            if !c.holds(&t, &t) {
                return Vec::new();
            }
            let defined: Vec<usize> = (0..t.signature().len())
                .filter(|&i| t.get_index(i).is_some())
                .collect();
            let full = (1u64 << defined.len()) - 1;
            let minimal = (0..full).all(|mask| !c.holds(&t.masked(&defined, mask), &t));
            if minimal {
                vec![t]
            } else {
                Vec::new()
            }
        });
        out.sort();
        Ok(out)
    }

    pub fn ht_models(&self, theory: &Theory) -> Result<Vec<Interpretation>> {
        self.ht_models_compiled(&Compiled::new(theory)?)
    }

    pub fn stable_models(&self, theory: &Theory) -> Result<Vec<Valuation>> {
        self.stable_models_compiled(&Compiled::new(theory)?)
    }

    /// True iff `⟨t,t⟩` is an equilibrium model.
    pub fn is_stable(&self, c: &Compiled, t: &Valuation) -> bool {
        if !c.holds(t, t) {
            return false;
        }
        t.subvaluations().filter(|h| h != t).all(|h| !c.holds(&h, t))
    }
}

/// HT models with the default budget.
pub fn ht_models(theory: &Theory) -> Result<Vec<Interpretation>> {
    Solver::default().ht_models(theory)
}

/// Stable models with the default budget.
pub fn stable_models(theory: &Theory) -> Result<Vec<Valuation>> {
    Solver::default().stable_models(theory)
}

/// `⟨h,t⟩ ⊨ Γ` for every formula of a compiled theory.
pub fn satisfies_all(c: &Compiled, i: &Interpretation) -> bool {
    c.formulas.iter().all(|f| sat(i.h(), i.t(), f))
}
