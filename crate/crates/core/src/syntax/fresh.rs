use std::collections::{BTreeMap, BTreeSet};

use super::{DomainSpec, Var};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FreshKind {
    Min,
    Max,
    Conditional,
}

impl FreshKind {
    pub fn prefix(self) -> &'static str {
        match self {
            FreshKind::Min => "__min",
            FreshKind::Max => "__max",
            FreshKind::Conditional => "__c",
        }
    }
}

/// Deterministic supply of auxiliary variable names `__min<k>`, `__max<k>`, `__c<k>`.
#[derive(Clone, Debug)]
pub struct FreshNames {
    taken: BTreeSet<Var>,
    next: BTreeMap<FreshKind, usize>,
}

impl FreshNames {
    /// Counters start past any generated-looking name already declared.
    pub fn for_domain(domain: &DomainSpec) -> Self {
        let taken = domain.vars();
        let mut next = BTreeMap::new();
        for kind in [FreshKind::Min, FreshKind::Max, FreshKind::Conditional] {
            let start = taken
                .iter()
                .filter_map(|v| v.as_str().strip_prefix(kind.prefix()))
                .filter_map(|k| k.parse::<usize>().ok())
                .map(|k| k + 1)
                .max()
                .unwrap_or(0);
            next.insert(kind, start);
        }
        FreshNames { taken, next }
    }

    /// Counters start at zero; a clash with a declared name is reported.
    pub fn strict(domain: &DomainSpec) -> Self {
        let next = [FreshKind::Min, FreshKind::Max, FreshKind::Conditional]
            .into_iter()
            .map(|k| (k, 0))
            .collect();
        FreshNames {
            taken: domain.vars(),
            next,
        }
    }

    pub fn next(&mut self, kind: FreshKind) -> Result<Var> {
        let k = self.next.entry(kind).or_insert(0);
        let name = Var::new(&format!("{}{}", kind.prefix(), k));
        *k += 1;
        if !self.taken.insert(name.clone()) {
            return Err(Error::NameCollision(name.to_string()));
        }
        Ok(name)
    }
}

/// True for names reserved for generated variables.
pub fn is_generated(name: &str) -> bool {
    name.starts_with("__")
}
