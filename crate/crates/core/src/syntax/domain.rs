use std::collections::{BTreeMap, BTreeSet};

use super::Var;
use crate::{Error, Result};

/// Closed integer interval `lo..hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidDomain(format!("empty interval {lo}..{hi}")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> u64 {
        (self.hi - self.lo) as u64 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn values(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

pub const DEFAULT_INTERVAL: Interval = Interval { lo: 0, hi: 9 };

/// Declared variables: integer variables with their intervals, and Boolean variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DomainSpec {
    pub int_vars: BTreeMap<Var, Interval>,
    pub bool_vars: BTreeSet<Var>,
}

impl DomainSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_int(mut self, name: &str, lo: i64, hi: i64) -> Self {
        self.int_vars
            .insert(Var::new(name), Interval::new(lo, hi).expect("valid interval"));
        self
    }

    pub fn with_bool(mut self, name: &str) -> Self {
        self.bool_vars.insert(Var::new(name));
        self
    }

    pub fn declare_int(&mut self, x: Var, iv: Interval) -> Result<()> {
        if self.bool_vars.contains(&x) {
            return Err(Error::DomainConflict(x.to_string()));
        }
        match self.int_vars.get(&x) {
            Some(old) if *old != iv => Err(Error::DomainConflict(x.to_string())),
            _ => {
                self.int_vars.insert(x, iv);
                Ok(())
            }
        }
    }

    pub fn declare_bool(&mut self, p: Var) -> Result<()> {
        if self.int_vars.contains_key(&p) {
            return Err(Error::DomainConflict(p.to_string()));
        }
        self.bool_vars.insert(p);
        Ok(())
    }

    pub fn contains(&self, x: &str) -> bool {
        self.int_vars.contains_key(x) || self.bool_vars.contains(x)
    }

    pub fn is_int(&self, x: &str) -> bool {
        self.int_vars.contains_key(x)
    }

    pub fn is_bool(&self, x: &str) -> bool {
        self.bool_vars.contains(x)
    }

    pub fn interval(&self, x: &str) -> Option<Interval> {
        self.int_vars.get(x).copied()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.int_vars
            .keys()
            .chain(self.bool_vars.iter())
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.int_vars.len() + self.bool_vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Union of declarations; a variable declared differently on both sides is an error.
    pub fn merge(&self, other: &DomainSpec) -> Result<DomainSpec> {
        let mut out = self.clone();
        for (x, iv) in &other.int_vars {
            out.declare_int(x.clone(), *iv)?;
        }
        for p in &other.bool_vars {
            out.declare_bool(p.clone())?;
        }
        Ok(out)
    }

    pub fn restrict(&self, keep: &BTreeSet<Var>) -> DomainSpec {
        DomainSpec {
            int_vars: self
                .int_vars
                .iter()
                .filter(|(x, _)| keep.contains(*x))
                .map(|(x, iv)| (x.clone(), *iv))
                .collect(),
            bool_vars: self.bool_vars.intersection(keep).cloned().collect(),
        }
    }

    /// Number of interpretations `⟨h,t⟩`: each variable is undefined in both,
    /// defined only in `t`, or defined in both.
    pub fn interpretation_count(&self) -> u128 {
        let mut n: u128 = 1;
        for iv in self.int_vars.values() {
            n = n.saturating_mul(2 * iv.len() as u128 + 1);
        }
        for _ in &self.bool_vars {
            n = n.saturating_mul(3);
        }
        n
    }
}
