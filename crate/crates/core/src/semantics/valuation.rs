use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::syntax::{DomainSpec, Interval, Var};
use crate::{Error, Result};

/// A defined value: an integer or the Boolean truth value `t`.
/// Serialized as a JSON number or `true`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Int(i64),
    True,
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Int(n) => s.serialize_i64(*n),
            Value::True => s.serialize_bool(true),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Bool(bool),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Value::Int(n)),
            Raw::Bool(true) => Ok(Value::True),
            Raw::Bool(false) => Err(serde::de::Error::custom(
                "Boolean variables are either true or absent",
            )),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::True => f.write_str("t"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Int(Interval),
    Bool,
}

/// The sorted set of variables a valuation ranges over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    vars: Vec<Var>,
    kinds: Vec<VarKind>,
}

impl Signature {
    pub fn new(domain: &DomainSpec) -> Arc<Self> {
        let mut entries: Vec<(Var, VarKind)> = domain
            .int_vars
            .iter()
            .map(|(x, iv)| (x.clone(), VarKind::Int(*iv)))
            .chain(domain.bool_vars.iter().map(|p| (p.clone(), VarKind::Bool)))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let (vars, kinds) = entries.into_iter().unzip();
        Arc::new(Signature { vars, kinds })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn index_of(&self, x: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(x)).ok()
    }

    /// Number of values a variable can take, `u` excluded.
    pub fn width(&self, i: usize) -> u64 {
        match self.kinds[i] {
            VarKind::Int(iv) => iv.len(),
            VarKind::Bool => 1,
        }
    }

    /// The `k`-th defined value of variable `i`.
    pub fn value(&self, i: usize, k: u64) -> Value {
        match self.kinds[i] {
            VarKind::Int(iv) => Value::Int(iv.lo + k as i64),
            VarKind::Bool => Value::True,
        }
    }

    pub fn admits(&self, i: usize, v: Value) -> bool {
        match (self.kinds[i], v) {
            (VarKind::Int(iv), Value::Int(n)) => iv.contains(n),
            (VarKind::Bool, Value::True) => true,
            _ => false,
        }
    }

    pub fn domain(&self) -> DomainSpec {
        let mut d = DomainSpec::new();
        for (x, k) in self.vars.iter().zip(&self.kinds) {
            match k {
                VarKind::Int(iv) => {
                    d.int_vars.insert(x.clone(), *iv);
                }
                VarKind::Bool => {
                    d.bool_vars.insert(x.clone());
                }
            }
        }
        d
    }

    /// Number of valuations, `∏ (|D(x)| + 1)`.
    pub fn valuation_count(&self) -> u128 {
        (0..self.len()).fold(1u128, |n, i| n.saturating_mul(self.width(i) as u128 + 1))
    }

    /// Number of interpretations, `∏ (2|D(x)| + 1)`.
    pub fn interpretation_count(&self) -> u128 {
        (0..self.len()).fold(1u128, |n, i| n.saturating_mul(2 * self.width(i) as u128 + 1))
    }
}

/// A partial assignment of values to the variables of a signature.
/// Equality and ordering look only at the defined pairs.
#[derive(Clone)]
pub struct Valuation {
    sig: Arc<Signature>,
    vals: Vec<Option<Value>>,
}

impl Valuation {
    pub fn empty(sig: &Arc<Signature>) -> Self {
        Valuation {
            sig: sig.clone(),
            vals: vec![None; sig.len()],
        }
    }

    pub fn from_pairs<'a, I>(sig: &Arc<Signature>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Value)>,
    {
        let mut v = Valuation::empty(sig);
        for (x, val) in pairs {
            v.set(x, Some(val))?;
        }
        Ok(v)
    }

    pub(crate) fn from_raw(sig: Arc<Signature>, vals: Vec<Option<Value>>) -> Self {
        Valuation { sig, vals }
    }

    pub fn set(&mut self, x: &str, val: Option<Value>) -> Result<()> {
        let i = self
            .sig
            .index_of(x)
            .ok_or_else(|| Error::InvalidInterpretation(format!("unknown variable `{x}`")))?;
        if let Some(v) = val {
            if !self.sig.admits(i, v) {
                return Err(Error::InvalidInterpretation(format!(
                    "value {v} outside the domain of `{x}`"
                )));
            }
        }
        self.vals[i] = val;
        Ok(())
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn get(&self, x: &str) -> Option<Value> {
        self.sig.index_of(x).and_then(|i| self.vals[i])
    }

    pub fn get_index(&self, i: usize) -> Option<Value> {
        self.vals[i]
    }

    pub fn int(&self, x: &str) -> Option<i64> {
        match self.get(x) {
            Some(Value::Int(n)) => Some(n),
            _ => None,
        }
    }

    pub fn is_true(&self, p: &str) -> bool {
        self.get(p) == Some(Value::True)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Var, Value)> + '_ {
        self.sig
            .vars()
            .iter()
            .zip(&self.vals)
            .filter_map(|(x, v)| v.map(|v| (x, v)))
    }

    pub fn defined_count(&self) -> usize {
        self.vals.iter().filter(|v| v.is_some()).count()
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_subset_of(&self, other: &Valuation) -> bool {
        self.pairs().all(|(x, v)| other.get(x.as_str()) == Some(v))
    }

    pub fn to_map(&self) -> BTreeMap<Var, Value> {
        self.pairs().map(|(x, v)| (x.clone(), v)).collect()
    }

    /// `v|X`
    pub fn project(&self, keep: &BTreeSet<Var>) -> BTreeMap<Var, Value> {
        self.pairs()
            .filter(|(x, _)| keep.contains(*x))
            .map(|(x, v)| (x.clone(), v))
            .collect()
    }

    /// All `h ⊆ self`, from the empty valuation up to `self`.
    pub fn subvaluations(&self) -> impl Iterator<Item = Valuation> + '_ {
        let defined: Vec<usize> = (0..self.vals.len()).filter(|&i| self.vals[i].is_some()).collect();
        let n = defined.len();
        assert!(n < 64, "too many defined variables");
        (0u64..(1u64 << n)).map(move |mask| self.masked(&defined, mask))
    }

    pub(crate) fn masked(&self, defined: &[usize], mask: u64) -> Valuation {
        let mut vals = vec![None; self.vals.len()];
        for (bit, &i) in defined.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                vals[i] = self.vals[i];
            }
        }
        Valuation {
            sig: self.sig.clone(),
            vals,
        }
    }

    /// Same pairs over another signature containing every defined variable.
    pub fn rebase(&self, sig: &Arc<Signature>) -> Result<Valuation> {
        Valuation::from_pairs(sig, self.pairs().map(|(x, v)| (x.as_str(), v)))
    }
}

impl PartialEq for Valuation {
    fn eq(&self, other: &Self) -> bool {
        self.pairs().eq(other.pairs())
    }
}

impl Eq for Valuation {}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pairs().cmp(other.pairs())
    }
}

impl Hash for Valuation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (x, v) in self.pairs() {
            x.hash(state);
            v.hash(state);
        }
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, v)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x},{v})")?;
        }
        f.write_str("}")
    }
}

/// An HT interpretation `⟨h,t⟩` with `h ⊆ t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation {
    h: Valuation,
    t: Valuation,
}

impl Interpretation {
    pub fn new(h: Valuation, t: Valuation) -> Result<Self> {
        if !h.is_subset_of(&t) {
            return Err(Error::InvalidInterpretation(format!(
                "{h} is not contained in {t}"
            )));
        }
        Ok(Interpretation { h, t })
    }

    /// `⟨t,t⟩`
    pub fn total(t: Valuation) -> Self {
        Interpretation { h: t.clone(), t }
    }

    pub fn h(&self) -> &Valuation {
        &self.h
    }

    pub fn t(&self) -> &Valuation {
        &self.t
    }

    pub fn is_total(&self) -> bool {
        self.h == self.t
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.h, self.t)
    }
}

/// Index-addressable enumeration of all valuations of a signature.
///
/// Variables are taken in name order, the first one most significant;
/// each ranges over `u` followed by its values in increasing order.
pub fn valuation_at(sig: &Arc<Signature>, mut idx: u128) -> Valuation {
    let mut vals = vec![None; sig.len()];
    for i in (0..sig.len()).rev() {
        let base = sig.width(i) as u128 + 1;
        let digit = (idx % base) as u64;
        idx /= base;
        if digit > 0 {
            vals[i] = Some(sig.value(i, digit - 1));
        }
    }
    Valuation::from_raw(sig.clone(), vals)
}

/// All valuations over the signature in the order of [`valuation_at`].
pub fn enumerate_valuations(sig: &Arc<Signature>) -> impl Iterator<Item = Valuation> + '_ {
    let n = sig.valuation_count();
    (0..n).map(move |i| valuation_at(sig, i))
}
