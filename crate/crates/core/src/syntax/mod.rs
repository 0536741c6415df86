//! Abstract syntax of HT_C theories and LC programs.

mod desugar;
mod domain;
mod fresh;
mod vars;

use std::fmt;
use std::sync::Arc;

pub use desugar::{
    desugar, desugar_aggregates, desugar_comparisons, desugar_count, desugar_minmax, desugar_sum,
    term_range,
};
pub use domain::{DomainSpec, Interval, DEFAULT_INTERVAL};
pub use fresh::{is_generated, FreshKind, FreshNames};
pub use vars::FreeVars;

/// A variable name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl std::borrow::Borrow<str> for Var {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// `d` or `d·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LinearTerm {
    Const(i64),
    Scaled(i64, Var),
}

impl LinearTerm {
    pub fn var(x: &Var) -> Self {
        LinearTerm::Scaled(1, x.clone())
    }

    pub fn negated(&self) -> Self {
        match self {
            LinearTerm::Const(d) => LinearTerm::Const(-d),
            LinearTerm::Scaled(k, x) => LinearTerm::Scaled(-k, x.clone()),
        }
    }

    pub fn variable(&self) -> Option<&Var> {
        match self {
            LinearTerm::Const(_) => None,
            LinearTerm::Scaled(_, x) => Some(x),
        }
    }
}

/// `(then | else : condition)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionalTerm {
    pub then_term: LinearTerm,
    pub else_term: LinearTerm,
    pub condition: Formula,
}

impl ConditionalTerm {
    pub fn new(then_term: LinearTerm, else_term: LinearTerm, condition: Formula) -> Self {
        ConditionalTerm {
            then_term,
            else_term,
            condition,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AggregateFunction {
    Sum,
    Count,
    Min,
    Max,
}

impl AggregateFunction {
    pub fn keyword(self) -> &'static str {
        match self {
            AggregateFunction::Sum => "sum",
            AggregateFunction::Count => "count",
            AggregateFunction::Min => "min",
            AggregateFunction::Max => "max",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AggregateElement {
    pub term: LinearTerm,
    pub condition: Formula,
}

/// Count elements always carry the term `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Aggregate {
    pub function: AggregateFunction,
    pub elements: Vec<AggregateElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    Linear(LinearTerm),
    Conditional(ConditionalTerm),
    Aggregate { negated: bool, aggregate: Aggregate },
    /// The undefined term `u`.
    Undefined,
}

/// A non-empty sum of summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearExpr(pub Vec<Summand>);

impl LinearExpr {
    pub fn constant(d: i64) -> Self {
        LinearExpr(vec![Summand::Linear(LinearTerm::Const(d))])
    }

    pub fn var(x: &Var) -> Self {
        LinearExpr(vec![Summand::Linear(LinearTerm::var(x))])
    }

    pub fn term(t: LinearTerm) -> Self {
        LinearExpr(vec![Summand::Linear(t)])
    }

    pub fn summands(&self) -> &[Summand] {
        &self.0
    }

    pub fn has_conditionals(&self) -> bool {
        self.0.iter().any(|s| !matches!(s, Summand::Linear(_) | Summand::Undefined))
    }

    pub fn has_aggregates(&self) -> bool {
        self.0.iter().any(|s| matches!(s, Summand::Aggregate { .. }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Lt,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comparison {
    pub lhs: LinearExpr,
    pub rel: Relation,
    pub rhs: LinearExpr,
}

impl Comparison {
    pub fn new(lhs: LinearExpr, rel: Relation, rhs: LinearExpr) -> Self {
        Comparison { lhs, rel, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Compare(Comparison),
    /// `def(α)`, shorthand for `α ≤ α`.
    Def(LinearExpr),
    Bool(Var),
}

impl Atom {
    pub fn le(lhs: LinearExpr, rhs: LinearExpr) -> Self {
        Atom::Compare(Comparison::new(lhs, Relation::Le, rhs))
    }

    pub fn cmp(lhs: LinearExpr, rel: Relation, rhs: LinearExpr) -> Self {
        Atom::Compare(Comparison::new(lhs, rel, rhs))
    }

    pub fn exprs(&self) -> Vec<&LinearExpr> {
        match self {
            Atom::Compare(c) => vec![&c.lhs, &c.rhs],
            Atom::Def(e) => vec![e],
            Atom::Bool(_) => vec![],
        }
    }

    pub fn exprs_mut(&mut self) -> Vec<&mut LinearExpr> {
        match self {
            Atom::Compare(c) => vec![&mut c.lhs, &mut c.rhs],
            Atom::Def(e) => vec![e],
            Atom::Bool(_) => vec![],
        }
    }

    pub fn is_condition_free(&self) -> bool {
        self.exprs().iter().all(|e| !e.has_conditionals())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Bot,
    Atom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// `⊥ → ⊥`
    pub fn top() -> Self {
        Formula::Implies(Box::new(Formula::Bot), Box::new(Formula::Bot))
    }

    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    pub fn boolean(p: &Var) -> Self {
        Formula::Atom(Atom::Bool(p.clone()))
    }

    /// `φ → ⊥`
    pub fn negation(f: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(Formula::Bot))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(a, b) if **a == Formula::Bot && **b == Formula::Bot)
    }

    /// The operand of `φ → ⊥`, unless the formula is `⊤`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Bot && **a != Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// True if no conditional term or aggregate occurs anywhere.
    pub fn is_condition_free(&self) -> bool {
        match self {
            Formula::Bot => true,
            Formula::Atom(a) => a.is_condition_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_condition_free() && b.is_condition_free()
            }
        }
    }

    pub fn has_aggregates(&self) -> bool {
        let mut found = false;
        self.visit_atoms(&mut |a| {
            found |= a.exprs().iter().any(|e| e.has_aggregates());
        });
        found
    }

    /// Visits every atom outside conditional-term conditions.
    pub fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        match self {
            Formula::Bot => {}
            Formula::Atom(a) => f(a),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    pub fn visit_atoms_mut(&mut self, f: &mut dyn FnMut(&mut Atom)) {
        match self {
            Formula::Bot => {}
            Formula::Atom(a) => f(a),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms_mut(f);
                b.visit_atoms_mut(f);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(_) => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}

/// `x := α..β`; `x := α` when both bounds coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub target: Var,
    pub lower: LinearExpr,
    pub upper: LinearExpr,
}

impl Assignment {
    pub fn new(target: Var, lower: LinearExpr, upper: LinearExpr) -> Self {
        Assignment {
            target,
            lower,
            upper,
        }
    }

    pub fn single(target: Var, value: LinearExpr) -> Self {
        Assignment {
            target,
            lower: value.clone(),
            upper: value,
        }
    }

    pub fn is_single(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HeadItem {
    Assign(Assignment),
    Atom(Atom),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            negated: false,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            negated: true,
            atom,
        }
    }

    pub fn to_formula(&self) -> Formula {
        let a = Formula::Atom(self.atom.clone());
        if self.negated {
            Formula::negation(a)
        } else {
            a
        }
    }
}

/// `h1 ; ... ; hn :- l1, ..., lm.`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Vec<HeadItem>,
    pub body: Vec<Literal>,
}

impl Rule {
    pub fn new(head: Vec<HeadItem>, body: Vec<Literal>) -> Self {
        Rule { head, body }
    }

    /// Every head item is an assignment.
    pub fn is_lc(&self) -> bool {
        self.head.iter().all(|h| matches!(h, HeadItem::Assign(_)))
    }

    /// Every head item is an atom.
    pub fn is_htc(&self) -> bool {
        self.head.iter().all(|h| matches!(h, HeadItem::Atom(_)))
    }

    pub fn assignments(&self) -> impl Iterator<Item = &Assignment> {
        self.head.iter().filter_map(|h| match h {
            HeadItem::Assign(a) => Some(a),
            HeadItem::Atom(_) => None,
        })
    }

    pub fn head_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head.iter().filter_map(|h| match h {
            HeadItem::Atom(a) => Some(a),
            HeadItem::Assign(_) => None,
        })
    }

    pub fn body_formula(&self) -> Formula {
        Formula::conj(self.body.iter().map(Literal::to_formula))
    }

    /// `B(r) → H(r)` with assignments read as formulas.
    pub fn to_formula(&self) -> Formula {
        let head = Formula::disj(self.head.iter().map(|h| match h {
            HeadItem::Assign(a) => crate::transforms::assignment_formula(a),
            HeadItem::Atom(c) => Formula::Atom(c.clone()),
        }));
        if self.body.is_empty() {
            head
        } else {
            Formula::implies(self.body_formula(), head)
        }
    }

    pub fn visit_atoms_mut(&mut self, f: &mut dyn FnMut(&mut Atom)) {
        for h in &mut self.head {
            if let HeadItem::Atom(a) = h {
                f(a);
            }
        }
        for l in &mut self.body {
            f(&mut l.atom);
        }
    }

    /// Visits every expression outside conditions, including assignment bounds.
    pub fn visit_exprs_mut(&mut self, f: &mut dyn FnMut(&mut LinearExpr)) {
        for h in &mut self.head {
            match h {
                HeadItem::Assign(a) => {
                    f(&mut a.lower);
                    f(&mut a.upper);
                }
                HeadItem::Atom(a) => a.exprs_mut().into_iter().for_each(&mut *f),
            }
        }
        for l in &mut self.body {
            l.atom.exprs_mut().into_iter().for_each(&mut *f);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    Formula(Formula),
    Rule(Rule),
}

impl Statement {
    pub fn to_formula(&self) -> Formula {
        match self {
            Statement::Formula(f) => f.clone(),
            Statement::Rule(r) => r.to_formula(),
        }
    }

    pub fn is_lc_rule(&self) -> bool {
        matches!(self, Statement::Rule(r) if r.is_lc())
    }

    pub fn visit_exprs_mut(&mut self, f: &mut dyn FnMut(&mut LinearExpr)) {
        match self {
            Statement::Formula(phi) => {
                phi.visit_atoms_mut(&mut |a| a.exprs_mut().into_iter().for_each(&mut *f))
            }
            Statement::Rule(r) => r.visit_exprs_mut(f),
        }
    }

    pub fn has_aggregates(&self) -> bool {
        let mut s = self.clone();
        let mut found = false;
        s.visit_exprs_mut(&mut |e| found |= e.has_aggregates());
        found
    }

    pub fn has_conditionals(&self) -> bool {
        let mut s = self.clone();
        let mut found = false;
        s.visit_exprs_mut(&mut |e| found |= e.has_conditionals());
        found
    }
}

/// A set of statements over declared variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Theory {
    pub domain: DomainSpec,
    pub statements: Vec<Statement>,
}

impl Theory {
    pub fn new(domain: DomainSpec, statements: Vec<Statement>) -> Self {
        Theory { domain, statements }
    }

    pub fn from_formulas(domain: DomainSpec, formulas: Vec<Formula>) -> Self {
        Theory {
            domain,
            statements: formulas.into_iter().map(Statement::Formula).collect(),
        }
    }

    pub fn is_lc_program(&self) -> bool {
        self.statements.iter().all(Statement::is_lc_rule)
    }

    pub fn has_aggregates(&self) -> bool {
        self.statements.iter().any(Statement::has_aggregates)
    }

    pub fn has_conditionals(&self) -> bool {
        self.statements.iter().any(Statement::has_conditionals)
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.statements.iter().map(Statement::to_formula).collect()
    }

    /// Union of statements over the merged domain.
    pub fn union(&self, other: &Theory) -> crate::Result<Theory> {
        let domain = self.domain.merge(&other.domain)?;
        let mut statements = self.statements.clone();
        statements.extend(other.statements.iter().cloned());
        Ok(Theory { domain, statements })
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Rule(r) => Some(r),
            Statement::Formula(_) => None,
        })
    }
}

/// A theory made only of LC rules.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LcProgram {
    pub domain: DomainSpec,
    pub rules: Vec<Rule>,
}

impl LcProgram {
    pub fn new(domain: DomainSpec, rules: Vec<Rule>) -> crate::Result<Self> {
        if let Some(r) = rules.iter().find(|r| !r.is_lc()) {
            return Err(crate::Error::NotDesugared(format!(
                "rule with a non-assignment head in an LC program: {}",
                crate::parser::print_rule(r)
            )));
        }
        Ok(LcProgram { domain, rules })
    }

    pub fn to_theory(&self) -> Theory {
        Theory {
            domain: self.domain.clone(),
            statements: self.rules.iter().cloned().map(Statement::Rule).collect(),
        }
    }

    pub fn from_theory(theory: &Theory) -> Option<LcProgram> {
        if !theory.is_lc_program() {
            return None;
        }
        Some(LcProgram {
            domain: theory.domain.clone(),
            rules: theory.rules().cloned().collect(),
        })
    }
}

/// Result of parsing: an LC program when every statement is an LC rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Theory(Theory),
    Program(LcProgram),
}

impl Source {
    pub fn into_theory(self) -> Theory {
        match self {
            Source::Theory(t) => t,
            Source::Program(p) => p.to_theory(),
        }
    }

    pub fn domain(&self) -> &DomainSpec {
        match self {
            Source::Theory(t) => &t.domain,
            Source::Program(p) => &p.domain,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_formula(self))
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_expr(self))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_atom(self))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_assignment(self))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_rule(self))
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::print_theory(self))
    }
}
