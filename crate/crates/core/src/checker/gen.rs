//! Seeded random generation of formulas, theories and LC rules.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::*;

/// `x, y ∈ 0..2` and a Boolean `p`.
pub fn corpus_domain() -> DomainSpec {
    DomainSpec::new()
        .with_int("x", 0, 2)
        .with_int("y", 0, 2)
        .with_bool("p")
}

/// [`corpus_domain`] plus a second Boolean `q`.
pub fn delta_domain() -> DomainSpec {
    corpus_domain().with_bool("q")
}

pub const MAX_DEPTH: usize = 3;
pub const MAX_CONDITIONALS: usize = 2;
pub const MAX_COEFF: i64 = 2;

/// Generator for one corpus item. Item `i` of seed `s` uses stream `i` of a ChaCha
/// generator keyed by `s`, so items are independent of evaluation order.
pub struct Gen {
    rng: ChaCha8Rng,
    ints: Vec<Var>,
    bools: Vec<Var>,
    interval: Interval,
}

impl Gen {
    pub fn new(seed: u64, item: u64, domain: &DomainSpec) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(item);
        let interval = domain
            .int_vars
            .values()
            .copied()
            .reduce(|a, b| a.hull(&b))
            .unwrap_or(Interval { lo: 0, hi: 0 });
        Gen {
            rng,
            ints: domain.int_vars.keys().cloned().collect(),
            bools: domain.bool_vars.iter().cloned().collect(),
            interval,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn coeff(&mut self) -> i64 {
        self.rng.gen_range(-MAX_COEFF..=MAX_COEFF)
    }

    fn constant(&mut self) -> i64 {
        self.rng
            .gen_range(self.interval.lo - 1..=self.interval.hi + 1)
    }

    fn int_var(&mut self) -> Var {
        self.ints.choose(&mut self.rng).expect("integer variables").clone()
    }

    pub fn linear_term(&mut self) -> LinearTerm {
        if self.ints.is_empty() || self.rng.gen_bool(0.3) {
            LinearTerm::Const(self.constant())
        } else {
            let k = if self.rng.gen_bool(0.6) { 1 } else { self.coeff() };
            LinearTerm::Scaled(k, self.int_var())
        }
    }

    fn relation(&mut self) -> Relation {
        *[
            Relation::Le,
            Relation::Le,
            Relation::Lt,
            Relation::Eq,
            Relation::Eq,
            Relation::Ne,
            Relation::Ge,
            Relation::Gt,
        ]
        .choose(&mut self.rng)
        .unwrap()
    }

    fn cf_expr(&mut self) -> LinearExpr {
        let n = self.rng.gen_range(1..=2);
        LinearExpr((0..n).map(|_| Summand::Linear(self.linear_term())).collect())
    }

    /// Condition-free atom.
    pub fn cf_atom(&mut self) -> Atom {
        if !self.bools.is_empty() && self.rng.gen_bool(0.3) {
            return Atom::Bool(self.bools.choose(&mut self.rng).unwrap().clone());
        }
        if self.rng.gen_bool(0.1) {
            return Atom::Def(self.cf_expr());
        }
        let lhs = self.cf_expr();
        let rel = self.relation();
        let rhs = LinearExpr::term(self.linear_term());
        Atom::cmp(lhs, rel, rhs)
    }

    fn connective(&mut self, depth: usize, leaf: &mut dyn FnMut(&mut Self) -> Formula) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..20) {
                0 => Formula::Bot,
                1 => Formula::top(),
                _ => leaf(self),
            };
        }
        match self.rng.gen_range(0..4) {
            0 => Formula::and(self.connective(depth - 1, leaf), self.connective(depth - 1, leaf)),
            1 => Formula::or(self.connective(depth - 1, leaf), self.connective(depth - 1, leaf)),
            2 => Formula::implies(
                self.connective(depth - 1, leaf),
                self.connective(depth - 1, leaf),
            ),
            _ => Formula::negation(self.connective(depth - 1, leaf)),
        }
    }

    /// Condition-free formula of at most `depth` connectives.
    pub fn cf_formula(&mut self, depth: usize) -> Formula {
        self.connective(depth, &mut |g| Formula::Atom(g.cf_atom()))
    }

    pub fn conditional(&mut self) -> ConditionalTerm {
        let depth = self.rng.gen_range(0..=1);
        ConditionalTerm {
            then_term: self.linear_term(),
            else_term: self.linear_term(),
            condition: self.cf_formula(depth),
        }
    }

    /// Expression with up to `*budget` conditional terms, decrementing the budget.
    pub fn expr(&mut self, budget: &mut usize) -> LinearExpr {
        let n = self.rng.gen_range(1..=2);
        LinearExpr(
            (0..n)
                .map(|_| {
                    if *budget > 0 && self.rng.gen_bool(0.35) {
                        *budget -= 1;
                        Summand::Conditional(self.conditional())
                    } else {
                        Summand::Linear(self.linear_term())
                    }
                })
                .collect(),
        )
    }

    pub fn atom(&mut self, budget: &mut usize) -> Atom {
        if *budget == 0 || self.rng.gen_bool(0.4) {
            return self.cf_atom();
        }
        let lhs = self.expr(budget);
        let rel = self.relation();
        let rhs = if self.rng.gen_bool(0.7) {
            LinearExpr::term(self.linear_term())
        } else {
            self.expr(budget)
        };
        Atom::cmp(lhs, rel, rhs)
    }

    /// Formula of at most [`MAX_DEPTH`] connectives with up to `*budget` conditional terms.
    pub fn formula(&mut self, budget: &mut usize) -> Formula {
        let depth = self.rng.gen_range(0..=MAX_DEPTH);
        self.connective(depth, &mut |g| Formula::Atom(g.atom(budget)))
    }

    /// Atom containing exactly one conditional term.
    pub fn one_conditional_atom(&mut self) -> Atom {
        let mut summands = vec![Summand::Conditional(self.conditional())];
        if self.rng.gen_bool(0.5) {
            summands.push(Summand::Linear(self.linear_term()));
            summands.shuffle(&mut self.rng);
        }
        let rel = self.relation();
        Atom::cmp(LinearExpr(summands), rel, LinearExpr::term(self.linear_term()))
    }

    /// Theory of one to three formulas with exactly one conditional term.
    pub fn one_conditional_theory(&mut self, domain: &DomainSpec) -> Theory {
        let n = self.rng.gen_range(1..=3);
        let host = self.rng.gen_range(0..n);
        let formulas = (0..n)
            .map(|i| {
                if i == host {
                    let c = Formula::Atom(self.one_conditional_atom());
                    match self.rng.gen_range(0..4) {
                        0 => c,
                        1 => Formula::implies(self.cf_formula(1), c),
                        2 => Formula::implies(c, self.cf_formula(1)),
                        _ => Formula::or(c, self.cf_formula(1)),
                    }
                } else {
                    self.cf_formula(2)
                }
            })
            .collect();
        Theory::from_formulas(domain.clone(), formulas)
    }

    /// Theory of one to three formulas with at most [`MAX_CONDITIONALS`] conditional terms.
    pub fn theory(&mut self, domain: &DomainSpec) -> Theory {
        let n = self.rng.gen_range(1..=3);
        let mut budget = MAX_CONDITIONALS;
        let formulas = (0..n).map(|_| self.formula(&mut budget)).collect();
        Theory::from_formulas(domain.clone(), formulas)
    }

    pub fn assignment(&mut self, budget: &mut usize) -> Assignment {
        let target = self.int_var();
        let lower = self.expr(budget);
        if self.rng.gen_bool(0.5) {
            Assignment::single(target, lower)
        } else {
            Assignment::new(target, lower, self.expr(budget))
        }
    }

    fn literal(&mut self, budget: &mut usize) -> Literal {
        let atom = self.atom(budget);
        if self.rng.gen_bool(0.35) {
            Literal::neg(atom)
        } else {
            Literal::pos(atom)
        }
    }

    /// LC rule with up to `max_head` assignments and up to `max_body` body literals.
    pub fn lc_rule(&mut self, max_head: usize, max_body: usize, budget: &mut usize) -> Rule {
        let nh = self.rng.gen_range(0..=max_head);
        let nb = self.rng.gen_range(0..=max_body);
        let head = (0..nh)
            .map(|_| HeadItem::Assign(self.assignment(budget)))
            .collect();
        let body = (0..nb).map(|_| self.literal(budget)).collect();
        Rule::new(head, body)
    }

    /// LC program of one to four rules, each with at least one head assignment.
    pub fn lc_program(&mut self, domain: &DomainSpec) -> LcProgram {
        let n = self.rng.gen_range(1..=4);
        let mut budget = MAX_CONDITIONALS;
        let rules = (0..n)
            .map(|_| {
                let mut r = self.lc_rule(2, 2, &mut budget);
                if r.head.is_empty() {
                    r.head.push(HeadItem::Assign(self.assignment(&mut budget)));
                }
                r
            })
            .collect();
        LcProgram::new(domain.clone(), rules).expect("assignment heads")
    }
}
