use super::lexer::{tokenize, Tok, Token};
use crate::syntax::*;
use crate::{Error, Result};

const KEYWORDS: &[&str] = &["not", "def", "sum", "count", "min", "max"];

fn position(e: &Error) -> (usize, usize) {
    match e {
        Error::Syntax { line, column, .. }
        | Error::Undeclared { line, column, .. }
        | Error::NestedConditional { line, column } => (*line, *column),
        _ => (0, 0),
    }
}

fn further(a: Error, b: Error) -> Error {
    if position(&b) > position(&a) {
        b
    } else {
        a
    }
}

enum Item {
    Assign(Assignment),
    Formula(Formula),
}

impl Item {
    fn head_item(&self) -> Option<HeadItem> {
        match self {
            Item::Assign(a) => Some(HeadItem::Assign(a.clone())),
            Item::Formula(Formula::Atom(a)) => Some(HeadItem::Atom(a.clone())),
            Item::Formula(_) => None,
        }
    }

    fn into_formula(self) -> Formula {
        match self {
            Item::Assign(a) => crate::transforms::assignment_formula(&a),
            Item::Formula(f) => f,
        }
    }
}

fn literal_of(f: &Formula) -> Option<Literal> {
    match f {
        Formula::Atom(a) => Some(Literal::pos(a.clone())),
        _ => match f.as_negation() {
            Some(Formula::Atom(a)) => Some(Literal::neg(a.clone())),
            _ => None,
        },
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    domain: DomainSpec,
    /// Token indices where a conditional term or aggregate was parsed.
    conditional_at: Vec<usize>,
}

impl Parser {
    fn new(toks: Vec<Token>, domain: DomainSpec) -> Self {
        Parser {
            toks,
            pos: 0,
            domain,
            conditional_at: Vec::new(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error_at(&self, idx: usize, message: impl Into<String>) -> Error {
        let t = &self.toks[idx];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let at = self.pos;
                self.advance();
                Ok((s, at))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn declared(&self, name: &str, at: usize) -> Result<Var> {
        if self.domain.contains(name) {
            Ok(Var::new(name))
        } else {
            let t = &self.toks[at];
            Err(Error::Undeclared {
                name: name.to_string(),
                line: t.line,
                column: t.column,
            })
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        match *self.peek() {
            Tok::Int(n) => {
                self.advance();
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    // Directives

    fn directive(&mut self) -> Result<()> {
        let is_int = matches!(self.advance(), Tok::DirInt);
        let mut names = Vec::new();
        loop {
            let (name, at) = self.ident()?;
            if KEYWORDS.contains(&name.as_str()) {
                return Err(self.error_at(at, format!("`{name}` is a reserved word")));
            }
            names.push((name, at));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        let interval = if is_int && matches!(self.peek(), Tok::Int(_) | Tok::Minus) {
            let at = self.pos;
            let lo = self.signed_int()?;
            self.expect(Tok::DotDot, "`..`")?;
            let hi = self.signed_int()?;
            Interval::new(lo, hi).map_err(|_| self.error_at(at, format!("empty interval {lo}..{hi}")))?
        } else {
            DEFAULT_INTERVAL
        };
        self.expect(Tok::Dot, "`.` after declaration")?;
        for (name, at) in names {
            let r = if is_int {
                self.domain.declare_int(Var::new(&name), interval)
            } else {
                self.domain.declare_bool(Var::new(&name))
            };
            r.map_err(|_| {
                self.error_at(at, format!("conflicting declaration of `{name}`"))
            })?;
        }
        Ok(())
    }

    // Terms and expressions

    fn linear_term(&mut self) -> Result<LinearTerm> {
        let neg = self.eat(&Tok::Minus);
        let sign = if neg { -1 } else { 1 };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                if self.eat(&Tok::Star) {
                    let (name, at) = self.ident()?;
                    Ok(LinearTerm::Scaled(sign * n, self.declared(&name, at)?))
                } else {
                    Ok(LinearTerm::Const(sign * n))
                }
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                let at = self.pos;
                self.advance();
                Ok(LinearTerm::Scaled(sign, self.declared(&name, at)?))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn condition(&mut self) -> Result<Formula> {
        let start = self.pos;
        let f = self.formula()?;
        if !f.is_condition_free() {
            let at = self
                .conditional_at
                .iter()
                .copied()
                .filter(|i| *i >= start && *i < self.pos)
                .min()
                .unwrap_or(start);
            let t = &self.toks[at];
            return Err(Error::NestedConditional {
                line: t.line,
                column: t.column,
            });
        }
        Ok(f)
    }

    fn conditional_term(&mut self) -> Result<ConditionalTerm> {
        let at = self.pos;
        self.expect(Tok::LParen, "`(`")?;
        let then_term = self.linear_term()?;
        self.expect(Tok::Bar, "`|` in conditional term")?;
        let else_term = self.linear_term()?;
        self.expect(Tok::Colon, "`:` in conditional term")?;
        let condition = self.condition()?;
        self.expect(Tok::RParen, "`)` to close conditional term")?;
        self.conditional_at.push(at);
        Ok(ConditionalTerm {
            then_term,
            else_term,
            condition,
        })
    }

    fn aggregate(&mut self, function: AggregateFunction) -> Result<Aggregate> {
        let at = self.pos;
        self.advance();
        self.expect(Tok::LBrace, "`{`")?;
        let mut elements = Vec::new();
        if self.peek() != &Tok::RBrace {
            loop {
                let element = if function == AggregateFunction::Count {
                    AggregateElement {
                        term: LinearTerm::Const(1),
                        condition: self.condition()?,
                    }
                } else {
                    let term = self.linear_term()?;
                    let condition = if self.eat(&Tok::Colon) {
                        self.condition()?
                    } else {
                        Formula::top()
                    };
                    AggregateElement { term, condition }
                };
                elements.push(element);
                if !self.eat(&Tok::Semi) {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace, "`}` to close aggregate")?;
        self.conditional_at.push(at);
        Ok(Aggregate { function, elements })
    }

    fn summand(&mut self, negated: bool) -> Result<Summand> {
        let sign = if negated { -1 } else { 1 };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                if self.eat(&Tok::Star) {
                    let (name, at) = self.ident()?;
                    Ok(Summand::Linear(LinearTerm::Scaled(
                        sign * n,
                        self.declared(&name, at)?,
                    )))
                } else {
                    Ok(Summand::Linear(LinearTerm::Const(sign * n)))
                }
            }
            Tok::Undef => {
                self.advance();
                Ok(Summand::Undefined)
            }
            Tok::LParen => {
                let c = self.conditional_term()?;
                Ok(Summand::Conditional(if negated {
                    ConditionalTerm {
                        then_term: c.then_term.negated(),
                        else_term: c.else_term.negated(),
                        condition: c.condition,
                    }
                } else {
                    c
                }))
            }
            Tok::Ident(name) => {
                let function = match name.as_str() {
                    "sum" => Some(AggregateFunction::Sum),
                    "count" => Some(AggregateFunction::Count),
                    "min" => Some(AggregateFunction::Min),
                    "max" => Some(AggregateFunction::Max),
                    _ => None,
                };
                if let Some(function) = function {
                    if self.peek_at(1) == &Tok::LBrace {
                        let aggregate = self.aggregate(function)?;
                        return Ok(Summand::Aggregate { negated, aggregate });
                    }
                }
                if KEYWORDS.contains(&name.as_str()) {
                    return Err(self.unexpected("a term"));
                }
                let at = self.pos;
                self.advance();
                Ok(Summand::Linear(LinearTerm::Scaled(
                    sign,
                    self.declared(&name, at)?,
                )))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn expr(&mut self) -> Result<LinearExpr> {
        let neg = self.eat(&Tok::Minus);
        let mut out = vec![self.summand(neg)?];
        loop {
            if self.eat(&Tok::Plus) {
                out.push(self.summand(false)?);
            } else if self.eat(&Tok::Minus) {
                out.push(self.summand(true)?);
            } else {
                return Ok(LinearExpr(out));
            }
        }
    }

    fn relation(&mut self) -> Option<Relation> {
        let r = match self.peek() {
            Tok::Le => Relation::Le,
            Tok::Lt => Relation::Lt,
            Tok::Eq => Relation::Eq,
            Tok::Ne => Relation::Ne,
            Tok::Ge => Relation::Ge,
            Tok::Gt => Relation::Gt,
            _ => return None,
        };
        self.advance();
        Some(r)
    }

    // Formulas

    fn atom(&mut self) -> Result<Atom> {
        if matches!(self.peek(), Tok::Ident(s) if s == "def") && self.peek_at(1) == &Tok::LParen {
            self.advance();
            self.advance();
            let e = self.expr()?;
            self.expect(Tok::RParen, "`)` to close def")?;
            return Ok(Atom::Def(e));
        }
        let start = self.pos;
        let lhs = self.expr()?;
        if let Some(rel) = self.relation() {
            let rhs = self.expr()?;
            return Ok(Atom::Compare(Comparison::new(lhs, rel, rhs)));
        }
        if self.pos == start + 1 {
            if let Tok::Ident(name) = &self.toks[start].tok {
                if self.domain.is_bool(name) {
                    return Ok(Atom::Bool(Var::new(name)));
                }
                return Err(self.error_at(
                    start,
                    format!("integer variable `{name}` used as a Boolean atom"),
                ));
            }
        }
        Err(self.unexpected("a comparison operator"))
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::True => {
                self.advance();
                Ok(Formula::top())
            }
            Tok::False => {
                self.advance();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                let save = self.pos;
                let as_atom = match self.atom() {
                    Ok(a) => return Ok(Formula::Atom(a)),
                    Err(e) => e,
                };
                self.pos = save;
                self.advance();
                let grouped = self.formula().and_then(|f| {
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(f)
                });
                grouped.map_err(|e| further(as_atom, e))
            }
            _ => Ok(Formula::Atom(self.atom()?)),
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if matches!(self.peek(), Tok::Ident(s) if s == "not") {
            self.advance();
            return Ok(Formula::negation(self.unary()?));
        }
        self.primary()
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            return Ok(Formula::implies(lhs, self.formula()?));
        }
        Ok(lhs)
    }

    // Statements

    fn head_item(&mut self) -> Result<Item> {
        if let (Tok::Ident(name), Tok::Assign) = (self.peek().clone(), self.peek_at(1)) {
            let at = self.pos;
            let target = self.declared(&name, at)?;
            if !self.domain.is_int(&name) {
                return Err(self.error_at(at, format!("cannot assign to Boolean variable `{name}`")));
            }
            self.advance();
            self.advance();
            let lower = self.expr()?;
            let upper = if self.eat(&Tok::DotDot) {
                self.expr()?
            } else {
                lower.clone()
            };
            return Ok(Item::Assign(Assignment::new(target, lower, upper)));
        }
        Ok(Item::Formula(self.formula()?))
    }

    fn body(&mut self) -> Result<Vec<Formula>> {
        if self.peek() == &Tok::Dot {
            return Ok(Vec::new());
        }
        let mut out = vec![self.formula()?];
        while self.eat(&Tok::Comma) {
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<Statement> {
        let start = self.pos;
        let mut items = Vec::new();
        if self.peek() != &Tok::If {
            items.push(self.head_item()?);
            while self.eat(&Tok::Semi) {
                items.push(self.head_item()?);
            }
        }
        let body = if self.eat(&Tok::If) {
            Some(self.body()?)
        } else {
            None
        };
        self.expect(Tok::Dot, "`.` at end of statement")?;

        let head: Option<Vec<HeadItem>> = items.iter().map(Item::head_item).collect();
        match body {
            None => {
                if items.len() == 1 && matches!(items[0], Item::Formula(_)) {
                    return Ok(Statement::Formula(items.pop().unwrap().into_formula()));
                }
                match head {
                    Some(head) => Ok(Statement::Rule(Rule::new(head, Vec::new()))),
                    None => Err(self.error_at(
                        start,
                        "a disjunctive head may only list assignments and atoms",
                    )),
                }
            }
            Some(body) => {
                let lits: Option<Vec<Literal>> = body.iter().map(literal_of).collect();
                if let (Some(head), Some(lits)) = (head, lits) {
                    return Ok(Statement::Rule(Rule::new(head, lits)));
                }
                let h = Formula::disj(items.into_iter().map(Item::into_formula));
                if body.is_empty() {
                    Ok(Statement::Formula(h))
                } else {
                    Ok(Statement::Formula(Formula::implies(Formula::conj(body), h)))
                }
            }
        }
    }

    fn skip_statement(&mut self) {
        while !matches!(self.peek(), Tok::Dot | Tok::Eof) {
            self.advance();
        }
        self.advance();
    }
}

/// Parses a file. Declarations may appear anywhere; they apply to the whole file.
pub fn parse(src: &str) -> Result<Source> {
    let theory = parse_theory(src)?;
    Ok(match LcProgram::from_theory(&theory) {
        Some(p) => Source::Program(p),
        None => Source::Theory(theory),
    })
}

/// Parses a file as a theory regardless of its shape.
pub fn parse_theory(src: &str) -> Result<Theory> {
    parse_with_domain(src, DomainSpec::new())
}

/// Parses a file whose variables may also be declared by `domain`.
pub fn parse_with_domain(src: &str, domain: DomainSpec) -> Result<Theory> {
    let toks = tokenize(src)?;
    let mut p = Parser::new(toks, domain);
    let mut starts = Vec::new();
    while p.peek() != &Tok::Eof {
        if matches!(p.peek(), Tok::DirInt | Tok::DirBool) {
            p.directive()?;
        } else {
            starts.push(p.pos);
            p.skip_statement();
        }
    }
    let mut statements = Vec::with_capacity(starts.len());
    for s in starts {
        p.pos = s;
        statements.push(p.statement()?);
    }
    Ok(Theory::new(p.domain, statements))
}

/// Parses a single formula over an existing domain.
pub fn parse_formula(src: &str, domain: &DomainSpec) -> Result<Formula> {
    let mut p = Parser::new(tokenize(src)?, domain.clone());
    let f = p.formula()?;
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of formula"));
    }
    Ok(f)
}

/// Parses a single linear expression over an existing domain.
pub fn parse_expr(src: &str, domain: &DomainSpec) -> Result<LinearExpr> {
    let mut p = Parser::new(tokenize(src)?, domain.clone());
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of expression"));
    }
    Ok(e)
}
