//! Concrete syntax: reading and printing theories and programs.
//!
//! ```text
//! #int x, y 0..9.      % integer variables with their interval
//! #bool p.             % Boolean variables
//! y := 5 :- p.         % LC rule
//! p ; q :- x >= 3.     % HT_C rule with atom heads
//! x - (y|3:p) <= 4.    % formula with a conditional term
//! y = sum{x : p; 1}.
//! ```
//!
//! Formula operators, loosest first: `->` (right associative), `|`, `&`, `not`.

mod lexer;
mod parse;
mod print;

pub use parse::{parse, parse_expr, parse_formula, parse_theory, parse_with_domain};
pub use print::{
    print_assignment, print_atom, print_domain, print_expr, print_formula, print_program,
    print_rule, print_statement, print_term, print_theory,
};
