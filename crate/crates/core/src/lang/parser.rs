//! Concrete syntax:
//!
//! ```text
//! c ::= skip | x := a | c ; c | if b then c else c end | while b do c end
//!     | { c } [ p ] { c }
//! a ::= n | Atom | x | a + a | a - a | a * a | ( a )
//! b ::= true | false | a = a | a != a | a < a | a <= a
//!     | not b | b and b | b or b | ( b )
//! ```
//!
//! Lowercase-initial identifiers are variables, uppercase-initial ones are
//! atoms. `#` starts a comment running to the end of the line.

use super::ast::{Aexp, ArithOp, Bexp, CmpOp, Command};
use crate::error::{Error, Result};
use crate::frames::VariableId;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Atom(String),
    Number(String),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const KEYWORDS: &[&str] = &["skip", "if", "then", "else", "end", "while", "do", "true", "false", "not", "and", "or"];

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        let len = if c.is_whitespace() {
            1
        } else if c == '#' {
            chars[i..].iter().take_while(|&&x| x != '\n').count()
        } else {
            let (tok, len) = lex_token(&chars[i..]).ok_or_else(|| Error::Syntax {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            })?;
            out.push(Token { tok, line, column: col });
            len
        };
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

/// The token at the start of `rest` and its length in chars.
fn lex_token(rest: &[char]) -> Option<(Tok, usize)> {
    let c = rest[0];
    if c.is_ascii_alphabetic() || c == '_' {
        let len = rest.iter().take_while(|x| x.is_ascii_alphanumeric() || **x == '_').count();
        let word: String = rest[..len].iter().collect();
        let tok = if c.is_ascii_uppercase() { Tok::Atom(word) } else { Tok::Ident(word) };
        return Some((tok, len));
    }
    if c.is_ascii_digit() {
        let mut len = rest.iter().take_while(|x| x.is_ascii_digit()).count();
        if len + 1 < rest.len() && rest[len] == '.' && rest[len + 1].is_ascii_digit() {
            len += 1 + rest[len + 1..].iter().take_while(|x| x.is_ascii_digit()).count();
        }
        return Some((Tok::Number(rest[..len].iter().collect()), len));
    }
    let two: String = rest.iter().take(2).collect();
    for s in [":=", "!=", "<="] {
        if two == s {
            return Some((Tok::Sym(s), 2));
        }
    }
    let sym = match c {
        ';' => ";",
        '(' => "(",
        ')' => ")",
        '{' => "{",
        '}' => "}",
        '[' => "[",
        ']' => "]",
        '+' => "+",
        '-' => "-",
        '*' => "*",
        '=' => "=",
        '<' => "<",
        '≠' => "!=",
        '≤' => "<=",
        _ => return None,
    };
    Some((Tok::Sym(sym), 1))
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax { line: t.line, column: t.column, message: message.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) | Tok::Atom(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == kw)
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", self.describe()))
        }
    }

    fn seq(&mut self) -> Result<Command> {
        let first = self.command()?;
        if self.is_sym(";") {
            self.bump();
            let rest = self.seq()?;
            Ok(Command::seq(first, rest))
        } else {
            Ok(first)
        }
    }

    fn command(&mut self) -> Result<Command> {
        match self.peek().clone() {
            Tok::Ident(w) if w == "skip" => {
                self.bump();
                Ok(Command::Skip)
            }
            Tok::Ident(w) if w == "if" => {
                self.bump();
                let b = self.bexp()?;
                self.expect_kw("then")?;
                let c0 = self.seq()?;
                self.expect_kw("else")?;
                let c1 = self.seq()?;
                self.expect_kw("end")?;
                Ok(Command::if_(b, c0, c1))
            }
            Tok::Ident(w) if w == "while" => {
                self.bump();
                let b = self.bexp()?;
                self.expect_kw("do")?;
                let body = self.seq()?;
                self.expect_kw("end")?;
                Ok(Command::while_(b, body))
            }
            Tok::Ident(w) if !KEYWORDS.contains(&w.as_str()) => {
                self.bump();
                let var = VariableId::new(w)?;
                self.expect_sym(":=")?;
                let a = self.aexp()?;
                Ok(Command::Assign(var, a))
            }
            Tok::Sym("{") => {
                self.bump();
                let c0 = self.seq()?;
                self.expect_sym("}")?;
                self.expect_sym("[")?;
                let p = self.probability()?;
                self.expect_sym("]")?;
                self.expect_sym("{")?;
                let c1 = self.seq()?;
                self.expect_sym("}")?;
                Ok(Command::Choice(p, Box::new(c0), Box::new(c1)))
            }
            _ => self.error(format!("expected a command, found {}", self.describe())),
        }
    }

    fn probability(&mut self) -> Result<f64> {
        match self.peek().clone() {
            Tok::Number(n) => {
                let p: f64 = n.parse().map_err(|_| Error::Syntax {
                    line: self.toks[self.pos].line,
                    column: self.toks[self.pos].column,
                    message: format!("bad probability `{n}`"),
                })?;
                if !(0.0..=1.0).contains(&p) {
                    return self.error(format!("probability {n} outside [0, 1]"));
                }
                self.bump();
                Ok(p)
            }
            _ => self.error(format!("expected a probability, found {}", self.describe())),
        }
    }

    fn aexp(&mut self) -> Result<Aexp> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.is_sym("+") {
                ArithOp::Add
            } else if self.is_sym("-") {
                ArithOp::Sub
            } else {
                return Ok(lhs);
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Aexp::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Aexp> {
        let mut lhs = self.factor()?;
        while self.is_sym("*") {
            self.bump();
            let rhs = self.factor()?;
            lhs = Aexp::bin(ArithOp::Mul, lhs, rhs);
        }
        Ok(lhs)
    }

    fn integer(&mut self, negative: bool) -> Result<Aexp> {
        let Tok::Number(n) = self.peek().clone() else {
            return self.error(format!("expected an integer, found {}", self.describe()));
        };
        if n.contains('.') {
            return self.error(format!("expected an integer, found `{n}`"));
        }
        let text = if negative { format!("-{n}") } else { n };
        match text.parse::<i64>() {
            Ok(v) => {
                self.bump();
                Ok(Aexp::Int(v))
            }
            Err(_) => self.error(format!("integer `{text}` out of range")),
        }
    }

    fn factor(&mut self) -> Result<Aexp> {
        match self.peek().clone() {
            Tok::Number(_) => self.integer(false),
            Tok::Sym("-") => {
                self.bump();
                self.integer(true)
            }
            Tok::Atom(a) => {
                self.bump();
                Ok(Aexp::Atom(a))
            }
            Tok::Ident(w) if !KEYWORDS.contains(&w.as_str()) => {
                self.bump();
                Ok(Aexp::Var(VariableId::new(w)?))
            }
            Tok::Sym("(") => {
                self.bump();
                let a = self.aexp()?;
                self.expect_sym(")")?;
                Ok(a)
            }
            _ => self.error(format!("expected an expression, found {}", self.describe())),
        }
    }

    fn bexp(&mut self) -> Result<Bexp> {
        let mut lhs = self.conj()?;
        while self.is_kw("or") {
            self.bump();
            let rhs = self.conj()?;
            lhs = Bexp::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Bexp> {
        let mut lhs = self.negation()?;
        while self.is_kw("and") {
            self.bump();
            let rhs = self.negation()?;
            lhs = Bexp::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Bexp> {
        if self.is_kw("not") {
            self.bump();
            return Ok(!self.negation()?);
        }
        self.batom()
    }

    fn batom(&mut self) -> Result<Bexp> {
        if self.is_kw("true") {
            self.bump();
            return Ok(Bexp::True);
        }
        if self.is_kw("false") {
            self.bump();
            return Ok(Bexp::False);
        }
        if self.is_sym("(") {
            // Either a parenthesized Boolean or the left operand of a comparison.
            let save = self.pos;
            self.bump();
            if let Ok(b) = self.bexp() {
                if self.is_sym(")") {
                    self.bump();
                    if !self.at_cmp_op() && !self.at_arith_op() {
                        return Ok(b);
                    }
                }
            }
            self.pos = save;
        }
        let lhs = self.aexp()?;
        let op = match self.peek() {
            Tok::Sym("=") => CmpOp::Eq,
            Tok::Sym("!=") => CmpOp::Ne,
            Tok::Sym("<") => CmpOp::Lt,
            Tok::Sym("<=") => CmpOp::Le,
            _ => return self.error(format!("expected a comparison, found {}", self.describe())),
        };
        self.bump();
        let rhs = self.aexp()?;
        Ok(Bexp::Cmp(op, lhs, rhs))
    }

    fn at_cmp_op(&self) -> bool {
        ["=", "!=", "<", "<="].iter().any(|s| self.is_sym(s))
    }

    fn at_arith_op(&self) -> bool {
        ["+", "-", "*"].iter().any(|s| self.is_sym(s))
    }
}

/// Parses a whole program.
pub fn parse_program(src: &str) -> Result<Command> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let c = p.seq()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {} after the program", p.describe()));
    }
    Ok(c)
}

/// Parses a standalone Boolean expression.
pub fn parse_bexp(src: &str) -> Result<Bexp> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let b = p.bexp()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {} after the expression", p.describe()));
    }
    Ok(b)
}

/// Parses a standalone arithmetic expression.
pub fn parse_aexp(src: &str) -> Result<Aexp> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let a = p.aexp()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {} after the expression", p.describe()));
    }
    Ok(a)
}
