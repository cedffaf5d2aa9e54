use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::frames::VariableId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl ArithOp {
    fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aexp {
    Int(i64),
    Atom(String),
    Var(VariableId),
    Bin(ArithOp, Box<Aexp>, Box<Aexp>),
}

impl Aexp {
    pub fn bin(op: ArithOp, lhs: Aexp, rhs: Aexp) -> Aexp {
        Aexp::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    fn precedence(&self) -> u8 {
        match self {
            Aexp::Bin(op, ..) => op.precedence(),
            _ => 3,
        }
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Aexp::Var(v) => {
                out.insert(v.as_str());
            }
            Aexp::Bin(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Aexp::Int(_) | Aexp::Atom(_) => {}
        }
    }
}

impl fmt::Display for Aexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aexp::Int(n) => write!(f, "{n}"),
            Aexp::Atom(a) => f.write_str(a),
            Aexp::Var(v) => write!(f, "{v}"),
            Aexp::Bin(op, l, r) => {
                let p = op.precedence();
                if l.precedence() < p {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " {} ", op.symbol())?;
                // Operators are left-associative.
                if r.precedence() <= p {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
}

impl CmpOp {
    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bexp {
    True,
    False,
    Cmp(CmpOp, Aexp, Aexp),
    Not(Box<Bexp>),
    And(Box<Bexp>, Box<Bexp>),
    Or(Box<Bexp>, Box<Bexp>),
}

impl std::ops::Not for Bexp {
    type Output = Bexp;

    fn not(self) -> Bexp {
        Bexp::Not(Box::new(self))
    }
}

impl Bexp {
    pub fn and(l: Bexp, r: Bexp) -> Bexp {
        Bexp::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Bexp, r: Bexp) -> Bexp {
        Bexp::Or(Box::new(l), Box::new(r))
    }

    fn precedence(&self) -> u8 {
        match self {
            Bexp::Or(..) => 1,
            Bexp::And(..) => 2,
            Bexp::Not(_) => 3,
            _ => 4,
        }
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Bexp::True | Bexp::False => {}
            Bexp::Cmp(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Bexp::Not(b) => b.collect_vars(out),
            Bexp::And(l, r) | Bexp::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, b: &Bexp, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({b})")
    } else {
        write!(f, "{b}")
    }
}

impl fmt::Display for Bexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bexp::True => f.write_str("true"),
            Bexp::False => f.write_str("false"),
            Bexp::Cmp(op, l, r) => write!(f, "{l} {} {r}", op.symbol()),
            Bexp::Not(b) => {
                f.write_str("not ")?;
                write_operand(f, b, b.precedence() < 3)
            }
            Bexp::And(l, r) => {
                write_operand(f, l, l.precedence() < 2)?;
                f.write_str(" and ")?;
                write_operand(f, r, r.precedence() <= 2)
            }
            Bexp::Or(l, r) => {
                write_operand(f, l, l.precedence() < 1)?;
                f.write_str(" or ")?;
                write_operand(f, r, r.precedence() <= 1)
            }
        }
    }
}

/// A command of the probabilistic while-language.
#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Skip,
    Assign(VariableId, Aexp),
    Seq(Box<Command>, Box<Command>),
    If(Bexp, Box<Command>, Box<Command>),
    While(Bexp, Box<Command>),
    /// Runs the first command with the given probability, the second otherwise.
    Choice(f64, Box<Command>, Box<Command>),
}

impl Command {
    pub fn assign(var: &str, a: Aexp) -> Result<Command> {
        Ok(Command::Assign(VariableId::new(var)?, a))
    }

    pub fn seq(c0: Command, c1: Command) -> Command {
        Command::Seq(Box::new(c0), Box::new(c1))
    }

    pub fn if_(b: Bexp, c0: Command, c1: Command) -> Command {
        Command::If(b, Box::new(c0), Box::new(c1))
    }

    pub fn while_(b: Bexp, body: Command) -> Command {
        Command::While(b, Box::new(body))
    }

    pub fn choice(p: f64, c0: Command, c1: Command) -> Result<Command> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Syntax { line: 0, column: 0, message: format!("probability {p} outside [0, 1]") });
        }
        Ok(Command::Choice(p, Box::new(c0), Box::new(c1)))
    }

    /// Every variable the command reads or writes.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Command::Skip => {}
            Command::Assign(x, a) => {
                out.insert(x.as_str());
                a.collect_vars(out);
            }
            Command::Seq(c0, c1) | Command::Choice(_, c0, c1) => {
                c0.collect_vars(out);
                c1.collect_vars(out);
            }
            Command::If(b, c0, c1) => {
                b.collect_vars(out);
                c0.collect_vars(out);
                c1.collect_vars(out);
            }
            Command::While(b, c) => {
                b.collect_vars(out);
                c.collect_vars(out);
            }
        }
    }

    /// True when the command contains no loops.
    pub fn is_loop_free(&self) -> bool {
        match self {
            Command::Skip | Command::Assign(..) => true,
            Command::Seq(c0, c1) | Command::If(_, c0, c1) | Command::Choice(_, c0, c1) => {
                c0.is_loop_free() && c1.is_loop_free()
            }
            Command::While(..) => false,
        }
    }

    /// Canonical source text.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.write_indented(&mut out, 0);
        out.push('\n');
        out
    }

    fn write_indented(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        match self {
            Command::Skip => {
                out.push_str(&pad);
                out.push_str("skip");
            }
            Command::Assign(x, a) => out.push_str(&format!("{pad}{x} := {a}")),
            Command::Seq(c0, c1) => {
                c0.write_indented(out, depth);
                out.push_str(";\n");
                c1.write_indented(out, depth);
            }
            Command::If(b, c0, c1) => {
                out.push_str(&format!("{pad}if {b} then\n"));
                c0.write_indented(out, depth + 1);
                out.push_str(&format!("\n{pad}else\n"));
                c1.write_indented(out, depth + 1);
                out.push_str(&format!("\n{pad}end"));
            }
            Command::While(b, c) => {
                out.push_str(&format!("{pad}while {b} do\n"));
                c.write_indented(out, depth + 1);
                out.push_str(&format!("\n{pad}end"));
            }
            Command::Choice(p, c0, c1) => {
                out.push_str(&format!("{pad}{{\n"));
                c0.write_indented(out, depth + 1);
                out.push_str(&format!("\n{pad}}} [{p}] {{\n"));
                c1.write_indented(out, depth + 1);
                out.push_str(&format!("\n{pad}}}"));
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pretty().trim_end())
    }
}
