//! Boolean formula AST, the input to BDD compilation.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use crate::diagram::{BinOp, Var};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Const(bool),
    Ref(Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Panics on index 0.
    pub fn var(index: u32) -> Self {
        Formula::Ref(Var::new(index))
    }

    pub fn binary(op: BinOp, a: Formula, b: Formula) -> Self {
        let (a, b) = (Box::new(a), Box::new(b));
        match op {
            BinOp::And => Formula::And(a, b),
            BinOp::Or => Formula::Or(a, b),
            BinOp::Xor => Formula::Xor(a, b),
        }
    }

    /// Left-nested conjunction; `Const(true)` when empty.
    pub fn all(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(|a, b| a & b).unwrap_or(Formula::Const(true))
    }

    /// Left-nested disjunction; `Const(false)` when empty.
    pub fn any(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(|a, b| a | b).unwrap_or(Formula::Const(false))
    }

    /// Largest variable index occurring in the formula, 0 if none.
    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Const(_) => 0,
            Formula::Ref(v) => v.index(),
            Formula::Not(a) => a.max_var(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => a.max_var().max(b.max_var()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Ref(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Ref(_) => 1,
            Formula::Not(a) => 1 + a.len(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => 1 + a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Const(_) | Formula::Ref(_) => vec![],
            Formula::Not(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Xor(a, b) => vec![a, b],
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::Xor(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Const(_) | Formula::Ref(_) => 4,
        }
    }
}

impl Not for Formula {
    type Output = Formula;
    fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }
}

impl BitAnd for Formula {
    type Output = Formula;
    fn bitand(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }
}

impl BitOr for Formula {
    type Output = Formula;
    fn bitor(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }
}

impl BitXor for Formula {
    type Output = Formula;
    fn bitxor(self, rhs: Formula) -> Formula {
        Formula::Xor(Box::new(self), Box::new(rhs))
    }
}

/// Prints in the parser's surface syntax with the minimum parentheses
/// needed to reparse to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, sym) = match self {
            Formula::Const(c) => return f.write_str(if *c { "1" } else { "0" }),
            Formula::Ref(v) => return write!(f, "{v}"),
            Formula::Not(a) => {
                return if a.precedence() < 4 {
                    write!(f, "!({a})")
                } else {
                    write!(f, "!{a}")
                };
            }
            Formula::And(a, b) => (a, b, '&'),
            Formula::Or(a, b) => (a, b, '|'),
            Formula::Xor(a, b) => (a, b, '^'),
        };
        let p = self.precedence();
        // left-associative: the left operand may share our level, the right may not
        if a.precedence() < p {
            write!(f, "({a})")?;
        } else {
            write!(f, "{a}")?;
        }
        write!(f, " {sym} ")?;
        if b.precedence() <= p {
            write!(f, "({b})")
        } else {
            write!(f, "{b}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_minimal_parens() {
        let f = (Formula::var(1) ^ Formula::var(2)) | Formula::var(3);
        assert_eq!(f.to_string(), "x1 ^ x2 | x3");
        let g = Formula::var(1) & (Formula::var(2) | !Formula::var(3));
        assert_eq!(g.to_string(), "x1 & (x2 | !x3)");
        let h = Formula::var(1) & (Formula::var(2) & Formula::var(3));
        assert_eq!(h.to_string(), "x1 & (x2 & x3)");
        assert_eq!((!(Formula::var(1) & Formula::Const(true))).to_string(), "!(x1 & 1)");
    }

    #[test]
    fn metrics() {
        let f = !(Formula::var(4) & Formula::var(2));
        assert_eq!(f.max_var(), 4);
        assert_eq!(f.depth(), 2);
        assert_eq!(f.len(), 4);
        assert_eq!(Formula::all([]), Formula::Const(true));
        assert_eq!(Formula::any([]), Formula::Const(false));
    }
}
