//! Brute-force semantics used as ground truth.
//!
//! Nothing here calls into either backend's constructors or connectives:
//! formulas are evaluated by walking the AST, and diagrams by following one
//! path per assignment through [`DiagramView`].
//!
//! Assignment `k` sets `x(i+1)` to bit `i` of `k`. The hex form of a table
//! reads the bits as the number `sum(bits[k] << k)`, printed most
//! significant digit first with `ceil(2^n / 4)` digits (at least one).

use std::fmt;

use crate::diagram::{evaluate, Assignment, BinOp, DiagramView};
use crate::error::{Error, Result};
use crate::formula::Formula;

/// Largest arity a table may have.
pub const MAX_TABLE_VARS: u32 = 20;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruthTable {
    n: u32,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn from_fn(n: u32, mut f: impl FnMut(&Assignment) -> Result<bool>) -> Result<Self> {
        if n > MAX_TABLE_VARS {
            return Err(Error::TooManyVars {
                vars: n,
                limit: MAX_TABLE_VARS,
            });
        }
        let bits = (0..1u64 << n)
            .map(|k| f(&Assignment::from_index(k, n)))
            .collect::<Result<_>>()?;
        Ok(TruthTable { n, bits })
    }

    pub fn from_bits(n: u32, bits: Vec<bool>) -> Result<Self> {
        if n > MAX_TABLE_VARS {
            return Err(Error::TooManyVars {
                vars: n,
                limit: MAX_TABLE_VARS,
            });
        }
        assert_eq!(bits.len(), 1usize << n, "a table over {n} variables has 2^{n} rows");
        Ok(TruthTable { n, bits })
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn not(&self) -> TruthTable {
        TruthTable {
            n: self.n,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn binop(&self, op: BinOp, other: &TruthTable) -> Result<TruthTable> {
        check_arity(self, other)?;
        Ok(TruthTable {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| op.eval(a, b))
                .collect(),
        })
    }

    pub fn to_hex(&self) -> String {
        let digits = self.bits.len().div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4)
                    .filter(|&i| self.bits.get(d * 4 + i).copied().unwrap_or(false))
                    .fold(0u32, |acc, i| acc | 1 << i);
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(n: u32, hex: &str) -> Option<TruthTable> {
        let rows = 1usize << n;
        if n > MAX_TABLE_VARS || hex.len() != rows.div_ceil(4) {
            return None;
        }
        let mut bits = vec![false; rows];
        for (d, c) in hex.chars().rev().enumerate() {
            let nibble = c.to_digit(16)?;
            for i in 0..4 {
                let bit = nibble >> i & 1 == 1;
                match bits.get_mut(d * 4 + i) {
                    Some(slot) => *slot = bit,
                    None if bit => return None,
                    None => {}
                }
            }
        }
        Some(TruthTable { n, bits })
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn check_arity(a: &TruthTable, b: &TruthTable) -> Result<()> {
    if a.n != b.n {
        return Err(Error::ArityMismatch { left: a.n, right: b.n });
    }
    Ok(())
}

/// Direct recursive evaluation of the AST.
pub fn eval_formula(f: &Formula, a: &Assignment) -> Result<bool> {
    Ok(match f {
        Formula::Const(b) => *b,
        Formula::Ref(v) => a.get(*v)?,
        Formula::Not(x) => !eval_formula(x, a)?,
        Formula::And(x, y) => eval_formula(x, a)? & eval_formula(y, a)?,
        Formula::Or(x, y) => eval_formula(x, a)? | eval_formula(y, a)?,
        Formula::Xor(x, y) => eval_formula(x, a)? ^ eval_formula(y, a)?,
    })
}

pub fn formula_truth_table(f: &Formula, n: u32) -> Result<TruthTable> {
    let m = f.max_var();
    if m > n {
        return Err(Error::VarOutOfRange { var: m, limit: n });
    }
    TruthTable::from_fn(n, |a| eval_formula(f, a))
}

/// Table of a diagram, one path walk per assignment.
pub fn bdd_truth_table<V: DiagramView>(view: &V, root: V::Ref, n: u32) -> Result<TruthTable> {
    TruthTable::from_fn(n, |a| evaluate(view, root, a))
}

pub fn tables_equal(a: &TruthTable, b: &TruthTable) -> Result<bool> {
    check_arity(a, b)?;
    Ok(a.bits == b.bits)
}

/// Number of ways to place `n` non-attacking queens on an `n x n` board,
/// by enumerating every permutation of columns.
pub fn queens_solutions(n: usize) -> u64 {
    fn place(cols: &mut Vec<usize>, used: &mut [bool], n: usize) -> u64 {
        let row = cols.len();
        if row == n {
            let attacks = (0..n).any(|r1| (r1 + 1..n).any(|r2| cols[r1].abs_diff(cols[r2]) == r2 - r1));
            return u64::from(!attacks);
        }
        let mut total = 0;
        for c in 0..n {
            if !used[c] {
                used[c] = true;
                cols.push(c);
                total += place(cols, used, n);
                cols.pop();
                used[c] = false;
            }
        }
        total
    }
    place(&mut Vec::with_capacity(n), &mut vec![false; n], n)
}
