//! Domain types shared by both backends, plus read-only traversals
//! (evaluation, size, model counting) that work over any backend through
//! [`DiagramView`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::num::NonZeroU32;

use crate::error::{Error, Result};

/// A decision variable. Index 1 is the root-most level; a node's children
/// always carry strictly larger indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(NonZeroU32);

impl Var {
    /// Panics if `index` is zero.
    pub fn new(index: u32) -> Self {
        Self::try_new(index).expect("variable indices start at 1")
    }

    pub fn try_new(index: u32) -> Option<Self> {
        NonZeroU32::new(index).map(Var)
    }

    pub fn index(self) -> u32 {
        self.0.get()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A BDD expression in the persistent store: one of the two leaves, or a
/// reference to an inner node by its (1-based) identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NodeRef {
    False,
    True,
    Inner(u32),
}

impl NodeRef {
    pub fn leaf(value: bool) -> Self {
        if value {
            NodeRef::True
        } else {
            NodeRef::False
        }
    }

    pub fn inner_id(self) -> Option<u32> {
        match self {
            NodeRef::Inner(id) => Some(id),
            _ => None,
        }
    }

    pub fn is_leaf(self) -> bool {
        !matches!(self, NodeRef::Inner(_))
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::False => f.write_str("F"),
            NodeRef::True => f.write_str("T"),
            NodeRef::Inner(id) => write!(f, "{id}"),
        }
    }
}

/// Decision node `(low, var, high)`: `low` is taken when `var` is 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Node {
    pub low: NodeRef,
    pub var: Var,
    pub high: NodeRef,
}

impl Node {
    pub fn new(low: NodeRef, var: Var, high: NodeRef) -> Self {
        Node { low, var, high }
    }
}

/// True when a node with these children must not be materialized.
pub fn node_should_collapse<R: PartialEq>(low: R, high: R) -> bool {
    low == high
}

/// The three memoized binary connectives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BinOp {
    And,
    Or,
    Xor,
}

impl BinOp {
    pub const ALL: [BinOp; 3] = [BinOp::And, BinOp::Or, BinOp::Xor];

    pub fn eval(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::And => a && b,
            BinOp::Or => a || b,
            BinOp::Xor => a ^ b,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BinOp::And => '&',
            BinOp::Or => '|',
            BinOp::Xor => '^',
        }
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Xor => "xor",
        })
    }
}

/// What a binary operation can decide without recursing.
pub(crate) enum Terminal<R> {
    Done(R),
    Negate(R),
}

/// Leaf short-circuits shared by both backends. Every pair involving a leaf
/// is resolved here, so memo tables only ever see inner/inner keys.
pub(crate) fn terminal_case<R: Copy + Eq>(
    op: BinOp,
    a: R,
    b: R,
    leaf: impl Fn(R) -> Option<bool>,
    constant: impl Fn(bool) -> R,
) -> Option<Terminal<R>> {
    use Terminal::*;
    let (la, lb) = (leaf(a), leaf(b));
    match op {
        BinOp::And => match (la, lb) {
            (Some(false), _) | (_, Some(false)) => Some(Done(constant(false))),
            (Some(true), _) => Some(Done(b)),
            (_, Some(true)) => Some(Done(a)),
            _ if a == b => Some(Done(a)),
            _ => None,
        },
        BinOp::Or => match (la, lb) {
            (Some(true), _) | (_, Some(true)) => Some(Done(constant(true))),
            (Some(false), _) => Some(Done(b)),
            (_, Some(false)) => Some(Done(a)),
            _ if a == b => Some(Done(a)),
            _ => None,
        },
        BinOp::Xor => match (la, lb) {
            (Some(false), _) => Some(Done(b)),
            (_, Some(false)) => Some(Done(a)),
            _ if a == b => Some(Done(constant(false))),
            (Some(true), _) => Some(Negate(b)),
            (_, Some(true)) => Some(Negate(a)),
            _ => None,
        },
    }
}

/// Hit/miss pair for one table.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct Counter {
    pub hits: u64,
    pub misses: u64,
}

/// Interning and memoization counters kept by both backends.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct Stats {
    pub intern: Counter,
    pub not: Counter,
    pub and: Counter,
    pub or: Counter,
    pub xor: Counter,
}

impl Stats {
    pub fn binop(&self, op: BinOp) -> Counter {
        match op {
            BinOp::And => self.and,
            BinOp::Or => self.or,
            BinOp::Xor => self.xor,
        }
    }

    pub(crate) fn binop_mut(&mut self, op: BinOp) -> &mut Counter {
        match op {
            BinOp::And => &mut self.and,
            BinOp::Or => &mut self.or,
            BinOp::Xor => &mut self.xor,
        }
    }

    pub fn memo_hits(&self) -> u64 {
        self.not.hits + self.and.hits + self.or.hits + self.xor.hits
    }

    pub fn memo_misses(&self) -> u64 {
        self.not.misses + self.and.misses + self.or.misses + self.xor.misses
    }
}

/// Total assignment of the variables `x1..=xn`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    /// `values[i]` is the value of `x(i+1)`.
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// Assignment number `k` in little-endian order: bit `i` of `k` is the
    /// value of `x(i+1)`.
    pub fn from_index(k: u64, n: u32) -> Self {
        Assignment {
            values: (0..n).map(|i| (k >> i) & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, var: Var) -> Result<bool> {
        self.values
            .get(var.index() as usize - 1)
            .copied()
            .ok_or(Error::VarOutOfRange {
                var: var.index(),
                limit: self.len(),
            })
    }
}

/// One step of looking inside a diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Decoded<R> {
    Leaf(bool),
    Inner { var: Var, low: R, high: R },
}

/// Read-only access to a backend's node graph.
pub trait DiagramView {
    type Ref: Copy + Eq + Hash + fmt::Debug;

    fn decode(&self, r: Self::Ref) -> Result<Decoded<Self::Ref>>;

    /// Numeric identity used for ordering and naming. Children must have a
    /// smaller ident than their parents in well-formed states.
    fn ident(&self, r: Self::Ref) -> u64;

    /// Graph node name used in DOT output.
    fn name(&self, r: Self::Ref) -> String {
        format!("n{}", self.ident(r))
    }

    /// Upper bound on path length; walks longer than this indicate a cycle.
    fn node_count(&self) -> usize;
}

/// Follows a single path from `root` under `assignment`.
pub fn evaluate<V: DiagramView>(view: &V, root: V::Ref, assignment: &Assignment) -> Result<bool> {
    let mut cur = root;
    for _ in 0..=view.node_count() {
        match view.decode(cur)? {
            Decoded::Leaf(b) => return Ok(b),
            Decoded::Inner { var, low, high } => {
                cur = if assignment.get(var)? { high } else { low };
            }
        }
    }
    Err(Error::Cycle)
}

/// Distinct nodes reachable from `root`, leaves included, children before
/// parents.
pub fn reachable<V: DiagramView>(view: &V, root: V::Ref) -> Result<Vec<V::Ref>> {
    let mut seen = HashSet::new();
    let mut on_path = HashSet::new();
    let mut order = Vec::new();
    // (node, children already pushed)
    let mut stack = vec![(root, false)];
    while let Some((r, expanded)) = stack.pop() {
        if expanded {
            on_path.remove(&r);
            order.push(r);
            continue;
        }
        if seen.contains(&r) {
            continue;
        }
        if !on_path.insert(r) {
            return Err(Error::Cycle);
        }
        stack.push((r, true));
        if let Decoded::Inner { low, high, .. } = view.decode(r)? {
            for c in [high, low] {
                if on_path.contains(&c) {
                    return Err(Error::Cycle);
                }
                if !seen.contains(&c) {
                    stack.push((c, false));
                }
            }
        }
        seen.insert(r);
    }
    Ok(order)
}

/// Number of distinct nodes reachable from `root`, leaves included.
pub fn size<V: DiagramView>(view: &V, root: V::Ref) -> Result<usize> {
    reachable(view, root).map(|nodes| nodes.len())
}

/// Number of inner nodes reachable from `root`.
pub fn inner_size<V: DiagramView>(view: &V, root: V::Ref) -> Result<usize> {
    let mut n = 0;
    for r in reachable(view, root)? {
        if matches!(view.decode(r)?, Decoded::Inner { .. }) {
            n += 1;
        }
    }
    Ok(n)
}

/// Largest variable index reachable from `root`, 0 for a leaf.
pub fn max_var<V: DiagramView>(view: &V, root: V::Ref) -> Result<u32> {
    let mut m = 0;
    for r in reachable(view, root)? {
        if let Decoded::Inner { var, .. } = view.decode(r)? {
            m = m.max(var.index());
        }
    }
    Ok(m)
}

/// Number of assignments of `x1..=x{num_vars}` that satisfy `root`.
///
/// Skipped levels between a node and its child contribute a factor
/// `2^gap`.
pub fn sat_count<V: DiagramView>(view: &V, root: V::Ref, num_vars: u32) -> Result<u128> {
    if num_vars > 127 {
        return Err(Error::TooManyVars {
            vars: num_vars,
            limit: 127,
        });
    }
    let level = |d: &Decoded<V::Ref>| match d {
        Decoded::Leaf(_) => num_vars + 1,
        Decoded::Inner { var, .. } => var.index(),
    };
    let mut counts: HashMap<V::Ref, (u32, u128)> = HashMap::new();
    for r in reachable(view, root)? {
        let d = view.decode(r)?;
        let entry = match d {
            Decoded::Leaf(b) => (num_vars + 1, b as u128),
            Decoded::Inner { var, low, high } => {
                if var.index() > num_vars {
                    return Err(Error::VarOutOfRange {
                        var: var.index(),
                        limit: num_vars,
                    });
                }
                let weigh = |c: V::Ref| {
                    let (lvl, n) = counts[&c];
                    n << (lvl - var.index() - 1)
                };
                (var.index(), weigh(low) + weigh(high))
            }
        };
        counts.insert(r, entry);
    }
    let d = view.decode(root)?;
    let (_, n) = counts[&root];
    Ok(n << (level(&d) - 1))
}

/// Outcome of a validator run: every violated invariant with a witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> Default for ValidationReport<V> {
    fn default() -> Self {
        ValidationReport { violations: Vec::new() }
    }
}

impl<V> ValidationReport<V> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: V) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: ValidationReport<V>) {
        self.violations.extend(other.violations);
    }
}

impl<V: fmt::Display> fmt::Display for ValidationReport<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("clean");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
