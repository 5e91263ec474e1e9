//! Persistent hash-consing backend.
//!
//! A [`Store`] is an immutable value holding the node graph (`id -> node`),
//! its inverse (`node -> id`), the next fresh identifier and the memo tables
//! of the four connectives. Every operation consumes a store and hands back
//! its result together with the successor store; keep a clone to retain the
//! old version (cloning is cheap, the maps share structure).
//!
//! Recursive operations take a [`Fuel`] budget that bounds recursion depth.
//! `Fuel::for_vars(n)` (that is, `n + 1`) always suffices for operands over
//! `x1..=xn`.

mod text;
mod validate;

use im::{HashMap, OrdMap};

use crate::diagram::{
    node_should_collapse, terminal_case, BinOp, Decoded, DiagramView, Node, NodeRef, Stats, Terminal, Var,
};
use crate::error::{Error, Result};

pub use validate::{validate_extension, StoreViolation, ValidateOptions};

/// Recursion budget.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Fuel(pub u32);

impl Fuel {
    /// Sufficient fuel for operands whose variables are all `<= max_var`.
    pub fn for_vars(max_var: u32) -> Self {
        Fuel(max_var + 1)
    }

    fn spend(self) -> Result<Fuel> {
        match self.0 {
            0 => Err(Error::OutOfFuel),
            n => Ok(Fuel(n - 1)),
        }
    }
}

/// Memo tables, one per connective. Keys are ordered pairs of inner node
/// ids; `(a, b)` and `(b, a)` are separate entries.
#[derive(Clone, Default, Debug)]
pub struct MemoTables {
    pub mand: HashMap<(u32, u32), NodeRef>,
    pub mor: HashMap<(u32, u32), NodeRef>,
    pub mxor: HashMap<(u32, u32), NodeRef>,
    pub mneg: HashMap<u32, NodeRef>,
}

impl MemoTables {
    pub fn binop(&self, op: BinOp) -> &HashMap<(u32, u32), NodeRef> {
        match op {
            BinOp::And => &self.mand,
            BinOp::Or => &self.mor,
            BinOp::Xor => &self.mxor,
        }
    }

    fn binop_mut(&mut self, op: BinOp) -> &mut HashMap<(u32, u32), NodeRef> {
        match op {
            BinOp::And => &mut self.mand,
            BinOp::Or => &mut self.mor,
            BinOp::Xor => &mut self.mxor,
        }
    }

    pub fn len(&self) -> usize {
        self.mand.len() + self.mor.len() + self.mxor.len() + self.mneg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct Store {
    graph: OrdMap<u32, Node>,
    hmap: HashMap<Node, u32>,
    next: u32,
    memo: MemoTables,
    stats: Stats,
    max_var: u32,
    reduce: bool,
}

impl Default for Store {
    fn default() -> Self {
        Store::new()
    }
}

impl Store {
    /// The empty store: no nodes, no memo entries, next fresh id 1.
    pub fn new() -> Self {
        Store {
            graph: OrdMap::new(),
            hmap: HashMap::new(),
            next: 1,
            memo: MemoTables::default(),
            stats: Stats::default(),
            max_var: 0,
            reduce: true,
        }
    }

    /// Assembles a store from raw parts without checking any invariant.
    /// Intended for tests and for loading untrusted data that is validated
    /// afterwards.
    pub fn from_raw_parts(graph: OrdMap<u32, Node>, hmap: HashMap<Node, u32>, next: u32) -> Self {
        let max_var = graph.values().map(|n| n.var.index()).max().unwrap_or(0);
        Store {
            graph,
            hmap,
            next,
            memo: MemoTables::default(),
            stats: Stats::default(),
            max_var,
            reduce: true,
        }
    }

    pub fn graph(&self) -> &OrdMap<u32, Node> {
        &self.graph
    }

    pub fn hmap(&self) -> &HashMap<Node, u32> {
        &self.hmap
    }

    pub fn next(&self) -> u32 {
        self.next
    }

    pub fn memo(&self) -> &MemoTables {
        &self.memo
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    /// Largest variable index of any node in the graph.
    pub fn max_var(&self) -> u32 {
        self.max_var
    }

    /// Number of inner nodes allocated so far.
    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn node(&self, id: u32) -> Result<Node> {
        self.graph.get(&id).copied().ok_or(Error::DanglingRef(id))
    }

    /// Same graph, empty memo tables.
    pub fn clear_memo(mut self) -> Store {
        self.memo = MemoTables::default();
        self
    }

    pub fn reset_stats(mut self) -> Store {
        self.stats = Stats::default();
        self
    }

    /// Test hook: with reduction off, `mk_node` stops collapsing nodes whose
    /// children are equal. Only used to check that validators and the self
    /// test notice.
    #[doc(hidden)]
    pub fn with_reduction(mut self, enabled: bool) -> Store {
        self.reduce = enabled;
        self
    }

    /// The single-variable function `var`.
    pub fn var(self, var: Var) -> Result<(NodeRef, Store)> {
        self.mk_node(NodeRef::False, var, NodeRef::True)
    }

    /// Hash-consing constructor: collapses equal children, reuses an
    /// existing node with the same triple, or allocates `next`.
    pub fn mk_node(mut self, low: NodeRef, var: Var, high: NodeRef) -> Result<(NodeRef, Store)> {
        self.check_child(low, var)?;
        self.check_child(high, var)?;
        let r = self.mk_node_unchecked(low, var, high);
        Ok((r, self))
    }

    fn check_child(&self, child: NodeRef, parent: Var) -> Result<()> {
        if let NodeRef::Inner(id) = child {
            if id == 0 || id >= self.next {
                return Err(Error::InvalidChild {
                    child: id,
                    next: self.next,
                });
            }
            let node = self.node(id)?;
            if node.var <= parent {
                return Err(Error::OrderViolation {
                    parent: parent.index(),
                    child: node.var.index(),
                });
            }
        }
        Ok(())
    }

    fn mk_node_unchecked(&mut self, low: NodeRef, var: Var, high: NodeRef) -> NodeRef {
        if self.reduce && node_should_collapse(low, high) {
            return low;
        }
        let node = Node { low, var, high };
        if let Some(&id) = self.hmap.get(&node) {
            self.stats.intern.hits += 1;
            return NodeRef::Inner(id);
        }
        self.stats.intern.misses += 1;
        NodeRef::Inner(self.upd(node))
    }

    /// Allocates `node` at `next` in both maps.
    fn upd(&mut self, node: Node) -> u32 {
        let id = self.next;
        self.graph.insert(id, node);
        self.hmap.insert(node, id);
        self.next += 1;
        self.max_var = self.max_var.max(node.var.index());
        id
    }

    fn check_ref(&self, r: NodeRef) -> Result<()> {
        match r {
            NodeRef::Inner(id) if !self.graph.contains_key(&id) => Err(Error::DanglingRef(id)),
            _ => Ok(()),
        }
    }

    /// Value of `e` under `assignment`.
    pub fn denote(&self, e: NodeRef, assignment: &crate::diagram::Assignment) -> Result<bool> {
        crate::diagram::evaluate(self, e, assignment)
    }

    /// Number of distinct nodes reachable from `e`, leaves included.
    pub fn size(&self, e: NodeRef) -> Result<usize> {
        crate::diagram::size(self, e)
    }

    /// Negation, memoized in `mneg`.
    pub fn neg(mut self, fuel: Fuel, e: NodeRef) -> Result<(NodeRef, Store)> {
        self.check_ref(e)?;
        let r = self.neg_rec(fuel, e)?;
        Ok((r, self))
    }

    fn neg_rec(&mut self, fuel: Fuel, e: NodeRef) -> Result<NodeRef> {
        let fuel = fuel.spend()?;
        let id = match e {
            NodeRef::True => return Ok(NodeRef::False),
            NodeRef::False => return Ok(NodeRef::True),
            NodeRef::Inner(id) => id,
        };
        if let Some(&r) = self.memo.mneg.get(&id) {
            self.stats.not.hits += 1;
            return Ok(r);
        }
        self.stats.not.misses += 1;
        let Node { low, var, high } = self.node(id)?;
        let low = self.neg_rec(fuel, low)?;
        let high = self.neg_rec(fuel, high)?;
        let r = self.mk_node_unchecked(low, var, high);
        self.memo.mneg.insert(id, r);
        Ok(r)
    }

    /// `a op b` by Shannon expansion on the smaller top variable, memoized
    /// in the table of `op`.
    pub fn apply(mut self, fuel: Fuel, op: BinOp, a: NodeRef, b: NodeRef) -> Result<(NodeRef, Store)> {
        self.check_ref(a)?;
        self.check_ref(b)?;
        let r = self.apply_rec(fuel, op, a, b)?;
        Ok((r, self))
    }

    pub fn and(self, fuel: Fuel, a: NodeRef, b: NodeRef) -> Result<(NodeRef, Store)> {
        self.apply(fuel, BinOp::And, a, b)
    }

    pub fn or(self, fuel: Fuel, a: NodeRef, b: NodeRef) -> Result<(NodeRef, Store)> {
        self.apply(fuel, BinOp::Or, a, b)
    }

    pub fn xor(self, fuel: Fuel, a: NodeRef, b: NodeRef) -> Result<(NodeRef, Store)> {
        self.apply(fuel, BinOp::Xor, a, b)
    }

    fn apply_rec(&mut self, fuel: Fuel, op: BinOp, a: NodeRef, b: NodeRef) -> Result<NodeRef> {
        let rest = fuel.spend()?;
        let leaf = |r: NodeRef| match r {
            NodeRef::True => Some(true),
            NodeRef::False => Some(false),
            NodeRef::Inner(_) => None,
        };
        match terminal_case(op, a, b, leaf, NodeRef::leaf) {
            Some(Terminal::Done(r)) => return Ok(r),
            Some(Terminal::Negate(r)) => return self.neg_rec(fuel, r),
            None => {}
        }
        let (NodeRef::Inner(ia), NodeRef::Inner(ib)) = (a, b) else {
            unreachable!("leaf operands are terminal cases")
        };
        if let Some(&r) = self.memo.binop(op).get(&(ia, ib)) {
            self.stats.binop_mut(op).hits += 1;
            return Ok(r);
        }
        self.stats.binop_mut(op).misses += 1;
        let na = self.node(ia)?;
        let nb = self.node(ib)?;
        let var = na.var.min(nb.var);
        let (a0, a1) = if na.var == var { (na.low, na.high) } else { (a, a) };
        let (b0, b1) = if nb.var == var { (nb.low, nb.high) } else { (b, b) };
        let low = self.apply_rec(rest, op, a0, b0)?;
        let high = self.apply_rec(rest, op, a1, b1)?;
        let r = self.mk_node_unchecked(low, var, high);
        self.memo.binop_mut(op).insert((ia, ib), r);
        Ok(r)
    }

    /// Fuel sufficient for any operation on nodes of this store.
    pub fn default_fuel(&self) -> Fuel {
        Fuel::for_vars(self.max_var)
    }
}

/// Equality test: identical leaves or identical node ids.
pub fn eq(a: NodeRef, b: NodeRef) -> bool {
    a == b
}

impl DiagramView for Store {
    type Ref = NodeRef;

    fn decode(&self, r: NodeRef) -> Result<Decoded<NodeRef>> {
        Ok(match r {
            NodeRef::True => Decoded::Leaf(true),
            NodeRef::False => Decoded::Leaf(false),
            NodeRef::Inner(id) => {
                let n = self.node(id)?;
                Decoded::Inner {
                    var: n.var,
                    low: n.low,
                    high: n.high,
                }
            }
        })
    }

    fn ident(&self, r: NodeRef) -> u64 {
        match r {
            NodeRef::False | NodeRef::True => 0,
            NodeRef::Inner(id) => id as u64,
        }
    }

    fn name(&self, r: NodeRef) -> String {
        match r {
            NodeRef::False => "F".into(),
            NodeRef::True => "T".into(),
            NodeRef::Inner(id) => format!("n{id}"),
        }
    }

    fn node_count(&self) -> usize {
        self.graph.len()
    }
}
