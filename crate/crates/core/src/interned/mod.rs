//! Interned backend: a mutable [`Manager`] owning a unique table of node
//! shapes. Every shape is allocated once and gets a unique identifier, so
//! equality of diagrams is equality of uids. Negation and the binary
//! connectives run through memoizing fixpoint combinators that tabulate
//! results per uid (or uid pair).

mod validate;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::diagram::{node_should_collapse, terminal_case, BinOp, Counter, Decoded, DiagramView, Stats, Terminal, Var};
use crate::error::{Error, Result};

pub use validate::{ManagerValidateOptions, ManagerViolation};

const INITIAL_CAPACITY: usize = 257;

static NEXT_MANAGER_ID: AtomicU32 = AtomicU32::new(1);

/// A node owned by some [`Manager`]. Cheap to copy; compares by uid and
/// owning manager.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Handle {
    uid: u32,
    owner: u32,
}

impl Handle {
    pub fn uid(self) -> u32 {
        self.uid
    }
}

/// Constant-time equality: compares unique identifiers only.
pub fn structural_eq(a: Handle, b: Handle) -> bool {
    a.uid == b.uid
}

/// The content of a pooled node. Children are referenced by uid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Shape {
    True,
    False,
    Inner { var: Var, low: u32, high: u32 },
}

type UnaryCache = HashMap<u32, u32>;
type BinaryCache = HashMap<(u32, u32), u32>;

#[derive(Clone, Debug, Default)]
pub(crate) struct Caches {
    pub(crate) not: UnaryCache,
    pub(crate) and: BinaryCache,
    pub(crate) or: BinaryCache,
    pub(crate) xor: BinaryCache,
}

impl Caches {
    fn binop(&mut self, op: BinOp) -> &mut BinaryCache {
        match op {
            BinOp::And => &mut self.and,
            BinOp::Or => &mut self.or,
            BinOp::Xor => &mut self.xor,
        }
    }
}

/// Owner of the node pool, the memo caches and the operation counters.
///
/// Not thread-safe by contract: all constructing operations take `&mut self`.
#[derive(Debug)]
pub struct Manager {
    id: u32,
    /// `nodes[uid - 1]` is the shape with that uid.
    nodes: Vec<Shape>,
    unique: HashMap<Shape, u32>,
    caches: Caches,
    stats: Stats,
    reduce: bool,
}

impl Default for Manager {
    fn default() -> Self {
        Manager::new()
    }
}

impl Manager {
    /// Fresh pool with the two leaves pre-interned: `T` gets uid 1 and `F`
    /// uid 2.
    pub fn new() -> Self {
        let mut m = Manager {
            id: NEXT_MANAGER_ID.fetch_add(1, Ordering::Relaxed),
            nodes: Vec::with_capacity(INITIAL_CAPACITY),
            unique: HashMap::with_capacity(INITIAL_CAPACITY),
            caches: Caches::default(),
            stats: Stats::default(),
            reduce: true,
        };
        m.intern(Shape::True);
        m.intern(Shape::False);
        m.stats = Stats::default();
        m
    }

    /// Drops every node and cache entry. Handles issued before the reset
    /// become foreign.
    pub fn reset(&mut self) {
        *self = Manager {
            reduce: self.reduce,
            ..Manager::new()
        };
    }

    pub fn leaf_true(&self) -> Handle {
        self.handle(1)
    }

    pub fn leaf_false(&self) -> Handle {
        self.handle(2)
    }

    pub fn constant(&self, value: bool) -> Handle {
        if value {
            self.leaf_true()
        } else {
            self.leaf_false()
        }
    }

    /// The function `var`: low branch `F`, high branch `T`.
    pub fn var(&mut self, var: Var) -> Handle {
        let uid = self.mk(var, 2, 1);
        self.handle(uid)
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn reset_stats(&mut self) {
        self.stats = Stats::default();
    }

    /// Empties all memo caches; the pool is kept.
    pub fn clear_caches(&mut self) {
        self.caches = Caches::default();
    }

    pub fn cache_len(&self) -> usize {
        self.caches.not.len() + self.caches.and.len() + self.caches.or.len() + self.caches.xor.len()
    }

    /// Pool entries, leaves included.
    pub fn pool_len(&self) -> usize {
        self.nodes.len()
    }

    /// Pool entries that are decision nodes.
    pub fn inner_count(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn uid(&self, h: Handle) -> Result<u32> {
        self.check(h)?;
        Ok(h.uid)
    }

    pub fn shape(&self, h: Handle) -> Result<Shape> {
        self.check(h)?;
        Ok(self.nodes[h.uid as usize - 1])
    }

    /// Handle for a live uid of this manager.
    pub fn handle_of(&self, uid: u32) -> Result<Handle> {
        if uid == 0 || uid as usize > self.nodes.len() {
            return Err(Error::DanglingRef(uid));
        }
        Ok(self.handle(uid))
    }

    /// Test hook: disables the equal-children reduction in `h_node`.
    #[doc(hidden)]
    pub fn set_reduction(&mut self, enabled: bool) {
        self.reduce = enabled;
    }

    /// Test hook: appends a shape to the pool without consulting the unique
    /// table, so validators can be exercised on a corrupted pool.
    #[doc(hidden)]
    pub fn debug_push_raw(&mut self, shape: Shape) -> Handle {
        self.nodes.push(shape);
        self.handle(self.nodes.len() as u32)
    }

    fn handle(&self, uid: u32) -> Handle {
        Handle { uid, owner: self.id }
    }

    fn check(&self, h: Handle) -> Result<()> {
        if h.owner != self.id {
            return Err(Error::ForeignHandle);
        }
        if h.uid == 0 || h.uid as usize > self.nodes.len() {
            return Err(Error::DanglingRef(h.uid));
        }
        Ok(())
    }

    fn shape_of(&self, uid: u32) -> Shape {
        self.nodes[uid as usize - 1]
    }

    fn leaf_value(&self, uid: u32) -> Option<bool> {
        match self.shape_of(uid) {
            Shape::True => Some(true),
            Shape::False => Some(false),
            Shape::Inner { .. } => None,
        }
    }

    fn var_of(&self, uid: u32) -> Option<Var> {
        match self.shape_of(uid) {
            Shape::Inner { var, .. } => Some(var),
            _ => None,
        }
    }

    fn intern(&mut self, shape: Shape) -> u32 {
        if let Some(&uid) = self.unique.get(&shape) {
            self.stats.intern.hits += 1;
            return uid;
        }
        self.stats.intern.misses += 1;
        self.nodes.push(shape);
        let uid = self.nodes.len() as u32;
        self.unique.insert(shape, uid);
        uid
    }

    /// Smart constructor on uids.
    fn mk(&mut self, var: Var, low: u32, high: u32) -> u32 {
        if self.reduce && node_should_collapse(low, high) {
            return low;
        }
        self.intern(Shape::Inner { var, low, high })
    }

    /// Smart constructor: returns `low` when both branches are equal,
    /// otherwise the unique pooled node for `(low, var, high)`.
    pub fn h_node(&mut self, var: Var, low: Handle, high: Handle) -> Result<Handle> {
        self.check(low)?;
        self.check(high)?;
        for child in [low, high] {
            if let Some(cv) = self.var_of(child.uid) {
                if cv <= var {
                    return Err(Error::OrderViolation {
                        parent: var.index(),
                        child: cv.index(),
                    });
                }
            }
        }
        let uid = self.mk(var, low.uid, high.uid);
        Ok(self.handle(uid))
    }

    /// Memoizing fixpoint for one-argument recursions. Arguments decided by
    /// `base` are answered directly; every other result is tabulated in
    /// `table`. `body` receives the argument and a callback for recursive
    /// calls.
    fn memo_fix1<B, F>(
        &mut self,
        table: fn(&mut Caches) -> &mut UnaryCache,
        counter: fn(&mut Stats) -> &mut Counter,
        base: &B,
        body: &F,
        x: u32,
    ) -> u32
    where
        B: Fn(&mut Manager, u32) -> Option<u32>,
        F: Fn(&mut Manager, u32, &mut dyn FnMut(&mut Manager, u32) -> u32) -> u32,
    {
        if let Some(r) = base(self, x) {
            return r;
        }
        if let Some(&r) = table(&mut self.caches).get(&x) {
            counter(&mut self.stats).hits += 1;
            return r;
        }
        counter(&mut self.stats).misses += 1;
        let mut rec = |m: &mut Manager, y: u32| m.memo_fix1(table, counter, base, body, y);
        let r = body(self, x, &mut rec);
        table(&mut self.caches).insert(x, r);
        r
    }

    /// Two-argument counterpart of [`Self::memo_fix1`], tabulating in the
    /// cache of `op`.
    fn memo_fix2<B, F>(&mut self, op: BinOp, base: &B, body: &F, a: u32, b: u32) -> u32
    where
        B: Fn(&mut Manager, u32, u32) -> Option<u32>,
        F: Fn(&mut Manager, u32, u32, &mut dyn FnMut(&mut Manager, u32, u32) -> u32) -> u32,
    {
        if let Some(r) = base(self, a, b) {
            return r;
        }
        if let Some(&r) = self.caches.binop(op).get(&(a, b)) {
            self.stats.binop_mut(op).hits += 1;
            return r;
        }
        self.stats.binop_mut(op).misses += 1;
        let mut rec = |m: &mut Manager, x: u32, y: u32| m.memo_fix2(op, base, body, x, y);
        let r = body(self, a, b, &mut rec);
        self.caches.binop(op).insert((a, b), r);
        r
    }

    fn not_uid(&mut self, a: u32) -> u32 {
        self.memo_fix1(
            |c| &mut c.not,
            |s| &mut s.not,
            &|m: &mut Manager, b| m.leaf_value(b).map(|v| if v { 2 } else { 1 }),
            &|m: &mut Manager, b, rec: &mut dyn FnMut(&mut Manager, u32) -> u32| {
                let Shape::Inner { var, low, high } = m.shape_of(b) else {
                    unreachable!("leaves are base cases")
                };
                let low = rec(m, low);
                let high = rec(m, high);
                m.mk(var, low, high)
            },
            a,
        )
    }

    fn binop_uid(&mut self, op: BinOp, a: u32, b: u32) -> u32 {
        self.memo_fix2(
            op,
            &|m: &mut Manager, a, b| match terminal_case(op, a, b, |u| m.leaf_value(u), |v| if v { 1 } else { 2 })? {
                Terminal::Done(r) => Some(r),
                Terminal::Negate(r) => Some(m.not_uid(r)),
            },
            &|m: &mut Manager, a, b, rec: &mut dyn FnMut(&mut Manager, u32, u32) -> u32| {
                let (
                    Shape::Inner {
                        var: va,
                        low: a0,
                        high: a1,
                    },
                    Shape::Inner {
                        var: vb,
                        low: b0,
                        high: b1,
                    },
                ) = (m.shape_of(a), m.shape_of(b))
                else {
                    unreachable!("leaf operands are base cases")
                };
                let var = va.min(vb);
                let (a0, a1) = if va == var { (a0, a1) } else { (a, a) };
                let (b0, b1) = if vb == var { (b0, b1) } else { (b, b) };
                let low = rec(m, a0, b0);
                let high = rec(m, a1, b1);
                m.mk(var, low, high)
            },
            a,
            b,
        )
    }

    pub fn not(&mut self, a: Handle) -> Result<Handle> {
        self.check(a)?;
        let r = self.not_uid(a.uid);
        Ok(self.handle(r))
    }

    pub fn apply(&mut self, op: BinOp, a: Handle, b: Handle) -> Result<Handle> {
        self.check(a)?;
        self.check(b)?;
        let r = self.binop_uid(op, a.uid, b.uid);
        Ok(self.handle(r))
    }

    pub fn and(&mut self, a: Handle, b: Handle) -> Result<Handle> {
        self.apply(BinOp::And, a, b)
    }

    pub fn or(&mut self, a: Handle, b: Handle) -> Result<Handle> {
        self.apply(BinOp::Or, a, b)
    }

    pub fn xor(&mut self, a: Handle, b: Handle) -> Result<Handle> {
        self.apply(BinOp::Xor, a, b)
    }

    /// Rebuilds the diagram under `h` bottom-up through [`Self::h_node`].
    /// With maximal sharing the result is `h` itself.
    pub fn rebuild(&mut self, h: Handle) -> Result<Handle> {
        let mut done: HashMap<u32, Handle> = HashMap::new();
        for n in crate::diagram::reachable(self, h)? {
            let rebuilt = match self.shape(n)? {
                Shape::True => self.leaf_true(),
                Shape::False => self.leaf_false(),
                Shape::Inner { var, low, high } => self.h_node(var, done[&low], done[&high])?,
            };
            done.insert(n.uid, rebuilt);
        }
        Ok(done[&h.uid])
    }

    /// Iterates over `(uid, shape)` for every pool entry.
    pub fn pool(&self) -> impl Iterator<Item = (u32, Shape)> + '_ {
        self.nodes.iter().enumerate().map(|(i, s)| (i as u32 + 1, *s))
    }
}

impl DiagramView for Manager {
    type Ref = Handle;

    fn decode(&self, h: Handle) -> Result<Decoded<Handle>> {
        Ok(match self.shape(h)? {
            Shape::True => Decoded::Leaf(true),
            Shape::False => Decoded::Leaf(false),
            Shape::Inner { var, low, high } => Decoded::Inner {
                var,
                low: self.handle(low),
                high: self.handle(high),
            },
        })
    }

    fn ident(&self, h: Handle) -> u64 {
        h.uid as u64
    }

    fn node_count(&self) -> usize {
        self.nodes.len()
    }
}
