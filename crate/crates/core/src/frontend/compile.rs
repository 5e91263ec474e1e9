use crate::diagram::{BinOp, NodeRef, Var};
use crate::error::Result;
use crate::formula::Formula;
use crate::interned::{Handle, Manager};
use crate::pure::{Fuel, Store};

/// The construction steps compilation needs from a backend.
pub trait Builder {
    type Ref: Copy;

    fn constant(&mut self, value: bool) -> Self::Ref;
    fn literal(&mut self, var: Var) -> Result<Self::Ref>;
    fn negate(&mut self, a: Self::Ref) -> Result<Self::Ref>;
    fn combine(&mut self, op: BinOp, a: Self::Ref, b: Self::Ref) -> Result<Self::Ref>;
}

/// Bottom-up compilation: constants to leaves, `xN` to the node
/// `(F, xN, T)`, connectives through the backend's operations.
pub fn compile<B: Builder>(f: &Formula, b: &mut B) -> Result<B::Ref> {
    Ok(match f {
        Formula::Const(v) => b.constant(*v),
        Formula::Ref(v) => b.literal(*v)?,
        Formula::Not(x) => {
            let x = compile(x, b)?;
            b.negate(x)?
        }
        Formula::And(x, y) => compile_binary(BinOp::And, x, y, b)?,
        Formula::Or(x, y) => compile_binary(BinOp::Or, x, y, b)?,
        Formula::Xor(x, y) => compile_binary(BinOp::Xor, x, y, b)?,
    })
}

fn compile_binary<B: Builder>(op: BinOp, x: &Formula, y: &Formula, b: &mut B) -> Result<B::Ref> {
    let x = compile(x, b)?;
    let y = compile(y, b)?;
    b.combine(op, x, y)
}

impl Builder for Manager {
    type Ref = Handle;

    fn constant(&mut self, value: bool) -> Handle {
        Manager::constant(self, value)
    }

    fn literal(&mut self, var: Var) -> Result<Handle> {
        Ok(self.var(var))
    }

    fn negate(&mut self, a: Handle) -> Result<Handle> {
        self.not(a)
    }

    fn combine(&mut self, op: BinOp, a: Handle, b: Handle) -> Result<Handle> {
        self.apply(op, a, b)
    }
}

/// Threads a [`Store`] through compilation with a fixed per-operation
/// fuel budget.
#[derive(Debug)]
pub struct PureBuilder {
    store: Store,
    fuel: Fuel,
}

impl PureBuilder {
    pub fn new(store: Store, fuel: Fuel) -> Self {
        PureBuilder { store, fuel }
    }

    pub fn into_store(self) -> Store {
        self.store
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    fn step(&mut self, op: impl FnOnce(Store) -> Result<(NodeRef, Store)>) -> Result<NodeRef> {
        let (r, st) = op(std::mem::take(&mut self.store))?;
        self.store = st;
        Ok(r)
    }
}

impl Builder for PureBuilder {
    type Ref = NodeRef;

    fn constant(&mut self, value: bool) -> NodeRef {
        NodeRef::leaf(value)
    }

    fn literal(&mut self, var: Var) -> Result<NodeRef> {
        self.step(|st| st.var(var))
    }

    fn negate(&mut self, a: NodeRef) -> Result<NodeRef> {
        let fuel = self.fuel;
        self.step(|st| st.neg(fuel, a))
    }

    fn combine(&mut self, op: BinOp, a: NodeRef, b: NodeRef) -> Result<NodeRef> {
        let fuel = self.fuel;
        self.step(|st| st.apply(fuel, op, a, b))
    }
}

/// Compiles into a persistent store. On error the store is dropped; keep a
/// clone to retry.
pub fn compile_pure(f: &Formula, store: Store, fuel: Fuel) -> Result<(NodeRef, Store)> {
    let mut b = PureBuilder::new(store, fuel);
    let r = compile(f, &mut b)?;
    Ok((r, b.into_store()))
}

pub fn compile_interned(f: &Formula, m: &mut Manager) -> Result<Handle> {
    compile(f, m)
}
