#![allow(dead_code)]

use proptest::prelude::*;
use robdd::frontend::{compile_interned, compile_pure};
use robdd::interned::{Handle, Manager};
use robdd::pure::{Fuel, Store};
use robdd::{BinOp, Formula, NodeRef};

pub const MAX_VARS: u32 = 6;

pub fn arb_formula_over(max_vars: u32, depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => any::<bool>().prop_map(Formula::Const),
        4 => (1..=max_vars).prop_map(Formula::var),
    ];
    leaf.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| !f),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a & b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a | b),
            (inner.clone(), inner).prop_map(|(a, b)| a ^ b),
        ]
    })
}

pub fn arb_formula() -> impl Strategy<Value = Formula> {
    arb_formula_over(MAX_VARS, 8)
}

pub fn arb_op() -> impl Strategy<Value = BinOp> {
    prop_oneof![Just(BinOp::And), Just(BinOp::Or), Just(BinOp::Xor)]
}

/// Compiles each formula into one shared store.
pub fn pure_all(formulas: &[Formula]) -> (Vec<NodeRef>, Store) {
    let fuel = Fuel::for_vars(MAX_VARS.max(formulas.iter().map(Formula::max_var).max().unwrap_or(0)));
    let mut store = Store::new();
    let mut roots = Vec::new();
    for f in formulas {
        let (r, s) = compile_pure(f, store, fuel).expect("pure compile");
        roots.push(r);
        store = s;
    }
    (roots, store)
}

pub fn interned_all(formulas: &[Formula]) -> (Vec<Handle>, Manager) {
    let mut m = Manager::new();
    let roots = formulas
        .iter()
        .map(|f| compile_interned(f, &mut m).expect("interned compile"))
        .collect();
    (roots, m)
}
