//! One set of formulas compiled into one backend, with the queries the
//! commands need.

use std::time::{Duration, Instant};

use robdd::diagram::{self, Counter, Stats};
use robdd::frontend::{compile_interned, compile_pure};
use robdd::interned::{structural_eq, Handle, Manager};
use robdd::pure::{self, Fuel, Store};
use robdd::{Formula, NodeRef, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BackendKind {
    Pure,
    Interned,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Pure => "pure",
            BackendKind::Interned => "interned",
        }
    }
}

/// Backend selection as given on the command line.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Backend {
    Pure,
    Interned,
    Both,
}

impl Backend {
    pub fn kinds(self) -> Vec<BackendKind> {
        match self {
            Backend::Pure => vec![BackendKind::Pure],
            Backend::Interned => vec![BackendKind::Interned],
            Backend::Both => vec![BackendKind::Pure, BackendKind::Interned],
        }
    }
}

pub enum Compiled {
    Pure { store: Store, roots: Vec<NodeRef> },
    Interned { manager: Manager, roots: Vec<Handle> },
}

/// Knobs shared by every command that compiles formulas.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompileOptions {
    pub fuel: Option<Fuel>,
    /// Test hook: switch off the equal-children reduction.
    pub break_reduction: bool,
}

impl Compiled {
    /// Compiles `formulas` in order into one fresh state of `kind`.
    pub fn build(kind: BackendKind, formulas: &[Formula], opts: CompileOptions) -> Result<(Compiled, Duration)> {
        let start = Instant::now();
        let compiled = match kind {
            BackendKind::Pure => {
                let max_var = formulas.iter().map(Formula::max_var).max().unwrap_or(0);
                let fuel = opts.fuel.unwrap_or(Fuel::for_vars(max_var));
                let mut store = Store::new().with_reduction(!opts.break_reduction);
                let mut roots = Vec::with_capacity(formulas.len());
                for f in formulas {
                    let (r, st) = compile_pure(f, store, fuel)?;
                    roots.push(r);
                    store = st;
                }
                Compiled::Pure { store, roots }
            }
            BackendKind::Interned => {
                let mut manager = Manager::new();
                manager.set_reduction(!opts.break_reduction);
                let roots = formulas
                    .iter()
                    .map(|f| compile_interned(f, &mut manager))
                    .collect::<Result<_>>()?;
                Compiled::Interned { manager, roots }
            }
        };
        Ok((compiled, start.elapsed()))
    }

    pub fn kind(&self) -> BackendKind {
        match self {
            Compiled::Pure { .. } => BackendKind::Pure,
            Compiled::Interned { .. } => BackendKind::Interned,
        }
    }

    pub fn leaf_value(&self, i: usize) -> Option<bool> {
        match self {
            Compiled::Pure { roots, .. } => match roots[i] {
                NodeRef::True => Some(true),
                NodeRef::False => Some(false),
                NodeRef::Inner(_) => None,
            },
            Compiled::Interned { manager, roots } => {
                if roots[i] == manager.leaf_true() {
                    Some(true)
                } else if roots[i] == manager.leaf_false() {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// Equality test of two compiled roots.
    pub fn same(&self, i: usize, j: usize) -> bool {
        match self {
            Compiled::Pure { roots, .. } => pure::eq(roots[i], roots[j]),
            Compiled::Interned { roots, .. } => structural_eq(roots[i], roots[j]),
        }
    }

    pub fn size(&self, i: usize) -> Result<usize> {
        match self {
            Compiled::Pure { store, roots } => diagram::size(store, roots[i]),
            Compiled::Interned { manager, roots } => diagram::size(manager, roots[i]),
        }
    }

    pub fn sat_count(&self, i: usize, num_vars: u32) -> Result<u128> {
        match self {
            Compiled::Pure { store, roots } => diagram::sat_count(store, roots[i], num_vars),
            Compiled::Interned { manager, roots } => diagram::sat_count(manager, roots[i], num_vars),
        }
    }

    pub fn to_dot(&self, i: usize) -> Result<String> {
        match self {
            Compiled::Pure { store, roots } => robdd::dot::to_dot(store, roots[i]),
            Compiled::Interned { manager, roots } => robdd::dot::to_dot(manager, roots[i]),
        }
    }

    /// Inner nodes allocated. Nothing is ever freed, so this is also the
    /// peak.
    pub fn pool_nodes(&self) -> usize {
        match self {
            Compiled::Pure { store, .. } => store.len(),
            Compiled::Interned { manager, .. } => manager.inner_count(),
        }
    }

    pub fn stats(&self) -> Stats {
        match self {
            Compiled::Pure { store, .. } => *store.stats(),
            Compiled::Interned { manager, .. } => *manager.stats(),
        }
    }

    /// Validator output, one line per violation.
    pub fn violations(&self) -> Vec<String> {
        match self {
            Compiled::Pure { store, .. } => store.validate().violations.iter().map(|v| v.to_string()).collect(),
            Compiled::Interned { manager, .. } => manager.validate().violations.iter().map(|v| v.to_string()).collect(),
        }
    }

    pub fn truth_table(&self, i: usize, n: u32) -> Result<robdd::oracle::TruthTable> {
        match self {
            Compiled::Pure { store, roots } => robdd::oracle::bdd_truth_table(store, roots[i], n),
            Compiled::Interned { manager, roots } => robdd::oracle::bdd_truth_table(manager, roots[i], n),
        }
    }
}

/// Memo totals in a [`Stats`] as a single counter.
pub fn memo_counter(stats: &Stats) -> Counter {
    Counter {
        hits: stats.memo_hits(),
        misses: stats.memo_misses(),
    }
}
