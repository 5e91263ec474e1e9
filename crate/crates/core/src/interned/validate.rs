use std::collections::HashMap;
use std::fmt;

use super::{Manager, Shape};
use crate::diagram::{evaluate, Assignment, BinOp, ValidationReport};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ManagerViolation {
    LeavesMissing,
    DuplicateShape {
        first: u32,
        second: u32,
    },
    UniqueMismatch {
        uid: u32,
    },
    UniqueDangling {
        uid: u32,
    },
    Unreduced {
        uid: u32,
    },
    ChildInvalid {
        uid: u32,
        child: u32,
    },
    Unordered {
        uid: u32,
        child: u32,
    },
    CacheKeyDead {
        table: &'static str,
        key: (u32, Option<u32>),
    },
    CacheValueDead {
        table: &'static str,
        key: (u32, Option<u32>),
    },
    CacheIncorrect {
        table: &'static str,
        key: (u32, Option<u32>),
    },
}

impl fmt::Display for ManagerViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ManagerViolation::*;
        let show = |k: &(u32, Option<u32>)| match k.1 {
            Some(b) => format!("({}, {})", k.0, b),
            None => k.0.to_string(),
        };
        match self {
            LeavesMissing => write!(f, "pool does not start with the T and F leaves"),
            DuplicateShape { first, second } => write!(f, "pool uniqueness: uids {first} and {second} share a shape"),
            UniqueMismatch { uid } => write!(f, "unique table does not map the shape of {uid} back to it"),
            UniqueDangling { uid } => write!(f, "unique table entry for {uid} disagrees with the pool"),
            Unreduced { uid } => write!(f, "reduction: node {uid} has identical children"),
            ChildInvalid { uid, child } => write!(f, "node {uid} references child {child} that is not older and live"),
            Unordered { uid, child } => write!(f, "ordering: child {child} of node {uid} is not on a deeper variable"),
            CacheKeyDead { table, key } => write!(f, "{table} cache key {} is not live", show(key)),
            CacheValueDead { table, key } => write!(f, "{table} cache value for {} is not live", show(key)),
            CacheIncorrect { table, key } => write!(f, "{table} cache entry for {} is semantically wrong", show(key)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ManagerValidateOptions {
    /// Re-check every cache entry by enumerating assignments.
    pub cache_semantics: bool,
    /// Semantic checks are skipped when the pool uses more variables.
    pub max_vars: u32,
}

impl Default for ManagerValidateOptions {
    fn default() -> Self {
        ManagerValidateOptions {
            cache_semantics: false,
            max_vars: 20,
        }
    }
}

impl Manager {
    pub fn validate(&self) -> ValidationReport<ManagerViolation> {
        self.validate_with(ManagerValidateOptions::default())
    }

    pub fn validate_with(&self, opts: ManagerValidateOptions) -> ValidationReport<ManagerViolation> {
        use ManagerViolation::*;
        let mut report = ValidationReport::default();
        if self.nodes.first() != Some(&Shape::True) || self.nodes.get(1) != Some(&Shape::False) {
            report.push(LeavesMissing);
        }
        let live = |uid: u32| uid >= 1 && uid as usize <= self.nodes.len();

        let mut first_seen: HashMap<Shape, u32> = HashMap::new();
        let mut max_var = 0;
        for (uid, shape) in self.pool() {
            if let Some(&first) = first_seen.get(&shape) {
                report.push(DuplicateShape { first, second: uid });
            } else {
                first_seen.insert(shape, uid);
            }
            if self.unique.get(&shape) != Some(&uid) {
                report.push(UniqueMismatch { uid });
            }
            let Shape::Inner { var, low, high } = shape else {
                continue;
            };
            max_var = max_var.max(var.index());
            if low == high {
                report.push(Unreduced { uid });
            }
            for child in [low, high] {
                if child >= uid || !live(child) {
                    report.push(ChildInvalid { uid, child });
                } else if self.var_of(child).is_some_and(|cv| cv <= var) {
                    report.push(Unordered { uid, child });
                }
            }
        }
        let mut dangling: Vec<u32> = self
            .unique
            .iter()
            .filter(|(shape, &uid)| !live(uid) || self.shape_of(uid) != **shape)
            .map(|(_, &uid)| uid)
            .collect();
        dangling.sort_unstable();
        for uid in dangling {
            report.push(UniqueDangling { uid });
        }

        let mut entries: Vec<(&'static str, u32, Option<u32>, u32)> = Vec::new();
        for (name, op) in [("and", BinOp::And), ("or", BinOp::Or), ("xor", BinOp::Xor)] {
            let table = match op {
                BinOp::And => &self.caches.and,
                BinOp::Or => &self.caches.or,
                BinOp::Xor => &self.caches.xor,
            };
            entries.extend(table.iter().map(|(&(a, b), &r)| (name, a, Some(b), r)));
        }
        entries.extend(self.caches.not.iter().map(|(&a, &r)| ("not", a, None, r)));
        entries.sort_unstable();

        let semantic = opts.cache_semantics && max_var <= opts.max_vars;
        for (table, a, b, r) in entries {
            let key = (a, b);
            if !live(a) || b.is_some_and(|b| !live(b)) {
                report.push(CacheKeyDead { table, key });
            } else if !live(r) {
                report.push(CacheValueDead { table, key });
            } else if semantic && !self.cache_entry_correct(table, a, b, r, max_var) {
                report.push(CacheIncorrect { table, key });
            }
        }
        report
    }

    fn cache_entry_correct(&self, table: &str, a: u32, b: Option<u32>, r: u32, n: u32) -> bool {
        (0..1u64 << n).all(|k| {
            let asg = Assignment::from_index(k, n);
            let eval = |uid: u32| evaluate(self, self.handle(uid), &asg);
            let (Ok(va), Ok(vr)) = (eval(a), eval(r)) else {
                return false;
            };
            let expected = match (table, b.map(eval)) {
                ("not", None) => !va,
                ("and", Some(Ok(vb))) => va && vb,
                ("or", Some(Ok(vb))) => va || vb,
                ("xor", Some(Ok(vb))) => va ^ vb,
                _ => return false,
            };
            expected == vr
        })
    }
}
