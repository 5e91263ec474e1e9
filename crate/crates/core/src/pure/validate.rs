use std::collections::HashMap as StdHashMap;
use std::fmt;

use super::Store;
use crate::diagram::{evaluate, Assignment, NodeRef, ValidationReport};

/// A broken store invariant, with the offending ids as witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StoreViolation {
    NextNotPositive,
    IdOutOfRange {
        id: u32,
        next: u32,
    },
    ChildInvalid {
        id: u32,
        child: u32,
    },
    ChildNotBelow {
        id: u32,
        child: u32,
    },
    Unreduced {
        id: u32,
    },
    Unordered {
        id: u32,
        child: u32,
    },
    LeftInverse {
        id: u32,
        hmap_id: Option<u32>,
    },
    HmapDangling {
        hmap_id: u32,
    },
    Duplicate {
        first: u32,
        second: u32,
    },
    MemoKeyInvalid {
        table: &'static str,
        key: (u32, Option<u32>),
    },
    MemoValueInvalid {
        table: &'static str,
        key: (u32, Option<u32>),
    },
    MemoIncorrect {
        table: &'static str,
        key: (u32, Option<u32>),
    },
    BindingLost {
        id: u32,
    },
    BindingChanged {
        id: u32,
    },
    NextDecreased {
        old: u32,
        new: u32,
    },
    DenotationChanged {
        id: u32,
    },
}

impl fmt::Display for StoreViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StoreViolation::*;
        let show = |k: &(u32, Option<u32>)| match k.1 {
            Some(b) => format!("({}, {})", k.0, b),
            None => k.0.to_string(),
        };
        match self {
            NextNotPositive => write!(f, "next counter is 0"),
            IdOutOfRange { id, next } => write!(f, "validity: node id {id} is not below next={next}"),
            ChildInvalid { id, child } => write!(f, "validity: node {id} references invalid child {child}"),
            ChildNotBelow { id, child } => write!(f, "acyclicity: node {id} has child {child} with id not below it"),
            Unreduced { id } => write!(f, "reduction: node {id} has identical children"),
            Unordered { id, child } => write!(f, "ordering: child {child} of node {id} is not on a deeper variable"),
            LeftInverse { id, hmap_id } => match hmap_id {
                Some(h) => write!(f, "left-inverse: graph maps {id} to a node that hmap maps to {h}"),
                None => write!(f, "left-inverse: node of {id} is missing from hmap"),
            },
            HmapDangling { hmap_id } => write!(f, "left-inverse: hmap entry for {hmap_id} disagrees with graph"),
            Duplicate { first, second } => write!(f, "uniqueness: nodes {first} and {second} are equal"),
            MemoKeyInvalid { table, key } => write!(f, "memo: {table} key {} is not a valid node", show(key)),
            MemoValueInvalid { table, key } => write!(f, "memo: {table} value for key {} is not valid", show(key)),
            MemoIncorrect { table, key } => write!(f, "memo: {table} entry for {} is semantically wrong", show(key)),
            BindingLost { id } => write!(f, "monotonicity: binding for {id} disappeared"),
            BindingChanged { id } => write!(f, "monotonicity: binding for {id} changed"),
            NextDecreased { old, new } => write!(f, "monotonicity: next went from {old} to {new}"),
            DenotationChanged { id } => write!(f, "monotonicity: denotation of {id} changed"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ValidateOptions {
    /// Re-check every memo entry against its operands by enumerating
    /// assignments. Exponential in the variable count.
    pub memo_semantics: bool,
    /// Semantic checks are skipped when the store uses more variables.
    pub max_vars: u32,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            memo_semantics: false,
            max_vars: 20,
        }
    }
}

impl Store {
    pub fn validate(&self) -> ValidationReport<StoreViolation> {
        self.validate_with(ValidateOptions::default())
    }

    pub fn validate_with(&self, opts: ValidateOptions) -> ValidationReport<StoreViolation> {
        use StoreViolation::*;
        let mut report = ValidationReport::default();
        let next = self.next;
        if next == 0 {
            report.push(NextNotPositive);
        }
        let valid_id = |id: u32| id >= 1 && id < next && self.graph.contains_key(&id);
        let valid_ref = |r: NodeRef| r.inner_id().is_none_or(valid_id);

        let mut first_seen: StdHashMap<_, u32> = StdHashMap::new();
        for (&id, node) in &self.graph {
            if id == 0 || id >= next {
                report.push(IdOutOfRange { id, next });
            }
            if node.low == node.high {
                report.push(Unreduced { id });
            }
            for child in [node.low, node.high] {
                let Some(c) = child.inner_id() else { continue };
                if !valid_id(c) {
                    report.push(ChildInvalid { id, child: c });
                    continue;
                }
                if c >= id {
                    report.push(ChildNotBelow { id, child: c });
                }
                if self.graph[&c].var <= node.var {
                    report.push(Unordered { id, child: c });
                }
            }
            match self.hmap.get(node) {
                Some(&h) if h == id => {}
                other => report.push(LeftInverse {
                    id,
                    hmap_id: other.copied(),
                }),
            }
            if let Some(&first) = first_seen.get(node) {
                report.push(Duplicate { first, second: id });
            } else {
                first_seen.insert(*node, id);
            }
        }
        let mut dangling: Vec<u32> = self
            .hmap
            .iter()
            .filter(|(node, id)| self.graph.get(id) != Some(node))
            .map(|(_, &id)| id)
            .collect();
        dangling.sort_unstable();
        for hmap_id in dangling {
            report.push(HmapDangling { hmap_id });
        }

        let mut memo_entries: Vec<(&'static str, u32, Option<u32>, NodeRef)> = Vec::new();
        for (name, table) in [
            ("mand", &self.memo.mand),
            ("mor", &self.memo.mor),
            ("mxor", &self.memo.mxor),
        ] {
            memo_entries.extend(table.iter().map(|(&(a, b), &r)| (name, a, Some(b), r)));
        }
        memo_entries.extend(self.memo.mneg.iter().map(|(&a, &r)| ("mneg", a, None, r)));
        memo_entries.sort_by_key(|&(t, a, b, _)| (t, a, b));

        let semantic = opts.memo_semantics && self.max_var <= opts.max_vars;
        for (table, a, b, r) in memo_entries {
            let key = (a, b);
            if !valid_id(a) || b.is_some_and(|b| !valid_id(b)) {
                report.push(MemoKeyInvalid { table, key });
                continue;
            }
            if !valid_ref(r) {
                report.push(MemoValueInvalid { table, key });
                continue;
            }
            if semantic && !self.memo_entry_correct(table, a, b, r) {
                report.push(MemoIncorrect { table, key });
            }
        }
        report
    }

    fn memo_entry_correct(&self, table: &str, a: u32, b: Option<u32>, r: NodeRef) -> bool {
        let n = self.max_var;
        (0..1u64 << n).all(|k| {
            let asg = Assignment::from_index(k, n);
            let eval = |e: NodeRef| evaluate(self, e, &asg);
            let (Ok(va), Ok(vr)) = (eval(NodeRef::Inner(a)), eval(r)) else {
                return false;
            };
            let vb = b.map(|b| eval(NodeRef::Inner(b)));
            let expected = match (table, vb) {
                ("mneg", None) => !va,
                ("mand", Some(Ok(vb))) => va && vb,
                ("mor", Some(Ok(vb))) => va || vb,
                ("mxor", Some(Ok(vb))) => va ^ vb,
                _ => return false,
            };
            expected == vr
        })
    }
}

/// Checks that `new` is a monotonic extension of `old`: every binding of
/// `old` survives unchanged, `next` does not decrease, and (when
/// `check_denotations` is set) every old node denotes the same function in
/// both stores.
pub fn validate_extension(old: &Store, new: &Store, check_denotations: bool) -> ValidationReport<StoreViolation> {
    use StoreViolation::*;
    let mut report = ValidationReport::default();
    if new.next < old.next {
        report.push(NextDecreased {
            old: old.next,
            new: new.next,
        });
    }
    for (&id, node) in &old.graph {
        match new.graph.get(&id) {
            None => report.push(BindingLost { id }),
            Some(n) if n != node => report.push(BindingChanged { id }),
            Some(_) => {}
        }
    }
    if check_denotations {
        let n = old.max_var.max(new.max_var);
        for &id in old.graph.keys() {
            let same = (0..1u64 << n).all(|k| {
                let asg = Assignment::from_index(k, n);
                let e = NodeRef::Inner(id);
                matches!((evaluate(old, e, &asg), evaluate(new, e, &asg)), (Ok(x), Ok(y)) if x == y)
            });
            if !same {
                report.push(DenotationChanged { id });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use im::{HashMap, OrdMap};

    use super::*;
    use crate::diagram::{BinOp, Node, Var};
    use crate::pure::Fuel;

    fn x(i: u32) -> Var {
        Var::new(i)
    }

    #[test]
    fn empty_store_is_clean() {
        assert!(Store::new().validate().is_clean());
    }

    #[test]
    fn detects_unreduced_node() {
        let n = Node::new(NodeRef::True, x(1), NodeRef::True);
        let st = Store::from_raw_parts(OrdMap::unit(1, n), HashMap::unit(n, 1), 2);
        let report = st.validate();
        assert_eq!(report.violations, vec![StoreViolation::Unreduced { id: 1 }]);
    }

    #[test]
    fn detects_left_inverse_violation() {
        let n = Node::new(NodeRef::False, x(1), NodeRef::True);
        let st = Store::from_raw_parts(OrdMap::unit(1, n), HashMap::unit(n, 2), 3);
        let report = st.validate();
        assert!(report.violations.contains(&StoreViolation::LeftInverse {
            id: 1,
            hmap_id: Some(2)
        }));
        assert!(report.violations.contains(&StoreViolation::HmapDangling { hmap_id: 2 }));
    }

    #[test]
    fn detects_duplicates_and_out_of_range() {
        let n = Node::new(NodeRef::False, x(1), NodeRef::True);
        let graph: OrdMap<u32, Node> = [(1u32, n), (2, n)].into_iter().collect();
        let st = Store::from_raw_parts(graph, HashMap::unit(n, 1), 2);
        let v = st.validate().violations;
        assert!(v.contains(&StoreViolation::Duplicate { first: 1, second: 2 }));
        assert!(v.contains(&StoreViolation::IdOutOfRange { id: 2, next: 2 }));
    }

    #[test]
    fn top_down_numbering_breaks_descent_only() {
        let st = crate::pure::tests::chain_store();
        let v = st.validate().violations;
        assert_eq!(
            v,
            vec![
                StoreViolation::ChildNotBelow { id: 1, child: 2 },
                StoreViolation::ChildNotBelow { id: 2, child: 3 },
            ]
        );
    }

    #[test]
    fn detects_unordered_and_dangling_children() {
        let inner = Node::new(NodeRef::False, x(1), NodeRef::True);
        let outer = Node::new(NodeRef::False, x(2), NodeRef::Inner(1));
        let bad = Node::new(NodeRef::Inner(9), x(3), NodeRef::True);
        let graph: OrdMap<u32, Node> = [(1u32, inner), (2, outer), (3, bad)].into_iter().collect();
        let hmap: HashMap<Node, u32> = [(inner, 1), (outer, 2), (bad, 3)].into_iter().collect();
        let v = Store::from_raw_parts(graph, hmap, 4).validate().violations;
        assert!(v.contains(&StoreViolation::Unordered { id: 2, child: 1 }));
        assert!(v.contains(&StoreViolation::ChildInvalid { id: 3, child: 9 }));
    }

    #[test]
    fn memo_semantics_are_checked_on_demand() {
        let (a, st) = Store::new().var(x(1)).unwrap();
        let (b, st) = st.var(x(2)).unwrap();
        let fuel = Fuel::for_vars(2);
        let (_, st) = st.apply(fuel, BinOp::Or, a, b).unwrap();
        let (_, st) = st.neg(fuel, a).unwrap();
        let opts = ValidateOptions {
            memo_semantics: true,
            ..Default::default()
        };
        assert!(st.validate_with(opts).is_clean());

        let mut bad = st.clone();
        bad.memo.mor.insert((1, 2), NodeRef::True);
        bad.memo.mneg.insert(7, NodeRef::True);
        assert!(bad.validate().violations.contains(&StoreViolation::MemoKeyInvalid {
            table: "mneg",
            key: (7, None)
        }));
        assert!(bad
            .validate_with(opts)
            .violations
            .contains(&StoreViolation::MemoIncorrect {
                table: "mor",
                key: (1, Some(2))
            }));
    }

    #[test]
    fn extension_checks() {
        let (a, st1) = Store::new().var(x(1)).unwrap();
        let (_, st2) = st1.clone().neg(Fuel::for_vars(1), a).unwrap();
        assert!(validate_extension(&st1, &st2, true).is_clean());
        let v = validate_extension(&st2, &st1, true).violations;
        assert!(v.contains(&StoreViolation::NextDecreased { old: 3, new: 2 }));
        assert!(v.contains(&StoreViolation::BindingLost { id: 2 }));

        let mut changed = st2.clone();
        changed.graph.insert(1, Node::new(NodeRef::True, x(1), NodeRef::False));
        let v = validate_extension(&st2, &changed, true).violations;
        assert!(v.contains(&StoreViolation::BindingChanged { id: 1 }));
        assert!(v.contains(&StoreViolation::DenotationChanged { id: 1 }));
    }
}
