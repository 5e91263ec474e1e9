//! Line-based text form of a store's node graph.
//!
//! ```text
//! # comment
//! next 4
//! 1 F 2 T
//! 2 F 1 1
//! ```
//!
//! The header gives the next fresh id. Each record is `id low var high`,
//! where `low`/`high` are `T`, `F` or a node id and `var` is a variable
//! index. Blank lines and `#` comments are ignored. Memo tables are not
//! written; a loaded store starts with empty tables. Loading performs no
//! validation beyond syntax, so corrupted graphs can be inspected with
//! [`Store::validate`].

use std::fmt::Write as _;

use im::{HashMap, OrdMap};

use super::Store;
use crate::diagram::{Node, NodeRef, Var};
use crate::error::{Error, Result};

impl Store {
    pub fn to_text(&self) -> String {
        let mut out = format!("next {}\n", self.next);
        for (id, n) in &self.graph {
            let _ = writeln!(out, "{id} {} {} {}", n.low, n.var.index(), n.high);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Store> {
        let mut next = None;
        let mut graph = OrdMap::new();
        let mut hmap = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| Error::StoreFormat { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if next.is_none() {
                match fields.as_slice() {
                    ["next", n] => next = Some(n.parse::<u32>().map_err(|e| err(format!("bad next counter: {e}")))?),
                    _ => return Err(err("expected header `next <id>`".into())),
                }
                continue;
            }
            let [id, low, var, high] = fields.as_slice() else {
                return Err(err(format!("expected 4 fields, found {}", fields.len())));
            };
            let id: u32 = id.parse().map_err(|e| err(format!("bad node id `{id}`: {e}")))?;
            let var = var
                .parse::<u32>()
                .ok()
                .and_then(Var::try_new)
                .ok_or_else(|| err(format!("bad variable `{var}`")))?;
            let node = Node::new(parse_ref(low).map_err(err)?, var, parse_ref(high).map_err(err)?);
            if graph.insert(id, node).is_some() {
                return Err(err(format!("node {id} defined twice")));
            }
            hmap.entry(node).or_insert(id);
        }
        let next = next.ok_or(Error::StoreFormat {
            line: 0,
            message: "missing `next` header".into(),
        })?;
        Ok(Store::from_raw_parts(graph, hmap, next))
    }
}

fn parse_ref(s: &str) -> std::result::Result<NodeRef, String> {
    match s {
        "T" => Ok(NodeRef::True),
        "F" => Ok(NodeRef::False),
        _ => s
            .parse::<u32>()
            .map(NodeRef::Inner)
            .map_err(|_| format!("bad node reference `{s}`")),
    }
}
