//! Graphviz export.
//!
//! Nodes reachable from the root are emitted once each, in increasing
//! ident order (children before parents), followed by their edges: dashed
//! for the 0-branch, solid for the 1-branch.

use std::fmt::Write as _;

use crate::diagram::{reachable, Decoded, DiagramView};
use crate::error::Result;

pub fn to_dot<V: DiagramView>(view: &V, root: V::Ref) -> Result<String> {
    let mut nodes = reachable(view, root)?;
    nodes.sort_by_key(|&r| (view.ident(r), view.name(r)));
    let mut out = String::from("digraph bdd {\n");
    let mut edges = String::new();
    for r in nodes {
        let name = view.name(r);
        match view.decode(r)? {
            Decoded::Leaf(b) => {
                let _ = writeln!(out, "  {name} [shape=box, label=\"{}\"];", if b { "T" } else { "F" });
            }
            Decoded::Inner { var, low, high } => {
                let _ = writeln!(out, "  {name} [shape=circle, label=\"{var}\"];");
                let _ = writeln!(edges, "  {name} -> {} [style=dashed];", view.name(low));
                let _ = writeln!(edges, "  {name} -> {} [style=solid];", view.name(high));
            }
        }
    }
    out.push_str(&edges);
    out.push_str("}\n");
    Ok(out)
}
