//! Graphviz export.
//!
//! Two separate pictures: the object graph of a semigroupoid (one edge per
//! arrow, drawn from domain to codomain) and the Hasse diagram of a finite
//! poset (edges from a cover's lower element to its upper element).

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::poset::FinitePoset;
use crate::semigroupoid::FiniteSemigroupoid;

/// A double-quoted DOT identifier.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn object_graph(s: &FiniteSemigroupoid) -> String {
    let mut out = String::from("digraph semigroupoid {\n");
    for u in 0..s.object_count() {
        writeln!(out, "  {};", quote(s.object_name(u))).unwrap();
    }
    for a in s.arrows() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(s.object_name(s.dom(a))),
            quote(s.object_name(s.cod(a))),
            quote(s.arrow_name(a))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram with the `highlight` elements filled.
pub fn hasse(names: &[String], p: &FinitePoset, highlight: &BTreeSet<usize>) -> String {
    let mut out = String::from("digraph order {\n  rankdir=BT;\n");
    for (x, name) in names.iter().enumerate().take(p.len()) {
        if highlight.contains(&x) {
            writeln!(out, "  {} [style=filled, fillcolor=lightgrey];", quote(name)).unwrap();
        } else {
            writeln!(out, "  {};", quote(name)).unwrap();
        }
    }
    for (x, y) in p.hasse_edges() {
        writeln!(out, "  {} -> {};", quote(&names[x]), quote(&names[y])).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn object_graph_has_one_edge_per_arrow() {
        let p = fixtures::pair_groupoid(2);
        let dot = object_graph(p.base());
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.starts_with("digraph semigroupoid {"));
    }

    #[test]
    fn hasse_of_a_chain() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let dot = hasse(&names, &FinitePoset::chain(3), &BTreeSet::from([0]));
        assert!(dot.contains("\"a\" -> \"b\";"));
        assert!(dot.contains("\"b\" -> \"c\";"));
        assert!(!dot.contains("\"a\" -> \"c\";"));
        assert!(dot.contains("\"a\" [style=filled"));
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b\\"), "\"a\\\"b\\\\\"");
    }
}
