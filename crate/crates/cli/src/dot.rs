//! Graphviz renderings of the quiver and the extension quiver.

use noloop_core::noloop::ExtArrow;
use noloop_core::Quiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn quiver(q: &Quiver, name: &str) -> String {
    let mut s = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for v in q.vertices() {
        s.push_str(&format!("  {};\n", quote(v)));
    }
    for a in q.arrows() {
        s.push_str(&format!("  {} -> {} [label={}];\n", quote(q.vertex_name(a.source)), quote(q.vertex_name(a.target)), quote(&a.label)));
    }
    s.push_str("}\n");
    s
}

/// One edge per nonzero `Ext¹(S, T)`, however large; the dimension goes in the label.
pub fn extension_quiver(vertices: &[String], arrows: &[ExtArrow], name: &str) -> String {
    let mut s = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for v in vertices {
        s.push_str(&format!("  {};\n", quote(v)));
    }
    for a in arrows {
        s.push_str(&format!("  {} -> {} [label=\"dim {}\"];\n", quote(&a.source), quote(&a.target), a.dim));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_and_escapes() {
        let q = Quiver::from_strs(&["1", "a\"b"], &[("x", "1", "a\"b")]).unwrap();
        let s = quiver(&q, "q");
        assert!(s.contains("\"1\" -> \"a\\\"b\" [label=\"x\"];"));
        let e = extension_quiver(&["1".into()], &[ExtArrow { source: "1".into(), target: "1".into(), dim: 2 }], "ext");
        assert_eq!(e.matches("->").count(), 1);
    }
}
