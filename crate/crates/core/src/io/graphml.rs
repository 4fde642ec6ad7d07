//! GraphML export for external layout and visualization tools.

use crate::graph::Graph;
use crate::schema::{AttributeKind, AttributeSchema, NodeProfile};
use std::io::{self, Write};

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Writes the graph as a GraphML document. When `attrs` is given, each
/// attribute becomes a node data key (`string` for categorical/ordinal,
/// `double` for numerical) and every node carries its values.
pub fn write_graphml<W: Write>(
    g: &Graph,
    attrs: Option<(&AttributeSchema, &[NodeProfile])>,
    mut w: W,
) -> io::Result<()> {
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns" xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">"#
    )?;
    if let Some((schema, profiles)) = attrs {
        debug_assert!(profiles.len() >= g.node_count());
        for (i, attr) in schema.attributes().iter().enumerate() {
            let ty = match attr.kind() {
                AttributeKind::Numerical => "double",
                _ => "string",
            };
            writeln!(
                w,
                r#"  <key id="d{i}" for="node" attr.name="{}" attr.type="{ty}"/>"#,
                escape(attr.name())
            )?;
        }
    }
    writeln!(w, r#"  <graph id="G" edgedefault="undirected">"#)?;
    for v in g.nodes() {
        match attrs {
            Some((schema, profiles)) if !schema.attributes().is_empty() => {
                writeln!(w, r#"    <node id="n{v}">"#)?;
                for (i, (attr, value)) in schema
                    .attributes()
                    .iter()
                    .zip(profiles[v.index()].values())
                    .enumerate()
                {
                    writeln!(
                        w,
                        r#"      <data key="d{i}">{}</data>"#,
                        escape(&attr.format_value(value))
                    )?;
                }
                writeln!(w, "    </node>")?;
            }
            _ => writeln!(w, r#"    <node id="n{v}"/>"#)?,
        }
    }
    for (i, (u, v)) in g.edges().enumerate() {
        writeln!(w, r#"    <edge id="e{i}" source="n{u}" target="n{v}"/>"#)?;
    }
    writeln!(w, "  </graph>")?;
    writeln!(w, "</graphml>")
}
