//! The native graph text format.
//!
//! ```text
//! Graph Nodes:
//! X1;X2;X3
//!
//! Graph Edges:
//! 1. X1 --> X2
//! 2. X2 --- X3
//! ```
//!
//! Node names sit on one `;`-separated line; latent nodes are wrapped in
//! parentheses. Edge tokens are `-->` (directed), `---` (undirected) and
//! `<->` (bidirected); `<--` is accepted on input and normalized by swapping
//! the endpoints. Lines end with `\n`; a trailing newline is optional when
//! parsing.

use super::{Graph, GraphError, Mark};

pub fn render_graph_text(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str("Graph Nodes:\n");
    let names: Vec<String> = (0..g.node_count())
        .map(|i| {
            if g.is_latent(i) {
                format!("({})", g.name_of(i))
            } else {
                g.name_of(i).to_string()
            }
        })
        .collect();
    out.push_str(&names.join(";"));
    out.push_str("\n\nGraph Edges:\n");
    for (k, e) in g.edges().enumerate() {
        let line = match (e.mark_a, e.mark_b) {
            (Mark::Tail, Mark::Arrow) => format!("{} --> {}", g.name_of(e.a), g.name_of(e.b)),
            (Mark::Arrow, Mark::Tail) => format!("{} --> {}", g.name_of(e.b), g.name_of(e.a)),
            (Mark::Tail, Mark::Tail) => format!("{} --- {}", g.name_of(e.a), g.name_of(e.b)),
            (Mark::Arrow, Mark::Arrow) => format!("{} <-> {}", g.name_of(e.a), g.name_of(e.b)),
        };
        out.push_str(&format!("{}. {}\n", k + 1, line));
    }
    out
}

pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Format("empty input".to_string()))?;
    if header.trim() != "Graph Nodes:" {
        return Err(GraphError::Format(format!(
            "expected `Graph Nodes:` header, found `{header}`"
        )));
    }
    let node_line = lines
        .next()
        .ok_or_else(|| GraphError::Format("missing node list line".to_string()))?;
    let mut names = Vec::new();
    let mut latent = Vec::new();
    if !node_line.trim().is_empty() {
        for token in node_line.split(';') {
            let token = token.trim();
            if token.is_empty() {
                return Err(GraphError::Format("empty node name in node list".to_string()));
            }
            if let Some(inner) = token.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
                names.push(inner.to_string());
                latent.push(true);
            } else {
                names.push(token.to_string());
                latent.push(false);
            }
        }
    }
    let mut g = Graph::with_latents(names, latent)?;

    let mut saw_edge_header = false;
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if !saw_edge_header {
            if line == "Graph Edges:" {
                saw_edge_header = true;
                continue;
            }
            return Err(GraphError::Format(format!(
                "expected `Graph Edges:` header, found `{line}`"
            )));
        }
        parse_edge_line(&mut g, line)?;
    }
    if !saw_edge_header {
        return Err(GraphError::Format("missing `Graph Edges:` header".to_string()));
    }
    Ok(g)
}

fn parse_edge_line(g: &mut Graph, line: &str) -> Result<(), GraphError> {
    let rest = match line.split_once('.') {
        Some((num, rest)) if num.trim().parse::<usize>().is_ok() => rest,
        _ => {
            return Err(GraphError::Format(format!(
                "edge line `{line}` must start with a 1-based index and `.`"
            )))
        }
    };
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    let [a, token, b] = tokens[..] else {
        return Err(GraphError::Format(format!(
            "edge line `{line}` must read `<n>. <node> <edge> <node>`"
        )));
    };
    let ai = g.require_index(a)?;
    let bi = g.require_index(b)?;
    match token {
        "-->" => g.add_directed(ai, bi),
        "<--" => g.add_directed(bi, ai),
        "---" => g.add_undirected(ai, bi),
        "<->" => g.add_bidirected(ai, bi),
        other => Err(GraphError::UnknownEdgeToken(other.to_string())),
    }
}
