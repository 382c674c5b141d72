//! Graph specifications.
//!
//! ```text
//! K5  E4  C6  P3          complete, edgeless, cycle, path
//! Kmp:3*2                 complete multipartite K_{n*r}: r parts of n vertices
//! Kbip:2x4                complete bipartite K_{m,n}
//! lex(C4,K2)              lexicographic product, nesting allowed
//! file:graph.txt          "p <n> <m>" then m lines "e <u> <v>", 0-based
//! ```

use std::fmt;
use std::path::Path;

use lexpaint_core::{lexicographic_product, Family, Graph, GraphError, ProductLayout};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DslError {
    #[error("empty graph spec")]
    Empty,
    #[error("unrecognised graph spec `{0}`")]
    Unknown(String),
    #[error("bad number in `{0}`")]
    BadNumber(String),
    #[error("unbalanced parentheses in `{0}`")]
    Unbalanced(String),
    #[error("`{spec}`: {error}")]
    Graph { spec: String, error: GraphError },
    #[error("{path}: {message}")]
    File { path: String, message: String },
}

/// A parsed spec. Products keep their base/fiber factorisation.
#[derive(Debug, Clone)]
pub struct GraphSpec {
    pub text: String,
    pub graph: Graph,
    pub layout: Option<ProductLayout>,
    /// Base and fiber texts of a product.
    pub factors: Option<(String, String)>,
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl std::str::FromStr for GraphSpec {
    type Err = DslError;

    fn from_str(s: &str) -> Result<Self, DslError> {
        parse_graph(s)
    }
}

pub fn parse_graph(spec: &str) -> Result<GraphSpec, DslError> {
    let text = spec.trim();
    if text.is_empty() {
        return Err(DslError::Empty);
    }
    if let Some(inner) = text.strip_prefix("lex(") {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| DslError::Unbalanced(text.into()))?;
        let comma = top_level_comma(inner).ok_or_else(|| DslError::Unknown(text.into()))?;
        let base = parse_graph(&inner[..comma])?;
        let fiber = parse_graph(&inner[comma + 1..])?;
        let layout = lexicographic_product(&base.graph, &fiber.graph);
        return Ok(GraphSpec {
            text: format!("lex({},{})", base.text, fiber.text),
            graph: layout.product().clone(),
            layout: Some(layout),
            factors: Some((base.text, fiber.text)),
        });
    }
    if let Some(path) = text.strip_prefix("file:") {
        return Ok(GraphSpec {
            text: text.into(),
            graph: read_edge_list(Path::new(path))?,
            layout: None,
            factors: None,
        });
    }
    let family = parse_family(text)?;
    let graph = family.build().map_err(|error| DslError::Graph {
        spec: text.into(),
        error,
    })?;
    Ok(GraphSpec {
        text: text.into(),
        graph,
        layout: None,
        factors: None,
    })
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn number(s: &str, whole: &str) -> Result<usize, DslError> {
    s.trim()
        .parse()
        .map_err(|_| DslError::BadNumber(whole.into()))
}

fn parse_family(text: &str) -> Result<Family, DslError> {
    if let Some(rest) = text.strip_prefix("Kmp:") {
        let (n, r) = rest
            .split_once('*')
            .ok_or_else(|| DslError::Unknown(text.into()))?;
        return Ok(Family::Multipartite {
            part_size: number(n, text)?,
            parts: number(r, text)?,
        });
    }
    if let Some(rest) = text.strip_prefix("Kbip:") {
        let (m, n) = rest
            .split_once('x')
            .ok_or_else(|| DslError::Unknown(text.into()))?;
        return Ok(Family::Bipartite(number(m, text)?, number(n, text)?));
    }
    let mut chars = text.chars();
    let head = chars.next().ok_or(DslError::Empty)?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DslError::Unknown(text.into()));
    }
    let n = number(rest, text)?;
    Ok(match head {
        'K' => Family::Complete(n),
        'E' => Family::Empty(n),
        'C' => Family::Cycle(n),
        'P' => Family::Path(n),
        _ => return Err(DslError::Unknown(text.into())),
    })
}

/// Reads the `p`/`e` edge-list format. Blank lines and lines starting with
/// `c` are skipped.
pub fn read_edge_list(path: &Path) -> Result<Graph, DslError> {
    let shown = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| DslError::File {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    parse_edge_list(&content).map_err(|message| DslError::File {
        path: shown,
        message,
    })
}

pub fn parse_edge_list(content: &str) -> Result<Graph, String> {
    let mut lines = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
    let (line_no, header) = lines.next().ok_or("missing `p <n> <m>` line")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields[..] {
        ["p", n, m] => (
            n.parse::<usize>()
                .map_err(|_| format!("line {line_no}: bad vertex count"))?,
            m.parse::<usize>()
                .map_err(|_| format!("line {line_no}: bad edge count"))?,
        ),
        _ => return Err(format!("line {line_no}: expected `p <n> <m>`")),
    };
    let mut graph = Graph::empty(n);
    let mut seen = 0;
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let ["e", u, v] = fields[..] else {
            return Err(format!("line {line_no}: expected `e <u> <v>`"));
        };
        let u: usize = u
            .parse()
            .map_err(|_| format!("line {line_no}: bad endpoint"))?;
        let v: usize = v
            .parse()
            .map_err(|_| format!("line {line_no}: bad endpoint"))?;
        if u < n && v < n && graph.has_edge(u, v) {
            return Err(format!("line {line_no}: duplicate edge {u} {v}"));
        }
        graph
            .add_edge(u, v)
            .map_err(|e| format!("line {line_no}: {e}"))?;
        seen += 1;
    }
    if seen != m {
        return Err(format!("header announces {m} edges but {seen} were listed"));
    }
    Ok(graph)
}

/// The graph in edge-list format.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = format!("p {} {}\n", graph.vertex_count(), graph.edge_count());
    for (u, v) in graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        parse_graph(s).unwrap().graph
    }

    #[test]
    fn named_families() {
        assert_eq!(g("K5").edge_count(), 10);
        assert_eq!(g("E4").edge_count(), 0);
        assert_eq!(g("C6").edge_count(), 6);
        assert_eq!(g("P3").edge_count(), 2);
        assert_eq!(g("Kmp:3*2"), Graph::complete_bipartite(3, 3));
        assert_eq!(g("Kbip:2x4"), Graph::complete_bipartite(2, 4));
        assert_eq!(g(" K2 "), Graph::complete(2));
    }

    #[test]
    fn products_nest() {
        let spec = parse_graph("lex(K2,E2)").unwrap();
        assert_eq!(spec.graph, Graph::complete_bipartite(2, 2));
        assert_eq!(spec.layout.as_ref().unwrap().fiber_size(), 2);
        let nested = parse_graph("lex(lex(K2,K2),E1)").unwrap();
        assert_eq!(nested.graph, Graph::complete(4));
        assert_eq!(nested.layout.unwrap().base(), &Graph::complete(4));
        let right = parse_graph("lex(K2, lex(E2,K1))").unwrap();
        assert_eq!(right.text, "lex(K2,lex(E2,K1))");
        assert_eq!(right.graph, Graph::complete_bipartite(2, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_graph(""), Err(DslError::Empty)));
        assert!(matches!(parse_graph("Q4"), Err(DslError::Unknown(_))));
        assert!(matches!(parse_graph("K"), Err(DslError::Unknown(_))));
        assert!(matches!(parse_graph("Kx"), Err(DslError::Unknown(_))));
        assert!(matches!(parse_graph("Kmp:2"), Err(DslError::Unknown(_))));
        assert!(matches!(
            parse_graph("lex(K2,E2"),
            Err(DslError::Unbalanced(_))
        ));
        assert!(matches!(parse_graph("lex(K2)"), Err(DslError::Unknown(_))));
        assert!(matches!(parse_graph("C2"), Err(DslError::Graph { .. })));
    }

    #[test]
    fn edge_lists_round_trip() {
        let c5 = Graph::cycle(5).unwrap();
        let text = write_edge_list(&c5);
        assert!(text.starts_with("p 5 5\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), c5);
        assert!(parse_edge_list("p 2 1\ne 0 1\ne 0 1\n").is_err());
        assert!(parse_edge_list("p 2 2\ne 0 1\n").is_err());
        assert!(parse_edge_list("p 2 1\ne 0 2\n").is_err());
        assert!(parse_edge_list("p 2 1\ne 1 1\n").is_err());
        assert!(parse_edge_list("e 0 1\n").is_err());
        assert_eq!(
            parse_edge_list("c comment\n\np 3 1\ne 2 0\n")
                .unwrap()
                .edge_count(),
            1
        );
    }

    #[test]
    fn files_are_read() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k3.txt");
        std::fs::write(&path, "p 3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        let spec = parse_graph(&format!("file:{}", path.display())).unwrap();
        assert_eq!(spec.graph, Graph::complete(3));
        assert!(matches!(
            parse_graph("file:/nonexistent/graph.txt"),
            Err(DslError::File { .. })
        ));
    }
}
