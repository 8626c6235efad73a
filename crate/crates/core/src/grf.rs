//! The GRF text format: a sequence of graph blocks, read as the
//! multiplicity-weighted disjoint union of the blocks.
//!
//! ```text
//! # comment
//! graph <name> [mult=<m>] [loops=<0|1>]
//! vertices <n>
//! roots <i> <i> ...
//! edge <u> <v>
//! end
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrfBlock {
    pub name: String,
    pub multiplicity: usize,
    pub graph: Graph,
}

struct Pending {
    name: String,
    multiplicity: usize,
    loops: bool,
    vertices: Option<usize>,
    roots: Option<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    start: usize,
}

fn number(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

fn header(rest: &[&str], line: usize) -> Result<Pending> {
    let (name, opts) = rest
        .split_first()
        .ok_or_else(|| Error::parse(line, "missing graph name"))?;
    if name.contains('=') {
        return Err(Error::parse(line, "missing graph name"));
    }
    let mut p = Pending {
        name: name.to_string(),
        multiplicity: 1,
        loops: false,
        vertices: None,
        roots: None,
        edges: Vec::new(),
        start: line,
    };
    for opt in opts {
        match opt.split_once('=') {
            Some(("mult", v)) => p.multiplicity = number(v, line, "a multiplicity")?,
            Some(("loops", "0")) => p.loops = false,
            Some(("loops", "1")) => p.loops = true,
            _ => return Err(Error::parse(line, format!("unknown option `{opt}`"))),
        }
    }
    Ok(p)
}

fn finish(p: Pending, line: usize) -> Result<GrfBlock> {
    let n = p
        .vertices
        .ok_or_else(|| Error::parse(p.start, format!("graph `{}` has no vertices line", p.name)))?;
    let as_parse = |e: Error| Error::parse(line, e.to_string());
    let g = if p.loops {
        Graph::from_edges_with_loops(n, &p.edges)
    } else {
        Graph::from_edges(n, &p.edges)
    }
    .map_err(as_parse)?;
    let g = g
        .with_roots(&p.roots.unwrap_or_default())
        .map_err(as_parse)?;
    Ok(GrfBlock {
        name: p.name,
        multiplicity: p.multiplicity,
        graph: g,
    })
}

pub fn parse_grf(text: &str) -> Result<Vec<GrfBlock>> {
    let mut blocks = Vec::new();
    let mut open: Option<Pending> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else {
            continue;
        };
        match (head, open.as_mut()) {
            ("graph", None) => open = Some(header(rest, line)?),
            ("graph", Some(_)) => return Err(Error::parse(line, "`graph` inside an open block")),
            (_, None) => {
                return Err(Error::parse(
                    line,
                    format!("`{head}` outside a graph block"),
                ))
            }
            ("vertices", Some(p)) => {
                if p.vertices.is_some() {
                    return Err(Error::parse(line, "repeated `vertices`"));
                }
                match rest {
                    [n] => p.vertices = Some(number(n, line, "a vertex count")?),
                    _ => return Err(Error::parse(line, "`vertices` takes one number")),
                }
            }
            ("roots", Some(p)) => {
                if p.vertices.is_none() || p.roots.is_some() {
                    return Err(Error::parse(line, "`roots` must follow `vertices` once"));
                }
                let roots = rest
                    .iter()
                    .map(|t| number(t, line, "a vertex"))
                    .collect::<Result<Vec<_>>>()?;
                let mut sorted = roots.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != roots.len() {
                    return Err(Error::parse(line, "repeated root"));
                }
                p.roots = Some(roots);
            }
            ("edge", Some(p)) => {
                if p.vertices.is_none() {
                    return Err(Error::parse(line, "`edge` before `vertices`"));
                }
                match rest {
                    [u, v] => p
                        .edges
                        .push((number(u, line, "a vertex")?, number(v, line, "a vertex")?)),
                    _ => return Err(Error::parse(line, "`edge` takes two vertices")),
                }
            }
            ("end", Some(_)) => {
                if !rest.is_empty() {
                    return Err(Error::parse(line, "trailing tokens after `end`"));
                }
                blocks.push(finish(open.take().expect("open block"), line)?);
            }
            (other, Some(_)) => {
                return Err(Error::parse(line, format!("unknown directive `{other}`")))
            }
        }
    }
    if let Some(p) = open {
        return Err(Error::parse(
            p.start,
            format!("graph `{}` is missing `end`", p.name),
        ));
    }
    Ok(blocks)
}

pub fn render_grf(blocks: &[GrfBlock]) -> String {
    let mut out = String::new();
    for b in blocks {
        let _ = write!(out, "graph {}", b.name);
        if b.multiplicity != 1 {
            let _ = write!(out, " mult={}", b.multiplicity);
        }
        if b.graph.allows_loops() {
            out.push_str(" loops=1");
        }
        let _ = writeln!(out, "\nvertices {}", b.graph.vertex_count());
        if b.graph.root_count() > 0 {
            out.push_str("roots");
            for r in b.graph.roots() {
                let _ = write!(out, " {r}");
            }
            out.push('\n');
        }
        for (u, v) in b.graph.edges() {
            let _ = writeln!(out, "edge {u} {v}");
        }
        out.push_str("end\n");
    }
    out
}

/// The disjoint union described by the blocks.
pub fn blocks_graph(blocks: &[GrfBlock]) -> Graph {
    let mut g = Graph::empty();
    for b in blocks {
        g = g.disjoint_union(&b.graph.copies(b.multiplicity));
    }
    g
}

/// The component family described by the blocks.
pub fn blocks_family(blocks: &[GrfBlock]) -> Result<GraphFamily> {
    let mut f = GraphFamily::new();
    for b in blocks {
        for part in GraphFamily::of(&b.graph)?.iter() {
            f.insert_key(part.0.clone(), part.1.clone(), part.2 * b.multiplicity);
        }
    }
    Ok(f)
}

/// One block per isomorphism class, in key order, named `c0`, `c1`, ...
pub fn family_blocks(f: &GraphFamily) -> Vec<GrfBlock> {
    f.iter()
        .enumerate()
        .map(|(i, (_, g, m))| GrfBlock {
            name: format!("c{i}"),
            multiplicity: m,
            graph: g.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a four-cycle and two edges
graph c4
vertices 4
edge 0 1
edge 1 2
edge 2 3
edge 3 0
end

graph k2 mult=2   # trailing comment
vertices 2
roots 0
edge 0 1
end
graph tri loops=1
vertices 3
edge 0 1
edge 1 2
edge 0 2
edge 2 2
end
";

    #[test]
    fn parse_sample() {
        let blocks = parse_grf(SAMPLE).unwrap();
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[1].multiplicity, 2);
        assert!(blocks[1].graph.is_root(0));
        assert_eq!(blocks[2].graph.loop_count(), 1);
        let g = blocks_graph(&blocks);
        assert_eq!(g.vertex_count(), 4 + 4 + 3);
        let f = blocks_family(&blocks).unwrap();
        assert_eq!(f.component_count(), 4);
    }

    #[test]
    fn roundtrip() {
        let blocks = parse_grf(SAMPLE).unwrap();
        assert_eq!(parse_grf(&render_grf(&blocks)).unwrap(), blocks);
        assert_eq!(parse_grf("").unwrap(), vec![]);
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("graph a\nvertices 2\nedge 0 0\nend\n", 4),
            ("graph a\nvertices 2\nedge 0 5\nend\n", 4),
            ("graph a\nedge 0 1\nend\n", 2),
            ("vertices 2\n", 1),
            ("graph a mult=x\n", 1),
            ("graph a\nvertices 2\n", 1),
            ("graph a\nvertices 2\nroots 1 1\nend\n", 3),
            ("graph a\nvertices 2\nedge 0 1\nedge 1 0\nend\n", 5),
            ("graph a\nvertices 2\nfoo\nend\n", 3),
            ("graph\n", 1),
        ];
        for (text, line) in cases {
            match parse_grf(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
