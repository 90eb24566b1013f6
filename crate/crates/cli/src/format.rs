//! Plain-text instance formats, DIMACS-style: one record per line, `c` lines
//! are comments, vertices and edge ids are 0-based, one instance per file.
//!
//! Reconfiguration instance:
//! ```text
//! p pmr <vertices> <edges>
//! e <u> <v>            one line per edge, ids assigned 0.. in order
//! m <k> <id ...>       the initial perfect matching
//! n <k> <id ...>       the target perfect matching
//! o <v0> <v1> ...      optional outer order, one line per 2-connected block
//! ```
//!
//! Decomposition tree:
//! ```text
//! p tree <vertices>
//! t <u> <v> <length> <deletable 0|1>
//! ```
//!
//! Source graphs for the gadget generators use `p graph <n> <m>` with
//! `e <u> <v>` lines, and `p digraph <n> <m>` with `a <from> <to>` lines.

use matchflip::error::{Error, Result};
use matchflip::graph::{EdgeId, Multigraph, VertexId};
use matchflip::msdd::MsddInstance;
use matchflip::solver::SpmrInstance;

fn parse_error(line_no: usize, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("line {}: {msg}", line_no + 1))
}

fn fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn number<T: std::str::FromStr>(tok: &str, line_no: usize) -> Result<T> {
    tok.parse().map_err(|_| parse_error(line_no, format!("bad number `{tok}`")))
}

fn id_list(toks: &[&str], line_no: usize) -> Result<Vec<usize>> {
    toks.iter().map(|t| number(t, line_no)).collect()
}

pub fn parse_instance(text: &str) -> Result<SpmrInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut m_ids: Option<Vec<EdgeId>> = None;
    let mut n_ids: Option<Vec<EdgeId>> = None;
    let mut hints: Vec<Vec<VertexId>> = Vec::new();

    for (line_no, line) in text.lines().enumerate() {
        let f = fields(line);
        match f.as_slice() {
            [] | ["c", ..] => {}
            ["p", "pmr", n, m] => {
                if header.is_some() {
                    return Err(parse_error(line_no, "duplicate p line"));
                }
                header = Some((number(n, line_no)?, number(m, line_no)?));
            }
            ["e", u, v] => edges.push((number(u, line_no)?, number(v, line_no)?)),
            ["m", k, rest @ ..] => {
                let ids = id_list(rest, line_no)?;
                if ids.len() != number::<usize>(k, line_no)? {
                    return Err(parse_error(line_no, "m record count mismatch"));
                }
                m_ids = Some(ids);
            }
            ["n", k, rest @ ..] => {
                let ids = id_list(rest, line_no)?;
                if ids.len() != number::<usize>(k, line_no)? {
                    return Err(parse_error(line_no, "n record count mismatch"));
                }
                n_ids = Some(ids);
            }
            ["o", rest @ ..] => hints.push(id_list(rest, line_no)?),
            _ => return Err(parse_error(line_no, format!("unrecognized record `{line}`"))),
        }
    }

    let (n, m) = header.ok_or_else(|| Error::Input("missing `p pmr` header".into()))?;
    if edges.len() != m {
        return Err(Error::Input(format!("{} edge lines for a header of {m}", edges.len())));
    }
    let graph = Multigraph::new(n, edges)?;
    let m_ids = m_ids.ok_or_else(|| Error::Input("missing `m` record".into()))?;
    let n_ids = n_ids.ok_or_else(|| Error::Input("missing `n` record".into()))?;
    SpmrInstance::new(graph, m_ids, n_ids, hints)
}

pub fn render_instance(inst: &SpmrInstance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    out.push_str(&format!("p pmr {} {}\n", g.vertex_count(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out.push_str(&render_id_line("m", inst.m.ids()));
    out.push_str(&render_id_line("n", inst.n.ids()));
    for hint in &inst.embedding_hints {
        out.push('o');
        for v in hint {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

fn render_id_line(tag: &str, ids: &[usize]) -> String {
    let mut line = format!("{tag} {}", ids.len());
    for id in ids {
        line.push_str(&format!(" {id}"));
    }
    line.push('\n');
    line
}

pub fn parse_tree(text: &str) -> Result<MsddInstance> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    let mut lengths = Vec::new();
    let mut deletable = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let f = fields(line);
        match f.as_slice() {
            [] | ["c", ..] => {}
            ["p", "tree", n] => {
                if header.is_some() {
                    return Err(parse_error(line_no, "duplicate p line"));
                }
                header = Some(number(n, line_no)?);
            }
            ["t", u, v, len, del] => {
                edges.push((number::<usize>(u, line_no)?, number::<usize>(v, line_no)?));
                lengths.push(number::<u64>(len, line_no)?);
                match *del {
                    "0" => {}
                    "1" => deletable.push(edges.len() - 1),
                    other => {
                        return Err(parse_error(line_no, format!("deletable flag `{other}`")))
                    }
                }
            }
            _ => return Err(parse_error(line_no, format!("unrecognized record `{line}`"))),
        }
    }
    let n = header.ok_or_else(|| Error::Input("missing `p tree` header".into()))?;
    let tree = Multigraph::new(n, edges)?;
    MsddInstance::new(tree, deletable, lengths)
}

pub fn render_tree(inst: &MsddInstance) -> String {
    let g = inst.tree();
    let mut out = format!("p tree {}\n", g.vertex_count());
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let d = inst.deletable().binary_search(&id).is_ok() as u8;
        out.push_str(&format!("t {u} {v} {} {d}\n", inst.lengths()[id]));
    }
    out
}

/// `p graph <n> <m>` with `e` lines.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let (n, edges) = parse_pairs(text, "graph", "e")?;
    Multigraph::new(n, edges)
}

/// `p digraph <n> <m>` with `a <from> <to>` lines.
pub fn parse_digraph(text: &str) -> Result<(usize, Vec<(VertexId, VertexId)>)> {
    parse_pairs(text, "digraph", "a")
}

fn parse_pairs(
    text: &str,
    kind: &str,
    tag: &str,
) -> Result<(usize, Vec<(VertexId, VertexId)>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let f = fields(line);
        match f.as_slice() {
            [] | ["c", ..] => {}
            ["p", k, n, m] if *k == kind => {
                if header.is_some() {
                    return Err(parse_error(line_no, "duplicate p line"));
                }
                header = Some((number(n, line_no)?, number(m, line_no)?));
            }
            [t, u, v] if *t == tag => {
                pairs.push((number(u, line_no)?, number(v, line_no)?));
            }
            _ => return Err(parse_error(line_no, format!("unrecognized record `{line}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::Input(format!("missing `p {kind}` header")))?;
    if pairs.len() != m {
        return Err(Error::Input(format!("{} {tag} lines for a header of {m}", pairs.len())));
    }
    Ok((n, pairs))
}
