//! Text formats: graph files, per-node value files, marker files and PGM rasters.
//!
//! Graph files are line oriented, `#` starts a comment:
//!
//! ```text
//! floodgraph v1
//! node a f=0 omega=0
//! node b f=4
//! edge a b w=4
//! ```

use std::fmt::Write as _;

use crate::error::{FloodError, Result};
use crate::graph::{Graph, NodeFunction, NodeId, Raster};
use crate::weight::Weight;

pub const HEADER: &str = "floodgraph v1";

/// A parsed graph file: the graph plus the optional ceiling it declares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    /// Present when at least one node carries `omega=`; missing entries are `⊤`.
    pub ceiling: Option<NodeFunction>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> FloodError {
    FloodError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_attr<'a>(line: usize, token: &'a str, allowed: &[&str]) -> Result<(&'a str, Weight)> {
    let (key, value) = token
        .split_once('=')
        .ok_or_else(|| parse_err(line, format!("expected key=value, got `{token}`")))?;
    if !allowed.contains(&key) {
        return Err(parse_err(line, format!("unknown attribute `{key}`")));
    }
    let weight = value
        .parse::<Weight>()
        .map_err(|e| parse_err(line, e.to_string()))?;
    Ok((key, weight))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(parse_err(n, format!("expected `{HEADER}`, got `{other}`"))),
        None => return Err(parse_err(1, "empty file")),
    }

    let mut names = Vec::new();
    let mut ground = Vec::new();
    let mut omega = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut weights = Vec::new();
    for (n, line) in lines {
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("node") => {
                let id = tokens.next().ok_or_else(|| parse_err(n, "node without id"))?;
                let (mut f, mut om) = (None, None);
                for tok in tokens {
                    match parse_attr(n, tok, &["f", "omega"])? {
                        ("f", v) => f = Some(v),
                        (_, v) => om = Some(v),
                    }
                }
                names.push(id.to_string());
                ground.push(f);
                omega.push(om);
            }
            Some("edge") => {
                let u = tokens.next().ok_or_else(|| parse_err(n, "edge without endpoints"))?;
                let v = tokens.next().ok_or_else(|| parse_err(n, "edge without second endpoint"))?;
                let mut wt = None;
                for tok in tokens {
                    wt = Some(parse_attr(n, tok, &["w"])?.1);
                }
                edges.push((u.to_string(), v.to_string()));
                weights.push(wt);
            }
            Some(other) => return Err(parse_err(n, format!("unknown record `{other}`"))),
            None => unreachable!(),
        }
    }

    let ground = all_or_none(&ground, "f", "node")?;
    let edge_weights = all_or_none(&weights, "w", "edge")?;
    let ceiling = omega
        .iter()
        .any(Option::is_some)
        .then(|| omega.iter().map(|o| o.unwrap_or(Weight::Top)).collect());
    let graph = Graph::build(names, &edges, ground, edge_weights)?;
    Ok(GraphFile { graph, ceiling })
}

fn all_or_none(values: &[Option<Weight>], attr: &str, what: &str) -> Result<Option<Vec<Weight>>> {
    // An empty list counts as fully weighted, so edgeless graphs still
    // qualify as edge-weighted.
    let present = values.iter().filter(|v| v.is_some()).count();
    if present == 0 && !values.is_empty() {
        Ok(None)
    } else if present == values.len() {
        Ok(Some(values.iter().map(|v| v.unwrap()).collect()))
    } else {
        Err(parse_err(
            0,
            format!("`{attr}=` must be given on every {what} or on none"),
        ))
    }
}

pub fn write_graph(g: &Graph, ceiling: Option<&NodeFunction>) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    let ground = g.ground().ok();
    for p in g.nodes() {
        write!(out, "node {}", g.name(p)).unwrap();
        if let Some(f) = ground {
            write!(out, " f={}", f[p]).unwrap();
        }
        if let Some(om) = ceiling {
            write!(out, " omega={}", om[p]).unwrap();
        }
        out.push('\n');
    }
    let ew = g.edge_weights().ok();
    for (id, e) in g.edges().iter().enumerate() {
        write!(out, "edge {} {}", g.name(e.u), g.name(e.v)).unwrap();
        if let Some(ew) = ew {
            write!(out, " w={}", ew[id]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses `<node> <value>` lines. Nodes may be omitted; listing one twice is an error.
pub fn parse_node_values(text: &str, g: &Graph) -> Result<Vec<Option<Weight>>> {
    let mut values = vec![None; g.node_count()];
    for (n, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let (Some(name), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_err(n, "expected `<node> <value>`"));
        };
        let p = g.node_id(name).map_err(|e| parse_err(n, e.to_string()))?;
        let v = value.parse::<Weight>().map_err(|e| parse_err(n, e.to_string()))?;
        if values[p].replace(v).is_some() {
            return Err(parse_err(n, format!("node `{name}` listed twice")));
        }
    }
    Ok(values)
}

/// Requires every node to have a value.
pub fn total_function(values: Vec<Option<Weight>>, g: &Graph) -> Result<NodeFunction> {
    values
        .into_iter()
        .enumerate()
        .map(|(p, v)| {
            v.ok_or_else(|| parse_err(0, format!("no value for node `{}`", g.name(p))))
        })
        .collect()
}

pub fn write_node_values(g: &Graph, values: &NodeFunction) -> String {
    let mut out = String::new();
    for p in g.nodes() {
        writeln!(out, "{} {}", g.name(p), values[p]).unwrap();
    }
    out
}

/// Parses `<node> <label>` marker lines.
pub fn parse_markers(text: &str, g: &Graph) -> Result<Vec<(NodeId, u64)>> {
    let mut out = Vec::new();
    for (n, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let (Some(name), Some(label), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_err(n, "expected `<node> <label>`"));
        };
        let p = g.node_id(name).map_err(|e| parse_err(n, e.to_string()))?;
        let label = label
            .parse::<u64>()
            .map_err(|_| parse_err(n, format!("bad label `{label}`")))?;
        out.push((p, label));
    }
    Ok(out)
}

struct PgmHeader {
    binary: bool,
    width: usize,
    height: usize,
    maxval: u64,
    data_start: usize,
}

fn pgm_header(bytes: &[u8]) -> Result<PgmHeader> {
    let binary = match bytes.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(FloodError::Pgm("bad magic number, expected P2 or P5".into())),
    };
    let mut pos = 2;
    let mut fields = [0u64; 3];
    for field in &mut fields {
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| FloodError::Pgm("truncated header".into()))?;
    }
    let [width, height, maxval] = fields;
    if maxval == 0 || maxval > 65535 {
        return Err(FloodError::Pgm(format!("maxval {maxval} out of range 1..=65535")));
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(FloodError::Pgm("missing whitespace after header".into()));
    }
    Ok(PgmHeader {
        binary,
        width: width as usize,
        height: height as usize,
        maxval,
        data_start: pos + 1,
    })
}

/// Reads a P2 or P5 grey map.
pub fn read_pgm(bytes: &[u8]) -> Result<Raster> {
    let h = pgm_header(bytes)?;
    let count = h.width * h.height;
    let body = &bytes[h.data_start..];
    let mut data = Vec::with_capacity(count);
    if h.binary {
        let wide = h.maxval > 255;
        let needed = if wide { 2 * count } else { count };
        if body.len() < needed {
            return Err(FloodError::Pgm("truncated pixel data".into()));
        }
        for i in 0..count {
            let v = if wide {
                u16::from_be_bytes([body[2 * i], body[2 * i + 1]]) as u64
            } else {
                body[i] as u64
            };
            data.push(v);
        }
    } else {
        let text = std::str::from_utf8(body).map_err(|_| FloodError::Pgm("non-ASCII pixel data".into()))?;
        for tok in text.split_whitespace().take(count) {
            data.push(
                tok.parse::<u64>()
                    .map_err(|_| FloodError::Pgm(format!("bad pixel `{tok}`")))?,
            );
        }
        if data.len() < count {
            return Err(FloodError::Pgm("truncated pixel data".into()));
        }
    }
    if let Some(v) = data.iter().find(|&&v| v > h.maxval) {
        return Err(FloodError::Pgm(format!("pixel {v} exceeds maxval {}", h.maxval)));
    }
    Raster::new(h.width, h.height, data.into_iter().map(Weight::Finite).collect())
}

fn pgm_maxval(raster: &Raster) -> Result<u64> {
    let mut maxval = 1;
    for v in &raster.data {
        match v.finite() {
            Some(x) if x <= 65535 => maxval = maxval.max(x),
            _ => return Err(FloodError::Pgm(format!("value {v} does not fit a PGM sample"))),
        }
    }
    Ok(maxval)
}

/// Writes an ASCII (P2) grey map.
pub fn write_pgm_ascii(raster: &Raster) -> Result<Vec<u8>> {
    let maxval = pgm_maxval(raster)?;
    let mut out = format!("P2\n{} {}\n{}\n", raster.width, raster.height, maxval);
    for row in raster.data.chunks(raster.width.max(1)) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out.into_bytes())
}

/// Writes a binary (P5) grey map.
pub fn write_pgm_binary(raster: &Raster) -> Result<Vec<u8>> {
    let maxval = pgm_maxval(raster)?;
    let mut out = format!("P5\n{} {}\n{}\n", raster.width, raster.height, maxval).into_bytes();
    for v in &raster.data {
        let x = v.finite().unwrap();
        if maxval > 255 {
            out.extend_from_slice(&(x as u16).to_be_bytes());
        } else {
            out.push(x as u8);
        }
    }
    Ok(out)
}
