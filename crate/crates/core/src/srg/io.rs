//! Adjacency matrices and the two graph file formats: whitespace-separated
//! 0/1 rows ("matrix") and graph6.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Simple undirected graph stored as bitset rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn empty(n: usize) -> AdjacencyMatrix {
        let words = n.div_ceil(64);
        AdjacencyMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Graph with i ~ j iff `f(i, j)`, queried for i < j only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> AdjacencyMatrix {
        let mut a = AdjacencyMatrix::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if f(i, j) {
                    a.add_edge(i, j);
                }
            }
        }
        a
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<AdjacencyMatrix> {
        let mut a = AdjacencyMatrix::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidParameters(format!("bad edge ({i}, {j})")));
            }
            a.add_edge(i, j);
        }
        Ok(a)
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn common_neighbours(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.adjacent(i, j))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn complement(&self) -> AdjacencyMatrix {
        AdjacencyMatrix::from_fn(self.n, |i, j| !self.adjacent(i, j))
    }
}

impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdjacencyMatrix({} vertices)", self.n)
    }
}

/// Supported graph file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    Matrix,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<GraphFormat> {
        match s {
            "matrix" => Ok(GraphFormat::Matrix),
            "graph6" => Ok(GraphFormat::Graph6),
            other => Err(Error::InvalidParameters(format!(
                "unknown graph format {other:?}"
            ))),
        }
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parse b lines of b whitespace-separated 0/1 tokens. '#' starts a comment;
/// blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<AdjacencyMatrix> {
    // (line, column) of each token, row by row.
    let mut rows: Vec<(usize, Vec<(usize, bool)>)> = Vec::new();
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut col = 0;
        for piece in content.split_inclusive(char::is_whitespace) {
            let start = col + 1;
            col += piece.chars().count();
            let tok = piece.trim_end();
            if tok.is_empty() {
                continue;
            }
            let bit = match tok {
                "0" => false,
                "1" => true,
                _ => {
                    return Err(parse_err(
                        line_no,
                        start,
                        format!("entry {tok:?} is not 0 or 1"),
                    ))
                }
            };
            row.push((start, bit));
        }
        if row.is_empty() {
            continue;
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(parse_err(
                    line_no,
                    1,
                    format!("row has {} entries, expected {w}", row.len()),
                ))
            }
            _ => {}
        }
        rows.push((line_no, row));
    }
    let n = width.unwrap_or(0);
    if rows.len() != n {
        let line = match rows.get(n) {
            Some((l, _)) => *l,
            None => rows.last().map_or(1, |(l, _)| l + 1),
        };
        return Err(parse_err(
            line,
            1,
            format!("{} rows for a matrix of width {n}", rows.len()),
        ));
    }
    let mut a = AdjacencyMatrix::empty(n);
    for (i, (line, row)) in rows.iter().enumerate() {
        for (j, &(col, bit)) in row.iter().enumerate() {
            if i == j && bit {
                return Err(parse_err(*line, col, "nonzero diagonal entry"));
            }
            if bit != rows[j].1[i].1 {
                return Err(parse_err(
                    *line,
                    col,
                    format!("entry ({i},{j}) differs from ({j},{i})"),
                ));
            }
            if bit && i < j {
                a.add_edge(i, j);
            }
        }
    }
    Ok(a)
}

/// Render in the "matrix" format.
pub fn to_matrix_text(a: &AdjacencyMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.order() {
        let row: Vec<&str> = (0..a.order())
            .map(|j| if a.adjacent(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Parse one graph in graph6. An optional `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<AdjacencyMatrix> {
    let body = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let offset = text.len() - body.len();
    let body = body.trim_end();
    if body.contains('\n') {
        return Err(parse_err(1, 1, "expected a single graph6 line"));
    }
    let bytes = body.as_bytes();
    if let Some(pos) = bytes.iter().position(|&c| !(63..=126).contains(&c)) {
        return Err(parse_err(
            1,
            offset + pos + 1,
            "byte outside the graph6 range",
        ));
    }
    let val = |i: usize| (bytes[i] - 63) as u64;
    let need = |k: usize| {
        if bytes.len() < k {
            Err(parse_err(
                1,
                offset + bytes.len() + 1,
                "truncated vertex count",
            ))
        } else {
            Ok(())
        }
    };
    need(1)?;
    let (n, start) = if bytes[0] != 126 {
        (val(0), 1)
    } else {
        need(2)?;
        if bytes[1] != 126 {
            need(4)?;
            ((val(1) << 12) | (val(2) << 6) | val(3), 4)
        } else {
            need(8)?;
            let mut n = 0u64;
            for i in 2..8 {
                n = (n << 6) | val(i);
            }
            (n, 8)
        }
    };
    let n = usize::try_from(n).map_err(|_| parse_err(1, offset + 1, "vertex count too large"))?;
    let pairs = (n as u128) * (n.saturating_sub(1) as u128) / 2;
    let want = pairs.div_ceil(6);
    let have = (bytes.len() - start) as u128;
    if have != want {
        return Err(parse_err(
            1,
            offset + start + 1,
            format!("expected {want} data bytes for {n} vertices, found {have}"),
        ));
    }
    let mut a = AdjacencyMatrix::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = val(start + k / 6);
            if byte >> (5 - k % 6) & 1 == 1 {
                a.add_edge(i, j);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = val(start + k / 6);
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(parse_err(
                1,
                offset + start + k / 6 + 1,
                "nonzero padding bits",
            ));
        }
    }
    Ok(a)
}

/// Render in graph6 (no header, no newline).
pub fn to_graph6(a: &AdjacencyMatrix) -> String {
    let n = a.order() as u64;
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..a.order() {
        for i in 0..j {
            acc = (acc << 1) | u8::from(a.adjacent(i, j));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Read and validate a graph file.
pub fn read_graph(path: impl AsRef<Path>, format: GraphFormat) -> Result<AdjacencyMatrix> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match format {
        GraphFormat::Matrix => parse_matrix(&text),
        GraphFormat::Graph6 => parse_graph6(&text),
    }
}
