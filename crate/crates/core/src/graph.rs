//! Immutable undirected simple graphs over dense integer vertex ids.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
///
/// Construction deduplicates edges and rejects self-loops and out-of-range
/// endpoints. The edge set and a CSR adjacency structure are both kept, so
/// edge count is O(1), degree/neighbor queries are O(1)/O(deg), and edge
/// iteration is in sorted `(u, v)` order with `u < v`. Instances are
/// immutable and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj_offsets: Vec<usize>,
    adj: Vec<u32>,
}

impl Graph {
    /// Build a graph from an edge list.
    ///
    /// Pairs are normalized to `u < v` and deduplicated; a pair listed twice
    /// (in either orientation) counts once.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut norm: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= n {
                return Err(Error::VertexOutOfRange { v: a, n });
            }
            if b as usize >= n {
                return Err(Error::VertexOutOfRange { v: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop { v: a });
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();

        let mut degrees = vec![0usize; n];
        for &(u, v) in &norm {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let mut adj_offsets = Vec::with_capacity(n + 1);
        adj_offsets.push(0usize);
        for d in &degrees {
            adj_offsets.push(adj_offsets.last().unwrap() + d);
        }
        let mut cursor = adj_offsets[..n].to_vec();
        let mut adj = vec![0u32; 2 * norm.len()];
        for &(u, v) in &norm {
            adj[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            adj[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        // Sorted edge insertion yields sorted neighbor lists for the `u < v`
        // halves but not for the mirrored halves; sort each list once.
        for v in 0..n {
            adj[adj_offsets[v]..adj_offsets[v + 1]].sort_unstable();
        }
        Ok(Self {
            n,
            edges: norm,
            adj_offsets,
            adj,
        })
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Degree of `v`.
    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.adj[self.adj_offsets[v]..self.adj_offsets[v + 1]]
    }

    /// Edge list in sorted `(u, v)` order with `u < v`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Whether `{u, v}` is an edge.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Connected components, each sorted, ordered by smallest member.
    ///
    /// The output is always a partition of `0..n`: disjoint, covering, each
    /// set inducing a maximal connected subgraph.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        components_of(self.n, |v| self.neighbors(v).iter().copied(), |_| true)
    }

    /// Serialize as the edge-list text format: first line `n m`, then `m`
    /// lines `u v` in sorted order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.n, self.edges.len()));
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Write the edge-list text format.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    /// Parse the edge-list text format produced by [`Graph::to_text`].
    ///
    /// Round-trips exactly: `Graph::parse(g.to_text()) == g`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty input, expected header 'n m'".into(),
        })?;
        let (n, m) = parse_two_counts(header, 1)?;
        let mut edges = Vec::with_capacity(m);
        let mut consumed = 0usize;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            if consumed == m {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            let (u, v) = parse_edge(line, idx + 1)?;
            edges.push((u, v));
            consumed += 1;
        }
        if consumed != m {
            return Err(Error::Parse {
                line: consumed + 2,
                msg: format!("declared {m} edges but found {consumed}"),
            });
        }
        Self::new(n, edges)
    }

    /// Parse the edge-list format from a reader.
    pub fn read_from(r: &mut impl BufRead) -> Result<Self> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        Self::parse(&text)
    }
}

/// BFS component sweep over the vertices of `0..n` accepted by `keep`,
/// following `neigh`. Components are ordered by smallest member and sorted
/// internally (BFS starts scan in id order and pushes sorted neighbor
/// lists, but sorting explicitly keeps the contract independent of
/// traversal order). Vertices with `keep(v) == false` are skipped entirely.
pub(crate) fn components_of<I>(
    n: usize,
    neigh: impl Fn(u32) -> I,
    keep: impl Fn(u32) -> bool,
) -> Vec<Vec<u32>>
where
    I: Iterator<Item = u32>,
{
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n as u32 {
        if seen[start as usize] || !keep(start) {
            continue;
        }
        let mut comp = Vec::new();
        seen[start as usize] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for w in neigh(v) {
                if !seen[w as usize] && keep(w) {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn parse_two_counts(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next().ok_or_else(|| Error::Parse {
        line: lineno,
        msg: "expected two counts".into(),
    })?;
    let b = it.next().ok_or_else(|| Error::Parse {
        line: lineno,
        msg: "expected two counts".into(),
    })?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: "trailing tokens after counts".into(),
        });
    }
    let a = a.parse().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("not a count: '{a}'"),
    })?;
    let b = b.parse().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("not a count: '{b}'"),
    })?;
    Ok((a, b))
}

fn parse_edge(line: &str, lineno: usize) -> Result<(u32, u32)> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<u32> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("not a vertex id: '{tok}'"),
        })
    };
    let u = next("edge endpoint")?;
    let v = next("edge endpoint")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: "trailing tokens after edge".into(),
        });
    }
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_orientation() {
        let g = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn rejects_out_of_range_and_loops() {
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { v: 2, n: 2 })
        ));
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop { v: 1 })));
    }

    #[test]
    fn path_components() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn text_roundtrip() {
        let g = Graph::new(4, [(2, 3), (0, 1)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "4 2\n0 1\n2 3\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn empty_graph_roundtrip() {
        let g = Graph::new(0, []).unwrap();
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(g.connected_components().is_empty());
    }
}
