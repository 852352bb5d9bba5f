//! Multigraphs and their graphic and cographic systems.
//!
//! Vertices are numbered from 1. Edges are oriented `tail -> head`; an
//! edge contributes `-1` at its tail and `+1` at its head in the incidence
//! matrix, so a loop contributes nothing.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{next_combination, IntMatrix};
use crate::system::UnimodularSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(tail, head)| Edge { tail, head })
            .collect();
        for (i, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v == 0 || v > vertex_count {
                    return Err(Error::Dimension(format!(
                        "edge {} uses vertex {} outside 1..={}",
                        i + 1,
                        v,
                        vertex_count
                    )));
                }
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    /// Two vertices joined by `n` parallel edges.
    pub fn theta(n: usize) -> Self {
        Self::new(2, vec![(1, 2); n]).expect("valid")
    }

    /// The `n`-gon `1 -> 2 -> ... -> n -> 1`.
    pub fn cycle(n: usize) -> Self {
        let edges = (1..=n).map(|v| (v, v % n + 1)).collect();
        Self::new(n, edges).expect("valid")
    }

    /// Complete graph, edges `i -> j` for `i < j` in lexicographic order.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Self::new(n, edges).expect("valid")
    }

    /// Path `1 -> 2 -> ... -> m`.
    pub fn path(m: usize) -> Self {
        let edges = (1..m).map(|v| (v, v + 1)).collect();
        Self::new(m, edges).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_label(&self, e: usize) -> String {
        let edge = self.edges[e];
        format!("e{}:{}->{}", e + 1, edge.tail, edge.head)
    }

    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut rows = vec![vec![0i64; self.vertex_count]; self.edges.len()];
        for (row, e) in rows.iter_mut().zip(&self.edges) {
            row[e.tail - 1] -= 1;
            row[e.head - 1] += 1;
        }
        if rows.is_empty() {
            return IntMatrix::zeros(0, self.vertex_count);
        }
        IntMatrix::from_rows(&rows)
    }

    /// Laplacian `IᵀI` of the incidence matrix.
    pub fn laplacian(&self) -> IntMatrix {
        self.incidence_matrix().gram()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    fn connected_without(&self, skip: Option<usize>) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.vertex_count);
        for (i, e) in self.edges.iter().enumerate() {
            if Some(i) != skip {
                uf.union(e.tail - 1, e.head - 1);
            }
        }
        uf.components() == 1
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Connectivity)
        }
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].is_loop())
            .collect()
    }

    /// Edges whose deletion disconnects the graph.
    pub fn bridges(&self) -> Result<Vec<usize>> {
        self.require_connected()?;
        Ok((0..self.edges.len())
            .filter(|&i| !self.edges[i].is_loop() && !self.connected_without(Some(i)))
            .collect())
    }

    /// Breadth-first spanning tree from vertex 1, scanning edges in input
    /// order; tree edges in discovery order.
    pub fn spanning_tree(&self) -> Result<Vec<usize>> {
        self.require_connected()?;
        Ok(self.bfs_tree().0)
    }

    /// Tree edges plus, per vertex, the tree edge leading to its parent.
    fn bfs_tree(&self) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut parent_edge = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut tree = Vec::new();
        let mut queue = VecDeque::new();
        if self.vertex_count > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                if e.is_loop() {
                    continue;
                }
                let other = if e.tail - 1 == v {
                    e.head - 1
                } else if e.head - 1 == v {
                    e.tail - 1
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    parent_edge[other] = Some(i);
                    tree.push(i);
                    queue.push_back(other);
                }
            }
        }
        (tree, parent_edge)
    }

    /// All spanning trees as sorted edge index sets, in lexicographic order.
    pub fn spanning_trees(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        self.require_connected()?;
        if self.edges.len() > cap {
            return Err(Error::Cap {
                what: "spanning tree enumeration",
                size: self.edges.len(),
                cap,
            });
        }
        let k = self.vertex_count.saturating_sub(1);
        if k == 0 {
            return Ok(vec![Vec::new()]);
        }
        let n = self.edges.len();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut uf = UnionFind::new(self.vertex_count);
            let acyclic = idx.iter().all(|&i| {
                let e = self.edges[i];
                uf.union(e.tail - 1, e.head - 1)
            });
            if acyclic {
                out.push(idx.clone());
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        Ok(out)
    }

    /// Fundamental cycles of the BFS tree: for every non-tree edge `e`, the
    /// coefficients of all edges in the cycle `e` closes, oriented along `e`.
    pub fn fundamental_cycles(&self) -> Result<Vec<(usize, Vec<i64>)>> {
        self.require_connected()?;
        let (tree, parent_edge) = self.bfs_tree();
        let depth = self.depths(&parent_edge);
        let mut out = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if tree.contains(&e) {
                continue;
            }
            let mut coeffs = vec![0i64; self.edges.len()];
            coeffs[e] = 1;
            // Walk from head back to tail through the tree.
            let (mut up, mut down) = (edge.head - 1, edge.tail - 1);
            let mut down_edges = Vec::new();
            while up != down {
                if depth[up] >= depth[down] {
                    let f = parent_edge[up].expect("non-root has a parent edge");
                    let fe = self.edges[f];
                    let parent = fe.tail + fe.head - 2 - up;
                    coeffs[f] += if fe.tail - 1 == up { 1 } else { -1 };
                    up = parent;
                } else {
                    let f = parent_edge[down].expect("non-root has a parent edge");
                    let fe = self.edges[f];
                    let parent = fe.tail + fe.head - 2 - down;
                    down_edges.push((f, parent, down));
                    down = parent;
                }
            }
            for (f, parent, child) in down_edges {
                let fe = self.edges[f];
                coeffs[f] += if fe.tail - 1 == parent && fe.head - 1 == child {
                    1
                } else {
                    -1
                };
            }
            out.push((e, coeffs));
        }
        Ok(out)
    }

    /// Fundamental cuts of the BFS tree: for every tree edge `e`, the
    /// coefficients of the edges crossing the cut `e` determines, oriented
    /// along `e`.
    pub fn fundamental_cuts(&self) -> Result<Vec<(usize, Vec<i64>)>> {
        self.require_connected()?;
        let (tree, _) = self.bfs_tree();
        let mut out = Vec::new();
        for &e in &tree {
            let mut uf = UnionFind::new(self.vertex_count);
            for &f in &tree {
                if f != e {
                    uf.union(self.edges[f].tail - 1, self.edges[f].head - 1);
                }
            }
            let head_side = uf.find(self.edges[e].head - 1);
            let mut coeffs = vec![0i64; self.edges.len()];
            for (f, edge) in self.edges.iter().enumerate() {
                let t = uf.find(edge.tail - 1) == head_side;
                let h = uf.find(edge.head - 1) == head_side;
                coeffs[f] = match (t, h) {
                    (false, true) => 1,
                    (true, false) => -1,
                    _ => 0,
                };
            }
            out.push((e, coeffs));
        }
        Ok(out)
    }

    fn depths(&self, parent_edge: &[Option<usize>]) -> Vec<usize> {
        (0..self.vertex_count)
            .map(|mut v| {
                let mut d = 0;
                while let Some(f) = parent_edge[v] {
                    let fe = self.edges[f];
                    v = fe.tail + fe.head - 2 - v;
                    d += 1;
                }
                d
            })
            .collect()
    }

    /// The system of non-bridge edges as linear functions on the cycle
    /// space, in the basis of fundamental cycles.
    pub fn graphic_system(&self) -> Result<UnimodularSystem> {
        let bridges = self.bridges()?;
        let cycles = self.fundamental_cycles()?;
        if cycles.is_empty() {
            return Err(Error::DegenerateSystem(
                "every edge is a bridge, so the cycle space is zero".into(),
            ));
        }
        let rows: Vec<Vec<i64>> = (0..self.edges.len())
            .filter(|f| !bridges.contains(f))
            .map(|f| cycles.iter().map(|(_, c)| c[f]).collect())
            .collect();
        let labels = (0..self.edges.len())
            .filter(|f| !bridges.contains(f))
            .map(|f| self.edge_label(f))
            .collect();
        UnimodularSystem::from_matrix_labeled(&IntMatrix::from_rows(&rows), labels)
    }

    /// The system of non-loop edges as linear functions on the cut space,
    /// in the basis of fundamental cuts.
    pub fn cographic_system(&self) -> Result<UnimodularSystem> {
        self.require_connected()?;
        let cuts = self.fundamental_cuts()?;
        if cuts.is_empty() {
            return Err(Error::DegenerateSystem(
                "every edge is a loop, so the cut space is zero".into(),
            ));
        }
        let loops = self.loops();
        let rows: Vec<Vec<i64>> = (0..self.edges.len())
            .filter(|f| !loops.contains(f))
            .map(|f| cuts.iter().map(|(_, c)| c[f]).collect())
            .collect();
        let labels = (0..self.edges.len())
            .filter(|f| !loops.contains(f))
            .map(|f| self.edge_label(f))
            .collect();
        UnimodularSystem::from_matrix_labeled(&IntMatrix::from_rows(&rows), labels)
    }

    /// Contracts every bridge and deletes every loop, repeating until
    /// neither is left.
    pub fn stabilize(&self) -> Result<Multigraph> {
        self.require_connected()?;
        let mut g = self.clone();
        loop {
            let loops = g.loops();
            let bridges = g.bridges()?;
            if loops.is_empty() && bridges.is_empty() {
                return Ok(g);
            }
            let mut uf = UnionFind::new(g.vertex_count);
            for &b in &bridges {
                uf.union(g.edges[b].tail - 1, g.edges[b].head - 1);
            }
            // Surviving vertices keep their relative order.
            let mut new_id = vec![0usize; g.vertex_count];
            let mut next = 0;
            for (v, id) in new_id.iter_mut().enumerate() {
                if uf.find(v) == v {
                    next += 1;
                    *id = next;
                }
            }
            let edges = g
                .edges
                .iter()
                .enumerate()
                .filter(|(i, e)| !e.is_loop() && !bridges.contains(i))
                .map(|(_, e)| (new_id[uf.find(e.tail - 1)], new_id[uf.find(e.head - 1)]))
                .collect();
            g = Multigraph::new(next, edges)?;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut v = v;
        while self.parent[v] != root {
            let next = self.parent[v];
            self.parent[v] = root;
            v = next;
        }
        root
    }

    /// Merges the classes of `a` and `b` with the smaller root as
    /// representative; `false` if they were already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&v| self.find(v) == v)
            .count()
    }
}

/// Parses the edge-list format: a header line `m N`, then `N` lines
/// `tail head`. Lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing header line \"m N\"".into(),
    })?;
    let head = parse_numbers(header, line)?;
    if head.len() != 2 || head[0] < 0 || head[1] < 0 {
        return Err(Error::Parse {
            line,
            message: "header must be \"m N\"".into(),
        });
    }
    let (m, n) = (head[0] as usize, head[1] as usize);
    let mut edges = Vec::with_capacity(n);
    for (line, text) in lines {
        let v = parse_numbers(text, line)?;
        if v.len() != 2 || v[0] < 1 || v[1] < 1 {
            return Err(Error::Parse {
                line,
                message: "edge must be \"tail head\" with 1-based vertices".into(),
            });
        }
        edges.push((v[0] as usize, v[1] as usize));
    }
    if edges.len() != n {
        return Err(Error::Parse {
            line: 0,
            message: format!("header announces {} edges, found {}", n, edges.len()),
        });
    }
    Multigraph::new(m, edges)
}

pub fn write_edge_list(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count, g.edges.len());
    for e in &g.edges {
        out.push_str(&format!("{} {}\n", e.tail, e.head));
    }
    out
}

fn parse_numbers(text: &str, line: usize) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<i64>().map_err(|_| Error::Parse {
                line,
                message: format!("not an integer: {:?}", t),
            })
        })
        .collect()
}
