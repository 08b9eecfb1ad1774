//! Simple undirected graphs with dense 0-based node ids.
//!
//! A [`Graph`] is immutable once built; every mutating operation returns a new
//! value. Edges are stored canonically (`u < v`) and sorted, so two graphs with
//! the same edge set compare equal regardless of how they were constructed.

use std::collections::VecDeque;
use std::fmt;
use std::io::Read;

use crate::error::{Error, Result};

/// Largest node count accepted from external input.
pub const MAX_NODES: usize = 1 << 24;

/// An unordered pair of nodes stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    #[inline]
    pub fn u(self) -> usize {
        self.0
    }

    #[inline]
    pub fn v(self) -> usize {
        self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

/// A canonical, sorted, duplicate-free set of edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new<I, E>(edges: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut v: Vec<Edge> = edges.into_iter().map(Into::into).collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.0.iter()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn into_vec(self) -> Vec<Edge> {
        self.0
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        EdgeSet::new(iter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` nodes. Reversed and repeated pairs are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut list = Vec::new();
        for e in edges {
            let e: Edge = e.into();
            if e.1 >= n {
                return Err(Error::NodeOutOfRange { node: e.1, n });
            }
            if e.0 == e.1 {
                return Err(Error::InvalidParameter(format!("self-loop at node {}", e.0)));
            }
            list.push(e);
        }
        Ok(Self::from_canonical(n, list))
    }

    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    // Endpoints are assumed valid and distinct.
    fn from_canonical(n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &Edge(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.1 < self.n && self.adj[e.0].binary_search(&e.1).is_ok()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn remove_edge(&self, e: Edge) -> Result<Graph> {
        let idx = self.edge_index(e).ok_or(Error::MissingEdge(e))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        let mut adj = self.adj.clone();
        adj[e.0].retain(|&x| x != e.1);
        adj[e.1].retain(|&x| x != e.0);
        Ok(Graph { n: self.n, edges, adj })
    }

    /// Removes every edge in `set`; fails on the first edge that is absent.
    pub fn remove_edges(&self, set: &EdgeSet) -> Result<Graph> {
        for &e in set {
            if !self.has_edge(e) {
                return Err(Error::MissingEdge(e));
            }
        }
        let edges = self.edges.iter().copied().filter(|e| !set.contains(*e)).collect();
        Ok(Self::from_canonical(self.n, edges))
    }

    /// Drops the edges at positions `skip` (strictly increasing indices into
    /// [`Graph::edges`]).
    pub fn without_edge_indices(&self, skip: &[usize]) -> Graph {
        let mut edges = Vec::with_capacity(self.edges.len().saturating_sub(skip.len()));
        let mut next = skip.iter().peekable();
        for (i, &e) in self.edges.iter().enumerate() {
            if next.peek() == Some(&&i) {
                next.next();
            } else {
                edges.push(e);
            }
        }
        Self::from_canonical(self.n, edges)
    }

    /// Checks that every member of `set` is an edge of this graph.
    pub fn check_edge_set(&self, set: &EdgeSet) -> Result<()> {
        match set.iter().find(|e| !self.has_edge(**e)) {
            Some(&e) => Err(Error::MissingEdge(e)),
            None => Ok(()),
        }
    }

    /// Subgraph induced by `nodes` (given in increasing order), relabeled to
    /// `0..nodes.len()`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        for (new, &old) in nodes.iter().enumerate() {
            map[old] = Some(new);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&Edge(u, v)| match (map[u], map[v]) {
                (Some(a), Some(b)) => Some(Edge::new(a, b)),
                _ => None,
            })
            .collect();
        (Self::from_canonical(nodes.len(), edges), map)
    }

    /// Adds a new node adjacent to every existing node; its id is `n`.
    pub fn with_universal_vertex(&self) -> Graph {
        let hub = self.n;
        let mut edges = self.edges.clone();
        edges.extend((0..self.n).map(|v| Edge(v, hub)));
        Self::from_canonical(self.n + 1, edges)
    }

    pub fn connected_components(&self) -> ComponentMap {
        ComponentMap::of(self)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().num_components() <= 1
    }

    /// Induced subgraph on the largest connected component, ids compacted in
    /// original order. Ties go to the component holding the smallest id.
    /// The returned map sends old ids to new ids.
    pub fn largest_connected_component(&self) -> (Graph, Vec<Option<usize>>) {
        let comps = self.connected_components();
        if comps.num_components() <= 1 {
            return (self.clone(), (0..self.n).map(Some).collect());
        }
        // component ids are ordered by smallest member, so the first maximum wins ties
        let mut best = 0;
        for c in 1..comps.num_components() {
            if comps.size(c) > comps.size(best) {
                best = c;
            }
        }
        let members = comps.members(best);
        self.induced_subgraph(&members)
    }

    /// Bridges via iterative DFS low-link.
    pub fn bridges(&self) -> EdgeSet {
        const UNSEEN: usize = usize::MAX;
        let mut order = vec![UNSEEN; self.n];
        let mut low = vec![0usize; self.n];
        let mut found = Vec::new();
        let mut clock = 0;
        // (node, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();

        for root in 0..self.n {
            if order[root] != UNSEEN {
                continue;
            }
            order[root] = clock;
            low[root] = clock;
            clock += 1;
            stack.push((root, UNSEEN, 0));

            while let Some(top) = stack.last_mut() {
                let (v, parent, i) = *top;
                if i < self.adj[v].len() {
                    top.2 += 1;
                    let w = self.adj[v][i];
                    if w == parent {
                        continue;
                    }
                    if order[w] == UNSEEN {
                        order[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(order[w]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > order[parent] {
                            found.push(Edge::new(parent, v));
                        }
                    }
                }
            }
        }
        EdgeSet::new(found)
    }

    /// Canonical edge-list text: one `u v` line per edge, sorted, `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges.len() * 8);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }
}

/// Node-to-component labeling. Component ids follow the order of each
/// component's smallest node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMap {
    label: Vec<usize>,
    sizes: Vec<usize>,
}

impl ComponentMap {
    pub fn of(g: &Graph) -> Self {
        const NONE: usize = usize::MAX;
        let mut label = vec![NONE; g.n()];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..g.n() {
            if label[s] != NONE {
                continue;
            }
            let id = sizes.len();
            label[s] = id;
            let mut size = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                size += 1;
                for &w in g.neighbors(v) {
                    if label[w] == NONE {
                        label[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            sizes.push(size);
        }
        ComponentMap { label, sizes }
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.label.len()
    }

    #[inline]
    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.label[u] == self.label[v]
    }

    /// Nodes of component `c` in increasing order.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.label.len()).filter(|&v| self.label[v] == c).collect()
    }

    /// Member lists of every component, indexed by component id.
    pub fn all_members(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &c) in self.label.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Parses whitespace-separated `u v [weight]` pairs, one per line. Lines
/// starting with `#` or `%` are comments; blank lines are skipped. Returns the
/// raw pairs in file order along with the 1-based line of each.
pub fn parse_pairs(text: &[u8]) -> Result<Vec<(usize, usize, usize)>> {
    let text = std::str::from_utf8(text).map_err(|e| {
        let line = 1 + text[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count();
        Error::Parse { line, msg: "invalid UTF-8".into() }
    })?;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let parse_id = |tok: Option<&str>| -> Result<usize> {
            let tok = tok.ok_or_else(|| Error::Parse { line, msg: "expected two node ids".into() })?;
            let id: usize = tok
                .parse()
                .map_err(|_| Error::Parse { line, msg: format!("invalid node id {tok:?}") })?;
            if id >= MAX_NODES {
                return Err(Error::Parse { line, msg: format!("node id {id} exceeds limit {MAX_NODES}") });
            }
            Ok(id)
        };
        let u = parse_id(tokens.next())?;
        let v = parse_id(tokens.next())?;
        if let Some(w) = tokens.next() {
            if w.parse::<f64>().is_err() {
                return Err(Error::Parse { line, msg: format!("invalid weight {w:?}") });
            }
        }
        if tokens.next().is_some() {
            return Err(Error::Parse { line, msg: "too many columns".into() });
        }
        pairs.push((u, v, line));
    }
    Ok(pairs)
}

/// Reads an edge list. Self-loops are dropped, duplicate and reversed pairs
/// merged, weights ignored; `n` is one more than the largest id seen.
pub fn from_edge_list(text: &[u8]) -> Result<Graph> {
    let pairs = parse_pairs(text)?;
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = 1 + pairs.iter().map(|&(u, v, _)| u.max(v)).max().unwrap_or(0);
    let edges = pairs
        .into_iter()
        .filter(|&(u, v, _)| u != v)
        .map(|(u, v, _)| Edge::new(u, v))
        .collect();
    Ok(Graph::from_canonical(n, edges))
}

pub fn read_edge_list<R: Read>(mut reader: R) -> Result<Graph> {
    let mut buf = Vec::new();
    reader
        .read_to_end(&mut buf)
        .map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    from_edge_list(&buf)
}

/// Reads a solution-set file (edge-list syntax) and checks each edge against
/// `g`. An empty file yields an empty set.
pub fn parse_edge_set(text: &[u8], g: &Graph) -> Result<EdgeSet> {
    let pairs = parse_pairs(text)?;
    let mut edges = Vec::with_capacity(pairs.len());
    for (u, v, line) in pairs {
        if u == v {
            return Err(Error::Parse { line, msg: format!("self-loop ({u}, {v})") });
        }
        let e = Edge::new(u, v);
        if !g.has_edge(e) {
            return Err(Error::MissingEdge(e));
        }
        edges.push(e);
    }
    Ok(EdgeSet::new(edges))
}
