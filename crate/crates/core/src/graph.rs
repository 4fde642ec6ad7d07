//! Undirected simple graph over dense integer node ids.
//!
//! Adjacency is stored as one sorted neighbor list per node: membership checks
//! are `O(log deg)`, neighbor iteration is ordered by id, and intersections run
//! as linear merges. Attribute data lives outside the graph (profile lists are
//! indexed by [`NodeId`]), so the same structure serves generated networks and
//! reference networks loaded without attributes.
//!
//! Mutation is single-threaded; once construction finishes the graph is
//! immutable and can be shared freely for parallel read-only analysis.

use std::fmt;

/// Dense node identifier. Ids are assigned consecutively from 0 in insertion
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    /// The id as a `usize`, for indexing node-aligned tables.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

/// Undirected simple graph: no self-loops, no multi-edges.
///
/// The maximum degree is maintained incrementally so degree-normalized scores
/// stay `O(1)` during construction (edges are never removed, so the running
/// maximum is exact).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    edge_count: usize,
    max_degree: usize,
}

impl Graph {
    /// Empty graph.
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated nodes, ids `0..n`.
    pub fn with_nodes(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            max_degree: 0,
        }
    }

    /// Builds a graph from an edge iterator over `n` nodes. Duplicate edges
    /// are ignored.
    ///
    /// Panics on self-loops or out-of-range endpoints; intended for tests and
    /// programmatic construction where inputs are trusted. Use
    /// [`crate::io::read_edge_list`] for untrusted input.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut g = Self::with_nodes(n);
        for (u, v) in edges {
            assert_ne!(u, v, "self-loop ({u},{v}) in edge iterator");
            g.add_edge(NodeId(u), NodeId(v));
        }
        g
    }

    /// Appends a node with an empty neighborhood and returns its id (the node
    /// count before the insertion).
    pub fn add_node(&mut self) -> NodeId {
        let id = NodeId(self.adj.len() as u32);
        self.adj.push(Vec::new());
        id
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Inserts the undirected edge `{i, j}`. Returns `false` and leaves the
    /// graph unchanged when `i == j` or the edge is already present.
    ///
    /// Panics when either endpoint is out of range: that is a programmer bug,
    /// not a recoverable condition.
    pub fn add_edge(&mut self, i: NodeId, j: NodeId) -> bool {
        assert!(
            i.index() < self.adj.len() && j.index() < self.adj.len(),
            "edge ({i},{j}) references a node beyond node_count {}",
            self.adj.len()
        );
        if i == j {
            return false;
        }
        let pos_j = match self.adj[i.index()].binary_search(&j) {
            Ok(_) => return false,
            Err(pos) => pos,
        };
        self.adj[i.index()].insert(pos_j, j);
        let pos_i = self.adj[j.index()]
            .binary_search(&i)
            .expect_err("adjacency symmetry violated");
        self.adj[j.index()].insert(pos_i, i);
        self.edge_count += 1;
        let d = self.adj[i.index()].len().max(self.adj[j.index()].len());
        if d > self.max_degree {
            self.max_degree = d;
        }
        true
    }

    pub fn has_edge(&self, i: NodeId, j: NodeId) -> bool {
        self.adj[i.index()].binary_search(&j).is_ok()
    }

    #[inline]
    pub fn degree(&self, i: NodeId) -> usize {
        self.adj[i.index()].len()
    }

    /// Neighbors of `i`, sorted by ascending id.
    #[inline]
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adj[i.index()]
    }

    /// Maximum degree over all nodes, or `None` for the empty graph.
    pub fn max_degree(&self) -> Option<usize> {
        if self.adj.is_empty() {
            None
        } else {
            Some(self.max_degree)
        }
    }

    /// `|adj(i) ∩ adj(j)|`. Adjacency of `i` and `j` to each other does not
    /// count; only shared third parties do.
    pub fn common_neighbor_count(&self, i: NodeId, j: NodeId) -> usize {
        let (a, b) = (&self.adj[i.index()], &self.adj[j.index()]);
        let mut count = 0;
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
        count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.adj.len() as u32).map(NodeId)
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.adj[u.index()]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Degree sequence in node-id order.
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }
}

/// Full-scan check of the structural invariants: symmetry, no self-loops,
/// no multi-edges, edge-count consistency and the max-degree cache.
#[cfg(test)]
pub(crate) fn check_invariants(g: &Graph) {
    let mut degree_sum = 0;
    for u in g.nodes() {
        let nbs = g.neighbors(u);
        assert!(
            nbs.windows(2).all(|w| w[0] < w[1]),
            "adjacency of {u} not strictly sorted"
        );
        for &v in nbs {
            assert_ne!(v, u, "self-loop at {u}");
            assert!(g.has_edge(v, u), "asymmetric edge ({u},{v})");
        }
        degree_sum += nbs.len();
    }
    assert_eq!(degree_sum % 2, 0);
    assert_eq!(g.edge_count(), degree_sum / 2);
    let scanned_max = g.nodes().map(|u| g.degree(u)).max().unwrap_or(0);
    assert_eq!(g.max_degree().unwrap_or(0), scanned_max);
}
