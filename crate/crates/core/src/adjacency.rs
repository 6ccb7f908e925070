//! Dense symmetric adjacency over vertices `0..n`.

use fixedbitset::FixedBitSet;

/// Simple undirected graph structure: symmetric, irreflexive, one bit row per
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    rows: Vec<FixedBitSet>,
}

impl Adjacency {
    pub fn new(n: usize) -> Self {
        Adjacency { rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Builds from an edge list. Self-loops are ignored.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = Adjacency::new(n);
        for (u, v) in edges {
            adj.add_edge(u, v);
        }
        adj
    }

    /// Fills every pair `u < v` for which `pred(u, v)` holds.
    pub fn from_predicate<E>(n: usize, mut pred: impl FnMut(usize, usize) -> Result<bool, E>) -> Result<Self, E> {
        let mut adj = Adjacency::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if pred(u, v)? {
                    adj.add_edge(u, v);
                }
            }
        }
        Ok(adj)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, u: usize) -> &FixedBitSet {
        &self.rows[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[u].ones()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.rows[u].intersection_count(&self.rows[v])
    }

    pub fn first_common_neighbor(&self, u: usize, v: usize) -> Option<usize> {
        self.rows[u].intersection(&self.rows[v]).next()
    }

    /// Every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &Adjacency) -> bool {
        self.len() == other.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// Edges of `self` absent from `other`.
    pub fn edges_missing_from<'a>(&'a self, other: &'a Adjacency) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.edges().filter(move |&(u, v)| !other.has_edge(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_queries() {
        let adj = Adjacency::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 2), (3, 2)]);
        assert_eq!(adj.edge_count(), 4);
        assert!(!adj.has_edge(2, 2));
        assert_eq!(adj.degree(2), 3);
        assert_eq!(adj.edges().collect::<Vec<_>>(), [(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert_eq!(adj.common_neighbors(0, 1), 1);
        assert_eq!(adj.first_common_neighbor(0, 3), Some(2));
        let sub = Adjacency::from_edges(4, [(0, 1)]);
        assert!(sub.is_subgraph_of(&adj));
        assert!(!adj.is_subgraph_of(&sub));
        assert_eq!(adj.edges_missing_from(&sub).count(), 3);
    }
}
