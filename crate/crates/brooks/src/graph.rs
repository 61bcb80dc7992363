//! Undirected simple graphs over vertex ids `0..n`, stored in
//! compressed sparse rows: an offset array plus one sorted neighbor
//! array. Sorted rows make neighbor iteration deterministic and give
//! logarithmic adjacency tests.

use serde::Serialize;
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: VertexId, n: usize },
}

/// Immutable graph. Invariants: no self loops, no duplicate edges,
/// every neighbor row sorted ascending, sum of degrees equals `2 m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    max_degree: usize,
}

impl Graph {
    /// Builds from an edge list, rejecting self loops and duplicates.
    pub fn build(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        Graph::build_inner(n, edges, false)
    }

    /// Builds from an edge list, coalescing duplicate edges.
    pub fn build_dedup(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        Graph::build_inner(n, edges, true)
    }

    fn build_inner(
        n: usize,
        edges: &[(VertexId, VertexId)],
        dedupe: bool,
    ) -> Result<Graph, GraphError> {
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
        }
        // Counting sort into rows, then sort each row and strip or
        // reject duplicates.
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut neighbors = vec![0 as VertexId; acc];
        let mut cursor = offsets.clone();
        for &(u, v) in edges {
            neighbors[cursor[u]] = v;
            cursor[u] += 1;
            neighbors[cursor[v]] = u;
            cursor[v] += 1;
        }
        let mut write = 0usize;
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        let mut m = 0usize;
        let mut max_degree = 0usize;
        for u in 0..n {
            neighbors[offsets[u]..offsets[u + 1]].sort_unstable();
            let mut prev: Option<VertexId> = None;
            let start = write;
            // In-place compaction: the write cursor never passes the
            // read cursor.
            for i in offsets[u]..offsets[u + 1] {
                let v = neighbors[i];
                if prev == Some(v) {
                    if dedupe {
                        continue;
                    }
                    return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
                }
                prev = Some(v);
                neighbors[write] = v;
                write += 1;
            }
            let deg = write - start;
            max_degree = max_degree.max(deg);
            m += deg;
            new_offsets.push(write);
        }
        neighbors.truncate(write);
        debug_assert_eq!(m % 2, 0);
        Ok(Graph {
            n,
            m: m / 2,
            offsets: new_offsets,
            neighbors,
            max_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Adjacency by binary search on the shorter row.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components, ordered by smallest contained vertex;
    /// each component's vertex list is ascending.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            seen[start] = true;
            stack.push(start);
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Deletes `removed` vertices; returns the induced graph plus the
    /// two index maps (old to new, new to old).
    pub fn induced_delete(
        &self,
        removed: &[VertexId],
    ) -> (Graph, Vec<Option<VertexId>>, Vec<VertexId>) {
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        let mut old_to_new = vec![None; self.n];
        let mut new_to_old = Vec::new();
        for v in 0..self.n {
            if !gone[v] {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let mut edges = Vec::new();
        for u in 0..self.n {
            if gone[u] {
                continue;
            }
            for &v in self.neighbors(u) {
                if u < v && !gone[v] {
                    edges.push((old_to_new[u].unwrap(), old_to_new[v].unwrap()));
                }
            }
        }
        let g = Graph::build(new_to_old.len(), &edges).expect("induced subgraph is simple");
        (g, old_to_new, new_to_old)
    }
}

/// Structural class of one connected component, deciding which
/// coloring strategy applies to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GraphClass {
    Complete,
    OddCycle,
    EvenCycle,
    Path,
    TrivialOrSmallDelta,
    HasLowDegreeVertex,
    DeltaRegularNonComplete,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Complete => "Complete",
            GraphClass::OddCycle => "OddCycle",
            GraphClass::EvenCycle => "EvenCycle",
            GraphClass::Path => "Path",
            GraphClass::TrivialOrSmallDelta => "TrivialOrSmallDelta",
            GraphClass::HasLowDegreeVertex => "HasLowDegreeVertex",
            GraphClass::DeltaRegularNonComplete => "DeltaRegularNonComplete",
        }
    }
}

/// Classifies a connected component given as an ascending vertex list.
///
/// A connected graph with maximum degree <= 2 is a single vertex, a
/// path, or a cycle; everything else either has a vertex of
/// below-maximum degree or is regular. K_1 and K_2 land in
/// TrivialOrSmallDelta and Complete respectively; triangles count as
/// Complete (the color formulas agree).
pub fn classify_component(g: &Graph, comp: &[VertexId]) -> GraphClass {
    let c = comp.len();
    assert!(c > 0, "component is nonempty");
    if c == 1 {
        return GraphClass::TrivialOrSmallDelta;
    }
    let dmax = comp.iter().map(|&v| g.degree(v)).max().unwrap();
    let dmin = comp.iter().map(|&v| g.degree(v)).min().unwrap();
    if dmin == c - 1 {
        return GraphClass::Complete;
    }
    if dmax <= 2 {
        return if dmin == 2 {
            if c % 2 == 1 {
                GraphClass::OddCycle
            } else {
                GraphClass::EvenCycle
            }
        } else {
            GraphClass::Path
        };
    }
    if dmin < dmax {
        GraphClass::HasLowDegreeVertex
    } else {
        GraphClass::DeltaRegularNonComplete
    }
}

/// Maximum degree within a component.
pub fn component_max_degree(g: &Graph, comp: &[VertexId]) -> usize {
    comp.iter().map(|&v| g.degree(v)).max().unwrap_or(0)
}

/// Decides whether `s` separates its component, and if so returns the
/// components of `comp - s`, each ascending, ordered by smallest
/// member. The decision runs over a DFS low-link pass; the split
/// itself is one filtered traversal.
pub fn is_separation_vertex(
    g: &Graph,
    comp: &[VertexId],
    s: VertexId,
) -> (bool, Vec<Vec<VertexId>>) {
    debug_assert!(comp.binary_search(&s).is_ok(), "s must lie in comp");
    if !lowlink_is_articulation(g, comp, s) {
        return (false, Vec::new());
    }
    (true, split_without(g, comp, s))
}

/// Articulation test: root with two or more DFS children, or a
/// non-root vertex with a child whose low-link does not climb above it.
fn lowlink_is_articulation(g: &Graph, comp: &[VertexId], s: VertexId) -> bool {
    let root = comp[0];
    if comp.len() <= 2 {
        return false;
    }
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut pre = vec![UNSEEN; n];
    let mut low = vec![UNSEEN; n];
    let mut parent = vec![UNSEEN; n];
    let mut next = vec![0usize; n];
    let mut counter = 0usize;
    let mut stack = vec![root];
    pre[root] = counter;
    low[root] = counter;
    counter += 1;
    let mut root_children = 0usize;
    let mut s_is_articulation = false;
    while let Some(&u) = stack.last() {
        let row = g.neighbors(u);
        if next[u] < row.len() {
            let w = row[next[u]];
            next[u] += 1;
            if pre[w] == UNSEEN {
                parent[w] = u;
                pre[w] = counter;
                low[w] = counter;
                counter += 1;
                stack.push(w);
                if u == root {
                    root_children += 1;
                }
            } else if w != parent[u] {
                low[u] = low[u].min(pre[w]);
            }
        } else {
            stack.pop();
            if let Some(&p) = stack.last() {
                low[p] = low[p].min(low[u]);
                if p == s && p != root && low[u] >= pre[p] {
                    s_is_articulation = true;
                }
            }
        }
    }
    debug_assert_eq!(counter, comp.len(), "component is connected");
    if s == root {
        root_children >= 2
    } else {
        s_is_articulation
    }
}

/// Components of `comp - s` by plain traversal.
fn split_without(g: &Graph, comp: &[VertexId], s: VertexId) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for &start in comp {
        if seen[start] {
            continue;
        }
        let mut side = Vec::new();
        seen[start] = true;
        stack.push(start);
        while let Some(u) = stack.pop() {
            side.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        side.sort_unstable();
        out.push(side);
    }
    out
}

/// Stamped vertex set: constant-time insert/query, constant-time reset.
#[derive(Debug, Clone)]
pub struct NeighborMarks {
    stamp: Vec<u64>,
    epoch: u64,
}

impl NeighborMarks {
    pub fn new(n: usize) -> Self {
        NeighborMarks {
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    pub fn reset(&mut self) {
        self.epoch += 1;
    }

    pub fn insert(&mut self, v: VertexId) {
        self.stamp[v] = self.epoch + 1;
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.stamp[v] == self.epoch + 1
    }

    /// Marks all neighbors of `v`.
    pub fn mark_neighbors(&mut self, g: &Graph, v: VertexId) {
        self.reset();
        for &w in g.neighbors(v) {
            self.insert(w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    #[test]
    fn build_rejects_self_loop() {
        assert_eq!(
            Graph::build(3, &[(0, 1), (2, 2)]),
            Err(GraphError::SelfLoop(2))
        );
    }

    #[test]
    fn build_rejects_duplicate_both_orders() {
        assert_eq!(
            Graph::build(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(
            Graph::build(2, &[(0, 5)]),
            Err(GraphError::VertexOutOfRange { v: 5, n: 2 })
        );
    }

    #[test]
    fn dedup_coalesces() {
        let g = Graph::build_dedup(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn degrees_sum_to_twice_m() {
        let g = complete(5);
        let total: usize = (0..5).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.m());
        assert_eq!(g.max_degree(), 4);
    }

    #[test]
    fn neighbors_sorted_and_adjacent_agrees() {
        let g = Graph::build(5, &[(3, 1), (3, 0), (3, 4), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(3), &[0, 1, 4]);
        assert!(g.adjacent(0, 1));
        assert!(g.adjacent(1, 0));
        assert!(!g.adjacent(0, 4));
    }

    #[test]
    fn components_ordered_by_smallest_vertex() {
        // Two components: {0, 3} and {1, 2}.
        let g = Graph::build(4, &[(0, 3), (1, 2)]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn classify_small_classes() {
        let g = Graph::build(1, &[]).unwrap();
        assert_eq!(classify_component(&g, &[0]), GraphClass::TrivialOrSmallDelta);
        assert_eq!(classify_component(&complete(2), &[0, 1]), GraphClass::Complete);
        assert_eq!(
            classify_component(&complete(3), &[0, 1, 2]),
            GraphClass::Complete
        );
        assert_eq!(
            classify_component(&complete(4), &[0, 1, 2, 3]),
            GraphClass::Complete
        );
        assert_eq!(classify_component(&path(4), &[0, 1, 2, 3]), GraphClass::Path);
        assert_eq!(
            classify_component(&cycle(5), &[0, 1, 2, 3, 4]),
            GraphClass::OddCycle
        );
        assert_eq!(
            classify_component(&cycle(6), &[0, 1, 2, 3, 4, 5]),
            GraphClass::EvenCycle
        );
    }

    #[test]
    fn classify_star_and_regular() {
        let star = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            classify_component(&star, &[0, 1, 2, 3]),
            GraphClass::HasLowDegreeVertex
        );
        // K_{3,3} is 3-regular and not complete.
        let k33 = Graph::build(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(
            classify_component(&k33, &[0, 1, 2, 3, 4, 5]),
            GraphClass::DeltaRegularNonComplete
        );
    }

    #[test]
    fn separation_vertex_on_bowtie() {
        // Two triangles sharing vertex 2.
        let g = Graph::build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let comp: Vec<_> = (0..5).collect();
        let (sep, sides) = is_separation_vertex(&g, &comp, 2);
        assert!(sep);
        assert_eq!(sides, vec![vec![0, 1], vec![3, 4]]);
        let (sep, sides) = is_separation_vertex(&g, &comp, 0);
        assert!(!sep);
        assert!(sides.is_empty());
    }

    #[test]
    fn separation_vertex_path_ends() {
        let g = path(4);
        let comp: Vec<_> = (0..4).collect();
        assert!(!is_separation_vertex(&g, &comp, 0).0);
        assert!(is_separation_vertex(&g, &comp, 1).0);
        assert!(is_separation_vertex(&g, &comp, 2).0);
        assert!(!is_separation_vertex(&g, &comp, 3).0);
    }

    #[test]
    fn induced_delete_maps_are_inverse() {
        let g = complete(4);
        let (h, old_to_new, new_to_old) = g.induced_delete(&[1]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 3);
        for (new, &old) in new_to_old.iter().enumerate() {
            assert_eq!(old_to_new[old], Some(new));
        }
        assert_eq!(old_to_new[1], None);
    }

    #[test]
    fn neighbor_marks_reset_is_cheap() {
        let g = path(4);
        let mut marks = NeighborMarks::new(4);
        marks.mark_neighbors(&g, 1);
        assert!(marks.contains(0));
        assert!(marks.contains(2));
        assert!(!marks.contains(3));
        marks.mark_neighbors(&g, 3);
        assert!(!marks.contains(0));
        assert!(marks.contains(2));
    }
}
