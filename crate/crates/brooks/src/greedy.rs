//! Depth-first machinery and post-order greedy coloring.
//!
//! The greedy scheme colors a component in DFS post-order so that each
//! vertex still has its tree parent uncolored when its own color is
//! picked, leaving at most deg-1 occupied colors. The root is colored
//! last and needs an exception: degree below k inside the component,
//! or two neighbors forced to share a color beforehand.

use crate::coloring::{Color, ColorMarks, Coloring};
use crate::graph::{Graph, VertexId};
use crate::instrument::Recorder;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GreedyError {
    #[error("no color in 1..=k is free at vertex {0}")]
    NoFreeColor(VertexId),
    #[error("component has no vertex of degree below k")]
    NoLowDegreeVertex,
    #[error("forced spanning-tree prefix needs edge ({from}, {to}) which is absent")]
    ForcedEdgeMissing { from: VertexId, to: VertexId },
}

const UNVISITED: usize = usize::MAX;

/// Rooted DFS tree over one component, with preorder numbers and
/// low-links computed in the same pass.
#[derive(Debug, Clone)]
pub struct DfsTree {
    pub root: VertexId,
    /// Visited vertices in preorder. When the tree is a path this is
    /// the path order from the root.
    pub order: Vec<VertexId>,
    /// Preorder number per vertex; `usize::MAX` if unvisited.
    pub pre: Vec<usize>,
    /// Smallest preorder number reachable from the subtree of each
    /// vertex using at most one non-tree edge.
    pub low: Vec<usize>,
    pub parent: Vec<Option<VertexId>>,
    /// Children in discovery order.
    pub children: Vec<Vec<VertexId>>,
}

impl DfsTree {
    pub fn visited(&self, v: VertexId) -> bool {
        self.pre[v] != UNVISITED
    }

    /// The visited vertex of smallest preorder number with at least two
    /// children, if any. `None` means the tree is a path.
    pub fn first_branching(&self) -> Option<VertexId> {
        self.order.iter().copied().find(|&v| self.children[v].len() >= 2)
    }

    /// Whether removing `s` disconnects some child subtree from the
    /// rest of the component. Only meaningful for non-root vertices;
    /// a leaf never separates.
    pub fn child_subtree_separates(&self, s: VertexId) -> bool {
        debug_assert_ne!(s, self.root, "the root uses the two-children rule");
        self.children[s].iter().any(|&c| self.low[c] >= self.pre[s])
    }
}

/// Iterative DFS from `root` over its component, visiting neighbors in
/// ascending order. A non-empty `forced` chain (starting at the root)
/// is taken first, edge by edge; `ForcedEdgeMissing` if the chain is
/// not a path in the graph.
pub fn dfs(
    g: &Graph,
    root: VertexId,
    forced: &[VertexId],
    rec: &mut Recorder,
) -> Result<DfsTree, GreedyError> {
    assert!(
        forced.is_empty() || forced[0] == root,
        "forced chain starts at the root"
    );
    let n = g.n();
    let mut tree = DfsTree {
        root,
        order: Vec::new(),
        pre: vec![UNVISITED; n],
        low: vec![UNVISITED; n],
        parent: vec![None; n],
        children: vec![Vec::new(); n],
    };

    fn visit(g: &Graph, t: &mut DfsTree, v: VertexId, from: Option<VertexId>, rec: &mut Recorder) {
        t.pre[v] = t.order.len();
        t.low[v] = t.order.len();
        t.order.push(v);
        t.parent[v] = from;
        if let Some(u) = from {
            t.children[u].push(v);
        }
        rec.instr.edges_examined += g.degree(v) as u64;
    }

    // Frame: vertex, cursor into its neighbor row, position in the
    // forced chain if the chain continues below it.
    struct Frame {
        v: VertexId,
        cursor: usize,
        forced_idx: Option<usize>,
    }

    visit(g, &mut tree, root, None, rec);
    let mut stack = vec![Frame {
        v: root,
        cursor: 0,
        forced_idx: if forced.is_empty() { None } else { Some(0) },
    }];
    while let Some(frame) = stack.last_mut() {
        let v = frame.v;
        // The forced continuation goes first, before any cursor scan.
        if let Some(i) = frame.forced_idx.take() {
            if i + 1 < forced.len() {
                let next = forced[i + 1];
                rec.instr.edges_examined += 1;
                if !g.adjacent(v, next) {
                    return Err(GreedyError::ForcedEdgeMissing { from: v, to: next });
                }
                debug_assert!(tree.pre[next] == UNVISITED, "forced chain vertices are distinct");
                visit(g, &mut tree, next, Some(v), rec);
                stack.push(Frame {
                    v: next,
                    cursor: 0,
                    forced_idx: Some(i + 1),
                });
                continue;
            }
        }
        let row = g.neighbors(v);
        let mut pushed = false;
        while frame.cursor < row.len() {
            let w = row[frame.cursor];
            frame.cursor += 1;
            if tree.pre[w] == UNVISITED {
                visit(g, &mut tree, w, Some(v), rec);
                stack.push(Frame {
                    v: w,
                    cursor: 0,
                    forced_idx: None,
                });
                pushed = true;
                break;
            }
            if tree.parent[v] != Some(w) {
                tree.low[v] = tree.low[v].min(tree.pre[w]);
            }
        }
        if !pushed {
            stack.pop();
            if let Some(u) = tree.parent[v] {
                tree.low[u] = tree.low[u].min(tree.low[v]);
            }
        }
    }
    Ok(tree)
}

/// Colors `comp` with colors `1..=k` in DFS post-order from `root`.
/// Precolored vertices keep their given colors and are not traversed;
/// the caller must leave `comp` minus the precolored set connected
/// through the root. Every neighbor's current color is respected, so
/// the caller must clear any stale colors in scanning range first.
pub fn greedy_post_order(
    g: &Graph,
    comp: &[VertexId],
    k: usize,
    root: VertexId,
    precolored: &[(VertexId, Color)],
    c: &mut Coloring,
    rec: &mut Recorder,
) -> Result<(), GreedyError> {
    let mut skip = vec![false; g.n()];
    for &(v, col) in precolored {
        c.set(v, col);
        rec.instr.recolorings += 1;
        skip[v] = true;
    }
    let mut in_comp = vec![false; g.n()];
    for &v in comp {
        in_comp[v] = true;
    }
    let mut marks = ColorMarks::new(k);
    let mut visited = skip;
    let mut colored = 0usize;
    if !visited[root] {
        let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
        visited[root] = true;
        while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
            let row = g.neighbors(v);
            let mut descended = false;
            while *cursor < row.len() {
                let w = row[*cursor];
                *cursor += 1;
                rec.instr.edges_examined += 1;
                if in_comp[w] && !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                    descended = true;
                    break;
                }
            }
            if descended {
                continue;
            }
            stack.pop();
            marks.reset();
            rec.instr.edges_examined += g.degree(v) as u64;
            for &u in g.neighbors(v) {
                marks.mark(c.get(u));
            }
            match marks.min_unmarked(k) {
                Some(col) => {
                    c.set(v, col);
                    rec.instr.recolorings += 1;
                    colored += 1;
                }
                None => return Err(GreedyError::NoFreeColor(v)),
            }
        }
    }
    debug_assert_eq!(
        colored + precolored.len(),
        comp.len(),
        "post-order pass covers the component"
    );
    Ok(())
}

/// Colors a component that has some vertex of degree below `k`, rooting
/// the post-order pass at the smallest such vertex.
pub fn color_low_degree_component(
    g: &Graph,
    comp: &[VertexId],
    k: usize,
    c: &mut Coloring,
    rec: &mut Recorder,
) -> Result<(), GreedyError> {
    let root = comp
        .iter()
        .copied()
        .find(|&v| g.degree(v) < k)
        .ok_or(GreedyError::NoLowDegreeVertex)?;
    greedy_post_order(g, comp, k, root, &[], c, rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::validate_coloring;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    #[test]
    fn dfs_on_cycle_is_a_path_tree() {
        let g = cycle(4);
        let mut rec = Recorder::default();
        let t = dfs(&g, 0, &[], &mut rec).unwrap();
        assert_eq!(t.order, vec![0, 1, 2, 3]);
        assert_eq!(t.first_branching(), None);
        assert_eq!(t.low, vec![0, 0, 0, 0]);
        assert!(!t.child_subtree_separates(1));
        assert!(!t.child_subtree_separates(2));
    }

    #[test]
    fn dfs_forced_chain_reorders_the_walk() {
        let g = cycle(4);
        let mut rec = Recorder::default();
        let t = dfs(&g, 0, &[0, 3, 2], &mut rec).unwrap();
        assert_eq!(t.order, vec![0, 3, 2, 1]);
        assert_eq!(t.parent[3], Some(0));
        assert_eq!(t.parent[2], Some(3));
        assert_eq!(
            dfs(&g, 0, &[0, 2], &mut rec).unwrap_err(),
            GreedyError::ForcedEdgeMissing { from: 0, to: 2 }
        );
    }


    #[test]
    fn dfs_lowlinks_find_the_bowtie_cut() {
        // Triangles {0,1,2} and {2,3,4} sharing vertex 2.
        let g = Graph::build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        let mut rec = Recorder::default();
        let t = dfs(&g, 0, &[], &mut rec).unwrap();
        assert_eq!(t.order, vec![0, 1, 2, 3, 4]);
        assert!(t.child_subtree_separates(2));
        assert!(!t.child_subtree_separates(1));
        assert!(!t.child_subtree_separates(3));
        assert_eq!(t.first_branching(), None);
    }

    #[test]
    fn dfs_first_branching_is_smallest_preorder() {
        // Star with center 0: every leaf is a child of the root.
        let g = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut rec = Recorder::default();
        let t = dfs(&g, 0, &[], &mut rec).unwrap();
        assert_eq!(t.first_branching(), Some(0));
        assert_eq!(t.children[0], vec![1, 2, 3]);
    }

    #[test]
    fn post_order_needs_the_root_exception() {
        // An odd cycle is not 2-colorable; the failure surfaces at the
        // root, the last vertex colored.
        let g = cycle(5);
        let mut c = Coloring::new(5, 2);
        let mut rec = Recorder::default();
        assert_eq!(
            greedy_post_order(&g, &[0, 1, 2, 3, 4], 2, 0, &[], &mut c, &mut rec),
            Err(GreedyError::NoFreeColor(0))
        );
    }

    #[test]
    fn post_order_low_degree_root_succeeds() {
        let g = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut c = Coloring::new(4, 2);
        let mut rec = Recorder::default();
        color_low_degree_component(&g, &[0, 1, 2, 3], 2, &mut c, &mut rec).unwrap();
        assert_eq!(c.colors(), &[2, 1, 2, 1]);
        assert!(validate_coloring(&g, &c, true).is_ok());
    }

    #[test]
    fn post_order_root_exception_via_precolored_pair() {
        // Root 1 of the path 0 - 1 - 2 has degree 2 = k, but both
        // neighbors share a forced color, so a color stays free.
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let mut c = Coloring::new(3, 2);
        let mut rec = Recorder::default();
        greedy_post_order(&g, &[0, 1, 2], 2, 1, &[(0, 1), (2, 1)], &mut c, &mut rec).unwrap();
        assert_eq!(c.colors(), &[1, 2, 1]);
    }

    #[test]
    fn regular_component_has_no_low_degree_root() {
        let g = cycle(6);
        let mut c = Coloring::new(6, 2);
        let mut rec = Recorder::default();
        assert_eq!(
            color_low_degree_component(&g, &[0, 1, 2, 3, 4, 5], 2, &mut c, &mut rec),
            Err(GreedyError::NoLowDegreeVertex)
        );
    }

    #[test]
    fn post_order_is_deterministic() {
        let g = Graph::build(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
            .unwrap();
        let mut rec = Recorder::default();
        let mut first = Coloring::new(6, 3);
        greedy_post_order(&g, &[0, 1, 2, 3, 4, 5], 3, 0, &[], &mut first, &mut rec).unwrap();
        let mut second = Coloring::new(6, 3);
        greedy_post_order(&g, &[0, 1, 2, 3, 4, 5], 3, 0, &[], &mut second, &mut rec).unwrap();
        assert_eq!(first, second);
        assert!(validate_coloring(&g, &first, true).is_ok());
    }
}
