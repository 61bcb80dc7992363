//! Exact k-colorability by backtracking search, independent of the
//! coloring algorithms under test.
//!
//! Vertices are tried in descending-degree order (ties by index).
//! Symmetry is broken by capping each vertex's candidate colors at one
//! more than the largest color used so far, which fixes the first
//! vertex to color 1 and makes complete graphs linear instead of
//! factorial. A forward check prunes as soon as some uncolored
//! neighbor loses its last candidate.

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget exhausted after {0} nodes")]
    BudgetExceeded(u64),
}

/// A witness k-coloring if one exists. Exponential; test-scale inputs
/// only (document ~20 vertices for dense graphs).
pub fn k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    k_colorable_budgeted(g, k, None).expect("no budget set")
}

/// As `k_colorable`, giving up once the search tree exceeds
/// `budget` expanded nodes.
pub fn k_colorable_budgeted(
    g: &Graph,
    k: usize,
    budget: Option<u64>,
) -> Result<Option<Coloring>, OracleError> {
    let mut order: Vec<VertexId> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut search = Search {
        g,
        order: &order,
        k,
        budget,
        c: Coloring::new(g.n(), k),
        nodes: 0,
    };
    if search.solve(0, 0)? {
        Ok(Some(search.c))
    } else {
        Ok(None)
    }
}

/// Backtracking state: the fixed inputs plus the partial assignment
/// and expanded-node count.
struct Search<'a> {
    g: &'a Graph,
    order: &'a [VertexId],
    k: usize,
    budget: Option<u64>,
    c: Coloring,
    nodes: u64,
}

impl Search<'_> {
    fn solve(&mut self, pos: usize, max_used: Color) -> Result<bool, OracleError> {
        if pos == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(OracleError::BudgetExceeded(self.nodes));
            }
        }
        let v = self.order[pos];
        let cap = self.k.min(max_used + 1);
        'colors: for col in 1..=cap {
            for &u in self.g.neighbors(v) {
                if self.c.get(u) == col {
                    continue 'colors;
                }
            }
            self.c.set(v, col);
            if !strands_a_neighbor(self.g, v, self.k, &self.c)
                && self.solve(pos + 1, max_used.max(col))?
            {
                return Ok(true);
            }
            self.c.clear(v);
        }
        Ok(false)
    }
}

/// True when some uncolored neighbor of `v` now sees all k colors.
fn strands_a_neighbor(g: &Graph, v: VertexId, k: usize, c: &Coloring) -> bool {
    if k >= 64 {
        // Palettes this large never run out at oracle scale.
        return false;
    }
    for &u in g.neighbors(v) {
        if c.get(u) != 0 {
            continue;
        }
        let mut present = [false; 64];
        let mut seen = 0usize;
        for &w in g.neighbors(u) {
            let cw = c.get(w);
            if cw != 0 && !present[cw] {
                present[cw] = true;
                seen += 1;
                if seen == k {
                    return true;
                }
            }
        }
    }
    false
}

/// Plain enumeration of all k^n assignments; the independent
/// cross-check for the backtracker. Tiny inputs only.
pub fn k_colorable_brute(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    assert!(
        (k as u128).checked_pow(n as u32).is_some_and(|t| t <= 100_000_000),
        "brute-force enumeration capped at 1e8 assignments"
    );
    if k == 0 {
        return false;
    }
    let edges = g.edges();
    let mut assign = vec![1usize; n];
    loop {
        if edges.iter().all(|&(u, v)| assign[u] != assign[v]) {
            return true;
        }
        // Increment the base-k counter.
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if assign[i] < k {
                assign[i] += 1;
                break;
            }
            assign[i] = 1;
            i += 1;
        }
    }
}

/// Size of a greedily grown clique: a cheap chromatic lower bound.
pub fn greedy_clique_size(g: &Graph) -> usize {
    let mut order: Vec<VertexId> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique: Vec<VertexId> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.adjacent(u, v)) {
            clique.push(v);
        }
    }
    clique.len()
}

/// Smallest k admitting a proper k-coloring.
pub fn chromatic_number(g: &Graph) -> usize {
    chromatic_number_budgeted(g, None).expect("no budget set")
}

pub fn chromatic_number_budgeted(g: &Graph, budget: Option<u64>) -> Result<usize, OracleError> {
    if g.n() == 0 {
        return Ok(0);
    }
    let mut k = greedy_clique_size(g).max(1);
    loop {
        if k_colorable_budgeted(g, k, budget)?.is_some() {
            return Ok(k);
        }
        k += 1;
        debug_assert!(k <= g.n(), "n colors always suffice");
    }
}
