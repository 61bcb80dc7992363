//! Colorings and two-color (Kempe) machinery.
//!
//! Colors are integers `1..=k`; 0 is the uncolored sentinel. A Kempe
//! component is one connected piece of the subgraph induced by the
//! vertices carrying one of two chosen colors; swapping the two colors
//! inside such a component preserves validity, which is the engine
//! behind the repair algorithm.

use crate::graph::{Graph, VertexId};
use crate::instrument::Recorder;
use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

pub type Color = usize;

/// Vertex-to-color assignment with palette capacity `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    k: usize,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(n: usize, k: usize) -> Self {
        Coloring {
            k,
            colors: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, v: VertexId) -> Color {
        self.colors[v]
    }

    pub fn set(&mut self, v: VertexId, c: Color) {
        debug_assert!(c <= self.k, "color {c} exceeds palette {}", self.k);
        self.colors[v] = c;
    }

    pub fn clear(&mut self, v: VertexId) {
        self.colors[v] = 0;
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Largest color in use (0 when nothing is colored).
    pub fn max_color_used(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// Outcome of a validity scan; the first offender in ascending vertex
/// order (uncolored checked before that vertex's edges, conflict edges
/// reported as `(u, v)` with `u < v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringCheck {
    Ok,
    Violation(VertexId, VertexId),
    Uncolored(VertexId),
}

impl ColoringCheck {
    pub fn is_ok(self) -> bool {
        self == ColoringCheck::Ok
    }
}

/// Scans all edges (and all vertices when `require_total`).
pub fn validate_coloring(g: &Graph, c: &Coloring, require_total: bool) -> ColoringCheck {
    assert_eq!(g.n(), c.len(), "coloring covers the graph");
    for v in 0..g.n() {
        let cv = c.get(v);
        if require_total && cv == 0 {
            return ColoringCheck::Uncolored(v);
        }
        if cv == 0 {
            continue;
        }
        for &u in g.neighbors(v) {
            if u > v && c.get(u) == cv {
                return ColoringCheck::Violation(v, u);
            }
        }
    }
    ColoringCheck::Ok
}

/// Validity scan restricted to one component's vertices.
pub fn validate_component(
    g: &Graph,
    comp: &[VertexId],
    c: &Coloring,
    require_total: bool,
) -> ColoringCheck {
    for &v in comp {
        let cv = c.get(v);
        if require_total && cv == 0 {
            return ColoringCheck::Uncolored(v);
        }
        if cv == 0 {
            continue;
        }
        for &u in g.neighbors(v) {
            if u > v && c.get(u) == cv {
                return ColoringCheck::Violation(v, u);
            }
        }
    }
    ColoringCheck::Ok
}

/// Colors of `1..=k` absent among the neighbors of `v`, ascending.
/// The sentinel 0 is never reported.
pub fn missing_colors(g: &Graph, c: &Coloring, v: VertexId) -> Vec<Color> {
    let mut present = vec![false; c.k() + 1];
    for &u in g.neighbors(v) {
        let cu = c.get(u);
        if cu <= c.k() {
            present[cu] = true;
        }
    }
    (1..=c.k()).filter(|&col| !present[col]).collect()
}

/// How many neighbors of `v` carry `color`.
pub fn neighbor_color_count(g: &Graph, c: &Coloring, v: VertexId, color: Color) -> usize {
    g.neighbors(v).iter().filter(|&&u| c.get(u) == color).count()
}

/// Stamped color-presence marks: one `O(deg)` scan answers all
/// "is color x present around v" queries without allocation.
#[derive(Debug, Clone)]
pub struct ColorMarks {
    stamp: Vec<u64>,
    epoch: u64,
}

impl ColorMarks {
    pub fn new(k: usize) -> Self {
        ColorMarks {
            stamp: vec![0; k + 1],
            epoch: 0,
        }
    }

    pub fn ensure(&mut self, k: usize) {
        if self.stamp.len() < k + 1 {
            self.stamp.resize(k + 1, 0);
        }
    }

    pub fn reset(&mut self) {
        self.epoch += 1;
    }

    pub fn mark(&mut self, c: Color) {
        if c < self.stamp.len() {
            self.stamp[c] = self.epoch + 1;
        }
    }

    pub fn marked(&self, c: Color) -> bool {
        self.stamp[c] == self.epoch + 1
    }

    /// Smallest color in `1..=k` not marked.
    pub fn min_unmarked(&self, k: usize) -> Option<Color> {
        (1..=k).find(|&c| !self.marked(c))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KempeError {
    #[error("start vertex {start} has color {color}, not in the pair ({a}, {b})")]
    StartNotInClasses {
        start: VertexId,
        color: Color,
        a: Color,
        b: Color,
    },
    #[error("component member {0} no longer carries either pair color")]
    StaleComponent(VertexId),
    #[error("vertex {0} does not lie on the path")]
    VertexNotOnPath(VertexId),
}

/// One component of the subgraph induced by two colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempeComponent {
    /// The color pair, as requested.
    pub colors: (Color, Color),
    /// Members in traversal order (breadth-first from `start`,
    /// neighbors ascending). When the component is a simple path and
    /// the start is one of its ends, this is the path order.
    pub members: Vec<VertexId>,
    /// True when every member has at most two member neighbors and the
    /// component is not a cycle.
    pub is_simple_path: bool,
    /// Members of internal degree <= 1 in traversal order: a path's two
    /// ends, or the single member of a trivial component. Empty when
    /// the component is not a simple path.
    pub endpoints: Vec<VertexId>,
    /// When the start has at most one member neighbor: the first vertex
    /// of internal degree > 2 on the walk from the start, if any.
    pub first_branch_from: Option<VertexId>,
}

/// Walks from an endpoint along a two-colored region until the path
/// ends or a vertex of internal degree > 2 appears. Returns the walked
/// path (excluding the branch vertex) and the branch vertex if one was
/// hit. The start must have internal degree <= 1.
pub(crate) fn alternating_walk(
    g: &Graph,
    c: &Coloring,
    start: VertexId,
    a: Color,
    b: Color,
    rec: &mut Recorder,
) -> (Vec<VertexId>, Option<VertexId>) {
    let mut path = Vec::new();
    let mut prev: Option<VertexId> = None;
    let mut cur = start;
    loop {
        let mut internal = 0usize;
        let mut next: Option<VertexId> = None;
        rec.instr.edges_examined += g.degree(cur) as u64;
        for &u in g.neighbors(cur) {
            let cu = c.get(u);
            if cu == a || cu == b {
                internal += 1;
                if Some(u) != prev && next.is_none() {
                    next = Some(u);
                }
            }
        }
        if internal > 2 {
            debug_assert!(prev.is_some(), "start has internal degree <= 1");
            return (path, Some(cur));
        }
        path.push(cur);
        match next {
            Some(u) => {
                prev = Some(cur);
                cur = u;
            }
            None => return (path, None),
        }
    }
}

/// Collects the two-color component containing `start`.
pub fn kempe_component(
    g: &Graph,
    c: &Coloring,
    start: VertexId,
    a: Color,
    b: Color,
    rec: &mut Recorder,
) -> Result<KempeComponent, KempeError> {
    let cs = c.get(start);
    if cs != a && cs != b {
        return Err(KempeError::StartNotInClasses {
            start,
            color: cs,
            a,
            b,
        });
    }
    let mut in_comp = vec![false; g.n()];
    let mut members = Vec::new();
    let mut degrees = Vec::new();
    let mut queue = VecDeque::new();
    in_comp[start] = true;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        members.push(u);
        let mut internal = 0usize;
        rec.instr.edges_examined += g.degree(u) as u64;
        for &w in g.neighbors(u) {
            let cw = c.get(w);
            if cw == a || cw == b {
                internal += 1;
                if !in_comp[w] {
                    in_comp[w] = true;
                    queue.push_back(w);
                }
            }
        }
        degrees.push(internal);
    }
    let max_internal = degrees.iter().copied().max().unwrap_or(0);
    let ends: Vec<VertexId> = members
        .iter()
        .zip(&degrees)
        .filter(|&(_, &d)| d <= 1)
        .map(|(&v, _)| v)
        .collect();
    let is_simple_path =
        max_internal <= 2 && (members.len() == 1 || ends.len() == 2);
    let first_branch_from = if degrees[0] <= 1 && max_internal > 2 {
        let (_, branch) = alternating_walk(g, c, start, a, b, rec);
        branch
    } else {
        None
    };
    Ok(KempeComponent {
        colors: (a, b),
        members,
        is_simple_path,
        endpoints: if is_simple_path { ends } else { Vec::new() },
        first_branch_from,
    })
}

/// Exchanges the two colors over the whole component.
pub fn kempe_swap(
    g: &Graph,
    c: &mut Coloring,
    comp: &KempeComponent,
    rec: &mut Recorder,
) -> Result<(), KempeError> {
    let _ = g;
    let (a, b) = comp.colors;
    for &v in &comp.members {
        let cv = c.get(v);
        if cv != a && cv != b {
            return Err(KempeError::StaleComponent(v));
        }
    }
    for &v in &comp.members {
        let cv = c.get(v);
        c.set(v, if cv == a { b } else { a });
    }
    rec.instr.kempe_swaps += 1;
    Ok(())
}

/// Exchanges `a` and `b` on the strict prefix of `path` before `upto`.
pub fn swap_prefix_on_path(
    c: &mut Coloring,
    path: &[VertexId],
    upto: VertexId,
    a: Color,
    b: Color,
    rec: &mut Recorder,
) -> Result<(), KempeError> {
    let pos = path
        .iter()
        .position(|&v| v == upto)
        .ok_or(KempeError::VertexNotOnPath(upto))?;
    swap_colors_on(c, &path[..pos], a, b);
    rec.instr.kempe_swaps += 1;
    Ok(())
}

/// Raw pairwise color exchange over a vertex slice.
pub(crate) fn swap_colors_on(c: &mut Coloring, vertices: &[VertexId], a: Color, b: Color) {
    for &v in vertices {
        let cv = c.get(v);
        debug_assert!(cv == a || cv == b, "swap slice carries the pair colors");
        c.set(v, if cv == a { b } else { a });
    }
}
