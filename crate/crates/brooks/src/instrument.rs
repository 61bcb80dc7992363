//! Run instrumentation: work counters, trace events, and branch flags.
//!
//! Counting convention: an edge is "examined" each time one adjacency
//! slot (a directed `u -> v` entry of the compressed adjacency) is
//! dereferenced by algorithm code; traversals, neighbor-color scans,
//! and adjacency probes all count. Verification passes (debug-mode
//! revalidation, the final validity gate) do not count; they check work,
//! they are not the work.
//!
//! `path_edge_examinations` is a focused sub-counter used by the repair
//! algorithm: it is reset the moment normalization has established the
//! three role paths, and from then on counts only dereferences of edges
//! that lie on those paths. The repair scan cache guarantees each path
//! vertex is scanned at most once after the reset, so each path edge is
//! examined at most twice (once from each endpoint).

use serde::Serialize;
use std::collections::BTreeSet;

/// Work counters accumulated over one coloring run.
#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct Instrumentation {
    /// Adjacency-slot dereferences by algorithm code.
    pub edges_examined: u64,
    /// Two-color component and path-segment color swaps.
    pub kempe_swaps: u64,
    /// Single-vertex color assignments: greedy picks, precolored
    /// writes, and repair diversions. Whole-set swaps count separately.
    pub recolorings: u64,
    /// Dereferences of role-path edges after the repair reset point.
    pub path_edge_examinations: u64,
    /// Number of edges on the union of the three role paths at the
    /// reset point (0 if the run never normalized all three).
    pub path_edges_total: u64,
    /// True when a repair run reached the post-normalization phase.
    pub path_phase_reached: bool,
}

impl Instrumentation {
    pub fn absorb(&mut self, other: &Instrumentation) {
        self.edges_examined += other.edges_examined;
        self.kempe_swaps += other.kempe_swaps;
        self.recolorings += other.recolorings;
        self.path_edge_examinations += other.path_edge_examinations;
        self.path_edges_total += other.path_edges_total;
        self.path_phase_reached |= other.path_phase_reached;
    }
}

/// One step of an algorithm run, for replay and debugging.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    /// Step identifier, e.g. "free-color" or "case: split".
    pub step: String,
    /// Vertices the step touched or decided on.
    pub vertices: Vec<usize>,
    /// Color movements and sub-branch detail, human-readable.
    pub note: String,
}

/// Code paths a run can take; used by branch-coverage tests to confirm
/// a generated instance actually exercised the branch it was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(into = "String")]
pub enum Branch {
    /// Repair: a color was free at the reinserted vertex, or a neighbor
    /// could donate its color.
    FreeColor,
    /// Repair: the two role endpoints sat in different two-color
    /// components; one swap finished the run.
    SplitComponents,
    /// Repair: a two-color component was not a simple path; recoloring
    /// its first branch vertex finished the run.
    NonPathComponent,
    /// Repair: some path vertex had no neighbor of the third role
    /// color.
    ThirdColorBreak,
    /// Repair: roles formed the adjacent-pair shape (edges a-b and b-c
    /// present) and were recolored directly.
    RolesTriangle,
    /// Repair final maneuver, shortcut: a path vertex with two
    /// neighbors of the first role color was recolored.
    FinalTwoNeighbors,
    /// Repair final maneuver, swap form, edge (a,b) absent.
    FinalSwapAbsent,
    /// Repair final maneuver, swap form, edge (a,b) present.
    FinalSwapPresent,
    /// DFS algorithm: the forced tree was a Hamiltonian path.
    HamPath,
    /// DFS algorithm: colored across a separation vertex.
    Split,
    /// DFS algorithm: two sibling children precolored and removed.
    PairRemoval,
}

impl Branch {
    /// Stable identifier, used as the case name in generators and CLI.
    pub fn id(self) -> &'static str {
        match self {
            Branch::FreeColor => "free-color",
            Branch::SplitComponents => "split-components",
            Branch::NonPathComponent => "non-path-component",
            Branch::ThirdColorBreak => "third-color-break",
            Branch::RolesTriangle => "roles-triangle",
            Branch::FinalTwoNeighbors => "final-maneuver-(i)",
            Branch::FinalSwapAbsent => "final-maneuver-(ii-absent)",
            Branch::FinalSwapPresent => "final-maneuver-(ii-present)",
            Branch::HamPath => "ham-path",
            Branch::Split => "split",
            Branch::PairRemoval => "pair-removal",
        }
    }

    /// Inverse of [`Branch::id`].
    pub fn from_id(id: &str) -> Option<Branch> {
        ALL_BRANCHES.iter().copied().find(|b| b.id() == id)
    }
}

impl From<Branch> for String {
    fn from(b: Branch) -> String {
        b.id().to_string()
    }
}

pub const ALL_BRANCHES: [Branch; 11] = [
    Branch::FreeColor,
    Branch::SplitComponents,
    Branch::NonPathComponent,
    Branch::ThirdColorBreak,
    Branch::RolesTriangle,
    Branch::FinalTwoNeighbors,
    Branch::FinalSwapAbsent,
    Branch::FinalSwapPresent,
    Branch::HamPath,
    Branch::Split,
    Branch::PairRemoval,
];

/// An invariant the algorithm relies on failed to hold at runtime.
/// Carries the step name, a human-readable account, and the trace
/// collected so far, so the failing run can be replayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalAssertion {
    pub step: &'static str,
    pub detail: String,
    pub trace: Vec<TraceEvent>,
}

impl std::fmt::Display for InternalAssertion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant failed at {}: {}", self.step, self.detail)
    }
}

impl std::error::Error for InternalAssertion {}

/// Mutable recording context threaded through a run: counters, branch
/// flags, and (when enabled) the step trace.
#[derive(Debug, Default, Clone)]
pub struct Recorder {
    pub instr: Instrumentation,
    pub branches: BTreeSet<Branch>,
    pub trace_enabled: bool,
    pub trace: Vec<TraceEvent>,
}

impl Recorder {
    pub fn new(trace_enabled: bool) -> Self {
        Recorder {
            trace_enabled,
            ..Recorder::default()
        }
    }

    pub fn hit(&mut self, branch: Branch) {
        self.branches.insert(branch);
    }

    pub fn emit(&mut self, step: &str, vertices: &[usize], note: impl FnOnce() -> String) {
        if self.trace_enabled {
            self.trace.push(TraceEvent {
                step: step.to_string(),
                vertices: vertices.to_vec(),
                note: note(),
            });
        }
    }

    /// Trace collected so far; used to make assertion errors replayable.
    pub fn snapshot_trace(&self) -> Vec<TraceEvent> {
        self.trace.clone()
    }

    /// Packages a failed invariant with the current trace.
    pub fn fail(&self, step: &'static str, detail: impl Into<String>) -> InternalAssertion {
        InternalAssertion {
            step,
            detail: detail.into(),
            trace: self.snapshot_trace(),
        }
    }
}
