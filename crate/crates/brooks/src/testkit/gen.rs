//! Seeded graph generators and exhaustive small-graph enumeration.
//!
//! All randomness flows from ChaCha8 keyed by the caller's seed, whose
//! output stream is specified byte-for-byte, so a (spec, seed) pair
//! produces the identical graph on every platform and run.

use crate::graph::{Graph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("unknown named graph '{0}'")]
    UnknownName(String),
    #[error("regular graph needs n*d even and d < n; got n={n}, d={d}")]
    BadRegularSpec { n: usize, d: usize },
    #[error("pairing model found no simple graph in {0} attempts")]
    RetryExhausted(usize),
    #[error("edge probability must lie in [0, 1]; got {0}")]
    BadProbability(f64),
    #[error("cycle length must be at least 3; got {0}")]
    BadCycleLength(usize),
    #[error("exhaustive enumeration yields a stream; use exhaustive_connected")]
    NeedsEnumeration,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GenKind {
    Gnp { n: usize, p: f64 },
    Regular { n: usize, d: usize },
    Named(String),
    ExhaustiveConnected(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub seed: u64,
}

/// Builds the single graph a spec describes. The enumeration kind has
/// no single graph; callers iterate `exhaustive_connected` instead.
pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    match &spec.kind {
        GenKind::Gnp { n, p } => {
            if !(0.0..=1.0).contains(p) {
                return Err(GenError::BadProbability(*p));
            }
            Ok(gnp(*n, *p, spec.seed))
        }
        GenKind::Regular { n, d } => random_regular(*n, *d, spec.seed),
        GenKind::Named(name) => named(name),
        GenKind::ExhaustiveConnected(_) => Err(GenError::NeedsEnumeration),
    }
}

/// Independent coin flip per vertex pair, pairs in lexicographic order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).expect("distinct pairs only")
}

/// Uniform-stub pairing model: d stubs per vertex, shuffled and paired
/// off; the attempt is rejected whenever a pair forms a loop or a
/// repeated edge.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if !(n * d).is_multiple_of(2) || (d > 0 && d >= n) {
        return Err(GenError::BadRegularSpec { n, d });
    }
    const ATTEMPTS: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen = HashSet::new();
    'attempt: for _ in 0..ATTEMPTS {
        stubs.shuffle(&mut rng);
        seen.clear();
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        let g = Graph::build(n, &edges).expect("checked simple");
        debug_assert!((0..n).all(|v| g.degree(v) == d));
        return Ok(g);
    }
    Err(GenError::RetryExhausted(ATTEMPTS))
}

/// Fixed library of small graphs: petersen, prism, bowtie, k33, and
/// the families complete(c) and cycle(c) (a colon also works as the
/// size separator).
pub fn named(name: &str) -> Result<Graph, GenError> {
    if let Some(c) = parse_sized(name, "complete") {
        let c = c.map_err(|_| GenError::UnknownName(name.to_string()))?;
        let mut edges = Vec::new();
        for u in 0..c {
            for v in u + 1..c {
                edges.push((u, v));
            }
        }
        return Ok(Graph::build(c, &edges).expect("complete graph"));
    }
    if let Some(c) = parse_sized(name, "cycle") {
        let c = c.map_err(|_| GenError::UnknownName(name.to_string()))?;
        if c < 3 {
            return Err(GenError::BadCycleLength(c));
        }
        let edges: Vec<_> = (0..c).map(|i| (i, (i + 1) % c)).collect();
        return Ok(Graph::build(c, &edges).expect("cycle"));
    }
    let edges: &[(VertexId, VertexId)] = match name {
        "petersen" => &[
            // Outer 5-cycle, inner pentagram, five spokes.
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
        "prism" => &[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
        "bowtie" => &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)],
        "k33" => &[
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
        ],
        _ => return Err(GenError::UnknownName(name.to_string())),
    };
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Ok(Graph::build(n, edges).expect("fixed library graph"))
}

/// Recognizes `family(c)` and `family:c`, returning the parsed size.
fn parse_sized(name: &str, family: &str) -> Option<Result<usize, ()>> {
    let rest = name.strip_prefix(family)?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| rest.strip_prefix(':'))?;
    Some(digits.parse::<usize>().map_err(|_| ()))
}

/// Streams every labeled simple graph on `n` vertices, one per subset
/// of the possible edges, in ascending bitmask order.
pub fn exhaustive_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "2^(n choose 2) graphs; enumeration capped at n=8");
    let pairs: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let end: u64 = 1 << pairs.len();
    (0..end).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::build(n, &edges).expect("distinct pairs")
    })
}

/// The connected graphs from `exhaustive_graphs`, same order.
pub fn exhaustive_connected(n: usize) -> impl Iterator<Item = Graph> {
    exhaustive_graphs(n).filter(|g| g.connected_components().len() <= 1)
}

/// Streams every labeled simple `d`-regular graph on `n` vertices in
/// ascending edge-bitmask order, by backtracking over the pair list
/// with degree pruning. Meant for exhaustive small corpora; far
/// tighter than filtering `exhaustive_graphs`.
pub fn regular_graphs(n: usize, d: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "labeled regular enumeration capped at n=8");
    let pairs: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut masks: Vec<u64> = Vec::new();
    if n == 0 {
        if d == 0 {
            masks.push(0);
        }
    } else if (n * d).is_multiple_of(2) && d < n {
        let mut deg = vec![0usize; n];
        collect_regular(&pairs, 0, n, d, &mut deg, 0, &mut masks);
    }
    masks.into_iter().map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::build(n, &edges).expect("distinct pairs")
    })
}

fn collect_regular(
    pairs: &[(VertexId, VertexId)],
    idx: usize,
    n: usize,
    d: usize,
    deg: &mut [usize],
    mask: u64,
    out: &mut Vec<u64>,
) {
    if idx == pairs.len() {
        if deg.iter().all(|&x| x == d) {
            out.push(mask);
        }
        return;
    }
    let (u, v) = pairs[idx];
    // Pairs (u, v)..(u, n-1) are the only ones left that can raise u.
    if deg[u] + (n - v) < d {
        return;
    }
    let row_ends = v == n - 1;
    if !row_ends || deg[u] == d {
        collect_regular(pairs, idx + 1, n, d, deg, mask, out);
    }
    if deg[u] < d && deg[v] < d && (!row_ends || deg[u] + 1 == d) {
        deg[u] += 1;
        deg[v] += 1;
        collect_regular(pairs, idx + 1, n, d, deg, mask | (1 << idx), out);
        deg[u] -= 1;
        deg[v] -= 1;
    }
}
