//! DFS-based Delta-coloring of a connected Delta-regular non-complete
//! component with Delta >= 3 colors.
//!
//! A non-adjacent pair x, y of some vertex v's neighbors always exists
//! (the component is not complete). A spanning DFS tree is grown from
//! x through the forced prefix x, v, y; its shape picks the case:
//!
//! * no branching vertex: the tree is a Hamiltonian path and is colored
//!   from both ends toward a bridging neighbor of v, with v last;
//! * a branching vertex yields a separation vertex (the root itself, or
//!   a first child whose subtree cannot climb past it): each side is
//!   colored from the cut and the colorings are merged by transposing
//!   two colors;
//! * otherwise the first two children of the first branching vertex are
//!   non-adjacent, jointly removable, and share a color, letting the
//!   post-order pass finish at their parent.
//!
//! Each case gives every vertex an uncolored or repeated neighbor when
//! its turn comes, so the greedy pick never exceeds Delta colors.

use crate::coloring::{ColorMarks, Coloring};
use crate::graph::{is_separation_vertex, Graph, VertexId};
use crate::greedy::{dfs, greedy_post_order};
use crate::instrument::{Branch, InternalAssertion, Recorder};

/// Colors `comp` (connected, Delta-regular with Delta >= 3, not
/// complete) using at most Delta colors, writing into `c`.
pub fn color_regular_dfs(
    g: &Graph,
    comp: &[VertexId],
    c: &mut Coloring,
    rec: &mut Recorder,
) -> Result<(), InternalAssertion> {
    let v = comp[0];
    let k = g.degree(v);
    debug_assert!(k >= 3, "small degrees take the direct formulas");
    debug_assert!(comp.iter().all(|&u| g.degree(u) == k));

    let nb = g.neighbors(v);
    let mut pick = None;
    'outer: for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            rec.instr.edges_examined += 1;
            if !g.adjacent(nb[i], nb[j]) {
                pick = Some((nb[i], nb[j]));
                break 'outer;
            }
        }
    }
    let (x, y) = pick.ok_or_else(|| {
        rec.fail("choose-pair", format!("all neighbors of {v} pairwise adjacent"))
    })?;
    let tree = dfs(g, x, &[x, v, y], rec).map_err(|e| rec.fail("forced-tree", e.to_string()))?;
    debug_assert_eq!(tree.order.len(), comp.len(), "tree spans the component");
    rec.emit("forced-tree", &[x, v, y], || {
        format!("tree from {x} forced through {v}, {y}")
    });

    match tree.first_branching() {
        None => case_ham_path(g, k, &tree.order, c, rec)?,
        Some(p) if p == x => case_split(g, comp, k, p, c, rec)?,
        Some(p) => {
            let s = tree.children[p][0];
            let t = tree.children[p][1];
            if tree.child_subtree_separates(s) {
                case_split(g, comp, k, s, c, rec)?;
            } else if tree.child_subtree_separates(t) {
                case_split(g, comp, k, t, c, rec)?;
            } else {
                case_pair_removal(g, comp, k, p, (s, t), c, rec)?;
            }
        }
    }
    match crate::coloring::validate_component(g, comp, c, true) {
        crate::coloring::ColoringCheck::Ok => Ok(()),
        bad => Err(rec.fail("validation", format!("{bad:?}"))),
    }
}

/// Scans `u`'s neighborhood and assigns the smallest free color.
fn greedy_assign(
    g: &Graph,
    k: usize,
    u: VertexId,
    marks: &mut ColorMarks,
    c: &mut Coloring,
    rec: &mut Recorder,
    step: &'static str,
) -> Result<(), InternalAssertion> {
    marks.reset();
    rec.instr.edges_examined += g.degree(u) as u64;
    for &w in g.neighbors(u) {
        marks.mark(c.get(w));
    }
    match marks.min_unmarked(k) {
        Some(col) => {
            c.set(u, col);
            rec.instr.recolorings += 1;
            Ok(())
        }
        None => Err(rec.fail(step, format!("no color in 1..={k} free at {u}"))),
    }
}

/// The spanning tree is the path x, v, y, ... Give x and y (never
/// adjacent) the same color, then color toward a third neighbor z of v
/// from both sides, so z still has v uncolored at its turn; v closes
/// with its two equal-colored neighbors keeping a color free.
fn case_ham_path(
    g: &Graph,
    k: usize,
    order: &[VertexId],
    c: &mut Coloring,
    rec: &mut Recorder,
) -> Result<(), InternalAssertion> {
    let (x, v, y) = (order[0], order[1], order[2]);
    rec.instr.edges_examined += g.degree(v) as u64;
    let z = g
        .neighbors(v)
        .iter()
        .copied()
        .find(|&u| u != x && u != y)
        .expect("degree >= 3 leaves a third neighbor");
    let zi = order.iter().position(|&u| u == z).expect("path spans the component");
    debug_assert!(zi >= 3);
    c.set(x, 1);
    c.set(y, 1);
    rec.instr.recolorings += 2;
    let mut marks = ColorMarks::new(k);
    for &u in &order[3..zi] {
        greedy_assign(g, k, u, &mut marks, c, rec, "ham-path")?;
    }
    for &u in order[zi..].iter().rev() {
        greedy_assign(g, k, u, &mut marks, c, rec, "ham-path")?;
    }
    greedy_assign(g, k, v, &mut marks, c, rec, "ham-path")?;
    rec.hit(Branch::HamPath);
    rec.emit("ham-path", &[x, v, y, z], || {
        format!(
            "spanning path of {} vertices, met from both ends at {z} (position {zi})",
            order.len()
        )
    });
    Ok(())
}

/// Colors each side of a separation vertex from the cut outward, then
/// merges: the first side's coloring stands, every other side is
/// written through the transposition that sends its cut color to the
/// first side's.
fn case_split(
    g: &Graph,
    comp: &[VertexId],
    k: usize,
    cut: VertexId,
    c: &mut Coloring,
    rec: &mut Recorder,
) -> Result<(), InternalAssertion> {
    // Articulation recheck plus side extraction: two row passes.
    rec.instr.edges_examined += 2 * (k * comp.len()) as u64;
    let (is_cut, sides) = is_separation_vertex(g, comp, cut);
    if !is_cut {
        return Err(rec.fail("split", format!("{cut} does not separate its component")));
    }
    debug_assert!(sides.len() >= 2);
    // Every side holds at least one of the cut's neighbors, so within
    // one side the cut has at most k-1 of them and its closing greedy
    // pick always finds room.
    let mut first_plus: Vec<VertexId> = sides[0].clone();
    first_plus.push(cut);
    first_plus.sort_unstable();
    greedy_post_order(g, &first_plus, k, cut, &[], c, rec)
        .map_err(|e| rec.fail("split", e.to_string()))?;
    let base = c.get(cut);
    let mut scratch = Coloring::new(g.n(), k);
    for side in &sides[1..] {
        // The scratch pass scans the cut's full neighborhood, so stale
        // colors beyond this side must read as uncolored.
        scratch.clear(cut);
        for &u in g.neighbors(cut) {
            scratch.clear(u);
        }
        for &u in side {
            scratch.clear(u);
        }
        let mut plus: Vec<VertexId> = side.clone();
        plus.push(cut);
        plus.sort_unstable();
        greedy_post_order(g, &plus, k, cut, &[], &mut scratch, rec)
            .map_err(|e| rec.fail("split", e.to_string()))?;
        let ci = scratch.get(cut);
        for &u in side {
            let su = scratch.get(u);
            let col = if su == ci {
                base
            } else if su == base {
                ci
            } else {
                su
            };
            c.set(u, col);
        }
    }
    rec.hit(Branch::Split);
    rec.emit("split", &[cut], || {
        format!("{} sides joined at {cut}, cut color {base}", sides.len())
    });
    Ok(())
}

/// The first two children s, t of the first branching vertex p are
/// non-adjacent (t would otherwise sit in s's subtree) and neither
/// separates; both take color 1 and the post-order pass from p colors
/// the rest, closing at p against a repeated color.
fn case_pair_removal(
    g: &Graph,
    comp: &[VertexId],
    k: usize,
    p: VertexId,
    (s, t): (VertexId, VertexId),
    c: &mut Coloring,
    rec: &mut Recorder,
) -> Result<(), InternalAssertion> {
    rec.instr.edges_examined += 1;
    if g.adjacent(s, t) {
        return Err(rec.fail("pair-removal", format!("siblings {s} and {t} are adjacent")));
    }
    let mut in_comp = vec![false; g.n()];
    for &u in comp {
        in_comp[u] = true;
    }
    in_comp[s] = false;
    in_comp[t] = false;
    let mut seen = vec![false; g.n()];
    let mut stack = vec![p];
    seen[p] = true;
    let mut reached = 0usize;
    while let Some(u) = stack.pop() {
        reached += 1;
        rec.instr.edges_examined += g.degree(u) as u64;
        for &w in g.neighbors(u) {
            if in_comp[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if reached != comp.len() - 2 {
        return Err(rec.fail(
            "pair-removal",
            format!("removing {s} and {t} disconnects the component"),
        ));
    }
    greedy_post_order(g, comp, k, p, &[(s, 1), (t, 1)], c, rec)
        .map_err(|e| rec.fail("pair-removal", e.to_string()))?;
    rec.hit(Branch::PairRemoval);
    rec.emit("pair-removal", &[p, s, t], || {
        format!("siblings {s}, {t} share color 1; pass rooted at {p}")
    });
    Ok(())
}
