//! Whole-graph driver: classifies each connected component, routes it
//! to the cheapest sufficient strategy, and assembles one validated
//! result. Complete graphs, cycles, and paths take direct formulas;
//! components with a low-degree vertex take the post-order greedy
//! pass; Delta-regular non-complete components run one of the two
//! constructive algorithms, with the other as fallback so an invalid
//! coloring is never emitted.

use crate::coloring::{validate_coloring, Color, Coloring};
use crate::dfs_color::color_regular_dfs;
use crate::graph::{classify_component, component_max_degree, Graph, GraphClass, VertexId};
use crate::greedy::color_low_degree_component;
use crate::instrument::{Instrumentation, InternalAssertion, Recorder, TraceEvent};
use crate::repair::color_regular_repair;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Which coloring engine handles regular components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoChoice {
    /// Delete-and-repair, Kempe-chain surgery.
    A,
    /// Forced-prefix DFS and separation vertices.
    B,
    /// Post-order greedy only; rejects graphs with a regular
    /// non-complete component of degree 3 or more.
    Greedy,
    /// B first, A as fallback.
    Auto,
}

impl AlgoChoice {
    /// Stable lowercase tag, as reported per component.
    pub fn tag(self) -> &'static str {
        match self {
            AlgoChoice::A => "a",
            AlgoChoice::B => "b",
            AlgoChoice::Greedy => "greedy",
            AlgoChoice::Auto => "auto",
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct ColorOptions {
    /// Collect per-step trace events into the result.
    pub trace: bool,
}

#[derive(Debug, Error)]
pub enum DispatchError {
    #[error("greedy cannot color a {0}-regular non-complete component; use a, b, or auto")]
    GreedyOnRegular(usize),
    #[error("both algorithms failed: [{0}] then [{1}]")]
    AlgorithmFailure(Box<InternalAssertion>, Box<InternalAssertion>),
}

/// One component's share of the result.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<VertexId>,
    pub class: GraphClass,
    pub colors_used: usize,
    pub algorithm: &'static str,
}

/// A complete, validated coloring with its per-component breakdown.
/// Serializes with the color array flattened under "colors".
#[derive(Debug, Clone, Serialize)]
pub struct ColorResult {
    /// Smallest palette the component classes require; every color in
    /// use is at most this.
    pub palette: usize,
    #[serde(rename = "colors", serialize_with = "serialize_colors")]
    pub coloring: Coloring,
    pub components: Vec<ComponentReport>,
    pub instrumentation: Instrumentation,
    pub fallbacks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEvent>>,
}

fn serialize_colors<S: serde::Serializer>(c: &Coloring, s: S) -> Result<S::Ok, S::Error> {
    c.colors().serialize(s)
}

/// Palette each class needs: complete graphs their order, odd cycles
/// three, the other degree-capped shapes their formula values, and
/// everything else its maximum degree.
pub fn required_palette(classes: &[(GraphClass, usize, usize)]) -> usize {
    classes
        .iter()
        .map(|&(class, size, delta)| match class {
            GraphClass::Complete => size,
            GraphClass::OddCycle => 3,
            GraphClass::EvenCycle => 2,
            GraphClass::Path => 2,
            GraphClass::TrivialOrSmallDelta => 1,
            GraphClass::HasLowDegreeVertex | GraphClass::DeltaRegularNonComplete => delta,
        })
        .max()
        .unwrap_or(0)
}

/// Colors the whole graph with the required palette. The returned
/// coloring always passes full validation; a regular component that
/// defeats both algorithms is reported, never silently miscolored.
pub fn color_graph(
    g: &Graph,
    algo: AlgoChoice,
    opts: &ColorOptions,
) -> Result<ColorResult, DispatchError> {
    let comps = g.connected_components();
    let classes: Vec<(GraphClass, usize, usize)> = comps
        .iter()
        .map(|comp| {
            (
                classify_component(g, comp),
                comp.len(),
                component_max_degree(g, comp),
            )
        })
        .collect();
    if algo == AlgoChoice::Greedy {
        if let Some(&(_, _, delta)) = classes
            .iter()
            .find(|&&(class, _, _)| class == GraphClass::DeltaRegularNonComplete)
        {
            return Err(DispatchError::GreedyOnRegular(delta));
        }
    }
    let palette = required_palette(&classes);
    let mut c = Coloring::new(g.n(), palette);
    let mut rec = Recorder::new(opts.trace);
    // Component discovery reads every adjacency slot once per
    // direction.
    rec.instr.edges_examined += 2 * g.m() as u64;
    let mut fallbacks = 0u64;
    let mut reports = Vec::with_capacity(comps.len());

    for (comp, &(class, _, delta)) in comps.iter().zip(&classes) {
        let algorithm = match class {
            GraphClass::TrivialOrSmallDelta => {
                c.set(comp[0], 1);
                rec.instr.recolorings += 1;
                "direct"
            }
            GraphClass::Complete => {
                for (i, &u) in comp.iter().enumerate() {
                    c.set(u, i + 1);
                    rec.instr.recolorings += 1;
                }
                "direct"
            }
            GraphClass::Path | GraphClass::EvenCycle => {
                parity_two_color(g, comp, &mut c, &mut rec);
                "direct"
            }
            GraphClass::OddCycle => {
                let order = cycle_order(g, comp, &mut rec);
                for (i, &u) in order.iter().enumerate() {
                    let col = if i == order.len() - 1 {
                        3
                    } else if i % 2 == 0 {
                        1
                    } else {
                        2
                    };
                    c.set(u, col);
                    rec.instr.recolorings += 1;
                }
                "direct"
            }
            GraphClass::HasLowDegreeVertex => {
                color_low_degree_component(g, comp, delta, &mut c, &mut rec)
                    .expect("a vertex of degree below the component maximum exists");
                "greedy"
            }
            GraphClass::DeltaRegularNonComplete => {
                let order = match algo {
                    AlgoChoice::A => [AlgoChoice::A, AlgoChoice::B],
                    _ => [AlgoChoice::B, AlgoChoice::A],
                };
                let mut errors = Vec::new();
                let mut succeeded = None;
                for (attempt, &alg) in order.iter().enumerate() {
                    if attempt > 0 {
                        fallbacks += 1;
                        for &u in comp {
                            c.clear(u);
                        }
                    }
                    let res = match alg {
                        AlgoChoice::A => color_regular_repair(g, comp, &mut c, &mut rec),
                        _ => color_regular_dfs(g, comp, &mut c, &mut rec),
                    };
                    match res {
                        Ok(()) => {
                            succeeded = Some(alg.tag());
                            break;
                        }
                        Err(e) => errors.push(e),
                    }
                }
                match succeeded {
                    Some(tag) => tag,
                    None => {
                        let second = errors.pop().expect("two failures recorded");
                        let first = errors.pop().expect("two failures recorded");
                        return Err(DispatchError::AlgorithmFailure(
                            Box::new(first),
                            Box::new(second),
                        ));
                    }
                }
            }
        };
        let used: BTreeSet<Color> = comp.iter().map(|&u| c.get(u)).collect();
        reports.push(ComponentReport {
            vertices: comp.clone(),
            class,
            colors_used: used.len(),
            algorithm,
        });
    }

    assert!(
        validate_coloring(g, &c, true).is_ok(),
        "dispatcher emitted a coloring that fails validation"
    );
    Ok(ColorResult {
        palette,
        coloring: c,
        components: reports,
        instrumentation: rec.instr.clone(),
        fallbacks,
        trace: opts.trace.then(|| rec.trace.clone()),
    })
}

/// Distance-parity coloring for bipartite degree-capped shapes.
fn parity_two_color(g: &Graph, comp: &[VertexId], c: &mut Coloring, rec: &mut Recorder) {
    let start = comp[0];
    let mut queue = std::collections::VecDeque::new();
    c.set(start, 1);
    rec.instr.recolorings += 1;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        let next = if c.get(u) == 1 { 2 } else { 1 };
        rec.instr.edges_examined += g.degree(u) as u64;
        for &w in g.neighbors(u) {
            if c.get(w) == 0 {
                c.set(w, next);
                rec.instr.recolorings += 1;
                queue.push_back(w);
            }
        }
    }
}

/// Vertices of a cycle component in traversal order from its smallest
/// vertex, toward its smaller neighbor.
fn cycle_order(g: &Graph, comp: &[VertexId], rec: &mut Recorder) -> Vec<VertexId> {
    let start = comp[0];
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start)[0];
    rec.instr.edges_examined += 2;
    while cur != start {
        order.push(cur);
        let nb = g.neighbors(cur);
        rec.instr.edges_examined += 2;
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(order.len(), comp.len());
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::testkit::gen::named;
    use crate::testkit::oracle::k_colorable;

    fn color(g: &Graph, algo: AlgoChoice) -> ColorResult {
        color_graph(g, algo, &ColorOptions::default()).unwrap()
    }

    #[test]
    fn odd_cycle_takes_three_colors() {
        let g = named("cycle(7)").unwrap();
        let r = color(&g, AlgoChoice::Auto);
        assert_eq!(r.palette, 3);
        assert_eq!(r.components[0].class, GraphClass::OddCycle);
        assert_eq!(r.components[0].colors_used, 3);
        assert_eq!(r.components[0].algorithm, "direct");
    }

    #[test]
    fn complete_graph_takes_its_order() {
        let g = named("complete(5)").unwrap();
        let r = color(&g, AlgoChoice::Auto);
        assert_eq!(r.palette, 5);
        assert_eq!(r.components[0].colors_used, 5);
    }

    #[test]
    fn mixed_graph_reports_per_component() {
        // Petersen, K4, and C9 side by side: palette 4 comes from K4,
        // the cubic component stays within 3, the cycle within 3.
        let petersen = named("petersen").unwrap();
        let mut edges = petersen.edges();
        for (u, v) in named("complete(4)").unwrap().edges() {
            edges.push((u + 10, v + 10));
        }
        for (u, v) in named("cycle(9)").unwrap().edges() {
            edges.push((u + 14, v + 14));
        }
        let g = Graph::build(23, &edges).unwrap();
        for algo in [AlgoChoice::A, AlgoChoice::B, AlgoChoice::Auto] {
            let r = color(&g, algo);
            assert_eq!(r.palette, 4);
            assert_eq!(r.fallbacks, 0);
            assert_eq!(r.components.len(), 3);
            assert!(r.components[0].colors_used <= 3);
            assert_eq!(r.components[1].colors_used, 4);
            assert_eq!(r.components[2].colors_used, 3);
            let expected = match algo {
                AlgoChoice::A => "a",
                _ => "b",
            };
            assert_eq!(r.components[0].algorithm, expected);
            assert_eq!(r.components[1].algorithm, "direct");
            assert_eq!(r.components[2].algorithm, "direct");
        }
    }

    #[test]
    fn greedy_rejects_regular_components() {
        let g = named("petersen").unwrap();
        let err = color_graph(&g, AlgoChoice::Greedy, &ColorOptions::default()).unwrap_err();
        assert!(matches!(err, DispatchError::GreedyOnRegular(3)));
    }

    #[test]
    fn greedy_handles_low_degree_components() {
        // Petersen with a pendant vertex is no longer regular.
        let mut edges = named("petersen").unwrap().edges();
        edges.push((0, 10));
        let g = Graph::build(11, &edges).unwrap();
        let r = color(&g, AlgoChoice::Greedy);
        assert_eq!(r.palette, 4);
        assert_eq!(r.components[0].algorithm, "greedy");
        assert!(k_colorable(&g, 4).is_some());
    }

    #[test]
    fn palette_formula_matches_examples() {
        assert_eq!(required_palette(&[(GraphClass::Complete, 4, 3)]), 4);
        assert_eq!(
            required_palette(&[(GraphClass::OddCycle, 5, 2), (GraphClass::Path, 3, 2)]),
            3
        );
        assert_eq!(
            required_palette(&[(GraphClass::DeltaRegularNonComplete, 10, 3)]),
            3
        );
        assert_eq!(required_palette(&[]), 0);
        assert_eq!(required_palette(&[(GraphClass::TrivialOrSmallDelta, 1, 0)]), 1);
    }

    #[test]
    fn result_serialization_is_stable_and_shaped() {
        let g = named("prism").unwrap();
        let r1 = serde_json::to_string(&color(&g, AlgoChoice::Auto)).unwrap();
        let r2 = serde_json::to_string(&color(&g, AlgoChoice::Auto)).unwrap();
        assert_eq!(r1, r2);
        let v: serde_json::Value = serde_json::from_str(&r1).unwrap();
        let obj = v.as_object().unwrap();
        for key in ["palette", "colors", "components", "instrumentation", "fallbacks"] {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert!(!obj.contains_key("trace"));
        assert_eq!(v["colors"].as_array().unwrap().len(), 6);
        let comp = &v["components"][0];
        for key in ["vertices", "class", "colors_used", "algorithm"] {
            assert!(comp.as_object().unwrap().contains_key(key), "missing {key}");
        }
        assert_eq!(comp["class"], "DeltaRegularNonComplete");
    }

    #[test]
    fn trace_rides_along_when_asked() {
        let g = named("petersen").unwrap();
        let r = color_graph(&g, AlgoChoice::Auto, &ColorOptions { trace: true }).unwrap();
        let trace = r.trace.as_ref().unwrap();
        assert!(!trace.is_empty());
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.as_object().unwrap().contains_key("trace"));
    }

    #[test]
    fn empty_and_edgeless_graphs() {
        let empty = Graph::build(0, &[]).unwrap();
        let r = color(&empty, AlgoChoice::Auto);
        assert_eq!(r.palette, 0);
        assert!(r.components.is_empty());
        let dots = Graph::build(3, &[]).unwrap();
        let r = color(&dots, AlgoChoice::Auto);
        assert_eq!(r.palette, 1);
        assert_eq!(r.components.len(), 3);
    }

    #[test]
    fn paths_and_even_cycles_two_color() {
        let path = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = color(&path, AlgoChoice::Auto);
        assert_eq!(r.palette, 2);
        assert_eq!(r.components[0].class, GraphClass::Path);
        let even = named("cycle(8)").unwrap();
        let r = color(&even, AlgoChoice::Auto);
        assert_eq!(r.palette, 2);
        assert_eq!(r.components[0].class, GraphClass::EvenCycle);
    }
}
