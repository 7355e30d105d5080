//! Node accounting: targets, dependent / independent targets and auxiliary
//! nodes per correlation order.

use super::EvalGraph;
use crate::dependency::{classify_unchecked, Dependence};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OrderStats {
    pub order: usize,
    pub targets: usize,
    pub dependent: usize,
    pub independent: usize,
    pub auxiliary: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphStats {
    /// Entry `i` describes correlation order `i + 1`.
    pub per_order: Vec<OrderStats>,
    pub num_targets: usize,
    pub num_dependent: usize,
    pub num_independent: usize,
    pub num_aux: usize,
    /// Targets plus auxiliary nodes. Non-invariant order-1 seeds are not
    /// counted; see `num_nodes`.
    pub num_total: usize,
    /// Every node in the graph, seeds included.
    pub num_nodes: usize,
    /// `num_dependent / num_targets`.
    pub ratio_dep: f64,
    /// `num_aux / num_total`.
    pub ratio_aux: f64,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

pub fn stats(graph: &EvalGraph) -> GraphStats {
    let max_order = graph.nodes().iter().map(|n| n.tuple.order()).max().unwrap_or(0);
    let mut per_order: Vec<OrderStats> =
        (1..=max_order).map(|order| OrderStats { order, ..Default::default() }).collect();
    for node in graph.nodes() {
        let s = &mut per_order[node.tuple.order() - 1];
        if node.auxiliary {
            s.auxiliary += 1;
        } else if graph.is_target(&node.tuple) {
            s.targets += 1;
            let dep = node.tuple.order() >= 2
                && classify_unchecked(&node.tuple) == Dependence::Dependent;
            if dep {
                s.dependent += 1;
            } else {
                s.independent += 1;
            }
        }
    }
    let sum = |f: fn(&OrderStats) -> usize| per_order.iter().map(f).sum::<usize>();
    let num_targets = sum(|s| s.targets);
    let num_dependent = sum(|s| s.dependent);
    let num_independent = sum(|s| s.independent);
    let num_aux = sum(|s| s.auxiliary);
    let num_total = num_targets + num_aux;
    GraphStats {
        num_targets,
        num_dependent,
        num_independent,
        num_aux,
        num_total,
        num_nodes: graph.len(),
        ratio_dep: ratio(num_dependent, num_targets),
        ratio_aux: ratio(num_aux, num_total),
        per_order,
    }
}
