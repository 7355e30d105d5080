//! Recursive evaluation graph for the product basis.
//!
//! Every node of correlation order at least two stores exactly two parent
//! ids whose tuples union to its own, so each product basis function costs
//! one multiplication. Nodes needed only as intermediate products are flagged
//! auxiliary; they carry no model coefficient.
//!
//! Two insertion heuristics are provided. [`Algorithm::Original`] splits off
//! the single element of largest degree whenever no split into two existing
//! nodes is available. [`Algorithm::Generalized`] splits off the sub-multiset
//! of `min(n, nu - 1)` elements of largest degree instead, inserting that
//! piece with the original heuristic.

mod format;
mod stats;

use std::collections::HashMap;
use std::fmt;

pub use format::{deserialize, serialize, FORMAT_VERSION};
pub use stats::{stats, GraphStats, OrderStats};

use crate::dependency::all_splits;
use crate::error::{Error, Result};
use crate::indexsets::{
    degree_key, enumerate_k, one_particle_indices, satisfies_constraints, BasisTuple, DegreeSpec,
    Group,
};

/// Insertion heuristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Original,
    /// Generalized heuristic with sub-tuple length parameter `n >= 1`.
    Generalized { n: usize },
}

impl Algorithm {
    /// Sub-tuple length parameter; 1 for the original heuristic.
    pub fn n(&self) -> usize {
        match *self {
            Algorithm::Original => 1,
            Algorithm::Generalized { n } => n,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Algorithm::Original => "orig",
            Algorithm::Generalized { .. } => "gen",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Original => f.write_str("orig"),
            Algorithm::Generalized { n } => write!(f, "gen(n={n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNode {
    pub id: usize,
    pub tuple: BasisTuple,
    pub parents: Option<(usize, usize)>,
    pub auxiliary: bool,
}

/// Build parameters recorded with the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphMeta {
    pub group: Group,
    pub degree: DegreeSpec,
    /// Largest correlation order of target nodes. `usize::MAX` on a bare
    /// seeded graph means "no order cap".
    pub nu_max: usize,
    pub algorithm: Algorithm,
}

/// Directed acyclic evaluation graph. Node ids are dense and every parent id
/// is smaller than its child id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalGraph {
    meta: GraphMeta,
    nodes: Vec<GraphNode>,
    index: HashMap<BasisTuple, usize>,
}

impl EvalGraph {
    /// Graph holding the order-1 node of every one-particle index with
    /// element degree `<= D`, in canonical order.
    pub fn seeded(meta: GraphMeta) -> Self {
        let mut g = EvalGraph { meta, nodes: Vec::new(), index: HashMap::new() };
        for e in one_particle_indices(meta.group, meta.degree.max_degree) {
            g.push(BasisTuple::single(e), None);
        }
        g
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> &GraphNode {
        &self.nodes[id]
    }

    pub fn id_of(&self, tuple: &BasisTuple) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn contains(&self, tuple: &BasisTuple) -> bool {
        self.index.contains_key(tuple)
    }

    /// Whether the tuple belongs to the target basis: invariant, within the
    /// degree cap and of order at most `nu_max`.
    pub fn is_target(&self, tuple: &BasisTuple) -> bool {
        let nu = tuple.order();
        nu >= 1
            && nu <= self.meta.nu_max
            && satisfies_constraints(tuple, self.meta.group)
            && self.meta.degree.admits(tuple)
    }

    fn push(&mut self, tuple: BasisTuple, parents: Option<(usize, usize)>) -> usize {
        let id = self.nodes.len();
        let auxiliary = tuple.order() >= 2 && !self.is_target(&tuple);
        self.index.insert(tuple.clone(), id);
        self.nodes.push(GraphNode { id, tuple, parents, auxiliary });
        id
    }

    /// First split, in ascending order of the left part, whose two parts
    /// are both already nodes.
    fn present_split(&self, tuple: &BasisTuple) -> Option<(usize, usize)> {
        all_splits(tuple).into_iter().find_map(|d| {
            let a = self.id_of(&d.left)?;
            let b = self.id_of(&d.right)?;
            Some((a, b))
        })
    }

    /// Recursive insertion with sub-tuple parameter `n` (1 = original).
    fn insert_with(&mut self, tuple: &BasisTuple, n: usize) -> usize {
        if let Some(id) = self.id_of(tuple) {
            return id;
        }
        if tuple.order() == 1 {
            return self.push(tuple.clone(), None);
        }
        if let Some(parents) = self.present_split(tuple) {
            return self.push(tuple.clone(), Some(parents));
        }
        let (head, rest) = split_off_max(tuple, n);
        self.insert_with(&head, 1);
        self.insert_with(&rest, n);
        let parents = self
            .present_split(tuple)
            .expect("both parts were just inserted");
        self.push(tuple.clone(), Some(parents))
    }

    /// Inserts with the original heuristic; a no-op for present tuples.
    pub fn insert_original(&mut self, tuple: &BasisTuple) -> usize {
        self.insert_with(tuple, 1)
    }

    /// Inserts with the generalized heuristic; `n = 1` matches
    /// [`EvalGraph::insert_original`].
    pub fn insert_generalized(&mut self, tuple: &BasisTuple, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::InvalidArgument("generalized insertion needs n >= 1".into()));
        }
        Ok(self.insert_with(tuple, n))
    }

    /// Ids of all nodes of order at least two, ascending.
    pub fn product_nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.iter().filter(|n| n.parents.is_some())
    }

    /// Checks the structural invariants; used after deserialization.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.index.len() != self.nodes.len() {
            return bad("duplicate tuples in graph".into());
        }
        for node in &self.nodes {
            match node.parents {
                None if node.tuple.order() != 1 => {
                    return bad(format!("node {} of order >= 2 has no parents", node.id))
                }
                Some(_) if node.tuple.order() < 2 => {
                    return bad(format!("order-1 node {} has parents", node.id))
                }
                Some((a, b)) => {
                    if a >= node.id || b >= node.id {
                        return bad(format!("node {} has a parent with a larger id", node.id));
                    }
                    if self.nodes[a].tuple.union(&self.nodes[b].tuple) != node.tuple {
                        return bad(format!("parents of node {} do not multiply to it", node.id));
                    }
                }
                None => {}
            }
            let aux = node.tuple.order() >= 2 && !self.is_target(&node.tuple);
            if aux != node.auxiliary {
                return bad(format!("auxiliary flag of node {} is inconsistent", node.id));
            }
        }
        Ok(())
    }
}

/// Splits off the `min(n, nu - 1)` elements of largest degree, ties going to
/// the element greatest in index order. Returns `(head, remainder)`.
/// The top `s` elements by degree maximise every p-norm of the head.
fn split_off_max(tuple: &BasisTuple, n: usize) -> (BasisTuple, BasisTuple) {
    let e = tuple.elements();
    let s = n.min(e.len() - 1);
    let mut order: Vec<usize> = (0..e.len()).collect();
    order.sort_by(|&a, &b| e[b].degree().cmp(&e[a].degree()).then(e[b].cmp(&e[a])));
    let mut take = vec![false; e.len()];
    for &i in &order[..s] {
        take[i] = true;
    }
    let (mut head, mut rest) = (Vec::new(), Vec::new());
    for (i, x) in e.iter().enumerate() {
        if take[i] {
            head.push(*x);
        } else {
            rest.push(*x);
        }
    }
    (BasisTuple::new(head), BasisTuple::new(rest))
}

/// Seeded graph without an order cap, using the original heuristic tag.
pub fn seed_graph(group: Group, spec: DegreeSpec) -> EvalGraph {
    EvalGraph::seeded(GraphMeta {
        group,
        degree: spec,
        nu_max: usize::MAX,
        algorithm: Algorithm::Original,
    })
}

/// Builds the graph for `K_G(nu, D)`, `nu <= nu_max`, inserting targets by
/// increasing order, then increasing degree, then canonical order.
pub fn build(group: Group, spec: DegreeSpec, nu_max: usize, algorithm: Algorithm) -> Result<EvalGraph> {
    if nu_max == 0 {
        return Err(Error::InvalidArgument("nu_max must be at least 1".into()));
    }
    if algorithm.n() == 0 {
        return Err(Error::InvalidArgument("generalized insertion needs n >= 1".into()));
    }
    let mut g = EvalGraph::seeded(GraphMeta { group, degree: spec, nu_max, algorithm });
    for nu in 2..=nu_max {
        let mut targets = enumerate_k(group, nu, spec)?;
        targets.sort_by_key(|t| degree_key(t, spec.norm));
        for t in &targets {
            let id = g.insert_with(t, algorithm.n());
            debug_assert!(!g.nodes[id].auxiliary, "target {t} reached as auxiliary");
        }
    }
    Ok(g)
}
