//! Connected components of multigraphs, strongly connected components of
//! directed overlays, and in-/out-reachability around a core set.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph_gen::Multigraph;

const FORWARD: u8 = 0b01;
const BACKWARD: u8 = 0b10;

/// Membership mask over the nodes of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    mask: Vec<bool>,
    count: usize,
}

impl NodeSet {
    pub fn empty(n: usize) -> Self {
        Self {
            mask: vec![false; n],
            count: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            mask: vec![true; n],
            count: n,
        }
    }

    pub fn from_nodes(n: usize, nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n);
        for u in nodes {
            set.insert(u);
        }
        set
    }

    /// Returns true if `u` was newly added.
    pub fn insert(&mut self, u: usize) -> bool {
        if self.mask[u] {
            false
        } else {
            self.mask[u] = true;
            self.count += 1;
            true
        }
    }

    pub fn contains(&self, u: usize) -> bool {
        self.mask.get(u).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Size of the universe the set is drawn from.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(u, _)| u)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|u| other.contains(u))
    }

    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        self.iter().filter(|&u| other.contains(u)).count()
    }

    pub fn as_mask(&self) -> &[bool] {
        &self.mask
    }
}

/// Partition of (a subset of) the nodes into components.
///
/// Component ids are assigned in order of each component's smallest node, so
/// the "largest" component breaks ties toward the lowest node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    component_of: Vec<Option<u32>>,
    sizes: Vec<usize>,
}

impl ComponentPartition {
    /// Relabels raw component labels by first appearance in node order.
    fn canonical(raw: Vec<Option<u32>>) -> Self {
        let mut remap: Vec<Option<u32>> = Vec::new();
        let mut sizes = Vec::new();
        let mut component_of = Vec::with_capacity(raw.len());
        for label in raw {
            let id = label.map(|l| {
                let l = l as usize;
                if l >= remap.len() {
                    remap.resize(l + 1, None);
                }
                *remap[l].get_or_insert_with(|| {
                    sizes.push(0);
                    (sizes.len() - 1) as u32
                })
            });
            if let Some(id) = id {
                sizes[id as usize] += 1;
            }
            component_of.push(id);
        }
        Self {
            component_of,
            sizes,
        }
    }

    pub fn component_of(&self, u: usize) -> Option<usize> {
        self.component_of[u].map(|c| c as usize)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// Id of the largest component; ties go to the one holding the lowest node.
    pub fn largest(&self) -> Option<usize> {
        let max = *self.sizes.iter().max()?;
        self.sizes.iter().position(|&s| s == max)
    }

    pub fn largest_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn members(&self, c: usize) -> NodeSet {
        let n = self.component_of.len();
        NodeSet::from_nodes(
            n,
            (0..n).filter(|&u| self.component_of[u] == Some(c as u32)),
        )
    }

    pub fn largest_members(&self) -> NodeSet {
        match self.largest() {
            Some(c) => self.members(c),
            None => NodeSet::empty(self.component_of.len()),
        }
    }
}

/// Connected components through edges whose endpoints both pass `keep`.
/// Excluded nodes get no component.
pub fn undirected_components(
    graph: &Multigraph,
    keep: Option<&dyn Fn(usize) -> bool>,
) -> ComponentPartition {
    let n = graph.node_count();
    let kept = |u: usize| keep.is_none_or(|k| k(u));
    let mut label: Vec<Option<u32>> = vec![None; n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s].is_some() || !kept(s) {
            continue;
        }
        label[s] = Some(next);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for inc in graph.incidences(u) {
                let v = inc.neighbor as usize;
                if label[v].is_none() && kept(v) {
                    label[v] = Some(next);
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    ComponentPartition::canonical(label)
}

/// Component of `start` among kept nodes, by undirected reachability.
pub fn component_containing(
    graph: &Multigraph,
    start: usize,
    keep: &dyn Fn(usize) -> bool,
) -> NodeSet {
    let mut seen = NodeSet::empty(graph.node_count());
    if !keep(start) {
        return seen;
    }
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for inc in graph.incidences(u) {
            let v = inc.neighbor as usize;
            if keep(v) && seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Spanning directed subgraph of a multigraph: each non-loop edge copy
/// carries two independent arc bits, one per direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedOverlay<'g> {
    graph: &'g Multigraph,
    bits: Vec<u8>,
}

impl<'g> DirectedOverlay<'g> {
    /// `bits[e]` holds bit 0 for `edges[e].0 → edges[e].1` and bit 1 for the
    /// reverse arc. Bits on self-loops are rejected.
    pub fn from_bits(graph: &'g Multigraph, bits: Vec<u8>) -> Result<Self> {
        if bits.len() != graph.edge_count() {
            return Err(Error::invalid(format!(
                "expected {} presence entries, got {}",
                graph.edge_count(),
                bits.len()
            )));
        }
        for (e, &b) in bits.iter().enumerate() {
            if b & !(FORWARD | BACKWARD) != 0 || (graph.is_loop(e) && b != 0) {
                return Err(Error::invalid(format!(
                    "invalid presence bits {b:#b} on edge {e}"
                )));
            }
        }
        Ok(Self { graph, bits })
    }

    /// Overlay assembled from a per-arc decision function `(edge, forward) -> present`.
    pub fn from_fn(graph: &'g Multigraph, mut present: impl FnMut(usize, bool) -> bool) -> Self {
        let bits = (0..graph.edge_count())
            .map(|e| {
                if graph.is_loop(e) {
                    return 0;
                }
                let mut b = 0;
                if present(e, true) {
                    b |= FORWARD;
                }
                if present(e, false) {
                    b |= BACKWARD;
                }
                b
            })
            .collect();
        Self { graph, bits }
    }

    pub fn full(graph: &'g Multigraph) -> Self {
        Self::from_fn(graph, |_, _| true)
    }

    pub fn empty(graph: &'g Multigraph) -> Self {
        Self::from_fn(graph, |_, _| false)
    }

    pub fn graph(&self) -> &'g Multigraph {
        self.graph
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Whether the arc leaving the first endpoint (`forward`) or the second
    /// endpoint of edge `e` is present.
    pub fn has_arc(&self, e: usize, forward: bool) -> bool {
        self.bits[e] & if forward { FORWARD } else { BACKWARD } != 0
    }

    pub fn arc_count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Same overlay with every arc reversed.
    pub fn reversed(&self) -> Self {
        let bits = self
            .bits
            .iter()
            .map(|&b| ((b & FORWARD) << 1) | ((b & BACKWARD) >> 1))
            .collect();
        Self {
            graph: self.graph,
            bits,
        }
    }

    /// Heads of the present arcs leaving `u` (one entry per parallel copy).
    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph
            .incidences(u)
            .iter()
            .filter(|inc| self.has_arc(inc.edge as usize, inc.outgoing_is_forward))
            .map(|inc| inc.neighbor as usize)
    }

    /// Tails of the present arcs entering `u`.
    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph
            .incidences(u)
            .iter()
            .filter(|inc| self.has_arc(inc.edge as usize, !inc.outgoing_is_forward))
            .map(|inc| inc.neighbor as usize)
    }

    /// Nodes reachable from `seeds` along arcs (seeds included).
    pub fn forward_reach(&self, seeds: impl IntoIterator<Item = usize>) -> NodeSet {
        self.reach(seeds, true)
    }

    /// Nodes with a directed path into `seeds` (seeds included).
    pub fn backward_reach(&self, seeds: impl IntoIterator<Item = usize>) -> NodeSet {
        self.reach(seeds, false)
    }

    fn reach(&self, seeds: impl IntoIterator<Item = usize>, forward: bool) -> NodeSet {
        let mut seen = NodeSet::empty(self.graph.node_count());
        let mut queue = VecDeque::new();
        for s in seeds {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for inc in self.graph.incidences(u) {
                let along = if forward {
                    inc.outgoing_is_forward
                } else {
                    !inc.outgoing_is_forward
                };
                if self.has_arc(inc.edge as usize, along) {
                    let v = inc.neighbor as usize;
                    if seen.insert(v) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }
}

/// Tarjan's low-link algorithm with an explicit call stack.
pub fn strongly_connected_components(overlay: &DirectedOverlay<'_>) -> ComponentPartition {
    const UNVISITED: u32 = u32::MAX;
    let graph = overlay.graph();
    let n = graph.node_count();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut label: Vec<Option<u32>> = vec![None; n];
    let mut stack: Vec<u32> = Vec::new();
    // (node, position in its incidence list)
    let mut calls: Vec<(u32, u32)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_label = 0u32;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        calls.push((root as u32, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root as u32);
        on_stack[root] = true;

        while let Some(frame) = calls.last_mut() {
            let u = frame.0 as usize;
            let incs = graph.incidences(u);
            let mut descended = false;
            while (frame.1 as usize) < incs.len() {
                let inc = incs[frame.1 as usize];
                frame.1 += 1;
                if !overlay.has_arc(inc.edge as usize, inc.outgoing_is_forward) {
                    continue;
                }
                let v = inc.neighbor as usize;
                if index[v] == UNVISITED {
                    index[v] = next_index;
                    lowlink[v] = next_index;
                    next_index += 1;
                    stack.push(v as u32);
                    on_stack[v] = true;
                    calls.push((v as u32, 0));
                    descended = true;
                    break;
                } else if on_stack[v] {
                    lowlink[u] = lowlink[u].min(index[v]);
                }
            }
            if descended {
                continue;
            }
            calls.pop();
            if lowlink[u] == index[u] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow") as usize;
                    on_stack[w] = false;
                    label[w] = Some(next_label);
                    if w == u {
                        break;
                    }
                }
                next_label += 1;
            }
            if let Some(parent) = calls.last() {
                let p = parent.0 as usize;
                lowlink[p] = lowlink[p].min(lowlink[u]);
            }
        }
    }
    ComponentPartition::canonical(label)
}

/// In-set (nodes reaching `core`) and out-set (nodes reached from `core`),
/// both containing `core`.
pub fn in_out_components(
    overlay: &DirectedOverlay<'_>,
    core: &NodeSet,
) -> Result<(NodeSet, NodeSet)> {
    if core.is_empty() {
        return Err(Error::invalid("core set is empty"));
    }
    if core.universe() != overlay.graph().node_count() {
        return Err(Error::invalid("core set is over a different node universe"));
    }
    Ok((
        overlay.backward_reach(core.iter()),
        overlay.forward_reach(core.iter()),
    ))
}
