//! Finite hypergraphs and graphs, edge-set algebra, cycles, matchings,
//! induced subgraphs, and edge subdivision.
//!
//! A hypergraph is a triple `(E, V, ∂)` with non-empty boundaries whose union
//! covers the vertex set. Graphs are the special case where every boundary
//! has exactly two vertices; loops are forbidden, multi-edges are allowed.
//! Vertex and edge ids are strings, kept sorted; every canonical order in the
//! crate is lexicographic on ids.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Mode {
    Graph,
    Hypergraph,
}

/// Finite incidence structure. Always handled through `Arc` so that edge and
/// vertex sets can carry their ambient structure.
#[derive(Debug)]
pub struct Hypergraph {
    mode: Mode,
    vertex_ids: Vec<String>,
    edge_ids: Vec<String>,
    boundaries: Vec<Bits>,
    incidences: Vec<Bits>,
    fingerprint: u64,
}

fn fnv1a(data: impl Iterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl Hypergraph {
    /// Builds a graph: every edge must have exactly two distinct endpoints.
    pub fn graph(
        vertices: Vec<String>,
        edges: Vec<(String, Vec<String>)>,
    ) -> Result<Arc<Hypergraph>> {
        Self::build(Mode::Graph, vertices, edges)
    }

    /// Builds a general hypergraph: boundaries are arbitrary non-empty vertex sets.
    pub fn hypergraph(
        vertices: Vec<String>,
        edges: Vec<(String, Vec<String>)>,
    ) -> Result<Arc<Hypergraph>> {
        Self::build(Mode::Hypergraph, vertices, edges)
    }

    fn build(
        mode: Mode,
        mut vertices: Vec<String>,
        edges: Vec<(String, Vec<String>)>,
    ) -> Result<Arc<Hypergraph>> {
        vertices.sort();
        for pair in vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateId { id: pair[0].clone() });
            }
        }
        let mut edge_list: Vec<(String, Vec<String>)> = edges;
        edge_list.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in edge_list.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateId {
                    id: pair[0].0.clone(),
                });
            }
        }

        let vertex_index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();

        let mut boundaries = Vec::with_capacity(edge_list.len());
        let mut edge_ids = Vec::with_capacity(edge_list.len());
        for (id, ends) in &edge_list {
            if ends.is_empty() {
                return Err(Error::EmptyBoundary { edge: id.clone() });
            }
            if mode == Mode::Graph {
                if ends.len() != 2 {
                    return Err(Error::GraphArity {
                        edge: id.clone(),
                        ends: ends.len(),
                    });
                }
                if ends[0] == ends[1] {
                    return Err(Error::Loop { edge: id.clone() });
                }
            }
            let mut bits = Bits::empty(vertices.len());
            for end in ends {
                let &vi = vertex_index
                    .get(end.as_str())
                    .ok_or_else(|| Error::UnknownVertex { id: end.clone() })?;
                if bits.contains(vi) {
                    return Err(Error::DuplicateId { id: end.clone() });
                }
                bits.insert(vi);
            }
            boundaries.push(bits);
            edge_ids.push(id.clone());
        }

        let mut incidences = vec![Bits::empty(edge_ids.len()); vertices.len()];
        for (ei, b) in boundaries.iter().enumerate() {
            for vi in b.iter() {
                incidences[vi].insert(ei);
            }
        }
        for (vi, inc) in incidences.iter().enumerate() {
            if inc.is_empty() {
                return Err(Error::IsolatedVertex {
                    vertex: vertices[vi].clone(),
                });
            }
        }

        let fingerprint = {
            let mut payload: Vec<u8> = Vec::new();
            for v in &vertices {
                payload.extend_from_slice(v.as_bytes());
                payload.push(0);
            }
            payload.push(1);
            for (ei, id) in edge_ids.iter().enumerate() {
                payload.extend_from_slice(id.as_bytes());
                payload.push(0);
                for vi in boundaries[ei].iter() {
                    payload.extend_from_slice(&(vi as u32).to_le_bytes());
                }
                payload.push(2);
            }
            fnv1a(payload.into_iter())
        };

        Ok(Arc::new(Hypergraph {
            mode,
            vertex_ids: vertices,
            edge_ids,
            boundaries,
            incidences,
            fingerprint,
        }))
    }

    /// Checks the structural invariants; constructors enforce them already,
    /// so this only fails for hand-assembled inputs routed through here.
    pub fn validate(&self) -> Result<()> {
        for (ei, b) in self.boundaries.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::EmptyBoundary {
                    edge: self.edge_ids[ei].clone(),
                });
            }
            if self.mode == Mode::Graph && b.count() != 2 {
                let n = b.count();
                if n == 1 {
                    return Err(Error::Loop {
                        edge: self.edge_ids[ei].clone(),
                    });
                }
                return Err(Error::GraphArity {
                    edge: self.edge_ids[ei].clone(),
                    ends: n,
                });
            }
        }
        for (vi, inc) in self.incidences.iter().enumerate() {
            if inc.is_empty() {
                return Err(Error::IsolatedVertex {
                    vertex: self.vertex_ids[vi].clone(),
                });
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_graph(&self) -> bool {
        self.mode == Mode::Graph
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertex_ids[i]
    }

    pub fn edge_id(&self, i: usize) -> &str {
        &self.edge_ids[i]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_ids.binary_search_by(|e| e.as_str().cmp(id)).ok()
    }

    pub fn edge_vertices(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.boundaries[e].iter()
    }

    pub fn edge_degree(&self, e: usize) -> usize {
        self.boundaries[e].count()
    }

    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidences[v].iter()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub(crate) fn boundary_bits(&self, e: usize) -> &Bits {
        &self.boundaries[e]
    }

    pub(crate) fn incidence_bits(&self, v: usize) -> &Bits {
        &self.incidences[v]
    }
}

macro_rules! ambient_set {
    ($name:ident, $universe:ident, $count:ident, $id_of:ident, $index_of:ident, $unknown:ident) => {
        #[derive(Clone)]
        pub struct $name {
            graph: Arc<Hypergraph>,
            bits: Bits,
        }

        impl $name {
            pub fn empty(graph: &Arc<Hypergraph>) -> Self {
                $name {
                    graph: graph.clone(),
                    bits: Bits::empty(graph.$universe()),
                }
            }

            pub fn from_indices(
                graph: &Arc<Hypergraph>,
                indices: impl IntoIterator<Item = usize>,
            ) -> Self {
                let mut bits = Bits::empty(graph.$universe());
                for i in indices {
                    bits.insert(i);
                }
                $name {
                    graph: graph.clone(),
                    bits,
                }
            }

            pub fn from_ids<S: AsRef<str>>(
                graph: &Arc<Hypergraph>,
                ids: impl IntoIterator<Item = S>,
            ) -> Result<Self> {
                let mut bits = Bits::empty(graph.$universe());
                for id in ids {
                    let i = graph.$index_of(id.as_ref()).ok_or_else(|| Error::$unknown {
                        id: id.as_ref().to_owned(),
                    })?;
                    bits.insert(i);
                }
                Ok($name {
                    graph: graph.clone(),
                    bits,
                })
            }

            pub(crate) fn from_bits(graph: &Arc<Hypergraph>, bits: Bits) -> Self {
                $name {
                    graph: graph.clone(),
                    bits,
                }
            }

            pub fn graph(&self) -> &Arc<Hypergraph> {
                &self.graph
            }

            pub fn len(&self) -> usize {
                self.bits.count()
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_empty()
            }

            pub fn contains(&self, index: usize) -> bool {
                self.bits.contains(index)
            }

            pub fn contains_id(&self, id: &str) -> bool {
                self.graph.$index_of(id).is_some_and(|i| self.bits.contains(i))
            }

            pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
                self.bits.iter()
            }

            pub fn ids(&self) -> Vec<String> {
                self.bits
                    .iter()
                    .map(|i| self.graph.$id_of(i).to_owned())
                    .collect()
            }

            /// Canonical display form: sorted ids joined by `+`, `{}` if empty.
            pub fn id_string(&self) -> String {
                if self.bits.is_empty() {
                    "{}".to_owned()
                } else {
                    self.ids().join("+")
                }
            }

            pub fn same_ambient(&self, other: &Self) -> bool {
                self.graph.fingerprint == other.graph.fingerprint
            }

            fn check_ambient(&self, other: &Self) -> Result<()> {
                if self.same_ambient(other) {
                    Ok(())
                } else {
                    Err(Error::AmbientMismatch)
                }
            }

            pub fn union(&self, other: &Self) -> Result<Self> {
                self.check_ambient(other)?;
                Ok(Self::from_bits(&self.graph, self.bits.union(&other.bits)))
            }

            pub fn intersection(&self, other: &Self) -> Result<Self> {
                self.check_ambient(other)?;
                Ok(Self::from_bits(
                    &self.graph,
                    self.bits.intersection(&other.bits),
                ))
            }

            pub fn difference(&self, other: &Self) -> Result<Self> {
                self.check_ambient(other)?;
                Ok(Self::from_bits(
                    &self.graph,
                    self.bits.difference(&other.bits),
                ))
            }

            pub fn is_disjoint(&self, other: &Self) -> bool {
                !self.bits.intersects(&other.bits)
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.same_ambient(other) && self.bits.is_subset(&other.bits)
            }

            pub(crate) fn bits(&self) -> &Bits {
                &self.bits
            }

            pub(crate) fn min_index(&self) -> Option<usize> {
                self.bits.min_index()
            }
        }

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.graph.fingerprint == other.graph.fingerprint && self.bits == other.bits
            }
        }

        impl Eq for $name {}

        impl std::hash::Hash for $name {
            fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
                self.graph.fingerprint.hash(state);
                self.bits.hash(state);
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                self.graph
                    .fingerprint
                    .cmp(&other.graph.fingerprint)
                    .then_with(|| self.bits.cmp_indices(&other.bits))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($name), self.id_string())
            }
        }
    };
}

ambient_set!(EdgeSet, edge_count, edge_count, edge_id, edge_index, UnknownEdge);
ambient_set!(
    VertexSet,
    vertex_count,
    vertex_count,
    vertex_id,
    vertex_index,
    UnknownVertex
);

impl EdgeSet {
    /// Re-expresses this set inside another hypergraph containing the same
    /// edge ids.
    pub fn embed_into(&self, target: &Arc<Hypergraph>) -> Result<EdgeSet> {
        EdgeSet::from_ids(target, self.ids())
    }

    /// Group product in the power group `2^E`: symmetric difference.
    /// Associative, commutative, unit `∅`, and every element is its own inverse.
    pub fn sym_diff(&self, other: &EdgeSet) -> Result<EdgeSet> {
        self.check_ambient(other)?;
        Ok(EdgeSet::from_bits(&self.graph, self.bits.xor(&other.bits)))
    }

    /// `∂s`: vertices adjacent to at least one member edge.
    pub fn boundary_vertices(&self) -> VertexSet {
        let mut acc = Bits::empty(self.graph.vertex_count());
        for e in self.bits.iter() {
            acc = acc.union(self.graph.boundary_bits(e));
        }
        VertexSet::from_bits(&self.graph, acc)
    }

    /// True iff the two sets have disjoint vertex boundaries.
    pub fn independent(&self, other: &EdgeSet) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self
            .boundary_vertices()
            .is_disjoint(&other.boundary_vertices()))
    }

    pub fn all(graph: &Arc<Hypergraph>) -> EdgeSet {
        EdgeSet::from_indices(graph, 0..graph.edge_count())
    }
}

impl VertexSet {
    pub fn all(graph: &Arc<Hypergraph>) -> VertexSet {
        VertexSet::from_indices(graph, 0..graph.vertex_count())
    }
}

/// True iff every vertex of `∂s` meets exactly two member edges.
pub fn is_cyclic(s: &EdgeSet) -> bool {
    let g = s.graph();
    for v in s.boundary_vertices().indices() {
        let deg = g
            .incidence_bits(v)
            .intersection(s.bits())
            .count();
        if deg != 2 {
            return false;
        }
    }
    true
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// A minimal cyclic edge set. Even cycles carry their halves (the unique
/// alternating edge bipartition) and, when every member edge has two
/// endpoints, their v-halves (the vertex bipartition). Both pairs are ordered
/// so that the first component contains the smallest id.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cycle {
    edges: EdgeSet,
    parity: Parity,
    halves: Option<(EdgeSet, EdgeSet)>,
    vhalves: Option<(VertexSet, VertexSet)>,
}

impl Cycle {
    /// Classifies a single cycle: checks cyclicity and minimality, determines
    /// parity, and computes halves and v-halves for even cycles.
    ///
    /// Graphs take the walking fast path (parity by edge count); hypergraphs
    /// go through the exhaustive bipartition of the share-a-vertex relation,
    /// which is unique because a cycle is share-connected.
    pub fn classify(edges: &EdgeSet) -> Result<Cycle> {
        if edges.is_empty() {
            return Err(Error::NotACycle {
                set: edges.id_string(),
            });
        }
        if !is_cyclic(edges) {
            return Err(Error::NotCyclic {
                set: edges.id_string(),
            });
        }
        if !share_connected(edges) {
            return Err(Error::NotACycle {
                set: edges.id_string(),
            });
        }
        let g = edges.graph().clone();
        let members: Vec<usize> = edges.indices().collect();

        let halves = if g.is_graph() {
            // A graph cycle is even iff its length is even; halves alternate.
            if members.len() % 2 == 0 {
                Some(walk_halves(edges))
            } else {
                None
            }
        } else {
            bipartition_halves(edges)
        };
        let parity = if halves.is_some() {
            Parity::Even
        } else {
            Parity::Odd
        };

        let vhalves = if parity == Parity::Even
            && members.iter().all(|&e| g.edge_degree(e) == 2)
        {
            vertex_bipartition(edges)
        } else {
            None
        };

        let halves = halves.map(|(a, b)| {
            if a.min_index() < b.min_index() {
                (a, b)
            } else {
                (b, a)
            }
        });
        let vhalves = vhalves.map(|(a, b)| {
            if a.min_index() < b.min_index() {
                (a, b)
            } else {
                (b, a)
            }
        });

        Ok(Cycle {
            edges: edges.clone(),
            parity,
            halves,
            vhalves,
        })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn halves(&self) -> Option<(&EdgeSet, &EdgeSet)> {
        self.halves.as_ref().map(|(a, b)| (a, b))
    }

    pub fn vhalves(&self) -> Option<(&VertexSet, &VertexSet)> {
        self.vhalves.as_ref().map(|(a, b)| (a, b))
    }

    /// Canonical identifier: sorted member edge ids joined by `+`.
    pub fn id(&self) -> String {
        self.edges.id_string()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The half complementary to `half`.
    pub fn other_half(&self, half: &EdgeSet) -> Result<EdgeSet> {
        let (a, b) = self.halves.as_ref().ok_or_else(|| Error::NoHalves {
            cycle: self.id(),
        })?;
        if half == a {
            Ok(b.clone())
        } else if half == b {
            Ok(a.clone())
        } else {
            Err(Error::NotAHalf {
                half: half.id_string(),
                cycle: self.id(),
            })
        }
    }

    pub fn other_vhalf(&self, vhalf: &VertexSet) -> Result<VertexSet> {
        let (a, b) = self.vhalves.as_ref().ok_or_else(|| Error::NoVHalves {
            cycle: self.id(),
        })?;
        if vhalf == a {
            Ok(b.clone())
        } else if vhalf == b {
            Ok(a.clone())
        } else {
            Err(Error::NotAVHalf {
                half: vhalf.id_string(),
                cycle: self.id(),
            })
        }
    }

    /// True iff `s ∩ m` is one of the halves, i.e. the cycle alternates with `m`.
    pub fn is_alternating(&self, m: &EdgeSet) -> bool {
        match &self.halves {
            None => false,
            Some((a, b)) => match self.edges.intersection(m) {
                Ok(i) => &i == a || &i == b,
                Err(_) => false,
            },
        }
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges.cmp(&other.edges)
    }
}

/// Connectivity of the member edges under the share-a-vertex relation.
fn share_connected(edges: &EdgeSet) -> bool {
    let members: Vec<usize> = edges.indices().collect();
    if members.is_empty() {
        return false;
    }
    let g = edges.graph();
    let mut seen = vec![false; members.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = stack.pop() {
        for (j, seen_j) in seen.iter_mut().enumerate() {
            if !*seen_j
                && g.boundary_bits(members[i]).intersects(g.boundary_bits(members[j]))
            {
                *seen_j = true;
                reached += 1;
                stack.push(j);
            }
        }
    }
    reached == members.len()
}

/// Halves of an even graph cycle by walking around the circle.
fn walk_halves(edges: &EdgeSet) -> (EdgeSet, EdgeSet) {
    let g = edges.graph();
    let start = edges.min_index().expect("non-empty cycle");
    let mut color0 = Bits::empty(g.edge_count());
    let mut color1 = Bits::empty(g.edge_count());
    let mut current = start;
    // Enter the start edge at its smaller endpoint, leave at the other.
    let mut at = g.edge_vertices(start).nth(1).expect("graph edge");
    let mut parity = 0;
    loop {
        if parity == 0 {
            color0.insert(current);
        } else {
            color1.insert(current);
        }
        // The unique other member edge incident to `at`.
        let next = g
            .incidence_bits(at)
            .intersection(edges.bits())
            .iter()
            .find(|&e| e != current)
            .expect("cyclic set has two edges per vertex");
        if next == start {
            break;
        }
        at = g
            .edge_vertices(next)
            .find(|&v| v != at)
            .expect("graph edge has two endpoints");
        current = next;
        parity ^= 1;
    }
    (
        EdgeSet::from_bits(g, color0),
        EdgeSet::from_bits(g, color1),
    )
}

/// Halves of a hypergraph cycle: 2-coloring of the share-a-vertex relation.
/// Exists iff that relation is bipartite on the cycle; unique by connectivity.
fn bipartition_halves(edges: &EdgeSet) -> Option<(EdgeSet, EdgeSet)> {
    let g = edges.graph();
    let members: Vec<usize> = edges.indices().collect();
    let mut color: Vec<Option<u8>> = vec![None; members.len()];
    color[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ci = color[i].unwrap();
        for j in 0..members.len() {
            if j == i
                || !g
                    .boundary_bits(members[i])
                    .intersects(g.boundary_bits(members[j]))
            {
                continue;
            }
            match color[j] {
                None => {
                    color[j] = Some(ci ^ 1);
                    queue.push_back(j);
                }
                Some(cj) if cj == ci => return None,
                Some(_) => {}
            }
        }
    }
    let mut a = Bits::empty(g.edge_count());
    let mut b = Bits::empty(g.edge_count());
    for (i, &e) in members.iter().enumerate() {
        match color[i] {
            Some(0) => a.insert(e),
            _ => b.insert(e),
        }
    }
    Some((EdgeSet::from_bits(g, a), EdgeSet::from_bits(g, b)))
}

/// V-halves: 2-coloring of the cycle's vertices where every member edge joins
/// the two classes. Only defined when all member edges have two endpoints.
fn vertex_bipartition(edges: &EdgeSet) -> Option<(VertexSet, VertexSet)> {
    let g = edges.graph();
    let verts: Vec<usize> = edges.boundary_vertices().indices().collect();
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut color: Vec<Option<u8>> = vec![None; verts.len()];
    color[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ci = color[i].unwrap();
        for e in g.incidence_bits(verts[i]).intersection(edges.bits()).iter() {
            for w in g.edge_vertices(e) {
                if w == verts[i] {
                    continue;
                }
                let j = pos[&w];
                match color[j] {
                    None => {
                        color[j] = Some(ci ^ 1);
                        queue.push_back(j);
                    }
                    Some(cj) if cj == ci => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut a = Bits::empty(g.vertex_count());
    let mut b = Bits::empty(g.vertex_count());
    for (i, &v) in verts.iter().enumerate() {
        match color[i] {
            Some(0) => a.insert(v),
            _ => b.insert(v),
        }
    }
    Some((VertexSet::from_bits(g, a), VertexSet::from_bits(g, b)))
}

/// Splits a cyclic edge set into its pairwise independent cycles, ordered by
/// smallest edge id. The partition is the set of connected components of the
/// share-a-vertex relation.
pub fn decompose_cyclic(s: &EdgeSet) -> Result<Vec<Cycle>> {
    if !is_cyclic(s) {
        return Err(Error::NotCyclic {
            set: s.id_string(),
        });
    }
    let g = s.graph();
    let members: Vec<usize> = s.indices().collect();
    let mut assigned = vec![false; members.len()];
    let mut cycles = Vec::new();
    for i in 0..members.len() {
        if assigned[i] {
            continue;
        }
        let mut component = Bits::empty(g.edge_count());
        let mut stack = vec![i];
        assigned[i] = true;
        component.insert(members[i]);
        while let Some(k) = stack.pop() {
            for j in 0..members.len() {
                if !assigned[j]
                    && g.boundary_bits(members[k]).intersects(g.boundary_bits(members[j]))
                {
                    assigned[j] = true;
                    component.insert(members[j]);
                    stack.push(j);
                }
            }
        }
        cycles.push(Cycle::classify(&EdgeSet::from_bits(g, component))?);
    }
    cycles.sort();
    Ok(cycles)
}

/// A set of pairwise vertex-disjoint edges, with its cached boundary.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matching {
    edges: EdgeSet,
    boundary: VertexSet,
}

impl Matching {
    pub fn new(edges: EdgeSet) -> Result<Matching> {
        let g = edges.graph().clone();
        let members: Vec<usize> = edges.indices().collect();
        let mut seen = Bits::empty(g.vertex_count());
        for &e in &members {
            if seen.intersects(g.boundary_bits(e)) {
                // Identify a witness pair for the error message.
                for &f in &members {
                    if f != e && g.boundary_bits(f).intersects(g.boundary_bits(e)) {
                        return Err(Error::NotAMatching {
                            a: g.edge_id(f.min(e)).to_owned(),
                            b: g.edge_id(f.max(e)).to_owned(),
                        });
                    }
                }
                unreachable!("intersecting edge must exist");
            }
            seen = seen.union(g.boundary_bits(e));
        }
        let boundary = VertexSet::from_bits(&g, seen);
        Ok(Matching { edges, boundary })
    }

    pub fn from_ids<S: AsRef<str>>(
        graph: &Arc<Hypergraph>,
        ids: impl IntoIterator<Item = S>,
    ) -> Result<Matching> {
        Matching::new(EdgeSet::from_ids(graph, ids)?)
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn boundary(&self) -> &VertexSet {
        &self.boundary
    }

    pub fn graph(&self) -> &Arc<Hypergraph> {
        self.edges.graph()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Perfect iff `∂A = V`.
    pub fn is_perfect(&self) -> bool {
        self.boundary.len() == self.graph().vertex_count()
    }

    /// The unique member edge incident to `v`.
    pub fn matched_edge(&self, v: &str) -> Result<String> {
        let vi = self
            .graph()
            .vertex_index(v)
            .ok_or_else(|| Error::UnknownVertex { id: v.to_owned() })?;
        self.matched_edge_index(vi)
            .map(|e| self.graph().edge_id(e).to_owned())
            .ok_or_else(|| Error::Uncovered {
                vertex: v.to_owned(),
            })
    }

    pub fn matched_edge_index(&self, v: usize) -> Option<usize> {
        if !self.boundary.contains(v) {
            return None;
        }
        self.graph()
            .incidence_bits(v)
            .intersection(self.edges.bits())
            .min_index()
    }

    pub fn id_string(&self) -> String {
        self.edges.id_string()
    }
}

impl PartialOrd for Matching {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matching {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges.cmp(&other.edges)
    }
}

/// All perfect matchings, deduplicated, in canonical order (lex on sorted
/// edge ids). Backtracking over vertices in id order: the smallest uncovered
/// vertex must be covered by exactly one edge, so each matching is produced
/// once.
pub fn enumerate_perfect_matchings(graph: &Arc<Hypergraph>) -> Vec<Matching> {
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut covered = Bits::empty(graph.vertex_count());
    fn recurse(
        graph: &Arc<Hypergraph>,
        covered: &mut Bits,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Matching>,
        stop_at_first: bool,
    ) -> bool {
        let next = (0..graph.vertex_count()).find(|&v| !covered.contains(v));
        let Some(v) = next else {
            out.push(
                Matching::new(EdgeSet::from_indices(graph, chosen.iter().copied()))
                    .expect("disjointness maintained by construction"),
            );
            return stop_at_first;
        };
        let candidates: Vec<usize> = graph.incidence_bits(v).iter().collect();
        for e in candidates {
            if graph.boundary_bits(e).intersects(covered) {
                continue;
            }
            let saved = covered.clone();
            *covered = covered.union(graph.boundary_bits(e));
            chosen.push(e);
            let done = recurse(graph, covered, chosen, out, stop_at_first);
            chosen.pop();
            *covered = saved;
            if done {
                return true;
            }
        }
        false
    }
    recurse(graph, &mut covered, &mut chosen, &mut out, false);
    out.sort();
    out
}

/// Early-exit variant used by the census.
pub fn has_perfect_matching(graph: &Arc<Hypergraph>) -> bool {
    fn recurse(graph: &Arc<Hypergraph>, covered: &mut Bits) -> bool {
        let next = (0..graph.vertex_count()).find(|&v| !covered.contains(v));
        let Some(v) = next else {
            return true;
        };
        let candidates: Vec<usize> = graph.incidence_bits(v).iter().collect();
        for e in candidates {
            if graph.boundary_bits(e).intersects(covered) {
                continue;
            }
            let saved = covered.clone();
            *covered = covered.union(graph.boundary_bits(e));
            if recurse(graph, covered) {
                return true;
            }
            *covered = saved;
        }
        false
    }
    recurse(graph, &mut Bits::empty(graph.vertex_count()))
}

/// `Γ_A`: the subhypergraph with `V_A = ∂A` and `E_A = {e : ∂e ⊆ V_A}`,
/// together with `A` viewed inside it (where it is perfect).
pub fn induced_subhypergraph(a: &Matching) -> (Arc<Hypergraph>, Matching) {
    let g = a.graph();
    let vertex_ids: Vec<String> = a.boundary().ids();
    let mut edges = Vec::new();
    for e in 0..g.edge_count() {
        if g.boundary_bits(e).is_subset(a.boundary().bits()) {
            edges.push((
                g.edge_id(e).to_owned(),
                g.edge_vertices(e).map(|v| g.vertex_id(v).to_owned()).collect(),
            ));
        }
    }
    let sub = match g.mode() {
        Mode::Graph => Hypergraph::graph(vertex_ids, edges),
        Mode::Hypergraph => Hypergraph::hypergraph(vertex_ids, edges),
    }
    .expect("induced subhypergraph of a matching is well-formed");
    let ap = Matching::from_ids(&sub, a.edges().ids())
        .expect("matching stays a matching in the induced subhypergraph");
    (sub, ap)
}

/// Result of subdividing graph edges: each edge `e` with count `n(e)` becomes
/// a path of `2n(e)+1` sub-edges. Matched edges induce the odd positions,
/// unmatched edges the even positions, which realizes the canonical bijection
/// between the perfect matchings (and even cycles) of the two graphs.
#[derive(Clone, Debug)]
pub struct Subdivision {
    original: Arc<Hypergraph>,
    subdivided: Arc<Hypergraph>,
    matching: Matching,
    /// Per original edge: subdivided edge indices by position (1-based
    /// positions stored from index 0).
    positions: Vec<Vec<usize>>,
    total: u32,
}

pub fn subdivide(
    graph: &Arc<Hypergraph>,
    counts: &BTreeMap<String, u32>,
    matching: &Matching,
) -> Result<Subdivision> {
    if !graph.is_graph() {
        return Err(Error::GraphOnly);
    }
    if !matching.edges().graph().same_ambient_graph(graph) {
        return Err(Error::AmbientMismatch);
    }
    let mut per_edge = vec![0u32; graph.edge_count()];
    for (id, &k) in counts {
        let e = graph
            .edge_index(id)
            .ok_or_else(|| Error::UnknownEdge { id: id.clone() })?;
        per_edge[e] = k;
    }
    let total: u32 = per_edge.iter().sum();

    let mut vertices: Vec<String> = graph.vertex_ids().to_vec();
    let mut edges: Vec<(String, Vec<String>)> = Vec::new();
    let mut sub_ids: Vec<Vec<String>> = vec![Vec::new(); graph.edge_count()];

    for e in 0..graph.edge_count() {
        let id = graph.edge_id(e);
        let k = per_edge[e];
        if k == 0 {
            sub_ids[e].push(id.to_owned());
            edges.push((
                id.to_owned(),
                graph.edge_vertices(e).map(|v| graph.vertex_id(v).to_owned()).collect(),
            ));
            continue;
        }
        let ends: Vec<usize> = graph.edge_vertices(e).collect();
        let (u, w) = (graph.vertex_id(ends[0]), graph.vertex_id(ends[1]));
        let mut nodes = vec![u.to_owned()];
        for j in 1..=2 * k {
            let nv = format!("{id}:{j}");
            if graph.vertex_index(&nv).is_some() {
                return Err(Error::DuplicateId { id: nv });
            }
            nodes.push(nv.clone());
            vertices.push(nv);
        }
        nodes.push(w.to_owned());
        for i in 1..=2 * k + 1 {
            let se = format!("{id}.{i}");
            if graph.edge_index(&se).is_some() {
                return Err(Error::DuplicateId { id: se });
            }
            sub_ids[e].push(se.clone());
            edges.push((se, vec![nodes[(i - 1) as usize].clone(), nodes[i as usize].clone()]));
        }
    }

    let subdivided = Hypergraph::graph(vertices, edges)?;
    let positions: Vec<Vec<usize>> = sub_ids
        .iter()
        .map(|ids| {
            ids.iter()
                .map(|id| subdivided.edge_index(id).expect("sub-edge id exists"))
                .collect()
        })
        .collect();

    let mut sub = Subdivision {
        original: graph.clone(),
        subdivided,
        matching: Matching::new(EdgeSet::empty(graph))?, // placeholder
        positions,
        total,
    };
    sub.matching = sub.transport_matching(matching);
    Ok(sub)
}

impl Hypergraph {
    fn same_ambient_graph(&self, other: &Arc<Hypergraph>) -> bool {
        self.fingerprint == other.fingerprint
    }
}

impl Subdivision {
    pub fn original(&self) -> &Arc<Hypergraph> {
        &self.original
    }

    pub fn subdivided(&self) -> &Arc<Hypergraph> {
        &self.subdivided
    }

    /// The matching `A_n` induced by the matching passed to `subdivide`;
    /// `card(A_n) = card(A) + |n|`.
    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    /// `|n|`: the total of the subdivision counts.
    pub fn total(&self) -> u32 {
        self.total
    }

    /// Sub-edges of an original edge, ordered by position `1..=2n(e)+1`.
    pub fn position_edges(&self, original_edge: usize) -> &[usize] {
        &self.positions[original_edge]
    }

    /// Transports any matching through the canonical bijection: matched edges
    /// map to their odd positions, unmatched ones to their even positions.
    pub fn transport_matching(&self, m: &Matching) -> Matching {
        let mut indices = Vec::new();
        for e in 0..self.original.edge_count() {
            let slots = &self.positions[e];
            if m.edges().contains(e) {
                for (i, &se) in slots.iter().enumerate() {
                    if i % 2 == 0 {
                        indices.push(se);
                    }
                }
            } else {
                for (i, &se) in slots.iter().enumerate() {
                    if i % 2 == 1 {
                        indices.push(se);
                    }
                }
            }
        }
        Matching::new(EdgeSet::from_indices(&self.subdivided, indices))
            .expect("transported matching stays a matching")
    }

    /// The cycle of the subdivided graph formed by all sub-edges of the
    /// members of `c`.
    pub fn transport_cycle(&self, c: &Cycle) -> Cycle {
        let mut indices = Vec::new();
        for e in c.edges().indices() {
            indices.extend_from_slice(&self.positions[e]);
        }
        Cycle::classify(&EdgeSet::from_indices(&self.subdivided, indices))
            .expect("subdivided cycle stays a cycle")
    }

    /// Transports a distinguished v-half: the v-half of the subdivided cycle
    /// containing the original one.
    pub fn transport_v_half(&self, c: &Cycle, v_half: &VertexSet) -> Result<VertexSet> {
        let tc = self.transport_cycle(c);
        let (a, b) = tc.vhalves().ok_or_else(|| Error::NoVHalves { cycle: tc.id() })?;
        let original_ids = v_half.ids();
        let inside = |h: &VertexSet| original_ids.iter().all(|id| h.contains_id(id));
        if inside(a) {
            Ok(a.clone())
        } else if inside(b) {
            Ok(b.clone())
        } else {
            Err(Error::NotAVHalf {
                half: v_half.id_string(),
                cycle: tc.id(),
            })
        }
    }
}
