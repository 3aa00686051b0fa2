//! The evaluation map `ω` from cube points to edge labelings, dimer
//! labelings, inversion of `ω`, classification of labelings by their odd
//! support cycles, and the component census. Exact rational arithmetic
//! throughout: the injectivity of `ω` and the 1/2-threshold case analysis
//! are exact statements.

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::incidence::{
    decompose_cyclic, has_perfect_matching, is_cyclic, Cycle, EdgeSet, Hypergraph, Matching,
    Mode, VertexSet,
};

pub type Rat = Rational64;

/// A point of the glide complex: a based cube plus exact coordinates in
/// `[0,1]` per direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubePoint {
    base: EdgeSet,
    directions: Vec<Cycle>,
    coords: Vec<Rat>,
}

impl CubePoint {
    pub fn new(base: EdgeSet, directions: Vec<Cycle>, coords: Vec<Rat>) -> Result<CubePoint> {
        if directions.len() != coords.len() {
            return Err(Error::Invalid(
                "one coordinate per direction is required".into(),
            ));
        }
        let mut paired: Vec<(Cycle, Rat)> =
            directions.into_iter().zip(coords).collect();
        paired.sort_by(|a, b| a.0.cmp(&b.0));
        for w in paired.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Invalid(format!(
                    "duplicate direction {}",
                    w[0].0.id()
                )));
            }
            if !w[0]
                .0
                .edges()
                .independent(w[1].0.edges())
                .unwrap_or(false)
            {
                return Err(Error::Invalid(format!(
                    "directions {} and {} are not independent",
                    w[0].0.id(),
                    w[1].0.id()
                )));
            }
        }
        for (c, x) in &paired {
            if *x < Rat::zero() || *x > Rat::one() {
                return Err(Error::Invalid(format!(
                    "coordinate {x} of {} outside [0,1]",
                    c.id()
                )));
            }
            if !c.is_even() {
                return Err(Error::NoHalves { cycle: c.id() });
            }
        }
        let (directions, coords) = paired.into_iter().unzip();
        Ok(CubePoint {
            base,
            directions,
            coords,
        })
    }

    pub fn vertex(base: EdgeSet) -> CubePoint {
        CubePoint {
            base,
            directions: Vec::new(),
            coords: Vec::new(),
        }
    }

    pub fn base(&self) -> &EdgeSet {
        &self.base
    }

    pub fn directions(&self) -> &[Cycle] {
        &self.directions
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// The `2^k` subset translates of the base.
    pub fn cube_vertices(&self) -> Vec<EdgeSet> {
        let k = self.directions.len();
        (0u32..(1 << k))
            .map(|mask| {
                let mut v = self.base.clone();
                for (i, c) in self.directions.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        v = v.sym_diff(c.edges()).expect("same ambient");
                    }
                }
                v
            })
            .collect()
    }

    /// True iff every subset translate lies in the given 0-cell set.
    pub fn lies_in(&self, cells: &HashSet<EdgeSet>) -> bool {
        self.cube_vertices().iter().all(|v| cells.contains(v))
    }

    /// Canonical representative of the point under the cube identifications:
    /// coordinates `0` collapse to a face, coordinates `1` glide the base,
    /// and the result is rebased at the lex-least vertex (flipping the moved
    /// coordinates).
    pub fn canonicalize(&self) -> CubePoint {
        let mut base = self.base.clone();
        let mut dirs: Vec<(Cycle, Rat)> = Vec::new();
        for (c, x) in self.directions.iter().zip(&self.coords) {
            if x.is_zero() {
                continue;
            }
            if x.is_one() {
                base = base.sym_diff(c.edges()).expect("ambient");
                continue;
            }
            dirs.push((c.clone(), *x));
        }
        // Rebase at the minimum vertex of the remaining cube.
        let k = dirs.len();
        let mut best_mask = 0u32;
        let mut best = base.clone();
        for mask in 1u32..(1 << k) {
            let mut v = base.clone();
            for (i, (c, _)) in dirs.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v = v.sym_diff(c.edges()).expect("ambient");
                }
            }
            if v < best {
                best = v;
                best_mask = mask;
            }
        }
        let (directions, coords) = dirs
            .into_iter()
            .enumerate()
            .map(|(i, (c, x))| {
                if best_mask & (1 << i) != 0 {
                    (c, Rat::one() - x)
                } else {
                    (c, x)
                }
            })
            .unzip();
        CubePoint {
            base: best,
            directions,
            coords,
        }
    }
}

/// An exact edge labeling of a hypergraph.
#[derive(Clone, Debug)]
pub struct Labeling {
    graph: Arc<Hypergraph>,
    values: Vec<Rat>,
}

impl PartialEq for Labeling {
    fn eq(&self, other: &Self) -> bool {
        self.graph.fingerprint() == other.graph.fingerprint() && self.values == other.values
    }
}

impl Eq for Labeling {}

impl Labeling {
    pub fn new(graph: &Arc<Hypergraph>, values: Vec<Rat>) -> Result<Labeling> {
        if values.len() != graph.edge_count() {
            return Err(Error::Invalid(format!(
                "expected {} labels, got {}",
                graph.edge_count(),
                values.len()
            )));
        }
        Ok(Labeling {
            graph: graph.clone(),
            values,
        })
    }

    pub fn graph(&self) -> &Arc<Hypergraph> {
        &self.graph
    }

    pub fn value(&self, edge: usize) -> Rat {
        self.values[edge]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Edges with label strictly between 0 and 1.
    pub fn fractional_support(&self) -> EdgeSet {
        EdgeSet::from_indices(
            &self.graph,
            (0..self.values.len())
                .filter(|&e| self.values[e] > Rat::zero() && self.values[e] < Rat::one()),
        )
    }
}

/// The evaluation map (exact): `ω(a)(e) = δ_A(e)` off the directions,
/// `x(s)` on `s ∖ A`, and `1 − x(s)` on `s ∩ A`.
pub fn omega(p: &CubePoint) -> Labeling {
    let graph = p.base().graph().clone();
    let mut values = vec![Rat::zero(); graph.edge_count()];
    for e in 0..graph.edge_count() {
        if p.base().contains(e) {
            values[e] = Rat::one();
        }
    }
    for (c, x) in p.directions().iter().zip(p.coords()) {
        for e in c.edges().indices() {
            values[e] = if p.base().contains(e) {
                Rat::one() - x
            } else {
                *x
            };
        }
    }
    Labeling { graph, values }
}

/// Per-vertex dimer condition: among the incident edges, one or two labels
/// are non-zero and they sum to one.
pub fn is_dimer_labeling(l: &Labeling) -> bool {
    validate_dimer_labeling(l).is_ok()
}

pub fn validate_dimer_labeling(l: &Labeling) -> Result<()> {
    let g = &l.graph;
    for v in 0..g.vertex_count() {
        let nonzero: Vec<usize> = g
            .incident_edges(v)
            .filter(|&e| !l.values[e].is_zero())
            .collect();
        let sum: Rat = nonzero.iter().map(|&e| l.values[e]).sum();
        if nonzero.is_empty() || nonzero.len() > 2 || !sum.is_one() {
            return Err(Error::NotDimerLabeling {
                vertex: g.vertex_id(v).to_owned(),
                nonzero: nonzero.len(),
                sum: sum.to_string(),
            });
        }
    }
    Ok(())
}

/// Inverts `ω` on the perfect-matching component: decomposes the fractional
/// support into cycles (all must be even), picks per cycle the half where
/// the label is at least 1/2 (ties to the half with the smallest edge id),
/// and rebuilds the cube point.
pub fn omega_inverse(l: &Labeling) -> Result<CubePoint> {
    validate_dimer_labeling(l)?;
    let support = l.fractional_support();
    debug_assert!(is_cyclic(&support), "dimer labelings have cyclic support");
    let cycles = decompose_cyclic(&support)?;
    let mut directions = Vec::new();
    let mut coords = Vec::new();
    let mut base_indices: Vec<usize> =
        (0..l.values.len()).filter(|&e| l.values[e].is_one()).collect();
    let half = Rat::new(1, 2);
    for c in cycles {
        if !c.is_even() {
            return Err(Error::OddCycleInSupport { cycle: c.id() });
        }
        let (h0, h1) = c.halves().expect("even");
        let v0 = l.values[h0.min_index().expect("non-empty half")];
        let v1 = l.values[h1.min_index().expect("non-empty half")];
        for h in [h0, h1] {
            let val = l.values[h.min_index().unwrap()];
            for e in h.indices() {
                if l.values[e] != val {
                    return Err(Error::BadResidual {
                        reason: format!(
                            "labels are not constant on a half of cycle {}",
                            c.id()
                        ),
                    });
                }
            }
        }
        if v0 + v1 != Rat::one() {
            return Err(Error::BadResidual {
                reason: format!("half labels of cycle {} do not sum to 1", c.id()),
            });
        }
        // Distinguished half: label >= 1/2; at a tie both are 1/2 and the
        // first half (smallest edge id) is taken.
        let (chosen, value) = if v0 >= half { (h0, v0) } else { (h1, v1) };
        base_indices.extend(chosen.indices());
        coords.push(Rat::one() - value);
        directions.push(c.clone());
    }
    let base = EdgeSet::from_indices(&l.graph, base_indices);
    let matching = Matching::new(base.clone()).map_err(|e| Error::BadResidual {
        reason: format!("reconstructed base is not a matching: {e}"),
    })?;
    if !matching.is_perfect() {
        return Err(Error::BadResidual {
            reason: "reconstructed base is not a perfect matching".into(),
        });
    }
    CubePoint::new(base, directions, coords)
}

/// The classification of a dimer labeling: the set `C` of odd cycles in its
/// support (all at 1/2), the subgraph `Γ^C` outside them, and the residual
/// cube point there.
#[derive(Clone, Debug)]
pub struct LabelingClass {
    pub odd_cycles: Vec<Cycle>,
    pub residual_graph: Arc<Hypergraph>,
    pub residual: CubePoint,
}

pub fn classify_labeling(l: &Labeling) -> Result<LabelingClass> {
    validate_dimer_labeling(l)?;
    let support = l.fractional_support();
    let cycles = decompose_cyclic(&support)?;
    let half = Rat::new(1, 2);
    let mut odd_cycles = Vec::new();
    for c in &cycles {
        if !c.is_even() {
            for e in c.edges().indices() {
                if l.values[e] != half {
                    return Err(Error::BadResidual {
                        reason: format!("odd cycle {} is not labeled 1/2", c.id()),
                    });
                }
            }
            odd_cycles.push(c.clone());
        }
    }
    let deleted: VertexSet = odd_cycles
        .iter()
        .fold(VertexSet::empty(&l.graph), |acc, c| {
            acc.union(&c.edges().boundary_vertices()).expect("ambient")
        });
    let (residual_graph, kept_edges) = delete_vertices(&l.graph, &deleted)?;
    let values: Vec<Rat> = kept_edges.iter().map(|&e| l.values[e]).collect();
    let residual_labeling = Labeling::new(&residual_graph, values)?;
    let residual = if residual_graph.vertex_count() == 0 {
        CubePoint::vertex(EdgeSet::empty(&residual_graph))
    } else {
        omega_inverse(&residual_labeling)?
    };
    Ok(LabelingClass {
        odd_cycles,
        residual_graph,
        residual,
    })
}

/// `Γ^C`: deletes a vertex set and all incident edges. Also returns the kept
/// edge indices (in order). Errors if a surviving vertex becomes isolated.
fn delete_vertices(
    graph: &Arc<Hypergraph>,
    deleted: &VertexSet,
) -> Result<(Arc<Hypergraph>, Vec<usize>)> {
    let kept_edges: Vec<usize> = (0..graph.edge_count())
        .filter(|&e| {
            graph
                .edge_vertices(e)
                .all(|v| !deleted.contains(v))
        })
        .collect();
    let kept_vertices: Vec<String> = (0..graph.vertex_count())
        .filter(|&v| !deleted.contains(v))
        .map(|v| graph.vertex_id(v).to_owned())
        .collect();
    let edges: Vec<(String, Vec<String>)> = kept_edges
        .iter()
        .map(|&e| {
            (
                graph.edge_id(e).to_owned(),
                graph
                    .edge_vertices(e)
                    .map(|v| graph.vertex_id(v).to_owned())
                    .collect(),
            )
        })
        .collect();
    let sub = match graph.mode() {
        Mode::Graph => Hypergraph::graph(kept_vertices, edges),
        Mode::Hypergraph => Hypergraph::hypergraph(kept_vertices, edges),
    }?;
    Ok((sub, kept_edges))
}

/// All simple odd cycles of the hypergraph. Graphs are searched by DFS over
/// simple paths; hypergraphs by bounded subset search.
pub fn odd_cycles(graph: &Arc<Hypergraph>) -> Result<Vec<Cycle>> {
    if graph.is_graph() {
        Ok(odd_cycles_graph(graph))
    } else {
        const LIMIT: usize = 22;
        if graph.edge_count() > LIMIT {
            return Err(Error::TooLarge {
                edges: graph.edge_count(),
                limit: LIMIT,
            });
        }
        let mut out = Vec::new();
        for mask in 1u64..(1 << graph.edge_count()) {
            let set = EdgeSet::from_indices(
                graph,
                (0..graph.edge_count()).filter(|i| mask & (1 << i) != 0),
            );
            if let Ok(c) = Cycle::classify(&set) {
                if !c.is_even() {
                    out.push(c);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

fn odd_cycles_graph(graph: &Arc<Hypergraph>) -> Vec<Cycle> {
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let n = graph.vertex_count();
    // DFS from each start vertex, visiting only vertices >= start, so every
    // cycle is found from its smallest vertex.
    for start in 0..n {
        let mut path_edges: Vec<usize> = Vec::new();
        let mut visited = vec![false; n];
        visited[start] = true;
        dfs_cycles(
            graph,
            start,
            start,
            &mut visited,
            &mut path_edges,
            &mut found,
            &mut out,
        );
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycles(
    graph: &Arc<Hypergraph>,
    start: usize,
    at: usize,
    visited: &mut Vec<bool>,
    path_edges: &mut Vec<usize>,
    found: &mut HashSet<Vec<usize>>,
    out: &mut Vec<Cycle>,
) {
    let incident: Vec<usize> = graph.incident_edges(at).collect();
    for e in incident {
        if path_edges.contains(&e) {
            continue;
        }
        let w = graph
            .edge_vertices(e)
            .find(|&v| v != at)
            .expect("graph edge");
        if w == start && !path_edges.is_empty() {
            let mut cycle_edges: Vec<usize> = path_edges.clone();
            cycle_edges.push(e);
            cycle_edges.sort_unstable();
            if found.insert(cycle_edges.clone()) {
                let set = EdgeSet::from_indices(graph, cycle_edges);
                if let Ok(c) = Cycle::classify(&set) {
                    if !c.is_even() {
                        out.push(c);
                    }
                }
            }
            continue;
        }
        if w <= start || visited[w] {
            continue;
        }
        visited[w] = true;
        path_edges.push(e);
        dfs_cycles(graph, start, w, visited, path_edges, found, out);
        path_edges.pop();
        visited[w] = false;
    }
}

/// The component census: all sets `C` of pairwise independent odd cycles
/// such that `Γ^C` is empty or admits a perfect matching. Each `C` indexes
/// one connected component of the space of dimer labelings.
pub fn component_census(graph: &Arc<Hypergraph>) -> Result<Vec<Vec<Cycle>>> {
    let all_odd = odd_cycles(graph)?;
    let mut out: Vec<Vec<Cycle>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    census_recurse(graph, &all_odd, &mut chosen, 0, &mut out);
    out.sort_by(|a, b| {
        a.iter()
            .map(Cycle::id)
            .collect::<Vec<_>>()
            .cmp(&b.iter().map(Cycle::id).collect::<Vec<_>>())
    });
    Ok(out)
}

fn census_recurse(
    graph: &Arc<Hypergraph>,
    all_odd: &[Cycle],
    chosen: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<Vec<Cycle>>,
) {
    let c: Vec<Cycle> = chosen.iter().map(|&i| all_odd[i].clone()).collect();
    if census_admissible(graph, &c) {
        out.push(c);
    }
    for next in from..all_odd.len() {
        let ok = chosen.iter().all(|&i| {
            all_odd[i]
                .edges()
                .independent(all_odd[next].edges())
                .unwrap_or(false)
        });
        if ok {
            chosen.push(next);
            census_recurse(graph, all_odd, chosen, next + 1, out);
            chosen.pop();
        }
    }
}

fn census_admissible(graph: &Arc<Hypergraph>, c: &[Cycle]) -> bool {
    let deleted = c.iter().fold(VertexSet::empty(graph), |acc, cy| {
        acc.union(&cy.edges().boundary_vertices()).expect("ambient")
    });
    if deleted.len() == graph.vertex_count() {
        // C covers every vertex: the single labeling 1/2 on C, 0 elsewhere.
        return true;
    }
    match delete_vertices(graph, &deleted) {
        Err(_) => false, // isolated survivor: no dimer labeling there
        Ok((sub, _)) => has_perfect_matching(&sub),
    }
}

/// The labeling that is 1/2 on the cycles of `C`, the characteristic
/// function of `m` on `Γ^C`, and 0 elsewhere. Used by the census tests.
pub fn extend_labeling(
    graph: &Arc<Hypergraph>,
    c: &[Cycle],
    residual: Option<&Matching>,
) -> Labeling {
    let half = Rat::new(1, 2);
    let mut values = vec![Rat::zero(); graph.edge_count()];
    for cy in c {
        for e in cy.edges().indices() {
            values[e] = half;
        }
    }
    if let Some(m) = residual {
        for id in m.edges().ids() {
            let e = graph.edge_index(&id).expect("residual edge id exists");
            values[e] = Rat::one();
        }
    }
    Labeling {
        graph: graph.clone(),
        values,
    }
}
