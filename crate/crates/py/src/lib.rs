//! Python bindings: a `Graph` class exposing matchings, the dimer complex,
//! curvature verdicts, dimer-group presentations, braid-shadow permutations,
//! dimer labelings, and the component census.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use glidecube_core::io;
use glidecube_core::{
    abelianization_rank, bipartite_v_orientation, build_complex, classify_labeling,
    component_census, dimer_cells, dimer_presentation, enumerate_perfect_matchings,
    generator_loops, nonpositively_curved, omega, omega_inverse, orient, sigma_theta,
    sigma_theta_n, tietze_simplify, CubeComplex, CubePoint, Cycle, EdgePath, EdgeSet,
    Hypergraph, Matching, Mode, Orientation, VOrientation, VertexSet,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite graph or hypergraph with string vertex and edge ids.
#[pyclass]
struct Graph {
    inner: Arc<Hypergraph>,
}

impl Graph {
    fn cycle(&self, id: &str) -> PyResult<Cycle> {
        let ids: Vec<&str> = id.split('+').collect();
        let edges = EdgeSet::from_ids(&self.inner, ids).map_err(err)?;
        Cycle::classify(&edges).map_err(err)
    }

    fn v_orientation(&self, v_halves: Option<BTreeMap<String, Vec<String>>>) -> PyResult<VOrientation> {
        let mut vo = VOrientation::new();
        if let Some(entries) = v_halves {
            for (cycle_id, vertex_ids) in entries {
                let cycle = self.cycle(&cycle_id)?;
                let v_half =
                    VertexSet::from_ids(&self.inner, vertex_ids.iter()).map_err(err)?;
                vo.set_v_half(&cycle, &v_half).map_err(err)?;
            }
        }
        Ok(vo)
    }

    fn loop_path(&self, base: Vec<String>, cycles: Vec<String>) -> PyResult<EdgePath> {
        let base = EdgeSet::from_ids(&self.inner, base.iter()).map_err(err)?;
        let mut steps = Vec::new();
        for id in cycles {
            steps.push((self.cycle(&id)?, 1));
        }
        EdgePath::new(base, steps).map_err(err)
    }

    fn complex(&self) -> CubeComplex {
        let (sys, d) = dimer_cells(&self.inner);
        build_complex(&d, &sys)
    }
}

#[pymethods]
impl Graph {
    /// Build from vertex ids and edges [(id, [end, ...]), ...].
    #[new]
    #[pyo3(signature = (vertices, edges, hypergraph=false))]
    fn new(
        vertices: Vec<String>,
        edges: Vec<(String, Vec<String>)>,
        hypergraph: bool,
    ) -> PyResult<Self> {
        let inner = if hypergraph {
            Hypergraph::hypergraph(vertices, edges)
        } else {
            Hypergraph::graph(vertices, edges)
        }
        .map_err(err)?;
        Ok(Graph { inner })
    }

    /// Build from the JSON input format shared with the CLI.
    #[staticmethod]
    #[pyo3(signature = (text, hypergraph=false))]
    fn from_json(text: &str, hypergraph: bool) -> PyResult<Self> {
        let mode = if hypergraph {
            Mode::Hypergraph
        } else {
            Mode::Graph
        };
        Ok(Graph {
            inner: io::read_hypergraph(text, mode).map_err(err)?,
        })
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertex_ids().to_vec()
    }

    fn edges(&self) -> Vec<String> {
        self.inner.edge_ids().to_vec()
    }

    /// Perfect matchings in canonical order, each a sorted list of edge ids.
    fn perfect_matchings(&self) -> Vec<Vec<String>> {
        enumerate_perfect_matchings(&self.inner)
            .iter()
            .map(|m| m.edges().ids())
            .collect()
    }

    /// Summary of the dimer complex:
    /// (vertex count, cube counts by dimension, components, euler characteristic).
    fn complex_summary(&self) -> (usize, Vec<usize>, usize, i64) {
        let x = self.complex();
        let dims = (0..=x.dimension())
            .map(|k| x.cubes_of_dim(k).count())
            .collect();
        (
            x.vertices().len(),
            dims,
            x.components().len(),
            x.euler_characteristic(),
        )
    }

    /// Full dimer complex export in the CLI JSON schema.
    fn complex_json(&self) -> String {
        io::complex_to_json(&self.complex()).to_string()
    }

    /// Curvature verdict (regular, cube_condition, npc).
    fn curvature(&self) -> (bool, bool, bool) {
        let (sys, d) = dimer_cells(&self.inner);
        let v = nonpositively_curved(&d, &sys);
        (v.regular, v.cube_condition, v.npc)
    }

    /// Dimer-group presentation at a basepoint (default: first matching).
    /// Returns a dict with generators, relators, simplified generators and
    /// relators, abelianization rank, and torsion.
    #[pyo3(signature = (basepoint=None))]
    fn presentation(
        &self,
        py: Python<'_>,
        basepoint: Option<Vec<String>>,
    ) -> PyResult<Py<pyo3::types::PyDict>> {
        let base = match basepoint {
            Some(ids) => Matching::from_ids(&self.inner, ids.iter()).map_err(err)?,
            None => enumerate_perfect_matchings(&self.inner)
                .into_iter()
                .next()
                .ok_or_else(|| err("the graph has no perfect matching"))?,
        };
        let dp = dimer_presentation(&self.inner, &base).map_err(err)?;
        let simplified = tietze_simplify(&dp.presentation, 100_000);
        let inv = abelianization_rank(&dp.presentation);
        let out = pyo3::types::PyDict::new(py);
        out.set_item("basepoint", base.edges().ids())?;
        out.set_item("generators", dp.presentation.generators.clone())?;
        out.set_item(
            "relators",
            dp.presentation
                .relators
                .iter()
                .map(|r| io::word_to_text(r, &dp.presentation.generators))
                .collect::<Vec<_>>(),
        )?;
        out.set_item("simplified_generators", simplified.generators.clone())?;
        out.set_item(
            "simplified_relators",
            simplified
                .relators
                .iter()
                .map(|r| io::word_to_text(r, &simplified.generators))
                .collect::<Vec<_>>(),
        )?;
        out.set_item("rank", inv.rank)?;
        out.set_item("torsion", inv.torsion.clone())?;
        Ok(out.unbind())
    }

    /// Abelianization of the dimer group: (free rank, torsion divisors).
    fn abelianization(&self) -> PyResult<(usize, Vec<u64>)> {
        let base = enumerate_perfect_matchings(&self.inner)
            .into_iter()
            .next()
            .ok_or_else(|| err("the graph has no perfect matching"))?;
        let dp = dimer_presentation(&self.inner, &base).map_err(err)?;
        let inv = abelianization_rank(&dp.presentation);
        Ok((inv.rank, inv.torsion))
    }

    /// Spanning-tree generator loops of the dimer complex at a basepoint,
    /// each as a list of cycle ids.
    #[pyo3(signature = (basepoint=None))]
    fn braid_generators(&self, basepoint: Option<Vec<String>>) -> PyResult<Vec<Vec<String>>> {
        let base = match basepoint {
            Some(ids) => EdgeSet::from_ids(&self.inner, ids.iter()).map_err(err)?,
            None => enumerate_perfect_matchings(&self.inner)
                .into_iter()
                .next()
                .ok_or_else(|| err("the graph has no perfect matching"))?
                .edges()
                .clone(),
        };
        let x = self.complex();
        Ok(generator_loops(&x, &base)
            .map_err(err)?
            .iter()
            .map(|p| p.steps().iter().map(|(c, _)| c.id()).collect())
            .collect())
    }

    /// One-line permutation of the mark-transport homomorphism on a loop.
    /// `v_halves` maps cycle ids ("e1+e2+...") to distinguished vertex lists;
    /// missing cycles use the bipartite part if `bipartite` is set, else the
    /// smallest-id v-half. `subdivide` maps edge ids to counts.
    #[pyo3(signature = (base, cycles, v_halves=None, bipartite=false, subdivide=None))]
    fn sigma_theta(
        &self,
        base: Vec<String>,
        cycles: Vec<String>,
        v_halves: Option<BTreeMap<String, Vec<String>>>,
        bipartite: bool,
        subdivide: Option<BTreeMap<String, u32>>,
    ) -> PyResult<Vec<u32>> {
        let vo = if bipartite {
            bipartite_v_orientation(&self.inner).map_err(err)?
        } else {
            self.v_orientation(v_halves)?
        };
        let path = self.loop_path(base, cycles)?;
        let p = match subdivide {
            None => sigma_theta(&path, &vo).map_err(err)?,
            Some(counts) => sigma_theta_n(&path, &counts, &vo).map_err(err)?,
        };
        Ok(p.images().to_vec())
    }

    /// The component census of the space of dimer labelings: one entry per
    /// component, each a list of odd-cycle ids.
    fn census(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(component_census(&self.inner)
            .map_err(err)?
            .iter()
            .map(|c| c.iter().map(Cycle::id).collect())
            .collect())
    }

    /// Evaluate ω on a cube point given as (base edges, directions, coords
    /// as "p/q" strings); returns {edge: "p/q"}.
    fn omega(
        &self,
        base: Vec<String>,
        directions: Vec<String>,
        coords: Vec<String>,
    ) -> PyResult<BTreeMap<String, String>> {
        let base = EdgeSet::from_ids(&self.inner, base.iter()).map_err(err)?;
        let dirs = directions
            .iter()
            .map(|id| self.cycle(id))
            .collect::<PyResult<Vec<_>>>()?;
        let xs = coords
            .iter()
            .map(|s| io::parse_rational(s).map_err(err))
            .collect::<PyResult<Vec<_>>>()?;
        let point = CubePoint::new(base, dirs, xs).map_err(err)?;
        let l = omega(&point);
        Ok((0..self.inner.edge_count())
            .map(|e| {
                (
                    self.inner.edge_id(e).to_owned(),
                    io::rational_string(&l.value(e)),
                )
            })
            .collect())
    }

    /// Classify a labeling {edge: "p/q"}: returns (odd cycle ids,
    /// residual base edges, [(direction id, coord), ...]).
    #[allow(clippy::type_complexity)]
    fn classify(
        &self,
        labels: BTreeMap<String, String>,
    ) -> PyResult<(Vec<String>, Vec<String>, Vec<(String, String)>)> {
        let mut values = vec![glidecube_core::Rat::from_integer(0); self.inner.edge_count()];
        for (id, raw) in labels {
            let e = self
                .inner
                .edge_index(&id)
                .ok_or_else(|| err(format!("unknown edge id {id}")))?;
            values[e] = io::parse_rational(&raw).map_err(err)?;
        }
        let l = glidecube_core::Labeling::new(&self.inner, values).map_err(err)?;
        let class = classify_labeling(&l).map_err(err)?;
        Ok((
            class.odd_cycles.iter().map(Cycle::id).collect(),
            class.residual.base().ids(),
            class
                .residual
                .directions()
                .iter()
                .zip(class.residual.coords())
                .map(|(c, x)| (c.id(), io::rational_string(x)))
                .collect(),
        ))
    }

    /// Invert ω on a labeling in the perfect-matching component: returns
    /// (base edges, [(direction id, coord), ...]).
    fn omega_inverse(
        &self,
        labels: BTreeMap<String, String>,
    ) -> PyResult<(Vec<String>, Vec<(String, String)>)> {
        let mut values = vec![glidecube_core::Rat::from_integer(0); self.inner.edge_count()];
        for (id, raw) in labels {
            let e = self
                .inner
                .edge_index(&id)
                .ok_or_else(|| err(format!("unknown edge id {id}")))?;
            values[e] = io::parse_rational(&raw).map_err(err)?;
        }
        let l = glidecube_core::Labeling::new(&self.inner, values).map_err(err)?;
        let p = omega_inverse(&l).map_err(err)?;
        Ok((
            p.base().ids(),
            p.directions()
                .iter()
                .zip(p.coords())
                .map(|(c, x)| (c.id(), io::rational_string(x)))
                .collect(),
        ))
    }

    /// DOT export of the directed 1-skeleton with default halves.
    fn dot(&self) -> PyResult<String> {
        let x = self.complex();
        let directed = orient(&x, &Orientation::new()).map_err(err)?;
        Ok(io::dot_directed(&directed))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges, {})",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            if self.inner.is_graph() {
                "graph"
            } else {
                "hypergraph"
            }
        )
    }
}

#[pymodule]
fn glidecube(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    Ok(())
}
