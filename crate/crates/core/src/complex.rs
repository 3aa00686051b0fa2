//! Glide complexes of finite 0-cell sets: construction by pairwise hulls,
//! the square/cube curvature conditions, links and the flag criterion,
//! components, Euler characteristics, orientations of the 1-skeleton, and
//! paths in it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::gliding::{
    canonical_key, cube_vertices, is_cubic, BasedCube, CubeKey, CubicSet, EvenCycleSystem,
    GlidingSystem,
};
use crate::incidence::{decompose_cyclic, is_cyclic, Cycle, EdgeSet};

/// One stored cube: canonical base (the lex-least vertex), direction cycles
/// sorted by smallest edge id, and the vertex list in subset-mask order.
#[derive(Clone, Debug)]
pub struct StoredCube {
    pub base: EdgeSet,
    pub directions: Vec<Cycle>,
    pub vertices: Vec<EdgeSet>,
}

impl StoredCube {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn contains_vertex(&self, v: &EdgeSet) -> bool {
        self.vertices.contains(v)
    }
}

/// The cubed complex formed by the cubes of the even-cycle gliding system
/// whose vertices all belong to a finite 0-cell set.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    system: EvenCycleSystem,
    vertices: Vec<EdgeSet>,
    cubes: BTreeMap<CubeKey<EdgeSet>, StoredCube>,
    adjacency: Vec<Vec<(usize, Cycle)>>,
}

/// Builds the glide complex of `d`. Every unordered pair with a cyclic,
/// all-even symmetric difference contributes its hull cube; faces are closed
/// over, and cubes with a vertex outside `d` are filtered out. For a dimer
/// set the filter never fires; for generic sets it makes the result exactly
/// the set of cubes with all vertices in `d`.
pub fn build_complex(d: &[EdgeSet], sys: &EvenCycleSystem) -> CubeComplex {
    let mut vertices: Vec<EdgeSet> = d.to_vec();
    vertices.sort();
    vertices.dedup();
    for v in &vertices {
        assert!(
            v.graph().fingerprint() == sys.graph().fingerprint(),
            "0-cells must live in the system's ambient hypergraph"
        );
    }
    let member: HashSet<EdgeSet> = vertices.iter().cloned().collect();

    let mut cubes: BTreeMap<CubeKey<EdgeSet>, StoredCube> = BTreeMap::new();
    for v in &vertices {
        cubes.insert(
            CubeKey {
                min_vertex: v.clone(),
                antipode: v.clone(),
            },
            StoredCube {
                base: v.clone(),
                directions: Vec::new(),
                vertices: vec![v.clone()],
            },
        );
    }

    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let diff = vertices[i]
                .sym_diff(&vertices[j])
                .expect("same ambient");
            if !is_cyclic(&diff) {
                continue;
            }
            let cycles = decompose_cyclic(&diff).expect("checked cyclic");
            if cycles.iter().any(|c| !c.is_even()) {
                continue;
            }
            insert_cube_with_faces(sys, &member, &mut cubes, &vertices[i], &cycles);
        }
    }

    let index: HashMap<EdgeSet, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for cube in cubes.values().filter(|c| c.dim() == 1) {
        let u = index[&cube.vertices[0]];
        let v = index[&cube.vertices[1]];
        let cycle = cube.directions[0].clone();
        adjacency[u].push((v, cycle.clone()));
        adjacency[v].push((u, cycle));
    }
    for row in &mut adjacency {
        row.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    }

    CubeComplex {
        system: sys.clone(),
        vertices,
        cubes,
        adjacency,
    }
}

fn insert_cube_with_faces(
    sys: &EvenCycleSystem,
    member: &HashSet<EdgeSet>,
    cubes: &mut BTreeMap<CubeKey<EdgeSet>, StoredCube>,
    base: &EdgeSet,
    cycles: &[Cycle],
) {
    let k = cycles.len();
    let glides: Vec<EdgeSet> = cycles.iter().map(|c| c.edges().clone()).collect();
    // Faces are indexed by (directions chosen, offset within the rest).
    for dir_mask in 0u32..(1 << k) {
        let rest: Vec<usize> = (0..k).filter(|i| dir_mask & (1 << i) == 0).collect();
        for off_mask in 0u32..(1 << rest.len()) {
            let mut face_base = base.clone();
            for (bit, &i) in rest.iter().enumerate() {
                if off_mask & (1 << bit) != 0 {
                    face_base = sys.product(&glides[i], &face_base);
                }
            }
            let face_cycles: Vec<Cycle> = (0..k)
                .filter(|i| dir_mask & (1 << i) != 0)
                .map(|i| cycles[i].clone())
                .collect();
            let face_glides: Vec<EdgeSet> =
                face_cycles.iter().map(|c| c.edges().clone()).collect();
            let cubic = CubicSet::new(sys, face_glides).expect("independent cycles");
            let cube = BasedCube::new(face_base, cubic);
            let verts = cube_vertices(sys, &cube).expect("regular system");
            if !verts.iter().all(|v| member.contains(v)) {
                continue;
            }
            let key = canonical_key(sys, &cube).expect("regular system");
            if cubes.contains_key(&key) {
                continue;
            }
            // Rebase so the stored representative starts at the key vertex.
            let rebased = BasedCube::new(
                key.min_vertex.clone(),
                CubicSet::new(
                    sys,
                    face_cycles.iter().map(|c| c.edges().clone()).collect(),
                )
                .expect("independent cycles"),
            );
            let vertices = cube_vertices(sys, &rebased).expect("regular system");
            cubes.insert(
                key.clone(),
                StoredCube {
                    base: key.min_vertex,
                    directions: face_cycles,
                    vertices,
                },
            );
        }
    }
}

impl CubeComplex {
    /// Rebuilds a complex from exported parts. Cube vertices must all appear
    /// in the vertex list; faces are not re-derived, so the parts must come
    /// from a complete export.
    pub fn from_parts(
        sys: &EvenCycleSystem,
        vertices: Vec<EdgeSet>,
        cube_parts: Vec<(EdgeSet, Vec<Cycle>)>,
    ) -> Result<CubeComplex> {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let member: HashSet<EdgeSet> = vertices.iter().cloned().collect();
        let mut cubes: BTreeMap<CubeKey<EdgeSet>, StoredCube> = BTreeMap::new();
        for (base, cycles) in cube_parts {
            let cubic = CubicSet::new(
                sys,
                cycles.iter().map(|c| c.edges().clone()).collect(),
            )?;
            let cube = BasedCube::new(base, cubic);
            let key = canonical_key(sys, &cube)?;
            let rebased = BasedCube::new(key.min_vertex.clone(), cube.directions.clone());
            let verts = cube_vertices(sys, &rebased)?;
            for v in &verts {
                if !member.contains(v) {
                    return Err(Error::VertexNotInComplex {
                        vertex: v.id_string(),
                    });
                }
            }
            cubes.insert(
                key.clone(),
                StoredCube {
                    base: key.min_vertex,
                    directions: cycles,
                    vertices: verts,
                },
            );
        }
        let index: HashMap<EdgeSet, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for cube in cubes.values().filter(|c| c.dim() == 1) {
            let u = index[&cube.vertices[0]];
            let v = index[&cube.vertices[1]];
            let cycle = cube.directions[0].clone();
            adjacency[u].push((v, cycle.clone()));
            adjacency[v].push((u, cycle));
        }
        for row in &mut adjacency {
            row.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        }
        Ok(CubeComplex {
            system: sys.clone(),
            vertices,
            cubes,
            adjacency,
        })
    }

    pub fn system(&self) -> &EvenCycleSystem {
        &self.system
    }

    pub fn vertices(&self) -> &[EdgeSet] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &EdgeSet) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn cubes(&self) -> impl Iterator<Item = (&CubeKey<EdgeSet>, &StoredCube)> {
        self.cubes.iter()
    }

    pub fn cube_count(&self) -> usize {
        self.cubes.len()
    }

    pub fn cubes_of_dim(&self, k: usize) -> impl Iterator<Item = &StoredCube> {
        self.cubes.values().filter(move |c| c.dim() == k)
    }

    pub fn dimension(&self) -> usize {
        self.cubes.values().map(|c| c.dim()).max().unwrap_or(0)
    }

    pub fn contains_cube(&self, key: &CubeKey<EdgeSet>) -> bool {
        self.cubes.contains_key(key)
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, Cycle)] {
        &self.adjacency[v]
    }

    /// All stored cubes one of whose vertices is `v`.
    pub fn cubes_containing<'a>(
        &'a self,
        v: &'a EdgeSet,
    ) -> impl Iterator<Item = &'a StoredCube> {
        self.cubes.values().filter(move |c| c.contains_vertex(v))
    }

    /// Connected components of the 1-skeleton, each a sorted list of vertex
    /// indices, ordered by their smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for (w, _) in &self.adjacency[u] {
                    if !seen[*w] {
                        seen[*w] = true;
                        comp.push(*w);
                        queue.push_back(*w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `χ = Σ_k (−1)^k · #k`-cubes of the finite complex as built.
    pub fn euler_characteristic(&self) -> i64 {
        self.cubes
            .values()
            .map(|c| if c.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// The subcomplex of cubes of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> CubeComplex {
        let cubes: BTreeMap<CubeKey<EdgeSet>, StoredCube> = self
            .cubes
            .iter()
            .filter(|(_, c)| c.dim() <= k)
            .map(|(key, c)| (key.clone(), c.clone()))
            .collect();
        let adjacency = if k >= 1 {
            self.adjacency.clone()
        } else {
            vec![Vec::new(); self.vertices.len()]
        };
        CubeComplex {
            system: self.system.clone(),
            vertices: self.vertices.clone(),
            cubes,
            adjacency,
        }
    }

    /// Checks that every face of every stored cube is stored.
    pub fn verify_face_closure(&self) -> bool {
        for cube in self.cubes.values() {
            let k = cube.dim();
            let glides: Vec<EdgeSet> =
                cube.directions.iter().map(|c| c.edges().clone()).collect();
            for dir_mask in 0u32..(1 << k) {
                let rest: Vec<usize> = (0..k).filter(|i| dir_mask & (1 << i) == 0).collect();
                for off_mask in 0u32..(1 << rest.len()) {
                    let mut face_base = cube.base.clone();
                    for (bit, &i) in rest.iter().enumerate() {
                        if off_mask & (1 << bit) != 0 {
                            face_base = self.system.product(&glides[i], &face_base);
                        }
                    }
                    let face_glides: Vec<EdgeSet> = (0..k)
                        .filter(|i| dir_mask & (1 << i) != 0)
                        .map(|i| glides[i].clone())
                        .collect();
                    let cubic = CubicSet::new(&self.system, face_glides).expect("cubic");
                    let key =
                        canonical_key(&self.system, &BasedCube::new(face_base, cubic))
                            .expect("regular");
                    if !self.cubes.contains_key(&key) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.cubes.keys().eq(other.cubes.keys())
    }
}

impl Eq for CubeComplex {}

/// The glides applicable at `a` within the 0-cell family `d`: the products
/// `a·b` over `b ∈ d` that are single even cycles.
pub fn glides_at(sys: &EvenCycleSystem, d: &[EdgeSet], a: &EdgeSet) -> Vec<Cycle> {
    sys.alternating_cycles_in(a, d)
}

#[derive(Clone, Debug)]
pub struct SquareWitness {
    pub base: EdgeSet,
    pub s: Cycle,
    pub t: Cycle,
}

#[derive(Clone, Debug)]
pub struct CubeWitness {
    pub base: EdgeSet,
    pub cycles: [Cycle; 3],
}

/// Square condition: three vertices of a square in `d` force the fourth.
/// Returns a counterexample `(A, s, t)` if it fails.
pub fn check_square_condition(d: &[EdgeSet], sys: &EvenCycleSystem) -> Option<SquareWitness> {
    let member: HashSet<EdgeSet> = d.iter().cloned().collect();
    for a in d {
        let glides = glides_at(sys, d, a);
        for i in 0..glides.len() {
            for j in i + 1..glides.len() {
                let (s, t) = (&glides[i], &glides[j]);
                if !sys.independent(s.edges(), t.edges()) {
                    continue;
                }
                let st_a = sys.product(s.edges(), &sys.product(t.edges(), a));
                if !member.contains(&st_a) {
                    return Some(SquareWitness {
                        base: a.clone(),
                        s: s.clone(),
                        t: t.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Square condition rel `d`: if three vertices of a square of `X_d` lie in
/// `e`, the fourth (already in `d`) must lie in `e`.
pub fn check_square_condition_rel(
    e: &[EdgeSet],
    d: &[EdgeSet],
    sys: &EvenCycleSystem,
) -> Result<Option<SquareWitness>> {
    let d_member: HashSet<EdgeSet> = d.iter().cloned().collect();
    for x in e {
        if !d_member.contains(x) {
            return Err(Error::NotASubset {
                what: x.id_string(),
                of: "the ambient 0-cell set".to_owned(),
            });
        }
    }
    let e_member: HashSet<EdgeSet> = e.iter().cloned().collect();
    for a in e {
        let glides = glides_at(sys, e, a);
        for i in 0..glides.len() {
            for j in i + 1..glides.len() {
                let (s, t) = (&glides[i], &glides[j]);
                if !sys.independent(s.edges(), t.edges()) {
                    continue;
                }
                let st_a = sys.product(s.edges(), &sys.product(t.edges(), a));
                if d_member.contains(&st_a) && !e_member.contains(&st_a) {
                    return Ok(Some(SquareWitness {
                        base: a.clone(),
                        s: s.clone(),
                        t: t.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Cube condition: seven vertices of a 3-cube in `d` force the eighth.
pub fn check_cube_condition(d: &[EdgeSet], sys: &EvenCycleSystem) -> Option<CubeWitness> {
    let member: HashSet<EdgeSet> = d.iter().cloned().collect();
    for a in d {
        let glides = glides_at(sys, d, a);
        let n = glides.len();
        for i in 0..n {
            for j in i + 1..n {
                if !sys.independent(glides[i].edges(), glides[j].edges()) {
                    continue;
                }
                let ij = sys.product(
                    glides[i].edges(),
                    &sys.product(glides[j].edges(), a),
                );
                if !member.contains(&ij) {
                    continue;
                }
                for k in j + 1..n {
                    if !sys.independent(glides[i].edges(), glides[k].edges())
                        || !sys.independent(glides[j].edges(), glides[k].edges())
                    {
                        continue;
                    }
                    let ik = sys.product(
                        glides[i].edges(),
                        &sys.product(glides[k].edges(), a),
                    );
                    let jk = sys.product(
                        glides[j].edges(),
                        &sys.product(glides[k].edges(), a),
                    );
                    if !member.contains(&ik) || !member.contains(&jk) {
                        continue;
                    }
                    let ijk = sys.product(glides[k].edges(), &ij);
                    if !member.contains(&ijk) {
                        return Some(CubeWitness {
                            base: a.clone(),
                            cycles: [
                                glides[i].clone(),
                                glides[j].clone(),
                                glides[k].clone(),
                            ],
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct CurvatureVerdict {
    pub regular: bool,
    pub cube_condition: bool,
    pub npc: bool,
}

/// Nonpositive curvature verdict: `d` is regular (every pre-cubic set of
/// glides satisfying the pairwise condition (*) is cubic — automatic in the
/// power group, still verified) and satisfies the cube condition.
pub fn nonpositively_curved(d: &[EdgeSet], sys: &EvenCycleSystem) -> CurvatureVerdict {
    nonpositively_curved_bounded(d, sys, 3)
}

/// As `nonpositively_curved` with an explicit bound on the size of the
/// pre-cubic sets swept by the regularity check.
pub fn nonpositively_curved_bounded(
    d: &[EdgeSet],
    sys: &EvenCycleSystem,
    max_dim: usize,
) -> CurvatureVerdict {
    let regular = check_regularity(d, sys, max_dim);
    let cube_condition = check_cube_condition(d, sys).is_none();
    CurvatureVerdict {
        regular,
        cube_condition,
        npc: regular && cube_condition,
    }
}

fn check_regularity(d: &[EdgeSet], sys: &EvenCycleSystem, max_dim: usize) -> bool {
    let member: HashSet<EdgeSet> = d.iter().cloned().collect();
    for a in d {
        let glides = glides_at(sys, d, a);
        let n = glides.len();
        // Pairs satisfying (*): independent with the diagonal translate in d.
        let mut pair_ok = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if sys.independent(glides[i].edges(), glides[j].edges()) {
                    let st_a = sys.product(
                        glides[i].edges(),
                        &sys.product(glides[j].edges(), a),
                    );
                    if member.contains(&st_a) {
                        pair_ok[i][j] = true;
                        pair_ok[j][i] = true;
                    }
                }
            }
        }
        // Every clique is a pre-cubic set satisfying (*) and must be cubic.
        let mut clique: Vec<usize> = Vec::new();
        if !cliques_are_cubic(sys, &glides, &pair_ok, &mut clique, 0, max_dim) {
            return false;
        }
    }
    true
}

fn cliques_are_cubic(
    sys: &EvenCycleSystem,
    glides: &[Cycle],
    pair_ok: &[Vec<bool>],
    clique: &mut Vec<usize>,
    from: usize,
    max_dim: usize,
) -> bool {
    if clique.len() >= 2 {
        let set: Vec<EdgeSet> = clique.iter().map(|&i| glides[i].edges().clone()).collect();
        if !is_cubic(sys, &set) {
            return false;
        }
    }
    if clique.len() == max_dim {
        return true;
    }
    for next in from..glides.len() {
        if clique.iter().all(|&i| pair_ok[i][next]) {
            clique.push(next);
            if !cliques_are_cubic(sys, glides, pair_ok, clique, next + 1, max_dim) {
                return false;
            }
            clique.pop();
        }
    }
    true
}

/// The link of a 0-cell: vertices are the glides `s` with `sA` in the
/// complex, simplices the direction sets of the stored cubes at `A`
/// (downward closed by face closure).
#[derive(Clone, Debug)]
pub struct Link {
    pub base: EdgeSet,
    pub vertices: Vec<Cycle>,
    pub simplices: BTreeSet<Vec<usize>>,
}

pub fn link(x: &CubeComplex, a: &EdgeSet) -> Result<Link> {
    let ai = x.vertex_index(a).ok_or_else(|| Error::VertexNotInComplex {
        vertex: a.id_string(),
    })?;
    let mut vertices: Vec<Cycle> = x.adjacency[ai].iter().map(|(_, c)| c.clone()).collect();
    vertices.sort();
    vertices.dedup();
    let index: BTreeMap<Cycle, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let mut simplices = BTreeSet::new();
    for cube in x.cubes_containing(a) {
        if cube.dim() == 0 {
            continue;
        }
        let simplex: Vec<usize> = cube
            .directions
            .iter()
            .map(|c| index[c])
            .collect();
        simplices.insert(simplex);
    }
    Ok(Link {
        base: a.clone(),
        vertices,
        simplices,
    })
}

impl Link {
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let pair = if i < j { vec![i, j] } else { vec![j, i] };
        self.simplices.contains(&pair)
    }

    /// Simplices are stored sorted, so downward closure can be checked
    /// directly.
    pub fn is_simplicial(&self) -> bool {
        for s in &self.simplices {
            if s.len() >= 2 {
                for drop in 0..s.len() {
                    let mut face: Vec<usize> = s.clone();
                    face.remove(drop);
                    if !self.simplices.contains(&face) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Flag criterion: every set of pairwise adjacent link vertices spans a
/// stored simplex.
pub fn is_flag(l: &Link) -> bool {
    let n = l.vertices.len();
    let mut clique: Vec<usize> = Vec::new();
    fn recurse(l: &Link, clique: &mut Vec<usize>, from: usize, n: usize) -> bool {
        if clique.len() >= 3 && !l.simplices.contains(clique.as_slice()) {
            return false;
        }
        for next in from..n {
            if clique.iter().all(|&i| l.adjacent(i, next)) {
                clique.push(next);
                if !recurse(l, clique, next + 1, n) {
                    return false;
                }
                clique.pop();
            }
        }
        true
    }
    recurse(l, &mut clique, 0, n)
}

/// A choice of a distinguished half per even cycle. Missing entries default
/// to the half containing the smallest edge id, so every 1-cell can always
/// be directed.
#[derive(Clone, Default, Debug)]
pub struct Orientation {
    choices: BTreeMap<String, EdgeSet>,
}

impl Orientation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_half(&mut self, cycle: &Cycle, half: &EdgeSet) -> Result<()> {
        let (a, b) = cycle.halves().ok_or_else(|| Error::NoHalves {
            cycle: cycle.id(),
        })?;
        if half != a && half != b {
            return Err(Error::NotAHalf {
                half: half.id_string(),
                cycle: cycle.id(),
            });
        }
        self.choices.insert(cycle.id(), half.clone());
        Ok(())
    }

    /// The distinguished half of `cycle`.
    pub fn half_for(&self, cycle: &Cycle) -> Result<EdgeSet> {
        if let Some(h) = self.choices.get(&cycle.id()) {
            return Ok(h.clone());
        }
        let (a, _) = cycle.halves().ok_or_else(|| Error::NoHalves {
            cycle: cycle.id(),
        })?;
        Ok(a.clone())
    }

    /// Flip the distinguished half of one cycle.
    pub fn flip(&mut self, cycle: &Cycle) -> Result<()> {
        let current = self.half_for(cycle)?;
        let other = cycle.other_half(&current)?;
        self.choices.insert(cycle.id(), other);
        Ok(())
    }
}

/// A complex together with a direction on each 1-cell satisfying the square
/// rule: opposite sides of every 2-cell point towards each other.
#[derive(Clone, Debug)]
pub struct DirectedComplex {
    complex: CubeComplex,
    /// Per 1-cube key: true if the arrow points towards the antipode.
    arrows: BTreeMap<CubeKey<EdgeSet>, bool>,
}

/// Directs each 1-cell `{A, sA}` towards the endpoint whose intersection
/// with `s` is the distinguished half of `s`.
pub fn orient(x: &CubeComplex, orientation: &Orientation) -> Result<DirectedComplex> {
    let mut arrows = BTreeMap::new();
    for (key, cube) in x.cubes() {
        if cube.dim() != 1 {
            continue;
        }
        let s = &cube.directions[0];
        let half = orientation.half_for(s)?;
        let low = &cube.vertices[0];
        let high = &cube.vertices[1];
        let low_int = low.intersection(s.edges()).expect("ambient");
        let high_int = high.intersection(s.edges()).expect("ambient");
        let towards_antipode = if high_int == half {
            true
        } else if low_int == half {
            false
        } else {
            return Err(Error::Unorientable {
                a: low.id_string(),
                b: high.id_string(),
            });
        };
        arrows.insert(key.clone(), towards_antipode);
    }

    let directed = DirectedComplex {
        complex: x.clone(),
        arrows,
    };

    // Square rule on every 2-cube: the two s-cells of a square based at A
    // with directions {s, t} must agree, and likewise the two t-cells.
    for cube in x.cubes_of_dim(2) {
        let a = &cube.vertices[0];
        let sa = &cube.vertices[1];
        let ta = &cube.vertices[2];
        let sta = &cube.vertices[3];
        for (u1, v1, u2, v2) in [(a, sa, ta, sta), (a, ta, sa, sta)] {
            let d1 = directed.points_towards(u1, v1)?;
            let d2 = directed.points_towards(u2, v2)?;
            if d1 != d2 {
                return Err(Error::Invalid(format!(
                    "orientation violates the square rule on the 2-cube at {}",
                    a.id_string()
                )));
            }
        }
    }
    Ok(directed)
}

impl DirectedComplex {
    pub fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    /// True iff the 1-cell `{u, v}` is directed from `u` to `v`.
    pub fn points_towards(&self, u: &EdgeSet, v: &EdgeSet) -> Result<bool> {
        let (min, antipode) = if u <= v { (u, v) } else { (v, u) };
        let key = CubeKey {
            min_vertex: min.clone(),
            antipode: antipode.clone(),
        };
        let towards_antipode = self.arrows.get(&key).ok_or_else(|| Error::Invalid(format!(
            "no 1-cell between {} and {}",
            u.id_string(),
            v.id_string()
        )))?;
        Ok(if u <= v {
            *towards_antipode
        } else {
            !*towards_antipode
        })
    }

    /// Directed 1-cells as vertex-index pairs with their glide cycles.
    pub fn arrows(&self) -> Vec<(usize, usize, Cycle)> {
        let mut out = Vec::new();
        for (key, cube) in self.complex.cubes() {
            if cube.dim() != 1 {
                continue;
            }
            let towards_antipode = self.arrows[key];
            let u = self.complex.vertex_index(&cube.vertices[0]).unwrap();
            let v = self.complex.vertex_index(&cube.vertices[1]).unwrap();
            let (from, to) = if towards_antipode { (u, v) } else { (v, u) };
            out.push((from, to, cube.directions[0].clone()));
        }
        out
    }
}

/// A path in the 1-skeleton: a base 0-cell and the glide cycles traversed.
/// Signs are bookkeeping for formal reversal; the geometric step is the same
/// since glides are involutions here, so equality ignores them.
#[derive(Clone, Debug)]
pub struct EdgePath {
    base: EdgeSet,
    steps: Vec<(Cycle, i8)>,
}

impl PartialEq for EdgePath {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.steps.len() == other.steps.len()
            && self
                .steps
                .iter()
                .zip(&other.steps)
                .all(|((c1, _), (c2, _))| c1 == c2)
    }
}

impl Eq for EdgePath {}

impl EdgePath {
    /// Validates that every step alternates with the 0-cell it is applied to
    /// (so consecutive endpoints stay in the dimer set when the base is a
    /// perfect matching).
    pub fn new(base: EdgeSet, steps: Vec<(Cycle, i8)>) -> Result<EdgePath> {
        let mut at = base.clone();
        for (c, _) in &steps {
            if !c.is_alternating(&at) {
                return Err(Error::NotAlternating {
                    cycle: c.id(),
                    matching: at.id_string(),
                });
            }
            at = at.sym_diff(c.edges())?;
        }
        Ok(EdgePath { base, steps })
    }

    pub fn empty(base: EdgeSet) -> EdgePath {
        EdgePath {
            base,
            steps: Vec::new(),
        }
    }

    pub fn base(&self) -> &EdgeSet {
        &self.base
    }

    pub fn steps(&self) -> &[(Cycle, i8)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn endpoint(&self) -> EdgeSet {
        self.steps.iter().fold(self.base.clone(), |at, (c, _)| {
            at.sym_diff(c.edges()).expect("validated")
        })
    }

    /// The 0-cells visited, including both endpoints.
    pub fn visited(&self) -> Vec<EdgeSet> {
        let mut out = vec![self.base.clone()];
        let mut at = self.base.clone();
        for (c, _) in &self.steps {
            at = at.sym_diff(c.edges()).expect("validated");
            out.push(at.clone());
        }
        out
    }

    pub fn is_loop(&self) -> bool {
        self.endpoint() == self.base
    }

    pub fn reversed(&self) -> EdgePath {
        let endpoint = self.endpoint();
        let steps: Vec<(Cycle, i8)> = self
            .steps
            .iter()
            .rev()
            .map(|(c, sign)| (c.clone(), -sign))
            .collect();
        EdgePath {
            base: endpoint,
            steps,
        }
    }

    pub fn concat(&self, other: &EdgePath) -> Result<EdgePath> {
        let end = self.endpoint();
        if end != other.base {
            return Err(Error::PathMismatch {
                expected: end.id_string(),
                found: other.base.id_string(),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(EdgePath {
            base: self.base.clone(),
            steps,
        })
    }

    /// Inserts a backtrack pair `s, s` after `position` steps. The glide must
    /// alternate with the 0-cell reached there.
    pub fn with_backtrack(&self, position: usize, cycle: &Cycle) -> Result<EdgePath> {
        let mut steps = self.steps.clone();
        steps.insert(position, (cycle.clone(), 1));
        steps.insert(position + 1, (cycle.clone(), -1));
        EdgePath::new(self.base.clone(), steps)
    }

    /// Removes immediate backtracks `s·s` until none remain.
    pub fn reduced(&self) -> EdgePath {
        let mut steps: Vec<(Cycle, i8)> = Vec::new();
        for step in &self.steps {
            if let Some(last) = steps.last() {
                if last.0 == step.0 {
                    steps.pop();
                    continue;
                }
            }
            steps.push(step.clone());
        }
        EdgePath {
            base: self.base.clone(),
            steps,
        }
    }
}

/// Spanning-tree generator loops of the 1-skeleton component of `base`: one
/// loop per non-tree 1-cell, `tree-path · cell · tree-path back`.
pub fn generator_loops(x: &CubeComplex, base: &EdgeSet) -> Result<Vec<EdgePath>> {
    let b = x.vertex_index(base).ok_or_else(|| Error::VertexNotInComplex {
        vertex: base.id_string(),
    })?;
    // BFS tree in canonical order.
    let mut parent: Vec<Option<(usize, Cycle)>> = vec![None; x.vertices.len()];
    let mut seen = vec![false; x.vertices.len()];
    seen[b] = true;
    let mut queue = VecDeque::from([b]);
    let mut order = vec![b];
    while let Some(u) = queue.pop_front() {
        for (w, c) in &x.adjacency[u] {
            if !seen[*w] {
                seen[*w] = true;
                parent[*w] = Some((u, c.clone()));
                queue.push_back(*w);
                order.push(*w);
            }
        }
    }
    let tree_path_to = |v: usize| -> Vec<(Cycle, i8)> {
        // Path base -> v along tree edges.
        let mut up = Vec::new();
        let mut at = v;
        while let Some((p, c)) = &parent[at] {
            up.push(c.clone());
            at = *p;
        }
        up.reverse();
        up.into_iter().map(|c| (c, 1)).collect()
    };

    let mut loops = Vec::new();
    let mut used: BTreeSet<(usize, usize, String)> = BTreeSet::new();
    for (w, pc) in parent.iter().enumerate() {
        if let Some((p, c)) = pc {
            let (lo, hi) = (w.min(*p), w.max(*p));
            used.insert((lo, hi, c.id()));
        }
    }
    for &u in &order {
        for (w, c) in &x.adjacency[u] {
            if u > *w {
                continue;
            }
            if used.contains(&(u, *w, c.id())) {
                continue;
            }
            let mut steps = tree_path_to(u);
            steps.push((c.clone(), 1));
            let back: Vec<(Cycle, i8)> = tree_path_to(*w)
                .into_iter()
                .rev()
                .map(|(c, _)| (c, -1))
                .collect();
            steps.extend(back);
            loops.push(EdgePath::new(x.vertices[b].clone(), steps)?);
        }
    }
    Ok(loops)
}

/// Cellwise inclusion of a subcomplex, used to push loops forward.
pub struct InclusionMap<'a> {
    sub: &'a CubeComplex,
    sup: &'a CubeComplex,
}

pub fn inclusion_map<'a>(
    sub: &'a CubeComplex,
    sup: &'a CubeComplex,
) -> Result<InclusionMap<'a>> {
    for key in sub.cubes.keys() {
        if !sup.cubes.contains_key(key) {
            return Err(Error::NotASubset {
                what: format!(
                    "cube {}..{}",
                    key.min_vertex.id_string(),
                    key.antipode.id_string()
                ),
                of: "the ambient complex".to_owned(),
            });
        }
    }
    Ok(InclusionMap { sub, sup })
}

impl InclusionMap<'_> {
    pub fn sub(&self) -> &CubeComplex {
        self.sub
    }

    pub fn sup(&self) -> &CubeComplex {
        self.sup
    }

    /// Identity on cells; verifies the path's cells exist in the ambient
    /// complex.
    pub fn push_path(&self, path: &EdgePath) -> Result<EdgePath> {
        for v in path.visited() {
            if self.sup.vertex_index(&v).is_none() {
                return Err(Error::VertexNotInComplex {
                    vertex: v.id_string(),
                });
            }
        }
        Ok(path.clone())
    }
}
