//! Shared test support: isomorphism-free generation of small multigraphs,
//! random bipartite graphs, and the independent oracles the acceptance
//! criteria check against.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rand::Rng;

use glidecube_core::snf::{rank_over_q, smith_normal_form};
use glidecube_core::{
    CubeComplex, Cycle, EdgeSet, Hypergraph, Matching, Mode,
};

pub type EdgeList = Vec<(u8, u8)>;

// ---------------------------------------------------------------------------
// Graph construction helpers

/// Build a hypergraph from a numeric edge list, with zero-padded ids so the
/// lexicographic id order matches the numeric order.
pub fn to_hypergraph(edges: &[(u8, u8)], mode: Mode) -> Arc<Hypergraph> {
    let mut vertex_ids: BTreeSet<String> = BTreeSet::new();
    for &(a, b) in edges {
        vertex_ids.insert(format!("v{a:02}"));
        vertex_ids.insert(format!("v{b:02}"));
    }
    let edge_list: Vec<(String, Vec<String>)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            (
                format!("e{i:02}"),
                vec![format!("v{a:02}"), format!("v{b:02}")],
            )
        })
        .collect();
    let vertices: Vec<String> = vertex_ids.into_iter().collect();
    match mode {
        Mode::Graph => Hypergraph::graph(vertices, edge_list),
        Mode::Hypergraph => Hypergraph::hypergraph(vertices, edge_list),
    }
    .expect("well-formed edge list")
}

pub fn named_graph(vertices: &[&str], edges: &[(&str, [&str; 2])]) -> Arc<Hypergraph> {
    Hypergraph::graph(
        vertices.iter().map(|s| s.to_string()).collect(),
        edges
            .iter()
            .map(|(id, ends)| (id.to_string(), ends.iter().map(|s| s.to_string()).collect()))
            .collect(),
    )
    .unwrap()
}

pub fn cycle_graph(n: usize) -> Arc<Hypergraph> {
    let edges: Vec<(u8, u8)> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            (i.min(j) as u8, i.max(j) as u8)
        })
        .collect();
    to_hypergraph(&edges, Mode::Graph)
}

pub fn theta_graph(n: usize) -> Arc<Hypergraph> {
    to_hypergraph(&vec![(0u8, 1u8); n], Mode::Graph)
}

pub fn grid23() -> Arc<Hypergraph> {
    named_graph(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("ab", ["a", "b"]),
            ("bc", ["b", "c"]),
            ("de", ["d", "e"]),
            ("ef", ["e", "f"]),
            ("ad", ["a", "d"]),
            ("be", ["b", "e"]),
            ("cf", ["c", "f"]),
        ],
    )
}

// ---------------------------------------------------------------------------
// Isomorphism machinery (multigraphs as multiplicity matrices)

fn vertex_count(edges: &[(u8, u8)]) -> usize {
    edges
        .iter()
        .map(|&(a, b)| a.max(b) as usize + 1)
        .max()
        .unwrap_or(0)
}

fn multiplicity_matrix(edges: &[(u8, u8)]) -> Vec<Vec<u8>> {
    let n = vertex_count(edges);
    let mut m = vec![vec![0u8; n]; n];
    for &(a, b) in edges {
        m[a as usize][b as usize] += 1;
        m[b as usize][a as usize] += 1;
    }
    m
}

/// Iterated neighborhood refinement; the final colors are iso-invariant.
fn wl_colors(m: &[Vec<u8>]) -> Vec<u64> {
    let n = m.len();
    let mut colors: Vec<u64> = (0..n)
        .map(|v| m[v].iter().map(|&x| x as u64).sum::<u64>())
        .collect();
    for _ in 0..3 {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut sig: Vec<(u8, u64)> = (0..n)
                .filter(|&w| m[v][w] > 0)
                .map(|w| (m[v][w], colors[w]))
                .collect();
            sig.sort_unstable();
            let mut h: u64 = colors[v].wrapping_mul(0x9e3779b97f4a7c15);
            for (mult, c) in sig {
                h = h
                    .wrapping_mul(0x100000001b3)
                    .wrapping_add((mult as u64) << 32)
                    .wrapping_add(c);
            }
            next.push(h);
        }
        colors = next;
    }
    colors
}

/// Iso-invariant fingerprint used to bucket candidates before the exact test.
fn weak_certificate(edges: &[(u8, u8)]) -> String {
    let m = multiplicity_matrix(edges);
    let colors = wl_colors(&m);
    let mut vertex_part: Vec<u64> = colors.clone();
    vertex_part.sort_unstable();
    let mut edge_part: Vec<(u64, u64, u8)> = Vec::new();
    for v in 0..m.len() {
        for w in v..m.len() {
            if m[v][w] > 0 {
                let (a, b) = if colors[v] <= colors[w] {
                    (colors[v], colors[w])
                } else {
                    (colors[w], colors[v])
                };
                edge_part.push((a, b, m[v][w]));
            }
        }
    }
    edge_part.sort_unstable();
    format!("{}|{vertex_part:?}|{edge_part:?}", m.len())
}

/// Exact isomorphism test by color-guided backtracking on the multiplicity
/// matrices.
fn isomorphic(e1: &[(u8, u8)], e2: &[(u8, u8)]) -> bool {
    if e1.len() != e2.len() {
        return false;
    }
    let m1 = multiplicity_matrix(e1);
    let m2 = multiplicity_matrix(e2);
    if m1.len() != m2.len() {
        return false;
    }
    let c1 = wl_colors(&m1);
    let c2 = wl_colors(&m2);
    {
        let mut s1 = c1.clone();
        let mut s2 = c2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return false;
        }
    }
    let n = m1.len();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn extend(
        at: usize,
        n: usize,
        m1: &[Vec<u8>],
        m2: &[Vec<u8>],
        c1: &[u64],
        c2: &[u64],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if at == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || c2[cand] != c1[at] {
                continue;
            }
            if (0..at).all(|prev| m1[prev][at] == m2[map[prev].unwrap()][cand]) {
                map[at] = Some(cand);
                used[cand] = true;
                if extend(at + 1, n, m1, m2, c1, c2, map, used) {
                    return true;
                }
                map[at] = None;
                used[cand] = false;
            }
        }
        false
    }
    extend(0, n, &m1, &m2, &c1, &c2, &mut map, &mut used)
}

// ---------------------------------------------------------------------------
// Exhaustive corpus generation

/// All connected loop-free multigraphs with 1..=max_edges edges, one per
/// isomorphism class, as canonical edge lists. Generation is over sorted
/// edge lists in first-appearance labeling (each edge after the first
/// touches an existing vertex, so connectivity is built in), deduplicated by
/// the exact isomorphism test within weak-certificate buckets.
pub fn connected_multigraphs(max_edges: usize) -> Vec<EdgeList> {
    let mut classes: HashMap<String, Vec<EdgeList>> = HashMap::new();
    let mut out: Vec<EdgeList> = Vec::new();

    fn record(
        edges: &EdgeList,
        classes: &mut HashMap<String, Vec<EdgeList>>,
        out: &mut Vec<EdgeList>,
    ) {
        let cert = weak_certificate(edges);
        let bucket = classes.entry(cert).or_default();
        if !bucket.iter().any(|known| isomorphic(known, edges)) {
            bucket.push(edges.clone());
            out.push(edges.clone());
        }
    }

    fn recurse(
        edges: &mut EdgeList,
        used: u8,
        budget: usize,
        classes: &mut HashMap<String, Vec<EdgeList>>,
        out: &mut Vec<EdgeList>,
    ) {
        record(edges, classes, out);
        if budget == 0 {
            return;
        }
        let last = *edges.last().unwrap();
        // Next edge: lexicographically >= last, touching an existing vertex,
        // introducing at most the next fresh vertex.
        for a in last.0..used {
            let b_start = if a == last.0 { last.1 } else { a + 1 };
            for b in b_start..=used {
                if b <= a {
                    continue;
                }
                edges.push((a, b));
                let new_used = used.max(b + 1);
                recurse(edges, new_used, budget - 1, classes, out);
                edges.pop();
            }
        }
    }

    if max_edges == 0 {
        return out;
    }
    let mut edges: EdgeList = vec![(0, 1)];
    recurse(&mut edges, 2, max_edges - 1, &mut classes, &mut out);
    out
}

/// All loop-free multigraphs without isolated vertices with 1..=max_edges
/// edges, one per isomorphism class: multisets of connected classes,
/// relabeled sequentially. Distinct multisets are distinct classes, so no
/// further deduplication is needed.
pub fn all_multigraphs(max_edges: usize) -> Vec<EdgeList> {
    let connected = connected_multigraphs(max_edges);
    // Group by edge count for the multiset assembly.
    let mut out: Vec<EdgeList> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn assemble(
        connected: &[EdgeList],
        from: usize,
        budget: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<EdgeList>,
    ) {
        if !chosen.is_empty() {
            let mut edges: EdgeList = Vec::new();
            let mut offset = 0u8;
            for &i in chosen.iter() {
                let comp = &connected[i];
                let n = vertex_count(comp) as u8;
                for &(a, b) in comp {
                    edges.push((a + offset, b + offset));
                }
                offset += n;
            }
            out.push(edges);
        }
        for next in from..connected.len() {
            let cost = connected[next].len();
            if cost <= budget {
                chosen.push(next);
                assemble(connected, next, budget - cost, chosen, out);
                chosen.pop();
            }
        }
    }

    assemble(&connected, 0, max_edges, &mut chosen, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Random graphs

/// Random connected-ish bipartite simple graph with equal parts and a
/// guaranteed perfect matching, at most `max_edges` edges.
pub fn random_bipartite(rng: &mut impl Rng, max_edges: usize) -> Arc<Hypergraph> {
    let p = rng.gen_range(2..=4usize);
    let mut edges: BTreeSet<(u8, u8)> = BTreeSet::new();
    // A perfect matching i -- i'.
    for i in 0..p {
        edges.insert((i as u8, (p + i) as u8));
    }
    let extra = rng.gen_range(1..=max_edges.saturating_sub(p).max(1));
    for _ in 0..extra {
        let i = rng.gen_range(0..p) as u8;
        let j = (p + rng.gen_range(0..p)) as u8;
        if edges.len() < max_edges {
            edges.insert((i.min(j), i.max(j)));
        }
    }
    let list: EdgeList = edges.into_iter().collect();
    to_hypergraph(&list, Mode::Graph)
}

// ---------------------------------------------------------------------------
// Oracles

/// Brute-force perfect matchings: filter all edge subsets.
pub fn brute_force_matchings(g: &Arc<Hypergraph>) -> Vec<EdgeSet> {
    let m = g.edge_count();
    assert!(m <= 20, "oracle is for small graphs");
    let mut out = Vec::new();
    for mask in 0u64..(1 << m) {
        let set = EdgeSet::from_indices(g, (0..m).filter(|i| mask & (1 << i) != 0));
        if let Ok(matching) = Matching::new(set) {
            if matching.is_perfect() {
                out.push(matching.edges().clone());
            }
        }
    }
    out.sort();
    out
}

/// All even cycles by subset enumeration.
pub fn all_even_cycles(g: &Arc<Hypergraph>) -> Vec<Cycle> {
    let m = g.edge_count();
    assert!(m <= 20, "oracle is for small graphs");
    let mut out = Vec::new();
    for mask in 1u64..(1 << m) {
        let set = EdgeSet::from_indices(g, (0..m).filter(|i| mask & (1 << i) != 0));
        if let Ok(c) = Cycle::classify(&set) {
            if c.is_even() {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// All odd cycles by subset enumeration (independent of the DFS search in
/// the library).
pub fn all_odd_cycles(g: &Arc<Hypergraph>) -> Vec<Cycle> {
    let m = g.edge_count();
    assert!(m <= 20, "oracle is for small graphs");
    let mut out = Vec::new();
    for mask in 1u64..(1 << m) {
        let set = EdgeSet::from_indices(g, (0..m).filter(|i| mask & (1 << i) != 0));
        if let Ok(c) = Cycle::classify(&set) {
            if !c.is_even() {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// A cube identified by its minimum vertex, antipode, and sorted direction
/// ids — the comparison form for complex equality.
pub type CubeId = (String, String, Vec<String>);

pub fn complex_cube_ids(x: &CubeComplex, max_dim: usize) -> BTreeSet<CubeId> {
    x.cubes()
        .filter(|(_, cube)| cube.dim() <= max_dim)
        .map(|(key, cube)| {
            (
                key.min_vertex.id_string(),
                key.antipode.id_string(),
                cube.directions.iter().map(|c| c.id()).collect(),
            )
        })
        .collect()
}

/// Brute-force glide complex: every based cube `(A ∈ D, S)` with `S` a set
/// of at most `max_dim` pairwise independent even cycles and all subset
/// translates inside `D`.
pub fn brute_force_complex(
    g: &Arc<Hypergraph>,
    d: &[EdgeSet],
    max_dim: usize,
) -> BTreeSet<CubeId> {
    let cycles = all_even_cycles(g);
    let member: HashSet<EdgeSet> = d.iter().cloned().collect();
    let mut out = BTreeSet::new();

    fn visit(
        g: &Arc<Hypergraph>,
        cycles: &[Cycle],
        member: &HashSet<EdgeSet>,
        base: &EdgeSet,
        chosen: &mut Vec<usize>,
        from: usize,
        max_dim: usize,
        out: &mut BTreeSet<CubeId>,
    ) {
        // Check all subset translates and record the canonical id.
        let k = chosen.len();
        let mut vertices = Vec::with_capacity(1 << k);
        for mask in 0u32..(1 << k) {
            let mut v = base.clone();
            for (i, &ci) in chosen.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v = v.sym_diff(cycles[ci].edges()).unwrap();
                }
            }
            vertices.push(v);
        }
        if !vertices.iter().all(|v| member.contains(v)) {
            return;
        }
        let min = vertices.iter().min().unwrap().clone();
        let antipode = chosen
            .iter()
            .fold(min.clone(), |acc, &ci| acc.sym_diff(cycles[ci].edges()).unwrap());
        out.insert((
            min.id_string(),
            antipode.id_string(),
            chosen.iter().map(|&ci| cycles[ci].id()).collect(),
        ));
        if k == max_dim {
            return;
        }
        for next in from..cycles.len() {
            if chosen
                .iter()
                .all(|&ci| cycles[ci].edges().independent(cycles[next].edges()).unwrap())
            {
                chosen.push(next);
                visit(g, cycles, member, base, chosen, next + 1, max_dim, out);
                chosen.pop();
            }
        }
    }

    for base in d {
        let mut chosen = Vec::new();
        visit(g, &cycles, &member, base, &mut chosen, 0, max_dim, &mut out);
    }
    out
}

/// H1 of the 2-skeleton from the cellular chain complex: rank by exact
/// Gaussian elimination, torsion from the Smith form of the 2-boundary.
pub fn cellular_h1(x: &CubeComplex) -> (usize, Vec<u64>) {
    let vertices = x.vertices();
    if vertices.is_empty() {
        return (0, Vec::new());
    }
    let one_cells: Vec<_> = x.cubes_of_dim(1).collect();
    let two_cells: Vec<_> = x.cubes_of_dim(2).collect();
    let vertex_index: HashMap<&EdgeSet, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let edge_index: HashMap<(usize, usize), usize> = one_cells
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let u = vertex_index[&c.vertices[0]];
            let v = vertex_index[&c.vertices[1]];
            ((u.min(v), u.max(v)), i)
        })
        .collect();

    // ∂1: edges → vertices, head − tail with the min→antipode orientation.
    let d1: Vec<Vec<i128>> = one_cells
        .iter()
        .map(|c| {
            let mut row = vec![0i128; vertices.len()];
            let u = vertex_index[&c.vertices[0]];
            let v = vertex_index[&c.vertices[1]];
            row[v] += 1;
            row[u] -= 1;
            row
        })
        .collect();

    // ∂2: squares → edges, walking the boundary loop A → sA → stA → tA → A.
    let signed_edge = |a: usize, b: usize| -> (usize, i128) {
        let idx = edge_index[&(a.min(b), a.max(b))];
        if a < b {
            (idx, 1)
        } else {
            (idx, -1)
        }
    };
    let d2: Vec<Vec<i128>> = two_cells
        .iter()
        .map(|c| {
            let a = vertex_index[&c.vertices[0]];
            let sa = vertex_index[&c.vertices[1]];
            let ta = vertex_index[&c.vertices[2]];
            let sta = vertex_index[&c.vertices[3]];
            let mut row = vec![0i128; one_cells.len()];
            // Boundary loop A → sA → stA → tA → A.
            for (x, y) in [(a, sa), (sa, sta), (sta, ta), (ta, a)] {
                let (i, s) = signed_edge(x, y);
                row[i] += s;
            }
            row
        })
        .collect();

    let rank_d1 = rank_over_q(&d1);
    let rank_d2 = rank_over_q(&d2);
    let rank = (one_cells.len() - rank_d1).saturating_sub(rank_d2);
    let torsion: Vec<u64> = smith_normal_form(d2)
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect();
    (rank, torsion)
}

/// Census oracle: for every independent set of odd cycles (by subset
/// enumeration) and every perfect matching of the corresponding residual
/// graph, build the extended labeling, classify it, and collect the realized
/// odd-cycle sets.
pub fn census_oracle(g: &Arc<Hypergraph>) -> BTreeSet<Vec<String>> {
    use glidecube_core::{classify_labeling, enumerate_perfect_matchings, labelings};

    let odd = all_odd_cycles(g);
    let mut realized = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn recurse(
        g: &Arc<Hypergraph>,
        odd: &[Cycle],
        chosen: &mut Vec<usize>,
        from: usize,
        realized: &mut BTreeSet<Vec<String>>,
    ) {
        let c: Vec<Cycle> = chosen.iter().map(|&i| odd[i].clone()).collect();
        try_c(g, &c, realized);
        for next in from..odd.len() {
            if chosen
                .iter()
                .all(|&i| odd[i].edges().independent(odd[next].edges()).unwrap())
            {
                chosen.push(next);
                recurse(g, odd, chosen, next + 1, realized);
                chosen.pop();
            }
        }
    }

    fn try_c(g: &Arc<Hypergraph>, c: &[Cycle], realized: &mut BTreeSet<Vec<String>>) {
        use glidecube_core::VertexSet;
        let deleted = c.iter().fold(VertexSet::empty(g), |acc, cy| {
            acc.union(&cy.edges().boundary_vertices()).unwrap()
        });
        let kept_vertices: Vec<String> = (0..g.vertex_count())
            .filter(|&v| !deleted.contains(v))
            .map(|v| g.vertex_id(v).to_owned())
            .collect();
        let residual_matchings: Vec<Option<Matching>> = if kept_vertices.is_empty() {
            vec![None]
        } else {
            let kept_edges: Vec<(String, Vec<String>)> = (0..g.edge_count())
                .filter(|&e| g.edge_vertices(e).all(|v| !deleted.contains(v)))
                .map(|e| {
                    (
                        g.edge_id(e).to_owned(),
                        g.edge_vertices(e).map(|v| g.vertex_id(v).to_owned()).collect(),
                    )
                })
                .collect();
            match Hypergraph::graph(kept_vertices, kept_edges) {
                Err(_) => return, // isolated survivor: no labeling
                Ok(sub) => {
                    let ms = enumerate_perfect_matchings(&sub);
                    if ms.is_empty() {
                        return;
                    }
                    ms.into_iter().map(Some).collect()
                }
            }
        };
        for m in residual_matchings {
            let l = labelings::extend_labeling(g, c, m.as_ref());
            let class = classify_labeling(&l).expect("constructed labelings are dimer labelings");
            realized.insert(class.odd_cycles.iter().map(Cycle::id).collect());
        }
    }

    recurse(g, &odd, &mut chosen, 0, &mut realized);
    realized
}

// ---------------------------------------------------------------------------
// Loop sampling

/// A random loop at `base`: a product of up to three spanning-tree generator
/// loops and their reversals. Empty when the component is a tree.
pub fn random_loop(
    x: &CubeComplex,
    base: &EdgeSet,
    rng: &mut impl Rng,
) -> glidecube_core::EdgePath {
    use glidecube_core::{generator_loops, EdgePath};
    let generators = generator_loops(x, base).expect("base in complex");
    let mut path = EdgePath::empty(base.clone());
    if generators.is_empty() {
        return path;
    }
    let pieces = rng.gen_range(1..=3usize);
    for _ in 0..pieces {
        let pick = &generators[rng.gen_range(0..generators.len())];
        let piece = if rng.gen_bool(0.5) {
            pick.clone()
        } else {
            pick.reversed()
        };
        path = path.concat(&piece).expect("loops at the same base");
    }
    path
}
