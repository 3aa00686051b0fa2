//! Gliding systems, cubic sets, based cubes, and the reflection operation.
//!
//! The trait is generic over the ambient group so that tests can host the
//! free-abelian and empty-independence systems, but the only first-class
//! instance is the even-cycle system in the power group of a hypergraph's
//! edges, where glides are even cycles and independence is vertex
//! disjointness.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::incidence::{decompose_cyclic, Cycle, EdgeSet, Hypergraph, Matching};

/// A group together with a set of glides and an independence relation.
/// Independent glides must commute with product distinct from the unit;
/// the unit is never a glide.
pub trait GlidingSystem {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn unit(&self) -> Self::Elem;
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn is_glide(&self, s: &Self::Elem) -> bool;
    /// Only meaningful when both arguments are glides.
    fn independent(&self, s: &Self::Elem, t: &Self::Elem) -> bool;
}

/// Left gliding: `A ↦ sA`.
pub fn glide<S: GlidingSystem>(sys: &S, a: &S::Elem, s: &S::Elem) -> Result<S::Elem> {
    if !sys.is_glide(s) {
        return Err(Error::NotAGlide {
            set: format!("{s:?}"),
        });
    }
    Ok(sys.product(s, a))
}

/// Finite and pairwise independent.
pub fn is_precubic<S: GlidingSystem>(sys: &S, glides: &[S::Elem]) -> bool {
    if !glides.iter().all(|g| sys.is_glide(g)) {
        return false;
    }
    for i in 0..glides.len() {
        for j in i + 1..glides.len() {
            if !sys.independent(&glides[i], &glides[j]) {
                return false;
            }
        }
    }
    true
}

/// `[T] = ∏_{s ∈ T} s`; well-defined on pre-cubic sets since members commute.
pub fn subset_product<S: GlidingSystem>(sys: &S, subset: &[S::Elem]) -> S::Elem {
    subset
        .iter()
        .fold(sys.unit(), |acc, s| sys.product(&acc, s))
}

/// Pre-cubic with pairwise distinct subset products. In a power-group system
/// with support-disjoint independence this is automatic for pre-cubic sets;
/// the generic check exists so property tests can exercise non-regular
/// systems.
pub fn is_cubic<S: GlidingSystem>(sys: &S, glides: &[S::Elem]) -> bool {
    if !is_precubic(sys, glides) {
        return false;
    }
    let k = glides.len();
    let mut products = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let chosen: Vec<S::Elem> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| glides[i].clone())
            .collect();
        products.push(subset_product(sys, &chosen));
    }
    products.sort();
    products.windows(2).all(|w| w[0] != w[1])
}

/// A sorted list of pairwise independent glides.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CubicSet<E> {
    glides: Vec<E>,
}

impl<E: Clone + Eq + Ord + Hash + fmt::Debug> CubicSet<E> {
    pub fn new<S: GlidingSystem<Elem = E>>(sys: &S, mut glides: Vec<E>) -> Result<Self> {
        glides.sort();
        glides.dedup();
        if !is_precubic(sys, &glides) {
            return Err(Error::Invalid(format!(
                "glides are not pairwise independent: {glides:?}"
            )));
        }
        Ok(CubicSet { glides })
    }

    pub fn empty() -> Self {
        CubicSet { glides: Vec::new() }
    }

    pub fn glides(&self) -> &[E] {
        &self.glides
    }

    pub fn len(&self) -> usize {
        self.glides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glides.is_empty()
    }

    pub fn contains(&self, g: &E) -> bool {
        self.glides.binary_search(g).is_ok()
    }
}

/// Reflection `S_T = (S ∖ T) ∪ T̄`. Cubic sets stay cubic under reflection;
/// in the power group each glide is its own inverse so `S_T = S`, but the
/// operation is kept generic for the systems hosted in tests.
pub fn reflect<S: GlidingSystem>(
    sys: &S,
    set: &CubicSet<S::Elem>,
    subset: &[S::Elem],
) -> Result<CubicSet<S::Elem>> {
    for t in subset {
        if !set.contains(t) {
            return Err(Error::NotASubset {
                what: format!("{t:?}"),
                of: format!("{:?}", set.glides),
            });
        }
    }
    let mut out: Vec<S::Elem> = set
        .glides
        .iter()
        .filter(|g| !subset.contains(g))
        .cloned()
        .collect();
    out.extend(subset.iter().map(|t| sys.inverse(t)));
    CubicSet::new(sys, out)
}

/// A based cube `(A, S)`: a group element plus a cubic set of glides. Its
/// vertices are the subset products `[T]A`, `T ⊆ S`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasedCube<E> {
    pub base: E,
    pub directions: CubicSet<E>,
}

impl<E: Clone + Eq + Ord + Hash + fmt::Debug> BasedCube<E> {
    pub fn new(base: E, directions: CubicSet<E>) -> Self {
        BasedCube { base, directions }
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }
}

/// The `2^|S|` vertices `[T]A` in subset-mask order (bit `i` of the mask
/// selects the `i`-th direction). Errors if two vertices collide, which
/// signals a non-cubic direction set.
pub fn cube_vertices<S: GlidingSystem>(
    sys: &S,
    cube: &BasedCube<S::Elem>,
) -> Result<Vec<S::Elem>> {
    let k = cube.directions.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let mut v = cube.base.clone();
        for (i, g) in cube.directions.glides().iter().enumerate() {
            if mask & (1 << i) != 0 {
                v = sys.product(g, &v);
            }
        }
        out.push(v);
    }
    let mut sorted = out.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::VertexCollision);
    }
    Ok(out)
}

/// Canonical form for the equivalence class of a based cube: the lex-least
/// vertex together with its antipode `[S]·min`. Equivalent based cubes (the
/// rebasings `([T]A, S_T)`) share all vertices and hence the key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CubeKey<E> {
    pub min_vertex: E,
    pub antipode: E,
}

pub fn canonical_key<S: GlidingSystem>(
    sys: &S,
    cube: &BasedCube<S::Elem>,
) -> Result<CubeKey<S::Elem>> {
    let vertices = cube_vertices(sys, cube)?;
    let min_vertex = vertices.iter().min().expect("cube has vertices").clone();
    let full = subset_product(sys, cube.directions.glides());
    let antipode = sys.product(&full, &min_vertex);
    Ok(CubeKey {
        min_vertex,
        antipode,
    })
}

/// The even-cycle gliding system in the power group `2^E` of a hypergraph:
/// glides are even cycles, independence is vertex disjointness. Regular by
/// the support-disjointness of independent glides.
#[derive(Clone, Debug)]
pub struct EvenCycleSystem {
    graph: Arc<Hypergraph>,
}

pub fn even_cycle_system(graph: &Arc<Hypergraph>) -> EvenCycleSystem {
    EvenCycleSystem {
        graph: graph.clone(),
    }
}

impl EvenCycleSystem {
    pub fn graph(&self) -> &Arc<Hypergraph> {
        &self.graph
    }

    /// Classifies an edge set as an even cycle, if it is one.
    pub fn as_glide(&self, s: &EdgeSet) -> Option<Cycle> {
        Cycle::classify(s).ok().filter(|c| c.is_even())
    }

    /// The glides applicable at `a` discovered inside a family of candidate
    /// 0-cells: the cycles of the products `a·b` over `b` in the family with
    /// `a·b` a single even cycle. For a perfect matching inside the full
    /// dimer set this is exactly the set of even cycles alternating with `a`.
    pub fn alternating_cycles_in(&self, a: &EdgeSet, family: &[EdgeSet]) -> Vec<Cycle> {
        let mut out: Vec<Cycle> = Vec::new();
        for b in family {
            if a == b || !a.same_ambient(b) {
                continue;
            }
            let diff = a.sym_diff(b).expect("same ambient");
            if let Some(c) = self.as_glide(&diff) {
                out.push(c);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl GlidingSystem for EvenCycleSystem {
    type Elem = EdgeSet;

    fn unit(&self) -> EdgeSet {
        EdgeSet::empty(&self.graph)
    }

    fn product(&self, a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
        a.sym_diff(b).expect("same ambient power group")
    }

    fn inverse(&self, a: &EdgeSet) -> EdgeSet {
        a.clone()
    }

    fn is_glide(&self, s: &EdgeSet) -> bool {
        self.as_glide(s).is_some()
    }

    fn independent(&self, s: &EdgeSet, t: &EdgeSet) -> bool {
        s.independent(t).unwrap_or(false)
    }
}

/// Glide a matching along an even cycle that alternates with it.
pub fn glide_matching(m: &Matching, c: &Cycle) -> Result<Matching> {
    if !c.is_alternating(m.edges()) {
        return Err(Error::NotAlternating {
            cycle: c.id(),
            matching: m.id_string(),
        });
    }
    Matching::new(m.edges().sym_diff(c.edges())?)
}

/// The cycles of `a·b`, required to all be even (as they are for two perfect
/// matchings); this is the direction set of the hull of `a` and `b`.
pub fn even_cycle_decomposition(a: &EdgeSet, b: &EdgeSet) -> Result<Vec<Cycle>> {
    let diff = a.sym_diff(b)?;
    let cycles = decompose_cyclic(&diff)?;
    for c in &cycles {
        if !c.is_even() {
            return Err(Error::NoHalves { cycle: c.id() });
        }
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::enumerate_perfect_matchings;

    fn grid23() -> Arc<Hypergraph> {
        Hypergraph::graph(
            ["a", "b", "c", "d", "e", "f"].map(String::from).to_vec(),
            vec![
                ("ab".into(), vec!["a".into(), "b".into()]),
                ("bc".into(), vec!["b".into(), "c".into()]),
                ("de".into(), vec!["d".into(), "e".into()]),
                ("ef".into(), vec!["e".into(), "f".into()]),
                ("ad".into(), vec!["a".into(), "d".into()]),
                ("be".into(), vec!["b".into(), "e".into()]),
                ("cf".into(), vec!["c".into(), "f".into()]),
            ],
        )
        .unwrap()
    }

    fn theta(n: usize) -> Arc<Hypergraph> {
        Hypergraph::graph(
            vec!["u".into(), "v".into()],
            (1..=n)
                .map(|i| (format!("e{i}"), vec!["u".into(), "v".into()]))
                .collect(),
        )
        .unwrap()
    }

    fn es(g: &Arc<Hypergraph>, ids: &[&str]) -> EdgeSet {
        EdgeSet::from_ids(g, ids.iter().copied()).unwrap()
    }

    #[test]
    fn triangle_has_no_applicable_glides() {
        let t = Hypergraph::graph(
            ["a", "b", "c"].map(String::from).to_vec(),
            vec![
                ("ab".into(), vec!["a".into(), "b".into()]),
                ("bc".into(), vec!["b".into(), "c".into()]),
                ("ca".into(), vec!["c".into(), "a".into()]),
            ],
        )
        .unwrap();
        let sys = even_cycle_system(&t);
        assert!(!sys.is_glide(&EdgeSet::all(&t)));
        let family: Vec<EdgeSet> = enumerate_perfect_matchings(&t)
            .iter()
            .map(|m| m.edges().clone())
            .collect();
        assert!(family.is_empty());
    }

    #[test]
    fn theta3_has_three_glides_none_independent() {
        let g = theta(3);
        let sys = even_cycle_system(&g);
        let pairs = [["e1", "e2"], ["e1", "e3"], ["e2", "e3"]];
        let glides: Vec<EdgeSet> = pairs.iter().map(|p| es(&g, p)).collect();
        for s in &glides {
            assert!(sys.is_glide(s));
        }
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(!sys.independent(&glides[i], &glides[j]));
            }
        }
        let family: Vec<EdgeSet> = enumerate_perfect_matchings(&g)
            .iter()
            .map(|m| m.edges().clone())
            .collect();
        let at_e1 = sys.alternating_cycles_in(&es(&g, &["e1"]), &family);
        assert_eq!(at_e1.len(), 2);
    }

    #[test]
    fn square_graph_has_one_glide() {
        let sq = Hypergraph::graph(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            vec![
                ("ab".into(), vec!["a".into(), "b".into()]),
                ("bc".into(), vec!["b".into(), "c".into()]),
                ("cd".into(), vec!["c".into(), "d".into()]),
                ("da".into(), vec!["d".into(), "a".into()]),
            ],
        )
        .unwrap();
        let sys = even_cycle_system(&sq);
        // The only even cycle is the whole square.
        let mut glide_count = 0;
        for mask in 1u32..(1 << 4) {
            let set = EdgeSet::from_indices(&sq, (0..4).filter(|i| mask & (1 << i) != 0));
            if sys.is_glide(&set) {
                glide_count += 1;
            }
        }
        assert_eq!(glide_count, 1);
    }

    #[test]
    fn glide_involution_and_figure_one() {
        let g = grid23();
        let sys = even_cycle_system(&g);
        let verticals = es(&g, &["ad", "be", "cf"]);
        let s1 = es(&g, &["ab", "be", "de", "ad"]);
        let once = glide(&sys, &verticals, &s1).unwrap();
        assert_eq!(once, es(&g, &["ab", "de", "cf"]));
        let twice = glide(&sys, &once, &s1).unwrap();
        assert_eq!(twice, verticals);
    }

    #[test]
    fn independent_glides_commute() {
        let two_squares = Hypergraph::graph(
            ["a", "b", "c", "d", "p", "q", "r", "s"].map(String::from).to_vec(),
            vec![
                ("ab".into(), vec!["a".into(), "b".into()]),
                ("bc".into(), vec!["b".into(), "c".into()]),
                ("cd".into(), vec!["c".into(), "d".into()]),
                ("da".into(), vec!["d".into(), "a".into()]),
                ("pq".into(), vec!["p".into(), "q".into()]),
                ("qr".into(), vec!["q".into(), "r".into()]),
                ("rs".into(), vec!["r".into(), "s".into()]),
                ("sp".into(), vec!["s".into(), "p".into()]),
            ],
        )
        .unwrap();
        let sys = even_cycle_system(&two_squares);
        let s = es(&two_squares, &["ab", "bc", "cd", "da"]);
        let t = es(&two_squares, &["pq", "qr", "rs", "sp"]);
        assert!(sys.independent(&s, &t));
        let a = es(&two_squares, &["ab", "cd", "pq", "rs"]);
        let st = glide(&sys, &glide(&sys, &a, &s).unwrap(), &t).unwrap();
        let ts = glide(&sys, &glide(&sys, &a, &t).unwrap(), &s).unwrap();
        assert_eq!(st, ts);

        let cubic = CubicSet::new(&sys, vec![s.clone(), t.clone()]).unwrap();
        assert!(is_cubic(&sys, cubic.glides()));
        let cube = BasedCube::new(a.clone(), cubic.clone());
        let verts = cube_vertices(&sys, &cube).unwrap();
        assert_eq!(verts.len(), 4);

        // All rebasings give the same canonical key.
        let key = canonical_key(&sys, &cube).unwrap();
        for v in &verts {
            let rebased = BasedCube::new(v.clone(), cubic.clone());
            assert_eq!(canonical_key(&sys, &rebased).unwrap(), key);
        }
    }

    #[test]
    fn reflection_in_power_group_is_identity() {
        let g = theta(4);
        let sys = even_cycle_system(&g);
        let s = es(&g, &["e1", "e2"]);
        let set = CubicSet::new(&sys, vec![s.clone()]).unwrap();
        assert_eq!(reflect(&sys, &set, &[]).unwrap(), set);
        assert_eq!(reflect(&sys, &set, &[s.clone()]).unwrap(), set);
        let not_member = es(&g, &["e3", "e4"]);
        assert!(reflect(&sys, &set, &[not_member]).is_err());
    }

    /// Example 3.2.1 in a small abelian group: independence by commutation
    /// alone admits pre-cubic sets that are not cubic, so that system is not
    /// regular, unlike the power-group systems.
    #[test]
    fn commutation_independence_can_be_non_regular() {
        struct KleinFull;
        impl GlidingSystem for KleinFull {
            type Elem = u8; // Z/2 x Z/2 under xor, elements 0..=3
            fn unit(&self) -> u8 {
                0
            }
            fn product(&self, a: &u8, b: &u8) -> u8 {
                a ^ b
            }
            fn inverse(&self, a: &u8) -> u8 {
                *a
            }
            fn is_glide(&self, s: &u8) -> bool {
                *s != 0
            }
            fn independent(&self, s: &u8, t: &u8) -> bool {
                s != t
            }
        }
        let sys = KleinFull;
        let s = vec![1u8, 2, 3];
        assert!(is_precubic(&sys, &s));
        assert!(!is_cubic(&sys, &s));
    }
}
