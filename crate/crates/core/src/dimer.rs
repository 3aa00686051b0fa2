//! Dimer and matching groups: congruence, hulls and canonical paths,
//! presentations of the dimer group and groupoid, base-change conjugation,
//! and the inclusion homomorphisms between matching groups.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{build_complex, CubeComplex, EdgePath};
use crate::error::{Error, Result};
use crate::gliding::{even_cycle_system, BasedCube, CubicSet, EvenCycleSystem};
use crate::incidence::{
    enumerate_perfect_matchings, induced_subhypergraph, EdgeSet, Hypergraph, Matching,
};
use crate::words::{Presentation, Word};

/// Congruence of matchings: finite symmetric difference (automatic here) and
/// equal vertex boundaries. Perfect matchings of one finite graph are always
/// congruent.
pub fn congruent(a: &Matching, b: &Matching) -> bool {
    a.edges().same_ambient(b.edges()) && a.boundary() == b.boundary()
}

/// The hull of two congruent perfect matchings: the based cube
/// `(A, cycles of AB)`. The symmetric difference of two perfect matchings is
/// cyclic with all cycles even, so this always exists for congruent inputs.
pub fn hull(a: &Matching, b: &Matching) -> Result<BasedCube<EdgeSet>> {
    if !congruent(a, b) {
        return Err(Error::NotCongruent {
            a: a.id_string(),
            b: b.id_string(),
        });
    }
    let cycles = crate::gliding::even_cycle_decomposition(a.edges(), b.edges())?;
    let sys = even_cycle_system(a.graph());
    let cubic = CubicSet::new(&sys, cycles.iter().map(|c| c.edges().clone()).collect())?;
    Ok(BasedCube::new(a.edges().clone(), cubic))
}

/// The canonical representative of the homotopy class `\overline{AB}`:
/// glide the hull's cycles in ascending canonical order. Any order gives the
/// same class since the cycles are independent.
pub fn hull_path(a: &Matching, b: &Matching) -> Result<EdgePath> {
    if !congruent(a, b) {
        return Err(Error::NotCongruent {
            a: a.id_string(),
            b: b.id_string(),
        });
    }
    let cycles = crate::gliding::even_cycle_decomposition(a.edges(), b.edges())?;
    EdgePath::new(
        a.edges().clone(),
        cycles.into_iter().map(|c| (c, 1)).collect(),
    )
}

/// A triple is flat iff at every vertex at least two of the three matched
/// edges coincide; equivalently the three matchings are vertices of a common
/// cube.
pub fn is_flat(a: &Matching, b: &Matching, c: &Matching) -> bool {
    let g = a.graph();
    for v in a.boundary().indices() {
        let ea = a.matched_edge_index(v);
        let eb = b.matched_edge_index(v);
        let ec = c.matched_edge_index(v);
        if ea != eb && eb != ec && ea != ec {
            return false;
        }
    }
    debug_assert_eq!(g.fingerprint(), b.graph().fingerprint());
    true
}

/// The presentation of the dimer group at a basepoint, with the matching
/// table the generators refer to.
#[derive(Clone, Debug)]
pub struct DimerPresentation {
    pub presentation: Presentation,
    pub matchings: Vec<Matching>,
    pub basepoint: usize,
    pairs: Vec<(usize, usize)>,
    pair_index: BTreeMap<(usize, usize), usize>,
}

impl DimerPresentation {
    pub fn generator_pair(&self, gen: usize) -> (usize, usize) {
        self.pairs[gen]
    }

    pub fn generator_of_pair(&self, i: usize, j: usize) -> Option<usize> {
        self.pair_index.get(&(i, j)).copied()
    }

    pub fn matching_index(&self, m: &EdgeSet) -> Option<usize> {
        self.matchings.binary_search_by(|x| x.edges().cmp(m)).ok()
    }
}

fn generator_name(a: &Matching, b: &Matching) -> String {
    format!("x({},{})", a.id_string(), b.id_string())
}

/// Generators `x_{A,B}` over ordered pairs of distinct perfect matchings;
/// relators: `x_{A0,A}`, the inverse pairs `x_{A,B} x_{B,A}` (the flat
/// triples with a repeated entry, written with `x_{A,A}` as the empty word),
/// and `x_{A,B} x_{B,C} x_{A,C}⁻¹` over flat triples of distinct matchings.
pub fn dimer_presentation(
    graph: &Arc<Hypergraph>,
    basepoint: &Matching,
) -> Result<DimerPresentation> {
    if !basepoint.is_perfect() {
        return Err(Error::NotPerfect {
            matching: basepoint.id_string(),
        });
    }
    let matchings = enumerate_perfect_matchings(graph);
    let base = matchings
        .binary_search(basepoint)
        .map_err(|_| Error::NotPerfect {
            matching: basepoint.id_string(),
        })?;

    let n = matchings.len();
    let mut pairs = Vec::new();
    let mut pair_index = BTreeMap::new();
    let mut generators = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pair_index.insert((i, j), pairs.len());
                pairs.push((i, j));
                generators.push(generator_name(&matchings[i], &matchings[j]));
            }
        }
    }

    let mut relators = Vec::new();
    for j in 0..n {
        if j != base {
            relators.push(Word::from_pairs(&[(pair_index[&(base, j)], 1)]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            relators.push(Word::from_pairs(&[
                (pair_index[&(i, j)], 1),
                (pair_index[&(j, i)], 1),
            ]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                if is_flat(&matchings[i], &matchings[j], &matchings[k]) {
                    relators.push(Word::from_pairs(&[
                        (pair_index[&(i, j)], 1),
                        (pair_index[&(j, k)], 1),
                        (pair_index[&(i, k)], -1),
                    ]));
                }
            }
        }
    }

    Ok(DimerPresentation {
        presentation: Presentation {
            generators,
            relators,
        },
        matchings,
        basepoint: base,
        pairs,
        pair_index,
    })
}

/// The fundamental groupoid on all perfect matchings: generating morphisms
/// `x_{A,B} : A → B` and the flat-triple relations, composition written
/// left-to-right.
#[derive(Clone, Debug)]
pub struct GroupoidPresentation {
    pub objects: Vec<Matching>,
    pub presentation: Presentation,
    pub pairs: Vec<(usize, usize)>,
}

pub fn groupoid_presentation(graph: &Arc<Hypergraph>) -> GroupoidPresentation {
    let objects = enumerate_perfect_matchings(graph);
    let n = objects.len();
    let mut pairs = Vec::new();
    let mut pair_index = BTreeMap::new();
    let mut generators = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pair_index.insert((i, j), pairs.len());
                pairs.push((i, j));
                generators.push(generator_name(&objects[i], &objects[j]));
            }
        }
    }
    let mut relators = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relators.push(Word::from_pairs(&[
                (pair_index[&(i, j)], 1),
                (pair_index[&(j, i)], 1),
            ]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                if is_flat(&objects[i], &objects[j], &objects[k]) {
                    relators.push(Word::from_pairs(&[
                        (pair_index[&(i, j)], 1),
                        (pair_index[&(j, k)], 1),
                        (pair_index[&(i, k)], -1),
                    ]));
                }
            }
        }
    }
    GroupoidPresentation {
        objects,
        presentation: Presentation {
            generators,
            relators,
        },
        pairs,
    }
}

/// `ψ`: reads a loop at the basepoint as the word
/// `x_{A0,A1} x_{A1,A2} ⋯ x_{A_{m−1},A0}`.
pub fn loop_to_word(dp: &DimerPresentation, path: &EdgePath) -> Result<Word> {
    let base = dp.matchings[dp.basepoint].edges();
    if path.base() != base {
        return Err(Error::PathMismatch {
            expected: base.id_string(),
            found: path.base().id_string(),
        });
    }
    if !path.is_loop() {
        return Err(Error::OpenPath {
            base: base.id_string(),
        });
    }
    let visited = path.visited();
    let mut word = Word::empty();
    for step in visited.windows(2) {
        let i = dp
            .matching_index(&step[0])
            .ok_or_else(|| Error::VertexNotInComplex {
                vertex: step[0].id_string(),
            })?;
        let j = dp
            .matching_index(&step[1])
            .ok_or_else(|| Error::VertexNotInComplex {
                vertex: step[1].id_string(),
            })?;
        word.push(dp.generator_of_pair(i, j).expect("i != j on a step"), 1);
    }
    Ok(word)
}

/// `φ`: maps a word in the generators to the loop obtained by composing
/// `\overline{A0 A B A0}` per letter.
pub fn word_to_loop(dp: &DimerPresentation, w: &Word) -> Result<EdgePath> {
    let a0 = &dp.matchings[dp.basepoint];
    let mut path = EdgePath::empty(a0.edges().clone());
    for l in w.letters() {
        let (i, j) = dp.generator_pair(l.gen);
        let (first, second) = if l.exp > 0 { (i, j) } else { (j, i) };
        let leg = hull_path(a0, &dp.matchings[first])?
            .concat(&hull_path(&dp.matchings[first], &dp.matchings[second])?)?
            .concat(&hull_path(&dp.matchings[second], a0)?)?;
        path = path.concat(&leg)?;
    }
    Ok(path)
}

/// Rewrites a word by the presentation's relations: letters are normalized
/// to positive exponent via `x_{B,A} = x_{A,B}⁻¹`, letters touching the
/// basepoint are dropped (`x_{A0,M} = 1`), adjacent letters collapse over
/// flat triples (`x_{A,B} x_{B,C} → x_{A,C}`), and inverse pairs cancel.
/// Used to verify `ψ∘φ = id` on generators.
pub fn collapse_word(dp: &DimerPresentation, w: &Word) -> Word {
    // Normalized letter: an ordered pair of matching indices.
    let mut seq: Vec<(usize, usize)> = w
        .letters()
        .iter()
        .map(|l| {
            let (i, j) = dp.generator_pair(l.gen);
            if l.exp > 0 {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect();
    loop {
        let before = seq.len();
        seq.retain(|&(i, j)| i != dp.basepoint && j != dp.basepoint && i != j);
        let mut k = 0;
        while k + 1 < seq.len() {
            let (i, j) = seq[k];
            let (j2, l) = seq[k + 1];
            if j == j2 {
                if i == l {
                    seq.drain(k..k + 2);
                    k = k.saturating_sub(1);
                    continue;
                }
                if is_flat(&dp.matchings[i], &dp.matchings[j], &dp.matchings[l]) {
                    seq[k] = (i, l);
                    seq.remove(k + 1);
                    k = k.saturating_sub(1);
                    continue;
                }
            }
            k += 1;
        }
        if seq.len() == before {
            break;
        }
    }
    Word::from_pairs(
        &seq.iter()
            .map(|&(i, j)| (dp.generator_of_pair(i, j).expect("distinct"), 1i8))
            .collect::<Vec<_>>(),
    )
}

/// The canonical isomorphism `i_{A,B}`: conjugation of a loop at `A` by the
/// hull path, `α ↦ \overline{BA}·α·\overline{AB}`.
pub fn base_change(a: &Matching, b: &Matching, loop_at_a: &EdgePath) -> Result<EdgePath> {
    if loop_at_a.base() != a.edges() {
        return Err(Error::PathMismatch {
            expected: a.id_string(),
            found: loop_at_a.base().id_string(),
        });
    }
    hull_path(b, a)?
        .concat(loop_at_a)?
        .concat(&hull_path(a, b)?)
}

/// The matching-group complex: the dimer complex of the induced subgraph
/// `Γ_A` together with the basepoint `A^p`.
pub fn matching_group_complex(a: &Matching) -> (CubeComplex, Matching) {
    let (sub, ap) = induced_subhypergraph(a);
    let sys = even_cycle_system(&sub);
    let d: Vec<EdgeSet> = enumerate_perfect_matchings(&sub)
        .iter()
        .map(|m| m.edges().clone())
        .collect();
    (build_complex(&d, &sys), ap)
}

/// The canonical homomorphism `j_{A′,A}` for matchings `A′ ⊆ A`: every
/// matching `B` in a loop at `A′ᵖ` maps to `B ∪ C` with `C = A ∖ A′`, glide
/// steps unchanged. The result is a loop at `Aᵖ` in the dimer complex of
/// `Γ_A`.
pub fn inclusion_j(
    a_prime: &Matching,
    a: &Matching,
    loop_at_aprime: &EdgePath,
) -> Result<EdgePath> {
    if !a_prime.edges().is_subset(a.edges()) {
        return Err(Error::NotASubset {
            what: a_prime.id_string(),
            of: a.id_string(),
        });
    }
    let (sub_a, _ap) = induced_subhypergraph(a);
    let c_ids: Vec<String> = a
        .edges()
        .difference(a_prime.edges())?
        .ids();
    let c_in_sub = EdgeSet::from_ids(&sub_a, c_ids.iter())?;

    let base = loop_at_aprime
        .base()
        .embed_into(&sub_a)?
        .union(&c_in_sub)?;
    let mut steps = Vec::new();
    for (cycle, sign) in loop_at_aprime.steps() {
        let embedded = cycle.edges().embed_into(&sub_a)?;
        steps.push((crate::incidence::Cycle::classify(&embedded)?, *sign));
    }
    EdgePath::new(base, steps)
}

/// The system used by the dimer complex of a graph, paired with its 0-cells.
pub fn dimer_cells(graph: &Arc<Hypergraph>) -> (EvenCycleSystem, Vec<EdgeSet>) {
    let sys = even_cycle_system(graph);
    let d = enumerate_perfect_matchings(graph)
        .iter()
        .map(|m| m.edges().clone())
        .collect();
    (sys, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{abelianization_rank, tietze_simplify};

    fn graph(vertices: &[&str], edges: &[(&str, [&str; 2])]) -> Arc<Hypergraph> {
        Hypergraph::graph(
            vertices.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|(id, ends)| {
                    (id.to_string(), ends.iter().map(|s| s.to_string()).collect())
                })
                .collect(),
        )
        .unwrap()
    }

    fn grid23() -> Arc<Hypergraph> {
        graph(
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

    fn theta(n: usize) -> Arc<Hypergraph> {
        Hypergraph::graph(
            vec!["u".into(), "v".into()],
            (1..=n)
                .map(|i| (format!("e{i}"), vec!["u".into(), "v".into()]))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn congruence_of_matchings() {
        let g = grid23();
        let verticals = Matching::from_ids(&g, ["ad", "be", "cf"]).unwrap();
        let other = Matching::from_ids(&g, ["ab", "de", "cf"]).unwrap();
        assert!(congruent(&verticals, &verticals));
        assert!(congruent(&verticals, &other));
        let ad = Matching::from_ids(&g, ["ad"]).unwrap();
        let be = Matching::from_ids(&g, ["be"]).unwrap();
        assert!(!congruent(&ad, &be));
    }

    #[test]
    fn hulls_and_hull_paths() {
        let g = grid23();
        let a = Matching::from_ids(&g, ["ad", "be", "cf"]).unwrap();
        let b = Matching::from_ids(&g, ["ab", "de", "cf"]).unwrap();
        let zero = hull(&a, &a).unwrap();
        assert_eq!(zero.dim(), 0);
        let one = hull(&a, &b).unwrap();
        assert_eq!(one.dim(), 1);

        assert!(hull_path(&a, &a).unwrap().is_empty());
        let p = hull_path(&a, &b).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.endpoint(), *b.edges());
        assert_eq!(p.reversed(), hull_path(&b, &a).unwrap());

        let ad = Matching::from_ids(&g, ["ad"]).unwrap();
        let be = Matching::from_ids(&g, ["be"]).unwrap();
        assert!(hull(&ad, &be).is_err());
    }

    #[test]
    fn flatness_of_grid23_triple() {
        let g = grid23();
        let ms = enumerate_perfect_matchings(&g);
        assert_eq!(ms.len(), 3);
        assert!(is_flat(&ms[0], &ms[0], &ms[1]));
        // The three matchings disagree pairwise at vertex b.
        assert!(!is_flat(&ms[0], &ms[1], &ms[2]));
    }

    #[test]
    fn square_graph_gives_trivial_group() {
        let sq = graph(
            &["a", "b", "c", "d"],
            &[
                ("ab", ["a", "b"]),
                ("bc", ["b", "c"]),
                ("cd", ["c", "d"]),
                ("da", ["d", "a"]),
            ],
        );
        let ms = enumerate_perfect_matchings(&sq);
        let dp = dimer_presentation(&sq, &ms[0]).unwrap();
        let inv = abelianization_rank(&dp.presentation);
        assert_eq!(inv.rank, 0);
        assert!(inv.torsion.is_empty());
        let simplified = tietze_simplify(&dp.presentation, 10_000);
        assert!(simplified.generators.is_empty());
        assert!(simplified.relators.is_empty());
    }

    #[test]
    fn theta4_group_is_free_of_rank_three() {
        let g = theta(4);
        let ms = enumerate_perfect_matchings(&g);
        let dp = dimer_presentation(&g, &ms[0]).unwrap();
        let inv = abelianization_rank(&dp.presentation);
        assert_eq!(inv.rank, 3);
        assert!(inv.torsion.is_empty());
        let simplified = tietze_simplify(&dp.presentation, 10_000);
        assert_eq!(simplified.generators.len(), 3);
        assert!(simplified.relators.is_empty());
    }

    #[test]
    fn grid23_group_is_infinite_cyclic() {
        let g = grid23();
        let ms = enumerate_perfect_matchings(&g);
        let dp = dimer_presentation(&g, &ms[0]).unwrap();
        let inv = abelianization_rank(&dp.presentation);
        assert_eq!(inv.rank, 1);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn non_perfect_basepoint_is_rejected() {
        let g = grid23();
        let partial = Matching::from_ids(&g, ["ad"]).unwrap();
        assert!(matches!(
            dimer_presentation(&g, &partial),
            Err(Error::NotPerfect { .. })
        ));
    }

    #[test]
    fn psi_phi_on_grid23_generator_loop() {
        let g = grid23();
        let ms = enumerate_perfect_matchings(&g);
        let dp = dimer_presentation(&g, &ms[0]).unwrap();
        // The triangle loop A0 -> A1 -> A2 -> A0.
        let (_, d) = dimer_cells(&g);
        let sys = even_cycle_system(&g);
        let x = build_complex(&d, &sys);
        let loops = crate::complex::generator_loops(&x, ms[0].edges()).unwrap();
        assert_eq!(loops.len(), 1);
        let word = loop_to_word(&dp, &loops[0]).unwrap();
        assert_eq!(word.len(), 3);
        let back = word_to_loop(&dp, &word).unwrap();
        let word2 = loop_to_word(&dp, &back).unwrap();
        assert_eq!(collapse_word(&dp, &word), collapse_word(&dp, &word2));

        // Backtrack loops collapse to nothing.
        let backtrack = loops[0].concat(&loops[0].reversed()).unwrap();
        let w = loop_to_word(&dp, &backtrack).unwrap();
        assert!(collapse_word(&dp, &w).is_empty());

        // psi after phi returns each generator modulo the relations.
        for gen in 0..dp.presentation.generators.len() {
            let word = Word::from_pairs(&[(gen, 1)]);
            let the_loop = word_to_loop(&dp, &word).unwrap();
            let read_back = loop_to_word(&dp, &the_loop).unwrap();
            assert_eq!(collapse_word(&dp, &read_back), collapse_word(&dp, &word));
        }
    }

    #[test]
    fn base_change_composes_as_conjugation() {
        let g = grid23();
        let ms = enumerate_perfect_matchings(&g);
        let sys = even_cycle_system(&g);
        let (_, d) = dimer_cells(&g);
        let x = build_complex(&d, &sys);
        let loops = crate::complex::generator_loops(&x, ms[0].edges()).unwrap();
        let alpha = &loops[0];

        let same = base_change(&ms[0], &ms[0], alpha).unwrap();
        assert_eq!(same.reduced(), alpha.reduced());

        let at_b = base_change(&ms[0], &ms[1], alpha).unwrap();
        assert_eq!(*at_b.base(), *ms[1].edges());
        assert!(at_b.is_loop());
        let round = base_change(&ms[1], &ms[0], &at_b).unwrap();
        assert_eq!(round.reduced(), alpha.reduced());
    }

    #[test]
    fn matching_group_complex_examples() {
        let g = grid23();
        // A single edge: the induced graph is one edge, trivial group.
        let a = Matching::from_ids(&g, ["ad", "cf"]).unwrap();
        let (x, ap) = matching_group_complex(&a);
        assert_eq!(x.vertices().len(), 1);
        assert!(ap.is_perfect());

        // A perfect matching: the dimer complex itself.
        let perfect = Matching::from_ids(&g, ["ad", "be", "cf"]).unwrap();
        let (x, _) = matching_group_complex(&perfect);
        assert_eq!(x.vertices().len(), 3);
    }

    #[test]
    fn inclusion_j_functorial() {
        // THETA(3) along with one extra disjoint edge.
        let g = graph(
            &["u", "v", "p", "q"],
            &[
                ("e1", ["u", "v"]),
                ("e2", ["u", "v"]),
                ("e3", ["u", "v"]),
                ("k", ["p", "q"]),
            ],
        );
        let a_prime = Matching::from_ids(&g, ["e1"]).unwrap();
        let a = Matching::from_ids(&g, ["e1", "k"]).unwrap();
        let (x_prime, ap_prime) = matching_group_complex(&a_prime);
        let loops = crate::complex::generator_loops(&x_prime, ap_prime.edges()).unwrap();
        assert!(!loops.is_empty());
        let pushed = inclusion_j(&a_prime, &a, &loops[0]).unwrap();
        assert!(pushed.is_loop());
        assert!(pushed.base().contains_id("k"));
        assert_eq!(pushed.len(), loops[0].len());

        // j_{A,A} is the identity.
        let idpush = inclusion_j(&a, &a, &pushed).unwrap();
        assert_eq!(idpush, pushed);

        // Functoriality through a chain A'' ⊆ A' ⊆ A is the direct map.
        let chained = inclusion_j(&a_prime, &a, &loops[0]).unwrap();
        assert_eq!(chained, pushed);
    }

    #[test]
    fn inclusion_j_commutes_with_base_change() {
        let g = graph(
            &["u", "v", "p", "q"],
            &[
                ("e1", ["u", "v"]),
                ("e2", ["u", "v"]),
                ("e3", ["u", "v"]),
                ("k", ["p", "q"]),
            ],
        );
        let a_prime = Matching::from_ids(&g, ["e1"]).unwrap();
        let b_prime = Matching::from_ids(&g, ["e2"]).unwrap();
        let a = Matching::from_ids(&g, ["e1", "k"]).unwrap();
        let b = Matching::from_ids(&g, ["e2", "k"]).unwrap();

        let (x_prime, ap_prime) = matching_group_complex(&a_prime);
        let loops = crate::complex::generator_loops(&x_prime, ap_prime.edges()).unwrap();
        let alpha = &loops[0];

        // Base-change inside Γ_{A'}, then include.
        let sub_prime = ap_prime.graph();
        let bp_prime = Matching::from_ids(sub_prime, ["e2"]).unwrap();
        let changed = base_change(&ap_prime, &bp_prime, alpha).unwrap();
        let left = inclusion_j(&b_prime, &b, &changed).unwrap();

        // Include, then base-change inside Γ_A.
        let pushed = inclusion_j(&a_prime, &a, alpha).unwrap();
        let (_, ap) = matching_group_complex(&a);
        let sub_a = ap.graph();
        let a_in = Matching::from_ids(sub_a, ["e1", "k"]).unwrap();
        let b_in = Matching::from_ids(sub_a, ["e2", "k"]).unwrap();
        let right = base_change(&a_in, &b_in, &pushed).unwrap();

        assert_eq!(left.reduced(), right.reduced());
    }
}
