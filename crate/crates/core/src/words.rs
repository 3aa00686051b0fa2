//! Words, group presentations, right-angled Artin normal forms, typing
//! homomorphisms, abelianization, and Tietze simplification.

use std::collections::BTreeSet;

use crate::complex::{CubeComplex, EdgePath, Orientation};
use crate::error::{Error, Result};
use crate::incidence::{Cycle, Hypergraph};
use crate::snf::smith_normal_form;
use std::sync::Arc;

/// One letter: a generator index with exponent `±1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

/// A word in some generator table, as a list of `±1`-exponent letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        for l in &letters {
            if l.exp != 1 && l.exp != -1 {
                return Err(Error::BadExponent { exp: l.exp as i64 });
            }
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_pairs(pairs: &[(usize, i8)]) -> Word {
        Word {
            letters: pairs
                .iter()
                .map(|&(gen, exp)| Letter { gen, exp })
                .collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, gen: usize, exp: i8) {
        self.letters.push(Letter { gen, exp });
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Plain free reduction: cancel adjacent inverse pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if let Some(top) = out.last() {
                if top.gen == l.gen && top.exp == -l.exp {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        Word { letters: out }
    }

    /// Exponent sum per generator, for a table of `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n];
        for l in &self.letters {
            sums[l.gen] += l.exp as i64;
        }
        sums
    }
}

/// A finite group presentation: named generators and relator words over them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

/// A right-angled Artin group: generators plus a symmetric irreflexive
/// commutation relation.
#[derive(Clone, Debug)]
pub struct RaagSpec {
    pub generators: Vec<String>,
    commuting: BTreeSet<(usize, usize)>,
}

impl RaagSpec {
    pub fn new(generators: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<RaagSpec> {
        let n = generators.len();
        let mut commuting = BTreeSet::new();
        for (i, j) in pairs {
            if i == j {
                return Err(Error::Invalid(
                    "a generator cannot commute with itself in the relation set".into(),
                ));
            }
            if i >= n || j >= n {
                return Err(Error::UnknownGenerator {
                    name: format!("#{}", i.max(j)),
                });
            }
            commuting.insert((i.min(j), i.max(j)));
        }
        Ok(RaagSpec {
            generators,
            commuting,
        })
    }

    pub fn free(generators: Vec<String>) -> RaagSpec {
        RaagSpec {
            generators,
            commuting: BTreeSet::new(),
        }
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        i == j || self.commuting.contains(&(i.min(j), i.max(j)))
    }

    pub fn commuting_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.commuting.iter().copied()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        for l in w.letters() {
            if l.gen >= self.generators.len() {
                return Err(Error::UnknownGenerator {
                    name: format!("#{}", l.gen),
                });
            }
        }
        Ok(())
    }
}

/// Normal form in a right-angled Artin group: cancel every pair `g^ε … g^{−ε}`
/// whose intervening letters all commute with `g`, then take the
/// lexicographically least linearization of the resulting trace. The output
/// is empty iff the word represents the identity, and is identical for all
/// words representing the same element.
pub fn raag_normal_form(w: &Word, spec: &RaagSpec) -> Result<Word> {
    spec.check_word(w)?;
    let mut letters: Vec<Letter> = w.letters().to_vec();

    // Cancellation to fixpoint.
    'outer: loop {
        for i in 0..letters.len() {
            let g = letters[i];
            for j in i + 1..letters.len() {
                if letters[j].gen == g.gen {
                    if letters[j].exp == -g.exp {
                        letters.remove(j);
                        letters.remove(i);
                        continue 'outer;
                    }
                    // Same sign: commutes with itself, keep scanning.
                    continue;
                }
                if !spec.commutes(letters[j].gen, g.gen) {
                    break;
                }
            }
        }
        break;
    }

    // Greedy least linearization of the trace.
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    while !letters.is_empty() {
        let mut best: Option<(usize, Letter)> = None;
        for (p, &cand) in letters.iter().enumerate() {
            let movable = letters[..p]
                .iter()
                .all(|prev| spec.commutes(prev.gen, cand.gen));
            if !movable {
                continue;
            }
            let key = (cand.gen, if cand.exp > 0 { 0 } else { 1 });
            if best.is_none_or(|(_, b)| key < (b.gen, if b.exp > 0 { 0 } else { 1 })) {
                best = Some((p, cand));
            }
        }
        let (p, l) = best.expect("first letter is always movable");
        letters.remove(p);
        out.push(l);
    }
    Ok(Word { letters: out })
}

/// The right-angled Artin group `𝒜` on the glides that occur as 1-cell
/// labels of a complex; commuting pairs are the independent glides.
#[derive(Clone, Debug)]
pub struct CycleRaag {
    pub spec: RaagSpec,
    pub cycles: Vec<Cycle>,
}

impl CycleRaag {
    pub fn cycle_index(&self, c: &Cycle) -> Option<usize> {
        self.cycles.binary_search(c).ok()
    }
}

pub fn raag_of_complex(x: &CubeComplex) -> CycleRaag {
    let mut cycles: Vec<Cycle> = x
        .cubes_of_dim(1)
        .map(|c| c.directions[0].clone())
        .collect();
    cycles.sort();
    cycles.dedup();
    let names: Vec<String> = cycles.iter().map(|c| c.id()).collect();
    let mut pairs = Vec::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if cycles[i]
                .edges()
                .independent(cycles[j].edges())
                .unwrap_or(false)
            {
                pairs.push((i, j));
            }
        }
    }
    CycleRaag {
        spec: RaagSpec::new(names, pairs).expect("valid indices"),
        cycles,
    }
}

/// The right-angled Artin group `ℬ` on the edges of a hypergraph; generators
/// commute iff the edges share no vertex. Generator order matches the edge
/// order of the hypergraph.
pub fn raag_edges(graph: &Arc<Hypergraph>) -> RaagSpec {
    let names: Vec<String> = graph.edge_ids().to_vec();
    let mut pairs = Vec::new();
    for i in 0..graph.edge_count() {
        for j in i + 1..graph.edge_count() {
            if !graph.boundary_bits(i).intersects(graph.boundary_bits(j)) {
                pairs.push((i, j));
            }
        }
    }
    RaagSpec::new(names, pairs).expect("valid indices")
}

/// The typing word of a path: one letter per step, the generator being the
/// glide cycle, the sign `+1` iff the traversal agrees with the distinguished
/// direction of the 1-cell (towards the endpoint meeting the distinguished
/// half).
pub fn typing_word(
    path: &EdgePath,
    orientation: &Orientation,
    araag: &CycleRaag,
) -> Result<Word> {
    let mut at = path.base().clone();
    let mut word = Word::empty();
    for (cycle, _) in path.steps() {
        let gen = araag
            .cycle_index(cycle)
            .ok_or_else(|| Error::UnknownGenerator { name: cycle.id() })?;
        let half = orientation.half_for(cycle)?;
        let next = at.sym_diff(cycle.edges())?;
        let next_int = next.intersection(cycle.edges())?;
        let at_int = at.intersection(cycle.edges())?;
        let exp = if next_int == half {
            1
        } else if at_int == half {
            -1
        } else {
            return Err(Error::Unorientable {
                a: at.id_string(),
                b: next.id_string(),
            });
        };
        word.push(gen, exp);
        at = next;
    }
    Ok(word)
}

/// The homomorphism `u : 𝒜 → ℬ`, `g_s ↦ ∏_{e ∈ s∖s′} h_e⁻¹ · ∏_{e ∈ s′} h_e`
/// with `s′` the distinguished half. Letters map to the image word or its
/// inverse; the result lives in the edge RAAG of the ambient hypergraph.
pub fn u_map(
    w: &Word,
    araag: &CycleRaag,
    orientation: &Orientation,
    edge_raag: &RaagSpec,
) -> Result<Word> {
    let mut out = Word::empty();
    for l in w.letters() {
        let cycle = araag
            .cycles
            .get(l.gen)
            .ok_or_else(|| Error::UnknownGenerator {
                name: format!("#{}", l.gen),
            })?;
        let half = orientation.half_for(cycle)?;
        let rest = cycle.edges().difference(&half)?;
        let mut image = Word::empty();
        for e in rest.indices() {
            debug_assert!(edge_raag.generators[e] == cycle.edges().graph().edge_id(e));
            image.push(e, -1);
        }
        for e in half.indices() {
            image.push(e, 1);
        }
        if l.exp < 0 {
            image = image.inverse();
        }
        out = out.concat(&image);
    }
    Ok(out)
}

/// The automorphism of `𝒜` inverting one generator: flips the exponent of
/// every occurrence, fixes the rest.
pub fn half_flip(w: &Word, gen: usize) -> Word {
    Word {
        letters: w
            .letters()
            .iter()
            .map(|l| Letter {
                gen: l.gen,
                exp: if l.gen == gen { -l.exp } else { l.exp },
            })
            .collect(),
    }
}

/// Free rank and torsion divisors of the abelianized presentation, via the
/// Smith normal form of the relator exponent matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

pub fn abelianization_rank(p: &Presentation) -> AbelianInvariants {
    let n = p.generators.len();
    let matrix: Vec<Vec<i128>> = p
        .relators
        .iter()
        .map(|r| r.exponent_sums(n).iter().map(|&x| x as i128).collect())
        .collect();
    let diag = smith_normal_form(matrix);
    let nonzero: Vec<i128> = diag.into_iter().filter(|&d| d != 0).collect();
    AbelianInvariants {
        rank: n - nonzero.len(),
        torsion: nonzero
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect(),
    }
}

/// Tietze simplification restricted to three moves: dropping freely trivial
/// relators, eliminating a generator defined by a relator of length one or
/// two, and removing the eliminated generators. The scan order is
/// deterministic; `budget` caps the number of eliminations.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    let n = p.generators.len();
    let mut relators: Vec<Word> = p.relators.iter().map(|r| r.free_reduce()).collect();
    let mut alive: Vec<bool> = vec![true; n];
    // Replacement of an eliminated generator: a word in surviving generators.
    let mut replacement: Vec<Option<Word>> = vec![None; n];
    let mut steps = 0usize;

    fn substitute(w: &Word, replacement: &[Option<Word>]) -> Word {
        let mut out = Word::empty();
        for l in w.letters() {
            match &replacement[l.gen] {
                None => out.push(l.gen, l.exp),
                Some(def) => {
                    let image = if l.exp > 0 { def.clone() } else { def.inverse() };
                    out = out.concat(&image);
                }
            }
        }
        out.free_reduce()
    }

    loop {
        relators.retain(|r| !r.is_empty());
        if steps >= budget {
            break;
        }
        // Find a defining relator: length 1 (x = 1) or length 2 over two
        // distinct generators (x = y^±). Relators get substituted at every
        // elimination, so they only ever mention live generators.
        let found = relators.iter().enumerate().find_map(|(idx, r)| {
            match r.letters() {
                [l] => Some((idx, l.gen, Word::empty())),
                [l1, l2] if l1.gen != l2.gen => {
                    // v^{ve} o^{oe} = 1  ⇒  v = o^{−oe·ve}; eliminate the
                    // larger-indexed generator.
                    let (v, o) = if l1.gen > l2.gen { (l1, l2) } else { (l2, l1) };
                    Some((idx, v.gen, Word::from_pairs(&[(o.gen, -o.exp * v.exp)])))
                }
                _ => None,
            }
        });
        let Some((idx, victim, def)) = found else { break };
        alive[victim] = false;
        replacement[victim] = Some(def);
        relators.remove(idx);
        for r in &mut relators {
            *r = substitute(r, &replacement);
        }
        steps += 1;
    }

    // Rebuild the generator table.
    let survivors: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let remap: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (new, &old) in survivors.iter().enumerate() {
            v[old] = Some(new);
        }
        v
    };
    let generators: Vec<String> = survivors
        .iter()
        .map(|&i| p.generators[i].clone())
        .collect();
    let relators: Vec<Word> = relators
        .iter()
        .map(|r| {
            Word::from_pairs(
                &r.letters()
                    .iter()
                    .map(|l| (remap[l.gen].expect("substituted"), l.exp))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Presentation {
        generators,
        relators,
    }
}
