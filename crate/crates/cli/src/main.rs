//! Command-line surface: ingest graph/hypergraph files, enumerate matchings,
//! build and export glide complexes, verify curvature, compute dimer-group
//! presentations, braid-shadow permutations, and dimer-labeling censuses.
//!
//! Exit codes: 0 ok, 1 invariant violation, 2 parse error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use glidecube_core::io;
use glidecube_core::{
    abelianization_rank, bipartite_v_orientation, build_complex, classify_labeling,
    component_census, dimer_cells, dimer_presentation, enumerate_perfect_matchings,
    generator_loops, nonpositively_curved_bounded, orient, sigma_theta, sigma_theta_n,
    tietze_simplify, Cycle, EdgePath, EdgeSet, Hypergraph, Matching, Mode, Orientation,
    VOrientation,
};

#[derive(Parser)]
#[command(
    name = "glidecube",
    about = "Dimer complexes, matching groups, and glide-complex invariants of finite graphs and hypergraphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Graph,
    Hypergraph,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct CommonArgs {
    /// Input file: {"vertices": [...], "edges": [{"id":..., "ends": [...]}]}
    input: PathBuf,

    /// Interpret edges as graph edges (exactly 2 ends) or hyperedges.
    #[arg(long, value_enum, default_value = "graph")]
    mode: ModeArg,

    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,

    /// Orientation file: per cycle a distinguished half and/or v-half.
    #[arg(long)]
    orientation: Option<PathBuf>,

    /// Maximum cube dimension swept by the curvature checkers.
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate perfect matchings in canonical order.
    Matchings(CommonArgs),

    /// Build and export the dimer complex with its curvature verdict.
    Complex(CommonArgs),

    /// Report the curvature verdict (regular, cube condition, npc).
    Curvature(CommonArgs),

    /// Present the dimer group at a basepoint, raw and simplified.
    Presentation {
        #[command(flatten)]
        common: CommonArgs,
        /// Basepoint matching as edge ids joined by + or , (default: first).
        #[arg(long)]
        basepoint: Option<String>,
    },

    /// Evaluate the permutation homomorphism on a loop of glides.
    Braid {
        #[command(flatten)]
        common: CommonArgs,
        /// Loop spec: "generators" or a comma list of cycle ids (edge ids
        /// joined by +).
        #[arg(long = "loop", default_value = "generators")]
        loop_spec: String,
        /// Basepoint matching (default: first perfect matching).
        #[arg(long)]
        basepoint: Option<String>,
        /// Subdivision counts e=k,... applied before evaluating.
        #[arg(long)]
        subdivide: Option<String>,
        /// Use the bipartite V0 v-orientation instead of file/defaults.
        #[arg(long)]
        bipartite: bool,
    },

    /// Census of the components of the space of dimer labelings.
    Labelings(CommonArgs),

    /// Classify a labeling file: odd support cycles and residual cube point.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        /// Labeling file: {"labels": {"edge": "p/q", ...}}.
        #[arg(long)]
        labeling: PathBuf,
    },

    /// Search for loops surviving every kernel of the subdivided permutation
    /// homomorphisms (experimental harness, no correctness claim).
    KernelExperiment {
        #[command(flatten)]
        common: CommonArgs,
        /// Basepoint matching (default: first perfect matching).
        #[arg(long)]
        basepoint: Option<String>,
        /// Maximum total subdivision |n|.
        #[arg(long, default_value_t = 1)]
        max_subdivision: u32,
    },
}

enum Failure {
    Parse(String),
    Invariant(String),
}

impl From<glidecube_core::Error> for Failure {
    fn from(e: glidecube_core::Error) -> Failure {
        Failure::Invariant(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(common: &CommonArgs) -> Result<Arc<Hypergraph>, Failure> {
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| Failure::Parse(format!("{}: {e}", common.input.display())))?;
    let mode = match common.mode {
        ModeArg::Graph => Mode::Graph,
        ModeArg::Hypergraph => Mode::Hypergraph,
    };
    io::read_hypergraph(&text, mode).map_err(|e| Failure::Parse(e.to_string()))
}

fn read_orientations(
    common: &CommonArgs,
    graph: &Arc<Hypergraph>,
) -> Result<(Orientation, VOrientation), Failure> {
    match &common.orientation {
        None => Ok((Orientation::new(), VOrientation::new())),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
            io::read_orientation(&text, graph).map_err(|e| Failure::Parse(e.to_string()))
        }
    }
}

fn parse_matching(graph: &Arc<Hypergraph>, spec: &str) -> Result<Matching, Failure> {
    let ids: Vec<&str> = spec
        .split([',', '+'])
        .filter(|s| !s.is_empty())
        .collect();
    Ok(Matching::from_ids(graph, ids)?)
}

fn pick_basepoint(
    graph: &Arc<Hypergraph>,
    spec: &Option<String>,
) -> Result<Matching, Failure> {
    match spec {
        Some(s) => parse_matching(graph, s),
        None => enumerate_perfect_matchings(graph)
            .into_iter()
            .next()
            .ok_or_else(|| Failure::Invariant("the graph has no perfect matching".to_owned())),
    }
}

fn parse_counts(spec: &str) -> Result<BTreeMap<String, u32>, Failure> {
    let mut counts = BTreeMap::new();
    for item in spec.split(',').filter(|s| !s.is_empty()) {
        let (edge, k) = item
            .split_once('=')
            .ok_or_else(|| Failure::Parse(format!("bad subdivision item {item:?}")))?;
        let k: u32 = k
            .parse()
            .map_err(|e| Failure::Parse(format!("bad count in {item:?}: {e}")))?;
        counts.insert(edge.to_owned(), k);
    }
    Ok(counts)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Matchings(common) => {
            let graph = read_input(&common)?;
            let matchings = enumerate_perfect_matchings(&graph);
            match common.format {
                FormatArg::Json => {
                    let value = json!({
                        "count": matchings.len(),
                        "matchings": matchings.iter().map(|m| m.edges().ids()).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                _ => {
                    println!("{} perfect matchings", matchings.len());
                    for m in &matchings {
                        println!("{}", m.id_string());
                    }
                }
            }
            Ok(())
        }

        Command::Complex(common) => {
            let graph = read_input(&common)?;
            let (orientation, _) = read_orientations(&common, &graph)?;
            let (sys, d) = dimer_cells(&graph);
            let x = build_complex(&d, &sys);
            let verdict = nonpositively_curved_bounded(&d, &sys, common.max_dim);
            match common.format {
                FormatArg::Json => {
                    let mut value = io::complex_to_json(&x);
                    let obj = value.as_object_mut().unwrap();
                    obj.insert("curvature".into(), io::verdict_to_json(&verdict));
                    obj.insert("components".into(), json!(x.components().len()));
                    obj.insert(
                        "euler_characteristic".into(),
                        json!(x.euler_characteristic()),
                    );
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                FormatArg::Dot => {
                    let directed = orient(&x, &orientation)?;
                    print!("{}", io::dot_directed(&directed));
                }
                FormatArg::Text => {
                    println!("0-cells: {}", x.vertices().len());
                    for k in 1..=x.dimension().max(1) {
                        println!("{}-cubes: {}", k, x.cubes_of_dim(k).count());
                    }
                    println!("components: {}", x.components().len());
                    println!("euler characteristic: {}", x.euler_characteristic());
                    println!(
                        "curvature: regular={} cube_condition={} npc={}",
                        verdict.regular, verdict.cube_condition, verdict.npc
                    );
                }
            }
            Ok(())
        }

        Command::Curvature(common) => {
            let graph = read_input(&common)?;
            let (sys, d) = dimer_cells(&graph);
            let verdict = nonpositively_curved_bounded(&d, &sys, common.max_dim);
            match common.format {
                FormatArg::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&io::verdict_to_json(&verdict)).unwrap()
                ),
                _ => {
                    println!("regular: {}", verdict.regular);
                    println!("cube_condition: {}", verdict.cube_condition);
                    println!("npc: {}", verdict.npc);
                }
            }
            Ok(())
        }

        Command::Presentation { common, basepoint } => {
            let graph = read_input(&common)?;
            let base = pick_basepoint(&graph, &basepoint)?;
            let dp = dimer_presentation(&graph, &base)?;
            let simplified = tietze_simplify(&dp.presentation, 100_000);
            let inv = abelianization_rank(&dp.presentation);
            match common.format {
                FormatArg::Json => {
                    let value = json!({
                        "basepoint": base.edges().ids(),
                        "matchings": dp.matchings.iter().map(|m| m.edges().ids()).collect::<Vec<_>>(),
                        "presentation": io::presentation_to_json(&dp.presentation),
                        "simplified": io::presentation_to_json(&simplified),
                        "abelianization": {"rank": inv.rank, "torsion": inv.torsion},
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                _ => {
                    println!("basepoint: {}", base.id_string());
                    println!("matchings: {}", dp.matchings.len());
                    println!("raw: {}", io::presentation_to_text(&dp.presentation));
                    println!("simplified: {}", io::presentation_to_text(&simplified));
                    println!(
                        "abelianization: rank {}, torsion {:?}",
                        inv.rank, inv.torsion
                    );
                }
            }
            Ok(())
        }

        Command::Braid {
            common,
            loop_spec,
            basepoint,
            subdivide,
            bipartite,
        } => {
            let graph = read_input(&common)?;
            let (_, mut v_orientation) = read_orientations(&common, &graph)?;
            if bipartite {
                v_orientation = bipartite_v_orientation(&graph)?;
            }
            let base = pick_basepoint(&graph, &basepoint)?;
            let counts = subdivide.as_deref().map(parse_counts).transpose()?;

            let loops: Vec<(String, EdgePath)> = if loop_spec == "generators" {
                let (sys, d) = dimer_cells(&graph);
                let x = build_complex(&d, &sys);
                generator_loops(&x, base.edges())?
                    .into_iter()
                    .map(|p| {
                        let spec = p
                            .steps()
                            .iter()
                            .map(|(c, _)| c.id())
                            .collect::<Vec<_>>()
                            .join(",");
                        (spec, p)
                    })
                    .collect()
            } else {
                let mut steps = Vec::new();
                for cycle_id in loop_spec.split(',').filter(|s| !s.is_empty()) {
                    let ids: Vec<&str> = cycle_id.split('+').collect();
                    let edges = EdgeSet::from_ids(&graph, ids)?;
                    steps.push((Cycle::classify(&edges)?, 1));
                }
                vec![(
                    loop_spec.clone(),
                    EdgePath::new(base.edges().clone(), steps)?,
                )]
            };

            let mut results = Vec::new();
            for (spec, path) in &loops {
                let p = match &counts {
                    None => sigma_theta(path, &v_orientation)?,
                    Some(counts) => sigma_theta_n(path, counts, &v_orientation)?,
                };
                results.push((spec.clone(), p));
            }
            match common.format {
                FormatArg::Json => {
                    let value = json!({
                        "basepoint": base.edges().ids(),
                        "loops": results.iter().map(|(spec, p)| json!({
                            "loop": spec,
                            "one_line": p.one_line(),
                            "cycles": p.cycle_notation(),
                            "identity": p.is_identity(),
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                _ => {
                    for (spec, p) in &results {
                        println!("loop {spec}: {} {}", p.one_line(), p.cycle_notation());
                    }
                }
            }
            Ok(())
        }

        Command::Labelings(common) => {
            let graph = read_input(&common)?;
            let census = component_census(&graph)?;
            match common.format {
                FormatArg::Json => {
                    let value = json!({
                        "count": census.len(),
                        "components": census.iter().map(|c| {
                            c.iter().map(|cy| cy.id()).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                _ => {
                    println!("{} components", census.len());
                    for c in &census {
                        if c.is_empty() {
                            println!("C = (empty)");
                        } else {
                            println!(
                                "C = {}",
                                c.iter().map(Cycle::id).collect::<Vec<_>>().join("; ")
                            );
                        }
                    }
                }
            }
            Ok(())
        }

        Command::Classify { common, labeling } => {
            let graph = read_input(&common)?;
            let text = std::fs::read_to_string(&labeling)
                .map_err(|e| Failure::Parse(format!("{}: {e}", labeling.display())))?;
            let l =
                io::read_labeling(&text, &graph).map_err(|e| Failure::Parse(e.to_string()))?;
            let class = classify_labeling(&l)?;
            match common.format {
                FormatArg::Json => {
                    let value = json!({
                        "odd_cycles": class.odd_cycles.iter().map(Cycle::id).collect::<Vec<_>>(),
                        "residual_vertices": class.residual_graph.vertex_ids(),
                        "residual_base": class.residual.base().ids(),
                        "residual_directions": class.residual.directions().iter().map(Cycle::id).collect::<Vec<_>>(),
                        "residual_coords": class.residual.coords().iter().map(io::rational_string).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                _ => {
                    if class.odd_cycles.is_empty() {
                        println!("odd cycles: (none)");
                    } else {
                        println!(
                            "odd cycles: {}",
                            class
                                .odd_cycles
                                .iter()
                                .map(Cycle::id)
                                .collect::<Vec<_>>()
                                .join("; ")
                        );
                    }
                    println!(
                        "residual graph: {} vertices, {} edges",
                        class.residual_graph.vertex_count(),
                        class.residual_graph.edge_count()
                    );
                    println!("residual base: {}", class.residual.base().id_string());
                    for (c, x) in class
                        .residual
                        .directions()
                        .iter()
                        .zip(class.residual.coords())
                    {
                        println!(
                            "residual coordinate: {} = {}",
                            c.id(),
                            io::rational_string(x)
                        );
                    }
                }
            }
            Ok(())
        }

        Command::KernelExperiment {
            common,
            basepoint,
            max_subdivision,
        } => {
            let graph = read_input(&common)?;
            let base = pick_basepoint(&graph, &basepoint)?;
            let (sys, d) = dimer_cells(&graph);
            let x = build_complex(&d, &sys);
            let loops = generator_loops(&x, base.edges())?;

            let mut cycles: Vec<Cycle> = x
                .cubes_of_dim(1)
                .map(|c| c.directions[0].clone())
                .collect();
            cycles.sort();
            cycles.dedup();
            if cycles.len() > 12 {
                return Err(Failure::Invariant(format!(
                    "too many cycles for exhaustive orientation sweep: {}",
                    cycles.len()
                )));
            }

            let subdivisions = enumerate_counts(&graph, max_subdivision);
            let mut report = Vec::new();
            for (li, l) in loops.iter().enumerate() {
                let mut witness: Option<(u32, String, String)> = None;
                'search: for mask in 0u32..(1 << cycles.len()) {
                    let mut vo = VOrientation::new();
                    for (i, c) in cycles.iter().enumerate() {
                        let (a, b) = c.vhalves().ok_or_else(|| {
                            Failure::Invariant(format!("cycle {} has no v-halves", c.id()))
                        })?;
                        let half = if mask & (1 << i) != 0 { b.clone() } else { a.clone() };
                        vo.set_v_half(c, &half)?;
                    }
                    for counts in &subdivisions {
                        let p = sigma_theta_n(l, counts, &vo)?;
                        if !p.is_identity() {
                            let n_desc = counts
                                .iter()
                                .map(|(e, k)| format!("{e}={k}"))
                                .collect::<Vec<_>>()
                                .join(",");
                            witness = Some((mask, n_desc, p.one_line()));
                            break 'search;
                        }
                    }
                }
                report.push((li, witness));
            }
            let survivors: Vec<usize> = report
                .iter()
                .filter(|(_, w)| w.is_none())
                .map(|(i, _)| *i)
                .collect();
            match common.format {
                FormatArg::Json => {
                    let value = json!({
                        "generator_loops": loops.len(),
                        "orientations_swept": 1u64 << cycles.len(),
                        "subdivisions_swept": subdivisions.len(),
                        "loops_killed": report.iter().filter(|(_, w)| w.is_some()).count(),
                        "survivors": survivors,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                _ => {
                    println!(
                        "{} generator loops, {} orientations, {} subdivisions (|n| <= {max_subdivision})",
                        loops.len(),
                        1u64 << cycles.len(),
                        subdivisions.len()
                    );
                    for (i, witness) in &report {
                        match witness {
                            Some((mask, counts, perm)) => println!(
                                "loop {i}: detected (orientation mask {mask:b}, n [{counts}], permutation {perm})"
                            ),
                            None => {
                                println!("loop {i}: survives every kernel in the sweep")
                            }
                        }
                    }
                    if survivors.is_empty() {
                        println!(
                            "no survivors: the swept homomorphisms separate all generators"
                        );
                    }
                }
            }
            Ok(())
        }
    }
}

/// All maps edges → positive counts with total at most `max_total`,
/// including the empty map.
fn enumerate_counts(graph: &Arc<Hypergraph>, max_total: u32) -> Vec<BTreeMap<String, u32>> {
    fn recurse(
        edge_ids: &[String],
        at: usize,
        left: u32,
        current: &mut BTreeMap<String, u32>,
        out: &mut Vec<BTreeMap<String, u32>>,
    ) {
        if at == edge_ids.len() {
            out.push(current.clone());
            return;
        }
        recurse(edge_ids, at + 1, left, current, out);
        for k in 1..=left {
            current.insert(edge_ids[at].clone(), k);
            recurse(edge_ids, at + 1, left - k, current, out);
        }
        current.remove(&edge_ids[at]);
    }
    let edge_ids: Vec<String> = graph.edge_ids().to_vec();
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    recurse(&edge_ids, 0, max_total, &mut current, &mut out);
    out.sort();
    out.dedup();
    out
}
