use std::fs;
use std::path::{Path, PathBuf};

use fkpoints::exactalg::FieldCtx;
use fkpoints::freealg::{
    fk_complete, nil_coxeter, parse_presentation, quadratic_cover, serialize_presentation,
    star_overapprox, Presentation, StarMode,
};
use fkpoints::graphs::{
    center_minimal_labeling, enumerate_graphs, is_block_graph, is_disjoint_union_of_cliques,
    is_tree, line_graph, parse_graph, random_tree, serialize_graph, Graph,
};
use fkpoints::replication::{classify, run_all, run_claim, ReplicationConfig};
use fkpoints::scheme::{
    brute_force, enumerate, fibration_report, multilinearize, p_sup, solution_to_csv,
    solution_to_json, solution_to_markdown, SolveOptions,
};

use crate::error::CliError;
use crate::{Cli, Command, Family, Format, GraphOp, GraphPresentation, Source};

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let opts = SolveOptions::with_guard(cli.guard);
    match &cli.command {
        Command::Present { family, output } => {
            let p = match family {
                Family::Fk { n } => fk_complete(*n)?,
                Family::An { n } => nil_coxeter(*n)?,
                Family::Graph { file, kind } => graph_presentation(&read_graph(file)?, kind)?,
            };
            emit(output.as_deref(), &serialize_presentation(&p))
        }
        Command::Solve {
            source,
            kind,
            d,
            prime,
            format,
            fibration,
            oracle,
            output,
        } => {
            let pres = load_source(source, kind)?;
            let field = prime_field(*prime)?;
            let sys = multilinearize(&pres, *d)?;
            let sol = enumerate(&sys, &field, &opts)?;
            let fib = if *fibration {
                Some(fibration_report(&sys, &field, &opts)?)
            } else {
                None
            };
            let text = match format {
                Format::Json => solution_to_json(&sol, fib.as_ref()) + "\n",
                Format::Md => {
                    let mut md = solution_to_markdown(&sol, &sys.generators);
                    if let Some(f) = &fib {
                        md.push_str(&format!(
                            "\n- search-tree leaves of dimension 2: {}\n",
                            f.leaves_with_dimension(2)
                        ));
                    }
                    md
                }
                Format::Csv => solution_to_csv(&sol),
            };
            emit(output.as_deref(), &text)?;
            if *oracle {
                let bf = brute_force(&sys, &field, cli.guard)?;
                if bf != sol {
                    return Err(CliError::Check(format!(
                        "brute force found {} points, the solver {}",
                        bf.count(),
                        sol.count()
                    )));
                }
                eprintln!("oracle: brute force agrees ({} points)", bf.count());
            }
            Ok(())
        }
        Command::Psup {
            source,
            kind,
            prime,
            dmax,
        } => {
            let pres = load_source(source, kind)?;
            let ps = p_sup(&pres, &prime_field(*prime)?, *dmax, &opts)?;
            println!("p({}) over F_{} = {ps}", pres.label(), prime);
            Ok(())
        }
        Command::Classify { graph, prime } => {
            let g = read_graph(graph)?;
            prime_field(*prime)?;
            let c = classify(&g, *prime, &opts)?;
            println!("disjoint union of cliques: {}", c.clique_union);
            println!(
                "degree-2 points over F_{prime}: {}",
                if c.point_count == 0 {
                    "empty".to_string()
                } else {
                    format!("{} points", c.point_count)
                }
            );
            if let Some((p, q, r)) = c.witness {
                println!(
                    "induced path {p}-{q}-{r}: witness {}",
                    if c.witness_verified {
                        "verified"
                    } else {
                        "not verified"
                    }
                );
            }
            if c.agree {
                println!("AGREE");
                Ok(())
            } else {
                println!("DISAGREE");
                Err(CliError::Check("solver and predicate disagree".into()))
            }
        }
        Command::Replicate {
            config,
            primes,
            claim,
            timings,
            format,
            output,
        } => {
            let mut cfg = match config {
                Some(path) => ReplicationConfig::from_toml(&read(path)?)?,
                None => ReplicationConfig::default(),
            };
            if let Some(ps) = primes {
                cfg.primes = ps.clone();
            }
            cfg.timings |= *timings;
            cfg.guard = cli.guard;
            let report = match claim {
                Some(c) => run_claim(&cfg, c)?,
                None => run_all(&cfg)?,
            };
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Md => report.to_markdown(),
                Format::Csv => report.to_csv(),
            };
            emit(output.as_deref(), &text)?;
            if report.has_failures() {
                return Err(CliError::Check(format!(
                    "{} replication entries failed",
                    report.summary.fail
                )));
            }
            Ok(())
        }
        Command::Graph { op } => graph_op(op),
    }
}

fn graph_op(op: &GraphOp) -> Result<(), CliError> {
    match op {
        GraphOp::LineGraph { file } => {
            print!("{}", serialize_graph(&line_graph(&read_graph(file)?)))
        }
        GraphOp::Enumerate { max } => {
            let graphs = enumerate_graphs(*max)?;
            println!(
                "# {} isomorphism classes on 1..={max} vertices",
                graphs.len()
            );
            for g in graphs {
                let edges: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
                println!(
                    "{}",
                    format!("{} {}", g.vertex_count(), edges.join(",")).trim_end()
                );
            }
        }
        GraphOp::RandomTree { vertices, seed } => {
            print!("{}", serialize_graph(&random_tree(*vertices, *seed)?))
        }
        GraphOp::CenterLabel { file } => {
            let g = read_graph(file)?;
            if !is_tree(&g) {
                return Err(CliError::Usage(format!("{} is not a tree", file.display())));
            }
            print!("{}", serialize_graph(&center_minimal_labeling(&g)));
        }
        GraphOp::Info { file } => {
            let g = read_graph(file)?;
            println!("vertices: {}", g.vertex_count());
            println!("edges: {}", g.edge_count());
            println!("tree: {}", is_tree(&g));
            println!(
                "disjoint union of cliques: {}",
                is_disjoint_union_of_cliques(&g)
            );
            println!("block graph: {}", is_block_graph(&g));
            println!(
                "line graph is a block graph: {}",
                is_block_graph(&line_graph(&g))
            );
        }
    }
    Ok(())
}

fn prime_field(p: u64) -> Result<FieldCtx, CliError> {
    FieldCtx::prime(p).map_err(|e| CliError::Usage(e.to_string()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_mode(mode: &str) -> Result<StarMode, CliError> {
    mode.parse()
        .map_err(|e: fkpoints::freealg::PresentationError| CliError::Usage(e.to_string()))
}

fn graph_presentation(g: &Graph, kind: &GraphPresentation) -> Result<Presentation, CliError> {
    match kind.star {
        Some(dmax) => Ok(star_overapprox(g, dmax, parse_mode(&kind.mode)?)?),
        None => Ok(quadratic_cover(g)),
    }
}

fn load_source(src: &Source, kind: &GraphPresentation) -> Result<Presentation, CliError> {
    if let Some(name) = &src.builtin {
        let (family, n) = name.split_once(':').ok_or_else(|| {
            CliError::Usage(format!("builtin `{name}` is not `fk:<n>` or `an:<n>`"))
        })?;
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad size in builtin `{name}`")))?;
        return match family {
            "fk" => Ok(fk_complete(n)?),
            "an" => Ok(nil_coxeter(n)?),
            other => Err(CliError::Usage(format!("unknown builtin family `{other}`"))),
        };
    }
    if let Some(path) = &src.input {
        return parse_presentation(&read(path)?)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())));
    }
    let path: &PathBuf = src.graph.as_ref().expect("clap requires one source");
    graph_presentation(&read_graph(path)?, kind)
}
