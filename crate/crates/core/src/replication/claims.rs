//! The claim catalog and one runner per claim.

use std::collections::BTreeSet;

use super::matrices::{self, Check};
use super::{
    classify, oracle_an_points, EntryBuilder, Outcome, ReplicationConfig, ReplicationError,
    ReportEntry, Verdict,
};
use crate::exactalg::{FieldCtx, PrimeField};
use crate::freealg::{
    fk_complete, nil_coxeter, star_overapprox, Exactness, Presentation, StarMode,
};
use crate::graphs::{center_minimal_labeling, enumerate_graphs, is_tree, random_tree, star, Graph};
use crate::scheme::{
    brute_force, brute_force_size, enumerate, fibration_report, has_point, linearize_top,
    multilinearize, p_sup, projective_points, support_pattern, LayerPoint, PSupValue, SolutionSet,
};

/// Claim ids in report order, with the statement each one checks.
pub const CLAIMS: [(&str, &str); 8] = [
    (
        "fk3-degree2-empty",
        "the complete algebra on 3 vertices has no degree-2 points",
    ),
    (
        "fk4-degree2-empty",
        "the complete algebra on 4 vertices has no degree-2 points",
    ),
    (
        "fkn-degree2-empty",
        "complete algebras have no degree-2 points, so their p-statistic is 1",
    ),
    (
        "nil-coxeter-counts",
        "for 3 <= d <= n-1 the nil-Coxeter points are the 2(n-d) coordinate runs; none for d >= n",
    ),
    (
        "nil-coxeter-lines",
        "at d = 2 the nil-Coxeter points form 2n-6 projective lines",
    ),
    (
        "star-bound",
        "a star with n leaves has no points of degree n+1",
    ),
    (
        "clique-union-dichotomy",
        "a graph has degree-2 points iff it is not a disjoint union of cliques",
    ),
    (
        "tree-bound",
        "a tree with m edges has no points of degree m+1, and paths have points of degree m",
    ),
];

type Runner = fn(&ReplicationConfig) -> Vec<ReportEntry>;

pub(super) const RUNNERS: [(&str, Runner); 8] = [
    ("fk3-degree2-empty", fk3),
    ("fk4-degree2-empty", fk4),
    ("fkn-degree2-empty", fkn),
    ("nil-coxeter-counts", an_counts),
    ("nil-coxeter-lines", an_lines),
    ("star-bound", star_bound),
    ("clique-union-dichotomy", clique_unions),
    ("tree-bound", tree_bound),
];

fn builder<'a>(claim: &'a str, cfg: &ReplicationConfig) -> EntryBuilder<'a> {
    let statement = CLAIMS
        .iter()
        .find(|(id, _)| *id == claim)
        .map(|(_, s)| *s)
        .expect("catalog claim");
    EntryBuilder {
        claim,
        statement,
        timings: cfg.timings,
    }
}

fn ctx(p: u64) -> FieldCtx {
    FieldCtx::prime(p).expect("validated prime")
}

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).expect("validated prime")
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// How a solution count reads for a presentation of the given exactness.
fn describe(count: usize, exactness: Exactness, p: u64) -> String {
    match (exactness, count) {
        (Exactness::NecessaryOnly, 0) => format!("certified empty over F_{p}"),
        (Exactness::NecessaryOnly, k) => format!("{k} candidates"),
        (Exactness::Exact, k) => format!("{k} points"),
    }
}

/// Emptiness at degree `d`. Nonempty results of over-approximations prove
/// nothing, so they are INCONCLUSIVE rather than FAIL.
fn empty_at(
    pres: &Presentation,
    d: usize,
    p: u64,
    cfg: &ReplicationConfig,
) -> Result<Outcome, ReplicationError> {
    let sys = multilinearize(pres, d)?;
    let sol = enumerate(&sys, &ctx(p), &cfg.solve_options())?;
    let verdict = match (sol.is_empty(), pres.exactness()) {
        (true, _) => Verdict::Pass,
        (false, Exactness::Exact) => Verdict::Fail,
        (false, Exactness::NecessaryOnly) => Verdict::Inconclusive,
    };
    Ok(Outcome {
        expected: describe(0, pres.exactness(), p),
        computed: describe(sol.count(), pres.exactness(), p),
        verdict,
    })
}

/// Rank of the layer-1 matrix at every layer-0 point.
fn rank_sweep(n: usize, p: u64) -> Result<Outcome, ReplicationError> {
    let sys = multilinearize(&fk_complete(n)?, 2)?;
    let g = sys.generator_count();
    let f = field(p);
    let points = projective_points(g, f);
    let mut deficient = 0;
    for x in &points {
        let (_, m) = linearize_top(&sys, std::slice::from_ref(x), f)?;
        if m.rank() != g {
            deficient += 1;
        }
    }
    Ok(Outcome {
        expected: format!("rank {g} at every layer-0 point"),
        computed: if deficient == 0 {
            format!("rank {g} at all {} points", points.len())
        } else {
            format!("rank below {g} at {deficient} of {} points", points.len())
        },
        verdict: pass_if(deficient == 0),
    })
}

fn symbolic(expected: &str, check: Check) -> Result<Outcome, ReplicationError> {
    Ok(Outcome {
        expected: expected.to_string(),
        computed: check.detail,
        verdict: pass_if(check.ok),
    })
}

fn fk3(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("fk3-degree2-empty", cfg);
    let mut out = Vec::new();
    for &p in &cfg.primes {
        let params = format!("n=3 d=2 p={p}");
        out.push(b.run(&format!("enumerate/p={p}"), params.clone(), || {
            empty_at(&fk_complete(3)?, 2, p, cfg)
        }));
        out.push(b.run(&format!("rank-sweep/p={p}"), params, || rank_sweep(3, p)));
    }
    out.push(b.run("matrix", "n=3 d=2".into(), || {
        symbolic("hand matrix, row for row", matrices::fk3_matrix_matches())
    }));
    out.push(
        b.run("square-minor", "rows of the three squares".into(), || {
            symbolic("x1_2*x1_3*x2_3", matrices::fk3_square_minor())
        }),
    );
    let primes = cfg.primes.clone();
    out.push(b.run("case-minors", format!("primes {primes:?}"), || {
        symbolic(
            "each case minor invertible on its case",
            matrices::fk3_case_minors(&primes),
        )
    }));
    out
}

fn fk4(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("fk4-degree2-empty", cfg);
    let mut out = Vec::new();
    for &p in &cfg.primes {
        let params = format!("n=4 d=2 p={p}");
        out.push(b.run(&format!("enumerate/p={p}"), params.clone(), || {
            empty_at(&fk_complete(4)?, 2, p, cfg)
        }));
        out.push(b.run(&format!("rank-sweep/p={p}"), params, || rank_sweep(4, p)));
    }
    out.push(b.run("matrix", "x1_2 = 1, y1_2 = y3_4 = 0".into(), || {
        symbolic(
            "hand matrix up to row signs",
            matrices::fk4_matrix_matches(),
        )
    }));
    out.push(b.run("row-reduction", "two row operations".into(), || {
        symbolic("reduced hand matrix", matrices::fk4_row_reduction())
    }));
    out.push(b.run("main-minor", "reduced rows 1-4".into(), || {
        symbolic(
            "+-(1 + x1_3*x2_3)*(1 + x1_4*x2_4)",
            matrices::fk4_main_minor(),
        )
    }));
    let primes = cfg.primes.clone();
    out.push(b.run("case-minors", format!("primes {primes:?}"), || {
        symbolic(
            "fallback minors invertible where the main minor vanishes",
            matrices::fk4_case_minors(&primes),
        )
    }));
    out
}

fn fkn(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("fkn-degree2-empty", cfg);
    let mut out = Vec::new();
    for &n in &cfg.fk_sizes {
        for &p in &cfg.primes {
            out.push(
                b.run(&format!("n={n}/p={p}"), format!("n={n} d=2 p={p}"), || {
                    let g = n * (n - 1) / 2;
                    let candidates = field(p).projective_count(g);
                    if candidates > cfg.fk_guard {
                        return Ok(Outcome {
                            expected: "0 points, p_sup = 1".into(),
                            computed: format!(
                                "{candidates} layer-0 candidates exceed the sweep guard {}",
                                cfg.fk_guard
                            ),
                            verdict: Verdict::Skipped,
                        });
                    }
                    let pres = fk_complete(n)?;
                    let sol = enumerate(&multilinearize(&pres, 2)?, &ctx(p), &cfg.solve_options())?;
                    let ps = p_sup(&pres, &ctx(p), 3, &cfg.solve_options())?;
                    Ok(Outcome {
                        expected: "0 points, p_sup = 1".into(),
                        computed: format!("{} points, p_sup = {ps}", sol.count()),
                        verdict: pass_if(sol.is_empty() && ps.value == PSupValue::Exact(1)),
                    })
                }),
            );
        }
    }
    out
}

fn counts_line(counts: &[(usize, usize)]) -> String {
    let parts: Vec<String> = counts.iter().map(|(d, c)| format!("d={d}:{c}")).collect();
    parts.join(" ")
}

fn an_counts(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("nil-coxeter-counts", cfg);
    let mut out = Vec::new();
    for n in cfg.an_min..=cfg.an_max {
        for &p in &cfg.primes {
            out.push(b.run(
                &format!("n={n}/p={p}"),
                format!("n={n} 3<=d<={} p={p}", n + 1),
                || {
                    let pres = nil_coxeter(n)?;
                    let mut expected = Vec::new();
                    let mut computed = Vec::new();
                    let mut mismatched = Vec::new();
                    for d in 3..=n + 1 {
                        let oracle = oracle_an_points(n, d, field(p))?;
                        let sol =
                            enumerate(&multilinearize(&pres, d)?, &ctx(p), &cfg.solve_options())?;
                        expected.push((d, oracle.count()));
                        computed.push((d, sol.count()));
                        if sol.points != oracle.points {
                            mismatched.push(d);
                        }
                    }
                    let mut text = counts_line(&computed);
                    if !mismatched.is_empty() {
                        text.push_str(&format!("; point sets differ at d in {mismatched:?}"));
                    }
                    Ok(Outcome {
                        expected: counts_line(&expected),
                        computed: text,
                        verdict: pass_if(mismatched.is_empty()),
                    })
                },
            ));
        }
    }
    out
}

/// Prefixes of the dimension-2 leaves of a search tree.
fn plane_leaf_prefixes(nodes: &[crate::scheme::FibrationNode], d: usize) -> BTreeSet<LayerPoint> {
    nodes
        .iter()
        .filter(|n| n.depth + 1 == d && n.dimension == 2)
        .map(|n| n.prefix[0].clone())
        .collect()
}

fn an_lines(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("nil-coxeter-lines", cfg);
    let mut out = Vec::new();
    for n in cfg.an_min..=cfg.an_max {
        for &p in &cfg.primes {
            out.push(
                b.run(&format!("n={n}/p={p}"), format!("n={n} d=2 p={p}"), || {
                    let g = n - 1;
                    let sys = multilinearize(&nil_coxeter(n)?, 2)?;
                    let opts = cfg.solve_options();
                    let sol = enumerate(&sys, &ctx(p), &opts)?;
                    let oracle = oracle_an_points(n, 2, field(p))?;
                    let report = fibration_report(&sys, &ctx(p), &opts)?;
                    let want: BTreeSet<LayerPoint> = (2..=n.saturating_sub(2))
                        .map(|i| LayerPoint::basis(g, i - 1))
                        .collect();
                    let planes = report.leaves_with_dimension(2);
                    let mut problems = Vec::new();
                    if sol.points != oracle.points {
                        problems.push("point set differs from the line oracle".to_string());
                    }
                    if planes != 2 * (n - 3) {
                        problems.push(format!("{planes} dimension-2 leaves"));
                    }
                    if plane_leaf_prefixes(&report.forward, 2) != want
                        || plane_leaf_prefixes(&report.backward, 2) != want
                    {
                        problems.push("dimension-2 leaves at unexpected prefixes".into());
                    }
                    let mut computed =
                        format!("{} points, {planes} dimension-2 leaves", sol.count());
                    if brute_force_size(&sys, field(p)) <= cfg.brute_force_limit {
                        let bf = brute_force(&sys, &ctx(p), cfg.brute_force_limit)?;
                        if bf.points == sol.points {
                            computed.push_str(", brute force agrees");
                        } else {
                            problems.push("brute force disagrees".into());
                        }
                    }
                    if !problems.is_empty() {
                        computed.push_str(&format!("; {}", problems.join("; ")));
                    }
                    Ok(Outcome {
                        expected: format!(
                            "{} points, {} dimension-2 leaves",
                            oracle.count(),
                            2 * (n - 3)
                        ),
                        computed,
                        verdict: pass_if(problems.is_empty()),
                    })
                }),
            );
        }
    }
    out
}

fn modes_for(p: u64) -> Vec<StarMode> {
    if p == 2 {
        vec![StarMode::MinCenter, StarMode::AllCentersChar2]
    } else {
        vec![StarMode::MinCenter]
    }
}

fn disjoint_supports(sol: &SolutionSet) -> bool {
    sol.points.iter().all(|pt| {
        let s = support_pattern(pt);
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i].is_disjoint(&s[j])))
    })
}

fn star_bound(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("star-bound", cfg);
    let mut out = Vec::new();
    for &n in &cfg.star_sizes {
        for &p in &cfg.primes {
            for mode in modes_for(p) {
                let tag = format!("n={n}/p={p}/{}", mode.as_str());
                let params = format!("leaves={n} d={} p={p} mode={}", n + 1, mode.as_str());
                out.push(b.run(&tag, params, || {
                    empty_at(&star_overapprox(&star(n)?, n + 1, mode)?, n + 1, p, cfg)
                }));
                out.push(b.run(
                    &format!("{tag}/supports"),
                    format!("leaves={n} 2<=d<={n} p={p} mode={}", mode.as_str()),
                    || {
                        let pres = star_overapprox(&star(n)?, n + 1, mode)?;
                        let mut counts = Vec::new();
                        let mut ok = true;
                        for d in 2..=n {
                            let sol = enumerate(
                                &multilinearize(&pres, d)?,
                                &ctx(p),
                                &cfg.solve_options(),
                            )?;
                            ok &= disjoint_supports(&sol);
                            counts.push((d, sol.count()));
                        }
                        Ok(Outcome {
                            expected: "pairwise disjoint layer supports".into(),
                            computed: format!(
                                "{} candidates, supports {}",
                                counts_line(&counts),
                                if ok { "disjoint" } else { "overlap" }
                            ),
                            verdict: pass_if(ok),
                        })
                    },
                ));
            }
        }
    }
    out
}

fn clique_unions(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("clique-union-dichotomy", cfg);
    let p = cfg.corollary_prime;
    let max = cfg.corollary_max_vertices;
    vec![b.run(
        &format!("p={p}"),
        format!("all classes on <= {max} vertices, d=2 p={p}"),
        || {
            let graphs = enumerate_graphs(max)?;
            let opts = cfg.solve_options();
            let mut unions = 0;
            let mut others = 0;
            let mut disagreements = Vec::new();
            for g in &graphs {
                let c = classify(g, p, &opts)?;
                if c.clique_union {
                    unions += 1;
                } else {
                    others += 1;
                }
                if !c.agree {
                    disagreements.push(graph_tag(g));
                }
            }
            let mut computed = format!(
                "{} classes: {unions} clique unions, {others} others",
                graphs.len()
            );
            if !disagreements.is_empty() {
                computed.push_str(&format!("; disagree on {}", disagreements.join(" ")));
            }
            Ok(Outcome {
                expected: "clique unions empty, others with a verified witness".into(),
                computed,
                verdict: pass_if(disagreements.is_empty()),
            })
        },
    )]
}

fn graph_tag(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("n{}:{}", g.vertex_count(), edges.join(","))
}

fn is_path(t: &Graph) -> bool {
    (1..=t.vertex_count() as u32).all(|v| t.degree(v) <= 2)
}

/// Exact check on a path with `m` edges: points at degree `m`, none at
/// `m + 1`.
fn path_sharpness(m: usize, p: u64, cfg: &ReplicationConfig) -> Result<Outcome, ReplicationError> {
    let pres = nil_coxeter(m + 1)?;
    let opts = cfg.solve_options();
    let at_m = has_point(&multilinearize(&pres, m)?, &ctx(p), &opts)?;
    let above = has_point(&multilinearize(&pres, m + 1)?, &ctx(p), &opts)?;
    Ok(Outcome {
        expected: format!("points at d={m}, none at d={}", m + 1),
        computed: format!(
            "d={m}: {}, d={}: {}",
            if at_m { "nonempty" } else { "empty" },
            m + 1,
            if above { "nonempty" } else { "empty" }
        ),
        verdict: pass_if(at_m && !above),
    })
}

fn tree_entries(
    b: &EntryBuilder<'_>,
    label: &str,
    tree: &Graph,
    cfg: &ReplicationConfig,
    out: &mut Vec<ReportEntry>,
) {
    let t = center_minimal_labeling(tree);
    let m = t.edge_count();
    let tag = graph_tag(&t);
    for &p in &cfg.primes {
        if is_path(&t) {
            out.push(b.run(
                &format!("{label}/{tag}/p={p}/exact"),
                format!("tree {tag} d={} p={p} nil-Coxeter", m + 1),
                || path_sharpness(m, p, cfg),
            ));
            continue;
        }
        for mode in modes_for(p) {
            out.push(b.run(
                &format!("{label}/{tag}/p={p}/{}", mode.as_str()),
                format!("tree {tag} d={} p={p} mode={}", m + 1, mode.as_str()),
                || empty_at(&star_overapprox(&t, m + 1, mode)?, m + 1, p, cfg),
            ));
        }
    }
}

fn tree_bound(cfg: &ReplicationConfig) -> Vec<ReportEntry> {
    let b = builder("tree-bound", cfg);
    let mut out = Vec::new();
    for n in cfg.path_min..=cfg.path_max {
        for &p in &cfg.primes {
            out.push(b.run(
                &format!("path/n={n}/p={p}"),
                format!("nil-Coxeter n={n} p={p}"),
                || {
                    let ps = p_sup(&nil_coxeter(n)?, &ctx(p), n + 1, &cfg.solve_options())?;
                    let sharp = path_sharpness(n - 1, p, cfg)?;
                    Ok(Outcome {
                        expected: format!("p_sup = {}", n - 1),
                        computed: format!("p_sup = {ps} ({})", sharp.computed),
                        verdict: pass_if(
                            ps.value == PSupValue::Exact(n - 1) && sharp.verdict == Verdict::Pass,
                        ),
                    })
                },
            ));
        }
    }
    match enumerate_graphs(cfg.tree_max_edges + 1) {
        Ok(graphs) => {
            for t in graphs.iter().filter(|g| g.edge_count() >= 1 && is_tree(g)) {
                tree_entries(&b, "catalog", t, cfg, &mut out);
            }
        }
        Err(e) => out.push(b.run("catalog", String::new(), || Err(e.into()))),
    }
    for k in 0..cfg.random_trees {
        let seed = cfg.seed.wrapping_add(k as u64);
        match random_tree(cfg.random_tree_edges + 1, seed) {
            Ok(t) => tree_entries(&b, &format!("random-{k}"), &t, cfg, &mut out),
            Err(e) => out.push(b.run(&format!("random-{k}"), String::new(), || Err(e.into()))),
        }
    }
    out
}
