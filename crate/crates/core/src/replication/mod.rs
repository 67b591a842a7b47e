//! Reproduction harness: a fixed catalog of claims about point schemes,
//! each checked by direct computation and recorded in a report.

mod claims;
pub mod matrices;

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{FieldCtx, PrimeField};
use crate::freealg::{nil_coxeter, quadratic_cover, Exactness, PresentationError};
use crate::graphs::{induced_a3, is_disjoint_union_of_cliques, Graph, GraphError};
use crate::scheme::{
    enumerate, multilinearize, verify_point, LayerPoint, SchemePoint, SolutionSet, SolveError,
    SolveOptions, DEFAULT_GUARD,
};

pub use claims::CLAIMS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplicationError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    /// Unique within a report.
    pub id: String,
    /// Catalog claim this entry belongs to.
    pub claim: String,
    pub statement: String,
    pub parameters: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// Parameters of a replication run. Every field has a default, so an empty
/// TOML file is a valid configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReplicationConfig {
    pub primes: Vec<u64>,
    /// Sizes of complete graphs for the degree-2 emptiness sweep.
    pub fk_sizes: Vec<usize>,
    /// Largest layer-0 candidate count attempted in that sweep.
    pub fk_guard: u64,
    pub an_min: usize,
    pub an_max: usize,
    pub star_sizes: Vec<usize>,
    pub corollary_max_vertices: usize,
    pub corollary_prime: u64,
    pub path_min: usize,
    pub path_max: usize,
    pub tree_max_edges: usize,
    /// Extra random trees (seeded) checked alongside the catalog.
    pub random_trees: usize,
    pub random_tree_edges: usize,
    pub seed: u64,
    /// Search guard passed to every solve.
    pub guard: u64,
    /// Brute-force cross-checks run only below this candidate count.
    pub brute_force_limit: u64,
    /// Record wall-clock times (makes reports run-dependent).
    pub timings: bool,
}

impl Default for ReplicationConfig {
    fn default() -> Self {
        ReplicationConfig {
            primes: vec![2, 3, 5, 7],
            fk_sizes: vec![3, 4, 5, 6],
            fk_guard: 3_000_000,
            an_min: 3,
            an_max: 8,
            star_sizes: vec![2, 3, 4],
            corollary_max_vertices: 5,
            corollary_prime: 3,
            path_min: 3,
            path_max: 7,
            tree_max_edges: 5,
            random_trees: 2,
            random_tree_edges: 6,
            seed: 0,
            guard: DEFAULT_GUARD,
            brute_force_limit: 100_000,
            timings: false,
        }
    }
}

impl ReplicationConfig {
    pub fn from_toml(text: &str) -> Result<Self, ReplicationError> {
        let cfg: ReplicationConfig =
            toml::from_str(text).map_err(|e| ReplicationError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ReplicationError> {
        let bad = |m: String| Err(ReplicationError::Config(m));
        if self.primes.is_empty() {
            return bad("at least one prime is required".into());
        }
        for &p in self.primes.iter().chain([&self.corollary_prime]) {
            if PrimeField::new(p).is_err() {
                return bad(format!("{p} is not a prime below 2^31"));
            }
        }
        if self.an_min < 3 || self.an_max < self.an_min {
            return bad(format!(
                "bad nil-Coxeter range {}..={}",
                self.an_min, self.an_max
            ));
        }
        if self.path_min < 2 || self.path_max < self.path_min {
            return bad(format!(
                "bad path range {}..={}",
                self.path_min, self.path_max
            ));
        }
        if self.fk_sizes.iter().any(|&n| n < 2) {
            return bad("complete graphs need at least 2 vertices".into());
        }
        if self.star_sizes.iter().any(|&n| n < 2) {
            return bad("stars need at least 2 leaves".into());
        }
        if self.corollary_max_vertices > 6 {
            return bad("corollary sweep is limited to 6 vertices".into());
        }
        if self.tree_max_edges > 6 || self.random_tree_edges > 6 {
            return bad("tree checks are limited to 6 edges".into());
        }
        if self.random_trees > 0 && self.random_tree_edges < 1 {
            return bad("random trees need at least one edge".into());
        }
        Ok(())
    }

    pub(crate) fn solve_options(&self) -> SolveOptions {
        SolveOptions::with_guard(self.guard)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub config: ReplicationConfig,
    pub summary: Summary,
    pub entries: Vec<ReportEntry>,
}

impl ReplicationReport {
    fn new(config: ReplicationConfig, entries: Vec<ReportEntry>) -> Self {
        let mut summary = Summary::default();
        for e in &entries {
            match e.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Inconclusive => summary.inconclusive += 1,
                Verdict::Skipped => summary.skipped += 1,
            }
        }
        ReplicationReport {
            config,
            summary,
            entries,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn entries_for(&self, claim: &str) -> impl Iterator<Item = &ReportEntry> {
        let claim = claim.to_string();
        self.entries.iter().filter(move |e| e.claim == claim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "# Replication report\n\n{} pass, {} fail, {} inconclusive, {} skipped\n\n",
            s.pass, s.fail, s.inconclusive, s.skipped
        );
        out.push_str("| id | parameters | expected | computed | verdict |\n");
        out.push_str("|---|---|---|---|---|\n");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                e.id,
                e.parameters,
                e.expected,
                e.computed.replace('|', "\\|"),
                e.verdict
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,claim,parameters,expected,computed,verdict,runtime_ms\n");
        for e in &self.entries {
            let fields = [
                e.id.as_str(),
                e.claim.as_str(),
                e.parameters.as_str(),
                e.expected.as_str(),
                e.computed.as_str(),
            ];
            let quoted: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
            let runtime = e.runtime_ms.map(|t| t.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{}", quoted.join(","), e.verdict, runtime);
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builds one entry, timing the check when requested. Solver errors become
/// SKIPPED (guards) or FAIL (anything else) instead of aborting the run.
pub(crate) struct EntryBuilder<'a> {
    pub claim: &'a str,
    pub statement: &'a str,
    pub timings: bool,
}

pub(crate) struct Outcome {
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
}

impl EntryBuilder<'_> {
    pub fn run(
        &self,
        suffix: &str,
        parameters: String,
        check: impl FnOnce() -> Result<Outcome, ReplicationError>,
    ) -> ReportEntry {
        let start = Instant::now();
        let outcome = check().unwrap_or_else(|e| {
            let verdict = match e {
                ReplicationError::Solve(
                    SolveError::GuardExceeded { .. } | SolveError::NodeBudgetExceeded { .. },
                ) => Verdict::Skipped,
                _ => Verdict::Fail,
            };
            Outcome {
                expected: "-".into(),
                computed: e.to_string(),
                verdict,
            }
        });
        let id = if suffix.is_empty() {
            self.claim.to_string()
        } else {
            format!("{}/{}", self.claim, suffix)
        };
        ReportEntry {
            id,
            claim: self.claim.to_string(),
            statement: self.statement.to_string(),
            parameters,
            expected: outcome.expected,
            computed: outcome.computed,
            verdict: outcome.verdict,
            runtime_ms: self.timings.then(|| start.elapsed().as_millis() as u64),
        }
    }
}

/// Runs the whole catalog in catalog order.
pub fn run_all(config: &ReplicationConfig) -> Result<ReplicationReport, ReplicationError> {
    config.validate()?;
    let mut entries = Vec::new();
    for (_, run) in claims::RUNNERS {
        entries.extend(run(config));
    }
    Ok(ReplicationReport::new(config.clone(), entries))
}

/// Runs a single claim of the catalog.
pub fn run_claim(
    config: &ReplicationConfig,
    claim: &str,
) -> Result<ReplicationReport, ReplicationError> {
    config.validate()?;
    let run = claims::RUNNERS
        .iter()
        .find(|(id, _)| *id == claim)
        .ok_or_else(|| ReplicationError::InvalidArgument(format!("unknown claim `{claim}`")))?
        .1;
    Ok(ReplicationReport::new(config.clone(), run(config)))
}

/// The points of the nil-Coxeter scheme on `n - 1` generators, listed
/// directly rather than solved for.
///
/// * `d >= n`: none.
/// * `3 <= d <= n - 1`: the runs `(e_i, ..., e_{i+d-1})` and their reverses.
/// * `d = 2`: for each inner generator `i`, the lines `(e_i, v)` and
///   `(v, e_i)` with `v` in the span of `e_{i-1}, e_{i+1}`; for `n = 3` the
///   two points `(e_1, e_2)`, `(e_2, e_1)`.
pub fn oracle_an_points(
    n: usize,
    d: usize,
    field: PrimeField,
) -> Result<SolutionSet, ReplicationError> {
    if d < 2 {
        return Err(ReplicationError::InvalidArgument(format!(
            "degree {d} below 2"
        )));
    }
    if n < 2 {
        return Err(ReplicationError::InvalidArgument(format!(
            "n = {n} below 2"
        )));
    }
    let g = n - 1;
    let e = |i: usize| LayerPoint::basis(g, i - 1);
    let mut points = Vec::new();
    if d < n {
        if d >= 3 {
            for i in 1..=n - d {
                let run: Vec<LayerPoint> = (i..i + d).map(e).collect();
                let mut rev = run.clone();
                rev.reverse();
                points.push(SchemePoint::new(run));
                points.push(SchemePoint::new(rev));
            }
        } else if n == 3 {
            points.push(SchemePoint::new(vec![e(1), e(2)]));
            points.push(SchemePoint::new(vec![e(2), e(1)]));
        } else {
            let p = field.modulus();
            for i in 2..=n - 2 {
                let line = (0..p).map(|t| (1, t)).chain([(0, 1)]);
                for (c, c2) in line {
                    let mut v = vec![0u64; g];
                    v[i - 2] = c;
                    v[i] = c2;
                    let v = LayerPoint::normalized(&v, field).expect("nonzero");
                    points.push(SchemePoint::new(vec![e(i), v.clone()]));
                    points.push(SchemePoint::new(vec![v, e(i)]));
                }
            }
        }
    }
    points.sort();
    points.dedup();
    Ok(SolutionSet {
        label: format!("an:{n}"),
        d,
        prime: field.modulus(),
        exactness: Exactness::Exact,
        char2_only: false,
        points,
    })
}

/// Result of running the clique-union test on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub clique_union: bool,
    /// Number of degree-2 points of the quadratic cover over F_p.
    pub point_count: usize,
    /// `(p, q, r)` of an induced path `p - q - r`, when one exists.
    pub witness: Option<(u32, u32, u32)>,
    /// The witness point lies in the solution set, verifies against the
    /// cover, and verifies against the two-edge nil-Coxeter presentation.
    pub witness_verified: bool,
    pub agree: bool,
}

/// Compares the clique-union predicate with emptiness of the degree-2
/// points of the quadratic cover, and checks the explicit witness point
/// `(e_{qr}, e_{pq})` for graphs that are not clique unions.
pub fn classify(
    g: &Graph,
    prime: u64,
    opts: &SolveOptions,
) -> Result<Classification, ReplicationError> {
    let field =
        PrimeField::new(prime).map_err(|e| ReplicationError::InvalidArgument(e.to_string()))?;
    let clique_union = is_disjoint_union_of_cliques(g);
    let cover = quadratic_cover(g);
    let sys = multilinearize(&cover, 2)?;
    let sol = enumerate(&sys, &FieldCtx::Prime(field), opts)?;
    let witness = induced_a3(g);
    let witness_verified = match witness {
        None => false,
        Some((p, q, r)) => {
            let edges = g.edge_list();
            let index = |a: u32, b: u32| {
                edges
                    .iter()
                    .position(|&e| e == (a.min(b), a.max(b)))
                    .expect("edge of g")
            };
            let m = edges.len();
            let pt = SchemePoint::new(vec![
                LayerPoint::basis(m, index(q, r)),
                LayerPoint::basis(m, index(p, q)),
            ]);
            // generator 1 is the edge pq, generator 2 the edge qr
            let local = SchemePoint::new(vec![LayerPoint::basis(2, 1), LayerPoint::basis(2, 0)]);
            let a3 = multilinearize(&nil_coxeter(3).expect("n >= 2"), 2)?;
            verify_point(&sys, &pt, field)?
                && verify_point(&a3, &local, field)?
                && sol.contains(&pt)
        }
    };
    let empty = sol.is_empty();
    let agree = if clique_union {
        empty
    } else {
        !empty && witness_verified
    };
    Ok(Classification {
        clique_union,
        point_count: sol.count(),
        witness,
        witness_verified,
        agree,
    })
}
