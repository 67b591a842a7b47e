//! Layered enumeration of F_p-points.
//!
//! Every multilinearized form is linear in its top layer. Once layers
//! `0..r` are fixed, the admissible values of layer `r` form the kernel of
//! an explicit matrix, so the search walks down the layers and only ever
//! iterates over projective points of kernels.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::system::{multilinearize, CompiledSystem, LayerPoint, MultilinearSystem, SchemePoint};
use super::SolveError;
use crate::exactalg::{Field, FieldCtx, PrimeField};
use crate::freealg::{Exactness, Presentation};

pub const DEFAULT_GUARD: u64 = 10_000_000;
pub const DEFAULT_BRUTE_FORCE_GUARD: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest admissible number of layer-0 candidates.
    pub guard: u64,
    /// Largest number of search nodes before the run is abandoned.
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            guard: DEFAULT_GUARD,
            node_budget: DEFAULT_GUARD * 10,
        }
    }
}

impl SolveOptions {
    pub fn with_guard(guard: u64) -> Self {
        SolveOptions {
            guard,
            node_budget: guard.saturating_mul(10),
        }
    }
}

/// The F_p-points of a truncated point scheme, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub label: String,
    pub d: usize,
    pub prime: u64,
    pub exactness: Exactness,
    pub char2_only: bool,
    pub points: Vec<SchemePoint>,
}

impl SolutionSet {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, pt: &SchemePoint) -> bool {
        self.points.binary_search(pt).is_ok()
    }

    fn from_points(
        sys: &MultilinearSystem,
        field: PrimeField,
        mut points: Vec<SchemePoint>,
    ) -> Self {
        points.sort();
        points.dedup();
        SolutionSet {
            label: sys.label.clone(),
            d: sys.d,
            prime: field.modulus(),
            exactness: sys.exactness,
            char2_only: sys.char2_only,
            points,
        }
    }
}

/// Normalized vectors of `F_p^k` (first nonzero entry 1) in order: leading
/// position ascending, then the tail as a base-p counter.
pub(crate) fn projective_vector(k: usize, p: u64, mut index: u64) -> Vec<u64> {
    let mut out = vec![0u64; k];
    for lead in 0..k {
        let tail = (k - lead - 1) as u32;
        let block = p.pow(tail);
        if index < block {
            out[lead] = 1;
            for pos in (lead + 1..k).rev() {
                out[pos] = index % p;
                index /= p;
            }
            return out;
        }
        index -= block;
    }
    unreachable!("index beyond the projective space")
}

/// Every point of `P^{g-1}(F_p)` in canonical form and canonical order.
pub fn projective_points(g: usize, field: PrimeField) -> Vec<LayerPoint> {
    (0..field.projective_count(g))
        .map(|i| {
            let v = projective_vector(g, field.modulus(), i);
            LayerPoint::normalized(&v, field).expect("nonzero")
        })
        .collect()
}

fn combine(basis: &[Vec<u64>], coeffs: &[u64], field: &PrimeField, g: usize) -> Vec<u64> {
    let mut v = vec![0u64; g];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (slot, x) in v.iter_mut().zip(b) {
            *slot = field.add(slot, &field.mul(&c, x));
        }
    }
    v
}

/// Projective points of the span of `basis`, normalized.
fn span_points(basis: &[Vec<u64>], field: &PrimeField, g: usize) -> Vec<LayerPoint> {
    let k = basis.len();
    let count = field.projective_count(k);
    (0..count)
        .map(|i| {
            let coeffs = projective_vector(k, field.modulus(), i);
            let v = combine(basis, &coeffs, field, g);
            LayerPoint::normalized(&v, *field).expect("independent basis")
        })
        .collect()
}

struct Search<'a> {
    sys: &'a CompiledSystem,
    nodes: &'a AtomicU64,
    budget: u64,
    aborted: &'a AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn kernel(&self, prefix: &[LayerPoint]) -> Vec<Vec<u64>> {
        let layers: Vec<&[u64]> = prefix.iter().map(|l| l.coords()).collect();
        self.sys.kernel(&layers)
    }

    fn extend(&self, prefix: &mut Vec<LayerPoint>, out: &mut Vec<SchemePoint>) {
        if !self.tick() {
            return;
        }
        if prefix.len() == self.sys.d {
            out.push(SchemePoint::new(prefix.clone()));
            return;
        }
        let basis = self.kernel(prefix);
        if basis.is_empty() {
            return;
        }
        for layer in span_points(&basis, &self.sys.field, self.sys.g) {
            prefix.push(layer);
            self.extend(prefix, out);
            prefix.pop();
        }
    }

    fn any(&self, prefix: &mut Vec<LayerPoint>) -> bool {
        if !self.tick() {
            return false;
        }
        if prefix.len() == self.sys.d {
            return true;
        }
        let basis = self.kernel(prefix);
        if basis.is_empty() {
            return false;
        }
        span_points(&basis, &self.sys.field, self.sys.g)
            .into_iter()
            .any(|layer| {
                prefix.push(layer);
                let hit = self.any(prefix);
                prefix.pop();
                hit
            })
    }

    fn fibration(&self, prefix: &mut Vec<LayerPoint>, out: &mut Vec<FibrationNode>) {
        if !self.tick() {
            return;
        }
        let basis = self.kernel(prefix);
        let dimension = basis.len();
        out.push(FibrationNode {
            depth: prefix.len(),
            prefix: prefix.clone(),
            dimension,
        });
        if prefix.len() + 1 == self.sys.d {
            return;
        }
        for layer in span_points(&basis, &self.sys.field, self.sys.g) {
            prefix.push(layer);
            self.fibration(prefix, out);
            prefix.pop();
        }
    }
}

const CHUNK: u64 = 1024;

fn prime_of(field: &FieldCtx) -> Result<PrimeField, SolveError> {
    field.as_prime().ok_or(SolveError::RationalField)
}

/// Runs `visit` on every layer-0 candidate in parallel chunks and
/// concatenates the outputs in candidate order.
fn fan_out<T: Send>(
    compiled: &CompiledSystem,
    opts: &SolveOptions,
    visit: impl Fn(&Search<'_>, LayerPoint, &mut Vec<T>) + Sync,
) -> Result<Vec<T>, SolveError> {
    let field = compiled.field;
    let total = field.projective_count(compiled.g);
    if total > opts.guard {
        return Err(SolveError::GuardExceeded {
            estimate: total,
            guard: opts.guard,
        });
    }
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let search = Search {
        sys: compiled,
        nodes: &nodes,
        budget: opts.node_budget,
        aborted: &aborted,
    };
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let parts: Vec<Vec<T>> = chunks
        .par_iter()
        .map(|&c| {
            let mut out = Vec::new();
            for i in c * CHUNK..((c + 1) * CHUNK).min(total) {
                if aborted.load(Ordering::Relaxed) {
                    break;
                }
                let v = projective_vector(compiled.g, field.modulus(), i);
                let layer = LayerPoint::normalized(&v, field).expect("nonzero");
                visit(&search, layer, &mut out);
            }
            out
        })
        .collect();
    if aborted.load(Ordering::Relaxed) {
        return Err(SolveError::NodeBudgetExceeded {
            budget: opts.node_budget,
        });
    }
    Ok(parts.into_iter().flatten().collect())
}

/// Every F_p-point of the system, found by layered kernel search.
pub fn enumerate(
    sys: &MultilinearSystem,
    field: &FieldCtx,
    opts: &SolveOptions,
) -> Result<SolutionSet, SolveError> {
    let fp = prime_of(field)?;
    let compiled = CompiledSystem::new(sys, fp)?;
    let points = fan_out(&compiled, opts, |search, layer, out| {
        let mut prefix = vec![layer];
        search.extend(&mut prefix, out);
    })?;
    Ok(SolutionSet::from_points(sys, fp, points))
}

/// Whether the system has at least one F_p-point; stops at the first one.
pub fn has_point(
    sys: &MultilinearSystem,
    field: &FieldCtx,
    opts: &SolveOptions,
) -> Result<bool, SolveError> {
    let fp = prime_of(field)?;
    let compiled = CompiledSystem::new(sys, fp)?;
    let found = AtomicBool::new(false);
    let hits = fan_out(&compiled, opts, |search, layer, out| {
        if found.load(Ordering::Relaxed) {
            return;
        }
        let mut prefix = vec![layer];
        if search.any(&mut prefix) {
            found.store(true, Ordering::Relaxed);
            out.push(());
        }
    })?;
    Ok(!hits.is_empty())
}

/// Size of the full Cartesian scan `|P^{g-1}(F_p)|^d`, saturating.
pub fn brute_force_size(sys: &MultilinearSystem, field: PrimeField) -> u64 {
    let per_layer = field.projective_count(sys.generator_count());
    (0..sys.d).fold(1u64, |acc, _| acc.saturating_mul(per_layer))
}

/// Independent oracle: scans every tuple of normalized layer points and
/// keeps those satisfying all equations.
pub fn brute_force(
    sys: &MultilinearSystem,
    field: &FieldCtx,
    guard: u64,
) -> Result<SolutionSet, SolveError> {
    let fp = prime_of(field)?;
    let compiled = CompiledSystem::new(sys, fp)?;
    let size = brute_force_size(sys, fp);
    if size > guard {
        return Err(SolveError::GuardExceeded {
            estimate: size,
            guard,
        });
    }
    let layer_points = projective_points(sys.generator_count(), fp);
    let mut points = Vec::new();
    if !layer_points.is_empty() {
        let mut odometer = vec![0usize; sys.d];
        loop {
            let layers: Vec<&[u64]> = odometer.iter().map(|&i| layer_points[i].coords()).collect();
            if compiled.prefix_consistent(&layers) {
                points.push(SchemePoint::new(
                    odometer.iter().map(|&i| layer_points[i].clone()).collect(),
                ));
            }
            let mut k = 0;
            while k < sys.d {
                odometer[k] += 1;
                if odometer[k] < layer_points.len() {
                    break;
                }
                odometer[k] = 0;
                k += 1;
            }
            if k == sys.d {
                break;
            }
        }
    }
    Ok(SolutionSet::from_points(sys, fp, points))
}

/// One node of the search tree: the kernel dimension of layer `depth`
/// over a fixed prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationNode {
    pub depth: usize,
    pub prefix: Vec<LayerPoint>,
    pub dimension: usize,
}

/// Search trees in both directions. The forward tree fixes layers from 0
/// upwards; the backward tree fixes them from `d - 1` downwards (its
/// prefixes list layer `d - 1` first). Nodes at depth `d - 1` are leaves;
/// a leaf of dimension `k >= 2` is a `(k-1)`-dimensional projective family
/// of points over its prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub d: usize,
    pub forward: Vec<FibrationNode>,
    pub backward: Vec<FibrationNode>,
}

impl FibrationReport {
    pub fn leaves(&self) -> impl Iterator<Item = &FibrationNode> {
        let d = self.d;
        self.forward
            .iter()
            .chain(&self.backward)
            .filter(move |n| n.depth + 1 == d)
    }

    /// Leaves of the given dimension across both directions.
    pub fn leaves_with_dimension(&self, k: usize) -> usize {
        self.leaves().filter(|n| n.dimension == k).count()
    }

    pub fn forward_leaves_with_dimension(&self, k: usize) -> usize {
        let d = self.d;
        self.forward
            .iter()
            .filter(|n| n.depth + 1 == d && n.dimension == k)
            .count()
    }

    /// Number of points the forward tree accounts for.
    pub fn point_count(&self, field: PrimeField) -> u64 {
        let d = self.d;
        self.forward
            .iter()
            .filter(|n| n.depth + 1 == d)
            .map(|n| field.projective_count(n.dimension))
            .sum()
    }
}

fn fibration_tree(
    sys: &MultilinearSystem,
    fp: PrimeField,
    opts: &SolveOptions,
) -> Result<Vec<FibrationNode>, SolveError> {
    let compiled = CompiledSystem::new(sys, fp)?;
    let g = compiled.g;
    let root = FibrationNode {
        depth: 0,
        prefix: Vec::new(),
        dimension: g,
    };
    if sys.d == 1 {
        return Ok(vec![root]);
    }
    let mut nodes = vec![root];
    nodes.extend(fan_out(&compiled, opts, |search, layer, out| {
        let mut prefix = vec![layer];
        search.fibration(&mut prefix, out);
    })?);
    Ok(nodes)
}

pub fn fibration_report(
    sys: &MultilinearSystem,
    field: &FieldCtx,
    opts: &SolveOptions,
) -> Result<FibrationReport, SolveError> {
    let fp = prime_of(field)?;
    Ok(FibrationReport {
        d: sys.d,
        forward: fibration_tree(sys, fp, opts)?,
        backward: fibration_tree(&sys.reversed(), fp, opts)?,
    })
}

/// The largest degree with points, or a lower bound when points persist up
/// to the search limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum PSupValue {
    Exact(usize),
    AtLeast(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSup {
    pub value: PSupValue,
    pub exactness: Exactness,
    pub prime: u64,
}

impl std::fmt::Display for PSup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.value, self.exactness) {
            (PSupValue::Exact(k), Exactness::Exact) => write!(f, "{k}"),
            (PSupValue::Exact(k), Exactness::NecessaryOnly) => {
                write!(f, "<= {k} (upper bound from a necessary-only presentation)")
            }
            (PSupValue::AtLeast(k), Exactness::Exact) => write!(f, ">= {k}"),
            (PSupValue::AtLeast(k), Exactness::NecessaryOnly) => {
                write!(f, ">= {k} candidates (necessary-only presentation)")
            }
        }
    }
}

/// Scans `d = 1, 2, ...` and stops at the first degree without points;
/// truncation maps points of degree `d + 1` onto points of degree `d`, so
/// every larger degree is empty too.
pub fn p_sup(
    p: &Presentation,
    field: &FieldCtx,
    dmax: usize,
    opts: &SolveOptions,
) -> Result<PSup, SolveError> {
    if dmax < 1 {
        return Err(SolveError::InvalidDegree(dmax));
    }
    let prime = prime_of(field)?.modulus();
    for d in 1..=dmax {
        let sys = multilinearize(p, d)?;
        if !has_point(&sys, field, opts)? {
            return Ok(PSup {
                value: PSupValue::Exact(d - 1),
                exactness: p.exactness(),
                prime,
            });
        }
    }
    Ok(PSup {
        value: PSupValue::AtLeast(dmax),
        exactness: p.exactness(),
        prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{fk_complete, nil_coxeter};

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    #[test]
    fn projective_vectors_are_distinct_and_normalized() {
        let k = 3;
        let p = 3;
        let all: Vec<Vec<u64>> = (0..13).map(|i| projective_vector(k, p, i)).collect();
        assert_eq!(all[0], vec![1, 0, 0]);
        assert_eq!(all[12], vec![0, 0, 1]);
        let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 13);
        assert!(all.iter().all(|v| v.iter().find(|&&c| c != 0) == Some(&1)));
    }

    #[test]
    fn fk3_is_empty() {
        let sys = multilinearize(&fk_complete(3).unwrap(), 2).unwrap();
        assert!(enumerate(&sys, &fp(5), &SolveOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn nil_coxeter_points() {
        let sys = multilinearize(&nil_coxeter(5).unwrap(), 3).unwrap();
        let sol = enumerate(&sys, &fp(7), &SolveOptions::default()).unwrap();
        let expected: Vec<SchemePoint> = [[0, 1, 2], [1, 2, 3], [2, 1, 0], [3, 2, 1]]
            .iter()
            .map(|ix| SchemePoint::coordinate(4, ix))
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(sol.points, expected);

        let a3 = multilinearize(&nil_coxeter(3).unwrap(), 2).unwrap();
        let sol = enumerate(&a3, &fp(2), &SolveOptions::default()).unwrap();
        let mut expected = vec![
            SchemePoint::coordinate(2, &[0, 1]),
            SchemePoint::coordinate(2, &[1, 0]),
        ];
        expected.sort();
        assert_eq!(sol.points, expected);
    }

    #[test]
    fn has_point_agrees_with_enumerate() {
        let opts = SolveOptions::default();
        for (n, d) in [(4, 2), (4, 3), (4, 4), (5, 3)] {
            let sys = multilinearize(&nil_coxeter(n).unwrap(), d).unwrap();
            let f = fp(3);
            assert_eq!(
                has_point(&sys, &f, &opts).unwrap(),
                !enumerate(&sys, &f, &opts).unwrap().is_empty()
            );
        }
    }

    #[test]
    fn rationals_and_guard_rejected() {
        let sys = multilinearize(&fk_complete(4).unwrap(), 2).unwrap();
        assert_eq!(
            enumerate(&sys, &FieldCtx::Rationals, &SolveOptions::default()),
            Err(SolveError::RationalField)
        );
        assert_eq!(
            enumerate(&sys, &fp(3), &SolveOptions::with_guard(100)),
            Err(SolveError::GuardExceeded {
                estimate: 364,
                guard: 100
            })
        );
        let opts = SolveOptions {
            guard: 1000,
            node_budget: 10,
        };
        assert!(matches!(
            enumerate(&sys, &fp(3), &opts),
            Err(SolveError::NodeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn brute_force_degree_one_is_whole_space() {
        let sys = multilinearize(&fk_complete(3).unwrap(), 1).unwrap();
        let all = brute_force(&sys, &fp(3), DEFAULT_BRUTE_FORCE_GUARD).unwrap();
        assert_eq!(all.count(), 13);
        assert_eq!(
            enumerate(&sys, &fp(3), &SolveOptions::default()).unwrap(),
            all
        );
    }

    #[test]
    fn fibration_on_a4() {
        let sys = multilinearize(&nil_coxeter(4).unwrap(), 2).unwrap();
        let rep = fibration_report(&sys, &fp(3), &SolveOptions::default()).unwrap();
        assert_eq!(rep.forward[0].dimension, 3);
        let dim_of = |ix: usize| {
            rep.forward
                .iter()
                .find(|n| n.depth == 1 && n.prefix[0] == LayerPoint::basis(3, ix))
                .unwrap()
                .dimension
        };
        assert_eq!(dim_of(0), 1);
        assert_eq!(dim_of(1), 2);
        assert_eq!(dim_of(2), 1);
        assert_eq!(rep.forward_leaves_with_dimension(2), 1);
        assert_eq!(rep.leaves_with_dimension(2), 2);
        let count = enumerate(&sys, &fp(3), &SolveOptions::default())
            .unwrap()
            .count() as u64;
        assert_eq!(rep.point_count(PrimeField::new(3).unwrap()), count);
    }

    #[test]
    fn p_sup_examples() {
        let opts = SolveOptions::default();
        let nc = p_sup(&nil_coxeter(4).unwrap(), &fp(3), 10, &opts).unwrap();
        assert_eq!(nc.value, PSupValue::Exact(3));
        let fk = p_sup(&fk_complete(4).unwrap(), &fp(2), 5, &opts).unwrap();
        assert_eq!(fk.value, PSupValue::Exact(1));
        let capped = p_sup(&nil_coxeter(6).unwrap(), &fp(2), 3, &opts).unwrap();
        assert_eq!(capped.value, PSupValue::AtLeast(3));
    }
}
