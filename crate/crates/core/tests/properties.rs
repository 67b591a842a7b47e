use std::sync::Arc;

use proptest::prelude::*;

use fkpoints::exactalg::{sym_det, CommPoly, ExactMatrix, Field, FieldCtx, PrimeField};
use fkpoints::freealg::{
    fk_complete, nil_coxeter, parse_presentation, quadratic_cover, serialize_presentation,
    star_overapprox, Presentation, StarMode,
};
use fkpoints::graphs::{self, line_graph, Graph};
use fkpoints::scheme::{
    brute_force, brute_force_size, enumerate, multilinearize, solution_to_json, support_pattern,
    LayerPoint, SolutionSet, SolveOptions,
};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (1..=n as u32)
            .flat_map(|a| (a + 1..=n as u32).map(move |b| (a, b)))
            .collect();
        let k = pairs.len();
        prop::collection::vec(any::<bool>(), k).prop_map(move |mask| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn matrix(p: u64, rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..p, cols), rows)
}

fn mat(f: PrimeField, rows: Vec<Vec<u64>>, cols: usize) -> ExactMatrix<PrimeField> {
    ExactMatrix::from_rows(f, rows, cols).unwrap()
}

fn matmul(f: &PrimeField, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (x, brow)| f.add(&acc, &f.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

/// Leibniz expansion over all permutations.
fn leibniz(f: &PrimeField, m: &[Vec<u64>]) -> u64 {
    fn go(
        f: &PrimeField,
        m: &[Vec<u64>],
        row: usize,
        used: &mut Vec<bool>,
        sign: bool,
        acc: u64,
    ) -> u64 {
        if row == m.len() {
            return if sign { f.neg(&acc) } else { acc };
        }
        let mut total = 0;
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            // sign flips once per unused column to the left of c
            let inversions = used[..c].iter().filter(|&&u| !u).count();
            used[c] = true;
            let term = go(
                f,
                m,
                row + 1,
                used,
                sign ^ (inversions % 2 == 1),
                f.mul(&acc, &m[row][c]),
            );
            used[c] = false;
            total = f.add(&total, &term);
        }
        total
    }
    go(f, m, 0, &mut vec![false; m.len()], false, 1)
}

fn solve(pres: &Presentation, d: usize, p: u64) -> SolutionSet {
    let sys = multilinearize(pres, d).unwrap();
    enumerate(&sys, &FieldCtx::prime(p).unwrap(), &SolveOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(p in prime(), a in 0u64..7, b in 0u64..7, c in 0u64..7) {
        let f = PrimeField::new(p).unwrap();
        let (a, b, c) = (a % p, b % p, c % p);
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
        prop_assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
        match f.inv(&a) {
            Some(i) => prop_assert_eq!(f.mul(&a, &i), 1),
            None => prop_assert_eq!(a, 0),
        }
    }

    #[test]
    fn rank_nullity(p in prime(), rows in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(7, r, c))) {
        let f = PrimeField::new(p).unwrap();
        let c = rows[0].len();
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        let m = mat(f, rows, c);
        let rref = m.rref();
        prop_assert_eq!(rref.rank + rref.nullspace.len(), c);
        prop_assert_eq!(rref.rank, m.rank());
        for v in &rref.nullspace {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn det_is_multiplicative_and_matches_leibniz(
        p in prime(),
        (a, b) in (1usize..5).prop_flat_map(|n| (matrix(7, n, n), matrix(7, n, n))),
    ) {
        let f = PrimeField::new(p).unwrap();
        let n = a.len();
        let red = |m: &Vec<Vec<u64>>| -> Vec<Vec<u64>> { m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect() };
        let (a, b) = (red(&a), red(&b));
        let da = mat(f, a.clone(), n).det().unwrap();
        let db = mat(f, b.clone(), n).det().unwrap();
        let dab = mat(f, matmul(&f, &a, &b), n).det().unwrap();
        prop_assert_eq!(dab, f.mul(&da, &db));
        prop_assert_eq!(da, leibniz(&f, &a));
        prop_assert_eq!(da != 0, mat(f, a, n).rank() == n);
    }

    #[test]
    fn sym_det_commutes_with_evaluation(
        p in prime(),
        n in 1usize..4,
        coeffs in prop::collection::vec(prop::collection::vec(0u64..7, 6), 9),
        point in prop::collection::vec(0u64..7, 2),
    ) {
        let f = PrimeField::new(p).unwrap();
        let vars: Arc<[String]> = vec!["x".to_string(), "y".to_string()].into();
        let monos = [vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]];
        let entry = |k: usize| {
            CommPoly::from_terms(
                f,
                vars.clone(),
                monos.iter().cloned().zip(coeffs[k].iter().map(|c| c % p)),
            )
        };
        let grid: Vec<Vec<CommPoly<PrimeField>>> =
            (0..n).map(|i| (0..n).map(|j| entry(i * 3 + j)).collect()).collect();
        let point: Vec<u64> = point.iter().map(|x| x % p).collect();
        let evaluated: Vec<Vec<u64>> = grid
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&point).unwrap()).collect())
            .collect();
        let det = sym_det(&grid).unwrap();
        prop_assert_eq!(det.eval(&point).unwrap(), leibniz(&f, &evaluated));
    }

    #[test]
    fn normalization_is_idempotent(p in prime(), coords in prop::collection::vec(0u64..50, 1..6)) {
        let f = PrimeField::new(p).unwrap();
        if let Some(pt) = LayerPoint::normalized(&coords, f) {
            prop_assert!(pt.is_normalized());
            prop_assert_eq!(LayerPoint::normalized(pt.coords(), f).unwrap(), pt.clone());
            let scaled: Vec<u64> = coords.iter().map(|c| (c % p) * (p - 1)).collect();
            prop_assert_eq!(LayerPoint::normalized(&scaled, f).unwrap(), pt);
        } else {
            prop_assert!(coords.iter().all(|c| c % p == 0));
        }
    }

    #[test]
    fn line_graph_edge_count(g in graph(7)) {
        let expected: usize = (1..=g.vertex_count() as u32)
            .map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2)
            .sum();
        let l = line_graph(&g);
        prop_assert_eq!(l.vertex_count(), g.edge_count());
        prop_assert_eq!(l.edge_count(), expected);
    }

    #[test]
    fn presentations_round_trip(g in graph(5), dmax in 2usize..5, char2 in any::<bool>()) {
        let mode = if char2 { StarMode::AllCentersChar2 } else { StarMode::MinCenter };
        for pres in [quadratic_cover(&g), star_overapprox(&g, dmax, mode).unwrap()] {
            let text = serialize_presentation(&pres);
            prop_assert_eq!(parse_presentation(&text).unwrap(), pres);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_matches_brute_force(g in graph(4), d in 1usize..4, p in prop::sample::select(vec![2u64, 3])) {
        let pres = star_overapprox(&g, 3, StarMode::MinCenter).unwrap();
        let sys = multilinearize(&pres, d).unwrap();
        let f = PrimeField::new(p).unwrap();
        prop_assume!(brute_force_size(&sys, f) <= 300_000);
        let ctx = FieldCtx::prime(p).unwrap();
        let sol = enumerate(&sys, &ctx, &SolveOptions::default()).unwrap();
        prop_assert_eq!(brute_force(&sys, &ctx, 300_000).unwrap(), sol);
    }

    #[test]
    fn truncations_are_points(g in graph(5), d in 2usize..5, p in prime()) {
        let pres = quadratic_cover(&g);
        let lower = solve(&pres, d - 1, p);
        for pt in solve(&pres, d, p).points {
            prop_assert!(lower.contains(&pt.truncated(d - 1)));
        }
    }

    #[test]
    fn extra_relations_shrink_solutions(g in graph(5), d in 2usize..4, p in prime()) {
        let base = quadratic_cover(&g);
        let mut bigger = base.clone();
        let stars = star_overapprox(&g, 3, StarMode::MinCenter).unwrap();
        bigger.extend_relations(stars.relations().iter().cloned()).unwrap();
        let large = solve(&base, d, p);
        for pt in solve(&bigger, d, p).points {
            prop_assert!(large.contains(&pt));
        }
    }

    #[test]
    fn star_supports_are_disjoint(n in 2usize..5, d in 2usize..5, p in prime()) {
        prop_assume!(d <= n);
        let pres = star_overapprox(&graphs::star(n).unwrap(), n + 1, StarMode::MinCenter).unwrap();
        for pt in solve(&pres, d, p).points {
            let s = support_pattern(&pt);
            prop_assert!(s.windows(2).all(|w| w[0].is_disjoint(&w[1])));
        }
    }

    #[test]
    fn nil_coxeter_is_reversal_symmetric(n in 3usize..7, d in 2usize..6, p in prime()) {
        let sol = solve(&nil_coxeter(n).unwrap(), d, p);
        for pt in &sol.points {
            prop_assert!(sol.contains(&pt.reversed()));
        }
    }

    #[test]
    fn nil_coxeter_runs_do_not_depend_on_the_prime(n in 4usize..8, d in 3usize..8, p in prime(), q in prime()) {
        prop_assume!(d <= n + 1);
        let pres = nil_coxeter(n).unwrap();
        prop_assert_eq!(solve(&pres, d, p).points, solve(&pres, d, q).points);
    }

    #[test]
    fn worker_count_does_not_change_output(n in 3usize..7, d in 2usize..5, p in prime(), threads in 2usize..5) {
        let pres = nil_coxeter(n).unwrap();
        let run = |k: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap();
            pool.install(|| solution_to_json(&solve(&pres, d, p), None))
        };
        prop_assert_eq!(run(1), run(threads));
    }
}

#[test]
fn complete_presentations_round_trip() {
    for n in 2..=6 {
        for pres in [fk_complete(n).unwrap(), nil_coxeter(n).unwrap()] {
            assert_eq!(
                parse_presentation(&serialize_presentation(&pres)).unwrap(),
                pres
            );
        }
    }
}
