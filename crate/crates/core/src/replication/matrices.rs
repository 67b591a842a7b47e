//! Symbolic checks on the degree-2 coefficient matrices of the complete
//! algebras on three and four vertices.

use std::sync::Arc;

use crate::exactalg::{sym_det, CommPoly, Field, PrimeField, RationalField};
use crate::freealg::fk_complete;
use crate::scheme::multilinearize;

type Q = CommPoly<RationalField>;

/// Parses a hand-written entry such as `-x1_3`, `0` or `1 + x1_3*x2_3`.
fn entry(vars: &Arc<[String]>, text: &str) -> Q {
    let q = RationalField;
    let mut acc = Q::zero(q, vars.clone());
    let normalized = text.replace(' ', "").replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        let mut t = Q::constant(q, vars.clone(), q.one());
        for factor in body.split('*') {
            let f = match factor.parse::<i64>() {
                Ok(c) => Q::constant(q, vars.clone(), q.from_i64(c)),
                Err(_) => Q::named_var(q, vars.clone(), factor)
                    .unwrap_or_else(|| panic!("unknown variable {factor}")),
            };
            t = t.mul(&f);
        }
        acc = if neg { acc.sub(&t) } else { acc.add(&t) };
    }
    acc
}

fn grid(vars: &Arc<[String]>, rows: &[&[&str]]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|e| entry(vars, e)).collect())
        .collect()
}

fn pick(m: &[Vec<Q>], rows: &[usize]) -> Vec<Vec<Q>> {
    rows.iter().map(|&r| m[r - 1].clone()).collect()
}

/// Columns `y1_2, y1_3, y2_3`; rows: the two triangle relations, then the
/// squares of `x1_2, x1_3, x2_3`.
const FK3_HAND: [&[&str]; 5] = [
    &["x2_3", "-x1_2", "-x1_3"],
    &["-x1_3", "-x2_3", "x1_2"],
    &["x1_2", "0", "0"],
    &["0", "x1_3", "0"],
    &["0", "0", "x2_3"],
];

/// Relation index in `fk_complete(3)` for each hand row.
const FK3_ROW_RELATIONS: [usize; 5] = [3, 4, 0, 1, 2];

/// After `x1_2 = 1`, `y1_2 = y3_4 = 0`. Columns `y1_3, y1_4, y2_3, y2_4`.
const FK4_HAND: [&[&str]; 8] = [
    &["1", "0", "x1_3", "0"],
    &["-x2_3", "0", "1", "0"],
    &["0", "1", "0", "x1_4"],
    &["0", "-x2_4", "0", "1"],
    &["x2_4", "0", "0", "-x1_3"],
    &["0", "x1_4", "0", "0"],
    &["0", "0", "x2_3", "0"],
    &["0", "0", "0", "x2_4"],
];

const FK4_REDUCED_HAND: [&[&str]; 8] = [
    &["1", "0", "x1_3", "0"],
    &["0", "0", "1 + x1_3*x2_3", "0"],
    &["0", "1", "0", "x1_4"],
    &["0", "0", "0", "1 + x1_4*x2_4"],
    &["x2_4", "0", "0", "-x1_3"],
    &["0", "x1_4", "0", "0"],
    &["0", "0", "x2_3", "0"],
    &["0", "0", "0", "x2_4"],
];

/// Relation index in `fk_complete(4)` for each hand row: the triangle
/// relations on 123 and 124, the commutator of `x1_3, x2_4`, then the
/// squares of `x1_4, x2_3, x2_4`.
const FK4_ROW_RELATIONS: [usize; 8] = [9, 10, 11, 12, 7, 2, 3, 4];
const FK4_COLUMNS: [usize; 4] = [1, 2, 3, 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check {
            ok,
            detail: detail.into(),
        }
    }
}

fn fk3_matrix() -> (Arc<[String]>, Vec<Vec<Q>>) {
    let sys = multilinearize(&fk_complete(3).expect("n >= 2"), 2).expect("d >= 1");
    let m = sys.symbolic_top_matrix(1);
    (m.vars, m.rows)
}

/// The solver's coefficient matrix equals the hand matrix, row for row.
pub fn fk3_matrix_matches() -> Check {
    let (vars, rows) = fk3_matrix();
    let hand = grid(&vars, &FK3_HAND);
    let bad: Vec<usize> = FK3_ROW_RELATIONS
        .iter()
        .enumerate()
        .filter(|(k, &rel)| rows[rel] != hand[*k])
        .map(|(k, _)| k + 1)
        .collect();
    if bad.is_empty() {
        Check::new(true, "5 rows equal")
    } else {
        Check::new(false, format!("rows {bad:?} differ"))
    }
}

/// Determinant of the three square rows.
pub fn fk3_square_minor() -> Check {
    let (vars, _) = fk3_matrix();
    let hand = grid(&vars, &FK3_HAND);
    let det = sym_det(&pick(&hand, &[3, 4, 5])).expect("square");
    let want = entry(&vars, "x1_2*x1_3*x2_3");
    Check::new(det == want, det.to_string())
}

/// For each pattern of vanishing coordinates, the named minor restricted
/// to that pattern is a unit monomial in the surviving coordinates, hence
/// invertible on the whole case. Also confirmed by evaluation at every
/// point of each case over the given primes.
pub fn fk3_case_minors(primes: &[u64]) -> Check {
    let (vars, _) = fk3_matrix();
    let hand = grid(&vars, &FK3_HAND);
    // (coordinates forced to zero, rows of the minor)
    let cases: [(&[usize], [usize; 3]); 6] = [
        (&[0], [1, 4, 5]),
        (&[1], [1, 3, 5]),
        (&[2], [1, 3, 4]),
        (&[1, 2], [1, 2, 3]),
        (&[0, 2], [1, 2, 4]),
        (&[0, 1], [1, 2, 5]),
    ];
    let q = RationalField;
    let mut notes = Vec::new();
    let mut ok = true;
    for (zeros, rows) in cases {
        let mut det = sym_det(&pick(&hand, &rows)).expect("square");
        for &z in zeros {
            det = det.substitute(z, &q.zero());
        }
        if !det.is_unit_monomial() {
            ok = false;
            notes.push(format!("M{rows:?} restricts to {det}"));
        }
        for &p in primes {
            let f = PrimeField::new(p).expect("validated prime");
            let full = sym_det(&pick(&hand, &rows)).expect("square");
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        let pt = [a, b, c];
                        let on_case = (0..3).all(|i| (pt[i] == 0) == zeros.contains(&i));
                        if on_case && eval_mod(&full, &pt, f) == 0 {
                            ok = false;
                            notes.push(format!("M{rows:?} vanishes at {pt:?} mod {p}"));
                        }
                    }
                }
            }
        }
    }
    if ok {
        Check::new(true, "6 case minors invertible on their cases")
    } else {
        Check::new(false, notes.join("; "))
    }
}

/// Evaluates a rational polynomial at residues modulo `p`.
fn eval_mod(poly: &Q, point: &[u64], f: PrimeField) -> u64 {
    let mut acc = 0;
    for (m, c) in poly.terms() {
        let mut t = f
            .from_ratio(&num_rational::Rational64::new(
                i64::try_from(c.numer()).expect("small coefficient"),
                i64::try_from(c.denom()).expect("small coefficient"),
            ))
            .expect("denominator invertible");
        for (x, &e) in point.iter().zip(&m.0) {
            t = f.mul(&t, &f.pow(*x, e as u64));
        }
        acc = f.add(&acc, &t);
    }
    acc
}

/// The coefficient matrix of `fk_complete(4)` after `x1_2 = 1`, restricted
/// to the eight rows and four columns of the hand matrix.
fn fk4_reduced() -> (Arc<[String]>, Vec<Vec<Q>>) {
    let sys = multilinearize(&fk_complete(4).expect("n >= 2"), 2).expect("d >= 1");
    let m = sys.symbolic_top_matrix(1);
    let one = RationalField.one();
    let rows = FK4_ROW_RELATIONS
        .iter()
        .map(|&rel| {
            FK4_COLUMNS
                .iter()
                .map(|&c| m.rows[rel][c].substitute(0, &one))
                .collect()
        })
        .collect();
    (m.vars, rows)
}

/// Rows agree with the hand matrix up to sign (the first triangle relation
/// is written with the opposite orientation there).
pub fn fk4_matrix_matches() -> Check {
    let (vars, rows) = fk4_reduced();
    let hand = grid(&vars, &FK4_HAND);
    let mut flipped = Vec::new();
    let mut bad = Vec::new();
    for (k, (mine, theirs)) in rows.iter().zip(&hand).enumerate() {
        if mine == theirs {
            continue;
        }
        let neg: Vec<Q> = mine.iter().map(Q::neg).collect();
        if &neg == theirs {
            flipped.push(k + 1);
        } else {
            bad.push(k + 1);
        }
    }
    if bad.is_empty() {
        Check::new(
            true,
            format!("8 rows equal up to sign, negated rows {flipped:?}"),
        )
    } else {
        Check::new(false, format!("rows {bad:?} differ"))
    }
}

fn normalize_signs(rows: Vec<Vec<Q>>, hand: &[Vec<Q>]) -> Vec<Vec<Q>> {
    rows.into_iter()
        .zip(hand)
        .map(|(r, h)| {
            if &r == h {
                r
            } else {
                r.iter().map(Q::neg).collect()
            }
        })
        .collect()
}

/// Adding `x2_3` times row 1 to row 2 and `x2_4` times row 3 to row 4
/// produces the reduced hand matrix.
pub fn fk4_row_reduction() -> Check {
    let (vars, rows) = fk4_reduced();
    let hand = grid(&vars, &FK4_HAND);
    let mut m = normalize_signs(rows, &hand);
    for (target, source, var) in [(1, 0, "x2_3"), (3, 2, "x2_4")] {
        let factor = entry(&vars, var);
        let shifted: Vec<Q> = m[source].iter().map(|e| e.mul(&factor)).collect();
        m[target] = m[target]
            .iter()
            .zip(&shifted)
            .map(|(a, b)| a.add(b))
            .collect();
    }
    let reduced = grid(&vars, &FK4_REDUCED_HAND);
    Check::new(
        m == reduced,
        if m == reduced {
            "reduced matrix equal"
        } else {
            "reduced matrix differs"
        },
    )
}

/// Determinant of the first four reduced rows.
pub fn fk4_main_minor() -> Check {
    let vars = fk4_reduced().0;
    let reduced = grid(&vars, &FK4_REDUCED_HAND);
    let det = sym_det(&pick(&reduced, &[1, 2, 3, 4])).expect("square");
    let want = entry(&vars, "1 + x1_3*x2_3").mul(&entry(&vars, "1 + x1_4*x2_4"));
    Check::new(det == want || det == want.neg(), det.to_string())
}

/// Where the main minor degenerates, the fallback minors are invertible:
/// rows 1,3,5,7 when `1 + x1_3 x2_3 = 0`, rows 1,2,3,8 when only
/// `1 + x1_4 x2_4 = 0`. Checked at every point of `F_p^4`.
pub fn fk4_case_minors(primes: &[u64]) -> Check {
    let vars = fk4_reduced().0;
    let reduced = grid(&vars, &FK4_REDUCED_HAND);
    let first = sym_det(&pick(&reduced, &[1, 3, 5, 7])).expect("square");
    let second = sym_det(&pick(&reduced, &[1, 2, 3, 8])).expect("square");
    let mut failures = Vec::new();
    let mut cases = 0u64;
    for &p in primes {
        let f = PrimeField::new(p).expect("validated prime");
        for x13 in 0..p {
            for x14 in 0..p {
                for x23 in 0..p {
                    for x24 in 0..p {
                        // variable order: x1_2 x1_3 x1_4 x2_3 x2_4 x3_4
                        let pt = [1, x13, x14, x23, x24, 0];
                        let a = f.add(&1, &f.mul(&x13, &x23));
                        let b = f.add(&1, &f.mul(&x14, &x24));
                        let minor = if a == 0 {
                            &first
                        } else if b == 0 {
                            &second
                        } else {
                            continue;
                        };
                        cases += 1;
                        if eval_mod(minor, &pt, f) == 0 {
                            failures.push(format!("{pt:?} mod {p}"));
                        }
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        Check::new(
            true,
            format!("fallback minor invertible at all {cases} degenerate points"),
        )
    } else {
        Check::new(false, format!("singular at {}", failures.join(", ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for c in [
            fk3_matrix_matches(),
            fk3_square_minor(),
            fk3_case_minors(&[2, 3, 5]),
            fk4_matrix_matches(),
            fk4_row_reduction(),
            fk4_main_minor(),
            fk4_case_minors(&[2, 3, 5]),
        ] {
            assert!(c.ok, "{}", c.detail);
        }
    }

    #[test]
    fn entry_parser() {
        let vars: Arc<[String]> = vec!["a".to_string(), "b".to_string()].into();
        assert_eq!(entry(&vars, "1 + a*b").to_string(), "a*b + 1");
        assert_eq!(entry(&vars, "-a").to_string(), "-a");
        assert!(entry(&vars, "0").is_zero());
    }
}
