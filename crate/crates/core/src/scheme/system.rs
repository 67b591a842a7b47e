use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::SolveError;
use crate::exactalg::{CommPoly, ExactMatrix, Field, PrimeField, RationalField};
use crate::freealg::{Exactness, Presentation};

/// One multilinearized equation: a relation of degree `t` shifted to start
/// at layer `shift`. Letter `k` of each word is read in layer
/// `shift + t - 1 - k`, so the first letter sits in the top layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub relation: usize,
    pub shift: usize,
    pub terms: Vec<(Rational64, Vec<usize>)>,
}

impl Form {
    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(_, w)| w.len())
    }

    pub fn top_layer(&self) -> usize {
        self.shift + self.degree() - 1
    }

    pub fn bottom_layer(&self) -> usize {
        self.shift
    }

    /// `(layer, generator)` factors of one term, highest layer first.
    pub fn factor_chain(&self, term: usize) -> Vec<(usize, usize)> {
        let top = self.top_layer();
        self.terms[term]
            .1
            .iter()
            .enumerate()
            .map(|(k, &g)| (top - k, g))
            .collect()
    }
}

/// The degree-`d` multihomogeneous equations on `(P^{g-1})^d` attached to a
/// presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearSystem {
    pub label: String,
    pub d: usize,
    pub generators: Vec<String>,
    pub forms: Vec<Form>,
    pub exactness: Exactness,
    pub char2_only: bool,
}

/// Builds the system of a presentation at truncation degree `d`: every
/// relation of degree `t <= d` yields one form per shift `0..=d-t`;
/// relations of higher degree contribute nothing.
pub fn multilinearize(p: &Presentation, d: usize) -> Result<MultilinearSystem, SolveError> {
    if d < 1 {
        return Err(SolveError::InvalidDegree(d));
    }
    let mut forms = Vec::new();
    for (idx, rel) in p.relations().iter().enumerate() {
        let t = rel.homogeneous_degree().expect("relations are homogeneous");
        if t > d {
            continue;
        }
        for shift in 0..=d - t {
            forms.push(Form {
                relation: idx,
                shift,
                terms: rel
                    .terms()
                    .iter()
                    .map(|(c, w)| (*c, w.letters().to_vec()))
                    .collect(),
            });
        }
    }
    Ok(MultilinearSystem {
        label: p.label().to_string(),
        d,
        generators: p.generators().iter().map(|g| g.to_string()).collect(),
        forms,
        exactness: p.exactness(),
        char2_only: p.is_char2_only(),
    })
}

impl MultilinearSystem {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn equation_count(&self) -> usize {
        self.forms.len()
    }

    /// The same system with layer `L` renamed `d - 1 - L`: every word is
    /// reversed. Points of the reversed system are the layer-reversed
    /// points of this one.
    pub fn reversed(&self) -> MultilinearSystem {
        let forms = self
            .forms
            .iter()
            .map(|f| Form {
                relation: f.relation,
                shift: self.d - f.degree() - f.shift,
                terms: f
                    .terms
                    .iter()
                    .map(|(c, w)| (*c, w.iter().rev().copied().collect()))
                    .collect(),
            })
            .collect();
        MultilinearSystem {
            forms,
            ..self.clone()
        }
    }

    pub(crate) fn check_field(&self, field: PrimeField) -> Result<(), SolveError> {
        if self.char2_only && field.modulus() != 2 {
            return Err(SolveError::Char2Only(field.modulus()));
        }
        Ok(())
    }

    /// Symbolic coefficient matrix of the top layer `r`: one row per form
    /// whose top layer is `r`, one column per generator, entries are
    /// polynomials in the variables of layers `0..r`. Layer-0 variables are
    /// named after their generator, deeper ones `<generator>@<layer>`.
    pub fn symbolic_top_matrix(&self, r: usize) -> SymbolicMatrix {
        let g = self.generator_count();
        let mut names = Vec::new();
        for layer in 0..r {
            for gen in &self.generators {
                names.push(if layer == 0 {
                    gen.clone()
                } else {
                    format!("{gen}@{layer}")
                });
            }
        }
        let vars: Arc<[String]> = names.into();
        let q = RationalField;
        let mut rows = Vec::new();
        let mut forms = Vec::new();
        for (fi, form) in self.forms.iter().enumerate() {
            if form.top_layer() != r {
                continue;
            }
            let mut row = vec![CommPoly::zero(q, vars.clone()); g];
            for (ti, (c, w)) in form.terms.iter().enumerate() {
                let mut exps = vec![0u32; vars.len()];
                for &(layer, gen) in &form.factor_chain(ti)[1..] {
                    exps[layer * g + gen] += 1;
                }
                let coeff = q.from_ratio(c).expect("rational");
                let term = CommPoly::from_terms(q, vars.clone(), [(exps, coeff)]);
                row[w[0]] = row[w[0]].add(&term);
            }
            rows.push(row);
            forms.push(fi);
        }
        SymbolicMatrix { vars, rows, forms }
    }
}

/// Output of [`MultilinearSystem::symbolic_top_matrix`].
#[derive(Clone, Debug)]
pub struct SymbolicMatrix {
    pub vars: Arc<[String]>,
    pub rows: Vec<Vec<CommPoly<RationalField>>>,
    /// Index into `MultilinearSystem::forms` for each row.
    pub forms: Vec<usize>,
}

/// A point of `P^{g-1}` in canonical form: first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LayerPoint {
    coords: Vec<u64>,
}

impl LayerPoint {
    /// Normalizes raw coordinates (reduced mod p). `None` for the zero
    /// vector.
    pub fn normalized(coords: &[u64], field: PrimeField) -> Option<Self> {
        let p = field.modulus();
        let reduced: Vec<u64> = coords.iter().map(|c| c % p).collect();
        let lead = *reduced.iter().find(|&&c| c != 0)?;
        let inv = field.inv(&lead).expect("nonzero");
        Some(LayerPoint {
            coords: reduced.iter().map(|c| field.mul(c, &inv)).collect(),
        })
    }

    /// Coordinate point `e_index`.
    pub fn basis(g: usize, index: usize) -> Self {
        let mut coords = vec![0; g];
        coords[index] = 1;
        LayerPoint { coords }
    }

    /// Wraps coordinates that are already in canonical form.
    pub(crate) fn from_raw(coords: Vec<u64>) -> Self {
        LayerPoint { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn is_normalized(&self) -> bool {
        self.coords.iter().find(|&&c| c != 0) == Some(&1)
    }
}

/// A tuple of layer points, layer 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SchemePoint {
    pub layers: Vec<LayerPoint>,
}

impl SchemePoint {
    pub fn new(layers: Vec<LayerPoint>) -> Self {
        SchemePoint { layers }
    }

    /// Point whose layer `r` is the coordinate point `e_{indices[r]}`.
    pub fn coordinate(g: usize, indices: &[usize]) -> Self {
        SchemePoint {
            layers: indices.iter().map(|&i| LayerPoint::basis(g, i)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.layers.len()
    }

    pub fn truncated(&self, d: usize) -> SchemePoint {
        SchemePoint {
            layers: self.layers[..d].to_vec(),
        }
    }

    pub fn reversed(&self) -> SchemePoint {
        SchemePoint {
            layers: self.layers.iter().rev().cloned().collect(),
        }
    }

    /// Applies a generator permutation `i -> perm[i]` to every layer.
    pub fn permute_generators(&self, perm: &[usize], field: PrimeField) -> SchemePoint {
        SchemePoint {
            layers: self
                .layers
                .iter()
                .map(|l| {
                    let mut coords = vec![0; perm.len()];
                    for (i, &c) in l.coords().iter().enumerate() {
                        coords[perm[i]] = c;
                    }
                    LayerPoint::normalized(&coords, field).expect("permutation keeps support")
                })
                .collect(),
        }
    }
}

/// Supports `S_0, ..., S_{d-1}` of the layers of a point.
pub fn support_pattern(pt: &SchemePoint) -> Vec<BTreeSet<usize>> {
    pt.layers.iter().map(LayerPoint::support).collect()
}

/// System compiled into a prime field, forms grouped by top layer.
#[derive(Clone, Debug)]
pub(crate) struct CompiledSystem {
    pub field: PrimeField,
    pub g: usize,
    pub d: usize,
    /// `by_top[r]` lists the forms whose top layer is `r`.
    pub by_top: Vec<Vec<CompiledForm>>,
}

#[derive(Clone, Debug)]
pub(crate) struct CompiledForm {
    pub shift: usize,
    pub terms: Vec<(u64, Vec<usize>)>,
}

impl CompiledForm {
    fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(_, w)| w.len())
    }

    /// Value of the form on a full assignment of its layers.
    pub fn evaluate(&self, layers: &[&[u64]], field: &PrimeField) -> u64 {
        let t = self.degree();
        let mut acc = 0;
        for (c, w) in &self.terms {
            let mut term = *c;
            for (k, &gen) in w.iter().enumerate() {
                term = field.mul(&term, &layers[self.shift + t - 1 - k][gen]);
                if term == 0 {
                    break;
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }

    /// Adds the coefficients of the top-layer variables to `row`, given the
    /// layers below the top.
    pub fn accumulate_row(&self, prefix: &[&[u64]], field: &PrimeField, row: &mut [u64]) {
        let t = self.degree();
        for (c, w) in &self.terms {
            let mut term = *c;
            for (k, &gen) in w.iter().enumerate().skip(1) {
                term = field.mul(&term, &prefix[self.shift + t - 1 - k][gen]);
                if term == 0 {
                    break;
                }
            }
            if term != 0 {
                row[w[0]] = field.add(&row[w[0]], &term);
            }
        }
    }
}

impl CompiledSystem {
    pub fn new(sys: &MultilinearSystem, field: PrimeField) -> Result<Self, SolveError> {
        sys.check_field(field)?;
        let mut by_top = vec![Vec::new(); sys.d];
        for form in &sys.forms {
            let terms = form
                .terms
                .iter()
                .map(|(c, w)| {
                    field.from_ratio(c).map(|v| (v, w.clone())).ok_or(
                        SolveError::CoefficientUndefined {
                            coefficient: crate::exactalg::format_ratio(c),
                            p: field.modulus(),
                        },
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            let terms: Vec<_> = terms.into_iter().filter(|(c, _)| *c != 0).collect();
            if terms.is_empty() {
                continue;
            }
            by_top[form.top_layer()].push(CompiledForm {
                shift: form.shift,
                terms,
            });
        }
        Ok(CompiledSystem {
            field,
            g: sys.generator_count(),
            d: sys.d,
            by_top,
        })
    }

    /// Coefficient matrix of layer `r` given layers `0..r`, zero rows dropped.
    #[cfg(test)]
    pub fn top_matrix(&self, prefix: &[&[u64]]) -> ExactMatrix<PrimeField> {
        let r = prefix.len();
        let forms = &self.by_top[r];
        let mut rows = Vec::with_capacity(forms.len());
        for form in forms {
            let mut row = vec![0u64; self.g];
            form.accumulate_row(prefix, &self.field, &mut row);
            if row.iter().any(|&v| v != 0) {
                rows.push(row);
            }
        }
        ExactMatrix::from_rows(self.field, rows, self.g).expect("rows have g entries")
    }

    /// Canonical kernel basis of [`Self::top_matrix`], built row by row with
    /// the echelon form kept reduced; stops as soon as the rank reaches `g`.
    /// Same basis as `top_matrix(prefix).rref().nullspace`.
    pub fn kernel(&self, prefix: &[&[u64]]) -> Vec<Vec<u64>> {
        let g = self.g;
        let f = &self.field;
        let p = f.modulus();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = vec![0u64; g];
        for form in &self.by_top[prefix.len()] {
            if rows.len() == g {
                return Vec::new();
            }
            row.iter_mut().for_each(|x| *x = 0);
            form.accumulate_row(prefix, f, &mut row);
            for (r, &pc) in rows.iter().zip(&pivots) {
                let c = row[pc];
                if c != 0 {
                    let m = p - c;
                    for (x, &y) in row.iter_mut().zip(r) {
                        *x = (*x + m * y) % p;
                    }
                }
            }
            let Some(pc) = row.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = f.inv(&row[pc]).expect("nonzero pivot");
            row.iter_mut().for_each(|x| *x = *x * inv % p);
            for r in rows.iter_mut() {
                let c = r[pc];
                if c != 0 {
                    let m = p - c;
                    for (x, &y) in r.iter_mut().zip(&row) {
                        *x = (*x + m * y) % p;
                    }
                }
            }
            rows.push(row.clone());
            pivots.push(pc);
        }
        if rows.len() == g {
            return Vec::new();
        }
        let mut pivot_row = vec![None; g];
        for (i, &pc) in pivots.iter().enumerate() {
            pivot_row[pc] = Some(i);
        }
        (0..g)
            .filter(|&c| pivot_row[c].is_none())
            .map(|free| {
                let mut v = vec![0u64; g];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - rows[i][free]) % p;
                }
                v
            })
            .collect()
    }

    /// Whether every form living entirely in the given layers vanishes.
    pub fn prefix_consistent(&self, prefix: &[&[u64]]) -> bool {
        self.by_top[..prefix.len()]
            .iter()
            .flatten()
            .all(|f| f.evaluate(prefix, &self.field) == 0)
    }
}

/// Coefficient matrix of the top layer `r = prefix.len()` after
/// substituting the prefix, together with whether every equation that lies
/// entirely inside the prefix already vanishes.
pub fn linearize_top(
    sys: &MultilinearSystem,
    prefix: &[LayerPoint],
    field: PrimeField,
) -> Result<(bool, ExactMatrix<PrimeField>), SolveError> {
    if prefix.len() >= sys.d {
        return Err(SolveError::DimensionMismatch(format!(
            "prefix of {} layers for a degree-{} system",
            prefix.len(),
            sys.d
        )));
    }
    if let Some(bad) = prefix
        .iter()
        .find(|l| l.coords().len() != sys.generator_count())
    {
        return Err(SolveError::DimensionMismatch(format!(
            "layer with {} coordinates, expected {}",
            bad.coords().len(),
            sys.generator_count()
        )));
    }
    let compiled = CompiledSystem::new(sys, field)?;
    let layers: Vec<&[u64]> = prefix.iter().map(|l| l.coords()).collect();
    let consistent = compiled.prefix_consistent(&layers);
    // keep zero rows too so the matrix has one row per form of that layer
    let forms = &compiled.by_top[layers.len()];
    let rows = forms
        .iter()
        .map(|f| {
            let mut row = vec![0u64; compiled.g];
            f.accumulate_row(&layers, &field, &mut row);
            row
        })
        .collect();
    let m = ExactMatrix::from_rows(field, rows, compiled.g).expect("rows have g entries");
    Ok((consistent, m))
}

/// Whether every equation of the system vanishes at `pt`.
pub fn verify_point(
    sys: &MultilinearSystem,
    pt: &SchemePoint,
    field: PrimeField,
) -> Result<bool, SolveError> {
    if pt.degree() != sys.d {
        return Err(SolveError::DimensionMismatch(format!(
            "point with {} layers for a degree-{} system",
            pt.degree(),
            sys.d
        )));
    }
    if let Some(bad) = pt
        .layers
        .iter()
        .find(|l| l.coords().len() != sys.generator_count())
    {
        return Err(SolveError::DimensionMismatch(format!(
            "layer with {} coordinates, expected {}",
            bad.coords().len(),
            sys.generator_count()
        )));
    }
    let compiled = CompiledSystem::new(sys, field)?;
    let layers: Vec<&[u64]> = pt.layers.iter().map(|l| l.coords()).collect();
    Ok(compiled.prefix_consistent(&layers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{fk_complete, nil_coxeter};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn equation_counts() {
        let sys = multilinearize(&fk_complete(3).unwrap(), 2).unwrap();
        assert_eq!(sys.equation_count(), 5);
        let nc = multilinearize(&nil_coxeter(3).unwrap(), 2).unwrap();
        assert_eq!(nc.equation_count(), 2);
        // A_5: 4 squares, 3 distant pairs, 3 braids; d = 4
        let nc5 = multilinearize(&nil_coxeter(5).unwrap(), 4).unwrap();
        assert_eq!(nc5.equation_count(), (4 + 3) * 3 + 3 * 2);
        assert!(multilinearize(&nil_coxeter(3).unwrap(), 0).is_err());
    }

    #[test]
    fn factor_chain_descends() {
        let sys = multilinearize(&nil_coxeter(4).unwrap(), 4).unwrap();
        for form in &sys.forms {
            for t in 0..form.terms.len() {
                let chain = form.factor_chain(t);
                assert_eq!(chain[0].0, form.top_layer());
                assert_eq!(chain.last().unwrap().0, form.shift);
                assert!(chain.windows(2).all(|w| w[0].0 == w[1].0 + 1));
                assert!(form.top_layer() < sys.d);
            }
        }
    }

    #[test]
    fn fk3_symbolic_matrix_matches_hand_matrix() {
        let sys = multilinearize(&fk_complete(3).unwrap(), 2).unwrap();
        let m = sys.symbolic_top_matrix(1);
        assert_eq!(m.rows.len(), 5);
        let rendered: Vec<Vec<String>> = m
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        // squares first, then the two triangle relations
        assert_eq!(rendered[0], vec!["x1_2", "0", "0"]);
        assert_eq!(rendered[1], vec!["0", "x1_3", "0"]);
        assert_eq!(rendered[2], vec!["0", "0", "x2_3"]);
        assert_eq!(rendered[3], vec!["x2_3", "-x1_2", "-x1_3"]);
        assert_eq!(rendered[4], vec!["-x1_3", "-x2_3", "x1_2"]);
    }

    #[test]
    fn linearize_top_examples() {
        let f5 = f(5);
        let sys = multilinearize(&fk_complete(3).unwrap(), 2).unwrap();
        let ones = LayerPoint::normalized(&[1, 1, 1], f5).unwrap();
        let (ok, m) = linearize_top(&sys, &[ones], f5).unwrap();
        assert!(ok);
        assert_eq!(m.rank(), 3);

        let a4 = multilinearize(&nil_coxeter(4).unwrap(), 2).unwrap();
        let (ok, m) = linearize_top(&a4, &[LayerPoint::basis(3, 1)], f5).unwrap();
        assert!(ok);
        let r = m.rref();
        assert_eq!(r.nullspace, vec![vec![1, 0, 0], vec![0, 0, 1]]);

        let (ok, m) = linearize_top(&a4, &[], f5).unwrap();
        assert!(ok);
        assert_eq!((m.rows(), m.rref().nullspace.len()), (0, 3));
    }

    #[test]
    fn incremental_kernel_matches_rref() {
        use crate::freealg::{star_overapprox, StarMode};
        use crate::graphs::star;
        let presentations = [
            fk_complete(4).unwrap(),
            nil_coxeter(5).unwrap(),
            star_overapprox(&star(3).unwrap(), 4, StarMode::MinCenter).unwrap(),
        ];
        for p in [2u64, 3, 5] {
            let field = f(p);
            for pres in &presentations {
                let sys = multilinearize(pres, 3).unwrap();
                let c = CompiledSystem::new(&sys, field).unwrap();
                let g = sys.generator_count();
                let mut seed = 1u64;
                for _ in 0..200 {
                    let mut layer = || {
                        let v: Vec<u64> = (0..g)
                            .map(|_| {
                                seed = seed
                                    .wrapping_mul(6364136223846793005)
                                    .wrapping_add(1442695040888963407);
                                (seed >> 33) % p
                            })
                            .collect();
                        v
                    };
                    let a = layer();
                    let b = layer();
                    for prefix in [vec![&a[..]], vec![&a[..], &b[..]]] {
                        assert_eq!(c.kernel(&prefix), c.top_matrix(&prefix).rref().nullspace);
                    }
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let f2 = f(2);
        let sys = multilinearize(&nil_coxeter(3).unwrap(), 2).unwrap();
        assert!(verify_point(&sys, &SchemePoint::coordinate(2, &[1, 0]), f2).unwrap());
        assert!(!verify_point(&sys, &SchemePoint::coordinate(2, &[0, 0]), f2).unwrap());
        assert!(verify_point(&sys, &SchemePoint::coordinate(2, &[0]), f2).is_err());
    }

    #[test]
    fn layer_normalization() {
        let f7 = f(7);
        let p = LayerPoint::normalized(&[0, 3, 6], f7).unwrap();
        assert_eq!(p.coords(), &[0, 1, 2]);
        assert_eq!(LayerPoint::normalized(p.coords(), f7).unwrap(), p);
        assert!(LayerPoint::normalized(&[0, 0], f7).is_none());
        let pt = SchemePoint::new(vec![LayerPoint::basis(3, 1), p.clone()]);
        assert_eq!(
            support_pattern(&pt),
            vec![BTreeSet::from([1]), BTreeSet::from([1, 2])]
        );
    }

    #[test]
    fn reversal_is_an_involution() {
        let sys = multilinearize(&nil_coxeter(5).unwrap(), 4).unwrap();
        assert_eq!(sys.reversed().reversed(), sys);
    }
}
