//! Homogeneous presentations of graded algebras `k<x_1..x_g>/(f_1, f_2, ...)`:
//! generator labels, words, noncommutative polynomials, the built-in
//! families and a line-oriented text format.

mod builders;
mod text;

pub use builders::{
    cyclic_relation, fk_complete, nil_coxeter, quadratic_cover, star_overapprox, StarMode,
};
pub use text::{parse_presentation, serialize_presentation};

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("line {line}: undeclared generator `{name}`")]
    UndeclaredGenerator { line: usize, name: String },
    #[error("line {line}: inhomogeneous relation (degrees {low} and {high})")]
    Inhomogeneous {
        line: usize,
        low: usize,
        high: usize,
    },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator label `{0}`")]
    BadLabel(String),
    #[error("line {line}: relation of degree {degree}; relations must have degree at least 2")]
    DegreeTooLow { line: usize, degree: usize },
    #[error("line {line}: relation is zero")]
    ZeroRelation { line: usize },
    #[error("relation refers to generator index {0}, which is not declared")]
    IndexOutOfRange(usize),
    #[error("{0}")]
    InvalidArgument(String),
}

/// A generator: either the edge `x_{ij}` (`i < j`) or a free-form name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorLabel {
    Edge(u32, u32),
    Named(String),
}

impl GeneratorLabel {
    /// Edge label with endpoints in either order.
    pub fn edge(a: u32, b: u32) -> Self {
        GeneratorLabel::Edge(a.min(b), a.max(b))
    }

    pub fn named(name: &str) -> Result<Self, PresentationError> {
        let label = GeneratorLabel::parse(name)?;
        match label {
            GeneratorLabel::Named(_) => Ok(label),
            GeneratorLabel::Edge(..) => Err(PresentationError::BadLabel(name.to_string())),
        }
    }

    /// `x<i>_<j>` parses as an edge; any other identifier as a name.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let bad = || PresentationError::BadLabel(text.to_string());
        let mut chars = text.chars();
        let first = chars.next().ok_or_else(bad)?;
        if !(first.is_ascii_alphabetic() || first == '_')
            || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(bad());
        }
        if let Some(rest) = text.strip_prefix('x') {
            if let Some((a, b)) = rest.split_once('_') {
                let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
                if digits(a) && digits(b) {
                    let (i, j): (u32, u32) =
                        (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                    if i >= j {
                        return Err(bad());
                    }
                    return Ok(GeneratorLabel::Edge(i, j));
                }
            }
        }
        Ok(GeneratorLabel::Named(text.to_string()))
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLabel::Edge(i, j) => write!(f, "x{i}_{j}"),
            GeneratorLabel::Named(s) => f.write_str(s),
        }
    }
}

/// A monomial: a sequence of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

/// Homogeneous noncommutative polynomial in canonical form: terms sorted
/// by word, no repeated words, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly {
    terms: Vec<(Rational64, Word)>,
}

impl NcPoly {
    /// Collects like terms and sorts. Homogeneity is checked by the caller.
    pub fn new(terms: impl IntoIterator<Item = (Rational64, Word)>) -> Self {
        let mut collected: Vec<(Rational64, Word)> = Vec::new();
        let mut sorted: Vec<(Rational64, Word)> = terms.into_iter().collect();
        sorted.sort_by(|a, b| a.1.cmp(&b.1));
        for (c, w) in sorted {
            match collected.last_mut() {
                Some((acc, last)) if *last == w => *acc += c,
                _ => collected.push((c, w)),
            }
        }
        collected.retain(|(c, _)| !c.is_zero());
        NcPoly { terms: collected }
    }

    /// Convenience: integer coefficients and index words.
    pub fn from_ints(terms: &[(i64, &[usize])]) -> Self {
        NcPoly::new(
            terms
                .iter()
                .map(|(c, w)| (Rational64::from_integer(*c), Word(w.to_vec()))),
        )
    }

    pub fn terms(&self) -> &[(Rational64, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if every term has the same length.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let first = self.terms.first()?.1.degree();
        self.terms
            .iter()
            .all(|(_, w)| w.degree() == first)
            .then_some(first)
    }

    fn degree_range(&self) -> (usize, usize) {
        let degs = self.terms.iter().map(|(_, w)| w.degree());
        (degs.clone().min().unwrap_or(0), degs.max().unwrap_or(0))
    }

    /// Scalar multiple with leading coefficient 1; two relations generate
    /// the same two-sided ideal summand when their monic forms agree.
    pub fn monic(&self) -> NcPoly {
        let Some((lead, _)) = self.terms.first() else {
            return self.clone();
        };
        let inv = lead.recip();
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c * inv, w.clone()))
                .collect(),
        }
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|(_, w)| w.0.iter().copied())
            .max()
    }

    /// Renders with generator labels, e.g. `x1_2*x2_3 - x2_3*x1_3`.
    pub fn display_with(&self, generators: &[GeneratorLabel]) -> String {
        let mut out = String::new();
        for (k, (c, w)) in self.terms.iter().enumerate() {
            let negative = *c < Rational64::zero();
            let mag = if negative { -*c } else { *c };
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&crate::exactalg::format_ratio(&mag));
                out.push('*');
            }
            let factors: Vec<String> = w.0.iter().map(|&g| generators[g].to_string()).collect();
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// A polynomial whose letters are labels rather than indices; resolved
/// against a generator list when added to a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoly {
    pub terms: Vec<(Rational64, Vec<GeneratorLabel>)>,
}

impl LabeledPoly {
    pub fn resolve(&self, generators: &[GeneratorLabel]) -> Result<NcPoly, PresentationError> {
        let index: HashMap<&GeneratorLabel, usize> =
            generators.iter().enumerate().map(|(k, g)| (g, k)).collect();
        let terms = self
            .terms
            .iter()
            .map(|(c, labels)| {
                let word = labels
                    .iter()
                    .map(|l| {
                        index.get(l).copied().ok_or_else(|| {
                            PresentationError::UndeclaredGenerator {
                                line: 0,
                                name: l.to_string(),
                            }
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((*c, Word(word)))
            })
            .collect::<Result<Vec<_>, PresentationError>>()?;
        Ok(NcPoly::new(terms))
    }

    /// Set of (coefficient, word) pairs; order-free comparison.
    pub fn term_set(&self) -> HashSet<(Rational64, Vec<GeneratorLabel>)> {
        self.terms.iter().cloned().collect()
    }
}

/// Whether the relations cut out the algebra exactly or only a set of
/// relations known to hold in it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    NecessaryOnly,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::NecessaryOnly => "necessary-only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    label: String,
    generators: Vec<GeneratorLabel>,
    relations: Vec<NcPoly>,
    exactness: Exactness,
    /// Relations are only valid in characteristic 2.
    char2_only: bool,
}

impl Presentation {
    /// Validates labels and relations; duplicate relations (equal up to a
    /// scalar) are dropped, keeping the first occurrence.
    pub fn new(
        label: impl Into<String>,
        generators: Vec<GeneratorLabel>,
        relations: Vec<NcPoly>,
        exactness: Exactness,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if let GeneratorLabel::Named(name) = g {
                GeneratorLabel::named(name)?;
            }
            if let GeneratorLabel::Edge(i, j) = g {
                if i >= j {
                    return Err(PresentationError::BadLabel(g.to_string()));
                }
            }
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.to_string()));
            }
        }
        let mut p = Presentation {
            label: label.into(),
            generators,
            relations: Vec::new(),
            exactness,
            char2_only: false,
        };
        for r in relations {
            p.push_relation(r, 0)?;
        }
        Ok(p)
    }

    pub(crate) fn push_relation(
        &mut self,
        r: NcPoly,
        line: usize,
    ) -> Result<(), PresentationError> {
        if r.is_zero() {
            return Err(PresentationError::ZeroRelation { line });
        }
        if let Some(m) = r.max_letter() {
            if m >= self.generators.len() {
                return Err(PresentationError::IndexOutOfRange(m));
            }
        }
        let (low, high) = r.degree_range();
        if low != high {
            return Err(PresentationError::Inhomogeneous { line, low, high });
        }
        if low < 2 {
            return Err(PresentationError::DegreeTooLow { line, degree: low });
        }
        let monic = r.monic();
        if !self.relations.iter().any(|q| q.monic() == monic) {
            self.relations.push(r);
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[GeneratorLabel] {
        &self.generators
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_char2_only(&self) -> bool {
        self.char2_only
    }

    pub fn generator_index(&self, label: &GeneratorLabel) -> Option<usize> {
        self.generators.iter().position(|g| g == label)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_exactness(mut self, exactness: Exactness) -> Self {
        self.exactness = exactness;
        self
    }

    pub fn with_char2_only(mut self, flag: bool) -> Self {
        self.char2_only = flag;
        self
    }

    /// Appends relations (deduplicated). Never removes existing ones.
    pub fn extend_relations(
        &mut self,
        relations: impl IntoIterator<Item = NcPoly>,
    ) -> Result<(), PresentationError> {
        for r in relations {
            self.push_relation(r, 0)?;
        }
        Ok(())
    }

    /// Relations rendered with labels, in stored order.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.display_with(&self.generators))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_parsing() {
        assert_eq!(
            GeneratorLabel::parse("x1_2").unwrap(),
            GeneratorLabel::Edge(1, 2)
        );
        assert_eq!(
            GeneratorLabel::parse("x12").unwrap(),
            GeneratorLabel::Named("x12".into())
        );
        assert_eq!(
            GeneratorLabel::parse("a").unwrap(),
            GeneratorLabel::Named("a".into())
        );
        assert!(GeneratorLabel::parse("x2_1").is_err());
        assert!(GeneratorLabel::parse("1a").is_err());
        assert!(GeneratorLabel::parse("").is_err());
        assert!(GeneratorLabel::named("x0_3").is_err());
        assert_eq!(GeneratorLabel::edge(3, 1).to_string(), "x1_3");
    }

    #[test]
    fn ncpoly_canonical_form() {
        let p = NcPoly::from_ints(&[(1, &[1, 0]), (2, &[0, 1]), (-1, &[1, 0])]);
        assert_eq!(p, NcPoly::from_ints(&[(2, &[0, 1])]));
        assert!(NcPoly::from_ints(&[(1, &[0, 1]), (-1, &[0, 1])]).is_zero());
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = NcPoly::from_ints(&[(-2, &[0, 1]), (2, &[1, 0])]);
        assert_eq!(q.monic(), NcPoly::from_ints(&[(1, &[0, 1]), (-1, &[1, 0])]));
    }

    #[test]
    fn presentation_validation() {
        let gens = vec![
            GeneratorLabel::Named("a".into()),
            GeneratorLabel::Named("b".into()),
        ];
        let dup = vec![
            GeneratorLabel::Named("a".into()),
            GeneratorLabel::Named("a".into()),
        ];
        assert_eq!(
            Presentation::new("t", dup, vec![], Exactness::Exact),
            Err(PresentationError::DuplicateGenerator("a".into()))
        );
        let inhom = NcPoly::from_ints(&[(1, &[0, 0]), (1, &[1])]);
        assert!(matches!(
            Presentation::new("t", gens.clone(), vec![inhom], Exactness::Exact),
            Err(PresentationError::Inhomogeneous {
                low: 1,
                high: 2,
                ..
            })
        ));
        let out_of_range = NcPoly::from_ints(&[(1, &[0, 2])]);
        assert!(
            Presentation::new("t", gens.clone(), vec![out_of_range], Exactness::Exact).is_err()
        );
        let linear = NcPoly::from_ints(&[(1, &[0])]);
        assert!(Presentation::new("t", gens.clone(), vec![linear], Exactness::Exact).is_err());
        // x*y - y*x and y*x - x*y are the same relation
        let c1 = NcPoly::from_ints(&[(1, &[0, 1]), (-1, &[1, 0])]);
        let c2 = NcPoly::from_ints(&[(1, &[1, 0]), (-1, &[0, 1])]);
        let p = Presentation::new("t", gens, vec![c1, c2], Exactness::Exact).unwrap();
        assert_eq!(p.relations().len(), 1);
    }

    #[test]
    fn display_with_labels() {
        let gens = vec![GeneratorLabel::Edge(1, 2), GeneratorLabel::Edge(2, 3)];
        let p = NcPoly::new(vec![
            (Rational64::new(-1, 2), Word(vec![1, 0])),
            (Rational64::from_integer(3), Word(vec![0, 1])),
        ]);
        assert_eq!(p.display_with(&gens), "3*x1_2*x2_3 - 1/2*x2_3*x1_2");
    }
}
