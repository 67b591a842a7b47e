use std::collections::BTreeSet;

use num_rational::Rational64;

use super::{
    Exactness, GeneratorLabel, LabeledPoly, NcPoly, Presentation, PresentationError, Word,
};
use crate::graphs::{self, Graph};

/// Which stars contribute cyclic relations in [`star_overapprox`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarMode {
    /// Only stars whose center has a smaller label than every chosen leaf.
    MinCenter,
    /// Every center; the relations are only trusted in characteristic 2.
    AllCentersChar2,
}

impl StarMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            StarMode::MinCenter => "min-center",
            StarMode::AllCentersChar2 => "all-centers-char2",
        }
    }
}

impl std::str::FromStr for StarMode {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-center" => Ok(StarMode::MinCenter),
            "all-centers-char2" => Ok(StarMode::AllCentersChar2),
            other => Err(PresentationError::InvalidArgument(format!(
                "unknown star mode `{other}` (expected min-center or all-centers-char2)"
            ))),
        }
    }
}

fn one() -> Rational64 {
    Rational64::from_integer(1)
}

fn minus_one() -> Rational64 {
    Rational64::from_integer(-1)
}

fn graph_tag(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(i, j)| format!("{i}-{j}")).collect();
    format!("n{}:{}", g.vertex_count(), edges.join(","))
}

/// Squares of all edges, commutators of vertex-disjoint edge pairs and the
/// two triangle relations for each triangle, over the edges of `g`.
fn quadratic_relations(g: &Graph) -> Vec<NcPoly> {
    let edges = g.edge_list();
    let index = |a: u32, b: u32| {
        edges
            .binary_search(&(a.min(b), a.max(b)))
            .expect("edge of the graph")
    };
    let mut rels = Vec::new();
    for k in 0..edges.len() {
        rels.push(NcPoly::new([(one(), Word(vec![k, k]))]));
    }
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let ((i, j), (k, l)) = (edges[a], edges[b]);
            if i != k && i != l && j != k && j != l {
                rels.push(NcPoly::new([
                    (one(), Word(vec![a, b])),
                    (minus_one(), Word(vec![b, a])),
                ]));
            }
        }
    }
    for (i, j, k) in graphs::triangles(g) {
        let (ij, ik, jk) = (index(i, j), index(i, k), index(j, k));
        // x_ij x_jk - x_jk x_ik - x_ik x_ij
        rels.push(NcPoly::new([
            (one(), Word(vec![ij, jk])),
            (minus_one(), Word(vec![jk, ik])),
            (minus_one(), Word(vec![ik, ij])),
        ]));
        // x_jk x_ij - x_ik x_jk - x_ij x_ik
        rels.push(NcPoly::new([
            (one(), Word(vec![jk, ij])),
            (minus_one(), Word(vec![ik, jk])),
            (minus_one(), Word(vec![ij, ik])),
        ]));
    }
    rels
}

fn edge_generators(g: &Graph) -> Vec<GeneratorLabel> {
    g.edges().map(|(i, j)| GeneratorLabel::Edge(i, j)).collect()
}

/// The Fomin-Kirillov algebra on `n` vertices: generators `x_ij`, `i < j`,
/// with squares, commutators of disjoint pairs and the two three-term
/// relations per triple.
pub fn fk_complete(n: usize) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::InvalidArgument(format!(
            "fk_complete needs n >= 2, got {n}"
        )));
    }
    let g = graphs::complete(n).expect("n >= 2");
    Presentation::new(
        format!("fk:{n}"),
        edge_generators(&g),
        quadratic_relations(&g),
        Exactness::Exact,
    )
}

/// The nil-Coxeter presentation on `x1..x{n-1}`: squares, commutators of
/// distant generators and braid relations of neighbors.
pub fn nil_coxeter(n: usize) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::InvalidArgument(format!(
            "nil_coxeter needs n >= 2, got {n}"
        )));
    }
    let g = n - 1;
    let generators = (1..=g)
        .map(|i| GeneratorLabel::Named(format!("x{i}")))
        .collect();
    let mut rels = Vec::new();
    for i in 0..g {
        rels.push(NcPoly::new([(one(), Word(vec![i, i]))]));
    }
    for i in 0..g {
        for j in i + 2..g {
            rels.push(NcPoly::new([
                (one(), Word(vec![i, j])),
                (minus_one(), Word(vec![j, i])),
            ]));
        }
    }
    for k in 0..g.saturating_sub(1) {
        rels.push(NcPoly::new([
            (one(), Word(vec![k, k + 1, k])),
            (minus_one(), Word(vec![k + 1, k, k + 1])),
        ]));
    }
    Presentation::new(format!("an:{n}"), generators, rels, Exactness::Exact)
}

fn cyclic_terms(center: u32, leaves: &[u32]) -> LabeledPoly {
    let edges: Vec<GeneratorLabel> = leaves
        .iter()
        .map(|&leaf| GeneratorLabel::edge(center, leaf))
        .collect();
    let m = edges.len();
    let terms = (0..m)
        .map(|start| {
            let mut word: Vec<GeneratorLabel> =
                (0..m).map(|k| edges[(start + k) % m].clone()).collect();
            word.push(edges[start].clone());
            (one(), word)
        })
        .collect();
    LabeledPoly { terms }
}

/// The cyclic relation of the star with the given center and ordered
/// leaves: the sum over the rotations of `(x_{c,l1} ... x_{c,lk})`, each
/// followed by its own first letter again. The degree is `k + 1`.
pub fn cyclic_relation(center: u32, leaves: &[u32]) -> Result<LabeledPoly, PresentationError> {
    if leaves.len() < 2 {
        return Err(PresentationError::InvalidArgument(
            "a cyclic relation needs at least two leaves".into(),
        ));
    }
    let distinct: BTreeSet<u32> = leaves.iter().copied().collect();
    if distinct.len() != leaves.len() {
        return Err(PresentationError::InvalidArgument(format!(
            "repeated leaf in {leaves:?}"
        )));
    }
    if let Some(&bad) = leaves.iter().find(|&&l| l <= center) {
        return Err(PresentationError::InvalidArgument(format!(
            "center {center} is not below leaf {bad}"
        )));
    }
    Ok(cyclic_terms(center, leaves))
}

/// Quadratic relations of `E_n` restricted to the edges of `g`. Exact when
/// `g` is a disjoint union of complete graphs (the algebra is then a tensor
/// product of Fomin-Kirillov algebras), otherwise only necessary.
pub fn quadratic_cover(g: &Graph) -> Presentation {
    let exactness = if graphs::is_disjoint_union_of_cliques(g) {
        Exactness::Exact
    } else {
        Exactness::NecessaryOnly
    };
    Presentation::new(
        format!("cover:{}", graph_tag(g)),
        edge_generators(g),
        quadratic_relations(g),
        exactness,
    )
    .expect("quadratic relations are well formed")
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn subsets(items: &[u32], size: usize) -> Vec<Vec<u32>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in 0..=items.len() - size {
        for mut tail in subsets(&items[k + 1..], size - 1) {
            tail.insert(0, items[k]);
            out.push(tail);
        }
    }
    out
}

/// The quadratic cover of `g` plus cyclic relations for every star inside
/// `g` whose relation degree is at most `dmax`. Each cyclic ordering of a
/// leaf set contributes once (starting from its least leaf).
pub fn star_overapprox(
    g: &Graph,
    dmax: usize,
    mode: StarMode,
) -> Result<Presentation, PresentationError> {
    if dmax < 2 {
        return Err(PresentationError::InvalidArgument(format!(
            "star_overapprox needs dmax >= 2, got {dmax}"
        )));
    }
    let mut p = quadratic_cover(g)
        .with_label(format!("star:{}:{}:{}", mode.as_str(), dmax, graph_tag(g)))
        .with_exactness(Exactness::NecessaryOnly)
        .with_char2_only(mode == StarMode::AllCentersChar2);
    let mut extra = Vec::new();
    for v in 1..=g.vertex_count() as u32 {
        let leaves: Vec<u32> = g
            .neighbors(v)
            .into_iter()
            .filter(|&w| mode == StarMode::AllCentersChar2 || w > v)
            .collect();
        // k leaves give a relation of degree k + 1
        for k in 2..=leaves.len().min(dmax - 1) {
            for subset in subsets(&leaves, k) {
                for tail in permutations(&subset[1..]) {
                    let mut order = vec![subset[0]];
                    order.extend(tail);
                    extra.push(cyclic_terms(v, &order).resolve(p.generators())?);
                }
            }
        }
    }
    p.extend_relations(extra)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, disjoint_union, path, star};

    fn e(i: u32, j: u32) -> GeneratorLabel {
        GeneratorLabel::Edge(i, j)
    }

    #[test]
    fn fk_counts() {
        let p3 = fk_complete(3).unwrap();
        assert_eq!(p3.generators().len(), 3);
        assert_eq!(p3.relations().len(), 5);
        let p4 = fk_complete(4).unwrap();
        assert_eq!(p4.generators().len(), 6);
        assert_eq!(p4.relations().len(), 6 + 3 + 8);
        let p2 = fk_complete(2).unwrap();
        assert_eq!((p2.generators().len(), p2.relations().len()), (1, 1));
        assert!(fk_complete(1).is_err());
    }

    #[test]
    fn fk3_triangle_relations() {
        let p = fk_complete(3).unwrap();
        let rels = p.relation_strings();
        assert!(rels.contains(&"x1_2*x2_3 - x1_3*x1_2 - x2_3*x1_3".to_string()));
        assert!(rels.contains(&"-x1_2*x1_3 - x1_3*x2_3 + x2_3*x1_2".to_string()));
    }

    #[test]
    fn nil_coxeter_relations() {
        let p = nil_coxeter(3).unwrap();
        assert_eq!(
            p.relation_strings(),
            vec!["x1*x1", "x2*x2", "x1*x2*x1 - x2*x1*x2"]
        );
        let p4 = nil_coxeter(4).unwrap();
        assert_eq!(
            p4.relation_strings(),
            vec![
                "x1*x1",
                "x2*x2",
                "x3*x3",
                "x1*x3 - x3*x1",
                "x1*x2*x1 - x2*x1*x2",
                "x2*x3*x2 - x3*x2*x3"
            ]
        );
        assert_eq!(nil_coxeter(2).unwrap().relation_strings(), vec!["x1*x1"]);
        assert!(nil_coxeter(1).is_err());
    }

    #[test]
    fn cyclic_relation_examples() {
        let r = cyclic_relation(0, &[1, 2]).unwrap();
        let expected = LabeledPoly {
            terms: vec![
                (one(), vec![e(0, 1), e(0, 2), e(0, 1)]),
                (one(), vec![e(0, 2), e(0, 1), e(0, 2)]),
            ],
        };
        assert_eq!(r.term_set(), expected.term_set());
        assert_eq!(
            r.term_set(),
            cyclic_relation(0, &[2, 1]).unwrap().term_set()
        );

        let r3 = cyclic_relation(0, &[1, 2, 3]).unwrap();
        assert_eq!(r3.terms.len(), 3);
        assert_eq!(r3.terms[0].1, vec![e(0, 1), e(0, 2), e(0, 3), e(0, 1)]);
        assert!(r3.terms.iter().all(|(_, w)| w.len() == 4));

        assert!(cyclic_relation(0, &[1]).is_err());
        assert!(cyclic_relation(0, &[1, 1]).is_err());
        assert!(cyclic_relation(2, &[1, 3]).is_err());
    }

    #[test]
    fn quadratic_cover_examples() {
        let g = disjoint_union(&complete(2).unwrap(), &complete(3).unwrap());
        let p = quadratic_cover(&g);
        assert_eq!(p.generators().len(), 4);
        assert_eq!(p.exactness(), Exactness::Exact);
        // 4 squares, 3 cross-component commutators, 2 triangle relations
        assert_eq!(p.relations().len(), 4 + 3 + 2);

        let a3 = quadratic_cover(&path(3).unwrap());
        assert_eq!(a3.relation_strings(), vec!["x1_2*x1_2", "x2_3*x2_3"]);
        assert_eq!(a3.exactness(), Exactness::NecessaryOnly);

        let k3 = quadratic_cover(&complete(3).unwrap());
        assert_eq!(k3.relations(), fk_complete(3).unwrap().relations());
        assert_eq!(k3.generators(), fk_complete(3).unwrap().generators());
    }

    #[test]
    fn star_overapprox_examples() {
        let s2 = star(2).unwrap();
        let p = star_overapprox(&s2, 3, StarMode::MinCenter).unwrap();
        assert_eq!(p.relations().len(), 3);
        assert_eq!(p.relation_strings()[2], "x1_2*x1_3*x1_2 + x1_3*x1_2*x1_3");
        assert_eq!(p.exactness(), Exactness::NecessaryOnly);

        // K_{1,3}: 3 squares + 3 pairs + 2 cyclic orders of the triple
        let s3 = star(3).unwrap();
        let p = star_overapprox(&s3, 4, StarMode::MinCenter).unwrap();
        assert_eq!(p.relations().len(), 3 + 3 + 2);

        let a3 = star_overapprox(&path(3).unwrap(), 3, StarMode::MinCenter).unwrap();
        assert_eq!(a3.relations().len(), 2);
        let a3_all = star_overapprox(&path(3).unwrap(), 3, StarMode::AllCentersChar2).unwrap();
        assert_eq!(a3_all.relations().len(), 3);
        assert!(a3_all.is_char2_only());

        assert!(star_overapprox(&s2, 1, StarMode::MinCenter).is_err());
    }
}
