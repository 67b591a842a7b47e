use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::AlgError;

/// Exponent vector ordered by graded lexicographic order: total degree
/// first, then exponents compared left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse commutative polynomial with coefficients in `F`.
///
/// Zero coefficients are never stored; every exponent vector has one entry
/// per variable.
#[derive(Clone)]
pub struct CommPoly<F: Field> {
    field: F,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for CommPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<F: Field> Eq for CommPoly<F> {}

impl<F: Field> CommPoly<F> {
    pub fn zero(field: F, vars: Arc<[String]>) -> Self {
        CommPoly {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, vars: Arc<[String]>, c: F::Elem) -> Self {
        let mut p = Self::zero(field, vars);
        if !p.field.is_zero(&c) {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    /// The polynomial consisting of variable `index`.
    pub fn var(field: F, vars: Arc<[String]>, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let one = field.one();
        let mut p = Self::zero(field, vars);
        p.terms.insert(Monomial(exps), one);
        p
    }

    /// Looks a variable up by name.
    pub fn named_var(field: F, vars: Arc<[String]>, name: &str) -> Option<Self> {
        let index = vars.iter().position(|v| v == name)?;
        Some(Self::var(field, vars, index))
    }

    pub fn from_terms(
        field: F,
        vars: Arc<[String]>,
        terms: impl IntoIterator<Item = (Vec<u32>, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(field, vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.vars.len(), "exponent vector length");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exps: &[u32]) -> F::Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.field.add(existing, &c);
                if self.field.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.vars.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.field.clone(), self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    /// Exact evaluation at a point with one coordinate per variable.
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem, AlgError> {
        if point.len() != self.vars.len() {
            return Err(AlgError::LengthMismatch {
                expected: self.vars.len(),
                found: point.len(),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    term = f.mul(&term, x);
                }
            }
            acc = f.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Substitutes a constant for one variable. The variable stays in the
    /// variable list with exponent zero everywhere.
    pub fn substitute(&self, index: usize, value: &F::Elem) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.vars.clone());
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = std::mem::replace(&mut exps[index], 0);
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = f.mul(&coeff, value);
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Whether the polynomial is a single monomial with coefficient +1 or -1.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1 && {
            let c = self.terms.values().next().unwrap();
            self.field.is_one(c) || self.field.is_one(&self.field.neg(c))
        }
    }
}

impl<F: Field> fmt::Display for CommPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.field;
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = !field.is_zero(c) && c.to_string().starts_with('-');
            let mag = if negative { field.neg(c) } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        if e == 1 {
                            self.vars[v].clone()
                        } else {
                            format!("{}^{}", self.vars[v], e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if field.is_one(&mag) {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for CommPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}

/// Symbolic determinant of a square grid of polynomials.
///
/// Expands row by row over subsets of used columns, so the cost is
/// `O(n 2^n)` polynomial products instead of `n!`.
pub fn sym_det<F: Field>(grid: &[Vec<CommPoly<F>>]) -> Result<CommPoly<F>, AlgError> {
    let n = grid.len();
    for row in grid {
        if row.len() != n {
            return Err(AlgError::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if n == 0 {
        return Err(AlgError::EmptyGrid);
    }
    if n > 20 {
        return Err(AlgError::TooLarge(n));
    }
    let proto = &grid[0][0];
    let field = proto.field.clone();
    let vars = proto.vars.clone();
    let zero = CommPoly::zero(field.clone(), vars.clone());
    let mut partial: Vec<Option<CommPoly<F>>> = vec![None; 1 << n];
    partial[0] = Some(CommPoly::constant(field.clone(), vars, field.one()));
    for mask in 0usize..(1 << n) {
        let Some(current) = partial[mask].take() else {
            continue;
        };
        let row = mask.count_ones() as usize;
        if row == n {
            partial[mask] = Some(current);
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 || grid[row][col].is_zero() {
                continue;
            }
            // each earlier row sitting in a later column is one inversion
            let inversions = (mask >> (col + 1)).count_ones();
            let mut term = current.mul(&grid[row][col]);
            if inversions % 2 == 1 {
                term = term.neg();
            }
            let slot = &mut partial[mask | (1 << col)];
            *slot = Some(match slot.take() {
                Some(acc) => acc.add(&term),
                None => term,
            });
        }
    }
    Ok(partial[(1 << n) - 1].take().unwrap_or(zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, RationalField};

    fn vars(names: &[&str]) -> Arc<[String]> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_display_order() {
        let q = RationalField;
        let v = vars(&["x", "y"]);
        let x = CommPoly::var(q, v.clone(), 0);
        let y = CommPoly::var(q, v.clone(), 1);
        let one = CommPoly::constant(q, v, q.one());
        let p = one.add(&x.mul(&y)).sub(&y.mul(&y));
        assert_eq!(p.to_string(), "x*y - y^2 + 1");
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = RationalField;
        let v = vars(&["x"]);
        let x = CommPoly::var(q, v, 0);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x).to_string(), "0");
    }

    #[test]
    fn eval_examples() {
        let q = RationalField;
        let v = vars(&["x12", "x13", "x23"]);
        let m = CommPoly::var(q, v.clone(), 0)
            .mul(&CommPoly::var(q, v.clone(), 1))
            .mul(&CommPoly::var(q, v.clone(), 2));
        assert_eq!(m.eval(&[q.one(), q.one(), q.one()]).unwrap(), q.one());
        assert_eq!(
            m.eval(&[q.one(), q.zero(), q.from_i64(7)]).unwrap(),
            q.zero()
        );
        assert!(m.eval(&[q.one()]).is_err());

        let f5 = PrimeField::new(5).unwrap();
        let w = vars(&["x13", "x23"]);
        let p = CommPoly::constant(f5, w.clone(), 1)
            .add(&CommPoly::var(f5, w.clone(), 0).mul(&CommPoly::var(f5, w, 1)));
        assert_eq!(p.eval(&[2, 2]).unwrap(), 0);
    }

    #[test]
    fn substitution() {
        let q = RationalField;
        let v = vars(&["x", "y"]);
        let x = CommPoly::var(q, v.clone(), 0);
        let y = CommPoly::var(q, v.clone(), 1);
        let p = x.mul(&x).mul(&y).add(&y);
        let s = p.substitute(0, &q.from_i64(2));
        assert_eq!(s, y.scale(&q.from_i64(5)));
    }

    #[test]
    fn diagonal_symbolic_det() {
        let q = RationalField;
        let v = vars(&["a", "b", "c"]);
        let z = CommPoly::zero(q, v.clone());
        let a = CommPoly::var(q, v.clone(), 0);
        let b = CommPoly::var(q, v.clone(), 1);
        let c = CommPoly::var(q, v.clone(), 2);
        let grid = vec![
            vec![a.clone(), z.clone(), z.clone()],
            vec![z.clone(), b.clone(), z.clone()],
            vec![z.clone(), z.clone(), c.clone()],
        ];
        assert_eq!(sym_det(&grid).unwrap(), a.mul(&b).mul(&c));
        // swapping two rows flips the sign
        let swapped = vec![grid[1].clone(), grid[0].clone(), grid[2].clone()];
        assert_eq!(sym_det(&swapped).unwrap(), a.mul(&b).mul(&c).neg());
        assert!(sym_det(&[vec![a.clone(), b.clone()]]).is_err());
    }
}
