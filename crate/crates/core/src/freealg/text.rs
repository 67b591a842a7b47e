//! Line-oriented presentation format.
//!
//! ```text
//! # comment
//! label: an:3
//! exactness: exact
//! generators: x1 x2
//! relation: x1*x1
//! relation: x1*x2*x1 - x2*x1*x2
//! ```
//!
//! `label:`, `exactness:` and `heuristic: char2` are optional. Terms are
//! joined by `+`/`-`, factors by `*`; a term may start with an integer or
//! `a/b` coefficient. Edge generators are written `x<i>_<j>`.

use std::collections::HashMap;

use num_rational::Rational64;

use super::{Exactness, GeneratorLabel, NcPoly, Presentation, PresentationError, Word};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Slash,
    Star,
    Plus,
    Minus,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> PresentationError {
    PresentationError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize(
    body: &str,
    line: usize,
    offset: usize,
) -> Result<Vec<(Tok, usize)>, PresentationError> {
    let chars: Vec<char> = body.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = offset + k + 1;
        match c {
            ' ' | '\t' => k += 1,
            '*' => {
                out.push((Tok::Star, col));
                k += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                k += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                k += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                k += 1;
            }
            d if d.is_ascii_digit() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let text: String = chars[start..k].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| syntax(line, col, format!("integer `{text}` out of range")))?;
                out.push((Tok::Int(v), col));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push((Tok::Ident(chars[start..k].iter().collect()), col));
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct RelationParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    index: &'a HashMap<GeneratorLabel, usize>,
}

impl RelationParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn parse(mut self) -> Result<NcPoly, PresentationError> {
        let mut terms = Vec::new();
        let mut sign = Rational64::from_integer(1);
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, w) = self.term()?;
            terms.push((sign * c, w));
            match self.next() {
                None => break,
                Some(Tok::Plus) => sign = Rational64::from_integer(1),
                Some(Tok::Minus) => sign = Rational64::from_integer(-1),
                Some(_) => {
                    self.pos -= 1;
                    return Err(syntax(
                        self.line,
                        self.col(),
                        "expected `+` or `-` between terms",
                    ));
                }
            }
        }
        let (low, high) = terms
            .iter()
            .fold((usize::MAX, 0), |(lo, hi), (_, w): &(_, Word)| {
                (lo.min(w.degree()), hi.max(w.degree()))
            });
        if low != high {
            return Err(PresentationError::Inhomogeneous {
                line: self.line,
                low,
                high,
            });
        }
        Ok(NcPoly::new(terms))
    }

    fn term(&mut self) -> Result<(Rational64, Word), PresentationError> {
        let mut coeff = Rational64::from_integer(1);
        if let Some(Tok::Int(n)) = self.peek().cloned() {
            self.pos += 1;
            let mut value = Rational64::from_integer(n);
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let col = self.col();
                match self.next() {
                    Some(Tok::Int(0)) => return Err(syntax(self.line, col, "zero denominator")),
                    Some(Tok::Int(d)) => value = Rational64::new(n, d),
                    _ => return Err(syntax(self.line, col, "expected denominator")),
                }
            }
            coeff = value;
            match self.peek() {
                Some(Tok::Star) => self.pos += 1,
                Some(Tok::Ident(_)) => {}
                _ => {
                    return Err(syntax(
                        self.line,
                        self.col(),
                        "a coefficient must be followed by a word of degree at least 1",
                    ))
                }
            }
        }
        let mut letters = Vec::new();
        loop {
            let col = self.col();
            match self.next() {
                Some(Tok::Ident(name)) => {
                    let label = GeneratorLabel::parse(&name)
                        .map_err(|_| syntax(self.line, col, format!("bad generator `{name}`")))?;
                    let idx =
                        *self
                            .index
                            .get(&label)
                            .ok_or(PresentationError::UndeclaredGenerator {
                                line: self.line,
                                name: name.clone(),
                            })?;
                    letters.push(idx);
                }
                _ => return Err(syntax(self.line, col, "expected a generator")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Word(letters)))
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut label = String::new();
    let mut exactness = Exactness::Exact;
    let mut char2_only = false;
    let mut generators: Vec<GeneratorLabel> = Vec::new();
    let mut index: HashMap<GeneratorLabel, usize> = HashMap::new();
    let mut relations: Vec<(usize, NcPoly)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(syntax(line, col, "expected `<keyword>: ...`"));
        };
        let value_offset = key.len() + 1;
        match key.trim() {
            "label" => label = value.trim().to_string(),
            "exactness" => {
                exactness = match value.trim() {
                    "exact" => Exactness::Exact,
                    "necessary-only" => Exactness::NecessaryOnly,
                    other => {
                        return Err(syntax(
                            line,
                            value_offset + 1,
                            format!("unknown exactness `{other}`"),
                        ))
                    }
                }
            }
            "heuristic" => match value.trim() {
                "char2" => char2_only = true,
                other => {
                    return Err(syntax(
                        line,
                        value_offset + 1,
                        format!("unknown heuristic `{other}`"),
                    ))
                }
            },
            "generators" => {
                for name in value.split_whitespace() {
                    let g = GeneratorLabel::parse(name)?;
                    if index.contains_key(&g) {
                        return Err(PresentationError::DuplicateGenerator(name.to_string()));
                    }
                    index.insert(g.clone(), generators.len());
                    generators.push(g);
                }
            }
            "relation" => {
                let toks = tokenize(value, line, value_offset)?;
                if toks.is_empty() {
                    return Err(syntax(line, value_offset + 1, "empty relation"));
                }
                let parser = RelationParser {
                    toks,
                    pos: 0,
                    line,
                    end_col: content.len() + 1,
                    index: &index,
                };
                relations.push((line, parser.parse()?));
            }
            other => {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(syntax(line, col, format!("unknown keyword `{other}`")));
            }
        }
    }

    let mut p =
        Presentation::new(label, generators, Vec::new(), exactness)?.with_char2_only(char2_only);
    for (line, r) in relations {
        p.push_relation(r, line)?;
    }
    Ok(p)
}

pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    if !p.label().is_empty() {
        out.push_str(&format!("label: {}\n", p.label()));
    }
    out.push_str(&format!("exactness: {}\n", p.exactness()));
    if p.is_char2_only() {
        out.push_str("heuristic: char2\n");
    }
    let gens: Vec<String> = p.generators().iter().map(|g| g.to_string()).collect();
    out.push_str(&format!("generators: {}\n", gens.join(" ")));
    for r in p.relation_strings() {
        out.push_str(&format!("relation: {r}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{fk_complete, nil_coxeter};

    #[test]
    fn parses_a3_presentation() {
        let p =
            parse_presentation("generators: a b\nrelation: a*a\nrelation: a*b*a - b*a*b").unwrap();
        let nc = nil_coxeter(3).unwrap();
        // same relations once b*b is added, labels aside
        assert_eq!(p.relations()[0], nc.relations()[0]);
        assert_eq!(p.relations()[1], nc.relations()[2]);
        assert_eq!(p.generators().len(), 2);
    }

    #[test]
    fn roundtrip_builders() {
        for p in [
            fk_complete(3).unwrap(),
            fk_complete(4).unwrap(),
            nil_coxeter(5).unwrap(),
        ] {
            assert_eq!(parse_presentation(&serialize_presentation(&p)).unwrap(), p);
        }
    }

    #[test]
    fn coefficients_and_comments() {
        let p = parse_presentation(
            "# test\ngenerators: a b # two\nrelation: 2*a*b - 1/2 b*a + 3 a*a\nrelation: -a*b + b*a",
        )
        .unwrap();
        assert_eq!(p.relation_strings()[0], "3*a*a + 2*a*b - 1/2*b*a");
        assert_eq!(p.relation_strings()[1], "-a*b + b*a");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_presentation("generators: a b\nrelation: a*a + b"),
            Err(PresentationError::Inhomogeneous {
                line: 2,
                low: 1,
                high: 2
            })
        ));
        assert!(matches!(
            parse_presentation("generators: a\nrelation: a*c"),
            Err(PresentationError::UndeclaredGenerator { line: 2, .. })
        ));
        assert_eq!(
            parse_presentation("generators: a a"),
            Err(PresentationError::DuplicateGenerator("a".into()))
        );
        assert!(matches!(
            parse_presentation("generators: a\nrelation: a*a )"),
            Err(PresentationError::Syntax {
                line: 2,
                col: 15,
                ..
            })
        ));
        assert!(matches!(
            parse_presentation("generators: a\nrelation: a a"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("generators: a b\nrelation: a*b - a*b"),
            Err(PresentationError::ZeroRelation { line: 2 })
        ));
        assert!(parse_presentation("nonsense").is_err());
        assert!(parse_presentation("generators: a\nrelation: 1/0*a*a").is_err());
        assert!(parse_presentation("generators: a\nrelation: 3").is_err());
    }
}
