//! Symbolic presentations of split virtually abelian groups and the
//! line-oriented group spec file format.
//!
//! A spec file has the sections below, in any order; `#` starts a comment.
//!
//! ```text
//! QUOTIENT 4
//! names 1 t τ tτ
//! 0 1 2 3              # one multiplication-table row per element
//! ...
//! LATTICE_GENERATORS
//! x x^t x^τ x^tτ y y^t y^τ y^tτ
//! ACTION
//! t : x^t x x^tτ x^τ y^t y y^tτ y^τ
//! RELATIONS
//! x + x^τ - y - y^t    # linear expression or an integer vector
//! ALPHABET
//! x X x 1 1            # symbol inverse lattice-part quotient weight
//! τ τ ZERO τ 2
//! EPSILON
//! 1 1 1 1 1 1 1 1      # one value per lattice generator
//! ```
//!
//! Table and action entries may be element/generator names or indices.
//! Lattice parts are `ZERO`, a generator expression such as `-x^t`, or a
//! comma-separated integer vector. Quotient elements missing from `ACTION`
//! act trivially only if they are the identity; anything else is an error.

use crate::error::{parse_err, Error, Result};
use crate::finite_group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub symbol: String,
    pub inverse: String,
    /// Lattice part over the abstract generators.
    pub lattice: Vec<i64>,
    pub quotient: usize,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VAPresentation {
    pub quotient: FiniteGroup,
    pub generators: Vec<String>,
    /// `action[q][s]` is the index of the generator `q` sends `s` to.
    pub action: Vec<Vec<usize>>,
    pub relations: Vec<Vec<i64>>,
    pub alphabet: Vec<Letter>,
    /// Value of ε on each abstract generator, when configured.
    pub epsilon: Option<Vec<i64>>,
}

impl VAPresentation {
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Checks the structural invariants: permutation action, group action
    /// law, vector lengths, symmetric alphabet.
    pub fn validate(&self) -> Result<()> {
        let m = self.quotient.order();
        let n = self.generators.len();
        if self.action.len() != m {
            return Err(Error::Presentation(format!(
                "action has {} rows, expected {m}",
                self.action.len()
            )));
        }
        for (q, perm) in self.action.iter().enumerate() {
            let mut seen = vec![false; n];
            if perm.len() != n {
                return Err(Error::Presentation(format!(
                    "action row for {} has wrong length",
                    self.quotient.name(q)
                )));
            }
            for &s in perm {
                if s >= n || std::mem::replace(&mut seen[s], true) {
                    return Err(Error::Presentation(format!(
                        "action of {} is not a permutation",
                        self.quotient.name(q)
                    )));
                }
            }
        }
        let e = self.quotient.identity();
        if self.action[e].iter().enumerate().any(|(i, &s)| i != s) {
            return Err(Error::Presentation("identity acts nontrivially".into()));
        }
        for q in 0..m {
            for r in 0..m {
                let qr = self.quotient.mul(q, r);
                for s in 0..n {
                    if self.action[q][self.action[r][s]] != self.action[qr][s] {
                        return Err(Error::Presentation(format!(
                            "action law fails for ({}, {}) on {}",
                            self.quotient.name(q),
                            self.quotient.name(r),
                            self.generators[s]
                        )));
                    }
                }
            }
        }
        for r in &self.relations {
            if r.len() != n {
                return Err(Error::Presentation("relation vector has wrong length".into()));
            }
        }
        if let Some(eps) = &self.epsilon {
            if eps.len() != n {
                return Err(Error::Presentation("EPSILON has wrong length".into()));
            }
        }
        if self.alphabet.is_empty() {
            return Err(Error::Presentation("empty alphabet".into()));
        }
        for (i, l) in self.alphabet.iter().enumerate() {
            if l.weight == 0 {
                return Err(Error::Presentation(format!("letter {} has weight 0", l.symbol)));
            }
            if l.lattice.len() != n || l.quotient >= m {
                return Err(Error::Presentation(format!("letter {} is malformed", l.symbol)));
            }
            if self.alphabet[..i].iter().any(|o| o.symbol == l.symbol) {
                return Err(Error::Presentation(format!("duplicate letter {}", l.symbol)));
            }
            let inv = self
                .alphabet
                .iter()
                .find(|o| o.symbol == l.inverse)
                .ok_or_else(|| {
                    Error::Presentation(format!("inverse {} of {} is not a letter", l.inverse, l.symbol))
                })?;
            if inv.inverse != l.symbol {
                return Err(Error::Presentation(format!(
                    "inverse of {} does not point back",
                    l.symbol
                )));
            }
            if inv.weight != l.weight {
                return Err(Error::Presentation(format!(
                    "{} and its inverse have different weights",
                    l.symbol
                )));
            }
        }
        Ok(())
    }

    /// `q . v`: permutes coordinates so that generator `s` moves to `q.s`.
    pub fn act_on_vector(&self, q: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (s, &c) in v.iter().enumerate() {
            out[self.action[q][s]] += c;
        }
        out
    }

    /// Listed relations followed by their images under every quotient
    /// element, in quotient order. Exact duplicates are dropped.
    pub fn relation_orbit(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for q in 0..self.quotient.order() {
            for r in &self.relations {
                let img = self.act_on_vector(q, r);
                if !out.contains(&img) {
                    out.push(img);
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::default().run(text)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Quotient,
    Generators,
    Action,
    Relations,
    Alphabet,
    Epsilon,
}

#[derive(Default)]
struct Parser {
    order: Option<usize>,
    quotient_line: usize,
    names: Vec<String>,
    raw_table: Vec<(usize, Vec<String>)>,
    generators: Vec<String>,
    raw_action: Vec<(usize, String, Vec<String>)>,
    raw_relations: Vec<(usize, String)>,
    raw_alphabet: Vec<(usize, Vec<String>)>,
    raw_epsilon: Option<(usize, String)>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<VAPresentation> {
        let mut section = Section::None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap_or_default();
            let next = match head {
                "QUOTIENT" => {
                    let order = toks
                        .next()
                        .ok_or_else(|| parse_err(line_no, "QUOTIENT needs an order"))?;
                    let order: usize = order
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad order {order:?}")))?;
                    self.order = Some(order);
                    self.quotient_line = line_no;
                    Some(Section::Quotient)
                }
                "LATTICE_GENERATORS" => Some(Section::Generators),
                "ACTION" => Some(Section::Action),
                "RELATIONS" => Some(Section::Relations),
                "ALPHABET" => Some(Section::Alphabet),
                "EPSILON" => Some(Section::Epsilon),
                _ => None,
            };
            if let Some(s) = next {
                section = s;
                continue;
            }
            let tokens: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            match section {
                Section::None => {
                    return Err(parse_err(line_no, format!("content outside a section: {line:?}")))
                }
                Section::Quotient => {
                    if head == "names" {
                        self.names = tokens[1..].to_vec();
                    } else {
                        self.raw_table.push((line_no, tokens));
                    }
                }
                Section::Generators => self.generators.extend(tokens),
                Section::Action => {
                    let (lhs, rhs) = line
                        .split_once(':')
                        .ok_or_else(|| parse_err(line_no, "ACTION line needs `element : images`"))?;
                    self.raw_action.push((
                        line_no,
                        lhs.trim().to_string(),
                        rhs.split_whitespace().map(str::to_string).collect(),
                    ));
                }
                Section::Relations => self.raw_relations.push((line_no, line.to_string())),
                Section::Alphabet => self.raw_alphabet.push((line_no, tokens)),
                Section::Epsilon => {
                    if self.raw_epsilon.is_some() {
                        return Err(parse_err(line_no, "EPSILON given twice"));
                    }
                    self.raw_epsilon = Some((line_no, line.to_string()));
                }
            }
        }
        self.finish()
    }

    fn finish(self) -> Result<VAPresentation> {
        let m = self
            .order
            .ok_or_else(|| parse_err(1, "missing QUOTIENT section"))?;
        if self.raw_table.len() != m {
            return Err(parse_err(
                self.quotient_line,
                format!("expected {m} table rows, found {}", self.raw_table.len()),
            ));
        }
        if !self.names.is_empty() && self.names.len() != m {
            return Err(parse_err(self.quotient_line, "wrong number of element names"));
        }
        let elem = |line: usize, tok: &str| -> Result<usize> {
            if let Some(i) = self.names.iter().position(|n| n == tok) {
                return Ok(i);
            }
            match tok.parse::<usize>() {
                Ok(i) if i < m => Ok(i),
                _ => Err(parse_err(line, format!("unknown quotient element {tok:?}"))),
            }
        };
        let mut table = Vec::with_capacity(m);
        for (line, row) in &self.raw_table {
            table.push(
                row.iter()
                    .map(|t| elem(*line, t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let quotient = FiniteGroup::from_table(table, self.names.clone()).map_err(|e| match e {
            Error::Presentation(msg) => parse_err(self.quotient_line, msg),
            other => other,
        })?;

        let n = self.generators.len();
        if n == 0 {
            return Err(parse_err(1, "missing LATTICE_GENERATORS"));
        }
        let generators = self.generators.clone();
        let gen = |line: usize, tok: &str| -> Result<usize> {
            if let Some(i) = generators.iter().position(|n| n == tok) {
                return Ok(i);
            }
            match tok.parse::<usize>() {
                Ok(i) if i < n => Ok(i),
                _ => Err(parse_err(line, format!("unknown lattice generator {tok:?}"))),
            }
        };

        let identity = quotient.identity();
        let mut action: Vec<Option<Vec<usize>>> = vec![None; m];
        for (line, lhs, images) in &self.raw_action {
            let q = elem(*line, lhs)?;
            if action[q].is_some() {
                return Err(parse_err(*line, format!("duplicate ACTION for {lhs}")));
            }
            if images.len() != n {
                return Err(parse_err(
                    *line,
                    format!("ACTION line has {} images, expected {n}", images.len()),
                ));
            }
            action[q] = Some(
                images
                    .iter()
                    .map(|t| gen(*line, t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(q, a)| match a {
                Some(a) => Ok(a),
                None if q == identity => Ok((0..n).collect()),
                None => Err(parse_err(
                    1,
                    format!("no ACTION line for quotient element {}", quotient.name(q)),
                )),
            })
            .collect::<Result<Vec<_>>>()?;

        let relations = self
            .raw_relations
            .iter()
            .map(|(line, text)| parse_vector(*line, text, &generators))
            .collect::<Result<Vec<_>>>()?;

        let mut alphabet = Vec::new();
        for (line, toks) in &self.raw_alphabet {
            if toks.len() != 5 {
                return Err(parse_err(
                    *line,
                    "ALPHABET line needs `symbol inverse lattice quotient weight`",
                ));
            }
            let lattice = if toks[2] == "ZERO" {
                vec![0; n]
            } else {
                parse_vector(*line, &toks[2], &generators)?
            };
            let weight: u32 = toks[4]
                .parse()
                .map_err(|_| parse_err(*line, format!("bad weight {:?}", toks[4])))?;
            alphabet.push(Letter {
                symbol: toks[0].clone(),
                inverse: toks[1].clone(),
                lattice,
                quotient: elem(*line, &toks[3])?,
                weight,
            });
        }

        let epsilon = match &self.raw_epsilon {
            Some((line, text)) => Some(parse_vector(*line, text, &generators)?),
            None => None,
        };

        let p = VAPresentation {
            quotient,
            generators,
            action,
            relations,
            alphabet,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }
}

/// Parses either an integer vector (whitespace or comma separated, one entry
/// per generator) or a linear expression like `x + x^τ - 2*y`.
pub fn parse_vector(line: usize, text: &str, generators: &[String]) -> Result<Vec<i64>> {
    let n = generators.len();
    let parts: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if !parts.is_empty() && parts.iter().all(|p| p.parse::<i64>().is_ok()) {
        if parts.len() != n {
            return Err(parse_err(
                line,
                format!("vector has {} entries, expected {n}", parts.len()),
            ));
        }
        return Ok(parts.iter().map(|p| p.parse().unwrap()).collect());
    }
    parse_linear(line, text, generators)
}

fn parse_linear(line: usize, text: &str, generators: &[String]) -> Result<Vec<i64>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = vec![0i64; generators.len()];
    let mut rest = compact.as_str();
    if rest.is_empty() {
        return Err(parse_err(line, "empty expression"));
    }
    while !rest.is_empty() {
        let mut sign = 1i64;
        while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
            if c == '-' {
                sign = -sign;
            }
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coeff, name) = match term.split_once('*') {
            Some((c, name)) => (
                c.parse::<i64>()
                    .map_err(|_| parse_err(line, format!("bad coefficient {c:?}")))?,
                name,
            ),
            None => (1, term),
        };
        let idx = generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| parse_err(line, format!("unknown lattice generator {name:?}")))?;
        out[idx] += sign * coeff;
    }
    Ok(out)
}
