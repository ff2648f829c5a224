//! Compiled split virtually abelian groups `N ⋊ Q` with `N = Z^k`.
//!
//! Elements are pairs `(coords, q)` multiplying as
//! `(a, q)(b, r) = (a + A_q b, qr)`. The lattice `N` is the quotient of the
//! free module on the abstract generators by the orbit-closed relations; its
//! basis is read off a Hermite normal form of the relation matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::lattice::{self, Hnf, IntMatrix, Sublattice};
use crate::presentation::VAPresentation;

pub type LetterId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<i64>,
    pub q: usize,
}

impl GroupElement {
    pub fn new(coords: Vec<i64>, q: usize) -> Self {
        GroupElement { coords, q }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " | {})", self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledLetter {
    pub symbol: String,
    pub inverse: LetterId,
    pub weight: u32,
    pub image: GroupElement,
}

/// How the lattice basis was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Basis vectors are images of the listed abstract generators.
    Generators(Vec<usize>),
    /// Basis from the column transform of a Smith normal form.
    Smith,
}

#[derive(Clone, Debug)]
pub struct VAGroup {
    quotient: FiniteGroup,
    generators: Vec<String>,
    generator_action: Vec<Vec<usize>>,
    projection: IntMatrix,
    lift: Vec<Vec<i64>>,
    basis: BasisKind,
    action: Vec<IntMatrix>,
    relations: Vec<Vec<i64>>,
    dependencies: Vec<Vec<i64>>,
    letters: Vec<CompiledLetter>,
    epsilon: Option<Vec<i64>>,
    // deltas[q][l] = A_q * image(l).coords
    deltas: Vec<Vec<Vec<i64>>>,
}

impl VAGroup {
    /// Compiles a presentation: closes the relations under the action, checks
    /// the quotient module is torsion-free, picks a basis and builds the
    /// action matrices.
    pub fn compile(p: &VAPresentation) -> Result<Self> {
        p.validate()?;
        let n = p.generators.len();
        let relations = p.relation_orbit();
        let rel_matrix = IntMatrix::from_rows(&relations, n);
        let snf = lattice::smith_normal_form(&rel_matrix)?;
        let factors = snf.invariant_factors();
        if factors.iter().any(|&d| d != 1) {
            return Err(Error::Torsion(factors));
        }
        let hnf = Hnf::of(&rel_matrix)?;
        let r = hnf.rank();
        let k = n - r;

        let unit_pivots = hnf
            .pivots
            .iter()
            .enumerate()
            .all(|(i, &c)| hnf.form[(i, c)] == 1);
        let (projection, lift, basis) = if unit_pivots {
            let free: Vec<usize> = (0..n).filter(|j| !hnf.pivots.contains(j)).collect();
            let mut proj = IntMatrix::zeros(k, n);
            for (i, &j) in free.iter().enumerate() {
                proj[(i, j)] = 1;
            }
            for (row, &pc) in hnf.pivots.iter().enumerate() {
                for (i, &j) in free.iter().enumerate() {
                    proj[(i, pc)] = -hnf.form[(row, j)];
                }
            }
            let lift: Vec<Vec<i64>> = free
                .iter()
                .map(|&j| {
                    let mut v = vec![0; n];
                    v[j] = 1;
                    v
                })
                .collect();
            (proj, lift, BasisKind::Generators(free))
        } else {
            // v -> (v V)[r..]; the lift is rows r.. of V^{-1}
            let v = &snf.col_transform;
            let mut proj = IntMatrix::zeros(k, n);
            for i in 0..k {
                for j in 0..n {
                    proj[(i, j)] = v[(j, r + i)];
                }
            }
            let inv = Hnf::of(v)?.transform;
            let lift = (0..k).map(|i| inv.row(r + i).to_vec()).collect();
            (proj, lift, BasisKind::Smith)
        };

        let m = p.quotient.order();
        let mut action = Vec::with_capacity(m);
        for q in 0..m {
            let mut a = IntMatrix::zeros(k, k);
            for (i, b) in lift.iter().enumerate() {
                let img = projection.checked_apply(&p.act_on_vector(q, b))?;
                for (row, v) in img.into_iter().enumerate() {
                    a[(row, i)] = v;
                }
            }
            action.push(a);
        }
        for q in 0..m {
            for s in 0..n {
                let mut e = vec![0; n];
                e[s] = 1;
                let lhs = projection.checked_apply(&p.act_on_vector(q, &e))?;
                let rhs = action[q].checked_apply(&projection.column(s))?;
                if lhs != rhs {
                    return Err(Error::Action(format!(
                        "projection is not equivariant for {} on {}",
                        p.quotient.name(q),
                        p.generators[s]
                    )));
                }
            }
        }

        let mut letters = Vec::with_capacity(p.alphabet.len());
        for l in &p.alphabet {
            let inverse = p
                .alphabet
                .iter()
                .position(|o| o.symbol == l.inverse)
                .expect("validated alphabet");
            letters.push(CompiledLetter {
                symbol: l.symbol.clone(),
                inverse,
                weight: l.weight,
                image: GroupElement::new(projection.checked_apply(&l.lattice)?, l.quotient),
            });
        }

        let epsilon = match &p.epsilon {
            None => None,
            Some(eps) => {
                for rel in &relations {
                    if lattice::dot(eps, rel)? != 0 {
                        return Err(Error::Presentation(
                            "EPSILON does not vanish on the relations".into(),
                        ));
                    }
                }
                for q in 0..m {
                    if p.act_on_vector(q, eps) != *eps {
                        return Err(Error::Presentation(
                            "EPSILON is not invariant under the action".into(),
                        ));
                    }
                }
                Some(
                    lift.iter()
                        .map(|b| lattice::dot(eps, b))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };

        let group = VAGroup::assemble(
            p.quotient.clone(),
            p.generators.clone(),
            p.action.clone(),
            projection,
            lift,
            basis,
            action,
            relations,
            hnf.left_kernel(),
            letters,
            epsilon,
        )?;
        for (i, l) in group.letters.iter().enumerate() {
            let inv = &group.letters[l.inverse].image;
            if group.try_multiply(&l.image, inv)? != group.identity() {
                return Err(Error::Presentation(format!(
                    "letter {} and its inverse {} do not multiply to the identity",
                    l.symbol, group.letters[l.inverse].symbol
                )));
            }
            debug_assert_eq!(group.letters[l.inverse].inverse, i);
        }
        Ok(group)
    }

    /// Assembles compiled data without re-deriving it. Used by `compile`
    /// and by fixtures that need a deliberately inconsistent group; run
    /// [`VAGroup::invariant_failures`] to check the result.
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        quotient: FiniteGroup,
        generators: Vec<String>,
        generator_action: Vec<Vec<usize>>,
        projection: IntMatrix,
        lift: Vec<Vec<i64>>,
        basis: BasisKind,
        action: Vec<IntMatrix>,
        relations: Vec<Vec<i64>>,
        dependencies: Vec<Vec<i64>>,
        letters: Vec<CompiledLetter>,
        epsilon: Option<Vec<i64>>,
    ) -> Result<Self> {
        let deltas = action
            .iter()
            .map(|a| {
                letters
                    .iter()
                    .map(|l| a.checked_apply(&l.image.coords))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VAGroup {
            quotient,
            generators,
            generator_action,
            projection,
            lift,
            basis,
            action,
            relations,
            dependencies,
            letters,
            epsilon,
            deltas,
        })
    }

    /// Same group with one action matrix replaced.
    pub fn with_action_matrix(&self, q: usize, matrix: IntMatrix) -> Result<Self> {
        let mut action = self.action.clone();
        action[q] = matrix;
        VAGroup::assemble(
            self.quotient.clone(),
            self.generators.clone(),
            self.generator_action.clone(),
            self.projection.clone(),
            self.lift.clone(),
            self.basis.clone(),
            action,
            self.relations.clone(),
            self.dependencies.clone(),
            self.letters.clone(),
            self.epsilon.clone(),
        )
    }

    pub fn rank(&self) -> usize {
        self.projection.nrows()
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn generator_action(&self) -> &[Vec<usize>] {
        &self.generator_action
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    /// Abstract-generator vectors projecting onto the basis vectors.
    pub fn lift(&self) -> &[Vec<i64>] {
        &self.lift
    }

    pub fn basis(&self) -> &BasisKind {
        &self.basis
    }

    pub fn action_matrix(&self, q: usize) -> &IntMatrix {
        &self.action[q]
    }

    /// The orbit-closed relation list the lattice was built from.
    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// Integer dependencies among [`VAGroup::relations`].
    pub fn relation_dependencies(&self) -> &[Vec<i64>] {
        &self.dependencies
    }

    pub fn letters(&self) -> &[CompiledLetter] {
        &self.letters
    }

    pub fn letter(&self, id: LetterId) -> &CompiledLetter {
        &self.letters[id]
    }

    pub fn letter_id(&self, symbol: &str) -> Option<LetterId> {
        self.letters.iter().position(|l| l.symbol == symbol)
    }

    pub fn max_weight(&self) -> u32 {
        self.letters.iter().map(|l| l.weight).max().unwrap_or(1)
    }

    pub fn epsilon_vector(&self) -> Option<&[i64]> {
        self.epsilon.as_deref()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![0; self.rank()], self.quotient.identity())
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.q == self.quotient.identity() && g.coords.iter().all(|&c| c == 0)
    }

    /// Element `(π(v), 1)` for an abstract-generator vector `v`.
    pub fn lattice_element(&self, v: &[i64]) -> Result<GroupElement> {
        Ok(GroupElement::new(
            self.projection.checked_apply(v)?,
            self.quotient.identity(),
        ))
    }

    /// Element of a linear combination of named abstract generators.
    pub fn named_lattice_element(&self, terms: &[(&str, i64)]) -> Result<GroupElement> {
        let mut v = vec![0; self.generators.len()];
        for (name, c) in terms {
            let i = self
                .generator_index(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            v[i] += c;
        }
        self.lattice_element(&v)
    }

    pub fn try_multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let moved = self.action[g.q].checked_apply(&h.coords)?;
        let coords = g
            .coords
            .iter()
            .zip(&moved)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement::new(coords, self.quotient.mul(g.q, h.q)))
    }

    /// Panics on `i64` overflow; see [`VAGroup::try_multiply`].
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.try_multiply(g, h).expect("lattice coordinate overflow")
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        let qi = self.quotient.inv(g.q);
        let coords = self.action[qi]
            .checked_apply(&g.coords)
            .expect("lattice coordinate overflow")
            .into_iter()
            .map(|c| -c)
            .collect();
        GroupElement::new(coords, qi)
    }

    /// `g * letter` without building the letter's element.
    pub fn multiply_letter(&self, g: &GroupElement, l: LetterId) -> GroupElement {
        let d = &self.deltas[g.q][l];
        let coords = g
            .coords
            .iter()
            .zip(d)
            .map(|(a, b)| a.checked_add(*b).expect("lattice coordinate overflow"))
            .collect();
        GroupElement::new(coords, self.quotient.mul(g.q, self.letters[l].image.q))
    }

    /// Raw translation `A_q * image(l)` added by right multiplication with `l`.
    pub(crate) fn letter_delta(&self, q: usize, l: LetterId) -> &[i64] {
        &self.deltas[q][l]
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<LetterId>> {
        let mut out = Vec::new();
        let mut rest = text.trim_start();
        while !rest.is_empty() {
            let best = self
                .letters
                .iter()
                .enumerate()
                .filter(|(_, l)| rest.starts_with(l.symbol.as_str()))
                .max_by_key(|(_, l)| l.symbol.len());
            match best {
                Some((id, l)) => {
                    out.push(id);
                    rest = rest[l.symbol.len()..].trim_start();
                }
                None => {
                    let bad: String = rest
                        .chars()
                        .take_while(|c| !c.is_whitespace())
                        .collect();
                    return Err(Error::UnknownSymbol(bad));
                }
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, word: &[LetterId]) -> String {
        let compact = self.letters.iter().all(|l| l.symbol.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&l| self.letters[l].symbol.as_str()).collect();
        if compact {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub fn word_weight(&self, word: &[LetterId]) -> u32 {
        word.iter().map(|&l| self.letters[l].weight).sum()
    }

    /// Left-to-right product of letter images, and the word's weight.
    pub fn evaluate(&self, word: &[LetterId]) -> (GroupElement, u32) {
        let mut g = self.identity();
        for &l in word {
            g = self.multiply_letter(&g, l);
        }
        (g, self.word_weight(word))
    }

    pub fn evaluate_str(&self, text: &str) -> Result<(GroupElement, u32)> {
        Ok(self.evaluate(&self.parse_word(text)?))
    }

    pub fn inverse_word(&self, word: &[LetterId]) -> Vec<LetterId> {
        word.iter().rev().map(|&l| self.letters[l].inverse).collect()
    }

    pub fn epsilon(&self, g: &GroupElement) -> Result<i64> {
        let eps = self.epsilon.as_ref().ok_or(Error::NotConfigured)?;
        lattice::dot(eps, &g.coords)
    }

    /// Membership tester for `⟨letters⟩ ∩ N`.
    pub fn sublattice_membership(&self, symbols: &[&str]) -> Result<SubgroupLattice> {
        let mut ids = Vec::new();
        for s in symbols {
            let id = self
                .letter_id(s)
                .ok_or_else(|| Error::UnknownSymbol(s.to_string()))?;
            for l in [id, self.letters[id].inverse] {
                if !ids.contains(&l) {
                    ids.push(l);
                }
            }
        }
        ids.sort_unstable();
        // Schreier transversal over the quotient image of the subgroup
        let m = self.quotient.order();
        let mut transversal: Vec<Option<GroupElement>> = vec![None; m];
        let mut order = vec![self.quotient.identity()];
        transversal[self.quotient.identity()] = Some(self.identity());
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            let rep = transversal[q].clone().expect("visited");
            for &l in &ids {
                let next = self.multiply_letter(&rep, l);
                if transversal[next.q].is_none() {
                    let q = next.q;
                    order.push(q);
                    transversal[q] = Some(next);
                }
            }
            i += 1;
        }
        let mut gens = Vec::new();
        for &q in &order {
            let rep = transversal[q].as_ref().expect("visited");
            for &l in &ids {
                let g = self.multiply_letter(rep, l);
                let back = transversal[g.q].as_ref().expect("closed under letters");
                let s = self.try_multiply(&g, &self.invert(back))?;
                debug_assert_eq!(s.q, self.quotient.identity());
                if s.coords.iter().any(|&c| c != 0) {
                    gens.push(s.coords);
                }
            }
        }
        Ok(SubgroupLattice {
            identity: self.quotient.identity(),
            quotient_image: order,
            lattice: Sublattice::span(self.rank(), gens)?,
        })
    }

    /// A word for the abstract generator `s` of the form `u l u⁻¹`, where
    /// `l` is a letter whose image is the basis image of some generator in
    /// the orbit of `s` and `u` lifts a quotient element using only letters
    /// with zero lattice part.
    pub fn generator_word(&self, s: usize) -> Option<Vec<LetterId>> {
        let n = self.generators.len();
        let e = self.quotient.identity();
        let m = self.quotient.order();
        let mut lifts: Vec<Option<Vec<LetterId>>> = vec![None; m];
        lifts[e] = Some(Vec::new());
        let mut order = vec![e];
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for (id, l) in self.letters.iter().enumerate() {
                if l.image.coords.iter().any(|&c| c != 0) {
                    continue;
                }
                let r = self.quotient.mul(q, l.image.q);
                if lifts[r].is_none() {
                    let mut w = lifts[q].clone().expect("visited");
                    w.push(id);
                    lifts[r] = Some(w);
                    order.push(r);
                }
            }
            i += 1;
        }
        for &q in &order {
            for (id, l) in self.letters.iter().enumerate() {
                if l.image.q != e {
                    continue;
                }
                // does l's image equal π(e_{s0}) with q.s0 = s?
                let s0 = (0..n).find(|&s0| self.generator_action[q][s0] == s)?;
                if l.image.coords != self.projection.column(s0) {
                    continue;
                }
                let u = lifts[q].as_ref().expect("visited");
                let mut w = u.clone();
                w.push(id);
                w.extend(self.inverse_word(u));
                return Some(w);
            }
        }
        None
    }

    /// A word spelling the abstract-generator vector `v`, when every
    /// generator with a nonzero coefficient has a [`VAGroup::generator_word`].
    pub fn vector_word(&self, v: &[i64]) -> Option<Vec<LetterId>> {
        let mut out = Vec::new();
        for (s, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut w = self.generator_word(s)?;
            if c < 0 {
                w = self.inverse_word(&w);
            }
            for _ in 0..c.unsigned_abs() {
                out.extend_from_slice(&w);
            }
        }
        Some(out)
    }

    /// Checks the compiled-group invariants and returns one message per
    /// failure (empty when consistent).
    pub fn invariant_failures(&self) -> Vec<String> {
        let mut fails = Vec::new();
        let k = self.rank();
        let m = self.quotient.order();
        let e = self.quotient.identity();
        if self.action[e] != IntMatrix::identity(k) {
            fails.push("action-law: A_1 is not the identity".to_string());
        }
        for q in 0..m {
            for r in 0..m {
                let prod = self.action[q].checked_mul(&self.action[r]);
                if prod.as_ref().ok() != Some(&self.action[self.quotient.mul(q, r)]) {
                    fails.push(format!(
                        "action-law: A_{} A_{} != A_{}",
                        self.quotient.name(q),
                        self.quotient.name(r),
                        self.quotient.name(self.quotient.mul(q, r))
                    ));
                }
            }
        }
        let n = self.generators.len();
        for q in 0..m {
            for s in 0..n {
                let lhs = self.projection.column(self.generator_action[q][s]);
                let rhs = self.action[q].checked_apply(&self.projection.column(s));
                if rhs.as_ref().ok() != Some(&lhs) {
                    fails.push(format!(
                        "equivariance: {} on {}",
                        self.quotient.name(q),
                        self.generators[s]
                    ));
                }
            }
        }
        for (i, rel) in self.relations.iter().enumerate() {
            let img = self.projection.checked_apply(rel);
            if !img.map(|v| v.iter().all(|&c| c == 0)).unwrap_or(false) {
                fails.push(format!("relation-kernel: relation {i} has nonzero image"));
            }
            if let Some(w) = self.vector_word(rel) {
                let (g, _) = self.evaluate(&w);
                if !self.is_identity(&g) {
                    fails.push(format!(
                        "relation-kernel: relation word {} does not evaluate to the identity",
                        self.format_word(&w)
                    ));
                }
            }
        }
        for l in &self.letters {
            let inv = &self.letters[l.inverse].image;
            match self.try_multiply(&l.image, inv) {
                Ok(p) if self.is_identity(&p) => {}
                _ => fails.push(format!("letters: {} times its inverse is not 1", l.symbol)),
            }
        }
        fails
    }

    /// Human-readable description of the chosen basis.
    pub fn basis_description(&self) -> String {
        match &self.basis {
            BasisKind::Generators(free) => free
                .iter()
                .map(|&j| self.generators[j].as_str())
                .collect::<Vec<_>>()
                .join(" "),
            BasisKind::Smith => "Smith column transform".to_string(),
        }
    }
}

/// `⟨S⟩ ∩ N` for a set of letters `S`, with the quotient image of `⟨S⟩`.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    identity: usize,
    quotient_image: Vec<usize>,
    lattice: Sublattice,
}

impl SubgroupLattice {
    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        if g.q != self.identity {
            return Ok(false);
        }
        self.lattice.contains(&g.coords)
    }

    pub fn quotient_image(&self) -> &[usize] {
        &self.quotient_image
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn free_rank2() -> VAGroup {
        let text = "
QUOTIENT 1
0
LATTICE_GENERATORS
a b
ALPHABET
a A a 0 1
A a -a 0 1
b B b 0 1
B b -b 0 1
";
        VAGroup::compile(&VAPresentation::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn free_abelian_rank2() {
        let g = free_rank2();
        assert_eq!(g.rank(), 2);
        assert_eq!(*g.action_matrix(0), IntMatrix::identity(2));
        assert!(g.invariant_failures().is_empty());
    }

    #[test]
    fn preset_ranks() {
        assert_eq!(presets::h().rank(), 5);
        assert_eq!(presets::g().rank(), 10);
    }

    #[test]
    fn h_basis_is_generator_images() {
        let h = presets::h();
        assert_eq!(h.basis_description(), "x^τ x^tτ y^t y^τ y^tτ");
        assert_eq!(h.relations().len(), 4);
        assert_eq!(h.relation_dependencies().len(), 1);
    }

    #[test]
    fn h_relation_words() {
        let h = presets::h();
        assert_eq!(h.evaluate_str("xτxτ").unwrap().0, h.evaluate_str("ytyt").unwrap().0);
        assert!(h.is_identity(&h.evaluate_str("tt").unwrap().0));
        let t = h.evaluate_str("t").unwrap().0;
        assert_eq!(h.invert(&t), t);
    }

    #[test]
    fn evaluate_weights() {
        let h = presets::h();
        let (g, w) = h.evaluate_str("").unwrap();
        assert!(h.is_identity(&g));
        assert_eq!(w, 0);
        let (g, w) = h.evaluate_str("xτxτ").unwrap();
        assert_eq!(w, 6);
        assert_eq!(g, h.named_lattice_element(&[("x", 1), ("x^τ", 1)]).unwrap());
        let (g, w) = h.evaluate_str("xxyytyyyt").unwrap();
        assert_eq!(w, 2 + 2 + 3 + 2);
        assert_eq!(
            g,
            h.named_lattice_element(&[("x", 2), ("y", 2), ("y^t", 3)]).unwrap()
        );
        assert_eq!(h.evaluate_str("xz"), Err(Error::UnknownSymbol("z".into())));
    }

    #[test]
    fn epsilon_values() {
        let h = presets::h();
        let e = |w: &str| h.epsilon(&h.evaluate_str(w).unwrap().0).unwrap();
        assert_eq!(e(""), 0);
        assert_eq!(e("xτxτ"), 2);
        assert_eq!(e("xY"), 0);
        assert_eq!(e("t"), 0);
        assert_eq!(e("τ"), 0);
        assert_eq!(free_rank2().epsilon(&free_rank2().identity()), Err(Error::NotConfigured));
    }

    #[test]
    fn sublattice_membership_examples() {
        let h = presets::h();
        let xy = h.sublattice_membership(&["x", "y"]).unwrap();
        let xyt = h.sublattice_membership(&["x", "y", "t"]).unwrap();
        let g = h.evaluate_str("xτxτ").unwrap().0;
        assert!(!xy.contains(&g).unwrap());
        assert!(xyt.contains(&g).unwrap());
        assert!(xy.contains(&h.identity()).unwrap());
        assert!(xyt.contains(&h.identity()).unwrap());
        assert_eq!(xy.lattice().rank(), 2);
        assert_eq!(xyt.quotient_image().len(), 2);
        // x^τ = y + y^t - x lies in <x,y,t>; y^τ does not
        let xtau = h.named_lattice_element(&[("x^τ", 1)]).unwrap();
        assert!(xyt.contains(&xtau).unwrap());
        assert!(!xy.contains(&xtau).unwrap());
        let ytau = h.named_lattice_element(&[("y^τ", 1)]).unwrap();
        assert!(!xyt.contains(&ytau).unwrap());
        assert_eq!(xyt.lattice().rank(), 4);
    }

    #[test]
    fn torsion_is_rejected() {
        let text = "
QUOTIENT 1
0
LATTICE_GENERATORS
a b
RELATIONS
2*a
ALPHABET
a A a 0 1
A a -a 0 1
";
        let p = VAPresentation::parse(text).unwrap();
        assert_eq!(VAGroup::compile(&p).unwrap_err(), Error::Torsion(vec![2]));
    }

    #[test]
    fn non_invariant_relations_break_equivariance() {
        // relation a - b with a nontrivial swap action is fine; a relation
        // that is not closed is closed by the orbit, so equivariance holds.
        let text = "
QUOTIENT 2
0 1
1 0
LATTICE_GENERATORS
a b c
ACTION
1 : b a c
RELATIONS
a - c
ALPHABET
a A a 0 1
A a -a 0 1
t t ZERO 1 1
";
        let g = VAGroup::compile(&VAPresentation::parse(text).unwrap()).unwrap();
        assert_eq!(g.rank(), 1);
        assert!(g.invariant_failures().is_empty());
    }

    #[test]
    fn corrupted_action_is_detected() {
        let h = presets::h();
        let tau = h.quotient().index_of("τ").unwrap();
        let bad = h
            .with_action_matrix(tau, IntMatrix::identity(5))
            .unwrap();
        let fails = bad.invariant_failures();
        assert!(fails.iter().any(|f| f.starts_with("relation-kernel")));
        assert!(fails.iter().any(|f| f.starts_with("equivariance")));
    }

    #[test]
    fn compile_is_deterministic() {
        let a = presets::compile_g().unwrap();
        let b = presets::compile_g().unwrap();
        assert_eq!(a.projection(), b.projection());
        for q in 0..8 {
            assert_eq!(a.action_matrix(q), b.action_matrix(q));
        }
    }
}
