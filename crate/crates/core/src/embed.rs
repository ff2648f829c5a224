//! The embedding `H → G` given by `τ = s²`, its bounded check of being
//! totally geodesic, and refutation of DFAs over `G` by transport from `H`.

use crate::automata::{
    product_search, pump_run, target_for, Dfa, LengthSource, PrefixOracle, PumpOptions,
    RefutationWitness, TargetParams,
};
use crate::error::{Error, Result};
use crate::geodesy::{family_b_element, family_b_geodesic, match_star, HLetters, LengthTable};
use crate::group::{GroupElement, LetterId, VAGroup};
use crate::lattice::IntMatrix;
use crate::report::CheckReport;

/// Quotient and letter correspondences, plus the induced lattice matrix.
#[derive(Clone, Debug)]
pub struct EmbeddingMap<'a> {
    h: &'a VAGroup,
    g: &'a VAGroup,
    quotient_map: Vec<usize>,
    matrix: IntMatrix,
    // H letter -> G word
    substitution: Vec<Vec<LetterId>>,
    // G letter -> H letter, for letters fixed by the substitution
    single: Vec<Option<LetterId>>,
    // G letters whose square is the image of τ
    half_tau: Vec<bool>,
    // other G letters equal to their conjugates by s
    commutes_with_s: Vec<bool>,
    tau: LetterId,
}

fn rename(name: &str, map: &dyn Fn(&str) -> Option<String>, identity: &str) -> Option<String> {
    match name.split_once('^') {
        None => Some(name.to_string()),
        Some((base, q)) => {
            let q = map(q)?;
            Some(if q == identity { base.to_string() } else { format!("{base}^{q}") })
        }
    }
}

impl<'a> EmbeddingMap<'a> {
    /// `t ↦ t`, `τ ↦ s²` on quotients, `x^α ↦ x^{α'}` on abstract generators,
    /// `τ ↦ ss` on words. Fails unless the result is an injective
    /// homomorphism compatible with the substitution.
    pub fn tau_to_s2(h: &'a VAGroup, g: &'a VAGroup) -> Result<Self> {
        let (qh, qg) = (h.quotient(), g.quotient());
        let qname = |n: &str| -> Option<String> {
            match n {
                "1" => Some("1"),
                "t" => Some("t"),
                "τ" => Some("s2"),
                "tτ" => Some("ts2"),
                _ => None,
            }
            .map(String::from)
        };
        let bad = |m: String| Error::Presentation(format!("embedding: {m}"));
        let mut quotient_map = Vec::with_capacity(qh.order());
        for a in 0..qh.order() {
            let image = qname(qh.name(a))
                .and_then(|n| qg.index_of(&n))
                .ok_or_else(|| bad(format!("no image for quotient element {}", qh.name(a))))?;
            quotient_map.push(image);
        }
        for a in 0..qh.order() {
            for b in 0..qh.order() {
                if quotient_map[qh.mul(a, b)] != qg.mul(quotient_map[a], quotient_map[b]) {
                    return Err(bad("quotient map is not a homomorphism".into()));
                }
            }
        }
        let mut sorted = quotient_map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != quotient_map.len() {
            return Err(bad("quotient map is not injective".into()));
        }

        // abstract generators of H to abstract generators of G
        let id_name = qg.name(qg.identity()).to_string();
        let mut gen_map = Vec::new();
        for name in h.generators() {
            let target = rename(name, &qname, &id_name)
                .and_then(|n| g.generator_index(&n))
                .ok_or_else(|| bad(format!("no image for generator {name}")))?;
            gen_map.push(target);
        }
        let push = |v: &[i64]| -> Result<Vec<i64>> {
            let mut w = vec![0i64; g.generators().len()];
            for (s, &c) in v.iter().enumerate() {
                w[gen_map[s]] += c;
            }
            g.projection().checked_apply(&w)
        };
        for r in h.relations() {
            if push(r)?.iter().any(|&c| c != 0) {
                return Err(bad("a relation of H does not vanish in G".into()));
            }
        }
        let columns: Vec<Vec<i64>> = h.lift().iter().map(|v| push(v)).collect::<Result<_>>()?;
        let matrix = IntMatrix::from_rows(&columns, g.rank()).transpose();
        if matrix.rank() != h.rank() {
            return Err(bad(format!("lattice map has rank {}", matrix.rank())));
        }
        for q in 0..qh.order() {
            let lhs = g.action_matrix(quotient_map[q]).checked_mul(&matrix)?;
            let rhs = matrix.checked_mul(h.action_matrix(q))?;
            if lhs != rhs {
                return Err(bad(format!("lattice map is not equivariant at {}", qh.name(q))));
            }
        }

        let gid = |s: &str| g.letter_id(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()));
        let tau = h.letter_id("τ").ok_or_else(|| Error::UnknownSymbol("τ".into()))?;
        let s = gid("s")?;
        let s_inv = gid("S")?;
        let mut substitution = Vec::new();
        let mut single = vec![None; g.letters().len()];
        for (id, l) in h.letters().iter().enumerate() {
            if id == tau {
                substitution.push(vec![s, s]);
            } else {
                let gl = gid(&l.symbol)?;
                single[gl] = Some(id);
                substitution.push(vec![gl]);
            }
        }
        let mut half_tau = vec![false; g.letters().len()];
        half_tau[s] = true;
        half_tau[s_inv] = true;
        let s_image = &g.letter(s).image;
        let commutes_with_s = (0..g.letters().len())
            .map(|l| {
                let li = &g.letter(l).image;
                !half_tau[l] && g.multiply(s_image, li) == g.multiply(li, s_image)
            })
            .collect();

        let map = EmbeddingMap {
            h,
            g,
            quotient_map,
            matrix,
            substitution,
            single,
            half_tau,
            commutes_with_s,
            tau,
        };
        for (id, l) in h.letters().iter().enumerate() {
            let (img, w) = g.evaluate(&map.substitution[id]);
            if img != map.phi(&l.image) || w != l.weight {
                return Err(bad(format!("letter {} is not sent to its substitute", l.symbol)));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &'a VAGroup {
        self.h
    }

    pub fn target(&self) -> &'a VAGroup {
        self.g
    }

    /// Columns are images of `H`'s basis vectors in `G`'s basis.
    pub fn lattice_matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn quotient_map(&self) -> &[usize] {
        &self.quotient_map
    }

    pub fn phi(&self, h: &GroupElement) -> GroupElement {
        let coords = self
            .matrix
            .checked_apply(&h.coords)
            .expect("lattice map overflow");
        GroupElement::new(coords, self.quotient_map[h.q])
    }

    pub fn substitute_tau(&self, word: &[LetterId]) -> Vec<LetterId> {
        word.iter()
            .flat_map(|&l| self.substitution[l].iter().copied())
            .collect()
    }

    /// Inverse substitution: letters fixed by the substitution map back, and
    /// `ss` or `SS` becomes `τ`. `None` for any other use of `s`, `S`.
    pub fn pull_back(&self, word: &[LetterId]) -> Option<Vec<LetterId>> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let l = word[i];
            if let Some(hl) = self.single[l] {
                out.push(hl);
                i += 1;
            } else if self.half_tau[l] && word.get(i + 1) == Some(&l) {
                out.push(self.tau);
                i += 2;
            } else {
                return None;
            }
        }
        Some(out)
    }

    /// [`pull_back`](Self::pull_back) after moving letters that commute with
    /// `s` to the front of each block of such letters and `s`, `S`.
    pub fn pull_back_commuting(&self, word: &[LetterId]) -> Option<Vec<LetterId>> {
        let mut out = Vec::with_capacity(word.len());
        let mut i = 0;
        while i < word.len() {
            let in_block = |l: LetterId| self.half_tau[l] || self.commutes_with_s[l];
            if !in_block(word[i]) {
                out.push(word[i]);
                i += 1;
                continue;
            }
            let mut j = i;
            while j < word.len() && in_block(word[j]) {
                j += 1;
            }
            let block = &word[i..j];
            out.extend(block.iter().filter(|&&l| !self.half_tau[l]));
            out.extend(block.iter().filter(|&&l| self.half_tau[l]));
            i = j;
        }
        self.pull_back(&out)
    }
}

/// Outcome of [`check_totally_geodesic`]. The report's violations are
/// failures of `ℓ_G∘φ = ℓ_H` or of pull-back after commuting letters past
/// `s`; `literal_exceptions` counts geodesics that are not literally a
/// substitution (such as `sts` for `tτ`) but pull back once commuted.
#[derive(Clone, Debug)]
pub struct EmbeddingCheck {
    pub report: CheckReport,
    pub geodesics: usize,
    pub literal_exceptions: usize,
    pub first_exception: Option<(GroupElement, String)>,
}

/// For every `h` with `ℓ_H(h) <= radius`: `ℓ_G(φ(h)) = ℓ_H(h)`, and every
/// `G`-geodesic of `φ(h)` pulls back to an `H`-geodesic of `h`.
pub fn check_totally_geodesic(
    map: &EmbeddingMap<'_>,
    h_table: &LengthTable<'_>,
    g_table: &LengthTable<'_>,
    radius: u32,
    geodesic_cap: usize,
) -> Result<EmbeddingCheck> {
    for t in [h_table, g_table] {
        if t.radius() < radius {
            return Err(Error::OutOfRadius {
                radius: t.radius(),
                suggested: radius,
            });
        }
    }
    let (h, g) = (map.source(), map.target());
    let mut report = CheckReport::new(format!("totally-geodesic-r{radius}"));
    let mut geodesics = 0usize;
    let mut literal_exceptions = 0usize;
    let mut first_exception = None;
    for (x, len) in h_table.sorted_entries() {
        if len > radius {
            break;
        }
        report.checked += 1;
        let y = map.phi(&x);
        let glen = g_table.length(&y)?;
        if glen != len {
            report.violation(format!("{x}: ℓ_H = {len}, ℓ_G(φ) = {glen}"));
            continue;
        }
        for w in g_table.all_geodesics(&y, geodesic_cap)? {
            geodesics += 1;
            let v = match map.pull_back(&w) {
                Some(v) => v,
                None => {
                    literal_exceptions += 1;
                    if first_exception.is_none() {
                        first_exception = Some((x.clone(), g.format_word(&w)));
                    }
                    match map.pull_back_commuting(&w) {
                        Some(v) => v,
                        None => {
                            report.violation(format!(
                                "{x}: G-geodesic {} does not pull back",
                                g.format_word(&w)
                            ));
                            continue;
                        }
                    }
                }
            };
            let (hx, hw) = h.evaluate(&v);
            if hx != x || hw != len {
                report.violation(format!(
                    "{x}: pull-back {} is not an H-geodesic of it",
                    h.format_word(&v)
                ));
            }
        }
    }
    report.note(format!(
        "bounded-radius evidence: {} elements of H, {geodesics} G-geodesics pulled back",
        report.checked
    ));
    report.note(format!(
        "{literal_exceptions} geodesics are substitutions only after commuting t past s"
    ));
    Ok(EmbeddingCheck {
        report,
        geodesics,
        literal_exceptions,
        first_exception,
    })
}

/// Prefix search over `G` words that are substitutions of `H` geodesics
/// towards the target, with lengths read from the `H` table.
struct TransportOracle<'m, 'a, 't, 'g> {
    map: &'m EmbeddingMap<'a>,
    table: &'t LengthTable<'g>,
    target: GroupElement,
    target_length: u32,
}

impl TransportOracle<'_, '_, '_, '_> {
    fn interval(&self, x: &GroupElement, w: u32) -> bool {
        let h = self.table.group();
        if w > self.target_length || self.table.get(x) != Some(w) {
            return false;
        }
        let rest = h.multiply(&h.invert(x), &self.target);
        self.table.get(&rest) == Some(self.target_length - w)
    }
}

impl PrefixOracle for TransportOracle<'_, '_, '_, '_> {
    // H element, G weight, pending half of a τ
    type Node = (GroupElement, u32, Option<LetterId>);

    fn start(&self) -> Self::Node {
        (self.table.group().identity(), 0, None)
    }

    fn weight(&self, node: &Self::Node) -> u32 {
        node.1
    }

    fn step(&self, (x, w, pending): &Self::Node, l: LetterId) -> Option<Self::Node> {
        let h = self.table.group();
        match pending {
            Some(p) if *p == l => {
                let next = h.multiply_letter(x, self.map.tau);
                self.interval(&next, w + 1).then_some((next, w + 1, None))
            }
            Some(_) => None,
            None => {
                if let Some(hl) = self.map.single[l] {
                    let next = h.multiply_letter(x, hl);
                    let nw = w + h.letter(hl).weight;
                    self.interval(&next, nw).then_some((next, nw, None))
                } else if self.map.half_tau[l] {
                    let next = h.multiply_letter(x, self.map.tau);
                    self.interval(&next, w + 2)
                        .then_some((x.clone(), w + 1, Some(l)))
                } else {
                    None
                }
            }
        }
    }

    fn is_target(&self, (x, w, pending): &Self::Node) -> bool {
        pending.is_none() && *w == self.target_length && *x == self.target
    }
}

/// The loop-elimination argument for a DFA over `G`'s alphabet, aimed at
/// `φ(x^n (x^τ)^{n+2})`. Lengths come from the `H` table and are carried
/// over by the isometry `ℓ_G∘φ = ℓ_H`; witnesses say so.
pub fn refute_on_subgroup(
    map: &EmbeddingMap<'_>,
    dfa: &Dfa,
    h_table: &LengthTable<'_>,
    opts: PumpOptions,
) -> Result<RefutationWitness> {
    let (h, g) = (map.source(), map.target());
    let l = HLetters::of(h)?;
    let n = dfa.num_states();
    let target = target_for(n);
    let target_length = target.closed_form()?;
    if h_table.radius() < target_length {
        return Err(Error::ResourceLimit(format!(
            "a {n}-state DFA needs an H ball of radius {target_length}, have {}",
            h_table.radius()
        )));
    }
    let target_h = family_b_element(h, target.d, target.e, target.f)?;
    let target_element = map.phi(&target_h);
    let oracle = TransportOracle {
        map,
        table: h_table,
        target: target_h,
        target_length,
    };
    let found = product_search(dfa, &oracle, g.letters().len(), target_length, opts.max_nodes)?;
    let Some(original) = found else {
        return Ok(RefutationWitness::UncoveredElement {
            element: target_element,
            length: target_length,
            radius: target_length,
            target: Some(target),
            length_source: LengthSource::Transported,
        });
    };
    let star = map
        .pull_back(&original)
        .and_then(|v| match_star(&l, &v))
        .filter(|s| s.e == target.e && s.flank_x(&l) == target.d as usize && s.flank_y(&l) == 0)
        .ok_or_else(|| {
            Error::TheoremViolation(format!(
                "accepted word {} does not pull back to a star-shaped geodesic",
                g.format_word(&original)
            ))
        })?;
    // τ occupies two letters in G
    let run_start = star.w1.len() + 2;
    let (pumped, excisions, run) = pump_run(dfa, &original, run_start, star.e as usize, n);
    if run as u32 > target.d || run == 0 {
        return Err(Error::TheoremViolation(format!(
            "loop removal left an x-run of {run} letters"
        )));
    }
    let e = run as u32;
    let (pumped_element, pumped_weight) = g.evaluate(&pumped);
    let pumped_h = map
        .pull_back(&pumped)
        .ok_or_else(|| Error::TheoremViolation("pumped word is not a substitution".into()))?;
    let pumped_length = h_table.length(&h.evaluate(&pumped_h).0)?;
    Ok(RefutationWitness::PumpedNonGeodesic {
        target: TargetParams { ..target },
        target_element,
        target_length,
        original,
        excisions,
        pumped,
        pumped_exponent: e,
        pumped_weight,
        pumped_element,
        pumped_length,
        length_source: LengthSource::Transported,
        shorter: map.substitute_tau(&family_b_geodesic(&l, target.d, e, target.f)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{corpus, verify_witness};
    use crate::geodesy::{enumerate_ball, BallOptions};
    use crate::presets;
    use proptest::prelude::*;

    fn emb() -> EmbeddingMap<'static> {
        EmbeddingMap::tau_to_s2(presets::h(), presets::g()).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let m = emb();
        let (h, g) = (presets::h(), presets::g());
        let w = m.substitute_tau(&h.parse_word("xτxτ").unwrap());
        assert_eq!(g.format_word(&w), "xssxss");
        assert_eq!(g.word_weight(&w), 6);
        assert!(m.substitute_tau(&[]).is_empty());
        assert_eq!(g.format_word(&m.substitute_tau(&h.parse_word("xyt").unwrap())), "xyt");
        assert_eq!(m.pull_back(&g.parse_word("SS").unwrap()), Some(vec![m.tau]));
        assert_eq!(m.pull_back(&g.parse_word("sS").unwrap()), None);
        assert_eq!(m.pull_back(&g.parse_word("sss").unwrap()), None);
        assert_eq!(m.pull_back(&g.parse_word("sts").unwrap()), None);
        let back = m.pull_back_commuting(&g.parse_word("xStSy").unwrap()).unwrap();
        assert_eq!(h.format_word(&back), "xtτy");
        assert_eq!(m.pull_back_commuting(&g.parse_word("sxs").unwrap()), None);
    }

    #[test]
    fn phi_examples() {
        let m = emb();
        let (h, g) = (presets::h(), presets::g());
        assert_eq!(m.phi(&h.identity()), g.identity());
        assert_eq!(m.lattice_matrix().rank(), 5);
        let a = m.phi(&h.evaluate_str("xτxτ").unwrap().0);
        assert_eq!(a, g.evaluate_str("xssxss").unwrap().0);
        assert_eq!(a.q, g.quotient().identity());
        assert_eq!(m.phi(&h.evaluate_str("t").unwrap().0), g.evaluate_str("t").unwrap().0);
    }

    #[test]
    fn small_radius_is_totally_geodesic() {
        let m = emb();
        let th = enumerate_ball(presets::h(), 4, BallOptions::default()).unwrap();
        let tg = enumerate_ball(presets::g(), 4, BallOptions::default()).unwrap();
        let c = check_totally_geodesic(&m, &th, &tg, 4, 100_000).unwrap();
        assert!(c.report.passed(), "{}", c.report);
        let tt = presets::h().evaluate_str("tτ").unwrap().0;
        assert_eq!(c.first_exception, Some((tt, "sts".to_string())));
        assert!(c.literal_exceptions > 0);
        let tau = m.phi(&presets::h().evaluate_str("τ").unwrap().0);
        let geos: Vec<String> = tg
            .all_geodesics(&tau, 10)
            .unwrap()
            .iter()
            .map(|w| presets::g().format_word(w))
            .collect();
        assert_eq!(geos, vec!["ss", "SS"]);
        assert!(matches!(
            check_totally_geodesic(&m, &th, &tg, 5, 10),
            Err(Error::OutOfRadius { .. })
        ));
    }

    #[test]
    fn refutes_over_g() {
        let m = emb();
        let g = presets::g();
        let th = enumerate_ball(presets::h(), 8, BallOptions::default()).unwrap();
        let tg = enumerate_ball(g, 8, BallOptions::default()).unwrap();
        let all = corpus::accept_all(g);
        let w = refute_on_subgroup(&m, &all, &th, PumpOptions::default()).unwrap();
        let RefutationWitness::PumpedNonGeodesic { ref pumped, pumped_length, .. } = w else {
            panic!("{w:?}");
        };
        assert_eq!(g.format_word(pumped), "xssxss");
        assert_eq!(pumped_length, 4);
        assert!(verify_witness(&w, &all, &tg, 1_000_000).unwrap().passed());

        let xyt = corpus::restricted(g, &["x", "X", "y", "Y", "t"]).unwrap();
        let w = refute_on_subgroup(&m, &xyt, &th, PumpOptions::default()).unwrap();
        assert_eq!(w.variant(), "UncoveredElement");
        assert!(verify_witness(&w, &xyt, &tg, 1_000_000).unwrap().passed());
    }

    proptest! {
        #[test]
        fn coherence(word in proptest::collection::vec(0usize..6, 0..24)) {
            let m = emb();
            let (h, g) = (presets::h(), presets::g());
            let (x, wh) = h.evaluate(&word);
            let sub = m.substitute_tau(&word);
            let (y, wg) = g.evaluate(&sub);
            prop_assert_eq!(m.phi(&x), y);
            prop_assert_eq!(wh, wg);
            prop_assert_eq!(m.pull_back(&sub), Some(word));
        }

        #[test]
        fn homomorphism(a in proptest::collection::vec(0usize..6, 0..12),
                        b in proptest::collection::vec(0usize..6, 0..12)) {
            let m = emb();
            let (h, g) = (presets::h(), presets::g());
            let (x, _) = h.evaluate(&a);
            let (y, _) = h.evaluate(&b);
            prop_assert_eq!(m.phi(&h.multiply(&x, &y)), g.multiply(&m.phi(&x), &m.phi(&y)));
        }
    }
}
