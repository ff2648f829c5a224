//! Refutation witnesses, their text form, and independent re-verification.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geodesy::{closed_form_length_h, Family, LengthTable};
use crate::group::{GroupElement, LetterId, VAGroup};

use super::dfa::{excise, Dfa};
use super::search::{product_search, GeodesicPrefixOracle};

/// Where a length in a witness came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthSource {
    /// Looked up in an enumerated ball.
    Table,
    /// The family-B closed form in `H`.
    ClosedForm,
    /// The `H` closed form carried through the `τ = s²` embedding.
    Transported,
}

impl LengthSource {
    fn as_str(&self) -> &'static str {
        match self {
            LengthSource::Table => "table",
            LengthSource::ClosedForm => "closed-form",
            LengthSource::Transported => "transported",
        }
    }
}

/// Family-B parameters `x^d (x^τ)^e y^f` of a refutation target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TargetParams {
    pub d: u32,
    pub e: u32,
    pub f: u32,
}

impl TargetParams {
    pub fn closed_form(&self) -> Result<u32> {
        closed_form_length_h(Family::B {
            d: self.d,
            e: self.e,
            f: self.f,
        })
    }
}

/// One removed loop: `len` letters starting at `start`, returning to `state`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Excision {
    pub start: usize,
    pub len: usize,
    pub state: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationWitness {
    NonGeodesicAccepted {
        word: Vec<LetterId>,
        weight: u32,
        element: GroupElement,
        length: u32,
    },
    UncoveredElement {
        element: GroupElement,
        length: u32,
        /// Accepted words were searched up to this weight.
        radius: u32,
        target: Option<TargetParams>,
        length_source: LengthSource,
    },
    PumpedNonGeodesic {
        target: TargetParams,
        target_element: GroupElement,
        target_length: u32,
        original: Vec<LetterId>,
        excisions: Vec<Excision>,
        pumped: Vec<LetterId>,
        pumped_exponent: u32,
        pumped_weight: u32,
        pumped_element: GroupElement,
        pumped_length: u32,
        length_source: LengthSource,
        /// A word for the pumped element, strictly lighter than the pumped word.
        shorter: Vec<LetterId>,
    },
}

impl RefutationWitness {
    pub fn variant(&self) -> &'static str {
        match self {
            RefutationWitness::NonGeodesicAccepted { .. } => "NonGeodesicAccepted",
            RefutationWitness::UncoveredElement { .. } => "UncoveredElement",
            RefutationWitness::PumpedNonGeodesic { .. } => "PumpedNonGeodesic",
        }
    }

    /// Structured, byte-stable text block.
    pub fn to_text(&self, group: &VAGroup, label: &str) -> String {
        let w = |word: &[LetterId]| {
            let s = group.format_word(word);
            if s.is_empty() {
                "ε".to_string()
            } else {
                s
            }
        };
        let mut out = String::new();
        writeln!(out, "WITNESS {}", self.variant()).unwrap();
        writeln!(out, "group: {label}").unwrap();
        match self {
            RefutationWitness::NonGeodesicAccepted {
                word,
                weight,
                element,
                length,
            } => {
                writeln!(out, "word: {}", w(word)).unwrap();
                writeln!(out, "weight: {weight}").unwrap();
                writeln!(out, "element: {element}").unwrap();
                writeln!(out, "length: {length}").unwrap();
            }
            RefutationWitness::UncoveredElement {
                element,
                length,
                radius,
                target,
                length_source,
            } => {
                if let Some(t) = target {
                    writeln!(out, "target: d={} e={} f={}", t.d, t.e, t.f).unwrap();
                }
                writeln!(out, "element: {element}").unwrap();
                writeln!(out, "length: {length} ({})", length_source.as_str()).unwrap();
                writeln!(out, "searched-weight: {radius}").unwrap();
            }
            RefutationWitness::PumpedNonGeodesic {
                target,
                target_element,
                target_length,
                original,
                excisions,
                pumped,
                pumped_exponent,
                pumped_weight,
                pumped_element,
                pumped_length,
                length_source,
                shorter,
            } => {
                writeln!(out, "target: d={} e={} f={}", target.d, target.e, target.f).unwrap();
                writeln!(out, "target-element: {target_element}").unwrap();
                writeln!(out, "target-length: {target_length}").unwrap();
                writeln!(out, "original-word: {}", w(original)).unwrap();
                writeln!(out, "original-weight: {}", group.word_weight(original)).unwrap();
                for x in excisions {
                    writeln!(
                        out,
                        "excision: start={} length={} state={}",
                        x.start, x.len, x.state
                    )
                    .unwrap();
                }
                writeln!(out, "pumped-word: {}", w(pumped)).unwrap();
                writeln!(out, "pumped-exponent: {pumped_exponent}").unwrap();
                writeln!(out, "pumped-weight: {pumped_weight}").unwrap();
                writeln!(out, "pumped-element: {pumped_element}").unwrap();
                writeln!(
                    out,
                    "pumped-length: {pumped_length} ({})",
                    length_source.as_str()
                )
                .unwrap();
                writeln!(out, "shorter-word: {}", w(shorter)).unwrap();
                writeln!(out, "shorter-weight: {}", group.word_weight(shorter)).unwrap();
            }
        }
        writeln!(out, "END").unwrap();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        *self == Verdict::Pass
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Verdict::Fail(format!($($msg)+)));
        }
    };
}

/// Re-checks a witness from scratch: DFA membership by simulation, words by
/// evaluation, lengths by `table` (the ball of the DFA's own group), with the
/// closed form accepted only for family-B elements beyond the radius.
///
/// Returns `OutOfRadius` when an uncovered element lies beyond the table.
pub fn verify_witness(
    witness: &RefutationWitness,
    dfa: &Dfa,
    table: &LengthTable<'_>,
    max_nodes: usize,
) -> Result<Verdict> {
    let group = table.group();
    match witness {
        RefutationWitness::NonGeodesicAccepted {
            word,
            weight,
            element,
            length,
        } => {
            ensure!(dfa.accepts(word), "word is not accepted");
            let (g, w) = group.evaluate(word);
            ensure!(g == *element, "word evaluates to {g}, not {element}");
            ensure!(w == *weight, "word weight is {w}, not {weight}");
            let actual = table.length(element)?;
            ensure!(actual == *length, "true length is {actual}, not {length}");
            ensure!(actual < w, "word is geodesic");
            Ok(Verdict::Pass)
        }
        RefutationWitness::UncoveredElement {
            element,
            length,
            radius,
            target,
            ..
        } => {
            ensure!(radius >= length, "searched weight {radius} below length {length}");
            if table.radius() < *length {
                return Err(Error::OutOfRadius {
                    radius: table.radius(),
                    suggested: *length,
                });
            }
            let actual = table.length(element)?;
            ensure!(actual == *length, "true length is {actual}, not {length}");
            if let Some(t) = target {
                let cf = t.closed_form()?;
                ensure!(cf == actual, "closed form {cf} disagrees with table {actual}");
            }
            let oracle = GeodesicPrefixOracle {
                table,
                target: element.clone(),
                target_length: *length,
            };
            let found = product_search(dfa, &oracle, group.letters().len(), *length, max_nodes)?;
            match found {
                None => Ok(Verdict::Pass),
                Some(w) => Ok(Verdict::Fail(format!(
                    "accepted geodesic {} reaches the element",
                    group.format_word(&w)
                ))),
            }
        }
        RefutationWitness::PumpedNonGeodesic {
            target,
            target_element,
            target_length,
            original,
            excisions,
            pumped,
            pumped_exponent,
            pumped_weight,
            pumped_element,
            pumped_length,
            shorter,
            ..
        } => {
            ensure!(dfa.accepts(original), "original word is not accepted");
            let (g, w) = group.evaluate(original);
            ensure!(g == *target_element, "original word misses the target");
            ensure!(w == *target_length, "original weight {w} != {target_length}");
            match table.get(target_element) {
                Some(l) => ensure!(l == *target_length, "target length is {l}"),
                None => ensure!(
                    target.closed_form()? == *target_length,
                    "target length disagrees with the closed form"
                ),
            }
            let mut word = original.clone();
            for x in excisions {
                let run = dfa.run(&word);
                ensure!(run.accepted, "intermediate word rejected");
                ensure!(
                    x.len > 0
                        && x.start + x.len < run.trace.len()
                        && run.trace[x.start] == x.state
                        && run.trace[x.start + x.len] == x.state,
                    "excision {x:?} is not a loop"
                );
                word = excise(&word, x.start, x.len);
            }
            ensure!(word == *pumped, "excisions do not produce the pumped word");
            ensure!(dfa.accepts(pumped), "pumped word is not accepted");
            let (pg, pw) = group.evaluate(pumped);
            ensure!(pg == *pumped_element, "pumped word evaluates to {pg}");
            ensure!(pw == *pumped_weight, "pumped weight is {pw}");
            let (sg, sw) = group.evaluate(shorter);
            ensure!(sg == pg, "shorter word evaluates elsewhere");
            ensure!(sw < pw, "shorter word is not lighter ({sw} >= {pw})");
            match table.get(&pg) {
                Some(l) => ensure!(l == *pumped_length, "pumped length is {l}, not {pumped_length}"),
                None => {
                    let cf = TargetParams {
                        d: target.d,
                        e: *pumped_exponent,
                        f: target.f,
                    }
                    .closed_form()?;
                    ensure!(cf == *pumped_length, "pumped length disagrees with closed form {cf}");
                }
            }
            ensure!(*pumped_length <= sw, "claimed length exceeds the shorter word");
            ensure!(*pumped_length < pw, "pumped word is geodesic");
            Ok(Verdict::Pass)
        }
    }
}
