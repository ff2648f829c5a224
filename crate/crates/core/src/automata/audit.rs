//! Bounded check that a DFA looks like a language of geodesics surjecting
//! onto the group: every accepted word up to a weight is geodesic, and every
//! element of the ball is reached by an accepted word of minimal weight.

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::geodesy::LengthTable;
use crate::group::{GroupElement, LetterId};

use super::dfa::Dfa;
use super::witness::{LengthSource, RefutationWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditOutcome {
    /// Both properties hold up to `radius`; `words` accepted words were checked.
    Pass { radius: u32, words: usize },
    Fail(RefutationWitness),
}

/// Enumerates accepted words of weight at most `radius` in order of weight,
/// then letter ids lexicographically, and returns the first non-geodesic one;
/// failing that, the first uncovered element in the table's sorted order.
pub fn bounded_language_audit(
    dfa: &Dfa,
    table: &LengthTable<'_>,
    radius: u32,
    max_words: usize,
) -> Result<AuditOutcome> {
    if table.radius() < radius {
        return Err(Error::OutOfRadius {
            radius: table.radius(),
            suggested: radius,
        });
    }
    let group = table.group();
    let letters = group.letters().len();
    let co = dfa.coreachable();

    // accepted words bucketed by weight; DFS in letter order keeps each bucket sorted
    let mut buckets: Vec<Vec<Vec<LetterId>>> = vec![Vec::new(); radius as usize + 1];
    let mut count = 0usize;
    let mut stack: Vec<(usize, u32, Vec<LetterId>)> = vec![(dfa.start(), 0, Vec::new())];
    while let Some((state, w, word)) = stack.pop() {
        if dfa.is_accepting(state) {
            count += 1;
            if count > max_words {
                return Err(Error::ResourceLimit(format!(
                    "more than {max_words} accepted words of weight <= {radius}"
                )));
            }
            buckets[w as usize].push(word.clone());
        }
        for l in (0..letters).rev() {
            let Some(next) = dfa.step(state, l) else {
                continue;
            };
            let nw = w + group.letter(l).weight;
            if nw > radius || !co[next] {
                continue;
            }
            let mut nword = word.clone();
            nword.push(l);
            stack.push((next, nw, nword));
        }
    }

    let mut covered: FxHashSet<GroupElement> = FxHashSet::default();
    for bucket in &mut buckets {
        bucket.sort();
        for word in bucket.iter() {
            let (g, weight) = group.evaluate(word);
            let length = table.length(&g)?;
            if length < weight {
                return Ok(AuditOutcome::Fail(RefutationWitness::NonGeodesicAccepted {
                    word: word.clone(),
                    weight,
                    element: g,
                    length,
                }));
            }
            covered.insert(g);
        }
    }
    for (g, length) in table.sorted_entries() {
        if length > radius {
            break;
        }
        if !covered.contains(&g) {
            return Ok(AuditOutcome::Fail(RefutationWitness::UncoveredElement {
                element: g,
                length,
                radius,
                target: None,
                length_source: LengthSource::Table,
            }));
        }
    }
    Ok(AuditOutcome::Pass {
        radius,
        words: count,
    })
}
