//! Loop-elimination refutation in `H`.
//!
//! For an `n`-state DFA the target is `x^n (x^τ)^{n+2}`, of length `2n+6`,
//! whose geodesics all have the form `w1 τ x^{n+2} τ w2`. Either the DFA
//! accepts none of them, or the accepted one has `n+3` states along its
//! `x`-run, and removing repeated-state loops leaves an accepted star word
//! with exponent at most `n`, which is not geodesic.

use crate::error::{Error, Result};
use crate::geodesy::{family_b_element, family_b_geodesic, match_star, HLetters, LengthTable};
use crate::group::LetterId;

use super::dfa::{excise, Dfa};
use super::search::{product_search, IntervalOracle};
use super::witness::{Excision, LengthSource, RefutationWitness, TargetParams};

#[derive(Clone, Copy, Debug)]
pub struct PumpOptions {
    pub max_nodes: usize,
}

impl Default for PumpOptions {
    fn default() -> Self {
        PumpOptions {
            max_nodes: 20_000_000,
        }
    }
}

/// Target exponents used against an `n`-state DFA.
pub fn target_for(states: usize) -> TargetParams {
    let n = states as u32;
    TargetParams {
        d: n,
        e: n + 2,
        f: 0,
    }
}

/// Removes the first repeated-state loop inside `word[run_start..run_start+run]`
/// until the run has at most `bound` letters. Every loop lies inside the run,
/// so the result is still accepted and the run stays contiguous.
pub fn pump_run(
    dfa: &Dfa,
    word: &[LetterId],
    run_start: usize,
    mut run: usize,
    bound: usize,
) -> (Vec<LetterId>, Vec<Excision>, usize) {
    let mut word = word.to_vec();
    let mut excisions = Vec::new();
    while run > bound {
        let trace = dfa.run(&word).trace;
        let mut first_seen = vec![None; dfa.num_states()];
        let mut cut = None;
        for pos in run_start..=run_start + run {
            let s = trace[pos];
            if let Some(i) = first_seen[s] {
                cut = Some((i, pos - i, s));
                break;
            }
            first_seen[s] = Some(pos);
        }
        let Some((start, len, state)) = cut else {
            break;
        };
        excisions.push(Excision { start, len, state });
        word = excise(&word, start, len);
        run -= len;
    }
    (word, excisions, run)
}

/// Produces a refutation witness for `dfa` over `H` using `table`, which must
/// reach radius `2n+6`.
///
/// An accepted geodesic of the target that is not of star shape with the
/// expected exponents contradicts the characterization of geodesics and is
/// reported as `TheoremViolation`.
pub fn pump_refute(
    dfa: &Dfa,
    table: &LengthTable<'_>,
    opts: PumpOptions,
) -> Result<RefutationWitness> {
    let h = table.group();
    let l = HLetters::of(h)?;
    let n = dfa.num_states();
    let target = target_for(n);
    let target_length = target.closed_form()?;
    if table.radius() < target_length {
        return Err(Error::ResourceLimit(format!(
            "a {n}-state DFA needs a ball of radius {target_length}, have {}",
            table.radius()
        )));
    }
    let target_element = family_b_element(h, target.d, target.e, target.f)?;
    let oracle = IntervalOracle {
        table,
        target: target_element.clone(),
        target_length,
    };
    let found = product_search(dfa, &oracle, h.letters().len(), target_length, opts.max_nodes)?;
    let Some(original) = found else {
        return Ok(RefutationWitness::UncoveredElement {
            element: target_element,
            length: target_length,
            radius: target_length,
            target: Some(target),
            length_source: LengthSource::Table,
        });
    };
    let star = match_star(&l, &original)
        .filter(|s| s.e == target.e && s.flank_x(&l) == target.d as usize && s.flank_y(&l) == 0)
        .ok_or_else(|| {
            Error::TheoremViolation(format!(
                "accepted geodesic {} of x^{} (x^τ)^{} is not of star shape",
                h.format_word(&original),
                target.d,
                target.e
            ))
        })?;
    let (pumped, excisions, run) =
        pump_run(dfa, &original, star.run_start(), star.e as usize, n);
    if run as u32 > target.d || run == 0 {
        return Err(Error::TheoremViolation(format!(
            "loop removal left an x-run of {run} letters"
        )));
    }
    let e = run as u32;
    let (pumped_element, pumped_weight) = h.evaluate(&pumped);
    let (pumped_length, length_source) = match table.get(&pumped_element) {
        Some(len) => (len, LengthSource::Table),
        None => (
            TargetParams { e, ..target }.closed_form()?,
            LengthSource::ClosedForm,
        ),
    };
    Ok(RefutationWitness::PumpedNonGeodesic {
        target,
        target_element,
        target_length,
        original,
        excisions,
        pumped,
        pumped_exponent: e,
        pumped_weight,
        pumped_element,
        pumped_length,
        length_source,
        shorter: family_b_geodesic(&l, target.d, e, target.f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::dfa::{dfa_validate, DfaSpec};
    use crate::automata::witness::verify_witness;
    use crate::geodesy::{enumerate_ball, BallOptions};
    use crate::presets;

    fn dfa(text: &str) -> Dfa {
        dfa_validate(&DfaSpec::parse(text).unwrap(), presets::h()).unwrap()
    }

    #[test]
    fn accept_all_is_pumped() {
        let h = presets::h();
        let t = enumerate_ball(h, 8, BallOptions::default()).unwrap();
        let mut text = String::from("states 1\nstart 0\naccept 0\n");
        for l in h.letters() {
            text.push_str(&format!("trans 0 {} 0\n", l.symbol));
        }
        let d = dfa(&text);
        let w = pump_refute(&d, &t, PumpOptions::default()).unwrap();
        let RefutationWitness::PumpedNonGeodesic {
            ref pumped,
            pumped_exponent,
            pumped_length,
            pumped_weight,
            ..
        } = w
        else {
            panic!("{w:?}");
        };
        assert_eq!(h.format_word(pumped), "xτxτ");
        assert_eq!((pumped_exponent, pumped_weight, pumped_length), (1, 6, 4));
        assert_eq!(verify_witness(&w, &d, &t, 1_000_000).unwrap().passed(), true);
    }

    #[test]
    fn xy_only_is_uncovered() {
        let t = enumerate_ball(presets::h(), 8, BallOptions::default()).unwrap();
        let d = dfa("states 1\nstart 0\naccept 0\ntrans 0 x 0\ntrans 0 y 0\n");
        let w = pump_refute(&d, &t, PumpOptions::default()).unwrap();
        assert_eq!(w.variant(), "UncoveredElement");
        assert!(verify_witness(&w, &d, &t, 1_000_000).unwrap().passed());
    }

    #[test]
    fn small_ball_is_a_resource_error() {
        let t = enumerate_ball(presets::h(), 7, BallOptions::default()).unwrap();
        let d = dfa("states 1\nstart 0\naccept 0\n");
        assert!(matches!(
            pump_refute(&d, &t, PumpOptions::default()),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn tampered_witness_fails() {
        let h = presets::h();
        let t = enumerate_ball(h, 8, BallOptions::default()).unwrap();
        let mut text = String::from("states 1\nstart 0\naccept 0\n");
        for l in h.letters() {
            text.push_str(&format!("trans 0 {} 0\n", l.symbol));
        }
        let d = dfa(&text);
        let mut w = pump_refute(&d, &t, PumpOptions::default()).unwrap();
        if let RefutationWitness::PumpedNonGeodesic { pumped_length, .. } = &mut w {
            *pumped_length = 6;
        }
        assert!(!verify_witness(&w, &d, &t, 1_000_000).unwrap().passed());
    }
}
