//! Partial DFAs over a group alphabet and their text format.
//!
//! ```text
//! # comment
//! states 2
//! start 0
//! accept 1
//! trans 0 x 0
//! trans 0 τ 1
//! ```
//!
//! A missing transition rejects immediately.

use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::group::{LetterId, VAGroup};

/// A DFA as read from text, before its symbols are bound to an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaSpec {
    pub states: usize,
    pub start: usize,
    pub accept: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

impl DfaSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut states = None;
        let mut start = None;
        let mut accept = Vec::new();
        let mut transitions = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| parse_err(line_no, format!("expected a state number, got {s:?}")))
            };
            match toks[0] {
                "states" if toks.len() == 2 => states = Some(num(toks[1])?),
                "start" if toks.len() == 2 => start = Some(num(toks[1])?),
                "accept" => {
                    for t in &toks[1..] {
                        accept.push(num(t)?);
                    }
                }
                "trans" if toks.len() == 4 => {
                    transitions.push((num(toks[1])?, toks[2].to_string(), num(toks[3])?))
                }
                _ => return Err(parse_err(line_no, format!("unrecognized line {line:?}"))),
            }
        }
        let states = states.ok_or_else(|| parse_err(1, "missing `states`"))?;
        let start = start.ok_or_else(|| parse_err(1, "missing `start`"))?;
        Ok(DfaSpec {
            states,
            start,
            accept,
            transitions,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "states {}", self.states).unwrap();
        writeln!(out, "start {}", self.start).unwrap();
        let acc: Vec<String> = self.accept.iter().map(|a| a.to_string()).collect();
        writeln!(out, "accept {}", acc.join(" ")).unwrap();
        for (from, sym, to) in &self.transitions {
            writeln!(out, "trans {from} {sym} {to}").unwrap();
        }
        out
    }
}

/// A DFA bound to a group's alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    start: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
    reachable: Vec<bool>,
    warnings: Vec<String>,
}

/// Outcome of running a word; `trace[i]` is the state after `i` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub accepted: bool,
    pub trace: Vec<usize>,
}

/// Binds `spec` to `group`'s alphabet, checking symbols, state ranges and
/// determinism, and computes reachability.
pub fn dfa_validate(spec: &DfaSpec, group: &VAGroup) -> Result<Dfa> {
    let n = spec.states;
    if n == 0 {
        return Err(Error::Dfa("a DFA needs at least one state".into()));
    }
    if spec.start >= n {
        return Err(Error::Dfa(format!("start state {} out of range", spec.start)));
    }
    let mut accepting = vec![false; n];
    for &a in &spec.accept {
        if a >= n {
            return Err(Error::Dfa(format!("accepting state {a} out of range")));
        }
        accepting[a] = true;
    }
    let letters = group.letters().len();
    let mut delta = vec![vec![None; letters]; n];
    for (from, sym, to) in &spec.transitions {
        let l = group
            .letter_id(sym)
            .ok_or_else(|| Error::SymbolMismatch(sym.clone()))?;
        if *from >= n || *to >= n {
            return Err(Error::Dfa(format!("transition {from} {sym} {to} out of range")));
        }
        match delta[*from][l] {
            Some(existing) if existing != *to => {
                return Err(Error::Dfa(format!(
                    "state {from} has two transitions on {sym}"
                )))
            }
            _ => delta[*from][l] = Some(*to),
        }
    }
    Ok(Dfa::from_parts(spec.start, accepting, delta))
}

impl Dfa {
    /// Builds directly from a transition table indexed by letter id.
    pub fn from_parts(start: usize, accepting: Vec<bool>, delta: Vec<Vec<Option<usize>>>) -> Self {
        let n = accepting.len();
        let mut reachable = vec![false; n];
        reachable[start] = true;
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for &t in delta[s].iter().flatten() {
                if !reachable[t] {
                    reachable[t] = true;
                    stack.push(t);
                }
            }
        }
        let warnings = (0..n)
            .filter(|&s| accepting[s] && !reachable[s])
            .map(|s| format!("accepting state {s} is unreachable"))
            .collect();
        Dfa {
            start,
            accepting,
            delta,
            reachable,
            warnings,
        }
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn step(&self, s: usize, l: LetterId) -> Option<usize> {
        self.delta[s][l]
    }

    pub fn reachable(&self) -> &[bool] {
        &self.reachable
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// States from which some accepting state can be reached.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut co = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for s in 0..n {
                if !co[s] && self.delta[s].iter().flatten().any(|&t| co[t]) {
                    co[s] = true;
                    changed = true;
                }
            }
        }
        co
    }

    pub fn run(&self, word: &[LetterId]) -> Run {
        let mut trace = Vec::with_capacity(word.len() + 1);
        let mut s = self.start;
        trace.push(s);
        for &l in word {
            match self.delta[s][l] {
                Some(t) => {
                    s = t;
                    trace.push(s);
                }
                None => {
                    return Run {
                        accepted: false,
                        trace,
                    }
                }
            }
        }
        Run {
            accepted: self.accepting[s],
            trace,
        }
    }

    pub fn accepts(&self, word: &[LetterId]) -> bool {
        self.run(word).accepted
    }

    /// Text form using `group`'s symbols.
    pub fn to_spec(&self, group: &VAGroup) -> DfaSpec {
        let mut transitions = Vec::new();
        for (s, row) in self.delta.iter().enumerate() {
            for (l, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    transitions.push((s, group.letter(l).symbol.clone(), *t));
                }
            }
        }
        DfaSpec {
            states: self.num_states(),
            start: self.start,
            accept: (0..self.num_states()).filter(|&s| self.accepting[s]).collect(),
            transitions,
        }
    }
}

/// Removes `word[start..start + len]`. Acceptance is preserved whenever the
/// run visits the same state before and after the removed span.
pub fn excise(word: &[LetterId], start: usize, len: usize) -> Vec<LetterId> {
    let mut out = word[..start].to_vec();
    out.extend_from_slice(&word[start + len..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use proptest::prelude::*;

    const STAR: &str = "
states 4
start 0
accept 3
trans 0 x 0
trans 0 y 0
trans 0 τ 1
trans 1 x 2
trans 2 x 2
trans 2 τ 3
trans 3 x 3
trans 3 y 3
";

    #[test]
    fn accept_all_is_valid() {
        let h = presets::h();
        let mut text = String::from("states 1\nstart 0\naccept 0\n");
        for l in h.letters() {
            text.push_str(&format!("trans 0 {} 0\n", l.symbol));
        }
        let dfa = dfa_validate(&DfaSpec::parse(&text).unwrap(), h).unwrap();
        assert_eq!(dfa.num_states(), 1);
        assert_eq!(h.letters().len(), 6);
        assert!(dfa.accepts(&h.parse_word("xXyYtτ").unwrap()));
        assert!(dfa.accepts(&[]));
    }

    #[test]
    fn unknown_symbol() {
        let spec = DfaSpec::parse("states 1\nstart 0\naccept 0\ntrans 0 z 0\n").unwrap();
        assert_eq!(
            dfa_validate(&spec, presets::h()),
            Err(Error::SymbolMismatch("z".into()))
        );
    }

    #[test]
    fn star_pattern_dfa() {
        let h = presets::h();
        let dfa = dfa_validate(&DfaSpec::parse(STAR).unwrap(), h).unwrap();
        assert_eq!(dfa.num_states(), 4);
        assert!(dfa.warnings().is_empty());
        let run = dfa.run(&h.parse_word("xτxxτy").unwrap());
        assert!(run.accepted);
        assert_eq!(run.trace, vec![0, 0, 1, 2, 2, 3, 3]);
        assert!(!dfa.accepts(&h.parse_word("xy").unwrap()));
        assert!(!dfa.accepts(&h.parse_word("ττ").unwrap()));
        let run = dfa.run(&h.parse_word("xtx").unwrap());
        assert!(!run.accepted);
        assert_eq!(run.trace, vec![0, 0]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            DfaSpec::parse("states 1\nstart 0\nbogus\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(DfaSpec::parse("start 0\n").is_err());
        let h = presets::h();
        let spec = DfaSpec::parse("states 1\nstart 0\naccept 0\ntrans 0 x 0\ntrans 0 x 1\n").unwrap();
        assert!(matches!(dfa_validate(&spec, h), Err(Error::Dfa(_))));
        let spec = DfaSpec::parse("states 2\nstart 0\naccept 1\n").unwrap();
        let dfa = dfa_validate(&spec, h).unwrap();
        assert_eq!(dfa.warnings().len(), 1);
    }

    #[test]
    fn text_round_trip() {
        let h = presets::h();
        let dfa = dfa_validate(&DfaSpec::parse(STAR).unwrap(), h).unwrap();
        let again = dfa_validate(&DfaSpec::parse(&dfa.to_spec(h).to_text()).unwrap(), h).unwrap();
        assert_eq!(dfa, again);
    }

    fn arb_dfa() -> impl Strategy<Value = Dfa> {
        (1usize..5).prop_flat_map(|n| {
            (
                proptest::collection::vec(proptest::option::weighted(0.8, 0..n), n * 3),
                proptest::collection::vec(any::<bool>(), n),
            )
                .prop_map(move |(flat, acc)| {
                    let delta = flat.chunks(3).map(|c| c.to_vec()).collect();
                    Dfa::from_parts(0, acc, delta)
                })
        })
    }

    proptest! {
        // pure automaton property, over a 3-letter alphabet
        #[test]
        fn loop_excision_preserves_acceptance(dfa in arb_dfa(),
                                              word in proptest::collection::vec(0usize..3, 0..16)) {
            let run = dfa.run(&word);
            prop_assume!(run.accepted);
            for i in 0..run.trace.len() {
                for j in i + 1..run.trace.len() {
                    if run.trace[i] == run.trace[j] {
                        let shorter = excise(&word, i, j - i);
                        prop_assert!(dfa.accepts(&shorter));
                    }
                }
            }
        }
    }
}
