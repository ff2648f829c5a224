//! Candidate DFAs: hand-built samples, seeded random automata, and loading
//! a directory of `.dfa` files.

use std::fs;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{LetterId, VAGroup};

use super::dfa::{dfa_validate, Dfa, DfaSpec};

fn id(group: &VAGroup, sym: &str) -> Result<LetterId> {
    group
        .letter_id(sym)
        .ok_or_else(|| Error::SymbolMismatch(sym.to_string()))
}

/// One accepting state looping on every letter.
pub fn accept_all(group: &VAGroup) -> Dfa {
    let n = group.letters().len();
    Dfa::from_parts(0, vec![true], vec![vec![Some(0); n]])
}

/// One accepting state looping on the given symbols only.
pub fn restricted(group: &VAGroup, symbols: &[&str]) -> Result<Dfa> {
    let mut row = vec![None; group.letters().len()];
    for s in symbols {
        row[id(group, s)?] = Some(0);
    }
    Ok(Dfa::from_parts(0, vec![true], vec![row]))
}

/// Words `w1 T x^e T w2` with `e >= 1` and `w1`, `w2` positive in `x`, `y`,
/// where `T` is the word `tau` (`τ` in `H`, `ss` in `G`).
pub fn star_pattern_via(group: &VAGroup, tau: &[&str]) -> Result<Dfa> {
    let x = id(group, "x")?;
    let y = id(group, "y")?;
    let tau: Vec<LetterId> = tau.iter().map(|s| id(group, s)).collect::<Result<_>>()?;
    let k = tau.len();
    let letters = group.letters().len();
    // 0: first flank; 1..k: inside the first T; k: before the run; k+1: in the
    // run; k+2..2k+1: inside the second T; 2k+1: last flank
    let n = 2 * k + 2;
    let mut delta = vec![vec![None; letters]; n];
    delta[0][x] = Some(0);
    delta[0][y] = Some(0);
    for (i, &l) in tau.iter().enumerate() {
        delta[i][l] = Some(i + 1);
        delta[k + 1 + i][l] = Some(k + 2 + i);
    }
    delta[k][x] = Some(k + 1);
    delta[k + 1][x] = Some(k + 1);
    delta[n - 1][x] = Some(n - 1);
    delta[n - 1][y] = Some(n - 1);
    let mut accepting = vec![false; n];
    accepting[n - 1] = true;
    Ok(Dfa::from_parts(0, accepting, delta))
}

/// The 4-state DFA of star-shaped words over `H`.
pub fn star_pattern(h: &VAGroup) -> Result<Dfa> {
    star_pattern_via(h, &["τ"])
}

/// Three states: `{x,y}* τ x* τ {x,y}*`.
pub fn loose_star(h: &VAGroup) -> Result<Dfa> {
    let (x, y, tau) = (id(h, "x")?, id(h, "y")?, id(h, "τ")?);
    let mut delta = vec![vec![None; h.letters().len()]; 3];
    delta[0][x] = Some(0);
    delta[0][y] = Some(0);
    delta[0][tau] = Some(1);
    delta[1][x] = Some(1);
    delta[1][tau] = Some(2);
    delta[2][x] = Some(2);
    delta[2][y] = Some(2);
    Ok(Dfa::from_parts(0, vec![false, false, true], delta))
}

/// `x^a y^b` with `a`, `b` signed: the shortlex normal forms of `⟨x,y⟩`.
pub fn xy_normal_forms(group: &VAGroup) -> Result<Dfa> {
    let (x, xi, y, yi) = (id(group, "x")?, id(group, "X")?, id(group, "y")?, id(group, "Y")?);
    let mut delta = vec![vec![None; group.letters().len()]; 5];
    for s in 0..3 {
        delta[s][y] = Some(3);
        delta[s][yi] = Some(4);
    }
    delta[0][x] = Some(1);
    delta[1][x] = Some(1);
    delta[0][xi] = Some(2);
    delta[2][xi] = Some(2);
    delta[3][y] = Some(3);
    delta[4][yi] = Some(4);
    Ok(Dfa::from_parts(0, vec![true; 5], delta))
}

/// A random partial DFA with `states` states: each transition is present
/// with probability `density`, and at least one state accepts.
pub fn random_dfa(group: &VAGroup, states: usize, density: f64, rng: &mut impl Rng) -> Dfa {
    let letters = group.letters().len();
    let delta = (0..states)
        .map(|_| {
            (0..letters)
                .map(|_| rng.random_bool(density).then(|| rng.random_range(0..states)))
                .collect()
        })
        .collect();
    let mut accepting: Vec<bool> = (0..states).map(|_| rng.random_bool(0.5)).collect();
    if !accepting.iter().any(|&a| a) {
        accepting[rng.random_range(0..states)] = true;
    }
    Dfa::from_parts(0, accepting, delta)
}

/// `count` random DFAs with 1 to `max_states` states from a fixed seed.
pub fn random_corpus(group: &VAGroup, seed: u64, count: usize, max_states: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let states = rng.random_range(1..=max_states);
            let density = rng.random_range(0.5..1.0);
            random_dfa(group, states, density, &mut rng)
        })
        .collect()
}

pub fn load_dfa(path: &Path, group: &VAGroup) -> Result<Dfa> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let spec = DfaSpec::parse(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })?;
    dfa_validate(&spec, group)
}

/// Every `*.dfa` file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path, group: &VAGroup) -> Result<Vec<(String, Dfa)>> {
    let io = |e: std::io::Error| Error::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.extension().is_some_and(|e| e == "dfa") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok((name, load_dfa(&p, group)?))
        })
        .collect()
}
