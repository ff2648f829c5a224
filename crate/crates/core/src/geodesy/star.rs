//! Recognition of the mandatory geodesic shape `w1 τ x^e τ w2`, where the
//! flanks are positive words in `x` and `y` and `e >= 1`.

use crate::geodesy::formulas::HLetters;
use crate::group::LetterId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDecomposition {
    pub w1: Vec<LetterId>,
    pub e: u32,
    pub w2: Vec<LetterId>,
}

impl StarDecomposition {
    pub fn reassemble(&self, l: &HLetters) -> Vec<LetterId> {
        let mut w = self.w1.clone();
        w.push(l.tau);
        w.extend(std::iter::repeat_n(l.x, self.e as usize));
        w.push(l.tau);
        w.extend_from_slice(&self.w2);
        w
    }

    /// Number of `x` letters across both flanks.
    pub fn flank_x(&self, l: &HLetters) -> usize {
        self.w1.iter().chain(&self.w2).filter(|&&c| c == l.x).count()
    }

    /// Number of `y` letters across both flanks.
    pub fn flank_y(&self, l: &HLetters) -> usize {
        self.w1.iter().chain(&self.w2).filter(|&&c| c == l.y).count()
    }

    /// Index of the first letter of the `x^e` run.
    pub fn run_start(&self) -> usize {
        self.w1.len() + 1
    }
}

pub fn match_star(l: &HLetters, word: &[LetterId]) -> Option<StarDecomposition> {
    let taus: Vec<usize> = word
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == l.tau)
        .map(|(i, _)| i)
        .collect();
    let [i, j] = taus[..] else { return None };
    let positive = |c: &LetterId| *c == l.x || *c == l.y;
    let (w1, mid, w2) = (&word[..i], &word[i + 1..j], &word[j + 1..]);
    if mid.is_empty() || !mid.iter().all(|&c| c == l.x) {
        return None;
    }
    if !w1.iter().all(positive) || !w2.iter().all(positive) {
        return None;
    }
    Some(StarDecomposition {
        w1: w1.to_vec(),
        e: mid.len() as u32,
        w2: w2.to_vec(),
    })
}
