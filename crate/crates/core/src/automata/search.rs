//! Weight-ordered search over `(DFA state, prefix node)` pairs for an
//! accepted word reaching a target.
//!
//! The prefix oracle decides which prefixes may still extend to an accepted
//! geodesic for the target; different oracles give the refutation search
//! (two-sided interval pruning) and the independent re-check used when
//! verifying witnesses (prefix geodesy plus the ε bound).

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::geodesy::LengthTable;
use crate::group::{GroupElement, LetterId, VAGroup};

use super::dfa::Dfa;

pub trait PrefixOracle {
    type Node: Clone + Eq + Hash;

    fn start(&self) -> Self::Node;

    /// Weight of the prefix that produced `node`.
    fn weight(&self, node: &Self::Node) -> u32;

    /// Extension by one letter, or `None` when pruned.
    fn step(&self, node: &Self::Node, letter: LetterId) -> Option<Self::Node>;

    fn is_target(&self, node: &Self::Node) -> bool;
}

/// First accepted word (by weight, then discovery order) whose node is a
/// target. Fails with `ResourceLimit` past `max_nodes` product nodes.
pub fn product_search<O: PrefixOracle>(
    dfa: &Dfa,
    oracle: &O,
    letters: usize,
    max_weight: u32,
    max_nodes: usize,
) -> Result<Option<Vec<LetterId>>> {
    let co = dfa.coreachable();
    if !co[dfa.start()] {
        return Ok(None);
    }
    let mut nodes: Vec<(usize, O::Node, Option<(usize, LetterId)>)> = Vec::new();
    let mut seen: FxHashMap<(usize, O::Node), usize> = FxHashMap::default();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_weight as usize + 1];
    let start = oracle.start();
    seen.insert((dfa.start(), start.clone()), 0);
    nodes.push((dfa.start(), start, None));
    buckets[0].push(0);

    let rebuild = |nodes: &[(usize, O::Node, Option<(usize, LetterId)>)], mut id: usize| {
        let mut word = Vec::new();
        while let Some((parent, l)) = nodes[id].2 {
            word.push(l);
            id = parent;
        }
        word.reverse();
        word
    };

    for w in 0..=max_weight as usize {
        let bucket = std::mem::take(&mut buckets[w]);
        for id in bucket {
            let (state, node) = (nodes[id].0, nodes[id].1.clone());
            if dfa.is_accepting(state) && oracle.is_target(&node) {
                return Ok(Some(rebuild(&nodes, id)));
            }
            for l in 0..letters {
                let Some(next_state) = dfa.step(state, l) else {
                    continue;
                };
                if !co[next_state] {
                    continue;
                }
                let Some(next) = oracle.step(&node, l) else {
                    continue;
                };
                let nw = oracle.weight(&next);
                if nw > max_weight {
                    continue;
                }
                let key = (next_state, next.clone());
                if seen.contains_key(&key) {
                    continue;
                }
                if nodes.len() >= max_nodes {
                    return Err(Error::ResourceLimit(format!(
                        "product search exceeded {max_nodes} nodes"
                    )));
                }
                seen.insert(key, nodes.len());
                buckets[nw as usize].push(nodes.len());
                nodes.push((next_state, next, Some((id, l))));
            }
        }
    }
    Ok(None)
}

/// Prefixes that are geodesic and stay geodesic towards the target:
/// `ℓ(p) = weight(p)` and `ℓ(p⁻¹ g) = L - weight(p)`.
pub struct IntervalOracle<'a, 'g> {
    pub table: &'a LengthTable<'g>,
    pub target: GroupElement,
    pub target_length: u32,
}

impl PrefixOracle for IntervalOracle<'_, '_> {
    type Node = (GroupElement, u32);

    fn start(&self) -> Self::Node {
        (self.table.group().identity(), 0)
    }

    fn weight(&self, node: &Self::Node) -> u32 {
        node.1
    }

    fn step(&self, (g, w): &Self::Node, l: LetterId) -> Option<Self::Node> {
        let group = self.table.group();
        let nw = w + group.letter(l).weight;
        if nw > self.target_length {
            return None;
        }
        let next = group.multiply_letter(g, l);
        if self.table.get(&next)? != nw {
            return None;
        }
        let rest = group.multiply(&group.invert(&next), &self.target);
        if self.table.get(&rest)? != self.target_length - nw {
            return None;
        }
        Some((next, nw))
    }

    fn is_target(&self, (g, w): &Self::Node) -> bool {
        *w == self.target_length && *g == self.target
    }
}

/// Prefixes that are geodesic (`ℓ(p) = weight(p)`) and, when the group
/// carries ε, satisfy `|ε(p⁻¹ g)| <= L - weight(p)`. Does not consult the
/// distance to the target through the table.
pub struct GeodesicPrefixOracle<'a, 'g> {
    pub table: &'a LengthTable<'g>,
    pub target: GroupElement,
    pub target_length: u32,
}

impl PrefixOracle for GeodesicPrefixOracle<'_, '_> {
    type Node = (GroupElement, u32);

    fn start(&self) -> Self::Node {
        (self.table.group().identity(), 0)
    }

    fn weight(&self, node: &Self::Node) -> u32 {
        node.1
    }

    fn step(&self, (g, w): &Self::Node, l: LetterId) -> Option<Self::Node> {
        let group: &VAGroup = self.table.group();
        let nw = w + group.letter(l).weight;
        if nw > self.target_length {
            return None;
        }
        let next = group.multiply_letter(g, l);
        if self.table.get(&next)? != nw {
            return None;
        }
        let rest = group.multiply(&group.invert(&next), &self.target);
        if let Ok(eps) = group.epsilon(&rest) {
            if eps.unsigned_abs() > (self.target_length - nw) as u64 {
                return None;
            }
        }
        Some((next, nw))
    }

    fn is_target(&self, (g, w): &Self::Node) -> bool {
        *w == self.target_length && *g == self.target
    }
}
