//! Weighted Cayley-graph balls by uniform-cost search.
//!
//! Letter weights are small positive integers, so the frontier is a bucket
//! queue indexed by cumulative weight. Elements are packed into `u128` keys
//! (quotient index in the high bits, offset coordinates below).

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::{GroupElement, LetterId, VAGroup};

#[derive(Clone, Copy, Debug)]
pub struct BallOptions {
    /// Abort with `ResourceLimit` past this many elements.
    pub max_elements: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            max_elements: 50_000_000,
        }
    }
}

/// Fixed-width packing of group elements into `u128` keys.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Packer {
    k: usize,
    bits: u32,
    offset: i64,
}

impl Packer {
    pub(crate) fn new(k: usize, quotient_order: usize) -> Result<Self> {
        let qbits = usize::BITS - quotient_order.saturating_sub(1).leading_zeros();
        let bits = if k == 0 {
            0
        } else {
            ((128 - qbits) as usize / k).min(48) as u32
        };
        if k > 0 && bits < 6 {
            return Err(Error::ResourceLimit(format!(
                "lattice rank {k} too large for packed element keys"
            )));
        }
        Ok(Packer {
            k,
            bits,
            offset: if k == 0 { 0 } else { 1i64 << (bits - 1) },
        })
    }

    pub(crate) fn pack(&self, coords: &[i64], q: usize) -> Result<u128> {
        let mut key = q as u128;
        for &c in coords {
            let shifted = c + self.offset;
            if shifted < 0 || shifted >= 2 * self.offset {
                return Err(Error::Overflow);
            }
            key = (key << self.bits) | shifted as u128;
        }
        Ok(key)
    }

    pub(crate) fn unpack(&self, mut key: u128, coords: &mut [i64]) -> usize {
        let mask = (1u128 << self.bits) - 1;
        for i in (0..self.k).rev() {
            coords[i] = (key & mask) as i64 - self.offset;
            key >>= self.bits;
        }
        key as usize
    }
}

/// Exact geodesic lengths of every element in a weighted ball.
#[derive(Clone, Debug)]
pub struct LengthTable<'g> {
    group: &'g VAGroup,
    radius: u32,
    packer: Packer,
    index: FxHashMap<u128, u32>,
    keys: Vec<u128>,
    lengths: Vec<u32>,
}

/// Uniform-cost search from the identity out to weighted `radius`.
pub fn enumerate_ball(group: &VAGroup, radius: u32, opts: BallOptions) -> Result<LengthTable<'_>> {
    let k = group.rank();
    let packer = Packer::new(k, group.quotient().order())?;
    let letters = group.letters();
    let qmul: Vec<Vec<usize>> = (0..group.quotient().order())
        .map(|q| {
            letters
                .iter()
                .map(|l| group.quotient().mul(q, l.image.q))
                .collect()
        })
        .collect();

    let mut table = LengthTable {
        group,
        radius,
        packer,
        index: FxHashMap::default(),
        keys: Vec::new(),
        lengths: Vec::new(),
    };
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); radius as usize + 1];
    let start = packer.pack(&vec![0; k], group.quotient().identity())?;
    table.insert(start, 0);
    buckets[0].push(0);

    let mut coords = vec![0i64; k];
    let mut next = vec![0i64; k];
    for d in 0..=radius {
        let bucket = std::mem::take(&mut buckets[d as usize]);
        for id in bucket {
            if table.lengths[id as usize] != d {
                continue;
            }
            let q = packer.unpack(table.keys[id as usize], &mut coords);
            for (l, letter) in letters.iter().enumerate() {
                let nd = d + letter.weight;
                if nd > radius {
                    continue;
                }
                let delta = group.letter_delta(q, l);
                for i in 0..k {
                    next[i] = coords[i] + delta[i];
                }
                let key = packer.pack(&next, qmul[q][l])?;
                match table.index.get(&key) {
                    Some(&other) => {
                        if nd < table.lengths[other as usize] {
                            table.lengths[other as usize] = nd;
                            buckets[nd as usize].push(other);
                        }
                    }
                    None => {
                        if table.keys.len() >= opts.max_elements {
                            return Err(Error::ResourceLimit(format!(
                                "ball of radius {radius} exceeds {} elements",
                                opts.max_elements
                            )));
                        }
                        let nid = table.insert(key, nd);
                        buckets[nd as usize].push(nid);
                    }
                }
            }
        }
    }
    Ok(table)
}

impl<'g> LengthTable<'g> {
    fn insert(&mut self, key: u128, len: u32) -> u32 {
        let id = self.keys.len() as u32;
        self.index.insert(key, id);
        self.keys.push(key);
        self.lengths.push(len);
        id
    }

    pub fn group(&self) -> &'g VAGroup {
        self.group
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub(crate) fn key(&self, g: &GroupElement) -> Option<u128> {
        self.packer.pack(&g.coords, g.q).ok()
    }

    pub(crate) fn length_by_key(&self, key: u128) -> Option<u32> {
        self.index.get(&key).map(|&id| self.lengths[id as usize])
    }

    /// Exact length if `g` lies in the ball.
    pub fn get(&self, g: &GroupElement) -> Option<u32> {
        self.key(g).and_then(|k| self.length_by_key(k))
    }

    /// Exact length, or `OutOfRadius` when `g` is not in the ball.
    pub fn length(&self, g: &GroupElement) -> Result<u32> {
        self.get(g).ok_or(Error::OutOfRadius {
            radius: self.radius,
            suggested: self.radius + self.group.max_weight(),
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.get(g).is_some()
    }

    fn element(&self, id: usize) -> GroupElement {
        let mut coords = vec![0; self.group.rank()];
        let q = self.packer.unpack(self.keys[id], &mut coords);
        GroupElement::new(coords, q)
    }

    /// Entries in discovery order.
    pub fn iter(&self) -> impl Iterator<Item = (GroupElement, u32)> + '_ {
        (0..self.keys.len()).map(move |i| (self.element(i), self.lengths[i]))
    }

    /// Entries sorted by `(length, quotient, coords)`.
    pub fn sorted_entries(&self) -> Vec<(GroupElement, u32)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|(a, la), (b, lb)| (la, a.q, &a.coords).cmp(&(lb, b.q, &b.coords)));
        v
    }

    /// Letters `l` with `ℓ(g l⁻¹) + weight(l) = ℓ(g)`, paired with `g l⁻¹`.
    pub fn predecessors(&self, g: &GroupElement) -> Result<Vec<(LetterId, GroupElement)>> {
        let len = self.length(g)?;
        let mut out = Vec::new();
        for (l, letter) in self.group.letters().iter().enumerate() {
            if letter.weight > len {
                continue;
            }
            let prev = self.group.multiply_letter(g, letter.inverse);
            if self.get(&prev) == Some(len - letter.weight) {
                out.push((l, prev));
            }
        }
        Ok(out)
    }

    /// Every word of weight `ℓ(g)` evaluating to `g`, lexicographic by
    /// letter index. Fails with `ResourceLimit` past `cap` words.
    pub fn all_geodesics(&self, g: &GroupElement, cap: usize) -> Result<Vec<Vec<LetterId>>> {
        let mut memo: FxHashMap<u128, Vec<Vec<LetterId>>> = FxHashMap::default();
        let mut out = self.geodesics_rec(g, cap, &mut memo)?;
        out.sort();
        Ok(out)
    }

    fn geodesics_rec(
        &self,
        g: &GroupElement,
        cap: usize,
        memo: &mut FxHashMap<u128, Vec<Vec<LetterId>>>,
    ) -> Result<Vec<Vec<LetterId>>> {
        let key = self.key(g).ok_or(Error::Overflow)?;
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let len = self.length(g)?;
        let mut out: Vec<Vec<LetterId>> = Vec::new();
        if len == 0 {
            out.push(Vec::new());
        } else {
            for (l, prev) in self.predecessors(g)? {
                for mut w in self.geodesics_rec(&prev, cap, memo)? {
                    w.push(l);
                    out.push(w);
                    if out.len() > cap {
                        return Err(Error::ResourceLimit(format!(
                            "more than {cap} geodesics"
                        )));
                    }
                }
            }
        }
        memo.insert(key, out.clone());
        Ok(out)
    }

    /// `c_n = #{g : ℓ(g) = n}` for `0 <= n <= radius`.
    pub fn growth_coefficients(&self) -> Vec<u64> {
        let mut c = vec![0u64; self.radius as usize + 1];
        for &l in &self.lengths {
            c[l as usize] += 1;
        }
        c
    }
}
