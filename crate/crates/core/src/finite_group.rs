//! Finite groups given by an explicit multiplication table.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity and inverses.
    ///
    /// `names` may be empty, in which case elements are named by index.
    pub fn from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::Presentation("quotient group has order 0".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Presentation(format!(
                    "multiplication table row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= m) {
                return Err(Error::Presentation(format!(
                    "multiplication table entry {bad} out of range"
                )));
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Presentation("multiplication table has no identity".into()))?;
        let mut inverses = Vec::with_capacity(m);
        for a in 0..m {
            let inv = (0..m)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Presentation(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Presentation(format!(
                            "multiplication table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let names = if names.is_empty() {
            (0..m).map(|i| i.to_string()).collect()
        } else if names.len() != m {
            return Err(Error::Presentation(format!(
                "{} element names given for a group of order {m}",
                names.len()
            )));
        } else {
            names
        };
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
            names,
        })
    }

    /// Direct product of cyclic groups; element index is mixed-radix with the
    /// last factor varying fastest.
    pub fn cyclic_product(orders: &[usize]) -> Self {
        let m: usize = orders.iter().product();
        let digits = |mut i: usize| {
            let mut d = vec![0; orders.len()];
            for k in (0..orders.len()).rev() {
                d[k] = i % orders[k];
                i /= orders[k];
            }
            d
        };
        let index = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (&x, &o)| acc * o + x);
        let table = (0..m)
            .map(|a| {
                let da = digits(a);
                (0..m)
                    .map(|b| {
                        let db = digits(b);
                        let sum: Vec<usize> = da
                            .iter()
                            .zip(&db)
                            .zip(orders)
                            .map(|((x, y), o)| (x + y) % o)
                            .collect();
                        index(&sum)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table, Vec::new()).expect("cyclic product is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic_product(&[])
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of `gens` under multiplication, in breadth-first discovery order.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.identity];
        seen[self.identity] = true;
        let mut i = 0;
        while i < out.len() {
            let a = out[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    out.push(b);
                }
            }
            i += 1;
        }
        out
    }
}
