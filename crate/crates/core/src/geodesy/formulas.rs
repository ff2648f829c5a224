//! Closed-form lengths for the two positive families in `H`, the words that
//! realize them, and the δ-shift between them.
//!
//! Family A is `x^a y^b (y^t)^c` with `c > 0`; family B is
//! `x^d (x^τ)^e y^f` with `e > 0`.

use crate::error::{Error, Result};
use crate::group::{GroupElement, LetterId, VAGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A { a: u32, b: u32, c: u32 },
    B { d: u32, e: u32, f: u32 },
}

/// Predicted geodesic length in `H`.
pub fn closed_form_length_h(family: Family) -> Result<u32> {
    match family {
        Family::A { a, b, c } => {
            if c == 0 {
                return Err(Error::Domain("family A needs c > 0".into()));
            }
            Ok(a + b + c + 2)
        }
        Family::B { d, e, f } => {
            if e == 0 {
                return Err(Error::Domain("family B needs e > 0".into()));
            }
            Ok(if e <= d { d + e + f + 2 } else { d + e + f + 4 })
        }
    }
}

/// Letter ids of `H`'s alphabet, resolved by symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HLetters {
    pub x: LetterId,
    pub x_inv: LetterId,
    pub y: LetterId,
    pub y_inv: LetterId,
    pub t: LetterId,
    pub tau: LetterId,
}

impl HLetters {
    pub fn of(group: &VAGroup) -> Result<Self> {
        let id = |s: &str| {
            group
                .letter_id(s)
                .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
        };
        Ok(HLetters {
            x: id("x")?,
            x_inv: id("X")?,
            y: id("y")?,
            y_inv: id("Y")?,
            t: id("t")?,
            tau: id("τ")?,
        })
    }
}

fn repeat(out: &mut Vec<LetterId>, l: LetterId, n: u32) {
    out.extend(std::iter::repeat_n(l, n as usize));
}

/// `x^a y^b t y^c t`, weight `a+b+c+2`.
pub fn family_a_word(l: &HLetters, a: u32, b: u32, c: u32) -> Vec<LetterId> {
    let mut w = Vec::new();
    repeat(&mut w, l.x, a);
    repeat(&mut w, l.y, b);
    w.push(l.t);
    repeat(&mut w, l.y, c);
    w.push(l.t);
    w
}

/// The star word `x^d τ x^e τ y^f`, weight `d+e+f+4`.
pub fn star_word(l: &HLetters, d: u32, e: u32, f: u32) -> Vec<LetterId> {
    let mut w = Vec::new();
    repeat(&mut w, l.x, d);
    w.push(l.tau);
    repeat(&mut w, l.x, e);
    w.push(l.tau);
    repeat(&mut w, l.y, f);
    w
}

/// `x⁻¹ y^{f+e} t y^e t`, weight `2e+f+3`.
pub fn alternative_word(l: &HLetters, e: u32, f: u32) -> Vec<LetterId> {
    let mut w = vec![l.x_inv];
    repeat(&mut w, l.y, f + e);
    w.push(l.t);
    repeat(&mut w, l.y, e);
    w.push(l.t);
    w
}

/// A shortest known word for a family-B element: the star word when
/// `e > d`, otherwise the fully shifted family-A word.
pub fn family_b_geodesic(l: &HLetters, d: u32, e: u32, f: u32) -> Vec<LetterId> {
    if e > d {
        star_word(l, d, e, f)
    } else {
        family_a_word(l, d - e, f + e, e)
    }
}

/// `x^a y^b (y^t)^c` built directly on the lattice.
pub fn family_a_element(h: &VAGroup, a: u32, b: u32, c: u32) -> Result<GroupElement> {
    h.named_lattice_element(&[("x", a as i64), ("y", b as i64), ("y^t", c as i64)])
}

/// `x^d (x^τ)^e y^f` built directly on the lattice.
pub fn family_b_element(h: &VAGroup, d: u32, e: u32, f: u32) -> Result<GroupElement> {
    h.named_lattice_element(&[("x", d as i64), ("x^τ", e as i64), ("y", f as i64)])
}

/// Exponents of `x^p (x^τ)^q y^r (y^t)^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MixedTuple {
    pub x: u32,
    pub x_tau: u32,
    pub y: u32,
    pub y_t: u32,
}

impl MixedTuple {
    pub fn element(&self, h: &VAGroup) -> Result<GroupElement> {
        h.named_lattice_element(&[
            ("x", self.x as i64),
            ("x^τ", self.x_tau as i64),
            ("y", self.y as i64),
            ("y^t", self.y_t as i64),
        ])
    }
}

/// `x^d (x^τ)^e y^f = x^{d-δ} (x^τ)^{e-δ} y^{f+δ} (y^t)^δ`, checked by
/// evaluating both sides in `h`.
pub fn delta_shift(h: &VAGroup, d: u32, e: u32, f: u32, delta: u32) -> Result<MixedTuple> {
    if delta > d.min(e) {
        return Err(Error::Domain(format!(
            "δ = {delta} outside 0..={}",
            d.min(e)
        )));
    }
    let shifted = MixedTuple {
        x: d - delta,
        x_tau: e - delta,
        y: f + delta,
        y_t: delta,
    };
    let original = MixedTuple {
        x: d,
        x_tau: e,
        y: f,
        y_t: 0,
    };
    if shifted.element(h)? != original.element(h)? {
        return Err(Error::TheoremViolation(format!(
            "δ-shift ({d},{e},{f},{delta}) changes the element"
        )));
    }
    Ok(shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_length_h(Family::A { a: 0, b: 0, c: 1 }), Ok(3));
        assert_eq!(closed_form_length_h(Family::B { d: 3, e: 2, f: 0 }), Ok(7));
        assert_eq!(closed_form_length_h(Family::B { d: 1, e: 3, f: 2 }), Ok(10));
        assert!(matches!(
            closed_form_length_h(Family::A { a: 1, b: 1, c: 0 }),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            closed_form_length_h(Family::B { d: 1, e: 0, f: 1 }),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn words_realize_elements() {
        let h = presets::h();
        let l = HLetters::of(h).unwrap();
        for (a, b, c) in [(0, 0, 1), (2, 1, 3)] {
            let (g, w) = h.evaluate(&family_a_word(&l, a, b, c));
            assert_eq!(g, family_a_element(h, a, b, c).unwrap());
            assert_eq!(w, a + b + c + 2);
        }
        for (d, e, f) in [(0, 1, 0), (3, 2, 1), (1, 4, 2)] {
            let (g, w) = h.evaluate(&star_word(&l, d, e, f));
            assert_eq!(g, family_b_element(h, d, e, f).unwrap());
            assert_eq!(w, d + e + f + 4);
            let (g2, _) = h.evaluate(&family_b_geodesic(&l, d, e, f));
            assert_eq!(g2, g);
        }
        // alternative word when e = d + 1
        let (g, w) = h.evaluate(&alternative_word(&l, 2, 1));
        assert_eq!(g, family_b_element(h, 1, 2, 1).unwrap());
        assert_eq!(w, 8);
        assert_eq!(h.format_word(&alternative_word(&l, 2, 1)), "Xyyytyyt");
    }

    #[test]
    fn delta_shift_examples() {
        let h = presets::h();
        assert_eq!(
            delta_shift(h, 2, 1, 0, 1).unwrap(),
            MixedTuple { x: 1, x_tau: 0, y: 1, y_t: 1 }
        );
        assert_eq!(
            delta_shift(h, 2, 5, 1, 0).unwrap(),
            MixedTuple { x: 2, x_tau: 5, y: 1, y_t: 0 }
        );
        assert_eq!(
            delta_shift(h, 3, 3, 1, 3).unwrap(),
            MixedTuple { x: 0, x_tau: 0, y: 4, y_t: 3 }
        );
        assert!(matches!(delta_shift(h, 1, 3, 0, 2), Err(Error::Domain(_))));
    }
}
