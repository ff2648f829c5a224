//! Bounded-radius audits of the length claims in `H`: the ε lower bounds,
//! the closed-form grid, and the star characterization.

use crate::error::{Error, Result};
use crate::geodesy::ball::LengthTable;
use crate::geodesy::formulas::{
    alternative_word, closed_form_length_h, family_a_element, family_a_word, family_b_element,
    star_word, Family, HLetters,
};
use crate::geodesy::star::match_star;
use crate::report::CheckReport;

fn need_radius(table: &LengthTable<'_>, needed: u32) -> Result<()> {
    if table.radius() < needed {
        return Err(Error::OutOfRadius {
            radius: table.radius(),
            suggested: needed,
        });
    }
    Ok(())
}

/// Checks, for every element of the ball: `ℓ >= |ε|`; parity `ℓ ≡ ε` on
/// `N`; `ℓ >= |ε|+2` off `⟨x,y⟩`; `ℓ >= |ε|+4` off `⟨x,y,t⟩`.
pub fn epsilon_audit(table: &LengthTable<'_>) -> Result<CheckReport> {
    let h = table.group();
    let xy = h.sublattice_membership(&["x", "y"])?;
    let xyt = h.sublattice_membership(&["x", "y", "t"])?;
    let e = h.quotient().identity();
    let mut report = CheckReport::new("epsilon-audit");
    let (mut in_n, mut off_xy, mut off_xyt, mut tight4) = (0usize, 0usize, 0usize, 0usize);
    for (g, len) in table.iter() {
        report.checked += 1;
        let eps = h.epsilon(&g)?;
        let len = len as i64;
        let abs = eps.abs();
        if len < abs {
            report.violation(format!("{g}: ℓ={len} < |ε|={abs}"));
        }
        if g.q != e {
            continue;
        }
        in_n += 1;
        if (len - eps).rem_euclid(2) != 0 {
            report.violation(format!("{g}: ℓ={len} and ε={eps} differ in parity"));
        }
        if xy.contains(&g)? {
            continue;
        }
        off_xy += 1;
        if len < abs + 2 {
            report.violation(format!("{g}: outside ⟨x,y⟩ but ℓ={len} < |ε|+2"));
        }
        if xyt.contains(&g)? {
            continue;
        }
        off_xyt += 1;
        if len < abs + 4 {
            report.violation(format!("{g}: outside ⟨x,y,t⟩ but ℓ={len} < |ε|+4"));
        }
        if len == abs + 4 {
            tight4 += 1;
        }
    }
    report.note(format!(
        "radius {}: {} elements, {in_n} in N, {off_xy} outside <x,y>, {off_xyt} outside <x,y,t> ({tight4} with ℓ = |ε|+4)",
        table.radius(),
        table.len()
    ));
    Ok(report)
}

#[derive(Clone, Copy, Debug)]
pub struct GridBounds {
    pub a_max: u32,
    pub b_max: u32,
    pub c_max: u32,
    pub d_max: u32,
    pub e_max: u32,
    pub f_max: u32,
}

impl GridBounds {
    /// Largest predicted length in the grid.
    pub fn required_radius(&self) -> u32 {
        let a = self.a_max + self.b_max + self.c_max + 2;
        let b = self.d_max + self.e_max + self.f_max + 4;
        a.max(b)
    }
}

/// Compares closed-form lengths with the table over the family A grid
/// `0<=a<=a_max, 0<=b<=b_max, 1<=c<=c_max` and the family B grid
/// `0<=d<=d_max, 1<=e<=e_max, 0<=f<=f_max`.
pub fn formula_grid(table: &LengthTable<'_>, bounds: GridBounds) -> Result<CheckReport> {
    need_radius(table, bounds.required_radius())?;
    let h = table.group();
    let l = HLetters::of(h)?;
    let mut report = CheckReport::new("formula-grid");
    for a in 0..=bounds.a_max {
        for b in 0..=bounds.b_max {
            for c in 1..=bounds.c_max {
                report.checked += 1;
                let g = family_a_element(h, a, b, c)?;
                let predicted = closed_form_length_h(Family::A { a, b, c })?;
                let actual = table.length(&g)?;
                if actual != predicted {
                    report.violation(format!("A({a},{b},{c}): ℓ={actual}, formula {predicted}"));
                }
                let (wg, ww) = h.evaluate(&family_a_word(&l, a, b, c));
                if wg != g || ww != predicted {
                    report.violation(format!("A({a},{b},{c}): witness word mismatch"));
                }
            }
        }
    }
    for d in 0..=bounds.d_max {
        for e in 1..=bounds.e_max {
            for f in 0..=bounds.f_max {
                report.checked += 1;
                let g = family_b_element(h, d, e, f)?;
                let predicted = closed_form_length_h(Family::B { d, e, f })?;
                let actual = table.length(&g)?;
                if actual != predicted {
                    report.violation(format!("B({d},{e},{f}): ℓ={actual}, formula {predicted}"));
                }
            }
        }
    }
    Ok(report)
}

/// For `0<=d<=d_max, 1<=e<=e_max, 0<=f<=f_max`: the star word is geodesic
/// iff `e > d`; when `e > d+1` every geodesic has the star shape with the
/// right exponents; when `e = d+1` the alternative word is a geodesic that
/// does not have the star shape.
///
/// A failure of the `e > d+1` clause is reported with a `theorem-violation`
/// prefix.
pub fn verify_star_characterization(
    table: &LengthTable<'_>,
    d_max: u32,
    e_max: u32,
    f_max: u32,
    geodesic_cap: usize,
) -> Result<CheckReport> {
    need_radius(table, d_max + e_max + f_max + 4)?;
    let h = table.group();
    let l = HLetters::of(h)?;
    let mut report = CheckReport::new("star-characterization");
    for d in 0..=d_max {
        for e in 1..=e_max {
            for f in 0..=f_max {
                report.checked += 1;
                let g = family_b_element(h, d, e, f)?;
                let len = table.length(&g)?;
                let star = star_word(&l, d, e, f);
                let (sg, sw) = h.evaluate(&star);
                if sg != g || sw != d + e + f + 4 {
                    report.violation(format!("({d},{e},{f}): star word does not realize the element"));
                }
                if (sw == len) != (e > d) {
                    report.violation(format!(
                        "({d},{e},{f}): star word weight {sw}, ℓ={len}, expected geodesic iff e>d"
                    ));
                }
                if e > d + 1 {
                    let geos = table.all_geodesics(&g, geodesic_cap)?;
                    for w in &geos {
                        let ok = match_star(&l, w).is_some_and(|s| {
                            s.e == e && s.flank_x(&l) == d as usize && s.flank_y(&l) == f as usize
                        });
                        if !ok {
                            report.violation(format!(
                                "theorem-violation ({d},{e},{f}): geodesic {} is not of star shape",
                                h.format_word(w)
                            ));
                        }
                    }
                }
                if e == d + 1 {
                    let alt = alternative_word(&l, e, f);
                    let (ag, aw) = h.evaluate(&alt);
                    if aw != 2 * e + f + 3 || aw != d + e + f + 4 {
                        report.violation(format!("({d},{e},{f}): alternative word weight {aw}"));
                    }
                    if ag != g {
                        report.violation(format!("({d},{e},{f}): alternative word evaluates elsewhere"));
                    }
                    if aw != len {
                        report.violation(format!("({d},{e},{f}): alternative word not geodesic (ℓ={len})"));
                    }
                    if match_star(&l, &alt).is_some() {
                        report.violation(format!("({d},{e},{f}): alternative word matches the star shape"));
                    }
                    let geos = table.all_geodesics(&g, geodesic_cap)?;
                    let starred = geos.iter().filter(|w| match_star(&l, w).is_some()).count();
                    report.note(format!(
                        "e=d+1 ({d},{e},{f}): {} geodesics, {starred} of star shape",
                        geos.len()
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesy::ball::{enumerate_ball, BallOptions};
    use crate::presets;

    #[test]
    fn epsilon_audit_small_ball() {
        let t = enumerate_ball(presets::h(), 7, BallOptions::default()).unwrap();
        let r = epsilon_audit(&t).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, t.len());
    }

    #[test]
    fn star_examples() {
        let h = presets::h();
        let t = enumerate_ball(h, 8, BallOptions::default()).unwrap();
        let l = HLetters::of(h).unwrap();
        assert_eq!(t.length(&family_b_element(h, 0, 1, 0).unwrap()), Ok(5));
        assert_eq!(h.word_weight(&star_word(&l, 1, 1, 0)), 6);
        assert_eq!(t.length(&family_b_element(h, 1, 1, 0).unwrap()), Ok(4));
        let alt = alternative_word(&l, 2, 1);
        assert_eq!(t.length(&h.evaluate(&alt).0), Ok(8));
        let r = verify_star_characterization(&t, 1, 2, 1, 10_000).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn small_table_is_rejected() {
        let t = enumerate_ball(presets::h(), 5, BallOptions::default()).unwrap();
        assert!(matches!(
            verify_star_characterization(&t, 1, 1, 0, 10),
            Err(Error::OutOfRadius { radius: 5, suggested: 6 })
        ));
    }
}
