//! Weighted geodesic machinery: ball enumeration, length lookup, geodesic
//! enumeration, closed-form lengths in `H`, and the audits built on them.

pub mod audit;
pub mod ball;
pub mod formulas;
pub mod star;

pub use audit::{epsilon_audit, formula_grid, verify_star_characterization, GridBounds};
pub use ball::{enumerate_ball, BallOptions, LengthTable};
pub use formulas::{
    alternative_word, closed_form_length_h, delta_shift, family_a_element, family_a_word,
    family_b_element, family_b_geodesic, star_word, Family, HLetters, MixedTuple,
};
pub use star::{match_star, StarDecomposition};
