//! Built-in groups `H` and `G`, compiled from the shipped spec files.

use std::sync::OnceLock;

use crate::error::Result;
use crate::group::VAGroup;
use crate::presentation::VAPresentation;

pub const H_SPEC: &str = include_str!("../presets/h.group");
pub const G_SPEC: &str = include_str!("../presets/g.group");

pub fn presentation_h() -> VAPresentation {
    VAPresentation::parse(H_SPEC).expect("built-in H spec parses")
}

pub fn presentation_g() -> VAPresentation {
    VAPresentation::parse(G_SPEC).expect("built-in G spec parses")
}

pub fn compile_h() -> Result<VAGroup> {
    VAGroup::compile(&presentation_h())
}

pub fn compile_g() -> Result<VAGroup> {
    VAGroup::compile(&presentation_g())
}

/// Shared compiled `H`.
pub fn h() -> &'static VAGroup {
    static H: OnceLock<VAGroup> = OnceLock::new();
    H.get_or_init(|| compile_h().expect("built-in H compiles"))
}

/// Shared compiled `G`.
pub fn g() -> &'static VAGroup {
    static G: OnceLock<VAGroup> = OnceLock::new();
    G.get_or_init(|| compile_g().expect("built-in G compiles"))
}
