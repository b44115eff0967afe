//! Differential complexes built from Lie algebras and their representations.

mod discrete;
mod ehrenfest;
mod general;
mod gl;
mod so;

pub use discrete::{
    antidifference, discrete_d, discrete_d_poly, discrete_poincare, discrete_system, eval_x, from_poly, split_one_form,
    to_poly, DiscreteVariant, Poly,
};
pub use ehrenfest::{aff1_complex, ehrenfest_complex};
pub use general::general_complex;
pub use gl::{
    cartan_involution, check_cartan_involution, gl_complex, gl_subcomplex, maps_ideal, transform_rules, GlPart,
    GlVariant,
};
pub use so::{det3, sl2_ghostless_check, sl2_ghostless_matrix, so_complex};

use crate::error::{Error, Result};
use crate::forms::{Form, Gen};
use crate::quantum::LieData;
use crate::rewrite::{check_d_compatibility, check_d_squared, check_local_confluence, ConfluenceReport, DCompatReport, RewriteSystem};
use crate::scalar::Scalar;

/// Names accepted by [`preset`].
pub const PRESETS: [&str; 14] = [
    "aff1",
    "general-sl2",
    "general-sl2-fin",
    "general-aff1",
    "ehrenfest2",
    "gl2-left",
    "gl2-right",
    "gl3-left",
    "gl3-right",
    "gl3-left-upper",
    "so3",
    "so4",
    "discrete-forward",
    "discrete-backward",
];

/// A fixed 2×2 Ehrenfest matrix for quick experiments.
pub fn ehrenfest_example() -> Vec<Vec<Scalar>> {
    vec![vec![Scalar::int(1), Scalar::int(-2)], vec![Scalar::frac(1, 2), Scalar::int(3)]]
}

pub fn preset(name: &str) -> Result<RewriteSystem> {
    let gl = |n, v| gl_complex(n, v);
    match name {
        "aff1" => Ok(aff1_complex()),
        "general-sl2" => general_complex(&LieData::sl2(), false),
        "general-sl2-fin" => general_complex(&LieData::sl2(), true),
        "general-aff1" => general_complex(&LieData::aff1(), false),
        "ehrenfest2" => ehrenfest_complex(&ehrenfest_example()),
        "gl2-left" => gl(2, GlVariant::Left),
        "gl2-right" => gl(2, GlVariant::Right),
        "gl3-left" => gl(3, GlVariant::Left),
        "gl3-right" => gl(3, GlVariant::Right),
        "gl3-left-upper" => gl_subcomplex(3, GlVariant::Left, GlPart::Upper),
        "so3" => so_complex(3),
        "so4" => so_complex(4),
        "discrete-forward" => Ok(discrete_system(DiscreteVariant::Forward)),
        "discrete-backward" => Ok(discrete_system(DiscreteVariant::Backward)),
        _ => Err(Error::Invalid(format!("unknown complex `{}`; known: {}", name, PRESETS.join(", ")))),
    }
}

#[derive(Clone, Debug)]
pub struct Audit {
    pub confluence: ConfluenceReport,
    pub d_compat: DCompatReport,
    pub d_squared: Vec<(Gen, Form)>,
}

impl Audit {
    pub fn is_ok(&self) -> bool {
        self.confluence.is_ok() && self.d_compat.is_ok() && self.d_squared.is_empty()
    }
}

/// Local confluence, `d`-compatibility of every rule and `d² = 0` on generators.
pub fn audit(sys: &RewriteSystem) -> Audit {
    Audit {
        confluence: check_local_confluence(sys, 3),
        d_compat: check_d_compatibility(sys),
        d_squared: check_d_squared(sys),
    }
}
