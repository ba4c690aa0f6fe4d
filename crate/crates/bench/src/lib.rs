//! Shared fixtures for the criterion benchmarks.

use arithdyn_core::geometry::{conjugate, LinearAut, Morphism, ProjPoint};
use arithdyn_core::poly::parse_form;

pub fn vars3() -> Vec<String> {
    vec!["X".into(), "Y".into(), "Z".into()]
}

pub fn vars2() -> Vec<String> {
    vec!["X".into(), "Y".into()]
}

pub fn morphism(texts: &[&str], vars: &[String]) -> Morphism {
    Morphism::new(texts.iter().map(|t| parse_form(t, vars).unwrap()).collect()).unwrap()
}

/// The conjugated cube map used throughout the test corpus.
pub fn conjugated_cube_map() -> Morphism {
    let g = morphism(&["X^3", "Y^3", "Z^3"], &vars3());
    let sigma = LinearAut::from_i64(&[&[1, 1, 1], &[2, 1, 1], &[1, -1, 1]]).unwrap();
    conjugate(&g, &sigma).unwrap()
}

pub fn reference_start() -> ProjPoint {
    ProjPoint::from_i64(&[2, 3, -4]).unwrap()
}
