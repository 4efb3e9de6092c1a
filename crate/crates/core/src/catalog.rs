//! The three ray catalogs: Peres' real rays, Penrose's Majorana pairs, and
//! the three-parameter family containing both.
//!
//! Peres entries use the code `2 ↦ √2` and a minus sign for negation;
//! Penrose entries are integer M-vectors that are unit vectors up to scale.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorana::{mpair_from_state, MPair, MVector, SpinState};
use crate::rays::Ray;
use crate::scalar::{ApproxComplex, ExactComplex, QRoot2, Scalar};

pub const CATALOG_SIZE: usize = 33;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RayClass {
    /// Rays 1–3.
    FaceAxes,
    /// Rays 4–9.
    EdgeAxes,
    /// Rays 10–21.
    DoubledEdges,
    /// Rays 22–33.
    FaceOppositeEdges,
}

impl RayClass {
    pub const ALL: [RayClass; 4] =
        [RayClass::FaceAxes, RayClass::EdgeAxes, RayClass::DoubledEdges, RayClass::FaceOppositeEdges];

    pub fn label(self) -> &'static str {
        match self {
            RayClass::FaceAxes => "face-axes",
            RayClass::EdgeAxes => "edge-axes",
            RayClass::DoubledEdges => "doubled-edges",
            RayClass::FaceOppositeEdges => "face-opposite-edges",
        }
    }

    pub fn members(self) -> std::ops::RangeInclusive<u8> {
        match self {
            RayClass::FaceAxes => 1..=3,
            RayClass::EdgeAxes => 4..=9,
            RayClass::DoubledEdges => 10..=21,
            RayClass::FaceOppositeEdges => 22..=33,
        }
    }
}

pub fn class_of(index: usize) -> Result<RayClass> {
    match index {
        1..=3 => Ok(RayClass::FaceAxes),
        4..=9 => Ok(RayClass::EdgeAxes),
        10..=21 => Ok(RayClass::DoubledEdges),
        22..=33 => Ok(RayClass::FaceOppositeEdges),
        _ => Err(Error::IndexOutOfRange(index)),
    }
}

/// Peres rays, component codes in `{0, ±1, ±2}` with `2` standing for √2.
#[rustfmt::skip]
pub const PERES_CODES: [[i8; 3]; CATALOG_SIZE] = [
    [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [0, 1, -1], [1, 0, 1],
    [1, 0, -1], [1, -1, 0], [1, 1, 0], [2, -1, 1], [2, 1, 1], [2, -1, -1],
    [2, 1, -1], [-1, 2, 1], [1, 2, 1], [-1, 2, -1], [1, 2, -1], [1, 1, 2],
    [-1, 1, 2], [1, -1, 2], [-1, -1, 2], [1, 0, 2], [-1, 2, 0], [1, 2, 0],
    [-1, 0, 2], [0, 1, 2], [2, -1, 0], [2, 1, 0], [0, -1, 2], [0, 2, 1],
    [2, 0, 1], [2, 0, -1], [0, 2, -1],
];

/// Penrose M-vector pairs, integer components.
#[rustfmt::skip]
pub const PENROSE_CODES: [([i8; 3], [i8; 3]); CATALOG_SIZE] = [
    ([1, 0, 0], [-1, 0, 0]),
    ([0, 1, 0], [0, -1, 0]),
    ([0, 0, 1], [0, 0, -1]),
    ([0, 1, 1], [0, -1, -1]),
    ([0, 1, -1], [0, -1, 1]),
    ([1, 0, 1], [-1, 0, -1]),
    ([1, 0, -1], [-1, 0, 1]),
    ([1, 1, 0], [-1, -1, 0]),
    ([1, -1, 0], [-1, 1, 0]),
    ([0, 1, 1], [0, 1, 1]),
    ([0, 1, -1], [0, 1, -1]),
    ([0, -1, 1], [0, -1, 1]),
    ([0, -1, -1], [0, -1, -1]),
    ([1, 0, 1], [1, 0, 1]),
    ([1, 0, -1], [1, 0, -1]),
    ([-1, 0, 1], [-1, 0, 1]),
    ([-1, 0, -1], [-1, 0, -1]),
    ([1, 1, 0], [1, 1, 0]),
    ([1, -1, 0], [1, -1, 0]),
    ([-1, 1, 0], [-1, 1, 0]),
    ([-1, -1, 0], [-1, -1, 0]),
    ([0, 1, 1], [0, 1, -1]),
    ([0, 1, 1], [0, -1, 1]),
    ([0, -1, -1], [0, 1, -1]),
    ([0, -1, -1], [0, -1, 1]),
    ([1, 0, 1], [1, 0, -1]),
    ([1, 0, 1], [-1, 0, 1]),
    ([-1, 0, -1], [1, 0, -1]),
    ([-1, 0, -1], [-1, 0, 1]),
    ([1, 1, 0], [1, -1, 0]),
    ([1, 1, 0], [-1, 1, 0]),
    ([-1, -1, 0], [1, -1, 0]),
    ([-1, -1, 0], [-1, 1, 0]),
];

fn peres_component(code: i8) -> ExactComplex {
    match code {
        2 => ExactComplex::sqrt2(),
        -2 => -ExactComplex::sqrt2(),
        n => ExactComplex::from_int(i64::from(n)),
    }
}

pub fn peres_rays() -> Vec<Ray<ExactComplex>> {
    PERES_CODES
        .iter()
        .enumerate()
        .map(|(i, code)| {
            Ray::new(code.map(peres_component)).expect("catalog rays are nonzero").with_index(i as u8 + 1)
        })
        .collect()
}

fn mvector(code: [i8; 3]) -> MVector<QRoot2> {
    MVector::new(code.map(|x| QRoot2::from_int(i64::from(x)))).expect("catalog M-vectors have norm 1 or sqrt2")
}

pub fn penrose_mpairs() -> Vec<MPair<QRoot2>> {
    PENROSE_CODES.iter().map(|&(a, b)| MPair::new(mvector(a), mvector(b))).collect()
}

/// Phases of the family parameters: `a = e^{iα}`, `b = e^{iβ}`, `c = √2·e^{iγ}`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct FamilyParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// The scalars `a, b, c` and the derived `k = −a·b*·c / c*`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyConstants<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub k: S,
}

impl<S: Scalar> FamilyConstants<S> {
    pub fn new(a: S, b: S, c: S) -> Result<Self> {
        let k = (-(a.clone() * b.conj() * c.clone())).checked_div(&c.conj())?;
        Ok(FamilyConstants { a, b, c, k })
    }
}

/// `e^{iθ}` when θ is a multiple of π/2 (within 1e-12).
fn exact_unit(theta: f64) -> Option<ExactComplex> {
    let quarter = (theta / FRAC_PI_2).round();
    if (theta - quarter * FRAC_PI_2).abs() > 1e-12 {
        return None;
    }
    Some(match (quarter as i64).rem_euclid(4) {
        0 => ExactComplex::one(),
        1 => ExactComplex::i(),
        2 => -ExactComplex::one(),
        _ => -ExactComplex::i(),
    })
}

impl FamilyParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        FamilyParams { alpha, beta, gamma }
    }

    /// `a = 1, b = 1, c = √2`.
    pub fn peres() -> Self {
        FamilyParams::new(0.0, 0.0, 0.0)
    }

    /// `a = −i, b = −1, c = −√2`.
    pub fn penrose() -> Self {
        FamilyParams::new(-FRAC_PI_2, PI, PI)
    }

    pub fn constants(&self) -> FamilyConstants<ApproxComplex> {
        FamilyConstants::new(
            ApproxComplex::from_polar(1.0, self.alpha),
            ApproxComplex::from_polar(1.0, self.beta),
            ApproxComplex::from_polar(SQRT_2, self.gamma),
        )
        .expect("|c| = sqrt2")
    }

    /// Exact constants when every phase is a multiple of π/2.
    pub fn exact_constants(&self) -> Option<FamilyConstants<ExactComplex>> {
        let a = exact_unit(self.alpha)?;
        let b = exact_unit(self.beta)?;
        let c = exact_unit(self.gamma)? * ExactComplex::sqrt2();
        FamilyConstants::new(a, b, c).ok()
    }
}

/// Builds the 33 family rays from `a, b, c`.
pub fn family_rays_with<S: Scalar>(fc: &FamilyConstants<S>) -> Vec<Ray<S>> {
    let (a, b, c, k) = (fc.a.clone(), fc.b.clone(), fc.c.clone(), fc.k.clone());
    let (ac, bc, cc, kc) = (a.conj(), b.conj(), c.conj(), k.conj());
    let o = S::one;
    let z = S::zero;
    let m = |x: S| -x;
    let entries: [[S; 3]; CATALOG_SIZE] = [
        [o(), z(), z()],
        [z(), o(), z()],
        [z(), z(), o()],
        [z(), o(), a.clone()],
        [z(), ac.clone(), m(o())],
        [o(), z(), b.clone()],
        [bc.clone(), z(), m(o())],
        [o(), k.clone(), z()],
        [kc.clone(), m(o()), z()],
        [ac.clone() * cc.clone(), m(ac.clone()), o()],
        [cc.clone(), o(), a.clone()],
        [m(cc.clone()), o(), a.clone()],
        [ac.clone() * cc.clone(), ac.clone(), m(o())],
        [m(bc.clone()), bc.clone() * c.clone(), o()],
        [o(), c.clone(), b.clone()],
        [o(), m(c.clone()), b.clone()],
        [bc.clone(), bc.clone() * c.clone(), m(o())],
        [m(kc.clone()), o(), b.clone() * cc.clone()],
        [o(), k.clone(), m(a.clone() * c.clone())],
        [o(), k.clone(), a.clone() * c.clone()],
        [kc.clone(), m(o()), b.clone() * cc.clone()],
        [o(), z(), a.clone() * c.clone()],
        [o(), m(c.clone()), z()],
        [o(), c.clone(), z()],
        [o(), z(), m(a.clone() * c.clone())],
        [z(), o(), b.clone() * cc.clone()],
        [m(cc.clone()), o(), z()],
        [cc.clone(), o(), z()],
        [z(), o(), m(b.clone() * cc.clone())],
        [z(), bc.clone() * c.clone(), o()],
        [ac.clone() * cc.clone(), z(), o()],
        [m(ac.clone() * cc.clone()), z(), o()],
        [z(), m(bc * c), o()],
    ];
    entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| Ray::new(e).expect("every family ray has a unit component").with_index(i as u8 + 1))
        .collect()
}

pub fn family_rays(p: &FamilyParams) -> Vec<Ray<ApproxComplex>> {
    family_rays_with(&p.constants())
}

/// Exact family rays, available when all phases are multiples of π/2.
pub fn family_rays_exact(p: &FamilyParams) -> Option<Vec<Ray<ExactComplex>>> {
    p.exact_constants().map(|fc| family_rays_with(&fc))
}

/// The rotation taking the Penrose specialization of the family into the
/// spin-z basis of Penrose's pairs: rows `(1,1,0), (0,0,√2), (−1,1,0)`
/// scaled by `1/√2` so that it is unitary.
pub fn recovery_rotation() -> [[ExactComplex; 3]; 3] {
    let h = ExactComplex::real(QRoot2::from_ratios(0, 1, 1, 2));
    let z = ExactComplex::zero;
    [
        [h.clone(), h.clone(), z()],
        [z(), z(), ExactComplex::one()],
        [-h.clone(), h, z()],
    ]
}

/// Family rays at the Penrose point after the recovery rotation, exactly.
pub fn penrose_from_family() -> Vec<Ray<ExactComplex>> {
    let rays = family_rays_exact(&FamilyParams::penrose()).expect("Penrose phases are multiples of pi/2");
    let r = recovery_rotation();
    rays.iter().map(|v| v.transform(&r).expect("rotation is invertible")).collect()
}

/// M-pairs extracted from [`penrose_from_family`], read as spin-z components.
pub fn penrose_recovered_mpairs() -> Vec<MPair<f64>> {
    penrose_from_family()
        .iter()
        .map(|r| mpair_from_state(&SpinState::from_ray(&r.to_approx()).expect("nonzero")))
        .collect()
}
