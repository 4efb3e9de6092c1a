//! Majorana representation of spin-1 states.
//!
//! A spin-1 pure state is labeled by an unordered pair of directions
//! (M-vectors). Going from a pair to a state symmetrizes the product of the
//! two spin-1/2 spinors; going back solves the Majorana quadratic
//!
//! ```text
//! p(ζ) = c₊·ζ² − √2·c₀·ζ + c₋
//! ```
//!
//! and maps each root ζ to the direction whose stereographic coordinate,
//! projected from the −z pole, is ζ. A root at infinity is the −z direction.

use std::f64::consts::SQRT_2;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rays::Ray;
use crate::scalar::{ApproxComplex, Real};

/// A direction in real 3-space, stored unnormalized.
#[derive(Clone, Debug, PartialEq)]
pub struct MVector<T> {
    v: [T; 3],
    norm_sqr: T,
    norm: T,
}

impl<T: Real> MVector<T> {
    /// Fails on the zero vector, or on exact input whose length leaves Q(√2).
    pub fn new(v: [T; 3]) -> Result<Self> {
        let norm_sqr = dot(&v, &v);
        if norm_sqr == T::zero() {
            return Err(Error::ZeroRay);
        }
        let norm = norm_sqr.sqrt_checked().ok_or(Error::NormOutsideField)?;
        Ok(MVector { v, norm_sqr, norm })
    }

    pub fn components(&self) -> &[T; 3] {
        &self.v
    }

    pub fn norm_sqr(&self) -> &T {
        &self.norm_sqr
    }

    /// Dot product of the normalized vectors.
    pub fn unit_dot(&self, other: &MVector<T>) -> T {
        dot(&self.v, &other.v) / (self.norm.clone() * other.norm.clone())
    }

    pub fn unit(&self) -> [T; 3] {
        self.v.clone().map(|x| x / self.norm.clone())
    }

    /// `m · self` for an integer matrix.
    pub fn rotate(&self, m: &[[i64; 3]; 3]) -> Result<Self> {
        MVector::new(std::array::from_fn(|r| {
            (0..3).fold(T::zero(), |acc, k| match m[r][k] {
                0 => acc,
                1 => acc + self.v[k].clone(),
                -1 => acc - self.v[k].clone(),
                x => acc + T::from_i64(x) * self.v[k].clone(),
            })
        }))
    }

    /// Same direction: exact on exact scalars, per-component within `tol` otherwise.
    pub fn same_direction(&self, other: &MVector<T>, tol: f64) -> bool {
        self.unit().iter().zip(other.unit().iter()).all(|(a, b)| a.close_to(b, tol))
    }

    pub fn to_f64(&self) -> MVector<f64> {
        let v = self.v.clone().map(|x| x.to_f64());
        let norm_sqr = dot(&v, &v);
        MVector { v, norm_sqr, norm: norm_sqr.sqrt() }
    }
}

impl MVector<f64> {
    /// Euclidean distance between the normalized vectors.
    pub fn unit_distance(&self, other: &MVector<f64>) -> f64 {
        let (a, b) = (self.unit(), other.unit());
        (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt()
    }
}

fn dot<T: Real>(a: &[T; 3], b: &[T; 3]) -> T {
    (0..3).fold(T::zero(), |acc, i| acc + a[i].clone() * b[i].clone())
}

/// Unordered pair of M-vectors.
#[derive(Clone, Debug)]
pub struct MPair<T> {
    pub first: MVector<T>,
    pub second: MVector<T>,
}

impl<T: Real> MPair<T> {
    pub fn new(first: MVector<T>, second: MVector<T>) -> Self {
        MPair { first, second }
    }

    pub fn is_doubled(&self, tol: f64) -> bool {
        self.first.same_direction(&self.second, tol)
    }

    /// Order-insensitive equality of directions.
    pub fn matches(&self, other: &MPair<T>, tol: f64) -> bool {
        (self.first.same_direction(&other.first, tol) && self.second.same_direction(&other.second, tol))
            || (self.first.same_direction(&other.second, tol)
                && self.second.same_direction(&other.first, tol))
    }

    pub fn rotate(&self, m: &[[i64; 3]; 3]) -> Result<Self> {
        Ok(MPair { first: self.first.rotate(m)?, second: self.second.rotate(m)? })
    }

    pub fn to_f64(&self) -> MPair<f64> {
        MPair { first: self.first.to_f64(), second: self.second.to_f64() }
    }
}

impl MPair<f64> {
    /// Largest per-vector distance under the better of the two orderings.
    pub fn match_distance(&self, other: &MPair<f64>) -> f64 {
        let straight = self.first.unit_distance(&other.first).max(self.second.unit_distance(&other.second));
        let crossed = self.first.unit_distance(&other.second).max(self.second.unit_distance(&other.first));
        straight.min(crossed)
    }
}

impl<T: Real> PartialEq for MPair<T> {
    /// Exact unordered equality on exact scalars.
    fn eq(&self, other: &Self) -> bool {
        self.matches(other, 0.0)
    }
}

/// Components of a spin-1 state in the spin-z basis `(m = +1, 0, −1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinState {
    pub c: [ApproxComplex; 3],
}

impl SpinState {
    pub fn new(c: [ApproxComplex; 3]) -> Result<Self> {
        if c.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::DegenerateState);
        }
        Ok(SpinState { c })
    }

    pub fn from_ray(r: &Ray<ApproxComplex>) -> Result<Self> {
        SpinState::new(*r.components())
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> SpinState {
        let n = self.norm();
        SpinState { c: self.c.map(|z| z / n) }
    }

    pub fn as_ray(&self) -> Ray<ApproxComplex> {
        Ray::new(self.c).expect("spin states are nonzero")
    }

    /// `min_φ ‖û − e^{iφ}·v̂‖` over global phases, computed without the
    /// cancellation of `√(2 − 2|⟨u|v⟩|)`.
    pub fn projective_distance(&self, other: &SpinState) -> f64 {
        let u = self.normalized();
        let v = other.normalized();
        let ip: ApproxComplex = (0..3).map(|i| v.c[i].conj() * u.c[i]).sum();
        let phase = if ip.norm() == 0.0 { ApproxComplex::new(1.0, 0.0) } else { ip / ip.norm() };
        (0..3).map(|i| (u.c[i] - phase * v.c[i]).norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Spinor `(cos θ/2, e^{iφ} sin θ/2)` for the polar angles of `v`.
/// The −z direction takes φ = 0.
pub fn spinor_from_direction(v: &MVector<f64>) -> [ApproxComplex; 2] {
    let [x, y, z] = v.unit();
    let theta = z.clamp(-1.0, 1.0).acos();
    let phi = if x == 0.0 && y == 0.0 { 0.0 } else { y.atan2(x) };
    [
        ApproxComplex::new((theta / 2.0).cos(), 0.0),
        ApproxComplex::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// Symmetrized spinor product `(α₁α₂, (α₁β₂ + α₂β₁)/√2, β₁β₂)`, normalized.
pub fn state_from_mpair<T: Real>(p: &MPair<T>) -> Result<SpinState> {
    let [a1, b1] = spinor_from_direction(&p.first.to_f64());
    let [a2, b2] = spinor_from_direction(&p.second.to_f64());
    let s = SpinState::new([a1 * a2, (a1 * b2 + a2 * b1) / SQRT_2, b1 * b2])?;
    Ok(s.normalized())
}

/// Direction of the spinor `(α, β)`, i.e. of the root `ζ = β/α`.
fn direction_from_spinor(alpha: ApproxComplex, beta: ApproxComplex) -> MVector<f64> {
    let n = alpha.norm_sqr() + beta.norm_sqr();
    let xy = alpha.conj() * beta * 2.0 / n;
    let z = (alpha.norm_sqr() - beta.norm_sqr()) / n;
    MVector::new([xy.re, xy.im, z]).expect("unit direction")
}

/// Roots of `a·ζ² + b·ζ + c` as homogeneous pairs `(den, num)` with
/// `ζ = num/den`; `den = 0` is the root at infinity.
fn quadratic_roots(
    a: ApproxComplex,
    b: ApproxComplex,
    c: ApproxComplex,
) -> [(ApproxComplex, ApproxComplex); 2] {
    let zero = ApproxComplex::new(0.0, 0.0);
    let one = ApproxComplex::new(1.0, 0.0);
    if a == zero {
        if b == zero {
            return [(zero, one), (zero, one)];
        }
        return [(zero, one), (b, -c)];
    }
    let mut sd = (b * b - a * c * 4.0).sqrt();
    if (b.conj() * sd).re < 0.0 {
        sd = -sd;
    }
    // q = −(b + sd)/2 has no cancellation; the roots are q/a and c/q.
    let q = -(b + sd) / 2.0;
    if q == zero {
        return [(one, zero), (one, zero)];
    }
    [(a, q), (q, c)]
}

/// M-vectors of `s` as unit directions.
pub fn mpair_from_state(s: &SpinState) -> MPair<f64> {
    let [cp, c0, cm] = s.normalized().c;
    let [r1, r2] = quadratic_roots(cp, -c0 * SQRT_2, cm);
    MPair::new(direction_from_spinor(r1.0, r1.1), direction_from_spinor(r2.0, r2.1))
}

/// Closed-form squared overlap of two spin-1 states given by their M-vectors:
///
/// ```text
/// 2[(1 + a₁·b₁)(1 + a₂·b₂) + (1 + a₁·b₂)(1 + a₂·b₁)] − (1 − a₁·a₂)(1 − b₁·b₂)
/// ─────────────────────────────────────────────────────────────────────────
///                      (3 + a₁·a₂)(3 + b₁·b₂)
/// ```
///
/// with all dot products taken between unit vectors. Exact for catalog
/// vectors, whose normalized dot products lie in Q(√2).
pub fn overlap2_mpairs<T: Real>(pa: &MPair<T>, pb: &MPair<T>) -> T {
    let one = T::one;
    let (a1, a2, b1, b2) = (&pa.first, &pa.second, &pb.first, &pb.second);
    let a1a2 = a1.unit_dot(a2);
    let b1b2 = b1.unit_dot(b2);
    let cross = (one() + a1.unit_dot(b1)) * (one() + a2.unit_dot(b2))
        + (one() + a1.unit_dot(b2)) * (one() + a2.unit_dot(b1));
    let numerator = T::from_i64(2) * cross - (one() - a1a2.clone()) * (one() - b1b2.clone());
    numerator / ((T::from_i64(3) + a1a2) * (T::from_i64(3) + b1b2))
}

/// Uniformly distributed unit vector.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> MVector<f64> {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = n2.sqrt();
            return MVector::new(v.map(|x| x / n)).expect("nonzero");
        }
    }
}

pub fn random_mpair<R: Rng + ?Sized>(rng: &mut R) -> MPair<f64> {
    MPair::new(random_direction(rng), random_direction(rng))
}

/// Random state with independent complex Gaussian-like components.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> SpinState {
    loop {
        let c: [ApproxComplex; 3] =
            std::array::from_fn(|_| ApproxComplex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        if let Ok(s) = SpinState::new(c) {
            if s.norm() > 1e-6 {
                return s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QRoot2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dir(v: [f64; 3]) -> MVector<f64> {
        MVector::new(v).unwrap()
    }

    fn exact_dir(v: [i64; 3]) -> MVector<QRoot2> {
        MVector::new(v.map(QRoot2::from_int)).unwrap()
    }

    fn c(re: f64, im: f64) -> ApproxComplex {
        ApproxComplex::new(re, im)
    }

    fn close(a: ApproxComplex, b: ApproxComplex) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn spinor_anchors() {
        let [a, b] = spinor_from_direction(&dir([0.0, 0.0, 1.0]));
        assert!(close(a, c(1.0, 0.0)) && close(b, c(0.0, 0.0)));
        let [a, b] = spinor_from_direction(&dir([0.0, 0.0, -1.0]));
        assert!(close(a, c(0.0, 0.0)) && close(b, c(1.0, 0.0)));
        // The sign of a zero x component must not change the south-pole phase.
        let [_, b] = spinor_from_direction(&dir([-0.0, 0.0, -1.0]));
        assert!(close(b, c(1.0, 0.0)));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [a, b] = spinor_from_direction(&dir([1.0, 0.0, 0.0]));
        assert!(close(a, c(h, 0.0)) && close(b, c(h, 0.0)));
    }

    #[test]
    fn state_anchors() {
        let up = dir([0.0, 0.0, 1.0]);
        let down = dir([0.0, 0.0, -1.0]);
        let s = state_from_mpair(&MPair::new(up.clone(), up.clone())).unwrap();
        assert!(s.projective_distance(&SpinState::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap()) < 1e-12);
        let s = state_from_mpair(&MPair::new(up, down)).unwrap();
        assert!(s.projective_distance(&SpinState::new([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap()) < 1e-12);
    }

    #[test]
    fn extraction_anchors() {
        let up = dir([0.0, 0.0, 1.0]);
        let down = dir([0.0, 0.0, -1.0]);
        let z = c(0.0, 0.0);
        let o = c(1.0, 0.0);
        let p = mpair_from_state(&SpinState::new([o, z, z]).unwrap());
        assert!(p.match_distance(&MPair::new(up.clone(), up.clone())) < 1e-12);
        let p = mpair_from_state(&SpinState::new([z, z, o]).unwrap());
        assert!(p.match_distance(&MPair::new(down.clone(), down.clone())) < 1e-12);
        let p = mpair_from_state(&SpinState::new([z, o, z]).unwrap());
        assert!(p.match_distance(&MPair::new(up, down)) < 1e-12);
    }

    #[test]
    fn roundtrip_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let s = random_state(&mut rng);
            let back = state_from_mpair(&mpair_from_state(&s)).unwrap();
            assert!(s.projective_distance(&back) < 1e-8);
        }
    }

    #[test]
    fn closed_form_identity_on_equal_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = random_mpair(&mut rng);
            assert!((overlap2_mpairs(&p, &p) - 1.0).abs() < 1e-12);
        }
        let p = MPair::new(exact_dir([0, 1, 1]), exact_dir([1, 0, 0]));
        assert_eq!(overlap2_mpairs(&p, &p), QRoot2::one());
    }

    #[test]
    fn closed_form_catalog_examples() {
        let p1 = MPair::new(exact_dir([1, 0, 0]), exact_dir([-1, 0, 0]));
        let p2 = MPair::new(exact_dir([0, 1, 0]), exact_dir([0, -1, 0]));
        assert_eq!(overlap2_mpairs(&p1, &p2), QRoot2::zero());
        let p9 = MPair::new(exact_dir([1, -1, 0]), exact_dir([-1, 1, 0]));
        let p14 = MPair::new(exact_dir([1, 0, 1]), exact_dir([1, 0, 1]));
        assert_eq!(overlap2_mpairs(&p9, &p14), QRoot2::from_ratios(6, 16, 0, 1));
    }

    #[test]
    fn closed_form_matches_explicit_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let pa = random_mpair(&mut rng);
            let pb = random_mpair(&mut rng);
            let explicit = state_from_mpair(&pa).unwrap().as_ray().overlap2(&state_from_mpair(&pb).unwrap().as_ray());
            assert!((overlap2_mpairs(&pa, &pb) - explicit).abs() < 1e-10);
            // swapping within a pair
            let swapped = MPair::new(pa.second.clone(), pa.first.clone());
            assert!((overlap2_mpairs(&swapped, &pb) - overlap2_mpairs(&pa, &pb)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_norm_outside_field_rejected() {
        assert_eq!(MVector::new([1, 1, 1].map(QRoot2::from_int)), Err(Error::NormOutsideField));
        assert_eq!(MVector::new([0, 0, 0].map(QRoot2::from_int)), Err(Error::ZeroRay));
    }

    #[test]
    fn unordered_pair_equality() {
        let a = MPair::new(exact_dir([0, 1, 1]), exact_dir([0, 1, -1]));
        let b = MPair::new(exact_dir([0, 2, -2]), exact_dir([0, 1, 1]));
        assert_eq!(a, b);
        assert!(!a.is_doubled(0.0));
    }
}
