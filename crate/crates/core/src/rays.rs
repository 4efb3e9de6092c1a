//! Projective rays in complex 3-space.
//!
//! Components are stored exactly as given, without normalization. The inner
//! product is conjugate-linear in its first argument; every quantity derived
//! here depends only on magnitudes.

use crate::error::{Error, Result};
use crate::scalar::{ApproxComplex, Real, Scalar};

/// Normalized squared overlap `|⟨b|a⟩|² / (⟨a|a⟩⟨b|b⟩)`, always in `[0, 1]`.
pub type OverlapValue<S> = <S as Scalar>::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Ray<S> {
    c: [S; 3],
    index: Option<u8>,
}

impl<S: Scalar> Ray<S> {
    pub fn new(c: [S; 3]) -> Result<Self> {
        if c.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroRay);
        }
        Ok(Ray { c, index: None })
    }

    pub fn with_index(mut self, index: u8) -> Self {
        self.index = Some(index);
        self
    }

    pub fn components(&self) -> &[S; 3] {
        &self.c
    }

    pub fn index(&self) -> Option<u8> {
        self.index
    }

    /// `⟨self|other⟩ = Σ conj(selfᵢ)·otherᵢ`.
    pub fn inner(&self, other: &Ray<S>) -> S {
        self.c
            .iter()
            .zip(&other.c)
            .fold(S::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
    }

    pub fn norm_sqr(&self) -> S::Real {
        self.c
            .iter()
            .fold(<S::Real as Real>::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn overlap2(&self, other: &Ray<S>) -> OverlapValue<S> {
        self.inner(other).norm_sqr() / (self.norm_sqr() * other.norm_sqr())
    }

    /// Exact zero test on exact scalars; `overlap2 < tol²` on floats.
    pub fn is_orthogonal(&self, other: &Ray<S>, tol: f64) -> bool {
        if <S::Real as Real>::is_exact() {
            self.inner(other).is_zero()
        } else {
            self.overlap2(other).is_negligible(tol * tol)
        }
    }

    /// Projective equality: `overlap2 = 1` (within `tol` on floats).
    pub fn proportional(&self, other: &Ray<S>, tol: f64) -> bool {
        self.overlap2(other).close_to(&<S::Real as Real>::one(), tol)
    }

    /// `m · self`, keeping the catalog index.
    pub fn transform(&self, m: &[[S; 3]; 3]) -> Result<Self> {
        let c = std::array::from_fn(|r| {
            (0..3).fold(S::zero(), |acc, k| acc + m[r][k].clone() * self.c[k].clone())
        });
        Ok(Ray { c: Ray::new(c)?.c, index: self.index })
    }

    pub fn to_approx(&self) -> Ray<ApproxComplex> {
        Ray {
            c: std::array::from_fn(|i| self.c[i].to_approx()),
            index: self.index,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ExactComplex, QRoot2, DEFAULT_TOL};
    use proptest::prelude::*;

    fn exact(v: [i64; 3]) -> Ray<ExactComplex> {
        Ray::new(v.map(ExactComplex::from_int)).unwrap()
    }

    fn approx(v: [(f64, f64); 3]) -> Ray<ApproxComplex> {
        Ray::new(v.map(|(re, im)| ApproxComplex::new(re, im))).unwrap()
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(Ray::<ExactComplex>::new(std::array::from_fn(|_| ExactComplex::zero())), Err(Error::ZeroRay));
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(exact([1, 0, 0]).inner(&exact([0, 1, 0])), ExactComplex::zero());
        assert_eq!(exact([1, 0, 0]).inner(&exact([1, 0, 0])), ExactComplex::one());
        let r9 = exact([1, 1, 0]);
        let r14 = Ray::new([ExactComplex::from_int(-1), ExactComplex::sqrt2(), ExactComplex::one()]).unwrap();
        assert_eq!(r9.inner(&r14), ExactComplex::real(QRoot2::from_ratios(-1, 1, 1, 1)));
        // (6 − 4√2)/16 = ((2 − √2)/4)²
        assert_eq!(r9.overlap2(&r14), QRoot2::from_ratios(6, 16, -4, 16));
        assert!(!r9.is_orthogonal(&r14, DEFAULT_TOL));
    }

    #[test]
    fn conjugate_linear_in_first_argument() {
        let a = Ray::new([ExactComplex::i(), ExactComplex::zero(), ExactComplex::zero()]).unwrap();
        let b = exact([1, 0, 0]);
        assert_eq!(a.inner(&b), -ExactComplex::i());
    }

    #[test]
    fn proportional_examples() {
        assert!(exact([1, 1, 0]).proportional(&exact([-1, -1, 0]), 0.0));
        let phased = Ray::new([ExactComplex::i(), ExactComplex::i(), ExactComplex::zero()]).unwrap();
        assert!(exact([1, 1, 0]).proportional(&phased, 0.0));
        assert!(!exact([1, 1, 0]).proportional(&exact([1, -1, 0]), 0.0));
        assert_eq!(exact([2, 3, 5]).overlap2(&exact([2, 3, 5])), QRoot2::one());
    }

    fn arb_c() -> impl Strategy<Value = ApproxComplex> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| ApproxComplex::new(a, b))
    }

    fn arb_ray() -> impl Strategy<Value = Ray<ApproxComplex>> {
        [arb_c(), arb_c(), arb_c()]
            .prop_filter("nonzero", |c| c.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3)
            .prop_map(|c| Ray::new(c).unwrap())
    }

    proptest! {
        #[test]
        fn overlap_symmetric(a in arb_ray(), b in arb_ray()) {
            prop_assert!((a.overlap2(&b) - b.overlap2(&a)).abs() < 1e-12);
        }

        #[test]
        fn overlap_scale_invariant(a in arb_ray(), b in arb_ray(), s in arb_c(), t in arb_c()) {
            prop_assume!(s.norm() > 1e-2 && t.norm() > 1e-2);
            let sa = Ray::new(a.components().map(|z| z * s)).unwrap();
            let tb = Ray::new(b.components().map(|z| z * t)).unwrap();
            prop_assert!((a.overlap2(&b) - sa.overlap2(&tb)).abs() < 1e-10);
        }

        #[test]
        fn overlap_in_unit_interval(a in arb_ray(), b in arb_ray()) {
            let o = a.overlap2(&b);
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&o));
        }
    }

    #[test]
    fn approx_orthogonality_uses_squared_tolerance() {
        let a = approx([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let b = approx([(1e-10, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        assert!(a.is_orthogonal(&b, DEFAULT_TOL));
        let c = approx([(1e-8, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        assert!(!a.is_orthogonal(&c, DEFAULT_TOL));
    }
}
