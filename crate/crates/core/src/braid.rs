//! Lifting modular-group representations to the three-strand braid group.
//!
//! With `U` the image of σ₁σ₂σ₁ and `V` the image of σ₁σ₂, a representation of
//! B₃ on which the central element (σ₁σ₂)³ acts by `μ⁶` is
//!
//! ```text
//! σ₁ ↦ μ·V²·U,    σ₂ ↦ μ·U·V².
//! ```
//!
//! Then σ₁σ₂ ↦ μ²V and σ₁σ₂σ₁ ↦ μ³U, so the braid relation holds identically.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Matrix, Rational};
use crate::gamma0::{westbury_quiver, Gamma0Rep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B3Rep {
    pub s1: Matrix,
    pub s2: Matrix,
    pub mu: Rational,
}

impl B3Rep {
    pub fn new(s1: Matrix, s2: Matrix, mu: Rational) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::ZeroMu);
        }
        if !s1.is_square() || s1.shape() != s2.shape() {
            return Err(Error::ShapeMismatch(format!(
                "braid generators {}x{} and {}x{}",
                s1.rows(),
                s1.cols(),
                s2.rows(),
                s2.cols()
            )));
        }
        Ok(Self { s1, s2, mu })
    }

    pub fn n(&self) -> usize {
        self.s1.rows()
    }

    /// σ₁σ₂σ₁ = σ₂σ₁σ₂, compared exactly.
    pub fn check_braid(&self) -> bool {
        let lhs = &(&self.s1 * &self.s2) * &self.s1;
        let rhs = &(&self.s2 * &self.s1) * &self.s2;
        lhs == rhs
    }

    /// The scalar by which `(σ₁σ₂)³` acts.
    pub fn central_character(&self) -> Result<Cyclotomic> {
        (&self.s1 * &self.s2)
            .pow(3)
            .as_scalar()
            .ok_or(Error::NonScalarCentral)
    }

    /// `μ⁶`, the expected central character.
    pub fn expected_central(&self) -> Cyclotomic {
        Cyclotomic::from_rational(num_traits::pow(self.mu.clone(), 6))
    }

    /// Recovers `(U, V) = (μ⁻³ σ₁σ₂σ₁, μ⁻² σ₁σ₂)`.
    pub fn recover_gamma0(&self) -> Gamma0Rep {
        let inv = self.mu.recip();
        let s12 = &self.s1 * &self.s2;
        let v = s12.scale_rational(&(&inv * &inv));
        let u = (&s12 * &self.s1).scale_rational(&(&inv * &inv * &inv));
        Gamma0Rep::new_unchecked(u, v).expect("generators share a square shape")
    }

    /// Burnside test on the recovered `(U, V)`; they generate the same
    /// algebra as σ₁, σ₂.
    pub fn is_irreducible(&self) -> bool {
        self.recover_gamma0().is_irreducible()
    }
}

pub fn lift_to_b3(g: &Gamma0Rep, mu: &Rational) -> Result<B3Rep> {
    if mu.is_zero() {
        return Err(Error::ZeroMu);
    }
    let m = Cyclotomic::from_rational(mu.clone());
    let v2 = g.v().pow(2);
    let s1 = (&v2 * g.u()).scale(&m);
    let s2 = (g.u() * &v2).scale(&m);
    B3Rep::new(s1, s2, mu.clone())
}

/// `2 − χ(α, α)` on the five-vertex quiver: an upper bound for the number of
/// parameters of a family of irreducibles with dimension vector `α`.
pub fn admissible_bound(alpha: &[usize]) -> Result<i64> {
    Ok(2 - westbury_quiver().euler_form(alpha, alpha)?)
}

/// `⌊n/2⌋ + 1`.
pub fn k_default(n: usize) -> usize {
    n / 2 + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma0::{make_s, make_t};
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn trivial_lift() {
        let g = make_s(1, 1).unwrap().to_gamma0().unwrap();
        let r = lift_to_b3(&g, &q(2)).unwrap();
        assert_eq!(r.s1, Matrix::from_ints(&[&[2]]));
        assert_eq!(r.s2, Matrix::from_ints(&[&[2]]));
        assert_eq!(r.central_character().unwrap(), Cyclotomic::from_int(64));
        assert!(r.check_braid());
        assert_eq!(lift_to_b3(&g, &q(0)), Err(Error::ZeroMu));
    }

    #[test]
    fn t2_lift_braids() {
        let g = make_t(2, &q(2)).unwrap().to_gamma0().unwrap();
        let r = lift_to_b3(&g, &q(1)).unwrap();
        assert!(r.check_braid());
        assert_eq!(r.central_character().unwrap(), Cyclotomic::one());
        assert!(r.is_irreducible());
        let r = lift_to_b3(&g, &Rational::new(BigInt::from(-3), BigInt::from(2))).unwrap();
        assert!(r.check_braid());
        assert_eq!(r.central_character().unwrap(), r.expected_central());
        let back = r.recover_gamma0();
        assert_eq!(back, g);
    }

    #[test]
    fn perturbation_breaks_braid() {
        let g = make_t(2, &q(2)).unwrap().to_gamma0().unwrap();
        let mut r = lift_to_b3(&g, &q(1)).unwrap();
        r.s1[(0, 1)] += &Cyclotomic::one();
        assert!(!r.check_braid());
    }

    #[test]
    fn scalars_always_braid() {
        for t in [-3, 0, 1, 5] {
            let m = Matrix::from_ints(&[&[t]]);
            let r = B3Rep::new(m.clone(), m, q(1)).unwrap();
            assert!(r.check_braid());
        }
    }

    #[test]
    fn non_scalar_central_rejected() {
        let s1 = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        let s2 = Matrix::identity(2);
        let r = B3Rep::new(s1, s2, q(1)).unwrap();
        assert_eq!(r.central_character(), Err(Error::NonScalarCentral));
    }

    #[test]
    fn reducible_lift() {
        let g = make_s(1, 1)
            .unwrap()
            .direct_sum(&make_s(2, 1).unwrap())
            .to_gamma0()
            .unwrap();
        let r = lift_to_b3(&g, &q(1)).unwrap();
        assert!(r.check_braid());
        assert!(!r.is_irreducible());
    }

    #[test]
    fn sign_twist_changes_sigma_trace() {
        let g = make_t(2, &q(2)).unwrap().to_gamma0().unwrap();
        let plus = lift_to_b3(&g, &q(2)).unwrap();
        let minus = lift_to_b3(&g, &q(-2)).unwrap();
        assert_eq!(plus.central_character(), minus.central_character());
        let vvu = g.word(&"VVU".parse().unwrap()).trace();
        assert!(!vvu.is_zero());
        assert_ne!(plus.s1.trace(), minus.s1.trace());
    }

    #[test]
    fn bounds() {
        assert_eq!(admissible_bound(&[1, 1, 1, 0, 1]).unwrap(), 2);
        assert_eq!(admissible_bound(&[2, 2, 1, 1, 2]).unwrap(), 4);
        assert_eq!(admissible_bound(&[1, 0, 1, 0, 0]).unwrap(), 1);
        assert_eq!(k_default(1), 1);
        assert_eq!(k_default(2), 2);
        assert_eq!(k_default(4), 3);
        assert!(admissible_bound(&[1, 1]).is_err());
    }
}
