//! Arithmetic in `Z_n` and the affine symmetry group `e^a b : r -> b r + a`.
//!
//! The unit group of `Z_12` is `{1, 5, 7, 11}`. Some presentations list 3 as
//! well, but `gcd(3, 12) = 3`, so multiplication by 3 is not invertible and
//! `e^a 3` is not a symmetry.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// An element of `Z_n`. Always stored canonically in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    /// Reduces `value` modulo `modulus`; negative inputs are accepted.
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self::reduce(value, modulus))
    }

    pub(crate) fn reduce(value: i64, modulus: u32) -> Self {
        Residue {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn zero(modulus: u32) -> Self {
        Residue { value: 0, modulus }
    }

    pub fn one(modulus: u32) -> Self {
        Residue::reduce(1, modulus)
    }

    pub fn is_unit(self) -> bool {
        self.value.gcd(&self.modulus) == 1
    }

    pub fn same_modulus(self, other: Residue) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        }
    }

    pub fn checked_add(self, other: Residue) -> Result<Residue> {
        self.same_modulus(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(self, other: Residue) -> Result<Residue> {
        self.same_modulus(other)?;
        Ok(self.mul(other))
    }

    // Unchecked variants for internal hot loops where moduli are known equal.
    pub(crate) fn add(self, other: Residue) -> Residue {
        Residue {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub(crate) fn mul(self, other: Residue) -> Residue {
        Residue {
            value: ((self.value as u64 * other.value as u64) % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Residue {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub(crate) fn sub(self, other: Residue) -> Residue {
        self.add(other.neg())
    }

    /// Multiplicative inverse, if the residue is a unit.
    pub fn inverse(self) -> Result<Residue> {
        let e = (self.value as i64).extended_gcd(&(self.modulus as i64));
        if e.gcd != 1 {
            return Err(Error::NotAUnit {
                value: self.value,
                modulus: self.modulus,
            });
        }
        Ok(Residue::reduce(e.x, self.modulus))
    }

    /// All residues of `Z_n` in ascending order.
    pub fn all(modulus: u32) -> impl Iterator<Item = Residue> {
        (0..modulus).map(move |value| Residue { value, modulus })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub(crate) fn check_modulus(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidModulus(n))
    } else {
        Ok(())
    }
}

/// The residues coprime to `n`, ascending.
pub fn units(n: u32) -> Result<Vec<Residue>> {
    check_modulus(n)?;
    Ok(Residue::all(n).filter(|r| r.is_unit()).collect())
}

/// The affine map `e^a b : r -> b r + a` with `b` a unit.
///
/// Ordered lexicographically by `(translate, scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSymmetry {
    translate: Residue,
    scale: Residue,
}

impl AffineSymmetry {
    pub fn new(translate: Residue, scale: Residue) -> Result<Self> {
        translate.same_modulus(scale)?;
        if !scale.is_unit() {
            return Err(Error::NotAUnit {
                value: scale.value,
                modulus: scale.modulus,
            });
        }
        Ok(AffineSymmetry { translate, scale })
    }

    /// Convenience constructor from integers.
    pub fn from_ints(a: i64, b: i64, n: u32) -> Result<Self> {
        Self::new(Residue::new(a, n)?, Residue::new(b, n)?)
    }

    pub fn identity(n: u32) -> Self {
        AffineSymmetry {
            translate: Residue::zero(n),
            scale: Residue::one(n),
        }
    }

    /// The translation `e^a`.
    pub fn translation(a: Residue) -> Self {
        AffineSymmetry {
            translate: a,
            scale: Residue::one(a.modulus),
        }
    }

    pub fn translate(self) -> Residue {
        self.translate
    }

    pub fn scale(self) -> Residue {
        self.scale
    }

    pub fn modulus(self) -> u32 {
        self.scale.modulus
    }

    pub fn apply(self, r: Residue) -> Result<Residue> {
        self.scale.same_modulus(r)?;
        Ok(self.apply_unchecked(r))
    }

    pub(crate) fn apply_unchecked(self, r: Residue) -> Residue {
        self.scale.mul(r).add(self.translate)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(self, other: AffineSymmetry) -> Result<AffineSymmetry> {
        self.scale.same_modulus(other.scale)?;
        // b1 (b2 r + a2) + a1
        Ok(AffineSymmetry {
            translate: self.scale.mul(other.translate).add(self.translate),
            scale: self.scale.mul(other.scale),
        })
    }

    pub fn invert(self) -> AffineSymmetry {
        let inv = self
            .scale
            .inverse()
            .expect("scale of a symmetry is a unit");
        AffineSymmetry {
            translate: inv.mul(self.translate).neg(),
            scale: inv,
        }
    }

    /// Image of a set of residues, sorted.
    pub fn image(self, set: &[Residue]) -> Vec<Residue> {
        let mut out: Vec<Residue> = set.iter().map(|&r| self.apply_unchecked(r)).collect();
        out.sort();
        out
    }
}

impl fmt::Display for AffineSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{}*{}", self.translate, self.scale)
    }
}

/// All `n * |units(n)|` affine symmetries of `Z_n`, sorted by `(a, b)`.
pub fn enumerate_symmetries(n: u32) -> Result<Vec<AffineSymmetry>> {
    let us = units(n)?;
    Ok(Residue::all(n)
        .flat_map(|a| {
            us.iter().map(move |&b| AffineSymmetry {
                translate: a,
                scale: b,
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Residue {
        Residue::new(v, 12).unwrap()
    }

    fn values(rs: &[Residue]) -> Vec<u32> {
        rs.iter().map(|r| r.value()).collect()
    }

    #[test]
    fn units_of_small_moduli() {
        assert_eq!(values(&units(12).unwrap()), vec![1, 5, 7, 11]);
        assert_eq!(values(&units(2).unwrap()), vec![1]);
        assert_eq!(values(&units(7).unwrap()), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(units(1), Err(Error::InvalidModulus(1)));
        assert_eq!(units(0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn three_is_not_a_unit_mod_12() {
        assert!(!r(3).is_unit());
        assert!(r(3).inverse().is_err());
        assert!(AffineSymmetry::from_ints(0, 3, 12).is_err());
    }

    #[test]
    fn negative_inputs_are_canonicalized() {
        assert_eq!(r(-1).value(), 11);
        assert_eq!(r(-13).value(), 11);
        assert_eq!(r(25).value(), 1);
    }

    #[test]
    fn apply_polarity() {
        let p = AffineSymmetry::from_ints(2, 5, 12).unwrap();
        assert_eq!(p.apply(r(0)).unwrap(), r(2));
        assert_eq!(p.apply(r(7)).unwrap(), r(1));
        let id = AffineSymmetry::identity(12);
        for x in Residue::all(12) {
            assert_eq!(id.apply(x).unwrap(), x);
        }
    }

    #[test]
    fn modulus_mismatch_is_rejected() {
        let p = AffineSymmetry::from_ints(2, 5, 12).unwrap();
        let x = Residue::new(1, 7).unwrap();
        assert_eq!(
            p.apply(x),
            Err(Error::ModulusMismatch { left: 12, right: 7 })
        );
        let q = AffineSymmetry::identity(7);
        assert!(p.compose(q).is_err());
    }

    #[test]
    fn polarity_is_an_involution() {
        let p = AffineSymmetry::from_ints(2, 5, 12).unwrap();
        assert_eq!(p.compose(p).unwrap(), AffineSymmetry::identity(12));
    }

    #[test]
    fn translation_inverse() {
        let t = AffineSymmetry::from_ints(1, 1, 12).unwrap();
        assert_eq!(t.invert(), AffineSymmetry::from_ints(11, 1, 12).unwrap());
    }

    #[test]
    fn group_axioms_exhaustive_mod_12() {
        let all = enumerate_symmetries(12).unwrap();
        assert_eq!(all.len(), 48);
        let id = AffineSymmetry::identity(12);
        assert!(all.contains(&id));
        for &s in &all {
            assert_eq!(s.invert().compose(s).unwrap(), id);
            assert_eq!(s.compose(s.invert()).unwrap(), id);
            for &t in &all {
                let st = s.compose(t).unwrap();
                assert!(all.binary_search(&st).is_ok());
                for x in Residue::all(12) {
                    assert_eq!(
                        st.apply(x).unwrap(),
                        s.apply(t.apply(x).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_is_sorted() {
        let all = enumerate_symmetries(10).unwrap();
        assert_eq!(all.len(), 40);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
