//! The rings `Z_n[ε]` (ε² = 0) and `Z_n[χ]` (χ² = χ) and their affine
//! symmetries `e^{u+vτ}(c+dτ)`.
//!
//! A value `a + bτ` reads as "cantus firmus `a`, interval `b`". The flavor is
//! a runtime tag so the model engine is written once for both rings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{check_modulus, units, Residue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// τ² = 0, the dual numbers.
    Nilpotent,
    /// τ² = τ, isomorphic to `Z_n × Z_n`.
    Idempotent,
}

impl Flavor {
    pub fn symbol(self) -> &'static str {
        match self {
            Flavor::Nilpotent => "e",
            Flavor::Idempotent => "x",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Nilpotent => "nilpotent",
            Flavor::Idempotent => "idempotent",
        }
    }

    fn check(self, other: Flavor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FlavorMismatch {
                left: self,
                right: other,
            })
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `base + delta·τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualNumber {
    base: Residue,
    delta: Residue,
    flavor: Flavor,
}

impl DualNumber {
    pub fn new(base: Residue, delta: Residue, flavor: Flavor) -> Result<Self> {
        base.same_modulus(delta)?;
        Ok(DualNumber {
            base,
            delta,
            flavor,
        })
    }

    pub fn from_ints(base: i64, delta: i64, n: u32, flavor: Flavor) -> Result<Self> {
        Self::new(Residue::new(base, n)?, Residue::new(delta, n)?, flavor)
    }

    pub(crate) fn raw(base: u32, delta: u32, n: u32, flavor: Flavor) -> Self {
        DualNumber {
            base: Residue::reduce(base as i64, n),
            delta: Residue::reduce(delta as i64, n),
            flavor,
        }
    }

    pub fn base(self) -> Residue {
        self.base
    }

    pub fn delta(self) -> Residue {
        self.delta
    }

    pub fn flavor(self) -> Flavor {
        self.flavor
    }

    pub fn modulus(self) -> u32 {
        self.base.modulus()
    }

    fn compatible(self, other: DualNumber) -> Result<()> {
        self.flavor.check(other.flavor)?;
        self.base.same_modulus(other.base)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: DualNumber) -> Result<DualNumber> {
        self.compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: DualNumber) -> Result<DualNumber> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(self, other: DualNumber) -> DualNumber {
        DualNumber {
            base: self.base.add(other.base),
            delta: self.delta.add(other.delta),
            flavor: self.flavor,
        }
    }

    pub(crate) fn mul_unchecked(self, other: DualNumber) -> DualNumber {
        let cross = self.base.mul(other.delta).add(other.base.mul(self.delta));
        let delta = match self.flavor {
            Flavor::Nilpotent => cross,
            Flavor::Idempotent => cross.add(self.delta.mul(other.delta)),
        };
        DualNumber {
            base: self.base.mul(other.base),
            delta,
            flavor: self.flavor,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> DualNumber {
        DualNumber {
            base: self.base.neg(),
            delta: self.delta.neg(),
            flavor: self.flavor,
        }
    }

    /// Whether the element is invertible in its ring.
    pub fn is_unit(self) -> bool {
        match self.flavor {
            Flavor::Nilpotent => self.base.is_unit(),
            Flavor::Idempotent => self.base.is_unit() && self.base.add(self.delta).is_unit(),
        }
    }

    pub fn inverse(self) -> Result<DualNumber> {
        let not_unit = || Error::NotAUnit {
            value: self.base.value(),
            modulus: self.modulus(),
        };
        let ci = self.base.inverse().map_err(|_| not_unit())?;
        let delta = match self.flavor {
            // (c + dε)^-1 = c^-1 - d c^-2 ε
            Flavor::Nilpotent => self.delta.mul(ci).mul(ci).neg(),
            // through (c, c+d) in Z_n × Z_n: inverse is (c^-1, (c+d)^-1)
            Flavor::Idempotent => {
                let si = self.base.add(self.delta).inverse().map_err(|_| not_unit())?;
                si.sub(ci)
            }
        };
        Ok(DualNumber {
            base: ci,
            delta,
            flavor: self.flavor,
        })
    }

    /// Index into `0..n²` used by [`DualSet`].
    pub(crate) fn index(self) -> usize {
        self.base.value() as usize * self.modulus() as usize + self.delta.value() as usize
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}{}", self.base, self.delta, self.flavor.symbol())
    }
}

/// Pair-to-interval transport `(c, d) -> (c, d - c)` from `Z_n × Z_n` to
/// `Z_n[χ]`. It is a ring isomorphism for the componentwise product.
pub fn transport_pair(first: Residue, second: Residue) -> Result<DualNumber> {
    first.same_modulus(second)?;
    Ok(DualNumber {
        base: first,
        delta: second.sub(first),
        flavor: Flavor::Idempotent,
    })
}

/// `e^{u+vτ}(c+dτ) : w -> (c+dτ) w + (u+vτ)`, with `c+dτ` a unit of the ring.
///
/// Ordered by `(u, v, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualSymmetry {
    u: Residue,
    v: Residue,
    c: Residue,
    d: Residue,
    flavor: Flavor,
}

impl DualSymmetry {
    pub fn new(u: Residue, v: Residue, c: Residue, d: Residue, flavor: Flavor) -> Result<Self> {
        u.same_modulus(v)?;
        u.same_modulus(c)?;
        u.same_modulus(d)?;
        let g = DualSymmetry { u, v, c, d, flavor };
        if !g.scale().is_unit() {
            let reason = match flavor {
                Flavor::Nilpotent => format!("c = {c} must be a unit"),
                Flavor::Idempotent => format!("c = {c} and c+d = {} must be units", c.add(d)),
            };
            return Err(Error::InvalidSymmetry { flavor, reason });
        }
        Ok(g)
    }

    pub fn from_ints(u: i64, v: i64, c: i64, d: i64, n: u32, flavor: Flavor) -> Result<Self> {
        Self::new(
            Residue::new(u, n)?,
            Residue::new(v, n)?,
            Residue::new(c, n)?,
            Residue::new(d, n)?,
            flavor,
        )
    }

    fn from_parts(translate: DualNumber, scale: DualNumber) -> Self {
        DualSymmetry {
            u: translate.base,
            v: translate.delta,
            c: scale.base,
            d: scale.delta,
            flavor: scale.flavor,
        }
    }

    pub fn identity(n: u32, flavor: Flavor) -> Self {
        DualSymmetry {
            u: Residue::zero(n),
            v: Residue::zero(n),
            c: Residue::one(n),
            d: Residue::zero(n),
            flavor,
        }
    }

    /// The translation `e^{z}` by a cantus firmus note.
    pub fn translation(z: Residue, flavor: Flavor) -> Self {
        let n = z.modulus();
        DualSymmetry {
            u: z,
            ..Self::identity(n, flavor)
        }
    }

    pub fn u(self) -> Residue {
        self.u
    }
    pub fn v(self) -> Residue {
        self.v
    }
    pub fn c(self) -> Residue {
        self.c
    }
    pub fn d(self) -> Residue {
        self.d
    }
    pub fn flavor(self) -> Flavor {
        self.flavor
    }
    pub fn modulus(self) -> u32 {
        self.c.modulus()
    }

    /// The multiplier acting on interval parts: `c` for ε, `c + d` for χ.
    pub fn interval_scale(self) -> Residue {
        match self.flavor {
            Flavor::Nilpotent => self.c,
            Flavor::Idempotent => self.c.add(self.d),
        }
    }

    pub fn translate(self) -> DualNumber {
        DualNumber {
            base: self.u,
            delta: self.v,
            flavor: self.flavor,
        }
    }

    pub fn scale(self) -> DualNumber {
        DualNumber {
            base: self.c,
            delta: self.d,
            flavor: self.flavor,
        }
    }

    pub fn apply(self, x: DualNumber) -> Result<DualNumber> {
        self.flavor.check(x.flavor)?;
        self.c.same_modulus(x.base)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(self, x: DualNumber) -> DualNumber {
        self.scale().mul_unchecked(x).add_unchecked(self.translate())
    }

    /// `self ∘ other`.
    pub fn compose(self, other: DualSymmetry) -> Result<DualSymmetry> {
        self.flavor.check(other.flavor)?;
        self.c.same_modulus(other.c)?;
        let scale = self.scale().mul_unchecked(other.scale());
        let translate = self
            .scale()
            .mul_unchecked(other.translate())
            .add_unchecked(self.translate());
        Ok(Self::from_parts(translate, scale))
    }

    pub fn invert(self) -> DualSymmetry {
        let inv = self
            .scale()
            .inverse()
            .expect("scale of a symmetry is a unit");
        let translate = inv.mul_unchecked(self.translate()).neg();
        Self::from_parts(translate, inv)
    }
}

impl fmt::Display for DualSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e^{{{}+{} t}}({}+{} t)[{}]",
            self.u,
            self.v,
            self.c,
            self.d,
            match self.flavor {
                Flavor::Nilpotent => "eps",
                Flavor::Idempotent => "chi",
            }
        )
    }
}

/// All symmetries of `Z_n[τ]`, sorted by `(u, v, c, d)`. With `zero_u` only
/// the subgroup `H` of symmetries `e^{vτ}(c+dτ)` fixing the fiber over 0.
pub fn enumerate_dual_symmetries(n: u32, flavor: Flavor, zero_u: bool) -> Result<Vec<DualSymmetry>> {
    check_modulus(n)?;
    let us = units(n)?;
    let mut out = Vec::new();
    let u_range: Vec<Residue> = if zero_u {
        vec![Residue::zero(n)]
    } else {
        Residue::all(n).collect()
    };
    for &u in &u_range {
        for v in Residue::all(n) {
            for &c in &us {
                for d in Residue::all(n) {
                    let g = DualSymmetry { u, v, c, d, flavor };
                    if g.scale().is_unit() {
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A subset of `Z_n[τ]`, stored as a bitset over the `n²` elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualSet {
    modulus: u32,
    flavor: Flavor,
    bits: Vec<u64>,
}

impl DualSet {
    pub fn empty(modulus: u32, flavor: Flavor) -> Self {
        let size = (modulus as usize).pow(2);
        DualSet {
            modulus,
            flavor,
            bits: vec![0; size.div_ceil(64)],
        }
    }

    /// `{ r + kτ : r ∈ Z_n, k ∈ intervals }`.
    pub fn over_all_fibers(intervals: &[Residue], flavor: Flavor) -> Self {
        let n = intervals.first().map_or(2, |r| r.modulus());
        let mut set = Self::empty(n, flavor);
        for base in Residue::all(n) {
            for &k in intervals {
                set.insert(DualNumber {
                    base,
                    delta: k,
                    flavor,
                });
            }
        }
        set
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn insert(&mut self, x: DualNumber) {
        let i = x.index();
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, x: DualNumber) -> bool {
        let i = x.index();
        x.modulus() == self.modulus && self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &DualSet) -> DualSet {
        DualSet {
            modulus: self.modulus,
            flavor: self.flavor,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union_with(&mut self, other: &DualSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    /// Elements in ascending `(base, delta)` order.
    pub fn iter(&self) -> impl Iterator<Item = DualNumber> + '_ {
        let n = self.modulus;
        (0..(n as usize).pow(2))
            .filter(move |&i| self.bits[i / 64] & (1 << (i % 64)) != 0)
            .map(move |i| DualNumber::raw(i as u32 / n, i as u32 % n, n, self.flavor))
    }

    /// The elements lying over cantus firmus `z`.
    pub fn fiber(&self, z: Residue) -> impl Iterator<Item = DualNumber> + '_ {
        self.iter().filter(move |x| x.base == z)
    }

    pub fn image(&self, g: DualSymmetry) -> DualSet {
        let mut out = DualSet::empty(self.modulus, self.flavor);
        for x in self.iter() {
            out.insert(g.apply_unchecked(x));
        }
        out
    }
}

impl FromIterator<DualNumber> for DualSet {
    /// Panics on an empty iterator, which carries no modulus.
    fn from_iter<I: IntoIterator<Item = DualNumber>>(iter: I) -> Self {
        let mut it = iter.into_iter().peekable();
        let first = *it.peek().expect("DualSet::from_iter needs at least one element");
        let mut set = DualSet::empty(first.modulus(), first.flavor);
        for x in it {
            set.insert(x);
        }
        set
    }
}
