//! Consonance/dissonance dichotomies of `Z_n`, their polarities, the local
//! characterization of contrapuntal consonances, and polarization.

use std::collections::BTreeSet;

use crate::dual::{enumerate_dual_symmetries, DualNumber, DualSet, DualSymmetry, Flavor};
use crate::error::{Error, Result};
use crate::ring::{check_modulus, enumerate_symmetries, AffineSymmetry, Residue};

/// The classical consonances: unison, thirds, fifth, sixths.
pub const STANDARD_CONSONANCES: [u32; 6] = [0, 3, 4, 7, 8, 9];
/// Seconds, fourth, tritone, sevenths.
pub const STANDARD_DISSONANCES: [u32; 6] = [1, 2, 5, 6, 10, 11];

/// A partition `{K, D}` of `Z_n` into consonances and dissonances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dichotomy {
    modulus: u32,
    consonances: Vec<Residue>,
    dissonances: Vec<Residue>,
    polarities: Vec<AffineSymmetry>,
}

impl Dichotomy {
    /// Validates the partition and caches every polarity `p` with `p(K) = D`.
    pub fn new(n: u32, consonances: &[i64], dissonances: &[i64]) -> Result<Self> {
        check_modulus(n)?;
        let reduce = |xs: &[i64]| -> BTreeSet<Residue> {
            xs.iter().map(|&x| Residue::reduce(x, n)).collect()
        };
        let k = reduce(consonances);
        let d = reduce(dissonances);
        if k.len() != consonances.len() || d.len() != dissonances.len() {
            return Err(Error::InvalidDichotomy(
                "duplicate residues in K or D".into(),
            ));
        }
        if let Some(x) = k.intersection(&d).next() {
            return Err(Error::InvalidDichotomy(format!(
                "K and D must be disjoint ({x} is in both)"
            )));
        }
        if k.len() + d.len() != n as usize {
            let missing: Vec<String> = Residue::all(n)
                .filter(|r| !k.contains(r) && !d.contains(r))
                .map(|r| r.to_string())
                .collect();
            return Err(Error::InvalidDichotomy(format!(
                "K and D must cover Z_{n} (missing {})",
                missing.join(",")
            )));
        }
        if k.len() != d.len() {
            return Err(Error::InvalidDichotomy(format!(
                "|K| = |D| required, got {} and {}",
                k.len(),
                d.len()
            )));
        }
        let consonances: Vec<Residue> = k.into_iter().collect();
        let dissonances: Vec<Residue> = d.into_iter().collect();
        let polarities = polarity_search_sets(n, &consonances, &dissonances)?;
        Ok(Dichotomy {
            modulus: n,
            consonances,
            dissonances,
            polarities,
        })
    }

    /// `D` is taken as the complement of `K`.
    pub fn from_consonances(n: u32, consonances: &[i64]) -> Result<Self> {
        let k: BTreeSet<i64> = consonances.iter().map(|&x| x.rem_euclid(n.max(1) as i64)).collect();
        let d: Vec<i64> = (0..n as i64).filter(|x| !k.contains(x)).collect();
        Self::new(n, consonances, &d)
    }

    /// `K = {0,3,4,7,8,9}`, `D = {1,2,5,6,10,11}` in `Z_12`.
    pub fn standard() -> Self {
        let k: Vec<i64> = STANDARD_CONSONANCES.iter().map(|&x| x as i64).collect();
        let d: Vec<i64> = STANDARD_DISSONANCES.iter().map(|&x| x as i64).collect();
        Self::new(12, &k, &d).expect("standard dichotomy is valid")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn consonances(&self) -> &[Residue] {
        &self.consonances
    }

    pub fn dissonances(&self) -> &[Residue] {
        &self.dissonances
    }

    pub fn is_consonance(&self, r: Residue) -> bool {
        r.modulus() == self.modulus && self.consonances.binary_search(&r).is_ok()
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::standard()
    }

    /// All `p` in `Sym(Z_n)` with `p(K) = D`, sorted.
    pub fn polarity_search(&self) -> &[AffineSymmetry] {
        &self.polarities
    }

    /// Strong: exactly one polarity.
    pub fn is_strong(&self) -> bool {
        self.polarities.len() == 1
    }

    pub fn polarity(&self) -> Result<AffineSymmetry> {
        match self.polarities.as_slice() {
            [p] => Ok(*p),
            ps => Err(Error::NotStrong { count: ps.len() }),
        }
    }

    /// `K[τ]`: all contrapuntal consonances.
    pub fn consonant_set(&self, flavor: Flavor) -> DualSet {
        DualSet::over_all_fibers(&self.consonances, flavor)
    }

    /// `D[τ]`.
    pub fn dissonant_set(&self, flavor: Flavor) -> DualSet {
        DualSet::over_all_fibers(&self.dissonances, flavor)
    }

    /// The polarity conjugated to the fiber over `z`:
    /// `p^z = e^z ∘ e^{aτ}b ∘ e^{-z} = e^{(1-b)z + aτ} b`.
    pub fn local_polarity(&self, z: Residue, flavor: Flavor) -> Result<DualSymmetry> {
        let p = self.polarity()?;
        z.same_modulus(p.scale())?;
        let b = p.scale();
        let u = Residue::one(self.modulus).sub(b).mul(z);
        DualSymmetry::new(u, p.translate(), b, Residue::zero(self.modulus), flavor)
    }

    /// Every symmetry of `Z_n[τ]` leaving the fiber `z + Z_nτ` invariant and
    /// sending `K[τ]` onto `D[τ]`, found by exhaustive search.
    pub fn local_polarity_search(&self, z: Residue, flavor: Flavor) -> Result<Vec<DualSymmetry>> {
        z.same_modulus(Residue::zero(self.modulus))?;
        let kt = self.consonant_set(flavor);
        let dt = self.dissonant_set(flavor);
        Ok(enumerate_dual_symmetries(self.modulus, flavor, false)?
            .into_iter()
            // the base part of g(z + yτ) is c z + u
            .filter(|g| g.c().mul(z).add(g.u()) == z)
            .filter(|g| kt.image(*g) == dt)
            .collect())
    }

    /// True iff exactly one fiber-invariant symmetry sends `K[τ]` to `D[τ]`
    /// and it is [`Dichotomy::local_polarity`].
    pub fn verify_local_uniqueness(&self, z: Residue, flavor: Flavor) -> Result<bool> {
        let found = self.local_polarity_search(z, flavor)?;
        Ok(match (found.as_slice(), self.local_polarity(z, flavor)) {
            ([only], Ok(expected)) => *only == expected,
            _ => false,
        })
    }

    /// Whether `p^z(g(K[τ])) = g(D[τ])`.
    pub fn deformed_condition(&self, g: DualSymmetry, z: Residue) -> Result<bool> {
        let pz = self.local_polarity(z, g.flavor())?;
        let gk = self.consonant_set(g.flavor()).image(g);
        let gd = self.dissonant_set(g.flavor()).image(g);
        Ok(gk.image(pz) == gd)
    }

    fn check_consonant(&self, x: DualNumber) -> Result<()> {
        if x.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: x.modulus(),
            });
        }
        if self.is_consonance(x.delta()) {
            Ok(())
        } else {
            Err(Error::NotConsonant(x.delta().value()))
        }
    }

    /// Searches for `g` with `ξ ∈ g(D[τ])` and `η ∈ g(K[τ])`; returns a
    /// witness when the progression is polarized.
    pub fn is_polarized(&self, xi: DualNumber, eta: DualNumber) -> Result<Option<DualSymmetry>> {
        if xi.flavor() != eta.flavor() {
            return Err(Error::FlavorMismatch {
                left: xi.flavor(),
                right: eta.flavor(),
            });
        }
        let all = enumerate_dual_symmetries(self.modulus, xi.flavor(), false)?;
        self.polarization_witness(xi, eta, &all)
    }

    pub(crate) fn polarization_witness(
        &self,
        xi: DualNumber,
        eta: DualNumber,
        group: &[DualSymmetry],
    ) -> Result<Option<DualSymmetry>> {
        self.check_consonant(xi)?;
        self.check_consonant(eta)?;
        // ξ ∈ g(D), η ∈ g(K)  ⟺  g⁻¹ξ ∈ D, g⁻¹η ∈ K; g⁻¹ ranges over the group
        Ok(group
            .iter()
            .find(|h| {
                let a = h.apply_unchecked(xi).delta();
                let b = h.apply_unchecked(eta).delta();
                !self.is_consonance(a) && self.is_consonance(b)
            })
            .map(|h| h.invert()))
    }
}

fn polarity_search_sets(
    n: u32,
    consonances: &[Residue],
    dissonances: &[Residue],
) -> Result<Vec<AffineSymmetry>> {
    Ok(enumerate_symmetries(n)?
        .into_iter()
        .filter(|p| p.image(consonances) == dissonances)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Residue {
        Residue::new(v, 12).unwrap()
    }

    #[test]
    fn standard_polarity_is_unique() {
        let dich = Dichotomy::standard();
        assert_eq!(
            dich.polarity_search(),
            &[AffineSymmetry::from_ints(2, 5, 12).unwrap()]
        );
        assert!(dich.is_strong());
        let p = dich.polarity().unwrap();
        assert_eq!(p.compose(p).unwrap(), AffineSymmetry::identity(12));
    }

    #[test]
    fn swapped_dichotomy_has_same_polarity() {
        let swapped = Dichotomy::new(12, &[1, 2, 5, 6, 10, 11], &[0, 3, 4, 7, 8, 9]).unwrap();
        assert_eq!(
            swapped.polarity_search(),
            &[AffineSymmetry::from_ints(2, 5, 12).unwrap()]
        );
    }

    #[test]
    fn half_octave_dichotomy_is_not_strong() {
        let dich = Dichotomy::from_consonances(12, &[0, 1, 2, 3, 4, 5]).unwrap();
        let e6 = AffineSymmetry::from_ints(6, 1, 12).unwrap();
        // brute-force oracle over all 48 symmetries
        let oracle: Vec<_> = enumerate_symmetries(12)
            .unwrap()
            .into_iter()
            .filter(|p| {
                let img: BTreeSet<u32> = (0..6).map(|x| p.apply(r(x)).unwrap().value()).collect();
                img == (6..12).collect()
            })
            .collect();
        assert!(oracle.contains(&e6));
        assert_eq!(dich.polarity_search(), oracle.as_slice());
        assert!(!dich.is_strong());
        assert!(matches!(
            dich.local_polarity(r(0), Flavor::Nilpotent),
            Err(Error::NotStrong { .. })
        ));
    }

    #[test]
    fn invalid_dichotomies_name_the_invariant() {
        let overlap = Dichotomy::new(12, &[0, 3, 4, 7, 8, 9], &[0, 2, 5, 6, 10, 11]).unwrap_err();
        assert!(overlap.to_string().contains("disjoint"), "{overlap}");
        let gap = Dichotomy::new(12, &[0, 3, 4, 7, 8], &[1, 2, 5, 6, 10, 11]).unwrap_err();
        assert!(gap.to_string().contains("cover"), "{gap}");
        let uneven = Dichotomy::from_consonances(12, &[0, 3, 4, 7, 8]).unwrap_err();
        assert!(uneven.to_string().contains("|K| = |D|"), "{uneven}");
        let dup = Dichotomy::new(12, &[0, 12, 3, 4, 7, 8, 9], &[1, 2, 5, 6, 10, 11]).unwrap_err();
        assert!(dup.to_string().contains("duplicate"), "{dup}");
    }

    #[test]
    fn local_polarity_formula() {
        let dich = Dichotomy::standard();
        let eps = Flavor::Nilpotent;
        assert_eq!(
            dich.local_polarity(r(0), eps).unwrap(),
            DualSymmetry::from_ints(0, 2, 5, 0, 12, eps).unwrap()
        );
        assert_eq!(
            dich.local_polarity(r(1), eps).unwrap(),
            DualSymmetry::from_ints(8, 2, 5, 0, 12, eps).unwrap()
        );
        for z in 0..12 {
            let conj = DualSymmetry::translation(r(z), eps)
                .compose(dich.local_polarity(r(0), eps).unwrap())
                .unwrap()
                .compose(DualSymmetry::translation(r(-z), eps))
                .unwrap();
            assert_eq!(dich.local_polarity(r(z), eps).unwrap(), conj);
        }
    }

    #[test]
    fn global_polarity_is_not_unique() {
        // e^{1+2ε}5 also sends K[ε] to D[ε], but moves the fiber over 0
        let dich = Dichotomy::standard();
        let g = DualSymmetry::from_ints(1, 2, 5, 0, 12, Flavor::Nilpotent).unwrap();
        assert_eq!(
            dich.consonant_set(Flavor::Nilpotent).image(g),
            dich.dissonant_set(Flavor::Nilpotent)
        );
    }

    #[test]
    fn local_uniqueness_spot_checks() {
        let dich = Dichotomy::standard();
        assert!(dich.verify_local_uniqueness(r(0), Flavor::Nilpotent).unwrap());
        assert!(dich.verify_local_uniqueness(r(5), Flavor::Nilpotent).unwrap());
        let found = dich.local_polarity_search(r(0), Flavor::Idempotent).unwrap();
        assert_eq!(found, vec![DualSymmetry::from_ints(0, 2, 5, 0, 12, Flavor::Idempotent).unwrap()]);
    }

    #[test]
    fn deformed_condition_identity() {
        let dich = Dichotomy::standard();
        for f in [Flavor::Nilpotent, Flavor::Idempotent] {
            let id = DualSymmetry::identity(12, f);
            assert!(dich.deformed_condition(id, r(0)).unwrap());
            // p^0 itself commutes with p^0
            let p = dich.local_polarity(r(0), f).unwrap();
            assert!(dich.deformed_condition(p, r(0)).unwrap());
        }
    }

    #[test]
    fn polarized_examples() {
        let dich = Dichotomy::standard();
        let e = |a, b| DualNumber::from_ints(a, b, 12, Flavor::Nilpotent).unwrap();
        let x = |a, b| DualNumber::from_ints(a, b, 12, Flavor::Idempotent).unwrap();
        assert!(dich.is_polarized(e(0, 3), e(0, 3)).unwrap().is_none());
        let g = dich.is_polarized(e(0, 0), e(2, 0)).unwrap().expect("polarized");
        assert!(dich.dissonant_set(Flavor::Nilpotent).image(g).contains(e(0, 0)));
        assert!(dich.consonant_set(Flavor::Nilpotent).image(g).contains(e(2, 0)));
        assert!(dich.is_polarized(x(0, 0), x(6, 0)).unwrap().is_none());
        assert!(dich.is_polarized(e(0, 0), e(6, 0)).unwrap().is_some());
        assert_eq!(
            dich.is_polarized(e(0, 6), e(0, 3)),
            Err(Error::NotConsonant(6))
        );
    }
}
