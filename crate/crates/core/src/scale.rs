use crate::error::{Error, Result};
use crate::ring::{check_modulus, Residue};

/// The diatonic pattern `{0, 2, 4, 5, 7, 9, 11}` underlying the church modes.
pub const DIATONIC: [u32; 7] = [0, 2, 4, 5, 7, 9, 11];

/// A pitch-class scale in `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    modulus: u32,
    mask: Vec<bool>,
}

impl Scale {
    pub fn new(n: u32, members: &[i64]) -> Result<Self> {
        check_modulus(n)?;
        if members.is_empty() {
            return Err(Error::InvalidScale("scale must not be empty".into()));
        }
        let mut mask = vec![false; n as usize];
        for &m in members {
            mask[m.rem_euclid(n as i64) as usize] = true;
        }
        Ok(Scale { modulus: n, mask })
    }

    pub fn diatonic() -> Self {
        let xs: Vec<i64> = DIATONIC.iter().map(|&x| x as i64).collect();
        Self::new(12, &xs).expect("diatonic scale is valid")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn contains(&self, r: Residue) -> bool {
        r.modulus() == self.modulus && self.mask[r.value() as usize]
    }

    pub fn members(&self) -> Vec<Residue> {
        Residue::all(self.modulus).filter(|&r| self.contains(r)).collect()
    }

    fn contains_int(&self, pitch: i64) -> bool {
        self.mask[pitch.rem_euclid(self.modulus as i64) as usize]
    }

    /// Whether some transposition `t` puts every pitch inside the scale.
    pub fn fits_some_transposition(&self, pitches: &[i64]) -> bool {
        (0..self.modulus as i64).any(|t| pitches.iter().all(|&p| self.contains_int(p + t)))
    }

    /// A transposition `t` realizing [`Scale::fits_some_transposition`].
    pub fn fitting_transposition(&self, pitches: &[i64]) -> Option<u32> {
        (0..self.modulus).find(|&t| {
            pitches
                .iter()
                .all(|&p| self.contains_int(p + t as i64))
        })
    }
}

impl Default for Scale {
    fn default() -> Self {
        Self::diatonic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diatonic_membership() {
        let x = Scale::diatonic();
        assert_eq!(x.members().len(), 7);
        assert!(x.fits_some_transposition(&[0, 7, 2, 9]));
        assert_eq!(x.fitting_transposition(&[0, 7, 2, 9]), Some(0));
        // the only tritone in X is {5, 11}, so {0, 6} fits after t = 5
        assert_eq!(x.fitting_transposition(&[0, 6]), Some(5));
        assert!(!x.fits_some_transposition(&[0, 1, 2]));
    }

    #[test]
    fn brute_force_transposition_scan() {
        let x = Scale::diatonic();
        let oracle = |ps: &[i64]| {
            (0..12).any(|t| ps.iter().all(|p| DIATONIC.contains(&((((p + t) % 12 + 12) % 12) as u32))))
        };
        for a in -12..12 {
            for b in -12..12 {
                let ps = [0, a, b, a + b];
                assert_eq!(x.fits_some_transposition(&ps), oracle(&ps));
            }
        }
        // (0,4,1,5): pitch classes {0,1,4,5}
        assert_eq!(x.fits_some_transposition(&[0, 4, 1, 5]), oracle(&[0, 4, 1, 5]));
    }

    #[test]
    fn empty_scale_rejected() {
        assert!(Scale::new(12, &[]).is_err());
        assert!(Scale::new(1, &[0]).is_err());
    }
}
