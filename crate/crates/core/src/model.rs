//! The symmetry-based counterpoint model and its variations.
//!
//! For a consonance `kτ`, a contrapuntal symmetry is an `h = e^{vτ}(c+dτ)` in
//! the subgroup `H` such that
//!
//! 1. `kτ ∈ h(D[τ])` (alternation),
//! 2. `p^0(h(K[τ])) = h(D[τ])` (local dissonance over the cantus firmus), and
//! 3. `|h(K[τ]) ∩ K[τ]|` is maximal among those satisfying 1 and 2.
//!
//! The admitted successors of `z + kτ` are `e^z(h(K[τ]) ∩ K[τ])` over all
//! contrapuntal symmetries `h` of `kτ`. The local-global variants require the
//! local dissonance condition on every fiber.
//!
//! [`CounterpointModel`] evaluates conditions 1 and 2 in closed form and
//! uses the cardinality formula for 3. [`oracle_successors`] recomputes the
//! same objects from direct images only.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dichotomy::Dichotomy;
use crate::dual::{enumerate_dual_symmetries, DualNumber, DualSet, DualSymmetry, Flavor};
use crate::error::{Error, Result};
use crate::reduction::ReducedProgression;
use crate::ring::{AffineSymmetry, Residue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Dual numbers `Z_n[ε]`.
    Classical,
    /// `Z_n[χ]`, χ² = χ.
    Idempotent,
    /// Local characterization on every fiber, over `Z_n[ε]`.
    LocalGlobalNilpotent,
    /// Local characterization on every fiber, over `Z_n[χ]`.
    LocalGlobalIdempotent,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Classical,
        Variant::Idempotent,
        Variant::LocalGlobalNilpotent,
        Variant::LocalGlobalIdempotent,
    ];

    pub fn flavor(self) -> Flavor {
        match self {
            Variant::Classical | Variant::LocalGlobalNilpotent => Flavor::Nilpotent,
            Variant::Idempotent | Variant::LocalGlobalIdempotent => Flavor::Idempotent,
        }
    }

    pub fn is_local_global(self) -> bool {
        matches!(self, Variant::LocalGlobalNilpotent | Variant::LocalGlobalIdempotent)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Classical => "classical",
            Variant::Idempotent => "idempotent",
            Variant::LocalGlobalNilpotent => "local-global-nilpotent",
            Variant::LocalGlobalIdempotent => "local-global-idempotent",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Self::ALL.into_iter().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the local-global variants impose the local characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalGlobalRule {
    /// Condition 2 over the first cantus firmus only; maximize the number of
    /// successors whose own fiber satisfies it.
    Fiberwise,
    /// Condition 2 on all fibers.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    Allowed,
    Forbidden,
    NonPolarized,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 3] = [VerdictKind::Allowed, VerdictKind::Forbidden, VerdictKind::NonPolarized];

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Allowed => "allowed",
            VerdictKind::Forbidden => "forbidden",
            VerdictKind::NonPolarized => "non-polarized",
        }
    }

    pub fn parse(s: &str) -> Option<VerdictKind> {
        Self::ALL.into_iter().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: VerdictKind,
    /// Contrapuntal symmetries of the first interval admitting the second.
    pub witnesses: Vec<DualSymmetry>,
}

/// Contrapuntal symmetries and admitted successors of one consonance `kτ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessorEntry {
    pub interval: Residue,
    pub symmetries: Vec<DualSymmetry>,
    /// The maximized count of condition 3.
    pub score: usize,
    /// Per symmetry, `h(K[τ]) ∩ K[τ]`.
    pub successor_sets: Vec<DualSet>,
    pub successors: DualSet,
}

/// `ρ Σ_{i<ρ} |K_i| |K_{c i + v mod ρ}|` with `ρ = gcd(d, n)` and
/// `K_i = {k ∈ K : k ≡ i mod ρ}`; the size of `h(K[τ]) ∩ K[τ]`.
///
/// `d ≡ 0 mod ρ`, so `c` and `c + d` agree modulo `ρ` and the expression is
/// the same for both flavors.
pub fn successor_cardinality(h: DualSymmetry, dich: &Dichotomy) -> Result<usize> {
    if h.u().value() != 0 {
        return Err(Error::NonZeroTranslation(h.u().value()));
    }
    let n = dich.modulus();
    let rho = h.d().value().gcd(&n);
    let mut classes = vec![0usize; rho as usize];
    for k in dich.consonances() {
        classes[(k.value() % rho) as usize] += 1;
    }
    let (c, v) = (h.c().value() as u64, h.v().value() as u64);
    let sum: usize = (0..rho as u64)
        .map(|i| classes[i as usize] * classes[((c * i + v) % rho as u64) as usize])
        .sum();
    Ok(rho as usize * sum)
}

/// `h(K[τ]) ∩ K[τ] = ⊔_r  c r + ((c' K + v + d r) ∩ K)τ` with `c' = c` for ε
/// and `c' = c + d` for χ.
pub fn successor_set(h: DualSymmetry, dich: &Dichotomy) -> Result<DualSet> {
    if h.u().value() != 0 {
        return Err(Error::NonZeroTranslation(h.u().value()));
    }
    let n = dich.modulus();
    let scale = h.interval_scale();
    let mut out = DualSet::empty(n, h.flavor());
    for r in Residue::all(n) {
        let base = h.c().mul(r);
        let shift = h.v().add(h.d().mul(r));
        for &k in dich.consonances() {
            let image = scale.mul(k).add(shift);
            if dich.is_consonance(image) {
                out.insert(DualNumber::new(base, image, h.flavor())?);
            }
        }
    }
    Ok(out)
}

/// The direct image `h(K[τ]) ∩ K[τ]`.
pub fn direct_successor_set(h: DualSymmetry, dich: &Dichotomy) -> DualSet {
    let kt = dich.consonant_set(h.flavor());
    kt.image(h).intersection(&kt)
}

/// Closed-form checks derived from the polarity `p = e^a b`, together with
/// whether each has been verified against the set-level condition over all
/// of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedForms {
    /// `b v + a = a c' + v`, i.e. `h` commutes with `p^0`.
    pub commuting_matches_deformed: bool,
    /// `b d = d` together with the former, against "condition 2 on all fibers".
    pub scale_fixed_matches_global: bool,
}

fn commutes_with_polarity(h: DualSymmetry, p: AffineSymmetry) -> bool {
    let (a, b) = (p.translate(), p.scale());
    b.mul(h.v()).add(a) == a.mul(h.interval_scale()).add(h.v())
}

fn fixes_polarity_scale(h: DualSymmetry, p: AffineSymmetry) -> bool {
    p.scale().mul(h.d()) == h.d()
}

struct Images {
    k: DualSet,
    d: DualSet,
}

impl Images {
    fn of(h: DualSymmetry, kt: &DualSet, dt: &DualSet) -> Self {
        Images {
            k: kt.image(h),
            d: dt.image(h),
        }
    }

    /// `p^z(h(K[τ])) = h(D[τ])`.
    fn local_dissonance(&self, pz: DualSymmetry) -> bool {
        self.k.image(pz) == self.d
    }
}

fn local_polarities(dich: &Dichotomy, flavor: Flavor) -> Result<Vec<DualSymmetry>> {
    Residue::all(dich.modulus())
        .map(|z| dich.local_polarity(z, flavor))
        .collect()
}

/// Checks the closed forms against direct set computations over `H`.
pub fn verify_closed_forms(dich: &Dichotomy, flavor: Flavor) -> Result<ClosedForms> {
    let p = dich.polarity()?;
    let kt = dich.consonant_set(flavor);
    let dt = dich.dissonant_set(flavor);
    let pzs = local_polarities(dich, flavor)?;
    let mut forms = ClosedForms {
        commuting_matches_deformed: true,
        scale_fixed_matches_global: true,
    };
    for h in enumerate_dual_symmetries(dich.modulus(), flavor, true)? {
        let img = Images::of(h, &kt, &dt);
        let at_zero = img.local_dissonance(pzs[0]);
        let everywhere = pzs.iter().all(|&pz| img.local_dissonance(pz));
        let commutes = commutes_with_polarity(h, p);
        if commutes != at_zero {
            forms.commuting_matches_deformed = false;
        }
        if (commutes && fixes_polarity_scale(h, p)) != everywhere {
            forms.scale_fixed_matches_global = false;
        }
    }
    Ok(forms)
}

/// The model for one variant over a strong dichotomy.
#[derive(Debug, Clone)]
pub struct CounterpointModel {
    dichotomy: Dichotomy,
    polarity: AffineSymmetry,
    variant: Variant,
    closed_forms: ClosedForms,
    group: Vec<DualSymmetry>,
    table: BTreeMap<Residue, SuccessorEntry>,
}

impl CounterpointModel {
    pub fn new(dichotomy: &Dichotomy, variant: Variant) -> Result<Self> {
        let polarity = dichotomy.polarity()?;
        let flavor = variant.flavor();
        let closed_forms = verify_closed_forms(dichotomy, flavor)?;
        let h = enumerate_dual_symmetries(dichotomy.modulus(), flavor, true)?;
        let mut model = CounterpointModel {
            dichotomy: dichotomy.clone(),
            polarity,
            variant,
            closed_forms,
            group: enumerate_dual_symmetries(dichotomy.modulus(), flavor, false)?,
            table: BTreeMap::new(),
        };
        let entries = dichotomy
            .consonances()
            .par_iter()
            .map(|&k| model.search(k, &h))
            .collect::<Result<Vec<_>>>()?;
        model.table = entries.into_iter().map(|e| (e.interval, e)).collect();
        Ok(model)
    }

    /// Builds the successor table from [`oracle_successors`] instead of the
    /// closed-form search.
    pub fn from_oracle(dichotomy: &Dichotomy, variant: Variant, rule: LocalGlobalRule) -> Result<Self> {
        let polarity = dichotomy.polarity()?;
        let flavor = variant.flavor();
        let entries = dichotomy
            .consonances()
            .par_iter()
            .map(|&k| oracle_successors(dichotomy, k, variant, rule))
            .collect::<Result<Vec<_>>>()?;
        Ok(CounterpointModel {
            dichotomy: dichotomy.clone(),
            polarity,
            variant,
            closed_forms: ClosedForms {
                commuting_matches_deformed: false,
                scale_fixed_matches_global: false,
            },
            group: enumerate_dual_symmetries(dichotomy.modulus(), flavor, false)?,
            table: entries.into_iter().map(|e| (e.interval, e)).collect(),
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn flavor(&self) -> Flavor {
        self.variant.flavor()
    }

    pub fn dichotomy(&self) -> &Dichotomy {
        &self.dichotomy
    }

    pub fn polarity(&self) -> AffineSymmetry {
        self.polarity
    }

    pub fn closed_forms(&self) -> ClosedForms {
        self.closed_forms
    }

    fn consonance(&self, k: Residue) -> Result<Residue> {
        k.same_modulus(Residue::zero(self.dichotomy.modulus()))?;
        if self.dichotomy.is_consonance(k) {
            Ok(k)
        } else {
            Err(Error::NotConsonant(k.value()))
        }
    }

    fn alternates(&self, h: DualSymmetry, k: Residue) -> bool {
        // kτ ∈ h(D[τ])  ⟺  k = c' δ + v for some δ ∈ D
        let inv = h.interval_scale().inverse().expect("valid symmetry");
        !self.dichotomy.is_consonance(inv.mul(k.sub(h.v())))
    }

    fn locally_dissonant(&self, h: DualSymmetry, img: &mut Option<Images>) -> Result<bool> {
        let flavor = self.flavor();
        let global = self.variant.is_local_global();
        if self.closed_forms.commuting_matches_deformed
            && (!global || self.closed_forms.scale_fixed_matches_global)
        {
            let ok = commutes_with_polarity(h, self.polarity);
            return Ok(ok && (!global || fixes_polarity_scale(h, self.polarity)));
        }
        let img = img.get_or_insert_with(|| {
            Images::of(
                h,
                &self.dichotomy.consonant_set(flavor),
                &self.dichotomy.dissonant_set(flavor),
            )
        });
        let fibers: Vec<Residue> = if global {
            Residue::all(self.dichotomy.modulus()).collect()
        } else {
            vec![Residue::zero(self.dichotomy.modulus())]
        };
        for z in fibers {
            if !img.local_dissonance(self.dichotomy.local_polarity(z, flavor)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn search(&self, k: Residue, candidates: &[DualSymmetry]) -> Result<SuccessorEntry> {
        let mut best = 0usize;
        let mut winners: Vec<DualSymmetry> = Vec::new();
        for &h in candidates {
            if !self.alternates(h, k) {
                continue;
            }
            let mut img = None;
            if !self.locally_dissonant(h, &mut img)? {
                continue;
            }
            let score = successor_cardinality(h, &self.dichotomy)?;
            if score > best || winners.is_empty() {
                best = score;
                winners.clear();
            }
            if score == best {
                winners.push(h);
            }
        }
        winners.sort();
        let successor_sets = winners
            .iter()
            .map(|&h| successor_set(h, &self.dichotomy))
            .collect::<Result<Vec<_>>>()?;
        Ok(entry(k, self.dichotomy.modulus(), self.flavor(), winners, best, successor_sets))
    }

    /// All contrapuntal symmetries of `kτ`, sorted.
    pub fn contrapuntal_symmetries(&self, k: Residue) -> Result<&[DualSymmetry]> {
        Ok(&self.entry(k)?.symmetries)
    }

    pub fn entry(&self, k: Residue) -> Result<&SuccessorEntry> {
        let k = self.consonance(k)?;
        Ok(&self.table[&k])
    }

    pub fn entries(&self) -> impl Iterator<Item = &SuccessorEntry> {
        self.table.values()
    }

    /// `e^z` applied to the successors of `kτ`, for `ξ = z + kτ`.
    pub fn admitted_successors(&self, xi: DualNumber) -> Result<DualSet> {
        self.check_flavor(xi)?;
        let entry = self.entry(xi.delta())?;
        let shift = DualSymmetry::translation(xi.base(), self.flavor());
        Ok(entry.successors.image(shift))
    }

    fn check_flavor(&self, x: DualNumber) -> Result<()> {
        if x.flavor() != self.flavor() {
            return Err(Error::FlavorMismatch {
                left: self.flavor(),
                right: x.flavor(),
            });
        }
        Ok(())
    }

    /// Verdict on the progression `(ξ, η)`.
    pub fn verdict_pair(&self, xi: DualNumber, eta: DualNumber) -> Result<Verdict> {
        self.check_flavor(xi)?;
        self.check_flavor(eta)?;
        if self
            .dichotomy
            .polarization_witness(xi, eta, &self.group)?
            .is_none()
        {
            return Ok(Verdict {
                value: VerdictKind::NonPolarized,
                witnesses: Vec::new(),
            });
        }
        let entry = self.entry(xi.delta())?;
        let z = xi.base();
        let shift = DualSymmetry::translation(z, self.flavor());
        // contrapuntal symmetries of z + kτ are e^z ∘ h ∘ e^{-z}
        let witnesses: Vec<DualSymmetry> = entry
            .symmetries
            .iter()
            .zip(&entry.successor_sets)
            .filter(|(_, set)| set.image(shift).contains(eta))
            .map(|(&h, _)| shift.compose(h).and_then(|g| g.compose(shift.invert())))
            .collect::<Result<_>>()?;
        let value = if witnesses.is_empty() {
            VerdictKind::Forbidden
        } else {
            VerdictKind::Allowed
        };
        Ok(Verdict { value, witnesses })
    }

    pub fn verdict(&self, prog: &ReducedProgression) -> Result<Verdict> {
        let prog = prog.with_flavor(self.flavor());
        self.verdict_pair(prog.first(), prog.second())
    }

    /// Verdicts in input order; evaluated in parallel.
    pub fn verdicts(&self, progs: &[ReducedProgression]) -> Result<Vec<(ReducedProgression, Verdict)>> {
        progs
            .par_iter()
            .map(|p| self.verdict(p).map(|v| (p.with_flavor(self.flavor()), v)))
            .collect()
    }
}

fn entry(
    k: Residue,
    n: u32,
    flavor: Flavor,
    symmetries: Vec<DualSymmetry>,
    score: usize,
    successor_sets: Vec<DualSet>,
) -> SuccessorEntry {
    let mut successors = DualSet::empty(n, flavor);
    for s in &successor_sets {
        successors.union_with(s);
    }
    SuccessorEntry {
        interval: k,
        symmetries,
        score,
        successor_sets,
        successors,
    }
}

/// Recomputes contrapuntal symmetries and successors of `kτ` from direct
/// images: condition 1 by membership in `h(D[τ])`, condition 2 by set
/// equality, condition 3 by counting `h(K[τ]) ∩ K[τ]`. For the local-global
/// variants `rule` selects the fiberwise or the global formulation.
pub fn oracle_successors(
    dich: &Dichotomy,
    k: Residue,
    variant: Variant,
    rule: LocalGlobalRule,
) -> Result<SuccessorEntry> {
    if !dich.is_consonance(k) {
        return Err(Error::NotConsonant(k.value()));
    }
    let n = dich.modulus();
    let flavor = variant.flavor();
    let kt = dich.consonant_set(flavor);
    let dt = dich.dissonant_set(flavor);
    let pzs = local_polarities(dich, flavor)?;
    let xi = DualNumber::new(Residue::zero(n), k, flavor)?;
    let fiberwise = variant.is_local_global() && rule == LocalGlobalRule::Fiberwise;
    let global = variant.is_local_global() && rule == LocalGlobalRule::Global;

    let mut best = 0usize;
    let mut winners: Vec<(DualSymmetry, DualSet)> = Vec::new();
    for h in enumerate_dual_symmetries(n, flavor, true)? {
        let img = Images::of(h, &kt, &dt);
        if !img.d.contains(xi) {
            continue;
        }
        let ok = if global {
            pzs.iter().all(|&pz| img.local_dissonance(pz))
        } else {
            img.local_dissonance(pzs[0])
        };
        if !ok {
            continue;
        }
        let inter = img.k.intersection(&kt);
        let score = if fiberwise {
            inter
                .iter()
                .filter(|w| img.local_dissonance(pzs[w.base().value() as usize]))
                .count()
        } else {
            inter.len()
        };
        if score > best || winners.is_empty() {
            best = score;
            winners.clear();
        }
        if score == best {
            winners.push((h, inter));
        }
    }
    winners.sort_by_key(|(h, _)| *h);
    let (symmetries, sets): (Vec<_>, Vec<_>) = winners.into_iter().unzip();
    Ok(entry(k, n, flavor, symmetries, best, sets))
}

/// Counts of allowed, forbidden and non-polarized verdicts.
pub fn verdict_totals(verdicts: &[(ReducedProgression, Verdict)]) -> [usize; 3] {
    let mut out = [0; 3];
    for (_, v) in verdicts {
        out[VerdictKind::ALL.iter().position(|&k| k == v.value).unwrap()] += 1;
    }
    out
}
