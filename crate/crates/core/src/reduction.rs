//! The strict style modulo the octave.
//!
//! A strict representative `(kx, c' + k'x)` projects to `(kτ, c' + k'τ)` in
//! `Z_12[τ]`. A reduced progression is inadmissible if all its preimages are,
//! good if at least one preimage is good, and bad otherwise. Good ones are
//! refined by what else they come from.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dichotomy::Dichotomy;
use crate::dual::{DualNumber, Flavor};
use crate::error::{Error, Result};
use crate::ring::Residue;
use crate::scale::Scale;
use crate::strict::{
    enumerate_strict_representatives, Category, RuleKind, RuleLabel, StrictProgression,
};

/// A progression `(kτ, c' + k'τ)` of contrapuntal intervals over `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedProgression {
    first: DualNumber,
    second: DualNumber,
}

impl ReducedProgression {
    pub fn new(k: i64, c_next: i64, k_next: i64, n: u32, flavor: Flavor) -> Result<Self> {
        Ok(ReducedProgression {
            first: DualNumber::from_ints(0, k, n, flavor)?,
            second: DualNumber::from_ints(c_next, k_next, n, flavor)?,
        })
    }

    /// Moves both intervals so the first sits over cantus firmus 0.
    pub fn from_pair(xi: DualNumber, eta: DualNumber) -> Result<Self> {
        let shifted = eta.add(DualNumber::new(xi.base().neg(), Residue::zero(xi.modulus()), xi.flavor())?)?;
        Ok(ReducedProgression {
            first: DualNumber::new(Residue::zero(xi.modulus()), xi.delta(), xi.flavor())?,
            second: shifted,
        })
    }

    pub fn first(&self) -> DualNumber {
        self.first
    }

    pub fn second(&self) -> DualNumber {
        self.second
    }

    pub fn k(&self) -> u32 {
        self.first.delta().value()
    }

    pub fn c_next(&self) -> u32 {
        self.second.base().value()
    }

    pub fn k_next(&self) -> u32 {
        self.second.delta().value()
    }

    pub fn modulus(&self) -> u32 {
        self.first.modulus()
    }

    pub fn flavor(&self) -> Flavor {
        self.first.flavor()
    }

    pub fn triple(&self) -> (u32, u32, u32) {
        (self.k(), self.c_next(), self.k_next())
    }

    pub fn is_repetition(&self) -> bool {
        self.c_next() == 0 && self.k() == self.k_next()
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        let (k, c, k2) = self.triple();
        let n = self.modulus();
        ReducedProgression {
            first: DualNumber::raw(0, k, n, flavor),
            second: DualNumber::raw(c, k2, n, flavor),
        }
    }
}

impl fmt::Display for ReducedProgression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// Reduces a strict progression modulo 12 relative to its cantus firmus.
pub fn project(p: &StrictProgression, flavor: Flavor) -> ReducedProgression {
    let n = 12;
    ReducedProgression {
        first: DualNumber::raw(0, p.interval().rem_euclid(12) as u32, n, flavor),
        second: DualNumber::raw(
            p.cantus_move().rem_euclid(12) as u32,
            p.next_interval().rem_euclid(12) as u32,
            n,
            flavor,
        ),
    }
}

/// All `(k, c', k')` in `K × Z_n × K` whose notes `{0, k, c', c' + k'}` fit
/// in some transposition of the scale.
pub fn enumerate_reduced(dich: &Dichotomy, scale: &Scale, flavor: Flavor) -> Result<Vec<ReducedProgression>> {
    let n = dich.modulus();
    if scale.modulus() != n {
        return Err(Error::ModulusMismatch {
            left: n,
            right: scale.modulus(),
        });
    }
    let mut out = Vec::new();
    for &k in dich.consonances() {
        for c in Residue::all(n) {
            for &k2 in dich.consonances() {
                let notes = [0, k.value() as i64, c.value() as i64, (c.value() + k2.value()) as i64];
                if scale.fits_some_transposition(&notes) {
                    out.push(ReducedProgression {
                        first: DualNumber::raw(0, k.value(), n, flavor),
                        second: DualNumber::raw(c.value(), k2.value(), n, flavor),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Refined {
    GoodGood,
    GoodBad,
    Ambiguous,
}

impl Refined {
    pub const ALL: [Refined; 3] = [Refined::GoodGood, Refined::GoodBad, Refined::Ambiguous];

    pub fn as_str(self) -> &'static str {
        match self {
            Refined::GoodGood => "good-good",
            Refined::GoodBad => "good-bad",
            Refined::Ambiguous => "ambiguous",
        }
    }

    pub fn parse(s: &str) -> Option<Refined> {
        Self::ALL.into_iter().find(|r| r.as_str() == s)
    }
}

/// Characterizing clauses of the reduced rules, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReducedKind {
    ParallelFifth,
    ParallelUnison,
    HiddenFifthFromSixth,
    Tritone,
    ProjectedImperfectSimilarSkips,
    HiddenTritone,
}

impl ReducedKind {
    pub const INADMISSIBLE: [ReducedKind; 4] = [
        ReducedKind::ParallelFifth,
        ReducedKind::ParallelUnison,
        ReducedKind::HiddenFifthFromSixth,
        ReducedKind::Tritone,
    ];
    pub const BAD: [ReducedKind; 2] = [
        ReducedKind::ProjectedImperfectSimilarSkips,
        ReducedKind::HiddenTritone,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReducedKind::ParallelFifth => "parallel-5th",
            ReducedKind::ParallelUnison => "parallel-unison",
            ReducedKind::HiddenFifthFromSixth => "hidden-5th-from-6th",
            ReducedKind::Tritone => "tritone",
            ReducedKind::ProjectedImperfectSimilarSkips => "proj-imp-cons",
            ReducedKind::HiddenTritone => "hidden-tritone",
        }
    }

    pub fn parse(s: &str) -> Option<ReducedKind> {
        Self::INADMISSIBLE
            .into_iter()
            .chain(Self::BAD)
            .find(|k| k.as_str() == s)
    }

    /// Clause test on `(k, c', k')` modulo 12.
    pub fn matches(self, r: &ReducedProgression) -> bool {
        let (k, c, k2) = r.triple();
        let m = |x: i64| x.rem_euclid(12);
        let (k, c, k2) = (k as i64, c as i64, k2 as i64);
        match self {
            ReducedKind::ParallelFifth => k == 7 && k2 == 7 && c != 0,
            ReducedKind::ParallelUnison => k == 0 && k2 == 0 && c != 0,
            ReducedKind::HiddenFifthFromSixth => (k == 8 || k == 9) && k2 == 7,
            ReducedKind::Tritone => c == 6 || m(c + k2 - k) == 6,
            ReducedKind::ProjectedImperfectSimilarSkips => (k, c, k2) == (7, 5, 9),
            ReducedKind::HiddenTritone => m(c + k2) == 6 || m(k - c) == 6,
        }
    }
}

impl fmt::Display for ReducedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedLabel {
    pub category: Category,
    /// `Some` iff the category is good.
    pub refined: Option<Refined>,
    /// First characterizing clause of the category; `None` for good.
    pub kind: Option<ReducedKind>,
    pub matched: Vec<ReducedKind>,
}

impl ReducedLabel {
    pub fn kind_str(&self) -> &'static str {
        self.kind.map_or("none", ReducedKind::as_str)
    }

    pub fn refined_str(&self) -> &'static str {
        self.refined.map_or("n/a", Refined::as_str)
    }
}

/// The reduced strict style: the strict representatives indexed by their
/// projection.
#[derive(Debug, Clone)]
pub struct ReducedStyle {
    scale: Scale,
    preimages: BTreeMap<(u32, u32, u32), Vec<(StrictProgression, RuleLabel)>>,
}

impl ReducedStyle {
    pub fn new(scale: &Scale) -> Result<Self> {
        if scale.modulus() != 12 {
            return Err(Error::RequiresTwelve("the reduced strict style"));
        }
        let mut preimages: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for (p, label) in enumerate_strict_representatives(scale) {
            preimages
                .entry(project(&p, Flavor::Nilpotent).triple())
                .or_default()
                .push((p, label));
        }
        Ok(ReducedStyle {
            scale: scale.clone(),
            preimages,
        })
    }

    pub fn standard() -> Self {
        Self::new(&Scale::diatonic()).expect("diatonic scale has modulus 12")
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    /// Strict representatives projecting onto `r`.
    pub fn preimages(&self, r: &ReducedProgression) -> &[(StrictProgression, RuleLabel)] {
        self.preimages.get(&r.triple()).map_or(&[], Vec::as_slice)
    }

    pub fn progressions(&self, flavor: Flavor) -> Vec<ReducedProgression> {
        enumerate_reduced(&Dichotomy::standard(), &self.scale, flavor)
            .expect("standard dichotomy and scale share modulus 12")
    }

    pub fn classify(&self, r: &ReducedProgression) -> Result<ReducedLabel> {
        if r.modulus() != 12 {
            return Err(Error::RequiresTwelve("reduced classification"));
        }
        let pre = self.preimages(r);
        if pre.is_empty() {
            return Err(Error::EmptyPreimage(r.to_string()));
        }
        let has = |c| pre.iter().any(|(_, l)| l.category == c);
        let (category, refined) = if has(Category::Good) {
            let refined = if has(Category::Inadmissible) {
                Refined::Ambiguous
            } else if has(Category::Bad) {
                Refined::GoodBad
            } else {
                Refined::GoodGood
            };
            (Category::Good, Some(refined))
        } else if has(Category::Bad) {
            (Category::Bad, None)
        } else {
            (Category::Inadmissible, None)
        };
        let candidates: &[ReducedKind] = match category {
            Category::Inadmissible => &ReducedKind::INADMISSIBLE,
            Category::Bad => &ReducedKind::BAD,
            Category::Good => &[],
        };
        let matched: Vec<ReducedKind> = candidates.iter().copied().filter(|k| k.matches(r)).collect();
        Ok(ReducedLabel {
            category,
            refined,
            kind: matched.first().copied(),
            matched,
        })
    }

    /// Every diatonic reduced progression with its label.
    pub fn rows(&self, flavor: Flavor) -> Result<Vec<(ReducedProgression, ReducedLabel)>> {
        self.progressions(flavor)
            .into_iter()
            .map(|r| self.classify(&r).map(|l| (r, l)))
            .collect()
    }

    pub fn crosscheck(&self) -> Result<CrosscheckReport> {
        derived_rule_crosscheck(self)
    }
}

/// The closed-form characterization of the reduced rules.
pub fn closed_form_category(r: &ReducedProgression) -> Category {
    let (k, c, k2) = r.triple();
    let inadmissible = ReducedKind::Tritone.matches(r)
        || ReducedKind::ParallelFifth.matches(r)
        || (ReducedKind::ParallelUnison.matches(r) && [1, 2, 3, 4, 6, 8, 9, 10, 11].contains(&c))
        || ((k == 8 || k == 9) && k2 == 7 && c > 2);
    if inadmissible {
        Category::Inadmissible
    } else if ReducedKind::ProjectedImperfectSimilarSkips.matches(r) || ReducedKind::HiddenTritone.matches(r) {
        Category::Bad
    } else {
        Category::Good
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub checks: Vec<Check>,
    /// Reduced clause families whose members are all inadmissible.
    pub general_rules: Vec<String>,
}

impl CrosscheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub(crate) fn check(name: &str, failures: Vec<String>) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "ok".into()
        } else {
            failures.join("; ")
        },
    }
}

/// Compares the preimage semantics against the closed-form rules and the
/// "only comes from" statements, over all diatonic reduced progressions.
pub fn derived_rule_crosscheck(style: &ReducedStyle) -> Result<CrosscheckReport> {
    let rows = style.rows(Flavor::Nilpotent)?;
    let mut checks = Vec::new();

    let disagreements = rows
        .iter()
        .filter(|(r, l)| closed_form_category(r) != l.category)
        .map(|(r, l)| format!("{r}: preimages say {}, closed form {}", l.category, closed_form_category(r)))
        .collect();
    checks.push(check("closed form agrees with preimage semantics", disagreements));

    let only_from = |reduced: ReducedKind, strict: RuleKind, only_inadmissible: bool| {
        rows.iter()
            .filter(|(r, l)| reduced.matches(r) && (!only_inadmissible || l.category == Category::Inadmissible))
            .flat_map(|(r, _)| {
                style
                    .preimages(r)
                    .iter()
                    .filter(|(p, _)| !strict.matches(p))
                    .map(move |(p, _)| format!("{r} from {p}"))
            })
            .collect::<Vec<_>>()
    };
    checks.push(check(
        "parallel fifths only come from parallel fifths",
        only_from(ReducedKind::ParallelFifth, RuleKind::ParallelFifth, false),
    ));
    checks.push(check(
        "tritones only come from tritones",
        only_from(ReducedKind::Tritone, RuleKind::Tritone, false),
    ));
    checks.push(check(
        "inadmissible hidden fifths from a sixth only come from hidden fifths",
        only_from(ReducedKind::HiddenFifthFromSixth, RuleKind::HiddenFifth, true),
    ));
    checks.push(check(
        "hidden tritones only come from hidden tritones",
        only_from(ReducedKind::HiddenTritone, RuleKind::HiddenTritone, false),
    ));

    let by_triple: BTreeMap<_, _> = rows.iter().map(|(r, l)| (r.triple(), l)).collect();
    let mut unison = Vec::new();
    for c in 1..12u32 {
        if let Some(l) = by_triple.get(&(0, c, 0)) {
            let expect_inadmissible = [1, 2, 3, 4, 6, 8, 9, 10, 11].contains(&c);
            if (l.category == Category::Inadmissible) != expect_inadmissible {
                unison.push(format!("c' = {c} is {}", l.category));
            }
        }
    }
    if by_triple.get(&(0, 0, 0)).map(|l| l.category) != Some(Category::Good) {
        unison.push("unison repetition is not good".into());
    }
    checks.push(check(
        "parallel unisons are inadmissible iff c' in {1,2,3,4,8,9,10,11} or a tritone skip",
        unison,
    ));

    let odd_bad = rows
        .iter()
        .filter(|(r, l)| l.category == Category::Bad && !ReducedKind::HiddenTritone.matches(r))
        .map(|(r, _)| r.triple())
        .collect::<Vec<_>>();
    checks.push(check(
        "(7e, 5+9e) is the unique bad progression that is not a hidden tritone",
        if odd_bad == vec![(7, 5, 9)] {
            vec![]
        } else {
            vec![format!("found {odd_bad:?}")]
        },
    ));

    let good_good = rows
        .iter()
        .filter(|(_, l)| l.refined == Some(Refined::GoodGood))
        .map(|(r, _)| r.triple())
        .collect::<Vec<_>>();
    checks.push(check(
        "good-good progressions are the imperfect consonance repetitions",
        if good_good == vec![(3, 0, 3), (4, 0, 4), (8, 0, 8), (9, 0, 9)] {
            vec![]
        } else {
            vec![format!("found {good_good:?}")]
        },
    ));

    type Family = (&'static str, fn(&ReducedProgression) -> bool);
    let families: [Family; 4] = [
        ("parallel fifths", |r| ReducedKind::ParallelFifth.matches(r)),
        ("parallel unisons", |r| ReducedKind::ParallelUnison.matches(r)),
        ("hidden fifths", |r| {
            let (k, c, k2) = r.triple();
            k2 == 7 && k != 7 && c != 0
        }),
        ("tritones", |r| ReducedKind::Tritone.matches(r)),
    ];
    let general_rules: Vec<String> = families
        .iter()
        .filter(|(_, member)| {
            rows.iter()
                .filter(|(r, _)| member(r))
                .all(|(_, l)| l.category == Category::Inadmissible)
        })
        .map(|(name, _)| name.to_string())
        .collect();
    checks.push(check(
        "only the parallel fifths and tritone rules keep their generality",
        if general_rules == ["parallel fifths", "tritones"] {
            vec![]
        } else {
            vec![format!("general: {general_rules:?}")]
        },
    ));

    let surjective = rows
        .iter()
        .filter(|(r, _)| style.preimages(r).is_empty())
        .map(|(r, _)| r.to_string())
        .collect();
    checks.push(check("every diatonic reduced progression has a strict preimage", surjective));

    Ok(CrosscheckReport {
        checks,
        general_rules,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedSummary {
    pub total: usize,
    pub inadmissible: usize,
    pub bad: usize,
    pub good: usize,
    /// `(kind, count)`, clause memberships, table order.
    pub kinds: Vec<(String, usize)>,
    pub refined: Vec<(String, usize)>,
}

pub fn summarize_reduced(rows: &[(ReducedProgression, ReducedLabel)]) -> ReducedSummary {
    let count = |c| rows.iter().filter(|(_, l)| l.category == c).count();
    let kinds = ReducedKind::INADMISSIBLE
        .into_iter()
        .chain(ReducedKind::BAD)
        .map(|k| {
            let n = rows.iter().filter(|(_, l)| l.matched.contains(&k)).count();
            (k.as_str().to_string(), n)
        })
        .collect();
    let refined = Refined::ALL
        .into_iter()
        .map(|r| {
            let n = rows.iter().filter(|(_, l)| l.refined == Some(r)).count();
            (r.as_str().to_string(), n)
        })
        .collect();
    ReducedSummary {
        total: rows.len(),
        inadmissible: count(Category::Inadmissible),
        bad: count(Category::Bad),
        good: count(Category::Good),
        kinds,
        refined,
    }
}
