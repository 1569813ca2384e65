//! The strict style: Fux's first-species progression rules over integer
//! pitch space, and the enumeration of progressions modulo translation.
//!
//! A progression `(c + kx, c' + k'x)` moves the cantus firmus from `c` to `c'`
//! and the discantus from `d = c + k` to `d' = c' + k'`. Every rule depends on
//! differences only, so representatives with `c = 0` suffice.
//!
//! Clauses overlap (a tritone leap can also be a hidden fifth). A
//! [`RuleLabel`] therefore records the first matching clause in table order
//! as its `kind`, together with every clause of its category that matched.
//! The per-kind totals of [`StrictSummary`] count clause membership.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scale::Scale;

/// Consonances up to the tenth, in semitones.
pub const STRICT_CONSONANCES: [i64; 9] = [0, 3, 4, 7, 8, 9, 12, 15, 16];
const IMPERFECT: [i64; 6] = [3, 4, 8, 9, 15, 16];
/// Maximum change of a voice: an octave.
pub const MAX_VOICE_MOVE: i64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Inadmissible,
    Bad,
    Good,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Inadmissible, Category::Bad, Category::Good];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Inadmissible => "inadmissible",
            Category::Bad => "bad",
            Category::Good => "good",
        }
    }

    pub fn parse(s: &str) -> Option<Category> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Progression rule clauses, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    UnisonRepetition,
    ParallelFifth,
    ParallelOctaveUnison,
    HiddenFifth,
    HiddenOctaveUnison,
    Tritone,
    TooLargeSkip,
    ImperfectSimilarSkips,
    HiddenTritone,
}

impl RuleKind {
    pub const INADMISSIBLE: [RuleKind; 7] = [
        RuleKind::UnisonRepetition,
        RuleKind::ParallelFifth,
        RuleKind::ParallelOctaveUnison,
        RuleKind::HiddenFifth,
        RuleKind::HiddenOctaveUnison,
        RuleKind::Tritone,
        RuleKind::TooLargeSkip,
    ];
    pub const BAD: [RuleKind; 2] = [RuleKind::ImperfectSimilarSkips, RuleKind::HiddenTritone];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleKind::UnisonRepetition => "unison-repetition",
            RuleKind::ParallelFifth => "parallel-perfect-5th",
            RuleKind::ParallelOctaveUnison => "parallel-perfect-8/1",
            RuleKind::HiddenFifth => "hidden-5th",
            RuleKind::HiddenOctaveUnison => "hidden-8/1",
            RuleKind::Tritone => "tritone",
            RuleKind::TooLargeSkip => "too-large-skip",
            RuleKind::ImperfectSimilarSkips => "imp-cons-similar-skips",
            RuleKind::HiddenTritone => "hidden-tritone",
        }
    }

    pub fn parse(s: &str) -> Option<RuleKind> {
        Self::INADMISSIBLE
            .into_iter()
            .chain(Self::BAD)
            .find(|k| k.as_str() == s)
    }

    pub fn category(self) -> Category {
        if Self::BAD.contains(&self) {
            Category::Bad
        } else {
            Category::Inadmissible
        }
    }

    /// Whether the clause applies, ignoring category precedence.
    pub fn matches(self, p: &StrictProgression) -> bool {
        let (k, k2) = (p.interval(), p.next_interval());
        let (mc, md) = (p.cantus_move(), p.discantus_move());
        let similar = mc * md > 0;
        match self {
            RuleKind::UnisonRepetition => k == 0 && k2 == 0 && mc == 0,
            RuleKind::ParallelFifth => k == 7 && k2 == 7 && mc != 0,
            RuleKind::ParallelOctaveUnison => (k == 0 || k == 12) && k == k2 && mc != 0,
            RuleKind::HiddenFifth => k2 == 7 && similar && k != k2,
            RuleKind::HiddenOctaveUnison => (k2 == 0 || k2 == 12) && similar && k != k2,
            RuleKind::Tritone => mc.abs() == 6 || md.abs() == 6,
            RuleKind::TooLargeSkip => is_too_large(mc) || is_too_large(md),
            RuleKind::ImperfectSimilarSkips => {
                IMPERFECT.contains(&k2)
                    && similar
                    && mc.abs() > 2
                    && md.abs() > 2
                    && (is_large(mc) || is_large(md))
            }
            RuleKind::HiddenTritone => {
                (p.d_next - p.c).rem_euclid(12) == 6 || (p.d - p.c_next).rem_euclid(12) == 6
            }
        }
    }
}

// octave leaps are a sort of repetition, never too large
fn is_too_large(step: i64) -> bool {
    7 < step.abs() && step.abs() < 12
}

fn is_large(step: i64) -> bool {
    5 < step.abs() && step.abs() < 12
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of the strict-style rules for one progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleLabel {
    pub category: Category,
    /// First matching clause in table order; `None` iff good.
    pub kind: Option<RuleKind>,
    /// All clauses of `category` that apply.
    pub matched: Vec<RuleKind>,
}

impl RuleLabel {
    pub fn kind_str(&self) -> &'static str {
        self.kind.map_or("none", RuleKind::as_str)
    }
}

/// Two successive pitch pairs `(c, d) -> (c', d')` in `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrictProgression {
    pub c: i64,
    pub d: i64,
    pub c_next: i64,
    pub d_next: i64,
}

impl StrictProgression {
    pub fn new(c: i64, d: i64, c_next: i64, d_next: i64) -> Self {
        StrictProgression {
            c,
            d,
            c_next,
            d_next,
        }
    }

    /// `k = d - c`.
    pub fn interval(&self) -> i64 {
        self.d - self.c
    }

    /// `k' = d' - c'`.
    pub fn next_interval(&self) -> i64 {
        self.d_next - self.c_next
    }

    pub fn cantus_move(&self) -> i64 {
        self.c_next - self.c
    }

    pub fn discantus_move(&self) -> i64 {
        self.d_next - self.d
    }

    pub fn pitches(&self) -> [i64; 4] {
        [self.c, self.d, self.c_next, self.d_next]
    }

    pub fn translate(&self, t: i64) -> Self {
        StrictProgression::new(self.c + t, self.d + t, self.c_next + t, self.d_next + t)
    }

    /// The translate with `c = 0`.
    pub fn canonical(&self) -> Self {
        self.translate(-self.c)
    }

    /// Checks the preliminary rules: consonances up to the tenth, voice
    /// moves of at most an octave, and all notes in some transposition of
    /// the scale.
    pub fn check_preliminary(&self, scale: &Scale) -> Result<()> {
        for (name, k) in [("k", self.interval()), ("k'", self.next_interval())] {
            if !STRICT_CONSONANCES.contains(&k) {
                return Err(Error::PreliminaryRule(format!(
                    "interval {name} = {k} is not a consonance up to the tenth"
                )));
            }
        }
        for (name, m) in [("cantus", self.cantus_move()), ("discantus", self.discantus_move())] {
            if m.abs() > MAX_VOICE_MOVE {
                return Err(Error::PreliminaryRule(format!(
                    "{name} moves by {m}, more than an octave"
                )));
            }
        }
        if !scale.fits_some_transposition(&self.pitches()) {
            return Err(Error::PreliminaryRule(
                "notes do not lie in any transposition of the diatonic scale".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for StrictProgression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}+{}x, {}+{}x)",
            self.c,
            self.interval(),
            self.c_next,
            self.next_interval()
        )
    }
}

/// Whether the four pitch classes fit in some transposition of the diatonic
/// scale.
pub fn diatonically_embeddable(p: &StrictProgression) -> bool {
    Scale::diatonic().fits_some_transposition(&p.pitches())
}

/// Labels a progression that satisfies the preliminary rules.
pub fn classify_strict(p: &StrictProgression, scale: &Scale) -> Result<RuleLabel> {
    p.check_preliminary(scale)?;
    Ok(classify_unchecked(p))
}

pub(crate) fn classify_unchecked(p: &StrictProgression) -> RuleLabel {
    for (category, kinds) in [
        (Category::Inadmissible, &RuleKind::INADMISSIBLE[..]),
        (Category::Bad, &RuleKind::BAD[..]),
    ] {
        let matched: Vec<RuleKind> = kinds.iter().copied().filter(|k| k.matches(p)).collect();
        if let Some(&first) = matched.first() {
            return RuleLabel {
                category,
                kind: Some(first),
                matched,
            };
        }
    }
    RuleLabel {
        category: Category::Good,
        kind: None,
        matched: Vec::new(),
    }
}

/// All representatives `(0 + kx, c' + k'x)` satisfying the preliminary
/// rules, with their labels, ordered by `(k, c', k')`.
pub fn enumerate_strict_representatives(scale: &Scale) -> Vec<(StrictProgression, RuleLabel)> {
    let mut out = Vec::new();
    for &k in &STRICT_CONSONANCES {
        for c_next in -MAX_VOICE_MOVE..=MAX_VOICE_MOVE {
            for &k2 in &STRICT_CONSONANCES {
                let p = StrictProgression::new(0, k, c_next, c_next + k2);
                if p.discantus_move().abs() > MAX_VOICE_MOVE
                    || !scale.fits_some_transposition(&p.pitches())
                {
                    continue;
                }
                let label = classify_unchecked(&p);
                out.push((p, label));
            }
        }
    }
    out
}

/// Aggregate rows of the strict-style counting table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictSummary {
    pub total: usize,
    pub inadmissible: usize,
    pub bad: usize,
    pub good: usize,
    /// `(row label, count)` in table order; counts are clause memberships.
    pub kinds: Vec<(String, usize)>,
    pub notes: Vec<String>,
}

/// Table rows; unison repetitions share the parallel eights/unisons row.
pub const STRICT_TABLE_ROWS: [(&str, &[RuleKind]); 8] = [
    ("parallel fifths", &[RuleKind::ParallelFifth]),
    (
        "parallel eights and unisons",
        &[RuleKind::ParallelOctaveUnison, RuleKind::UnisonRepetition],
    ),
    ("hidden fifths", &[RuleKind::HiddenFifth]),
    ("hidden eights and unisons", &[RuleKind::HiddenOctaveUnison]),
    ("tritones", &[RuleKind::Tritone]),
    ("too large skips", &[RuleKind::TooLargeSkip]),
    ("imp. cons. by sim. skips", &[RuleKind::ImperfectSimilarSkips]),
    ("hidden tritones", &[RuleKind::HiddenTritone]),
];

pub fn summarize_strict(rows: &[(StrictProgression, RuleLabel)]) -> StrictSummary {
    let count = |cat| rows.iter().filter(|(_, l)| l.category == cat).count();
    let kinds = STRICT_TABLE_ROWS
        .iter()
        .map(|(name, members)| {
            let n = rows
                .iter()
                .filter(|(_, l)| l.matched.iter().any(|k| members.contains(k)))
                .count();
            (name.to_string(), n)
        })
        .collect();
    StrictSummary {
        total: rows.len(),
        inadmissible: count(Category::Inadmissible),
        bad: count(Category::Bad),
        good: count(Category::Good),
        kinds,
        notes: vec![
            "kind rows count every applicable clause within the category".into(),
            "unison repetitions are counted with parallel eights and unisons".into(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(c: i64, d: i64, c2: i64, d2: i64) -> RuleLabel {
        classify_strict(&StrictProgression::new(c, d, c2, d2), &Scale::diatonic()).unwrap()
    }

    #[test]
    fn parallel_fifth() {
        let l = label(0, 7, 2, 9);
        assert_eq!(l.category, Category::Inadmissible);
        assert_eq!(l.kind, Some(RuleKind::ParallelFifth));
    }

    #[test]
    fn imperfect_repetition_is_good() {
        let l = label(0, 4, 0, 4);
        assert_eq!(l.category, Category::Good);
        assert_eq!(l.kind_str(), "none");
        assert!(l.matched.is_empty());
    }

    #[test]
    fn similar_skip_to_sixth() {
        // k' = 9, both voices ascend, cantus by 5 and discantus by 7
        let p = StrictProgression::new(0, 7, 5, 14);
        assert!(!RuleKind::HiddenFifth.matches(&p));
        assert!(RuleKind::ImperfectSimilarSkips.matches(&p));
        let l = label(0, 7, 5, 14);
        assert_eq!(l.category, Category::Bad);
        assert_eq!(l.kind, Some(RuleKind::ImperfectSimilarSkips));
    }

    #[test]
    fn unison_repetition() {
        let l = label(0, 0, 0, 0);
        assert_eq!(l.kind, Some(RuleKind::UnisonRepetition));
        // the octave repetition is allowed
        assert_eq!(label(0, 12, 0, 12).category, Category::Good);
    }

    #[test]
    fn octave_leap_is_not_too_large() {
        let p = StrictProgression::new(0, 4, 12, 16);
        assert!(!RuleKind::TooLargeSkip.matches(&p));
        let p = StrictProgression::new(0, 4, 9, 12);
        assert!(RuleKind::TooLargeSkip.matches(&p));
    }

    #[test]
    fn overlapping_clauses_are_all_recorded() {
        // cantus leaps a tritone upward into a fifth, discantus by a sixth
        let p = StrictProgression::new(0, 4, 6, 13);
        let l = classify_unchecked(&p);
        assert_eq!(l.kind, Some(RuleKind::HiddenFifth));
        assert_eq!(
            l.matched,
            vec![RuleKind::HiddenFifth, RuleKind::Tritone, RuleKind::TooLargeSkip]
        );
    }

    #[test]
    fn preliminary_violations_are_named() {
        let x = Scale::diatonic();
        let e = classify_strict(&StrictProgression::new(0, 5, 2, 9), &x).unwrap_err();
        assert!(e.to_string().contains("k = 5"), "{e}");
        let e = classify_strict(&StrictProgression::new(0, 7, 14, 21), &x).unwrap_err();
        assert!(e.to_string().contains("octave"), "{e}");
        let e = classify_strict(&StrictProgression::new(0, 3, 1, 4), &x).unwrap_err();
        assert!(e.to_string().contains("diatonic"), "{e}");
    }

    #[test]
    fn tritone_pair_never_embeds() {
        // {0, 6} together with a third note a semitone off cannot be diatonic
        assert!(!diatonically_embeddable(&StrictProgression::new(0, 6, 1, 7)));
        assert!(diatonically_embeddable(&StrictProgression::new(0, 7, 2, 9)));
    }

    #[test]
    fn enumeration_counts() {
        let rows = enumerate_strict_representatives(&Scale::diatonic());
        let s = summarize_strict(&rows);
        assert_eq!(s.total, 1057);
        assert_eq!((s.inadmissible, s.bad, s.good), (671, 64, 322));
        let counts: Vec<usize> = s.kinds.iter().map(|(_, n)| *n).collect();
        assert_eq!(counts, vec![22, 49, 88, 128, 170, 434, 38, 26]);
    }

    #[test]
    fn representatives_are_canonical_and_translation_invariant() {
        for (p, l) in enumerate_strict_representatives(&Scale::diatonic()) {
            assert_eq!(p.canonical(), p);
            for t in [-25, -12, -7, 1, 5, 12, 30] {
                assert_eq!(classify_unchecked(&p.translate(t)), l, "{p} shifted by {t}");
            }
        }
    }
}
