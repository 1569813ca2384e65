//! Reduced-style labels against model verdicts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CounterpointModel, Variant, Verdict, VerdictKind};
use crate::reduction::{ReducedKind, ReducedLabel, ReducedProgression, ReducedStyle, Refined};
use crate::strict::Category;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    Original,
    Refined,
    /// Only the rules that keep their generality under projection (parallel
    /// fifths and tritones) make a progression inadmissible*; every other
    /// inadmissible progression counts as good*.
    Starred,
}

impl Semantics {
    pub const ALL: [Semantics; 3] = [Semantics::Original, Semantics::Refined, Semantics::Starred];

    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::Original => "original",
            Semantics::Refined => "refined",
            Semantics::Starred => "starred",
        }
    }

    pub fn parse(s: &str) -> Option<Semantics> {
        Self::ALL.into_iter().find(|v| v.as_str() == s)
    }

    /// The columns partitioning the progressions under this semantics.
    pub fn columns(self) -> &'static [Column] {
        match self {
            Semantics::Original => &[Column::Inadmissible, Column::Bad, Column::Good],
            Semantics::Refined => &[
                Column::Inadmissible,
                Column::Bad,
                Column::GoodGood,
                Column::GoodBad,
                Column::Ambiguous,
            ],
            Semantics::Starred => &[Column::InadmissibleStar, Column::Bad, Column::GoodStar],
        }
    }

    /// `(inadmissible, good)` columns entering the metrics.
    fn metric_columns(self) -> (Column, Column) {
        match self {
            Semantics::Original => (Column::Inadmissible, Column::Good),
            Semantics::Refined => (Column::Inadmissible, Column::GoodGood),
            Semantics::Starred => (Column::InadmissibleStar, Column::GoodStar),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Inadmissible,
    InadmissibleStar,
    Bad,
    Good,
    GoodStar,
    GoodGood,
    GoodBad,
    Ambiguous,
}

impl Column {
    pub const ALL: [Column; 8] = [
        Column::Inadmissible,
        Column::InadmissibleStar,
        Column::Bad,
        Column::Good,
        Column::GoodStar,
        Column::GoodGood,
        Column::GoodBad,
        Column::Ambiguous,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Column::Inadmissible => "inadmissible",
            Column::InadmissibleStar => "inadmissible*",
            Column::Bad => "bad",
            Column::Good => "good",
            Column::GoodStar => "good*",
            Column::GoodGood => "good-good",
            Column::GoodBad => "good-bad",
            Column::Ambiguous => "ambiguous",
        }
    }

    pub fn parse(s: &str) -> Option<Column> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

/// Kinds keeping their generality under projection.
const GENERAL_KINDS: [ReducedKind; 2] = [ReducedKind::ParallelFifth, ReducedKind::Tritone];

/// Every column a label belongs to, one per semantics at most.
pub fn columns_of(label: &ReducedLabel) -> Vec<Column> {
    let mut out = Vec::with_capacity(3);
    match label.category {
        Category::Inadmissible => {
            out.push(Column::Inadmissible);
            if label.matched.iter().any(|k| GENERAL_KINDS.contains(k)) {
                out.push(Column::InadmissibleStar);
            } else {
                out.push(Column::GoodStar);
            }
        }
        Category::Bad => out.push(Column::Bad),
        Category::Good => {
            out.push(Column::Good);
            out.push(Column::GoodStar);
            out.push(match label.refined {
                Some(Refined::GoodGood) => Column::GoodGood,
                Some(Refined::GoodBad) => Column::GoodBad,
                _ => Column::Ambiguous,
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub progression: ReducedProgression,
    pub label: ReducedLabel,
    pub verdict: Verdict,
}

/// The join of reduced labels and verdicts over the diatonic progressions.
#[derive(Debug, Clone)]
pub struct Comparison {
    variant: Variant,
    rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn new(style: &ReducedStyle, model: &CounterpointModel) -> Result<Self> {
        if !model.dichotomy().is_standard() {
            return Err(Error::RequiresTwelve("comparison with the reduced strict style"));
        }
        let progs = style.progressions(model.flavor());
        let verdicts = model.verdicts(&progs)?;
        let rows = verdicts
            .into_iter()
            .map(|(p, verdict)| {
                style.classify(&p).map(|label| ComparisonRow {
                    progression: p,
                    label,
                    verdict,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Comparison {
            variant: model.variant(),
            rows,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rows(&self) -> &[ComparisonRow] {
        &self.rows
    }

    pub fn cross_table(&self, semantics: Semantics) -> CrossTable {
        let mut counts = BTreeMap::new();
        for row in &self.rows {
            for col in columns_of(&row.label) {
                *counts.entry((row.verdict.value, col)).or_insert(0) += 1;
            }
        }
        CrossTable {
            variant: self.variant,
            semantics,
            counts,
        }
    }

    pub fn kind_table(&self) -> KindTable {
        let mut counts = BTreeMap::new();
        for row in &self.rows {
            for &k in &row.label.matched {
                *counts.entry((row.verdict.value, k)).or_insert(0) += 1;
            }
        }
        KindTable {
            variant: self.variant,
            counts,
        }
    }

    pub fn rule_recovery(&self) -> RuleRecovery {
        let mut parallels: BTreeMap<u32, Vec<VerdictKind>> = BTreeMap::new();
        let mut forbidden = Vec::new();
        let mut non_polarized = Vec::new();
        for row in &self.rows {
            let (k, c, k2) = row.progression.triple();
            if k != k2 || c == 0 {
                continue;
            }
            parallels.entry(k).or_default().push(row.verdict.value);
            if k == 0 {
                match row.verdict.value {
                    VerdictKind::Forbidden => forbidden.push(c),
                    VerdictKind::NonPolarized => non_polarized.push(c),
                    VerdictKind::Allowed => {}
                }
            }
        }
        let prohibited = parallels
            .into_iter()
            .filter(|(_, vs)| vs.iter().all(|&v| v != VerdictKind::Allowed))
            .map(|(k, _)| k)
            .collect();
        RuleRecovery {
            variant: self.variant,
            parallel_prohibited: prohibited,
            forbidden_unison_skips: forbidden,
            non_polarized_unison_skips: non_polarized,
        }
    }
}

/// Counts per `(verdict, column)`; a progression is counted once per
/// semantics, so the columns of each semantics partition the rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossTable {
    pub variant: Variant,
    pub semantics: Semantics,
    counts: BTreeMap<(VerdictKind, Column), usize>,
}

impl CrossTable {
    pub fn from_counts(
        variant: Variant,
        semantics: Semantics,
        counts: impl IntoIterator<Item = ((VerdictKind, Column), usize)>,
    ) -> Self {
        CrossTable {
            variant,
            semantics,
            counts: counts.into_iter().filter(|&(_, n)| n > 0).collect(),
        }
    }

    pub fn get(&self, verdict: VerdictKind, column: Column) -> usize {
        self.counts.get(&(verdict, column)).copied().unwrap_or(0)
    }

    pub fn row(&self, verdict: VerdictKind) -> Vec<usize> {
        self.semantics
            .columns()
            .iter()
            .map(|&c| self.get(verdict, c))
            .collect()
    }

    pub fn row_total(&self, verdict: VerdictKind) -> usize {
        self.row(verdict).iter().sum()
    }

    pub fn total(&self) -> usize {
        VerdictKind::ALL.iter().map(|&v| self.row_total(v)).sum()
    }

    /// `matches = F∧I + F∧B + A∧G`, `mismatches = F∧G + A∧I`, with `I`, `G`
    /// the inadmissible and good columns of the semantics. Allowed bad
    /// progressions count toward neither.
    pub fn metrics(&self) -> Metrics {
        let (inad, good) = self.semantics.metric_columns();
        let (a, f) = (VerdictKind::Allowed, VerdictKind::Forbidden);
        Metrics {
            matches: self.get(f, inad) + self.get(f, Column::Bad) + self.get(a, good),
            mismatches: self.get(f, good) + self.get(a, inad),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub matches: usize,
    pub mismatches: usize,
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matches={} mismatches={}", self.matches, self.mismatches)
    }
}

/// Per-kind verdict counts over inadmissible and bad progressions; a
/// progression matching several clauses of its category counts in each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindTable {
    pub variant: Variant,
    counts: BTreeMap<(VerdictKind, ReducedKind), usize>,
}

impl KindTable {
    pub const KINDS: [ReducedKind; 6] = [
        ReducedKind::ParallelFifth,
        ReducedKind::ParallelUnison,
        ReducedKind::HiddenFifthFromSixth,
        ReducedKind::Tritone,
        ReducedKind::ProjectedImperfectSimilarSkips,
        ReducedKind::HiddenTritone,
    ];

    pub fn get(&self, verdict: VerdictKind, kind: ReducedKind) -> usize {
        self.counts.get(&(verdict, kind)).copied().unwrap_or(0)
    }

    pub fn row(&self, verdict: VerdictKind) -> [usize; 6] {
        Self::KINDS.map(|k| self.get(verdict, k))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleRecovery {
    pub variant: Variant,
    /// Intervals whose parallel motions are never allowed.
    pub parallel_prohibited: Vec<u32>,
    /// Cantus skips making a parallel unison forbidden.
    pub forbidden_unison_skips: Vec<u32>,
    pub non_polarized_unison_skips: Vec<u32>,
}

pub fn compare(variant: Variant) -> Result<Comparison> {
    let model = CounterpointModel::new(&crate::Dichotomy::standard(), variant)?;
    Comparison::new(&ReducedStyle::standard(), &model)
}

pub fn cross_table(variant: Variant, semantics: Semantics) -> Result<CrossTable> {
    Ok(compare(variant)?.cross_table(semantics))
}

pub fn kind_table(variant: Variant) -> Result<KindTable> {
    Ok(compare(variant)?.kind_table())
}

pub fn match_metrics(variant: Variant, semantics: Semantics) -> Result<Metrics> {
    Ok(cross_table(variant, semantics)?.metrics())
}

pub fn rule_recovery(variant: Variant) -> Result<RuleRecovery> {
    Ok(compare(variant)?.rule_recovery())
}
