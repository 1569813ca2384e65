//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.
//!
//! Derived quantities are recomputed here by brute force with plain integer
//! arithmetic (no library types) and compared with the library; published
//! counts are literal constants below.

use std::collections::BTreeSet;
use std::process::ExitCode;

use counterpoint::compare::{Comparison, Semantics};
use counterpoint::model::{
    successor_cardinality, successor_set, verdict_totals, CounterpointModel, LocalGlobalRule, Variant, VerdictKind,
};
use counterpoint::reduction::{summarize_reduced, ReducedProgression, ReducedStyle};
use counterpoint::scale::Scale;
use counterpoint::strict::{enumerate_strict_representatives, summarize_strict};
use counterpoint::{Dichotomy, DualSymmetry, Flavor, Residue};

/// All criteria compare exact integer counts.
const COUNT_TOLERANCE: u64 = 0;

fn within(got: usize, want: usize) -> bool {
    got.abs_diff(want) as u64 <= COUNT_TOLERANCE
}

fn all_within(got: &[usize], want: &[usize]) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(&g, &w)| within(g, w))
}

// ---- independent integer oracles ----------------------------------------

const K: [i64; 6] = [0, 3, 4, 7, 8, 9];
const D: [i64; 6] = [1, 2, 5, 6, 10, 11];
const X: [i64; 7] = [0, 2, 4, 5, 7, 9, 11];
const STRICT_K: [i64; 9] = [0, 3, 4, 7, 8, 9, 12, 15, 16];

fn m(x: i64) -> i64 {
    x.rem_euclid(12)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn unit(x: i64) -> bool {
    gcd(m(x), 12) == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Sym {
    u: i64,
    v: i64,
    c: i64,
    d: i64,
    chi: bool,
}

impl Sym {
    /// `e^{u+vτ}(c+dτ)` applied to `x+yτ`; τ² = 0 or τ² = τ.
    fn apply(self, (x, y): (i64, i64)) -> (i64, i64) {
        let extra = if self.chi { self.d * y } else { 0 };
        (m(self.u + self.c * x), m(self.v + self.c * y + self.d * x + extra))
    }

    fn flavor(self) -> Flavor {
        if self.chi { Flavor::Idempotent } else { Flavor::Nilpotent }
    }

    fn lib(self) -> DualSymmetry {
        DualSymmetry::from_ints(self.u, self.v, self.c, self.d, 12, self.flavor()).unwrap()
    }
}

fn group(chi: bool, zero_u: bool) -> Vec<Sym> {
    let mut out = Vec::new();
    for u in 0..if zero_u { 1 } else { 12 } {
        for v in 0..12 {
            for c in (0..12).filter(|&c| unit(c)) {
                for d in 0..12 {
                    if chi && !unit(c + d) {
                        continue;
                    }
                    out.push(Sym { u, v, c, d, chi });
                }
            }
        }
    }
    out
}

fn fibered(set: &[i64]) -> Vec<(i64, i64)> {
    (0..12).flat_map(|x| set.iter().map(move |&k| (x, k))).collect()
}

fn embeddable(pitches: &[i64]) -> bool {
    (0..12).any(|t| pitches.iter().all(|&p| X.contains(&m(p + t))))
}

/// Strict representatives with `c = 0`, straight from the preliminary rules.
fn strict_oracle() -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for d in STRICT_K {
        for c2 in -12..=12 {
            for d2 in d - 12..=d + 12 {
                if STRICT_K.contains(&(d2 - c2)) && embeddable(&[0, d, c2, d2]) {
                    out.push((0, d, c2, d2));
                }
            }
        }
    }
    out
}

fn reduced_oracle() -> BTreeSet<(i64, i64, i64)> {
    strict_oracle()
        .into_iter()
        .map(|(_, d, c2, d2)| (m(d), m(c2), m(d2 - c2)))
        .collect()
}

fn polarized_oracle((k, c, k2): (i64, i64, i64), g: &[Sym]) -> bool {
    g.iter().any(|s| {
        D.contains(&s.apply((0, k)).1) && K.contains(&s.apply((c, k2)).1)
    })
}

fn rp(t: (i64, i64, i64), f: Flavor) -> ReducedProgression {
    ReducedProgression::new(t.0, t.1, t.2, 12, f).unwrap()
}

// ---- criteria ------------------------------------------------------------

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn strict_kind_counts() -> (Vec<usize>, (usize, usize, usize, usize)) {
    let s = summarize_strict(&enumerate_strict_representatives(&Scale::diatonic()));
    (
        s.kinds.iter().map(|(_, n)| *n).collect(),
        (s.total, s.inadmissible, s.bad, s.good),
    )
}

const EXPECTED_STRICT_KINDS: [usize; 8] = [22, 49, 88, 128, 170, 434, 38, 26];

fn criterion_1() -> Outcome {
    let lib = enumerate_strict_representatives(&Scale::diatonic());
    let oracle: BTreeSet<_> = strict_oracle().into_iter().collect();
    let lib_set: BTreeSet<_> = lib.iter().map(|(p, _)| (p.c, p.d, p.c_next, p.d_next)).collect();
    let (kinds, totals) = strict_kind_counts();
    let ok = lib_set == oracle
        && within(oracle.len(), 1057)
        && within(totals.0, 1057)
        && all_within(&[totals.1, totals.2, totals.3], &[671, 64, 322])
        && all_within(&kinds, &EXPECTED_STRICT_KINDS);
    outcome(ok, format!("total {} (oracle {}), categories {}/{}/{}, kinds {kinds:?}", totals.0, oracle.len(), totals.1, totals.2, totals.3))
}

fn criterion_2() -> Outcome {
    let style = ReducedStyle::standard();
    let rows = style.rows(Flavor::Nilpotent).unwrap();
    let lib: BTreeSet<_> = rows
        .iter()
        .map(|(r, _)| { let (a, b, c) = r.triple(); (a as i64, b as i64, c as i64) })
        .collect();
    let s = summarize_reduced(&rows);
    let kinds: Vec<usize> = s.kinds.iter().map(|(_, n)| *n).collect();
    let refined: Vec<usize> = s.refined.iter().map(|(_, n)| *n).collect();
    let ok = lib == reduced_oracle()
        && within(s.total, 287)
        && all_within(&[s.inadmissible, s.bad, s.good], &[74, 23, 190])
        && all_within(&kinds, &[10, 9, 13, 45, 1, 22])
        && all_within(&refined, &[4, 16, 170]);
    outcome(ok, format!("total {}, categories {}/{}/{}, kinds {kinds:?}, refined {refined:?}", s.total, s.inadmissible, s.bad, s.good))
}

fn criterion_3() -> Outcome {
    let mut oracle = Vec::new();
    for a in 0..12 {
        for b in (0..12).filter(|&b| unit(b)) {
            let mut img: Vec<i64> = K.iter().map(|&k| m(a + b * k)).collect();
            img.sort();
            if img == D {
                oracle.push((a, b));
            }
        }
    }
    let lib: Vec<(i64, i64)> = Dichotomy::standard()
        .polarity_search()
        .iter()
        .map(|p| (p.translate().value() as i64, p.scale().value() as i64))
        .collect();
    outcome(oracle == [(2, 5)] && lib == oracle, format!("searched 48 symmetries: {oracle:?}"))
}

fn criterion_4() -> Outcome {
    let dich = Dichotomy::standard();
    let kt = fibered(&K);
    let mut failures = Vec::new();
    for chi in [false, true] {
        let g = group(chi, false);
        for z in 0..12 {
            let found: Vec<Sym> = g
                .iter()
                .copied()
                .filter(|s| m(s.c * z + s.u) == z)
                .filter(|s| kt.iter().all(|&p| D.contains(&s.apply(p).1)))
                .collect();
            let lib = dich.local_polarity(Residue::new(z, 12).unwrap(), if chi { Flavor::Idempotent } else { Flavor::Nilpotent }).unwrap();
            let formula = Sym { u: m(8 * z), v: 2, c: 5, d: 0, chi };
            let ok = found.len() == 1 && found[0].lib() == lib && (chi || found[0] == formula);
            if !ok {
                failures.push(format!("chi={chi} z={z}: {found:?}"));
            }
        }
    }
    outcome(failures.is_empty(), if failures.is_empty() { "24 fibers, each with exactly one local polarity; e^{8z+2e}5 for eps".to_string() } else { failures.join("; ") })
}

fn criterion_5() -> Outcome {
    let triples = reduced_oracle();
    let dich = Dichotomy::standard();
    let mut detail = Vec::new();
    let mut ok = true;
    for (chi, variant, want) in [(false, Variant::Classical, 6), (true, Variant::Idempotent, 7)] {
        let g = group(chi, false);
        let oracle: BTreeSet<_> = triples.iter().copied().filter(|&t| !polarized_oracle(t, &g)).collect();
        let mut expected: BTreeSet<_> = triples.iter().copied().filter(|&(k, c, k2)| c == 0 && k == k2).collect();
        if chi {
            expected.insert((0, 6, 0));
        }
        let model = CounterpointModel::new(&dich, variant).unwrap();
        let lib: BTreeSet<_> = triples
            .iter()
            .copied()
            .filter(|&t| model.verdict(&rp(t, variant.flavor())).unwrap().value == VerdictKind::NonPolarized)
            .collect();
        ok &= oracle == expected && lib == oracle && within(oracle.len(), want);
        detail.push(format!("{}: {} non-polarized", variant.flavor(), oracle.len()));
    }
    outcome(ok, detail.join(", "))
}

fn criterion_6() -> Outcome {
    let dich = Dichotomy::standard();
    let kt = fibered(&K);
    let mut checked = 0;
    let mut failures = Vec::new();
    for chi in [false, true] {
        for s in group(chi, true) {
            let mut direct: Vec<(i64, i64)> = kt.iter().map(|&p| s.apply(p)).filter(|p| K.contains(&p.1)).collect();
            direct.sort();
            let lib: Vec<(i64, i64)> = successor_set(s.lib(), &dich)
                .unwrap()
                .iter()
                .map(|x| (x.base().value() as i64, x.delta().value() as i64))
                .collect();
            // rho * sum_i |K_i| |K_{c i + v mod rho}|, rho = gcd(d, 12)
            let rho = gcd(s.d, 12).max(1);
            let class = |i: i64| K.iter().filter(|&&k| k % rho == i).count();
            let formula: usize = (0..rho).map(|i| class(i) * class((s.c * i + s.v) % rho)).sum::<usize>() * rho as usize;
            let lib_card = successor_cardinality(s.lib(), &dich).unwrap();
            if lib != direct || formula != direct.len() || lib_card != direct.len() {
                failures.push(format!("{s:?}"));
            }
            checked += 1;
        }
    }
    let ok = failures.is_empty() && checked == 576 + 192;
    outcome(ok, format!("{checked} symmetries checked, {} disagreements", failures.len()))
}

fn totals(variant: Variant) -> [usize; 3] {
    let dich = Dichotomy::standard();
    let model = CounterpointModel::new(&dich, variant).unwrap();
    let progs = ReducedStyle::standard().progressions(variant.flavor());
    verdict_totals(&model.verdicts(&progs).unwrap())
}

fn criterion_7() -> Outcome {
    let got: Vec<[usize; 3]> = [Variant::Classical, Variant::Idempotent, Variant::LocalGlobalNilpotent]
        .into_iter()
        .map(totals)
        .collect();
    let want = [[250, 31, 6], [240, 40, 7], [235, 46, 6]];
    let ok = got.iter().zip(&want).all(|(g, w)| all_within(g, w));
    outcome(ok, format!("allowed/forbidden/non-polarized {got:?}"))
}

fn criterion_8() -> Outcome {
    let dich = Dichotomy::standard();
    let mut ok = true;
    for v in [Variant::LocalGlobalNilpotent, Variant::LocalGlobalIdempotent] {
        let second = CounterpointModel::from_oracle(&dich, v, LocalGlobalRule::Fiberwise).unwrap();
        let third = CounterpointModel::from_oracle(&dich, v, LocalGlobalRule::Global).unwrap();
        let progs = ReducedStyle::standard().progressions(v.flavor());
        let a = second.verdicts(&progs).unwrap();
        let b = third.verdicts(&progs).unwrap();
        ok &= a.len() == 287 && a.iter().zip(&b).all(|(x, y)| x.1.value == y.1.value);
    }
    let eps = CounterpointModel::new(&dich, Variant::LocalGlobalNilpotent).unwrap();
    let chi = CounterpointModel::new(&dich, Variant::LocalGlobalIdempotent).unwrap();
    let diff: Vec<_> = reduced_oracle()
        .into_iter()
        .filter_map(|t| {
            let a = eps.verdict(&rp(t, Flavor::Nilpotent)).unwrap().value;
            let b = chi.verdict(&rp(t, Flavor::Idempotent)).unwrap().value;
            (a != b).then_some((t, a, b))
        })
        .collect();
    ok &= diff == [((0, 6, 0), VerdictKind::Forbidden, VerdictKind::NonPolarized)];
    outcome(ok, format!("second = third variation on 287; eps/chi differ on {diff:?}"))
}

/// Published cross tables: rows allowed, forbidden, non-polarized over
/// inadmissible, bad, good, good-good, good-bad, ambiguous; starred columns
/// (inadmissible*, good*) where published.
struct ExpectedCross {
    variant: Variant,
    rows: [[usize; 6]; 3],
    starred: Option<[[usize; 2]; 3]>,
    /// parallel 5ths, parallel unisons, hidden 5ths, tritones, (7, 5, 9), hidden tritones
    kinds: [[usize; 6]; 3],
    metrics: [(usize, usize); 2],
}

fn expected_tables() -> [ExpectedCross; 3] {
    [
        ExpectedCross {
            variant: Variant::Classical,
            rows: [[55, 17, 178, 0, 16, 162], [19, 6, 6, 0, 0, 6], [0, 0, 6, 4, 0, 2]],
            starred: Some([[36, 197], [19, 6], [0, 6]]),
            kinds: [[0, 8, 13, 36, 1, 16], [10, 1, 0, 9, 0, 6], [0; 6]],
            metrics: [(203, 61), (25, 55)],
        },
        ExpectedCross {
            variant: Variant::Idempotent,
            rows: [[52, 17, 171, 0, 15, 156], [21, 6, 13, 0, 1, 12], [1, 0, 6, 4, 0, 2]],
            starred: None,
            kinds: [[0, 8, 10, 36, 1, 16], [10, 0, 3, 8, 0, 6], [0, 1, 0, 1, 0, 0]],
            metrics: [(198, 65), (27, 52)],
        },
        ExpectedCross {
            variant: Variant::LocalGlobalNilpotent,
            rows: [[53, 15, 167, 0, 12, 155], [21, 8, 17, 0, 4, 13], [0, 0, 6, 4, 0, 2]],
            starred: None,
            kinds: [[0, 4, 13, 38, 1, 14], [10, 5, 0, 7, 0, 8], [0; 6]],
            metrics: [(196, 70), (29, 53)],
        },
    ]
}

fn comparison(v: Variant) -> Comparison {
    let model = CounterpointModel::new(&Dichotomy::standard(), v).unwrap();
    Comparison::new(&ReducedStyle::standard(), &model).unwrap()
}

fn criterion_9() -> Outcome {
    let mut mismatched = Vec::new();
    let mut metrics = Vec::new();
    for t in expected_tables() {
        let cmp = comparison(t.variant);
        let orig = cmp.cross_table(Semantics::Original);
        let refined = cmp.cross_table(Semantics::Refined);
        let starred = cmp.cross_table(Semantics::Starred);
        let kinds = cmp.kind_table();
        for (i, v) in VerdictKind::ALL.into_iter().enumerate() {
            let r = refined.row(v);
            let got = [orig.row(v), r[2..].to_vec()].concat();
            if !all_within(&got, &t.rows[i]) {
                mismatched.push(format!("{} {v}: {got:?}", t.variant));
            }
            if let Some(s) = t.starred {
                let row = starred.row(v);
                if !all_within(&[row[0], row[2]], &s[i]) {
                    mismatched.push(format!("{} {v} starred: {row:?}", t.variant));
                }
            }
            if !all_within(&kinds.row(v), &t.kinds[i]) {
                mismatched.push(format!("{} {v} kinds: {:?}", t.variant, kinds.row(v)));
            }
        }
        for (sem, want) in [(Semantics::Original, t.metrics[0]), (Semantics::Refined, t.metrics[1])] {
            let m = cmp.cross_table(sem).metrics();
            metrics.push((m.matches, m.mismatches));
            if !within(m.matches, want.0) || !within(m.mismatches, want.1) {
                mismatched.push(format!("{} {sem} metrics {m}", t.variant));
            }
        }
        if t.starred.is_some() {
            let m = starred.metrics();
            metrics.push((m.matches, m.mismatches));
            if !within(m.matches, 222) || !within(m.mismatches, 42) {
                mismatched.push(format!("{} starred metrics {m}", t.variant));
            }
        }
    }
    let detail = if mismatched.is_empty() {
        format!("tables match cell for cell; metrics {metrics:?}")
    } else {
        mismatched.join("; ")
    };
    outcome(mismatched.is_empty(), detail)
}

fn criterion_10() -> Outcome {
    let classical = comparison(Variant::Classical).rule_recovery();
    let idempotent = comparison(Variant::Idempotent).rule_recovery();
    let ok = classical.parallel_prohibited.contains(&7)
        && classical.forbidden_unison_skips == [6]
        && idempotent.non_polarized_unison_skips == [6];
    outcome(
        ok,
        format!(
            "classical: parallel-prohibited {:?}, forbidden unison skip {:?}; idempotent: non-polarized unison skip {:?}",
            classical.parallel_prohibited, classical.forbidden_unison_skips, idempotent.non_polarized_unison_skips
        ),
    )
}

fn criterion_11() -> Outcome {
    let (kinds, totals) = strict_kind_counts();
    let deltas: Vec<i64> = kinds.iter().zip(EXPECTED_STRICT_KINDS).map(|(&g, w)| g as i64 - w as i64).collect();
    let hard = within(totals.0, 1057) && all_within(&[totals.1, totals.2, totals.3], &[671, 64, 322]);
    let exact = deltas.iter().all(|&d| d == 0);
    outcome(
        hard,
        if exact {
            "per-kind counts exact under clause-membership counting; fallback not needed".to_string()
        } else {
            format!("per-kind deltas {deltas:?}")
        },
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("strict enumeration", criterion_1),
        ("reduced enumeration", criterion_2),
        ("uniqueness of polarity", criterion_3),
        ("local characterization", criterion_4),
        ("polarization", criterion_5),
        ("successor formula", criterion_6),
        ("verdict totals", criterion_7),
        ("variation equivalence", criterion_8),
        ("comparison tables", criterion_9),
        ("rule recovery", criterion_10),
        ("per-kind fallback", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.passed {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}: {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
