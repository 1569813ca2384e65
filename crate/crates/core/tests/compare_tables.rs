use counterpoint::compare::{compare, Column, Metrics, Semantics};
use counterpoint::model::{Variant, VerdictKind};
use counterpoint::reduction::ReducedStyle;
use counterpoint::strict::Category;

use VerdictKind::{Allowed, Forbidden, NonPolarized};

#[test]
fn idempotent_tables() {
    let cmp = compare(Variant::Idempotent).unwrap();
    let t = cmp.cross_table(Semantics::Original);
    assert_eq!(t.row(Allowed), vec![52, 17, 171]);
    assert_eq!(t.row(Forbidden), vec![21, 6, 13]);
    assert_eq!(t.row(NonPolarized), vec![1, 0, 6]);
    let r = cmp.cross_table(Semantics::Refined);
    assert_eq!(r.row(Allowed)[2..], [0, 15, 156]);
    assert_eq!(r.row(Forbidden)[2..], [0, 1, 12]);
    assert_eq!(r.row(NonPolarized)[2..], [4, 0, 2]);

    let k = cmp.kind_table();
    assert_eq!(k.row(Allowed), [0, 8, 10, 36, 1, 16]);
    assert_eq!(k.row(Forbidden), [10, 0, 3, 8, 0, 6]);
    assert_eq!(k.row(NonPolarized), [0, 1, 0, 1, 0, 0]);

    assert_eq!(t.metrics(), Metrics { matches: 198, mismatches: 65 });
    assert_eq!(r.metrics(), Metrics { matches: 27, mismatches: 52 });
}

#[test]
fn local_global_tables() {
    let cmp = compare(Variant::LocalGlobalNilpotent).unwrap();
    let t = cmp.cross_table(Semantics::Original);
    assert_eq!(t.row(Allowed), vec![53, 15, 167]);
    assert_eq!(t.row(Forbidden), vec![21, 8, 17]);
    assert_eq!(t.row(NonPolarized), vec![0, 0, 6]);
    let r = cmp.cross_table(Semantics::Refined);
    assert_eq!(r.row(Allowed)[2..], [0, 12, 155]);
    assert_eq!(r.row(Forbidden)[2..], [0, 4, 13]);
    assert_eq!(r.row(NonPolarized)[2..], [4, 0, 2]);

    let k = cmp.kind_table();
    assert_eq!(k.row(Allowed), [0, 4, 13, 38, 1, 14]);
    assert_eq!(k.row(Forbidden), [10, 5, 0, 7, 0, 8]);

    assert_eq!(t.metrics(), Metrics { matches: 196, mismatches: 70 });
    assert_eq!(r.metrics(), Metrics { matches: 29, mismatches: 53 });
}

#[test]
fn cross_tables_agree_with_independent_totals() {
    let style = ReducedStyle::standard();
    for variant in Variant::ALL {
        let cmp = compare(variant).unwrap();
        let t = cmp.cross_table(Semantics::Original);
        for v in VerdictKind::ALL {
            let n = cmp.rows().iter().filter(|r| r.verdict.value == v).count();
            assert_eq!(t.row_total(v), n);
        }
        let rows = style.rows(variant.flavor()).unwrap();
        for (cat, col) in [
            (Category::Inadmissible, Column::Inadmissible),
            (Category::Bad, Column::Bad),
            (Category::Good, Column::Good),
        ] {
            let n = rows.iter().filter(|(_, l)| l.category == cat).count();
            let m: usize = VerdictKind::ALL.iter().map(|&v| t.get(v, col)).sum();
            assert_eq!(m, n, "{variant} {cat:?}");
        }
    }
}

#[test]
fn metrics_recomputed_from_rows() {
    // direct count over rows, independent of the table
    for variant in Variant::ALL {
        let cmp = compare(variant).unwrap();
        let count = |v: VerdictKind, c: Category| {
            cmp.rows()
                .iter()
                .filter(|r| r.verdict.value == v && r.label.category == c)
                .count()
        };
        let matches = count(Forbidden, Category::Inadmissible)
            + count(Forbidden, Category::Bad)
            + count(Allowed, Category::Good);
        let mismatches = count(Forbidden, Category::Good) + count(Allowed, Category::Inadmissible);
        assert_eq!(
            cmp.cross_table(Semantics::Original).metrics(),
            Metrics { matches, mismatches }
        );
    }
}

#[test]
fn idempotent_rule_recovery() {
    let r = compare(Variant::Idempotent).unwrap().rule_recovery();
    assert!(r.parallel_prohibited.contains(&7));
    assert_eq!(r.non_polarized_unison_skips, vec![6]);
    assert!(r.forbidden_unison_skips.is_empty());
}
