use std::collections::BTreeMap;
use std::sync::OnceLock;

use klein11_core::exact::{Cyclotomic, Ring};
use klein11_core::group660::*;
use klein11_core::klein::NamedForms;

fn group() -> &'static GroupTable {
    static G: OnceLock<GroupTable> = OnceLock::new();
    G.get_or_init(|| build_group().unwrap())
}

fn inverse(g: &GroupTable, a: usize) -> usize {
    (0..g.len()).find(|&b| g.product(a, b) == g.identity_index()).unwrap()
}

#[test]
fn word_scheme_gives_660_distinct_elements() {
    let g = group();
    assert_eq!(normal_form_words().len(), 5 * 11 + 5 * 11 * 11);
    assert_eq!(g.len(), 660);
    let mut canon: Vec<_> = g.elements.iter().map(|e| e.canonical.clone()).collect();
    canon.sort_by_key(|m| format!("{:?}", m.entries()));
    canon.dedup();
    assert_eq!(canon.len(), 660);
    assert!(g.exact_closure);
}

#[test]
fn word_semantics_read_left_to_right() {
    let (s, t, _) = generators();
    assert!(word_matrix("S T").unwrap().proj_eq(&s.then(&t)));
    assert!(word_matrix("ST S^-1").unwrap().proj_eq(&s.then(&t).then(&s.pow(10))));
    assert!(word_matrix("S^6 T S^2 T S^6 T").unwrap().proj_eq(&generators().2));
    assert!(word_matrix("X").is_err());
}

#[test]
fn relations() {
    let (s, t, c) = generators();
    assert!(s.pow(11).is_proj_identity() && !s.is_proj_identity());
    assert!(t.pow(2).is_proj_identity() && !t.is_proj_identity());
    let u = c.pow(2);
    let v = word_matrix("S^-1 T S").unwrap();
    assert!(u.pow(5).is_proj_identity());
    assert!(v.pow(2).is_proj_identity());
    assert!(u.then(&v).pow(3).is_proj_identity());
    assert_eq!(u.then(&v).proj_order(10), Some(3));
}

#[test]
fn class_equation() {
    let g = group();
    let inv: Vec<usize> = (0..g.len()).map(|a| inverse(g, a)).collect();
    let mut class_of = vec![usize::MAX; g.len()];
    let mut sizes: Vec<(u32, usize)> = Vec::new();
    for x in 0..g.len() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        for h in 0..g.len() {
            let y = g.product(g.product(inv[h], x), h);
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                size += 1;
            }
        }
        sizes.push((g.order_of(x), size));
    }
    sizes.sort();
    // PSL(2, 11): two classes each of elements of order 5 and of order 11
    assert_eq!(sizes, [(1, 1), (2, 55), (3, 110), (5, 132), (5, 132), (6, 110), (11, 60), (11, 60)]);
    let mut by_order: BTreeMap<u32, usize> = BTreeMap::new();
    for (o, n) in sizes {
        *by_order.entry(o).or_default() += n;
    }
    assert_eq!(by_order, g.order_census());
}

#[test]
fn subgroups_of_order_60() {
    let g = group();
    let first = subgroup60(g).unwrap();
    let second = subgroup60_from(g, &NamedForms::build(true).unwrap().stabilizer).unwrap();
    assert_eq!(first.len(), 60);
    assert_eq!(second.len(), 60);
    let orders = |sub: &[usize]| sub.iter().fold(BTreeMap::<u32, usize>::new(), |mut m, &x| {
        *m.entry(g.order_of(x)).or_default() += 1;
        m
    });
    // both are A₅: 1 + 15 + 20 + 24
    let a5: BTreeMap<u32, usize> = [(1, 1), (2, 15), (3, 20), (5, 24)].into_iter().collect();
    assert_eq!(orders(&first), a5);
    assert_eq!(orders(&second), a5);
    assert_ne!(first, second);
}

#[test]
fn relative_characters_of_the_named_forms() {
    let f = NamedForms::build(false).unwrap();
    let (s, t, c) = generators();
    for m in [&s, &t, &c] {
        assert_eq!(relative_character(&f.nabla, m), Some(Cyclotomic::one()));
        assert_eq!(relative_character(&f.c_form, m), Some(Cyclotomic::one()));
    }
    // H picks up the same scalar at every element reached from S, T
    let chi_t = relative_character(&f.h, &t).unwrap();
    assert_eq!(relative_character(&f.h, &s), Some(Cyclotomic::one()));
    assert_eq!(chi_t.mul_ref(&chi_t), Cyclotomic::one());
    let v = word_matrix("S^-1 T S").unwrap();
    assert_eq!(relative_character(&f.h, &v), Some(chi_t.clone()));
}

#[test]
fn reynolds_agrees_with_the_table_sum() {
    let g = group();
    let p = klein11_core::algebra::mono::<Cyclotomic>(1, [2, 1, 0, 0, 0]);
    assert_eq!(group_sum(&p), group_sum_brute(&p, g));
    let r = reynolds(&p);
    if let Some(inv) = r.invariant {
        let (s, t, _) = generators();
        assert!(is_invariant(&inv, &[s, t]).holds());
    }
}
