mod common;

use common::ctx;
use ulrich_core::certificates::{make_certificate, rules_out, rules_out_family, verify_bad_pair};
use ulrich_core::rational::{frac, int};
use ulrich_core::ulrich::{is_ulrich_criterion, phi};
use ulrich_core::{AmbientVector, NodeSet, ParabolicContext, Weight};

fn by_simple(c: &ParabolicContext, coords: &[i64]) -> usize {
    c.root_system().root_index(coords).unwrap()
}

/// `γ_{i,j}`: the highest root of the `{α_2, …}` branch lowered along two
/// chains, equivalently `½(…)` with minus signs at `ε_i` and `ε_j`.
fn gamma(c: &ParabolicContext, i: usize, j: usize) -> usize {
    let mut coords = vec![1, 1, 2, 3, 2, 1];
    for s in 1..i {
        coords[s + 1] -= 1;
    }
    for t in 1..j - 1 {
        coords[t + 2] -= 1;
    }
    let idx = by_simple(c, &coords);
    let mut amb = vec![1i64; 8];
    amb[i - 1] = -1;
    amb[j - 1] = -1;
    amb[5] = -1;
    amb[6] = -1;
    assert_eq!(
        c.root_system().root(idx).ambient,
        AmbientVector::from_fracs(&amb, 2),
        "γ_{{{i},{j}}}"
    );
    idx
}

fn weight(terms: &[(usize, i64)]) -> Weight {
    let mut w = Weight::zero(6);
    for &(l, a) in terms {
        w.set(l, a);
    }
    w
}

#[test]
fn e6_table_of_nine_bad_pairs() {
    let c = ctx("E6", &[1, 2]);
    let g45 = gamma(&c, 4, 5);
    let g35 = gamma(&c, 3, 5);
    let g25 = gamma(&c, 2, 5);
    let g24 = gamma(&c, 2, 4);
    let g34 = gamma(&c, 3, 4);
    assert_eq!(c.root_system().root(g45).simple_coords, vec![1, 1, 1, 1, 0, 0]);
    assert_eq!(c.root_system().root(gamma(&c, 1, 2)).simple_coords, vec![1, 1, 2, 3, 2, 1]);
    let rows: [(&str, usize, usize, &[usize], Weight); 9] = [
        ("I", g45, g35, &[1, 2, 3, 5], weight(&[(2, 1), (3, 1)])),
        ("II", g25, g35, &[1, 2, 4, 5], weight(&[(2, 1)])),
        ("III", g45, g35, &[1, 2, 3, 5], weight(&[(2, 2)])),
        ("IV", g45, g35, &[1, 3, 4, 5], weight(&[])),
        ("V", g45, g35, &[1, 2, 4, 5], weight(&[(1, 1), (4, 1)])),
        ("VI", g45, g35, &[1, 2, 3, 5], weight(&[(1, 1)])),
        ("VII", g25, g35, &[1, 2, 4], weight(&[(1, 2)])),
        ("VIII", g24, g34, &[2, 3, 4], weight(&[])),
        ("IX", g45, g35, &[2, 4, 5], weight(&[])),
    ];
    for (name, a, b, s, mu) in rows {
        let cert = make_certificate(&c, a, b, NodeSet::from_labels(s), &mu).unwrap();
        assert!(verify_bad_pair(&c, &cert).unwrap(), "row {name}: {cert:?}");
        if name == "I" {
            assert_eq!(cert.gap, frac(-1, 2));
        }
    }
}

#[test]
fn row_one_rules_out_its_family() {
    let c = ctx("E6", &[1, 2]);
    let free = NodeSet::from_labels(&[4, 6]);
    for a4 in 0..6 {
        for a6 in 0..6 {
            let l = Weight::new(vec![0, 1, 1, a4, 0, a6]);
            let cert = rules_out_family(&c, &l, free).unwrap().expect("family certificate");
            assert!(verify_bad_pair(&c, &cert).unwrap());
            assert!(cert.s.bits() & free.bits() == 0);
            assert!(!is_ulrich_criterion(&c, &l).unwrap().is_ulrich);
        }
    }
    let l = Weight::new(vec![0, 1, 1, 2, 0, 3]);
    let cert = rules_out_family(&c, &l, free).unwrap().unwrap();
    assert_eq!(cert.s, NodeSet::from_labels(&[1, 2, 3, 5]));
    assert_eq!(cert.mu, weight(&[(2, 1), (3, 1)]));
    let pair = [cert.alpha, cert.beta];
    assert!(pair.contains(&gamma(&c, 4, 5)) && pair.contains(&gamma(&c, 3, 5)), "{cert:?}");
}

#[test]
fn f4_worked_example_certificate() {
    let c = ctx("F4", &[1, 4]);
    let rs = c.root_system();
    let e2 = rs.root_index_ambient(&AmbientVector::unit(4, 2)).unwrap();
    let e14 = rs.root_index_ambient(&AmbientVector::from_ints(&[1, 0, 0, -1])).unwrap();
    let mu = Weight::fundamental(4, 4);
    let cert = make_certificate(&c, e2, e14, NodeSet::from_labels(&[1, 4]), &mu).unwrap();
    assert!(verify_bad_pair(&c, &cert).unwrap());
    assert_eq!(cert.gap, frac(-1, 2));
    let checks: Vec<_> = cert.slope_checks.iter().map(|s| (s.node, s.at_alpha.clone(), s.at_beta.clone())).collect();
    assert_eq!(checks, vec![(2, int(1), int(1)), (3, frac(1, 2), frac(1, 2))]);
    assert_eq!(phi(&c, &mu, e2).unwrap() - phi(&c, &mu, e14).unwrap(), frac(-1, 2));

    // the family λ = (0, a_2, a_3, 1)
    for a2 in 0..4 {
        for a3 in 0..4 {
            let l = Weight::new(vec![0, a2, a3, 1]);
            let cert = rules_out_family(&c, &l, NodeSet::from_labels(&[2, 3])).unwrap().unwrap();
            assert!(verify_bad_pair(&c, &cert).unwrap());
            assert_eq!(cert.mu, mu);
        }
    }
}

#[test]
fn accepted_weights_have_no_bad_pair() {
    for n in 1..=6 {
        let c = ctx(&format!("A{n}"), &[1]);
        assert_eq!(rules_out(&c, &Weight::zero(n)).unwrap(), None);
    }
}

#[test]
fn tampered_certificates_fail() {
    let c = ctx("E6", &[1, 2]);
    let mut cert = make_certificate(
        &c,
        gamma(&c, 4, 5),
        gamma(&c, 3, 5),
        NodeSet::from_labels(&[1, 2, 3, 5]),
        &weight(&[(2, 1), (3, 1)]),
    )
    .unwrap();
    assert!(verify_bad_pair(&c, &cert).unwrap());
    cert.gap = frac(1, 3);
    assert!(!verify_bad_pair(&c, &cert).unwrap());
    let a = gamma(&c, 4, 5);
    assert!(make_certificate(&c, a, a, NodeSet::empty(), &Weight::zero(6)).is_err());
}
