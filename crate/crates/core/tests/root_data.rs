mod common;

use common::rs;
use ulrich_core::rational::{frac, int};
use ulrich_core::{AmbientVector, Rational, RootSystem, Weight};

fn v(coords: &[(i64, i64)]) -> AmbientVector {
    AmbientVector::new(coords.iter().map(|&(p, q)| frac(p, q)).collect())
}

fn ints(coords: &[i64]) -> AmbientVector {
    AmbientVector::from_ints(coords)
}

#[test]
fn e6_fundamental_weights() {
    let e6 = rs("E6");
    let t = (2, 3);
    let z = (0, 1);
    let h = (1, 2);
    let expected = [
        v(&[z, z, z, z, z, (-2, 3), (-2, 3), t]),
        v(&[h, h, h, h, h, (-1, 2), (-1, 2), h]),
        v(&[(-1, 2), h, h, h, h, (-5, 6), (-5, 6), (5, 6)]),
        ints(&[0, 0, 1, 1, 1, -1, -1, 1]),
        v(&[z, z, z, (1, 1), (1, 1), (-2, 3), (-2, 3), t]),
        v(&[z, z, z, z, (1, 1), (-1, 3), (-1, 3), (1, 3)]),
    ];
    for (i, w) in expected.iter().enumerate() {
        assert_eq!(e6.fundamental_weight(i + 1), w, "ϖ_{}", i + 1);
    }
}

#[test]
fn f4_fundamental_weights() {
    let f4 = rs("F4");
    assert_eq!(f4.fundamental_weight(1), &ints(&[1, 1, 0, 0]));
    assert_eq!(f4.fundamental_weight(2), &ints(&[2, 1, 1, 0]));
    assert_eq!(f4.fundamental_weight(3), &AmbientVector::from_fracs(&[3, 1, 1, 1], 2));
    assert_eq!(f4.fundamental_weight(4), &ints(&[1, 0, 0, 0]));
    assert_eq!(f4.to_ambient(&Weight::fundamental(4, 4)).unwrap(), ints(&[1, 0, 0, 0]));
}

#[test]
fn g2_fundamental_weights() {
    let g2 = rs("G2");
    assert_eq!(g2.fundamental_weight(1), &ints(&[1, 0, -1]));
    assert_eq!(g2.fundamental_weight(2), &ints(&[2, -1, -1]));
}

#[test]
fn simple_roots_as_printed() {
    let e6 = rs("E6");
    assert_eq!(
        e6.simple_root(1).ambient,
        AmbientVector::from_fracs(&[1, -1, -1, -1, -1, -1, -1, 1], 2)
    );
    assert_eq!(e6.simple_root(2).ambient, ints(&[1, 1, 0, 0, 0, 0, 0, 0]));
    for i in 3..=6 {
        let mut c = [0i64; 8];
        c[i - 2] = 1;
        c[i - 3] = -1;
        assert_eq!(e6.simple_root(i).ambient, ints(&c), "α_{i}");
    }
    let f4 = rs("F4");
    assert_eq!(f4.simple_root(3).ambient, ints(&[0, 0, 0, 1]));
    assert_eq!(f4.pairing(&f4.simple_root(3).ambient, &f4.simple_root(3).ambient).unwrap(), int(1));
    let g2 = rs("G2");
    assert_eq!(g2.simple_root(2).ambient, ints(&[1, -2, 1]));
}

#[test]
fn root_counts_and_dimensions() {
    for (t, n) in [("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6)] {
        assert_eq!(rs(t).num_positive_roots(), n, "{t}");
    }
    assert_eq!(common::ctx("E6", &[1, 2]).dim(), 26);
    assert_eq!(common::ctx("F4", &[1, 2]).dim(), 21);
    assert_eq!(common::ctx("G2", &[1, 2]).dim(), 6);
}

fn half_sum_of_positive_roots(r: &RootSystem) -> AmbientVector {
    let sum = r
        .positive_roots()
        .iter()
        .fold(AmbientVector::zero(r.ambient_dim()), |acc, x| acc.add(&x.ambient));
    sum.scale(&frac(1, 2))
}

#[test]
fn rho_is_half_sum_and_sum_of_fundamental_weights() {
    for t in ["A3", "B4", "C3", "D5", "E6", "E7", "E8", "F4", "G2"] {
        let r = rs(t);
        let half = half_sum_of_positive_roots(&r);
        assert_eq!(r.to_ambient(r.rho()).unwrap(), half, "{t}");
        assert_eq!(r.rho(), &Weight::rho(r.rank()));
    }
}

/// Bourbaki Cartan matrices with entry `[i][j] = <α_i, α_j^∨>`.
fn textbook_cartan(t: &str) -> Vec<Vec<i64>> {
    match t {
        "E6" => {
            let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
            let mut m = vec![vec![0; 6]; 6];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 2;
            }
            for (a, b) in edges {
                m[a - 1][b - 1] = -1;
                m[b - 1][a - 1] = -1;
            }
            m
        }
        "F4" => vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ],
        "G2" => vec![vec![2, -1], vec![-3, 2]],
        _ => unreachable!(),
    }
}

/// Positive roots in simple coordinates, grown from the simple roots by
/// root strings: `β + α_i` is a root iff `p - <β, α_i^∨> > 0`, where `p`
/// is the length of the `α_i`-string below `β`.
fn roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                let pair: i64 = (0..n).map(|k| beta[k] * cartan[k][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !roots.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots.sort();
    roots
}

#[test]
fn positive_roots_match_root_string_oracle() {
    for t in ["E6", "F4", "G2"] {
        let r = rs(t);
        let cartan = textbook_cartan(t);
        assert_eq!(r.cartan_matrix(), cartan.as_slice(), "{t} Cartan matrix");
        let mut ours: Vec<Vec<i64>> =
            r.positive_roots().iter().map(|x| x.simple_coords.clone()).collect();
        ours.sort();
        assert_eq!(ours, roots_from_cartan(&cartan), "{t}");
    }
}

#[test]
fn highest_roots() {
    assert_eq!(rs("E6").highest_root().simple_coords, vec![1, 2, 2, 3, 2, 1]);
    assert_eq!(rs("F4").highest_root().simple_coords, vec![2, 3, 4, 2]);
    assert_eq!(rs("G2").highest_root().simple_coords, vec![3, 2]);
    assert_eq!(rs("G2").highest_root().ambient, ints(&[2, -1, -1]));
}

#[test]
fn fundamental_weights_are_dual_to_coroots() {
    for t in ["A4", "B3", "C4", "D4", "E6", "E7", "E8", "F4", "G2"] {
        let r = rs(t);
        for i in 1..=r.rank() {
            for j in 1..=r.rank() {
                let a = &r.simple_root(j).ambient;
                let coroot_pairing: Rational = int(2) * r.pairing(r.fundamental_weight(i), a).unwrap()
                    / r.pairing(a, a).unwrap();
                assert_eq!(coroot_pairing, int(i64::from(i == j)), "{t} ϖ_{i} α_{j}");
            }
        }
    }
}
