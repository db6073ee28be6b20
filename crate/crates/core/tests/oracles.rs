//! Checks against closed-form combinatorics computed independently of the
//! normal-form engine.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use qcoh::landau_ginzburg::{intersection_number, vafa_intriligator, LgConfig};
use qcoh::schubert::{enumerate_diagrams, SchubertRing, YoungDiagram};
use qcoh::spaces::{cpn_gw_triple, Space, SpaceId};

type Terms = BTreeMap<(Vec<u32>, u32), i64>;

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Number of standard tableaux of the `k x (n - k)` rectangle, i.e. the
/// degree of the Plucker embedding.
fn hook_length_degree(k: u32, n: u32) -> u128 {
    let m = n - k;
    let mut hooks: u128 = 1;
    for i in 0..k {
        for j in 0..m {
            hooks *= ((k - i) + (m - j) - 1) as u128;
        }
    }
    factorial((k * m) as u64) / hooks
}

/// Horizontal strips of size `j` added to `lambda` inside the box.
fn pieri(lambda: &[u32], j: u32, width: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, lambda: &[u32], width: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lambda.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if i == 0 { width } else { lambda[i - 1] };
        for add in 0..=left {
            let row = lambda[i] + add;
            if row > cap {
                break;
            }
            cur.push(row);
            go(i + 1, left - add, lambda, width, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, j, lambda, width, &mut Vec::new(), &mut out);
    out
}

fn engine_terms(ring: &SchubertRing, a: &YoungDiagram, b: &YoungDiagram) -> Terms {
    ring.product(a, b)
        .unwrap()
        .into_iter()
        .map(|t| ((t.diagram.rows().to_vec(), t.q_power), t.coeff.to_i64().unwrap()))
        .collect()
}

#[test]
fn classical_pieri_rule() {
    for (k, n) in [(2, 4), (2, 5), (3, 6), (2, 6)] {
        let ring = SchubertRing::new(k, n, false).unwrap();
        for j in 1..=(n - k) {
            let mut special = vec![0; k as usize];
            special[0] = j;
            let s = YoungDiagram::new(special, k, n).unwrap();
            for lambda in enumerate_diagrams(k, n) {
                let want: Terms = pieri(lambda.rows(), j, n - k)
                    .into_iter()
                    .map(|rows| ((rows, 0), 1))
                    .collect();
                assert_eq!(engine_terms(&ring, &s, &lambda), want, "gr:{k}:{n} s{j} * {lambda}");
            }
        }
    }
}

/// sigma_1 * sigma_lambda = (classical Pieri) + q sigma_nu, where nu drops the
/// first row and column when lambda_1 = n - k and lambda_k >= 1. The ring's
/// quantum relation `s_n + (-1)^(n-k) q` differs from the usual
/// `s_n + (-1)^k q` by `q -> (-1)^n q`.
#[test]
fn quantum_monk_rule() {
    for (k, n) in [(2, 4), (2, 5), (3, 5), (3, 6), (2, 6)] {
        let ring = SchubertRing::new(k, n, true).unwrap();
        let mut one = vec![0; k as usize];
        one[0] = 1;
        let s1 = YoungDiagram::new(one, k, n).unwrap();
        for lambda in enumerate_diagrams(k, n) {
            let rows = lambda.rows();
            let mut want: Terms = pieri(rows, 1, n - k).into_iter().map(|r| ((r, 0), 1)).collect();
            if rows[0] == n - k && rows[k as usize - 1] >= 1 {
                let mut nu: Vec<u32> = rows[1..].iter().map(|r| r - 1).collect();
                nu.push(0);
                want.insert((nu, 1), if n % 2 == 0 { 1 } else { -1 });
            }
            assert_eq!(engine_terms(&ring, &s1, &lambda), want, "gr:{k}:{n} s1 * {lambda}");
        }
    }
}

#[test]
fn plucker_degree_matches_engine() {
    for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 6), (2, 6), (3, 7)] {
        let space = Space::build(&SpaceId::Grassmannian { k, n }, false).unwrap();
        let u = space.presentation.universe();
        let top = qcoh::parse(&format!("c1^{}", k * (n - k)), u).unwrap();
        let got = intersection_number(k, n, &top).unwrap();
        assert_eq!(got.abs().to_integer().to_u128().unwrap(), hook_length_degree(k, n), "gr:{k}:{n}");
    }
}

#[test]
fn residue_sum_matches_hook_length() {
    for (k, n) in [(2, 4), (2, 5), (1, 5)] {
        let space = Space::build(&SpaceId::Grassmannian { k, n }, false).unwrap();
        let top = qcoh::parse(&format!("c1^{}", k * (n - k)), space.presentation.universe()).unwrap();
        let rep = vafa_intriligator(k, n, &top, Complex64::new(1.0, 0.0), 1e-6, &LgConfig::default()).unwrap();
        assert_eq!(rep.rounded.unsigned_abs() as u128, hook_length_degree(k, n), "gr:{k}:{n}");
    }
}

/// Quantum products on CP^n read off <p^i|p^j|p^l>_s from the relation p^(n+1) = q.
#[test]
fn projective_gw_triples() {
    for n in 1..=4u32 {
        let space = Space::build(&SpaceId::Projective(n), true).unwrap();
        let ex = space.expander().unwrap();
        for i in 0..=n as usize {
            for j in 0..=n as usize {
                let e = ex.product(i, j).unwrap();
                let s = ((i + j) / (n as usize + 1)) as u32;
                let l = (i + j) % (n as usize + 1);
                let want = qcoh::parse(if s == 0 { "1" } else { "q" }, e.coeffs[l].universe()).unwrap();
                assert_eq!(e.coeffs[l], want, "cpn:{n} p^{i} * p^{j}");
                assert_eq!(cpn_gw_triple(n, i as u32, j as u32, (n as usize - l) as u32, s), 1);
            }
        }
    }
}
