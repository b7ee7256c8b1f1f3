mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::*;
use weylab::admissible::{maximal_elements, partition_count_check, EnhancedCoxeterDatum, IntersectionMax};
use weylab::poincare::poincare_of;
use weylab::poly::QPoly;
use weylab::{Family, Weyl, WeylElt};

#[test]
fn partition_count_matches_enumeration() {
    for l in 2..=5usize {
        for n in l as u64..=12 {
            for parts in compositions(n, l) {
                for r in 0..n {
                    let pc = partition_count_check(r, &parts).unwrap();
                    let want = count_tuples(r, &parts);
                    assert_eq!(pc.count, want, "r={} parts={:?}", r, parts);
                    if r >= 1 {
                        assert!(pc.meets_bound, "r={} parts={:?}", r, parts);
                    }
                }
            }
        }
    }
}

/// Equality holds exactly when `min(r, n-r) = 1`, or `l = 2` with a part
/// equal to 1 (the count is symmetric under `r -> n - r`).
#[test]
fn partition_equality_cases() {
    for l in 2..=5usize {
        for n in l as u64..=12 {
            for parts in compositions(n, l) {
                for r in 1..n {
                    let pc = partition_count_check(r, &parts).unwrap();
                    let sym = r.min(n - r) == 1 || (l == 2 && parts.contains(&1));
                    assert_eq!(pc.equality, sym, "r={} parts={:?}", r, parts);
                    assert_eq!(count_tuples(r, &parts), count_tuples(n - r, &parts));
                }
            }
        }
    }
}

#[test]
fn partition_count_rejects_bad_input() {
    assert!(partition_count_check(1, &[3]).is_err());
    assert!(partition_count_check(5, &[3, 2]).is_err());
    assert!(partition_count_check(1, &[3, 0]).is_err());
}

#[test]
fn max_element_is_the_brute_force_maximum() {
    for e in random_data() {
        let w = &e.weyl;
        let brute = e.truncated_interval_brute().unwrap();
        let maxima = maximal_elements(w, &brute);
        assert_eq!(maxima.len(), 1, "{}", e.to_json());
        let m = e.max_element().unwrap();
        assert_eq!(maxima[0], m, "{}", e.to_json());
        assert!(w.is_min_rep(&m, e.gens()));
        assert_eq!(e.truncated_interval().unwrap(), brute);
    }
}

#[test]
fn poincare_factorization() {
    for e in random_data() {
        let w = &e.weyl;
        let full = w.lower_interval(&e.double_coset_max()).unwrap();
        let p_full = poincare_of(w, &full);
        let p_trunc = poincare_of(w, &e.truncated_interval().unwrap());
        let wk: HashSet<WeylElt> = w.parabolic_elements(e.gens()).into_iter().collect();
        let p_k = poincare_of(w, &wk);
        assert_eq!(p_full, &p_trunc * &p_k, "{}", e.to_json());
        assert_eq!(p_k, w.datum.parabolic_poincare(e.gens()));
    }
}

#[test]
fn descents_stay_in_min_reps_on_intervals() {
    for e in random_data() {
        let w = &e.weyl;
        let gens = e.gens();
        let full = w.lower_interval(&e.double_coset_max()).unwrap();
        for v in full.iter().filter(|v| w.is_min_rep(v, gens)) {
            for i in w.nodes() {
                if w.is_left_descent(v, i) {
                    let sv = w.lmul(i, v);
                    assert_eq!(w.length(&sv) + 1, w.length(v));
                    assert!(w.is_min_rep(&sv, gens), "{}", e.to_json());
                }
            }
        }
    }
}

#[test]
fn extreme_count_two_ways() {
    for e in random_data() {
        assert_eq!(e.count_extreme(), e.extreme_maxima().len(), "{}", e.to_json());
    }
}

#[test]
fn extreme_count_automorphism_invariant() {
    for e in random_data() {
        let d = e.datum();
        let n = d.rank;
        for sigma in d.diagram_automorphisms() {
            let m = d.automorphism_coweight_map(&sigma);
            let lam: Vec<i64> = (0..n)
                .map(|i| (0..n).map(|j| m[i * n + j] * e.lambda[j]).sum())
                .collect();
            let k: Vec<usize> = e.k_tilde.iter().map(|&v| sigma[v]).collect();
            let img = EnhancedCoxeterDatum::new(e.weyl.clone(), lam, &k).unwrap();
            assert_eq!(img.count_extreme(), e.count_extreme(), "{} under {:?}", e.to_json(), sigma);
        }
    }
}

#[test]
fn a1_iwahori_admissible_set() {
    let e = ecd(Family::A, 1, vec![2], &[0, 1]);
    let w = &e.weyl;
    let adm = e.admissible_set().unwrap();
    let want: std::collections::BTreeSet<WeylElt> =
        ["s0 s1", "s1 s0", "s0", "s1", "e"].iter().map(|s| w.parse_word(s).unwrap()).collect();
    assert_eq!(adm, want);
    let ext = e.extreme_maxima();
    assert_eq!(ext.len(), 2);
    match e.intersection_max(&ext[0], &ext[1]).unwrap() {
        IntersectionMax::NotUnique(v) => {
            let got: HashSet<WeylElt> = v.into_iter().collect();
            assert_eq!(got, [w.s(0), w.s(1)].into_iter().collect());
        }
        other => panic!("{:?}", other),
    }
}

#[test]
fn zero_coweight_is_trivial() {
    let e = ecd(Family::C, 3, vec![0, 0, 0], &[0]);
    let iv = e.truncated_interval().unwrap();
    assert_eq!(iv.len(), 1);
    assert_eq!(e.weyl.length(iv.iter().next().unwrap()), 0);
}

/// Max element for `(B_n, w_r, {n})` is a translation by `+-(0^{n-r}, 1^r)`.
#[test]
fn b_special_vertex_max() {
    for n in 3..=5 {
        let w = Arc::new(Weyl::new(Family::B, n).unwrap());
        for r in 1..n {
            let lam = w.datum.fundamental_coweight(r);
            let e = EnhancedCoxeterDatum::new(w.clone(), lam, &[n]).unwrap();
            let m = e.max_element().unwrap();
            assert!(m.is_translation());
            let eps = w.datum.to_epsilon(&m.lam).unwrap();
            let abs: Vec<i128> = eps.iter().map(|x| x.to_integer().abs()).collect();
            let want: Vec<i128> = (0..n).map(|i| i128::from(i >= n - r)).collect();
            assert_eq!(abs, want, "n={} r={}", n, r);
            let signs: HashSet<bool> = eps.iter().filter(|x| **x != 0.into()).map(|x| *x > 0.into()).collect();
            assert_eq!(signs.len(), 1);
        }
    }
}

#[test]
fn poincare_of_truncated_interval_basics() {
    for e in random_data() {
        let p: QPoly = poincare_of(&e.weyl, &e.truncated_interval().unwrap());
        assert_eq!(p.coeff(0), 1);
        assert_eq!(p.degree(), e.weyl.length(&e.max_element().unwrap()));
        assert!(p.coeff(1) as usize <= e.weyl.rank() + 1);
    }
}
