mod common;

use std::collections::HashSet;

use common::*;

use weylab::admissible::maximal_elements;
use weylab::poincare::{
    canonical_form, ccp_check, classify_ccp, first_asymmetry, is_symmetric, poincare_of, poincare_polynomial,
    rspss_screen, Location, ScreenVerdict,
};
use weylab::poly::QPoly;
use weylab::{Family, Weyl, WeylElt};

#[test]
fn b_omega1_special_vertex_formula() {
    for n in 3..=5 {
        let e = ecd(Family::B, n, omega(Family::B, n, 1), &[n]);
        let p = poincare_polynomial(&e).unwrap();
        let want = &(&geometric(1, 2 * n - 1) + &QPoly::monomial(n)) + &QPoly::one();
        assert_eq!(p, want, "n={}", n);
        assert!(!is_symmetric(&p));
    }
}

#[test]
fn c_omega1_intersection() {
    for n in 2..=5 {
        let e = ecd(Family::C, n, omega(Family::C, n, 1), &[0, n]);
        assert_eq!(ccp_check(&e).extreme_count, 2);
        let ext = e.extreme_maxima();
        let w = &e.weyl;
        for m in &ext {
            let p = poincare_of(w, &w.lower_interval_min(&w.min_coset_rep(m, e.gens()), e.gens()).unwrap());
            assert!(is_symmetric(&p), "component n={}", n);
        }
        let inter = e.intersection(&ext[0], &ext[1]).unwrap();
        let p = poincare_of(w, &inter);
        assert_eq!(p.coeff(n - 1), n as i64);
        assert_eq!(p.coeff(n), n as i64 + 1);
        // 1 + 2(1+..+q^{n-1})q + (1+..+q^{n-2})(1+..+q^{n-1})q^2
        let want = &(&QPoly::one() + &(&QPoly::new(vec![0, 2]) * &geometric(0, n - 1)))
            + &(&(&geometric(0, n - 2) * &geometric(0, n - 1)) * &QPoly::monomial(2));
        assert_eq!(p, want, "n={}", n);
        match rspss_screen(&e).unwrap() {
            ScreenVerdict::FailsAt { location, .. } => assert_eq!(location, Location::Intersection(0, 1)),
            v => panic!("{:?}", v),
        }
        // unique maximal element (s1..s_{n-1})(s_{n-2}..s1) s0 s_n
        let maxima = maximal_elements(w, &inter);
        assert_eq!(maxima.len(), 1);
        let mut word: Vec<usize> = (1..n).collect();
        word.extend((1..n.saturating_sub(1)).rev());
        word.extend([0, n]);
        assert_eq!(maxima[0], w.from_word(&word, None), "n={}", n);
    }
}

#[test]
fn f4_special_quotient() {
    let e = ecd(Family::F4, 4, omega(Family::F4, 4, 1), &[0]);
    let p = poincare_polynomial(&e).unwrap();
    let d = &e.weyl.datum;
    let quot = d.parabolic_poincare(&[1, 2, 3, 4]).div_exact(&d.parabolic_poincare(&[2, 3, 4])).unwrap();
    assert!(is_symmetric(&quot));
    assert!(quot.coeffs().iter().any(|&c| c != 1));
    assert_eq!(p, &QPoly::one() + &(&QPoly::monomial(1) * &quot));
    assert!(!is_symmetric(&p));
}

#[test]
fn f4_vertex_4() {
    let e = ecd(Family::F4, 4, omega(Family::F4, 4, 1), &[4]);
    let p = poincare_polynomial(&e).unwrap();
    assert_eq!(words_of_length(&e, 2), vec![vec![3, 4]]);
    assert!(colength(&p, 2) >= 2);
    let w = &e.weyl;
    let m = e.max_element().unwrap();
    for pre in [[2usize, 1], [0, 1]] {
        let v = w.from_word(&pre, None);
        let x = w.mul(&v, &m);
        assert_eq!(w.length(&x) + 2, w.length(&m));
        assert!(e.truncated_interval().unwrap().contains(&x));
    }
}

#[test]
fn g2_vertex_1() {
    let e = ecd(Family::G2, 2, omega(Family::G2, 2, 2), &[1]);
    let p = poincare_polynomial(&e).unwrap();
    assert_eq!(p.degree(), 6);
    assert_eq!(words_of_length(&e, 1), vec![vec![1]]);
    assert_eq!(colength(&p, 1), 2);
    let w = &e.weyl;
    let m = e.max_element().unwrap();
    let five: HashSet<WeylElt> = e
        .truncated_interval()
        .unwrap()
        .into_iter()
        .filter(|v| w.length(v) == 5)
        .collect();
    assert_eq!(five, [w.lmul(2, &m), w.lmul(0, &m)].into_iter().collect());
    assert_eq!(first_asymmetry(&p), Some(1));
}

#[test]
fn special_vertex_b_and_c() {
    for n in 3..=5 {
        for i in 2..n {
            let e = ecd(Family::B, n, omega(Family::B, n, i), &[0]);
            let p = poincare_polynomial(&e).unwrap();
            assert_eq!(words_of_length(&e, 2), vec![vec![2, 0]], "B{} w{}", n, i);
            assert!(colength(&p, 2) >= 2);
            let e = ecd(Family::C, n, omega(Family::C, n, i), &[0]);
            let p = poincare_polynomial(&e).unwrap();
            assert_eq!(words_of_length(&e, 2), vec![vec![1, 0]], "C{} w{}", n, i);
            assert!(colength(&p, 2) >= 2);
        }
    }
}

#[test]
fn c_multiple_of_last_coweight_single_vertex() {
    for n in 2..=5 {
        for l in 1..=2 {
            for i in 1..n {
                let mut lam = omega(Family::C, n, n);
                lam.iter_mut().for_each(|x| *x *= l);
                let e = ecd(Family::C, n, lam, &[i]);
                let p = poincare_polynomial(&e).unwrap();
                assert_eq!(words_of_length(&e, 1), vec![vec![i]], "C{} {}w{} {{{}}}", n, l, n, i);
                assert!(colength(&p, 1) >= 2);
            }
        }
    }
}

#[test]
fn b_last_vertex() {
    for n in 3..=6 {
        for r in 1..n {
            let e = ecd(Family::B, n, omega(Family::B, n, r), &[n]);
            let p = poincare_polynomial(&e).unwrap();
            assert!(!is_symmetric(&p));
            if (2..=n - 2).contains(&r) {
                assert_eq!(words_of_length(&e, 2), vec![vec![n - 1, n]]);
                assert!(colength(&p, 2) >= 2);
            }
            if r == n - 1 {
                assert_eq!(words_of_length(&e, 1), vec![vec![n]]);
                assert!(colength(&p, 1) >= 2);
            }
        }
    }
}

#[test]
fn c_adjacent_pairs_have_three_colength_one() {
    for n in 2..=5 {
        for l in [2i64, 1] {
            let lo = if l == 2 { 0 } else { 1 };
            for i in lo..n / 2 {
                let mut lam = omega(Family::C, n, n);
                lam.iter_mut().for_each(|x| *x *= l);
                let e = ecd(Family::C, n, lam, &[i, i + 1]);
                let p = poincare_polynomial(&e).unwrap();
                assert_eq!(words_of_length(&e, 1), vec![vec![i], vec![i + 1]], "C{} {}w{} {{{},{}}}", n, l, n, i, i + 1);
                assert!(colength(&p, 1) >= 3);
            }
        }
    }
}

#[test]
fn b_last_coweight_first_pair() {
    for n in 3..=5 {
        let e = ecd(Family::B, n, omega(Family::B, n, n), &[0, 1]);
        let p = poincare_polynomial(&e).unwrap();
        assert_eq!(p.coeff(2), 3, "n={}", n);
        assert!(colength(&p, 2) >= 4);
        let mut words = words_of_length(&e, 2);
        words.sort();
        assert_eq!(words, vec![vec![0, 1], vec![2, 0], vec![2, 1]]);
    }
}

#[test]
fn type_a_minuscule_passes_screen() {
    for n in 1..=4 {
        for mask in 1u32..(1 << (n + 1)) {
            let k: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
            let e = ecd(Family::A, n, omega(Family::A, n, 1), &k);
            assert_eq!(rspss_screen(&e).unwrap(), ScreenVerdict::PassesAllPoincareTests, "A{} {:?}", n, k);
        }
    }
}

#[test]
fn linear_coefficient_counts_simple_reflections() {
    for n in 3..=4 {
        for r in 1..n {
            let e = ecd(Family::B, n, omega(Family::B, n, r), &[n]);
            let p = poincare_polynomial(&e).unwrap();
            let w = &e.weyl;
            let iv = e.truncated_interval().unwrap();
            let tau = iv.iter().find(|v| w.length(v) == 0).unwrap().clone();
            let count = w.nodes().into_iter().filter(|&s| iv.contains(&w.mul(&tau, &w.s(s)))).count();
            assert_eq!(p.coeff(1), count as i64);
        }
    }
}

#[test]
fn classification_rows_are_canonical() {
    let report = classify_ccp(4, None).unwrap();
    assert!(report.missing.is_empty());
    for row in &report.rows {
        let f: Family = row.family.parse().unwrap();
        let w = Weyl::new(f, row.rank).unwrap();
        let d = &w.datum;
        let n = d.rank;
        for sigma in d.diagram_automorphisms() {
            let m = d.automorphism_coweight_map(&sigma);
            let lam: Vec<i64> = (0..n).map(|i| (0..n).map(|j| m[i * n + j] * row.lambda[j]).sum()).collect();
            let k: Vec<usize> = row.k.iter().map(|&v| sigma[v]).collect();
            assert_eq!(canonical_form(d, &lam, &k), (row.lambda.clone(), row.k.clone()));
        }
        assert!(row.extreme_count <= row.k_size);
    }
}

#[test]
fn classification_is_deterministic() {
    let a = classify_ccp(4, None).unwrap().to_json();
    let b = classify_ccp(4, None).unwrap().to_json();
    assert_eq!(a, b);
    let g2 = classify_ccp(6, Some(Family::G2)).unwrap();
    assert_eq!(g2.rows.len(), 2);
}
