mod common;

use std::collections::{HashMap, HashSet};

use common::*;
use proptest::prelude::*;
use weylab::{Family, Weyl, WeylElt};

#[test]
fn length_matches_cayley_distance() {
    for (f, n) in small_types() {
        let w = Weyl::new(f, n).unwrap();
        let ball = cayley_ball(&w, 10);
        for (x, &d) in &ball {
            assert_eq!(w.length(x), d, "{}{} {}", f, n, w.display(x));
            assert_eq!(w.reduced_word(x).0.len(), d);
        }
    }
}

#[test]
fn length_formula_exhaustive_rank_3() {
    for (f, n) in small_types() {
        let w = Weyl::new(f, n).unwrap();
        let fin = finite_elements(&w);
        for v in w.elements_up_to(10) {
            // v = t^lam u = x t^{x^-1 lam} y^-1 with y = u^-1 x
            let u = w.finite_part(&v);
            for x in fin.iter().step_by(3) {
                let y = w.mul(&w.inv(&u), x);
                let lam_p = on_coweight(&w, &w.inv(x), &v.lam);
                assert_eq!(w.mul(&w.mul(x, &w.t(&lam_p)), &w.inv(&y)), v);
                assert_eq!(length_formula(&w, x, &lam_p, &y), w.length(&v), "{}{}", f, n);
            }
        }
    }
}

#[test]
fn dominant_translation_length() {
    for (f, n) in types_up_to_5() {
        let w = Weyl::new(f, n).unwrap();
        for i in 1..=n {
            let lam = w.datum.fundamental_coweight(i);
            let want: i64 = w.datum.pos_roots.iter().map(|a| w.datum.pairing(&lam, a)).sum();
            assert_eq!(w.length(&w.t(&lam)) as i64, want);
        }
    }
}

#[test]
fn g2_translation_word() {
    let w = Weyl::new(Family::G2, 2).unwrap();
    let t = w.t(&w.datum.fundamental_coweight(2));
    assert_eq!(w.length(&t), 6);
    // the word is a translation by an element of W_0 . w2 (here -w2)
    let v = w.parse_word("s0 s2 s1 s2 s1 s2").unwrap();
    assert!(v.is_translation());
    assert!(weylab::admissible::w0_orbit(&w.datum, &t.lam).contains(&v.lam));
    let (word, tau) = w.reduced_word(&t);
    assert_eq!(w.from_word(&word, Some(&tau)), t);
}

#[test]
fn coxeter_relations() {
    for (f, n) in types_up_to_5() {
        let w = Weyl::new(f, n).unwrap();
        for i in w.nodes() {
            assert_eq!(w.mul(&w.s(i), &w.s(i)), w.e());
            for j in w.nodes() {
                let m = w.datum.coxeter[i][j];
                if m == 0 {
                    continue;
                }
                let st = w.mul(&w.s(i), &w.s(j));
                let mut p = w.e();
                for _ in 0..m {
                    p = w.mul(&p, &st);
                }
                assert_eq!(p, w.e(), "{}{} ({} {})^{}", f, n, i, j, m);
            }
        }
    }
}

#[test]
fn simple_multiplication_changes_length_by_one() {
    for (f, n) in small_types() {
        let w = Weyl::new(f, n).unwrap();
        for v in w.elements_up_to(7) {
            let l = w.length(&v);
            for i in w.nodes() {
                let sv = w.lmul(i, &v);
                let ls = w.length(&sv);
                if w.is_left_descent(&v, i) {
                    assert_eq!(ls + 1, l);
                } else {
                    assert_eq!(ls, l + 1);
                }
                let vs = w.rmul(&v, i);
                assert_eq!(w.length(&vs) + 1 == l, w.is_right_descent(&v, i));
            }
        }
    }
}

#[test]
fn bruhat_matches_subword_oracle() {
    for n in [1, 2] {
        let w = Weyl::new(Family::A, n).unwrap();
        let els = w.elements_up_to(8);
        for v in &els {
            let below = subword_products(&w, v);
            for u in &els {
                assert_eq!(w.bruhat_leq(u, v), below.contains(u), "A{} {} <= {}", n, w.display(u), w.display(v));
            }
        }
    }
}

#[test]
fn bruhat_is_a_partial_order_on_intervals() {
    let w = Weyl::new(Family::C, 2).unwrap();
    for v in w.elements_up_to(6) {
        let iv: Vec<WeylElt> = w.lower_interval(&v).unwrap().into_iter().collect();
        for a in &iv {
            assert!(w.bruhat_leq(a, a));
            for b in &iv {
                if a != b && w.bruhat_leq(a, b) {
                    assert!(!w.bruhat_leq(b, a));
                }
            }
        }
    }
}

#[test]
fn interval_top_is_unique_and_omega_invariant() {
    for (f, n) in small_types() {
        let w = Weyl::new(f, n).unwrap();
        let omegas = w.omega_elements();
        for v in w.elements_up_to(6).iter().step_by(5) {
            let iv = w.lower_interval(v).unwrap();
            let l = w.length(v);
            assert_eq!(iv.iter().filter(|x| w.length(x) == l).count(), 1);
            assert!(iv.iter().all(|x| w.bruhat_leq(x, v)));
            for tau in &omegas {
                let vt = w.mul(v, tau);
                assert_eq!(w.lower_interval(&vt).unwrap().len(), iv.len());
            }
        }
    }
}

#[test]
fn a1_interval() {
    let w = Weyl::new(Family::A, 1).unwrap();
    let v = w.parse_word("s0 s1").unwrap();
    let iv = w.lower_interval(&v).unwrap();
    let want: HashSet<WeylElt> = ["e", "s0", "s1", "s0 s1"].iter().map(|s| w.parse_word(s).unwrap()).collect();
    assert_eq!(iv, want);
}

/// `sw < w` and `w in W^K` imply `sw in W^K`.
#[test]
fn left_descents_preserve_min_reps() {
    for (f, n) in small_types() {
        let w = Weyl::new(f, n).unwrap();
        let els = w.elements_up_to(8);
        for mask in 1u32..(1 << (n + 1)) - 1 {
            let gens: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 0).collect();
            for v in els.iter().filter(|v| w.is_min_rep(v, &gens)) {
                for i in w.nodes() {
                    if w.is_left_descent(v, i) {
                        assert!(w.is_min_rep(&w.lmul(i, v), &gens));
                    }
                }
            }
        }
    }
}

fn type_strategy() -> impl Strategy<Value = (Family, usize)> {
    prop::sample::select(types_up_to_5())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn random_words_reduce((f, n) in type_strategy(), raw in prop::collection::vec(0usize..64, 0..24)) {
        let w = weyl_cached(f, n);
        let word: Vec<usize> = raw.iter().map(|x| x % (n + 1)).collect();
        let v = w.from_word(&word, None);
        let (red, tau) = w.reduced_word(&v);
        prop_assert_eq!(red.len(), w.length(&v));
        prop_assert!(red.len() <= word.len());
        prop_assert_eq!((word.len() - red.len()) % 2, 0);
        prop_assert_eq!(w.length(&tau), 0);
        prop_assert_eq!(w.from_word(&red, Some(&tau)), v.clone());
        let u = w.finite_part(&v);
        prop_assert_eq!(length_formula(&w, &u, &on_coweight(&w, &w.inv(&u), &v.lam), &w.e()), w.length(&v));
    }
}

fn weyl_cached(f: Family, n: usize) -> std::sync::Arc<Weyl> {
    use std::sync::{Mutex, OnceLock};
    type Cache = Mutex<HashMap<(Family, usize), std::sync::Arc<Weyl>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let m = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    m.lock()
        .unwrap()
        .entry((f, n))
        .or_insert_with(|| std::sync::Arc::new(Weyl::new(f, n).unwrap()))
        .clone()
}
