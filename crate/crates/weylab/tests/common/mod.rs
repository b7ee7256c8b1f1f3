//! Oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weylab::admissible::EnhancedCoxeterDatum;
use weylab::poly::QPoly;
use weylab::root_system::is_positive_root;
use weylab::{Family, Weyl, WeylElt};

pub fn small_types() -> Vec<(Family, usize)> {
    vec![
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 3),
        (Family::C, 2),
        (Family::C, 3),
        (Family::G2, 2),
    ]
}

pub fn types_up_to_5() -> Vec<(Family, usize)> {
    let mut v = small_types();
    v.extend([
        (Family::A, 4),
        (Family::A, 5),
        (Family::B, 4),
        (Family::B, 5),
        (Family::C, 4),
        (Family::C, 5),
        (Family::D, 4),
        (Family::D, 5),
        (Family::F4, 4),
    ]);
    v
}

pub fn ecd(f: Family, n: usize, lam: Vec<i64>, k: &[usize]) -> EnhancedCoxeterDatum {
    EnhancedCoxeterDatum::new(Arc::new(Weyl::new(f, n).unwrap()), lam, k).unwrap()
}

pub fn omega(f: Family, n: usize, i: usize) -> Vec<i64> {
    Weyl::new(f, n).unwrap().datum.fundamental_coweight(i)
}

/// Distances from `e` in the Cayley graph, by plain multiplication.
pub fn cayley_ball(w: &Weyl, radius: usize) -> HashMap<WeylElt, usize> {
    let mut dist = HashMap::new();
    dist.insert(w.e(), 0);
    let mut layer = vec![w.e()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for x in &layer {
            for i in w.nodes() {
                let y = w.lmul(i, x);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d);
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    dist
}

/// `sum_{a>0} |<lam', a> + d_x(a) - d_y(a)|` for `x t^-lam' y^-1`, with
/// `d_x(a) = 1` when `x(a) < 0`. Here `t^mu` translates the apartment by
/// `mu`, hence the sign.
pub fn length_formula(w: &Weyl, x: &WeylElt, lam: &[i64], y: &WeylElt) -> usize {
    let d = &w.datum;
    let delta = |u: &WeylElt, a: &[i64]| i64::from(!is_positive_root(&w.act_finite(u, a)));
    d.pos_roots
        .iter()
        .map(|a| (-d.pairing(lam, a) + delta(x, a) - delta(y, a)).unsigned_abs() as usize)
        .sum()
}

/// `u(mu)` for finite `u`.
pub fn on_coweight(w: &Weyl, u: &WeylElt, mu: &[i64]) -> Vec<i64> {
    w.mul(u, &w.t(mu)).lam
}

pub fn finite_elements(w: &Weyl) -> Vec<WeylElt> {
    w.parabolic_elements(&(1..=w.rank()).collect::<Vec<_>>())
}

/// Length formula at `v = t^lam u`, written as `u t^{u^-1 lam}`.
pub fn length_by_formula(w: &Weyl, v: &WeylElt) -> usize {
    let u = w.finite_part(v);
    length_formula(w, &u, &on_coweight(w, &w.inv(&u), &v.lam), &w.e())
}

/// All products of subwords of a reduced word.
pub fn subword_products(w: &Weyl, v: &WeylElt) -> HashSet<WeylElt> {
    let (word, tau) = w.reduced_word(v);
    let mut out = HashSet::new();
    for mask in 0u32..(1 << word.len()) {
        let sub: Vec<usize> = word
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        out.insert(w.from_word(&sub, Some(&tau)));
    }
    out
}

/// 50 small data with a nontrivial coweight, from a fixed seed.
pub fn random_data() -> Vec<EnhancedCoxeterDatum> {
    let weyls: Vec<Arc<Weyl>> = small_types()
        .iter()
        .map(|&(f, n)| Arc::new(Weyl::new(f, n).unwrap()))
        .collect();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    while out.len() < 50 {
        let w = &weyls[rng.gen_range(0..weyls.len())];
        let n = w.rank();
        let cands = w.datum.translation_candidates();
        let mut lam = cands[rng.gen_range(0..cands.len())].clone();
        if rng.gen_bool(0.2) && n <= 2 {
            lam.iter_mut().for_each(|x| *x *= 2);
        }
        if lam.iter().all(|&x| x == 0) {
            continue;
        }
        let mask: u32 = rng.gen_range(1..(1 << (n + 1)));
        let k: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
        let e = EnhancedCoxeterDatum::new(w.clone(), lam, &k).unwrap();
        if e.max_element().is_ok() {
            out.push(e);
        }
    }
    out
}

/// Elements of the truncated interval of length `l`, as words `w` with the
/// element equal to `tau w` (`tau` the length-0 element of the interval).
pub fn words_of_length(e: &EnhancedCoxeterDatum, l: usize) -> Vec<Vec<usize>> {
    let w = &e.weyl;
    let iv = e.truncated_interval().unwrap();
    let tau = iv.iter().find(|v| w.length(v) == 0).unwrap().clone();
    let tinv = w.inv(&tau);
    let mut out: Vec<Vec<usize>> = iv
        .iter()
        .filter(|v| w.length(v) == l)
        .map(|v| w.reduced_word(&w.mul(&tinv, v)).0)
        .collect();
    out.sort();
    out
}

pub fn colength(p: &QPoly, c: usize) -> i64 {
    p.coeff(p.degree() - c)
}

pub fn geometric(a: usize, b: usize) -> QPoly {
    QPoly::new((0..=b).map(|d| i64::from(d >= a)).collect())
}

/// Compositions of `n` into `l` positive parts.
pub fn compositions(n: u64, l: usize) -> Vec<Vec<u64>> {
    if l == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 1..n {
        for mut rest in compositions(n - first, l - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `#{(j_1..j_l) : sum j = r, 0 <= j_i <= n_i}` by plain recursion.
pub fn count_tuples(r: u64, parts: &[u64]) -> u64 {
    match parts.split_first() {
        None => u64::from(r == 0),
        Some((&p, rest)) => (0..=p.min(r)).map(|j| count_tuples(r - j, rest)).sum(),
    }
}
