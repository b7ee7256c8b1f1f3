//! Enhanced Coxeter data, extreme elements and admissible sets.
//!
//! `k_tilde` lists the vertices of the parahoric. Its Weyl group `W_K` is
//! generated by the reflections of the *complementary* nodes, so a single
//! special vertex gives `W_K ≅ W_0` and `k_tilde = S~` is the Iwahori case.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::RootDatum;
use crate::weyl::{Weyl, WeylElt};

/// `W_0 . lam` by reflection closure.
pub fn w0_orbit(d: &RootDatum, lam: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![lam.to_vec()];
    seen.insert(lam.to_vec());
    while let Some(x) = stack.pop() {
        for i in 1..=d.rank {
            let y = d.reflect_coweight(i, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCount {
    pub count: u64,
    pub meets_bound: bool,
    pub equality: bool,
    /// `r = 1`, or `l = 2` with `n_1 = 1` or `n_2 = 1`.
    pub equality_case: bool,
}

/// `#{(j_1..j_l) : sum j = r, 0 <= j_i <= n_i}` and the comparison with `l`.
pub fn partition_count_check(r: u64, parts: &[u64]) -> Result<PartitionCount> {
    let l = parts.len() as u64;
    let n: u64 = parts.iter().sum();
    if l < 2 || r >= n || parts.contains(&0) {
        return Err(Error::BadParams(format!(
            "need l >= 2, positive parts and r < n (l={}, r={}, n={})",
            l, r, n
        )));
    }
    // ways[s] = number of tuples over the processed parts summing to s
    let mut ways = vec![0u64; r as usize + 1];
    ways[0] = 1;
    for &p in parts {
        let mut next = vec![0u64; r as usize + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for j in 0..=p {
                let t = s + j as usize;
                if t > r as usize {
                    break;
                }
                next[t] += w;
            }
        }
        ways = next;
    }
    let count = ways[r as usize];
    Ok(PartitionCount {
        count,
        meets_bound: count >= l,
        equality: count == l,
        equality_case: r == 1 || (l == 2 && (parts[0] == 1 || parts[1] == 1)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionMax {
    Unique(WeylElt),
    NotUnique(Vec<WeylElt>),
}

/// `(affine type, lam, K~)`.
#[derive(Clone, Debug)]
pub struct EnhancedCoxeterDatum {
    pub weyl: Arc<Weyl>,
    pub lambda: Vec<i64>,
    pub k_tilde: Vec<usize>,
    gens: Vec<usize>,
}

#[derive(Serialize)]
struct EcdJson<'a> {
    family: String,
    k: &'a [usize],
    lambda: &'a [i64],
    rank: usize,
}

impl EnhancedCoxeterDatum {
    pub fn new(weyl: Arc<Weyl>, lambda: Vec<i64>, k_tilde: &[usize]) -> Result<Self> {
        let n = weyl.rank();
        if lambda.len() != n {
            return Err(Error::BadParams(format!(
                "lambda has {} coordinates, rank is {}",
                lambda.len(),
                n
            )));
        }
        let k: BTreeSet<usize> = k_tilde.iter().copied().collect();
        if k.is_empty() {
            return Err(Error::BadParams("K~ must be nonempty".into()));
        }
        if let Some(&bad) = k.iter().find(|&&v| v > n) {
            return Err(Error::BadParams(format!("vertex {} out of range", bad)));
        }
        let gens = (0..=n).filter(|v| !k.contains(v)).collect();
        Ok(EnhancedCoxeterDatum {
            weyl,
            lambda,
            k_tilde: k.into_iter().collect(),
            gens,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.weyl.datum
    }

    /// Nodes generating `W_K`.
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(EcdJson {
            family: self.datum().family.to_string(),
            k: &self.k_tilde,
            lambda: &self.lambda,
            rank: self.datum().rank,
        })
        .unwrap()
    }

    pub fn w0_orbit(&self) -> BTreeSet<Vec<i64>> {
        w0_orbit(self.datum(), &self.lambda)
    }

    /// Orbits of `W_K` (through its image in `W_0`) on `W_0 . lam`.
    pub fn extreme_orbits(&self) -> Vec<Vec<Vec<i64>>> {
        let d = self.datum();
        let mut left = self.w0_orbit();
        let mut out = Vec::new();
        while let Some(start) = left.pop_first() {
            let mut orbit = vec![start.clone()];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &j in &self.gens {
                    let y = d.reflect_coweight(j, &x);
                    if left.remove(&y) {
                        orbit.push(y.clone());
                        stack.push(y);
                    }
                }
            }
            orbit.sort();
            out.push(orbit);
        }
        out
    }

    pub fn count_extreme(&self) -> usize {
        self.extreme_orbits().len()
    }

    /// Distinct `max(W_K t^mu W_K)` over `mu` in the orbit.
    pub fn extreme_maxima(&self) -> Vec<WeylElt> {
        let w = &self.weyl;
        let set: BTreeSet<WeylElt> = self
            .w0_orbit()
            .iter()
            .map(|mu| w.double_coset_max(&self.gens, &w.t(mu)))
            .collect();
        set.into_iter().collect()
    }

    /// The element of `p(W_K) lam` pairing nonnegatively with the finite
    /// parts of the simple affine roots outside `K~`.
    pub fn lambda_prime(&self) -> Result<Vec<i64>> {
        Self::lambda_prime_of(self.datum(), &self.gens, &self.lambda)
    }

    fn lambda_prime_of(d: &RootDatum, gens: &[usize], lam: &[i64]) -> Result<Vec<i64>> {
        let bound = d.pos_roots.len() + 1;
        let mut v = lam.to_vec();
        for _ in 0..=bound {
            match gens
                .iter()
                .find(|&&j| d.pairing(&v, &d.finite_simple(j)) < 0)
            {
                Some(&j) => v = d.reflect_coweight(j, &v),
                None => return Ok(v),
            }
        }
        Err(Error::NoDominantRepresentative(d.fmt_coweight(lam)))
    }

    /// `w_{lam,K} = t^{lam'}`, the maximum of `W_{<=lam,K}`.
    pub fn max_element(&self) -> Result<WeylElt> {
        Ok(self.weyl.t(&self.lambda_prime()?))
    }

    /// `max(W_K t^lam W_K)`.
    pub fn double_coset_max(&self) -> WeylElt {
        self.weyl
            .double_coset_max(&self.gens, &self.weyl.t(&self.lambda))
    }

    pub fn longest_k(&self) -> WeylElt {
        self.weyl.longest(&self.gens)
    }

    /// `W_{<=lam,K} = {v in W^K : v <= w_{lam,K}}`.
    pub fn truncated_interval(&self) -> Result<HashSet<WeylElt>> {
        self.weyl
            .lower_interval_min(&self.max_element()?, &self.gens)
    }

    /// Same set, by filtering the full interval below the double coset max.
    pub fn truncated_interval_brute(&self) -> Result<HashSet<WeylElt>> {
        let m = self.double_coset_max();
        Ok(self
            .weyl
            .lower_interval(&m)?
            .into_iter()
            .filter(|v| self.weyl.is_min_rep(v, &self.gens))
            .collect())
    }

    /// Minimal representatives of the extreme double cosets.
    pub fn extreme_min_reps(&self) -> Vec<WeylElt> {
        let mut v: Vec<WeylElt> = self
            .extreme_maxima()
            .iter()
            .map(|m| self.weyl.min_coset_rep(m, &self.gens))
            .collect();
        v.sort();
        v
    }

    /// `Adm_K(lam) ∩ W^K`.
    pub fn admissible_min_reps(&self) -> Result<HashSet<WeylElt>> {
        let mut out = HashSet::new();
        for m in self.extreme_min_reps() {
            out.extend(self.weyl.lower_interval_min(&m, &self.gens)?);
        }
        Ok(out)
    }

    /// `Adm_K(lam)` as maximal double-coset representatives.
    pub fn admissible_set(&self) -> Result<BTreeSet<WeylElt>> {
        Ok(self
            .admissible_min_reps()?
            .iter()
            .map(|v| self.weyl.double_coset_max(&self.gens, v))
            .collect())
    }

    /// Common lower set of two extreme double cosets, as minimal representatives.
    pub fn intersection(&self, w1: &WeylElt, w2: &WeylElt) -> Result<HashSet<WeylElt>> {
        let w = &self.weyl;
        let m1 = w.min_coset_rep(w1, &self.gens);
        let m2 = w.min_coset_rep(w2, &self.gens);
        let a = w.lower_interval_min(&m1, &self.gens)?;
        let b = w.lower_interval_min(&m2, &self.gens)?;
        Ok(a.intersection(&b).cloned().collect())
    }

    /// Maximal elements of the intersection, reported as `v w_0^K`.
    pub fn intersection_max(&self, w1: &WeylElt, w2: &WeylElt) -> Result<IntersectionMax> {
        let set = self.intersection(w1, w2)?;
        let maxima = maximal_elements(&self.weyl, &set);
        let w0k = self.longest_k();
        let mut out: Vec<WeylElt> = maxima.iter().map(|v| self.weyl.mul(v, &w0k)).collect();
        out.sort();
        Ok(if out.len() == 1 {
            IntersectionMax::Unique(out.pop().unwrap())
        } else {
            IntersectionMax::NotUnique(out)
        })
    }
}

/// Maximal elements of a finite lower-closed set (within `W^K`).
pub fn maximal_elements(w: &Weyl, set: &HashSet<WeylElt>) -> Vec<WeylElt> {
    let mut by_len: Vec<(usize, &WeylElt)> = set.iter().map(|v| (w.length(v), v)).collect();
    by_len.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    let mut maxima: Vec<(usize, WeylElt)> = Vec::new();
    for (l, v) in by_len {
        if maxima
            .iter()
            .all(|(lm, m)| *lm == l || !w.bruhat_leq(v, m))
        {
            maxima.push((l, v.clone()));
        }
    }
    let mut out: Vec<WeylElt> = maxima.into_iter().map(|(_, v)| v).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::Family;

    fn ecd(f: Family, n: usize, lam: Vec<i64>, k: &[usize]) -> EnhancedCoxeterDatum {
        EnhancedCoxeterDatum::new(Arc::new(Weyl::new(f, n).unwrap()), lam, k).unwrap()
    }

    #[test]
    fn orbit_sizes() {
        let g2 = RootDatum::new(Family::G2, 2).unwrap();
        assert_eq!(w0_orbit(&g2, &[0, 1]).len(), 6);
        let e7 = RootDatum::new(Family::E7, 7).unwrap();
        assert_eq!(w0_orbit(&e7, &e7.fundamental_coweight(7)).len(), 56);
        assert_eq!(w0_orbit(&g2, &[0, 0]).len(), 1);
    }

    #[test]
    fn a3_extreme_count() {
        assert_eq!(ecd(Family::A, 3, vec![1, 0, 0], &[0, 2]).count_extreme(), 2);
    }

    #[test]
    fn partition_counts() {
        let p = partition_count_check(1, &[3, 2]).unwrap();
        assert_eq!((p.count, p.equality, p.equality_case), (2, true, true));
        let p = partition_count_check(2, &[3, 1]).unwrap();
        assert_eq!((p.count, p.equality, p.equality_case), (2, true, true));
        let p = partition_count_check(2, &[2, 2, 2]).unwrap();
        assert_eq!((p.count, p.equality), (6, false));
    }

    #[test]
    fn g2_max_element() {
        let e = ecd(Family::G2, 2, vec![0, 1], &[1]);
        let w = e.max_element().unwrap();
        assert_eq!(w, e.weyl.parse_word("s2 s0 s2 s1 s2 s1").unwrap());
    }

    #[test]
    fn a1_iwahori_adm() {
        let e = ecd(Family::A, 1, vec![2], &[0, 1]);
        let adm = e.admissible_set().unwrap();
        let w = &e.weyl;
        let want: BTreeSet<WeylElt> = ["s0 s1", "s1 s0", "s0", "s1", "e"]
            .iter()
            .map(|s| w.parse_word(s).unwrap())
            .collect();
        assert_eq!(adm, want);
        let ext = e.extreme_maxima();
        assert_eq!(ext.len(), 2);
        let want_int = IntersectionMax::NotUnique(vec![w.s(0), w.s(1)].into_iter().collect::<BTreeSet<_>>().into_iter().collect());
        assert_eq!(e.intersection_max(&ext[0], &ext[1]).unwrap(), want_int);
    }
}
