//! Extended affine Weyl group `X_* ⋊ W_0`.
//!
//! An element is `t^lam u`; `u` is stored as its matrix on coweights together
//! with the matrix of `u^{-1}`. Conventions:
//!
//! * `t^lam (a + k delta) = a + (k + <lam, a>) delta`,
//! * `s_0 = t^{-theta^vee} s_theta`,
//! * `(t^lam u)(t^mu v) = t^{lam + u mu} uv`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::root_system::{is_positive_root, mat_vec, Family, RootDatum};

pub const DEFAULT_INTERVAL_CAP: usize = 5_000_000;

/// Interval cap from `WEYLAB_INTERVAL_CAP`, else the default.
pub fn interval_cap_from_env() -> usize {
    std::env::var("WEYLAB_INTERVAL_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_INTERVAL_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    pub lam: Vec<i64>,
    m: Vec<i64>,
    minv: Vec<i64>,
}

impl WeylElt {
    /// Matrix of the finite part on coweights (row-major).
    pub fn finite_matrix(&self) -> &[i64] {
        &self.m
    }

    pub fn is_translation(&self) -> bool {
        let n = self.lam.len();
        (0..n).all(|i| (0..n).all(|j| self.m[i * n + j] == i64::from(i == j)))
    }
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// The group together with its root datum and cached generators.
#[derive(Clone, Debug)]
pub struct Weyl {
    pub datum: RootDatum,
    simples: Vec<WeylElt>,
    pub cap: usize,
}

impl Weyl {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::from_datum(RootDatum::new(family, rank)?))
    }

    pub fn from_datum(datum: RootDatum) -> Self {
        let n = datum.rank;
        let mut simples = Vec::with_capacity(n + 1);
        let s0 = WeylElt {
            lam: datum.theta_coroot_cw.iter().map(|x| -x).collect(),
            m: datum.s_theta.clone(),
            minv: datum.s_theta.clone(),
        };
        simples.push(s0);
        for j in 0..n {
            simples.push(WeylElt {
                lam: vec![0; n],
                m: datum.sref[j].clone(),
                minv: datum.sref[j].clone(),
            });
        }
        Weyl {
            datum,
            simples,
            cap: interval_cap_from_env(),
        }
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.datum.nodes()
    }

    pub fn e(&self) -> WeylElt {
        let n = self.rank();
        WeylElt {
            lam: vec![0; n],
            m: identity(n),
            minv: identity(n),
        }
    }

    pub fn t(&self, lam: &[i64]) -> WeylElt {
        let mut w = self.e();
        w.lam = lam.to_vec();
        w
    }

    pub fn s(&self, i: usize) -> WeylElt {
        self.simples[i].clone()
    }

    /// Finite part `u` of `t^lam u`, as an element.
    pub fn finite_part(&self, w: &WeylElt) -> WeylElt {
        WeylElt {
            lam: vec![0; self.rank()],
            m: w.m.clone(),
            minv: w.minv.clone(),
        }
    }

    pub fn mul(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        let n = self.rank();
        let ub = mat_vec(&a.m, &b.lam, n);
        WeylElt {
            lam: a.lam.iter().zip(&ub).map(|(x, y)| x + y).collect(),
            m: mat_mul(&a.m, &b.m, n),
            minv: mat_mul(&b.minv, &a.minv, n),
        }
    }

    pub fn inv(&self, w: &WeylElt) -> WeylElt {
        let n = self.rank();
        let l = mat_vec(&w.minv, &w.lam, n);
        WeylElt {
            lam: l.into_iter().map(|x| -x).collect(),
            m: w.minv.clone(),
            minv: w.m.clone(),
        }
    }

    pub fn lmul(&self, i: usize, w: &WeylElt) -> WeylElt {
        self.mul(&self.simples[i], w)
    }

    pub fn rmul(&self, w: &WeylElt, i: usize) -> WeylElt {
        self.mul(w, &self.simples[i])
    }

    /// `u(r)` for a root `r` in simple-root coordinates.
    pub fn act_finite(&self, w: &WeylElt, r: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|k| w.minv[k * n + i] * r[k]).sum())
            .collect()
    }

    /// `u^{-1}(r)`.
    pub fn act_finite_inv(&self, w: &WeylElt, r: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|k| w.m[k * n + i] * r[k]).sum())
            .collect()
    }

    /// `w(a + k delta)`.
    pub fn act(&self, w: &WeylElt, a: &[i64], k: i64) -> (Vec<i64>, i64) {
        let ua = self.act_finite(w, a);
        let lev = k + self.datum.pairing(&w.lam, &ua);
        (ua, lev)
    }

    /// `w^{-1}(a + k delta)`.
    pub fn act_inv(&self, w: &WeylElt, a: &[i64], k: i64) -> (Vec<i64>, i64) {
        let lev = k - self.datum.pairing(&w.lam, a);
        (self.act_finite_inv(w, a), lev)
    }

    fn simple_affine(&self, i: usize) -> (Vec<i64>, i64) {
        (self.datum.finite_simple(i), i64::from(i == 0))
    }

    fn negative(a: &[i64], k: i64) -> bool {
        k < 0 || (k == 0 && !is_positive_root(a))
    }

    pub fn is_left_descent(&self, w: &WeylElt, i: usize) -> bool {
        let (a, k) = self.simple_affine(i);
        let (b, l) = self.act_inv(w, &a, k);
        Self::negative(&b, l)
    }

    pub fn is_right_descent(&self, w: &WeylElt, i: usize) -> bool {
        let (a, k) = self.simple_affine(i);
        let (b, l) = self.act(w, &a, k);
        Self::negative(&b, l)
    }

    pub fn left_descents(&self, w: &WeylElt) -> Vec<usize> {
        self.nodes()
            .into_iter()
            .filter(|&i| self.is_left_descent(w, i))
            .collect()
    }

    pub fn right_descents(&self, w: &WeylElt) -> Vec<usize> {
        self.nodes()
            .into_iter()
            .filter(|&i| self.is_right_descent(w, i))
            .collect()
    }

    /// Number of positive affine roots made negative by `w`.
    pub fn length(&self, w: &WeylElt) -> usize {
        let mut l = 0i64;
        for a in &self.datum.roots {
            let ua = self.act_finite(w, a);
            let p = self.datum.pairing(&w.lam, &ua);
            let c = -p - i64::from(is_positive_root(&ua)) - i64::from(!is_positive_root(a)) + 1;
            if c > 0 {
                l += c;
            }
        }
        l as usize
    }

    /// `w = s_{i_1} ... s_{i_k} tau` with `tau` of length zero.
    pub fn reduced_word(&self, w: &WeylElt) -> (Vec<usize>, WeylElt) {
        let mut word = Vec::new();
        let mut x = w.clone();
        while let Some(i) = self.nodes().into_iter().find(|&i| self.is_left_descent(&x, i)) {
            word.push(i);
            x = self.lmul(i, &x);
        }
        (word, x)
    }

    /// Product of a word of simple reflections, followed by `omega`.
    pub fn from_word(&self, word: &[usize], omega: Option<&WeylElt>) -> WeylElt {
        let mut x = omega.cloned().unwrap_or_else(|| self.e());
        for &i in word.iter().rev() {
            x = self.lmul(i, &x);
        }
        x
    }

    /// Parse `"s0 s2 s1"` (also accepts `"0 2 1"` and `"e"`).
    pub fn parse_word(&self, s: &str) -> Result<WeylElt> {
        let mut word = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',' || c == '*' || c == '.') {
            let t = tok.trim();
            if t.is_empty() || t == "e" || t == "1" && s.trim() == "1" {
                continue;
            }
            let t = t.trim_start_matches('s');
            let i: usize = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {:?}", tok)))?;
            if i > self.rank() {
                return Err(Error::Parse(format!("node {} out of range", i)));
            }
            word.push(i);
        }
        Ok(self.from_word(&word, None))
    }

    /// Class in `W~ / W_a`.
    pub fn omega_class(&self, w: &WeylElt) -> Vec<i64> {
        self.datum.omega_class(&w.lam)
    }

    pub fn bruhat_leq(&self, u: &WeylElt, w: &WeylElt) -> bool {
        if self.omega_class(u) != self.omega_class(w) {
            return false;
        }
        let mut u = u.clone();
        let mut w = w.clone();
        let mut lu = self.length(&u);
        let mut lw = self.length(&w);
        loop {
            if lu > lw {
                return false;
            }
            if lw == 0 {
                return u == w;
            }
            let s = self
                .nodes()
                .into_iter()
                .find(|&i| self.is_left_descent(&w, i))
                .unwrap();
            if self.is_left_descent(&u, s) {
                u = self.lmul(s, &u);
                lu -= 1;
            }
            w = self.lmul(s, &w);
            lw -= 1;
        }
    }

    /// `{v : v <= w}` by `[e, w] = [e, sw] ∪ s[e, sw]`.
    pub fn lower_interval(&self, w: &WeylElt) -> Result<HashSet<WeylElt>> {
        let (word, tau) = self.reduced_word(w);
        let mut set: HashSet<WeylElt> = HashSet::new();
        set.insert(tau);
        for &i in word.iter().rev() {
            let new: Vec<WeylElt> = set.iter().map(|v| self.lmul(i, v)).collect();
            set.extend(new);
            if set.len() > self.cap {
                return Err(Error::IntervalTooLarge { cap: self.cap });
            }
        }
        Ok(set)
    }

    /// `{v in W^J : v <= w}` for `w in W^J` (minimal in `w W_J`), peeling
    /// left descents and using that they keep `W^J` stable.
    pub fn lower_interval_min(&self, w: &WeylElt, gens: &[usize]) -> Result<HashSet<WeylElt>> {
        let (word, tau) = self.reduced_word(w);
        let mut set: HashSet<WeylElt> = HashSet::new();
        set.insert(tau);
        for &i in word.iter().rev() {
            let new: Vec<WeylElt> = set
                .iter()
                .filter(|y| !self.is_left_descent(y, i))
                .map(|y| self.lmul(i, y))
                .filter(|sy| self.is_min_rep(sy, gens))
                .collect();
            set.extend(new);
            if set.len() > self.cap {
                return Err(Error::IntervalTooLarge { cap: self.cap });
            }
        }
        Ok(set)
    }

    pub fn is_min_rep(&self, w: &WeylElt, gens: &[usize]) -> bool {
        gens.iter().all(|&j| !self.is_right_descent(w, j))
    }

    /// Minimal element of `w W_J`.
    pub fn min_coset_rep(&self, w: &WeylElt, gens: &[usize]) -> WeylElt {
        let mut x = w.clone();
        while let Some(&j) = gens.iter().find(|&&j| self.is_right_descent(&x, j)) {
            x = self.rmul(&x, j);
        }
        x
    }

    /// Maximal element of `W_J w W_J`.
    pub fn double_coset_max(&self, gens: &[usize], w: &WeylElt) -> WeylElt {
        let mut x = w.clone();
        loop {
            if let Some(&j) = gens.iter().find(|&&j| !self.is_left_descent(&x, j)) {
                x = self.lmul(j, &x);
            } else if let Some(&j) = gens.iter().find(|&&j| !self.is_right_descent(&x, j)) {
                x = self.rmul(&x, j);
            } else {
                return x;
            }
        }
    }

    /// Minimal element of `W_J w W_J`.
    pub fn double_coset_min(&self, gens: &[usize], w: &WeylElt) -> WeylElt {
        let mut x = w.clone();
        loop {
            if let Some(&j) = gens.iter().find(|&&j| self.is_left_descent(&x, j)) {
                x = self.lmul(j, &x);
            } else if let Some(&j) = gens.iter().find(|&&j| self.is_right_descent(&x, j)) {
                x = self.rmul(&x, j);
            } else {
                return x;
            }
        }
    }

    /// Longest element of the finite parabolic subgroup `W_J`.
    pub fn longest(&self, gens: &[usize]) -> WeylElt {
        let mut x = self.e();
        while let Some(&j) = gens.iter().find(|&&j| !self.is_right_descent(&x, j)) {
            x = self.rmul(&x, j);
        }
        x
    }

    /// All elements of `W_J` by breadth-first search.
    pub fn parabolic_elements(&self, gens: &[usize]) -> Vec<WeylElt> {
        let mut seen: HashSet<WeylElt> = HashSet::new();
        let mut out = Vec::new();
        let mut q = VecDeque::new();
        seen.insert(self.e());
        q.push_back(self.e());
        while let Some(x) = q.pop_front() {
            for &j in gens {
                let y = self.rmul(&x, j);
                if seen.insert(y.clone()) {
                    q.push_back(y);
                }
            }
            out.push(x);
        }
        out
    }

    /// All elements of length at most `l` (breadth-first from the identity).
    pub fn elements_up_to(&self, l: usize) -> Vec<WeylElt> {
        let mut seen: HashSet<WeylElt> = HashSet::new();
        let mut layer = vec![self.e()];
        seen.insert(self.e());
        let mut out = layer.clone();
        for _ in 0..l {
            let mut next = Vec::new();
            for x in &layer {
                for i in self.nodes() {
                    if self.is_right_descent(x, i) {
                        continue;
                    }
                    let y = self.rmul(x, i);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Length-zero elements, one for each class of `P^vee / Q^vee`.
    pub fn omega_elements(&self) -> Vec<WeylElt> {
        let mut by_class: HashMap<Vec<i64>, WeylElt> = HashMap::new();
        let mut out = vec![self.e()];
        by_class.insert(self.omega_class(&self.e()), self.e());
        for i in 1..=self.rank() {
            let t = self.t(&self.datum.fundamental_coweight(i));
            let c = self.omega_class(&t);
            if let std::collections::hash_map::Entry::Vacant(e) = by_class.entry(c) {
                let (_, tau) = self.reduced_word(&t);
                e.insert(tau.clone());
                out.push(tau);
            }
        }
        out
    }

    /// Signed permutation `p` with `u(eps_i) = sign(p_i) eps_{|p_i|}` (classical
    /// types; type A yields an ordinary permutation of `1..=n+1`).
    pub fn to_signed_permutation(&self, w: &WeylElt) -> Option<Vec<i64>> {
        let d = &self.datum;
        if !d.family.is_classical() {
            return None;
        }
        let n = d.rank;
        let dim = if d.family == Family::A { n + 1 } else { n };
        let mut out = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = vec![num_rational::Ratio::from_integer(0i128); dim];
            e[i] = num_rational::Ratio::from_integer(1);
            let c = d.from_epsilon(&e).ok()?;
            let img = d.to_epsilon(&mat_vec(&w.m, &c, n))?;
            let img = if d.family == Family::A {
                crate::root_system::normalize_a(&img)
            } else {
                img
            };
            let nz: Vec<usize> = (0..dim).filter(|&k| *img[k].numer() != 0).collect();
            if nz.len() != 1 {
                return None;
            }
            let k = nz[0];
            out.push(*img[k].numer() as i64 * (k as i64 + 1));
        }
        Some(out)
    }

    /// Inverse of [`to_signed_permutation`]; errors if `p` is not in `W_0`.
    pub fn from_signed_permutation(&self, p: &[i64]) -> Result<WeylElt> {
        let d = &self.datum;
        let n = d.rank;
        let dim = if d.family == Family::A { n + 1 } else { n };
        if !d.family.is_classical() || p.len() != dim {
            return Err(Error::BadParams(format!("bad signed permutation {:?}", p)));
        }
        let mut hit = vec![false; dim];
        for &x in p {
            let k = x.unsigned_abs() as usize;
            if k == 0 || k > dim || hit[k - 1] || (d.family == Family::A && x < 0) {
                return Err(Error::BadParams(format!("bad signed permutation {:?}", p)));
            }
            hit[k - 1] = true;
        }
        let apply = |c: &[i64]| -> Result<Vec<i64>> {
            let e = d.to_epsilon(c).unwrap();
            let mut out = vec![num_rational::Ratio::from_integer(0i128); dim];
            for i in 0..dim {
                let k = p[i].unsigned_abs() as usize - 1;
                out[k] = if p[i] < 0 { -e[i] } else { e[i] };
            }
            d.from_epsilon(&out)
        };
        let mut m = vec![0i64; n * n];
        for j in 0..n {
            let col = apply(&d.fundamental_coweight(j + 1))?;
            for i in 0..n {
                m[i * n + j] = col[i];
            }
        }
        // Reduce to the identity through finite descents.
        let mut x = WeylElt {
            lam: vec![0; n],
            m: m.clone(),
            minv: identity(n),
        };
        let mut word = Vec::new();
        for _ in 0..=d.pos_roots.len() {
            let r = (1..=n).find(|&i| {
                let a = d.finite_simple(i);
                !is_positive_root(&self.act_finite_inv_raw(&x.m, &a))
            });
            match r {
                Some(i) => {
                    word.push(i);
                    x.m = mat_mul(&d.sref[i - 1], &x.m, n);
                }
                None => break,
            }
        }
        if x.m != identity(n) {
            return Err(Error::BadParams(format!("{:?} is not in W_0", p)));
        }
        Ok(self.from_word(&word, None))
    }

    fn act_finite_inv_raw(&self, m: &[i64], r: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|k| m[k * n + i] * r[k]).sum())
            .collect()
    }

    pub fn fmt_word(word: &[usize]) -> String {
        if word.is_empty() {
            "e".into()
        } else {
            word.iter()
                .map(|i| format!("s{}", i))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// `"t^[lam] · w"`.
    pub fn display(&self, w: &WeylElt) -> String {
        let lam = self.datum.fmt_coweight(&w.lam);
        let fin = match self.to_signed_permutation(w) {
            Some(p) => format!(
                "[{}]",
                p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
            None => {
                let (word, _) = self.reduced_word(&self.finite_part(w));
                Self::fmt_word(&word)
            }
        };
        format!("t^{} · {}", lam, fin)
    }

    /// Reduced word with the length-zero part, e.g. `"s2 s0 s1 · tau"`.
    pub fn display_word(&self, w: &WeylElt) -> String {
        let (word, tau) = self.reduced_word(w);
        let mut s = Self::fmt_word(&word);
        if tau != self.e() {
            s.push_str(&format!(" · tau{}", self.datum.fmt_coweight(&tau.lam)));
        }
        s
    }
}

pub struct Displayed<'a>(pub &'a Weyl, pub &'a WeylElt);

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coxeter_order(w: &Weyl, a: &WeylElt, e: &WeylElt) -> usize {
        let mut x = a.clone();
        for k in 1..20 {
            if &x == e {
                return k - 1;
            }
            x = w.mul(&x, a);
        }
        panic!("no finite order")
    }

    #[test]
    fn coxeter_relations() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 2),
            (Family::G2, 2),
            (Family::F4, 4),
            (Family::D, 4),
        ] {
            let w = Weyl::new(f, n).unwrap();
            let e = w.e();
            for i in 0..=n {
                assert_eq!(w.mul(&w.s(i), &w.s(i)), e);
                assert_eq!(w.length(&w.s(i)), 1);
                for j in 0..=n {
                    let m = w.datum.coxeter[i][j];
                    if i != j && m != 0 {
                        let p = w.mul(&w.s(i), &w.s(j));
                        assert_eq!(coxeter_order(&w, &p, &e) + 1, m as usize, "{} {} {}", f, i, j);
                    }
                }
            }
        }
    }

    #[test]
    fn s0_negates_alpha0() {
        let w = Weyl::new(Family::A, 1).unwrap();
        let s0 = w.s(0);
        assert_eq!(s0.lam, vec![-2]);
        let (a, k) = w.act(&s0, &[-1], 1);
        assert_eq!((a, k), (vec![1], -1));
        let (a, k) = w.act(&s0, &[0], 1);
        assert_eq!((a, k), (vec![0], 1));
    }

    #[test]
    fn g2_translation_length() {
        let w = Weyl::new(Family::G2, 2).unwrap();
        let t = w.t(&[0, 1]);
        assert_eq!(w.length(&t), 6);
        let (word, tau) = w.reduced_word(&t);
        assert_eq!(word.len(), 6);
        assert_eq!(tau, w.e());
        assert_eq!(w.from_word(&word, None), t);
    }

    #[test]
    fn a1_interval() {
        let w = Weyl::new(Family::A, 1).unwrap();
        let x = w.parse_word("s0 s1").unwrap();
        assert_eq!(w.lower_interval(&x).unwrap().len(), 4);
        assert_eq!(w.lower_interval(&w.e()).unwrap().len(), 1);
    }

    #[test]
    fn signed_permutations_round_trip() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let w = Weyl::new(f, n).unwrap();
            for x in w.parabolic_elements(&(1..=n).collect::<Vec<_>>()) {
                let p = w.to_signed_permutation(&x).unwrap();
                assert_eq!(w.from_signed_permutation(&p).unwrap(), x);
            }
        }
        let d = Weyl::new(Family::D, 4).unwrap();
        assert!(d.from_signed_permutation(&[-1, 2, 3, 4]).is_err());
    }
}
