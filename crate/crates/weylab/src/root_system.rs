//! Affine root data for the untwisted types A~..G~.
//!
//! Nodes use Bourbaki labels `1..=n` for the finite diagram and `0` for the
//! affine node. `cartan[i][j] = <alpha_i^vee, alpha_j>` (Kac convention).
//! Roots are stored in simple-root coordinates, coroots in simple-coroot
//! coordinates, and coweights in the fundamental coweight basis, so
//! `<lambda, a> = sum lambda_i a_i`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{QPoly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    F4,
    G2,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            f => f.fixed_rank().unwrap(),
        }
    }

    pub const ALL: [Family; 8] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::F4,
        Family::G2,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::F4 => "F4",
            Family::G2 => "G2",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_end_matches('~').trim_end_matches('t');
        let t = t.trim_end_matches('~');
        Ok(match t.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "F4" => Family::F4,
            "G2" => Family::G2,
            _ => return Err(Error::Parse(format!("unknown family {:?}", s))),
        })
    }
}

/// An affine root `a + level*delta`, `a` in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub finite_part: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    /// Coefficients on `alpha_0, ..., alpha_n`, using `delta = alpha_0 + theta`.
    pub fn expansion(&self, theta: &[i64]) -> Vec<i64> {
        let mut out = vec![self.level];
        out.extend(
            self.finite_part
                .iter()
                .zip(theta)
                .map(|(a, t)| a + self.level * t),
        );
        out
    }

    pub fn is_positive(&self) -> bool {
        self.level > 0 || (self.level == 0 && is_positive_root(&self.finite_part))
    }
}

pub fn is_positive_root(r: &[i64]) -> bool {
    r.iter().any(|&x| x > 0)
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    /// Finite Cartan matrix, `n x n`.
    pub cartan: Vec<Vec<i64>>,
    /// Affine generalized Cartan matrix on nodes `0..=n`.
    pub gcm: Vec<Vec<i64>>,
    /// Positive roots, sorted by height.
    pub pos_roots: Vec<Vec<i64>>,
    /// Matching coroots.
    pub pos_coroots: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    pub theta_coroot: Vec<i64>,
    /// `theta^vee` in the fundamental coweight basis.
    pub theta_coroot_cw: Vec<i64>,
    /// `delta = sum marks[i] alpha_i`, with `marks[0] = 1`.
    pub marks: Vec<i64>,
    pub special: Vec<usize>,
    /// Coxeter matrix on `0..=n`; 0 encodes infinity.
    pub coxeter: Vec<Vec<u32>>,
    /// All roots (positive then negative).
    pub roots: Vec<Vec<i64>>,
    /// Simple reflections on coweights, index `j-1` for node `j`.
    pub(crate) sref: Vec<Vec<i64>>,
    /// Reflection `s_theta` on coweights.
    pub(crate) s_theta: Vec<i64>,
    /// Adjugate of the transposed Cartan matrix and its determinant.
    pub(crate) adj_t: Vec<Vec<i64>>,
    pub(crate) det: i64,
}

#[derive(Serialize)]
struct DatumJson<'a> {
    cartan: &'a Vec<Vec<i64>>,
    family: String,
    marks: &'a Vec<i64>,
    rank: usize,
    special: &'a Vec<usize>,
}

/// Bourbaki Cartan matrix of the finite type.
pub fn finite_cartan(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i - 1][j - 1] = aij;
        a[j - 1][i - 1] = aji;
    };
    match family {
        Family::A => {
            for i in 1..n {
                edge(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            for i in 1..n - 1 {
                edge(i, i + 1, -1, -1);
            }
            edge(n - 1, n, -1, -2);
        }
        Family::C => {
            for i in 1..n - 1 {
                edge(i, i + 1, -1, -1);
            }
            edge(n - 1, n, -2, -1);
        }
        Family::D => {
            for i in 1..n - 1 {
                edge(i, i + 1, -1, -1);
            }
            edge(n - 2, n, -1, -1);
        }
        Family::E6 | Family::E7 => {
            edge(1, 3, -1, -1);
            edge(2, 4, -1, -1);
            for i in 3..n {
                edge(i, i + 1, -1, -1);
            }
        }
        Family::F4 => {
            edge(1, 2, -1, -1);
            edge(2, 3, -1, -2);
            edge(3, 4, -1, -1);
        }
        Family::G2 => {
            edge(1, 2, -3, -1);
        }
    }
    a
}

/// Positive roots and coroots of a finite-type Cartan matrix by reflection
/// closure, sorted by (height, coordinates).
pub fn closure(cartan: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        let c = r.clone();
        seen.insert(r.clone());
        queue.push_back((r, c));
    }
    while let Some((r, c)) = queue.pop_front() {
        out.push((r.clone(), c.clone()));
        for i in 0..n {
            let p: i64 = (0..n).map(|k| cartan[i][k] * r[k]).sum();
            let q: i64 = (0..n).map(|k| c[k] * cartan[k][i]).sum();
            let mut r2 = r.clone();
            r2[i] -= p;
            let mut c2 = c.clone();
            c2[i] -= q;
            if r2.iter().all(|&x| x >= 0) && r2.iter().any(|&x| x > 0) && seen.insert(r2.clone())
            {
                queue.push_back((r2, c2));
            }
        }
    }
    out.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then(a.0.cmp(&b.0))
    });
    out.into_iter().unzip()
}

/// Exponents of a finite reflection group from the height distribution.
pub fn exponents(cartan: &[Vec<i64>]) -> Vec<usize> {
    let (roots, _) = closure(cartan);
    let mut by_h: Vec<usize> = Vec::new();
    for r in &roots {
        let h = r.iter().sum::<i64>() as usize;
        if by_h.len() <= h {
            by_h.resize(h + 1, 0);
        }
        by_h[h] += 1;
    }
    let mut ex = Vec::new();
    for h in 1..by_h.len() {
        let next = by_h.get(h + 1).copied().unwrap_or(0);
        for _ in 0..by_h[h] - next {
            ex.push(h);
        }
    }
    ex
}

/// Poincare polynomial `prod [e_i + 1]_q` of a finite Weyl group.
pub fn finite_poincare(cartan: &[Vec<i64>]) -> QPoly {
    exponents(cartan)
        .into_iter()
        .fold(QPoly::one(), |acc, e| &acc * &QPoly::q_int(e))
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x as i128)).collect())
        .collect();
    let mut det = Rat::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k];
                a[r][k] -= f * t;
            }
        }
    }
    assert!(det.is_integer());
    *det.numer() as i64
}

fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * int_det(&minor);
        }
    }
    adj
}

fn coxeter_entry(p: i64) -> u32 {
    match p {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => 0,
    }
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family.fixed_rank() {
            Some(r) => rank == r,
            None => rank >= family.min_rank() && rank <= 24,
        };
        if !ok {
            return Err(Error::UnsupportedRank { family, rank });
        }
        let n = rank;
        let cartan = finite_cartan(family, n);
        let (pos_roots, pos_coroots) = closure(&cartan);
        let top = pos_roots.len() - 1;
        let theta = pos_roots[top].clone();
        let theta_coroot = pos_coroots[top].clone();
        let theta_coroot_cw: Vec<i64> = (0..n)
            .map(|k| (0..n).map(|i| theta_coroot[i] * cartan[i][k]).sum())
            .collect();

        let mut gcm = vec![vec![0i64; n + 1]; n + 1];
        gcm[0][0] = 2;
        for j in 0..n {
            for i in 0..n {
                gcm[i + 1][j + 1] = cartan[i][j];
            }
            gcm[0][j + 1] = -(0..n).map(|i| theta_coroot[i] * cartan[i][j]).sum::<i64>();
            gcm[j + 1][0] = -(0..n).map(|i| cartan[j][i] * theta[i]).sum::<i64>();
        }
        let mut marks = vec![1];
        marks.extend(theta.iter().copied());

        let coxeter: Vec<Vec<u32>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        if i == j {
                            1
                        } else {
                            coxeter_entry(gcm[i][j] * gcm[j][i])
                        }
                    })
                    .collect()
            })
            .collect();

        let mut roots = pos_roots.clone();
        roots.extend(pos_roots.iter().map(|r| r.iter().map(|x| -x).collect()));

        let sref = (0..n)
            .map(|j| {
                let mut m = vec![0i64; n * n];
                for i in 0..n {
                    m[i * n + i] = 1;
                    m[i * n + j] -= cartan[j][i];
                }
                m
            })
            .collect();
        let mut s_theta = vec![0i64; n * n];
        for i in 0..n {
            s_theta[i * n + i] = 1;
            for k in 0..n {
                s_theta[i * n + k] -= theta_coroot_cw[i] * theta[k];
            }
        }
        let at: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cartan[j][i]).collect()).collect();
        let det = int_det(&at);
        let adj_t = adjugate(&at);

        let mut d = RootDatum {
            family,
            rank,
            cartan,
            gcm,
            pos_roots,
            pos_coroots,
            theta,
            theta_coroot,
            theta_coroot_cw,
            marks,
            special: vec![],
            coxeter,
            roots,
            sref,
            s_theta,
            adj_t,
            det,
        };
        let w0 = d.parabolic_order(&(1..=n).collect::<Vec<_>>());
        d.special = (0..=n)
            .filter(|&v| {
                let rest: Vec<usize> = (0..=n).filter(|&u| u != v).collect();
                d.parabolic_order(&rest) == w0
            })
            .collect();
        Ok(d)
    }

    pub fn nodes(&self) -> Vec<usize> {
        (0..=self.rank).collect()
    }

    pub fn sub_gcm(&self, nodes: &[usize]) -> Vec<Vec<i64>> {
        nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.gcm[i][j]).collect())
            .collect()
    }

    /// `|W_J|` for a proper subset `J` of the affine nodes.
    pub fn parabolic_order(&self, nodes: &[usize]) -> u64 {
        assert!(nodes.len() <= self.rank, "parabolic subgroup must be finite");
        exponents(&self.sub_gcm(nodes))
            .iter()
            .map(|&e| e as u64 + 1)
            .product()
    }

    /// `sum_{x in W_J} q^{l(x)}`.
    pub fn parabolic_poincare(&self, nodes: &[usize]) -> QPoly {
        finite_poincare(&self.sub_gcm(nodes))
    }

    pub fn weyl_order(&self) -> u64 {
        self.parabolic_order(&(1..=self.rank).collect::<Vec<_>>())
    }

    pub fn pairing(&self, lam: &[i64], root: &[i64]) -> i64 {
        lam.iter().zip(root).map(|(a, b)| a * b).sum()
    }

    /// Finite part of the simple affine root `alpha_i` (`alpha_0 -> -theta`).
    pub fn finite_simple(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            self.theta.iter().map(|x| -x).collect()
        } else {
            let mut v = vec![0; self.rank];
            v[i - 1] = 1;
            v
        }
    }

    pub fn fundamental_coweight(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[i - 1] = 1;
        v
    }

    /// Fundamental coweights pairing to `0, ±1` with every root.
    pub fn minuscule_coweights(&self) -> Vec<Vec<i64>> {
        (1..=self.rank)
            .map(|i| self.fundamental_coweight(i))
            .filter(|w| {
                self.pos_roots
                    .iter()
                    .all(|r| self.pairing(w, r).abs() <= 1)
            })
            .collect()
    }

    /// Translation elements entering the CCP classification: minuscule
    /// coweights plus the non-minuscule cases `2w_1` (A_1), the `w_i` of B
    /// and C, `2w_n` (C), and the highest short-root coweights of F4, G2.
    pub fn translation_candidates(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut out: Vec<Vec<i64>> = match self.family {
            Family::A | Family::D | Family::E6 | Family::E7 => self.minuscule_coweights(),
            Family::B | Family::C => (1..=n).map(|i| self.fundamental_coweight(i)).collect(),
            Family::F4 => vec![self.fundamental_coweight(1)],
            Family::G2 => vec![self.fundamental_coweight(2)],
        };
        if self.family == Family::A && n == 1 {
            out.push(vec![2]);
        }
        if self.family == Family::C {
            let mut v = self.fundamental_coweight(n);
            v[n - 1] = 2;
            out.push(v);
        }
        out
    }

    /// `l * w_i` labels like `"w2"`, `"2w1"`, or a sum.
    pub fn coweight_label(&self, lam: &[i64]) -> String {
        let parts: Vec<String> = lam
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("w{}", i + 1)
                } else {
                    format!("{}w{}", c, i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub fn positive_affine_roots_up_to(&self, bound: i64) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for k in 0..=bound {
            for r in &self.roots {
                let a = AffineRoot {
                    finite_part: r.clone(),
                    level: k,
                };
                if a.is_positive() {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Apply a simple reflection to a coweight.
    pub fn reflect_coweight(&self, node: usize, lam: &[i64]) -> Vec<i64> {
        let m = if node == 0 {
            &self.s_theta
        } else {
            &self.sref[node - 1]
        };
        mat_vec(m, lam, self.rank)
    }

    /// Dominant representative of the `W_0`-orbit of `lam`.
    pub fn dominant(&self, lam: &[i64]) -> Vec<i64> {
        let mut v = lam.to_vec();
        while let Some(j) = (0..self.rank).find(|&j| v[j] < 0) {
            v = self.reflect_coweight(j + 1, &v);
        }
        v
    }

    /// Class of a coweight in `P^vee / Q^vee`.
    pub fn omega_class(&self, lam: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n)
            .map(|i| {
                let s: i64 = (0..n).map(|k| self.adj_t[i][k] * lam[k]).sum();
                s.rem_euclid(self.det.abs())
            })
            .collect()
    }

    /// Permutations of the affine nodes preserving the Coxeter matrix.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank + 1;
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.auto_rec(0, &mut perm, &mut used, &mut out);
        out.sort();
        out
    }

    fn auto_rec(&self, i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = perm.len();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            if self.coxeter[i][i] != self.coxeter[t][t] {
                continue;
            }
            let ok = (0..i).all(|j| self.coxeter[i][j] == self.coxeter[t][perm[j]])
                && self.marks[i] == self.marks[t];
            if !ok {
                continue;
            }
            perm[i] = t;
            used[t] = true;
            self.auto_rec(i + 1, perm, used, out);
            used[t] = false;
        }
        perm[i] = usize::MAX;
    }

    /// Minimal generating set of the automorphism group (greedy).
    pub fn automorphism_generators(&self) -> Vec<Vec<usize>> {
        let all = self.diagram_automorphisms();
        let id: Vec<usize> = (0..=self.rank).collect();
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut group: BTreeSet<Vec<usize>> = BTreeSet::new();
        group.insert(id);
        for g in &all {
            if group.contains(g) {
                continue;
            }
            gens.push(g.clone());
            loop {
                let mut added = false;
                let cur: Vec<Vec<usize>> = group.iter().cloned().collect();
                for h in &cur {
                    for s in &gens {
                        let p: Vec<usize> = h.iter().map(|&x| s[x]).collect();
                        if group.insert(p) {
                            added = true;
                        }
                    }
                }
                if !added {
                    break;
                }
            }
        }
        gens
    }

    /// Linear action on coweights induced by a diagram automorphism.
    pub fn automorphism_coweight_map(&self, sigma: &[usize]) -> Vec<i64> {
        let n = self.rank;
        // L: column i = finite part of alpha_{sigma(i)} (root coordinates).
        let mut l = vec![vec![0i64; n]; n];
        for i in 1..=n {
            let col = self.finite_simple(sigma[i]);
            for r in 0..n {
                l[r][i - 1] = col[r];
            }
        }
        // Lambda = L^{-T}; since det L = ±1 the adjugate gives it.
        let d = int_det(&l);
        assert!(d == 1 || d == -1, "automorphism not unimodular");
        let adj = adjugate(&l);
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                // (L^{-1})^T [i][j] = L^{-1}[j][i]
                m[i * n + j] = adj[j][i] * d;
            }
        }
        m
    }

    /// Coordinates of a coweight in the epsilon basis (classical types).
    pub fn to_epsilon(&self, c: &[i64]) -> Option<Vec<Rat>> {
        let n = self.rank;
        let q = |x: i64| Rat::from_integer(x as i128);
        let half = Rat::new(1, 2);
        let mut l = vec![Rat::zero(); if self.family == Family::A { n + 1 } else { n }];
        match self.family {
            Family::A => {
                for i in (0..n).rev() {
                    l[i] = l[i + 1] + q(c[i]);
                }
            }
            Family::B => {
                l[n - 1] = q(c[n - 1]);
                for i in (0..n - 1).rev() {
                    l[i] = l[i + 1] + q(c[i]);
                }
            }
            Family::C => {
                l[n - 1] = q(c[n - 1]) * half;
                for i in (0..n - 1).rev() {
                    l[i] = l[i + 1] + q(c[i]);
                }
            }
            Family::D => {
                l[n - 1] = (q(c[n - 1]) - q(c[n - 2])) * half;
                l[n - 2] = (q(c[n - 1]) + q(c[n - 2])) * half;
                for i in (0..n - 2).rev() {
                    l[i] = l[i + 1] + q(c[i]);
                }
            }
            _ => return None,
        }
        Some(l)
    }

    /// Inverse of [`to_epsilon`]; fails if the vector is not an integral coweight.
    pub fn from_epsilon(&self, l: &[Rat]) -> Result<Vec<i64>> {
        let n = self.rank;
        let want = if self.family == Family::A { n + 1 } else { n };
        if l.len() != want {
            return Err(Error::Parse(format!(
                "expected {} epsilon coordinates, got {}",
                want,
                l.len()
            )));
        }
        let mut c: Vec<Rat> = vec![Rat::zero(); n];
        match self.family {
            Family::A => {
                for i in 0..n {
                    c[i] = l[i] - l[i + 1];
                }
            }
            Family::B | Family::C => {
                for i in 0..n - 1 {
                    c[i] = l[i] - l[i + 1];
                }
                c[n - 1] = if self.family == Family::B {
                    l[n - 1]
                } else {
                    l[n - 1] * Rat::from_integer(2)
                };
            }
            Family::D => {
                for i in 0..n - 2 {
                    c[i] = l[i] - l[i + 1];
                }
                c[n - 2] = l[n - 2] - l[n - 1];
                c[n - 1] = l[n - 2] + l[n - 1];
            }
            _ => return Err(Error::Parse("epsilon basis only for classical types".into())),
        }
        let out: Vec<i64> = c
            .iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(*x.numer() as i64)
                } else {
                    Err(Error::Parse(format!("not an integral coweight: {:?}", l)))
                }
            })
            .collect::<Result<_>>()?;
        Ok(out)
    }

    /// Human-readable coweight: epsilon coordinates for classical types,
    /// fundamental coordinates otherwise.
    pub fn fmt_coweight(&self, lam: &[i64]) -> String {
        match self.to_epsilon(lam) {
            Some(e) => {
                let e = if self.family == Family::A {
                    normalize_a(&e)
                } else {
                    e
                };
                format!(
                    "({})",
                    e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                )
            }
            None => format!(
                "[{}]",
                lam.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DatumJson {
            cartan: &self.cartan,
            family: self.family.to_string(),
            marks: &self.marks,
            rank: self.rank,
            special: &self.special,
        })
        .unwrap()
    }
}

/// Type-A epsilon vectors are defined modulo `(1,...,1)`; shift so the
/// minimum entry is 0.
pub fn normalize_a(e: &[Rat]) -> Vec<Rat> {
    let m = e.iter().min().copied().unwrap_or_else(Rat::zero);
    e.iter().map(|x| x - m).collect()
}

pub(crate) fn mat_vec(m: &[i64], v: &[i64], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|k| m[i * n + k] * v[k]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        let cases = [
            (Family::A, 4, 10),
            (Family::B, 3, 9),
            (Family::C, 4, 16),
            (Family::D, 5, 20),
            (Family::E6, 6, 36),
            (Family::E7, 7, 63),
            (Family::F4, 4, 24),
            (Family::G2, 2, 6),
        ];
        for (f, n, k) in cases {
            let d = RootDatum::new(f, n).unwrap();
            assert_eq!(d.pos_roots.len(), k, "{} {}", f, n);
        }
    }

    #[test]
    fn weyl_orders() {
        let cases = [
            (Family::A, 3, 24),
            (Family::B, 3, 48),
            (Family::D, 4, 192),
            (Family::E6, 6, 51840),
            (Family::E7, 7, 2903040),
            (Family::F4, 4, 1152),
            (Family::G2, 2, 12),
        ];
        for (f, n, k) in cases {
            assert_eq!(RootDatum::new(f, n).unwrap().weyl_order(), k);
        }
    }

    #[test]
    fn delta_is_null() {
        for f in Family::ALL {
            let n = f.fixed_rank().unwrap_or(5);
            let d = RootDatum::new(f, n).unwrap();
            for j in 0..=n {
                let s: i64 = (0..=n).map(|i| d.marks[i] * d.gcm[j][i]).sum();
                assert_eq!(s, 0, "{} row {}", f, j);
            }
        }
    }

    #[test]
    fn g2_marks_and_specials() {
        let d = RootDatum::new(Family::G2, 2).unwrap();
        assert_eq!(d.marks, vec![1, 3, 2]);
        assert_eq!(d.special, vec![0]);
        let b = RootDatum::new(Family::B, 3).unwrap();
        assert_eq!(b.special, vec![0, 1]);
        let a = RootDatum::new(Family::A, 3).unwrap();
        assert_eq!(a.special, vec![0, 1, 2, 3]);
        assert!(a.marks.iter().all(|&m| m == 1));
    }

    #[test]
    fn minuscule() {
        let d = RootDatum::new(Family::D, 5).unwrap();
        let m: Vec<usize> = d
            .minuscule_coweights()
            .iter()
            .map(|v| v.iter().position(|&x| x == 1).unwrap() + 1)
            .collect();
        assert_eq!(m, vec![1, 4, 5]);
        let c = RootDatum::new(Family::C, 4).unwrap();
        assert_eq!(c.minuscule_coweights(), vec![vec![0, 0, 0, 1]]);
        let e7 = RootDatum::new(Family::E7, 7).unwrap();
        assert_eq!(e7.minuscule_coweights(), vec![e7.fundamental_coweight(7)]);
        assert!(RootDatum::new(Family::F4, 4).unwrap().minuscule_coweights().is_empty());
    }

    #[test]
    fn automorphism_group_orders() {
        let order = |f, n| RootDatum::new(f, n).unwrap().diagram_automorphisms().len();
        assert_eq!(order(Family::A, 1), 2);
        assert_eq!(order(Family::A, 4), 10);
        assert_eq!(order(Family::F4, 4), 1);
        assert_eq!(order(Family::G2, 2), 1);
        assert_eq!(order(Family::D, 4), 24);
        assert_eq!(order(Family::D, 5), 8);
        assert_eq!(order(Family::E6, 6), 6);
        assert_eq!(order(Family::E7, 7), 2);
        assert_eq!(order(Family::B, 4), 2);
        assert_eq!(order(Family::C, 3), 2);
    }

    #[test]
    fn epsilon_round_trip() {
        for (f, n) in [(Family::A, 3), (Family::B, 4), (Family::C, 4), (Family::D, 5)] {
            let d = RootDatum::new(f, n).unwrap();
            for i in 1..=n {
                let w = d.fundamental_coweight(i);
                let e = d.to_epsilon(&w).unwrap();
                assert_eq!(d.from_epsilon(&e).unwrap(), w);
            }
        }
        let c = RootDatum::new(Family::C, 3).unwrap();
        assert_eq!(c.fmt_coweight(&[0, 0, 1]), "(1/2,1/2,1/2)");
    }

    #[test]
    fn affine_roots_a1() {
        let d = RootDatum::new(Family::A, 1).unwrap();
        assert_eq!(d.positive_affine_roots_up_to(0).len(), 1);
        let r1 = d.positive_affine_roots_up_to(1);
        assert_eq!(r1.len(), 3);
        let neg = AffineRoot { finite_part: vec![-1], level: 0 };
        assert!(!neg.is_positive());
        let pos = AffineRoot { finite_part: vec![-1], level: 1 };
        assert!(pos.is_positive());
        assert_eq!(pos.expansion(&d.theta), vec![1, 0]);
    }
}
