//! Local charts of orthogonal, symplectic and linear local models around the
//! worst point, and their reduction to a normal form.
//!
//! A chart is generated from a lattice chain: lattice bases, the transition
//! maps between them, Gram matrices, and subspaces written as matrices with
//! an identity block. Incidence `phi * F_i = F_j * N` is imposed with `N` read
//! off the identity block of `F_j`, isotropy as `F^T G F = 0`. Nothing is
//! simplified by hand.
//!
//! Coefficients live in `Z[1/2]` (all cases assume `p != 2`); the uniformizer
//! `pi` is a formal variable, and `varpi` with `varpi^2 = pi` where needed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat};

pub type P = MultiPoly<Rat>;
type Mat = Vec<Vec<P>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChartCase {
    /// `GL_n`, `mu_r`, lattices `{0, kappa}`.
    Gl,
    /// `GSp_2n`, `mu_n`, `{0, 1}`.
    Gsp,
    /// split `GO_2n`, `mu_n`, `{1}` with the weak spin condition.
    GoSplit,
    /// split `SO_2n`, `mu_1`, `{0, n}`.
    SoEvenSplitR1,
    /// split `SO_2n+1`, `mu_1`, `{0, n}`.
    SoOddSplitR1,
    /// nonsplit `SO_2n`, `mu_1`, `{0, n}`.
    SoEvenNonsplitR1,
    /// nonsplit `SO_2n`, `mu_n`, `{0}`; over `O[varpi]`.
    ExoticSo,
}

impl ChartCase {
    pub const ALL: [ChartCase; 7] = [
        ChartCase::Gl,
        ChartCase::Gsp,
        ChartCase::GoSplit,
        ChartCase::SoEvenSplitR1,
        ChartCase::SoOddSplitR1,
        ChartCase::SoEvenNonsplitR1,
        ChartCase::ExoticSo,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ChartCase::Gl => "gl",
            ChartCase::Gsp => "gsp",
            ChartCase::GoSplit => "go-split",
            ChartCase::SoEvenSplitR1 => "so-even-split-r1",
            ChartCase::SoOddSplitR1 => "so-odd-split-r1",
            ChartCase::SoEvenNonsplitR1 => "so-even-nonsplit-r1",
            ChartCase::ExoticSo => "exotic-so",
        }
    }
}

impl fmt::Display for ChartCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ChartCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ChartCase::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown chart case {:?}", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChartParams {
    pub n: usize,
    /// Only used by `gl`.
    pub r: usize,
    /// Only used by `gl`.
    pub kappa: usize,
}

impl ChartParams {
    pub fn n(n: usize) -> Self {
        ChartParams { n, r: 0, kappa: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub poly: P,
}

#[derive(Clone, Debug)]
pub struct ChartPresentation {
    pub case: ChartCase,
    pub params: ChartParams,
    pub vars: Vec<String>,
    pub pi: u16,
    pub varpi: Option<u16>,
    pub equations: Vec<Equation>,
    /// Elimination order; variables not listed are eliminated afterwards in
    /// index order when possible.
    pub order: Vec<u16>,
}

impl ChartPresentation {
    pub fn name(&self, v: u16) -> String {
        self.vars[v as usize].clone()
    }

    pub fn fmt(&self, p: &P) -> String {
        p.fmt_with(&|v| self.name(v))
    }

    pub fn var_index(&self, name: &str) -> Option<u16> {
        self.vars.iter().position(|s| s == name).map(|i| i as u16)
    }

    /// Number of indeterminates other than the base symbols.
    pub fn num_vars(&self) -> usize {
        self.vars.len() - 1 - self.varpi.is_some() as usize
    }
}

fn c(x: i128) -> Rat {
    Rat::from_integer(x)
}

fn constant(x: i128) -> P {
    P::constant(c(x))
}

/// Units of `Z[1/2]`.
fn is_unit(x: &Rat) -> bool {
    let pow2 = |v: i128| v != 0 && (v.abs() & (v.abs() - 1)) == 0;
    pow2(*x.numer()) && pow2(*x.denom())
}

struct Builder {
    vars: Vec<String>,
    eqs: Vec<Equation>,
    pi: P,
}

impl Builder {
    fn new() -> Self {
        Builder {
            vars: vec!["pi".into()],
            eqs: Vec::new(),
            pi: P::var(0),
        }
    }

    fn var(&mut self, name: String) -> P {
        let i = match self.vars.iter().position(|s| *s == name) {
            Some(i) => i,
            None => {
                self.vars.push(name);
                self.vars.len() - 1
            }
        };
        P::var(i as u16)
    }

    fn idx(&self, name: &str) -> u16 {
        self.vars.iter().position(|s| s == name).expect("variable") as u16
    }

    fn pi_pow(&self, e: u32) -> P {
        self.pi.pow(e)
    }

    fn push(&mut self, label: String, p: P) {
        if !p.is_zero() {
            self.eqs.push(Equation { label, poly: p });
        }
    }

    /// `phi * src = dst * N`, `N` read off the pivot rows of `dst`.
    fn incidence(&mut self, label: &str, phi: &[P], src: &Mat, dst: &Mat, pivots: &[(usize, usize)]) {
        let rows = src.len();
        let cols = src[0].len();
        let img: Mat = (0..rows)
            .map(|k| src[k].iter().map(|x| &phi[k] * x).collect())
            .collect();
        let mut n_mat = vec![vec![P::zero(); cols]; dst[0].len()];
        for &(r, cc) in pivots {
            n_mat[cc] = img[r].clone();
        }
        let pivot_rows: BTreeSet<usize> = pivots.iter().map(|p| p.0).collect();
        for k in 0..rows {
            if pivot_rows.contains(&k) {
                continue;
            }
            for j in 0..cols {
                let mut e = img[k][j].clone();
                for (cc, row) in n_mat.iter().enumerate() {
                    if !dst[k][cc].is_zero() {
                        e = &e - &(&dst[k][cc] * &row[j]);
                    }
                }
                self.push(format!("{}[{},{}]", label, k + 1, j + 1), e);
            }
        }
    }

    /// Entries of `a^T G b`; `upper` keeps `i <= j` (or `i < j` if `strict`).
    fn pairing(&mut self, label: &str, a: &Mat, g: &Mat, b: &Mat, upper: Option<bool>) {
        let ca = a[0].len();
        let cb = b[0].len();
        for i in 0..ca {
            for j in 0..cb {
                match upper {
                    Some(false) if j < i => continue,
                    Some(true) if j <= i => continue,
                    _ => {}
                }
                let mut e = P::zero();
                for k in 0..a.len() {
                    if a[k][i].is_zero() {
                        continue;
                    }
                    for l in 0..b.len() {
                        if g[k][l].is_zero() || b[l][j].is_zero() {
                            continue;
                        }
                        e = &e + &(&(&a[k][i] * &g[k][l]) * &b[l][j]);
                    }
                }
                self.push(format!("{}[{},{}]", label, i + 1, j + 1), e);
            }
        }
    }

    fn finish(self, case: ChartCase, params: ChartParams, order: &[&str], varpi: Option<u16>) -> ChartPresentation {
        let order = order.iter().map(|s| self.idx(s)).collect();
        ChartPresentation {
            case,
            params,
            vars: self.vars,
            pi: 0,
            varpi,
            equations: self.eqs,
            order,
        }
    }
}

/// Matrix with `e_col` in each pivot row and `entry(row, col)` elsewhere.
fn chart_matrix(rows: usize, cols: usize, pivots: &[(usize, usize)], mut entry: impl FnMut(usize, usize) -> P) -> Mat {
    let mut m = vec![vec![P::zero(); cols]; rows];
    let piv: BTreeMap<usize, usize> = pivots.iter().copied().collect();
    for (r, row) in m.iter_mut().enumerate() {
        match piv.get(&r) {
            Some(&cc) => row[cc] = P::one(),
            None => {
                for (cc, x) in row.iter_mut().enumerate() {
                    *x = entry(r, cc);
                }
            }
        }
    }
    m
}

/// Diagonal of the inclusion `Lambda_i -> Lambda_j` (`i < j`), where
/// `Lambda_j = <pi^-1 e_1, .., pi^-1 e_j, e_{j+1}, ..>`.
fn phi_incl(b: &Builder, i: usize, j: usize, d: usize) -> Vec<P> {
    (0..d)
        .map(|k| if i <= k && k < j { b.pi_pow(1) } else { P::one() })
        .collect()
}

/// Diagonal of `pi: Lambda_j -> Lambda_i` (`i < j`).
fn phi_pi(b: &Builder, j: usize, i: usize, d: usize) -> Vec<P> {
    (0..d)
        .map(|k| if i <= k && k < j { P::one() } else { b.pi_pow(1) })
        .collect()
}

/// Gram matrix of `pi^scale <x, y>` for `x` in `Lambda_i`, `y` in `Lambda_j`,
/// given `<e_k, e_l> = coeff * pi^power`.
fn gram(b: &Builder, form: &dyn Fn(usize, usize) -> (i128, i32), i: usize, j: usize, d: usize, scale: i32) -> Mat {
    let sc = |idx: usize, k: usize| if k < idx { 1 } else { 0 };
    (0..d)
        .map(|k| {
            (0..d)
                .map(|l| {
                    let (co, p) = form(k, l);
                    if co == 0 {
                        return P::zero();
                    }
                    let e = scale + p - sc(i, k) - sc(j, l);
                    assert!(e >= 0, "pairing not integral");
                    &constant(co) * &b.pi_pow(e as u32)
                })
                .collect()
        })
        .collect()
}

fn witt(d: usize) -> impl Fn(usize, usize) -> (i128, i32) {
    move |k, l| if k + l + 1 == d { (1, 0) } else { (0, 0) }
}

/// Determinant by Laplace expansion along the first column.
fn det(m: &Mat) -> P {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = P::zero();
    for r in 0..n {
        if m[r][0].is_zero() {
            continue;
        }
        let minor: Mat = (0..n)
            .filter(|&k| k != r)
            .map(|k| m[k][1..].to_vec())
            .collect();
        let t = &m[r][0] * &det(&minor);
        out = if r % 2 == 0 { &out + &t } else { &out - &t };
    }
    out
}

pub fn build_chart(case: ChartCase, params: ChartParams) -> Result<ChartPresentation> {
    let n = params.n;
    let bad = |s: &str| Err(Error::BadParams(s.into()));
    match case {
        ChartCase::Gl => {
            let (r, k) = (params.r, params.kappa);
            if n < 2 || r < 1 || r >= n {
                return bad("gl needs n >= 2 and 1 <= r < n");
            }
            if k < 1 || k > r || k + r > n {
                return bad("gl needs 1 <= kappa <= r and kappa + r <= n");
            }
            build_gl(params, true)
        }
        ChartCase::Gsp => {
            if n < 1 {
                return bad("gsp needs n >= 1");
            }
            Ok(build_gsp(params))
        }
        ChartCase::GoSplit => {
            if n < 2 {
                return bad("go-split needs n >= 2");
            }
            Ok(build_go(params))
        }
        ChartCase::SoEvenSplitR1 => {
            if n < 2 {
                return bad("so-even-split-r1 needs n >= 2");
            }
            Ok(build_so_even(params))
        }
        ChartCase::SoOddSplitR1 => {
            if n < 1 {
                return bad("so-odd-split-r1 needs n >= 1");
            }
            Ok(build_so_odd(params))
        }
        ChartCase::SoEvenNonsplitR1 => {
            if n < 2 {
                return bad("so-even-nonsplit-r1 needs n >= 2");
            }
            Ok(build_so_nonsplit(params))
        }
        ChartCase::ExoticSo => {
            if n < 2 {
                return bad("exotic-so needs n >= 2");
            }
            Ok(build_exotic(params))
        }
    }
}

/// `F_0` and `F_kappa` for `GL_n`; `both` adds the incidence `kappa -> 0`.
pub fn build_gl(params: ChartParams, both: bool) -> Result<ChartPresentation> {
    let (n, r, k) = (params.n, params.r, params.kappa);
    let mut b = Builder::new();
    let p0: Vec<(usize, usize)> = (0..r).map(|i| (i, i)).collect();
    let f0 = chart_matrix(n, r, &p0, |row, col| b.var(format!("a0_{}_{}", row - r + 1, col + 1)));
    let pk: Vec<(usize, usize)> = (0..r).map(|i| (k + i, i)).collect();
    let fk = chart_matrix(n, r, &pk, |row, col| {
        let i = if row < k { n - r - k + row + 1 } else { row - k - r + 1 };
        b.var(format!("a{}_{}_{}", k, i, col + 1))
    });
    let phi = phi_incl(&b, 0, k, n);
    b.incidence(&format!("inc0->{}", k), &phi, &f0, &fk, &pk);
    if both {
        let phi = phi_pi(&b, k, 0, n);
        b.incidence(&format!("inc{}->0", k), &phi, &fk, &f0, &p0);
    }
    Ok(b.finish(ChartCase::Gl, params, &[], None))
}

fn build_gsp(params: ChartParams) -> ChartPresentation {
    let n = params.n;
    let d = 2 * n;
    let mut b = Builder::new();
    let p0: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let f0 = chart_matrix(d, n, &p0, |row, col| b.var(format!("c_{}_{}", row - n + 1, col + 1)));
    let p1: Vec<(usize, usize)> = (0..n).map(|i| (i + 1, i)).collect();
    let f1 = chart_matrix(d, n, &p1, |row, col| {
        let i = if row == 0 { n } else { row - n };
        b.var(format!("a_{}_{}", i, col + 1))
    });
    // <e_i, e_{2n+1-i}> = 1 for i <= n, -1 for i > n
    let form = move |k: usize, l: usize| {
        if k + l + 1 == d {
            (if k < n { 1 } else { -1 }, 0)
        } else {
            (0, 0)
        }
    };
    let g0 = gram(&b, &form, 0, 0, d, 0);
    b.pairing("iso0", &f0, &g0, &f0, Some(true));
    let phi = phi_incl(&b, 0, 1, d);
    b.incidence("inc0->1", &phi, &f0, &f1, &p1);
    let phi = phi_pi(&b, 1, 0, d);
    b.incidence("inc1->0", &phi, &f1, &f0, &p0);
    let mut order: Vec<String> = Vec::new();
    for i in (1..=n).rev().take(1).chain(1..n) {
        for j in 1..n {
            order.push(format!("a_{}_{}", i, j));
        }
    }
    for i in 2..=n {
        order.push(format!("c_{}_1", i));
    }
    let order: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
    b.finish(ChartCase::Gsp, params, &order, None)
}

fn build_go(params: ChartParams) -> ChartPresentation {
    let n = params.n;
    let d = 2 * n;
    let mut b = Builder::new();
    let p1: Vec<(usize, usize)> = (0..n).map(|i| (i + 1, i)).collect();
    let f1 = chart_matrix(d, n, &p1, |row, col| {
        let i = if row == 0 { n } else { row - n };
        b.var(format!("a_{}_{}", i, col + 1))
    });
    let mut p2: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    p2.push((d - 1, 0));
    let f2 = chart_matrix(d, n, &p2, |row, col| b.var(format!("b_{}_{}", row + 2 - n, col + 1)));
    // Lambda_1 and Lambda_{2n-1} are dual under pi<,>
    let g = gram(&b, &witt(d), d - 1, 1, d, 1);
    b.pairing("orth", &f2, &g, &f1, None);
    let phi = phi_pi(&b, d - 1, 1, d);
    b.incidence(&format!("inc{}->1", d - 1), &phi, &f2, &f1, &p1);
    let phi = phi_incl(&b, 1, d - 1, d);
    b.incidence(&format!("inc1->{}", d - 1), &phi, &f1, &f2, &p2);
    // weak spin: the minors on rows {1..n} and {2..n-1, n+1, 2n}
    let rows_a: Vec<usize> = (0..n).collect();
    let mut rows_b: Vec<usize> = (1..n - 1).collect();
    rows_b.push(n);
    rows_b.push(d - 1);
    for (name, rows) in [("spin1", rows_a), ("spin2", rows_b)] {
        let m: Mat = rows.iter().map(|&r| f1[r].clone()).collect();
        b.push(name.into(), det(&m));
    }
    let mut order: Vec<String> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            order.push(format!("b_{}_{}", i, j));
        }
    }
    order.push(format!("a_{}_{}", n, n));
    order.push(format!("a_{}_{}", n - 1, n - 1));
    for j in 1..n.saturating_sub(1) {
        order.push(format!("a_{}_{}", n, j));
        order.push(format!("a_{}_{}", n - 1, j));
    }
    let order: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
    b.finish(ChartCase::GoSplit, params, &order, None)
}

fn build_so_even(params: ChartParams) -> ChartPresentation {
    let n = params.n;
    let d = 2 * n;
    let mut b = Builder::new();
    let p0 = [(0usize, 0usize)];
    let f0 = chart_matrix(d, 1, &p0, |row, _| b.var(format!("a{}", row)));
    let pn = [(n, 0usize)];
    let fnn = chart_matrix(d, 1, &pn, |row, _| {
        let i = if row < n { n + row } else { row - n };
        b.var(format!("b{}", i))
    });
    let g0 = gram(&b, &witt(d), 0, 0, d, 0);
    let gn = gram(&b, &witt(d), n, n, d, 1);
    b.pairing("iso0", &f0, &g0, &f0, Some(false));
    b.pairing(&format!("iso{}", n), &fnn, &gn, &fnn, Some(false));
    let phi = phi_incl(&b, 0, n, d);
    b.incidence(&format!("inc0->{}", n), &phi, &f0, &fnn, &pn);
    let phi = phi_pi(&b, n, 0, d);
    b.incidence(&format!("inc{}->0", n), &phi, &fnn, &f0, &p0);
    // incidences before isotropy, as the elimination reads them in order
    b.eqs.rotate_left(2);
    let mut order: Vec<String> = (n + 1..d).map(|i| format!("a{}", i)).collect();
    order.extend((n + 1..d).map(|i| format!("b{}", i)));
    order.push(format!("b{}", n - 1));
    let order: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
    b.finish(ChartCase::SoEvenSplitR1, params, &order, None)
}

fn build_so_odd(params: ChartParams) -> ChartPresentation {
    let n = params.n;
    let d = 2 * n + 1;
    let mut b = Builder::new();
    let p0 = [(0usize, 0usize)];
    let f0 = chart_matrix(d, 1, &p0, |row, _| b.var(format!("a{}", row)));
    let pn = [(n, 0usize)];
    let fnn = chart_matrix(d, 1, &pn, |row, _| {
        let i = if row < n { row + 1 } else { row };
        b.var(format!("b{}", i))
    });
    let g0 = gram(&b, &witt(d), 0, 0, d, 0);
    let gn = gram(&b, &witt(d), n, n, d, 1);
    b.pairing("iso0", &f0, &g0, &f0, Some(false));
    b.pairing(&format!("iso{}", n), &fnn, &gn, &fnn, Some(false));
    let phi = phi_incl(&b, 0, n, d);
    b.incidence(&format!("inc0->{}", n), &phi, &f0, &fnn, &pn);
    let phi = phi_pi(&b, n, 0, d);
    b.incidence(&format!("inc{}->0", n), &phi, &fnn, &f0, &p0);
    b.eqs.rotate_left(2);
    let mut order: Vec<String> = (n + 1..=2 * n).map(|i| format!("a{}", i)).collect();
    order.extend((2..=n).map(|i| format!("b{}", i)));
    order.push(format!("b{}", 2 * n));
    let order: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
    b.finish(ChartCase::SoOddSplitR1, params, &order, None)
}

/// `(e_i, e_{2n+1-i}) = 1` off the middle, `(e_n, e_n) = sign * pi`,
/// `(e_{n+1}, e_{n+1}) = 1`.
fn nonsplit_form(n: usize, sign: i128) -> impl Fn(usize, usize) -> (i128, i32) {
    move |k, l| {
        let (k1, l1) = (k + 1, l + 1);
        if k1 == n && l1 == n {
            (sign, 1)
        } else if (k1 == n + 1 && l1 == n + 1) || (k1 != n && k1 != n + 1 && k1 + l1 == 2 * n + 1) {
            (1, 0)
        } else {
            (0, 0)
        }
    }
}

fn build_so_nonsplit(params: ChartParams) -> ChartPresentation {
    let n = params.n;
    let d = 2 * n;
    let mut b = Builder::new();
    let p0 = [(n - 1, 0usize)];
    let f0 = chart_matrix(d, 1, &p0, |row, _| b.var(format!("x{}", row + 1)));
    let pn = [(n, 0usize)];
    let fnn = chart_matrix(d, 1, &pn, |row, _| b.var(format!("y{}", row + 1)));
    let form = nonsplit_form(n, 1);
    let g0 = gram(&b, &form, 0, 0, d, 0);
    let gn = gram(&b, &form, n, n, d, 1);
    let phi = phi_incl(&b, 0, n, d);
    b.incidence(&format!("inc0->{}", n), &phi, &f0, &fnn, &pn);
    let phi = phi_pi(&b, n, 0, d);
    b.incidence(&format!("inc{}->0", n), &phi, &fnn, &f0, &p0);
    b.pairing("iso0", &f0, &g0, &f0, Some(false));
    b.pairing(&format!("iso{}", n), &fnn, &gn, &fnn, Some(false));
    let mut order: Vec<String> = (n + 2..=d).map(|i| format!("x{}", i)).collect();
    order.extend((1..n).map(|i| format!("y{}", i)));
    order.push(format!("y{}", n));
    let order: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
    b.finish(ChartCase::SoEvenNonsplitR1, params, &order, None)
}

fn build_exotic(params: ChartParams) -> ChartPresentation {
    let n = params.n;
    let d = 2 * n;
    let mut b = Builder::new();
    let p0: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let f0 = chart_matrix(d, n, &p0, |row, col| b.var(format!("a_{}_{}", row - n + 1, col + 1)));
    // (e_n, e_n) = -pi, so that the middle equation reads a_{1n}^2 = pi
    let g0 = gram(&b, &nonsplit_form(n, -1), 0, 0, d, 0);
    b.pairing("iso0", &f0, &g0, &f0, Some(false));
    b.vars.push("varpi".into());
    let varpi = Some((b.vars.len() - 1) as u16);
    b.finish(ChartCase::ExoticSo, params, &[], varpi)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Verdict {
    Smooth { component_count: usize },
    SemiStable { m: usize },
    NotNormalCrossings { witness: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Smooth { component_count } => write!(f, "Smooth components={}", component_count),
            Verdict::SemiStable { m } => write!(f, "SemiStable m={}", m),
            Verdict::NotNormalCrossings { witness } => write!(f, "NotNormalCrossings witness={}", witness),
        }
    }
}

/// An equation added by flatness: `X*f` and `Y*f` both lie in the ideal.
#[derive(Clone, Debug, Serialize)]
pub struct FlatStep {
    pub label: String,
    pub equation: String,
    /// One for each factor of the relation.
    pub witnesses: [FlatWitness; 2],
}

/// `multiplier * f = scalar * equation - quotient * relation`, with the
/// equation taken after the substitutions made so far.
#[derive(Clone, Debug, Serialize)]
pub struct FlatWitness {
    pub multiplier: String,
    pub equation: String,
    pub scalar: String,
    pub quotient: String,
}

/// An original equation, and `q` with `sigma(equation) = q * relation`.
#[derive(Clone, Debug, Serialize)]
pub struct CertLine {
    pub label: String,
    pub equation: String,
    pub quotient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalForm {
    pub case: ChartCase,
    pub params: ChartParams,
    pub verdict: Verdict,
    pub retained_vars: Vec<String>,
    /// `h - pi`, as derived.
    pub relation: String,
    pub relation_vars: Vec<String>,
    pub note: Option<String>,
    pub eliminated: BTreeMap<String, String>,
    pub flat_steps: Vec<FlatStep>,
    pub certificate: Vec<CertLine>,
    /// Per component of a `Smooth` verdict: the value of the split variable.
    pub components: Vec<String>,
    #[serde(skip)]
    pub substitution: BTreeMap<u16, P>,
    #[serde(skip)]
    pub relation_poly: P,
}

impl NormalForm {
    pub fn m(&self) -> Option<usize> {
        match self.verdict {
            Verdict::SemiStable { m } => Some(m),
            _ => None,
        }
    }
}

fn fail(label: &str, residual: String) -> Error {
    Error::EliminationFailed {
        equation: label.to_string(),
        residual,
    }
}

/// Divide by the variable `x` if it divides every term.
fn div_var(p: &P, x: u16) -> Option<P> {
    let parts = p.coefficients_in(x);
    if parts.is_empty() || !parts[0].is_zero() {
        return None;
    }
    let mut out = P::zero();
    for (d, q) in parts.iter().enumerate().skip(1) {
        let xp = if d == 1 { P::one() } else { P::var(x).pow(d as u32 - 1) };
        out = &out + &(q * &xp);
    }
    Some(out)
}

/// Make the leading coefficient 1.
fn monic(p: &P) -> (P, Rat) {
    let lc = p.leading_coeff().unwrap_or_else(Rat::one);
    (p.scale(&(Rat::one() / lc)), lc)
}

/// Strip the rational content and make the leading coefficient positive.
fn primitive(p: &P) -> P {
    let mut num = 0i128;
    let mut den = 1i128;
    for (_, x) in p.terms() {
        num = num_integer::gcd(num, *x.numer());
        den = num_integer::lcm(den, *x.denom());
    }
    if num == 0 {
        return p.clone();
    }
    let mut s = Rat::new(den, num);
    if p.leading_coeff().map(|x| x.is_negative()).unwrap_or(false) {
        s = -s;
    }
    p.scale(&s)
}

struct Work<'a> {
    chart: &'a ChartPresentation,
    eqs: Vec<Equation>,
    subs: Vec<(u16, P)>,
    flat: Vec<FlatStep>,
}

impl<'a> Work<'a> {
    fn base(&self, v: u16) -> bool {
        v == self.chart.pi || Some(v) == self.chart.varpi
    }

    fn pick(&self) -> Option<(u16, P)> {
        let done: BTreeSet<u16> = self.subs.iter().map(|s| s.0).collect();
        let try_var = |v: u16, e: &P| -> Option<P> {
            let (co, rest) = e.linear_in(v)?;
            if !is_unit(&co) {
                return None;
            }
            Some(rest.scale(&(-Rat::one() / co)))
        };
        for &v in &self.chart.order {
            if done.contains(&v) {
                continue;
            }
            for e in &self.eqs {
                if let Some(x) = try_var(v, &e.poly) {
                    return Some((v, x));
                }
            }
        }
        for e in &self.eqs {
            for v in e.poly.vars() {
                if self.base(v) || done.contains(&v) {
                    continue;
                }
                if let Some(x) = try_var(v, &e.poly) {
                    return Some((v, x));
                }
            }
        }
        None
    }

    fn eliminate_all(&mut self) {
        while let Some((v, x)) = self.pick() {
            for e in self.eqs.iter_mut() {
                e.poly = e.poly.substitute_var(v, &x);
            }
            self.eqs.retain(|e| !e.poly.is_zero());
            for s in self.subs.iter_mut() {
                s.1 = s.1.substitute_var(v, &x);
            }
            self.subs.push((v, x));
        }
    }

    /// The residual linear in `pi` with a unit coefficient and fewest terms,
    /// normalized to `h - pi`.
    fn relation(&self) -> Option<P> {
        let pi = self.chart.pi;
        self.eqs
            .iter()
            .filter_map(|e| {
                let (u, h) = e.poly.linear_in(pi)?;
                if !is_unit(&u) || h.is_zero() {
                    return None;
                }
                Some(e.poly.scale(&(-Rat::one() / u)))
            })
            .min_by_key(|p| p.len())
    }

    fn reduce(&self, p: &P, rel: &P) -> (P, P) {
        p.div_rem_linear_in(rel, self.chart.pi)
            .expect("relation has unit pi coefficient")
    }
}

/// Reduce a chart to its normal form, certifying every step.
pub fn eliminate(chart: &ChartPresentation) -> Result<NormalForm> {
    if chart.case == ChartCase::Gl && chart.params.kappa >= 2 {
        return Err(Error::UnsupportedCase(
            "kappa >= 2 leaves the matrix relations AB = BA = pi".into(),
        ));
    }
    let mut w = Work {
        chart,
        eqs: chart.equations.clone(),
        subs: Vec::new(),
        flat: Vec::new(),
    };
    let pi = chart.pi;
    let rel = loop {
        w.eliminate_all();
        let rel = w
            .relation()
            .ok_or_else(|| fail("relation", "no residual linear in pi".into()))?;
        let bad: Vec<(String, P, P, P)> = w
            .eqs
            .iter()
            .map(|e| {
                let (q, r) = w.reduce(&e.poly, &rel);
                (e.label.clone(), e.poly.clone(), q, r)
            })
            .filter(|b| !b.3.is_zero())
            .collect();
        if bad.is_empty() {
            break rel;
        }
        // flat closure: X f and Y f vanish while X Y = pi
        let h = &rel + &P::var(pi);
        let (x, y) = match h.terms().next() {
            Some((m, _)) if h.len() == 1 && m.0.len() == 2 && m.0.iter().all(|t| t.1 == 1) => {
                (m.0[0].0, m.0[1].0)
            }
            _ => return Err(fail(&bad[0].0, chart.fmt(&bad[0].3))),
        };
        let mut found: Vec<(P, [Option<FlatWitness>; 2])> = Vec::new();
        for (label, eq, q, r) in &bad {
            for (slot, v) in [(0usize, x), (1, y)] {
                let Some(f) = div_var(r, v) else { continue };
                let (f, lc) = monic(&f);
                let u = Rat::one() / lc;
                // v * f = u * eq - u * q * rel
                let lhs = &P::var(v) * &f;
                let rhs = &eq.scale(&u) - &(&q.scale(&u) * &rel);
                if lhs != rhs {
                    return Err(fail(label, chart.fmt(&(&lhs - &rhs))));
                }
                let wit = FlatWitness {
                    multiplier: chart.name(v),
                    equation: label.clone(),
                    scalar: u.to_string(),
                    quotient: chart.fmt(&q.scale(&u)),
                };
                let idx = match found.iter().position(|e| e.0 == f) {
                    Some(i) => i,
                    None => {
                        found.push((f, [None, None]));
                        found.len() - 1
                    }
                };
                if found[idx].1[slot].is_none() {
                    found[idx].1[slot] = Some(wit);
                }
            }
        }
        let mut added = false;
        for (f, [wx, wy]) in found {
            if let (Some(wx), Some(wy)) = (wx, wy) {
                let label = format!("flat{}", w.flat.len() + 1);
                w.flat.push(FlatStep {
                    label: label.clone(),
                    equation: chart.fmt(&f),
                    witnesses: [wx, wy],
                });
                w.eqs.insert(0, Equation { label, poly: f });
                added = true;
            }
        }
        if !added {
            return Err(fail(&bad[0].0, chart.fmt(&bad[0].3)));
        }
    };

    let substitution: BTreeMap<u16, P> = w.subs.iter().cloned().collect();
    let eliminated_vars: BTreeSet<u16> = substitution.keys().copied().collect();
    let retained: Vec<u16> = (0..chart.vars.len() as u16)
        .filter(|&v| !w.base(v) && !eliminated_vars.contains(&v))
        .collect();

    // certificate: every original equation is a multiple of the relation
    let mut certificate = Vec::new();
    for e in &chart.equations {
        let s = e.poly.substitute(&substitution);
        let (q, r) = w.reduce(&s, &rel);
        if !r.is_zero() {
            return Err(fail(&e.label, chart.fmt(&r)));
        }
        certificate.push(CertLine {
            label: e.label.clone(),
            equation: chart.fmt(&e.poly),
            quotient: chart.fmt(&q),
        });
    }

    let h = &rel + &P::var(pi);
    let mut note = None;
    let mut components = Vec::new();
    let mut relation_vars = Vec::new();
    let xvar = h
        .vars()
        .into_iter()
        .find(|&v| div_var(&h, v).is_some())
        .ok_or_else(|| fail("relation", chart.fmt(&rel)))?;
    let g = div_var(&h, xvar).unwrap();
    relation_vars.push(chart.name(xvar));
    let verdict = if let Some(yvar) = g
        .vars()
        .into_iter()
        .find(|&v| v != xvar && g.linear_in(v).map(|(u, _)| is_unit(&u)).unwrap_or(false))
    {
        relation_vars.push(chart.name(yvar));
        let (u, rest) = g.linear_in(yvar).unwrap();
        if !rest.is_zero() {
            note = Some(format!("coordinate change {} -> {}", chart.name(yvar), chart.fmt(&g)));
        } else if u != Rat::one() {
            note = Some(format!(
                "relation {} = pi normalized by {} -> {}*{}",
                chart.fmt(&h),
                chart.name(xvar),
                u,
                chart.name(xvar)
            ));
        }
        Verdict::SemiStable {
            m: retained.len() - 2,
        }
    } else if g.len() == 1 && g.linear_in(xvar).map(|(u, r)| u.is_one() && r.is_zero()).unwrap_or(false) {
        // x^2 = pi: two components x = +-varpi
        let varpi = chart
            .varpi
            .ok_or_else(|| Error::UnsupportedCase("x^2 = pi without a square root of pi".into()))?;
        for sign in [1i128, -1] {
            let mut map = substitution.clone();
            let val = P::var(varpi).scale(&c(sign));
            for s in map.values_mut() {
                *s = s.substitute_var(xvar, &val);
            }
            map.insert(xvar, val.clone());
            map.insert(pi, P::var(varpi).pow(2));
            for e in &chart.equations {
                let s = e.poly.substitute(&map);
                if !s.is_zero() {
                    return Err(fail(&e.label, chart.fmt(&s)));
                }
            }
            components.push(format!("{} = {}", chart.name(xvar), chart.fmt(&val)));
        }
        Verdict::Smooth { component_count: 2 }
    } else {
        let q = g.substitute_var(xvar, &P::zero());
        let homogeneous = {
            let degs: BTreeSet<u32> = q.terms().map(|(m, _)| m.degree()).collect();
            degs.len() == 1 && *degs.iter().next().unwrap() >= 2
        };
        if !homogeneous {
            return Err(fail("relation", chart.fmt(&rel)));
        }
        note = Some(format!(
            "special fiber {} * ({}) = 0; components meet along {} = {} = 0",
            chart.name(xvar),
            chart.fmt(&g),
            chart.name(xvar),
            chart.fmt(&q)
        ));
        Verdict::NotNormalCrossings {
            witness: chart.fmt(&primitive(&q)),
        }
    };

    Ok(NormalForm {
        case: chart.case,
        params: chart.params,
        verdict,
        retained_vars: retained.iter().map(|&v| chart.name(v)).collect(),
        relation: chart.fmt(&rel),
        relation_vars,
        note,
        eliminated: substitution
            .iter()
            .map(|(&v, p)| (chart.name(v), chart.fmt(p)))
            .collect(),
        flat_steps: w.flat,
        certificate,
        components,
        substitution,
        relation_poly: rel,
    })
}

/// Paper-independent expectations for the table below.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub case: ChartCase,
    pub params: ChartParams,
    pub verdict: Verdict,
    pub expected: String,
    pub ok: bool,
    pub certified_equations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemistableTable {
    pub max_n: usize,
    pub rows: Vec<TableRow>,
}

impl SemistableTable {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Expected `m` for the semi-stable rows.
pub fn expected_m(case: ChartCase, p: ChartParams) -> Option<usize> {
    let n = p.n;
    match case {
        ChartCase::Gl => Some((n - p.r) * p.r - 1),
        ChartCase::Gsp => Some(n * (n + 1) / 2 - 1),
        ChartCase::GoSplit => Some(n * (n - 1) / 2 - 1),
        ChartCase::SoEvenSplitR1 => Some(2 * n - 3),
        ChartCase::SoOddSplitR1 => Some(2 * n - 2),
        _ => None,
    }
}

fn table_cases(max_n: usize) -> Vec<(ChartCase, ChartParams)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for r in 1..n {
            out.push((ChartCase::Gl, ChartParams { n, r, kappa: 1 }));
        }
    }
    for case in [
        ChartCase::SoOddSplitR1,
        ChartCase::Gsp,
        ChartCase::SoEvenSplitR1,
        ChartCase::GoSplit,
        ChartCase::SoEvenNonsplitR1,
        ChartCase::ExoticSo,
    ] {
        for n in 2..=max_n {
            out.push((case, ChartParams::n(n)));
        }
    }
    out
}

/// Runs every chart up to `max_n` and compares with the expected normal form.
pub fn classify_semistable_table(max_n: usize) -> Result<SemistableTable> {
    let rows: Result<Vec<TableRow>> = table_cases(max_n)
        .into_par_iter()
        .map(|(case, params)| {
            let chart = build_chart(case, params)?;
            let nf = eliminate(&chart)?;
            let (expected, ok) = match case {
                ChartCase::SoEvenNonsplitR1 => (
                    "NotNormalCrossings".to_string(),
                    matches!(nf.verdict, Verdict::NotNormalCrossings { .. }),
                ),
                ChartCase::ExoticSo => (
                    "Smooth{2}".to_string(),
                    nf.verdict == Verdict::Smooth { component_count: 2 },
                ),
                _ => {
                    let m = expected_m(case, params).unwrap();
                    (format!("SemiStable{{m={}}}", m), nf.verdict == Verdict::SemiStable { m })
                }
            };
            Ok(TableRow {
                case,
                params,
                verdict: nf.verdict.clone(),
                expected,
                ok,
                certified_equations: nf.certificate.len(),
            })
        })
        .collect();
    Ok(SemistableTable { max_n, rows: rows? })
}

/// Whether `p` lies in the ideal of the relation after substitution; returns
/// the quotient as witness.
pub fn vanishes_mod_relation(nf: &NormalForm, p: &P) -> Option<P> {
    let s = p.substitute(&nf.substitution);
    let pi = 0u16;
    let (q, r) = s.div_rem_linear_in(&nf.relation_poly, pi)?;
    r.is_zero().then_some(q)
}
