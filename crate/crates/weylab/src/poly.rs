//! Sparse multivariate polynomials with exact coefficients, and univariate
//! polynomials in `q` for Poincare series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Rat = Ratio<i128>;

/// Coefficient ring. Implemented for `i128` and `Ratio<i128>`.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// `self / d` if it is exact in the ring.
    fn exact_div(&self, d: &Self) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl Coeff for i128 {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if *d != 0 && self % d == 0 {
            Some(self / d)
        } else {
            None
        }
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl Coeff for Rat {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Sparse exponent vector: sorted `(variable, exponent)` pairs, exponents > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial(pub Vec<(u16, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u16) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: u16) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 == b[j].0 {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            } else if a[i].0 < b[j].0 {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Split off the power of `v`.
    pub fn split(&self, v: u16) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(w, k)| {
                if w == v {
                    e = k;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Monomial(rest))
    }

    fn with_power(&self, v: u16, e: u32) -> Monomial {
        if e == 0 {
            return self.clone();
        }
        self.mul(&Monomial(vec![(v, e)]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<C: Coeff> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for MultiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(v: u16) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(v), C::one());
        p
    }

    /// `sum c_i x_i`.
    pub fn linear(coeffs: &[(u16, C)]) -> Self {
        let mut p = Self::zero();
        for (v, c) in coeffs {
            p.add_term(Monomial::var(*v), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: u16) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: u16) -> bool {
        self.degree_in(v) > 0
    }

    pub fn vars(&self) -> Vec<u16> {
        let mut out: Vec<u16> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero();
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x.clone() * c.clone());
        }
        p
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        let mut p = Self::zero();
        for (m, x) in &self.terms {
            p.add_term(m.mul(mono), x.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Coefficients of the powers of `v`: `self = sum_d out[d] * v^d`.
    pub fn coefficients_in(&self, v: u16) -> Vec<Self> {
        let mut out = vec![Self::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// If `self = c*v + rest` with `c` a nonzero constant and `rest` free of `v`,
    /// return `(c, rest)`.
    pub fn linear_in(&self, v: u16) -> Option<(C, Self)> {
        let parts = self.coefficients_in(v);
        if parts.len() != 2 {
            return None;
        }
        let lead = &parts[1];
        if lead.terms.len() != 1 {
            return None;
        }
        let (m, c) = lead.terms.iter().next().unwrap();
        if !m.0.is_empty() {
            return None;
        }
        Some((c.clone(), parts[0].clone()))
    }

    /// Substitute polynomials for variables. Variables missing from `map` stay.
    pub fn substitute(&self, map: &BTreeMap<u16, MultiPoly<C>>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut keep = Monomial::one();
            let mut acc = Self::constant(c.clone());
            for &(v, e) in &m.0 {
                match map.get(&v) {
                    Some(p) => acc = &acc * &p.pow(e),
                    None => keep = keep.with_power(v, e),
                }
            }
            out = &out + &acc.mul_monomial(&keep, &C::one());
        }
        out
    }

    pub fn substitute_var(&self, v: u16, p: &MultiPoly<C>) -> Self {
        let mut map = BTreeMap::new();
        map.insert(v, p.clone());
        self.substitute(&map)
    }

    /// Evaluate with every variable replaced by a constant.
    pub fn eval(&self, point: &dyn Fn(u16) -> C) -> C {
        let mut s = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                for _ in 0..e {
                    t = t * point(v);
                }
            }
            s = s + t;
        }
        s
    }

    pub fn derivative(&self, v: u16) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e == 0 {
                continue;
            }
            let mut k = C::zero();
            for _ in 0..e {
                k = k + C::one();
            }
            out.add_term(rest.with_power(v, e - 1), c.clone() * k);
        }
        out
    }

    /// Division by `g`, which must have degree one in `v` with a unit leading
    /// coefficient. Returns `(quotient, remainder)` with the remainder free of `v`.
    pub fn div_rem_linear_in(&self, g: &Self, v: u16) -> Option<(Self, Self)> {
        let (lc, _) = g.linear_in(v)?;
        let mut f = self.clone();
        let mut q = Self::zero();
        loop {
            let d = f.degree_in(v);
            if d == 0 {
                return Some((q, f));
            }
            let top = f.coefficients_in(v).pop().unwrap();
            let mut term = Self::zero();
            for (m, c) in &top.terms {
                term.add_term(m.with_power(v, d - 1), c.exact_div(&lc)?);
            }
            f = &f - &(&term * g);
            q = &q + &term;
        }
    }

    /// Exact division by a polynomial of degree one in its last variable
    /// (used for linear forms); `None` if it does not divide.
    pub fn div_exact_linear(&self, g: &Self) -> Option<Self> {
        let v = *g.vars().last()?;
        let (q, r) = self.div_rem_linear_in(g, v)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut p = MultiPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(m.clone(), f(c));
        }
        p
    }

    /// Terms in graded-lex order, highest degree first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        t
    }

    pub fn leading_coeff(&self) -> Option<C> {
        self.sorted_terms().first().map(|(_, c)| (*c).clone())
    }

    pub fn fmt_with(&self, names: &dyn Fn(u16) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        names(v)
                    } else {
                        format!("{}^{}", names(v), e)
                    }
                })
                .collect();
            let unit = a.is_one();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !unit {
                    let cs = a.to_string();
                    if cs.contains('/') {
                        s.push_str(&format!("({})*", cs));
                    } else {
                        s.push_str(&format!("{}*", cs));
                    }
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl MultiPoly<i128> {
    pub fn content(&self) -> i128 {
        self.terms
            .values()
            .fold(0i128, |g, c| num_integer::gcd(g, *c))
    }

    pub fn to_rat(&self) -> MultiPoly<Rat> {
        self.map_coeffs(|c| Rat::from_integer(*c))
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: Self) -> MultiPoly<C> {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: Self) -> MultiPoly<C> {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: Self) -> MultiPoly<C> {
        let mut p = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&-C::one())
    }
}

/// Univariate polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QPoly {
    coeffs: Vec<i64>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly { coeffs: vec![1] }
    }

    pub fn monomial(d: usize) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = 1;
        QPoly { coeffs: c }
    }

    /// `1 + q + ... + q^d`.
    pub fn q_int(d: usize) -> Self {
        QPoly::new(vec![1; d + 1])
    }

    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Vec::new();
        for l in lengths {
            if c.len() <= l {
                c.resize(l + 1, 0);
            }
            c[l] += 1;
        }
        QPoly::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, c| acc * q + c)
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        if d.is_zero() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dl = *d.coeffs.last().unwrap();
        if r.len() < d.coeffs.len() {
            return if r.is_empty() { Some(QPoly::zero()) } else { None };
        }
        let mut q = vec![0; r.len() - d.coeffs.len() + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + d.coeffs.len() - 1];
            if top % dl != 0 {
                return None;
            }
            let f = top / dl;
            q[k] = f;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] -= f * c;
            }
        }
        if r.iter().all(|&x| x == 0) {
            Some(QPoly::new(q))
        } else {
            None
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{}q", a)?,
                (_, 1) => write!(f, "q^{}", d)?,
                _ => write!(f, "{}q^{}", a, d)?,
            }
        }
        Ok(())
    }
}
