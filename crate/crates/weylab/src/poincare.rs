//! Poincare polynomials of truncated intervals, CCP checks and the
//! classification run.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::EnhancedCoxeterDatum;
use crate::error::Result;
use crate::poly::QPoly;
use crate::root_system::{Family, RootDatum};
use crate::weyl::{Weyl, WeylElt};

pub fn poincare_of(w: &Weyl, set: &HashSet<WeylElt>) -> QPoly {
    QPoly::from_lengths(set.iter().map(|v| w.length(v)))
}

/// `P_{<=lam,K}(q)`.
pub fn poincare_polynomial(ecd: &EnhancedCoxeterDatum) -> Result<QPoly> {
    Ok(poincare_of(&ecd.weyl, &ecd.truncated_interval()?))
}

pub fn is_symmetric(p: &QPoly) -> bool {
    let d = p.degree();
    (0..=d).all(|i| p.coeff(i) == p.coeff(d - i))
}

/// First index `i` with `a_i != a_{d-i}`.
pub fn first_asymmetry(p: &QPoly) -> Option<usize> {
    let d = p.degree();
    (0..=d / 2).find(|&i| p.coeff(i) != p.coeff(d - i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CcpCheck {
    pub extreme_count: usize,
    pub k_size: usize,
    pub passes: bool,
}

pub fn ccp_check(ecd: &EnhancedCoxeterDatum) -> CcpCheck {
    let extreme_count = ecd.count_extreme();
    let k_size = ecd.k_tilde.len();
    CcpCheck {
        extreme_count,
        k_size,
        passes: extreme_count <= k_size,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Location {
    Component(usize),
    Intersection(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ScreenVerdict {
    PassesAllPoincareTests,
    FailsAt {
        location: Location,
        polynomial: String,
        degree: usize,
        /// `(i, a_i, a_{d-i})` at the first asymmetric position.
        witness: (usize, i64, i64),
    },
}

/// Symmetry of every component polynomial, then of every pairwise
/// intersection polynomial.
pub fn rspss_screen(ecd: &EnhancedCoxeterDatum) -> Result<ScreenVerdict> {
    let w = &ecd.weyl;
    let reps = ecd.extreme_min_reps();
    let mut sets = Vec::with_capacity(reps.len());
    for m in &reps {
        sets.push(w.lower_interval_min(m, ecd.gens())?);
    }
    let fail = |location: Location, p: QPoly| {
        first_asymmetry(&p).map(|i| ScreenVerdict::FailsAt {
            location,
            polynomial: p.to_string(),
            degree: p.degree(),
            witness: (i, p.coeff(i), p.coeff(p.degree() - i)),
        })
    };
    for (i, s) in sets.iter().enumerate() {
        if let Some(v) = fail(Location::Component(i), poincare_of(w, s)) {
            return Ok(v);
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let inter: HashSet<WeylElt> = sets[i].intersection(&sets[j]).cloned().collect();
            if let Some(v) = fail(Location::Intersection(i, j), poincare_of(w, &inter)) {
                return Ok(v);
            }
        }
    }
    Ok(ScreenVerdict::PassesAllPoincareTests)
}

/// Representative of the automorphism class of `(lam, K~)`: the least
/// sorted `K~`, ties broken by the dominant `lam` read from the last
/// coordinate (so `w1` is preferred to `w_n`).
pub fn canonical_form(d: &RootDatum, lam: &[i64], k: &[usize]) -> (Vec<i64>, Vec<usize>) {
    let n = d.rank;
    let mut best: Option<(Vec<usize>, Vec<i64>, Vec<i64>)> = None;
    for sigma in d.diagram_automorphisms() {
        let m = d.automorphism_coweight_map(&sigma);
        let img: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| m[i * n + j] * lam[j]).sum())
            .collect();
        let dom = d.dominant(&img);
        let mut kk: Vec<usize> = k.iter().map(|&v| sigma[v]).collect();
        kk.sort();
        let rev: Vec<i64> = dom.iter().rev().copied().collect();
        let key = (kk, rev, dom);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    let (k, _, lam) = best.unwrap();
    (lam, k)
}

/// Instances of the theorem's list at a fixed type and rank, tagged by row.
pub fn theorem_instances(d: &RootDatum) -> Vec<(&'static str, Vec<i64>, Vec<usize>)> {
    let n = d.rank;
    let w = |i: usize| d.fundamental_coweight(i);
    let lw = |l: i64, i: usize| {
        let mut v = d.fundamental_coweight(i);
        v[i - 1] = l;
        v
    };
    let mut out = Vec::new();
    for &v in &d.special {
        for lam in d.translation_candidates() {
            out.push(("1a", lam, vec![v]));
        }
    }
    match d.family {
        Family::A => {
            if n == 1 {
                out.push(("2a", vec![2], vec![0, 1]));
            }
            for mask in 0u32..(1 << (n + 1)) {
                if mask.count_ones() >= 2 {
                    let k = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
                    out.push(("2b", w(1), k));
                }
            }
            // A_{N-1} with N = n + 1
            if n + 1 >= 4 {
                for i in 2..=n - 1 {
                    out.push(("2c", w(i), vec![0, 1]));
                }
            }
        }
        Family::B if n >= 3 => {
            for r in 1..n {
                out.push(("1b", w(r), vec![n]));
            }
            out.push(("2d", w(1), vec![0, n]));
            out.push(("2e", w(n), vec![0, 1]));
        }
        Family::C => {
            for l in [1, 2] {
                for i in 1..n {
                    out.push(("1c", lw(l, n), vec![i]));
                }
                for i in 0..n {
                    if 2 * i + 2 <= n {
                        out.push(("2g", lw(l, n), vec![i, i + 1]));
                    }
                }
            }
            out.push(("2f", w(1), vec![0, n]));
        }
        Family::D => {
            out.push(("2h", w(1), vec![0, n]));
            if n >= 5 {
                out.push(("2i", w(n), vec![0, 1]));
            }
        }
        Family::F4 => out.push(("1d", w(1), vec![4])),
        Family::G2 => out.push(("1e", w(2), vec![1])),
        _ => {}
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassRow {
    pub family: String,
    pub rank: usize,
    /// Coordinates in the fundamental-coweight basis.
    pub lambda: Vec<i64>,
    pub lambda_label: String,
    /// Epsilon coordinates (classical) or fundamental coordinates.
    pub lambda_display: String,
    pub k: Vec<usize>,
    pub extreme_count: usize,
    pub k_size: usize,
    pub irreducible: bool,
    /// Matching rows of the theorem's list; empty for an unmatched hit.
    pub rows: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClassificationReport {
    pub max_rank: usize,
    pub rows: Vec<ClassRow>,
    /// Theorem instances (canonical) with no computed hit.
    pub missing: Vec<ClassRow>,
}

impl ClassificationReport {
    pub fn extras(&self) -> Vec<&ClassRow> {
        self.rows.iter().filter(|r| r.rows.is_empty()).collect()
    }
}

/// Families and ranks covered by a run with the given classical bound.
pub fn classification_types(max_rank: usize, only: Option<Family>) -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for f in Family::ALL {
        if only.is_some_and(|o| o != f) {
            continue;
        }
        match f.fixed_rank() {
            Some(r) => out.push((f, r)),
            None => {
                // B~2 is C~2
                let lo = if f == Family::B { 3 } else { f.min_rank() };
                for n in lo..=max_rank {
                    out.push((f, n));
                }
            }
        }
    }
    out
}

fn classify_type(f: Family, n: usize) -> Result<(Vec<ClassRow>, Vec<ClassRow>)> {
    let weyl = Arc::new(Weyl::new(f, n)?);
    let d = &weyl.datum;
    let mut seen: BTreeSet<(Vec<i64>, Vec<usize>)> = BTreeSet::new();
    let mut hits = Vec::new();
    let mut expected: BTreeMap<(Vec<i64>, Vec<usize>), BTreeSet<String>> = BTreeMap::new();
    for (row, lam, k) in theorem_instances(d) {
        expected
            .entry(canonical_form(d, &lam, &k))
            .or_default()
            .insert(row.to_string());
    }
    let make_row = |lam: &[i64], k: &[usize], c: &CcpCheck, rows: Vec<String>| ClassRow {
        family: f.to_string(),
        rank: n,
        lambda: lam.to_vec(),
        lambda_label: d.coweight_label(lam),
        lambda_display: d.fmt_coweight(lam),
        k: k.to_vec(),
        extreme_count: c.extreme_count,
        k_size: c.k_size,
        irreducible: c.extreme_count == 1,
        rows,
    };
    for lam in d.translation_candidates() {
        for mask in 1u32..(1 << (n + 1)) {
            let k: Vec<usize> = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
            let key = canonical_form(d, &lam, &k);
            if !seen.insert(key.clone()) {
                continue;
            }
            let ecd = EnhancedCoxeterDatum::new(weyl.clone(), key.0.clone(), &key.1)?;
            let c = ccp_check(&ecd);
            if c.passes {
                let rows = expected
                    .get(&key)
                    .map(|s| s.iter().cloned().collect())
                    .unwrap_or_default();
                hits.push(make_row(&key.0, &key.1, &c, rows));
            }
        }
    }
    let hit_keys: BTreeSet<(Vec<i64>, Vec<usize>)> =
        hits.iter().map(|r| (r.lambda.clone(), r.k.clone())).collect();
    let mut missing = Vec::new();
    for (key, rows) in &expected {
        if !hit_keys.contains(key) {
            let ecd = EnhancedCoxeterDatum::new(weyl.clone(), key.0.clone(), &key.1)?;
            let c = ccp_check(&ecd);
            missing.push(make_row(&key.0, &key.1, &c, rows.iter().cloned().collect()));
        }
    }
    Ok((hits, missing))
}

/// All CCP data up to the classical rank bound (exceptional types at their
/// own rank), one row per automorphism class.
pub fn classify_ccp(max_rank: usize, only: Option<Family>) -> Result<ClassificationReport> {
    let types = classification_types(max_rank, only);
    let parts: Vec<Result<(Vec<ClassRow>, Vec<ClassRow>)>> = types
        .par_iter()
        .map(|&(f, n)| classify_type(f, n))
        .collect();
    let mut report = ClassificationReport {
        max_rank,
        ..Default::default()
    };
    for p in parts {
        let (hits, missing) = p?;
        report.rows.extend(hits);
        report.missing.extend(missing);
    }
    let order = |r: &ClassRow| {
        (
            Family::ALL.iter().position(|f| f.to_string() == r.family),
            r.rank,
            r.lambda_display.clone(),
            r.k.clone(),
        )
    };
    report.rows.sort_by_key(order);
    report.missing.sort_by_key(order);
    Ok(report)
}

fn type_name(family: &str, rank: usize) -> String {
    if family.len() > 1 {
        family.to_string()
    } else {
        format!("{}{}", family, rank)
    }
}

impl ClassificationReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&format!(
                "{:<3} {:<8} {:<24} K={:?} extreme={} |K|={} {} [{}]\n",
                type_name(&r.family, r.rank),
                r.lambda_label,
                r.lambda_display,
                r.k,
                r.extreme_count,
                r.k_size,
                if r.irreducible { "irreducible" } else { "reducible" },
                if r.rows.is_empty() {
                    "unmatched".to_string()
                } else {
                    r.rows.join(",")
                }
            ));
        }
        for r in &self.missing {
            s.push_str(&format!(
                "missing: {} {} K={:?} [{}]\n",
                type_name(&r.family, r.rank),
                r.lambda_label,
                r.k,
                r.rows.join(",")
            ));
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        for (title, irr) in [("Irreducible cases", true), ("Reducible cases", false)] {
            s.push_str(&format!("## {}\n\n", title));
            s.push_str("| type | lambda | coordinates | K | extreme | rows |\n");
            s.push_str("|---|---|---|---|---|---|\n");
            for r in self.rows.iter().filter(|r| r.irreducible == irr) {
                s.push_str(&format!(
                    "| {}~ | {} | {} | {{{}}} | {} | {} |\n",
                    type_name(&r.family, r.rank),
                    r.lambda_label,
                    r.lambda_display,
                    r.k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    r.extreme_count,
                    if r.rows.is_empty() {
                        "unmatched".to_string()
                    } else {
                        r.rows.join(", ")
                    }
                ));
            }
            s.push('\n');
        }
        if !self.missing.is_empty() {
            s.push_str("## Listed but failing\n\n");
            for r in &self.missing {
                s.push_str(&format!(
                    "- {}~ {} {{{}}}: extreme={} ({})\n",
                    type_name(&r.family, r.rank),
                    r.lambda_label,
                    r.k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    r.extreme_count,
                    r.rows.join(", ")
                ));
            }
        }
        s
    }

    /// Sorted-key JSON, pretty printed.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).unwrap();
        let mut s = serde_json::to_string_pretty(&v).unwrap();
        s.push('\n');
        s
    }
}
