//! Closed-form oracle for the full-range logistic map `f(x) = 4x(1-x)`:
//! ordinal-partition cells, the arcsine invariant measure and exact
//! pattern and transition probabilities.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_2_PI;

use serde::Serialize;
use serde_json::{json, Value};

use crate::census::TransitionMatrix;
use crate::error::{invalid_arg, Result};
use crate::ordinal::{encode, OrdinalPattern, PatternCode};

pub const MIN_CELL_LEN: usize = 2;
pub const MAX_CELL_LEN: usize = 5;
pub const MAX_TRANSITION_LEN: usize = 4;

const GRID_POINTS: usize = 10_000;
const ROOT_TOL: f64 = 1e-12;
const MERGE_TOL: f64 = 1e-10;
/// Orbit values closer than this at a breakpoint count as tied.
const TIE_TOL: f64 = 1e-8;

pub fn logistic(x: f64) -> f64 {
    4.0 * x * (1.0 - x)
}

/// `x, f(x), ..., f^{len-1}(x)`.
pub fn orbit(x: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut y = x;
    for _ in 0..len {
        out.push(y);
        y = logistic(y);
    }
    out
}

/// Arcsine CDF `F(x) = (2/π)·asin(√x)`.
pub fn arcsine_cdf(x: f64) -> f64 {
    FRAC_2_PI * x.clamp(0.0, 1.0).sqrt().asin()
}

/// An interval of `[0,1]` with explicit endpoint membership. A single point
/// is `[a,a]`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn measure(&self) -> f64 {
        arcsine_cdf(self.hi) - arcsine_cdf(self.lo)
    }
}

/// Arcsine measure of a union of non-overlapping intervals `[a,b] ⊂ [0,1]`.
pub fn measure_of(intervals: &[(f64, f64)]) -> Result<f64> {
    let mut total = 0.0;
    for &(a, b) in intervals {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a > b {
            return Err(invalid_arg(format!("[{a}, {b}] is not an interval inside [0,1]")));
        }
        total += arcsine_cdf(b) - arcsine_cdf(a);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrdinalCell {
    pub pattern: OrdinalPattern,
    pub intervals: Vec<Interval>,
}

impl OrdinalCell {
    pub fn code(&self) -> PatternCode {
        encode(&self.pattern)
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(Interval::measure).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }
}

/// The non-empty cells `P_r` of the ordinal partition of order `len`,
/// ordered by pattern code.
#[derive(Clone, Debug, PartialEq)]
pub struct OrdinalCellSet {
    pub len: usize,
    pub cells: Vec<OrdinalCell>,
}

impl OrdinalCellSet {
    pub fn cell(&self, pattern: &OrdinalPattern) -> Option<&OrdinalCell> {
        self.cells.iter().find(|c| &c.pattern == pattern)
    }

    /// Cells of positive measure. Cells made only of isolated boundary
    /// points are kept in `cells` but are not allowed patterns.
    pub fn allowed_count(&self) -> usize {
        self.cells.iter().filter(|c| c.measure() > 0.0).count()
    }

    /// Interior points of `(0,1)` where the pattern changes, sorted.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .cells
            .iter()
            .flat_map(|c| c.intervals.iter().flat_map(|i| [i.lo, i.hi]))
            .filter(|&x| x > 0.0 && x < 1.0)
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Cell containing `x`, by the earlier-is-smaller convention.
    pub fn locate(&self, x: f64) -> Option<&OrdinalCell> {
        self.cells.iter().find(|c| c.contains(x))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "L": self.len,
            "cells": self.cells.iter().map(|c| json!({
                "pattern": c.pattern.to_vec(),
                "code": c.code().code(),
                "measure": c.measure(),
                "intervals": c.intervals.iter().map(|i| json!({
                    "interval": [i.lo, i.hi],
                    "lo_closed": i.lo_closed,
                    "hi_closed": i.hi_closed,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Pattern of `values` where entries within `tol` of each other tie and the
/// earlier one counts as smaller.
fn pattern_with_ties(values: &[f64], tol: f64) -> OrdinalPattern {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| {
        if (values[i] - values[j]).abs() <= tol {
            i.cmp(&j)
        } else {
            values[i].total_cmp(&values[j])
        }
    });
    OrdinalPattern::new(idx).expect("argsort is a permutation")
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Roots in `(0,1)` of `f^i(x) - f^j(x)` for all `i < j < len`, found by
/// sign changes on a uniform grid refined by bisection, merged within
/// `MERGE_TOL`.
fn breakpoints(len: usize, grid: usize) -> Vec<f64> {
    let xs: Vec<f64> = (0..=grid).map(|k| k as f64 / grid as f64).collect();
    let orbits: Vec<Vec<f64>> = xs.iter().map(|&x| orbit(x, len)).collect();
    let mut roots = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let d = |x: f64| {
                let o = orbit(x, len);
                o[i] - o[j]
            };
            for k in 0..grid {
                let (d0, d1) = (orbits[k][i] - orbits[k][j], orbits[k + 1][i] - orbits[k + 1][j]);
                if d1 == 0.0 {
                    roots.push(xs[k + 1]);
                } else if d0 != 0.0 && (d0 > 0.0) != (d1 > 0.0) {
                    roots.push(bisect(d, xs[k], xs[k + 1]));
                }
            }
        }
    }
    roots.retain(|&x| x > MERGE_TOL && x < 1.0 - MERGE_TOL);
    roots.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::new();
    for r in roots {
        match merged.last() {
            Some(&last) if r - last <= MERGE_TOL => {}
            _ => merged.push(r),
        }
    }
    merged
}

fn check_cell_len(len: usize) -> Result<()> {
    if !(MIN_CELL_LEN..=MAX_CELL_LEN).contains(&len) {
        return Err(invalid_arg(format!(
            "analytic ordinal cells are available for {MIN_CELL_LEN} <= L <= {MAX_CELL_LEN}, got {len}"
        )));
    }
    Ok(())
}

/// Ordinal partition of `[0,1]` of order `len` for the full-range logistic map.
///
/// Boundary points take the pattern given by the earlier-is-smaller tie rule
/// and join a neighbouring interval with the same pattern, or else form a
/// singleton.
pub fn ordinal_cells(len: usize) -> Result<OrdinalCellSet> {
    check_cell_len(len)?;
    Ok(cells_on_grid(len, GRID_POINTS))
}

fn cells_on_grid(len: usize, grid: usize) -> OrdinalCellSet {
    let mut points = vec![0.0];
    points.extend(breakpoints(len, grid));
    points.push(1.0);

    // Alternating pieces: point, open gap, point, ..., point.
    let mut pieces: Vec<(OrdinalPattern, Interval)> = Vec::new();
    for (k, &b) in points.iter().enumerate() {
        pieces.push((pattern_with_ties(&orbit(b, len), TIE_TOL), Interval::point(b)));
        if let Some(&next) = points.get(k + 1) {
            let mid = 0.5 * (b + next);
            let open = Interval {
                lo: b,
                hi: next,
                lo_closed: false,
                hi_closed: false,
            };
            pieces.push((pattern_with_ties(&orbit(mid, len), 0.0), open));
        }
    }

    let mut runs: Vec<(OrdinalPattern, Interval)> = Vec::new();
    for (pat, piece) in &pieces {
        if let Some((last_pat, last)) = runs.last_mut() {
            if last_pat == pat && (last.hi_closed || piece.lo_closed) {
                last.hi = piece.hi;
                last.hi_closed = piece.hi_closed;
                continue;
            }
        }
        runs.push((pat.clone(), *piece));
    }

    let mut by_code: BTreeMap<PatternCode, OrdinalCell> = BTreeMap::new();
    for (pat, interval) in runs {
        by_code
            .entry(encode(&pat))
            .or_insert_with(|| OrdinalCell {
                pattern: pat,
                intervals: Vec::new(),
            })
            .intervals
            .push(interval);
    }
    OrdinalCellSet {
        len,
        cells: by_code.into_values().collect(),
    }
}

/// `f⁻¹([a,b])` as its two branch images `[(1-√(1-a))/2, (1-√(1-b))/2]` and
/// `[(1+√(1-b))/2, (1+√(1-a))/2]`; endpoint membership is carried over.
pub fn preimage(i: &Interval) -> [Interval; 2] {
    let left = |y: f64| 0.5 * (1.0 - (1.0 - y).sqrt());
    let right = |y: f64| 0.5 * (1.0 + (1.0 - y).sqrt());
    [
        Interval {
            lo: left(i.lo),
            hi: left(i.hi),
            lo_closed: i.lo_closed,
            hi_closed: i.hi_closed,
        },
        Interval {
            lo: right(i.hi),
            hi: right(i.lo),
            lo_closed: i.hi_closed,
            hi_closed: i.lo_closed,
        },
    ]
}

fn overlap_measure(a: &Interval, b: &Interval) -> f64 {
    let lo = a.lo.max(b.lo);
    let hi = a.hi.min(b.hi);
    if hi > lo {
        arcsine_cdf(hi) - arcsine_cdf(lo)
    } else {
        0.0
    }
}

/// `μ(P_r ∩ f⁻¹P_{r'})`.
pub fn intersection_measure(from: &OrdinalCell, to: &OrdinalCell) -> f64 {
    let pre: Vec<Interval> = to.intervals.iter().flat_map(preimage).collect();
    from.intervals
        .iter()
        .flat_map(|a| pre.iter().map(move |b| overlap_measure(a, b)))
        .sum()
}

/// Exact `p(r) = μ(P_r)` for every allowed pattern.
pub fn exact_pattern_probs(len: usize) -> Result<Vec<(PatternCode, f64)>> {
    let cells = ordinal_cells(len)?;
    Ok(cells
        .cells
        .iter()
        .map(|c| (c.code(), c.measure()))
        .filter(|&(_, m)| m > 0.0)
        .collect())
}

/// Exact `p(r'|r) = μ(P_r ∩ f⁻¹P_{r'}) / μ(P_r)` under the arcsine measure.
pub fn exact_transition_probs(len: usize) -> Result<TransitionMatrix> {
    if !(MIN_CELL_LEN..=MAX_TRANSITION_LEN).contains(&len) {
        return Err(invalid_arg(format!(
            "exact transition probabilities are available for {MIN_CELL_LEN} <= L <= {MAX_TRANSITION_LEN}, got {len}"
        )));
    }
    let cells = ordinal_cells(len)?;
    let mut rows = BTreeMap::new();
    for from in &cells.cells {
        let mass = from.measure();
        if mass <= 0.0 {
            continue;
        }
        let row: BTreeMap<u64, f64> = cells
            .cells
            .iter()
            .filter_map(|to| {
                let m = intersection_measure(from, to);
                // shared endpoints can leave a round-off sliver
                (m > 1e-14 * mass).then(|| (to.code().code(), m / mass))
            })
            .collect();
        rows.insert(from.code().code(), row);
    }
    Ok(TransitionMatrix::from_rows(len, rows))
}

/// Transition matrix as JSON rows `{from, to, p}` with rank arrays.
pub fn transition_json(m: &TransitionMatrix) -> Value {
    let rows: Vec<Value> = m
        .sources()
        .into_iter()
        .flat_map(|from| {
            m.row(from).into_iter().map(move |(to, p)| {
                json!({"from": from.pattern().to_vec(), "to": to.pattern().to_vec(), "p": p})
            })
        })
        .collect();
    json!({"L": m.length(), "transitions": rows})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{census, transition_matrix};
    use crate::process::{generate, ProcessKind, ProcessSpec};

    fn pat(r: &[usize]) -> OrdinalPattern {
        OrdinalPattern::new(r.to_vec()).unwrap()
    }

    fn assert_interval(i: &Interval, lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) {
        assert!((i.lo - lo).abs() < 1e-9 && (i.hi - hi).abs() < 1e-9, "{i:?} vs [{lo},{hi}]");
        assert_eq!((i.lo_closed, i.hi_closed), (lo_closed, hi_closed), "{i:?}");
    }

    #[test]
    fn order_two_cells() {
        let cells = ordinal_cells(2).unwrap();
        assert_eq!(cells.allowed_count(), 2);
        let up = cells.cell(&pat(&[0, 1])).unwrap();
        assert_eq!(up.intervals.len(), 1);
        assert_interval(&up.intervals[0], 0.0, 0.75, true, true);
        let down = cells.cell(&pat(&[1, 0])).unwrap();
        assert_interval(&down.intervals[0], 0.75, 1.0, false, true);
    }

    #[test]
    fn order_three_cells() {
        let s5 = 5f64.sqrt();
        let cells = ordinal_cells(3).unwrap();
        assert_eq!(cells.allowed_count(), 5);
        assert_eq!(cells.cells.len(), 5);
        assert!(cells.cell(&pat(&[2, 1, 0])).is_none());
        let b = cells.boundaries();
        let expect = [0.25, (5.0 - s5) / 8.0, 0.75, (5.0 + s5) / 8.0];
        assert_eq!(b.len(), 4);
        for (x, e) in b.iter().zip(expect) {
            assert!((x - e).abs() < 1e-9);
        }
        let c = cells.cell(&pat(&[0, 1, 2])).unwrap();
        assert_eq!(c.intervals.len(), 2);
        assert_interval(&c.intervals[0], 0.0, 0.25, true, true);
        assert_interval(&c.intervals[1], 0.75, 0.75, true, true);
        assert_interval(&cells.cell(&pat(&[0, 2, 1])).unwrap().intervals[0], 0.25, expect[1], false, true);
        assert_interval(&cells.cell(&pat(&[2, 0, 1])).unwrap().intervals[0], expect[1], 0.75, false, false);
        assert_interval(&cells.cell(&pat(&[1, 0, 2])).unwrap().intervals[0], 0.75, expect[3], false, true);
        assert_interval(&cells.cell(&pat(&[1, 2, 0])).unwrap().intervals[0], expect[3], 1.0, false, true);
    }

    #[test]
    fn cells_agree_with_pointwise_patterns() {
        for len in 2..=5 {
            let cells = ordinal_cells(len).unwrap();
            for k in 0..=5000 {
                let x = (k as f64 + 0.5_f64.sqrt()) / 5001.5;
                let cell = cells.locate(x).expect("covered");
                assert_eq!(cell.pattern, pattern_with_ties(&orbit(x, len), 0.0), "L={len} x={x}");
            }
        }
    }

    #[test]
    fn allowed_counts() {
        let counts: Vec<usize> = (2..=5).map(|l| ordinal_cells(l).unwrap().allowed_count()).collect();
        assert_eq!(counts, vec![2, 5, 12, 31]);
        // the period-2 point carries a tied pattern seen nowhere else
        let four = ordinal_cells(4).unwrap();
        let tied = four.cell(&pat(&[1, 3, 0, 2])).unwrap();
        assert_eq!(tied.measure(), 0.0);
        assert!((tied.intervals[0].lo - (5.0 + 5f64.sqrt()) / 8.0).abs() < 1e-12);
    }

    #[test]
    fn measures_sum_to_one() {
        for len in 2..=5 {
            let total: f64 = ordinal_cells(len).unwrap().cells.iter().map(OrdinalCell::measure).sum();
            assert!((total - 1.0).abs() < 1e-12, "L={len}: {total}");
        }
    }

    #[test]
    fn finer_grid_finds_no_new_boundaries() {
        for len in 2..=5 {
            let coarse = cells_on_grid(len, GRID_POINTS);
            let fine = cells_on_grid(len, 8 * GRID_POINTS);
            assert_eq!(coarse.allowed_count(), fine.allowed_count());
            let (a, b) = (coarse.boundaries(), fine.boundaries());
            assert_eq!(a.len(), b.len(), "L={len}");
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-10));
        }
    }

    #[test]
    fn refinement() {
        for len in 2..5 {
            let coarse = ordinal_cells(len).unwrap();
            let fine = ordinal_cells(len + 1).unwrap();
            for cell in &fine.cells {
                // dropping the last index from an argsort gives the argsort of the prefix
                let parent = OrdinalPattern::new(cell.pattern.ranks().filter(|&r| r < len).collect()).unwrap();
                let parent_cell = coarse.cell(&parent).expect("parent exists");
                for i in cell.intervals.iter().filter(|i| !i.is_point()) {
                    let mid = 0.5 * (i.lo + i.hi);
                    assert!(parent_cell.contains(mid));
                }
            }
        }
    }

    #[test]
    fn measure_values() {
        let s3 = 3f64.sqrt();
        let s5 = 5f64.sqrt();
        assert!((measure_of(&[(0.0, 0.25)]).unwrap() - 10.0 / 30.0).abs() < 1e-12);
        assert!((measure_of(&[(0.0, 1.0)]).unwrap() - 1.0).abs() < 1e-15);
        let a = (2.0 - s3) / 4.0;
        let b = (3.0 - s5) / 8.0;
        assert!((measure_of(&[(0.0, a)]).unwrap() - 5.0 / 30.0).abs() < 1e-12);
        assert!((measure_of(&[(a, b)]).unwrap() - 1.0 / 30.0).abs() < 1e-12);
        assert!((measure_of(&[(b, 0.25)]).unwrap() - 4.0 / 30.0).abs() < 1e-12);
        assert!(measure_of(&[(-0.1, 0.5)]).is_err());
        assert!(measure_of(&[(0.5, 1.2)]).is_err());
    }

    #[test]
    fn measure_is_invariant() {
        for cell in ordinal_cells(3).unwrap().cells {
            for i in cell.intervals.iter().filter(|i| !i.is_point()) {
                let pre: f64 = preimage(i).iter().map(Interval::measure).sum();
                assert!((pre - i.measure()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn worked_transition_row() {
        let m = exact_transition_probs(3).unwrap();
        let from = encode(&pat(&[0, 1, 2]));
        let row = m.row(from);
        let expect = [(pat(&[0, 1, 2]), 0.5), (pat(&[0, 2, 1]), 0.1), (pat(&[2, 0, 1]), 0.4)];
        assert_eq!(row.len(), 3);
        for (p, v) in expect {
            assert!((m.get(from, encode(&p)) - v).abs() < 1e-9);
        }
        for src in m.sources() {
            let s: f64 = m.row(src).iter().map(|(_, p)| p).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn increasing_row_intersections() {
        // 5/30, 1/30, 4/30 are measures of subsets of [0,1/4] = P_(0,1,2);
        // the (1,0,2) row gives different values.
        let cells = ordinal_cells(3).unwrap();
        let targets = [pat(&[0, 1, 2]), pat(&[0, 2, 1]), pat(&[2, 0, 1])];
        let thirtieths = [5.0 / 30.0, 1.0 / 30.0, 4.0 / 30.0];
        let row = |from: &OrdinalPattern| -> Vec<f64> {
            let f = cells.cell(from).unwrap();
            targets.iter().map(|t| intersection_measure(f, cells.cell(t).unwrap())).collect()
        };
        let inc = row(&pat(&[0, 1, 2]));
        let labelled = row(&pat(&[1, 0, 2]));
        assert!(inc.iter().zip(thirtieths).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!(labelled.iter().zip(thirtieths).any(|(a, b)| (a - b).abs() > 1e-3));
    }

    #[test]
    fn oracle_matches_long_orbit() {
        let spec = ProcessSpec::new(ProcessKind::Logistic { a: 4.0, x0: 0.3 }, 1_000_000, 0);
        let ts = generate(&spec).unwrap();
        let n = ts.len() as f64;
        for len in 2..=4 {
            let d = census(&ts, len).unwrap();
            for (code, p) in exact_pattern_probs(len).unwrap() {
                let se = (p * (1.0 - p) / n).sqrt();
                // the orbit is correlated, so allow a wider band than i.i.d.
                assert!((d.probability(code) - p).abs() < 10.0 * se + 1e-4, "L={len}");
            }
            assert_eq!(d.allowed_count(), ordinal_cells(len).unwrap().allowed_count());
            let exact = exact_transition_probs(len).unwrap();
            let emp = transition_matrix(&ts, len).unwrap();
            for from in exact.sources() {
                for (to, p) in exact.row(from) {
                    assert!((emp.get(from, to) - p).abs() < 0.01);
                }
            }
        }
    }

    #[test]
    fn out_of_range_orders() {
        assert!(ordinal_cells(1).is_err());
        assert!(ordinal_cells(6).is_err());
        assert!(exact_transition_probs(5).is_err());
    }

    #[test]
    fn json_export_shape() {
        let v = ordinal_cells(3).unwrap().to_json();
        assert_eq!(v["cells"].as_array().unwrap().len(), 5);
        assert_eq!(v["cells"][0]["pattern"], json!([0, 1, 2]));
        let t = transition_json(&exact_transition_probs(2).unwrap());
        assert_eq!(t["L"], 2);
    }
}
