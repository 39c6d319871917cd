//! Plane partitions, diagonal slicing, diagonally strict plane partitions,
//! path counting, and the brute-force enumeration oracles.
//!
//! Two independent generators are kept side by side: a direct recursive
//! row-filler and a slice-chain generator. Their agreement is part of the
//! test suite, so the oracle itself is cross-checked.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::partitions::{interlaces, Partition};

/// Default enumeration cap for unrestricted plane partitions.
pub const DEFAULT_PP_CAP: u32 = 12;
/// Default enumeration cap for diagonally strict plane partitions.
pub const DEFAULT_DSPP_CAP: u32 = 10;

/// A plane partition: finitely many positive entries π(i,j), weakly
/// decreasing along rows and columns, stored as trimmed rows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    /// Validates and trims. The error names the first offending cell in
    /// 1-based (row, column) coordinates.
    pub fn new(mut rows: Vec<Vec<u32>>) -> Result<Self> {
        for (i, row) in rows.iter_mut().enumerate() {
            while row.last() == Some(&0) {
                row.pop();
            }
            if let Some(pos) = row.iter().position(|&e| e == 0) {
                // an interior zero means a later entry is larger
                return Err(Error::InvalidPlanePartition { row: i + 1, col: pos + 1 });
            }
            for j in 1..row.len() {
                if row[j] > row[j - 1] {
                    return Err(Error::InvalidPlanePartition { row: i + 1, col: j + 1 });
                }
            }
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        for i in 1..rows.len() {
            if rows[i].is_empty() && !rows[i + 1..].iter().all(|r| r.is_empty()) {
                return Err(Error::InvalidPlanePartition { row: i + 2, col: 1 });
            }
            for j in 0..rows[i].len() {
                let above = rows[i - 1].get(j).copied().unwrap_or(0);
                if rows[i][j] > above {
                    return Err(Error::InvalidPlanePartition { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(PlanePartition { rows })
    }

    pub fn empty() -> Self {
        PlanePartition::default()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// π(i,j), 1-based, zero outside the support.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            return 0;
        }
        self.rows.get(i - 1).and_then(|r| r.get(j - 1)).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    fn n_rows(&self) -> usize {
        self.rows.len()
    }

    fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// The diagonal slice μ_m: entries along j − i = m, read outward from
    /// the boundary of the positive quadrant.
    pub fn slice(&self, m: i64) -> Partition {
        let mut parts = Vec::new();
        for k in 1.. {
            let (i, j) = if m <= 0 {
                ((-m) as usize + k, k)
            } else {
                (k, m as usize + k)
            };
            let e = self.entry(i, j);
            if e == 0 {
                break;
            }
            parts.push(e);
        }
        Partition::new(parts).expect("slices of a valid plane partition decrease")
    }

    /// Decomposes into the chain of diagonal slices, with one empty slice
    /// kept at each end of the window.
    pub fn diagonal_slices(&self) -> SliceChain {
        if self.is_empty() {
            return SliceChain { min_m: 0, slices: vec![Partition::empty()] };
        }
        let lo = -(self.n_rows() as i64);
        let hi = self.n_cols() as i64;
        let slices = (lo..=hi).map(|m| self.slice(m)).collect();
        SliceChain { min_m: lo, slices }
    }

    /// True iff every diagonal slice is a strict partition.
    pub fn is_diagonally_strict(&self) -> bool {
        let lo = -(self.n_rows() as i64);
        let hi = self.n_cols() as i64;
        (lo..=hi).all(|m| {
            let s = self.slice(m);
            s.parts().windows(2).all(|w| w[0] > w[1])
        })
    }

    /// Number of paths p(π̂) of a diagonally strict plane partition: a path
    /// begins at (i,j) when π(i,j) ≠ 0 differs from both its southern
    /// neighbour π(i+1,j) and its western neighbour π(i,j−1), with
    /// π(i,0) ≡ 0.
    pub fn path_count(&self) -> Result<u32> {
        if !self.is_diagonally_strict() {
            return Err(Error::NotDiagonallyStrict);
        }
        let mut count = 0;
        for i in 1..=self.n_rows() {
            for j in 1..=self.rows[i - 1].len() {
                let e = self.entry(i, j);
                if e != 0 && self.entry(i + 1, j) != e && self.entry(i, j - 1) != e {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let strs: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", strs.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for PlanePartition {
    type Err = Error;

    /// One row per line, space-separated positive integers.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for (j, tok) in line.split_whitespace().enumerate() {
                let v = tok.parse::<u32>().map_err(|e| Error::PlanePartitionParse {
                    row: i + 1,
                    col: j + 1,
                    msg: format!("{:?}: {}", tok, e),
                })?;
                row.push(v);
            }
            rows.push(row);
        }
        PlanePartition::new(rows)
    }
}

/// The chain of diagonal slices μ_{min_m}, …, μ_{min_m + len − 1}; slices
/// outside the window are empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SliceChain {
    min_m: i64,
    slices: Vec<Partition>,
}

impl SliceChain {
    pub fn new(min_m: i64, slices: Vec<Partition>) -> Self {
        SliceChain { min_m, slices }
    }

    pub fn min_m(&self) -> i64 {
        self.min_m
    }

    pub fn max_m(&self) -> i64 {
        self.min_m + self.slices.len() as i64 - 1
    }

    pub fn slice(&self, m: i64) -> Partition {
        if m < self.min_m || m > self.max_m() {
            Partition::empty()
        } else {
            self.slices[(m - self.min_m) as usize].clone()
        }
    }

    /// Indexed slices in window order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Partition)> {
        self.slices.iter().enumerate().map(|(k, s)| (self.min_m + k as i64, s))
    }

    pub fn total_weight(&self) -> u32 {
        self.slices.iter().map(|s| s.weight()).sum()
    }

    /// Checks μ_m ≺ μ_{m+1} left of the main diagonal and μ_{m+1} ≺ μ_m
    /// right of it, including the implicit empty slices at both ends.
    pub fn is_interlacing(&self) -> bool {
        let lo = self.min_m.min(0) - 1;
        let hi = self.max_m().max(0) + 1;
        for m in lo..hi {
            let a = self.slice(m);
            let b = self.slice(m + 1);
            let ok = if m < 0 { interlaces(&a, &b) } else { interlaces(&b, &a) };
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Rebuilds the plane partition with the given diagonal slices. Errors when
/// the chain is not interlacing.
pub fn from_slices(chain: &SliceChain) -> Result<PlanePartition> {
    let lo = chain.min_m.min(0) - 1;
    for (off, m) in (lo..chain.max_m().max(0) + 1).enumerate() {
        let a = chain.slice(m);
        let b = chain.slice(m + 1);
        let ok = if m < 0 { interlaces(&a, &b) } else { interlaces(&b, &a) };
        if !ok {
            return Err(Error::NotInterlacing(off));
        }
    }
    let mut entries: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for (m, s) in chain.iter() {
        for (k0, &part) in s.parts().iter().enumerate() {
            let k = k0 + 1;
            let (i, j) = if m <= 0 {
                ((-m) as usize + k, k)
            } else {
                (k, m as usize + k)
            };
            entries.insert((i, j), part);
        }
    }
    let max_i = entries.keys().map(|&(i, _)| i).max().unwrap_or(0);
    let mut rows = Vec::with_capacity(max_i);
    for i in 1..=max_i {
        let mut row = Vec::new();
        for j in 1.. {
            match entries.get(&(i, j)) {
                Some(&v) => row.push(v),
                None => break,
            }
        }
        rows.push(row);
    }
    PlanePartition::new(rows)
}

fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap {
        Err(Error::OracleCapExceeded(n, cap))
    } else {
        Ok(())
    }
}

/// All rows fitting under `bound` componentwise with weight in 1..=max_w.
fn rows_under(bound: &[u32], max_w: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(bound: &[u32], idx: usize, budget: u32, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !stack.is_empty() {
            out.push(stack.clone());
        }
        if idx >= bound.len() || budget == 0 {
            return;
        }
        let hi = bound[idx].min(budget).min(stack.last().copied().unwrap_or(u32::MAX));
        for v in 1..=hi {
            stack.push(v);
            rec(bound, idx + 1, budget - v, stack, out);
            stack.pop();
        }
    }
    rec(bound, 0, max_w, &mut stack, &mut out);
    out
}

/// Direct recursive generator: all plane partitions of weight exactly `n`.
pub fn enumerate_pp(n: u32, cap: u32) -> Result<Vec<PlanePartition>> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(vec![PlanePartition::empty()]);
    }
    let mut out = Vec::new();
    let top_bound = vec![n; n as usize];
    fn rec(bound: &[u32], remaining: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<PlanePartition>) {
        if remaining == 0 {
            out.push(PlanePartition { rows: rows.clone() });
            return;
        }
        for row in rows_under(bound, remaining) {
            let w: u32 = row.iter().sum();
            rows.push(row);
            let row_ref = rows.last().unwrap().clone();
            rec(&row_ref, remaining - w, rows, out);
            rows.pop();
        }
    }
    let mut rows = Vec::new();
    rec(&top_bound, n, &mut rows, &mut out);
    out.sort();
    Ok(out)
}

/// All descending tails ν_1 ≻ ν_2 ≻ … ≻ ∅ below `sigma` with total weight
/// at most `budget`, grouped nothing; the tail ends once ∅ is reached.
fn descending_tails(sigma: &Partition, budget: u32) -> Vec<Vec<Partition>> {
    if sigma.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for nu in crate::partitions::enumerate_interlacing(sigma) {
        let w = nu.weight();
        if w > budget {
            continue;
        }
        for mut tail in descending_tails(&nu, budget - w) {
            tail.insert(0, nu.clone());
            out.push(tail);
        }
    }
    out
}

/// Slice-chain generator: all plane partitions of weight exactly `n`, built
/// as interlacing chains around a main-diagonal slice. Independent of
/// `enumerate_pp`, used to cross-check it.
pub fn enumerate_pp_via_chains(n: u32, cap: u32) -> Result<Vec<PlanePartition>> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(vec![PlanePartition::empty()]);
    }
    let mut out = Vec::new();
    for w0 in 1..=n {
        for mu0 in Partition::all_of_weight(w0) {
            let side_budget = n - w0;
            let lefts = descending_tails(&mu0, side_budget);
            let mut by_weight: BTreeMap<u32, Vec<Vec<Partition>>> = BTreeMap::new();
            for t in descending_tails(&mu0, side_budget) {
                let w: u32 = t.iter().map(|p| p.weight()).sum();
                by_weight.entry(w).or_default().push(t);
            }
            for left in &lefts {
                let wl: u32 = left.iter().map(|p| p.weight()).sum();
                if wl > side_budget {
                    continue;
                }
                let need = side_budget - wl;
                let Some(rights) = by_weight.get(&need) else { continue };
                for right in rights {
                    // left tail reversed gives the ascending side, then μ0,
                    // then the descending side; pad with empties.
                    let mut slices = Vec::with_capacity(left.len() + right.len() + 3);
                    slices.push(Partition::empty());
                    for p in left.iter().rev() {
                        slices.push(p.clone());
                    }
                    slices.push(mu0.clone());
                    slices.extend(right.iter().cloned());
                    slices.push(Partition::empty());
                    let min_m = -(left.len() as i64) - 1;
                    let chain = SliceChain::new(min_m, slices);
                    out.push(from_slices(&chain).expect("generated chains interlace"));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All diagonally strict plane partitions of weight exactly `n`.
pub fn enumerate_dspp(n: u32, cap: u32) -> Result<Vec<PlanePartition>> {
    check_cap(n, cap)?;
    Ok(enumerate_pp(n, n)?
        .into_iter()
        .filter(PlanePartition::is_diagonally_strict)
        .collect())
}

/// Σ over diagonally strict π̂ of weight n of 2^{p(π̂)}.
pub fn weighted_dspp_count(n: u32, cap: u32) -> Result<BigInt> {
    let mut total = BigInt::from(0);
    for pp in enumerate_dspp(n, cap)? {
        let p = pp.path_count()?;
        total += BigInt::from(1) << p;
    }
    Ok(total)
}
