//! Partitions, strict partitions, Frobenius (hook) coordinates, and the
//! interlacing relation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition: a weakly decreasing sequence of positive integers.
/// Trailing zeros are never stored; the empty sequence is the empty
/// partition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, trimming trailing zeros. Errors unless the parts
    /// are weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{:?} is not weakly decreasing", parts)));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The j-th part, 1-based, zero beyond the length.
    pub fn part(&self, j: usize) -> u32 {
        if j == 0 || j > self.parts.len() {
            0
        } else {
            self.parts[j - 1]
        }
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(1) as usize;
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// All partitions of weight exactly `n`.
    pub fn all_of_weight(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        gen_parts(n, n, &mut stack, &mut out);
        out
    }

    /// All partitions of weight at most `n`, ordered by weight.
    pub fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_weight).collect()
    }
}

fn gen_parts(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: stack.clone() });
        return;
    }
    let hi = remaining.min(max_part);
    for p in (1..=hi).rev() {
        stack.push(p);
        gen_parts(remaining - p, p, stack, out);
        stack.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidPartition(format!("bad part {:?}: {}", t, e)))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// True iff ν interlaces μ (written ν ≺ μ): μ_j ≥ ν_j ≥ μ_{j+1} for every j,
/// with parts beyond the length read as zero. The zero padding forces
/// len(ν) ≤ len(μ) and ν_j ≤ μ_j, so interlacing never raises the weight.
pub fn interlaces(nu: &Partition, mu: &Partition) -> bool {
    let l = mu.len().max(nu.len());
    (1..=l).all(|j| mu.part(j) >= nu.part(j) && nu.part(j) >= mu.part(j + 1))
}

/// The finite set {ν : ν ≺ μ}, built from the independent choices
/// ν_j ∈ [μ_{j+1}, μ_j].
pub fn enumerate_interlacing(mu: &Partition) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    for j in 1..=mu.len() {
        let lo = mu.part(j + 1);
        let hi = mu.part(j);
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
        for prefix in &out {
            for v in lo..=hi {
                let mut parts = prefix.parts.clone();
                if v > 0 {
                    parts.push(v);
                }
                next.push(Partition { parts });
            }
        }
        out = next;
    }
    out
}

/// All μ with ν ≺ μ and |μ| ≤ max_weight (the partitions reached from ν by
/// a weight-raising interlacing step).
pub fn enumerate_interlacing_above(nu: &Partition, max_weight: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    if nu.weight() > max_weight {
        return out;
    }
    // μ_1 ∈ [ν_1, ν_1 + budget]; μ_j ∈ [ν_j, μ_{j-1} and ν_{j-1}] for j ≥ 2.
    let mut stack: Vec<u32> = Vec::new();
    fn rec(nu: &Partition, j: usize, budget: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if j > nu.len() + 1 {
            return;
        }
        let lo = nu.part(j);
        let hi = if j == 1 {
            nu.part(1) + budget
        } else {
            nu.part(j - 1).min(lo + budget)
        };
        if j == nu.len() + 1 {
            // last optional part; choosing 0 closes the partition here
            out.push(Partition { parts: stack.clone() });
            for v in lo.max(1)..=hi {
                let mut parts = stack.clone();
                parts.push(v);
                out.push(Partition { parts });
            }
            return;
        }
        for v in lo..=hi {
            if v == 0 {
                out.push(Partition { parts: stack.clone() });
                continue;
            }
            stack.push(v);
            rec(nu, j + 1, budget - (v - lo), stack, out);
            stack.pop();
        }
    }
    rec(nu, 1, max_weight - nu.weight(), &mut stack, &mut out);
    out
}

/// Frobenius (hook) coordinates of a partition: strictly decreasing arm
/// lengths m_1 > … > m_r ≥ 0 and strictly increasing negative leg positions
/// n_1 < … < n_r < 0. The hook at diagonal j contributes m_j − n_j boxes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrobeniusCoords {
    arms: Vec<i64>,
    legs: Vec<i64>,
}

impl FrobeniusCoords {
    pub fn new(arms: Vec<i64>, legs: Vec<i64>) -> Result<Self> {
        if arms.len() != legs.len() {
            return Err(Error::InvalidFrobenius(format!(
                "length mismatch: {} arms vs {} legs",
                arms.len(),
                legs.len()
            )));
        }
        if arms.windows(2).any(|w| w[0] <= w[1]) || arms.last().is_some_and(|&m| m < 0) {
            return Err(Error::InvalidFrobenius(format!(
                "arms {:?} must be strictly decreasing and non-negative",
                arms
            )));
        }
        if legs.windows(2).any(|w| w[0] >= w[1]) || legs.last().is_some_and(|&n| n >= 0) {
            return Err(Error::InvalidFrobenius(format!(
                "legs {:?} must be strictly increasing and negative",
                legs
            )));
        }
        Ok(FrobeniusCoords { arms, legs })
    }

    pub fn arms(&self) -> &[i64] {
        &self.arms
    }

    pub fn legs(&self) -> &[i64] {
        &self.legs
    }

    pub fn rank(&self) -> usize {
        self.arms.len()
    }

    /// Σ (m_j − n_j), the weight of the reconstructed partition.
    pub fn weight(&self) -> i64 {
        self.arms.iter().sum::<i64>() - self.legs.iter().sum::<i64>()
    }
}

/// Hook decomposition of μ over the diagonal boxes j = 1..r. The hook at j
/// extends p_j = μ'_j − j boxes below the diagonal and μ_j − j to its
/// right, so the arm is the column overhang m_j = μ'_j − j and the leg
/// position n_j = −(μ_j − j + 1) tracks the row length including the
/// diagonal box.
pub fn to_frobenius(mu: &Partition) -> FrobeniusCoords {
    let conj = mu.conjugate();
    let mut arms = Vec::new();
    let mut legs = Vec::new();
    for j in 1.. {
        if mu.part(j) as usize >= j {
            arms.push(conj.part(j) as i64 - j as i64);
            legs.push(-(mu.part(j) as i64 - j as i64 + 1));
        } else {
            break;
        }
    }
    FrobeniusCoords { arms, legs }
}

/// Rebuilds the partition whose hooks are the given coordinates.
pub fn from_frobenius(fc: &FrobeniusCoords) -> Result<Partition> {
    // Re-validate so hand-built coordinates are checked.
    let fc = FrobeniusCoords::new(fc.arms.clone(), fc.legs.clone())?;
    let r = fc.rank();
    let mut parts: Vec<u32> = (1..=r).map(|j| (-fc.legs[j - 1] + j as i64 - 1) as u32).collect();
    // Rows below the diagonal block come from the column arms.
    let mut i = r + 1;
    loop {
        let row = (1..=r).filter(|&j| fc.arms[j - 1] + j as i64 >= i as i64).count() as u32;
        if row == 0 {
            break;
        }
        parts.push(row);
        i += 1;
    }
    Partition::new(parts)
}

/// A strict partition: strictly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{:?} is not strictly decreasing",
                parts
            )));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> Self {
        StrictPartition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of (nonzero) parts.
    pub fn n_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn part(&self, j: usize) -> u32 {
        if j == 0 || j > self.parts.len() {
            0
        } else {
            self.parts[j - 1]
        }
    }

    pub fn contains_part(&self, p: u32) -> bool {
        p > 0 && self.parts.contains(&p)
    }

    /// All strict partitions of weight exactly `n`.
    pub fn all_of_weight(n: u32) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        gen_strict(n, n, &mut stack, &mut out);
        out
    }

    pub fn all_up_to(n: u32) -> Vec<StrictPartition> {
        (0..=n).flat_map(StrictPartition::all_of_weight).collect()
    }
}

fn gen_strict(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
    if remaining == 0 {
        out.push(StrictPartition { parts: stack.clone() });
        return;
    }
    let hi = remaining.min(max_part);
    for p in (1..=hi).rev() {
        stack.push(p);
        gen_strict(remaining - p, p.saturating_sub(1), stack, out);
        stack.pop();
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// Interlacing for strict partitions: the same padded inequality chain.
pub fn strict_interlaces(nu: &StrictPartition, mu: &StrictPartition) -> bool {
    let l = mu.n_parts().max(nu.n_parts());
    (1..=l).all(|j| mu.part(j) >= nu.part(j) && nu.part(j) >= mu.part(j + 1))
}

/// All strict ν̂ with ν̂ ≺ μ̂.
pub fn enumerate_strict_interlacing(mu: &StrictPartition) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(mu: &StrictPartition, j: usize, stack: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
        if j > mu.n_parts() {
            out.push(StrictPartition { parts: stack.clone() });
            return;
        }
        for v in (mu.part(j + 1)..=mu.part(j)).rev() {
            if v == 0 {
                out.push(StrictPartition { parts: stack.clone() });
                continue;
            }
            if stack.last().is_some_and(|&last| last <= v) {
                continue;
            }
            stack.push(v);
            rec(mu, j + 1, stack, out);
            stack.pop();
        }
    }
    rec(mu, 1, &mut stack, &mut out);
    out.sort();
    out.dedup();
    out
}

/// All strict μ̂ with ν̂ ≺ μ̂ and |μ̂| ≤ max_weight.
pub fn enumerate_strict_interlacing_above(
    nu: &StrictPartition,
    max_weight: u32,
) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    if nu.weight() > max_weight {
        return out;
    }
    let mut stack: Vec<u32> = Vec::new();
    fn rec(
        nu: &StrictPartition,
        j: usize,
        budget: u32,
        stack: &mut Vec<u32>,
        out: &mut Vec<StrictPartition>,
    ) {
        if j > nu.n_parts() + 1 {
            return;
        }
        let lo = nu.part(j);
        let hi = if j == 1 {
            nu.part(1) + budget
        } else {
            // μ_j ≤ ν_{j-1} keeps ν ≺ μ; strictness of μ is checked below.
            nu.part(j - 1).min(lo + budget)
        };
        if j == nu.n_parts() + 1 {
            out.push(StrictPartition { parts: stack.clone() });
            for v in lo.max(1)..=hi {
                if stack.last().is_some_and(|&last| last <= v) {
                    continue;
                }
                let mut parts = stack.clone();
                parts.push(v);
                out.push(StrictPartition { parts });
            }
            return;
        }
        for v in lo..=hi {
            if v == 0 {
                out.push(StrictPartition { parts: stack.clone() });
                continue;
            }
            if stack.last().is_some_and(|&last| last <= v) {
                continue;
            }
            stack.push(v);
            rec(nu, j + 1, budget - (v - lo), stack, out);
            stack.pop();
        }
    }
    rec(nu, 1, max_weight - nu.weight(), &mut stack, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Count of nonzero parts of ν̂ that do not occur as parts of μ̂.
pub fn new_parts_count(nu: &StrictPartition, mu: &StrictPartition) -> u32 {
    nu.parts.iter().filter(|&&p| !mu.contains_part(p)).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(StrictPartition::new(vec![2, 2]).is_err());
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[2, 1]), &p(&[3, 1])));
        assert!(interlaces(&Partition::empty(), &Partition::empty()));
        assert!(!interlaces(&p(&[3]), &p(&[2, 2])));
        // padded tail: an extra part in ν must be zero
        assert!(!interlaces(&p(&[2, 2, 1]), &p(&[2, 2])));
        assert!(interlaces(&p(&[2, 2]), &p(&[2, 2])));
    }

    #[test]
    fn enumerate_interlacing_examples() {
        let ones: Vec<Partition> = enumerate_interlacing(&p(&[1]));
        assert_eq!(ones.len(), 2);
        assert!(ones.contains(&Partition::empty()));
        assert!(ones.contains(&p(&[1])));

        let mut got = enumerate_interlacing(&p(&[2, 1]));
        got.sort();
        let mut expect = vec![p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])];
        expect.sort();
        assert_eq!(got, expect);

        assert_eq!(enumerate_interlacing(&Partition::empty()), vec![Partition::empty()]);
    }

    #[test]
    fn enumerate_interlacing_cardinality() {
        // |{ν ≺ μ}| = Π (μ_j − μ_{j+1} + 1), exhaustively for |μ| ≤ 8.
        for mu in Partition::all_up_to(8) {
            let got = enumerate_interlacing(&mu);
            let expect: u64 = (1..=mu.len())
                .map(|j| (mu.part(j) - mu.part(j + 1) + 1) as u64)
                .product();
            assert_eq!(got.len() as u64, expect, "μ = {}", mu);
            for nu in &got {
                assert!(interlaces(nu, &mu));
            }
            // and nothing outside the set interlaces μ
            let all = Partition::all_up_to(mu.weight());
            let direct: Vec<_> = all.into_iter().filter(|nu| interlaces(nu, &mu)).collect();
            assert_eq!(direct.len(), got.len(), "μ = {}", mu);
        }
    }

    #[test]
    fn interlacing_antisymmetry() {
        let all = Partition::all_up_to(8);
        for a in &all {
            for b in &all {
                if interlaces(a, b) && interlaces(b, a) {
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn enumerate_above_matches_direct_filter() {
        for nu in Partition::all_up_to(6) {
            let mut got = enumerate_interlacing_above(&nu, 8);
            got.sort();
            got.dedup();
            let mut expect: Vec<_> = Partition::all_up_to(8)
                .into_iter()
                .filter(|mu| interlaces(&nu, mu))
                .collect();
            expect.sort();
            assert_eq!(got, expect, "ν = {}", nu);
        }
    }

    #[test]
    fn frobenius_of_figure_partition() {
        // The 18-box partition 5+4+4+2+2+1 peels into hooks whose column
        // arms are μ'_j − j = (5,3,0) with row legs −(μ_j − j + 1) =
        // (−5,−3,−2). These are the coordinates under which the vertex
        // operator product expansions reproduce the interlacing sums.
        let mu = p(&[5, 4, 4, 2, 2, 1]);
        let fc = to_frobenius(&mu);
        assert_eq!(fc.arms(), &[5, 3, 0]);
        assert_eq!(fc.legs(), &[-5, -3, -2]);
        assert_eq!(from_frobenius(&fc).unwrap(), mu);
        assert_eq!(fc.weight(), 18);
    }

    #[test]
    fn frobenius_transposes_with_conjugation() {
        // conjugating a partition swaps arm m_j with row overhang −n_j − 1
        for mu in Partition::all_up_to(9) {
            let fc = to_frobenius(&mu);
            let fct = to_frobenius(&mu.conjugate());
            let swapped: Vec<i64> = fct.legs().iter().map(|n| -n - 1).collect();
            assert_eq!(fc.arms(), &swapped[..]);
        }
    }

    #[test]
    fn frobenius_empty() {
        let fc = to_frobenius(&Partition::empty());
        assert_eq!(fc.rank(), 0);
        assert_eq!(from_frobenius(&fc).unwrap(), Partition::empty());
    }

    #[test]
    fn frobenius_round_trip_and_weight() {
        for mu in Partition::all_up_to(10) {
            let fc = to_frobenius(&mu);
            assert_eq!(from_frobenius(&fc).unwrap(), mu, "μ = {}", mu);
            assert_eq!(fc.weight(), mu.weight() as i64);
        }
    }

    #[test]
    fn frobenius_rejects_malformed() {
        assert!(FrobeniusCoords::new(vec![1, 1], vec![-2, -1]).is_err());
        assert!(FrobeniusCoords::new(vec![1], vec![-2, -1]).is_err());
        assert!(FrobeniusCoords::new(vec![1, 0], vec![-1, -2]).is_err());
        assert!(FrobeniusCoords::new(vec![1], vec![1]).is_err());
    }

    #[test]
    fn strict_interlacing_examples() {
        assert!(strict_interlaces(&sp(&[1]), &sp(&[1])));
        assert!(strict_interlaces(&StrictPartition::empty(), &sp(&[1])));
        assert!(strict_interlaces(&sp(&[2, 1]), &sp(&[3, 1])));
        assert!(!strict_interlaces(&sp(&[3]), &sp(&[2, 1])));
    }

    #[test]
    fn enumerate_strict_matches_filter() {
        for mu in StrictPartition::all_up_to(9) {
            let got = enumerate_strict_interlacing(&mu);
            let expect: Vec<_> = StrictPartition::all_up_to(mu.weight())
                .into_iter()
                .filter(|nu| strict_interlaces(nu, &mu))
                .collect();
            assert_eq!(got.len(), expect.len(), "μ̂ = {}", mu);
            for nu in &got {
                assert!(expect.contains(nu));
                // Lemma 2 case split is exhaustive: part counts differ by at most one.
                let d = mu.n_parts() as i64 - nu.n_parts() as i64;
                assert!(d == 0 || d == 1);
            }
        }
        for nu in StrictPartition::all_up_to(5) {
            let got = enumerate_strict_interlacing_above(&nu, 8);
            let expect: Vec<_> = StrictPartition::all_up_to(8)
                .into_iter()
                .filter(|mu| strict_interlaces(&nu, mu))
                .collect();
            assert_eq!(got.len(), expect.len(), "ν̂ = {}", nu);
        }
    }

    #[test]
    fn display_and_parse() {
        let mu = p(&[5, 4, 4, 2, 2, 1]);
        assert_eq!(mu.to_string(), "5,4,4,2,2,1");
        assert_eq!("5,4,4,2,2,1".parse::<Partition>().unwrap(), mu);
        assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "-");
        assert!("3,4".parse::<Partition>().is_err());
    }

    #[test]
    fn strict_partition_counts() {
        // numbers of partitions into distinct parts: 1,1,1,2,2,3,4,5,6,8,10
        let q: Vec<usize> = (0..=10).map(|n| StrictPartition::all_of_weight(n).len()).collect();
        assert_eq!(q, vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]);
    }
}
