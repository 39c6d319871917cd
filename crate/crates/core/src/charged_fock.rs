//! The charged-fermion Fock space over Maya diagrams.
//!
//! A basis state is stored as its deviation from the initial vacuum (black
//! stones at all sites ≥ 0, white below): `whites` are the extra white
//! stones at non-negative sites, `blacks` the extra black stones at
//! negative sites. Mode operators act on arbitrary deviations, so
//! intermediate states of nonzero charge are fine; only the conversion to
//! partition labels requires charge zero, where the deviation sets are
//! exactly the Frobenius coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{CoefScalar, QSeries};
use crate::partitions::{from_frobenius, to_frobenius, FrobeniusCoords, Partition};

/// A Maya-diagram basis state, as finite deviation sets from the vacuum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct MayaState {
    whites: BTreeSet<i64>,
    blacks: BTreeSet<i64>,
}

impl MayaState {
    pub fn vacuum() -> Self {
        MayaState::default()
    }

    /// The canonical state of a partition: whites at the hook arms, blacks
    /// at the (negative) leg positions.
    pub fn from_partition(mu: &Partition) -> Self {
        let fc = to_frobenius(mu);
        MayaState {
            whites: fc.arms().iter().copied().collect(),
            blacks: fc.legs().iter().copied().collect(),
        }
    }

    /// Net charge of the deviation (zero for canonical states).
    pub fn charge(&self) -> i64 {
        self.blacks.len() as i64 - self.whites.len() as i64
    }

    /// The partition labelling this state, when it has charge zero.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.charge() != 0 {
            return None;
        }
        let arms: Vec<i64> = self.whites.iter().rev().copied().collect();
        let legs: Vec<i64> = self.blacks.iter().copied().collect();
        let fc = FrobeniusCoords::new(arms, legs).ok()?;
        from_frobenius(&fc).ok()
    }

    /// Σ whites − Σ blacks; equals |μ| on canonical states.
    pub fn weight(&self) -> i64 {
        self.whites.iter().sum::<i64>() - self.blacks.iter().sum::<i64>()
    }

    pub fn is_black(&self, pos: i64) -> bool {
        if pos >= 0 {
            !self.whites.contains(&pos)
        } else {
            self.blacks.contains(&pos)
        }
    }

    /// Number of black stones strictly below `pos` (finite for any state).
    fn blacks_below(&self, pos: i64) -> i64 {
        let negative = self.blacks.range(..pos).count() as i64;
        if pos <= 0 {
            negative
        } else {
            negative + pos - self.whites.range(0..pos).count() as i64
        }
    }

    /// ψ_m: removes the black stone at m with sign (−1)^{k−1}, k its position
    /// in the black-stone list; annihilates when m is white.
    pub fn apply_psi(&self, m: i64) -> Option<(MayaState, i8)> {
        if !self.is_black(m) {
            return None;
        }
        let sign = if self.blacks_below(m) % 2 == 0 { 1 } else { -1 };
        let mut s = self.clone();
        if m >= 0 {
            s.whites.insert(m);
        } else {
            s.blacks.remove(&m);
        }
        Some((s, sign))
    }

    /// ψ*_m: inserts a black stone at m with sign (−1)^k, k the number of
    /// black stones below; annihilates when m is already black.
    pub fn apply_psi_star(&self, m: i64) -> Option<(MayaState, i8)> {
        if self.is_black(m) {
            return None;
        }
        let sign = if self.blacks_below(m) % 2 == 0 { 1 } else { -1 };
        let mut s = self.clone();
        if m >= 0 {
            s.whites.remove(&m);
        } else {
            s.blacks.insert(m);
        }
        Some((s, sign))
    }
}

impl fmt::Display for MayaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "maya(whites {:?}, blacks {:?})", self.whites, self.blacks)
    }
}

/// A finite linear combination of Maya states with [`QSeries`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MayaVector {
    cap2: i64,
    terms: BTreeMap<MayaState, QSeries>,
}

impl MayaVector {
    pub fn zero(cap2: i64) -> Self {
        MayaVector { cap2, terms: BTreeMap::new() }
    }

    pub fn vacuum(cap2: i64) -> Self {
        let mut v = MayaVector::zero(cap2);
        v.add_term(MayaState::vacuum(), QSeries::one(cap2));
        v
    }

    pub fn basis(cap2: i64, s: MayaState) -> Self {
        let mut v = MayaVector::zero(cap2);
        v.add_term(s, QSeries::one(cap2));
        v
    }

    pub fn cap2(&self) -> i64 {
        self.cap2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: MayaState, c: QSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(&c).expect("vector coefficients share caps");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &MayaVector) -> MayaVector {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CoefScalar) -> MayaVector {
        self.mul_monomial(0, c)
    }

    pub fn mul_monomial(&self, exp2: i64, c: &CoefScalar) -> MayaVector {
        let mut out = MayaVector::zero(self.cap2);
        for (s, q) in &self.terms {
            out.add_term(s.clone(), q.mul_monomial(exp2, c));
        }
        out
    }

    pub fn coeff(&self, s: &MayaState) -> QSeries {
        self.terms.get(s).cloned().unwrap_or_else(|| QSeries::zero(self.cap2))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MayaState, &QSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Linear extension of the basis action of ψ_m.
    pub fn apply_psi(&self, m: i64) -> MayaVector {
        let mut out = MayaVector::zero(self.cap2);
        for (s, c) in &self.terms {
            if let Some((t, sign)) = s.apply_psi(m) {
                out.add_term(t, c.scale(&CoefScalar::from_int(sign as i64)));
            }
        }
        out
    }

    /// Linear extension of the basis action of ψ*_m.
    pub fn apply_psi_star(&self, m: i64) -> MayaVector {
        let mut out = MayaVector::zero(self.cap2);
        for (s, c) in &self.terms {
            if let Some((t, sign)) = s.apply_psi_star(m) {
                out.add_term(t, c.scale(&CoefScalar::from_int(sign as i64)));
            }
        }
        out
    }

    /// The Heisenberg generator H_m = Σ_j ψ_j ψ*_{j+m}, m ≠ 0. On any basis
    /// state only finitely many j contribute: ψ*_{j+m} must hit a white
    /// stone and ψ_j a black one. H_0 is the charge operator and rejected.
    pub fn apply_h(&self, m: i64) -> Result<MayaVector> {
        if m == 0 {
            return Err(Error::ChargeOperator);
        }
        let mut out = MayaVector::zero(self.cap2);
        for (s, c) in &self.terms {
            let lo = s.blacks.iter().next().copied().unwrap_or(0);
            let max_w = s.whites.iter().last().copied().unwrap_or(-1);
            let hi = (max_w - m).max(-m - 1);
            for j in lo..=hi {
                if !s.is_black(j) || s.is_black(j + m) {
                    continue;
                }
                let (s1, sign1) = s.apply_psi_star(j + m).expect("white checked");
                let (s2, sign2) = s1.apply_psi(j).expect("black checked");
                let sign = (sign1 * sign2) as i64;
                out.add_term(s2, c.scale(&CoefScalar::from_int(sign)));
            }
        }
        Ok(out)
    }
}

/// A finite linear combination of canonical (charge-0) basis states,
/// labelled by partitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    cap2: i64,
    terms: BTreeMap<Partition, QSeries>,
}

impl FockVector {
    pub fn zero(cap2: i64) -> Self {
        FockVector { cap2, terms: BTreeMap::new() }
    }

    pub fn vacuum(cap2: i64) -> Self {
        FockVector::basis(cap2, Partition::empty())
    }

    pub fn basis(cap2: i64, mu: Partition) -> Self {
        let mut v = FockVector::zero(cap2);
        v.add_term(mu, QSeries::one(cap2));
        v
    }

    pub fn cap2(&self) -> i64 {
        self.cap2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mu: Partition, c: QSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(&c).expect("vector coefficients share caps");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CoefScalar) -> FockVector {
        self.mul_monomial(0, c)
    }

    pub fn mul_monomial(&self, exp2: i64, c: &CoefScalar) -> FockVector {
        let mut out = FockVector::zero(self.cap2);
        for (mu, q) in &self.terms {
            out.add_term(mu.clone(), q.mul_monomial(exp2, c));
        }
        out
    }

    pub fn coeff(&self, mu: &Partition) -> QSeries {
        self.terms.get(mu).cloned().unwrap_or_else(|| QSeries::zero(self.cap2))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &QSeries)> {
        self.terms.iter()
    }

    /// Drops basis states heavier than `max_weight`.
    pub fn retain_weight_le(&mut self, max_weight: u32) {
        self.terms.retain(|mu, _| mu.weight() <= max_weight);
    }

    /// Re-truncates every coefficient at a new cap.
    pub fn recapped(&self, cap2: i64) -> FockVector {
        let mut out = FockVector::zero(cap2);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), c.recapped(cap2));
        }
        out
    }

    /// Every canonical state maps to its Maya deviation with coefficient
    /// exactly +1 (the κ sign convention cancels the mode-action signs).
    pub fn to_maya(&self) -> MayaVector {
        let mut out = MayaVector::zero(self.cap2);
        for (mu, c) in &self.terms {
            out.add_term(MayaState::from_partition(mu), c.clone());
        }
        out
    }

    /// Inverse of [`FockVector::to_maya`]; panics on non-canonical states.
    pub fn from_maya(v: &MayaVector) -> FockVector {
        let mut out = FockVector::zero(v.cap2());
        for (s, c) in v.iter() {
            let mu = s
                .to_partition()
                .unwrap_or_else(|| panic!("state {} is not charge-0 canonical", s));
            out.add_term(mu, c.clone());
        }
        out
    }

    /// H_m on the charge-0 sector.
    pub fn apply_h(&self, m: i64) -> Result<FockVector> {
        Ok(FockVector::from_maya(&self.to_maya().apply_h(m)?))
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mu, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})|{}>", c, mu)?;
        }
        Ok(())
    }
}

/// ⟨bra|v⟩ under the orthonormal pairing of canonical states.
pub fn inner_product(bra: &Partition, v: &FockVector) -> QSeries {
    v.coeff(bra)
}

/// κ(μ) = Σ_k (m_k + k) over the Frobenius arms of μ: the sign exponent of
/// the canonical mode monomial.
pub fn kappa(mu: &Partition) -> i64 {
    let fc = to_frobenius(mu);
    fc.arms().iter().enumerate().map(|(k0, m)| m + k0 as i64 + 1).sum()
}

/// Builds |μ⟩ by applying its canonical mode monomial
/// (−1)^κ ψ_{m_1} … ψ_{m_r} ψ*_{n_1} … ψ*_{n_r} to the vacuum, using only
/// the basis mode actions. Tests compare this against the direct labelling.
pub fn canonical_monomial_vector(mu: &Partition, cap2: i64) -> MayaVector {
    let fc = to_frobenius(mu);
    let mut v = MayaVector::vacuum(cap2);
    for n in fc.legs().iter().rev() {
        v = v.apply_psi_star(*n);
    }
    for m in fc.arms().iter().rev() {
        v = v.apply_psi(*m);
    }
    let sign = if kappa(mu) % 2 == 0 { 1 } else { -1 };
    v.scale(&CoefScalar::from_int(sign))
}

/// Contracts ⟨μ| against a Maya vector by applying the final-state monomial
/// (−1)^κ ψ_{n_r} … ψ_{n_1} ψ*_{m_r} … ψ*_{m_1} with ket-side mode actions
/// and reading off the vacuum coefficient.
pub fn bra_contract(mu: &Partition, v: &MayaVector) -> QSeries {
    let fc = to_frobenius(mu);
    let mut w = v.clone();
    for m in fc.arms() {
        w = w.apply_psi_star(*m);
    }
    for n in fc.legs() {
        w = w.apply_psi(*n);
    }
    let sign = if kappa(mu) % 2 == 0 { 1 } else { -1 };
    w.coeff(&MayaState::vacuum()).scale(&CoefScalar::from_int(sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: i64 = 16;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn one() -> QSeries {
        QSeries::one(CAP)
    }

    #[test]
    fn vacuum_annihilation() {
        let vac = MayaVector::vacuum(CAP);
        for m in -5..0 {
            assert!(vac.apply_psi(m).is_zero(), "ψ_{} |0> ≠ 0", m);
        }
        for m in 0..5 {
            assert!(vac.apply_psi_star(m).is_zero(), "ψ*_{} |0> ≠ 0", m);
        }
        for m in 0..5 {
            assert!(!vac.apply_psi(m).is_zero());
        }
        for m in -5..0 {
            assert!(!vac.apply_psi_star(m).is_zero());
        }
    }

    #[test]
    fn single_box_canonical_form() {
        // ψ*_{-1} ψ_0 |0⟩ = +|(1)⟩, and the κ-signed monomial gives +1
        let v = MayaVector::vacuum(CAP).apply_psi(0).apply_psi_star(-1);
        let f = FockVector::from_maya(&v);
        assert_eq!(f, FockVector::basis(CAP, p(&[1])));
        assert_eq!(kappa(&p(&[1])), 1);
    }

    #[test]
    fn anticommutators() {
        // [ψ_m, ψ_n]+ = 0, [ψ*_m, ψ*_n]+ = 0, [ψ_m, ψ*_n]+ = δ_{mn},
        // exhaustively on canonical states of weight ≤ 6, indices |m| ≤ 6.
        let states: Vec<FockVector> = Partition::all_up_to(6)
            .into_iter()
            .map(|mu| FockVector::basis(CAP, mu))
            .collect();
        for f in &states {
            let v = f.to_maya();
            for m in -6..=6 {
                for n in -6..=6 {
                    let pp = v.apply_psi(n).apply_psi(m).add(&v.apply_psi(m).apply_psi(n));
                    assert!(pp.is_zero(), "[ψ_{}, ψ_{}]+ ≠ 0", m, n);
                    let ss = v
                        .apply_psi_star(n)
                        .apply_psi_star(m)
                        .add(&v.apply_psi_star(m).apply_psi_star(n));
                    assert!(ss.is_zero());
                    let ps = v.apply_psi_star(n).apply_psi(m).add(&v.apply_psi(m).apply_psi_star(n));
                    if m == n {
                        assert_eq!(ps, v, "[ψ_{}, ψ*_{}]+ ≠ 1", m, n);
                    } else {
                        assert!(ps.is_zero(), "[ψ_{}, ψ*_{}]+ ≠ 0", m, n);
                    }
                }
            }
        }
    }

    #[test]
    fn psi_star_nilpotent() {
        let v = MayaVector::vacuum(CAP).apply_psi(0);
        assert!(v.apply_psi_star(-1).apply_psi_star(-1).is_zero());
    }

    #[test]
    fn inner_product_examples() {
        let vac = FockVector::vacuum(CAP);
        assert_eq!(inner_product(&Partition::empty(), &vac), one());
        assert!(inner_product(&p(&[1]), &vac).is_zero());
    }

    #[test]
    fn inner_product_duality_small() {
        // ⟨μ|ν⟩ = δ_{μν} computed by contracting the final-state monomial
        // against the ket state with mode actions only.
        let all = Partition::all_up_to(4);
        for mu in &all {
            for nu in &all {
                let ket = FockVector::basis(CAP, nu.clone()).to_maya();
                let got = bra_contract(mu, &ket);
                if mu == nu {
                    assert_eq!(got, one(), "⟨{}|{}⟩", mu, nu);
                } else {
                    assert!(got.is_zero(), "⟨{}|{}⟩ ≠ 0", mu, nu);
                }
            }
        }
    }

    #[test]
    fn h_examples() {
        let vac = FockVector::vacuum(CAP);
        assert!(vac.apply_h(1).unwrap().is_zero());

        // H_1 |(1)⟩ = −|∅⟩ with the κ-signed basis and literal Maya signs;
        // the exponential Γ+ then reproduces the positive matrix elements.
        let one_box = FockVector::basis(CAP, p(&[1]));
        let expect = vac.scale(&CoefScalar::from_int(-1));
        assert_eq!(one_box.apply_h(1).unwrap(), expect);

        assert_eq!(vac.apply_h(0), Err(Error::ChargeOperator));
    }

    #[test]
    fn heisenberg_commutator() {
        // [H_m, H_n] = m δ_{m+n,0} on canonical states of weight ≤ 6,
        // |m|,|n| ≤ 4.
        for mu in Partition::all_up_to(6) {
            let v = FockVector::basis(CAP, mu.clone());
            for m in -4i64..=4 {
                for n in -4i64..=4 {
                    if m == 0 || n == 0 {
                        continue;
                    }
                    let ab = v.apply_h(n).unwrap().apply_h(m).unwrap();
                    let ba = v.apply_h(m).unwrap().apply_h(n).unwrap();
                    let comm = ab.add(&ba.scale(&CoefScalar::from_int(-1)));
                    let expect = if m + n == 0 {
                        v.scale(&CoefScalar::from_int(m))
                    } else {
                        FockVector::zero(CAP)
                    };
                    assert_eq!(comm, expect, "[H_{}, H_{}] on {}", m, n, mu);
                }
            }
        }
    }

    #[test]
    fn h_mode_commutators() {
        // [H_m, ψ_n] = ψ_{n−m} and [H_m, ψ*_n] = −ψ*_{m+n} on canonical
        // states of weight ≤ 4.
        for mu in Partition::all_up_to(4) {
            let v = FockVector::basis(CAP, mu).to_maya();
            for m in -3i64..=3 {
                if m == 0 {
                    continue;
                }
                for n in -3i64..=3 {
                    let lhs = v
                        .apply_psi(n)
                        .apply_h(m)
                        .unwrap()
                        .add(&v.apply_h(m).unwrap().apply_psi(n).scale(&CoefScalar::from_int(-1)));
                    assert_eq!(lhs, v.apply_psi(n - m), "[H_{}, ψ_{}]", m, n);

                    let lhs = v.apply_psi_star(n).apply_h(m).unwrap().add(
                        &v.apply_h(m).unwrap().apply_psi_star(n).scale(&CoefScalar::from_int(-1)),
                    );
                    assert_eq!(
                        lhs,
                        v.apply_psi_star(m + n).scale(&CoefScalar::from_int(-1)),
                        "[H_{}, ψ*_{}]",
                        m,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_monomial_consistency() {
        // (−1)^κ ψ…ψ*…|0⟩ lands on the deviation state with coefficient +1.
        for mu in Partition::all_up_to(8) {
            let via_monomial = canonical_monomial_vector(&mu, CAP);
            let direct = FockVector::basis(CAP, mu.clone()).to_maya();
            assert_eq!(via_monomial, direct, "μ = {}", mu);
        }
    }
}
