//! The neutral-fermion Fock space over half-line Maya diagrams.
//!
//! Sites live on the half-line ≥ 0; the vacuum has black stones everywhere
//! there, and a basis state is the finite set of white stones. φ_m with
//! m > 0 whitens site m (creating the part m), φ_m with m < 0 blackens
//! site −m (removing the part), and φ_0 toggles the origin with a factor
//! 1/√2. States with an even number of white stones form the sector of the
//! vacuum and are labelled by strict partitions: the nonzero parts are the
//! white positions, a white stone at the origin padding an odd part count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{CoefScalar, QSeries};
use crate::partitions::StrictPartition;

/// A half-line Maya basis state: the white-stone positions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct HalfMayaState {
    whites: BTreeSet<u32>,
}

impl HalfMayaState {
    pub fn vacuum() -> Self {
        HalfMayaState::default()
    }

    /// The canonical state of a strict partition: whites at its parts, plus
    /// the origin when the part count is odd.
    pub fn from_strict(mu: &StrictPartition) -> Self {
        let mut whites: BTreeSet<u32> = mu.parts().iter().copied().collect();
        if mu.n_parts() % 2 == 1 {
            whites.insert(0);
        }
        HalfMayaState { whites }
    }

    /// The strict partition labelling this state; None outside the
    /// even-sector (odd white count).
    pub fn to_strict(&self) -> Option<StrictPartition> {
        if self.whites.len() % 2 != 0 {
            return None;
        }
        let parts: Vec<u32> = self.whites.iter().rev().copied().filter(|&p| p > 0).collect();
        StrictPartition::new(parts).ok()
    }

    pub fn weight(&self) -> u32 {
        self.whites.iter().sum()
    }

    pub fn whites(&self) -> &BTreeSet<u32> {
        &self.whites
    }

    fn blacks_below(&self, pos: u32) -> u32 {
        pos - self.whites.range(0..pos).count() as u32
    }

    /// The basis action of φ_m. Returns the new state together with its
    /// exact coefficient (±1, or ±1/√2 for φ_0); None when annihilated.
    pub fn apply_phi(&self, m: i64) -> Option<(HalfMayaState, CoefScalar)> {
        if m > 0 {
            // whiten site m: sign (−1)^{m+k−1} with k the position of m in
            // the black list
            let pos = m as u32;
            if self.whites.contains(&pos) {
                return None;
            }
            let k = self.blacks_below(pos) + 1;
            let sign = if (pos + k - 1) % 2 == 0 { 1 } else { -1 };
            let mut s = self.clone();
            s.whites.insert(pos);
            Some((s, CoefScalar::from_int(sign)))
        } else if m < 0 {
            // blacken site −m: sign (−1)^k with k the black count below
            let pos = (-m) as u32;
            if !self.whites.contains(&pos) {
                return None;
            }
            let k = self.blacks_below(pos);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut s = self.clone();
            s.whites.remove(&pos);
            Some((s, CoefScalar::from_int(sign)))
        } else {
            // φ_0 toggles the origin with coefficient 1/√2
            let mut s = self.clone();
            if self.whites.contains(&0) {
                s.whites.remove(&0);
            } else {
                s.whites.insert(0);
            }
            Some((s, CoefScalar::from_parts(0, 1, 1, 2)))
        }
    }
}

impl fmt::Display for HalfMayaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "half-maya(whites {:?})", self.whites)
    }
}

/// A finite linear combination of half-line Maya states.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeutralMayaVector {
    cap2: i64,
    terms: BTreeMap<HalfMayaState, QSeries>,
}

impl NeutralMayaVector {
    pub fn zero(cap2: i64) -> Self {
        NeutralMayaVector { cap2, terms: BTreeMap::new() }
    }

    pub fn vacuum(cap2: i64) -> Self {
        NeutralMayaVector::basis(cap2, HalfMayaState::vacuum())
    }

    pub fn basis(cap2: i64, s: HalfMayaState) -> Self {
        let mut v = NeutralMayaVector::zero(cap2);
        v.add_term(s, QSeries::one(cap2));
        v
    }

    pub fn cap2(&self) -> i64 {
        self.cap2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: HalfMayaState, c: QSeries) {
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

    pub fn add(&self, rhs: &NeutralMayaVector) -> NeutralMayaVector {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CoefScalar) -> NeutralMayaVector {
        self.mul_monomial(0, c)
    }

    pub fn mul_monomial(&self, exp2: i64, c: &CoefScalar) -> NeutralMayaVector {
        let mut out = NeutralMayaVector::zero(self.cap2);
        for (s, q) in &self.terms {
            out.add_term(s.clone(), q.mul_monomial(exp2, c));
        }
        out
    }

    pub fn coeff(&self, s: &HalfMayaState) -> QSeries {
        self.terms.get(s).cloned().unwrap_or_else(|| QSeries::zero(self.cap2))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HalfMayaState, &QSeries)> {
        self.terms.iter()
    }

    pub fn retain_weight_le(&mut self, max_weight: u32) {
        self.terms.retain(|s, _| s.weight() <= max_weight);
    }

    /// Linear extension of the basis action of φ_m.
    pub fn apply_phi(&self, m: i64) -> NeutralMayaVector {
        let mut out = NeutralMayaVector::zero(self.cap2);
        for (s, c) in &self.terms {
            if let Some((t, factor)) = s.apply_phi(m) {
                out.add_term(t, c.scale(&factor));
            }
        }
        out
    }

    /// λ_m = ½ Σ_j (−1)^{j+1} φ_j φ_{−j−m} for odd m. On a basis state the
    /// sum is finite: every index outside the occupied window annihilates.
    pub fn apply_lambda(&self, m: i64) -> Result<NeutralMayaVector> {
        if m % 2 == 0 {
            return Err(Error::EvenLambdaIndex(m));
        }
        let half = CoefScalar::from_ratio(1, 2);
        let mut out = NeutralMayaVector::zero(self.cap2);
        for (s, c) in &self.terms {
            let reach = s.whites.iter().last().copied().unwrap_or(0) as i64 + m.abs() + 2;
            for j in -reach..=reach {
                let Some((t1, f1)) = s.apply_phi(-j - m) else { continue };
                let Some((t2, f2)) = t1.apply_phi(j) else { continue };
                let j_sign = if (j + 1).rem_euclid(2) == 0 { 1 } else { -1 };
                let factor = &(&half * &CoefScalar::from_int(j_sign)) * &(&f1 * &f2);
                out.add_term(t2, c.scale(&factor));
            }
        }
        Ok(out)
    }
}

/// A finite linear combination of canonical even-sector basis states,
/// labelled by strict partitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeutralVector {
    cap2: i64,
    terms: BTreeMap<StrictPartition, QSeries>,
}

impl NeutralVector {
    pub fn zero(cap2: i64) -> Self {
        NeutralVector { cap2, terms: BTreeMap::new() }
    }

    pub fn vacuum(cap2: i64) -> Self {
        NeutralVector::basis(cap2, StrictPartition::empty())
    }

    pub fn basis(cap2: i64, mu: StrictPartition) -> Self {
        let mut v = NeutralVector::zero(cap2);
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

    pub fn add_term(&mut self, mu: StrictPartition, c: QSeries) {
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

    pub fn add(&self, rhs: &NeutralVector) -> NeutralVector {
        let mut out = self.clone();
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CoefScalar) -> NeutralVector {
        self.mul_monomial(0, c)
    }

    pub fn mul_monomial(&self, exp2: i64, c: &CoefScalar) -> NeutralVector {
        let mut out = NeutralVector::zero(self.cap2);
        for (mu, q) in &self.terms {
            out.add_term(mu.clone(), q.mul_monomial(exp2, c));
        }
        out
    }

    pub fn coeff(&self, mu: &StrictPartition) -> QSeries {
        self.terms.get(mu).cloned().unwrap_or_else(|| QSeries::zero(self.cap2))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StrictPartition, &QSeries)> {
        self.terms.iter()
    }

    pub fn retain_weight_le(&mut self, max_weight: u32) {
        self.terms.retain(|mu, _| mu.weight() <= max_weight);
    }

    pub fn recapped(&self, cap2: i64) -> NeutralVector {
        let mut out = NeutralVector::zero(cap2);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), c.recapped(cap2));
        }
        out
    }

    /// Canonical states map to their white-stone sets with coefficient
    /// exactly +1 (the α(−1)^r normalization cancels the mode signs).
    pub fn to_maya(&self) -> NeutralMayaVector {
        let mut out = NeutralMayaVector::zero(self.cap2);
        for (mu, c) in &self.terms {
            out.add_term(HalfMayaState::from_strict(mu), c.clone());
        }
        out
    }

    /// Inverse of [`NeutralVector::to_maya`]; panics on odd-sector states.
    pub fn from_maya(v: &NeutralMayaVector) -> NeutralVector {
        let mut out = NeutralVector::zero(v.cap2());
        for (s, c) in v.iter() {
            let mu = s
                .to_strict()
                .unwrap_or_else(|| panic!("state {} is not in the even sector", s));
            out.add_term(mu, c.clone());
        }
        out
    }

    /// λ_m on the even sector.
    pub fn apply_lambda(&self, m: i64) -> Result<NeutralVector> {
        Ok(NeutralVector::from_maya(&self.to_maya().apply_lambda(m)?))
    }
}

impl fmt::Display for NeutralVector {
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
pub fn neutral_inner(bra: &StrictPartition, v: &NeutralVector) -> QSeries {
    v.coeff(bra)
}

/// The padded mode list m_1 > … > m_{2r} ≥ 0 of a strict partition: its
/// parts, with a trailing zero when the part count is odd.
pub fn mode_list(mu: &StrictPartition) -> Vec<u32> {
    let mut modes: Vec<u32> = mu.parts().to_vec();
    if modes.len() % 2 == 1 {
        modes.push(0);
    }
    modes
}

/// α = √2 when the padded mode list ends in 0, else 1.
pub fn alpha(mu: &StrictPartition) -> CoefScalar {
    if mu.n_parts() % 2 == 1 {
        CoefScalar::sqrt2()
    } else {
        CoefScalar::one()
    }
}

/// Builds |μ̂⟩ by applying its canonical monomial α(−1)^r φ_{m_1}…φ_{m_2r}
/// to the vacuum with the basis mode actions.
pub fn canonical_monomial_vector(mu: &StrictPartition, cap2: i64) -> NeutralMayaVector {
    let modes = mode_list(mu);
    let r = modes.len() / 2;
    let mut v = NeutralMayaVector::vacuum(cap2);
    for &m in modes.iter().rev() {
        v = v.apply_phi(m as i64);
    }
    let sign = CoefScalar::from_int(if r % 2 == 0 { 1 } else { -1 });
    v.scale(&(&alpha(mu) * &sign))
}

/// Contracts ⟨μ̂| = α(−1)^{r+|μ̂|}⟨0|φ_{−m_2r}…φ_{−m_1} against a Maya
/// vector with ket-side mode actions, reading off the vacuum coefficient.
pub fn neutral_bra_contract(mu: &StrictPartition, v: &NeutralMayaVector) -> QSeries {
    let modes = mode_list(mu);
    let r = modes.len() / 2;
    let mut w = v.clone();
    for &m in modes.iter() {
        w = w.apply_phi(-(m as i64));
    }
    let exp = r as u32 + mu.weight();
    let sign = CoefScalar::from_int(if exp % 2 == 0 { 1 } else { -1 });
    w.coeff(&HalfMayaState::vacuum()).scale(&(&alpha(mu) * &sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: i64 = 16;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn half() -> CoefScalar {
        CoefScalar::from_ratio(1, 2)
    }

    fn inv_sqrt2() -> CoefScalar {
        CoefScalar::from_parts(0, 1, 1, 2)
    }

    #[test]
    fn phi_vacuum_actions() {
        let vac = NeutralMayaVector::vacuum(CAP);
        for m in 1..=5 {
            assert!(!vac.apply_phi(m).is_zero(), "φ_{} creates a part", m);
            assert!(vac.apply_phi(-m).is_zero(), "φ_{} kills the vacuum", -m);
        }
        // φ_0 toggles the origin with 1/√2
        let toggled = vac.apply_phi(0);
        let mut expect = NeutralMayaVector::zero(CAP);
        let mut s = HalfMayaState::vacuum();
        s.whites.insert(0);
        expect.add_term(s, QSeries::one(CAP).scale(&inv_sqrt2()));
        assert_eq!(toggled, expect);
    }

    #[test]
    fn phi_zero_squares_to_half() {
        for mu in StrictPartition::all_up_to(6) {
            let v = NeutralVector::basis(CAP, mu).to_maya();
            let twice = v.apply_phi(0).apply_phi(0);
            assert_eq!(twice, v.scale(&half()));
        }
    }

    #[test]
    fn neutral_anticommutators() {
        // [φ_m, φ_n]+ = (−1)^m δ_{m+n,0} on canonical states of weight ≤ 8,
        // indices |m|, |n| ≤ 5.
        for mu in StrictPartition::all_up_to(8) {
            let v = NeutralVector::basis(CAP, mu.clone()).to_maya();
            for m in -5i64..=5 {
                for n in -5i64..=5 {
                    let anti = v.apply_phi(n).apply_phi(m).add(&v.apply_phi(m).apply_phi(n));
                    if m + n == 0 {
                        let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
                        assert_eq!(
                            anti,
                            v.scale(&CoefScalar::from_int(sign)),
                            "[φ_{}, φ_{}]+ on {}",
                            m,
                            n,
                            mu
                        );
                    } else {
                        assert!(anti.is_zero(), "[φ_{}, φ_{}]+ on {}", m, n, mu);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_monomial_consistency() {
        for mu in StrictPartition::all_up_to(10) {
            let via_monomial = canonical_monomial_vector(&mu, CAP);
            let direct = NeutralVector::basis(CAP, mu.clone()).to_maya();
            assert_eq!(via_monomial, direct, "μ̂ = {}", mu);
        }
    }

    #[test]
    fn inner_product_via_contraction() {
        let all = StrictPartition::all_up_to(6);
        for mu in &all {
            for nu in &all {
                let ket = NeutralVector::basis(CAP, nu.clone()).to_maya();
                let got = neutral_bra_contract(mu, &ket);
                if mu == nu {
                    assert_eq!(got, QSeries::one(CAP), "⟨{}|{}⟩", mu, nu);
                } else {
                    assert!(got.is_zero(), "⟨{}|{}⟩ ≠ 0", mu, nu);
                }
            }
        }
    }

    #[test]
    fn neutral_inner_examples() {
        let vac = NeutralVector::vacuum(CAP);
        assert_eq!(neutral_inner(&StrictPartition::empty(), &vac), QSeries::one(CAP));
        assert!(neutral_inner(&sp(&[2, 1]), &NeutralVector::basis(CAP, sp(&[1]))).is_zero());
    }

    #[test]
    fn lambda_rejects_even_index() {
        let vac = NeutralVector::vacuum(CAP);
        assert_eq!(vac.apply_lambda(2).unwrap_err(), Error::EvenLambdaIndex(2));
        assert_eq!(vac.apply_lambda(0).unwrap_err(), Error::EvenLambdaIndex(0));
    }

    #[test]
    fn lambda_examples() {
        // λ_1 |{1}⟩ = −(1/√2)|∅⟩: the two surviving bilinear terms add up
        let one = NeutralVector::basis(CAP, sp(&[1]));
        let got = one.apply_lambda(1).unwrap();
        let expect = NeutralVector::vacuum(CAP).scale(&(-&inv_sqrt2()));
        assert_eq!(got, expect);

        assert!(NeutralVector::vacuum(CAP).apply_lambda(1).unwrap().is_zero());
        assert!(NeutralVector::vacuum(CAP).apply_lambda(3).unwrap().is_zero());
    }

    #[test]
    fn lambda_heisenberg() {
        // [λ_m, λ_n] = (m/2) δ_{m+n,0} on canonical states of weight ≤ 5,
        // odd |m|, |n| ≤ 5.
        for mu in StrictPartition::all_up_to(5) {
            let v = NeutralVector::basis(CAP, mu.clone());
            for m in [-5i64, -3, -1, 1, 3, 5] {
                for n in [-5i64, -3, -1, 1, 3, 5] {
                    let ab = v.apply_lambda(n).unwrap().apply_lambda(m).unwrap();
                    let ba = v.apply_lambda(m).unwrap().apply_lambda(n).unwrap();
                    let comm = ab.add(&ba.scale(&CoefScalar::from_int(-1)));
                    let expect = if m + n == 0 {
                        v.scale(&CoefScalar::from_ratio(m, 2))
                    } else {
                        NeutralVector::zero(CAP)
                    };
                    assert_eq!(comm, expect, "[λ_{}, λ_{}] on {}", m, n, mu);
                }
            }
        }
    }

    #[test]
    fn lambda_weight_shift() {
        for mu in StrictPartition::all_up_to(6) {
            let v = NeutralVector::basis(CAP, mu.clone());
            for m in [1i64, 3, 5] {
                for (nu, _) in v.apply_lambda(m).unwrap().iter() {
                    assert_eq!(nu.weight() as i64, mu.weight() as i64 - m);
                }
                for (nu, _) in v.apply_lambda(-m).unwrap().iter() {
                    assert_eq!(nu.weight() as i64, mu.weight() as i64 + m);
                }
            }
        }
    }
}
