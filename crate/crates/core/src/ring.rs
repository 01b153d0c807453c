//! Integer group rings of lattices and quotient lattices: the computational
//! model of R(T), Laurent polynomial rings, and K-theoretic Euler classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{quotient_lattice, IntMatrix, LatticeError, QuotientLattice};
use crate::Int;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("carrier mismatch between operands")]
    CarrierMismatch,
    #[error("zero weight yields a zero-divisor context")]
    ZeroWeight,
    #[error("exponent length {got} does not match carrier rank {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("lattice map expects domain rank {expected}, element has rank {got}")]
    MapDomain { expected: usize, got: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The lattice (or quotient lattice) whose group ring an element lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Free(usize),
    Quotient(Arc<QuotientLattice>),
}

impl Carrier {
    pub fn rank(&self) -> usize {
        match self {
            Carrier::Free(n) => *n,
            Carrier::Quotient(q) => q.ambient_rank(),
        }
    }

    fn normalize(&self, exp: &[Int]) -> Result<Vec<Int>, RingError> {
        if exp.len() != self.rank() {
            return Err(RingError::ExponentLength {
                expected: self.rank(),
                got: exp.len(),
            });
        }
        match self {
            Carrier::Free(_) => Ok(exp.to_vec()),
            Carrier::Quotient(q) => Ok(q.normal_form(exp)?),
        }
    }
}

/// Finitely supported integer-coefficient function on a lattice: an element
/// of Z[L]. Exponents are stored in carrier normal form; zero coefficients
/// are never stored, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElem {
    carrier: Carrier,
    terms: BTreeMap<Vec<Int>, Int>,
}

impl GroupRingElem {
    pub fn zero(carrier: Carrier) -> Self {
        GroupRingElem {
            carrier,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(carrier: Carrier) -> Self {
        let exp = vec![Int::zero(); carrier.rank()];
        Self::monomial(carrier, &exp, Int::one()).expect("zero exponent is valid")
    }

    pub fn constant(carrier: Carrier, c: Int) -> Self {
        let exp = vec![Int::zero(); carrier.rank()];
        Self::monomial(carrier, &exp, c).expect("zero exponent is valid")
    }

    /// c * e^exp
    pub fn monomial(carrier: Carrier, exp: &[Int], coeff: Int) -> Result<Self, RingError> {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(carrier.normalize(exp)?, coeff);
        }
        Ok(GroupRingElem { carrier, terms })
    }

    pub fn from_terms(
        carrier: Carrier,
        terms: impl IntoIterator<Item = (Vec<Int>, Int)>,
    ) -> Result<Self, RingError> {
        let mut out = Self::zero(carrier);
        for (exp, coeff) in terms {
            out.add_term(&exp, coeff)?;
        }
        Ok(out)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Int>, &Int)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[Int]) -> Int {
        match self.carrier.normalize(exp) {
            Ok(nf) => self.terms.get(&nf).cloned().unwrap_or_else(Int::zero),
            Err(_) => Int::zero(),
        }
    }

    fn add_term(&mut self, exp: &[Int], coeff: Int) -> Result<(), RingError> {
        if coeff.is_zero() {
            return Ok(());
        }
        let nf = self.carrier.normalize(exp)?;
        let entry = self.terms.entry(nf.clone()).or_insert_with(Int::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&nf);
        }
        Ok(())
    }

    fn check_carrier(&self, other: &Self) -> Result<(), RingError> {
        if self.carrier != other.carrier {
            return Err(RingError::CarrierMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_carrier(other)?;
        let mut out = self.clone();
        for (exp, c) in other.terms.iter() {
            out.add_term(exp, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GroupRingElem {
            carrier: self.carrier.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zero(self.carrier.clone());
        }
        GroupRingElem {
            carrier: self.carrier.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * k))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_carrier(other)?;
        let mut out = Self::zero(self.carrier.clone());
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let exp: Vec<Int> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(&exp, ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Sum of coefficients: the ring homomorphism Z[L] -> Z that forgets
    /// the lattice grading.
    pub fn augmentation(&self) -> Int {
        self.terms.values().sum()
    }

    /// Ring homomorphism induced on exponents by v -> h*v; the target is
    /// the free lattice of rank h.rows().
    pub fn apply_lattice_map(&self, h: &IntMatrix) -> Result<Self, RingError> {
        if h.cols() != self.carrier.rank() {
            return Err(RingError::MapDomain {
                expected: h.cols(),
                got: self.carrier.rank(),
            });
        }
        let mut out = Self::zero(Carrier::Free(h.rows()));
        for (exp, c) in self.terms.iter() {
            out.add_term(&h.mul_vec(exp), c.clone())?;
        }
        Ok(out)
    }

    /// Canonical text rendering: terms sorted by total degree descending
    /// and then lexicographically, e.g. "1 - x1^-1 + x1^-1*x2^-1".
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Vec<Int>, &Int)> = self.terms.iter().collect();
        terms.sort_by(|(ea, _), (eb, _)| {
            let da: Int = ea.iter().sum();
            let db: Int = eb.iter().sum();
            db.cmp(&da).then_with(|| ea.cmp(eb))
        });
        let mut out = String::new();
        for (i, (exp, coeff)) in terms.iter().enumerate() {
            let mono = render_monomial(exp);
            let abs = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    out.push('-');
                }
            } else if coeff.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if abs.is_one() && mono != "1" {
                out.push_str(&mono);
            } else if mono == "1" {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{}*{}", abs, mono));
            }
        }
        out
    }
}

fn render_monomial(exp: &[Int]) -> String {
    let parts: Vec<String> = exp
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| {
            if e.is_one() {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl std::fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

/// 1 - x_i^{-1} on the free lattice of rank `rank`.
pub fn one_minus_inverse_var(rank: usize, i: usize) -> GroupRingElem {
    let carrier = Carrier::Free(rank);
    let mut exp = vec![Int::zero(); rank];
    exp[i] = -Int::one();
    GroupRingElem::one(carrier.clone())
        .sub(&GroupRingElem::monomial(carrier, &exp, Int::one()).unwrap())
        .unwrap()
}

/// K-theoretic equivariant Euler class of a sum of weight lines:
/// the product of (1 - e^{-sigma_i}). Empty weight lists give 1.
pub fn euler_class(rank: usize, weights: &[Vec<Int>]) -> Result<GroupRingElem, RingError> {
    let carrier = Carrier::Free(rank);
    let mut out = GroupRingElem::one(carrier.clone());
    for w in weights {
        if w.iter().all(Zero::is_zero) {
            return Err(RingError::ZeroWeight);
        }
        let neg: Vec<Int> = w.iter().map(|x| -x.clone()).collect();
        let factor = GroupRingElem::one(carrier.clone())
            .sub(&GroupRingElem::monomial(carrier.clone(), &neg, Int::one())?)?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// True iff (1 - e^{-alpha}) divides f in the group ring of the free
/// carrier, decided by projecting to the group ring of lattice/(Z*alpha):
/// the kernel of that projection is exactly the ideal (1 - e^{-alpha}).
/// Handles non-primitive alpha correctly since the quotient may have
/// torsion.
pub fn divisible_by_one_minus(f: &GroupRingElem, alpha: &[Int]) -> Result<bool, RingError> {
    if alpha.iter().all(Zero::is_zero) {
        return Err(RingError::ZeroWeight);
    }
    let rank = match f.carrier() {
        Carrier::Free(n) => *n,
        Carrier::Quotient(_) => return Err(RingError::CarrierMismatch),
    };
    if alpha.len() != rank {
        return Err(RingError::ExponentLength {
            expected: rank,
            got: alpha.len(),
        });
    }
    let q = Arc::new(quotient_lattice(rank, &[alpha.to_vec()])?);
    let carrier = Carrier::Quotient(q);
    let mut image = GroupRingElem::zero(carrier);
    for (exp, c) in f.terms() {
        image.add_term(exp, c.clone())?;
    }
    Ok(image.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn mono(rank: usize, exp: &[i64], c: i64) -> GroupRingElem {
        GroupRingElem::monomial(Carrier::Free(rank), &iv(exp), Int::from(c)).unwrap()
    }

    fn random_elem(rng: &mut ChaCha8Rng, rank: usize, nterms: usize, bound: i64) -> GroupRingElem {
        let mut f = GroupRingElem::zero(Carrier::Free(rank));
        for _ in 0..nterms {
            let exp: Vec<i64> = (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect();
            let c = rng.gen_range(-5i64..=5);
            f = f.add(&mono(rank, &exp, c)).unwrap();
        }
        f
    }

    fn random_nonzero_weight(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Int> {
        loop {
            let w: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3i64..=3)).collect();
            if w.iter().any(|&x| x != 0) {
                return iv(&w);
            }
        }
    }

    #[test]
    fn difference_of_squares() {
        // (1 - t^-1)(1 + t^-1) = 1 - t^-2
        let one = GroupRingElem::one(Carrier::Free(1));
        let tinv = mono(1, &[-1], 1);
        let lhs = one.sub(&tinv).unwrap().mul(&one.add(&tinv).unwrap()).unwrap();
        let expected = one.sub(&mono(1, &[-2], 1)).unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn add_neg_is_zero() {
        let f = mono(2, &[1, -3], 4).add(&mono(2, &[0, 0], -2)).unwrap();
        assert!(f.add(&f.neg()).unwrap().is_zero());
    }

    #[test]
    fn product_expansion() {
        let f = one_minus_inverse_var(2, 0)
            .mul(&one_minus_inverse_var(2, 1))
            .unwrap();
        let expected = GroupRingElem::from_terms(
            Carrier::Free(2),
            vec![
                (iv(&[0, 0]), Int::from(1)),
                (iv(&[-1, 0]), Int::from(-1)),
                (iv(&[0, -1]), Int::from(-1)),
                (iv(&[-1, -1]), Int::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn carrier_mismatch_rejected() {
        let f = mono(1, &[1], 1);
        let g = mono(2, &[1, 0], 1);
        assert_eq!(f.add(&g), Err(RingError::CarrierMismatch));
    }

    #[test]
    fn euler_class_single_weight() {
        let e = euler_class(1, &[iv(&[1])]).unwrap();
        assert_eq!(e, GroupRingElem::one(Carrier::Free(1)).sub(&mono(1, &[-1], 1)).unwrap());
    }

    #[test]
    fn euler_class_empty_is_one() {
        assert_eq!(euler_class(2, &[]).unwrap(), GroupRingElem::one(Carrier::Free(2)));
    }

    #[test]
    fn euler_class_two_weights() {
        let e = euler_class(2, &[iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let expected = GroupRingElem::from_terms(
            Carrier::Free(2),
            vec![
                (iv(&[0, 0]), Int::from(1)),
                (iv(&[-1, 0]), Int::from(-1)),
                (iv(&[0, -1]), Int::from(-1)),
                (iv(&[-1, -1]), Int::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn euler_class_zero_weight_rejected() {
        assert_eq!(euler_class(2, &[iv(&[0, 0])]), Err(RingError::ZeroWeight));
    }

    #[test]
    fn divisibility_basic() {
        let alpha = iv(&[2, 1]);
        let e = euler_class(2, &[alpha.clone()]).unwrap();
        assert!(divisible_by_one_minus(&e, &alpha).unwrap());
        let two = GroupRingElem::constant(Carrier::Free(2), Int::from(2));
        assert!(!divisible_by_one_minus(&two, &alpha).unwrap());
    }

    #[test]
    fn divisibility_of_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rank = rng.gen_range(1usize..=3);
            let alpha = random_nonzero_weight(&mut rng, rank);
            let g = random_elem(&mut rng, rank, 4, 3);
            let f = euler_class(rank, &[alpha.clone()]).unwrap().mul(&g).unwrap();
            assert!(divisible_by_one_minus(&f, &alpha).unwrap());
        }
    }

    #[test]
    fn divisibility_zero_weight_rejected() {
        let f = mono(2, &[1, 0], 1);
        assert_eq!(
            divisible_by_one_minus(&f, &iv(&[0, 0])),
            Err(RingError::ZeroWeight)
        );
    }

    #[test]
    fn divisibility_with_non_primitive_weight() {
        // alpha = (2): quotient is Z/2, so e.g. 1 - e^{-2} is divisible
        // but 1 - e^{-1} is not.
        let alpha = iv(&[2]);
        let f = GroupRingElem::one(Carrier::Free(1)).sub(&mono(1, &[-2], 1)).unwrap();
        assert!(divisible_by_one_minus(&f, &alpha).unwrap());
        let g = GroupRingElem::one(Carrier::Free(1)).sub(&mono(1, &[-1], 1)).unwrap();
        assert!(!divisible_by_one_minus(&g, &alpha).unwrap());
    }

    #[test]
    fn augmentation_examples() {
        let f = GroupRingElem::one(Carrier::Free(1)).sub(&mono(1, &[-1], 1)).unwrap();
        assert!(f.augmentation().is_zero());
        assert_eq!(mono(2, &[2, 5], 3).augmentation(), Int::from(3));
        let e = euler_class(2, &[iv(&[1, 0]), iv(&[2, -1])]).unwrap();
        assert!(e.augmentation().is_zero());
    }

    #[test]
    fn augmentation_is_ring_hom() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let f = random_elem(&mut rng, 2, 4, 4);
            let g = random_elem(&mut rng, 2, 4, 4);
            assert_eq!(
                f.mul(&g).unwrap().augmentation(),
                f.augmentation() * g.augmentation()
            );
            assert_eq!(
                f.add(&g).unwrap().augmentation(),
                f.augmentation() + g.augmentation()
            );
        }
    }

    #[test]
    fn apply_lattice_map_identity() {
        let f = random_elem(&mut ChaCha8Rng::seed_from_u64(3), 3, 5, 4);
        assert_eq!(f.apply_lattice_map(&IntMatrix::identity(3)).unwrap(), f);
    }

    #[test]
    fn apply_lattice_map_collapses() {
        let f = mono(2, &[1, 0], 1).sub(&mono(2, &[0, 1], 1)).unwrap();
        let h = IntMatrix::from_i64_rows(&[&[1, 1]]);
        assert!(f.apply_lattice_map(&h).unwrap().is_zero());
    }

    // Lemma 2.1 shadow: Euler classes of nonzero weights are not zero
    // divisors.
    #[test]
    fn euler_classes_are_non_zero_divisors() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let rank = rng.gen_range(1usize..=3);
            let alpha = random_nonzero_weight(&mut rng, rank);
            let mut f = random_elem(&mut rng, rank, 4, 4);
            if f.is_zero() {
                f = GroupRingElem::one(Carrier::Free(rank));
            }
            let e = euler_class(rank, &[alpha]).unwrap();
            assert!(!e.mul(&f).unwrap().is_zero());
        }
    }

    // Lemma 4.2 shadow: for linearly independent sigma, tau the Euler
    // classes are relatively prime.
    #[test]
    fn relative_primality_of_independent_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut done = 0;
        while done < 100 {
            let rank = rng.gen_range(2usize..=3);
            let sigma = random_nonzero_weight(&mut rng, rank);
            let tau = random_nonzero_weight(&mut rng, rank);
            // skip dependent pairs
            let dep = (0..rank).all(|i| {
                (0..rank).all(|j| &sigma[i] * &tau[j] == &sigma[j] * &tau[i])
            });
            if dep {
                continue;
            }
            let f = random_elem(&mut rng, rank, 3, 3);
            let e_tau = euler_class(rank, &[tau]).unwrap();
            let prod = f.mul(&e_tau).unwrap();
            if divisible_by_one_minus(&prod, &sigma).unwrap() {
                assert!(divisible_by_one_minus(&f, &sigma).unwrap());
            }
            done += 1;
        }
    }

    #[test]
    fn render_canonical() {
        let f = one_minus_inverse_var(2, 0);
        assert_eq!(f.render(), "1 - x1^-1");
        let g = one_minus_inverse_var(2, 0)
            .mul(&one_minus_inverse_var(2, 1))
            .unwrap();
        assert_eq!(g.render(), "1 - x1^-1 - x2^-1 + x1^-1*x2^-1");
        assert_eq!(GroupRingElem::zero(Carrier::Free(2)).render(), "0");
    }
}
