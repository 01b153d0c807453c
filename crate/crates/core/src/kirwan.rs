//! The symplectic-quotient pipeline for a linear torus action on C^N:
//! exact-sequence data from a Delzant polytope, the moment map, the finite
//! critical-value set Z, the kernel ideal generators, the Laurent
//! presentation of K*(X), and the gradient-flow retraction checker.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{self, IntMatrix};
use crate::polytope::{DelzantPolytope, PolytopeError};
use crate::rational::{dot, dot_int_rat, int_to_rat, norm_sq, solve_square};
use crate::ring::{one_minus_inverse_var, Carrier, GroupRingElem, RingError};
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum KirwanError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("sample {0} lies exactly on the flow-up/down invariant set")]
    SampleOnInvariantSet(usize),
    #[error("flow check requires a nonzero critical value with <iota* eta, xi> < 0")]
    InvalidCriticalValue,
}

/// The Delzant exact-sequence data 0 -> t^k -> t^N -> t^n -> 0 for a
/// polytope with N facets in R^n: beta maps the i-th basis vector to the
/// normal a_i, iota is a canonical basis of ker(beta), and the weights of
/// the residual T^k-action are the rows alpha_i of iota.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantData {
    pub n: usize,
    pub num_facets: usize,
    pub k: usize,
    /// n x N, columns are the facet normals a_i
    pub beta: IntMatrix,
    /// N x k, columns form the Hermite-canonical kernel basis of beta
    pub iota: IntMatrix,
    /// alpha_i = iota* u_i: the i-th row of iota, one k-vector per facet
    pub alphas: Vec<Vec<Int>>,
    pub eta: Vec<Rat>,
    /// the shifted level iota* eta
    pub iota_star_eta: Vec<Rat>,
}

pub fn build_delzant_data(p: &DelzantPolytope) -> Result<DelzantData, KirwanError> {
    p.ensure_valid()?;
    let n = p.dim();
    let num_facets = p.num_facets();
    let k = num_facets - n;
    let beta = IntMatrix::from_cols(
        &p.facets().iter().map(|f| f.normal.clone()).collect::<Vec<_>>(),
    );
    let kernel = lattice::kernel_basis(&beta);
    assert_eq!(kernel.len(), k, "kernel rank must be N - n");
    let iota = IntMatrix::from_cols(&kernel);
    if k > 0 {
        let prod = beta.mul(&iota);
        for i in 0..n {
            for j in 0..k {
                assert!(prod.at(i, j).is_zero(), "iota must span ker(beta)");
            }
        }
    }
    let alphas: Vec<Vec<Int>> = (0..num_facets).map(|i| iota.row(i)).collect();
    let eta: Vec<Rat> = p.facets().iter().map(|f| f.offset.clone()).collect();
    let iota_star_eta: Vec<Rat> = (0..k)
        .map(|j| {
            (0..num_facets)
                .map(|i| Rat::from_integer(iota.at(i, j).clone()) * &eta[i])
                .sum()
        })
        .collect();
    Ok(DelzantData {
        n,
        num_facets,
        k,
        beta,
        iota,
        alphas,
        eta,
        iota_star_eta,
    })
}

impl DelzantData {
    pub fn alphas_rat(&self) -> Vec<Vec<Rat>> {
        self.alphas.iter().map(|a| int_to_rat(a)).collect()
    }

    /// Moment map of the residual T^k-action, as a function of the exact
    /// squared moduli |z_i|^2: -1/2 sum s_i alpha_i + iota* eta.
    pub fn moment_map_value(&self, sq_moduli: &[Rat]) -> Vec<Rat> {
        assert_eq!(sq_moduli.len(), self.num_facets);
        let half = Rat::new(Int::from(1), Int::from(2));
        let mut out = self.iota_star_eta.clone();
        for (s, alpha) in sq_moduli.iter().zip(&self.alphas) {
            for (o, a) in out.iter_mut().zip(alpha) {
                *o -= &half * s * Rat::from_integer(a.clone());
            }
        }
        out
    }
}

/// Exact norm-minimizer of the shifted cone { sum c_i gens_i + shift : c_i >= 0 }.
///
/// Enumerates linearly independent generator subsets B, solves the normal
/// equations over the rationals, and accepts a point iff its coefficients
/// are nonnegative and the KKT residual <g, x> >= 0 holds against every
/// generator; the accepted point of minimal norm is the unique minimizer.
pub fn nearest_point_shifted_cone(gens: &[Vec<Rat>], shift: &[Rat]) -> Vec<Rat> {
    let dim = shift.len();
    let m = gens.len();
    assert!(m <= 31, "too many generators for subset enumeration");
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for mask in 0u32..(1 << m) {
        let subset: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let x = if subset.is_empty() {
            shift.to_vec()
        } else {
            // normal equations: Gram c = -G^T shift; singular Gram means
            // the subset is dependent and its span is covered elsewhere
            let gram: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| subset.iter().map(|&j| dot(&gens[i], &gens[j])).collect())
                .collect();
            let rhs: Vec<Rat> = subset.iter().map(|&i| -dot(&gens[i], shift)).collect();
            let Some(c) = solve_square(&gram, &rhs) else {
                continue;
            };
            if c.iter().any(|ci| ci.is_negative()) {
                continue;
            }
            let mut x = shift.to_vec();
            for (ci, &gi) in c.iter().zip(&subset) {
                for (xj, gj) in x.iter_mut().zip(&gens[gi]) {
                    *xj += ci * gj;
                }
            }
            x
        };
        if gens.iter().any(|g| dot(g, &x).is_negative()) {
            continue;
        }
        let nsq = norm_sq(&x);
        match &best {
            Some((bn, _)) if *bn <= nsq => {}
            _ => best = Some((nsq, x)),
        }
    }
    let (_, x) = best.expect("KKT point exists for every convex cone projection");
    debug_assert_eq!(x.len(), dim);
    x
}

/// True iff target lies in the cone spanned by gens (exact membership via
/// the projection subproblem: distance zero).
pub fn cone_contains(gens: &[Vec<Rat>], target: &[Rat]) -> bool {
    let shift: Vec<Rat> = target.iter().map(|t| -t.clone()).collect();
    nearest_point_shifted_cone(gens, &shift)
        .iter()
        .all(Zero::is_zero)
}

/// One critical value of ||Phi||^2: the norm minimizer xi_A of
/// cone({alpha_i}_{i in A}) - iota* eta, the subset A generating it, and
/// the negative-pairing coordinate set S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalDatum {
    pub xi: Vec<Rat>,
    /// lexicographically smallest facet subset achieving xi (0-based)
    pub subset_a: Vec<usize>,
    /// { j : <alpha_j, xi> < 0 } (0-based)
    pub negative_set: Vec<usize>,
}

/// S = { j : <alpha_j, xi> < 0 }, 0-based.
pub fn negative_coordinate_set(d: &DelzantData, xi: &[Rat]) -> Vec<usize> {
    d.alphas
        .iter()
        .enumerate()
        .filter(|(_, a)| dot_int_rat(a, xi).is_negative())
        .map(|(j, _)| j)
        .collect()
}

/// The finite set Z of critical values of ||Phi||^2, one xi_A per subset
/// A of facets, deduplicated by exact value and sorted lexicographically.
pub fn critical_values_z(d: &DelzantData) -> Vec<CriticalDatum> {
    let shift: Vec<Rat> = d.iota_star_eta.iter().map(|x| -x.clone()).collect();
    let alphas = d.alphas_rat();
    let n = d.num_facets;
    assert!(n <= 31, "facet count too large for subset enumeration");
    let mut by_xi: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let gens: Vec<Vec<Rat>> = subset.iter().map(|&i| alphas[i].clone()).collect();
        let xi = nearest_point_shifted_cone(&gens, &shift);
        match by_xi.get_mut(&xi) {
            Some(existing) => {
                if subset < *existing {
                    *existing = subset;
                }
            }
            None => {
                by_xi.insert(xi, subset);
            }
        }
    }
    let out: Vec<CriticalDatum> = by_xi
        .into_iter()
        .map(|(xi, subset_a)| {
            let negative_set = negative_coordinate_set(d, &xi);
            CriticalDatum {
                xi,
                subset_a,
                negative_set,
            }
        })
        .collect();
    assert!(out.len() <= 1usize << n, "Z must be finite, at most 2^N");
    out
}

/// One ideal generator per minimal non-face S: prod_{i in S} (1 - x_i^{-1}),
/// expanded in the rank-N Laurent ring.
pub fn kernel_generators(p: &DelzantPolytope) -> Result<Vec<GroupRingElem>, KirwanError> {
    let n = p.num_facets();
    let mut out = Vec::new();
    for s in p.minimal_nonfaces()? {
        let mut g = GroupRingElem::one(Carrier::Free(n));
        for i in s {
            g = g.mul(&one_minus_inverse_var(n, i))?;
        }
        out.push(g);
    }
    Ok(out)
}

/// The n lattice relations x^{beta*(m_j)} - 1 for the standard basis m_j
/// of Z^n, with beta*(m)_i = <m, a_i>.
pub fn relations_j(d: &DelzantData) -> Vec<GroupRingElem> {
    let carrier = Carrier::Free(d.num_facets);
    (0..d.n)
        .map(|j| {
            let exp = d.beta.row(j);
            GroupRingElem::monomial(carrier.clone(), &exp, Int::from(1))
                .expect("beta row has carrier rank")
                .sub(&GroupRingElem::one(carrier.clone()))
                .expect("same carrier")
        })
        .collect()
}

/// Generators-and-relations presentation of K*(X): the Laurent ring on
/// x_1..x_N modulo the non-face ideal I and the lattice-relation ideal J.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub num_generators: usize,
    pub i_gens: Vec<GroupRingElem>,
    pub j_gens: Vec<GroupRingElem>,
    /// the minimal non-faces behind the I-generators (0-based)
    pub nonfaces: Vec<Vec<usize>>,
}

pub fn presentation(p: &DelzantPolytope) -> Result<Presentation, KirwanError> {
    let d = build_delzant_data(p)?;
    let nonfaces = p.minimal_nonfaces()?;
    Ok(Presentation {
        num_generators: p.num_facets(),
        i_gens: kernel_generators(p)?,
        j_gens: relations_j(&d),
        nonfaces,
    })
}

impl Presentation {
    pub fn to_json(&self, d: &DelzantData) -> serde_json::Value {
        let m_vectors: Vec<Vec<i64>> = (0..d.n)
            .map(|j| (0..d.n).map(|i| if i == j { 1 } else { 0 }).collect())
            .collect();
        serde_json::json!({
            "generators": self.num_generators,
            "I": self.i_gens.iter().zip(&self.nonfaces).map(|(g, s)| serde_json::json!({
                "terms": g.render(),
                "S": s.iter().map(|i| i + 1).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "J": self.j_gens.iter().zip(&m_vectors).map(|(g, m)| serde_json::json!({
                "terms": g.render(),
                "m": m,
            })).collect::<Vec<_>>(),
            "nonfaces": self.nonfaces.iter()
                .map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Closed-form negative gradient flow of Phi^xi on C^N: each coordinate
/// scales by exp(<alpha_i, xi> * t).
pub fn gradient_flow(
    d: &DelzantData,
    xi: &[Rat],
    z0: &[(f64, f64)],
    t: f64,
) -> Vec<(f64, f64)> {
    assert_eq!(z0.len(), d.num_facets);
    d.alphas
        .iter()
        .zip(z0)
        .map(|(alpha, &(re, im))| {
            let rate = rat_to_f64(&dot_int_rat(alpha, xi));
            let factor = (rate * t).exp();
            (re * factor, im * factor)
        })
        .collect()
}

/// Phi^xi as a float, for flow diagnostics.
pub fn phi_xi(d: &DelzantData, xi: &[Rat], z: &[(f64, f64)]) -> f64 {
    let base = rat_to_f64(&dot(&d.iota_star_eta, xi));
    let mut acc = base;
    for (alpha, &(re, im)) in d.alphas.iter().zip(z) {
        let rate = rat_to_f64(&dot_int_rat(alpha, xi));
        acc -= 0.5 * (re * re + im * im) * rate;
    }
    acc
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap();
    let d: f64 = r.denom().to_string().parse().unwrap();
    n / d
}

#[derive(Clone, Debug)]
pub struct FlowSampleResult {
    /// first grid time at which Phi^xi drops below c - eps
    pub hit_time: Option<f64>,
    pub monotone: bool,
}

#[derive(Clone, Debug)]
pub struct FlowReport {
    pub eps: f64,
    pub t_max: f64,
    pub samples: Vec<FlowSampleResult>,
}

impl FlowReport {
    pub fn all_passed(&self) -> bool {
        self.samples.iter().all(|s| s.hit_time.is_some() && s.monotone)
    }
}

/// Checks the retraction statement along the closed-form flow: for each
/// sample in M_c^+ off the invariant set, Phi^xi is monotone nonincreasing
/// on a 100-step grid and crosses below c - eps within t_max, where
/// c = 0 and 0 < eps < <-iota* eta, xi>.
pub fn flow_retraction_check(
    d: &DelzantData,
    xi: &[Rat],
    samples: &[Vec<(f64, f64)>],
    t_max: f64,
    tol: f64,
) -> Result<FlowReport, KirwanError> {
    let level = dot(&d.iota_star_eta, xi);
    if xi.iter().all(Zero::is_zero) || !level.is_negative() {
        return Err(KirwanError::InvalidCriticalValue);
    }
    let eps = 0.5 * (-rat_to_f64(&level));
    let s_set = negative_coordinate_set(d, xi);
    for (idx, z0) in samples.iter().enumerate() {
        if !s_set.is_empty() && s_set.iter().all(|&j| z0[j].0 == 0.0 && z0[j].1 == 0.0) {
            return Err(KirwanError::SampleOnInvariantSet(idx));
        }
    }
    const GRID: usize = 100;
    let mut out = Vec::with_capacity(samples.len());
    for z0 in samples {
        let mut hit_time = None;
        let mut monotone = true;
        let mut prev = f64::INFINITY;
        for step in 0..=GRID {
            let t = t_max * step as f64 / GRID as f64;
            let phi = phi_xi(d, xi, &gradient_flow(d, xi, z0, t));
            if phi > prev + tol {
                monotone = false;
            }
            prev = phi;
            if hit_time.is_none() && phi <= -eps + tol {
                hit_time = Some(t);
            }
        }
        out.push(FlowSampleResult { hit_time, monotone });
    }
    Ok(FlowReport {
        eps,
        t_max,
        samples: out,
    })
}

/// Seeded samples for the flow checker: every coordinate nonzero, scaled
/// so the starting point lies in M_c^+ (Phi^xi(z0) < eps).
pub fn flow_samples(
    d: &DelzantData,
    xi: &[Rat],
    count: usize,
    seed: u64,
) -> Vec<Vec<(f64, f64)>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let neg_rate_sum: f64 = d
        .alphas
        .iter()
        .map(|a| {
            let r = rat_to_f64(&dot_int_rat(a, xi));
            if r < 0.0 {
                -r
            } else {
                0.0
            }
        })
        .sum();
    let eps = 0.5 * (-rat_to_f64(&dot(&d.iota_star_eta, xi)));
    let max_mag = if neg_rate_sum > 0.0 {
        (eps / neg_rate_sum).sqrt().min(1.0)
    } else {
        1.0
    };
    (0..count)
        .map(|_| {
            (0..d.num_facets)
                .map(|_| {
                    let mag = rng.gen_range(0.05 * max_mag..max_mag);
                    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
                    (mag * phase.cos(), mag * phase.sin())
                })
                .collect()
        })
        .collect()
}
