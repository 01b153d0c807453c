//! GKM graphs and the fixed-point model: edge-congruence membership for
//! the Gamma-subring, restriction of presentation classes to fixed points,
//! Morse-basis rank certificates, and the cross-check harness tying the
//! quotient presentation to the fixed-point data.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::lattice::IntMatrix;
use crate::polytope::{DelzantPolytope, PolytopeError, Vertex};
use crate::rational::{dot_int_rat, rat_to_json, render_rat};
use crate::ring::{divisible_by_one_minus, Carrier, GroupRingElem, RingError};
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum GkmError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("GKM condition violated: {0}")]
    GKMViolation(String),
    #[error("direction is not generic: {0}")]
    NonGenericDirection(String),
}

/// Labelled graph (V, E, alpha): vertex ids with optional rational
/// positions, and lattice-weighted edges oriented from the smaller id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GKMGraph {
    /// rank of the acting torus: weights live in Z^rank
    pub rank: usize,
    /// per vertex id: its position (empty for abstract graphs)
    pub points: Vec<Vec<Rat>>,
    /// (from, to, weight) with from < to
    pub edges: Vec<(usize, usize, Vec<Int>)>,
}

impl GKMGraph {
    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    /// Weights must be nonzero and pairwise linearly independent at each
    /// vertex.
    pub fn validate(&self) -> Result<(), GkmError> {
        for (p, q, w) in &self.edges {
            if *p >= self.num_vertices() || *q >= self.num_vertices() {
                return Err(GkmError::GKMViolation(format!(
                    "edge ({p}, {q}) references a missing vertex"
                )));
            }
            if w.len() != self.rank {
                return Err(GkmError::GKMViolation(format!(
                    "edge ({p}, {q}) weight has length {}, expected {}",
                    w.len(),
                    self.rank
                )));
            }
            if w.iter().all(Zero::is_zero) {
                return Err(GkmError::GKMViolation(format!("edge ({p}, {q}) has zero weight")));
            }
        }
        for v in 0..self.num_vertices() {
            let incident: Vec<&Vec<Int>> = self
                .edges
                .iter()
                .filter(|(p, q, _)| *p == v || *q == v)
                .map(|(_, _, w)| w)
                .collect();
            for a in 0..incident.len() {
                for b in a + 1..incident.len() {
                    if linearly_dependent(incident[a], incident[b]) {
                        return Err(GkmError::GKMViolation(format!(
                            "vertex {v} has linearly dependent incident weights {:?} and {:?}",
                            incident[a], incident[b]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": (0..self.num_vertices()).map(|id| serde_json::json!({
                "id": id,
                "point": self.points[id].iter().map(rat_to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(p, q, w)| serde_json::json!({
                "from": p,
                "to": q,
                "weight": w.iter().map(|x| x.to_string().parse::<i64>()
                    .map(serde_json::Value::from)
                    .unwrap_or_else(|_| serde_json::Value::from(x.to_string())))
                    .collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn linearly_dependent(a: &[Int], b: &[Int]) -> bool {
    // all 2x2 minors vanish
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !(&a[i] * &b[j] - &a[j] * &b[i]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Map from vertex id to an element of the rank-n Laurent ring, modelling
/// a tuple in the direct sum of one R(T) per fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointClass {
    pub values: Vec<GroupRingElem>,
}

impl FixedPointClass {
    pub fn constant(num_vertices: usize, f: &GroupRingElem) -> Self {
        FixedPointClass {
            values: vec![f.clone(); num_vertices],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GroupRingElem::is_zero)
    }

    /// All vertices carry the same element.
    pub fn constant_value(&self) -> Option<&GroupRingElem> {
        let first = self.values.first()?;
        self.values.iter().all(|v| v == first).then_some(first)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .values
            .iter()
            .enumerate()
            .map(|(id, f)| (id.to_string(), f.render()))
            .collect();
        serde_json::json!(map)
    }
}

/// Vertices = polytope vertices (in enumeration order), edges = polytope
/// edges, weight = primitive direction from the lexicographically smaller
/// endpoint.
pub fn build_gkm_graph(p: &DelzantPolytope) -> Result<GKMGraph, GkmError> {
    p.ensure_valid()?;
    let vertices = p.enumerate_vertices()?;
    let edges = p
        .edges()?
        .into_iter()
        .map(|e| (e.endpoints.0, e.endpoints.1, e.direction))
        .collect();
    let graph = GKMGraph {
        rank: p.dim(),
        points: vertices.into_iter().map(|v| v.point).collect(),
        edges,
    };
    graph.validate()?;
    Ok(graph)
}

/// True iff h satisfies every edge congruence
/// h(p) - h(q) = 0 mod (1 - e^{-alpha_(p,q)}).
pub fn gamma_subring_contains(
    graph: &GKMGraph,
    h: &FixedPointClass,
) -> Result<bool, GkmError> {
    assert_eq!(h.values.len(), graph.num_vertices(), "class must cover all vertices");
    for (p, q, w) in &graph.edges {
        let diff = h.values[*p].sub(&h.values[*q])?;
        if !divisible_by_one_minus(&diff, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-vertex restriction data for the toric model: at each vertex v the
/// substitution x_i -> e^{-d_{v,i}} (i incident, d_{v,i} the direction of
/// the unique edge at v leaving the facet F_i) and x_i -> 1 otherwise is
/// the lattice map with matrix columns -d_{v,i}.
pub struct ToricRestriction {
    pub vertices: Vec<Vertex>,
    /// per vertex: n x N exponent-substitution matrix
    pub subst: Vec<IntMatrix>,
    /// per vertex: d_{v,i} keyed by incident facet index
    pub dirs: Vec<BTreeMap<usize, Vec<Int>>>,
    pub n: usize,
    pub num_facets: usize,
}

impl ToricRestriction {
    pub fn build(p: &DelzantPolytope) -> Result<Self, GkmError> {
        p.ensure_valid()?;
        let n = p.dim();
        let num_facets = p.num_facets();
        let vertices = p.enumerate_vertices()?;
        let edges = p.edges()?;
        let mut subst = Vec::with_capacity(vertices.len());
        let mut dirs = Vec::with_capacity(vertices.len());
        for (vid, v) in vertices.iter().enumerate() {
            // outgoing primitive directions of the edges at v
            let outgoing: Vec<Vec<Int>> = edges
                .iter()
                .filter_map(|e| {
                    if e.endpoints.0 == vid {
                        Some(e.direction.clone())
                    } else if e.endpoints.1 == vid {
                        Some(e.direction.iter().map(|x| -x.clone()).collect())
                    } else {
                        None
                    }
                })
                .collect();
            assert_eq!(outgoing.len(), n, "simple vertex has n edges");
            let mut vdirs: BTreeMap<usize, Vec<Int>> = BTreeMap::new();
            for &i in &v.incident {
                let a = &p.facets()[i].normal;
                let mut found: Option<&Vec<Int>> = None;
                for d in &outgoing {
                    let pairing: Int = a.iter().zip(d).map(|(x, y)| x * y).sum();
                    if pairing == Int::from(-1) {
                        assert!(found.is_none(), "duality: unique edge leaves each facet");
                        found = Some(d);
                    } else {
                        assert!(pairing.is_zero(), "duality: <a_j, d> in {{0, -1}} at a vertex");
                    }
                }
                vdirs.insert(i, found.expect("duality: some edge leaves the facet").clone());
            }
            let cols: Vec<Vec<Int>> = (0..num_facets)
                .map(|i| match vdirs.get(&i) {
                    Some(d) => d.iter().map(|x| -x.clone()).collect(),
                    None => vec![Int::from(0); n],
                })
                .collect();
            subst.push(IntMatrix::from_cols(&cols));
            dirs.push(vdirs);
        }
        Ok(ToricRestriction {
            vertices,
            subst,
            dirs,
            n,
            num_facets,
        })
    }

    pub fn restrict(&self, f: &GroupRingElem) -> Result<FixedPointClass, GkmError> {
        assert_eq!(f.carrier(), &Carrier::Free(self.num_facets));
        let values = self
            .subst
            .iter()
            .map(|m| f.apply_lattice_map(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FixedPointClass { values })
    }
}

/// Restriction of a rank-N Laurent class to the fixed points.
pub fn restrict_class(
    p: &DelzantPolytope,
    f: &GroupRingElem,
) -> Result<FixedPointClass, GkmError> {
    ToricRestriction::build(p)?.restrict(f)
}

/// One Morse class per vertex: tau_v = restriction of
/// prod_{i in B_v} (1 - x_i^{-1}) with B_v the incident facets whose
/// omitted edge descends along xi.
pub struct MorseBasis {
    /// vertex ids ordered by increasing <xi, v>
    pub order: Vec<usize>,
    pub classes: Vec<FixedPointClass>,
}

pub fn morse_basis(
    p: &DelzantPolytope,
    xi: &[Rat],
) -> Result<MorseBasis, GkmError> {
    let tr = ToricRestriction::build(p)?;
    // genericity: no edge direction pairs to zero with xi
    for dirs in &tr.dirs {
        for d in dirs.values() {
            if dot_int_rat(d, xi).is_zero() {
                return Err(GkmError::NonGenericDirection(format!(
                    "xi = ({}) annihilates the edge direction {d:?}",
                    xi.iter().map(render_rat).collect::<Vec<_>>().join(", ")
                )));
            }
        }
    }
    let mut order: Vec<usize> = (0..tr.vertices.len()).collect();
    order.sort_by(|&a, &b| {
        let ha = crate::rational::dot(&tr.vertices[a].point, xi);
        let hb = crate::rational::dot(&tr.vertices[b].point, xi);
        ha.cmp(&hb).then(a.cmp(&b))
    });
    let mut classes = Vec::with_capacity(order.len());
    for &v in &order {
        let mut f = GroupRingElem::one(Carrier::Free(tr.num_facets));
        for (&i, d) in &tr.dirs[v] {
            if dot_int_rat(d, xi).is_negative() {
                f = f.mul(&crate::ring::one_minus_inverse_var(tr.num_facets, i))?;
            }
        }
        classes.push(tr.restrict(&f)?);
    }
    Ok(MorseBasis { order, classes })
}

/// Triangularity certificate: rank = |V| and the restriction matrix
/// (tau_v |_w) in the xi-order, checked upper triangular with nonzero
/// diagonal.
pub struct RankCertificate {
    pub rank: usize,
    /// matrix[row][col] = tau_{order[row]} restricted at vertex order[col]
    pub matrix: Vec<Vec<GroupRingElem>>,
}

impl RankCertificate {
    pub fn is_triangular(&self) -> bool {
        for (r, row) in self.matrix.iter().enumerate() {
            if row[r].is_zero() {
                return false;
            }
            if row[..r].iter().any(|e| !e.is_zero()) {
                return false;
            }
        }
        true
    }
}

pub fn equivariant_rank_certificate(
    p: &DelzantPolytope,
    xi: &[Rat],
) -> Result<RankCertificate, GkmError> {
    let basis = morse_basis(p, xi)?;
    let matrix: Vec<Vec<GroupRingElem>> = basis
        .classes
        .iter()
        .map(|tau| basis.order.iter().map(|&w| tau.values[w].clone()).collect())
        .collect();
    let cert = RankCertificate {
        rank: basis.order.len(),
        matrix,
    };
    assert!(cert.is_triangular(), "Morse restriction matrix must be triangular");
    Ok(cert)
}

/// Free rank of K^0(X): the fixed-point count, certified by the
/// triangular Morse basis. The odd K-group vanishes for these spaces.
pub fn ordinary_k_rank(p: &DelzantPolytope) -> Result<usize, GkmError> {
    let xi = crate::rational::int_to_rat(&p.generic_direction()?);
    Ok(equivariant_rank_certificate(p, &xi)?.rank)
}

/// Cross-check of the quotient presentation against the fixed-point model.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// every I-generator restricts to the zero class
    pub i_generators_vanish: bool,
    /// every J-generator x^{beta*(m)} restricts to a constant class e^{m'}
    pub j_generators_constant: bool,
    /// rendered constant values of the J-monomials, per generator
    pub j_constants: Vec<String>,
    /// all randomized monomial restrictions satisfy the edge congruences
    pub monomials_in_gamma: bool,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.i_generators_vanish && self.j_generators_constant && self.monomials_in_gamma
    }
}

pub fn verify_presentation(
    p: &DelzantPolytope,
    monomial_samples: usize,
    seed: u64,
) -> Result<VerifyReport, GkmError> {
    let pres = crate::kirwan::presentation(p).map_err(flatten_kirwan)?;
    let graph = build_gkm_graph(p)?;
    let tr = ToricRestriction::build(p)?;
    let mut failures = Vec::new();

    let mut i_ok = true;
    for (gi, g) in pres.i_gens.iter().enumerate() {
        let restricted = tr.restrict(g)?;
        for (vid, val) in restricted.values.iter().enumerate() {
            if !val.is_zero() {
                i_ok = false;
                failures.push(format!(
                    "I-generator {} restricts to {} at vertex {vid}",
                    gi + 1,
                    val.render()
                ));
            }
        }
    }

    let mut j_ok = true;
    let mut j_constants = Vec::new();
    for (gj, g) in pres.j_gens.iter().enumerate() {
        // restrict the monomial x^{beta*(m)} = generator + 1
        let monomial = g.add(&GroupRingElem::one(Carrier::Free(tr.num_facets)))?;
        let restricted = tr.restrict(&monomial)?;
        match restricted.constant_value() {
            Some(c) if c.num_terms() == 1 && c.augmentation() == Int::from(1) => {
                j_constants.push(c.render());
            }
            _ => {
                j_ok = false;
                failures.push(format!(
                    "J-monomial {} does not restrict to a constant unit class",
                    gj + 1
                ));
                j_constants.push(String::new());
            }
        }
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut gamma_ok = true;
    for s in 0..monomial_samples {
        let exp: Vec<Int> = (0..tr.num_facets)
            .map(|_| Int::from(rng.gen_range(-3i64..=3)))
            .collect();
        let f = GroupRingElem::monomial(Carrier::Free(tr.num_facets), &exp, Int::from(1))?;
        let restricted = tr.restrict(&f)?;
        if !gamma_subring_contains(&graph, &restricted)? {
            gamma_ok = false;
            failures.push(format!("monomial sample {s} with exponent {exp:?} violates a congruence"));
        }
    }

    Ok(VerifyReport {
        i_generators_vanish: i_ok,
        j_generators_constant: j_ok,
        j_constants,
        monomials_in_gamma: gamma_ok,
        failures,
    })
}

fn flatten_kirwan(e: crate::kirwan::KirwanError) -> GkmError {
    match e {
        crate::kirwan::KirwanError::Polytope(p) => GkmError::Polytope(p),
        crate::kirwan::KirwanError::Ring(r) => GkmError::Ring(r),
        other => GkmError::GKMViolation(other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::rat_vec;
    use crate::ring::one_minus_inverse_var;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn graph_interval() {
        let g = build_gkm_graph(&fixtures::cp(1)).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.edges, vec![(0, 1, iv(&[1]))]);
        assert_eq!(g.points, vec![rat_vec(&[0]), rat_vec(&[1])]);
    }

    #[test]
    fn graph_square() {
        let g = build_gkm_graph(&fixtures::square()).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.edges.len(), 4);
        let mut weights: Vec<Vec<Int>> = g.edges.iter().map(|(_, _, w)| w.clone()).collect();
        weights.sort();
        assert_eq!(weights, vec![iv(&[0, 1]), iv(&[0, 1]), iv(&[1, 0]), iv(&[1, 0])]);
    }

    #[test]
    fn graph_simplex() {
        let g = build_gkm_graph(&fixtures::cp(2)).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges.len(), 3);
        let mut weights: Vec<Vec<Int>> = g.edges.iter().map(|(_, _, w)| w.clone()).collect();
        weights.sort();
        // orientation fixed from the lex-smaller vertex: (0,1) -> (1,0)
        // carries weight (1,-1)
        assert_eq!(weights, vec![iv(&[0, 1]), iv(&[1, -1]), iv(&[1, 0])]);
    }

    #[test]
    fn validate_rejects_dependent_weights() {
        let g = GKMGraph {
            rank: 2,
            points: vec![vec![], vec![], vec![]],
            edges: vec![(0, 1, iv(&[1, 0])), (0, 2, iv(&[2, 0]))],
        };
        assert!(matches!(g.validate(), Err(GkmError::GKMViolation(_))));
        let g = GKMGraph {
            rank: 2,
            points: vec![vec![], vec![]],
            edges: vec![(0, 1, iv(&[0, 0]))],
        };
        assert!(matches!(g.validate(), Err(GkmError::GKMViolation(_))));
    }

    #[test]
    fn gamma_membership_examples() {
        let g = build_gkm_graph(&fixtures::cp(1)).unwrap();
        let one = GroupRingElem::one(Carrier::Free(1));
        let zero = GroupRingElem::zero(Carrier::Free(1));
        // constant class
        let h = FixedPointClass::constant(2, &one);
        assert!(gamma_subring_contains(&g, &h).unwrap());
        // (1 - e^{-(1)}, 0): difference is the Euler class itself
        let euler = crate::ring::euler_class(1, &[iv(&[1])]).unwrap();
        let h = FixedPointClass {
            values: vec![euler, zero.clone()],
        };
        assert!(gamma_subring_contains(&g, &h).unwrap());
        // (1, 0): 1 is not divisible by the Euler class
        let h = FixedPointClass {
            values: vec![one, zero],
        };
        assert!(!gamma_subring_contains(&g, &h).unwrap());
    }

    // membership is invariant under multiplication by the unit e^w
    #[test]
    fn gamma_membership_unit_invariance() {
        let p = fixtures::square();
        let g = build_gkm_graph(&p).unwrap();
        let tr = ToricRestriction::build(&p).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let exp: Vec<Int> = (0..4).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect();
            let f = GroupRingElem::monomial(Carrier::Free(4), &exp, Int::from(1)).unwrap();
            let h = tr.restrict(&f).unwrap();
            let w: Vec<Int> = (0..2).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
            let unit = GroupRingElem::monomial(Carrier::Free(2), &w, Int::from(1)).unwrap();
            let hu = FixedPointClass {
                values: h.values.iter().map(|x| x.mul(&unit).unwrap()).collect(),
            };
            assert_eq!(
                gamma_subring_contains(&g, &h).unwrap(),
                gamma_subring_contains(&g, &hu).unwrap()
            );
        }
    }

    #[test]
    fn restriction_duality_invariant() {
        for (name, p) in fixtures::all_valid() {
            let tr = ToricRestriction::build(&p).unwrap();
            for (v, vert) in tr.vertices.iter().enumerate() {
                for (&i, d) in &tr.dirs[v] {
                    for &j in &vert.incident {
                        let a = &p.facets()[j].normal;
                        let pairing: Int = a.iter().zip(d).map(|(x, y)| x * y).sum();
                        let expected = if i == j { Int::from(-1) } else { Int::from(0) };
                        assert_eq!(pairing, expected, "{name}: duality at vertex {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_examples_cp1() {
        let p = fixtures::cp(1);
        // constants restrict to constants
        let one = GroupRingElem::one(Carrier::Free(2));
        let r = restrict_class(&p, &one).unwrap();
        assert_eq!(r.constant_value().unwrap(), &GroupRingElem::one(Carrier::Free(1)));
        // the I-generator dies at both vertices
        let f = one_minus_inverse_var(2, 0).mul(&one_minus_inverse_var(2, 1)).unwrap();
        assert!(restrict_class(&p, &f).unwrap().is_zero());
        // the J-monomial x1^-1 x2 restricts to the same unit at both vertices
        let m = GroupRingElem::monomial(Carrier::Free(2), &iv(&[-1, 1]), Int::from(1)).unwrap();
        let r = restrict_class(&p, &m).unwrap();
        let c = r.constant_value().expect("constant class");
        assert_eq!(c.num_terms(), 1);
        assert!(c.render() == "x1" || c.render() == "x1^-1");
    }

    #[test]
    fn morse_basis_interval() {
        let p = fixtures::cp(1);
        let basis = morse_basis(&p, &rat_vec(&[1])).unwrap();
        assert_eq!(basis.order, vec![0, 1]);
        // bottom vertex: empty product, constant 1
        assert_eq!(
            basis.classes[0].constant_value().unwrap(),
            &GroupRingElem::one(Carrier::Free(1))
        );
        // top vertex: zero below, Euler factor on the diagonal
        assert!(basis.classes[1].values[0].is_zero());
        let diag = &basis.classes[1].values[1];
        assert!(!diag.is_zero());
        assert_eq!(diag.augmentation(), Int::from(0));
    }

    #[test]
    fn morse_basis_rejects_nongeneric() {
        let p = fixtures::square();
        assert!(matches!(
            morse_basis(&p, &rat_vec(&[1, 0])),
            Err(GkmError::NonGenericDirection(_))
        ));
    }

    #[test]
    fn rank_certificates() {
        for (name, p, expected) in [
            ("cp1", fixtures::cp(1), 2),
            ("cp2", fixtures::cp(2), 3),
            ("square", fixtures::square(), 4),
            ("hirzebruch_1", fixtures::hirzebruch(1), 4),
        ] {
            let xi = crate::rational::int_to_rat(&p.generic_direction().unwrap());
            let cert = equivariant_rank_certificate(&p, &xi).unwrap();
            assert_eq!(cert.rank, expected, "{name}");
            assert!(cert.is_triangular(), "{name}");
            assert_eq!(ordinary_k_rank(&p).unwrap(), expected, "{name}");
        }
        assert_eq!(ordinary_k_rank(&fixtures::cp(3)).unwrap(), 4);
    }

    #[test]
    fn square_morse_matrix_xi_1_2() {
        let cert = equivariant_rank_certificate(&fixtures::square(), &rat_vec(&[1, 2])).unwrap();
        assert_eq!(cert.rank, 4);
        // strictly triangular: all entries below the diagonal vanish
        for (r, row) in cert.matrix.iter().enumerate() {
            for e in &row[..r] {
                assert!(e.is_zero());
            }
            assert!(!row[r].is_zero());
        }
    }

    #[test]
    fn verify_presentation_all_fixtures() {
        for (name, p) in fixtures::all_valid() {
            let report = verify_presentation(&p, 200, 0).unwrap();
            assert!(report.all_passed(), "{name}: {:?}", report.failures);
        }
    }

    #[test]
    fn random_monomials_satisfy_congruences() {
        use rand::{Rng, SeedableRng};
        let p = fixtures::hirzebruch(2);
        let g = build_gkm_graph(&p).unwrap();
        let tr = ToricRestriction::build(&p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let exp: Vec<Int> = (0..4).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
            let f = GroupRingElem::monomial(Carrier::Free(4), &exp, Int::from(1)).unwrap();
            assert!(gamma_subring_contains(&g, &tr.restrict(&f).unwrap()).unwrap());
        }
    }

    #[test]
    fn json_shapes() {
        let g = build_gkm_graph(&fixtures::cp(1)).unwrap();
        let json = g.to_json();
        assert_eq!(json["vertices"][0]["id"], 0);
        assert_eq!(json["edges"][0]["weight"], serde_json::json!([1]));
        let one = GroupRingElem::one(Carrier::Free(2));
        let h = restrict_class(&fixtures::cp(1), &one).unwrap();
        assert_eq!(h.to_json()["0"], "1");
    }
}
