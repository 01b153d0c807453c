//! Delzant polytopes in H-representation: exact vertex and edge
//! enumeration, Delzant validation, minimal non-faces, and generic
//! direction search.
//!
//! Vertex enumeration is brute force over n-subsets of facets; exactness
//! trumps asymptotics at desk scale (N up to ~16). Facet indices are
//! 0-based internally and 1-based in user-facing output.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, IntMatrix};
use crate::rational::{self, dot_int_rat, rat_from_json, rat_to_json};
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope is unbounded: recession direction {0:?}")]
    UnboundedPolytope(Vec<Int>),
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is not Delzant:\n{0}")]
    NotDelzant(ValidationReport),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// One facet inequality <x, normal> <= offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

/// Compact polytope { x : <x, a_i> <= eta_i } with primitive integer
/// normals and exact rational offsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantPolytope {
    dim: usize,
    facets: Vec<Facet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rat>,
    /// facet indices I_v (0-based) whose equalities the point satisfies
    pub incident: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// indices into the vertex list, first < second
    pub endpoints: (usize, usize),
    /// primitive integer direction from the first endpoint toward the second
    pub direction: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}{}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                if c.details.is_empty() {
                    String::new()
                } else {
                    format!(": {}", c.details)
                }
            )?;
        }
        Ok(())
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

impl DelzantPolytope {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self, PolytopeError> {
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(PolytopeError::InvalidInput(format!(
                    "facet {} normal has length {}, expected {}",
                    i + 1,
                    f.normal.len(),
                    dim
                )));
            }
            if f.normal.iter().all(Zero::is_zero) {
                return Err(PolytopeError::InvalidInput(format!(
                    "facet {} has zero normal",
                    i + 1
                )));
            }
        }
        Ok(DelzantPolytope { dim, facets })
    }

    pub fn from_i64(dim: usize, data: &[(&[i64], i64)]) -> Self {
        let facets = data
            .iter()
            .map(|(normal, offset)| Facet {
                normal: normal.iter().map(|&x| Int::from(x)).collect(),
                offset: rational::rat(*offset),
            })
            .collect();
        Self::new(dim, facets).expect("literal polytope data must be well-formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// A nonzero primitive recession direction, if one exists. The
    /// recession cone { d : <a_i, d> <= 0 } is nonzero iff it contains a
    /// line (kernel of the stacked normals) or an extreme ray (tight on
    /// some rank n-1 subset of normals).
    fn recession_direction(&self) -> Option<Vec<Int>> {
        let n = self.dim;
        if n == 0 {
            return None;
        }
        let all = IntMatrix::from_rows(
            &self.facets.iter().map(|f| f.normal.clone()).collect::<Vec<_>>(),
        );
        if let Some(d) = lattice::kernel_basis(&all).into_iter().next() {
            return Some(d);
        }
        let feasible = |d: &[Int]| {
            self.facets
                .iter()
                .all(|f| !dot_int(&f.normal, d).is_positive())
        };
        for subset in combinations(self.facets.len(), n - 1) {
            let sub = IntMatrix::from_rows(
                &subset
                    .iter()
                    .map(|&i| self.facets[i].normal.clone())
                    .collect::<Vec<_>>(),
            );
            let kernel = lattice::kernel_basis(&sub);
            if kernel.len() != 1 {
                continue;
            }
            let d = kernel.into_iter().next().unwrap();
            if feasible(&d) {
                return Some(d);
            }
            let neg: Vec<Int> = d.iter().map(|x| -x.clone()).collect();
            if feasible(&neg) {
                return Some(neg);
            }
        }
        None
    }

    /// Exact vertex enumeration, deterministic (lexicographic by point).
    pub fn enumerate_vertices(&self) -> Result<Vec<Vertex>, PolytopeError> {
        if let Some(d) = self.recession_direction() {
            return Err(PolytopeError::UnboundedPolytope(d));
        }
        let n = self.dim;
        let mut found: Vec<Vertex> = Vec::new();
        for subset in combinations(self.facets.len(), n) {
            let a: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| rational::int_to_rat(&self.facets[i].normal))
                .collect();
            let b: Vec<Rat> = subset.iter().map(|&i| self.facets[i].offset.clone()).collect();
            let Some(point) = rational::solve_square(&a, &b) else {
                continue;
            };
            let mut incident = BTreeSet::new();
            let mut feasible = true;
            for (j, f) in self.facets.iter().enumerate() {
                let lhs = dot_int_rat(&f.normal, &point);
                if lhs == f.offset {
                    incident.insert(j);
                } else if lhs > f.offset {
                    feasible = false;
                    break;
                }
            }
            if feasible && !found.iter().any(|v| v.point == point) {
                found.push(Vertex { point, incident });
            }
        }
        if found.is_empty() {
            return Err(PolytopeError::EmptyPolytope);
        }
        found.sort_by(|a, b| a.point.cmp(&b.point));
        Ok(found)
    }

    /// Pass/fail report for the Delzant conditions: bounded, feasible,
    /// primitive normals, simple, smooth.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let recession = self.recession_direction();
        checks.push(Check {
            name: "bounded".into(),
            pass: recession.is_none(),
            details: recession
                .as_ref()
                .map(|d| format!("recession direction {:?}", d))
                .unwrap_or_default(),
        });

        let bad_normals: Vec<usize> = self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| !lattice::is_primitive(&f.normal).unwrap_or(false))
            .map(|(i, _)| i + 1)
            .collect();
        checks.push(Check {
            name: "primitive normals".into(),
            pass: bad_normals.is_empty(),
            details: if bad_normals.is_empty() {
                String::new()
            } else {
                format!("non-primitive normals at facets {:?}", bad_normals)
            },
        });

        if recession.is_some() {
            return ValidationReport { checks };
        }

        let vertices = match self.enumerate_vertices() {
            Ok(v) => v,
            Err(_) => {
                checks.push(Check {
                    name: "feasible".into(),
                    pass: false,
                    details: "no vertices: polytope is empty".into(),
                });
                return ValidationReport { checks };
            }
        };
        checks.push(Check {
            name: "feasible".into(),
            pass: true,
            details: format!("{} vertices", vertices.len()),
        });

        let non_simple: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.incident.len() != self.dim)
            .map(|(i, _)| i)
            .collect();
        checks.push(Check {
            name: "simple".into(),
            pass: non_simple.is_empty(),
            details: if non_simple.is_empty() {
                String::new()
            } else {
                format!("vertices {:?} lie on != n facets", non_simple)
            },
        });

        let mut non_smooth = Vec::new();
        for (vi, v) in vertices.iter().enumerate() {
            if v.incident.len() != self.dim {
                continue; // reported by simplicity already
            }
            let m = IntMatrix::from_rows(
                &v.incident
                    .iter()
                    .map(|&i| self.facets[i].normal.clone())
                    .collect::<Vec<_>>(),
            );
            let det = m.det();
            if !det.abs().is_one() {
                non_smooth.push((vi, det));
            }
        }
        checks.push(Check {
            name: "smooth".into(),
            pass: non_smooth.is_empty(),
            details: if non_smooth.is_empty() {
                String::new()
            } else {
                non_smooth
                    .iter()
                    .map(|(vi, det)| format!("vertex {} has normal determinant {}", vi, det))
                    .collect::<Vec<_>>()
                    .join("; ")
            },
        });

        ValidationReport { checks }
    }

    pub fn ensure_valid(&self) -> Result<(), PolytopeError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(PolytopeError::NotDelzant(report))
        }
    }

    /// All inclusion-minimal facet index sets S (0-based) with empty
    /// intersection. For a simple compact polytope, the intersection over
    /// S is nonempty iff some vertex is incident to all of S.
    pub fn minimal_nonfaces(&self) -> Result<Vec<Vec<usize>>, PolytopeError> {
        self.ensure_valid()?;
        let vertices = self.enumerate_vertices()?;
        let n = self.facets.len();
        assert!(n <= 31, "facet count too large for bitmask enumeration");
        let incident_masks: Vec<u32> = vertices
            .iter()
            .map(|v| v.incident.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect();
        let is_face = |mask: u32| incident_masks.iter().any(|&vm| mask & !vm == 0);
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            if is_face(mask) {
                continue;
            }
            // minimal iff removing any single element gives a face
            let minimal = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .all(|i| is_face(mask & !(1 << i)));
            if minimal {
                out.push((0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>());
            }
        }
        out.sort();
        Ok(out)
    }

    /// The 1-faces, each with primitive direction from the lexicographically
    /// smaller endpoint toward the larger.
    pub fn edges(&self) -> Result<Vec<Edge>, PolytopeError> {
        self.ensure_valid()?;
        let vertices = self.enumerate_vertices()?;
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let common: BTreeSet<usize> = vertices[i]
                    .incident
                    .intersection(&vertices[j].incident)
                    .cloned()
                    .collect();
                if common.len() + 1 != n && n > 0 {
                    continue;
                }
                if n == 0 {
                    continue;
                }
                let direction = primitive_direction(&vertices[i].point, &vertices[j].point);
                out.push(Edge {
                    endpoints: (i, j),
                    direction,
                });
            }
        }
        Ok(out)
    }

    /// Deterministic generic direction: the first xi = (1, M, M^2, ...)
    /// with nonzero pairing against every edge direction and pairwise
    /// distinct values on the vertices. A Vandermonde-style direction
    /// separates all finitely many constraints for large M, so the search
    /// terminates.
    pub fn generic_direction(&self) -> Result<Vec<Int>, PolytopeError> {
        self.ensure_valid()?;
        let vertices = self.enumerate_vertices()?;
        let edges = self.edges()?;
        let n = self.dim;
        let mut m = Int::one();
        loop {
            let mut xi = Vec::with_capacity(n);
            let mut p = Int::one();
            for _ in 0..n {
                xi.push(p.clone());
                p *= &m;
            }
            let edges_ok = edges.iter().all(|e| !dot_int(&xi, &e.direction).is_zero());
            let values: Vec<Rat> = vertices.iter().map(|v| dot_int_rat(&xi, &v.point)).collect();
            let mut sorted = values.clone();
            sorted.sort();
            sorted.dedup();
            if edges_ok && sorted.len() == values.len() {
                return Ok(xi);
            }
            m += 1;
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "facets": self.facets.iter().map(|f| serde_json::json!({
                "normal": f.normal.iter().map(|x| x.to_string().parse::<i64>().map(serde_json::Value::from).unwrap_or_else(|_| serde_json::Value::from(x.to_string()))).collect::<Vec<_>>(),
                "offset": rat_to_json(&f.offset),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PolytopeError> {
        let obj = v
            .as_object()
            .ok_or_else(|| PolytopeError::InvalidInput("expected a JSON object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| PolytopeError::InvalidInput("missing integer field \"dim\"".into()))?
            as usize;
        let facets_json = obj
            .get("facets")
            .and_then(|f| f.as_array())
            .ok_or_else(|| PolytopeError::InvalidInput("missing array field \"facets\"".into()))?;
        let mut facets = Vec::new();
        for (i, fj) in facets_json.iter().enumerate() {
            let normal_json = fj
                .get("normal")
                .and_then(|x| x.as_array())
                .ok_or_else(|| {
                    PolytopeError::InvalidInput(format!("facet {}: missing \"normal\"", i + 1))
                })?;
            let normal: Vec<Int> = normal_json
                .iter()
                .map(|x| {
                    x.as_i64().map(Int::from).ok_or_else(|| {
                        PolytopeError::InvalidInput(format!(
                            "facet {}: normal entries must be integers",
                            i + 1
                        ))
                    })
                })
                .collect::<Result<_, _>>()?;
            let offset = fj
                .get("offset")
                .ok_or_else(|| {
                    PolytopeError::InvalidInput(format!("facet {}: missing \"offset\"", i + 1))
                })
                .and_then(|o| {
                    rat_from_json(o).map_err(|e| {
                        PolytopeError::InvalidInput(format!("facet {}: {}", i + 1, e))
                    })
                })?;
            facets.push(Facet { normal, offset });
        }
        Self::new(dim, facets)
    }

    pub fn from_json_str(s: &str) -> Result<Self, PolytopeError> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| PolytopeError::InvalidInput(format!("JSON parse error: {e}")))?;
        Self::from_json(&v)
    }
}

// Deserialize/Serialize via the documented JSON schema.
impl Serialize for DelzantPolytope {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DelzantPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        DelzantPolytope::from_json(&v).map_err(serde::de::Error::custom)
    }
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive integer direction of the segment from p toward q.
pub fn primitive_direction(p: &[Rat], q: &[Rat]) -> Vec<Int> {
    let diff: Vec<Rat> = q.iter().zip(p).map(|(a, b)| a - b).collect();
    let lcm = diff
        .iter()
        .fold(Int::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<Int> = diff
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    lattice::primitive_part(&ints).expect("edge endpoints must differ")
}
