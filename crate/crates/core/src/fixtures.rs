//! Reference polytopes used by tests, benchmarks, and the shipped JSON
//! fixture files.

use crate::polytope::DelzantPolytope;

/// Standard simplex in R^n: the moment polytope of CP^n.
pub fn cp(n: usize) -> DelzantPolytope {
    let mut data: Vec<(Vec<i64>, i64)> = Vec::new();
    for i in 0..n {
        let mut normal = vec![0i64; n];
        normal[i] = -1;
        data.push((normal, 0));
    }
    data.push((vec![1i64; n], 1));
    let borrowed: Vec<(&[i64], i64)> = data.iter().map(|(v, o)| (v.as_slice(), *o)).collect();
    DelzantPolytope::from_i64(n, &borrowed)
}

/// Unit square: the moment polytope of CP^1 x CP^1.
pub fn square() -> DelzantPolytope {
    DelzantPolytope::from_i64(2, &[(&[-1, 0], 0), (&[1, 0], 1), (&[0, -1], 0), (&[0, 1], 1)])
}

/// Hirzebruch surface with twisting parameter a >= 1: trapezoid with
/// vertices (0,0), (a+1,0), (1,1), (0,1).
pub fn hirzebruch(a: i64) -> DelzantPolytope {
    assert!(a >= 1);
    DelzantPolytope::from_i64(
        2,
        &[(&[-1, 0], 0), (&[1, a], a + 1), (&[0, -1], 0), (&[0, 1], 1)],
    )
}

/// Non-Delzant triangle: smoothness fails at the vertex (0, 1/2) where the
/// incident normals have determinant -2.
pub fn nonsmooth_triangle() -> DelzantPolytope {
    DelzantPolytope::from_i64(2, &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 2], 1)])
}

/// The Delzant fixtures exercised by the acceptance suite, with names.
pub fn all_valid() -> Vec<(&'static str, DelzantPolytope)> {
    vec![
        ("cp1", cp(1)),
        ("cp2", cp(2)),
        ("cp3", cp(3)),
        ("square", square()),
        ("hirzebruch_1", hirzebruch(1)),
        ("hirzebruch_2", hirzebruch(2)),
    ]
}
