//! Small exact-rational helpers shared by the polytope and kirwan modules:
//! linear solves, inner products, and the canonical "p/q" text form.

use num_traits::{Signed, Zero};

use crate::{Int, Rat};

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn int_to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

pub fn norm_sq(v: &[Rat]) -> Rat {
    dot(v, v)
}

/// Solve the square system A x = b exactly. Returns None when A is
/// singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Canonical text form: "p" for integers, "p/q" with q > 0 otherwise.
/// BigRational keeps gcd(p, q) = 1 and q > 0 by construction.
pub fn render_rat(r: &Rat) -> String {
    if r.denom().abs() == Int::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let q: Int = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if q.is_zero() {
            return Err("zero denominator".to_string());
        }
        Ok(Rat::new(p, q))
    } else {
        let p: Int = s.parse().map_err(|e| format!("bad integer: {e}"))?;
        Ok(Rat::from_integer(p))
    }
}

/// JSON form of an exact rational: a plain number when integral and small
/// enough, a "p/q" string otherwise.
pub fn rat_to_json(r: &Rat) -> serde_json::Value {
    if r.denom().abs() == Int::from(1) {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::from(render_rat(r))
}

pub fn rat_from_json(v: &serde_json::Value) -> Result<Rat, String> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| format!("offset must be an integer or \"p/q\" string, got {n}"))?;
            Ok(rat(i))
        }
        serde_json::Value::String(s) => parse_rat(s),
        other => Err(format!("offset must be an integer or \"p/q\" string, got {other}")),
    }
}
