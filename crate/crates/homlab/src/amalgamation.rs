//! Triangle schemes: a distance set with a completion table assigning the
//! forced third side, their validity and coherence, finite limit spaces,
//! and the 3x3 affine-plane scheme whose coherence fails.

use crate::canon::equivalent;
use crate::error::{Error, Result};
use crate::homogeneity::is_k_homogeneous;
use crate::perm::DEFAULT_ORDER_CAP;
use crate::space::ColoredSpace;
use crate::structure::is_isosceles_free;
use serde::{Deserialize, Serialize};

/// Distances `R` (sorted, `R[0] = 0`) with a completion table `t` of
/// indices into `R`; `t(p, q)` is the third side forced by sides p and q.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleScheme {
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    pub t: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeReport {
    /// t(p,q) = t(q,p) <= p + q for all entries.
    pub symmetric_and_triangular: bool,
    /// t(t(p,q), q) = p and t(p, 0) = p for all entries.
    pub involutive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
}

impl SchemeReport {
    pub fn is_valid(&self) -> bool {
        self.symmetric_and_triangular && self.involutive
    }
}

impl TriangleScheme {
    pub fn new(r: Vec<f64>, t: Vec<Vec<usize>>) -> Result<Self> {
        let k = r.len();
        if k == 0 || r[0] != 0.0 {
            return Err(Error::PreconditionFailed("distance set must start at 0".into()));
        }
        if r.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::PreconditionFailed("distances must strictly increase".into()));
        }
        if t.len() != k || t.iter().any(|row| row.len() != k) {
            return Err(Error::NotSquare);
        }
        if t.iter().flatten().any(|&v| v >= k) {
            return Err(Error::PreconditionFailed("table entry out of range".into()));
        }
        Ok(TriangleScheme { r, t })
    }

    pub fn size(&self) -> usize {
        self.r.len()
    }
}

/// Structural validity: symmetry, the triangle bound, and the involution
/// laws. Returns flags with a witness pair on failure.
pub fn validate_scheme(scheme: &TriangleScheme) -> SchemeReport {
    let k = scheme.size();
    let mut symmetric_and_triangular = true;
    let mut involutive = true;
    let mut witness = None;
    'outer: for p in 0..k {
        for q in 0..k {
            let tpq = scheme.t[p][q];
            if tpq != scheme.t[q][p] || scheme.r[tpq] > scheme.r[p] + scheme.r[q] + 1e-12 {
                symmetric_and_triangular = false;
                witness = Some((p, q));
                break 'outer;
            }
            if scheme.t[tpq][q] != p || scheme.t[p][0] != p {
                involutive = false;
                witness = Some((p, q));
                break 'outer;
            }
        }
    }
    SchemeReport {
        symmetric_and_triangular,
        involutive,
        witness,
    }
}

/// A quadruple (p, q, p', q') with `t(p,q) = t(p',q')` but
/// `t(p,p') != t(q,q')`.
pub type CoherenceWitness = (usize, usize, usize, usize);

/// Checks the amalgamation coherence condition. Quadruples are scanned
/// grouped by the common completion value, then lexicographically, so the
/// reported witness is deterministic.
pub fn coherence_check(scheme: &TriangleScheme) -> Result<Option<CoherenceWitness>> {
    if !validate_scheme(scheme).is_valid() {
        return Err(Error::SchemeInvalid);
    }
    let k = scheme.size();
    for value in 0..k {
        for p in 0..k {
            for q in 0..k {
                if scheme.t[p][q] != value {
                    continue;
                }
                for p2 in 0..k {
                    for q2 in 0..k {
                        if scheme.t[p2][q2] != value {
                            continue;
                        }
                        if scheme.t[p][p2] != scheme.t[q][q2] {
                            return Ok(Some((p, q, p2, q2)));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The space on the distance set itself with `d(p, q) = t(p, q)`; exists
/// exactly for valid coherent schemes and is verified homogeneous
/// isosceles-free with the full distance set.
pub fn limit_space(scheme: &TriangleScheme) -> Result<ColoredSpace> {
    if !validate_scheme(scheme).is_valid() {
        return Err(Error::SchemeInvalid);
    }
    if coherence_check(scheme)?.is_some() {
        return Err(Error::NotCoherent);
    }
    let k = scheme.size();
    let matrix: Vec<Vec<u16>> = (0..k)
        .map(|p| (0..k).map(|q| scheme.t[p][q] as u16).collect())
        .collect();
    let space = ColoredSpace::new(matrix, Some(scheme.r.clone()))?;
    if space.delta() != k
        || !is_isosceles_free(&space)
        || !is_k_homogeneous(&space, 1, DEFAULT_ORDER_CAP)?
    {
        return Err(Error::InternalInvariantViolation(
            "limit space is not homogeneous isosceles-free on the full distance set".into(),
        ));
    }
    Ok(space)
}

/// Reads the completion table off a homogeneous isosceles-free space:
/// distances p, q from any point force a unique third side.
pub fn scheme_from_space(space: &ColoredSpace) -> Result<TriangleScheme> {
    if space.n() == 0 {
        return Err(Error::EmptySpace);
    }
    if !is_isosceles_free(space) || !is_k_homogeneous(space, 1, DEFAULT_ORDER_CAP)? {
        return Err(Error::PreconditionFailed(
            "space is not homogeneous isosceles-free".into(),
        ));
    }
    let n = space.n();
    let c = space.delta();
    let r: Vec<f64> = match space.palette() {
        Some(p) => p.to_vec(),
        None => (0..c).map(|v| v as f64).collect(),
    };
    let mut t = vec![vec![usize::MAX; c]; c];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (p, q, s) = (space.color(x, y), space.color(x, z), space.color(y, z));
                if t[p][q] == usize::MAX {
                    t[p][q] = s;
                } else if t[p][q] != s {
                    return Err(Error::InternalInvariantViolation(
                        "completion distance is not unique".into(),
                    ));
                }
            }
        }
    }
    // Isosceles-freeness makes every (p, q) pair occur from a single point;
    // with n = delta the table is total.
    if t.iter().flatten().any(|&v| v == usize::MAX) {
        return Err(Error::InternalInvariantViolation("completion table has holes".into()));
    }
    let scheme = TriangleScheme::new(r, t)?;
    let report = validate_scheme(&scheme);
    if !report.is_valid() {
        return Err(Error::InternalInvariantViolation(
            "extracted scheme fails validation".into(),
        ));
    }
    Ok(scheme)
}

/// Elements of the 3x3 affine plane used by `z3z3_counterexample`, in the
/// index order of the scheme's positive distances.
pub fn z3z3_labels() -> Vec<(usize, usize)> {
    (0..9).map(|v| (v / 3, v % 3)).collect()
}

/// Nine distances in [1, 2] identified with the plane over the 3-element
/// field, completed along affine lines: the third point of the line through
/// P and Q is -P-Q. Validation passes while coherence fails.
pub fn z3z3_counterexample() -> TriangleScheme {
    let mut r = vec![0.0];
    r.extend((0..9).map(|i| 1.0 + i as f64 / 9.0));
    let idx = |a: usize, b: usize| 1 + 3 * a + b;
    let mut t = vec![vec![0usize; 10]; 10];
    for p in 0..10 {
        t[p][0] = p;
        t[0][p] = p;
    }
    for a1 in 0..3 {
        for b1 in 0..3 {
            for a2 in 0..3 {
                for b2 in 0..3 {
                    let p = idx(a1, b1);
                    let q = idx(a2, b2);
                    if p == q {
                        t[p][q] = 0;
                    } else {
                        // Third point on the affine line: -(P + Q) mod 3.
                        let a3 = (6 - a1 - a2) % 3;
                        let b3 = (6 - b1 - b2) % 3;
                        t[p][q] = idx(a3, b3);
                    }
                }
            }
        }
    }
    TriangleScheme::new(r, t).expect("the affine-plane scheme is well-formed")
}

/// Round-trip helper used by tests and the CLI.
pub fn limit_round_trip(scheme: &TriangleScheme) -> Result<bool> {
    let space = limit_space(scheme)?;
    let back = scheme_from_space(&space)?;
    Ok(back.t == scheme.t)
}

pub fn spaces_isometric(a: &ColoredSpace, b: &ColoredSpace) -> bool {
    equivalent(&a.without_palette(), &b.without_palette())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{binary_space, tetrahedron};

    #[test]
    fn scheme_from_binary_space_is_valid_and_coherent() {
        let x2 = binary_space(2).unwrap();
        let scheme = scheme_from_space(&x2).unwrap();
        assert!(validate_scheme(&scheme).is_valid());
        assert!(coherence_check(&scheme).unwrap().is_none());
        // xor addition is associative, hence coherent.
        let x3 = binary_space(3).unwrap();
        let scheme = scheme_from_space(&x3).unwrap();
        assert!(coherence_check(&scheme).unwrap().is_none());
    }

    #[test]
    fn degenerate_table_fails_validation() {
        // t(p, q) = q for positive p, q forces p = 0.
        let scheme = TriangleScheme::new(
            vec![0.0, 1.0, 1.5],
            vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]],
        )
        .unwrap();
        let report = validate_scheme(&scheme);
        assert!(!report.is_valid());
        assert!(report.witness.is_some());
    }

    #[test]
    fn single_distance_scheme_is_coherent() {
        let scheme = TriangleScheme::new(vec![0.0], vec![vec![0]]).unwrap();
        assert!(validate_scheme(&scheme).is_valid());
        assert!(coherence_check(&scheme).unwrap().is_none());
        let space = limit_space(&scheme).unwrap();
        assert_eq!(space.n(), 1);
    }

    #[test]
    fn two_distance_scheme_limit() {
        let scheme = TriangleScheme::new(vec![0.0, 1.0], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let space = limit_space(&scheme).unwrap();
        assert_eq!(space.n(), 2);
    }

    #[test]
    fn limit_space_of_binary_scheme_rebuilds_binary_space() {
        let x2 = binary_space(2).unwrap();
        let scheme = scheme_from_space(&x2).unwrap();
        let rebuilt = limit_space(&scheme).unwrap();
        assert!(spaces_isometric(&rebuilt, &x2));
    }

    #[test]
    fn tetrahedron_scheme_cycles() {
        let t = tetrahedron(1.0, 1.1, 1.2).unwrap();
        let scheme = scheme_from_space(&t).unwrap();
        // t(a, b) = c cyclically on the three positive distances.
        assert_eq!(scheme.t[1][2], 3);
        assert_eq!(scheme.t[2][3], 1);
        assert_eq!(scheme.t[1][3], 2);
        assert!(limit_round_trip(&scheme).unwrap());
    }

    #[test]
    fn z3z3_validates_but_fails_coherence() {
        let scheme = z3z3_counterexample();
        assert_eq!(scheme.size(), 10);
        assert!(validate_scheme(&scheme).is_valid());
        let witness = coherence_check(&scheme).unwrap().expect("incoherent");
        // (0,1), (0,2), (1,0), (2,0) in affine labels.
        assert_eq!(witness, (2, 3, 4, 7));
        let labels = z3z3_labels();
        assert_eq!(labels[witness.0 - 1], (0, 1));
        assert_eq!(labels[witness.1 - 1], (0, 2));
        assert_eq!(labels[witness.2 - 1], (1, 0));
        assert_eq!(labels[witness.3 - 1], (2, 0));
        assert!(matches!(limit_space(&scheme), Err(Error::NotCoherent)));
    }

    #[test]
    fn coherent_limits_have_power_of_two_size() {
        for space in [binary_space(1).unwrap(), binary_space(2).unwrap(), binary_space(3).unwrap()]
        {
            let scheme = scheme_from_space(&space).unwrap();
            if coherence_check(&scheme).unwrap().is_none() {
                let limit = limit_space(&scheme).unwrap();
                assert!(limit.n().is_power_of_two());
                assert_eq!(limit.n(), scheme.size());
            }
        }
        // The incoherent 10-distance scheme is consistent with that: 10 is
        // not a power of two.
        assert!(!z3z3_counterexample().size().is_power_of_two());
    }

    #[test]
    fn scheme_json_round_trip() {
        let scheme = z3z3_counterexample();
        let json = serde_json::to_string(&scheme).unwrap();
        let back: TriangleScheme = serde_json::from_str(&json).unwrap();
        assert_eq!(back, scheme);
    }
}
