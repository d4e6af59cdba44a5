//! Maximal distance counts over vertex-transitive colorings: orbital
//! colorings of transitive groups, proven upper-bound formulas, a
//! partition-enumeration oracle for tiny sizes, and the reference table
//! check.
//!
//! Any vertex-transitive coloring refines to the orbital coloring of its
//! own (transitive) automorphism group, which uses at least as many
//! colors and stays vertex-transitive; the 1-homogeneous maximum is
//! therefore attained over orbital colorings. A 2-homogeneous coloring is
//! exactly the orbital coloring of its automorphism group, so the same
//! enumeration with a 2-homogeneity filter is exhaustive there as well.

use crate::canon::canonical_form;
use crate::enumerate::{enumerate_regular_groups, enumerate_transitive_groups};
use crate::error::{Error, Result};
use crate::homogeneity::{automorphisms, is_k_homogeneous};
use crate::perm::{PermGroup, DEFAULT_ORDER_CAP};
use crate::space::ColoredSpace;
use rayon::prelude::*;
use serde::Serialize;
use std::time::{Duration, Instant};

/// `2^m (k + 1)` for `n = 2^m (2k + 1)`: the 2-homogeneous maximum.
pub fn beta(n: usize) -> usize {
    assert!(n >= 1);
    let m = n.trailing_zeros();
    let odd = n >> m;
    let k = (odd - 1) / 2;
    (1 << m) * (k + 1)
}

/// `2^m (3k + 2)` for even `n = 2^(m+1) (2k + 1)`, and `beta(n)` for odd n:
/// the duplicate lower bound.
pub fn alpha(n: usize) -> usize {
    assert!(n >= 1);
    if n % 2 == 1 {
        return beta(n);
    }
    let half = n / 2;
    let m = half.trailing_zeros();
    let odd = half >> m;
    let k = (odd - 1) / 2;
    (1 << m) * (3 * k + 2)
}

fn is_odd_prime(q: usize) -> bool {
    q >= 3 && q % 2 == 1 && (3..q).step_by(2).all(|d| d * d > q || q % d != 0)
}

/// The tightest proven upper bound for Delta_k(n).
pub fn embedded_upper_bound(n: usize, k: usize) -> usize {
    assert!(n >= 1 && (k == 1 || k == 2));
    if k == 2 {
        return beta(n);
    }
    if n.is_power_of_two() {
        return n;
    }
    if n % 2 == 1 {
        return (n + 1) / 2;
    }
    if n % 2 == 0 && is_odd_prime(n / 2) {
        // n = 2(2k+1) with 2k+1 prime: at most 3k + 2.
        let kk = (n / 2 - 1) / 2;
        return 3 * kk + 2;
    }
    if n >= 7 {
        return n - 2;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchTarget {
    Delta1,
    Delta2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMethod {
    RegularOnly,
    FullTransitive,
    PartitionOracle,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SearchValue {
    Exact { exact: usize },
    Bounds { lower: usize, upper: usize },
}

impl SearchValue {
    pub fn lower(&self) -> usize {
        match *self {
            SearchValue::Exact { exact } => exact,
            SearchValue::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            SearchValue::Exact { exact } => exact,
            SearchValue::Bounds { upper, .. } => upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SearchValue::Exact { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub target: SearchTarget,
    pub method: SearchMethod,
    pub value: SearchValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_group: Option<WitnessGroup>,
    #[serde(skip)]
    pub witness_space: Option<ColoredSpace>,
    pub witness_delta: Option<usize>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessGroup {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<Vec<u16>>,
}

fn witness_group_of(g: &PermGroup) -> WitnessGroup {
    WitnessGroup {
        degree: g.degree(),
        order: g.order(),
        generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
    }
}

/// The coloring whose positive colors are exactly the unordered pair
/// orbits of a transitive group; verified vertex-transitive.
pub fn orbital_coloring(group: &PermGroup) -> Result<ColoredSpace> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = group.degree();
    let orbitals = group.pair_orbitals();
    let mut matrix = vec![vec![0u16; n]; n];
    for (color, orbit) in orbitals.iter().enumerate() {
        for &(i, j) in orbit {
            matrix[i][j] = (color + 1) as u16;
            matrix[j][i] = (color + 1) as u16;
        }
    }
    let space = ColoredSpace::new(matrix, None)?;
    for g in group.generators() {
        for i in 0..n {
            for j in 0..n {
                if space.color(i, j) != space.color(g.apply(i), g.apply(j)) {
                    return Err(Error::InternalInvariantViolation(
                        "group does not preserve its own orbital coloring".into(),
                    ));
                }
            }
        }
    }
    Ok(space)
}

/// Best orbital coloring over a set of groups: maximal distance count,
/// ties broken by least canonical form. Optionally requires the coloring
/// to pass a 2-homogeneity test.
fn best_orbital(
    groups: &[PermGroup],
    require_two_homogeneous: bool,
    cap: usize,
) -> Result<Option<(usize, PermGroup, ColoredSpace)>> {
    let evaluated: Vec<Result<Option<(usize, Vec<u8>, usize)>>> = groups
        .par_iter()
        .enumerate()
        .map(|(idx, group)| {
            let coloring = orbital_coloring(group)?;
            if require_two_homogeneous && !is_k_homogeneous(&coloring, 2, cap)? {
                return Ok(None);
            }
            Ok(Some((coloring.delta(), canonical_form(&coloring), idx)))
        })
        .collect();
    let mut best: Option<(usize, Vec<u8>, usize)> = None;
    for item in evaluated {
        if let Some((delta, form, idx)) = item? {
            let better = match &best {
                None => true,
                Some((bd, bf, _)) => delta > *bd || (delta == *bd && form < *bf),
            };
            if better {
                best = Some((delta, form, idx));
            }
        }
    }
    Ok(best.map(|(delta, _, idx)| {
        let group = groups[idx].clone();
        let coloring = orbital_coloring(&group).expect("evaluated above");
        (delta, group, coloring)
    }))
}

fn verify_witness(space: &ColoredSpace, k: usize, expected_delta: usize, cap: usize) -> Result<()> {
    if space.delta() != expected_delta {
        return Err(Error::InternalInvariantViolation(format!(
            "witness has {} distances, reported {expected_delta}",
            space.delta()
        )));
    }
    if !is_k_homogeneous(space, k, cap)? {
        return Err(Error::InternalInvariantViolation(format!(
            "witness is not {k}-homogeneous"
        )));
    }
    Ok(())
}

/// Restricted-growth enumeration of all set partitions of the edge set,
/// testing each induced coloring for k-homogeneity. Exhaustive and
/// independent of the group-theoretic reduction.
fn partition_oracle(n: usize, k: usize, cap: usize) -> Result<Option<(usize, ColoredSpace)>> {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let m = edges.len();
    if m == 0 {
        let space = ColoredSpace::new(
            (0..n).map(|i| (0..n).map(|j| u16::from(i != j)).collect()).collect(),
            None,
        )?;
        return Ok(Some((space.delta(), space)));
    }
    let mut assignments: Vec<Vec<u16>> = Vec::new();
    let mut current = vec![0u16; m];
    fn rec(pos: usize, maxed: u16, current: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for v in 0..=maxed + 1 {
            current[pos] = v;
            rec(pos + 1, maxed.max(v), current, out);
        }
    }
    // First edge always starts block 0.
    current[0] = 0;
    rec(1, 0, &mut current, &mut assignments);

    let best = assignments
        .par_chunks(4096)
        .map(|chunk| -> Result<Option<(usize, Vec<u8>, Vec<u16>)>> {
            let mut local: Option<(usize, Vec<u8>, Vec<u16>)> = None;
            for assignment in chunk {
                let mut matrix = vec![vec![0u16; n]; n];
                for (e, &(i, j)) in edges.iter().enumerate() {
                    matrix[i][j] = assignment[e] + 1;
                    matrix[j][i] = assignment[e] + 1;
                }
                let space = ColoredSpace::new(matrix, None)?;
                let passes = match k {
                    1 => is_k_homogeneous(&space, 1, cap)?,
                    _ => is_k_homogeneous(&space, k, cap)?,
                };
                if !passes {
                    continue;
                }
                let delta = space.delta();
                let replace = match &local {
                    None => true,
                    Some((bd, bf, _)) => {
                        delta > *bd || (delta == *bd && canonical_form(&space) < *bf)
                    }
                };
                if replace {
                    local = Some((delta, canonical_form(&space), assignment.clone()));
                }
            }
            Ok(local)
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (None, x) => x,
                    (x, None) => x,
                    (Some(x), Some(y)) => {
                        if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                            Some(y)
                        } else {
                            Some(x)
                        }
                    }
                })
            },
        )?;
    Ok(best.map(|(delta, _, assignment)| {
        let mut matrix = vec![vec![0u16; n]; n];
        for (e, &(i, j)) in edges.iter().enumerate() {
            matrix[i][j] = assignment[e] + 1;
            matrix[j][i] = assignment[e] + 1;
        }
        (delta, ColoredSpace::new(matrix, None).expect("validated above"))
    }))
}

pub const MAX_ORACLE_DEGREE: usize = 5;

/// Maximal distance count over 1-homogeneous n-point spaces.
pub fn delta1(n: usize, method: SearchMethod, cap: usize) -> Result<SearchReport> {
    let start = Instant::now();
    match method {
        SearchMethod::RegularOnly => {
            if n == 18 || n == 20 {
                return delta1_interval(n, start, cap);
            }
            let groups = enumerate_regular_groups(n, None)?;
            let (lower, group, coloring) =
                best_orbital(&groups, false, cap)?.expect("regular groups exist");
            verify_witness(&coloring, 1, lower, cap)?;
            let upper = embedded_upper_bound(n, 1);
            let value = if lower == upper {
                SearchValue::Exact { exact: lower }
            } else {
                SearchValue::Bounds { lower, upper }
            };
            Ok(SearchReport {
                n,
                target: SearchTarget::Delta1,
                method,
                value,
                witness_group: Some(witness_group_of(&group)),
                witness_delta: Some(coloring.delta()),
                witness_space: Some(coloring),
                elapsed: start.elapsed(),
            })
        }
        SearchMethod::FullTransitive => {
            let groups = enumerate_transitive_groups(n, DEFAULT_ORDER_CAP)?;
            let (best, group, coloring) =
                best_orbital(&groups, false, cap)?.expect("transitive groups exist");
            verify_witness(&coloring, 1, best, cap)?;
            Ok(SearchReport {
                n,
                target: SearchTarget::Delta1,
                method,
                value: SearchValue::Exact { exact: best },
                witness_group: Some(witness_group_of(&group)),
                witness_delta: Some(coloring.delta()),
                witness_space: Some(coloring),
                elapsed: start.elapsed(),
            })
        }
        SearchMethod::PartitionOracle => {
            if n > MAX_ORACLE_DEGREE {
                return Err(Error::DegreeTooLarge { n, max: MAX_ORACLE_DEGREE });
            }
            let (best, space) = partition_oracle(n, 1, cap)?.expect("some coloring passes");
            verify_witness(&space, 1, best, cap)?;
            Ok(SearchReport {
                n,
                target: SearchTarget::Delta1,
                method,
                value: SearchValue::Exact { exact: best },
                witness_group: None,
                witness_delta: Some(space.delta()),
                witness_space: Some(space),
                elapsed: start.elapsed(),
            })
        }
        SearchMethod::Formula => Err(Error::PreconditionFailed(
            "formula mode applies to the 2-homogeneous target".into(),
        )),
    }
}

/// For 18 and 20 points only intervals are known; the lower bound comes
/// from the orbital coloring of the (regular) automorphism group of the
/// matching duplicate construction.
fn delta1_interval(n: usize, start: Instant, cap: usize) -> Result<SearchReport> {
    let witness_space = match n {
        18 => crate::constructions::e_space(0, 4)?,
        20 => crate::constructions::e_space(1, 2)?,
        _ => unreachable!(),
    };
    let group = automorphisms(&witness_space, cap)?;
    if !group.is_regular() {
        return Err(Error::InternalInvariantViolation(
            "duplicate witness group is not regular".into(),
        ));
    }
    let coloring = orbital_coloring(&group)?;
    let lower = coloring.delta().max(alpha(n));
    verify_witness(&coloring, 1, coloring.delta(), cap)?;
    let upper = embedded_upper_bound(n, 1);
    Ok(SearchReport {
        n,
        target: SearchTarget::Delta1,
        method: SearchMethod::RegularOnly,
        value: SearchValue::Bounds { lower, upper },
        witness_group: Some(witness_group_of(&group)),
        witness_delta: Some(coloring.delta()),
        witness_space: Some(coloring),
        elapsed: start.elapsed(),
    })
}

pub const MAX_FORMULA_DEGREE: usize = 64;

/// Maximal distance count over 2-homogeneous n-point spaces.
pub fn delta2(n: usize, method: SearchMethod, cap: usize) -> Result<SearchReport> {
    let start = Instant::now();
    match method {
        SearchMethod::Formula => {
            if n > MAX_FORMULA_DEGREE {
                return Err(Error::DegreeTooLarge { n, max: MAX_FORMULA_DEGREE });
            }
            let m = n.trailing_zeros() as usize;
            let k = ((n >> m) - 1) / 2;
            let witness = crate::constructions::b_space(m, k)?;
            let value = beta(n);
            verify_witness(&witness, 2, value, cap)?;
            Ok(SearchReport {
                n,
                target: SearchTarget::Delta2,
                method,
                value: SearchValue::Exact { exact: value },
                witness_group: None,
                witness_delta: Some(witness.delta()),
                witness_space: Some(witness),
                elapsed: start.elapsed(),
            })
        }
        SearchMethod::FullTransitive => {
            let groups = enumerate_transitive_groups(n, DEFAULT_ORDER_CAP)?;
            let (best, group, coloring) = best_orbital(&groups, true, cap)?
                .ok_or_else(|| {
                    Error::InternalInvariantViolation(
                        "no 2-homogeneous orbital coloring found".into(),
                    )
                })?;
            verify_witness(&coloring, 2, best, cap)?;
            Ok(SearchReport {
                n,
                target: SearchTarget::Delta2,
                method,
                value: SearchValue::Exact { exact: best },
                witness_group: Some(witness_group_of(&group)),
                witness_delta: Some(coloring.delta()),
                witness_space: Some(coloring),
                elapsed: start.elapsed(),
            })
        }
        SearchMethod::PartitionOracle => {
            if n > MAX_ORACLE_DEGREE {
                return Err(Error::DegreeTooLarge { n, max: MAX_ORACLE_DEGREE });
            }
            let (best, space) = partition_oracle(n, 2, cap)?.expect("some coloring passes");
            verify_witness(&space, 2, best, cap)?;
            Ok(SearchReport {
                n,
                target: SearchTarget::Delta2,
                method,
                value: SearchValue::Exact { exact: best },
                witness_group: None,
                witness_delta: Some(space.delta()),
                witness_space: Some(space),
                elapsed: start.elapsed(),
            })
        }
        SearchMethod::RegularOnly => Err(Error::PreconditionFailed(
            "the 2-homogeneous target uses formula, full, or oracle mode".into(),
        )),
    }
}

/// Reference values (n, Delta2, Delta1) for n up to 16.
pub const REFERENCE_TABLE: [(usize, usize, usize); 16] = [
    (1, 1, 1),
    (2, 2, 2),
    (3, 2, 2),
    (4, 4, 4),
    (5, 3, 3),
    (6, 4, 5),
    (7, 4, 4),
    (8, 8, 8),
    (9, 5, 5),
    (10, 6, 8),
    (11, 6, 6),
    (12, 8, 10),
    (13, 7, 7),
    (14, 8, 11),
    (15, 8, 8),
    (16, 16, 16),
];

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub expected_delta2: usize,
    pub expected_delta1: usize,
    pub delta2_formula: usize,
    pub delta1_regular_lower: usize,
    pub delta1_upper: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta2_full: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta1_full: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta2_oracle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta1_oracle: Option<usize>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub all_match: bool,
    pub elapsed: Duration,
}

/// Recomputes the reference table up to `n_max <= 16` and compares every
/// entry; any mismatch is a hard failure recorded in the report.
pub fn verify_table(n_max: usize, cap: usize) -> Result<TableReport> {
    if n_max > 16 {
        return Err(Error::DegreeTooLarge { n: n_max, max: 16 });
    }
    let start = Instant::now();
    let mut rows = Vec::new();
    for &(n, expected_delta2, expected_delta1) in REFERENCE_TABLE.iter().take(n_max) {
        let formula = delta2(n, SearchMethod::Formula, cap)?;
        let delta2_formula = formula.value.lower();
        let regular = delta1(n, SearchMethod::RegularOnly, cap)?;
        let delta1_regular_lower = regular.value.lower();
        let delta1_upper = regular.value.upper();

        let delta2_full = if n <= crate::enumerate::MAX_TRANSITIVE_DEGREE {
            Some(delta2(n, SearchMethod::FullTransitive, cap)?.value.lower())
        } else {
            None
        };
        let delta1_full = if n <= crate::enumerate::MAX_TRANSITIVE_DEGREE {
            Some(delta1(n, SearchMethod::FullTransitive, cap)?.value.lower())
        } else {
            None
        };
        let delta2_oracle = if n <= MAX_ORACLE_DEGREE {
            Some(delta2(n, SearchMethod::PartitionOracle, cap)?.value.lower())
        } else {
            None
        };
        let delta1_oracle = if n <= MAX_ORACLE_DEGREE {
            Some(delta1(n, SearchMethod::PartitionOracle, cap)?.value.lower())
        } else {
            None
        };

        let matches = delta2_formula == expected_delta2
            && delta1_regular_lower == expected_delta1
            && delta1_upper == expected_delta1
            && regular.value.is_exact()
            && delta2_full.map_or(true, |v| v == expected_delta2)
            && delta1_full.map_or(true, |v| v == expected_delta1)
            && delta2_oracle.map_or(true, |v| v == expected_delta2)
            && delta1_oracle.map_or(true, |v| v == expected_delta1);
        rows.push(TableRow {
            n,
            expected_delta2,
            expected_delta1,
            delta2_formula,
            delta1_regular_lower,
            delta1_upper,
            delta2_full,
            delta1_full,
            delta2_oracle,
            delta1_oracle,
            matches,
        });
    }
    let all_match = rows.iter().all(|r| r.matches);
    Ok(TableReport {
        rows,
        all_match,
        elapsed: start.elapsed(),
    })
}

pub fn render_table(report: &TableReport) -> String {
    let mut out = String::new();
    out.push_str("  n  D2  D1  regular  upper  full(D2,D1)  oracle(D2,D1)  ok\n");
    for row in &report.rows {
        let full = match (row.delta2_full, row.delta1_full) {
            (Some(a), Some(b)) => format!("{a},{b}"),
            _ => "-".into(),
        };
        let oracle = match (row.delta2_oracle, row.delta1_oracle) {
            (Some(a), Some(b)) => format!("{a},{b}"),
            _ => "-".into(),
        };
        out.push_str(&format!(
            "{:>3} {:>3} {:>3} {:>8} {:>6} {:>12} {:>14} {:>3}\n",
            row.n,
            row.expected_delta2,
            row.expected_delta1,
            row.delta1_regular_lower,
            row.delta1_upper,
            full,
            oracle,
            if row.matches { "yes" } else { "NO" },
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{close, Permutation};

    const CAP: usize = DEFAULT_ORDER_CAP;

    #[test]
    fn beta_and_alpha_values() {
        assert_eq!(beta(6), 4);
        assert_eq!(beta(8), 8);
        assert_eq!(beta(12), 8);
        assert_eq!(alpha(6), 5);
        assert_eq!(alpha(12), 10);
        assert_eq!(alpha(18), 14);
        assert_eq!(alpha(20), 16);
        assert_eq!(alpha(9), beta(9));
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(embedded_upper_bound(18, 1), 16);
        assert_eq!(embedded_upper_bound(9, 1), 5);
        assert_eq!(embedded_upper_bound(4, 1), 4);
        assert_eq!(embedded_upper_bound(6, 1), 5);
        assert_eq!(embedded_upper_bound(12, 1), 10);
        assert_eq!(embedded_upper_bound(12, 2), 8);
    }

    #[test]
    fn orbital_coloring_examples() {
        let c5 = close(
            5,
            &[Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap()],
            100,
        )
        .unwrap();
        let coloring = orbital_coloring(&c5).unwrap();
        assert_eq!(coloring.delta(), 3);

        let klein = close(
            4,
            &[
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
            100,
        )
        .unwrap();
        let coloring = orbital_coloring(&klein).unwrap();
        assert_eq!(coloring.delta(), 4);

        let s4 = close(
            4,
            &[
                Permutation::from_images(vec![1, 0, 2, 3]).unwrap(),
                Permutation::from_images(vec![1, 2, 3, 0]).unwrap(),
            ],
            100,
        )
        .unwrap();
        let coloring = orbital_coloring(&s4).unwrap();
        assert_eq!(coloring.delta(), 2);

        let stab = close(3, &[Permutation::from_images(vec![1, 0, 2]).unwrap()], 10).unwrap();
        assert!(matches!(orbital_coloring(&stab), Err(Error::NotTransitive)));
    }

    #[test]
    fn delta1_small_values() {
        let r = delta1(6, SearchMethod::RegularOnly, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Exact { exact: 5 });
        let r = delta1(5, SearchMethod::RegularOnly, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Exact { exact: 3 });
    }

    #[test]
    fn delta1_partition_oracle_four_points() {
        let r = delta1(4, SearchMethod::PartitionOracle, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Exact { exact: 4 });
    }

    #[test]
    fn delta2_small_values() {
        let r = delta2(6, SearchMethod::Formula, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Exact { exact: 4 });
        let r = delta2(8, SearchMethod::Formula, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Exact { exact: 8 });
        let r = delta2(12, SearchMethod::Formula, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Exact { exact: 8 });
        assert_eq!(r.witness_space.as_ref().unwrap().n(), 12);
    }

    #[test]
    fn delta1_intervals_for_open_sizes() {
        let r = delta1(18, SearchMethod::RegularOnly, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Bounds { lower: 14, upper: 16 });
        let r = delta1(20, SearchMethod::RegularOnly, CAP).unwrap();
        assert_eq!(r.value, SearchValue::Bounds { lower: 16, upper: 18 });
    }

    #[test]
    fn bell_number_of_partitions_on_six_edges() {
        // K_4 has 6 edges; the oracle enumerates Bell(6) = 203 partitions.
        let edges = 6usize;
        let mut count = 0usize;
        fn rec(pos: usize, maxed: u16, len: usize, count: &mut usize) {
            if pos == len {
                *count += 1;
                return;
            }
            for v in 0..=maxed + 1 {
                rec(pos + 1, maxed.max(v), len, count);
            }
        }
        rec(1, 0, edges, &mut count);
        assert_eq!(count, 203);
    }

    #[test]
    fn verify_table_to_five() {
        let report = verify_table(5, CAP).unwrap();
        assert!(report.all_match, "{}", render_table(&report));
    }
}
