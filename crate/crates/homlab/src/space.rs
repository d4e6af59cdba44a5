//! Finite metric spaces as edge-colored complete graphs.
//!
//! The color matrix is the primary representation; real distances live in an
//! optional palette. Color 0 is reserved for the diagonal.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An n-point space given by a symmetric color matrix and an optional
/// strictly increasing distance palette (one real per color, palette[0] = 0).
#[derive(Clone, PartialEq, Debug)]
pub struct ColoredSpace {
    n: usize,
    c: usize,
    colors: Vec<u16>,
    palette: Option<Vec<f64>>,
}

/// JSON shape for spaces: `{"n": .., "colors": [[..]], "palette": [..]?}`.
#[derive(Serialize, Deserialize)]
pub struct SpaceJson {
    pub n: usize,
    pub colors: Vec<Vec<u16>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub palette: Option<Vec<f64>>,
}

impl ColoredSpace {
    /// Validates a color matrix (with optional palette) and compacts colors
    /// to `{0..c-1}`, preserving palette order.
    pub fn new(matrix: Vec<Vec<u16>>, palette: Option<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        for row in &matrix {
            if row.len() != n {
                return Err(Error::NotSquare);
            }
        }
        for i in 0..n {
            if matrix[i][i] != 0 {
                return Err(Error::DiagonalNotZero(i));
            }
            for j in (i + 1)..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::AsymmetricMatrix(i, j));
                }
                if matrix[i][j] == 0 {
                    return Err(Error::OffDiagonalZero(i, j));
                }
            }
        }

        // Compact used colors. Color 0 stays 0; positive colors keep their
        // relative order, which is the palette order when a palette is given.
        let max_color = matrix
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let mut used = vec![false; max_color + 1];
        used[0] = n > 0;
        for row in &matrix {
            for &c in row {
                used[c as usize] = true;
            }
        }
        if let Some(p) = &palette {
            if p.len() != max_color + 1 && n > 0 {
                return Err(Error::PaletteSizeMismatch {
                    palette: p.len(),
                    colors: max_color + 1,
                });
            }
        }
        let mut remap = vec![0u16; max_color + 1];
        let mut next = 0u16;
        for (c, &u) in used.iter().enumerate() {
            if u {
                remap[c] = next;
                next += 1;
            }
        }
        let c = next as usize;
        let mut colors = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                colors[i * n + j] = remap[matrix[i][j] as usize];
            }
        }
        let palette = match palette {
            None => None,
            Some(p) => {
                let mut compacted = Vec::with_capacity(c);
                for (idx, &u) in used.iter().enumerate() {
                    if u {
                        compacted.push(p[idx]);
                    }
                }
                Some(compacted)
            }
        };

        let space = ColoredSpace { n, c, colors, palette };
        space.validate()?;
        Ok(space)
    }

    /// Re-checks every representation invariant.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.colors.len() != n * n {
            return Err(Error::NotSquare);
        }
        let mut used = vec![false; self.c];
        for i in 0..n {
            if self.color(i, i) != 0 {
                return Err(Error::DiagonalNotZero(i));
            }
            for j in 0..n {
                let c = self.color(i, j);
                if c >= self.c {
                    return Err(Error::InternalInvariantViolation(format!(
                        "color {c} out of range"
                    )));
                }
                used[c] = true;
                if c != self.color(j, i) {
                    return Err(Error::AsymmetricMatrix(i, j));
                }
                if i != j && c == 0 {
                    return Err(Error::OffDiagonalZero(i, j));
                }
            }
        }
        if n > 0 && used.iter().any(|&u| !u) {
            return Err(Error::InternalInvariantViolation(
                "unused color index".into(),
            ));
        }
        if let Some(p) = &self.palette {
            if p.len() != self.c {
                return Err(Error::PaletteSizeMismatch {
                    palette: p.len(),
                    colors: self.c,
                });
            }
            if n > 0 {
                if p[0] != 0.0 {
                    return Err(Error::PaletteNotStrictlyIncreasing);
                }
                for w in p.windows(2) {
                    if !(w[0] < w[1]) {
                        return Err(Error::PaletteNotStrictlyIncreasing);
                    }
                }
                self.check_triangle(p)?;
            }
        }
        Ok(())
    }

    fn check_triangle(&self, palette: &[f64]) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let dij = palette[self.color(i, j)];
                for k in 0..n {
                    if palette[self.color(i, k)] > dij + palette[self.color(j, k)] {
                        return Err(Error::TriangleViolation(i, k, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a space from a real distance matrix, merging entries that are
    /// within `tol` of each other.
    ///
    /// Merging is by connected components of the "within tol" relation on the
    /// distinct values; a component whose total span exceeds `tol` makes the
    /// merge order-dependent and is rejected.
    pub fn from_metric(reals: &[Vec<f64>], tol: f64) -> Result<Self> {
        let n = reals.len();
        for row in reals {
            if row.len() != n {
                return Err(Error::NotSquare);
            }
        }
        for i in 0..n {
            if reals[i][i].abs() > tol {
                return Err(Error::DiagonalNotZero(i));
            }
            for j in (i + 1)..n {
                if (reals[i][j] - reals[j][i]).abs() > tol {
                    return Err(Error::AsymmetricMatrix(i, j));
                }
                if reals[i][j] < 0.0 {
                    return Err(Error::PreconditionFailed(format!(
                        "negative distance at ({i}, {j})"
                    )));
                }
            }
        }
        let mut values: Vec<f64> = vec![0.0];
        for i in 0..n {
            for j in (i + 1)..n {
                values.push(reals[i][j]);
            }
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup();
        // Chain-merge adjacent values, then reject over-wide classes.
        let mut class_start = vec![0usize];
        for w in 1..values.len() {
            if values[w] - values[w - 1] > tol {
                class_start.push(w);
            }
        }
        let mut reps: Vec<f64> = Vec::with_capacity(class_start.len());
        for (k, &start) in class_start.iter().enumerate() {
            let end = class_start.get(k + 1).copied().unwrap_or(values.len());
            if values[end - 1] - values[start] > tol {
                return Err(Error::ToleranceMergeAmbiguous(values[start], values[end - 1]));
            }
            reps.push(values[start]);
        }
        let class_of = |v: f64| -> usize {
            // Index of the class whose range contains v.
            match reps.binary_search_by(|r| r.partial_cmp(&v).unwrap()) {
                Ok(k) => k,
                Err(k) => k - 1,
            }
        };
        if n > 0 && class_of(0.0) != 0 {
            return Err(Error::InternalInvariantViolation("zero class misplaced".into()));
        }
        let mut matrix = vec![vec![0u16; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    matrix[i][j] = class_of(reals[i][j]) as u16;
                }
            }
        }
        let mut palette = reps;
        if n > 0 {
            palette[0] = 0.0;
        }
        ColoredSpace::new(matrix, Some(palette))
    }

    /// Replaces the palette by `{0} ∪ {a·(1 + k/(c-1)) : k = 0..c-2}`.
    ///
    /// All positive values land in `[a, 2a]`, so the triangle inequality
    /// holds for any color pattern.
    pub fn realize_metric(&self, a: f64) -> ColoredSpace {
        assert!(a > 0.0, "scale must be positive");
        let mut out = self.clone();
        if self.c == 0 {
            out.palette = Some(Vec::new());
            return out;
        }
        let mut palette = vec![0.0];
        let denom = (self.c - 1).max(1) as f64;
        for k in 0..self.c.saturating_sub(1) {
            palette.push(a * (1.0 + k as f64 / denom));
        }
        out.palette = Some(palette);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct distances, the diagonal color included.
    pub fn delta(&self) -> usize {
        self.c
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> usize {
        self.colors[i * self.n + j] as usize
    }

    pub fn palette(&self) -> Option<&[f64]> {
        self.palette.as_deref()
    }

    pub fn require_palette(&self) -> Result<&[f64]> {
        self.palette.as_deref().ok_or(Error::NoPalette)
    }

    /// Real distance when a palette is present, else the color index as a real.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.palette {
            Some(p) => p[self.color(i, j)],
            None => self.color(i, j) as f64,
        }
    }

    pub fn matrix(&self) -> Vec<Vec<u16>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.colors[i * self.n + j]).collect())
            .collect()
    }

    pub fn without_palette(&self) -> ColoredSpace {
        let mut out = self.clone();
        out.palette = None;
        out
    }

    pub fn with_palette(&self, palette: Vec<f64>) -> Result<ColoredSpace> {
        let mut out = self.clone();
        out.palette = Some(palette);
        out.validate()?;
        Ok(out)
    }

    /// Induced subspace on the given points, in the given order.
    pub fn subspace(&self, points: &[usize]) -> Result<ColoredSpace> {
        for &p in points {
            if p >= self.n {
                return Err(Error::PointOutOfRange(p));
            }
        }
        let m = points.len();
        let mut matrix = vec![vec![0u16; m]; m];
        for (i, &p) in points.iter().enumerate() {
            for (j, &q) in points.iter().enumerate() {
                matrix[i][j] = self.colors[p * self.n + q];
            }
        }
        let palette = self.palette.clone();
        // ColoredSpace::new compacts away colors that do not occur in the
        // subspace and drops their palette entries with them.
        ColoredSpace::new(matrix, palette)
    }

    /// Applies a point relabeling: point i of the result is `order[i]` of self.
    pub fn relabel_points(&self, order: &[usize]) -> ColoredSpace {
        assert_eq!(order.len(), self.n);
        let n = self.n;
        let mut colors = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                colors[i * n + j] = self.colors[order[i] * n + order[j]];
            }
        }
        ColoredSpace {
            n,
            c: self.c,
            colors,
            palette: self.palette.clone(),
        }
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson {
            n: self.n,
            colors: self.matrix(),
            palette: self.palette.clone(),
        }
    }

    pub fn from_json(json: SpaceJson) -> Result<Self> {
        if json.colors.len() != json.n {
            return Err(Error::NotSquare);
        }
        ColoredSpace::new(json.colors, json.palette)
    }

    /// Text format: first line n, then n whitespace-separated rows.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.colors[i * self.n + j].to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(Error::NotSquare)?;
        let mut matrix = vec![vec![0u16; n]; n];
        for row in matrix.iter_mut() {
            for cell in row.iter_mut() {
                *cell = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(Error::NotSquare)?;
            }
        }
        ColoredSpace::new(matrix, None)
    }
}

/// A distance-preserving partial map, stored as (source, target) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIsometry {
    pub pairs: Vec<(usize, usize)>,
}

impl PartialIsometry {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        PartialIsometry { pairs }
    }

    pub fn empty() -> Self {
        PartialIsometry { pairs: Vec::new() }
    }

    /// Checks injectivity in both coordinates and color preservation.
    pub fn check(&self, space: &ColoredSpace) -> Result<()> {
        for &(s, t) in &self.pairs {
            if s >= space.n() || t >= space.n() {
                return Err(Error::PointOutOfRange(s.max(t)));
            }
        }
        for (k, &(s1, t1)) in self.pairs.iter().enumerate() {
            for &(s2, t2) in &self.pairs[k + 1..] {
                if s1 == s2 || t1 == t2 {
                    return Err(Error::NotPartialIsometry);
                }
                if space.color(s1, s2) != space.color(t1, t2) {
                    return Err(Error::NotPartialIsometry);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle_metric(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = i.abs_diff(j);
                        d.min(n - d) as f64
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn single_point_space() {
        let s = ColoredSpace::new(vec![vec![0]], None).unwrap();
        assert_eq!(s.n(), 1);
        assert_eq!(s.delta(), 1);
    }

    #[test]
    fn two_point_space_with_palette() {
        let s = ColoredSpace::new(vec![vec![0, 1], vec![1, 0]], Some(vec![0.0, 1.0])).unwrap();
        assert_eq!(s.delta(), 2);
        assert_eq!(s.dist(0, 1), 1.0);
    }

    #[test]
    fn empty_space_is_fine() {
        let s = ColoredSpace::new(vec![], None).unwrap();
        assert_eq!(s.n(), 0);
        assert_eq!(s.delta(), 0);
        s.validate().unwrap();
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            ColoredSpace::new(vec![vec![0, 1], vec![2, 0]], None).unwrap_err(),
            Error::AsymmetricMatrix(0, 1)
        );
        assert_eq!(
            ColoredSpace::new(vec![vec![1]], None).unwrap_err(),
            Error::DiagonalNotZero(0)
        );
        assert_eq!(
            ColoredSpace::new(vec![vec![0, 0], vec![0, 0]], None).unwrap_err(),
            Error::OffDiagonalZero(0, 1)
        );
        assert_eq!(
            ColoredSpace::new(
                vec![vec![0, 1], vec![1, 0]],
                Some(vec![0.0, -1.0]),
            )
            .unwrap_err(),
            Error::PaletteNotStrictlyIncreasing
        );
    }

    #[test]
    fn triangle_violation_detected() {
        let m = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        assert!(matches!(
            ColoredSpace::from_metric(&m, 1e-9).unwrap_err(),
            Error::TriangleViolation(..)
        ));
    }

    #[test]
    fn colors_are_compacted() {
        // Colors {0, 2, 5} compact to {0, 1, 2}; palette follows.
        let s = ColoredSpace::new(
            vec![vec![0, 2, 5], vec![2, 0, 2], vec![5, 2, 0]],
            Some(vec![0.0, 0.5, 1.0, 1.5, 2.0, 2.0001]),
        )
        .unwrap();
        assert_eq!(s.delta(), 3);
        assert_eq!(s.palette().unwrap(), &[0.0, 1.0, 2.0001]);
    }

    #[test]
    fn from_metric_c5_has_three_distances() {
        let s = ColoredSpace::from_metric(&cycle_metric(5), 1e-9).unwrap();
        assert_eq!(s.delta(), 3);
    }

    #[test]
    fn from_metric_trivial_and_fig2() {
        let s = ColoredSpace::from_metric(&[vec![0.0]], 1e-9).unwrap();
        assert_eq!(s.n(), 1);

        // Four points, three pair colors: oracle for delta is a direct scan
        // of distinct entries.
        let (a, b, c) = (1.0, 1.1, 1.2);
        let m = vec![
            vec![0.0, a, b, c],
            vec![a, 0.0, c, b],
            vec![b, c, 0.0, a],
            vec![c, b, a, 0.0],
        ];
        let mut distinct: Vec<f64> = m.iter().flatten().copied().collect();
        distinct.sort_by(|x, y| x.partial_cmp(y).unwrap());
        distinct.dedup();
        assert_eq!(distinct.len(), 4);
        let s = ColoredSpace::from_metric(&m, 1e-9).unwrap();
        assert_eq!(s.delta(), 4);
    }

    #[test]
    fn from_metric_merges_close_values() {
        let eps = 1e-12;
        let m = vec![
            vec![0.0, 1.0, 1.0 + eps],
            vec![1.0, 0.0, 1.0 - eps],
            vec![1.0 + eps, 1.0 - eps, 0.0],
        ];
        let s = ColoredSpace::from_metric(&m, 1e-9).unwrap();
        assert_eq!(s.delta(), 2);
    }

    #[test]
    fn from_metric_detects_ambiguous_chains() {
        let tol = 1e-3;
        // 1.0 ~ 1.0008 ~ 1.0016 chains past the tolerance.
        let m = vec![
            vec![0.0, 1.0, 1.0008],
            vec![1.0, 0.0, 1.0016],
            vec![1.0008, 1.0016, 0.0],
        ];
        assert!(matches!(
            ColoredSpace::from_metric(&m, tol).unwrap_err(),
            Error::ToleranceMergeAmbiguous(..)
        ));
    }

    #[test]
    fn realize_metric_palettes() {
        let single = ColoredSpace::new(vec![vec![0]], None).unwrap();
        assert_eq!(single.realize_metric(1.0).palette().unwrap(), &[0.0]);

        let two = ColoredSpace::new(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(two.realize_metric(2.0).palette().unwrap(), &[0.0, 2.0]);

        let c5 = ColoredSpace::from_metric(&cycle_metric(5), 1e-9).unwrap();
        let realized = c5.realize_metric(1.0);
        assert_eq!(realized.palette().unwrap(), &[0.0, 1.0, 1.5]);
        // Oracle: exhaustive triple scan of the realized palette.
        realized.validate().unwrap();
        assert_eq!(realized.delta(), c5.delta());
        assert_eq!(realized.matrix(), c5.matrix());
    }

    #[test]
    fn text_round_trip() {
        let c5 = ColoredSpace::from_metric(&cycle_metric(5), 1e-9).unwrap();
        let text = c5.to_text();
        let back = ColoredSpace::from_text(&text).unwrap();
        assert_eq!(back.matrix(), c5.matrix());
    }

    #[test]
    fn json_round_trip() {
        let c5 = ColoredSpace::from_metric(&cycle_metric(5), 1e-9).unwrap();
        let json = serde_json::to_string(&c5.to_json()).unwrap();
        let back = ColoredSpace::from_json(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, c5);
    }

    #[test]
    fn partial_isometry_checks() {
        let c4 = ColoredSpace::from_metric(&cycle_metric(4), 1e-9).unwrap();
        PartialIsometry::new(vec![(0, 1), (1, 2)]).check(&c4).unwrap();
        // 0 and 1 are adjacent, 0 and 2 are antipodal.
        assert_eq!(
            PartialIsometry::new(vec![(0, 0), (1, 2)]).check(&c4).unwrap_err(),
            Error::NotPartialIsometry
        );
    }
}
