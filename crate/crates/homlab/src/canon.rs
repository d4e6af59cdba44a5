//! Canonical forms of colored spaces under simultaneous point relabeling
//! and positive-color relabeling.
//!
//! The form is the lexicographically least "column stream": vertices are
//! placed one at a time, each new vertex emits its colors to the already
//! placed ones, and colors are renamed by first occurrence (0 stays 0).
//! Two spaces get equal forms exactly when one is carried to the other by a
//! point permutation together with a color bijection fixing the diagonal
//! color.

use crate::space::ColoredSpace;

const AUTO_CAP: usize = 256;
const UNNAMED: u16 = u16::MAX;

struct Search<'a> {
    space: &'a ColoredSpace,
    n: usize,
    best: Option<Vec<u16>>,
    best_order: Option<Vec<usize>>,
    // Permutations witnessing stream-equal orderings, used to prune ties.
    autos: Vec<Vec<usize>>,
}

struct Path {
    order: Vec<usize>,
    placed: Vec<bool>,
    rename: Vec<u16>,
    next_fresh: u16,
    stream: Vec<u16>,
    // False once the stream is strictly below the current best.
    tight: bool,
}

impl<'a> Search<'a> {
    fn new(space: &'a ColoredSpace) -> Self {
        Search {
            space,
            n: space.n(),
            best: None,
            best_order: None,
            autos: Vec::new(),
        }
    }

    /// Renamed colors from `v` to the placed prefix, with speculative fresh
    /// names for colors not named yet.
    fn column(&self, path: &Path, v: usize) -> Vec<u16> {
        let mut fresh = path.next_fresh;
        let mut local: Vec<(usize, u16)> = Vec::new();
        let mut col = Vec::with_capacity(path.order.len());
        for &u in &path.order {
            let raw = self.space.color(u, v);
            let named = if raw == 0 {
                0
            } else if path.rename[raw] != UNNAMED {
                path.rename[raw]
            } else if let Some(&(_, f)) = local.iter().find(|&&(r, _)| r == raw) {
                f
            } else {
                let f = fresh;
                fresh += 1;
                local.push((raw, f));
                f
            };
            col.push(named);
        }
        col
    }

    fn run(&mut self, path: &mut Path) {
        let k = path.order.len();
        if k == self.n {
            if path.tight && self.best.is_some() {
                // Stream equals the best: record the witnessing relabeling.
                if self.autos.len() < AUTO_CAP {
                    let best_order = self.best_order.as_ref().unwrap();
                    let mut auto = vec![0usize; self.n];
                    for i in 0..self.n {
                        auto[best_order[i]] = path.order[i];
                    }
                    self.autos.push(auto);
                }
            } else {
                self.best = Some(path.stream.clone());
                self.best_order = Some(path.order.clone());
            }
            return;
        }

        // Only candidates achieving the least column can reach the minimum.
        let mut ties: Vec<usize> = Vec::new();
        let mut best_col: Option<Vec<u16>> = None;
        for v in 0..self.n {
            if path.placed[v] {
                continue;
            }
            let col = self.column(path, v);
            match &best_col {
                None => {
                    best_col = Some(col);
                    ties.push(v);
                }
                Some(b) => {
                    if col < *b {
                        best_col = Some(col);
                        ties.clear();
                        ties.push(v);
                    } else if col == *b {
                        ties.push(v);
                    }
                }
            }
        }
        let col = best_col.unwrap();

        let mut tight = path.tight;
        if tight {
            if let Some(best) = &self.best {
                let seg = &best[path.stream.len()..path.stream.len() + k];
                if col.as_slice() > seg {
                    return;
                }
                if col.as_slice() < seg {
                    tight = false;
                }
            } else {
                tight = false;
            }
        }

        // When the remaining vertices all tie and are mutually monochromatic,
        // every completion yields the same stream; take one.
        if ties.len() > 2 && ties.len() == self.n - k && self.remaining_monochromatic(&ties) {
            let saved = self.save(path);
            let mut renamed_here = Vec::new();
            path.tight = tight;
            for v in ties {
                let col = self.column(path, v);
                self.apply(path, v, &col, &mut renamed_here);
            }
            self.run(path);
            self.restore(path, saved, &renamed_here);
            return;
        }

        let mut tried: Vec<usize> = Vec::new();
        for v in ties {
            if self.pruned_by_auto(path, &tried, v) {
                continue;
            }
            tried.push(v);
            let saved = self.save(path);
            let mut renamed_here = Vec::new();
            path.tight = tight;
            self.apply(path, v, &col, &mut renamed_here);
            self.run(path);
            self.restore(path, saved, &renamed_here);
        }
    }

    fn save(&self, path: &Path) -> (usize, usize, bool, u16) {
        (path.order.len(), path.stream.len(), path.tight, path.next_fresh)
    }

    fn restore(&self, path: &mut Path, saved: (usize, usize, bool, u16), renamed_here: &[usize]) {
        let (order_len, stream_len, tight, fresh) = saved;
        while path.order.len() > order_len {
            let v = path.order.pop().unwrap();
            path.placed[v] = false;
        }
        path.stream.truncate(stream_len);
        path.tight = tight;
        path.next_fresh = fresh;
        for &raw in renamed_here {
            path.rename[raw] = UNNAMED;
        }
    }

    fn apply(&self, path: &mut Path, v: usize, col: &[u16], renamed_here: &mut Vec<usize>) {
        for (&u, &named) in path.order.iter().zip(col.iter()) {
            let raw = self.space.color(u, v);
            if raw != 0 && path.rename[raw] == UNNAMED {
                path.rename[raw] = named;
                renamed_here.push(raw);
                path.next_fresh = path.next_fresh.max(named + 1);
            }
        }
        path.stream.extend_from_slice(col);
        path.placed[v] = true;
        path.order.push(v);
    }

    fn remaining_monochromatic(&self, ties: &[usize]) -> bool {
        let mut mono: Option<usize> = None;
        for (a, &u) in ties.iter().enumerate() {
            for &v in &ties[a + 1..] {
                let c = self.space.color(u, v);
                match mono {
                    None => mono = Some(c),
                    Some(m) if m == c => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn pruned_by_auto(&self, path: &Path, tried: &[usize], v: usize) -> bool {
        for auto in &self.autos {
            if !path.order.iter().all(|&p| auto[p] == p) {
                continue;
            }
            if tried.iter().any(|&u| auto[u] == v) {
                return true;
            }
        }
        false
    }
}

/// Canonical byte string; equal strings mean equivalent spaces.
pub fn canonical_form(space: &ColoredSpace) -> Vec<u8> {
    let n = space.n();
    let mut search = Search::new(space);
    let mut path = Path {
        order: Vec::with_capacity(n),
        placed: vec![false; n],
        rename: vec![UNNAMED; space.delta().max(1)],
        next_fresh: 1,
        stream: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        tight: true,
    };
    search.run(&mut path);
    let stream = search.best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(2 + 2 * stream.len());
    bytes.extend_from_slice(&(n as u16).to_le_bytes());
    for v in stream {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    bytes
}

/// Point/color-relabeling equivalence via canonical forms.
pub fn equivalent(a: &ColoredSpace, b: &ColoredSpace) -> bool {
    a.n() == b.n() && a.delta() == b.delta() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::ColoredSpace;

    fn cycle_space(n: usize) -> ColoredSpace {
        let reals: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = i.abs_diff(j);
                        d.min(n - d) as f64
                    })
                    .collect()
            })
            .collect();
        ColoredSpace::from_metric(&reals, 1e-9).unwrap()
    }

    fn discrete_space(n: usize) -> ColoredSpace {
        let matrix: Vec<Vec<u16>> = (0..n)
            .map(|i| (0..n).map(|j| u16::from(i != j)).collect())
            .collect();
        ColoredSpace::new(matrix, None).unwrap()
    }

    /// Brute-force oracle: the least first-occurrence-renamed stream over
    /// all point orderings.
    fn oracle_stream(space: &ColoredSpace) -> Vec<u16> {
        let n = space.n();
        let mut best: Option<Vec<u16>> = None;
        let mut order: Vec<usize> = (0..n).collect();
        permute(&mut order, 0, &mut |order| {
            let mut rename: Vec<Option<u16>> = vec![None; space.delta().max(1)];
            let mut fresh = 1u16;
            let mut stream = Vec::new();
            for k in 1..n {
                for i in 0..k {
                    let raw = space.color(order[i], order[k]);
                    let named = if raw == 0 {
                        0
                    } else {
                        *rename[raw].get_or_insert_with(|| {
                            let f = fresh;
                            fresh += 1;
                            f
                        })
                    };
                    stream.push(named);
                }
            }
            if best.is_none() || stream < *best.as_ref().unwrap() {
                best = Some(stream);
            }
        });
        best.unwrap_or_default()
    }

    fn permute(order: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == order.len() {
            f(order);
            return;
        }
        for i in k..order.len() {
            order.swap(k, i);
            permute(order, k + 1, f);
            order.swap(k, i);
        }
    }

    fn stream_of(bytes: &[u8]) -> Vec<u16> {
        bytes[2..]
            .chunks(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]))
            .collect()
    }

    fn tetrahedron_pattern() -> ColoredSpace {
        ColoredSpace::new(
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0],
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn matches_bruteforce_oracle_on_small_spaces() {
        for space in [
            cycle_space(3),
            cycle_space(4),
            cycle_space(5),
            discrete_space(4),
            tetrahedron_pattern(),
        ] {
            let got = stream_of(&canonical_form(&space));
            assert_eq!(got, oracle_stream(&space), "space {:?}", space.matrix());
        }
    }

    #[test]
    fn relabeled_c4_matches() {
        let c4 = cycle_space(4);
        let swapped = c4.relabel_points(&[2, 1, 0, 3]);
        assert_eq!(canonical_form(&c4), canonical_form(&swapped));
    }

    #[test]
    fn c4_differs_from_discrete() {
        assert_ne!(
            canonical_form(&cycle_space(4)),
            canonical_form(&discrete_space(4))
        );
    }

    #[test]
    fn color_permutation_of_tetrahedron_matches() {
        // Cross-checked against the exhaustive relabeling oracle, which
        // quantifies over all 4!·3! combined relabelings implicitly.
        let t1 = tetrahedron_pattern();
        let t2 = ColoredSpace::new(
            vec![
                vec![0, 3, 1, 2],
                vec![3, 0, 2, 1],
                vec![1, 2, 0, 3],
                vec![2, 1, 3, 0],
            ],
            None,
        )
        .unwrap();
        assert!(equivalent(&t1, &t2));
        assert_eq!(oracle_stream(&t1), oracle_stream(&t2));
    }

    #[test]
    fn discrete_large_is_fast() {
        let d = discrete_space(24);
        let mut reversed: Vec<usize> = (0..24).collect();
        reversed.reverse();
        assert_eq!(canonical_form(&d), canonical_form(&d.relabel_points(&reversed)));
    }

    #[test]
    fn empty_and_single_point() {
        let empty = ColoredSpace::new(vec![], None).unwrap();
        let single = ColoredSpace::new(vec![vec![0]], None).unwrap();
        assert_ne!(canonical_form(&empty), canonical_form(&single));
    }
}
