//! Permutations of `{0..n-1}` and small permutation groups with full
//! element enumeration.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A permutation of `{0..n-1}`, stored by its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    /// Builds a permutation from images, rejecting non-bijective vectors.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if (im as usize) >= n || seen[im as usize] {
                return Err(Error::InvalidPermutation);
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u16>]) -> Result<Self> {
        let mut images: Vec<u16> = (0..n as u16).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w] as usize;
                let to = cycle[(w + 1) % cycle.len()];
                if from >= n || (to as usize) >= n {
                    return Err(Error::InvalidPermutation);
                }
                images[from] = to;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// Composition `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im as usize)
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &im)| *i == im as usize)
            .count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.degree() > 0 && self.fixed_points() == 0
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    /// Sorted multiset of cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Packs degree <= 16 permutations into a nibble-per-point key.
    pub fn code(&self) -> u64 {
        debug_assert!(self.degree() <= 16);
        self.images
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &im)| acc | ((im as u64) << (4 * i)))
    }

    pub fn from_code(n: usize, code: u64) -> Self {
        Permutation {
            images: (0..n).map(|i| ((code >> (4 * i)) & 0xf) as u16).collect(),
        }
    }
}

/// A permutation group with its full element list.
///
/// Elements are sorted by image vector, so two equal groups compare equal
/// and iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

/// Breadth-first closure of a generating set.
pub fn close(degree: usize, generators: &[Permutation], cap: usize) -> Result<PermGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch);
        }
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut seen: HashMap<Vec<u16>, ()> = HashMap::new();
    seen.insert(id.images.clone(), ());
    let mut frontier = vec![id];
    while let Some(cur) = frontier.pop() {
        for g in generators {
            let next = g.compose(&cur);
            if !seen.contains_key(&next.images) {
                if elements.len() + 1 > cap {
                    return Err(Error::OrderCapExceeded(cap));
                }
                seen.insert(next.images.clone(), ());
                elements.push(next.clone());
                frontier.push(next);
            }
        }
    }
    elements.sort_unstable();
    Ok(PermGroup {
        degree,
        generators: generators.to_vec(),
        elements,
    })
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Wraps an already closed, deduplicated element list.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            elements.push(Permutation::identity(degree));
        }
        let group = PermGroup {
            degree,
            generators: Vec::new(),
            elements,
        };
        if !group.is_closed() {
            return Err(Error::InternalInvariantViolation(
                "element list is not closed under composition".into(),
            ));
        }
        let mut group = group;
        group.generators = group.small_generating_set();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    fn is_closed(&self) -> bool {
        if !self.contains(&Permutation::identity(self.degree)) {
            return false;
        }
        for a in &self.elements {
            if !self.contains(&a.inverse()) {
                return false;
            }
            for b in &self.elements {
                if !self.contains(&a.compose(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Greedy generating set, small but not necessarily minimal.
    pub fn small_generating_set(&self) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span = vec![Permutation::identity(self.degree)];
        for e in &self.elements {
            if e.is_identity() || span.binary_search(e).is_ok() {
                continue;
            }
            gens.push(e.clone());
            span = close(self.degree, &gens, self.order())
                .expect("closure of a subgroup stays within the group order")
                .elements;
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// Orbits of the natural point action, each sorted.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut idx = 0;
            while idx < orbit.len() {
                let p = orbit[idx];
                idx += 1;
                for g in self.gens_or_elements() {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    fn gens_or_elements(&self) -> &[Permutation] {
        if self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        }
    }

    /// Partition of the unordered point pairs into orbits.
    pub fn pair_orbitals(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.degree;
        let pair_id = |i: usize, j: usize| -> usize {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            a * n + b
        };
        let mut orbit_of: HashMap<usize, usize> = HashMap::new();
        let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if orbit_of.contains_key(&pair_id(i, j)) {
                    continue;
                }
                let idx = orbits.len();
                let mut orbit = vec![(i, j)];
                orbit_of.insert(pair_id(i, j), idx);
                let mut w = 0;
                while w < orbit.len() {
                    let (a, b) = orbit[w];
                    w += 1;
                    for g in self.gens_or_elements() {
                        let (x, y) = (g.apply(a), g.apply(b));
                        let (x, y) = if x < y { (x, y) } else { (y, x) };
                        if !orbit_of.contains_key(&pair_id(x, y)) {
                            orbit_of.insert(pair_id(x, y), idx);
                            orbit.push((x, y));
                        }
                    }
                }
                orbit.sort_unstable();
                orbits.push(orbit);
            }
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.point_orbits().len() == 1
    }

    /// Transitive with trivial point stabilizers, i.e. order = degree.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree.max(1)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.gens_or_elements();
        for a in gens {
            for b in gens {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Every element squares to the identity.
    pub fn is_boolean(&self) -> bool {
        self.elements.iter().all(|g| g.compose(g).is_identity())
    }

    /// Exactly one element maps x to y, for every pair of points.
    pub fn is_uniquely_transitive(&self) -> bool {
        self.is_regular()
    }

    pub fn involution_count(&self) -> usize {
        self.elements.iter().filter(|g| g.is_involution()).count()
    }

    /// Sorted multiset of element orders, a cheap isomorphism invariant.
    pub fn element_order_multiset(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.elements.iter().map(|g| g.order()).collect();
        orders.sort_unstable();
        orders
    }

    /// True if `other` has the same degree and every element of `self`
    /// lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[u16]]) -> Permutation {
        let owned: Vec<Vec<u16>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &owned).unwrap()
    }

    #[test]
    fn compose_applies_right_then_left() {
        let f = cyc(3, &[&[0, 1]]);
        let g = cyc(3, &[&[1, 2]]);
        // (f ∘ g)(1) = f(2) = 2, (f ∘ g)(2) = f(1) = 0
        let fg = f.compose(&g);
        assert_eq!(fg.apply(1), 2);
        assert_eq!(fg.apply(2), 0);
    }

    #[test]
    fn close_empty_generators_is_trivial() {
        let g = close(3, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn close_transposition_has_order_two() {
        let g = close(2, &[cyc(2, &[&[0, 1]])], 10).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn close_c4_symmetries_gives_dihedral_order_eight() {
        // Oracle: count the permutations of 4 points preserving the
        // C_4 distance pattern d(i,j) = min(|i-j|, 4-|i-j|) by brute force.
        let dist = |i: usize, j: usize| {
            let d = i.abs_diff(j);
            d.min(4 - d)
        };
        let mut brute = 0;
        let mut images = [0u16; 4];
        let mut used = [false; 4];
        fn rec(
            k: usize,
            images: &mut [u16; 4],
            used: &mut [bool; 4],
            dist: &dyn Fn(usize, usize) -> usize,
            count: &mut usize,
        ) {
            if k == 4 {
                *count += 1;
                return;
            }
            for v in 0..4 {
                if used[v] {
                    continue;
                }
                if (0..k).all(|i| dist(i, k) == dist(images[i] as usize, v)) {
                    images[k] = v as u16;
                    used[v] = true;
                    rec(k + 1, images, used, dist, count);
                    used[v] = false;
                }
            }
        }
        rec(0, &mut images, &mut used, &dist, &mut brute);
        assert_eq!(brute, 8);

        let rotation = cyc(4, &[&[0, 1, 2, 3]]);
        let reflection = cyc(4, &[&[1, 3]]);
        let g = close(4, &[rotation, reflection], 100).unwrap();
        assert_eq!(g.order(), brute);
    }

    #[test]
    fn close_is_idempotent() {
        let g = close(4, &[cyc(4, &[&[0, 1, 2, 3]])], 100).unwrap();
        let again = close(4, g.elements(), 100).unwrap();
        assert_eq!(g.elements(), again.elements());
    }

    #[test]
    fn close_respects_cap() {
        let err = close(4, &[cyc(4, &[&[0, 1, 2, 3]])], 3).unwrap_err();
        assert_eq!(err, Error::OrderCapExceeded(3));
    }

    #[test]
    fn orbitals_of_c5_rotations() {
        // Oracle: brute-force orbit closure applying every group element.
        let g = close(5, &[cyc(5, &[&[0, 1, 2, 3, 4]])], 100).unwrap();
        let mut pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| ((i + 1)..5).map(move |j| (i, j)))
            .collect();
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        while let Some(seed) = pairs.first().copied() {
            let mut class = vec![seed];
            loop {
                let mut grew = false;
                for el in g.elements() {
                    for &(a, b) in class.clone().iter() {
                        let (x, y) = (el.apply(a), el.apply(b));
                        let p = (x.min(y), x.max(y));
                        if !class.contains(&p) {
                            class.push(p);
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            pairs.retain(|p| !class.contains(p));
            class.sort_unstable();
            classes.push(class);
        }
        assert_eq!(classes.len(), 2);

        let mut orbitals = g.pair_orbitals();
        orbitals.sort();
        classes.sort();
        assert_eq!(orbitals, classes);
    }

    #[test]
    fn orbitals_trivial_and_symmetric_groups() {
        let trivial = PermGroup::trivial(3);
        assert_eq!(trivial.pair_orbitals().len(), 3);

        let s4 = close(4, &[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])], 100).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.pair_orbitals().len(), 1);
    }

    #[test]
    fn orbital_refinement_under_subgroups() {
        let d4 = close(4, &[cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])], 100).unwrap();
        let c4 = close(4, &[cyc(4, &[&[0, 1, 2, 3]])], 100).unwrap();
        assert!(c4.is_subgroup_of(&d4));
        let big = d4.pair_orbitals();
        for orbit in c4.pair_orbitals() {
            assert!(big
                .iter()
                .any(|o| orbit.iter().all(|p| o.contains(p))));
        }
    }

    #[test]
    fn predicate_examples() {
        let c5 = close(5, &[cyc(5, &[&[0, 1, 2, 3, 4]])], 100).unwrap();
        assert!(c5.is_transitive());
        assert!(c5.is_regular());
        assert!(c5.is_abelian());
        assert!(!c5.is_boolean());

        let klein = close(
            4,
            &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
            100,
        )
        .unwrap();
        assert_eq!(klein.order(), 4);
        assert!(klein.is_regular());
        assert!(klein.is_boolean());

        // Stabilizer of point 2 inside S_3.
        let stab = close(3, &[cyc(3, &[&[0, 1]])], 100).unwrap();
        assert!(!stab.is_transitive());
    }

    #[test]
    fn regular_orbital_count_matches_involution_formula() {
        for group in [
            close(4, &[cyc(4, &[&[0, 1, 2, 3]])], 100).unwrap(),
            close(
                4,
                &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
                100,
            )
            .unwrap(),
            close(5, &[cyc(5, &[&[0, 1, 2, 3, 4]])], 100).unwrap(),
            close(6, &[cyc(6, &[&[0, 1, 2, 3, 4, 5]])], 100).unwrap(),
        ] {
            assert!(group.is_regular());
            let n = group.degree();
            let i = group.involution_count();
            assert_eq!(group.pair_orbitals().len(), i + (n - 1 - i) / 2);
        }
    }
}
