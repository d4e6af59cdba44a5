//! Automorphism groups, k-homogeneity and ultrahomogeneity, evaluation
//! maps, and extension operators.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, DEFAULT_ORDER_CAP};
use crate::space::{ColoredSpace, PartialIsometry};
use crate::structure::is_isosceles_free;
use serde::Serialize;
use std::collections::HashMap;

/// Summary emitted by `homlab analyze`.
#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityReport {
    pub n: usize,
    pub delta: usize,
    pub aut_order: usize,
    pub is_k_homogeneous: Vec<(usize, bool)>,
    pub uniquely_k_homogeneous: Vec<(usize, bool)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ultrahomogeneous: Option<bool>,
    pub isosceles_free: bool,
}

/// Iterated vertex refinement by color fingerprints. Vertices in different
/// classes cannot be exchanged by any automorphism.
fn refine_classes(space: &ColoredSpace) -> Vec<u32> {
    let n = space.n();
    let mut class: Vec<u32> = {
        let mut fp: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut row: Vec<usize> = (0..n).map(|u| space.color(v, u)).collect();
                row.sort_unstable();
                row
            })
            .collect();
        let mut sorted: Vec<Vec<usize>> = fp.clone();
        sorted.sort_unstable();
        sorted.dedup();
        fp.drain(..)
            .map(|row| sorted.binary_search(&row).unwrap() as u32)
            .collect()
    };
    loop {
        let mut fp: Vec<Vec<(u32, usize)>> = (0..n)
            .map(|v| {
                let mut row: Vec<(u32, usize)> =
                    (0..n).filter(|&u| u != v).map(|u| (class[u], space.color(v, u))).collect();
                row.sort_unstable();
                row.push((class[v], 0));
                row
            })
            .collect();
        let mut sorted = fp.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let next: Vec<u32> = fp
            .drain(..)
            .map(|row| sorted.binary_search(&row).unwrap() as u32)
            .collect();
        if next == class {
            return class;
        }
        class = next;
    }
}

struct AutSearch<'a> {
    space: &'a ColoredSpace,
    class: Vec<u32>,
    order: Vec<usize>,
    cap: usize,
    out: Vec<Permutation>,
    capped: bool,
    stop_after_first: bool,
}

impl<'a> AutSearch<'a> {
    fn dfs(&mut self, images: &mut Vec<u16>, used: &mut Vec<bool>) {
        if self.capped || (self.stop_after_first && !self.out.is_empty()) {
            return;
        }
        let k = images.len();
        if k == self.order.len() {
            let n = self.space.n();
            let mut full = vec![0u16; n];
            for (slot, &v) in self.order.iter().enumerate() {
                full[v] = images[slot];
            }
            self.out.push(Permutation::from_images(full).unwrap());
            if self.out.len() > self.cap {
                self.capped = true;
            }
            return;
        }
        let v = self.order[k];
        for w in 0..self.space.n() {
            if used[w] || self.class[w] != self.class[v] {
                continue;
            }
            let ok = (0..k).all(|i| {
                self.space.color(self.order[i], v) == self.space.color(images[i] as usize, w)
            });
            if !ok {
                continue;
            }
            images.push(w as u16);
            used[w] = true;
            self.dfs(images, used);
            used[w] = false;
            images.pop();
        }
    }
}

fn search_maps(
    space: &ColoredSpace,
    seed: &PartialIsometry,
    cap: usize,
    stop_after_first: bool,
) -> Result<Vec<Permutation>> {
    seed.check(space)?;
    let n = space.n();
    let class = refine_classes(space);
    for &(s, t) in &seed.pairs {
        if class[s] != class[t] {
            return Ok(Vec::new());
        }
    }
    let seeded: Vec<usize> = seed.pairs.iter().map(|&(s, _)| s).collect();
    let mut order = seeded.clone();
    let mut rest: Vec<usize> = (0..n).filter(|v| !seeded.contains(v)).collect();
    // Small classes first keeps the branching factor down.
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &c in &class {
        *counts.entry(c).or_insert(0) += 1;
    }
    rest.sort_by_key(|&v| (counts[&class[v]], v));
    order.extend(rest);

    let mut search = AutSearch {
        space,
        class,
        order,
        cap,
        out: Vec::new(),
        capped: false,
        stop_after_first,
    };
    let mut images: Vec<u16> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for &(s, t) in &seed.pairs {
        let _ = s;
        images.push(t as u16);
        used[t] = true;
    }
    // Verify the seed itself is consistent before extending.
    for (i, &(si, ti)) in seed.pairs.iter().enumerate() {
        for &(sj, tj) in &seed.pairs[i + 1..] {
            if space.color(si, sj) != space.color(ti, tj) {
                return Err(Error::NotPartialIsometry);
            }
        }
    }
    search.dfs(&mut images, &mut used);
    if search.capped {
        return Err(Error::OrderCapExceeded(cap));
    }
    Ok(search.out)
}

/// The full group of color-preserving permutations.
pub fn automorphisms(space: &ColoredSpace, cap: usize) -> Result<PermGroup> {
    let elements = search_maps(space, &PartialIsometry::empty(), cap, false)?;
    PermGroup::from_elements(space.n(), elements)
}

pub fn automorphisms_default(space: &ColoredSpace) -> Result<PermGroup> {
    automorphisms(space, DEFAULT_ORDER_CAP)
}

/// Some automorphism extending the partial isometry, or None.
pub fn extend_partial(
    space: &ColoredSpace,
    f: &PartialIsometry,
    cap: usize,
) -> Result<Option<Permutation>> {
    let found = search_maps(space, f, cap, true)?;
    Ok(found.into_iter().next())
}

/// All automorphisms extending the partial isometry.
pub fn extensions(
    space: &ColoredSpace,
    f: &PartialIsometry,
    cap: usize,
) -> Result<Vec<Permutation>> {
    search_maps(space, f, cap, false)
}

/// Orbits of ordered k-tuples of distinct points under the group, as a map
/// tuple -> orbit id. Orbits are computed from the generators only.
fn tuple_orbits(n: usize, k: usize, group: &PermGroup) -> HashMap<Vec<u16>, u32> {
    let mut gens: Vec<&Permutation> = group.generators().iter().collect();
    let elements;
    if gens.is_empty() {
        elements = group.elements();
        gens = elements.iter().collect();
    }
    let mut orbit_of: HashMap<Vec<u16>, u32> = HashMap::new();
    let mut tuple = Vec::with_capacity(k);
    let mut all: Vec<Vec<u16>> = Vec::new();
    fn gen_tuples(n: usize, k: usize, tuple: &mut Vec<u16>, all: &mut Vec<Vec<u16>>) {
        if tuple.len() == k {
            all.push(tuple.clone());
            return;
        }
        for v in 0..n as u16 {
            if !tuple.contains(&v) {
                tuple.push(v);
                gen_tuples(n, k, tuple, all);
                tuple.pop();
            }
        }
    }
    gen_tuples(n, k, &mut tuple, &mut all);
    let mut next_orbit = 0u32;
    for t in &all {
        if orbit_of.contains_key(t) {
            continue;
        }
        let id = next_orbit;
        next_orbit += 1;
        let mut queue = vec![t.clone()];
        orbit_of.insert(t.clone(), id);
        while let Some(cur) = queue.pop() {
            for g in &gens {
                let img: Vec<u16> = cur.iter().map(|&p| g.apply(p as usize) as u16).collect();
                if !orbit_of.contains_key(&img) {
                    orbit_of.insert(img.clone(), id);
                    queue.push(img);
                }
            }
        }
    }
    orbit_of
}

fn tuple_fingerprint(space: &ColoredSpace, tuple: &[u16]) -> Vec<u16> {
    let k = tuple.len();
    let mut fp = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            fp.push(space.color(tuple[i] as usize, tuple[j] as usize) as u16);
        }
    }
    fp
}

/// Size-j isometry classes each form a single orbit, for every j <= k.
fn k_homogeneous_with(space: &ColoredSpace, k: usize, aut: &PermGroup) -> bool {
    let n = space.n();
    for j in 1..=k.min(n) {
        let orbit_of = tuple_orbits(n, j, aut);
        let mut class_orbit: HashMap<Vec<u16>, u32> = HashMap::new();
        for (tuple, &orbit) in &orbit_of {
            let fp = tuple_fingerprint(space, tuple);
            match class_orbit.get(&fp) {
                None => {
                    class_orbit.insert(fp, orbit);
                }
                Some(&o) if o == orbit => {}
                Some(_) => return false,
            }
        }
    }
    true
}

/// Every isometry between subsets of size <= k extends to an automorphism.
pub fn is_k_homogeneous(space: &ColoredSpace, k: usize, cap: usize) -> Result<bool> {
    assert!(k >= 1, "k must be at least 1");
    if space.n() == 0 {
        return Ok(true);
    }
    let aut = automorphisms(space, cap)?;
    Ok(k_homogeneous_with(space, k, &aut))
}

/// k-homogeneous with a unique extension for every nonempty domain.
pub fn is_uniquely_k_homogeneous(space: &ColoredSpace, k: usize, cap: usize) -> Result<bool> {
    assert!(k >= 1, "k must be at least 1");
    if space.n() == 0 {
        return Ok(true);
    }
    let aut = automorphisms(space, cap)?;
    if !k_homogeneous_with(space, k, &aut) {
        return Ok(false);
    }
    // Uniqueness for all domains follows from uniqueness on single points:
    // the pointwise stabilizer of every point must be trivial.
    for v in 0..space.n() {
        let fixing = aut.elements().iter().filter(|g| g.apply(v) == v).count();
        if fixing != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

const ULTRA_FULL_MAX: usize = 10;

/// k-homogeneous for every k. Shortcut: a 1-homogeneous isosceles-free
/// space is already ultrahomogeneous, because an isometric embedding is
/// pinned by the image of one point.
pub fn is_ultrahomogeneous(space: &ColoredSpace, cap: usize) -> Result<bool> {
    let n = space.n();
    if n == 0 {
        return Ok(true);
    }
    let aut = automorphisms(space, cap)?;
    if is_isosceles_free(space) {
        return Ok(k_homogeneous_with(space, 1, &aut));
    }
    if n > ULTRA_FULL_MAX {
        return Err(Error::DegreeTooLarge { n, max: ULTRA_FULL_MAX });
    }
    for k in 1..n {
        if !k_homogeneous_with_single(space, k, &aut) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn k_homogeneous_with_single(space: &ColoredSpace, k: usize, aut: &PermGroup) -> bool {
    let orbit_of = tuple_orbits(space.n(), k, aut);
    let mut class_orbit: HashMap<Vec<u16>, u32> = HashMap::new();
    for (tuple, &orbit) in &orbit_of {
        let fp = tuple_fingerprint(space, tuple);
        match class_orbit.get(&fp) {
            None => {
                class_orbit.insert(fp, orbit);
            }
            Some(&o) if o == orbit => {}
            Some(_) => return false,
        }
    }
    true
}

/// Injectivity/surjectivity of the distance map `D_a = d(·, a)` and the
/// evaluation map `E_a: f -> f(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvaluationFlags {
    pub d_injective: bool,
    pub d_surjective: bool,
    pub e_injective: bool,
    pub e_surjective: bool,
}

pub fn evaluation_bijectivity(
    space: &ColoredSpace,
    a: usize,
    cap: usize,
) -> Result<EvaluationFlags> {
    if a >= space.n() {
        return Err(Error::PointOutOfRange(a));
    }
    let n = space.n();
    let mut seen_colors = vec![0usize; space.delta()];
    for x in 0..n {
        seen_colors[space.color(a, x)] += 1;
    }
    let d_injective = seen_colors.iter().all(|&c| c <= 1);
    let d_surjective = seen_colors.iter().all(|&c| c >= 1);

    let aut = automorphisms(space, cap)?;
    let mut image_counts = vec![0usize; n];
    for g in aut.elements() {
        image_counts[g.apply(a)] += 1;
    }
    let e_injective = image_counts.iter().all(|&c| c <= 1);
    let e_surjective = image_counts.iter().all(|&c| c >= 1);
    Ok(EvaluationFlags {
        d_injective,
        d_surjective,
        e_injective,
        e_surjective,
    })
}

/// The unique operator Aut(X) -> Aut(Y) along an embedding of an
/// isosceles-free space into a homogeneous isosceles-free space: each
/// f goes to the unique automorphism of Y sending e(a) to e(f(a)).
pub struct ExtensionOperator {
    pub pairs: Vec<(Permutation, Permutation)>,
}

impl ExtensionOperator {
    pub fn image_of(&self, f: &Permutation) -> Option<&Permutation> {
        self.pairs.iter().find(|(src, _)| src == f).map(|(_, im)| im)
    }
}

pub fn extension_operator(
    x: &ColoredSpace,
    y: &ColoredSpace,
    embedding: &[usize],
    cap: usize,
) -> Result<ExtensionOperator> {
    if !is_isosceles_free(x) {
        return Err(Error::PreconditionFailed("domain is not isosceles-free".into()));
    }
    if !is_isosceles_free(y) || !is_k_homogeneous(y, 1, cap)? {
        return Err(Error::PreconditionFailed(
            "codomain is not homogeneous isosceles-free".into(),
        ));
    }
    if embedding.len() != x.n() {
        return Err(Error::PreconditionFailed("embedding is not total".into()));
    }
    let mut seen = vec![false; y.n()];
    for &t in embedding {
        if t >= y.n() || seen[t] {
            return Err(Error::PreconditionFailed("embedding is not injective".into()));
        }
        seen[t] = true;
    }
    for i in 0..x.n() {
        for j in 0..x.n() {
            if (x.dist(i, j) - y.dist(embedding[i], embedding[j])).abs() > 1e-12 {
                return Err(Error::PreconditionFailed(
                    "embedding does not preserve distances".into(),
                ));
            }
        }
    }
    if x.n() == 0 {
        return Ok(ExtensionOperator {
            pairs: vec![(Permutation::identity(0), Permutation::identity(y.n()))],
        });
    }

    let aut_x = automorphisms(x, cap)?;
    let a = 0usize;
    let mut pairs = Vec::with_capacity(aut_x.order());
    for f in aut_x.elements() {
        let seed = PartialIsometry::new(vec![(embedding[a], embedding[f.apply(a)])]);
        let lifted = extend_partial(y, &seed, cap)?.ok_or_else(|| {
            Error::InternalInvariantViolation("no extension in homogeneous codomain".into())
        })?;
        // e_*(f) ∘ e = e ∘ f, pointwise.
        for p in 0..x.n() {
            if lifted.apply(embedding[p]) != embedding[f.apply(p)] {
                return Err(Error::InternalInvariantViolation(
                    "extension operator fails to commute with the embedding".into(),
                ));
            }
        }
        pairs.push((f.clone(), lifted));
    }
    // Injective group homomorphism.
    for (f0, l0) in &pairs {
        for (f1, l1) in &pairs {
            let comp = f0.compose(f1);
            let expected = l0.compose(l1);
            let found = pairs
                .iter()
                .find(|(src, _)| *src == comp)
                .map(|(_, im)| im)
                .expect("composition stays in the group");
            if *found != expected {
                return Err(Error::InternalInvariantViolation(
                    "extension operator is not a homomorphism".into(),
                ));
            }
            if f0 != f1 && l0 == l1 {
                return Err(Error::InternalInvariantViolation(
                    "extension operator is not injective".into(),
                ));
            }
        }
    }
    Ok(ExtensionOperator { pairs })
}

/// The report used by the analyze subcommand.
pub fn analyze(
    space: &ColoredSpace,
    ks: &[usize],
    check_ultra: bool,
    cap: usize,
) -> Result<HomogeneityReport> {
    let aut = automorphisms(space, cap)?;
    let mut is_k = Vec::new();
    let mut unique_k = Vec::new();
    for &k in ks {
        let hom = space.n() == 0 || k_homogeneous_with(space, k, &aut);
        is_k.push((k, hom));
        let unique = hom
            && (space.n() == 0
                || (0..space.n()).all(|v| {
                    aut.elements().iter().filter(|g| g.apply(v) == v).count() == 1
                }));
        unique_k.push((k, unique));
    }
    let ultra = if check_ultra {
        Some(is_ultrahomogeneous(space, cap)?)
    } else {
        None
    };
    Ok(HomogeneityReport {
        n: space.n(),
        delta: space.delta(),
        aut_order: aut.order(),
        is_k_homogeneous: is_k,
        uniquely_k_homogeneous: unique_k,
        ultrahomogeneous: ultra,
        isosceles_free: is_isosceles_free(space),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{binary_space, cycle, d_space, hexagon, tetrahedron};

    const CAP: usize = DEFAULT_ORDER_CAP;

    #[test]
    fn aut_of_c4_has_order_eight() {
        // Brute-force oracle over all 24 permutations lives in the perm
        // module test; here the backtracker must agree.
        let aut = automorphisms_default(&cycle(4)).unwrap();
        assert_eq!(aut.order(), 8);
    }

    #[test]
    fn aut_of_binary_space_equals_point_count() {
        let x2 = binary_space(2).unwrap();
        let aut = automorphisms_default(&x2).unwrap();
        assert_eq!(aut.order(), 4);
    }

    #[test]
    fn aut_of_d3_has_order_six() {
        let d3 = d_space(3).unwrap();
        let aut = automorphisms_default(&d3).unwrap();
        assert_eq!(aut.order(), 6);
    }

    #[test]
    fn extend_partial_examples() {
        let c5 = cycle(5);
        let id = extend_partial(&c5, &PartialIsometry::empty(), CAP).unwrap();
        assert!(id.is_some());

        let c4 = cycle(4);
        let rot = extend_partial(&c4, &PartialIsometry::new(vec![(0, 1)]), CAP)
            .unwrap()
            .expect("a rotation maps 0 to 1");
        assert_eq!(rot.apply(0), 1);

        let hex = hexagon(1.1, 1.2, 1.3, 1.4, 1.5).unwrap();
        let none = extend_partial(&hex, &PartialIsometry::new(vec![(1, 2)]), CAP).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn cycles_are_k_homogeneous_for_all_k() {
        for n in [3usize, 5, 6] {
            let c = cycle(n);
            for k in 1..=n.min(4) {
                assert!(is_k_homogeneous(&c, k, CAP).unwrap(), "C_{n} not {k}-homogeneous");
            }
        }
    }

    #[test]
    fn binary_space_is_uniquely_two_homogeneous() {
        for m in [1usize, 2, 3] {
            let x = binary_space(m).unwrap();
            assert!(is_uniquely_k_homogeneous(&x, 2, CAP).unwrap());
        }
    }

    #[test]
    fn discrete_space_unique_homogeneity_fails() {
        let matrix: Vec<Vec<u16>> = (0..4)
            .map(|i| (0..4).map(|j| u16::from(i != j)).collect())
            .collect();
        let discrete = ColoredSpace::new(matrix, None).unwrap();
        assert!(is_k_homogeneous(&discrete, 1, CAP).unwrap());
        assert!(!is_uniquely_k_homogeneous(&discrete, 1, CAP).unwrap());
    }

    #[test]
    fn ultrahomogeneity_examples() {
        let single = ColoredSpace::new(vec![vec![0]], None).unwrap();
        assert!(is_ultrahomogeneous(&single, CAP).unwrap());

        let d3 = d_space(3).unwrap();
        assert!(!is_ultrahomogeneous(&d3, CAP).unwrap());
        // Witness: some 2-point partial isometry fails to extend; find one.
        let mut witnessed = false;
        'outer: for a in 0..6 {
            for b in 0..6 {
                for x in 0..6 {
                    for y in 0..6 {
                        let f = PartialIsometry::new(vec![(a, x), (b, y)]);
                        if f.check(&d3).is_ok()
                            && extend_partial(&d3, &f, CAP).unwrap().is_none()
                        {
                            witnessed = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(witnessed);

        let c7 = cycle(7);
        assert!(is_ultrahomogeneous(&c7, CAP).unwrap());
    }

    #[test]
    fn ultra_shortcut_and_full_check_agree_on_tetrahedron() {
        let t = tetrahedron(1.0, 1.1, 1.2).unwrap();
        // Shortcut path (isosceles-free).
        assert!(is_ultrahomogeneous(&t, CAP).unwrap());
        // Full path: check k-homogeneity for every k directly.
        let aut = automorphisms_default(&t).unwrap();
        for k in 1..t.n() {
            assert!(k_homogeneous_with_single(&t, k, &aut));
        }
    }

    #[test]
    fn at_most_one_extension_on_isosceles_free_spaces() {
        for space in [
            tetrahedron(1.0, 1.1, 1.2).unwrap(),
            hexagon(1.1, 1.2, 1.3, 1.4, 1.5).unwrap(),
            binary_space(3).unwrap(),
        ] {
            assert!(is_isosceles_free(&space));
            let n = space.n();
            for a in 0..n {
                for x in 0..n {
                    let f = PartialIsometry::new(vec![(a, x)]);
                    let exts = extensions(&space, &f, CAP).unwrap();
                    assert!(exts.len() <= 1, "two extensions of a 1-point map");
                }
            }
        }
    }

    #[test]
    fn evaluation_flags_examples() {
        let hex = hexagon(1.1, 1.2, 1.3, 1.4, 1.5).unwrap();
        let flags = evaluation_bijectivity(&hex, 0, CAP).unwrap();
        assert!(flags.d_injective && flags.d_surjective);
        assert!(!flags.e_surjective);

        let x2 = binary_space(2).unwrap();
        let flags = evaluation_bijectivity(&x2, 1, CAP).unwrap();
        assert!(flags.d_injective && flags.d_surjective && flags.e_injective && flags.e_surjective);

        let matrix: Vec<Vec<u16>> = (0..3)
            .map(|i| (0..3).map(|j| u16::from(i != j)).collect())
            .collect();
        let discrete = ColoredSpace::new(matrix, None).unwrap();
        let flags = evaluation_bijectivity(&discrete, 0, CAP).unwrap();
        assert!(!flags.d_injective);
    }

    #[test]
    fn extension_operator_identity_and_inclusion() {
        let x2 = binary_space(2).unwrap();
        let op = extension_operator(&x2, &x2, &[0, 1, 2, 3], CAP).unwrap();
        for (f, lifted) in &op.pairs {
            assert_eq!(f, lifted);
        }

        // X_1 inside X_2 as the norm-{0,1} subspace.
        let x1 = binary_space(1).unwrap();
        let op = extension_operator(&x1, &x2, &[0, 1], CAP).unwrap();
        assert_eq!(op.pairs.len(), 2);
        // Oracle: the nontrivial automorphism of X_1 swaps 0 and 1; its
        // image must send 0 to 1, and by the xor pattern also 2 to 3.
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        let lifted = op.image_of(&swap).unwrap();
        assert_eq!(lifted.apply(0), 1);
        assert_eq!(lifted.apply(2), 3);
    }

    #[test]
    fn extension_operator_functor_law() {
        let x1 = binary_space(1).unwrap();
        let x2 = binary_space(2).unwrap();
        let x3 = binary_space(3).unwrap();
        let i = vec![0usize, 1];
        let j = vec![0usize, 1, 2, 3];
        let i_op = extension_operator(&x1, &x2, &i, CAP).unwrap();
        let j_op = extension_operator(&x2, &x3, &j, CAP).unwrap();
        let ji: Vec<usize> = i.iter().map(|&p| j[p]).collect();
        let ji_op = extension_operator(&x1, &x3, &ji, CAP).unwrap();
        for (f, direct) in &ji_op.pairs {
            let via_i = i_op.image_of(f).unwrap();
            let via_j = j_op.image_of(via_i).unwrap();
            assert_eq!(via_j, direct);
        }
    }

    #[test]
    fn product_aut_order_multiplies_when_sums_are_injective() {
        use crate::constructions::{l1_product, scale};
        let left = scale(&cycle(3), 2.0).unwrap();
        let right = binary_space(1).unwrap();
        let product = l1_product(&left, &right).unwrap();
        let a = automorphisms_default(&left).unwrap().order();
        let b = automorphisms_default(&right).unwrap().order();
        let ab = automorphisms_default(&product).unwrap().order();
        assert_eq!(ab, a * b);
    }
}
