//! Singleton distances, the two invariant decompositions, quotients,
//! normed Z2-space representations, and the classification of
//! 1-homogeneous spaces.

use crate::canon::equivalent;
use crate::error::{Error, Result};
use crate::homogeneity::{automorphisms, extensions, is_k_homogeneous};
use crate::perm::{PermGroup, Permutation};
use crate::space::{ColoredSpace, PartialIsometry};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecompositionKind {
    IsoscelesFree,
    IsoscelesGenerated,
}

/// A partition of the point set into pairwise isometric components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub blocks: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn block_of(&self, p: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&p))
            .expect("point in some block")
    }

    fn from_classes(kind: DecompositionKind, n: usize, class: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<Option<usize>> = vec![None; n];
        for p in 0..n {
            let root = class[p];
            let b = *index[root].get_or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(p);
        }
        Decomposition { kind, blocks }
    }
}

/// All distances from any fixed point are pairwise distinct.
pub fn is_isosceles_free(space: &ColoredSpace) -> bool {
    let n = space.n();
    for i in 0..n {
        let mut seen = vec![false; space.delta()];
        for j in 0..n {
            let c = space.color(i, j);
            if seen[c] {
                return false;
            }
            seen[c] = true;
        }
    }
    true
}

/// Colors that occur exactly once in every row (color 0 included).
///
/// Requires 1-homogeneity, which makes the per-point counts agree; we verify
/// the counts globally rather than at a single point.
pub fn singleton_distances(space: &ColoredSpace, cap: usize) -> Result<Vec<usize>> {
    if !is_k_homogeneous(space, 1, cap)? {
        return Err(Error::NotHomogeneous(1));
    }
    Ok(singleton_colors_unchecked(space))
}

fn singleton_colors_unchecked(space: &ColoredSpace) -> Vec<usize> {
    let n = space.n();
    let c = space.delta();
    let mut singleton = vec![true; c];
    let mut present = vec![true; c];
    for i in 0..n {
        let mut counts = vec![0usize; c];
        for j in 0..n {
            counts[space.color(i, j)] += 1;
        }
        for col in 0..c {
            if counts[col] != 1 {
                singleton[col] = false;
            }
            if counts[col] == 0 {
                present[col] = false;
            }
        }
    }
    (0..c).filter(|&col| singleton[col] && present[col]).collect()
}

fn union_find_root(parent: &mut Vec<usize>, mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
    let (ra, rb) = (union_find_root(parent, a), union_find_root(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Partition by `d(x, y) singleton`, valid on 2-homogeneous spaces. Each
/// block is a homogeneous isosceles-free space and blocks are pairwise
/// isometric; both facts are re-verified.
pub fn isosceles_free_components(space: &ColoredSpace, cap: usize) -> Result<Decomposition> {
    if !is_k_homogeneous(space, 2, cap)? {
        return Err(Error::NotHomogeneous(2));
    }
    let n = space.n();
    let singleton = {
        let s = singleton_colors_unchecked(space);
        let mut flag = vec![false; space.delta()];
        for c in s {
            flag[c] = true;
        }
        flag
    };
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if singleton[space.color(i, j)] {
                union(&mut parent, i, j);
            }
        }
    }
    // The relation must already be transitive on a 2-homogeneous space.
    for i in 0..n {
        for j in 0..n {
            if i != j
                && union_find_root(&mut parent, i) == union_find_root(&mut parent, j)
                && !singleton[space.color(i, j)]
            {
                return Err(Error::InternalInvariantViolation(
                    "singleton relation is not transitive".into(),
                ));
            }
        }
    }
    let class: Vec<usize> = (0..n).map(|p| union_find_root(&mut parent, p)).collect();
    let decomposition = Decomposition::from_classes(DecompositionKind::IsoscelesFree, n, &class);
    for block in &decomposition.blocks {
        let sub = space.subspace(block)?;
        if !is_isosceles_free(&sub) {
            return Err(Error::InternalInvariantViolation(
                "component is not isosceles-free".into(),
            ));
        }
    }
    verify_blocks_isometric(space, &decomposition)?;
    Ok(decomposition)
}

fn verify_blocks_isometric(space: &ColoredSpace, decomposition: &Decomposition) -> Result<()> {
    if decomposition.blocks.len() < 2 {
        return Ok(());
    }
    let first = space.subspace(&decomposition.blocks[0])?;
    let first_form = crate::canon::canonical_form(&first.without_palette());
    for block in &decomposition.blocks[1..] {
        let sub = space.subspace(block)?.without_palette();
        if crate::canon::canonical_form(&sub) != first_form {
            return Err(Error::InternalInvariantViolation(
                "blocks are not pairwise isometric".into(),
            ));
        }
    }
    Ok(())
}

/// Partition by the transitive closure of "some distance from x repeats",
/// valid on 1-homogeneous spaces. Verified invariant under every
/// automorphism.
pub fn isosceles_generated_components(space: &ColoredSpace, cap: usize) -> Result<Decomposition> {
    if !is_k_homogeneous(space, 1, cap)? {
        return Err(Error::NotHomogeneous(1));
    }
    let decomposition = isosceles_generated_components_unchecked(space);
    let aut = automorphisms(space, cap)?;
    let class: Vec<usize> = (0..space.n()).map(|p| decomposition.block_of(p)).collect();
    for g in aut.elements() {
        for i in 0..space.n() {
            for j in 0..space.n() {
                if class[i] == class[j] && class[g.apply(i)] != class[g.apply(j)] {
                    return Err(Error::InternalInvariantViolation(
                        "decomposition is not invariant".into(),
                    ));
                }
            }
        }
    }
    verify_blocks_isometric(space, &decomposition)?;
    Ok(decomposition)
}

pub(crate) fn isosceles_generated_components_unchecked(space: &ColoredSpace) -> Decomposition {
    let n = space.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for x in 0..n {
        let mut first: Vec<Option<usize>> = vec![None; space.delta()];
        for y in 0..n {
            if y == x {
                continue;
            }
            let c = space.color(x, y);
            match first[c] {
                None => first[c] = Some(y),
                Some(z) => {
                    union(&mut parent, x, y);
                    union(&mut parent, x, z);
                }
            }
        }
    }
    let class: Vec<usize> = (0..n).map(|p| union_find_root(&mut parent, p)).collect();
    Decomposition::from_classes(DecompositionKind::IsoscelesGenerated, n, &class)
}

/// Subgroup of automorphisms fixing every block setwise; verified normal.
pub fn aut_star(
    space: &ColoredSpace,
    decomposition: &Decomposition,
    cap: usize,
) -> Result<PermGroup> {
    let aut = automorphisms(space, cap)?;
    let class: Vec<usize> = (0..space.n()).map(|p| decomposition.block_of(p)).collect();
    let fixing: Vec<Permutation> = aut
        .elements()
        .iter()
        .filter(|g| (0..space.n()).all(|p| class[g.apply(p)] == class[p]))
        .cloned()
        .collect();
    let star = PermGroup::from_elements(space.n(), fixing)?;
    for g in aut.elements() {
        let ginv = g.inverse();
        for h in star.elements() {
            if !star.contains(&g.compose(h).compose(&ginv)) {
                return Err(Error::InternalInvariantViolation(
                    "block-fixing subgroup is not normal".into(),
                ));
            }
        }
    }
    Ok(star)
}

/// Outcome of `quotient_space`: the quotient together with the order
/// identity |Aut(X)| = |Aut_*(X)| · |Aut(X/~)| it was checked against.
pub struct QuotientOutcome {
    pub quotient: ColoredSpace,
    pub aut_order: usize,
    pub aut_star_order: usize,
    pub quotient_aut_order: usize,
}

/// Quotient by the isosceles-generated decomposition, with fresh distances
/// in `{0} ∪ [a, 2a]`; verified homogeneous isosceles-free.
pub fn quotient_space(
    space: &ColoredSpace,
    decomposition: &Decomposition,
    a: f64,
    cap: usize,
) -> Result<QuotientOutcome> {
    if decomposition.kind != DecompositionKind::IsoscelesGenerated {
        return Err(Error::PreconditionFailed(
            "quotient needs the isosceles-generated decomposition".into(),
        ));
    }
    let recomputed = isosceles_generated_components(space, cap)?;
    if recomputed.blocks != decomposition.blocks {
        return Err(Error::PreconditionFailed(
            "decomposition does not match the isosceles-generated components".into(),
        ));
    }
    let n = space.n();
    let c = space.delta();
    // Distances r, q are identified when they occur from one point into a
    // single block.
    let mut parent: Vec<usize> = (0..c).collect();
    for x in 0..n {
        for block in &decomposition.blocks {
            let mut first: Option<usize> = None;
            for &y in block {
                let col = space.color(x, y);
                match first {
                    None => first = Some(col),
                    Some(f) => union(&mut parent, f, col),
                }
            }
        }
    }
    let class_of: Vec<usize> = (0..c).map(|col| union_find_root(&mut parent, col)).collect();
    let blocks = &decomposition.blocks;
    let m = blocks.len();
    let mut matrix = vec![vec![0u16; m]; m];
    let mut fresh: Vec<usize> = Vec::new();
    for (bi,
        block_i) in blocks.iter().enumerate() {
        for (bj, block_j) in blocks.iter().enumerate() {
            if bi == bj {
                continue;
            }
            let class = class_of[space.color(block_i[0], block_j[0])];
            // All representatives between the two blocks must agree.
            for &x in block_i {
                for &y in block_j {
                    if class_of[space.color(x, y)] != class {
                        return Err(Error::InternalInvariantViolation(
                            "quotient distance is not well-defined".into(),
                        ));
                    }
                }
            }
            let color = match fresh.iter().position(|&f| f == class) {
                Some(k) => k + 1,
                None => {
                    fresh.push(class);
                    fresh.len()
                }
            };
            matrix[bi][bj] = color as u16;
        }
    }
    let quotient = ColoredSpace::new(matrix, None)?.realize_metric(a);
    if !is_isosceles_free(&quotient) || !is_k_homogeneous(&quotient, 1, cap)? {
        return Err(Error::InternalInvariantViolation(
            "quotient is not homogeneous isosceles-free".into(),
        ));
    }
    let aut_order = automorphisms(space, cap)?.order();
    let aut_star_order = aut_star(space, decomposition, cap)?.order();
    let quotient_aut_order = automorphisms(&quotient, cap)?.order();
    if aut_order != aut_star_order * quotient_aut_order {
        return Err(Error::InternalInvariantViolation(format!(
            "order identity fails: {aut_order} != {aut_star_order} * {quotient_aut_order}"
        )));
    }
    Ok(QuotientOutcome {
        quotient,
        aut_order,
        aut_star_order,
        quotient_aut_order,
    })
}

/// Nonempty, 1-homogeneous, with a Boolean automorphism group. The
/// Abelian/Boolean equivalence for such groups is asserted as a sanity
/// check.
pub fn is_boolean_space(space: &ColoredSpace, cap: usize) -> Result<bool> {
    if space.n() == 0 {
        return Ok(false);
    }
    if !is_k_homogeneous(space, 1, cap)? {
        return Ok(false);
    }
    let aut = automorphisms(space, cap)?;
    let boolean = aut.is_boolean();
    let abelian = aut.is_abelian();
    if boolean != abelian {
        return Err(Error::InternalInvariantViolation(
            "Abelian and Boolean disagree for the automorphism group of a 1-homogeneous space"
                .into(),
        ));
    }
    Ok(boolean)
}

/// A Z2-norm on the subsets of an m-element basis, indexed by bitmask.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormTable {
    pub m: usize,
    pub norm: Vec<f64>,
}

impl NormTable {
    pub fn new(m: usize, norm: Vec<f64>) -> Result<Self> {
        if norm.len() != 1 << m {
            return Err(Error::PreconditionFailed(format!(
                "norm table needs {} entries",
                1usize << m
            )));
        }
        if norm[0] != 0.0 {
            return Err(Error::PreconditionFailed("norm of the empty set must be 0".into()));
        }
        if norm.iter().any(|&v| v < 0.0) {
            return Err(Error::PreconditionFailed("norms must be nonnegative".into()));
        }
        Ok(NormTable { m, norm })
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.norm.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sorted.windows(2).all(|w| w[0] < w[1])
    }

    /// `norm[x ^ y] <= norm[x] + norm[y]` for all masks.
    pub fn satisfies_triangle(&self) -> bool {
        let size = 1 << self.m;
        for x in 0..size {
            for y in 0..size {
                if self.norm[x ^ y] > self.norm[x] + self.norm[y] + 1e-12 {
                    return false;
                }
            }
        }
        true
    }
}

/// Identifies a homogeneous isosceles-free space of size 2^m with a
/// Z2-linear space over a greedily extracted basis and returns the norm
/// table. Round-trip against `boolean_space` is verified.
pub fn to_norm_table(space: &ColoredSpace, base: usize, cap: usize) -> Result<NormTable> {
    if space.n() == 0 {
        return Err(Error::EmptySpace);
    }
    if base >= space.n() {
        return Err(Error::PointOutOfRange(base));
    }
    if !is_isosceles_free(space) || !is_k_homogeneous(space, 1, cap)? {
        return Err(Error::PreconditionFailed(
            "space is not homogeneous isosceles-free".into(),
        ));
    }
    let n = space.n();
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo);
    }
    let m = n.trailing_zeros() as usize;

    // Translation structure: x + y := T_x(y) where T_x is the unique
    // automorphism moving the base point to x.
    let mut translation: Vec<Permutation> = Vec::with_capacity(n);
    for x in 0..n {
        let ext = extensions(space, &PartialIsometry::new(vec![(base, x)]), cap)?;
        if ext.len() != 1 {
            return Err(Error::InternalInvariantViolation(
                "translations are not unique".into(),
            ));
        }
        translation.push(ext.into_iter().next().unwrap());
    }
    let add = |x: usize, y: usize| translation[x].apply(y);

    // Greedy basis over points sorted by distance from the base.
    let mut by_norm: Vec<usize> = (0..n).collect();
    by_norm.sort_by_key(|&p| space.color(base, p));
    let mut in_span = vec![false; n];
    in_span[base] = true;
    let mut span = vec![base];
    let mut basis: Vec<usize> = Vec::new();
    for &p in &by_norm {
        if in_span[p] {
            continue;
        }
        basis.push(p);
        let old = span.clone();
        for &s in &old {
            let q = add(s, p);
            if !in_span[q] {
                in_span[q] = true;
                span.push(q);
            }
        }
    }
    if basis.len() != m {
        return Err(Error::InternalInvariantViolation(
            "basis extraction did not yield a basis".into(),
        ));
    }
    let mut norm = vec![0.0; n];
    for mask in 0..n {
        let mut point = base;
        for (bit, &b) in basis.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                point = add(point, b);
            }
        }
        norm[mask] = space.dist(base, point);
    }
    let table = NormTable::new(m, norm)?;
    let rebuilt = crate::constructions::boolean_space(&table)?;
    if !equivalent(&rebuilt.without_palette(), &space.without_palette()) {
        return Err(Error::InternalInvariantViolation(
            "norm table does not rebuild the space".into(),
        ));
    }
    Ok(table)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormPropertyReport {
    pub additive: bool,
    pub monotone: bool,
    /// Column basis images of a linear change of coordinates making the
    /// table additive, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub additive_witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monotone_witness: Option<Vec<usize>>,
}

/// Whether some invertible Z2-linear change of coordinates makes the norm
/// additive (norm of a union of basis vectors is the sum) or monotone
/// (norm respects set inclusion). Exhaustive over GL(m, 2), m <= 4.
pub fn norm_properties(table: &NormTable) -> Result<NormPropertyReport> {
    if table.m > 4 {
        return Err(Error::BasisSearchTooLarge(table.m));
    }
    let m = table.m;
    let size = 1usize << m;
    let mut additive_witness = None;
    let mut monotone_witness = None;
    // A linear map is given by the images of the m basis vectors.
    let mut cols = vec![0usize; m];
    enumerate_invertible(m, 0, &mut cols, &mut |cols| {
        let transformed: Vec<f64> = (0..size)
            .map(|x| {
                let mut image = 0usize;
                for (bit, &col) in cols.iter().enumerate() {
                    if x >> bit & 1 == 1 {
                        image ^= col;
                    }
                }
                table.norm[image]
            })
            .collect();
        if additive_witness.is_none() {
            let additive = (0..size).all(|x| {
                let sum: f64 = (0..m)
                    .filter(|&b| x >> b & 1 == 1)
                    .map(|b| transformed[1 << b])
                    .sum();
                (transformed[x] - sum).abs() < 1e-9
            });
            if additive {
                additive_witness = Some(cols.to_vec());
            }
        }
        if monotone_witness.is_none() {
            let monotone = (0..size).all(|x| {
                (0..size)
                    .filter(|&y| y & x == x)
                    .all(|y| transformed[x] <= transformed[y] + 1e-12)
            });
            if monotone {
                monotone_witness = Some(cols.to_vec());
            }
        }
    });
    Ok(NormPropertyReport {
        additive: additive_witness.is_some(),
        monotone: monotone_witness.is_some(),
        additive_witness,
        monotone_witness,
    })
}

fn enumerate_invertible(m: usize, k: usize, cols: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if k == m {
        f(cols);
        return;
    }
    for v in 1..(1usize << m) {
        cols[k] = v;
        // Reject once the chosen columns become linearly dependent.
        if independent(&cols[..=k]) {
            enumerate_invertible(m, k + 1, cols, f);
        }
    }
}

fn independent(cols: &[usize]) -> bool {
    let mut basis: Vec<usize> = Vec::new();
    for &c in cols {
        let mut v = c;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClassLabel {
    IsoscelesGenerated,
    RainbowDuplicateOfIsoscelesGenerated,
    Boolean,
}

/// Labels from the classification of 1-homogeneous spaces. At least one
/// label always applies; on 2-homogeneous input additionally either the
/// space is isosceles-generated or it is isosceles-free.
pub fn classify(space: &ColoredSpace, cap: usize) -> Result<Vec<ClassLabel>> {
    if !is_k_homogeneous(space, 1, cap)? {
        return Err(Error::NotHomogeneous(1));
    }
    let mut labels = Vec::new();
    let decomposition = isosceles_generated_components(space, cap)?;
    if decomposition.blocks.len() <= 1 {
        labels.push(ClassLabel::IsoscelesGenerated);
    }
    if decomposition.blocks.len() == 2 {
        if let Some(factorization) = crate::constructions::rainbow_factorization(space, cap)? {
            let base_components =
                isosceles_generated_components_unchecked(&factorization.base);
            if base_components.blocks.len() <= 1 {
                labels.push(ClassLabel::RainbowDuplicateOfIsoscelesGenerated);
            }
        }
    }
    if is_boolean_space(space, cap)? {
        labels.push(ClassLabel::Boolean);
    }
    if labels.is_empty() {
        return Err(Error::InternalInvariantViolation(
            "no classification label applies to a 1-homogeneous space".into(),
        ));
    }
    if is_k_homogeneous(space, 2, cap)? {
        let two_homog_ok =
            decomposition.blocks.len() <= 1 || is_isosceles_free(space);
        if !two_homog_ok {
            return Err(Error::InternalInvariantViolation(
                "2-homogeneous space is neither isosceles-generated nor isosceles-free".into(),
            ));
        }
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{binary_space, cycle, d_space, tetrahedron};
    use crate::perm::DEFAULT_ORDER_CAP as CAP;

    #[test]
    fn isosceles_free_examples() {
        assert!(is_isosceles_free(&tetrahedron(1.0, 1.1, 1.2).unwrap()));
        assert!(is_isosceles_free(
            &crate::constructions::hexagon(1.1, 1.2, 1.3, 1.4, 1.5).unwrap()
        ));
        assert!(!is_isosceles_free(&cycle(4)));
    }

    #[test]
    fn singleton_distances_examples() {
        // C_4: zero and the antipodal distance.
        let c4 = cycle(4);
        let s = singleton_distances(&c4, CAP).unwrap();
        assert_eq!(s, vec![0, 2]);

        // Binary spaces: every color.
        let x2 = binary_space(2).unwrap();
        let s = singleton_distances(&x2, CAP).unwrap();
        assert_eq!(s, (0..4).collect::<Vec<_>>());

        // C_5: only zero; each positive distance occurs twice per row.
        let c5 = cycle(5);
        let s = singleton_distances(&c5, CAP).unwrap();
        assert_eq!(s, vec![0]);
    }

    #[test]
    fn isosceles_free_components_examples() {
        let c4 = cycle(4);
        let d = isosceles_free_components(&c4, CAP).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 2], vec![1, 3]]);

        let x2 = binary_space(2).unwrap();
        let d = isosceles_free_components(&x2, CAP).unwrap();
        assert_eq!(d.blocks.len(), 1);

        let c5 = cycle(5);
        let d = isosceles_free_components(&c5, CAP).unwrap();
        assert_eq!(d.blocks.len(), 5);
    }

    #[test]
    fn isosceles_generated_components_examples() {
        let d3 = d_space(3).unwrap();
        let d = isosceles_generated_components(&d3, CAP).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert!(d.blocks.iter().all(|b| b.len() == 3));

        let x2 = binary_space(2).unwrap();
        let d = isosceles_generated_components(&x2, CAP).unwrap();
        assert_eq!(d.blocks.len(), 4);

        let c5 = cycle(5);
        let d = isosceles_generated_components(&c5, CAP).unwrap();
        assert_eq!(d.blocks.len(), 1);
    }

    #[test]
    fn aut_star_examples() {
        let c4 = cycle(4);
        let free = isosceles_free_components(&c4, CAP).unwrap();
        assert_eq!(aut_star(&c4, &free, CAP).unwrap().order(), 4);

        let d3 = d_space(3).unwrap();
        let gen = isosceles_generated_components(&d3, CAP).unwrap();
        let star = aut_star(&d3, &gen, CAP).unwrap();
        assert_eq!(star.order(), 3);

        let x2 = binary_space(2).unwrap();
        let gen = isosceles_generated_components(&x2, CAP).unwrap();
        assert_eq!(aut_star(&x2, &gen, CAP).unwrap().order(), 1);
    }

    #[test]
    fn quotient_examples() {
        let d3 = d_space(3).unwrap();
        let gen = isosceles_generated_components(&d3, CAP).unwrap();
        let out = quotient_space(&d3, &gen, 1.0, CAP).unwrap();
        assert_eq!(out.quotient.n(), 2);
        assert_eq!(out.aut_order, out.aut_star_order * out.quotient_aut_order);

        let x2 = binary_space(2).unwrap();
        let gen = isosceles_generated_components(&x2, CAP).unwrap();
        let out = quotient_space(&x2, &gen, 1.0, CAP).unwrap();
        assert_eq!(out.quotient.n(), 4);
        assert!(equivalent(&out.quotient.without_palette(), &x2.without_palette()));

        let c5 = cycle(5);
        let gen = isosceles_generated_components(&c5, CAP).unwrap();
        let out = quotient_space(&c5, &gen, 1.0, CAP).unwrap();
        assert_eq!(out.quotient.n(), 1);
    }

    #[test]
    fn boolean_space_examples() {
        assert!(is_boolean_space(&binary_space(2).unwrap(), CAP).unwrap());
        assert!(!is_boolean_space(&d_space(3).unwrap(), CAP).unwrap());
        let matrix: Vec<Vec<u16>> = (0..4)
            .map(|i| (0..4).map(|j| u16::from(i != j)).collect())
            .collect();
        let discrete = ColoredSpace::new(matrix, None).unwrap();
        assert!(!is_boolean_space(&discrete, CAP).unwrap());
    }

    #[test]
    fn norm_table_examples() {
        let x2 = binary_space(2).unwrap();
        let t = to_norm_table(&x2, 0, CAP).unwrap();
        assert_eq!(t.norm, vec![0.0, 1.0, 2.0, 3.0]);

        let tetra = tetrahedron(1.0, 1.1, 1.2).unwrap();
        let t = to_norm_table(&tetra, 0, CAP).unwrap();
        let mut positive: Vec<f64> = t.norm[1..].to_vec();
        positive.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(positive, vec![1.0, 1.1, 1.2]);

        let single = ColoredSpace::new(vec![vec![0]], None).unwrap();
        let t = to_norm_table(&single, 0, CAP).unwrap();
        assert_eq!(t.norm, vec![0.0]);
    }

    #[test]
    fn norm_properties_examples() {
        let x2 = binary_space(2).unwrap();
        let t = to_norm_table(&x2, 0, CAP).unwrap();
        let report = norm_properties(&t).unwrap();
        assert!(report.additive);
        assert!(report.monotone);

        let t = NormTable::new(1, vec![0.0, 5.0]).unwrap();
        let report = norm_properties(&t).unwrap();
        assert!(report.additive);
    }

    #[test]
    fn gl_m_2_sizes() {
        // |GL(m, 2)| for m = 1..4: 1, 6, 168, 20160.
        for (m, expected) in [(1usize, 1usize), (2, 6), (3, 168), (4, 20160)] {
            let mut count = 0usize;
            let mut cols = vec![0usize; m];
            enumerate_invertible(m, 0, &mut cols, &mut |_| count += 1);
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn classify_examples() {
        let d3 = d_space(3).unwrap();
        let labels = classify(&d3, CAP).unwrap();
        assert_eq!(labels, vec![ClassLabel::RainbowDuplicateOfIsoscelesGenerated]);

        let x2 = binary_space(2).unwrap();
        let labels = classify(&x2, CAP).unwrap();
        assert!(labels.contains(&ClassLabel::Boolean));

        let c5 = cycle(5);
        let labels = classify(&c5, CAP).unwrap();
        assert_eq!(labels, vec![ClassLabel::IsoscelesGenerated]);
    }
}
